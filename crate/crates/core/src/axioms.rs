//! Pullback checks for the Segal, decomposition, unital and completeness
//! conditions on a truncated simplicial set.

use crate::report::{AxiomReport, Witness};
use crate::sset::{Cell, TruncSSet};
use crate::square::{Namer, Square};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

struct Checker<'a> {
    x: &'a TruncSSet,
    witnesses: Vec<Witness>,
    max: usize,
}

impl<'a> Checker<'a> {
    fn new(x: &'a TruncSSet) -> Self {
        Checker { x, witnesses: Vec::new(), max: 0 }
    }

    /// `P = X_p`, `B = X_b`, `C = X_c`.
    #[allow(clippy::too_many_arguments)]
    fn square(&mut self, name: String, degrees: (usize, usize, usize), top: &[Cell], left: &[Cell], right: &[Cell], bottom: &[Cell]) {
        let x = self.x;
        let (p, b, c) = degrees;
        let np = |cell: Cell| format!("'{}'", x.name(p, cell));
        let nb = |cell: Cell| format!("'{}'", x.name(b, cell));
        let nc = |cell: Cell| format!("'{}'", x.name(c, cell));
        let sq = Square { name, top, left, right, bottom };
        if let Some(w) = sq.witness(&Namer { p: &np, b: &nb, c: &nc }) {
            self.witnesses.push(w);
        }
        self.max = self.max.max(p).max(b).max(c);
    }

    fn finish(self, axiom: &str) -> AxiomReport {
        AxiomReport::new(axiom, self.max, self.witnesses)
    }
}

/// `X_{n+1} -> X_n x_{X_{n-1}} X_n` via `(d_top, d_bot)` for `1 <= n < dim`.
pub fn is_segal(x: &TruncSSet) -> AxiomReport {
    let mut ch = Checker::new(x);
    for n in 1..x.dim() {
        ch.square(
            format!("segal n={n}: (d{}, d0)", n + 1),
            (n + 1, n, n),
            x.face_table(n + 1, n + 1),
            x.face_table(n + 1, 0),
            x.face_table(n, 0),
            x.face_table(n, n),
        );
    }
    ch.finish("segal")
}

fn family(ch: &mut Checker<'_>, side: Side) {
    let x = ch.x;
    for n in 2..x.dim() {
        for i in 1..n {
            match side {
                Side::Upper => ch.square(
                    format!("upper n={n} i={i}: (d{}, d0) vs (d0, d{i})", i + 1),
                    (n + 1, n, n),
                    x.face_table(n + 1, i + 1),
                    x.face_table(n + 1, 0),
                    x.face_table(n, 0),
                    x.face_table(n, i),
                ),
                Side::Lower => ch.square(
                    format!("lower n={n} i={i}: (d{i}, d{}) vs (d{n}, d{i})", n + 1),
                    (n + 1, n, n),
                    x.face_table(n + 1, i),
                    x.face_table(n + 1, n + 1),
                    x.face_table(n, n),
                    x.face_table(n, i),
                ),
            }
        }
    }
}

/// The squares pairing an inner face with `d_bot`.
pub fn is_upper_2segal(x: &TruncSSet) -> AxiomReport {
    let mut ch = Checker::new(x);
    family(&mut ch, Side::Upper);
    ch.finish("upper 2-segal")
}

/// The squares pairing an inner face with `d_top`.
pub fn is_lower_2segal(x: &TruncSSet) -> AxiomReport {
    let mut ch = Checker::new(x);
    family(&mut ch, Side::Lower);
    ch.finish("lower 2-segal")
}

/// Both families, for every `n >= 2` with `n + 1 <= dim` and `0 < i < n`.
pub fn is_decomposition(x: &TruncSSet) -> AxiomReport {
    let mut ch = Checker::new(x);
    family(&mut ch, Side::Upper);
    family(&mut ch, Side::Lower);
    ch.finish("decomposition")
}

/// Further squares of active maps that every decomposition set turns into
/// pullbacks: `(d_i, d_{j+1})` against `(d_j, d_i)` and the matching
/// degeneracy squares, for `n >= 3` and `0 < i < j < n`.
pub fn derived_active_squares(x: &TruncSSet) -> AxiomReport {
    let mut ch = Checker::new(x);
    for n in 3..=x.dim() {
        for j in 2..n {
            for i in 1..j {
                if n < x.dim() {
                    ch.square(
                        format!("faces n={n} i={i} j={j}"),
                        (n + 1, n, n),
                        x.face_table(n + 1, i),
                        x.face_table(n + 1, j + 1),
                        x.face_table(n, j),
                        x.face_table(n, i),
                    );
                }
                ch.square(
                    format!("degeneracies n={n} i={i} j={j}"),
                    (n - 3, n - 2, n - 2),
                    x.degen_table(n - 3, i - 1),
                    x.degen_table(n - 3, j - 2),
                    x.degen_table(n - 2, j - 1),
                    x.degen_table(n - 2, i - 1),
                );
            }
        }
    }
    ch.finish("derived active squares")
}

/// Upper: `s_{i+1}` against `s_i` over `d_0`. Lower: `s_i` against `s_i`
/// over `d_{n+1}`, `d_{n+2}`. For `0 <= i <= n` and `n + 2 <= dim`.
pub fn check_unital(x: &TruncSSet, side: Side) -> AxiomReport {
    let mut ch = Checker::new(x);
    for n in 0..x.dim().saturating_sub(1) {
        for i in 0..=n {
            match side {
                Side::Upper => ch.square(
                    format!("upper unital n={n} i={i}"),
                    (n + 1, n + 2, n),
                    x.degen_table(n + 1, i + 1),
                    x.face_table(n + 1, 0),
                    x.face_table(n + 2, 0),
                    x.degen_table(n, i),
                ),
                Side::Lower => ch.square(
                    format!("lower unital n={n} i={i}"),
                    (n + 1, n + 2, n),
                    x.degen_table(n + 1, i),
                    x.face_table(n + 1, n + 1),
                    x.face_table(n + 2, n + 2),
                    x.degen_table(n, i),
                ),
            }
        }
    }
    let name = match side {
        Side::Upper => "upper unital",
        Side::Lower => "lower unital",
    };
    ch.finish(name)
}

fn injectivity(x: &TruncSSet, k: usize, i: usize) -> Option<Witness> {
    let t = x.degen_table(k, i);
    let mut seen = vec![Cell::MAX; x.len(k + 1)];
    for (c, &d) in t.iter().enumerate() {
        let prev = seen[d as usize];
        if prev != Cell::MAX {
            return Some(Witness::new(
                format!("s{i} in degree {k}"),
                format!("'{}' and '{}' have the same image '{}'", x.name(k, prev), x.name(k, c as Cell), x.name(k + 1, d)),
            ));
        }
        seen[d as usize] = c as Cell;
    }
    None
}

/// `s_0: X_0 -> X_1` injective; for decomposition sets every degeneracy is
/// checked as well.
pub fn is_complete(x: &TruncSSet) -> AxiomReport {
    let mut w: Vec<Witness> = injectivity(x, 0, 0).into_iter().collect();
    let mut max = 1;
    if w.is_empty() && is_decomposition(x).passed() {
        for k in 1..x.dim() {
            for i in 0..=k {
                w.extend(injectivity(x, k, i));
            }
        }
        max = x.dim();
    }
    AxiomReport::new("complete", max, w)
}

/// Every check by name, in a fixed order.
pub fn check_all(x: &TruncSSet) -> Vec<AxiomReport> {
    vec![
        crate::sset::validate_simplicial(x),
        is_segal(x),
        is_decomposition(x),
        is_complete(x),
        check_unital(x, Side::Upper),
        check_unital(x, Side::Lower),
    ]
}
