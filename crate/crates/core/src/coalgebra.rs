//! Incidence coalgebra of a decomposition set, convolution of functionals
//! and Möbius inversion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Witness};
use crate::sset::{Cell, TruncSSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub left: Cell,
    pub right: Cell,
    pub mult: usize,
}

/// 2-cells grouped by their long edge `d_1`.
pub fn d1_fibres(x: &TruncSSet) -> Result<Vec<Vec<Cell>>> {
    if x.dim() < 2 {
        return Err(Error::pre("incidence coalgebra needs 2-cells"));
    }
    let mut fib = vec![Vec::new(); x.len(1)];
    for s in x.cells(2) {
        fib[x.face(2, 1, s) as usize].push(s);
    }
    Ok(fib)
}

fn terms(x: &TruncSSet, cells: &[Cell]) -> Vec<TensorTerm> {
    let mut m: BTreeMap<(Cell, Cell), usize> = BTreeMap::new();
    for &s in cells {
        *m.entry((x.face(2, 2, s), x.face(2, 0, s))).or_default() += 1;
    }
    m.into_iter().map(|((left, right), mult)| TensorTerm { left, right, mult }).collect()
}

/// `Δ(f) = Σ_{d_1 σ = f} d_2 σ ⊗ d_0 σ`, sorted by (left, right).
pub fn comult(x: &TruncSSet, f: Cell) -> Result<Vec<TensorTerm>> {
    Ok(terms(x, &d1_fibres(x)?[f as usize]))
}

/// 1 on degenerate edges, 0 elsewhere.
pub fn counit(x: &TruncSSet, f: Cell) -> u8 {
    u8::from(x.degen(0, 0, x.face(1, 1, f)) == f)
}

type Triple = BTreeMap<(Cell, Cell, Cell), usize>;

fn describe(x: &TruncSSet, t: &Triple) -> String {
    let parts: Vec<String> =
        t.iter().map(|((a, b, c), m)| format!("{m}*{}⊗{}⊗{}", x.name(1, *a), x.name(1, *b), x.name(1, *c))).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Compares `(Δ⊗id)Δ` with `(id⊗Δ)Δ` on every edge, and both with the
/// count of 3-cells by spine when 3-cells are available.
pub fn coassoc_check(x: &TruncSSet) -> Result<AxiomReport> {
    let fib = d1_fibres(x)?;
    let delta: Vec<Vec<TensorTerm>> = fib.iter().map(|c| terms(x, c)).collect();
    let mut via3: Vec<Triple> = vec![Triple::new(); x.len(1)];
    if x.dim() >= 3 {
        for t in x.cells(3) {
            let key = (x.restrict(3, t, &[0, 1]), x.restrict(3, t, &[1, 2]), x.restrict(3, t, &[2, 3]));
            *via3[x.long_edge(3, t)? as usize].entry(key).or_default() += 1;
        }
    }
    let mut w = Vec::new();
    for f in x.cells(1) {
        let mut left = Triple::new();
        let mut right = Triple::new();
        for t in &delta[f as usize] {
            for u in &delta[t.left as usize] {
                *left.entry((u.left, u.right, t.right)).or_default() += t.mult * u.mult;
            }
            for u in &delta[t.right as usize] {
                *right.entry((t.left, u.left, u.right)).or_default() += t.mult * u.mult;
            }
        }
        if left != right {
            w.push(Witness::new(
                format!("coassociativity at '{}'", x.name(1, f)),
                format!("(Δ⊗id)Δ = {} but (id⊗Δ)Δ = {}", describe(x, &left), describe(x, &right)),
            ));
        } else if x.dim() >= 3 && left != via3[f as usize] {
            w.push(Witness::new(
                format!("3-simplices at '{}'", x.name(1, f)),
                format!("(Δ⊗id)Δ = {} but 3-cells give {}", describe(x, &left), describe(x, &via3[f as usize])),
            ));
        }
    }
    Ok(AxiomReport::new("coassociativity", x.dim().min(3), w))
}

/// `(ε⊗id)Δ(f) = f = (id⊗ε)Δ(f)` with multiplicity one.
pub fn counit_check(x: &TruncSSet) -> Result<AxiomReport> {
    let fib = d1_fibres(x)?;
    let mut w = Vec::new();
    for f in x.cells(1) {
        let ts = terms(x, &fib[f as usize]);
        for (side, pick) in [("left", true), ("right", false)] {
            let mut acc: BTreeMap<Cell, usize> = BTreeMap::new();
            for t in &ts {
                let (unit, rest) = if pick { (t.left, t.right) } else { (t.right, t.left) };
                if counit(x, unit) == 1 {
                    *acc.entry(rest).or_default() += t.mult;
                }
            }
            let want: BTreeMap<Cell, usize> = [(f, 1)].into_iter().collect();
            if acc != want {
                let got: Vec<String> = acc.iter().map(|(c, m)| format!("{m}*{}", x.name(1, *c))).collect();
                w.push(Witness::new(format!("{side} counit at '{}'", x.name(1, f)), format!("got {{{}}}", got.join(", "))));
            }
        }
    }
    Ok(AxiomReport::new("counit", 2, w))
}

/// A rational-valued function on 1-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional(pub Vec<BigRational>);

impl Functional {
    pub fn constant(x: &TruncSSet, v: i64) -> Functional {
        Functional(vec![BigRational::from_integer(BigInt::from(v)); x.len(1)])
    }

    pub fn zeta(x: &TruncSSet) -> Functional {
        Self::constant(x, 1)
    }

    pub fn delta(x: &TruncSSet) -> Functional {
        Functional(x.cells(1).map(|f| BigRational::from_integer(BigInt::from(counit(x, f)))).collect())
    }

    pub fn get(&self, f: Cell) -> &BigRational {
        &self.0[f as usize]
    }

    /// Id to rational string, e.g. `"-1"` or `"2/3"`.
    pub fn to_named(&self, x: &TruncSSet) -> BTreeMap<String, String> {
        x.cells(1).map(|f| (x.name(1, f).to_string(), self.get(f).to_string())).collect()
    }
}

/// `(α*β)(f) = Σ_{d_1 σ = f} α(d_2 σ) β(d_0 σ)`.
pub fn convolve(x: &TruncSSet, a: &Functional, b: &Functional) -> Result<Functional> {
    let fib = d1_fibres(x)?;
    if a.0.len() != x.len(1) || b.0.len() != x.len(1) {
        return Err(Error::pre("functional does not match the 1-cells"));
    }
    Ok(Functional(
        fib.iter()
            .map(|cells| {
                cells.iter().fold(BigRational::zero(), |acc, &s| acc + a.get(x.face(2, 2, s)) * b.get(x.face(2, 0, s)))
            })
            .collect(),
    ))
}

/// The convolution inverse of ζ, by the recursion
/// `μ(f) = δ(f) − Σ_{d_1 σ = f, σ ≠ s_1 f} μ(d_2 σ)`.
/// Fails if that recursion is cyclic or if either inverse law fails.
pub fn moebius(x: &TruncSSet) -> Result<Functional> {
    let fib = d1_fibres(x)?;
    let n = x.len(1);
    let deps: Vec<Vec<Cell>> = x
        .cells(1)
        .map(|f| {
            let s1 = x.degen(1, 1, f);
            fib[f as usize].iter().filter(|&&s| s != s1).map(|&s| x.face(2, 2, s)).collect()
        })
        .collect();
    // iterative depth-first evaluation; 0 new, 1 on stack, 2 done
    let mut state = vec![0u8; n];
    let mut mu: Vec<BigRational> = vec![BigRational::zero(); n];
    for root in 0..n {
        if state[root] == 2 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (f, ref mut next)) = stack.last_mut() {
            if let Some(&d) = deps[f].get(*next) {
                *next += 1;
                match state[d as usize] {
                    0 => {
                        state[d as usize] = 1;
                        stack.push((d as usize, 0));
                    }
                    1 => {
                        return Err(Error::NotWellFounded(format!(
                            "the recursion for '{}' depends on itself through '{}'",
                            x.name(1, f as Cell),
                            x.name(1, d)
                        )))
                    }
                    _ => {}
                }
            } else {
                let base = BigRational::from_integer(BigInt::from(counit(x, f as Cell)));
                let sum = deps[f].iter().fold(BigRational::zero(), |acc, &d| acc + &mu[d as usize]);
                mu[f] = base - sum;
                state[f] = 2;
                stack.pop();
            }
        }
    }
    let mu = Functional(mu);
    let zeta = Functional::zeta(x);
    let delta = Functional::delta(x);
    if convolve(x, &mu, &zeta)? != delta || convolve(x, &zeta, &mu)? != delta {
        return Err(Error::NotWellFounded("μ is not a two-sided inverse of ζ".into()));
    }
    Ok(mu)
}
