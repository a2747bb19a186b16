#![allow(dead_code)]

use std::collections::BTreeMap;

use dcmp::builders::{category_nerve, corpus, monoid_nerve, poset_nerve, rpt_build, FinPoset, GradedMonoidPresentation};
use dcmp::sset::{Cell, TruncSSet};

/// Poset members of the corpus with their element order.
pub fn posets() -> Vec<(&'static str, FinPoset)> {
    let mut out: Vec<(&'static str, FinPoset)> = vec![];
    for (n, name) in [(1, "chain-1"), (2, "chain-2"), (3, "chain-3"), (4, "chain-4"), (5, "chain-5")] {
        out.push((name, corpus::chain(n)));
    }
    out.push(("B2", corpus::boolean(2)));
    out.push(("B3", corpus::boolean(3)));
    out.push(("div12", corpus::divisors(12)));
    out.push(("diamond poset", corpus::diamond_poset()));
    out
}

pub fn monoid_example(dim: usize) -> TruncSSet {
    let m = GradedMonoidPresentation::new(&[("a", 1), ("b", 2), ("c", 1)], &[("a", "b")], 3).unwrap();
    monoid_nerve(&m, dim).unwrap()
}

/// Every corpus member at the given dimension bound.
pub fn corpus_at(dim: usize) -> Vec<(String, TruncSSet)> {
    let mut out: Vec<(String, TruncSSet)> = posets().into_iter().map(|(n, p)| (n.to_string(), poset_nerve(&p, dim).unwrap())).collect();
    out.push(("diamond category".into(), category_nerve(&corpus::diamond_category(), dim).unwrap()));
    out.push(("rpt(2)".into(), rpt_build(2, dim).unwrap()));
    out.push(("rpt(3)".into(), rpt_build(3, dim).unwrap()));
    out.push(("monoid".into(), monoid_example(dim)));
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum TwinCell {
    Base(Cell),
    /// The twin composed with a surjection onto its vertices.
    Twin(Vec<usize>),
}

/// `x` with a fresh copy of the nondegenerate cell `c` of degree `k`, sharing
/// all of its faces.
pub fn with_twin(x: &TruncSSet, k: usize, c: Cell) -> TruncSSet {
    let surjections = |n: usize| -> Vec<Vec<usize>> {
        dcmp::sset::monotone_maps(n, k).into_iter().filter(|t| (0..=k).all(|v| t.contains(&v))).collect()
    };
    let levels: Vec<Vec<TwinCell>> = (0..=x.dim())
        .map(|n| {
            let mut v: Vec<TwinCell> = x.cells(n).map(TwinCell::Base).collect();
            if n >= k {
                v.extend(surjections(n).into_iter().map(TwinCell::Twin));
            }
            v
        })
        .collect();
    let name = |n: usize, t: &TwinCell| match t {
        TwinCell::Base(b) => x.name(n, *b).to_string(),
        TwinCell::Twin(th) => format!("{}#2", x.name(n, x.act(k, c, th).unwrap())),
    };
    let compose = |n: usize, t: &TwinCell, g: Vec<usize>| -> dcmp::error::Result<TwinCell> {
        Ok(match t {
            TwinCell::Base(b) => TwinCell::Base(x.act(n, *b, &g)?),
            TwinCell::Twin(th) => {
                let th2: Vec<usize> = g.iter().map(|&v| th[v]).collect();
                if (0..=k).all(|v| th2.contains(&v)) {
                    TwinCell::Twin(th2)
                } else {
                    TwinCell::Base(x.act(k, c, &th2)?)
                }
            }
        })
    };
    TruncSSet::from_fn(
        x.dim(),
        levels,
        name,
        |n, i, t| compose(n, t, (0..n).map(|v| if v < i { v } else { v + 1 }).collect()),
        |n, i, t| compose(n, t, (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect()),
    )
    .unwrap()
}

/// Möbius function of a finite poset by the recursion over half-open
/// intervals, keyed by `"a_b"`.
pub fn poset_moebius(p: &FinPoset) -> BTreeMap<String, i64> {
    let n = p.len();
    let mut mu = vec![vec![0i64; n]; n];
    for a in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&b| p.leq(a, b)).collect();
        order.sort_by_key(|&b| (0..n).filter(|&c| p.leq(c, b)).count());
        for &b in &order {
            mu[a][b] = if a == b { 1 } else { -order.iter().filter(|&&c| c != b && p.leq(c, b)).map(|&c| mu[a][c]).sum::<i64>() };
        }
    }
    let e = p.elements();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if p.leq(a, b) {
                out.insert(format!("{}_{}", e[a], e[b]), mu[a][b]);
            }
        }
    }
    out
}
