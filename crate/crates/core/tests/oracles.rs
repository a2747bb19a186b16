mod common;

use proptest::prelude::*;

use dcmp::builders::{category_nerve, corpus, poset_nerve, rpt_build, FinPoset};
use dcmp::coalgebra::{comult, moebius};
use dcmp::interval::{is_stretched, Interval};
use dcmp::sset::{Cell, CellMap, SimpMap};
use dcmp::universal::build_ux;

/// Number of root-closed subforests, read straight off the parenthesis string.
fn lower_sets(s: &str) -> u64 {
    fn forest(b: &[u8], i: &mut usize) -> u64 {
        let mut prod = 1;
        while *i < b.len() && b[*i] == b'(' {
            *i += 1;
            let inner = forest(b, i);
            *i += 1;
            prod *= 1 + inner;
        }
        prod
    }
    if s == "e" {
        return 1;
    }
    let mut i = 0;
    forest(s.as_bytes(), &mut i)
}

#[test]
fn tree_comultiplication_counts_cuts() {
    let x = rpt_build(4, 3).unwrap();
    for f in x.cells(1) {
        let total: u64 = comult(&x, f).unwrap().iter().map(|t| t.mult as u64).sum();
        assert_eq!(total, lower_sets(x.name(1, f)), "{}", x.name(1, f));
    }
}

fn permutations(items: &[Cell]) -> Vec<Vec<Cell>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let h = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, h);
            out.push(p);
        }
    }
    out
}

/// Stretched isomorphisms by brute force over vertex and edge bijections,
/// extended upward along spines.
fn brute_isos(a: &Interval, b: &Interval) -> usize {
    let (xa, xb) = (&a.space, &b.space);
    if xa.counts() != xb.counts() {
        return 0;
    }
    let top = xa.dim();
    let verts: Vec<Cell> = xa.cells(0).collect();
    let mut count = 0;
    for perm in permutations(&verts) {
        if perm[a.bot as usize] != b.bot || perm[a.top as usize] != b.top {
            continue;
        }
        // edge choices grouped by endpoints
        let mut options: Vec<Vec<Cell>> = Vec::new();
        for e in xa.cells(1) {
            let (s, t) = (perm[xa.vertex(1, e, 0) as usize], perm[xa.vertex(1, e, 1) as usize]);
            options.push(xb.cells(1).filter(|&g| xb.vertex(1, g, 0) == s && xb.vertex(1, g, 1) == t).collect());
        }
        let mut choice = vec![0usize; options.len()];
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        loop {
            let edges: Vec<Cell> = choice.iter().enumerate().map(|(e, &k)| options[e][k]).collect();
            if let Some(comp) = extend(a, b, &perm, &edges, top) {
                let m = SimpMap { source: xa.clone(), target: xb.clone(), comp };
                if m.is_levelwise_bijective() && m.naturality().passed() && is_stretched(&m, a, b) {
                    count += 1;
                }
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    count
}

fn extend(a: &Interval, b: &Interval, perm: &[Cell], edges: &[Cell], top: usize) -> Option<CellMap> {
    let (xa, xb) = (&a.space, &b.space);
    let mut comp = vec![perm.to_vec(), edges.to_vec()];
    for k in 2..=top {
        let mut level = Vec::new();
        for c in xa.cells(k) {
            let sp: Vec<Cell> = xa.spine(k, c).iter().map(|&e| edges[e as usize]).collect();
            let hits: Vec<Cell> = xb.cells(k).filter(|&t| xb.spine(k, t) == sp).collect();
            if hits.len() != 1 {
                return None;
            }
            level.push(hits[0]);
        }
        comp.push(level);
    }
    Some(CellMap(comp))
}

#[test]
fn interval_isomorphisms_match_brute_force() {
    for (x, k) in [
        (poset_nerve(&corpus::boolean(2), 5).unwrap(), 3),
        (rpt_build(2, 5).unwrap(), 3),
        (category_nerve(&corpus::diamond_category(), 5).unwrap(), 3),
    ] {
        let ux = build_ux(&x, k).unwrap();
        for f in x.cells(1) {
            for g in x.cells(1) {
                let want = brute_isos(&ux.intervals[f as usize].interval, &ux.intervals[g as usize].interval);
                let got = ux.isos.get(&(f, g)).map(|v| v.len()).unwrap_or(0);
                assert_eq!(got, want, "{} -> {}", x.name(1, f), x.name(1, g));
            }
        }
    }
}

fn random_poset() -> impl Strategy<Value = FinPoset> {
    (2usize..=6, prop::collection::vec(any::<bool>(), 15)).prop_map(|(n, bits)| {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut covers = Vec::new();
        let mut b = bits.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                if b.next().unwrap_or(false) {
                    covers.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        FinPoset::from_covers(names, &covers).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn moebius_matches_poset_recursion(p in random_poset()) {
        let x = poset_nerve(&p, 3).unwrap();
        let named = moebius(&x).unwrap().to_named(&x);
        let oracle = common::poset_moebius(&p);
        prop_assert_eq!(named.len(), oracle.len());
        for (k, v) in oracle {
            prop_assert_eq!(named.get(&k), Some(&v.to_string()));
        }
    }
}
