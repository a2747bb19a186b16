mod common;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use dcmp::axioms::{is_decomposition, is_segal};
use dcmp::builders::{category_nerve, corpus, poset_nerve, rpt_build};
use dcmp::coalgebra::{convolve, moebius, Functional};
use dcmp::decalage::{coslice, dec_bot, dec_top, find_initial, find_terminal, slice};
use dcmp::interval::{interval_of, is_stretched, w_map, Interval, IntervalOf};
use dcmp::search::MapSearch;
use dcmp::sset::{validate_simplicial, CellMap, SimpMap, TruncSSet};

fn members() -> &'static [(String, TruncSSet)] {
    static M: OnceLock<Vec<(String, TruncSSet)>> = OnceLock::new();
    M.get_or_init(|| common::corpus_at(4).into_iter().filter(|(n, _)| n != "B3" && n != "chain-5").collect())
}

fn chain_interval(n: usize, dim: usize) -> Interval {
    let x = poset_nerve(&corpus::chain(n), dim).unwrap();
    interval_of(&x, x.lookup(1, &format!("0_{}", n - 1)).unwrap()).unwrap().interval
}

/// Small intervals: chains, poset intervals and tree intervals.
fn intervals() -> &'static [Interval] {
    static I: OnceLock<Vec<Interval>> = OnceLock::new();
    I.get_or_init(|| {
        let mut v: Vec<Interval> = (1..=4).map(|n| chain_interval(n, 5)).collect();
        for x in [poset_nerve(&corpus::boolean(2), 5).unwrap(), poset_nerve(&corpus::divisors(12), 5).unwrap(), rpt_build(2, 5).unwrap()] {
            for f in x.cells(1).filter(|&f| !x.is_degenerate(1, f)) {
                v.push(interval_of(&x, f).unwrap().interval);
            }
        }
        v
    })
}

fn simp(a: &Interval, b: &Interval, comp: CellMap) -> SimpMap {
    SimpMap::new(a.space.clone(), b.space.clone(), comp).unwrap()
}

fn stretched_maps(a: &Interval, b: &Interval) -> Vec<SimpMap> {
    MapSearch::new(&a.space, &b.space, a.dim().min(b.dim()))
        .pin(0, a.bot, b.bot)
        .pin(0, a.top, b.top)
        .pin(1, a.varpi, b.varpi)
        .run()
        .into_iter()
        .map(|m| simp(a, b, m))
        .filter(|s| is_stretched(s, a, b))
        .collect()
}

#[test]
fn builders_satisfy_their_axioms() {
    for (name, x) in members() {
        assert!(validate_simplicial(x).passed(), "{name}");
        if is_segal(x).passed() {
            assert!(is_decomposition(x).passed(), "{name}: Segal but not decomposition");
        }
        if !name.starts_with("rpt") && !name.starts_with("monoid") {
            assert!(is_segal(x).passed(), "{name}");
        }
    }
    for (m, n) in [(2, 2), (3, 3), (2, 4)] {
        let r = is_segal(&rpt_build(m, n).unwrap());
        assert!(!r.passed() && !r.witnesses.is_empty());
    }
}

#[test]
fn slices_and_coslices() {
    for (name, x) in members() {
        if !is_decomposition(x).passed() {
            continue;
        }
        let initial = !find_initial(x).unwrap().is_empty();
        let terminal = !find_terminal(x).unwrap().is_empty();
        for y in x.cells(0) {
            let sy = x.name(1, x.degen(0, 0, y));
            let s = slice(x, y).unwrap();
            assert!(find_terminal(&s.space).unwrap().contains(&s.space.lookup(0, sy).unwrap()), "{name}");
            let c = coslice(x, y).unwrap();
            assert!(find_initial(&c.space).unwrap().contains(&c.space.lookup(0, sy).unwrap()), "{name}");
            if initial {
                assert!(!find_initial(&s.space).unwrap().is_empty(), "{name}: slice without initial object");
            }
            if terminal {
                assert!(!find_terminal(&c.space).unwrap().is_empty(), "{name}: coslice without terminal object");
            }
        }
    }
}

#[test]
fn moebius_inverts_zeta_on_corpus() {
    for (name, x) in members() {
        let mu = moebius(x).unwrap();
        let (z, d) = (Functional::zeta(x), Functional::delta(x));
        assert_eq!(convolve(x, &mu, &z).unwrap(), d, "{name}");
        assert_eq!(convolve(x, &z, &mu).unwrap(), d, "{name}");
    }
}

#[test]
fn intervals_are_their_own_intervals() {
    for c in intervals() {
        let (iv, w): (IntervalOf, SimpMap) = w_map(c).unwrap();
        assert!(w.is_levelwise_bijective());
        assert!(w.naturality().passed());
        let back = w.then(&iv.m).unwrap();
        assert_eq!(back.comp, CellMap::identity(&c.space, back.top_degree()));
    }
}

/// Cancellation holds once the two maps agree on the long edge; without
/// that, a CULF map that collapses vertices gives counterexamples.
#[test]
fn culf_cancellation() {
    let mut compared = 0;
    for x in [poset_nerve(&corpus::boolean(2), 5).unwrap(), rpt_build(2, 5).unwrap(), category_nerve(&corpus::diamond_category(), 5).unwrap()] {
        for f in x.cells(1) {
            let c = interval_of(&x, f).unwrap();
            for a in [chain_interval(1, 5), chain_interval(2, 5), chain_interval(3, 5)] {
                let top = a.dim().min(c.interval.dim());
                let maps = MapSearch::new(&a.space, c.space(), top).run();
                let mut groups: HashMap<(CellMap, u32), Vec<CellMap>> = HashMap::new();
                for m in maps {
                    let key = (m.then(&c.m.comp), m.get(1, a.varpi));
                    groups.entry(key).or_default().push(m);
                }
                for g in groups.values() {
                    assert_eq!(g.len(), 1, "two maps with equal composite and long edge");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn culf_cancellation_needs_matching_long_edges() {
    let x = rpt_build(2, 5).unwrap();
    let c = interval_of(&x, x.lookup(1, "(())").unwrap()).unwrap();
    let point = chain_interval(1, 5);
    let maps = MapSearch::new(&point.space, c.space(), 3).run();
    assert_eq!(maps.len(), 3);
    assert!(maps.iter().all(|m| m.then(&c.m.comp) == maps[0].then(&c.m.comp)));
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn functional(x: &TruncSSet, seed: &[(i64, i64)]) -> Functional {
    Functional(x.cells(1).map(|f| {
        let (n, d) = seed[f as usize % seed.len()];
        rational(n, d)
    }).collect())
}

fn small_rationals() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn long_edge_is_independent_of_face_order(m in 0usize..64, k in 2usize..=4, c in 0usize..10_000, order in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<u32> = (0..8).map(|_| rng.next_u32()).collect();
        v.sort();
        v
    })) {
        let (_, x) = &members()[m % members().len()];
        let c = (c % x.len(k)) as u32;
        let mut cur = c;
        let mut deg = k;
        let mut picks = order.into_iter();
        while deg > 1 {
            let i = 1 + (picks.next().unwrap_or(0) as usize % (deg - 1));
            cur = x.face(deg, i, cur);
            deg -= 1;
        }
        prop_assert_eq!(cur, x.long_edge(k, c).unwrap());
        prop_assert_eq!(cur, x.act(k, c, &[0, k]).unwrap());
    }

    #[test]
    fn convolution_is_associative_and_unital(m in 0usize..64, a in small_rationals(), b in small_rationals(), c in small_rationals()) {
        let (_, x) = &members()[m % members().len()];
        let (fa, fb, fc) = (functional(x, &a), functional(x, &b), functional(x, &c));
        let left = convolve(x, &convolve(x, &fa, &fb).unwrap(), &fc).unwrap();
        let right = convolve(x, &fa, &convolve(x, &fb, &fc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let d = Functional::delta(x);
        prop_assert_eq!(convolve(x, &d, &fa).unwrap(), fa.clone());
        prop_assert_eq!(convolve(x, &fa, &d).unwrap(), fa);
    }

    #[test]
    fn decalage_detects_doubled_cells(m in 0usize..64, k in 1usize..=2, c in 0usize..10_000) {
        let (_, base) = &members()[m % members().len()];
        let x = base.truncate(3).unwrap();
        let nondeg: Vec<u32> = x.cells(k).filter(|&e| !x.is_degenerate(k, e)).collect();
        prop_assume!(!nondeg.is_empty());
        let y = common::with_twin(&x, k, nondeg[c % nondeg.len()]);
        prop_assert!(validate_simplicial(&y).passed());
        let lhs = is_decomposition(&y).passed();
        let rhs = is_segal(&dec_bot(&y).unwrap().space).passed() && is_segal(&dec_top(&y).unwrap().space).passed();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn found_maps_are_natural(i in 0usize..64, j in 0usize..64, pick in 0usize..16) {
        let (a, b) = (&intervals()[i % intervals().len()], &intervals()[j % intervals().len()]);
        let maps = MapSearch::new(&a.space, &b.space, a.dim().min(b.dim())).limit(16).run();
        prop_assume!(!maps.is_empty());
        let f = simp(a, b, maps[pick % maps.len()].clone());
        prop_assert!(f.naturality().passed());
        let g = SimpMap::identity(&b.space);
        prop_assert_eq!(f.then(&g).unwrap().comp, f.comp.clone());
    }

    #[test]
    fn stretched_triangle(i in 0usize..64, j in 0usize..64, l in 0usize..64, pick in 0usize..8, pick2 in 0usize..8) {
        let ivs = intervals();
        let (a, b, c) = (&ivs[i % ivs.len()], &ivs[j % ivs.len()], &ivs[l % ivs.len()]);
        let ss = stretched_maps(a, b);
        prop_assume!(!ss.is_empty());
        let s = &ss[pick % ss.len()];
        let gs = MapSearch::new(&b.space, &c.space, b.dim().min(c.dim())).limit(8).run();
        prop_assume!(!gs.is_empty());
        let g = simp(b, c, gs[pick2 % gs.len()].clone());
        let f = s.then(&g).unwrap();
        prop_assert_eq!(is_stretched(&f, a, c), is_stretched(&g, b, c));
    }
}
