//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use dcmp::axioms::{check_unital, is_complete, is_decomposition, is_segal, Side};
use dcmp::builders::category::{CategoryDoc, Morphism};
use dcmp::builders::{category_nerve, corpus, poset_nerve, rpt_build, FinCategory};
use dcmp::coalgebra::{coassoc_check, comult, convolve, counit_check, moebius, Functional};
use dcmp::decalage::{dec_bot, dec_top, double_dec};
use dcmp::interval::{eta_lift, factorize, fill_square, fill_square_scan, interval_of, is_culf, is_stretched, phi_lift, Interval, IntervalBuilder, IntervalOf, LiftingProblem};
use dcmp::search::MapSearch;
use dcmp::sset::{is_active, SimpMap, TruncSSet};
use dcmp::universal::{self, build_ux};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Outcome {
    let mut n = 0;
    for dim in 2..=4 {
        for (name, p) in common::posets().into_iter().filter(|(n, _)| !n.starts_with("diamond")) {
            let x = ok(poset_nerve(&p, dim))?;
            for r in [is_segal(&x), is_decomposition(&x), is_complete(&x), check_unital(&x, Side::Upper), check_unital(&x, Side::Lower)] {
                ensure!(r.passed(), "{name} at dim {dim}: {r}");
                n += 1;
            }
        }
    }
    let t = ok(rpt_build(3, 3))?;
    ensure!(is_decomposition(&t).passed(), "rpt(3,3) is not decomposition");
    ensure!(is_complete(&t).passed(), "rpt(3,3) is not complete");
    let seg = is_segal(&t);
    ensure!(!seg.passed(), "rpt(3,3) passed the Segal check");
    let w = &seg.witnesses[0];
    Ok(format!("{n} poset verdicts; rpt(3,3) Segal witness [{}] {}", w.square, w.detail))
}

fn criterion_2() -> Outcome {
    let mut members = common::corpus_at(4);
    let chain4 = ok(poset_nerve(&corpus::chain(4), 3))?;
    let c = chain4.lookup(2, "0_1_2").ok_or("missing 0_1_2")?;
    members.push(("chain-4 with a doubled 2-cell".into(), common::with_twin(&chain4, 2, c)));
    let mut nondecomp = 0;
    for (name, x) in &members {
        let lhs = is_decomposition(x).passed();
        let (bot, top) = (ok(dec_bot(x))?, ok(dec_top(x))?);
        let rhs = is_segal(&bot.space).passed() && is_segal(&top.space).passed();
        ensure!(lhs == rhs, "{name}: decomposition {lhs} but both décalages Segal {rhs}");
        if lhs {
            for (which, m) in [("dec_bot", &bot.map), ("dec_top", &top.map), ("double dec", &ok(double_dec(x))?.map)] {
                let r = is_culf(m);
                ensure!(r.passed(), "{name}: {which} map is not CULF: {r}");
            }
        } else {
            nondecomp += 1;
        }
    }
    ensure!(nondecomp >= 1, "no member exercised the failing direction");
    Ok(format!("{} members, {nondecomp} not decomposition", members.len()))
}

fn criterion_3() -> Outcome {
    let mut n = 0;
    for (name, x) in common::corpus_at(3) {
        for r in [ok(coassoc_check(&x))?, ok(counit_check(&x))?] {
            ensure!(r.passed(), "{name}: {r}");
        }
        n += 1;
    }
    let t = ok(rpt_build(2, 3))?;
    let ladder = t.lookup(1, "(())").ok_or("no ladder")?;
    let dl = ok(comult(&t, ladder))?;
    ensure!(dl.len() == 3, "ladder has {} terms", dl.len());
    let c = ok(poset_nerve(&corpus::chain_named(&["x", "y", "z"]), 3))?;
    let dx = ok(comult(&c, c.lookup(1, "x_z").ok_or("no x_z")?))?;
    ensure!(dx.len() == 3, "x_z has {} terms", dx.len());
    Ok(format!("{n} members; ladder and x_z both 3 terms"))
}

fn criterion_4() -> Outcome {
    let b3 = ok(poset_nerve(&corpus::boolean(3), 3))?;
    let mu = ok(moebius(&b3))?;
    let v = mu.get(b3.lookup(1, "0_abc").ok_or("no 0_abc")?).to_string();
    ensure!(v == "-1", "mu(0_abc) = {v}");
    let mut checked = 0;
    for (name, p) in [("B2", corpus::boolean(2)), ("B3", corpus::boolean(3)), ("chain-5", corpus::chain(5)), ("div12", corpus::divisors(12))] {
        let x = ok(poset_nerve(&p, 3))?;
        let mu = ok(moebius(&x))?;
        let oracle = common::poset_moebius(&p);
        let named = mu.to_named(&x);
        ensure!(named.len() == oracle.len(), "{name}: {} values vs {}", named.len(), oracle.len());
        for (k, v) in &oracle {
            ensure!(named.get(k) == Some(&v.to_string()), "{name}: mu({k}) = {:?}, oracle {v}", named.get(k));
            checked += 1;
        }
        let (z, d) = (Functional::zeta(&x), Functional::delta(&x));
        ensure!(ok(convolve(&x, &mu, &z))? == d, "{name}: mu * zeta != delta");
        ensure!(ok(convolve(&x, &z, &mu))? == d, "{name}: zeta * mu != delta");
    }
    Ok(format!("mu(0_abc) = -1; {checked} values agree with the poset recursion"))
}

fn criterion_5() -> Outcome {
    let mut edges = 0;
    let mut lifts = 0;
    for (name, p) in common::posets() {
        let x = ok(poset_nerve(&p, 5))?;
        let b = ok(IntervalBuilder::new(&x))?;
        for f in x.cells(1) {
            let iv = ok(b.of(f))?;
            let (lo, hi) = (x.name(0, x.vertex(1, f, 0)), x.name(0, x.vertex(1, f, 1)));
            let (a, c) = (p.index_of(lo).ok_or("vertex")?, p.index_of(hi).ok_or("vertex")?);
            let nerve = ok(poset_nerve(&p.interval(a, c), iv.interval.dim()))?;
            for k in 0..=iv.interval.dim() {
                let image: BTreeSet<&str> = iv.space().cells(k).map(|c| x.name(k, iv.m.apply(k, c))).collect();
                let want: BTreeSet<&str> = nerve.names(k).iter().map(|s| s.as_str()).collect();
                ensure!(image.len() == iv.space().len(k) && image == want, "{name}: interval of {} differs in degree {k}", x.name(1, f));
            }
            let r = iv.interval.check();
            ensure!(r.passed(), "{name} {}: {r}", x.name(1, f));
            ensure!(is_complete(iv.space()).passed(), "{name} {}: interval not complete", x.name(1, f));
            for n in 0..=iv.interval.dim() {
                for l in x.cells(n).filter(|&l| x.long_edge_any(n, l) == f) {
                    ok(phi_lift(&iv, n, l))?;
                    lifts += 1;
                }
            }
            for n in 0..=iv.interval.dim().saturating_sub(2) {
                for l in iv.space().cells(n) {
                    ok(eta_lift(&iv.interval, n, l))?;
                    lifts += 1;
                }
            }
            edges += 1;
        }
    }
    Ok(format!("{edges} edges, {lifts} unique lifts"))
}

fn chain_interval(n: usize, dim: usize) -> Result<Interval, String> {
    let x = ok(poset_nerve(&corpus::chain(n), dim))?;
    let f = x.lookup(1, &format!("0_{}", n - 1)).ok_or("no long edge")?;
    Ok(ok(interval_of(&x, f))?.interval)
}

fn stretched_maps(a: &Interval, b: &Interval) -> Vec<SimpMap> {
    let top = a.dim().min(b.dim());
    MapSearch::new(&a.space, &b.space, top)
        .pin(0, a.bot, b.bot)
        .pin(0, a.top, b.top)
        .pin(1, a.varpi, b.varpi)
        .run()
        .into_iter()
        .map(|m| SimpMap { source: a.space.clone(), target: b.space.clone(), comp: m })
        .filter(|s| is_stretched(s, a, b))
        .collect()
}

fn poset_intervals(dim: usize) -> Result<Vec<(String, TruncSSet, IntervalOf)>, String> {
    let mut out = Vec::new();
    for (name, p) in [("chain-4", corpus::chain(4)), ("B2", corpus::boolean(2)), ("div12", corpus::divisors(12)), ("diamond poset", corpus::diamond_poset())] {
        let x = ok(poset_nerve(&p, dim))?;
        let b = ok(IntervalBuilder::new(&x))?;
        for f in x.cells(1).filter(|&f| !x.is_degenerate(1, f)) {
            out.push((format!("{name} {}", x.name(1, f)), x.clone(), ok(b.of(f))?));
        }
    }
    Ok(out)
}

fn criterion_6() -> Outcome {
    let ivs = poset_intervals(6)?;
    let mut factored = 0;
    'outer: for (i, (na, _, a)) in ivs.iter().enumerate() {
        for (nb, _, b) in ivs.iter().skip(i % 3).step_by(3) {
            for m in MapSearch::new(a.space(), b.space(), a.interval.dim().min(b.interval.dim())).limit(2).run() {
                let f = ok(SimpMap::new(a.space().clone(), b.space().clone(), m))?;
                let fac = ok(factorize(&f, &a.interval, &b.interval))?;
                ensure!(fac.passed(), "factorisation of a map {na} -> {nb}: {:?}", fac.checks.iter().filter(|r| !r.passed()).map(|r| r.to_string()).collect::<Vec<_>>());
                factored += 1;
                if factored >= 120 {
                    break 'outer;
                }
            }
        }
    }
    ensure!(factored >= 50, "only {factored} maps factored");
    let es: Vec<Interval> = [2, 3].iter().map(|&n| chain_interval(n, 6)).collect::<Result<_, _>>()?;
    let e2s: Vec<Interval> = [2, 3, 4].iter().map(|&n| chain_interval(n, 6)).collect::<Result<_, _>>()?;
    let mut squares = 0;
    for (nc, x, c) in ivs.iter().step_by(2) {
        for e in &es {
            for e2 in &e2s {
                for s in stretched_maps(e, e2) {
                    for l0 in MapSearch::new(&e2.space, c.space(), e2.dim().min(c.interval.dim())).limit(2).run() {
                        let h = ok(SimpMap::new(e2.space.clone(), x.clone(), l0.then(&c.m.comp)))?;
                        let g = ok(SimpMap::new(e.space.clone(), c.space().clone(), s.comp.then(&l0)))?;
                        let p = LiftingProblem { e, e2, c: &c.interval, s: &s, g: &g, f: &c.m, h: &h };
                        let formula = ok(fill_square(&p))?;
                        let scan = ok(fill_square_scan(&p))?;
                        ensure!(scan.len() == 1, "square over {nc}: {} fillers by scan", scan.len());
                        ensure!(scan[0] == formula.comp, "square over {nc}: formula and scan disagree");
                        ensure!(formula.comp == l0, "square over {nc}: filler differs from the generating map");
                        squares += 1;
                    }
                }
            }
        }
    }
    ensure!(squares >= 50, "only {squares} squares");
    Ok(format!("{factored} maps factored; {squares} squares, formula = scan in all"))
}

fn u_members() -> Result<Vec<(&'static str, TruncSSet, usize)>, String> {
    Ok(vec![
        ("chain-4", ok(poset_nerve(&corpus::chain(4), 5))?, 3),
        ("doubled diamond", ok(category_nerve(&corpus::diamond_category(), 6))?, 4),
        ("rpt(2,5)", ok(rpt_build(2, 5))?, 3),
    ])
}

fn criterion_7() -> Outcome {
    let mut out = Vec::new();
    for (name, x, k) in u_members()? {
        ensure!(k + 2 == x.dim(), "{name}: maxdeg is not dim - 2");
        let ux = ok(build_ux(&x, k))?;
        let reports = [
            universal::check_strict(&ux),
            universal::check_objects(&ux),
            ok(universal::check_decomposition_grpd(&ux))?,
            universal::check_complete_grpd(&ux),
            ok(universal::classifying_map(&ux))?,
            ok(universal::check_all_active(&ux))?,
            universal::check_isos_culf(&ux),
        ];
        for r in &reports {
            ensure!(r.passed(), "{name}: {r}");
        }
        let mut faces = 0;
        for n in 1..=k {
            for m in 0..ux.levels[n].len() {
                for i in 0..=n {
                    let (count, agrees) = ok(universal::face_by_search(&ux, n, m, i))?;
                    ensure!(count == 1 && agrees, "{name}: face d{i} of {} has {count} solutions", ux.describe(n, m));
                    faces += 1;
                }
            }
        }
        let morphisms: usize = ux.levels.iter().map(|l| l.len()).sum();
        out.push(format!("{name}: {morphisms} morphisms, {faces} unique faces"));
    }
    Ok(out.join("; "))
}

fn criterion_8() -> Outcome {
    let x = ok(category_nerve(&corpus::diamond_category(), 5))?;
    let ux = ok(build_ux(&x, 3))?;
    let theta = [1, 2, 3];
    ensure!(!is_active(&theta, 3), "d0 should be inert");
    let b = x.lookup(3, "f1|c|d").ok_or("no f1|c|d")?;
    let src = x.lookup(3, "f1|c'|d'").ok_or("no f1|c'|d'")?;
    let (gs, gt) = (x.lookup(2, "c'|d'").ok_or("no c'|d'")?, x.lookup(2, "c|d").ok_or("no c|d")?);
    let fbar: Vec<usize> = ux.levels[2].from_object(gs).iter().copied().filter(|&m| ux.levels[2].morphisms[m].dst == gt).collect();
    ensure!(fbar.len() == 1, "{} morphisms c'|d' -> c|d", fbar.len());
    let lifts = ok(universal::lifts(&ux, 3, &theta, b, fbar[0]))?;
    ensure!(lifts.len() == 2, "{} lifts", lifts.len());
    ensure!(lifts.iter().all(|&m| ux.levels[3].morphisms[m].src == src), "a lift does not start at f1|c'|d'");
    let (f1, f2) = (ux.iso(&ux.levels[3].morphisms[lifts[0]]), ux.iso(&ux.levels[3].morphisms[lifts[1]]));
    ensure!(f1 != f2, "the two lifts coincide");
    let defects = ok(universal::fibration_defects(&ux, 3, &theta))?;
    Ok(format!("F-bar: {}; 2 lifts into f1|c|d; {} defective pairs for inert d0", ux.describe(2, fbar[0]), defects.len()))
}

fn criterion_9() -> Outcome {
    let members = vec![
        ("chain-4", ok(poset_nerve(&corpus::chain(4), 5))?, 3),
        ("doubled diamond", ok(category_nerve(&corpus::diamond_category(), 6))?, 4),
        ("B2", ok(poset_nerve(&corpus::boolean(2), 5))?, 3),
        ("B2", ok(poset_nerve(&corpus::boolean(2), 6))?, 4),
    ];
    let mut out = Vec::new();
    for (name, x, k) in members {
        let ux = ok(build_ux(&x, k))?;
        let auts: usize = ux.levels.iter().map(|l| l.morphisms.iter().filter(|m| m.src == m.dst).count()).sum();
        let mods = universal::enumerate_modifications(&ux, 100);
        ensure!(mods.solutions.len() == 1, "{name}: {} modifications", mods.solutions.len());
        ensure!(mods.identity_only(&ux), "{name}: the survivor is not the identity");
        let inv = ok(universal::check_active_invariance(&ux, &mods))?;
        ensure!(inv.passed(), "{name}: {inv}");
        out.push(format!("{name} maxdeg {k}: identity only, {auts} automorphisms available"));
    }
    Ok(out.join("; "))
}

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dcmp"))
}

fn criterion_10() -> Outcome {
    let mut n = 0;
    for (name, x) in common::corpus_at(4).into_iter().chain(common::corpus_at(6).into_iter().filter(|(n, _)| !n.starts_with("B3") && !n.starts_with("chain-5"))) {
        let s = x.to_json_string();
        let y = ok(TruncSSet::from_json_str(&s))?;
        ensure!(y == x && y.to_json_string() == s, "{name}: simplicial set round trip");
        let iv = ok(interval_of(&x, x.cells(1).last().ok_or("no edges")?))?;
        let t = iv.interval.to_json_string();
        ensure!(ok(Interval::from_json_str(&t))?.to_json_string() == t, "{name}: interval round trip");
        let ms = iv.m.to_json_string();
        ensure!(ok(SimpMap::from_json_str(iv.space(), &x, &ms))?.to_json_string() == ms, "{name}: map round trip");
        n += 1;
    }
    let doc = ok(serde_json::to_string(&corpus::diamond_category().to_doc()))?;
    let again = ok(FinCategory::from_doc(&ok(serde_json::from_str::<CategoryDoc>(&doc))?))?;
    ensure!(ok(serde_json::to_string(&again.to_doc()))? == doc, "category document round trip");
    let dir = ok(tempfile::tempdir())?;
    let path = |s: &str| dir.path().join(s).to_string_lossy().into_owned();
    let save = |x: &TruncSSet, f: &str| std::fs::write(path(f), x.to_json_string()).map_err(|e| e.to_string());
    save(&ok(poset_nerve(&corpus::chain(1), 3))?, "point.json")?;
    save(&ok(poset_nerve(&corpus::chain_named(&["x", "y", "z"]), 6))?, "chain3.json")?;
    save(&ok(poset_nerve(&corpus::boolean(3), 3))?, "b3.json")?;
    save(&ok(rpt_build(3, 3))?, "rpt.json")?;
    save(&ok(category_nerve(&corpus::diamond_category(), 6))?, "diamond2.json")?;
    let z2 = CategoryDoc {
        objects: vec!["o".into()],
        morphisms: vec![
            Morphism { id: "e".into(), src: "o".into(), tgt: "o".into() },
            Morphism { id: "t".into(), src: "o".into(), tgt: "o".into() },
        ],
        identities: [("o".to_string(), "e".to_string())].into_iter().collect(),
        composition: vec![("e".into(), "e".into(), "e".into()), ("e".into(), "t".into(), "t".into()), ("t".into(), "e".into(), "t".into()), ("t".into(), "t".into(), "e".into())],
    };
    save(&ok(category_nerve(&ok(FinCategory::from_doc(&z2))?, 3))?, "z2.json")?;
    std::fs::write(path("p.json"), r#"{"elements":["a","b","c"],"covers":[["a","b"],["b","c"]]}"#).map_err(|e| e.to_string())?;
    let iv = path("iv.json");
    let scripted: Vec<(Vec<String>, i32, Option<&str>)> = vec![
        (vec!["check".into(), path("point.json"), "--axiom".into(), "all".into()], 0, None),
        (vec!["check".into(), path("rpt.json"), "--axiom".into(), "segal".into()], 1, Some("duplicated lift")),
        (vec!["check".into(), path("rpt.json"), "--axiom".into(), "decomposition".into()], 0, None),
        (vec!["coalgebra".into(), path("chain3.json"), "--element".into(), "x_z".into(), "--verify".into(), "coassoc".into()], 0, Some("coassociativity: pass")),
        (vec!["moebius".into(), path("b3.json"), "--at".into(), "0_abc".into()], 0, Some("mu(0_abc) = -1")),
        (vec!["moebius".into(), path("z2.json")], 1, None),
        (vec!["interval".into(), path("chain3.json"), "--edge".into(), "x_z".into(), "-o".into(), iv.clone()], 0, None),
        (vec!["factorize".into(), "--src".into(), iv.clone(), "--dst".into(), iv.clone(), "--map".into(), path("id.json")], 0, Some("composite: pass")),
        (vec!["universal".into(), path("diamond2.json"), "--maxdeg".into(), "4".into(), "--verify".into(), "modifications".into()], 0, Some("modifications found: 1 (identity)")),
        (vec!["universal".into(), path("diamond2.json"), "--maxdeg".into(), "5".into()], 2, None),
        (vec!["build".into(), "poset".into(), path("p.json"), "--dim".into(), "3".into(), "-o".into(), path("p3.json")], 0, None),
        (vec!["check".into(), path("missing.json")], 2, None),
        (vec!["check".into(), path("point.json"), "--axiom".into(), "nonsense".into()], 2, None),
    ];
    let mut runs = 0;
    for (args, code, needle) in scripted {
        if args.first().map(|s| s.as_str()) == Some("factorize") {
            let ivx = ok(Interval::from_json_str(&ok(std::fs::read_to_string(&iv))?))?;
            std::fs::write(path("id.json"), SimpMap::identity(&ivx.space).to_json_string()).map_err(|e| e.to_string())?;
        }
        let out = ok(exe().args(&args).env("DCMP_THREADS", "2").output())?;
        let stdout = String::from_utf8_lossy(&out.stdout);
        let got = out.status.code().unwrap_or(-1);
        ensure!(got == code, "`dcmp {}` exited {got}, expected {code}\n{stdout}{}", args.join(" "), String::from_utf8_lossy(&out.stderr));
        if let Some(s) = needle {
            ensure!(stdout.contains(s), "`dcmp {}` output lacks '{s}':\n{stdout}", args.join(" "));
        }
        runs += 1;
    }
    let a = ok(exe().args(["--json", "universal", &path("diamond2.json"), "--maxdeg", "4"]).output())?;
    let b = ok(exe().args(["--json", "universal", &path("diamond2.json"), "--maxdeg", "4"]).env("DCMP_THREADS", "1").output())?;
    ensure!(a.stdout == b.stdout, "reports differ between runs");
    Ok(format!("{n} members round-trip; {runs} scripted invocations; reports deterministic"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suite", criterion_1),
        ("décalage equivalence", criterion_2),
        ("coalgebra laws", criterion_3),
        ("Möbius inversion", criterion_4),
        ("interval correctness", criterion_5),
        ("factorisation system", criterion_6),
        ("universal object strictness and axioms", criterion_7),
        ("two lifts along an inert face", criterion_8),
        ("modifications are trivial", criterion_9),
        ("serialization and exit codes", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name} ({:.1}s): {detail}", i + 1, t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({:.1}s): {e}", i + 1, t.elapsed().as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
