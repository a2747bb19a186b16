//! Intervals with chosen structure, the interval construction `I_f`, the
//! unique lifts `φ` and `η`, CULF maps, and the stretched/CULF factorisation.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::decalage::{double_dec, subobject, DecResult};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, Witness};
use crate::search::MapSearch;
use crate::sset::{Cell, CellMap, SimpMap, TruncSSet};
use crate::square::{Namer, Square};

/// A Segal set with chosen bottom and top vertices, the chosen edge between
/// them, and the extra degeneracies `eb`, `et` encoding the chosen sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub space: TruncSSet,
    pub bot: Cell,
    pub top: Cell,
    pub varpi: Cell,
    /// `eb[k]`: degree `k` to degree `k + 1`, for `k < dim`.
    pub eb: Vec<Vec<Cell>>,
    pub et: Vec<Vec<Cell>>,
}

fn unique_extension(x: &TruncSSet, k: usize, c: Cell, face: usize, vertex: usize, v: Cell) -> Result<Cell> {
    let hits: Vec<Cell> = x.cells(k + 1).filter(|&e| x.face(k + 1, face, e) == c && x.vertex(k + 1, e, vertex) == v).collect();
    match hits.as_slice() {
        [e] => Ok(*e),
        _ => Err(Error::Uniqueness(format!(
            "'{}' has {} extensions through '{}' in degree {}",
            x.name(k, c),
            hits.len(),
            x.name(0, v),
            k + 1
        ))),
    }
}

impl Interval {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Derives the extra degeneracies from the requirement that `bot` is
    /// initial and `top` terminal, failing unless each extension is unique.
    pub fn from_endpoints(space: TruncSSet, bot: Cell, top: Cell) -> Result<Interval> {
        let dim = space.dim();
        let mut eb = Vec::with_capacity(dim);
        let mut et = Vec::with_capacity(dim);
        for k in 0..dim {
            eb.push(space.cells(k).map(|c| unique_extension(&space, k, c, 0, 0, bot)).collect::<Result<Vec<_>>>()?);
            et.push(space.cells(k).map(|c| unique_extension(&space, k, c, k + 1, k + 1, top)).collect::<Result<Vec<_>>>()?);
        }
        let varpi = eb[0][top as usize];
        Ok(Interval { space, bot, top, varpi, eb, et })
    }

    /// Every structural invariant, plus the Segal condition.
    pub fn check(&self) -> AxiomReport {
        let x = &self.space;
        let dim = x.dim();
        let mut w = Vec::new();
        let mut fail = |what: String, k: usize, c: Cell| w.push(Witness::new(what, format!("fails on '{}'", x.name(k, c))));
        for k in 0..dim {
            for c in x.cells(k) {
                let b = self.eb[k][c as usize];
                let t = self.et[k][c as usize];
                if x.face(k + 1, 0, b) != c {
                    fail(format!("d0 eb = id in degree {k}"), k, c);
                }
                if x.face(k + 1, k + 1, t) != c {
                    fail(format!("d{} et = id in degree {k}", k + 1), k, c);
                }
                if k >= 1 {
                    for i in 0..=k {
                        if x.face(k + 1, i + 1, b) != self.eb[k - 1][x.face(k, i, c) as usize] {
                            fail(format!("d{} eb = eb d{i} in degree {k}", i + 1), k, c);
                        }
                        if x.face(k + 1, i, t) != self.et[k - 1][x.face(k, i, c) as usize] {
                            fail(format!("d{i} et = et d{i} in degree {k}"), k, c);
                        }
                    }
                }
                if k + 1 < dim {
                    for i in 0..=k {
                        if x.degen(k + 1, i + 1, b) != self.eb[k + 1][x.degen(k, i, c) as usize] {
                            fail(format!("s{} eb = eb s{i} in degree {k}", i + 1), k, c);
                        }
                        if x.degen(k + 1, i, t) != self.et[k + 1][x.degen(k, i, c) as usize] {
                            fail(format!("s{i} et = et s{i} in degree {k}"), k, c);
                        }
                    }
                    if self.et[k + 1][b as usize] != self.eb[k + 1][t as usize] {
                        fail(format!("et eb = eb et in degree {k}"), k, c);
                    }
                }
                if k == 0 {
                    if x.face(1, 1, b) != self.bot {
                        fail("d1 eb = bot".into(), 0, c);
                    }
                    if x.face(1, 0, t) != self.top {
                        fail("d0 et = top".into(), 0, c);
                    }
                }
            }
        }
        if self.eb[0][self.top as usize] != self.varpi || self.et[0][self.bot as usize] != self.varpi {
            w.push(Witness::new("chosen edge", format!("'{}' is not eb(top) = et(bot)", x.name(1, self.varpi))));
        }
        let mut report = AxiomReport::new("interval", dim, w);
        let segal = crate::axioms::is_segal(x);
        report = AxiomReport::combine("interval", &[report, segal]);
        report
    }

    pub fn truncate(&self, n: usize) -> Result<Interval> {
        Ok(Interval {
            space: self.space.truncate(n)?,
            bot: self.bot,
            top: self.top,
            varpi: self.varpi,
            eb: self.eb[..n].to_vec(),
            et: self.et[..n].to_vec(),
        })
    }

    /// Whether an `n`-cell, read as a map from `Δ^n`, is stretched.
    pub fn is_stretched_cell(&self, n: usize, c: Cell) -> bool {
        self.space.long_edge_any(n, c) == self.varpi
    }

    pub fn to_json_value(&self) -> Value {
        let x = &self.space;
        let table = |t: &[Vec<Cell>]| -> BTreeMap<String, BTreeMap<String, String>> {
            t.iter()
                .enumerate()
                .map(|(k, m)| {
                    (k.to_string(), m.iter().enumerate().map(|(c, &d)| (x.name(k, c as Cell).to_string(), x.name(k + 1, d).to_string())).collect())
                })
                .collect()
        };
        let mut v = x.to_json_value();
        let obj = v.as_object_mut().expect("object");
        obj.insert("bot".into(), json!(x.name(0, self.bot)));
        obj.insert("top".into(), json!(x.name(0, self.top)));
        obj.insert("varpi".into(), json!(x.name(1, self.varpi)));
        obj.insert("eb".into(), json!(table(&self.eb)));
        obj.insert("et".into(), json!(table(&self.et)));
        v
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Interval> {
        let mut v: Value = serde_json::from_str(s)?;
        let obj = v.as_object_mut().ok_or_else(|| Error::schema("interval must be a JSON object"))?;
        let mut take = |key: &str| obj.remove(key).ok_or_else(|| Error::schema(format!("interval has no \"{key}\"")));
        let (bot, top, varpi, eb, et) = (take("bot")?, take("top")?, take("varpi")?, take("eb")?, take("et")?);
        let space = TruncSSet::from_json_value(&v)?;
        let cell = |k: usize, v: &Value| -> Result<Cell> {
            let id = v.as_str().ok_or_else(|| Error::schema("chosen cells must be strings"))?;
            space.lookup(k, id).ok_or_else(|| Error::UnknownCell { degree: k, id: id.into() })
        };
        let table = |name: &str, v: Value| -> Result<Vec<Vec<Cell>>> {
            let m: BTreeMap<String, BTreeMap<String, String>> = serde_json::from_value(v).map_err(|e| Error::schema(e.to_string()))?;
            (0..space.dim())
                .map(|k| {
                    let t = m.get(&k.to_string()).ok_or_else(|| Error::schema(format!("{name} has no degree {k}")))?;
                    space
                        .cells(k)
                        .map(|c| {
                            let to = t.get(space.name(k, c)).ok_or_else(|| Error::schema(format!("{name} is not total in degree {k}")))?;
                            space.lookup(k + 1, to).ok_or_else(|| Error::Dangling { table: format!("{name} {k}"), id: to.clone() })
                        })
                        .collect()
                })
                .collect()
        };
        let iv = Interval {
            bot: cell(0, &bot)?,
            top: cell(0, &top)?,
            varpi: cell(1, &varpi)?,
            eb: table("eb", eb)?,
            et: table("et", et)?,
            space: space.clone(),
        };
        let report = iv.check();
        if !report.passed() {
            return Err(Error::pre(format!("not an interval:\n{report}")));
        }
        Ok(iv)
    }
}

/// `I_f` together with its projection `M_f` and the cells of `X` it uses.
#[derive(Clone, Debug)]
pub struct IntervalOf {
    pub edge: Cell,
    pub interval: Interval,
    pub m: SimpMap,
    /// Degree `k` lists the cells of `X_{k+2}` in the interval.
    pub incl: CellMap,
}

impl IntervalOf {
    /// Position in the interval of a cell of `X_{k+2}`.
    pub fn locate(&self, k: usize, c: Cell) -> Option<Cell> {
        self.incl.0[k].binary_search(&c).ok().map(|p| p as Cell)
    }

    pub fn space(&self) -> &TruncSSet {
        &self.interval.space
    }
}

/// Shared data for building many intervals of one decomposition set.
pub struct IntervalBuilder {
    x: TruncSSet,
    dd: DecResult,
    long: Vec<Vec<Cell>>,
}

impl IntervalBuilder {
    pub fn new(x: &TruncSSet) -> Result<IntervalBuilder> {
        if x.dim() < 3 {
            return Err(Error::pre(format!("intervals need dimension bound at least 3, got {}", x.dim())));
        }
        let dd = double_dec(x)?;
        let long = (0..=dd.space.dim()).map(|j| x.cells(j + 2).map(|c| x.long_edge(j + 2, c).expect("positive degree")).collect()).collect();
        Ok(IntervalBuilder { x: x.clone(), dd, long })
    }

    pub fn source(&self) -> &TruncSSet {
        &self.x
    }

    pub fn of(&self, f: Cell) -> Result<IntervalOf> {
        let x = &self.x;
        if f as usize >= x.len(1) {
            return Err(Error::UnknownCell { degree: 1, id: f.to_string() });
        }
        let keep: Vec<Vec<bool>> = self.long.iter().map(|l| l.iter().map(|&e| e == f).collect()).collect();
        let (space, incl) = subobject(&self.dd.space, &keep)?;
        let m = SimpMap::new(space.clone(), x.clone(), incl.then(&self.dd.map.comp))?;
        let pos = |k: usize, c: Cell| -> Cell { incl.0[k].binary_search(&c).expect("long edge preserved") as Cell };
        let dim = space.dim();
        let eb = (0..dim).map(|k| incl.0[k].iter().map(|&c| pos(k + 1, x.degen(k + 2, 0, c))).collect()).collect();
        let et = (0..dim).map(|k| incl.0[k].iter().map(|&c| pos(k + 1, x.degen(k + 2, k + 2, c))).collect()).collect();
        let s0f = x.degen(1, 0, f);
        let interval = Interval {
            bot: pos(0, s0f),
            top: pos(0, x.degen(1, 1, f)),
            varpi: pos(1, x.degen(2, 2, s0f)),
            eb,
            et,
            space,
        };
        Ok(IntervalOf { edge: f, interval, m, incl })
    }
}

/// `I_f`: degree `k` holds the cells of `X_{k+2}` with long edge `f`.
pub fn interval_of(x: &TruncSSet, f: Cell) -> Result<IntervalOf> {
    IntervalBuilder::new(x)?.of(f)
}

/// The stretched cell `s_{n+1} s_0 λ` of `I_{long λ}` over `λ`, checked to be
/// the only such cell.
pub fn phi_lift(iv: &IntervalOf, n: usize, lambda: Cell) -> Result<Cell> {
    let x = &iv.m.target;
    if n + 2 > x.dim() {
        return Err(Error::Truncation { degree: n + 2, dim: x.dim() });
    }
    if x.long_edge_any(n, lambda) != iv.edge {
        return Err(Error::pre(format!("'{}' does not have long edge '{}'", x.name(n, lambda), x.name(1, iv.edge))));
    }
    let phi = x.degen(n + 1, n + 1, x.degen(n, 0, lambda));
    let phi = iv.locate(n, phi).ok_or_else(|| Error::Uniqueness("φ is not in the interval".into()))?;
    let hits: Vec<Cell> = iv.space().cells(n).filter(|&c| iv.m.apply(n, c) == lambda && iv.interval.is_stretched_cell(n, c)).collect();
    if hits != [phi] {
        return Err(Error::Uniqueness(format!("{} stretched cells lie over '{}'", hits.len(), x.name(n, lambda))));
    }
    Ok(phi)
}

/// `η_λ = et(eb(λ))` for every `λ` of degree `n`, each checked to be the only
/// `(n+2)`-cell with long edge `ϖ` and inner part `λ`.
pub fn eta_level(c: &Interval, n: usize) -> Result<Vec<Cell>> {
    let x = &c.space;
    if n + 2 > x.dim() {
        return Err(Error::Truncation { degree: n + 2, dim: x.dim() });
    }
    let mut hits: Vec<Vec<Cell>> = vec![Vec::new(); x.len(n)];
    for e in x.cells(n + 2) {
        if x.long_edge(n + 2, e)? == c.varpi {
            hits[x.face(n + 1, 0, x.face(n + 2, n + 2, e)) as usize].push(e);
        }
    }
    x.cells(n)
        .map(|l| {
            let eta = c.et[n + 1][c.eb[n][l as usize] as usize];
            if hits[l as usize] != [eta] {
                return Err(Error::Uniqueness(format!("{} cells η lie over '{}'", hits[l as usize].len(), x.name(n, l))));
            }
            Ok(eta)
        })
        .collect()
}

pub fn eta_lift(c: &Interval, n: usize, lambda: Cell) -> Result<Cell> {
    Ok(eta_level(c, n)?[lambda as usize])
}

fn map_square(name: String, f: &SimpMap, degrees: (usize, usize), src_op: &[Cell], tgt_op: &[Cell]) -> Option<Witness> {
    let (x, y) = (&f.source, &f.target);
    let (p, c) = degrees;
    let np = |cell: Cell| format!("'{}'", x.name(p, cell));
    let nb = |cell: Cell| format!("'{}'", y.name(p, cell));
    let nc = |cell: Cell| format!("'{}'", x.name(c, cell));
    let sq = Square { name, top: &f.comp.0[p], left: src_op, right: tgt_op, bottom: &f.comp.0[c] };
    sq.witness(&Namer { p: &np, b: &nb, c: &nc })
}

/// The square of `F` on `d_1: X_2 -> X_1`.
pub fn culf_d1(f: &SimpMap) -> AxiomReport {
    let w = if f.top_degree() >= 2 {
        map_square("d1 in degree 2".into(), f, (2, 1), f.source.face_table(2, 1), f.target.face_table(2, 1))
    } else {
        None
    };
    AxiomReport::new("culf (d1)", f.top_degree().min(2), w.into_iter().collect())
}

/// Cartesian squares of `F` on every inner face and every degeneracy within
/// the truncation.
pub fn is_culf(f: &SimpMap) -> AxiomReport {
    let (x, y) = (&f.source, &f.target);
    let top = f.top_degree();
    let mut w = Vec::new();
    for k in 2..=top {
        for i in 1..k {
            w.extend(map_square(format!("d{i} in degree {k}"), f, (k, k - 1), x.face_table(k, i), y.face_table(k, i)));
        }
    }
    for k in 0..top {
        for i in 0..=k {
            w.extend(map_square(format!("s{i} in degree {k}"), f, (k, k + 1), x.degen_table(k, i), y.degen_table(k, i)));
        }
    }
    AxiomReport::new("culf", top, w)
}

/// The two readings of "stretched".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stretch {
    /// Preserves `bot`, `top` and `ϖ`.
    pub weak: bool,
    /// Also commutes with `eb` and `et`.
    pub strong: bool,
}

pub fn stretch(s: &SimpMap, src: &Interval, tgt: &Interval) -> Stretch {
    let top = s.top_degree();
    let weak = s.apply(0, src.bot) == tgt.bot && s.apply(0, src.top) == tgt.top && (top == 0 || s.apply(1, src.varpi) == tgt.varpi);
    let strong = weak
        && (0..top).all(|k| {
            src.space.cells(k).all(|c| {
                let sc = s.apply(k, c) as usize;
                s.apply(k + 1, src.eb[k][c as usize]) == tgt.eb[k][sc] && s.apply(k + 1, src.et[k][c as usize]) == tgt.et[k][sc]
            })
        });
    Stretch { weak, strong }
}

/// The strong reading.
pub fn is_stretched(s: &SimpMap, src: &Interval, tgt: &Interval) -> bool {
    stretch(s, src, tgt).strong
}

/// Whether two maps agree on their common degrees.
pub fn agree(a: &CellMap, b: &CellMap) -> bool {
    let top = a.top_degree().min(b.top_degree());
    (0..=top).all(|k| a.0[k] == b.0[k])
}

/// `W: C -> I_ϖ`, `λ ↦ η_λ`, checked to be inverse to `M_ϖ`.
pub fn w_map(c: &Interval) -> Result<(IntervalOf, SimpMap)> {
    let ioc = interval_of(&c.space, c.varpi)?;
    let top = ioc.space().dim();
    let etas = (0..=top).map(|n| eta_level(c, n)).collect::<Result<Vec<_>>>()?;
    let w = SimpMap::from_fn(&c.space, ioc.space(), |n, l| ioc.locate(n, etas[n][l as usize]).expect("long edge is ϖ"))?;
    if !agree(&w.comp.then(&ioc.m.comp), &CellMap::identity(&c.space, top)) || !agree(&ioc.m.comp.then(&w.comp), &CellMap::identity(ioc.space(), top)) {
        return Err(Error::Uniqueness("W is not inverse to M".into()));
    }
    Ok((ioc, w))
}

/// The bijection `I_f -> I_{Ff}` induced by a CULF map.
pub fn culf_transport(f: &SimpMap, e: Cell) -> Result<(IntervalOf, IntervalOf, SimpMap)> {
    let top = f.top_degree();
    if top < 3 {
        return Err(Error::pre("transport needs maps defined up to degree 3"));
    }
    let src = interval_of(&f.source.truncate(top)?, e)?;
    let tgt = interval_of(&f.target.truncate(top)?, f.apply(1, e))?;
    let t = SimpMap::from_fn(src.space(), tgt.space(), |k, c| tgt.locate(k, f.apply(k + 2, src.incl.get(k, c))).expect("long edge preserved"))?;
    if !t.is_levelwise_bijective() {
        return Err(Error::pre(format!("the map is not CULF at '{}'", f.source.name(1, e))));
    }
    if !agree(&t.comp.then(&tgt.m.comp), &src.m.comp.then(&f.comp)) {
        return Err(Error::Uniqueness("transport does not commute with M".into()));
    }
    Ok((src, tgt, t))
}

/// A stretched map followed by a CULF map.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub middle: IntervalOf,
    pub s: SimpMap,
    pub mpart: SimpMap,
    /// `Mpart ∘ S = F`, `S` stretched, `Mpart` CULF.
    pub checks: Vec<AxiomReport>,
}

impl Factorization {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|r| r.passed())
    }
}

/// `S(λ) = F(η_λ)` in `I_{Fϖ}` and `Mpart = M_{Fϖ}`, up to degree
/// `min(dim C, dim D) - 2`.
pub fn factorize(f: &SimpMap, c: &Interval, d: &Interval) -> Result<Factorization> {
    if f.source != c.space || f.target != d.space {
        return Err(Error::pre("map does not run between the given intervals"));
    }
    let top = f.top_degree().saturating_sub(2);
    if top < 1 {
        return Err(Error::pre("factorisation needs intervals of dimension bound at least 3"));
    }
    let full = interval_of(&d.space, f.apply(1, c.varpi))?;
    let middle = IntervalOf {
        edge: full.edge,
        interval: full.interval.truncate(top)?,
        m: SimpMap::new(full.interval.space.truncate(top)?, d.space.clone(), full.m.comp.truncate(top))?,
        incl: full.incl.truncate(top),
    };
    let src = c.truncate(top)?;
    let etas = (0..=top).map(|n| eta_level(c, n)).collect::<Result<Vec<_>>>()?;
    let s = SimpMap::from_fn(&src.space, middle.space(), |n, l| middle.locate(n, f.apply(n + 2, etas[n][l as usize])).expect("long edge is Fϖ"))?;
    let composite = agree(&s.comp.then(&middle.m.comp), &f.comp);
    let st = stretch(&s, &src, &middle.interval);
    let mut checks = vec![
        AxiomReport::new(
            "composite",
            top,
            if composite { vec![] } else { vec![Witness::new("Mpart ∘ S", "differs from F")] },
        ),
        AxiomReport::new(
            "stretched",
            top,
            match (st.weak, st.strong) {
                (true, true) => vec![],
                (true, false) => vec![Witness::new("S", "preserves bot, top and ϖ but not eb/et")],
                _ => vec![Witness::new("S", "does not preserve bot, top and ϖ")],
            },
        ),
    ];
    checks.push(is_culf(&middle.m));
    checks.push(s.naturality());
    let mpart = middle.m.clone();
    Ok(Factorization { middle, s, mpart, checks })
}

/// Input to a lifting problem: `G: E -> C`, `S: E -> E'` stretched,
/// `F: C -> D` CULF and `H: E' -> D` with `F G = H S`.
pub struct LiftingProblem<'a> {
    pub e: &'a Interval,
    pub e2: &'a Interval,
    pub c: &'a Interval,
    pub s: &'a SimpMap,
    pub g: &'a SimpMap,
    pub f: &'a SimpMap,
    pub h: &'a SimpMap,
}

impl LiftingProblem<'_> {
    fn check_shape(&self) -> Result<()> {
        let ok = self.s.source == self.e.space
            && self.s.target == self.e2.space
            && self.g.source == self.e.space
            && self.g.target == self.c.space
            && self.f.source == self.c.space
            && self.h.source == self.e2.space
            && self.h.target == self.f.target;
        if !ok {
            return Err(Error::pre("the four maps do not form a square"));
        }
        if !agree(&self.g.comp.then(&self.f.comp), &self.s.comp.then(&self.h.comp)) {
            return Err(Error::pre("the square does not commute"));
        }
        Ok(())
    }

    /// Whether `L` solves the problem on the common degrees.
    pub fn is_filler(&self, l: &CellMap) -> bool {
        agree(&self.s.comp.then(l), &self.g.comp) && agree(&l.then(&self.f.comp), &self.h.comp)
    }

    fn filler_top(&self) -> usize {
        self.e2.dim().min(self.c.dim())
    }
}

/// The unique filler: `L(λ) = d_0 d_{n+2} μ` where `μ` is the cell of `C` over
/// `H(η_λ)` with long edge `G(ϖ_E)`; higher degrees follow from the spine.
pub fn fill_square(p: &LiftingProblem<'_>) -> Result<SimpMap> {
    p.check_shape()?;
    let (c, d) = (&p.c.space, &p.f.target);
    let t = p.filler_top().min(p.f.top_degree()).min(p.h.top_degree());
    if t < 3 {
        return Err(Error::pre("lifting needs dimension bound at least 3 throughout"));
    }
    let gvarpi = p.g.apply(1, p.e.varpi);
    let mut comp: Vec<Vec<Cell>> = Vec::new();
    for n in 0..=t - 2 {
        let etas = eta_level(p.e2, n)?;
        let mut over: HashMap<Cell, Vec<Cell>> = HashMap::new();
        for mu in c.cells(n + 2) {
            if c.long_edge(n + 2, mu)? == gvarpi {
                over.entry(p.f.apply(n + 2, mu)).or_default().push(mu);
            }
        }
        let level = etas
            .iter()
            .map(|&eta| {
                let target = p.h.apply(n + 2, eta);
                match over.get(&target).map(|v| v.as_slice()).unwrap_or(&[]) {
                    [mu] => Ok(c.face(n + 1, 0, c.face(n + 2, n + 2, *mu))),
                    [] => Err(Error::pre(format!("no lift over '{}': F is not CULF", d.name(n + 2, target)))),
                    _ => Err(Error::Uniqueness(format!("several lifts over '{}'", d.name(n + 2, target)))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        comp.push(level);
    }
    for k in comp.len()..=p.filler_top() {
        let by_spine: HashMap<Vec<Cell>, Cell> = c.cells(k).map(|e| (c.spine(k, e), e)).collect();
        let level = p
            .e2
            .space
            .cells(k)
            .map(|l| {
                let sp: Vec<Cell> = p.e2.space.spine(k, l).iter().map(|&e| comp[1][e as usize]).collect();
                by_spine.get(&sp).copied().ok_or_else(|| Error::pre(format!("C is not Segal at '{}'", p.e2.space.name(k, l))))
            })
            .collect::<Result<Vec<_>>>()?;
        comp.push(level);
    }
    let l = SimpMap::new(p.e2.space.clone(), c.clone(), CellMap(comp))?;
    if !l.naturality().passed() || !p.is_filler(&l.comp) {
        return Err(Error::Uniqueness("the constructed filler does not solve the square".into()));
    }
    Ok(l)
}

/// Every filler, by exhaustive search over simplicial maps `E' -> C`.
pub fn fill_square_scan(p: &LiftingProblem<'_>) -> Result<Vec<CellMap>> {
    p.check_shape()?;
    let top = p.filler_top();
    let (f, h) = (p.f, p.h);
    let filter = move |k: usize, c: Cell, t: Cell| k > f.top_degree() || k > h.top_degree() || f.apply(k, t) == h.apply(k, c);
    let mut search = MapSearch::new(&p.e2.space, &p.c.space, top).filter(&filter);
    let pinned = top.min(p.s.top_degree()).min(p.g.top_degree());
    for k in 0..=pinned {
        for e in p.e.space.cells(k) {
            search = search.pin(k, p.s.apply(k, e), p.g.apply(k, e));
        }
    }
    Ok(search.run().into_iter().filter(|l| p.is_filler(l)).collect())
}
