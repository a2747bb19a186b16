//! The strict local universal object `U_X` of a decomposition set, its
//! groupoid-level checks, the classifying map `I: X -> U_X` and the
//! enumeration of self-modifications of `I`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{is_culf, is_stretched, IntervalBuilder, IntervalOf};
use crate::report::{AxiomReport, Witness};
use crate::search::MapSearch;
use crate::sset::{is_active, operator_word, Cell, CellMap, Op, SimpMap, TruncSSet};

/// A morphism `F: (I_f, φ_src) -> (I_g, φ_dst)` at some level; `iso` indexes
/// the stretched isomorphisms `I_f -> I_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Morphism {
    pub src: Cell,
    pub dst: Cell,
    pub f: Cell,
    pub g: Cell,
    pub iso: usize,
}

/// Objects are the cells of `X_n`; morphisms are listed in sorted order.
#[derive(Clone, Debug)]
pub struct Level {
    pub morphisms: Vec<Morphism>,
    index: HashMap<(Cell, Cell, usize), usize>,
    /// `identity[λ]`
    pub identity: Vec<usize>,
    /// `face[i][m]`, empty at level 0.
    pub face: Vec<Vec<usize>>,
    /// `degen[j][m]`, empty at the top level.
    pub degen: Vec<Vec<usize>>,
    by_src: Vec<Vec<usize>>,
}

impl Level {
    fn find(&self, src: Cell, g: Cell, iso: usize) -> Option<usize> {
        self.index.get(&(src, g, iso)).copied()
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn from_object(&self, src: Cell) -> &[usize] {
        &self.by_src[src as usize]
    }
}

/// The simplicial groupoid `U_X` up to level `maxdeg`.
pub struct UX {
    pub x: TruncSSet,
    pub maxdeg: usize,
    /// `intervals[f]` is `I_f`.
    pub intervals: Vec<IntervalOf>,
    /// Stretched isomorphisms `I_f -> I_g`, sorted.
    pub isos: BTreeMap<(Cell, Cell), Vec<CellMap>>,
    /// `phi[n][λ]`: the cell `φ_λ` of `I_{long λ}`.
    pub phi: Vec<Vec<Cell>>,
    pub levels: Vec<Level>,
}

fn long(x: &TruncSSet, n: usize, c: Cell) -> Cell {
    x.long_edge_any(n, c)
}

fn compose_maps(a: &CellMap, b: &CellMap) -> CellMap {
    a.then(b)
}

impl UX {
    pub fn long(&self, n: usize, c: Cell) -> Cell {
        long(&self.x, n, c)
    }

    pub fn iso(&self, m: &Morphism) -> &CellMap {
        &self.isos[&(m.f, m.g)][m.iso]
    }

    fn iso_index(&self, f: Cell, g: Cell, map: &CellMap) -> Option<usize> {
        self.isos.get(&(f, g))?.iter().position(|m| m == map)
    }

    /// `m2 ∘ m1` when `m1.dst == m2.src`.
    pub fn compose(&self, n: usize, m1: usize, m2: usize) -> Option<usize> {
        let lv = &self.levels[n];
        let (a, b) = (lv.morphisms[m1], lv.morphisms[m2]);
        if a.dst != b.src {
            return None;
        }
        let map = compose_maps(self.iso(&a), self.iso(&b));
        let k = self.iso_index(a.f, b.g, &map)?;
        lv.find(a.src, b.g, k)
    }

    pub fn inverse(&self, n: usize, m: usize) -> Option<usize> {
        let mm = self.levels[n].morphisms[m];
        let inv = self.iso(&mm).inverse(self.intervals[mm.g as usize].space())?;
        let k = self.iso_index(mm.g, mm.f, &inv)?;
        self.levels[n].find(mm.dst, mm.f, k)
    }

    /// Action of a monotone `θ: [m] -> [n]` on a morphism of level `n`.
    pub fn act_morphism(&self, n: usize, m: usize, theta: &[usize]) -> Result<(usize, usize)> {
        let mut deg = n;
        let mut cur = m;
        for op in operator_word(theta, n)? {
            match op {
                Op::Face(i) => {
                    cur = self.levels[deg].face[i][cur];
                    deg -= 1;
                }
                Op::Degen(j) => {
                    if deg >= self.maxdeg {
                        return Err(Error::Truncation { degree: deg + 1, dim: self.maxdeg });
                    }
                    cur = self.levels[deg].degen[j][cur];
                    deg += 1;
                }
            }
        }
        Ok((deg, cur))
    }

    pub fn describe(&self, n: usize, m: usize) -> String {
        let mm = self.levels[n].morphisms[m];
        let tag = if self.iso(&mm) == &CellMap::identity(self.intervals[mm.f as usize].space(), self.maxdeg) { "id" } else { "iso" };
        format!("{}: '{}' -> '{}' (#{})", tag, self.x.name(n, mm.src), self.x.name(n, mm.dst), mm.iso)
    }
}

/// Builds `U_X` on levels `0..=maxdeg`.
pub fn build_ux(x: &TruncSSet, maxdeg: usize) -> Result<UX> {
    if maxdeg + 2 > x.dim() {
        return Err(Error::Truncation { degree: maxdeg + 2, dim: x.dim() });
    }
    if maxdeg == 0 {
        return Err(Error::pre("U_X needs maxdeg at least 1"));
    }
    let xt = x.truncate(maxdeg + 2)?;
    let builder = IntervalBuilder::new(&xt)?;
    let intervals: Vec<IntervalOf> = xt.cells(1).collect::<Vec<_>>().into_par_iter().map(|f| builder.of(f)).collect::<Result<_>>()?;
    let isos = enumerate_isos(&intervals, maxdeg)?;
    let phi: Vec<Vec<Cell>> = (0..=maxdeg)
        .map(|n| {
            xt.cells(n)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|l| crate::interval::phi_lift(&intervals[long(&xt, n, l) as usize], n, l))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut targets: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    for &(f, g) in isos.keys() {
        targets.entry(f).or_default().push(g);
    }
    let mut levels = Vec::with_capacity(maxdeg + 1);
    for n in 0..=maxdeg {
        let mut morphisms = Vec::new();
        for l in xt.cells(n) {
            let f = long(&xt, n, l);
            for &g in targets.get(&f).map(|v| v.as_slice()).unwrap_or(&[]) {
                for (k, map) in isos[&(f, g)].iter().enumerate() {
                    let image = map.get(n, phi[n][l as usize]);
                    let mu = intervals[g as usize].m.apply(n, image);
                    if phi[n][mu as usize] != image {
                        return Err(Error::Uniqueness(format!("image of φ for '{}' is not a φ", xt.name(n, l))));
                    }
                    morphisms.push(Morphism { src: l, dst: mu, f, g, iso: k });
                }
            }
        }
        morphisms.sort();
        let index: HashMap<(Cell, Cell, usize), usize> = morphisms.iter().enumerate().map(|(i, m)| ((m.src, m.g, m.iso), i)).collect();
        let mut by_src = vec![Vec::new(); xt.len(n)];
        for (i, m) in morphisms.iter().enumerate() {
            by_src[m.src as usize].push(i);
        }
        let identity = xt
            .cells(n)
            .map(|l| {
                let f = long(&xt, n, l);
                let id = CellMap::identity(intervals[f as usize].space(), maxdeg);
                let k = isos[&(f, f)].iter().position(|m| *m == id).expect("identity is an isomorphism");
                index[&(l, f, k)]
            })
            .collect();
        levels.push(Level { morphisms, index, identity, face: Vec::new(), degen: Vec::new(), by_src });
    }
    let mut ux = UX { x: xt, maxdeg, intervals, isos, phi, levels };
    for n in 1..=maxdeg {
        let faces = (0..=n).map(|i| face_table(&ux, n, i)).collect::<Result<Vec<_>>>()?;
        ux.levels[n].face = faces;
    }
    for n in 0..maxdeg {
        let degens = (0..=n)
            .map(|j| {
                let lv = &ux.levels[n];
                lv.morphisms
                    .iter()
                    .map(|m| {
                        ux.levels[n + 1].find(ux.x.degen(n, j, m.src), m.g, m.iso).ok_or_else(|| Error::Uniqueness("degenerate morphism missing".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ux.levels[n].degen = degens;
    }
    Ok(ux)
}

fn enumerate_isos(intervals: &[IntervalOf], top: usize) -> Result<BTreeMap<(Cell, Cell), Vec<CellMap>>> {
    let sig = |iv: &IntervalOf| iv.space().counts();
    let pairs: Vec<(Cell, Cell)> = (0..intervals.len())
        .flat_map(|f| (0..intervals.len()).map(move |g| (f as Cell, g as Cell)))
        .filter(|&(f, g)| sig(&intervals[f as usize]) == sig(&intervals[g as usize]))
        .collect();
    let found: Vec<((Cell, Cell), Vec<CellMap>)> = pairs
        .into_par_iter()
        .map(|(f, g)| {
            let (a, b) = (&intervals[f as usize].interval, &intervals[g as usize].interval);
            let mut maps: Vec<CellMap> = MapSearch::new(&a.space, &b.space, top)
                .bijective()
                .pin(0, a.bot, b.bot)
                .pin(0, a.top, b.top)
                .pin(1, a.varpi, b.varpi)
                .run()
                .into_iter()
                .filter(|m| {
                    let s = SimpMap { source: a.space.clone(), target: b.space.clone(), comp: m.clone() };
                    is_stretched(&s, a, b)
                })
                .collect();
            maps.sort();
            ((f, g), maps)
        })
        .collect();
    Ok(found.into_iter().filter(|(_, v)| !v.is_empty()).collect())
}

/// The unique CULF `H: I_{long(λ d^i)} -> I_{long λ}` over `X` sending
/// `φ_{λ d^i}` to `d_i φ_λ`.
fn h_map(ux: &UX, n: usize, l: Cell, i: usize) -> Result<CellMap> {
    let x = &ux.x;
    let l2 = x.face(n, i, l);
    let (f, f2) = (long(x, n, l), long(x, n - 1, l2));
    let (a, b) = (&ux.intervals[f2 as usize], &ux.intervals[f as usize]);
    let filter = |k: usize, c: Cell, t: Cell| b.m.apply(k, t) == a.m.apply(k, c);
    let target = b.space().face(n, i, ux.phi[n][l as usize]);
    let found = MapSearch::new(a.space(), b.space(), ux.maxdeg).filter(&filter).pin(n - 1, ux.phi[n - 1][l2 as usize], target).limit(2).run();
    match found.len() {
        1 => Ok(found.into_iter().next().expect("one")),
        k => Err(Error::Uniqueness(format!("{k} maps H for d{i} of '{}'", x.name(n, l)))),
    }
}

fn face_table(ux: &UX, n: usize, i: usize) -> Result<Vec<usize>> {
    let x = &ux.x;
    let hs: Vec<CellMap> = x.cells(n).collect::<Vec<_>>().into_par_iter().map(|l| h_map(ux, n, l, i)).collect::<Result<_>>()?;
    let lv = &ux.levels[n];
    lv.morphisms
        .par_iter()
        .map(|m| {
            let (l2, mu2) = (x.face(n, i, m.src), x.face(n, i, m.dst));
            let (f2, g2) = (long(x, n - 1, l2), long(x, n - 1, mu2));
            let h = &hs[m.src as usize];
            let fh = h.then(ux.iso(m));
            let mg = &ux.intervals[m.g as usize].m.comp;
            let want = fh.then(mg);
            let mg2 = &ux.intervals[g2 as usize].m.comp;
            let (p2, q2) = (ux.phi[n - 1][l2 as usize], ux.phi[n - 1][mu2 as usize]);
            let cands: Vec<usize> = ux
                .isos
                .get(&(f2, g2))
                .map(|v| v.iter().enumerate().filter(|(_, c)| c.get(n - 1, p2) == q2 && c.then(mg2) == want).map(|(k, _)| k).collect())
                .unwrap_or_default();
            match cands.as_slice() {
                [k] => ux.levels[n - 1].find(l2, g2, *k).ok_or_else(|| Error::Uniqueness("face morphism missing".into())),
                _ => Err(Error::Uniqueness(format!("{} candidates for d{i} of {}", cands.len(), ux.describe(n, ux.levels[n].index[&(m.src, m.g, m.iso)])))),
            }
        })
        .collect()
}

/// Recomputes `d_i` of a morphism by exhaustive search over all maps
/// `I_{f'} -> I_{g'}`, returning the number of solutions and whether the
/// unique one agrees with the face table.
pub fn face_by_search(ux: &UX, n: usize, m: usize, i: usize) -> Result<(usize, bool)> {
    let x = &ux.x;
    let mm = ux.levels[n].morphisms[m];
    let (l2, mu2) = (x.face(n, i, mm.src), x.face(n, i, mm.dst));
    let (f2, g2) = (long(x, n - 1, l2), long(x, n - 1, mu2));
    let h = h_map(ux, n, mm.src, i)?;
    let want = h.then(ux.iso(&mm)).then(&ux.intervals[mm.g as usize].m.comp);
    let (a, b) = (&ux.intervals[f2 as usize], &ux.intervals[g2 as usize]);
    let filter = |k: usize, c: Cell, t: Cell| b.m.apply(k, t) == want.get(k, c);
    let found = MapSearch::new(a.space(), b.space(), ux.maxdeg)
        .filter(&filter)
        .pin(n - 1, ux.phi[n - 1][l2 as usize], ux.phi[n - 1][mu2 as usize])
        .run();
    let table = ux.levels[n - 1].morphisms[ux.levels[n].face[i][m]];
    let agrees = found.len() == 1 && (table.f, table.g) == (f2, g2) && &found[0] == ux.iso(&table);
    Ok((found.len(), agrees))
}

/// Groupoid laws at every level, the simplicial identities as equalities on
/// morphisms, and functoriality of every face and degeneracy.
pub fn check_strict(ux: &UX) -> AxiomReport {
    let x = &ux.x;
    let top = ux.maxdeg;
    let mut w = Vec::new();
    let mut push = |sq: String, d: String| {
        if w.len() < 20 {
            w.push(Witness::new(sq, d));
        }
    };
    for n in 0..=top {
        let lv = &ux.levels[n];
        for (mi, m) in lv.morphisms.iter().enumerate() {
            match ux.inverse(n, mi) {
                Some(inv) if lv.morphisms[inv].dst == m.src => {}
                _ => push(format!("inverse at level {n}"), ux.describe(n, mi)),
            }
            for &m2 in lv.from_object(m.dst) {
                match ux.compose(n, mi, m2) {
                    Some(c) if lv.morphisms[c].src == m.src && lv.morphisms[c].dst == lv.morphisms[m2].dst => {
                        if n > 0 {
                            for i in 0..=n {
                                let (a, b, cc) = (lv.face[i][mi], lv.face[i][m2], lv.face[i][c]);
                                if ux.compose(n - 1, a, b) != Some(cc) {
                                    push(format!("d{i} of a composite at level {n}"), ux.describe(n, c));
                                }
                            }
                        }
                    }
                    _ => push(format!("composition at level {n}"), format!("{} then {}", ux.describe(n, mi), ux.describe(n, m2))),
                }
            }
        }
        for l in x.cells(n) {
            let id = lv.identity[l as usize];
            if n > 0 {
                for i in 0..=n {
                    if lv.face[i][id] != ux.levels[n - 1].identity[x.face(n, i, l) as usize] {
                        push(format!("d{i} of an identity at level {n}"), format!("'{}'", x.name(n, l)));
                    }
                }
            }
            if n < top {
                for j in 0..=n {
                    if lv.degen[j][id] != ux.levels[n + 1].identity[x.degen(n, j, l) as usize] {
                        push(format!("s{j} of an identity at level {n}"), format!("'{}'", x.name(n, l)));
                    }
                }
            }
        }
        for mi in 0..lv.len() {
            let m = lv.morphisms[mi];
            if n > 0 {
                for i in 0..=n {
                    let d = ux.levels[n - 1].morphisms[lv.face[i][mi]];
                    if d.src != x.face(n, i, m.src) || d.dst != x.face(n, i, m.dst) {
                        push(format!("d{i} on endpoints at level {n}"), ux.describe(n, mi));
                    }
                }
                for j in (1..=n).filter(|_| n >= 2) {
                    for i in 0..j {
                        let a = ux.levels[n - 1].face[i][lv.face[j][mi]];
                        let b = ux.levels[n - 1].face[j - 1][lv.face[i][mi]];
                        if a != b {
                            push(format!("d{i} d{j} = d{} d{i} at level {n}", j - 1), ux.describe(n, mi));
                        }
                    }
                }
            }
            if n < top {
                let up = &ux.levels[n + 1];
                for j in 0..=n {
                    let s = lv.degen[j][mi];
                    let sm = up.morphisms[s];
                    if sm.dst != x.degen(n, j, m.dst) {
                        push(format!("s{j} on endpoints at level {n}"), ux.describe(n, mi));
                    }
                    for i in 0..=n + 1 {
                        let lhs = up.face[i][s];
                        let rhs = if i == j || i == j + 1 {
                            Some(mi)
                        } else if i < j {
                            (n > 0).then(|| ux.levels[n - 1].degen[j - 1][lv.face[i][mi]])
                        } else {
                            (n > 0).then(|| ux.levels[n - 1].degen[j][lv.face[i - 1][mi]])
                        };
                        if let Some(rhs) = rhs {
                            if lhs != rhs {
                                push(format!("d{i} s{j} at level {n}"), ux.describe(n, mi));
                            }
                        }
                    }
                    if n + 1 < top {
                        for i in 0..=j {
                            if up.degen[i][s] != up.degen[j + 1][lv.degen[i][mi]] {
                                push(format!("s{i} s{j} = s{} s{i} at level {n}", j + 1), ux.describe(n, mi));
                            }
                        }
                    }
                }
            }
        }
    }
    AxiomReport::new("strict simplicial groupoid", top, w)
}

/// Prop-level object check: the objects of `U_X` are in bijection with `X`
/// through `λ ↦ φ_λ`, inverse to `μ ↦ M μ` on stretched cells.
pub fn check_objects(ux: &UX) -> AxiomReport {
    let x = &ux.x;
    let mut w = Vec::new();
    for n in 0..=ux.maxdeg {
        let mut stretched = 0usize;
        for iv in &ux.intervals {
            for mu in iv.space().cells(n) {
                if iv.interval.is_stretched_cell(n, mu) {
                    stretched += 1;
                    let l = iv.m.apply(n, mu);
                    if long(x, n, l) != iv.edge || ux.phi[n][l as usize] != mu {
                        w.push(Witness::new(format!("level {n}"), format!("stretched cell '{}' is not φ of its image", iv.space().name(n, mu))));
                    }
                }
            }
        }
        if stretched != x.len(n) {
            w.push(Witness::new(format!("level {n}"), format!("{stretched} stretched cells for {} cells of X", x.len(n))));
        }
        for l in x.cells(n) {
            let iv = &ux.intervals[long(x, n, l) as usize];
            if iv.m.apply(n, ux.phi[n][l as usize]) != l {
                w.push(Witness::new(format!("level {n}"), format!("M φ differs from '{}'", x.name(n, l))));
            }
        }
    }
    AxiomReport::new("objects", ux.maxdeg, w)
}

/// Lifts of `G` at level `m` to morphisms into `B` at level `n` along `θ`.
pub fn lifts(ux: &UX, n: usize, theta: &[usize], b: Cell, g: usize) -> Result<Vec<usize>> {
    let lv = &ux.levels[n];
    let mut out = Vec::new();
    for (mi, m) in lv.morphisms.iter().enumerate() {
        if m.dst == b && ux.act_morphism(n, mi, theta)?.1 == g {
            out.push(mi);
        }
    }
    Ok(out)
}

/// Every `(G, B)` with `θ^* B = dst G` whose number of lifts is not one.
pub fn fibration_defects(ux: &UX, n: usize, theta: &[usize]) -> Result<Vec<(usize, Cell, usize)>> {
    let x = &ux.x;
    let m = theta.len() - 1;
    let word = operator_word(theta, n)?;
    let lv = &ux.levels[n];
    let mut acted: HashMap<(Cell, usize), usize> = HashMap::new();
    for mi in 0..lv.len() {
        *acted.entry((lv.morphisms[mi].dst, ux.act_morphism(n, mi, theta)?.1)).or_default() += 1;
    }
    let mut out = Vec::new();
    for b in x.cells(n) {
        let (deg, bp) = x.apply_ops(n, b, &word)?;
        debug_assert_eq!(deg, m);
        for mi in 0..ux.levels[m].len() {
            if ux.levels[m].morphisms[mi].dst == bp {
                let count = acted.get(&(b, mi)).copied().unwrap_or(0);
                if count != 1 {
                    out.push((mi, b, count));
                }
            }
        }
    }
    Ok(out)
}

/// Exactly one lift for every morphism downstairs and object upstairs.
pub fn check_active_discrete_fibration(ux: &UX, n: usize, theta: &[usize]) -> Result<AxiomReport> {
    let m = theta.len() - 1;
    if !is_active(theta, n) {
        return Err(Error::pre(format!("{theta:?} is not active")));
    }
    let defects = fibration_defects(ux, n, theta)?;
    let w = defects
        .iter()
        .take(10)
        .map(|&(g, b, c)| Witness::new(format!("{theta:?} from level {n}"), format!("{c} lifts of {} into '{}'", ux.describe(m, g), ux.x.name(n, b))))
        .collect();
    Ok(AxiomReport::new("active discrete fibration", n, w))
}

/// Every active operator between levels `0..=maxdeg`.
pub fn check_all_active(ux: &UX) -> Result<AxiomReport> {
    let mut parts = Vec::new();
    for n in 0..=ux.maxdeg {
        for m in 0..=ux.maxdeg {
            for theta in crate::sset::monotone_maps(m, n) {
                if is_active(&theta, n) {
                    parts.push(check_active_discrete_fibration(ux, n, &theta)?);
                }
            }
        }
    }
    Ok(AxiomReport::combine("active discrete fibrations", &parts))
}

/// A full subgroupoid picked out of a level.
struct Sub {
    objects: Vec<Cell>,
    morphisms: Vec<usize>,
}

/// Whether the functor given on objects and morphisms is fully faithful and
/// essentially surjective.
fn equivalence(lv_a: &Level, a: &Sub, lv_b: &Level, b: &Sub, obj: impl Fn(Cell) -> Cell, mor: impl Fn(usize) -> usize) -> Option<String> {
    let hom = |lv: &Level, s: &Sub| -> HashMap<(Cell, Cell), Vec<usize>> {
        let mut h: HashMap<(Cell, Cell), Vec<usize>> = HashMap::new();
        for &m in &s.morphisms {
            let mm = lv.morphisms[m];
            h.entry((mm.src, mm.dst)).or_default().push(m);
        }
        h
    };
    let (ha, hb) = (hom(lv_a, a), hom(lv_b, b));
    let image: Vec<Cell> = a.objects.iter().map(|&o| obj(o)).collect();
    for &t in &b.objects {
        if !image.iter().any(|&i| hb.contains_key(&(i, t))) {
            return Some(format!("object {t} is not in the essential image"));
        }
    }
    for (ia, &a1) in a.objects.iter().enumerate() {
        for (ib, &a2) in a.objects.iter().enumerate() {
            let src = ha.get(&(a1, a2)).map(|v| v.as_slice()).unwrap_or(&[]);
            let tgt = hb.get(&(image[ia], image[ib])).map(|v| v.as_slice()).unwrap_or(&[]);
            let mut mapped: Vec<usize> = src.iter().map(|&m| mor(m)).collect();
            mapped.sort();
            mapped.dedup();
            let mut t: Vec<usize> = tgt.to_vec();
            t.sort();
            if mapped.len() != src.len() || mapped != t {
                return Some(format!("hom-sets {a1} -> {a2} are not in bijection"));
            }
        }
    }
    None
}

/// Fibre of the face `d_i` from level `n + 1` over each object of level `n`.
fn fibres(ux: &UX, n: usize, i: usize) -> Vec<Sub> {
    let x = &ux.x;
    let up = &ux.levels[n + 1];
    let down = &ux.levels[n];
    let mut out: Vec<Sub> = x.cells(n).map(|_| Sub { objects: Vec::new(), morphisms: Vec::new() }).collect();
    for p in x.cells(n + 1) {
        out[x.face(n + 1, i, p) as usize].objects.push(p);
    }
    for (m, mm) in up.morphisms.iter().enumerate() {
        let d = up.face[i][m];
        let b = x.face(n + 1, i, mm.src);
        if d == down.identity[b as usize] {
            out[b as usize].morphisms.push(m);
        }
    }
    out
}

/// Both families of squares, as homotopy pullbacks: active legs are checked
/// to be discrete fibrations, then the induced functor on strict fibres must
/// be an equivalence for every object.
pub fn check_decomposition_grpd(ux: &UX) -> Result<AxiomReport> {
    let x = &ux.x;
    let mut w = Vec::new();
    let mut parts = Vec::new();
    for n in 2..ux.maxdeg {
        for i in 1..n {
            for (name, top_i, left_i, right_i, bottom_i) in [("upper", i + 1, 0, 0, i), ("lower", i, n + 1, n, i)] {
                let mut th_top: Vec<usize> = (0..=n + 1).filter(|&v| v != top_i).collect();
                th_top.truncate(n + 1);
                parts.push(check_active_discrete_fibration(ux, n + 1, &th_top)?);
                let th_bot: Vec<usize> = (0..=n).filter(|&v| v != bottom_i).collect();
                parts.push(check_active_discrete_fibration(ux, n, &th_bot)?);
                let fa = fibres(ux, n, top_i);
                let fb = fibres(ux, n - 1, bottom_i);
                for b in x.cells(n) {
                    let rb = x.face(n, right_i, b);
                    let lv_up = &ux.levels[n + 1];
                    let lv = &ux.levels[n];
                    if let Some(why) = equivalence(
                        lv_up,
                        &fa[b as usize],
                        lv,
                        &fb[rb as usize],
                        |p| x.face(n + 1, left_i, p),
                        |m| lv_up.face[left_i][m],
                    ) {
                        w.push(Witness::new(format!("{name} n={n} i={i}"), format!("over '{}': {why}", x.name(n, b))));
                    }
                }
            }
        }
    }
    parts.push(AxiomReport::new("fibre equivalences", ux.maxdeg, w));
    Ok(AxiomReport::combine("decomposition (groupoids)", &parts))
}

/// `s_0` from level 0 to level 1 is injective on objects and fully faithful.
pub fn check_complete_grpd(ux: &UX) -> AxiomReport {
    let x = &ux.x;
    let mut w = Vec::new();
    let mut seen = HashMap::new();
    for o in x.cells(0) {
        if let Some(prev) = seen.insert(x.degen(0, 0, o), o) {
            w.push(Witness::new("s0 on objects", format!("'{}' and '{}' collide", x.name(0, prev), x.name(0, o))));
        }
    }
    let (l0, l1) = (&ux.levels[0], &ux.levels[1]);
    let all0 = Sub { objects: x.cells(0).collect(), morphisms: (0..l0.len()).collect() };
    let objs1: Vec<Cell> = x.cells(0).map(|o| x.degen(0, 0, o)).collect();
    let mor1: Vec<usize> = (0..l1.len()).filter(|&m| objs1.contains(&l1.morphisms[m].src) && objs1.contains(&l1.morphisms[m].dst)).collect();
    let img = Sub { objects: objs1, morphisms: mor1 };
    if let Some(why) = equivalence(l0, &all0, l1, &img, |o| x.degen(0, 0, o), |m| l0.degen[0][m]) {
        w.push(Witness::new("s0 on morphisms", why));
    }
    AxiomReport::new("complete (groupoids)", 1, w)
}

/// `I: X -> U_X` sends `λ` to its object; CULF is checked on the `d_1` square
/// by comparing the fibres of `d_1` in `X` and in `U_X`, and on `s_0`.
pub fn classifying_map(ux: &UX) -> Result<AxiomReport> {
    let x = &ux.x;
    let mut parts = vec![check_active_discrete_fibration(ux, 2, &[0, 2])?, check_active_discrete_fibration(ux, 0, &[0, 0])?];
    let mut w = Vec::new();
    let fib = fibres(ux, 1, 1);
    for f in x.cells(1) {
        let s = &fib[f as usize];
        let xs: Vec<Cell> = x.cells(2).filter(|&c| x.face(2, 1, c) == f).collect();
        if s.objects != xs {
            w.push(Witness::new("d1 fibre objects", format!("over '{}'", x.name(1, f))));
        }
        if s.morphisms.iter().any(|&m| ux.levels[2].morphisms[m].src != ux.levels[2].morphisms[m].dst || ux.levels[2].identity[ux.levels[2].morphisms[m].src as usize] != m) {
            w.push(Witness::new("d1 fibre morphisms", format!("over '{}' the fibre is not discrete", x.name(1, f))));
        }
    }
    for o in x.cells(0) {
        let e = x.degen(0, 0, o);
        let over: Vec<Cell> = x.cells(0).filter(|&p| x.degen(0, 0, p) == e).collect();
        if over != [o] {
            w.push(Witness::new("s0 fibre", format!("over '{}'", x.name(1, e))));
        }
    }
    parts.push(AxiomReport::new("fibres of I", 2, w));
    Ok(AxiomReport::combine("classifying map", &parts))
}

/// Result of the modification search.
#[derive(Clone, Debug, Serialize)]
pub struct Modifications {
    /// Each solution lists, per level, the chosen automorphism of every cell.
    pub solutions: Vec<Vec<Vec<usize>>>,
    /// Set when the search stopped at its limit.
    pub truncated: bool,
}

impl Modifications {
    pub fn identity_only(&self, ux: &UX) -> bool {
        self.solutions.len() == 1 && self.solutions[0].iter().enumerate().all(|(n, lv)| lv.iter().enumerate().all(|(l, &m)| ux.levels[n].identity[l] == m))
    }
}

type Var = (usize, Cell);

/// All families `Γ_n^λ ∈ Aut(φ_λ)` with `d_i Γ_n^λ = Γ_{n-1}^{λ d^i}` and
/// `s_j Γ_n^λ = Γ_{n+1}^{λ s^j}`, by arc consistency and backtracking.
pub fn enumerate_modifications(ux: &UX, limit: usize) -> Modifications {
    let x = &ux.x;
    let top = ux.maxdeg;
    let mut domains: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| x.cells(n).map(|l| ux.levels[n].from_object(l).iter().copied().filter(|&m| ux.levels[n].morphisms[m].dst == l).collect()).collect())
        .collect();
    // arcs (from, to, table): value v at `from` forces table[v] at `to`
    let mut arcs: Vec<(Var, Var, &[usize])> = Vec::new();
    for n in 0..=top {
        for l in x.cells(n) {
            if n > 0 {
                for i in 0..=n {
                    arcs.push(((n, l), (n - 1, x.face(n, i, l)), &ux.levels[n].face[i]));
                }
            }
            if n < top {
                for j in 0..=n {
                    arcs.push(((n, l), (n + 1, x.degen(n, j, l)), &ux.levels[n].degen[j]));
                }
            }
        }
    }
    let mut out = Modifications { solutions: Vec::new(), truncated: false };
    if propagate(&mut domains, &arcs) {
        search(&mut domains, &arcs, &mut out, limit);
    }
    out
}

fn propagate(d: &mut [Vec<Vec<usize>>], arcs: &[(Var, Var, &[usize])]) -> bool {
    loop {
        let mut changed = false;
        for &((n, l), (m, k), table) in arcs {
            let from = &d[n][l as usize];
            let to = &d[m][k as usize];
            let keep_from: Vec<usize> = from.iter().copied().filter(|&v| to.binary_search(&table[v]).is_ok()).collect();
            let mut image: Vec<usize> = keep_from.iter().map(|&v| table[v]).collect();
            image.sort();
            image.dedup();
            let keep_to: Vec<usize> = to.iter().copied().filter(|v| image.binary_search(v).is_ok()).collect();
            if keep_from.len() != from.len() {
                d[n][l as usize] = keep_from;
                changed = true;
            }
            if keep_to.len() != d[m][k as usize].len() {
                d[m][k as usize] = keep_to;
                changed = true;
            }
            if d[n][l as usize].is_empty() || d[m][k as usize].is_empty() {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(d: &mut [Vec<Vec<usize>>], arcs: &[(Var, Var, &[usize])], out: &mut Modifications, limit: usize) {
    if out.solutions.len() >= limit {
        out.truncated = true;
        return;
    }
    let branch = d.iter().enumerate().flat_map(|(n, lv)| lv.iter().enumerate().filter(|(_, v)| v.len() > 1).map(move |(l, v)| (v.len(), n, l))).min();
    match branch {
        None => out.solutions.push(d.iter().map(|lv| lv.iter().map(|v| v[0]).collect()).collect()),
        Some((_, n, l)) => {
            for v in d[n][l].clone() {
                let mut trial = d.to_vec();
                trial[n][l] = vec![v];
                if propagate(&mut trial, arcs) {
                    search(&mut trial, arcs, out, limit);
                }
            }
        }
    }
}

/// Whether the underlying maps of each solution agree along active
/// operators, as they must for a modification.
pub fn check_active_invariance(ux: &UX, mods: &Modifications) -> Result<AxiomReport> {
    let x = &ux.x;
    let mut w = Vec::new();
    for sol in &mods.solutions {
        for n in 0..=ux.maxdeg {
            for m in 0..=ux.maxdeg {
                for theta in crate::sset::monotone_maps(m, n).into_iter().filter(|t| is_active(t, n)) {
                    let word = operator_word(&theta, n)?;
                    for l in x.cells(n) {
                        let (_, lp) = x.apply_ops(n, l, &word)?;
                        let a = ux.levels[n].morphisms[sol[n][l as usize]];
                        let b = ux.levels[m].morphisms[sol[m][lp as usize]];
                        if ux.iso(&a) != ux.iso(&b) {
                            w.push(Witness::new(format!("{theta:?}"), format!("underlying maps differ at '{}'", x.name(n, l))));
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport::new("active invariance", ux.maxdeg, w))
}

#[derive(Serialize)]
struct LevelSummary {
    level: usize,
    objects: usize,
    morphisms: usize,
    automorphisms: usize,
}

/// Per-level counts.
pub fn summary(ux: &UX) -> serde_json::Value {
    let levels: Vec<LevelSummary> = ux
        .levels
        .iter()
        .enumerate()
        .map(|(n, lv)| LevelSummary {
            level: n,
            objects: ux.x.len(n),
            morphisms: lv.len(),
            automorphisms: lv.morphisms.iter().filter(|m| m.src == m.dst).count(),
        })
        .collect();
    serde_json::json!({ "maxdeg": ux.maxdeg, "levels": levels })
}

/// Every stretched isomorphism is CULF.
pub fn check_isos_culf(ux: &UX) -> AxiomReport {
    let mut w = Vec::new();
    for ((f, g), maps) in &ux.isos {
        for m in maps {
            let s = SimpMap { source: ux.intervals[*f as usize].space().clone(), target: ux.intervals[*g as usize].space().clone(), comp: m.clone() };
            if !is_culf(&s).passed() {
                w.push(Witness::new("isomorphism", format!("'{}' -> '{}' is not CULF", ux.x.name(1, *f), ux.x.name(1, *g))));
            }
        }
    }
    AxiomReport::new("isomorphisms are CULF", ux.maxdeg, w)
}
