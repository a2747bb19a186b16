//! Degreewise-finite truncated simplicial sets and simplicial maps.
//!
//! Cells of each degree are stored in the sorted order of their string ids and
//! addressed internally by their position (`Cell`). Face and degeneracy
//! operators are dense tables over those positions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Witness};

/// Position of a cell inside its degree.
pub type Cell = u32;

/// A single simplicial operator, applied to a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Face(usize),
    Degen(usize),
}

impl Op {
    /// Parses `d3`, `s0`, `d_3` or `s_0`.
    pub fn parse(s: &str) -> Result<Op> {
        let s = s.trim();
        let (head, rest) = s.split_at(s.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
        let rest = rest.trim_start_matches('_');
        let i: usize = rest.parse().map_err(|_| Error::schema(format!("bad operator '{s}'")))?;
        match head {
            "d" => Ok(Op::Face(i)),
            "s" => Ok(Op::Degen(i)),
            _ => Err(Error::schema(format!("bad operator '{s}'"))),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Face(i) => write!(f, "d{i}"),
            Op::Degen(i) => write!(f, "s{i}"),
        }
    }
}

/// Public, string-addressed handle to a cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellRef {
    pub degree: usize,
    pub id: String,
}

impl CellRef {
    pub fn new(degree: usize, id: impl Into<String>) -> Self {
        CellRef { degree, id: id.into() }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.id, self.degree)
    }
}

struct Inner {
    dim: usize,
    names: Vec<Vec<String>>,
    index: Vec<HashMap<String, Cell>>,
    // face[k][i][c] for 1 <= k <= dim; face[0] is empty
    face: Vec<Vec<Vec<Cell>>>,
    // degen[k][i][c] for 0 <= k < dim; degen[dim] is empty
    degen: Vec<Vec<Vec<Cell>>>,
}

/// An immutable truncated simplicial set. Cloning is cheap.
#[derive(Clone)]
pub struct TruncSSet(Arc<Inner>);

impl PartialEq for TruncSSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.dim == other.0.dim
                && self.0.names == other.0.names
                && self.0.face == other.0.face
                && self.0.degen == other.0.degen)
    }
}

impl Eq for TruncSSet {}

impl fmt::Debug for TruncSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSSet(dim={}, counts={:?})", self.dim(), self.counts())
    }
}

impl TruncSSet {
    /// Builds a set from structured cell values. Ids are computed by `id`,
    /// operators act on values and the results are looked up by equality.
    pub fn from_fn<T, FI, FF, FD>(dim: usize, levels: Vec<Vec<T>>, id: FI, face: FF, degen: FD) -> Result<TruncSSet>
    where
        T: Eq + Hash,
        FI: Fn(usize, &T) -> String,
        FF: Fn(usize, usize, &T) -> Result<T>,
        FD: Fn(usize, usize, &T) -> Result<T>,
    {
        if dim < 1 {
            return Err(Error::schema("dimension bound must be at least 1"));
        }
        if levels.len() != dim + 1 {
            return Err(Error::schema(format!("expected {} levels, got {}", dim + 1, levels.len())));
        }
        let mut names = Vec::with_capacity(dim + 1);
        let mut lookups: Vec<HashMap<&T, Cell>> = Vec::with_capacity(dim + 1);
        let mut orders = Vec::with_capacity(dim + 1);
        for (k, level) in levels.iter().enumerate() {
            let raw: Vec<String> = level.iter().map(|v| id(k, v)).collect();
            let mut order: Vec<usize> = (0..level.len()).collect();
            order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
            let sorted: Vec<String> = order.iter().map(|&o| raw[o].clone()).collect();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::schema(format!("duplicate id '{}' in degree {k}", w[0])));
            }
            let mut lookup = HashMap::with_capacity(level.len());
            for (pos, &o) in order.iter().enumerate() {
                if lookup.insert(&level[o], pos as Cell).is_some() {
                    return Err(Error::schema(format!("duplicate cell value in degree {k}")));
                }
            }
            names.push(sorted);
            lookups.push(lookup);
            orders.push(order);
        }
        let find = |k: usize, v: &T, table: &str| -> Result<Cell> {
            lookups[k].get(v).copied().ok_or_else(|| Error::Dangling { table: table.to_string(), id: id(k, v) })
        };
        let mut faces = vec![Vec::new()];
        for k in 1..=dim {
            let mut per_i = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let table = format!("face {k},{i}");
                let mut t = Vec::with_capacity(orders[k].len());
                for &o in &orders[k] {
                    t.push(find(k - 1, &face(k, i, &levels[k][o])?, &table)?);
                }
                per_i.push(t);
            }
            faces.push(per_i);
        }
        let mut degens = Vec::with_capacity(dim + 1);
        for k in 0..dim {
            let mut per_i = Vec::with_capacity(k + 1);
            for i in 0..=k {
                let table = format!("degen {k},{i}");
                let mut t = Vec::with_capacity(orders[k].len());
                for &o in &orders[k] {
                    t.push(find(k + 1, &degen(k, i, &levels[k][o])?, &table)?);
                }
                per_i.push(t);
            }
            degens.push(per_i);
        }
        degens.push(Vec::new());
        Ok(Self::assemble(dim, names, faces, degens))
    }

    /// Builds a set from sorted ids and position-based tables.
    pub fn from_raw(
        dim: usize,
        names: Vec<Vec<String>>,
        face: Vec<Vec<Vec<Cell>>>,
        degen: Vec<Vec<Vec<Cell>>>,
    ) -> Result<TruncSSet> {
        if dim < 1 {
            return Err(Error::schema("dimension bound must be at least 1"));
        }
        if names.len() != dim + 1 || face.len() != dim + 1 || degen.len() != dim + 1 {
            return Err(Error::schema("level count does not match dimension"));
        }
        for (k, level) in names.iter().enumerate() {
            if level.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::schema(format!("ids of degree {k} are not sorted and unique")));
            }
        }
        for k in 0..=dim {
            let want_f = if k == 0 { 0 } else { k + 1 };
            let want_d = if k == dim { 0 } else { k + 1 };
            if face[k].len() != want_f || degen[k].len() != want_d {
                return Err(Error::schema(format!("operator count wrong in degree {k}")));
            }
            for t in &face[k] {
                if t.len() != names[k].len() || t.iter().any(|&c| c as usize >= names[k - 1].len()) {
                    return Err(Error::schema(format!("face table of degree {k} malformed")));
                }
            }
            for t in &degen[k] {
                if t.len() != names[k].len() || t.iter().any(|&c| c as usize >= names[k + 1].len()) {
                    return Err(Error::schema(format!("degeneracy table of degree {k} malformed")));
                }
            }
        }
        Ok(Self::assemble(dim, names, face, degen))
    }

    fn assemble(dim: usize, names: Vec<Vec<String>>, face: Vec<Vec<Vec<Cell>>>, degen: Vec<Vec<Vec<Cell>>>) -> TruncSSet {
        let index = names
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, n)| (n.clone(), i as Cell)).collect())
            .collect();
        TruncSSet(Arc::new(Inner { dim, names, index, face, degen }))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn len(&self, k: usize) -> usize {
        self.0.names.get(k).map_or(0, |l| l.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len(0) == 0
    }

    pub fn counts(&self) -> Vec<usize> {
        self.0.names.iter().map(|l| l.len()).collect()
    }

    pub fn cells(&self, k: usize) -> std::ops::Range<Cell> {
        0..self.len(k) as Cell
    }

    pub fn name(&self, k: usize, c: Cell) -> &str {
        &self.0.names[k][c as usize]
    }

    pub fn names(&self, k: usize) -> &[String] {
        &self.0.names[k]
    }

    pub fn lookup(&self, k: usize, id: &str) -> Option<Cell> {
        self.0.index.get(k)?.get(id).copied()
    }

    pub fn cell(&self, r: &CellRef) -> Result<Cell> {
        if r.degree > self.dim() {
            return Err(Error::Truncation { degree: r.degree, dim: self.dim() });
        }
        self.lookup(r.degree, &r.id).ok_or_else(|| Error::UnknownCell { degree: r.degree, id: r.id.clone() })
    }

    pub fn cell_ref(&self, k: usize, c: Cell) -> CellRef {
        CellRef::new(k, self.name(k, c))
    }

    pub fn face(&self, k: usize, i: usize, c: Cell) -> Cell {
        self.0.face[k][i][c as usize]
    }

    pub fn degen(&self, k: usize, i: usize, c: Cell) -> Cell {
        self.0.degen[k][i][c as usize]
    }

    pub fn face_table(&self, k: usize, i: usize) -> &[Cell] {
        &self.0.face[k][i]
    }

    pub fn degen_table(&self, k: usize, i: usize) -> &[Cell] {
        &self.0.degen[k][i]
    }

    /// Vertex `j` of a `k`-cell.
    pub fn vertex(&self, k: usize, c: Cell, j: usize) -> Cell {
        self.restrict(k, c, &[j])
    }

    pub fn vertices(&self, k: usize, c: Cell) -> Vec<Cell> {
        (0..=k).map(|j| self.vertex(k, c, j)).collect()
    }

    /// The face spanned by the strictly increasing vertex list `verts`.
    pub fn restrict(&self, k: usize, c: Cell, verts: &[usize]) -> Cell {
        let mut cur = c;
        let mut deg = k;
        for v in (0..=k).rev() {
            if !verts.contains(&v) {
                cur = self.face(deg, v, cur);
                deg -= 1;
            }
        }
        cur
    }

    /// The spine edges `(j, j+1)` of a cell of degree at least one.
    pub fn spine(&self, k: usize, c: Cell) -> Vec<Cell> {
        (0..k).map(|j| self.restrict(k, c, &[j, j + 1])).collect()
    }

    /// Pulls a `k`-cell back along the monotone map `theta: [m] -> [k]`.
    pub fn act(&self, k: usize, c: Cell, theta: &[usize]) -> Result<Cell> {
        let (m, out) = self.apply_ops(k, c, &operator_word(theta, k)?)?;
        debug_assert_eq!(m + 1, theta.len());
        Ok(out)
    }

    /// Applies operators left to right.
    pub fn apply_ops(&self, k: usize, c: Cell, word: &[Op]) -> Result<(usize, Cell)> {
        let mut deg = k;
        let mut cur = c;
        for op in word {
            match *op {
                Op::Face(i) => {
                    if deg == 0 || i > deg {
                        return Err(Error::pre(format!("{op} does not apply in degree {deg}")));
                    }
                    cur = self.face(deg, i, cur);
                    deg -= 1;
                }
                Op::Degen(i) => {
                    if i > deg {
                        return Err(Error::pre(format!("{op} does not apply in degree {deg}")));
                    }
                    if deg + 1 > self.dim() {
                        return Err(Error::Truncation { degree: deg + 1, dim: self.dim() });
                    }
                    cur = self.degen(deg, i, cur);
                    deg += 1;
                }
            }
        }
        Ok((deg, cur))
    }

    pub fn apply_word(&self, c: &CellRef, word: &[Op]) -> Result<CellRef> {
        let cell = self.cell(c)?;
        let (deg, out) = self.apply_ops(c.degree, cell, word)?;
        Ok(self.cell_ref(deg, out))
    }

    /// The image of a cell of degree `k >= 1` under the active map `[1] -> [k]`.
    pub fn long_edge(&self, k: usize, c: Cell) -> Result<Cell> {
        if k == 0 {
            return Err(Error::pre("long edge of a 0-cell is undefined"));
        }
        let mut cur = c;
        for deg in (2..=k).rev() {
            cur = self.face(deg, 1, cur);
        }
        Ok(cur)
    }

    /// Long edge extended to degree 0 by the degenerate edge.
    pub fn long_edge_any(&self, k: usize, c: Cell) -> Cell {
        if k == 0 {
            self.degen(0, 0, c)
        } else {
            self.long_edge(k, c).expect("degree checked")
        }
    }

    pub fn is_degenerate(&self, k: usize, c: Cell) -> bool {
        if k == 0 {
            return false;
        }
        (0..k).any(|i| self.degen(k - 1, i, self.face(k, i, c)) == c)
    }

    /// Restriction to degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> Result<TruncSSet> {
        if n == 0 || n > self.dim() {
            return Err(Error::Truncation { degree: n, dim: self.dim() });
        }
        if n == self.dim() {
            return Ok(self.clone());
        }
        let names = self.0.names[..=n].to_vec();
        let face = self.0.face[..=n].to_vec();
        let mut degen = self.0.degen[..n].to_vec();
        degen.push(Vec::new());
        TruncSSet::from_raw(n, names, face, degen)
    }

    /// Canonical JSON text: sorted keys, sorted ids, trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("serializable")
    }

    fn to_doc(&self) -> SSetDoc {
        let mut face = BTreeMap::new();
        let mut degen = BTreeMap::new();
        for k in 0..=self.dim() {
            for (i, t) in self.0.face[k].iter().enumerate() {
                face.insert(format!("{k},{i}"), self.table_doc(t, k, k - 1));
            }
            for (i, t) in self.0.degen[k].iter().enumerate() {
                degen.insert(format!("{k},{i}"), self.table_doc(t, k, k + 1));
            }
        }
        SSetDoc { cells: self.0.names.clone(), degen, dim: self.dim(), face }
    }

    fn table_doc(&self, t: &[Cell], from: usize, to: usize) -> BTreeMap<String, String> {
        t.iter().enumerate().map(|(c, &d)| (self.name(from, c as Cell).to_string(), self.name(to, d).to_string())).collect()
    }

    /// Parses JSON and validates the simplicial identities.
    pub fn from_json_str(s: &str) -> Result<TruncSSet> {
        let value: serde_json::Value = serde_json::from_str(s)?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<TruncSSet> {
        let doc: SSetDoc = serde_json::from_value(value.clone()).map_err(|e| Error::schema(e.to_string()))?;
        let x = doc.into_sset()?;
        let report = validate_simplicial(&x);
        if !report.passed() {
            return Err(Error::NotSimplicial(report));
        }
        Ok(x)
    }
}

#[derive(Serialize, Deserialize)]
struct SSetDoc {
    cells: Vec<Vec<String>>,
    degen: BTreeMap<String, BTreeMap<String, String>>,
    dim: usize,
    face: BTreeMap<String, BTreeMap<String, String>>,
}

impl SSetDoc {
    fn into_sset(self) -> Result<TruncSSet> {
        let dim = self.dim;
        if self.cells.len() != dim + 1 {
            return Err(Error::schema(format!("'cells' must have {} levels", dim + 1)));
        }
        let mut names = self.cells;
        for (k, lvl) in names.iter_mut().enumerate() {
            lvl.sort();
            if lvl.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::schema(format!("duplicate id in degree {k}")));
            }
        }
        let index: Vec<HashMap<&str, Cell>> =
            names.iter().map(|l| l.iter().enumerate().map(|(i, n)| (n.as_str(), i as Cell)).collect()).collect();
        let table = |maps: &BTreeMap<String, BTreeMap<String, String>>,
                     kind: &str,
                     k: usize,
                     i: usize,
                     to: usize|
         -> Result<Vec<Cell>> {
            let key = format!("{k},{i}");
            let m = maps.get(&key).ok_or_else(|| Error::schema(format!("missing {kind} key \"{key}\"")))?;
            if m.len() != names[k].len() {
                return Err(Error::schema(format!("{kind} \"{key}\" is not total on degree {k}")));
            }
            names[k]
                .iter()
                .map(|n| {
                    let v = m.get(n).ok_or_else(|| Error::schema(format!("{kind} \"{key}\" has no entry for '{n}'")))?;
                    index[to].get(v.as_str()).copied().ok_or_else(|| Error::Dangling { table: format!("{kind} {key}"), id: v.clone() })
                })
                .collect()
        };
        let mut face = vec![Vec::new()];
        let mut degen = Vec::new();
        for k in 1..=dim {
            face.push((0..=k).map(|i| table(&self.face, "face", k, i, k - 1)).collect::<Result<Vec<_>>>()?);
        }
        for k in 0..dim {
            degen.push((0..=k).map(|i| table(&self.degen, "degen", k, i, k + 1)).collect::<Result<Vec<_>>>()?);
        }
        degen.push(Vec::new());
        let expected_face: usize = (1..=dim).map(|k| k + 1).sum();
        let expected_degen: usize = (0..dim).map(|k| k + 1).sum();
        if self.face.len() != expected_face || self.degen.len() != expected_degen {
            return Err(Error::schema("unexpected operator keys"));
        }
        TruncSSet::from_raw(dim, names, face, degen)
    }
}

/// Operator word realising the pullback along a monotone `theta: [m] -> [k]`:
/// faces deleting the missed vertices, then degeneracies for the repeats.
pub fn operator_word(theta: &[usize], k: usize) -> Result<Vec<Op>> {
    if theta.is_empty() || theta.windows(2).any(|w| w[0] > w[1]) || theta.iter().any(|&t| t > k) {
        return Err(Error::pre(format!("{theta:?} is not a monotone map into [{k}]")));
    }
    let mut word = Vec::new();
    for v in (0..=k).rev() {
        if !theta.contains(&v) {
            word.push(Op::Face(v));
        }
    }
    for j in 0..theta.len() - 1 {
        if theta[j] == theta[j + 1] {
            word.push(Op::Degen(j));
        }
    }
    Ok(word)
}

/// Whether a monotone map preserves both endpoints.
pub fn is_active(theta: &[usize], k: usize) -> bool {
    !theta.is_empty() && theta[0] == 0 && *theta.last().unwrap() == k
}

/// All monotone maps `[m] -> [k]`.
pub fn monotone_maps(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=k {
            cur.push(v);
            go(m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k, &mut Vec::new(), &mut out);
    out
}

/// Checks every simplicial identity that is defined within the truncation.
pub fn validate_simplicial(x: &TruncSSet) -> AxiomReport {
    let n = x.dim();
    let mut w = Vec::new();
    let cell = |k: usize, c: Cell| format!("'{}' (degree {k})", x.name(k, c));
    // d_i d_j = d_{j-1} d_i, i < j
    for k in 2..=n {
        for j in 1..=k {
            for i in 0..j {
                for c in x.cells(k) {
                    if x.face(k - 1, i, x.face(k, j, c)) != x.face(k - 1, j - 1, x.face(k, i, c)) {
                        w.push(Witness::new(format!("d{i}d{j}=d{}d{i}", j - 1), format!("fails on {}", cell(k, c))));
                    }
                }
            }
        }
    }
    for k in 0..n {
        for j in 0..=k {
            for c in x.cells(k) {
                let s = x.degen(k, j, c);
                // d_j s_j = id = d_{j+1} s_j
                if x.face(k + 1, j, s) != c {
                    w.push(Witness::new(format!("d{j}s{j}=id"), format!("d{j} s{j} != id on {}", cell(k, c))));
                }
                if x.face(k + 1, j + 1, s) != c {
                    w.push(Witness::new(format!("d{}s{j}=id", j + 1), format!("d{} s{j} != id on {}", j + 1, cell(k, c))));
                }
                if k >= 1 {
                    // d_i s_j = s_{j-1} d_i, i < j
                    for i in 0..j {
                        if x.face(k + 1, i, s) != x.degen(k - 1, j - 1, x.face(k, i, c)) {
                            w.push(Witness::new(format!("d{i}s{j}=s{}d{i}", j - 1), format!("fails on {}", cell(k, c))));
                        }
                    }
                    // d_i s_j = s_j d_{i-1}, i > j + 1
                    for i in j + 2..=k + 1 {
                        if x.face(k + 1, i, s) != x.degen(k - 1, j, x.face(k, i - 1, c)) {
                            w.push(Witness::new(format!("d{i}s{j}=s{j}d{}", i - 1), format!("fails on {}", cell(k, c))));
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i, i <= j
                if k + 2 <= n {
                    for i in 0..=j {
                        if x.degen(k + 1, i, s) != x.degen(k + 1, j + 1, x.degen(k, i, c)) {
                            w.push(Witness::new(format!("s{i}s{j}=s{}s{i}", j + 1), format!("fails on {}", cell(k, c))));
                        }
                    }
                }
            }
        }
    }
    AxiomReport::new("simplicial", n, w)
}

/// Levelwise cell assignment, indexed by degree then source position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellMap(pub Vec<Vec<Cell>>);

impl CellMap {
    pub fn identity(x: &TruncSSet, top: usize) -> CellMap {
        CellMap((0..=top).map(|k| x.cells(k).collect()).collect())
    }

    pub fn top_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, k: usize, c: Cell) -> Cell {
        self.0[k][c as usize]
    }

    /// `other ∘ self`, truncated to the common degrees.
    pub fn then(&self, other: &CellMap) -> CellMap {
        let top = self.top_degree().min(other.top_degree());
        CellMap((0..=top).map(|k| self.0[k].iter().map(|&c| other.0[k][c as usize]).collect()).collect())
    }

    pub fn truncate(&self, top: usize) -> CellMap {
        CellMap(self.0[..=top].to_vec())
    }

    pub fn inverse(&self, target: &TruncSSet) -> Option<CellMap> {
        let mut out = Vec::with_capacity(self.0.len());
        for (k, t) in self.0.iter().enumerate() {
            if t.len() != target.len(k) {
                return None;
            }
            let mut inv = vec![Cell::MAX; t.len()];
            for (c, &d) in t.iter().enumerate() {
                if inv[d as usize] != Cell::MAX {
                    return None;
                }
                inv[d as usize] = c as Cell;
            }
            out.push(inv);
        }
        Some(CellMap(out))
    }
}

/// A simplicial map between truncated sets, defined up to the smaller bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpMap {
    pub source: TruncSSet,
    pub target: TruncSSet,
    pub comp: CellMap,
}

impl SimpMap {
    pub fn new(source: TruncSSet, target: TruncSSet, comp: CellMap) -> Result<SimpMap> {
        let top = source.dim().min(target.dim());
        if comp.0.len() != top + 1 {
            return Err(Error::schema(format!("map must be defined on degrees 0..={top}")));
        }
        for k in 0..=top {
            if comp.0[k].len() != source.len(k) || comp.0[k].iter().any(|&c| c as usize >= target.len(k)) {
                return Err(Error::schema(format!("map component in degree {k} is malformed")));
            }
        }
        Ok(SimpMap { source, target, comp })
    }

    pub fn from_fn(source: &TruncSSet, target: &TruncSSet, f: impl Fn(usize, Cell) -> Cell) -> Result<SimpMap> {
        let top = source.dim().min(target.dim());
        let comp = CellMap((0..=top).map(|k| source.cells(k).map(|c| f(k, c)).collect()).collect());
        SimpMap::new(source.clone(), target.clone(), comp)
    }

    pub fn identity(x: &TruncSSet) -> SimpMap {
        SimpMap { source: x.clone(), target: x.clone(), comp: CellMap::identity(x, x.dim()) }
    }

    pub fn top_degree(&self) -> usize {
        self.comp.top_degree()
    }

    pub fn apply(&self, k: usize, c: Cell) -> Cell {
        self.comp.get(k, c)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimpMap) -> Result<SimpMap> {
        if self.target != next.source {
            return Err(Error::pre("maps are not composable"));
        }
        let comp = self.comp.then(&next.comp);
        let top = comp.top_degree();
        let comp = if top == self.source.dim().min(next.target.dim()) { comp } else { comp.truncate(top) };
        Ok(SimpMap { source: self.source.clone(), target: next.target.clone(), comp })
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        (0..=self.top_degree()).all(|k| {
            let n = self.target.len(k);
            if self.source.len(k) != n {
                return false;
            }
            let mut seen = vec![false; n];
            self.comp.0[k].iter().all(|&c| !std::mem::replace(&mut seen[c as usize], true))
        })
    }

    /// Checks commutation with every operator inside the common truncation.
    pub fn naturality(&self) -> AxiomReport {
        let (x, y) = (&self.source, &self.target);
        let top = self.top_degree();
        let mut w = Vec::new();
        for k in 1..=top {
            for i in 0..=k {
                for c in x.cells(k) {
                    if self.apply(k - 1, x.face(k, i, c)) != y.face(k, i, self.apply(k, c)) {
                        w.push(Witness::new(format!("d{i} in degree {k}"), format!("fails on '{}'", x.name(k, c))));
                    }
                }
            }
        }
        for k in 0..top {
            for i in 0..=k {
                for c in x.cells(k) {
                    if self.apply(k + 1, x.degen(k, i, c)) != y.degen(k, i, self.apply(k, c)) {
                        w.push(Witness::new(format!("s{i} in degree {k}"), format!("fails on '{}'", x.name(k, c))));
                    }
                }
            }
        }
        AxiomReport::new("naturality", top, w)
    }

    /// JSON of the form `{"levels": [{src: tgt, ...}, ...]}`.
    pub fn to_json_string(&self) -> String {
        let levels: Vec<BTreeMap<String, String>> = (0..=self.top_degree())
            .map(|k| {
                self.source
                    .cells(k)
                    .map(|c| (self.source.name(k, c).to_string(), self.target.name(k, self.apply(k, c)).to_string()))
                    .collect()
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&MapDoc { levels }).expect("serializable");
        s.push('\n');
        s
    }

    /// Reads a map JSON. Missing top degrees are filled in when the target is
    /// Segal and the listed degrees reach degree one.
    pub fn from_json_str(source: &TruncSSet, target: &TruncSSet, s: &str) -> Result<SimpMap> {
        let doc: MapDoc = serde_json::from_str(s).map_err(|e| Error::schema(e.to_string()))?;
        let top = source.dim().min(target.dim());
        if doc.levels.is_empty() || doc.levels.len() > top + 1 {
            return Err(Error::schema(format!("map must list between 1 and {} levels", top + 1)));
        }
        let mut comp = Vec::new();
        for (k, lvl) in doc.levels.iter().enumerate() {
            let mut t = Vec::with_capacity(source.len(k));
            for c in source.cells(k) {
                let name = source.name(k, c);
                let v = lvl.get(name).ok_or_else(|| Error::schema(format!("map has no entry for '{name}' in degree {k}")))?;
                t.push(target.lookup(k, v).ok_or_else(|| Error::Dangling { table: format!("map level {k}"), id: v.clone() })?);
            }
            comp.push(t);
        }
        while comp.len() <= top {
            let k = comp.len();
            if k < 2 {
                return Err(Error::schema("map must list degrees 0 and 1"));
            }
            let mut by_spine: HashMap<Vec<Cell>, Cell> = HashMap::new();
            for t in target.cells(k) {
                by_spine.insert(target.spine(k, t), t);
            }
            let mut level = Vec::with_capacity(source.len(k));
            for c in source.cells(k) {
                let sp: Vec<Cell> = source.spine(k, c).iter().map(|&e| comp[1][e as usize]).collect();
                level.push(*by_spine.get(&sp).ok_or_else(|| Error::pre(format!("cannot extend map to '{}'", source.name(k, c))))?);
            }
            comp.push(level);
        }
        let m = SimpMap::new(source.clone(), target.clone(), CellMap(comp))?;
        let nat = m.naturality();
        if !nat.passed() {
            return Err(Error::NotSimplicial(nat));
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct MapDoc {
    levels: Vec<BTreeMap<String, String>>,
}
