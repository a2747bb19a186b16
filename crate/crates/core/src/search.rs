//! Backtracking enumeration of simplicial maps.
//!
//! Vertices are assigned first, with early pruning on edges whose endpoints
//! are both assigned. Higher cells are then matched through the face index
//! of the target, so for Segal targets the extension from the 1-skeleton is
//! forced. Every candidate is finally checked for full naturality.

use std::collections::HashMap;

use crate::sset::{Cell, CellMap, TruncSSet};

type Filter<'a> = dyn Fn(usize, Cell, Cell) -> bool + Sync + 'a;

pub struct MapSearch<'a> {
    source: &'a TruncSSet,
    target: &'a TruncSSet,
    top: usize,
    filter: Option<&'a Filter<'a>>,
    pins: HashMap<(usize, Cell), Cell>,
    conflict: bool,
    bijective: bool,
    limit: usize,
}

impl<'a> MapSearch<'a> {
    /// Maps defined on degrees `0..=top`.
    pub fn new(source: &'a TruncSSet, target: &'a TruncSSet, top: usize) -> Self {
        assert!(top <= source.dim() && top <= target.dim());
        MapSearch { source, target, top, filter: None, pins: HashMap::new(), conflict: false, bijective: false, limit: usize::MAX }
    }

    /// Restricts the allowed image of each cell.
    pub fn filter(mut self, f: &'a Filter<'a>) -> Self {
        self.filter = Some(f);
        self
    }

    /// Forces `c ↦ t` in degree `k`, together with all faces of the pair.
    pub fn pin(mut self, k: usize, c: Cell, t: Cell) -> Self {
        let mut todo = vec![(k, c, t)];
        while let Some((k, c, t)) = todo.pop() {
            match self.pins.insert((k, c), t) {
                Some(old) if old != t => self.conflict = true,
                Some(_) => continue,
                None => {}
            }
            if k > 0 {
                for i in 0..=k {
                    todo.push((k - 1, self.source.face(k, i, c), self.target.face(k, i, t)));
                }
            }
        }
        self
    }

    /// Only levelwise bijections.
    pub fn bijective(mut self) -> Self {
        self.bijective = true;
        self
    }

    /// Stop after this many solutions.
    pub fn limit(mut self, n: usize) -> Self {
        self.limit = n;
        self
    }

    pub fn run(&self) -> Vec<CellMap> {
        let mut out = Vec::new();
        if self.conflict || self.limit == 0 {
            return out;
        }
        if self.bijective && (0..=self.top).any(|k| self.source.len(k) != self.target.len(k)) {
            return out;
        }
        let mut st = State::new(self);
        st.assign_vertex(0, &mut out);
        out
    }
}

struct State<'s, 'a> {
    s: &'s MapSearch<'a>,
    map: Vec<Vec<Cell>>,
    used: Vec<Vec<bool>>,
    // per degree >= 1: faces tuple -> target cells
    face_index: Vec<HashMap<Vec<Cell>, Vec<Cell>>>,
    // edges whose later endpoint is the given vertex
    edges_closing_at: Vec<Vec<Cell>>,
}

const UNSET: Cell = Cell::MAX;

impl<'s, 'a> State<'s, 'a> {
    fn new(s: &'s MapSearch<'a>) -> Self {
        let (x, y) = (s.source, s.target);
        let map = (0..=s.top).map(|k| vec![UNSET; x.len(k)]).collect();
        let used = (0..=s.top).map(|k| vec![false; y.len(k)]).collect();
        let mut face_index = vec![HashMap::new()];
        for k in 1..=s.top {
            let mut idx: HashMap<Vec<Cell>, Vec<Cell>> = HashMap::new();
            for t in y.cells(k) {
                idx.entry((0..=k).map(|i| y.face(k, i, t)).collect()).or_default().push(t);
            }
            face_index.push(idx);
        }
        let mut edges_closing_at = vec![Vec::new(); x.len(0)];
        if s.top >= 1 {
            for e in x.cells(1) {
                let later = x.face(1, 0, e).max(x.face(1, 1, e));
                edges_closing_at[later as usize].push(e);
            }
        }
        State { s, map, used, face_index, edges_closing_at }
    }

    fn allowed(&self, k: usize, c: Cell, t: Cell) -> bool {
        if let Some(&p) = self.s.pins.get(&(k, c)) {
            if p != t {
                return false;
            }
        }
        if self.s.bijective && self.used[k][t as usize] {
            return false;
        }
        self.s.filter.is_none_or(|f| f(k, c, t))
    }

    fn candidates(&self, k: usize, c: Cell) -> Vec<Cell> {
        let x = self.s.source;
        if k == 0 {
            return self.s.target.cells(0).filter(|&t| self.allowed(0, c, t)).collect();
        }
        let key: Vec<Cell> = (0..=k).map(|i| self.map[k - 1][x.face(k, i, c) as usize]).collect();
        self.face_index[k].get(&key).map_or_else(Vec::new, |ts| ts.iter().copied().filter(|&t| self.allowed(k, c, t)).collect())
    }

    fn assign_vertex(&mut self, v: usize, out: &mut Vec<CellMap>) {
        if out.len() >= self.s.limit {
            return;
        }
        if v == self.s.source.len(0) {
            self.assign_higher(1, 0, out);
            return;
        }
        for t in self.candidates(0, v as Cell) {
            self.set(0, v as Cell, t);
            if self.edges_ok(v) {
                self.assign_vertex(v + 1, out);
            }
            self.unset(0, v as Cell, t);
            if out.len() >= self.s.limit {
                return;
            }
        }
    }

    fn edges_ok(&self, v: usize) -> bool {
        if self.s.top == 0 {
            return true;
        }
        self.edges_closing_at[v].iter().all(|&e| {
            let key = vec![self.map[0][self.s.source.face(1, 0, e) as usize], self.map[0][self.s.source.face(1, 1, e) as usize]];
            self.face_index[1].get(&key).is_some_and(|ts| ts.iter().any(|&t| self.s.filter.is_none_or(|f| f(1, e, t))))
        })
    }

    // forced choices are taken in a loop so that recursion depth only grows
    // at genuine branch points
    fn assign_higher(&mut self, k: usize, c: usize, out: &mut Vec<CellMap>) {
        let (mut k, mut c) = (k, c);
        let mut forced = Vec::new();
        loop {
            if out.len() >= self.s.limit {
                break;
            }
            if k > self.s.top {
                if self.complete() {
                    out.push(CellMap(self.map.clone()));
                }
                break;
            }
            if c == self.s.source.len(k) {
                k += 1;
                c = 0;
                continue;
            }
            let cands = self.candidates(k, c as Cell);
            match cands.len() {
                0 => break,
                1 => {
                    self.set(k, c as Cell, cands[0]);
                    forced.push((k, c as Cell, cands[0]));
                    c += 1;
                }
                _ => {
                    for t in cands {
                        self.set(k, c as Cell, t);
                        self.assign_higher(k, c + 1, out);
                        self.unset(k, c as Cell, t);
                        if out.len() >= self.s.limit {
                            break;
                        }
                    }
                    break;
                }
            }
        }
        for (k, c, t) in forced.into_iter().rev() {
            self.unset(k, c, t);
        }
    }

    fn set(&mut self, k: usize, c: Cell, t: Cell) {
        self.map[k][c as usize] = t;
        self.used[k][t as usize] = true;
    }

    fn unset(&mut self, k: usize, c: Cell, t: Cell) {
        self.map[k][c as usize] = UNSET;
        self.used[k][t as usize] = false;
    }

    fn complete(&self) -> bool {
        let (x, y) = (self.s.source, self.s.target);
        (0..self.s.top).all(|k| {
            (0..=k).all(|i| x.cells(k).all(|c| self.map[k + 1][x.degen(k, i, c) as usize] == y.degen(k, i, self.map[k][c as usize])))
        })
    }
}
