use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::TruncSSet;

/// A finite poset on named elements, with the order stored as a dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl FinPoset {
    /// From an explicit order relation, which must already be a partial order.
    pub fn new(elements: Vec<String>, leq: &[(String, String)]) -> Result<FinPoset> {
        let (index, mut m) = Self::skeleton(&elements)?;
        for (a, b) in leq {
            let (i, j) = Self::pair(&index, a, b)?;
            m[i][j] = true;
        }
        let n = elements.len();
        for i in 0..n {
            if !m[i][i] {
                return Err(Error::InvalidPoset(format!("not reflexive at '{}'", elements[i])));
            }
            for j in 0..n {
                if i != j && m[i][j] && m[j][i] {
                    return Err(Error::InvalidPoset(format!("'{}' and '{}' violate antisymmetry", elements[i], elements[j])));
                }
                for k in 0..n {
                    if m[i][j] && m[j][k] && !m[i][k] {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive at '{}' <= '{}' <= '{}'",
                            elements[i], elements[j], elements[k]
                        )));
                    }
                }
            }
        }
        Ok(FinPoset { elements, index, leq: m })
    }

    /// Reflexive-transitive closure of a cover relation.
    pub fn from_covers(elements: Vec<String>, covers: &[(String, String)]) -> Result<FinPoset> {
        let (index, mut m) = Self::skeleton(&elements)?;
        let n = elements.len();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (i, j) = Self::pair(&index, a, b)?;
            m[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && m[i][j] && m[j][i] {
                    return Err(Error::InvalidPoset(format!("cycle through '{}' and '{}'", elements[i], elements[j])));
                }
            }
        }
        Ok(FinPoset { elements, index, leq: m })
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<FinPoset> {
        Self::from_covers(doc.elements.clone(), &doc.covers)
    }

    pub fn to_doc(&self) -> PosetDoc {
        PosetDoc { elements: self.elements.clone(), covers: self.covers() }
    }

    fn skeleton(elements: &[String]) -> Result<(HashMap<String, usize>, Vec<Vec<bool>>)> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.is_empty() || e.contains('_') || e.contains('|') {
                return Err(Error::InvalidPoset(format!("element id '{e}' must be non-empty without '_' or '|'")));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element '{e}'")));
            }
        }
        let n = elements.len();
        Ok((index, vec![vec![false; n]; n]))
    }

    fn pair(index: &HashMap<String, usize>, a: &str, b: &str) -> Result<(usize, usize)> {
        let get = |e: &str| index.get(e).copied().ok_or_else(|| Error::InvalidPoset(format!("unknown element '{e}'")));
        Ok((get(a)?, get(b)?))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, e: &str) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq[i][j] && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]) {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }

    /// The closed interval `[a, b]` as a sub-poset.
    pub fn interval(&self, a: usize, b: usize) -> FinPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&k| self.leq[a][k] && self.leq[k][b]).collect();
        self.restrict(&keep)
    }

    pub fn restrict(&self, keep: &[usize]) -> FinPoset {
        let elements: Vec<String> = keep.iter().map(|&k| self.elements[k].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let leq = keep.iter().map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect()).collect();
        FinPoset { elements, index, leq }
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
    }
}

/// Cell id of a weakly increasing chain.
pub fn chain_id(p: &FinPoset, chain: &[usize]) -> String {
    chain.iter().map(|&i| p.elements[i].as_str()).collect::<Vec<_>>().join("_")
}

/// Weakly increasing chains of length `k + 1`, for `k = 0..=n`.
pub fn chains(p: &FinPoset, n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..p.len()).map(|i| vec![i]).collect()];
    for _ in 0..n {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for c in prev {
            let last = *c.last().unwrap();
            for j in 0..p.len() {
                if p.leq(last, j) {
                    let mut d = c.clone();
                    d.push(j);
                    next.push(d);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// The nerve truncated at `n`: `d_i` deletes entry `i`, `s_i` repeats it.
pub fn poset_nerve(p: &FinPoset, n: usize) -> Result<TruncSSet> {
    TruncSSet::from_fn(
        n,
        chains(p, n),
        |_, c| chain_id(p, c),
        |_, i, c| {
            let mut d = c.clone();
            d.remove(i);
            Ok(d)
        },
        |_, i, c| {
            let mut d = c.clone();
            d.insert(i, c[i]);
            Ok(d)
        },
    )
}
