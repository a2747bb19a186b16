use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::TruncSSet;

/// A partially commutative monoid on graded generators, truncated by total
/// length.
#[derive(Clone, Debug)]
pub struct GradedMonoidPresentation {
    names: Vec<String>,
    lengths: Vec<usize>,
    commute: Vec<Vec<bool>>,
    max_length: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonoidDoc {
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub commute: Vec<(String, String)>,
    pub max_length: usize,
}

#[derive(Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub length: usize,
}

type Word = Vec<usize>;

impl GradedMonoidPresentation {
    pub fn new(generators: &[(&str, usize)], commute: &[(&str, &str)], max_length: usize) -> Result<Self> {
        let doc = MonoidDoc {
            generators: generators.iter().map(|(n, l)| GeneratorDoc { name: n.to_string(), length: *l }).collect(),
            commute: commute.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            max_length,
        };
        Self::from_doc(&doc)
    }

    pub fn from_doc(doc: &MonoidDoc) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in doc.generators.iter().enumerate() {
            let n = &g.name;
            if n.is_empty() || n == "1" || n.contains(['.', '|', '*']) {
                return Err(Error::InvalidMonoid(format!("bad generator name '{n}'")));
            }
            if g.length == 0 {
                return Err(Error::InvalidMonoid(format!("generator '{n}' must have positive length")));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidMonoid(format!("duplicate generator '{n}'")));
            }
        }
        let mut names: Vec<(String, usize)> = doc.generators.iter().map(|g| (g.name.clone(), g.length)).collect();
        names.sort();
        let order: HashMap<String, usize> = names.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect();
        let n = names.len();
        let mut commute = vec![vec![false; n]; n];
        for (a, b) in &doc.commute {
            let get = |s: &str| order.get(s).copied().ok_or_else(|| Error::InvalidMonoid(format!("unknown generator '{s}'")));
            let (i, j) = (get(a)?, get(b)?);
            if i == j {
                return Err(Error::InvalidMonoid(format!("relation on '{a}' with itself")));
            }
            commute[i][j] = true;
            commute[j][i] = true;
        }
        Ok(GradedMonoidPresentation {
            lengths: names.iter().map(|(_, l)| *l).collect(),
            names: names.into_iter().map(|(n, _)| n).collect(),
            commute,
            max_length: doc.max_length,
        })
    }

    fn length(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.lengths[g]).sum()
    }

    /// Lexicographically least word in the commutation class.
    pub fn normal_form(&self, w: &[usize]) -> Word {
        let mut rest: Vec<usize> = w.to_vec();
        let mut out = Vec::with_capacity(w.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for p in 0..rest.len() {
                let g = rest[p];
                let movable = rest[..p].iter().all(|&h| h != g && self.commute[g][h]);
                if movable && best.is_none_or(|b| g < rest[b]) {
                    best = Some(p);
                }
            }
            let p = best.expect("first letter is always movable");
            out.push(rest.remove(p));
        }
        out
    }

    fn word_id(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.iter().map(|&g| self.names[g].as_str()).collect::<Vec<_>>().join(".")
        }
    }

    /// All normal forms of length at most the cap.
    pub fn elements(&self) -> Vec<Word> {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut frontier = vec![Vec::new()];
        seen.insert(Vec::new());
        while let Some(w) = frontier.pop() {
            for g in 0..self.names.len() {
                let mut v = w.clone();
                v.push(g);
                if self.length(&v) <= self.max_length {
                    let nf = self.normal_form(&v);
                    if seen.insert(nf.clone()) {
                        frontier.push(nf);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Nerve of the monoid truncated by total length: a `k`-cell is a tuple of
/// normal forms whose lengths sum to at most the cap.
pub fn monoid_nerve(m: &GradedMonoidPresentation, n: usize) -> Result<TruncSSet> {
    let elems = m.elements();
    let mut levels: Vec<Vec<Vec<Word>>> = vec![vec![Vec::new()]];
    for _ in 1..=n {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for t in prev {
            let used: usize = t.iter().map(|w| m.length(w)).sum();
            for e in &elems {
                if used + m.length(e) <= m.max_length {
                    let mut u = t.clone();
                    u.push(e.clone());
                    next.push(u);
                }
            }
        }
        levels.push(next);
    }
    TruncSSet::from_fn(
        n,
        levels,
        |k, t| if k == 0 { "*".to_string() } else { t.iter().map(|w| m.word_id(w)).collect::<Vec<_>>().join("|") },
        |k, i, t| {
            Ok(if k == 1 {
                Vec::new()
            } else if i == 0 {
                t[1..].to_vec()
            } else if i == k {
                t[..k - 1].to_vec()
            } else {
                let mut u = t[..i - 1].to_vec();
                let mut prod = t[i - 1].clone();
                prod.extend_from_slice(&t[i]);
                u.push(m.normal_form(&prod));
                u.extend_from_slice(&t[i + 1..]);
                u
            })
        },
        |_, i, t| {
            let mut u = t.clone();
            u.insert(i, Vec::new());
            Ok(u)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{is_complete, is_decomposition, is_segal};
    use crate::sset::validate_simplicial;

    #[test]
    fn free_on_one_generator() {
        let m = GradedMonoidPresentation::new(&[("g", 1)], &[], 2).unwrap();
        let x = monoid_nerve(&m, 2).unwrap();
        assert_eq!(x.names(1), &["1", "g", "g.g"]);
        assert!(validate_simplicial(&x).passed());
    }

    #[test]
    fn two_commuting_generators() {
        let m = GradedMonoidPresentation::new(&[("a", 1), ("b", 1)], &[("a", "b")], 2).unwrap();
        let x = monoid_nerve(&m, 2).unwrap();
        assert_eq!(x.len(1), 6);
        assert_eq!(m.normal_form(&[1, 0]), vec![0, 1]);
        let free = GradedMonoidPresentation::new(&[("a", 1), ("b", 1)], &[], 2).unwrap();
        assert_eq!(monoid_nerve(&free, 1).unwrap().len(1), 7);
    }

    #[test]
    fn zero_cap_gives_units_only() {
        let m = GradedMonoidPresentation::new(&[("a", 1), ("b", 2)], &[], 0).unwrap();
        assert_eq!(monoid_nerve(&m, 3).unwrap().counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn truncated_nerve_is_decomposition_but_not_segal() {
        let m = GradedMonoidPresentation::new(&[("a", 1), ("b", 2), ("c", 1)], &[("a", "b")], 3).unwrap();
        let x = monoid_nerve(&m, 4).unwrap();
        assert!(validate_simplicial(&x).passed());
        assert!(is_decomposition(&x).passed());
        assert!(is_complete(&x).passed());
        assert!(!is_segal(&x).passed());
    }

    #[test]
    fn normal_form_respects_blocking() {
        // c does not commute with a, so "c a" is already normal
        let m = GradedMonoidPresentation::new(&[("a", 1), ("b", 1), ("c", 1)], &[("a", "b")], 4).unwrap();
        assert_eq!(m.normal_form(&[2, 0]), vec![2, 0]);
        assert_eq!(m.normal_form(&[1, 0, 2]), vec![0, 1, 2]);
        assert_eq!(m.normal_form(&[1, 2, 0]), vec![1, 2, 0]);
    }
}
