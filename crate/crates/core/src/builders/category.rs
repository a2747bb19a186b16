use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::TruncSSet;

/// A finite category given by its full composition table.
#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    // (f, g) with tgt f = src g  ->  "g after f"
    compose: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// File format. A triple `[f, g, h]` states `h = g ∘ f`. Triples with an
/// identity may be omitted.
#[derive(Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<(String, String, String)>,
}

impl FinCategory {
    pub fn from_doc(doc: &CategoryDoc) -> Result<FinCategory> {
        let bad = |m: String| Error::InvalidCategory(m);
        let mut obj_index = HashMap::new();
        for (i, o) in doc.objects.iter().enumerate() {
            if o.is_empty() || o.contains('|') {
                return Err(bad(format!("object id '{o}' must be non-empty without '|'")));
            }
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(bad(format!("duplicate object '{o}'")));
            }
        }
        let obj = |o: &str| obj_index.get(o).copied().ok_or_else(|| bad(format!("unknown object '{o}'")));
        let mut mor_index = HashMap::new();
        let mut ends = Vec::new();
        for (i, m) in doc.morphisms.iter().enumerate() {
            if m.id.is_empty() || m.id.contains('|') {
                return Err(bad(format!("morphism id '{}' must be non-empty without '|'", m.id)));
            }
            if mor_index.insert(m.id.clone(), i).is_some() {
                return Err(bad(format!("duplicate morphism '{}'", m.id)));
            }
            ends.push((obj(&m.src)?, obj(&m.tgt)?));
        }
        let mor = |m: &str| mor_index.get(m).copied().ok_or_else(|| bad(format!("unknown morphism '{m}'")));
        let mut identity = vec![usize::MAX; doc.objects.len()];
        for (o, m) in &doc.identities {
            let (oi, mi) = (obj(o)?, mor(m)?);
            if ends[mi] != (oi, oi) {
                return Err(bad(format!("identity '{m}' is not an endomorphism of '{o}'")));
            }
            identity[oi] = mi;
        }
        if let Some(i) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(bad(format!("object '{}' has no identity", doc.objects[i])));
        }
        let mut compose = HashMap::new();
        for (f, g, h) in &doc.composition {
            let (f, g, h) = (mor(f)?, mor(g)?, mor(h)?);
            if ends[f].1 != ends[g].0 || ends[h] != (ends[f].0, ends[g].1) {
                return Err(bad(format!("composite of '{}' and '{}' has wrong ends", doc.morphisms[f].id, doc.morphisms[g].id)));
            }
            if let Some(old) = compose.insert((f, g), h) {
                if old != h {
                    return Err(bad(format!("two composites for ('{}', '{}')", doc.morphisms[f].id, doc.morphisms[g].id)));
                }
            }
        }
        for f in 0..ends.len() {
            let (s, t) = ends[f];
            for (key, want) in [((identity[s], f), f), ((f, identity[t]), f)] {
                if let Some(&h) = compose.get(&key) {
                    if h != want {
                        return Err(bad(format!("unit law fails for '{}'", doc.morphisms[f].id)));
                    }
                } else {
                    compose.insert(key, want);
                }
            }
        }
        let c = FinCategory { objects: doc.objects.clone(), morphisms: doc.morphisms.clone(), identity, compose };
        c.check_table(&ends)?;
        Ok(c)
    }

    fn check_table(&self, ends: &[(usize, usize)]) -> Result<()> {
        let n = self.morphisms.len();
        for f in 0..n {
            for g in 0..n {
                if ends[f].1 == ends[g].0 && !self.compose.contains_key(&(f, g)) {
                    return Err(Error::InvalidCategory(format!(
                        "missing composite of '{}' then '{}'",
                        self.morphisms[f].id, self.morphisms[g].id
                    )));
                }
            }
        }
        for (&(f, g), &fg) in &self.compose {
            for h in 0..n {
                if ends[g].1 == ends[h].0 && self.compose[&(fg, h)] != self.compose[&(f, self.compose[&(g, h)])] {
                    return Err(Error::InvalidCategory(format!(
                        "associativity fails on '{}', '{}', '{}'",
                        self.morphisms[f].id, self.morphisms[g].id, self.morphisms[h].id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self) -> CategoryDoc {
        let mut composition: Vec<(String, String, String)> = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| (self.morphisms[f].id.clone(), self.morphisms[g].id.clone(), self.morphisms[h].id.clone()))
            .collect();
        composition.sort();
        CategoryDoc {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identities: self
                .identity
                .iter()
                .enumerate()
                .map(|(o, &m)| (self.objects[o].clone(), self.morphisms[m].id.clone()))
                .collect(),
            composition,
        }
    }

    /// A thin category: one morphism per pair `a <= b`, named by `name(a, b)`.
    pub fn thin(objects: &[&str], leq: &[(&str, &str)], name: impl Fn(&str, &str) -> String) -> Result<FinCategory> {
        let p = super::poset::FinPoset::from_covers(
            objects.iter().map(|s| s.to_string()).collect(),
            &leq.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>(),
        )?;
        let n = p.len();
        let el = p.elements();
        let mut morphisms = Vec::new();
        let mut id_of = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if p.leq(i, j) {
                    let id = name(&el[i], &el[j]);
                    id_of.insert((i, j), id.clone());
                    morphisms.push(Morphism { id, src: el[i].clone(), tgt: el[j].clone() });
                }
            }
        }
        let mut composition = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if p.leq(i, j) && p.leq(j, k) {
                        composition.push((id_of[&(i, j)].clone(), id_of[&(j, k)].clone(), id_of[&(i, k)].clone()));
                    }
                }
            }
        }
        let identities = (0..n).map(|i| (el[i].clone(), id_of[&(i, i)].clone())).collect();
        FinCategory::from_doc(&CategoryDoc { objects: el.to_vec(), morphisms, identities, composition })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    fn src(&self, f: usize) -> usize {
        self.objects.iter().position(|o| *o == self.morphisms[f].src).unwrap()
    }

    fn tgt(&self, f: usize) -> usize {
        self.objects.iter().position(|o| *o == self.morphisms[f].tgt).unwrap()
    }
}

/// Nerve in diagrammatic order: a `k`-cell is a composable string
/// `f_1 | ... | f_k`, degree-0 cells are objects.
pub fn category_nerve(c: &FinCategory, n: usize) -> Result<TruncSSet> {
    let srcs: Vec<usize> = (0..c.morphisms.len()).map(|f| c.src(f)).collect();
    let tgts: Vec<usize> = (0..c.morphisms.len()).map(|f| c.tgt(f)).collect();
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(0..c.objects.len()).map(|o| vec![o]).collect()];
    if n >= 1 {
        levels.push((0..c.morphisms.len()).map(|f| vec![f]).collect());
    }
    for _ in 2..=n {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for s in prev {
            let end = tgts[*s.last().unwrap()];
            for g in 0..c.morphisms.len() {
                if srcs[g] == end {
                    let mut t = s.clone();
                    t.push(g);
                    next.push(t);
                }
            }
        }
        levels.push(next);
    }
    TruncSSet::from_fn(
        n,
        levels,
        |k, s| {
            if k == 0 {
                c.objects[s[0]].clone()
            } else {
                s.iter().map(|&f| c.morphisms[f].id.as_str()).collect::<Vec<_>>().join("|")
            }
        },
        |k, i, s| {
            Ok(if k == 1 {
                vec![if i == 0 { tgts[s[0]] } else { srcs[s[0]] }]
            } else if i == 0 {
                s[1..].to_vec()
            } else if i == k {
                s[..k - 1].to_vec()
            } else {
                let mut t = s[..i - 1].to_vec();
                t.push(c.compose[&(s[i - 1], s[i])]);
                t.extend_from_slice(&s[i + 1..]);
                t
            })
        },
        |k, i, s| {
            Ok(if k == 0 {
                vec![c.identity[s[0]]]
            } else {
                let v = if i < k { srcs[s[i]] } else { tgts[s[k - 1]] };
                let mut t = s.clone();
                t.insert(i, c.identity[v]);
                t
            })
        },
    )
}
