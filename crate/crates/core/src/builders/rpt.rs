//! Rooted plane forests with layered cuts.
//!
//! A `k`-cell is a plane forest whose nodes carry layer labels in `1..=k`,
//! weakly decreasing from each parent to its children. Layer 1 is the crown
//! and layer `k` contains the roots side. `d_0` deletes the crown, `d_k`
//! deletes the bottom layer, inner faces merge adjacent layers and
//! degeneracies insert an empty layer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::sset::TruncSSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    pub children: Vec<PlaneTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneForest(pub Vec<PlaneTree>);

impl PlaneTree {
    pub fn nodes(&self) -> usize {
        1 + self.children.iter().map(|c| c.nodes()).sum::<usize>()
    }
}

impl PlaneForest {
    pub fn nodes(&self) -> usize {
        self.0.iter().map(|t| t.nodes()).sum()
    }

    /// Parses nested parentheses such as `(()())()`. The empty string and
    /// `e` denote the empty forest.
    pub fn parse(s: &str) -> Result<PlaneForest> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(PlaneForest(Vec::new()));
        }
        let mut stack: Vec<Vec<PlaneTree>> = vec![Vec::new()];
        for ch in s.chars() {
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    let children = stack.pop().unwrap();
                    let parent = stack.last_mut().ok_or_else(|| Error::InvalidForest(format!("unbalanced '{s}'")))?;
                    parent.push(PlaneTree { children });
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::InvalidForest(format!("unexpected '{c}' in '{s}'"))),
            }
            if stack.is_empty() {
                return Err(Error::InvalidForest(format!("unbalanced '{s}'")));
            }
        }
        if stack.len() != 1 {
            return Err(Error::InvalidForest(format!("unbalanced '{s}'")));
        }
        Ok(PlaneForest(stack.pop().unwrap()))
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for PlaneForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for t in &self.0 {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LTree {
    label: usize,
    children: Vec<LTree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct LForest(Vec<LTree>);

impl LTree {
    fn shape(&self) -> PlaneTree {
        PlaneTree { children: self.children.iter().map(|c| c.shape()).collect() }
    }

    fn labels(&self, out: &mut Vec<usize>) {
        out.push(self.label);
        for c in &self.children {
            c.labels(out);
        }
    }

    fn relabel(&self, f: &impl Fn(usize) -> usize) -> LTree {
        LTree { label: f(self.label), children: self.children.iter().map(|c| c.relabel(f)).collect() }
    }

    // removes the nodes of layer `top`; what remains are subtrees in preorder
    fn strip_top(&self, top: usize, out: &mut Vec<LTree>) {
        if self.label == top {
            for c in &self.children {
                c.strip_top(top, out);
            }
        } else {
            out.push(self.clone());
        }
    }

    // removes the nodes of layer 1, which are closed under children
    fn strip_crown(&self) -> Option<LTree> {
        if self.label == 1 {
            return None;
        }
        Some(LTree { label: self.label - 1, children: self.children.iter().filter_map(|c| c.strip_crown()).collect() })
    }
}

impl LForest {
    fn shape(&self) -> PlaneForest {
        PlaneForest(self.0.iter().map(|t| t.shape()).collect())
    }

    fn id(&self, k: usize) -> String {
        let shape = self.shape().to_string();
        if k < 2 || self.0.is_empty() {
            return shape;
        }
        let mut labels = Vec::new();
        for t in &self.0 {
            t.labels(&mut labels);
        }
        format!("{shape}:{}", labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","))
    }

    fn relabel(&self, f: impl Fn(usize) -> usize) -> LForest {
        LForest(self.0.iter().map(|t| t.relabel(&f)).collect())
    }

    fn face(&self, k: usize, i: usize) -> LForest {
        if k == 1 {
            LForest(Vec::new())
        } else if i == 0 {
            LForest(self.0.iter().filter_map(|t| t.strip_crown()).collect())
        } else if i == k {
            let mut out = Vec::new();
            for t in &self.0 {
                t.strip_top(k, &mut out);
            }
            LForest(out)
        } else {
            self.relabel(|l| if l > i { l - 1 } else { l })
        }
    }

    fn degen(&self, i: usize) -> LForest {
        self.relabel(|l| if l > i { l + 1 } else { l })
    }
}

fn label_tree(t: &PlaneTree, max: usize) -> Vec<LTree> {
    let mut out = Vec::new();
    for label in 1..=max {
        for children in label_forest(&t.children, label) {
            out.push(LTree { label, children });
        }
    }
    out
}

fn label_forest(ts: &[PlaneTree], max: usize) -> Vec<Vec<LTree>> {
    let mut acc: Vec<Vec<LTree>> = vec![Vec::new()];
    for t in ts {
        let options = label_tree(t, max);
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for o in &options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

fn labelings(f: &PlaneForest, k: usize) -> Vec<LForest> {
    label_forest(&f.0, k).into_iter().map(LForest).collect()
}

/// Admissible cuts of a forest, as (crown, trunk) pairs in the order of the
/// two-layer labelings.
pub fn cuts(f: &PlaneForest) -> Vec<(PlaneForest, PlaneForest)> {
    labelings(f, 2).iter().map(|l| (l.face(2, 2).shape(), l.face(2, 0).shape())).collect()
}

/// All plane forests with exactly `n` nodes.
pub fn forests_with(n: usize) -> Vec<PlaneForest> {
    let mut trees: HashMap<usize, Vec<PlaneTree>> = HashMap::new();
    let mut forests: HashMap<usize, Vec<Vec<PlaneTree>>> = HashMap::new();
    forests.insert(0, vec![Vec::new()]);
    for size in 1..=n {
        let t: Vec<PlaneTree> = forests[&(size - 1)].iter().map(|c| PlaneTree { children: c.clone() }).collect();
        trees.insert(size, t);
        let mut fs = Vec::new();
        for first in 1..=size {
            for t in &trees[&first] {
                for rest in &forests[&(size - first)] {
                    let mut f = vec![t.clone()];
                    f.extend(rest.iter().cloned());
                    fs.push(f);
                }
            }
        }
        forests.insert(size, fs);
    }
    forests.remove(&n).unwrap().into_iter().map(PlaneForest).collect()
}

/// All forests with at most `max_nodes` nodes, up to degree `n`.
pub fn rpt_build(max_nodes: usize, n: usize) -> Result<TruncSSet> {
    let all: Vec<PlaneForest> = (0..=max_nodes).flat_map(forests_with).collect();
    build(all, n)
}

/// The sub-object generated by the given forests: they and every crown and
/// trunk reachable from them by cutting.
pub fn rpt_from_forests(forests: &[PlaneForest], n: usize) -> Result<TruncSSet> {
    let mut closed: BTreeSet<PlaneForest> = BTreeSet::new();
    let mut todo: Vec<PlaneForest> = forests.to_vec();
    todo.push(PlaneForest(Vec::new()));
    while let Some(f) = todo.pop() {
        if closed.insert(f.clone()) {
            for (crown, trunk) in cuts(&f) {
                todo.push(crown);
                todo.push(trunk);
            }
        }
    }
    build(closed.into_iter().collect(), n)
}

fn build(forests: Vec<PlaneForest>, n: usize) -> Result<TruncSSet> {
    let mut levels = vec![vec![LForest(Vec::new())]];
    for k in 1..=n {
        levels.push(forests.iter().flat_map(|f| labelings(f, k)).collect());
    }
    TruncSSet::from_fn(n, levels, |k, l| l.id(k), |k, i, l| Ok(l.face(k, i)), |_, i, l| Ok(l.degen(i)))
}

/// Reads a tree file: one forest per line, blank lines and `#` comments
/// ignored.
pub fn parse_tree_file(text: &str) -> Result<Vec<PlaneForest>> {
    text.lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(PlaneForest::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{is_complete, is_decomposition, is_segal};
    use crate::sset::validate_simplicial;

    #[test]
    fn parse_and_print() {
        let f = PlaneForest::parse("(()())()").unwrap();
        assert_eq!(f.0.len(), 2);
        assert_eq!(f.nodes(), 4);
        assert_eq!(f.to_string(), "(()())()");
        assert_eq!(PlaneForest::parse("").unwrap().to_string(), "e");
        assert!(PlaneForest::parse("(()").is_err());
        assert!(PlaneForest::parse("())(").is_err());
        assert!(PlaneForest::parse("(x)").is_err());
    }

    #[test]
    fn forest_counts_are_catalan() {
        // forests with n nodes are counted by Catalan(n)
        let counts: Vec<usize> = (0..6).map(|n| forests_with(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn small_builds() {
        let x = rpt_build(1, 1).unwrap();
        assert_eq!(x.names(1), &["()", "e"]);
        let x = rpt_build(0, 3).unwrap();
        assert_eq!(x.counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn cut_counts() {
        assert_eq!(cuts(&PlaneForest::parse("(())").unwrap()).len(), 3);
        assert_eq!(cuts(&PlaneForest::parse("()()").unwrap()).len(), 4);
    }

    #[test]
    fn rpt_axioms() {
        let x = rpt_build(3, 3).unwrap();
        assert!(validate_simplicial(&x).passed());
        assert!(is_decomposition(&x).passed());
        assert!(is_complete(&x).passed());
        assert!(!is_segal(&x).passed());
    }

    #[test]
    fn generated_subobject_is_closed() {
        let f = parse_tree_file("(()())\n# comment\n\n(())()\n").unwrap();
        let x = rpt_from_forests(&f, 3).unwrap();
        assert!(validate_simplicial(&x).passed());
        assert!(is_decomposition(&x).passed());
        assert!(x.lookup(1, "(())()").is_some());
        assert!(x.lookup(1, "()()").is_some());
        assert!(x.lookup(1, "((()))").is_none());
    }
}
