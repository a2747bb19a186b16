//! Finite pullback test for commutative squares of sets.
//!
//! A square
//!
//! ```text
//!   P --top--> B
//!   |          |
//! left       right
//!   v          v
//!   C --bot--> D
//! ```
//!
//! is a pullback when `P -> B x_D C` is a bijection.

use std::collections::HashMap;

use crate::report::Witness;
use crate::sset::Cell;

pub struct Square<'a> {
    pub name: String,
    pub top: &'a [Cell],
    pub left: &'a [Cell],
    pub right: &'a [Cell],
    pub bottom: &'a [Cell],
}

/// Names used when describing witnesses.
pub struct Namer<'a> {
    pub p: &'a dyn Fn(Cell) -> String,
    pub b: &'a dyn Fn(Cell) -> String,
    pub c: &'a dyn Fn(Cell) -> String,
}

impl Square<'_> {
    /// First defect found, if any: non-commutation, then a duplicated lift,
    /// then a missing lift. Iteration follows the sorted cell order.
    pub fn witness(&self, names: &Namer<'_>) -> Option<Witness> {
        for (p, (&b, &c)) in self.top.iter().zip(self.left).enumerate() {
            if self.right[b as usize] != self.bottom[c as usize] {
                return Some(Witness::new(
                    self.name.clone(),
                    format!("square does not commute at {}", (names.p)(p as Cell)),
                ));
            }
        }
        let mut lifts: HashMap<(Cell, Cell), Vec<Cell>> = HashMap::with_capacity(self.top.len());
        for (p, (&b, &c)) in self.top.iter().zip(self.left).enumerate() {
            lifts.entry((b, c)).or_default().push(p as Cell);
        }
        let mut dups: Vec<(&(Cell, Cell), &Vec<Cell>)> = lifts.iter().filter(|(_, ps)| ps.len() > 1).collect();
        dups.sort();
        if let Some(((b, c), ps)) = dups.first() {
            let ps: Vec<String> = ps.iter().map(|&p| (names.p)(p)).collect();
            return Some(Witness::new(
                self.name.clone(),
                format!("duplicated lift over ({}, {}): {}", (names.b)(*b), (names.c)(*c), ps.join(", ")),
            ));
        }
        let mut by_d: HashMap<Cell, Vec<Cell>> = HashMap::new();
        for (b, &d) in self.right.iter().enumerate() {
            by_d.entry(d).or_default().push(b as Cell);
        }
        for (c, &d) in self.bottom.iter().enumerate() {
            let c = c as Cell;
            for &b in by_d.get(&d).map(|v| v.as_slice()).unwrap_or(&[]) {
                if !lifts.contains_key(&(b, c)) {
                    return Some(Witness::new(
                        self.name.clone(),
                        format!("missing lift over ({}, {})", (names.b)(b), (names.c)(c)),
                    ));
                }
            }
        }
        None
    }

    /// Number of lifts of every pair of the fibre product, in sorted order.
    pub fn fibre_sizes(&self) -> Vec<((Cell, Cell), usize)> {
        let mut lifts: HashMap<(Cell, Cell), usize> = HashMap::new();
        for (&b, &c) in self.top.iter().zip(self.left) {
            *lifts.entry((b, c)).or_default() += 1;
        }
        let mut out = Vec::new();
        for (c, &d) in self.bottom.iter().enumerate() {
            for (b, &d2) in self.right.iter().enumerate() {
                if d == d2 {
                    let key = (b as Cell, c as Cell);
                    out.push((key, lifts.get(&key).copied().unwrap_or(0)));
                }
            }
        }
        out.sort();
        out
    }
}
