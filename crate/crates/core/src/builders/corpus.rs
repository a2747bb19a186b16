//! Named example inputs used by the tests and the command line.

use super::category::FinCategory;
use super::poset::FinPoset;

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Chain on the given names in the given order.
pub fn chain_named(names: &[&str]) -> FinPoset {
    let covers: Vec<(String, String)> = names.windows(2).map(|w| (w[0].to_string(), w[1].to_string())).collect();
    FinPoset::from_covers(strings(names), &covers).expect("a chain is a poset")
}

/// Chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FinPoset {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    chain_named(&refs)
}

/// Subsets of an `n`-letter alphabet under inclusion; the empty set is `0`.
pub fn boolean(n: usize) -> FinPoset {
    assert!(n <= 26);
    let letters: Vec<char> = ('a'..='z').take(n).collect();
    let name = |mask: usize| -> String {
        if mask == 0 {
            "0".to_string()
        } else {
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| letters[i]).collect()
        }
    };
    let elements: Vec<String> = (0..1usize << n).map(name).collect();
    let mut covers = Vec::new();
    for m in 0..1usize << n {
        for i in 0..n {
            if m & (1 << i) == 0 {
                covers.push((name(m), name(m | 1 << i)));
            }
        }
    }
    FinPoset::from_covers(elements, &covers).expect("boolean lattice is a poset")
}

/// Divisors of `n` under divisibility.
pub fn divisors(n: u64) -> FinPoset {
    let ds: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut covers = Vec::new();
    for &a in &ds {
        for &b in &ds {
            if a != b && b % a == 0 {
                covers.push((a.to_string(), b.to_string()));
            }
        }
    }
    FinPoset::from_covers(ds.iter().map(|d| d.to_string()).collect(), &covers).expect("divisibility is a partial order")
}

/// Two antichains of size two glued in sequence: `x < y, y' < z < yb, yb' < z'`.
pub fn diamond_poset() -> FinPoset {
    let covers = DIAMOND_COVERS.iter().map(|(a, b, _)| (a.to_string(), b.to_string())).collect::<Vec<_>>();
    FinPoset::from_covers(strings(&DIAMOND_OBJECTS), &covers).expect("diamond is a poset")
}

pub const DIAMOND_OBJECTS: [&str; 7] = ["x", "y", "y'", "z", "yb", "yb'", "z'"];

const DIAMOND_COVERS: [(&str, &str, &str); 8] = [
    ("x", "y", "a"),
    ("x", "y'", "a'"),
    ("y", "z", "b"),
    ("y'", "z", "b'"),
    ("z", "yb", "c"),
    ("z", "yb'", "c'"),
    ("yb", "z'", "d"),
    ("yb'", "z'", "d'"),
];

/// The doubled diamond as a thin category with named arrows. Composites of
/// two diamonds are `f1: x -> z`, `f2: z -> z'` and `f: x -> z'`.
pub fn diamond_category() -> FinCategory {
    let edges: Vec<(&str, &str)> = DIAMOND_COVERS.iter().map(|(a, b, _)| (*a, *b)).collect();
    FinCategory::thin(&DIAMOND_OBJECTS, &edges, |a, b| {
        if a == b {
            return format!("1{a}");
        }
        if let Some((_, _, n)) = DIAMOND_COVERS.iter().find(|(s, t, _)| *s == a && *t == b) {
            return n.to_string();
        }
        match (a, b) {
            ("x", "z") => "f1".into(),
            ("z", "z'") => "f2".into(),
            ("x", "z'") => "f".into(),
            ("y", "z'") => "bf2".into(),
            ("y'", "z'") => "b'f2".into(),
            ("x", t) => format!("f1{}", if t == "yb" { "c" } else { "c'" }),
            (s, t) => format!("{}{}", if s == "y" { "b" } else { "b'" }, if t == "yb" { "c" } else { "c'" }),
        }
    })
    .expect("diamond is a category")
}
