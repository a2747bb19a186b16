use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub square: String,
    pub detail: String,
}

impl Witness {
    pub fn new(square: impl Into<String>, detail: impl Into<String>) -> Self {
        Witness { square: square.into(), detail: detail.into() }
    }
}

/// Outcome of a finite check. The verdict is `Fail` exactly when there is at
/// least one witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AxiomReport {
    pub axiom: String,
    pub verdict: Verdict,
    pub max_degree_checked: usize,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn new(axiom: impl Into<String>, max_degree_checked: usize, witnesses: Vec<Witness>) -> Self {
        let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        AxiomReport { axiom: axiom.into(), verdict, max_degree_checked, witnesses }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Conjunction of several reports under a new name.
    pub fn combine(axiom: impl Into<String>, parts: &[AxiomReport]) -> Self {
        let max = parts.iter().map(|r| r.max_degree_checked).max().unwrap_or(0);
        let witnesses = parts
            .iter()
            .flat_map(|r| {
                r.witnesses.iter().map(move |w| Witness::new(format!("{}: {}", r.axiom, w.square), w.detail.clone()))
            })
            .collect();
        AxiomReport::new(axiom, max, witnesses)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        write!(f, "{}: {} (checked up to degree {})", self.axiom, v, self.max_degree_checked)?;
        for w in &self.witnesses {
            write!(f, "\n  [{}] {}", w.square, w.detail)?;
        }
        Ok(())
    }
}
