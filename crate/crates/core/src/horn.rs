//! Strict linear inequalities on characters (the Horn-type conditions `H_G`).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphKind;
use crate::rational::{self, int, Rational};
use crate::transition::{variable_names, AlgebraCharacter};

/// `Σ c_i χ_i > c_γ γ` over the flattened eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornInequality {
    pub graph: GraphKind,
    /// One coefficient per eigenvalue, in flattened arm order.
    pub coeffs: Vec<i64>,
    pub gamma: i64,
}

/// One evaluated inequality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub inequality: String,
    #[serde(with = "rational::serde_one")]
    pub lhs: Rational,
    #[serde(with = "rational::serde_one")]
    pub rhs: Rational,
    pub holds: bool,
}

impl HornInequality {
    /// Parses text such as `3δ + α_2 + 2β_1 > 5γ` using the graph's variable names.
    pub fn parse(graph: GraphKind, s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Table(format!("bad inequality `{s}`: {why}"));
        let names = variable_names(graph);
        let (lhs, rhs) = s.split_once('>').ok_or_else(|| bad("missing `>`"))?;
        let mut all = vec![0i64; names.len()];
        for term in lhs.split('+') {
            let (c, name) = split_term(term).ok_or_else(|| bad("malformed term"))?;
            let i = names[..names.len() - 1]
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| bad("unknown variable"))?;
            all[i] += c;
        }
        let (gamma, name) = split_term(rhs).ok_or_else(|| bad("malformed right-hand side"))?;
        if name != "γ" {
            return Err(bad("right-hand side must be a multiple of γ"));
        }
        all.pop();
        Ok(HornInequality {
            graph,
            coeffs: all,
            gamma,
        })
    }

    pub fn lhs(&self, chi: &AlgebraCharacter) -> Rational {
        self.coeffs
            .iter()
            .zip(chi.arms().iter().flatten())
            .fold(Rational::zero(), |acc, (&c, a)| acc + int(c) * a)
    }

    pub fn evaluate(&self, chi: &AlgebraCharacter) -> Evidence {
        let lhs = self.lhs(chi);
        let rhs = int(self.gamma) * chi.gamma();
        Evidence {
            inequality: self.to_string(),
            holds: lhs > rhs,
            lhs,
            rhs,
        }
    }
}

fn split_term(term: &str) -> Option<(i64, String)> {
    let t = term.trim();
    let digits: String = t.chars().take_while(char::is_ascii_digit).collect();
    let name = t[digits.len()..].trim().to_string();
    if name.is_empty() {
        return None;
    }
    let c = if digits.is_empty() { 1 } else { digits.parse().ok()? };
    Some((c, name))
}

impl std::fmt::Display for HornInequality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = variable_names(self.graph);
        let g = if self.gamma == 1 {
            "γ".to_string()
        } else {
            format!("{}γ", self.gamma)
        };
        let text = crate::transition::format_linear(&names[..names.len() - 1], &self.coeffs, &format!("> {g}"));
        f.write_str(&text)
    }
}
