//! Algebra-side characters and dimensions, and the transition matrices
//! `M_f`, `M_d` that carry them to the graph side.
//!
//! On an arm with eigenvalues `α_1 > … > α_m > 0` the graph character reads,
//! from the inner vertex outwards, `α_1, α_1 − α_m, α_2 − α_m, α_2 − α_{m−1}, …`,
//! and the graph dimension reads `n_1+…+n_m, n_2+…+n_m, n_2+…+n_{m−1}, …`,
//! where `n_i` is the multiplicity of `α_i`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphKind, StarGraph};
use crate::matrix::Matrix;
use crate::rational::{self, int, Rational};
use crate::roots::{is_nondegenerate, minimal_imaginary_root};

/// Eigenvalue lists per arm (strictly decreasing, positive) and the scalar `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CharacterJson", try_from = "CharacterJson")]
pub struct AlgebraCharacter {
    graph: GraphKind,
    arms: Vec<Vec<Rational>>,
    gamma: Rational,
}

impl AlgebraCharacter {
    pub fn new(graph: GraphKind, arms: Vec<Vec<Rational>>, gamma: Rational) -> Result<Self> {
        let lens = graph.arm_lengths();
        if arms.len() != lens.len() {
            return Err(Error::InvalidCharacter(format!(
                "{graph} needs {} arms, found {}",
                lens.len(),
                arms.len()
            )));
        }
        for (j, (arm, &len)) in arms.iter().zip(lens).enumerate() {
            if arm.len() != len {
                return Err(Error::InvalidCharacter(format!(
                    "arm {} of {graph} needs {len} eigenvalues, found {}",
                    j + 1,
                    arm.len()
                )));
            }
            if arm.iter().any(|a| !a.is_positive()) {
                return Err(Error::InvalidCharacter(format!(
                    "arm {} has a nonpositive eigenvalue",
                    j + 1
                )));
            }
            if arm.windows(2).any(|w| w[0] <= w[1]) {
                return Err(Error::InvalidCharacter(format!(
                    "arm {} is not strictly decreasing",
                    j + 1
                )));
            }
        }
        if !gamma.is_positive() {
            return Err(Error::InvalidCharacter("gamma must be positive".into()));
        }
        Ok(AlgebraCharacter { graph, arms, gamma })
    }

    /// Rebuilds a character from its flattened form `(arm 1, …, arm r, γ)`.
    pub fn from_flat(graph: GraphKind, flat: &[Rational]) -> Result<Self> {
        let n = graph.vertex_count();
        if flat.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: flat.len(),
            });
        }
        let mut arms = Vec::new();
        let mut at = 0;
        for &len in graph.arm_lengths() {
            arms.push(flat[at..at + len].to_vec());
            at += len;
        }
        Self::new(graph, arms, flat[n - 1].clone())
    }

    pub fn graph(&self) -> GraphKind {
        self.graph
    }

    pub fn arms(&self) -> &[Vec<Rational>] {
        &self.arms
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// `(arm 1, …, arm r, γ)`, one entry per graph vertex.
    pub fn flatten(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.arms.iter().flatten().cloned().collect();
        v.push(self.gamma.clone());
        v
    }

    /// Multiplies every eigenvalue and `γ` by `c > 0`.
    pub fn scale(&self, c: &Rational) -> Result<Self> {
        let flat: Vec<Rational> = self.flatten().iter().map(|x| x * c).collect();
        Self::from_flat(self.graph, &flat)
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    graph: GraphKind,
    arms: Vec<Vec<String>>,
    gamma: String,
}

impl From<AlgebraCharacter> for CharacterJson {
    fn from(c: AlgebraCharacter) -> Self {
        CharacterJson {
            graph: c.graph,
            arms: c
                .arms
                .iter()
                .map(|a| a.iter().map(rational::format).collect())
                .collect(),
            gamma: rational::format(&c.gamma),
        }
    }
}

impl TryFrom<CharacterJson> for AlgebraCharacter {
    type Error = Error;
    fn try_from(j: CharacterJson) -> Result<Self> {
        let arms = j
            .arms
            .iter()
            .map(|a| a.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        AlgebraCharacter::new(j.graph, arms, rational::parse(&j.gamma)?)
    }
}

/// Spectral-projection ranks per arm and the total dimension `n_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraDimension {
    graph: GraphKind,
    mults: Vec<Vec<i64>>,
    total: i64,
}

impl AlgebraDimension {
    pub fn new(graph: GraphKind, mults: Vec<Vec<i64>>, total: i64) -> Result<Self> {
        let lens = graph.arm_lengths();
        let found: usize = mults.iter().map(Vec::len).sum();
        let expected: usize = lens.iter().sum();
        if mults.len() != lens.len() || mults.iter().zip(lens).any(|(m, &l)| m.len() != l) {
            return Err(Error::LengthMismatch { expected, found });
        }
        Ok(AlgebraDimension { graph, mults, total })
    }

    pub fn from_flat(graph: GraphKind, flat: &[i64]) -> Result<Self> {
        let n = graph.vertex_count();
        if flat.len() != n {
            return Err(Error::LengthMismatch {
                expected: n - 1,
                found: flat.len().saturating_sub(1),
            });
        }
        let mut mults = Vec::new();
        let mut at = 0;
        for &len in graph.arm_lengths() {
            mults.push(flat[at..at + len].to_vec());
            at += len;
        }
        Self::new(graph, mults, flat[n - 1])
    }

    /// Parses `"a,b,…;n0"`; semicolons between arms are also accepted.
    pub fn parse(graph: GraphKind, s: &str) -> Result<Self> {
        let (body, total) = s
            .rsplit_once(';')
            .ok_or_else(|| Error::InvalidDimension(format!("`{s}` lacks `;n0`")))?;
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .ok()
                .filter(|x| x.abs() < 1 << 40)
                .ok_or_else(|| Error::MalformedInteger(t.trim().to_string()))
        };
        let mut flat = body
            .split([',', ';'])
            .filter(|t| !t.trim().is_empty())
            .map(int)
            .collect::<Result<Vec<_>>>()?;
        flat.push(int(total)?);
        Self::from_flat(graph, &flat)
    }

    pub fn graph(&self) -> GraphKind {
        self.graph
    }

    pub fn mults(&self) -> &[Vec<i64>] {
        &self.mults
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    /// `(mults…, n_0)`, one entry per graph vertex.
    pub fn flatten(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.mults.iter().flatten().copied().collect();
        v.push(self.total);
        v
    }

    /// Multiplicity of the eigenvalue 0 on each arm.
    pub fn kernel_mults(&self) -> Vec<i64> {
        self.mults.iter().map(|m| self.total - m.iter().sum::<i64>()).collect()
    }
}

impl std::fmt::Display for AlgebraDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.mults.iter().flatten().map(i64::to_string).collect();
        write!(f, "{};{}", body.join(","), self.total)
    }
}

impl Serialize for AlgebraDimension {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AlgebraDimension", 3)?;
        st.serialize_field("graph", &self.graph)?;
        st.serialize_field("mults", &self.mults)?;
        st.serialize_field("total", &self.total)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AlgebraDimension {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            graph: GraphKind,
            mults: Vec<Vec<i64>>,
            total: i64,
        }
        let r = Raw::deserialize(d)?;
        AlgebraDimension::new(r.graph, r.mults, r.total).map_err(serde::de::Error::custom)
    }
}

/// `(a, b)` with graph character `α_a − α_b` at position `j` from the inner
/// vertex (`α_{m+1} = 0`).
fn arm_pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let (mut a, mut b) = (1, m + 1);
    for j in 0..m {
        if j > 0 {
            if j % 2 == 1 {
                b -= 1;
            } else {
                a += 1;
            }
        }
        out.push((a, b));
    }
    out
}

/// `(lo, hi)` with graph dimension `n_lo + … + n_hi` at position `j`.
fn arm_ranges(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let (mut lo, mut hi) = (1, m);
    for j in 0..m {
        if j > 0 {
            if j % 2 == 1 {
                lo += 1;
            } else {
                hi -= 1;
            }
        }
        out.push((lo, hi));
    }
    out
}

/// `M_f`: flattened `χ` to graph character `x`.
pub fn m_f(kind: GraphKind) -> Matrix<i64> {
    let mut blocks = Vec::new();
    for &m in kind.arm_lengths() {
        let mut t = Matrix::zeros(m, m);
        for (j, (a, b)) in arm_pairs(m).into_iter().enumerate() {
            let row = m - 1 - j;
            t[(row, a - 1)] += 1;
            if b <= m {
                t[(row, b - 1)] -= 1;
            }
        }
        blocks.push(t);
    }
    blocks.push(Matrix::identity(1));
    Matrix::block_diagonal(&blocks)
}

/// `M_d^{-1}`: algebra dimension to graph dimension.
pub fn m_d_inverse(kind: GraphKind) -> Matrix<i64> {
    let mut blocks = Vec::new();
    for &m in kind.arm_lengths() {
        let mut t = Matrix::zeros(m, m);
        for (j, (lo, hi)) in arm_ranges(m).into_iter().enumerate() {
            for i in lo..=hi {
                t[(m - 1 - j, i - 1)] = 1;
            }
        }
        blocks.push(t);
    }
    blocks.push(Matrix::identity(1));
    Matrix::block_diagonal(&blocks)
}

/// `M_d`: graph dimension to algebra dimension (integer, exact inverse).
pub fn m_d(kind: GraphKind) -> Matrix<i64> {
    m_d_inverse(kind)
        .to_rational()
        .inverse()
        .and_then(|m| m.to_integer())
        .expect("M_d^{-1} is unimodular")
}

pub fn algebra_to_graph_character(chi: &AlgebraCharacter) -> Vec<Rational> {
    m_f(chi.graph).to_rational().mul_vec(&chi.flatten())
}

/// Inverse of [`algebra_to_graph_character`]; requires `0 < x_1 < x_2 < …`
/// along each arm, which is exactly the condition for valid eigenvalues.
pub fn graph_to_algebra_character(kind: GraphKind, x: &[Rational]) -> Result<AlgebraCharacter> {
    let g = StarGraph::new(kind);
    g.check_len(x)?;
    for (j, arm) in g.arms().iter().enumerate() {
        let mut prev = Rational::zero();
        for &v in arm {
            if x[v] <= prev {
                return Err(Error::InvalidCharacter(format!(
                    "graph character is not increasing along arm {}",
                    j + 1
                )));
            }
            prev = x[v].clone();
        }
    }
    let inv = m_f(kind).to_rational().inverse().expect("M_f is invertible");
    AlgebraCharacter::from_flat(kind, &inv.mul_vec(x))
}

/// `n = M_d d`; fails on degenerate `d` with the first offending arm.
pub fn graph_to_algebra_dimension(kind: GraphKind, d: &[i64]) -> Result<AlgebraDimension> {
    let g = StarGraph::new(kind);
    g.check_len(d)?;
    let n = AlgebraDimension::from_flat(kind, &m_d(kind).mul_vec(d))?;
    for (arm, (mults, zero)) in n.mults.iter().zip(n.kernel_mults()).enumerate() {
        if let Some(&bad) = mults.iter().chain([&zero]).find(|&&x| x <= 0) {
            return Err(Error::NonpositiveMultiplicity {
                arm: arm + 1,
                value: bad,
            });
        }
    }
    debug_assert!(is_nondegenerate(&g, d));
    Ok(n)
}

/// `d = M_d^{-1} n`.
pub fn algebra_dimension_to_graph(n: &AlgebraDimension) -> Vec<i64> {
    m_d_inverse(n.graph).mul_vec(&n.flatten())
}

/// `δ_alg = M_d δ`.
pub fn delta_alg(kind: GraphKind) -> AlgebraDimension {
    let delta = minimal_imaginary_root(&StarGraph::new(kind));
    AlgebraDimension::from_flat(kind, &m_d(kind).mul_vec(&delta)).expect("shape")
}

/// Coefficients of `ω` on the flattened eigenvalues (no `γ` entry).
///
/// Taking traces in `A_1 + … + A_r = γI` at dimension `δ_alg` gives
/// `Σ n_i α_i = γ n_0`, so `ω = Σ (n_i / n_0) α_i`.
pub fn omega_weights(kind: GraphKind) -> Vec<Rational> {
    let d = delta_alg(kind);
    let n0 = int(d.total);
    d.mults.iter().flatten().map(|&n| int(n) / &n0).collect()
}

/// `ω(χ)`, the invariant functional of the reduced character.
pub fn invariant_functional(chi: &AlgebraCharacter) -> Rational {
    omega_weights(chi.graph)
        .iter()
        .zip(chi.arms.iter().flatten())
        .fold(Rational::zero(), |acc, (w, a)| acc + w * a)
}

/// `γ = ω(χ)`.
pub fn on_hyperplane(chi: &AlgebraCharacter) -> bool {
    invariant_functional(chi) == chi.gamma
}

/// Display names of the flattened character entries, `γ` last.
pub fn variable_names(kind: GraphKind) -> Vec<String> {
    let mut names: Vec<String> = match kind {
        GraphKind::D4 => ["α", "β", "ξ", "δ"].map(String::from).to_vec(),
        GraphKind::E6 => ["α_1", "α_2", "β_1", "β_2", "δ_1", "δ_2"].map(String::from).to_vec(),
        GraphKind::E7 => (1..=3)
            .map(|i| format!("α_{i}"))
            .chain((1..=3).map(|i| format!("β_{i}")))
            .chain(["δ".to_string()])
            .collect(),
        GraphKind::E8 => (1..=5)
            .map(|i| format!("α_{i}"))
            .chain((1..=2).map(|i| format!("β_{i}")))
            .chain(["δ".to_string()])
            .collect(),
    };
    names.push("γ".to_string());
    names
}

/// `Σ c_i χ_i = c_γ γ` as text, e.g. `α + β + ξ + δ = 2γ`.
pub fn format_linear(names: &[String], coeffs: &[i64], rhs: &str) -> String {
    let terms: Vec<String> = names
        .iter()
        .zip(coeffs)
        .filter(|(_, &c)| c != 0)
        .map(|(n, &c)| if c == 1 { n.clone() } else { format!("{c}{n}") })
        .collect();
    format!("{} {rhs}", terms.join(" + "))
}

/// The hyperplane `h_G` as an integer equation.
pub fn hyperplane_equation(kind: GraphKind) -> String {
    let d = delta_alg(kind);
    let names = variable_names(kind);
    let coeffs: Vec<i64> = d.mults.iter().flatten().copied().collect();
    format_linear(&names, &coeffs, &format!("= {}γ", d.total))
}
