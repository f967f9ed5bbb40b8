//! The decision procedure.
//!
//! A generalized dimension `n` is pulled back to the graph, `w = M_d^{-1} n`.
//! Either `w = δ` (the hyperplane case, settled by the Horn conditions) or,
//! up to an arm symmetry, `w` is the `k`-th element of the C-series of some
//! `ε_t` with `k ≥ k_t`. In the latter case the character is walked back along
//! the orbit by the dimension-dependent maps and must end `≥_t 0`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{
    all_series, char_map_dim_dependent, coxeter_map, full_coxeter_matrix, reflection_matrix, CSeries,
};
use crate::error::{Error, Result};
use crate::graph::{format_digits, GraphKind, Parity, StarGraph, Symmetry};
use crate::horn::{Evidence, HornInequality};
use crate::matrix::{Matrix, Ring};
use crate::rational::{self, Rational};
use crate::roots::{minimal_imaginary_root, EXTENDING_VERTEX};
use crate::transition::{
    algebra_dimension_to_graph, algebra_to_graph_character, delta_alg, m_d, m_f, on_hyperplane, AlgebraCharacter,
    AlgebraDimension,
};

/// `(t, k, τ)`: the dimension is `τ(d_k)` in the series of `ε_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Vertex label.
    pub t: usize,
    pub k: usize,
    pub tau: Symmetry,
}

/// Where a graph dimension sits in the root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// `w = δ`.
    Imaginary,
    /// Admissible series element.
    Series(Witness),
    /// Series element before the threshold `k_t`.
    BelowThreshold(Witness),
    /// A root outside every C-series (regular, negative, or a multiple of `δ`).
    Unplaced,
}

/// Every C-series of the graph, ordered by vertex label `1..n` then the center.
pub fn series_table(kind: GraphKind) -> &'static [CSeries] {
    static CACHE: [OnceLock<Vec<CSeries>>; 4] = [const { OnceLock::new() }; 4];
    let slot = GraphKind::ALL.iter().position(|&k| k == kind).unwrap();
    CACHE[slot].get_or_init(|| all_series(&StarGraph::new(kind)).expect("every orbit closes"))
}

/// The series of `ε_t` for a vertex label.
pub fn series_for(kind: GraphKind, t: usize) -> Result<&'static CSeries> {
    series_table(kind)
        .iter()
        .find(|s| s.vertex == t)
        .ok_or(Error::VertexOutOfRange(t))
}

/// Labels `t` that are first in their class under arm swaps; the remaining
/// series are images of these.
pub fn representative_vertices(g: &StarGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (1..g.vertex_count()).collect();
    order.push(0);
    let mut seen = Vec::new();
    let mut reps = Vec::new();
    for label in order {
        if seen.contains(&label) {
            continue;
        }
        let i = g.index(label).expect("label in range");
        for tau in Symmetry::all(g) {
            seen.push(g.label(tau.map_index(g, i)));
        }
        reps.push(label);
    }
    reps
}

/// `u ≥_t 0`: `u_t = 0` exactly and every other coordinate is positive.
/// `t` is a vertex label, so `0` refers to the last coordinate.
pub fn ge_t(u: &[Rational], t: usize) -> bool {
    if u.is_empty() || t >= u.len() {
        return false;
    }
    let idx = if t == 0 { u.len() - 1 } else { t - 1 };
    u.iter()
        .enumerate()
        .all(|(i, x)| if i == idx { x.is_zero() } else { x.is_positive() })
}

/// Permutes the arms of a character by a graph symmetry.
pub fn permute_character(chi: &AlgebraCharacter, tau: Symmetry) -> AlgebraCharacter {
    let g = StarGraph::new(chi.graph());
    AlgebraCharacter::from_flat(chi.graph(), &tau.apply(&g, &chi.flatten())).expect("arm swap keeps validity")
}

/// Permutes the arms of a dimension by a graph symmetry.
pub fn permute_dimension(n: &AlgebraDimension, tau: Symmetry) -> AlgebraDimension {
    let g = StarGraph::new(n.graph());
    AlgebraDimension::from_flat(n.graph(), &tau.apply(&g, &n.flatten())).expect("arm swap keeps shape")
}

/// `k` with `u = d_k` in `series`, if any (`k` may lie below the threshold).
fn series_index(series: &CSeries, u: &[i64]) -> Option<usize> {
    let delta = series.delta();
    let eps = series.epsilon;
    series.reps.iter().enumerate().find_map(|(s, v)| {
        let diff = u[EXTENDING_VERTEX] - v[EXTENDING_VERTEX];
        if diff < 0 || diff % (eps * delta[EXTENDING_VERTEX]) != 0 {
            return None;
        }
        let j = diff / (eps * delta[EXTENDING_VERTEX]);
        let hit = u.iter().zip(v).zip(delta).all(|((a, b), d)| *a == b + j * eps * d);
        hit.then(|| j as usize * series.period() + s)
    })
}

/// Locates a graph dimension `w`. Errors if `w` is not a root.
pub fn locate_graph_dimension(kind: GraphKind, w: &[i64]) -> Result<Location> {
    let g = StarGraph::new(kind);
    g.check_len(w)?;
    let q = g.tits_form(w)?;
    if w.iter().all(|&x| x == 0) || q > 1 {
        return Err(Error::NotARoot(format_digits(w), q));
    }
    if w == minimal_imaginary_root(&g).as_slice() {
        return Ok(Location::Imaginary);
    }
    let mut below = None;
    for t in representative_vertices(&g) {
        let series = series_for(kind, t)?;
        let ti = g.index(t)?;
        for tau in Symmetry::moving(&g, ti) {
            let u = tau.apply(&g, w);
            if let Some(k) = series_index(series, &u) {
                let witness = Witness { t, k, tau };
                if k >= series.threshold {
                    return Ok(Location::Series(witness));
                }
                below.get_or_insert(witness);
            }
        }
    }
    Ok(below.map_or(Location::Unplaced, Location::BelowThreshold))
}

/// Locates an algebra dimension through `w = M_d^{-1} n`.
pub fn locate_dimension(n: &AlgebraDimension) -> Result<Location> {
    locate_graph_dimension(n.graph(), &algebra_dimension_to_graph(n))
}

/// All witnesses for `w` (used to check uniqueness).
pub fn all_witnesses(kind: GraphKind, w: &[i64]) -> Vec<Witness> {
    let g = StarGraph::new(kind);
    let mut out = Vec::new();
    for t in representative_vertices(&g) {
        let series = series_for(kind, t).expect("representative label");
        let ti = g.index(t).expect("representative label");
        for tau in Symmetry::moving(&g, ti) {
            if let Some(k) = series_index(series, &tau.apply(&g, w)) {
                if k >= series.threshold {
                    out.push(Witness { t, k, tau });
                }
            }
        }
    }
    out
}

/// Walks a graph character from dimension `d_k` back to `d_0 = ε_t`.
///
/// At step `i` (from `k` down to `1`) the character map of parity opposite to
/// the Coxeter map `d_{i−1} ↦ d_i` is applied on the support of `d_i`.
pub fn walk_vector<T: Ring>(series: &CSeries, k: usize, mut x: Vec<T>) -> Vec<T> {
    let g = StarGraph::new(series.graph);
    let mut d = series.orbit_element(k);
    for i in (1..=k).rev() {
        let p = series.step_parity(i);
        x = char_map_dim_dependent(&g, &d, &x, p.flip());
        d = coxeter_map(&g, p, &d);
    }
    debug_assert_eq!(d, series.reps[0]);
    x
}

/// Matrix of [`walk_vector`] on graph characters (the table matrices `D_{t,k}`).
pub fn walk_matrix(kind: GraphKind, t: usize, k: usize) -> Result<Matrix<i64>> {
    let series = series_for(kind, t)?;
    let g = StarGraph::new(kind);
    let mut m = Matrix::identity(g.vertex_count());
    for i in 1..=k {
        let d = series.orbit_element(i);
        m = &m * &reflection_matrix(&g, series.step_parity(i).flip(), Some(&d));
    }
    Ok(m)
}

/// The walked character `D_{t,k} M_f (τχ)` for a witness.
pub fn character_walk(chi: &AlgebraCharacter, w: &Witness) -> Result<Vec<Rational>> {
    let series = series_for(chi.graph(), w.t)?;
    let x = algebra_to_graph_character(&permute_character(chi, w.tau));
    Ok(walk_vector(series, w.k, x))
}

/// Closed form of the walk beyond the threshold:
/// `A_{t,k} = D_{t,k_t} · Q^{⌊j/2⌋} · S^{j mod 2} · M_f` with `j = k − k_t`,
/// where `S` is the first full reflection map after the threshold and `Q` is
/// `M_c` or `M_c^{-1}` according to the parity of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AFormula {
    pub graph: GraphKind,
    pub t: usize,
    pub threshold: usize,
    pub d: Matrix<i64>,
    /// Parity of the single reflection map used for odd `j`.
    pub s_parity: Parity,
    /// `true` when `Q = M_c`, `false` when `Q = M_c^{-1}`.
    pub q_is_mc: bool,
}

impl AFormula {
    pub fn new(kind: GraphKind, t: usize) -> Result<Self> {
        let series = series_for(kind, t)?;
        let kt = series.threshold;
        let s_parity = series.step_parity(kt + 1).flip();
        Ok(AFormula {
            graph: kind,
            t,
            threshold: kt,
            d: walk_matrix(kind, t, kt)?,
            s_parity,
            q_is_mc: s_parity == Parity::Even,
        })
    }

    pub fn matrix(&self, k: usize) -> Result<Matrix<i64>> {
        if k < self.threshold {
            return Err(Error::BelowThreshold {
                k,
                threshold: self.threshold,
            });
        }
        let g = StarGraph::new(self.graph);
        let s_a = reflection_matrix(&g, self.s_parity, None);
        let s_b = reflection_matrix(&g, self.s_parity.flip(), None);
        let q = &s_a * &s_b;
        let j = k - self.threshold;
        let mut a = &self.d * &q.pow((j / 2) as u32);
        if j % 2 == 1 {
            a = &a * &s_a;
        }
        Ok(&a * &m_f(self.graph))
    }
}

impl std::fmt::Display for AFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (t, kt) = (self.t, self.threshold);
        let sign = if self.q_is_mc { "" } else { "-" };
        let s = self.s_parity.symbol();
        write!(
            f,
            "A_{{{t},k}} = D_{{{t},{kt}}} M_c^{{{sign}(k-{kt})/2}} M_f if k - {kt} is even; \
             D_{{{t},{kt}}} M_c^{{{sign}(k-{k1})/2}} {s}C M_f if k - {kt} is odd",
            k1 = kt + 1
        )
    }
}

/// `A_{t,k}`, the matrix taking flattened `χ` to the walked character.
pub fn build_a(kind: GraphKind, t: usize, k: usize) -> Result<Matrix<i64>> {
    AFormula::new(kind, t)?.matrix(k)
}

/// The `H_G` list for a graph.
pub fn horn_conditions(kind: GraphKind) -> &'static [HornInequality] {
    static CACHE: [OnceLock<Vec<HornInequality>>; 4] = [const { OnceLock::new() }; 4];
    let slot = GraphKind::ALL.iter().position(|&k| k == kind).unwrap();
    CACHE[slot].get_or_init(|| {
        crate::tables::fixture(kind)
            .horn
            .iter()
            .map(|s| HornInequality::parse(kind, s).expect("shipped inequalities parse"))
            .collect()
    })
}

/// Evaluates every Horn inequality; only meaningful on the hyperplane.
pub fn horn_evidence(chi: &AlgebraCharacter) -> Result<Vec<Evidence>> {
    if !on_hyperplane(chi) {
        return Err(Error::OffHyperplane);
    }
    Ok(horn_conditions(chi.graph()).iter().map(|h| h.evaluate(chi)).collect())
}

/// `true` iff every Horn inequality holds strictly.
pub fn horn_check(chi: &AlgebraCharacter) -> Result<bool> {
    Ok(horn_evidence(chi)?.iter().all(|e| e.holds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Cseries,
    Hyperplane,
}

/// Outcome of [`decide`] with the data that justifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub mode: Mode,
    pub dimension: AlgebraDimension,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rational::serde_opt_vec")]
    pub walked_character: Option<Vec<Rational>>,
    pub reason: String,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Decides whether an irreducible non-degenerate tuple with character `chi`
/// exists in generalized dimension `n`.
pub fn decide(chi: &AlgebraCharacter, n: &AlgebraDimension) -> Result<Decision> {
    let kind = chi.graph();
    if n.graph() != kind {
        return Err(Error::InvalidDimension(format!(
            "dimension is for {}, character for {kind}",
            n.graph()
        )));
    }
    let no = |mode, reason: String| Decision {
        verdict: Verdict::No,
        mode,
        dimension: n.clone(),
        witness: None,
        evidence: Vec::new(),
        walked_character: None,
        reason,
    };

    if on_hyperplane(chi) {
        let evidence = horn_evidence(chi)?;
        let mut d = no(Mode::Hyperplane, String::new());
        if *n != delta_alg(kind) {
            d.reason = format!("on the hyperplane only {} is possible", delta_alg(kind));
        } else if let Some(bad) = evidence.iter().find(|e| !e.holds) {
            d.reason = format!("inequality {} fails", bad.inequality);
        } else {
            d.verdict = Verdict::Yes;
            d.reason = "all Horn inequalities hold".into();
        }
        d.evidence = evidence;
        return Ok(d);
    }

    if n.flatten().iter().any(|&x| x <= 0) || n.kernel_mults().iter().any(|&x| x <= 0) {
        return Ok(no(Mode::Cseries, "degenerate dimension".into()));
    }
    let loc = match locate_dimension(n) {
        Ok(loc) => loc,
        Err(Error::NotARoot(w, q)) => {
            return Ok(no(
                Mode::Cseries,
                format!("graph dimension {w} is not a root (q = {q})"),
            ));
        }
        Err(e) => return Err(e),
    };
    let witness = match loc {
        Location::Imaginary => {
            return Ok(no(Mode::Cseries, "δ_alg requires γ = ω(χ)".into()));
        }
        Location::Unplaced => return Ok(no(Mode::Cseries, "root outside every C-series".into())),
        Location::BelowThreshold(w) => {
            let mut d = no(Mode::Cseries, format!("k = {} is below the threshold", w.k));
            d.witness = Some(w);
            return Ok(d);
        }
        Location::Series(w) => w,
    };
    let walked = character_walk(chi, &witness)?;
    let ok = ge_t(&walked, witness.t);
    Ok(Decision {
        verdict: if ok { Verdict::Yes } else { Verdict::No },
        mode: Mode::Cseries,
        dimension: n.clone(),
        witness: Some(witness),
        evidence: Vec::new(),
        reason: if ok {
            format!("walked character is ≥_{} 0", witness.t)
        } else {
            format!("walked character is not ≥_{} 0", witness.t)
        },
        walked_character: Some(walked),
    })
}

/// Every admissible dimension with `n_0 ≤ bound`, sorted by `n_0` then
/// lexicographically, each with its positive decision.
pub fn enumerate_dimensions(chi: &AlgebraCharacter, bound: i64) -> Vec<Decision> {
    let kind = chi.graph();
    if on_hyperplane(chi) {
        let n = delta_alg(kind);
        return match decide(chi, &n) {
            Ok(d) if d.is_yes() && n.total() <= bound => vec![d],
            _ => Vec::new(),
        };
    }
    let g = StarGraph::new(kind);
    let md = m_d(kind);
    let mut found = BTreeMap::new();
    for t in representative_vertices(&g) {
        let series = series_for(kind, t).expect("representative label");
        let ti = g.index(t).expect("representative label");
        let min_center = series.reps.iter().map(|v| v[g.center()]).min().unwrap_or(0);
        let step = series.epsilon * series.delta()[g.center()];
        for k in series.threshold.. {
            let lap = (k / series.period()) as i64;
            if min_center + lap * step > bound {
                break;
            }
            let d = series.orbit_element(k);
            if d[g.center()] > bound {
                continue;
            }
            for tau in Symmetry::moving(&g, ti) {
                let w = tau.apply(&g, &d);
                let n = AlgebraDimension::from_flat(kind, &md.mul_vec(&w)).expect("shape");
                if found.contains_key(&(n.total(), n.flatten())) {
                    continue;
                }
                if let Ok(dec) = decide(chi, &n) {
                    if dec.is_yes() {
                        found.insert((n.total(), n.flatten()), dec);
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

/// Graph reached by a subset reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    /// One of the four extended Dynkin graphs; decidable here.
    Extended { character: AlgebraCharacter },
    /// A Dynkin star; out of scope.
    Dynkin { arm_lengths: Vec<usize> },
    /// Neither Dynkin nor extended Dynkin; out of scope.
    Wild { arm_lengths: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub subsets_considered: usize,
    pub targets: Vec<Target>,
}

/// Enumerates the sub-problems obtained by choosing a nonempty subset of the
/// positive eigenvalues on every arm.
///
/// Zero eigenvalues are absorbed into the kernel and repeated values are
/// merged; an arm with no positive eigenvalue is dropped. Subsets are emitted
/// in arm order, each arm enumerating its subsets by bitmask.
pub fn reduce_degenerate(arms: &[Vec<Rational>], gamma: &Rational) -> Result<Reduction> {
    let mut cleaned: Vec<Vec<Rational>> = Vec::new();
    for arm in arms {
        if arm.iter().any(Signed::is_negative) {
            return Err(Error::InvalidCharacter("negative eigenvalue".into()));
        }
        let mut vals: Vec<Rational> = arm.iter().filter(|a| a.is_positive()).cloned().collect();
        vals.sort_by(|a, b| b.cmp(a));
        vals.dedup();
        if !vals.is_empty() {
            cleaned.push(vals);
        }
    }
    let mut targets = Vec::new();
    let mut choice = vec![1usize; cleaned.len()];
    let limits: Vec<usize> = cleaned.iter().map(|a| 1 << a.len()).collect();
    let mut count = 0;
    if cleaned.is_empty() {
        return Ok(Reduction {
            subsets_considered: 0,
            targets,
        });
    }
    loop {
        count += 1;
        let picked: Vec<Vec<Rational>> = cleaned
            .iter()
            .zip(&choice)
            .map(|(a, &mask)| {
                a.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        targets.push(classify_star(picked, gamma)?);
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(Reduction {
                    subsets_considered: count,
                    targets,
                });
            }
            choice[i] += 1;
            if choice[i] < limits[i] {
                break;
            }
            choice[i] = 1;
            i += 1;
        }
    }
}

fn classify_star(mut arms: Vec<Vec<Rational>>, gamma: &Rational) -> Result<Target> {
    arms.sort_by_key(|a| std::cmp::Reverse(a.len()));
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    if let Some(kind) = GraphKind::from_arm_lengths(&lens) {
        return Ok(Target::Extended {
            character: AlgebraCharacter::new(kind, arms, gamma.clone())?,
        });
    }
    // A star is Dynkin iff Σ 1/(l_i + 1) > r − 2.
    let r = lens.len() as i64;
    let sum = lens
        .iter()
        .fold(Rational::zero(), |acc, &l| acc + rational::ratio(1, l as i64 + 1));
    if sum > rational::int(r - 2) {
        Ok(Target::Dynkin { arm_lengths: lens })
    } else {
        Ok(Target::Wild { arm_lengths: lens })
    }
}

/// `M_c` of the graph together with its parity factors, for display.
pub fn coxeter_matrices(kind: GraphKind) -> [(String, Matrix<i64>); 3] {
    let g = StarGraph::new(kind);
    [
        ("M_c".into(), full_coxeter_matrix(&g)),
        ("∘C".into(), reflection_matrix(&g, Parity::Even, None)),
        ("•C".into(), reflection_matrix(&g, Parity::Odd, None)),
    ]
}
