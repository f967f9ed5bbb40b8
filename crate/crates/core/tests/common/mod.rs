//! Instance generators shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use dynkin_spectral::graph::{GraphKind, StarGraph, Symmetry};
use dynkin_spectral::rational::{int, is_positive, ratio, Rational};
use dynkin_spectral::solver::{
    build_a, decide, horn_check, permute_character, representative_vertices, series_for, Witness,
};
use dynkin_spectral::transition::{m_d, omega_weights, AlgebraCharacter, AlgebraDimension};
use num_traits::Zero;
use rand::Rng;

/// Distinct strictly decreasing positive integer eigenvalues, one list per arm.
pub fn random_eigenvalues(kind: GraphKind, max: i64, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    kind.arm_lengths()
        .iter()
        .map(|&m| {
            let mut v: Vec<i64> = Vec::new();
            while v.len() < m {
                let x = rng.random_range(1..=max);
                if !v.contains(&x) {
                    v.push(x);
                }
            }
            v.sort_unstable_by(|a, b| b.cmp(a));
            v.into_iter().map(int).collect()
        })
        .collect()
}

/// A random rational with numerator in `-range..=range` and denominator in `1..=6`.
pub fn random_rational(range: i64, rng: &mut impl Rng) -> Rational {
    ratio(rng.random_range(-range..=range), rng.random_range(1..=6))
}

/// A valid character with random eigenvalues and a random positive `γ`.
pub fn random_character(kind: GraphKind, rng: &mut impl Rng) -> AlgebraCharacter {
    let arms = random_eigenvalues(kind, 24, rng);
    let gamma = ratio(rng.random_range(1..=120), rng.random_range(1..=4));
    AlgebraCharacter::new(kind, arms, gamma).expect("valid by construction")
}

/// A random character on the hyperplane `γ = ω(χ)`.
pub fn hyperplane_character(kind: GraphKind, max: i64, rng: &mut impl Rng) -> AlgebraCharacter {
    let arms = random_eigenvalues(kind, max, rng);
    let gamma = omega_weights(kind)
        .iter()
        .zip(arms.iter().flatten())
        .fold(Rational::zero(), |acc, (w, a)| acc + w * a);
    AlgebraCharacter::new(kind, arms, gamma).expect("valid by construction")
}

/// Hyperplane characters, `count` satisfying every Horn inequality and `count`
/// violating at least one. The eigenvalue range is widened until both halves fill.
pub fn horn_split(kind: GraphKind, count: usize, rng: &mut impl Rng) -> (Vec<AlgebraCharacter>, Vec<AlgebraCharacter>) {
    let (mut good, mut bad) = (Vec::new(), Vec::new());
    for attempt in 0..200_000 {
        if good.len() >= count && bad.len() >= count {
            break;
        }
        let max = [12, 24, 60][attempt % 3];
        let chi = hyperplane_character(kind, max, rng);
        let holds = horn_check(&chi).expect("on the hyperplane");
        let bucket = if holds { &mut good } else { &mut bad };
        if bucket.len() < count {
            bucket.push(chi);
        }
    }
    (good, bad)
}

/// Every witness whose C-series element has center coordinate `≤ max_center`,
/// scanning `span` steps past each threshold.
pub fn candidate_witnesses(kind: GraphKind, max_center: i64, span: usize) -> Vec<Witness> {
    let g = StarGraph::new(kind);
    let mut out = Vec::new();
    for t in representative_vertices(&g) {
        let s = series_for(kind, t).expect("representative");
        for k in s.threshold..s.threshold + span {
            if s.orbit_element(k)[g.center()] <= max_center {
                for tau in Symmetry::moving(&g, g.index(t).expect("label")) {
                    out.push(Witness { t, k, tau });
                }
            }
        }
    }
    out
}

/// `n = M_d τ(d_k)` for a witness.
pub fn witness_dimension(kind: GraphKind, w: &Witness) -> AlgebraDimension {
    let g = StarGraph::new(kind);
    let d = series_for(kind, w.t).expect("series").orbit_element(w.k);
    AlgebraDimension::from_flat(kind, &m_d(kind).mul_vec(&w.tau.apply(&g, &d))).expect("shape")
}

/// Tries once to build a YES instance for `w`: random eigenvalues, then `γ`
/// solved from the `t` row of `A_{t,k}` so that the walked character vanishes
/// at `t`. Returns `None` when `γ` is not positive or some other coordinate
/// fails to be positive (the caller simply retries).
pub fn yes_instance(kind: GraphKind, w: &Witness, rng: &mut impl Rng) -> Option<(AlgebraCharacter, AlgebraDimension)> {
    let g = StarGraph::new(kind);
    let a = build_a(kind, w.t, w.k).expect("above threshold");
    let row = a.row(g.index(w.t).expect("label"));
    let eig = random_eigenvalues(kind, 24, rng);
    let flat: Vec<Rational> = eig.iter().flatten().cloned().collect();
    let m = flat.len();
    if row[m] == 0 {
        return None;
    }
    let s = row[..m]
        .iter()
        .zip(&flat)
        .fold(Rational::zero(), |acc, (c, x)| acc + int(*c) * x);
    let gamma = -s / int(row[m]);
    if !is_positive(&gamma) {
        return None;
    }
    let base = AlgebraCharacter::new(kind, eig, gamma).ok()?;
    let chi = permute_character(&base, w.tau);
    let n = witness_dimension(kind, w);
    decide(&chi, &n).ok()?.is_yes().then_some((chi, n))
}

/// Retries [`yes_instance`] over the candidate list until `count` instances exist.
pub fn yes_instances(
    kind: GraphKind,
    candidates: &[Witness],
    count: usize,
    rng: &mut impl Rng,
) -> Vec<(AlgebraCharacter, AlgebraDimension)> {
    let mut out = Vec::new();
    for w in candidates
        .iter()
        .cycle()
        .take(200 * count.max(1) * candidates.len().max(1))
    {
        if out.len() >= count {
            break;
        }
        if let Some(inst) = yes_instance(kind, w, rng) {
            out.push(inst);
        }
    }
    out
}

/// Random integer vector with entries in `-range..=range`.
pub fn random_vector(n: usize, range: i64, rng: &mut impl Rng) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-range..=range)).collect()
}
