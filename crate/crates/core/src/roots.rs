//! Roots of the Tits form modulo the minimal imaginary root.
//!
//! Every root is `v + jδ` for a unique representative `v` whose coordinate at
//! the extending vertex (vertex 1, index 0) vanishes. Those representatives,
//! together with `0` for the imaginary series, form the finite set `Δ_f`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{format_digits, GraphKind, Parity, StarGraph};
use crate::matrix::Matrix;
use crate::rational::Rational;

/// Index of the extending vertex (label 1).
pub const EXTENDING_VERTEX: usize = 0;

/// Positive primitive generator of the radical of the Tits form.
pub fn minimal_imaginary_root(g: &StarGraph) -> Vec<i64> {
    static CACHE: [OnceLock<Vec<i64>>; 4] = [const { OnceLock::new() }; 4];
    let slot = GraphKind::ALL.iter().position(|&k| k == g.kind()).unwrap();
    CACHE[slot].get_or_init(|| radical_generator(g)).clone()
}

fn radical_generator(g: &StarGraph) -> Vec<i64> {
    let n = g.vertex_count();
    let mut cartan = Matrix::<i64>::zeros(n, n);
    for i in 0..n {
        cartan[(i, i)] = 2;
    }
    for (a, b) in g.edges() {
        cartan[(a, b)] = -1;
        cartan[(b, a)] = -1;
    }
    let kernel = cartan.to_rational().kernel();
    assert_eq!(kernel.len(), 1, "extended Dynkin radical is one-dimensional");
    let lcm = kernel[0].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = kernel[0]
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign: i64 = if scaled.iter().any(Signed::is_negative) { -1 } else { 1 };
    scaled
        .iter()
        .map(|x| sign * (x / &gcd).to_i64().expect("small coordinates"))
        .collect()
}

/// Defect `L(v) = Σ_odd δ_g v_g − Σ_even δ_g v_g`.
pub fn defect(g: &StarGraph, v: &[i64]) -> i64 {
    let delta = minimal_imaginary_root(g);
    defect_with(g, &delta, v)
}

pub(crate) fn defect_with(g: &StarGraph, delta: &[i64], v: &[i64]) -> i64 {
    (0..g.vertex_count())
        .map(|i| match g.parity(i) {
            Parity::Odd => delta[i] * v[i],
            Parity::Even => -delta[i] * v[i],
        })
        .sum()
}

/// Classification of a `Δ_f` representative (and thus of its δ-series).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootClass {
    pub root: String,
    pub q: i64,
    pub is_real: bool,
    pub is_imaginary: bool,
    pub is_positive: bool,
    pub is_regular: bool,
    pub defect: i64,
}

pub fn classify(g: &StarGraph, v: &[i64]) -> RootClass {
    let q = g.tits_form_unchecked(v);
    let d = defect(g, v);
    RootClass {
        root: format_digits(v),
        q,
        is_real: q == 1,
        is_imaginary: q == 0,
        is_positive: v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0),
        is_regular: d == 0,
        defect: d,
    }
}

/// Complete set of δ-series representatives, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRepSet {
    pub graph: GraphKind,
    pub reps: Vec<Vec<i64>>,
}

impl DeltaRepSet {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// All integer `v` with `v_1 = 0`, `q(v) ≤ 1` and `|v_i| ≤ δ_i`.
///
/// Off the extending vertex the form is positive definite of finite type, and
/// its roots are bounded by the highest root, whose coefficients are `δ_i`.
pub fn enumerate_delta_reps(g: &StarGraph) -> DeltaRepSet {
    let delta = minimal_imaginary_root(g);
    let n = g.vertex_count();
    let mut v: Vec<i64> = (0..n)
        .map(|i| if i == EXTENDING_VERTEX { 0 } else { -delta[i] })
        .collect();
    let mut reps = Vec::new();
    'outer: loop {
        if g.tits_form_unchecked(&v) <= 1 {
            reps.push(v.clone());
        }
        for i in (0..n).rev() {
            if i == EXTENDING_VERTEX {
                continue;
            }
            if v[i] < delta[i] {
                v[i] += 1;
                continue 'outer;
            }
            v[i] = -delta[i];
        }
        break;
    }
    reps.sort();
    DeltaRepSet { graph: g.kind(), reps }
}

/// [`enumerate_delta_reps`], computed once per graph.
pub fn enumerate_delta_reps_cached(kind: GraphKind) -> &'static DeltaRepSet {
    static CACHE: [OnceLock<DeltaRepSet>; 4] = [const { OnceLock::new() }; 4];
    let slot = GraphKind::ALL.iter().position(|&k| k == kind).unwrap();
    CACHE[slot].get_or_init(|| enumerate_delta_reps(&StarGraph::new(kind)))
}

/// `0 < d_leaf < … < d_inner < d_0` along every arm.
pub fn is_nondegenerate(g: &StarGraph, d: &[i64]) -> bool {
    let c = d[g.center()];
    g.arms().iter().all(|arm| {
        let mut prev = 0;
        for &v in arm {
            if d[v] <= prev {
                return false;
            }
            prev = d[v];
        }
        prev < c
    })
}

/// `v + kδ` for the least `k ≥ 0` that is non-degenerate.
pub fn ng(g: &StarGraph, v: &[i64]) -> Result<Vec<i64>> {
    g.check_len(v)?;
    let delta = minimal_imaginary_root(g);
    let cap = 10 * g.vertex_count() as i64;
    (0..=cap)
        .map(|k| v.iter().zip(&delta).map(|(a, b)| a + k * b).collect::<Vec<_>>())
        .find(|w| is_nondegenerate(g, w))
        .ok_or_else(|| Error::Internal(format!("ng({}) did not stabilize", format_digits(v))))
}

/// Nonzero regular representatives: `Δ_f ∩ Δ_reg` without the imaginary class.
pub fn regular_final_set(g: &StarGraph) -> Vec<Vec<i64>> {
    let delta = minimal_imaginary_root(g);
    enumerate_delta_reps(g)
        .reps
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0) && defect_with(g, &delta, v) == 0)
        .collect()
}

/// Reduces a vector modulo δ to its representative with `v_1 = 0`.
pub fn reduce_mod_delta(g: &StarGraph, v: &[i64]) -> Vec<i64> {
    let delta = minimal_imaginary_root(g);
    let j = v[EXTENDING_VERTEX] / delta[EXTENDING_VERTEX];
    v.iter().zip(&delta).map(|(a, b)| a - j * b).collect()
}

/// A root is a nonzero integer vector with `q ≤ 1`.
pub fn is_root(g: &StarGraph, v: &[i64]) -> bool {
    v.iter().any(|&x| x != 0) && g.tits_form_unchecked(v) <= 1
}
