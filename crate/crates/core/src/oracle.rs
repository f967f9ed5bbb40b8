//! Numerical construction of Hermitian tuples with prescribed spectra summing
//! to `γI`, used as an independent check on positive decisions.
//!
//! This is the only module that uses floating point. A failed search is never
//! evidence that no tuple exists.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphKind;
use crate::rational::to_f64;
use crate::transition::{AlgebraCharacter, AlgebraDimension};

type CMatrix = DMatrix<Complex64>;

/// Largest ambient dimension the oracle accepts.
pub const MAX_N0: i64 = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOptions {
    pub seed: u64,
    pub max_iters: usize,
    pub restarts: u64,
    /// Frobenius bound on `ΣA_j − γI` for success.
    pub sum_tol: f64,
    /// Bound on the sorted eigenvalue deviation per matrix.
    pub spec_tol: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            seed: 0,
            max_iters: 20_000,
            restarts: 8,
            sum_tol: 1e-8,
            spec_tol: 1e-8,
        }
    }
}

/// Hermitian matrices, one per arm, as row-major `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleInstance {
    pub graph: GraphKind,
    pub gamma: f64,
    pub dims: AlgebraDimension,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    /// Seed of the successful restart.
    pub seed: u64,
    pub iterations: usize,
}

impl TupleInstance {
    fn from_matrices(
        chi: &AlgebraCharacter,
        n: &AlgebraDimension,
        mats: &[CMatrix],
        seed: u64,
        iterations: usize,
    ) -> Self {
        let matrices = mats
            .iter()
            .map(|m| {
                (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                    .collect()
            })
            .collect();
        TupleInstance {
            graph: chi.graph(),
            gamma: to_f64(chi.gamma()),
            dims: n.clone(),
            matrices,
            seed,
            iterations,
        }
    }

    /// Matrices in `nalgebra` form.
    pub fn to_matrices(&self) -> Result<Vec<CMatrix>> {
        self.matrices
            .iter()
            .map(|rows| {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(Error::MultiplicityMismatch("matrix is not square".into()));
                }
                Ok(CMatrix::from_fn(n, n, |i, j| {
                    Complex64::new(rows[i][j][0], rows[i][j][1])
                }))
            })
            .collect()
    }
}

/// Measured deviations of an instance from the problem it claims to solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    /// Largest `‖A − A*‖_F`.
    pub hermiticity: f64,
    /// Largest deviation between sorted computed and target eigenvalues.
    pub spectrum: f64,
    /// `‖ΣA_j − γI‖_F`.
    pub sum_residual: f64,
    pub hermitian_ok: bool,
    pub spectrum_ok: bool,
    pub sum_ok: bool,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.hermitian_ok && self.spectrum_ok && self.sum_ok
    }
}

/// Target spectra, ascending: each eigenvalue repeated by its multiplicity,
/// padded with zeros up to `n_0`.
pub fn target_spectra(chi: &AlgebraCharacter, n: &AlgebraDimension) -> Result<Vec<Vec<f64>>> {
    if chi.graph() != n.graph() {
        return Err(Error::MultiplicityMismatch(format!(
            "character is for {}, dimension for {}",
            chi.graph(),
            n.graph()
        )));
    }
    if n.total() < 1 {
        return Err(Error::MultiplicityMismatch("n_0 must be positive".into()));
    }
    let mut out = Vec::new();
    for (j, (vals, mults)) in chi.arms().iter().zip(n.mults()).enumerate() {
        if mults.iter().any(|&m| m < 0) {
            return Err(Error::MultiplicityMismatch(format!(
                "negative multiplicity on arm {}",
                j + 1
            )));
        }
        let zeros = n.total() - mults.iter().sum::<i64>();
        if zeros < 0 {
            return Err(Error::MultiplicityMismatch(format!(
                "multiplicities on arm {} exceed n_0 = {}",
                j + 1,
                n.total()
            )));
        }
        let mut spec: Vec<f64> = vec![0.0; zeros as usize];
        for (v, &m) in vals.iter().zip(mults) {
            spec.extend(std::iter::repeat_n(to_f64(v), m as usize));
        }
        spec.sort_by(f64::total_cmp);
        out.push(spec);
    }
    Ok(out)
}

/// Sorted eigenpairs of a Hermitian matrix.
fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let e = m.clone().symmetric_eigen();
    let mut idx: Vec<usize> = (0..e.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| e.eigenvectors[(r, idx[c])]);
    (vals, vecs)
}

/// Nearest Hermitian matrix (Frobenius norm) with the given ascending spectrum.
fn project(m: &CMatrix, spectrum: &[f64]) -> CMatrix {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let (_, u) = eigh(&h);
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        spectrum.len(),
        spectrum.iter().map(|&x| Complex64::new(x, 0.0)),
    ));
    &u * d * u.adjoint()
}

fn residual(mats: &[CMatrix], gamma: f64) -> CMatrix {
    let n = mats[0].nrows();
    let mut r = CMatrix::identity(n, n) * Complex64::new(-gamma, 0.0);
    for m in mats {
        r += m;
    }
    r
}

fn attempt(spectra: &[Vec<f64>], gamma: f64, seed: u64, opts: &OracleOptions) -> Option<(Vec<CMatrix>, usize)> {
    let n = spectra[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats: Vec<CMatrix> = spectra
        .iter()
        .map(|s| {
            let g = CMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            project(&g, s)
        })
        .collect();
    let share = Complex64::new(1.0 / mats.len() as f64, 0.0);
    for it in 0..opts.max_iters {
        let r = residual(&mats, gamma);
        if r.norm() < opts.sum_tol {
            return Some((mats, it));
        }
        let step = r * share;
        for (m, s) in mats.iter_mut().zip(spectra) {
            *m = project(&(&*m - &step), s);
        }
    }
    None
}

/// Searches for a tuple by alternating projections over several seeds in
/// parallel; the lowest successful seed wins, so the result does not depend on
/// scheduling. `Ok(None)` means inconclusive.
pub fn construct(chi: &AlgebraCharacter, n: &AlgebraDimension, opts: &OracleOptions) -> Result<Option<TupleInstance>> {
    if n.total() > MAX_N0 {
        return Err(Error::MultiplicityMismatch(format!(
            "the numerical oracle is limited to n_0 ≤ {MAX_N0}"
        )));
    }
    let spectra = target_spectra(chi, n)?;
    let gamma = to_f64(chi.gamma());
    let found = (0..opts.restarts.max(1))
        .into_par_iter()
        .filter_map(|r| {
            let seed = opts.seed.wrapping_add(r);
            attempt(&spectra, gamma, seed, opts).map(|(m, it)| (seed, m, it))
        })
        .min_by_key(|(seed, _, _)| seed.wrapping_sub(opts.seed));
    Ok(found.and_then(|(seed, mats, it)| {
        let inst = TupleInstance::from_matrices(chi, n, &mats, seed, it);
        verify_instance(&inst, chi, n, opts)
            .ok()
            .filter(InstanceReport::passed)
            .map(|_| inst)
    }))
}

/// Checks Hermiticity (`< 1e−10`), spectra and the sum residual.
pub fn verify_instance(
    inst: &TupleInstance,
    chi: &AlgebraCharacter,
    n: &AlgebraDimension,
    opts: &OracleOptions,
) -> Result<InstanceReport> {
    let spectra = target_spectra(chi, n)?;
    let mats = inst.to_matrices()?;
    if mats.len() != spectra.len() || mats.iter().any(|m| m.nrows() != n.total() as usize) {
        return Err(Error::MultiplicityMismatch(
            "instance shape does not match the dimension".into(),
        ));
    }
    let hermiticity = mats.iter().map(|m| (m - m.adjoint()).norm()).fold(0.0, f64::max);
    let spectrum = mats
        .iter()
        .zip(&spectra)
        .map(|(m, s)| {
            let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
            let (vals, _) = eigh(&h);
            vals.iter().zip(s).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let sum_residual = residual(&mats, to_f64(chi.gamma())).norm();
    Ok(InstanceReport {
        hermiticity,
        spectrum,
        sum_residual,
        hermitian_ok: hermiticity < 1e-10,
        spectrum_ok: spectrum < opts.spec_tol,
        sum_ok: sum_residual < opts.sum_tol,
    })
}

/// Four rank-one projections in `C^2` along the angles 0°, 90°, 45°, 135°;
/// they sum to `2I`, solving the hyperplane problem for `(1,1,1,1; 2)`.
pub fn d4_projection_instance() -> (TupleInstance, AlgebraCharacter, AlgebraDimension) {
    use crate::rational::int;
    let chi = AlgebraCharacter::new(GraphKind::D4, vec![vec![int(1)]; 4], int(2)).expect("valid");
    let n = AlgebraDimension::parse(GraphKind::D4, "1,1,1,1;2").expect("valid");
    let mats: Vec<CMatrix> = [0.0f64, 90.0, 45.0, 135.0]
        .iter()
        .map(|deg| {
            let (s, c) = deg.to_radians().sin_cos();
            let v = nalgebra::DVector::from_vec(vec![Complex64::new(c, 0.0), Complex64::new(s, 0.0)]);
            &v * v.adjoint()
        })
        .collect();
    (TupleInstance::from_matrices(&chi, &n, &mats, 0, 0), chi, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn hand_instance_passes() {
        let (inst, chi, n) = d4_projection_instance();
        let rep = verify_instance(&inst, &chi, &n, &OracleOptions::default()).unwrap();
        assert!(rep.passed());
        assert!(rep.sum_residual < 1e-12);
    }

    #[test]
    fn perturbed_spectrum_fails() {
        let (mut inst, chi, n) = d4_projection_instance();
        inst.matrices[0][0][0][0] += 1e-3;
        let rep = verify_instance(&inst, &chi, &n, &OracleOptions::default()).unwrap();
        assert!(!rep.spectrum_ok);
    }

    #[test]
    fn gamma_shift_gives_sqrt_n0() {
        let (inst, _, n) = d4_projection_instance();
        let chi = AlgebraCharacter::new(GraphKind::D4, vec![vec![int(1)]; 4], int(3)).unwrap();
        let rep = verify_instance(&inst, &chi, &n, &OracleOptions::default()).unwrap();
        assert!((rep.sum_residual - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn constructs_small_instance() {
        let chi = AlgebraCharacter::new(GraphKind::D4, vec![vec![int(3)]; 4], int(4)).unwrap();
        let n = AlgebraDimension::parse(GraphKind::D4, "1,1,1,1;3").unwrap();
        let inst = construct(&chi, &n, &OracleOptions::default())
            .unwrap()
            .expect("converges");
        let rep = verify_instance(&inst, &chi, &n, &OracleOptions::default()).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn rejects_oversized_multiplicities() {
        let chi = AlgebraCharacter::new(GraphKind::D4, vec![vec![int(1)]; 4], int(2)).unwrap();
        let n = AlgebraDimension::parse(GraphKind::D4, "3,1,1,1;2").unwrap();
        assert!(matches!(target_spectra(&chi, &n), Err(Error::MultiplicityMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let (inst, _, _) = d4_projection_instance();
        let s = serde_json::to_string(&inst).unwrap();
        assert_eq!(serde_json::from_str::<TupleInstance>(&s).unwrap(), inst);
    }
}
