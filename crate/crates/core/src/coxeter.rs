//! Reflections, the even/odd Coxeter maps, and C-series of singular roots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{format_digits, parse_digits, GraphKind, Parity, StarGraph};
use crate::matrix::{Matrix, Ring};
use crate::roots::{is_nondegenerate, minimal_imaginary_root};

/// `σ_g`: `x_g ↦ −x_g + Σ_{h ~ g} x_h`, other coordinates fixed.
pub fn reflect<T: Ring>(g: &StarGraph, vertex: usize, x: &[T]) -> Result<Vec<T>> {
    g.check_len(x)?;
    if vertex >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(vertex));
    }
    let mut y = x.to_vec();
    y[vertex] = reflected(g, vertex, x);
    Ok(y)
}

fn reflected<T: Ring>(g: &StarGraph, v: usize, x: &[T]) -> T {
    g.neighbors(v).iter().fold(-x[v].clone(), |acc, &h| acc + x[h].clone())
}

/// Product of the reflections at every vertex of one parity (they commute).
pub fn coxeter_map<T: Ring>(g: &StarGraph, parity: Parity, x: &[T]) -> Vec<T> {
    masked_map(g, parity, None, x)
}

/// `∘c`
pub fn coxeter_even<T: Ring>(g: &StarGraph, x: &[T]) -> Vec<T> {
    coxeter_map(g, Parity::Even, x)
}

/// `•c`
pub fn coxeter_odd<T: Ring>(g: &StarGraph, x: &[T]) -> Vec<T> {
    coxeter_map(g, Parity::Odd, x)
}

/// Dimension-dependent character map: reflect only at vertices of the given
/// parity that lie in the support of `d`.
pub fn char_map_dim_dependent<T: Ring>(g: &StarGraph, d: &[i64], x: &[T], parity: Parity) -> Vec<T> {
    masked_map(g, parity, Some(d), x)
}

fn masked_map<T: Ring>(g: &StarGraph, parity: Parity, support: Option<&[i64]>, x: &[T]) -> Vec<T> {
    let mut y = x.to_vec();
    for v in 0..g.vertex_count() {
        if g.parity(v) == parity && support.is_none_or(|d| d[v] != 0) {
            y[v] = reflected(g, v, x);
        }
    }
    y
}

/// Matrix of [`char_map_dim_dependent`] (or of the full map if `support` is `None`).
pub fn reflection_matrix(g: &StarGraph, parity: Parity, support: Option<&[i64]>) -> Matrix<i64> {
    let n = g.vertex_count();
    let mut m = Matrix::identity(n);
    for v in 0..n {
        if g.parity(v) == parity && support.is_none_or(|d| d[v] != 0) {
            m[(v, v)] = -1;
            for &h in g.neighbors(v) {
                m[(v, h)] = 1;
            }
        }
    }
    m
}

/// `M_c`: odd reflections first, then even ones, on sincere characters.
pub fn full_coxeter_matrix(g: &StarGraph) -> Matrix<i64> {
    &reflection_matrix(g, Parity::Even, None) * &reflection_matrix(g, Parity::Odd, None)
}

/// Coxeter orbit of a coordinate vector, folded modulo `ε_t δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesJson", try_from = "SeriesJson")]
pub struct CSeries {
    pub graph: GraphKind,
    /// Vertex label (`0` is the center).
    pub vertex: usize,
    pub reps: Vec<Vec<i64>>,
    pub epsilon: i64,
    pub threshold: usize,
    pub start_parity: Parity,
    delta: Vec<i64>,
}

impl CSeries {
    /// `m_t`, the number of representatives.
    pub fn period(&self) -> usize {
        self.reps.len()
    }

    /// `d_k = v_{k mod m} + ε ⌊k/m⌋ δ`.
    pub fn orbit_element(&self, k: usize) -> Vec<i64> {
        let m = self.period();
        let shift = self.epsilon * (k / m) as i64;
        self.reps[k % m]
            .iter()
            .zip(&self.delta)
            .map(|(v, d)| v + shift * d)
            .collect()
    }

    /// Parity of the Coxeter map taking `d_{i-1}` to `d_i` (`i ≥ 1`).
    pub fn step_parity(&self, i: usize) -> Parity {
        assert!(i >= 1, "steps are numbered from 1");
        if (i - 1).is_multiple_of(2) {
            self.start_parity
        } else {
            self.start_parity.flip()
        }
    }

    /// Parity of the map closing the period, `v_{m-1} ↦ v_0 + εδ`.
    pub fn closing_parity(&self) -> Parity {
        self.step_parity(self.period())
    }

    pub fn digit_strings(&self) -> Vec<String> {
        self.reps.iter().map(|v| format_digits(v)).collect()
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }
}

/// Walks the orbit of `ε_t` under alternating Coxeter maps, starting with the
/// map of parity opposite to `t`, until it returns as `ε_t + εδ`.
pub fn c_series(g: &StarGraph, vertex: usize) -> Result<CSeries> {
    let t = g.index(vertex)?;
    let delta = minimal_imaginary_root(g);
    let start = g.unit(t);
    let start_parity = g.parity(t).flip();
    let closes = |v: &[i64]| (1..=2).find(|&eps| v.iter().zip(&start).zip(&delta).all(|((a, s), d)| *a == s + eps * d));
    let bound = 20 * 60;
    let mut reps = vec![start.clone()];
    let mut parity = start_parity;
    let mut cur = start.clone();
    for _ in 0..bound {
        let next = coxeter_map(g, parity, &cur);
        parity = parity.flip();
        if let Some(epsilon) = closes(&next) {
            let threshold = threshold(g, &reps, &delta, epsilon);
            return Ok(CSeries {
                graph: g.kind(),
                vertex,
                reps,
                epsilon,
                threshold,
                start_parity,
                delta,
            });
        }
        reps.push(next.clone());
        cur = next;
    }
    Err(Error::Internal(format!(
        "orbit of vertex {vertex} on {} did not close",
        g.kind()
    )))
}

/// Least `k_t` with `d_k` non-degenerate for all `k ≥ k_t`.
///
/// For a fixed representative, non-degeneracy of `v + jεδ` is monotone in `j`
/// because `δ` strictly increases towards the center along every arm.
fn threshold(g: &StarGraph, reps: &[Vec<i64>], delta: &[i64], eps: i64) -> usize {
    let m = reps.len();
    reps.iter()
        .enumerate()
        .map(|(s, v)| {
            let first_good = (0..)
                .find(|&j: &usize| {
                    let w: Vec<i64> = v.iter().zip(delta).map(|(a, d)| a + eps * j as i64 * d).collect();
                    is_nondegenerate(g, &w)
                })
                .unwrap();
            if first_good == 0 {
                0
            } else {
                (first_good - 1) * m + s + 1
            }
        })
        .max()
        .unwrap_or(0)
}

/// All series of a graph, ordered by vertex label `1..n` then the center.
pub fn all_series(g: &StarGraph) -> Result<Vec<CSeries>> {
    let mut labels: Vec<usize> = (1..g.vertex_count()).collect();
    labels.push(0);
    labels.into_iter().map(|t| c_series(g, t)).collect()
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    graph: GraphKind,
    vertex: usize,
    reps: Vec<String>,
    epsilon: i64,
    k_threshold: usize,
    start_parity: Parity,
}

impl From<CSeries> for SeriesJson {
    fn from(s: CSeries) -> Self {
        SeriesJson {
            graph: s.graph,
            vertex: s.vertex,
            reps: s.digit_strings(),
            epsilon: s.epsilon,
            k_threshold: s.threshold,
            start_parity: s.start_parity,
        }
    }
}

impl TryFrom<SeriesJson> for CSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        let g = StarGraph::new(j.graph);
        let reps = j.reps.iter().map(|s| parse_digits(s)).collect::<Result<Vec<_>>>()?;
        if reps.is_empty() || reps.iter().any(|r| r.len() != g.vertex_count()) {
            return Err(Error::Table("series representatives have the wrong length".into()));
        }
        Ok(CSeries {
            graph: j.graph,
            vertex: j.vertex,
            reps,
            epsilon: j.epsilon,
            threshold: j.k_threshold,
            start_parity: j.start_parity,
            delta: minimal_imaginary_root(&g),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> StarGraph {
        StarGraph::new(GraphKind::D4)
    }

    #[test]
    fn reflection_examples() {
        let g = d4();
        assert_eq!(reflect(&g, 4, &g.unit(4)).unwrap(), vec![0, 0, 0, 0, -1]);
        assert_eq!(reflect(&g, 4, &g.unit(0)).unwrap(), vec![1, 0, 0, 0, 1]);
        assert!(reflect(&g, 5, &g.unit(0)).is_err());
    }

    #[test]
    fn coxeter_examples() {
        let g = d4();
        assert_eq!(coxeter_odd(&g, &g.unit(4)), vec![1, 1, 1, 1, 1]);
        assert_eq!(coxeter_even(&g, &g.unit(0)), vec![1, 0, 0, 0, 1]);
        let x = vec![3, -1, 4, 1, 5];
        assert_eq!(coxeter_odd(&g, &coxeter_odd(&g, &x)), x);
    }

    #[test]
    fn d4_coxeter_matrix() {
        let expected = Matrix::from_rows(vec![
            vec![-1, 0, 0, 0, 1],
            vec![0, -1, 0, 0, 1],
            vec![0, 0, -1, 0, 1],
            vec![0, 0, 0, -1, 1],
            vec![-1, -1, -1, -1, 3],
        ]);
        assert_eq!(full_coxeter_matrix(&d4()), expected);
    }

    #[test]
    fn dim_dependent_map_on_sincere_and_singleton_support() {
        let g = d4();
        let x = vec![1i64, 2, 3, 4, 5];
        assert_eq!(
            char_map_dim_dependent(&g, &[1, 1, 1, 1, 2], &x, Parity::Odd),
            coxeter_odd(&g, &x)
        );
        assert_eq!(char_map_dim_dependent(&g, &g.unit(4), &x, Parity::Odd), x);
        assert_eq!(
            char_map_dim_dependent(&g, &g.unit(4), &x, Parity::Even),
            coxeter_even(&g, &x)
        );
    }

    #[test]
    fn d4_series() {
        let g = d4();
        let s = c_series(&g, 1).unwrap();
        assert_eq!(s.digit_strings(), ["10000", "10001", "01111", "01112"]);
        assert_eq!((s.epsilon, s.threshold, s.start_parity), (1, 5, Parity::Even));
        let s = c_series(&g, 0).unwrap();
        assert_eq!(s.digit_strings(), ["00001", "11111"]);
        assert_eq!((s.epsilon, s.threshold, s.start_parity), (1, 2, Parity::Odd));
    }

    #[test]
    fn orbit_elements() {
        let g = d4();
        assert_eq!(c_series(&g, 0).unwrap().orbit_element(2), vec![1, 1, 1, 1, 3]);
        let s = c_series(&g, 1).unwrap();
        assert_eq!(s.orbit_element(5), vec![2, 1, 1, 1, 3]);
        assert_eq!(s.orbit_element(0), g.unit(0));
    }

    #[test]
    fn e7_vertex_two_has_period_multiple_two() {
        let s = c_series(&StarGraph::new(GraphKind::E7), 2).unwrap();
        assert_eq!((s.period(), s.epsilon, s.threshold), (24, 2, 14));
    }

    #[test]
    fn e8_thresholds() {
        let g = StarGraph::new(GraphKind::E8);
        let k: Vec<usize> = (0..9).map(|t| c_series(&g, t).unwrap().threshold).collect();
        assert_eq!(k, vec![10, 65, 34, 23, 14, 13, 28, 17, 19]);
    }

    #[test]
    fn series_json_round_trip() {
        let s = c_series(&StarGraph::new(GraphKind::E6), 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"k_threshold\":7"));
        let back: CSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
