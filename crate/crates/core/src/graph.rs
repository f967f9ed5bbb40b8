//! The four star-shaped extended Dynkin graphs and their quadratic forms.
//!
//! Vectors are indexed `(v_1, ..., v_n, v_0)`: vertex labels `1..n` occupy
//! indices `0..n-1` and the center (label 0) is stored last. Arms are listed
//! leaf first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphKind {
    #[serde(rename = "D4t")]
    D4,
    #[serde(rename = "E6t")]
    E6,
    #[serde(rename = "E7t")]
    E7,
    #[serde(rename = "E8t")]
    E8,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [GraphKind::D4, GraphKind::E6, GraphKind::E7, GraphKind::E8];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::D4 => "D4t",
            GraphKind::E6 => "E6t",
            GraphKind::E7 => "E7t",
            GraphKind::E8 => "E8t",
        }
    }

    /// Non-central vertices per arm.
    pub fn arm_lengths(self) -> &'static [usize] {
        match self {
            GraphKind::D4 => &[1, 1, 1, 1],
            GraphKind::E6 => &[2, 2, 2],
            GraphKind::E7 => &[3, 3, 1],
            GraphKind::E8 => &[5, 2, 1],
        }
    }

    pub fn vertex_count(self) -> usize {
        self.arm_lengths().iter().sum::<usize>() + 1
    }

    fn center_parity(self) -> Parity {
        match self {
            GraphKind::E6 => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// Recognizes a star by its arm lengths, in any arm order.
    pub fn from_arm_lengths(lengths: &[usize]) -> Option<GraphKind> {
        let mut sorted = lengths.to_vec();
        sorted.sort_unstable();
        GraphKind::ALL.into_iter().find(|k| {
            let mut own = k.arm_lengths().to_vec();
            own.sort_unstable();
            own == sorted
        })
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownGraph(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Circle notation used in the reference tables.
    pub fn symbol(self) -> &'static str {
        match self {
            Parity::Even => "∘",
            Parity::Odd => "•",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Table(format!("unknown parity `{s}`"))),
        }
    }
}

/// A star-shaped extended Dynkin graph with fixed coordinates and bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarGraph {
    kind: GraphKind,
    arms: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    parity: Vec<Parity>,
}

impl StarGraph {
    pub fn new(kind: GraphKind) -> StarGraph {
        let n = kind.vertex_count();
        let center = n - 1;
        let mut arms = Vec::new();
        let mut next = 0;
        for &len in kind.arm_lengths() {
            arms.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let mut neighbors = vec![Vec::new(); n];
        let mut parity = vec![kind.center_parity(); n];
        for arm in &arms {
            let mut inner = center;
            for &v in arm.iter().rev() {
                neighbors[v].push(inner);
                neighbors[inner].push(v);
                parity[v] = parity[inner].flip();
                inner = v;
            }
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        StarGraph {
            kind,
            arms,
            neighbors,
            parity,
        }
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.parity.len()
    }

    /// Index of the center in vector layouts (always the last slot).
    pub fn center(&self) -> usize {
        self.vertex_count() - 1
    }

    /// Arms as index paths from leaf to the vertex next to the center.
    pub fn arms(&self) -> &[Vec<usize>] {
        &self.arms
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn parity(&self, v: usize) -> Parity {
        self.parity[v]
    }

    /// Each edge once, as `(smaller, larger)` index pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |a| self.neighbors[a].iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a < b)
    }

    /// Vertex label (`1..n`, center `0`) of an index.
    pub fn label(&self, index: usize) -> usize {
        if index == self.center() {
            0
        } else {
            index + 1
        }
    }

    /// Index of a vertex label.
    pub fn index(&self, label: usize) -> Result<usize> {
        match label {
            0 => Ok(self.center()),
            l if l < self.vertex_count() => Ok(l - 1),
            l => Err(Error::VertexOutOfRange(l)),
        }
    }

    /// `(arm, position from the inner end)` of a non-central vertex.
    pub fn arm_position(&self, v: usize) -> Option<(usize, usize)> {
        self.arms
            .iter()
            .enumerate()
            .find_map(|(a, arm)| arm.iter().position(|&x| x == v).map(|p| (a, arm.len() - 1 - p)))
    }

    pub fn check_len<T>(&self, v: &[T]) -> Result<()> {
        if v.len() == self.vertex_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.vertex_count(),
                found: v.len(),
            })
        }
    }

    /// Tits form `q(v) = Σ v_i² − Σ_edges v_i v_j`.
    pub fn tits_form<T: Ring>(&self, v: &[T]) -> Result<T> {
        self.check_len(v)?;
        Ok(self.tits_form_unchecked(v))
    }

    pub(crate) fn tits_form_unchecked<T: Ring>(&self, v: &[T]) -> T {
        let squares = v.iter().fold(T::zero(), |acc, x| acc + x.clone() * x.clone());
        self.edges()
            .fold(squares, |acc, (a, b)| acc - v[a].clone() * v[b].clone())
    }

    /// Symmetric bilinear form `(u, v) = q(u + v) − q(u) − q(v)`.
    pub fn bilinear<T: Ring>(&self, u: &[T], v: &[T]) -> Result<T> {
        self.check_len(u)?;
        self.check_len(v)?;
        let diag = u
            .iter()
            .zip(v)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        let off = self.edges().fold(T::zero(), |acc, (a, b)| {
            acc + u[a].clone() * v[b].clone() + u[b].clone() * v[a].clone()
        });
        Ok(diag.clone() + diag - off)
    }

    /// Coordinate vector `ε_v`.
    pub fn unit(&self, v: usize) -> Vec<i64> {
        let mut e = vec![0; self.vertex_count()];
        e[v] = 1;
        e
    }
}

/// Graph automorphism exchanging two arms of equal length, or the identity.
///
/// A swap is named by one pair of exchanged vertices, `(a,b)` in vertex labels,
/// which fixes the whole arm permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Identity,
    Swap(usize, usize),
}

impl Symmetry {
    /// The arm transposition moving vertex label `a` to `b`.
    pub fn swap(g: &StarGraph, a: usize, b: usize) -> Result<Symmetry> {
        let bad = || Error::InvalidSymmetry(format!("({a},{b})"));
        let (ia, ib) = (g.index(a).map_err(|_| bad())?, g.index(b).map_err(|_| bad())?);
        let (Some((arm_a, pa)), Some((arm_b, pb))) = (g.arm_position(ia), g.arm_position(ib)) else {
            return Err(bad());
        };
        if arm_a == arm_b || pa != pb || g.arms[arm_a].len() != g.arms[arm_b].len() {
            return Err(bad());
        }
        Ok(Symmetry::Swap(a.min(b), a.max(b)))
    }

    fn arm_pair(self, g: &StarGraph) -> Option<(usize, usize)> {
        match self {
            Symmetry::Identity => None,
            Symmetry::Swap(a, b) => {
                let arm = |l| g.index(l).ok().and_then(|i| g.arm_position(i)).map(|p| p.0);
                Some((arm(a)?, arm(b)?))
            }
        }
    }

    /// Image of an index under the induced vertex permutation.
    pub fn map_index(self, g: &StarGraph, v: usize) -> usize {
        let Some((x, y)) = self.arm_pair(g) else {
            return v;
        };
        match g.arm_position(v) {
            Some((arm, pos)) if arm == x || arm == y => {
                let other = if arm == x { y } else { x };
                let target = &g.arms[other];
                target[target.len() - 1 - pos]
            }
            _ => v,
        }
    }

    /// Permutes coordinates: `(τv)_{τ(i)} = v_i`.
    pub fn apply<T: Clone>(self, g: &StarGraph, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.map_index(g, i)] = x.clone();
        }
        out
    }

    /// Every arm transposition plus the identity.
    pub fn all(g: &StarGraph) -> Vec<Symmetry> {
        let mut out = vec![Symmetry::Identity];
        for i in 0..g.arms.len() {
            for j in i + 1..g.arms.len() {
                if g.arms[i].len() == g.arms[j].len() {
                    let (a, b) = (g.label(g.arms[i][0]), g.label(g.arms[j][0]));
                    out.push(Symmetry::Swap(a, b));
                }
            }
        }
        out
    }

    /// Identity plus the swaps moving the vertex at index `t`, each named by
    /// the transposition of `t` itself.
    pub fn moving(g: &StarGraph, t: usize) -> Vec<Symmetry> {
        let mut out = vec![Symmetry::Identity];
        let Some((arm, pos)) = g.arm_position(t) else {
            return out;
        };
        for (j, other) in g.arms.iter().enumerate() {
            if j != arm && other.len() == g.arms[arm].len() {
                let image = other[other.len() - 1 - pos];
                out.push(Symmetry::Swap(g.label(t), g.label(image)));
            }
        }
        out
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symmetry::Identity => f.write_str("e"),
            Symmetry::Swap(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "e" {
            return Ok(Symmetry::Identity);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidSymmetry(s.to_string()))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::InvalidSymmetry(s.to_string()))?;
        let parse = |x: &str| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidSymmetry(s.to_string()))
        };
        let (a, b) = (parse(a)?, parse(b)?);
        Ok(Symmetry::Swap(a.min(b), a.max(b)))
    }
}

impl Serialize for Symmetry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symmetry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Appendix digit-string format: `2468(10)476(12)`.
pub fn format_digits(v: &[i64]) -> String {
    v.iter()
        .map(|&x| {
            if (0..=9).contains(&x) {
                x.to_string()
            } else {
                format!("({x})")
            }
        })
        .collect()
}

/// Inverse of [`format_digits`].
pub fn parse_digits(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Table(format!("bad digit string `{s}`"));
    let mut out = Vec::new();
    let mut chars = s.trim().chars();
    while let Some(c) = chars.next() {
        if c == '(' {
            let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
            out.push(inner.trim().parse().map_err(|_| bad())?);
        } else {
            out.push(c.to_digit(10).ok_or_else(bad)? as i64);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_layout() {
        let g = StarGraph::new(GraphKind::D4);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.arms(), &[vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(g.center(), 4);
        assert_eq!(g.neighbors(4), &[0, 1, 2, 3]);
        assert_eq!(g.parity(4), Parity::Even);
    }

    #[test]
    fn e8_layout() {
        let g = StarGraph::new(GraphKind::E8);
        assert_eq!(g.vertex_count(), 9);
        let lens: Vec<usize> = g.arms().iter().map(Vec::len).collect();
        assert_eq!(lens, vec![5, 2, 1]);
        // leaf 1 - 2 - 3 - 4 - 5 - center
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(4), &[3, 8]);
    }

    #[test]
    fn e6_center_is_odd() {
        let g = StarGraph::new(GraphKind::E6);
        assert_eq!(g.parity(g.center()), Parity::Odd);
        assert_eq!(g.parity(0), Parity::Odd);
        assert_eq!(g.parity(1), Parity::Even);
    }

    #[test]
    fn parity_is_proper_coloring() {
        for kind in GraphKind::ALL {
            let g = StarGraph::new(kind);
            assert_eq!(g.edges().count(), g.vertex_count() - 1);
            for (a, b) in g.edges() {
                assert_ne!(g.parity(a), g.parity(b));
            }
        }
    }

    #[test]
    fn tits_form_examples() {
        let g = StarGraph::new(GraphKind::D4);
        assert_eq!(g.tits_form(&[1i64, 0, 0, 0, 0]).unwrap(), 1);
        assert_eq!(g.tits_form(&[1i64, 1, 1, 1, 2]).unwrap(), 0);
        assert_eq!(g.tits_form(&[1i64, 0, 0, 0, 1]).unwrap(), 1);
        assert!(g.tits_form(&[1i64, 0]).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let g = StarGraph::new(GraphKind::D4);
        let e = |i| g.unit(i);
        assert_eq!(g.bilinear(&e(0), &e(0)).unwrap(), 2);
        assert_eq!(g.bilinear(&e(0), &e(4)).unwrap(), -1);
        assert_eq!(g.bilinear(&e(0), &e(1)).unwrap(), 0);
    }

    #[test]
    fn labels_round_trip() {
        let g = StarGraph::new(GraphKind::E7);
        for i in 0..g.vertex_count() {
            assert_eq!(g.index(g.label(i)).unwrap(), i);
        }
        assert!(g.index(8).is_err());
    }

    #[test]
    fn symmetry_sets() {
        let g = StarGraph::new(GraphKind::E6);
        let names: Vec<String> = Symmetry::moving(&g, 0).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["e", "(1,3)", "(1,5)"]);
        let names: Vec<String> = Symmetry::moving(&g, 1).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["e", "(2,4)", "(2,6)"]);
        let g = StarGraph::new(GraphKind::E7);
        let names: Vec<String> = Symmetry::moving(&g, 2).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["e", "(3,6)"]);
        assert_eq!(Symmetry::moving(&g, 6), vec![Symmetry::Identity]);
        assert_eq!(Symmetry::all(&StarGraph::new(GraphKind::E8)), vec![Symmetry::Identity]);
    }

    #[test]
    fn swap_permutes_whole_arms() {
        let g = StarGraph::new(GraphKind::E7);
        let tau = Symmetry::swap(&g, 2, 5).unwrap();
        let v: Vec<i64> = (1..=8).collect();
        assert_eq!(tau.apply(&g, &v), vec![4, 5, 6, 1, 2, 3, 7, 8]);
        assert!(Symmetry::swap(&g, 1, 5).is_err());
        assert!(Symmetry::swap(&g, 3, 7).is_err());
    }

    #[test]
    fn symmetry_text_round_trip() {
        for s in ["e", "(1,4)", "(2,6)"] {
            assert_eq!(s.parse::<Symmetry>().unwrap().to_string(), s);
        }
        assert!("(1;2)".parse::<Symmetry>().is_err());
    }

    #[test]
    fn digits_round_trip() {
        let v = vec![2, 4, 6, 8, 10, 4, 7, 6, 12];
        assert_eq!(format_digits(&v), "2468(10)476(12)");
        assert_eq!(parse_digits("2468(10)476(12)").unwrap(), v);
        assert_eq!(parse_digits("(-1)01").unwrap(), vec![-1, 0, 1]);
    }

    #[test]
    fn graph_names() {
        assert_eq!("E7t".parse::<GraphKind>().unwrap(), GraphKind::E7);
        assert!("e7t".parse::<GraphKind>().is_err());
        assert_eq!(GraphKind::from_arm_lengths(&[1, 3, 3]), Some(GraphKind::E7));
        assert_eq!(GraphKind::from_arm_lengths(&[1, 2, 2]), None);
    }
}
