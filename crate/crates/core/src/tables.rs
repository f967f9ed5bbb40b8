//! Reference tables shipped with the crate, their regeneration from first
//! principles, and the comparison between the two.
//!
//! The fixtures under `data/tables` are transcribed digit for digit, misprints
//! included. Known misprints live in `data/known_discrepancies.toml`; a check
//! that disagrees with the fixture in exactly the recorded way is reported as
//! `KNOWN`, and one that suddenly agrees is reported as `STALE` so the list
//! cannot silently rot.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::coxeter::CSeries;
use crate::error::{Error, Result};
use crate::graph::{format_digits, parse_digits, GraphKind, Parity, StarGraph};
use crate::roots::{enumerate_delta_reps_cached, minimal_imaginary_root, reduce_mod_delta, regular_final_set};
use crate::solver::{horn_conditions, series_table, walk_matrix, AFormula};
use crate::transition::{delta_alg, hyperplane_equation};

/// One graph's transcribed tables.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub graph: GraphKind,
    pub delta_orbits: usize,
    pub c_series: usize,
    pub regular_series: usize,
    pub delta_alg: String,
    pub hyperplane: String,
    /// Positive halves of the `±` regular list, as printed.
    pub regular: Vec<String>,
    pub horn: Vec<String>,
    #[serde(rename = "threshold")]
    pub thresholds: Vec<ThresholdRow>,
    pub series: Vec<SeriesRow>,
    #[serde(rename = "d_matrix")]
    pub d_matrices: Vec<DMatrixRow>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdRow {
    pub label: String,
    pub vertex: usize,
    pub value: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesRow {
    pub vertex: usize,
    pub epsilon: i64,
    pub first_map: Parity,
    pub last_map: Parity,
    pub reps: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DMatrixRow {
    pub name: String,
    pub vertex: usize,
    pub k: usize,
    pub rows: Vec<Vec<i64>>,
}

/// A recorded misprint: the check `id` is expected to read `printed` in the
/// fixture and `computed` from the algorithms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownDiscrepancy {
    pub id: String,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

#[derive(Deserialize)]
struct KnownFile {
    discrepancy: Vec<KnownDiscrepancy>,
}

const FIXTURES: [&str; 4] = [
    include_str!("../data/tables/d4t.toml"),
    include_str!("../data/tables/e6t.toml"),
    include_str!("../data/tables/e7t.toml"),
    include_str!("../data/tables/e8t.toml"),
];

const KNOWN: &str = include_str!("../data/known_discrepancies.toml");

fn slot(kind: GraphKind) -> usize {
    GraphKind::ALL.iter().position(|&k| k == kind).unwrap()
}

/// Parses a fixture; fails on malformed data.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    toml::from_str(text).map_err(|e| Error::Table(e.to_string()))
}

/// The embedded fixture for a graph.
pub fn fixture(kind: GraphKind) -> &'static Fixture {
    static CACHE: [OnceLock<Fixture>; 4] = [const { OnceLock::new() }; 4];
    CACHE[slot(kind)].get_or_init(|| {
        let f = parse_fixture(FIXTURES[slot(kind)]).expect("embedded fixture parses");
        assert_eq!(f.graph, kind, "fixture order");
        f
    })
}

/// The embedded list of known misprints.
pub fn known_discrepancies() -> &'static [KnownDiscrepancy] {
    static CACHE: OnceLock<Vec<KnownDiscrepancy>> = OnceLock::new();
    CACHE.get_or_init(|| {
        toml::from_str::<KnownFile>(KNOWN)
            .expect("embedded discrepancy list parses")
            .discrepancy
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// Fixture and computation agree.
    Ok,
    /// They disagree exactly as recorded in the discrepancy list.
    Known,
    /// They disagree in an unrecorded way.
    Mismatch,
    /// A recorded discrepancy no longer occurs.
    Stale,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "OK",
            Status::Known => "KNOWN",
            Status::Mismatch => "MISMATCH",
            Status::Stale => "STALE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub printed: String,
    pub computed: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub graph: GraphKind,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    /// `true` unless some check is `MISMATCH` or `STALE`.
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| matches!(c.status, Status::Ok | Status::Known))
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.status {
                Status::Ok => writeln!(f, "{:<8} {}", c.status, c.id)?,
                _ => {
                    writeln!(f, "{:<8} {}", c.status, c.id)?;
                    writeln!(f, "         printed:  {}", c.printed)?;
                    writeln!(f, "         computed: {}", c.computed)?;
                    if let Some(n) = &c.note {
                        writeln!(f, "         note:     {n}")?;
                    }
                }
            }
        }
        let bad = self
            .checks
            .iter()
            .filter(|c| !matches!(c.status, Status::Ok | Status::Known))
            .count();
        let known = self.checks.iter().filter(|c| c.status == Status::Known).count();
        writeln!(
            f,
            "{}: {} checks, {} known discrepancies, {} failures",
            self.graph,
            self.checks.len(),
            known,
            bad
        )
    }
}

struct Checks {
    kind: GraphKind,
    out: Vec<Check>,
}

impl Checks {
    fn push(&mut self, id: String, printed: String, computed: String) {
        let known = known_discrepancies().iter().find(|k| k.id == id);
        let status = match (printed == computed, known) {
            (true, None) => Status::Ok,
            (true, Some(_)) => Status::Stale,
            (false, Some(k)) if k.printed == printed && k.computed == computed => Status::Known,
            (false, _) => Status::Mismatch,
        };
        self.out.push(Check {
            id,
            printed,
            computed,
            status,
            note: known.map(|k| k.note.clone()),
        });
    }

    fn add(&mut self, item: &str, printed: impl ToString, computed: impl ToString) {
        let id = format!("{}.{item}", self.kind);
        self.push(id, printed.to_string(), computed.to_string());
    }
}

/// Number of distinct C-orbits among the series of all vertices.
pub fn distinct_series_count(kind: GraphKind) -> usize {
    let series = series_table(kind);
    let mut classes: Vec<&CSeries> = Vec::new();
    for s in series {
        if !classes.iter().any(|c| in_orbit(c, &s.reps[0])) {
            classes.push(s);
        }
    }
    classes.len()
}

/// `u = v_s + jεδ` for some representative and any integer `j`.
fn in_orbit(series: &CSeries, u: &[i64]) -> bool {
    let delta = series.delta();
    let step = series.epsilon;
    series.reps.iter().any(|v| {
        let diff = u[0] - v[0];
        diff % step == 0 && u.iter().zip(v).zip(delta).all(|((a, b), d)| *a == b + diff * d)
    })
}

/// `±` closure of a set of vectors, reduced modulo `δ`.
fn plus_minus_mod_delta(g: &StarGraph, vs: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    vs.iter()
        .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
        .map(|v| reduce_mod_delta(g, &v))
        .collect()
}

/// Nonnegative member of `{v, −v}` after reduction modulo `δ`.
fn positive_rep(g: &StarGraph, v: &[i64]) -> Vec<i64> {
    let r = reduce_mod_delta(g, v);
    if r.iter().all(|&x| x <= 0) {
        r.iter().map(|x| -x).collect()
    } else {
        r
    }
}

fn join_digits(vs: &[Vec<i64>]) -> String {
    vs.iter().map(|v| format_digits(v)).collect::<Vec<_>>().join(", ")
}

/// Compares every fixture entry with its computed counterpart.
pub fn verify(kind: GraphKind) -> Result<VerifyReport> {
    let g = StarGraph::new(kind);
    let fx = fixture(kind);
    let mut c = Checks { kind, out: Vec::new() };

    let reps = enumerate_delta_reps_cached(kind);
    c.add("delta-orbits", fx.delta_orbits, reps.len());
    c.add("c-series-count", fx.c_series, distinct_series_count(kind));
    let regular = regular_final_set(&g);
    c.add("regular-series", fx.regular_series, regular.len() + 1);

    let printed = fx.regular.iter().map(|s| parse_digits(s)).collect::<Result<Vec<_>>>()?;
    let computed_pos: Vec<Vec<i64>> = regular.iter().filter(|v| v.iter().all(|&x| x >= 0)).cloned().collect();
    let printed_pos: Vec<Vec<i64>> = plus_minus_mod_delta(&g, &printed)
        .into_iter()
        .filter(|v| v.iter().all(|&x| x >= 0))
        .collect();
    c.add("regular-set", join_digits(&printed_pos), join_digits(&computed_pos));
    let literal: Vec<Vec<i64>> = printed.iter().map(|v| positive_rep(&g, v)).collect();
    c.add("regular-set-literal", join_digits(&printed), join_digits(&literal));

    for row in &fx.series {
        let s = series_table(kind)
            .iter()
            .find(|s| s.vertex == row.vertex)
            .ok_or(Error::VertexOutOfRange(row.vertex))?;
        let t = row.vertex;
        c.add(
            &format!("series.{t}.reps"),
            row.reps.join(", "),
            s.digit_strings().join(", "),
        );
        c.add(&format!("series.{t}.epsilon"), row.epsilon, s.epsilon);
        c.add(&format!("series.{t}.first-map"), row.first_map, s.start_parity);
        c.add(&format!("series.{t}.last-map"), row.last_map, s.closing_parity());
    }
    for row in &fx.thresholds {
        let s = series_table(kind)
            .iter()
            .find(|s| s.vertex == row.vertex)
            .ok_or(Error::VertexOutOfRange(row.vertex))?;
        c.add(&format!("threshold.{}", row.label), row.value, s.threshold);
    }
    for row in &fx.d_matrices {
        let claim = format!("walk(t={},k={})", row.vertex, row.k);
        let printed = crate::matrix::Matrix::from_rows(row.rows.clone());
        let found = if walk_matrix(kind, row.vertex, row.k)? == printed {
            claim.clone()
        } else {
            let period = series_table(kind)
                .iter()
                .find(|s| s.vertex == row.vertex)
                .map_or(1, |s| s.period());
            (0..=row.k + 4 * period)
                .find(|&k| walk_matrix(kind, row.vertex, k).is_ok_and(|m| m == printed))
                .map_or_else(
                    || "no walk matrix matches".to_string(),
                    |k| format!("walk(t={},k={k})", row.vertex),
                )
        };
        c.add(&format!("d-matrix.{}", row.name), claim, found);
    }
    let printed_alg = crate::transition::AlgebraDimension::parse(kind, &fx.delta_alg)?;
    c.add("delta-alg", printed_alg, delta_alg(kind));
    c.add("hyperplane", &fx.hyperplane, hyperplane_equation(kind));
    let horn: Vec<String> = horn_conditions(kind).iter().map(ToString::to_string).collect();
    c.add("horn-parse", fx.horn.len(), horn.len());
    Ok(VerifyReport {
        graph: kind,
        checks: c.out,
    })
}

/// Text rendering of every table for one graph, computed from scratch.
pub fn regenerate(kind: GraphKind) -> Result<String> {
    let g = StarGraph::new(kind);
    let mut out = String::new();
    let w = &mut out;
    let delta = minimal_imaginary_root(&g);
    let regular = regular_final_set(&g);
    let series = series_table(kind);
    writeln!(w, "Tables for {kind}").unwrap();
    writeln!(w, "δ = {}", format_digits(&delta)).unwrap();
    writeln!(w).unwrap();
    writeln!(
        w,
        "1. Δ consists of {} δ-orbits.",
        enumerate_delta_reps_cached(kind).len()
    )
    .unwrap();
    let pos: Vec<Vec<i64>> = regular.iter().filter(|v| v.iter().all(|&x| x >= 0)).cloned().collect();
    writeln!(
        w,
        "2. Δ is a union of {} C-series of singular roots and {} δ-series of regular roots.",
        distinct_series_count(kind),
        regular.len() + 1
    )
    .unwrap();
    writeln!(w, "   Δ_f ∩ Δ_reg = ±{{{}}}", join_digits(&pos)).unwrap();
    writeln!(w).unwrap();
    writeln!(w, "3. C-series").unwrap();
    for s in series {
        writeln!(w, "C_{}: {}", s.vertex, s.digit_strings().join(", ")).unwrap();
        writeln!(
            w,
            "   ε_{t} = {}, k_{t} = {}, first map {}c, last map {}c, period {}",
            s.epsilon,
            s.threshold,
            s.start_parity.symbol(),
            s.closing_parity().symbol(),
            s.period(),
            t = s.vertex
        )
        .unwrap();
    }
    writeln!(w).unwrap();
    writeln!(w, "4. Walk matrices at the thresholds").unwrap();
    let reps = crate::solver::representative_vertices(&g);
    for s in series.iter().filter(|s| reps.contains(&s.vertex)) {
        let f = AFormula::new(kind, s.vertex)?;
        writeln!(w, "D_{{{},{}}} =", s.vertex, s.threshold).unwrap();
        write!(w, "{}", f.d).unwrap();
        writeln!(w, "{f}").unwrap();
    }
    writeln!(w).unwrap();
    writeln!(w, "5. δ_alg = ({})", delta_alg(kind)).unwrap();
    writeln!(w, "   h_G: {}", hyperplane_equation(kind)).unwrap();
    writeln!(w, "   H_G ({} inequalities):", horn_conditions(kind).len()).unwrap();
    for h in horn_conditions(kind) {
        writeln!(w, "   {h}").unwrap();
    }
    Ok(out)
}
