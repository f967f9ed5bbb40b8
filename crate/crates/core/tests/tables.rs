//! Regenerated tables against the shipped fixtures.

use dynkin_spectral::graph::{format_digits, GraphKind};
use dynkin_spectral::solver::{series_for, walk_matrix};
use dynkin_spectral::tables::{fixture, known_discrepancies, regenerate, verify, Status};
use dynkin_spectral::transition::{delta_alg, hyperplane_equation, AlgebraDimension};

#[test]
fn every_graph_verifies() {
    for kind in GraphKind::ALL {
        let report = verify(kind).unwrap();
        assert!(report.passed(), "{report}");
        for c in &report.checks {
            assert!(matches!(c.status, Status::Ok | Status::Known), "{} {}", c.status, c.id);
        }
    }
}

#[test]
fn known_discrepancies_are_exactly_the_flagged_checks() {
    let mut flagged: Vec<String> = GraphKind::ALL
        .iter()
        .flat_map(|&k| verify(k).unwrap().checks)
        .filter(|c| c.status == Status::Known)
        .map(|c| c.id)
        .collect();
    let mut listed: Vec<String> = known_discrepancies().iter().map(|d| d.id.clone()).collect();
    flagged.sort();
    listed.sort();
    assert_eq!(flagged, listed);
}

#[test]
fn series_digits_match_fixture_strings() {
    for kind in GraphKind::ALL {
        for row in &fixture(kind).series {
            let s = series_for(kind, row.vertex).unwrap();
            assert_eq!(s.digit_strings(), row.reps, "{kind} C_{}", row.vertex);
            assert_eq!(s.epsilon, row.epsilon, "{kind} ε_{}", row.vertex);
        }
    }
}

#[test]
fn printed_d_matrices_are_walk_matrices() {
    let known: Vec<String> = known_discrepancies().iter().map(|d| d.id.clone()).collect();
    for kind in GraphKind::ALL {
        for row in &fixture(kind).d_matrices {
            let id = format!("{kind}.d-matrix.{}", row.name);
            let m = walk_matrix(kind, row.vertex, row.k).unwrap();
            if known.contains(&id) {
                assert_ne!(m.to_rows(), row.rows, "{id} is listed as known but matches");
            } else {
                assert_eq!(m.to_rows(), row.rows, "{id}");
            }
        }
    }
}

#[test]
fn delta_alg_and_hyperplane() {
    for kind in GraphKind::ALL {
        let f = fixture(kind);
        assert_eq!(AlgebraDimension::parse(kind, &f.delta_alg).unwrap(), delta_alg(kind));
        let id = format!("{kind}.hyperplane");
        if !known_discrepancies().iter().any(|d| d.id == id) {
            assert_eq!(f.hyperplane, hyperplane_equation(kind));
        }
    }
}

#[test]
fn regenerated_text_has_every_series_line() {
    for kind in GraphKind::ALL {
        let text = regenerate(kind).unwrap();
        for row in &fixture(kind).series {
            let line = format!("C_{}: {}\n", row.vertex, row.reps.join(", "));
            assert!(text.contains(&line), "{kind}: missing {line}");
        }
        let s = series_for(kind, 0).unwrap();
        assert!(text.contains(&format_digits(s.delta())));
    }
}
