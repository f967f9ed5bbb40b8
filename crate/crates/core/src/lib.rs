//! Exact decision procedure for sums of Hermitian operators with prescribed
//! spectra whose spectrum sizes form a star-shaped extended Dynkin graph
//! (`D4t`, `E6t`, `E7t`, `E8t`).
//!
//! Given a character `χ` (the nonzero eigenvalues per operator and the scalar
//! `γ` in `A_1 + … + A_r = γI`) and a generalized dimension `n` (their
//! multiplicities and `n_0`), [`decide`] answers whether an irreducible
//! non-degenerate tuple exists, with a certificate.
//!
//! ```
//! use dynkin_spectral::{decide, AlgebraCharacter, AlgebraDimension, GraphKind};
//! use dynkin_spectral::rational::int;
//!
//! let chi = AlgebraCharacter::new(GraphKind::D4, vec![vec![int(1)]; 4], int(2))?;
//! let n = AlgebraDimension::parse(GraphKind::D4, "1,1,1,1;2")?;
//! assert!(decide(&chi, &n)?.is_yes());
//! # Ok::<(), dynkin_spectral::Error>(())
//! ```
//!
//! Module map:
//!
//! * [`graph`], [`roots`]: graphs, the Tits form, roots modulo `δ`.
//! * [`coxeter`]: reflections, Coxeter maps, C-series.
//! * [`transition`]: `M_f`, `M_d`, the invariant functional.
//! * [`solver`], [`horn`]: the decision and its certificates.
//! * [`tables`]: regenerated reference tables and fixture verification.
//! * [`oracle`]: floating-point construction of tuples (the only numeric code).
//! * [`cli`]: the `dynkin-spectral` command.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod graph;
pub mod horn;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod solver;
pub mod tables;
pub mod transition;

pub use error::{Error, Result};
pub use graph::{GraphKind, StarGraph};
pub use solver::{decide, Decision, Verdict};
pub use transition::{AlgebraCharacter, AlgebraDimension};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs-and-roots.md")]
    mod graphs_and_roots {}
    #[doc = include_str!("../../../book/src/coxeter.md")]
    mod coxeter {}
    #[doc = include_str!("../../../book/src/transition.md")]
    mod transition {}
    #[doc = include_str!("../../../book/src/deciding.md")]
    mod deciding {}
    #[doc = include_str!("../../../book/src/tables.md")]
    mod tables {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
