//! Lower bounds on the analyticity radius of the hard-sphere gas pressure.
//!
//! Pipeline: estimate the normalized exclusion volumes g̃_d(k)
//! ([`gtable`]), assemble C_d(a) = Σ g̃_d(s) a^s/s! and maximize a/C_d(a)
//! ([`bounds`]), then compare with the classical 1/e criterion.

pub mod bounds;
pub mod combinatorics;
pub mod config;
pub mod error;
pub mod geometry;
pub mod gtable;
pub mod io;
pub mod oracle;
pub mod stats;
pub mod stream;
pub mod verify;

pub use bounds::{bound_report, classical_bound, optimize_a, BoundReport, Mode};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use gtable::{build_gtable, estimate_g_tilde, exact_g_tilde, GTildeEntry, GTildeTable};
pub use stats::MCEstimate;
