//! Quantum randomness, classically examined.
//!
//! - [`hilbert`]: kets, orthonormal contexts, Born probabilities and the qubit tilt.
//! - [`rng`]: a seeded, platform-independent simulated quantum coin and
//!   von Neumann extraction.
//! - [`certify`]: finite Borel-normality tests and the Champernowne sequence.
//! - [`hypergraph`]: orthogonality hypergraphs, two-valued states, closure,
//!   and true-implies-false / true-implies-true gadget classification.
//! - [`realization`]: checks that vector labels realize a hypergraph and
//!   compares gadget relations with Born probabilities.
//! - [`cli`]: the `vindef` command-line front end.
//!
//! The `examples/` directory has one runnable program per capability; the
//! `fixtures/` directory ships the gadget hypergraphs used throughout.

pub mod certify;
pub mod cli;
mod error;
pub mod hilbert;
pub mod hypergraph;
pub mod realization;
pub mod rng;

pub use error::{Error, Result};

/// `x` rounded to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// `x` printed with at most 12 significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x.is_finite() {
        round_sig(x).to_string()
    } else {
        x.to_string()
    }
}

/// Directory holding the shipped hypergraph fixtures.
pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
