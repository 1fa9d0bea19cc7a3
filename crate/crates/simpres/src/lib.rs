//! Exact computational homological algebra for simplicial resolutions.
//!
//! The crate builds simplicial algebras and simplicial modules of bar type,
//! tensors and homs them down to (co)chain complexes over an exact field
//! (arbitrary-precision rationals or a prime field), and mechanically checks
//! every simplicial law, module-compatibility law, and homotopy law it relies
//! on. Betti numbers of the resulting complexes are cross-checked against an
//! independently written textbook implementation.
//!
//! Entry points:
//! * [`algebra`]: finite-dimensional algebras by structure constants,
//!   morphisms into the center, bimodules.
//! * [`simplicial`]: the simplicial algebras and modules themselves.
//! * [`complexes`]: levelwise tensor / hom and the resulting complexes.
//! * [`homotopy`]: presimplicial morphisms and homotopies, the equivalence
//!   constructions, and resolution-replacement verification.
//! * [`oracles`]: the independent cross-check implementation.
//! * [`cli`]: the JSON input format and the subcommand bodies used by the
//!   `simpres` binary.
//!
//! The runnable examples under `examples/` demonstrate one capability each
//! and are the recommended starting point.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod homotopy;
pub mod linalg;
pub mod oracles;
pub mod presets;
pub mod report;
pub mod scalar;
pub mod simplicial;
pub mod tensor;

use report::CheckReport;

/// Crate-wide error type. `exit_code` fixes the process exit status used by
/// the `simpres` binary: 2 for malformed input, 1 for everything that parsed
/// but failed validation or feasibility.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("validation failed:\n{0}")]
    ValidationFailed(CheckReport),
    #[error("modules live over different simplicial algebras")]
    AlgebraMismatch,
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("degree {requested} exceeds the construction cap {cap}")]
    DegreeOutOfRange { requested: usize, cap: usize },
    #[error("refusing level {level}: predicted dimension {dim} exceeds the cap {cap} (raise SIMPRES_DIM_CAP to override)")]
    Infeasible { level: usize, dim: usize, cap: usize },
    #[error("induced map is not well defined: {0}")]
    NotInduced(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}
