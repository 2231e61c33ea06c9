//! Numerical laboratory for the asymptotics of the SU(2) Hitchin (L²)
//! metric on the local disk model around a simple zero of a quadratic
//! differential.
//!
//! The pieces, in pipeline order:
//!
//! - [`painleve`]: the Painlevé III profile ψ and the profiles `h_t`, `f_t`.
//! - [`fields`]: matrix fields on polar grids; limiting, fiducial and
//!   approximate Higgs pairs; the Hitchin residual.
//! - [`gauge_op`]: the gauge-fixing operator `ℒ_t = (D¹_t)* D¹_t`, Coulomb
//!   gauge, Green-kernel scaling and the Newton correction.
//! - [`deformations`]: horizontal, radial and vertical tangent vectors.
//! - [`metrics`]: L², special Kähler and semiflat quantities.
//! - [`asymptotics`]: power-law fits, peeling and packet integrals.
//! - [`suite`]: the acceptance checks shared by the CLI and the tests.

pub mod asymptotics;
pub mod deformations;
pub mod error;
pub mod fields;
pub mod gauge_op;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod metrics;
pub mod painleve;
pub mod special;
pub mod su2;
pub mod suite;

pub use error::{LabError, Result};
pub use fields::{HiggsPair, MatrixField, PairKind};
pub use grid::{CutoffSpec, PolarGrid, QuadDifferentialModel};
pub use painleve::{PainleveTable, ProfileEval};
