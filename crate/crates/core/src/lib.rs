//! Wave/particle/entanglement geometry of two-qubit pure states.
//!
//! A two-qubit pure state `α₀|0e⟩ + α₁|0f⟩ + α₂|1e⟩ + α₃|1f⟩` carries three
//! single-photon quantities: the fringe visibility `V`, the which-path
//! distinguishability `D` and the concurrence `C`. Packing the amplitudes into a
//! quaternionic spinor `(q₁, q₂)` and projecting `q₁q₂⁻¹` stereographically onto
//! the unit 4-sphere gives coordinates `x₀…x₄` with
//!
//! ```text
//! D² = x₀²,   V² = x₁² + x₂²,   C² = x₃² + x₄²
//! ```
//!
//! so `V² + D² + C² = 1` is the statement that the point lies on `S⁴`.
//!
//! Module map:
//!
//! * [`hypercomplex`]: complex scalars, quaternions and the extended quaternions.
//! * [`state`]: two-qubit states, reduced density matrices and the triad.
//! * [`projection`]: quaternification, stereographic projection and `S⁴`/`B³` points.
//! * [`classify`]: geometric strata and the Schmidt decomposition.
//! * [`sampling`], [`verify`], [`dataset`]: seeded ensembles, the verification
//!   suite and CSV/JSON emission used by the command-line tool.

pub mod classify;
pub mod dataset;
mod error;
pub mod hypercomplex;
pub mod oracle;
pub mod projection;
pub mod sampling;
pub mod state;
pub mod verify;

pub use classify::{classify, schmidt_decompose, shell_radius, SchmidtForm, Strata, Stratum};
pub use error::{Error, Result};
pub use hypercomplex::{ComplexScalar, ExtendedQuaternion, Quaternion};
pub use projection::{
    ball_point, coords_from_state, inverse_stereo, quaternify, stereo_project, triad_from_coords,
    BallPoint, QuaternionSpinor, S4Point,
};
pub use state::{
    BlochAngles, CorrelatedState, DensityMatrix2, DualityTriad, Normalization, TwoQubitState,
};

/// Default band used by the stratum classifier.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;
