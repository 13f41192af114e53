//! Quantum discord of two-qubit X states.
//!
//! The conditional entropy left after measuring subsystem B is minimized over
//! projective measurements and over three-element rank-1 POVMs; the discord
//! then follows from `δ = S(ρ^B) − S(ρ^AB) + min S(A|{M})`.
//!
//! The numerical kernels are generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`, which the CLI and the report
//! layer use.

pub mod discord;
pub mod entropy;
pub mod error;
pub mod optimizer;
pub mod pattern;
pub mod povm;
pub mod qstate;
pub mod real;
pub mod report;

pub use discord::{
    ali_candidate, conditional_entropy_povm3, conditional_entropy_projective,
    discord_given_conditional_entropy, e_function, DiscordValue, MeasurementOutcome, Witness,
};
pub use entropy::{
    binary_entropy, marginal_entropy_b, mutual_information, von_neumann_xstate, LogBase,
};
pub use error::{DiscordError, Result};
pub use optimizer::{
    minimize_povm3, minimize_projective, phi_invariance_audit, OptResult, PhiAudit, SearchConfig,
};
pub use povm::{
    angles_from_weights, build_povm3, planar_directions, rotation_matrix, sample_weights,
    EulerAngles, Povm3, PovmWeights, TriangleAngles,
};
pub use qstate::{BlochParams, DensityMatrix4, XState};
pub use real::Real;
pub use report::{parse_state_file, run_report, DiscordReport, NamedState, ReportRow};

pub type XState64 = XState<f64>;
pub type XState32 = XState<f32>;
pub type BlochParams64 = BlochParams<f64>;
pub type DensityMatrix64 = DensityMatrix4<f64>;
pub type PovmWeights64 = PovmWeights<f64>;
pub type EulerAngles64 = EulerAngles<f64>;
pub type Povm64 = Povm3<f64>;
pub type TriangleAngles64 = TriangleAngles<f64>;
pub type DiscordValue64 = DiscordValue<f64>;
pub type Witness64 = Witness<f64>;
pub type OptResult64 = OptResult<f64>;
pub type PhiAudit64 = PhiAudit<f64>;
