//! Stationary workloads of a two-node fluid tandem queue fed by
//! spectrally-positive Lévy input.
//!
//! The crate covers four routes to the downstream workload distribution:
//!
//! * exact Pollaczek–Khinchine type transforms ([`pk_transforms`]) inverted
//!   numerically ([`laplace_inversion`]);
//! * heavy-traffic limits where only the downstream node is critically
//!   loaded (Regime I) or both are (Regime II), see [`heavy_traffic`];
//! * Mittag-Leffler approximations for heavy-tailed jobs
//!   ([`special_functions`], [`heavy_traffic::heavy_tail`]);
//! * Monte Carlo estimates of the stationary workloads ([`simulation`]).

pub mod error;
pub mod heavy_traffic;
pub mod laplace_inversion;
pub mod levy_models;
pub mod pk_transforms;
pub mod quadrature;
pub mod simulation;
pub mod special_functions;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use heavy_traffic::{ConvergenceReport, DeltaScaling, Regime, RegimeApprox, RegimeTwoMoments};
pub use laplace_inversion::{
    invert_tail, tail_curve, InversionConfig, InversionMethod, Provenance, TailCurve, TailPoint,
    TransformFn,
};
pub use levy_models::{JobLaw, LevyModel, ModelKind, Moments, Parametrization, TandemParams};
pub use pk_transforms::TandemSystem;
pub use simulation::{Estimate, SimConfig, SimResult};

/// Complex value of a transform or exponent.
pub type TransformValue = C64;
