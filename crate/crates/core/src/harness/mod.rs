//! Sweeps over sphere radii, limit extrapolation, decay-rate fits and the
//! verification suite.

pub mod checks;
pub mod coefficients;
pub mod fit;
pub mod study;
pub mod sweep;

pub use checks::{verify_all, CheckResult, VerifyConfig, VerifyReport};
pub use coefficients::{misprinted_estimates, CoefficientEstimate};
pub use study::{NumericValues, StudyPoint};
pub use sweep::{run_sweep, QuantitySummary, Sample, SweepConfig, SweepResult, SweepRow};
