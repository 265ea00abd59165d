//! Tunneling decay of a metastable edge state coupled to a semi-infinite
//! tight-binding lattice.
//!
//! * [`analytic`]: exact amplitudes (Brillouin-zone quadrature, Bessel
//!   closed form, Gamow exponential plus Neumann-series remainder).
//! * [`evolve`]: direct RK4 integration of the lattice equations of motion.
//! * [`zeno`]: repeated projective measurement of the edge site.
//! * [`bpm`]: the continuous waveguide-array model and its beam propagation.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bessel;
pub mod bpm;
pub mod error;
pub mod evolve;
pub mod par;
pub mod quadrature;
pub mod zeno;

pub use analytic::{
    asymptotic_amplitude, decay_decomposition, effective_rate, eigenmode, exact_amplitude,
    gamow_rate, reflection_coefficient, site_amplitude, spectrum, strong_coupling_amplitude,
    BlochMode, CouplingModel, DecayDecomposition,
};
pub use error::{Error, Result};
pub use evolve::{evolve, survival_probability, AmplitudeTrajectory, EvolveOptions};
pub use zeno::{
    antizeno_peak, classify_regime, measured_survival, zeno_crossing, MeasurementSchedule, Regime,
    ZenoClassification, ZenoCrossing,
};
