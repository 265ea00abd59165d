//! Continuous waveguide-array model.
//!
//! Paraxial propagation along `z` obeys a Schrödinger-type equation with
//! `ħ → λ/2π`, mass `→ n_s` and potential `V(x) = n_s - n(x)`. Dividing by
//! `ħ`, everything here is expressed in `µm⁻¹`:
//!
//! ```text
//! i ∂ψ/∂z = -D ∂²ψ/∂x² + U(x) ψ,   D = 1 / (2 k₀ n_s),   U = k₀ (n_s - n(x))
//! ```
//!
//! Transverse coordinates are in µm, propagation distances in mm at the API
//! boundary.

mod coupling;
mod mode;
mod profile;
mod propagate;
mod spec;

pub use coupling::{calibrate_channel_width, hopping_ratio, HoppingRatio};
pub use mode::{solve_guided_mode, GuidedMode};
pub use profile::{
    build_index_profile, build_zeno_array, IndexMap, IndexProfile, Segment, UniformGrid,
};
pub use propagate::{
    propagate, propagate_with, Absorber, BpmOptions, CrankNicolson, FieldState, PropagationResult,
};
pub use spec::{
    Geometry, WaveguideArraySpec, CALIBRATED_CHANNEL_WIDTH, DEFAULT_PROFILE_EXPONENT, INDEX_CONTRAST,
    SUBSTRATE_INDEX, BULK_SPACING, WAVELENGTH,
};
