use crate::error::{Error, Result};
use std::f64::consts::PI;

pub const SUBSTRATE_INDEX: f64 = 2.138;
pub const WAVELENGTH: f64 = 1.55;
pub const INDEX_CONTRAST: f64 = 2.4e-3;
pub const BULK_SPACING: f64 = 12.0;
pub const DEFAULT_PROFILE_EXPONENT: u32 = 6;

/// Super-Gaussian half-width (µm) for which the overlap ratio at
/// `a₀ = 16 µm`, `a = 12 µm` equals 0.28. Reproduce with
/// [`calibrate_channel_width`](super::calibrate_channel_width) or
/// `tbdecay modes --calibrate`.
pub const CALIBRATED_CHANNEL_WIDTH: f64 = 3.8263;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Guide 1 followed by a uniform array on one side.
    SemiInfinite,
    /// Guide 1 with lateral arrays of length `segment_length` that alternate
    /// sides, right first. Lengths in mm.
    ZenoSegmented {
        segment_length: f64,
        total_length: f64,
    },
}

/// Geometry and material of the array. Lengths in µm unless noted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveguideArraySpec {
    pub n_substrate: f64,
    pub wavelength: f64,
    pub delta_n: f64,
    pub channel_width: f64,
    pub profile_exponent: u32,
    pub spacing: f64,
    pub first_gap: f64,
    /// Guide 1 plus the lateral array (per side for the segmented geometry).
    pub n_guides: usize,
    pub geometry: Geometry,
}

impl Default for WaveguideArraySpec {
    fn default() -> Self {
        Self {
            n_substrate: SUBSTRATE_INDEX,
            wavelength: WAVELENGTH,
            delta_n: INDEX_CONTRAST,
            channel_width: CALIBRATED_CHANNEL_WIDTH,
            profile_exponent: DEFAULT_PROFILE_EXPONENT,
            spacing: BULK_SPACING,
            first_gap: 16.0,
            n_guides: 60,
            geometry: Geometry::SemiInfinite,
        }
    }
}

impl WaveguideArraySpec {
    /// Weak-coupling array (`a₀ = 16 µm`).
    pub fn weak_coupling() -> Self {
        Self::default()
    }

    /// Strong-coupling array (`a₀ = 12.5 µm`).
    pub fn strong_coupling() -> Self {
        Self {
            first_gap: 12.5,
            ..Self::default()
        }
    }

    /// Segmented array with `τ = 4 mm` over 20 mm.
    pub fn zeno_array() -> Self {
        Self {
            n_guides: 30,
            geometry: Geometry::ZenoSegmented {
                segment_length: 4.0,
                total_length: 20.0,
            },
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.n_substrate > 1.0) {
            return bad(format!(
                "substrate index must exceed 1, got {}",
                self.n_substrate
            ));
        }
        if !(self.delta_n > 0.0) {
            return bad(format!(
                "index contrast must be positive, got {}",
                self.delta_n
            ));
        }
        if !(self.wavelength > 0.0) {
            return bad(format!(
                "wavelength must be positive, got {}",
                self.wavelength
            ));
        }
        if !(self.channel_width > 0.0) {
            return bad(format!(
                "channel width must be positive, got {}",
                self.channel_width
            ));
        }
        if self.profile_exponent == 0 || self.profile_exponent % 2 == 1 {
            return bad(format!(
                "profile exponent must be a positive even integer, got {}",
                self.profile_exponent
            ));
        }
        if !(self.spacing > 2.0 * self.channel_width) {
            return bad(format!(
                "spacing {} µm does not separate channels of half-width {} µm",
                self.spacing, self.channel_width
            ));
        }
        if !(self.first_gap >= self.spacing) {
            return bad(format!(
                "first gap {} µm must be at least the spacing {} µm",
                self.first_gap, self.spacing
            ));
        }
        if self.n_guides == 0 {
            return bad("need at least one guide".into());
        }
        if let Geometry::ZenoSegmented {
            segment_length,
            total_length,
        } = self.geometry
        {
            if !(segment_length > 0.0) || !(total_length > 0.0) {
                return bad("segment and total lengths must be positive".into());
            }
            let ratio = total_length / segment_length;
            if (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) || ratio.round() < 1.0 {
                return bad(format!(
                    "total length {total_length} mm is not a multiple of the segment length {segment_length} mm"
                ));
            }
        }
        Ok(())
    }

    /// `ħ = λ / 2π` in µm.
    pub fn hbar(&self) -> f64 {
        self.wavelength / (2.0 * PI)
    }

    /// Vacuum wavenumber `k₀` in µm⁻¹.
    pub fn k0(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Diffraction coefficient `D = ħ / (2 n_s)` in µm.
    pub fn diffusion(&self) -> f64 {
        self.hbar() / (2.0 * self.n_substrate)
    }

    /// Channel shape `exp(-[(x - c)/w]^p)` for a channel centred at `c`.
    pub fn channel_shape(&self, x: f64) -> f64 {
        let u = x / self.channel_width;
        let r = u.abs();
        // beyond ~4 half-widths the super-Gaussian is below 1e-300
        if r > 4.0 {
            return 0.0;
        }
        (-u.powi(self.profile_exponent as i32)).exp()
    }

    /// Centres of the lateral guides on one side, measured from guide 1.
    pub fn lateral_offsets(&self) -> Vec<f64> {
        (0..self.n_guides.saturating_sub(1))
            .map(|j| self.first_gap + j as f64 * self.spacing)
            .collect()
    }
}
