use super::mode::{isolated_mode, GuidedMode};
use super::spec::WaveguideArraySpec;
use crate::error::{Error, Result};

/// Tight-binding parameters extracted from the continuous model.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingRatio {
    /// Dimensionless edge hopping `Δ`.
    pub delta: f64,
    /// Bulk coupling rate in mm⁻¹; the lattice time is `t = κ z`.
    pub kappa: f64,
    /// `∫ φ(x - a₀) V_w(x) φ(x) dx` (index units).
    pub edge_overlap: f64,
    /// `∫ φ(x - a) V_w(x) φ(x) dx` (index units).
    pub bulk_overlap: f64,
    pub mode: GuidedMode,
}

/// `∫ φ(x - shift) V_w(x) φ(x) dx` with `V_w = n_s - n_channel`.
fn overlap(spec: &WaveguideArraySpec, mode: &GuidedMode, shift: f64) -> f64 {
    let g = &mode.grid;
    (0..g.len)
        .map(|j| {
            let x = g.x(j);
            let v = -spec.delta_n * spec.channel_shape(x);
            if v == 0.0 {
                0.0
            } else {
                mode.value_at(x - shift) * v * mode.phi[j]
            }
        })
        .sum::<f64>()
        * g.dx
}

/// Edge-to-bulk hopping ratio from the overlap integrals of the isolated
/// channel mode, plus the physical bulk coupling rate `κ = |∫…|/ħ`.
pub fn hopping_ratio(spec: &WaveguideArraySpec, dx: f64) -> Result<HoppingRatio> {
    spec.validate()?;
    let mode = isolated_mode(spec, dx)?;
    let bulk = overlap(spec, &mode, spec.spacing);
    let edge = overlap(spec, &mode, spec.first_gap);
    if bulk.abs() < 1e-300 {
        return Err(Error::Degenerate(
            "bulk overlap integral vanishes; channels too far apart".into(),
        ));
    }
    Ok(HoppingRatio {
        delta: edge / bulk,
        kappa: bulk.abs() / spec.hbar() * 1e3,
        edge_overlap: edge,
        bulk_overlap: bulk,
        mode,
    })
}

/// Channel half-width `w` for which `hopping_ratio` returns `target` with
/// the spec's gap and spacing (bisection; `Δ` falls monotonically with `w`
/// as the mode tightens).
pub fn calibrate_channel_width(spec: &WaveguideArraySpec, target: f64, dx: f64) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain(format!(
            "target ratio must lie in (0, 1), got {target}"
        )));
    }
    let ratio_at = |w: f64| -> Result<f64> {
        let s = WaveguideArraySpec {
            channel_width: w,
            ..*spec
        };
        Ok(hopping_ratio(&s, dx)?.delta)
    };
    let mut lo = 0.5;
    let mut hi = 0.5 * spec.spacing * 0.999;
    let (f_lo, f_hi) = (ratio_at(lo)? - target, ratio_at(hi)? - target);
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NotFound(format!(
            "no channel width in [{lo}, {hi}] µm yields a ratio of {target}"
        )));
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if (ratio_at(mid)? - target).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
