//! Ideal projective measurements of the edge site at fixed intervals.
//!
//! After each measurement that finds the system on site 1 the state is reset
//! to `δ_{n,1}` and the free decay restarts, so the survival after `k`
//! measurements is `P(τ)^k`. Measuring at `τ` gives an effective rate
//! `γ_eff(τ)`. If that is below the natural rate `γ₀` the decay slows down
//! (Zeno). If it is above, the decay speeds up (anti-Zeno).

use crate::analytic::{effective_rate, exact_amplitude, CouplingModel};
use crate::error::{Error, Result};
use crate::par;

/// Relative band around `γ₀` classified as neutral.
pub const NEUTRAL_TOL: f64 = 1e-6;

/// Default scan for the Zeno crossing: step 0.1 over (0, 200].
pub const CROSSING_SCAN: (f64, f64) = (0.1, 200.0);
/// Default scan for the anti-Zeno peak: step 0.01 over (0, 50].
pub const PEAK_SCAN: (f64, f64) = (0.01, 50.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSchedule {
    tau: f64,
    count: usize,
}

impl MeasurementSchedule {
    pub fn new(tau: f64, count: usize) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Domain(format!(
                "measurement interval must be > 0, got {tau}"
            )));
        }
        if count == 0 {
            return Err(Error::Domain("need at least one measurement".into()));
        }
        Ok(Self { tau, count })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn count(&self) -> usize {
        self.count
    }
}

/// Survival `P_k` after `k = 0..=count` measurements.
pub fn measured_survival(model: &CouplingModel, schedule: &MeasurementSchedule) -> Vec<f64> {
    let p = exact_amplitude(model, schedule.tau).norm_sqr();
    let mut out = Vec::with_capacity(schedule.count + 1);
    let mut acc = 1.0;
    out.push(acc);
    for _ in 0..schedule.count {
        acc *= p;
        out.push(acc);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Zeno,
    AntiZeno,
    Neutral,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Zeno => "zeno",
            Regime::AntiZeno => "anti-zeno",
            Regime::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoClassification {
    pub tau: f64,
    pub regime: Regime,
    pub gamma_meas: f64,
    /// `+∞` at `Δ = 1`.
    pub gamma0: f64,
}

fn gamma0_or_inf(model: &CouplingModel) -> f64 {
    model.gamma0().unwrap_or(f64::INFINITY)
}

fn classify(gamma_meas: f64, gamma0: f64) -> Regime {
    if gamma_meas < gamma0 * (1.0 - NEUTRAL_TOL) {
        Regime::Zeno
    } else if gamma_meas > gamma0 * (1.0 + NEUTRAL_TOL) {
        Regime::AntiZeno
    } else {
        Regime::Neutral
    }
}

/// Compares `γ_eff(τ)` with `γ₀`.
pub fn classify_regime(model: &CouplingModel, tau: f64) -> Result<ZenoClassification> {
    if !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "measurement interval must be > 0, got {tau}"
        )));
    }
    let gamma_meas = effective_rate(model, tau);
    let gamma0 = gamma0_or_inf(model);
    Ok(ZenoClassification {
        tau,
        regime: classify(gamma_meas, gamma0),
        gamma_meas,
        gamma0,
    })
}

/// `classify_regime` over many intervals.
pub fn classify_series(model: &CouplingModel, taus: &[f64]) -> Result<Vec<ZenoClassification>> {
    par::map(taus, |&tau| classify_regime(model, tau))
        .into_iter()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoCrossing {
    /// Smallest `τ > 0` with `γ_eff(τ) = γ₀`.
    pub tau: f64,
    /// `γ_eff` touches `γ₀` without changing sign.
    pub tangential: bool,
}

/// Smallest root of `γ_eff(τ) = γ₀` with the default scan.
pub fn zeno_crossing(model: &CouplingModel) -> Result<ZenoCrossing> {
    zeno_crossing_scan(model, CROSSING_SCAN.0, CROSSING_SCAN.1)
}

/// Dense scan with `step` over `(0, window]`, then bisection.
pub fn zeno_crossing_scan(model: &CouplingModel, step: f64, window: f64) -> Result<ZenoCrossing> {
    let gamma0 = model.gamma0().ok_or_else(|| {
        Error::Domain("the Zeno crossing needs delta < 1 (finite natural rate)".into())
    })?;
    let grid = scan_grid(step, window);
    let excess: Vec<f64> = par::map(&grid, |&t| effective_rate(model, t) - gamma0);
    let f = |t: f64| effective_rate(model, t) - gamma0;
    let graze = NEUTRAL_TOL * gamma0;

    let mut last: Option<(f64, f64)> = None;
    let mut before_last: Option<(f64, f64)> = None;
    for (&t, &v) in grid.iter().zip(&excess) {
        if !v.is_finite() {
            continue;
        }
        if let Some((t0, v0)) = last {
            if v0 < 0.0 && v >= 0.0 {
                return Ok(ZenoCrossing {
                    tau: bisect(&f, t0, t, v0),
                    tangential: false,
                });
            }
            if let Some((tm, vm)) = before_last {
                // local maximum sitting just below γ₀
                if v0 < 0.0 && v0 > -graze && v0 >= vm && v0 >= v {
                    return Ok(ZenoCrossing {
                        tau: parabola_vertex((tm, vm), (t0, v0), (t, v)),
                        tangential: true,
                    });
                }
            }
        }
        before_last = last;
        last = Some((t, v));
    }
    Err(Error::NotFound(format!(
        "gamma_eff stays below gamma0 on (0, {window}]"
    )))
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.is_finite() && fm.abs() < 1e-8 {
            return mid;
        }
        if fm.is_finite() && (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

fn scan_grid(step: f64, window: f64) -> Vec<f64> {
    let n = (window / step + 1e-9).floor() as usize;
    (1..=n).map(|k| k as f64 * step).collect()
}

/// Abscissa of the extremum of the parabola through three points.
fn parabola_vertex(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    let (x0, y0) = a;
    let (x1, y1) = b;
    let (x2, y2) = c;
    let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
    let den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if den == 0.0 {
        x1
    } else {
        x1 - 0.5 * num / den
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntiZenoPeak {
    pub tau: f64,
    pub gamma_eff: f64,
    pub gamma0: f64,
}

/// First local maximum of `γ_eff` that rises above `γ₀`, default scan.
pub fn antizeno_peak(model: &CouplingModel) -> Result<AntiZenoPeak> {
    antizeno_peak_scan(model, PEAK_SCAN.0, PEAK_SCAN.1)
}

pub fn antizeno_peak_scan(model: &CouplingModel, step: f64, window: f64) -> Result<AntiZenoPeak> {
    let gamma0 = model.gamma0().ok_or_else(|| {
        Error::NotFound("no finite peak can exceed the divergent rate at delta = 1".into())
    })?;
    let grid = scan_grid(step, window);
    let rates: Vec<f64> = par::map(&grid, |&t| effective_rate(model, t));
    for k in 1..grid.len().saturating_sub(1) {
        let (a, b, c) = (rates[k - 1], rates[k], rates[k + 1]);
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            continue;
        }
        if b > a && b >= c && b > gamma0 {
            let tau = parabola_vertex((grid[k - 1], a), (grid[k], b), (grid[k + 1], c));
            let gamma_eff = effective_rate(model, tau).max(b);
            return Ok(AntiZenoPeak {
                tau,
                gamma_eff,
                gamma0,
            });
        }
    }
    Err(Error::NotFound(format!(
        "no local maximum of gamma_eff above gamma0 on (0, {window}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_validation() {
        assert!(MeasurementSchedule::new(0.0, 1).is_err());
        assert!(MeasurementSchedule::new(1.0, 0).is_err());
        assert!(MeasurementSchedule::new(1.0, 1).is_ok());
    }

    #[test]
    fn single_measurement_is_free_survival() {
        let m = CouplingModel::new(0.5).unwrap();
        let s = MeasurementSchedule::new(3.0, 1).unwrap();
        let p = measured_survival(&m, &s);
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], 1.0);
        assert_eq!(p[1], exact_amplitude(&m, 3.0).norm_sqr());
    }

    #[test]
    fn three_measurements_cube() {
        let m = CouplingModel::new(0.3).unwrap();
        let s = MeasurementSchedule::new(40.0, 3).unwrap();
        let p = measured_survival(&m, &s);
        let p1 = exact_amplitude(&m, 40.0).norm_sqr();
        assert!((p[3] - p1.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn frequent_measurement_freezes() {
        let m = CouplingModel::new(0.5).unwrap();
        let total = 4.0;
        let last = |k: usize| {
            let s = MeasurementSchedule::new(total / k as f64, k).unwrap();
            *measured_survival(&m, &s).last().unwrap()
        };
        assert!(last(1000) > 0.99);
        assert!(last(1000) > last(10));
    }

    #[test]
    fn classification_examples() {
        let m = CouplingModel::new(0.3).unwrap();
        assert_eq!(classify_regime(&m, 40.0).unwrap().regime, Regime::Zeno);
        assert_eq!(classify_regime(&m, 1e-3).unwrap().regime, Regime::Zeno);
        let s = CouplingModel::new(0.9).unwrap();
        assert_eq!(classify_regime(&s, 2.34).unwrap().regime, Regime::AntiZeno);
        assert!(classify_regime(&m, 0.0).is_err());
        assert_eq!(classify(1.0, 1.0 + 1e-9), Regime::Neutral);
    }

    #[test]
    fn vertex_of_exact_parabola() {
        let f = |x: f64| -(x - 1.3).powi(2) + 2.0;
        let v = parabola_vertex((1.0, f(1.0)), (1.2, f(1.2)), (1.5, f(1.5)));
        assert!((v - 1.3).abs() < 1e-12);
    }

    #[test]
    fn strong_coupling_has_no_qualifying_peak() {
        assert!(matches!(
            antizeno_peak(&CouplingModel::strong()),
            Err(Error::NotFound(_))
        ));
        assert!(zeno_crossing(&CouplingModel::strong()).is_err());
    }
}
