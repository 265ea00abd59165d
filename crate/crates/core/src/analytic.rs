//! Closed-form and quadrature solutions for the edge site of a semi-infinite
//! tight-binding chain whose first bond has hopping `Δ` and all other bonds
//! hopping 1.
//!
//! Times are measured in units of the inverse bulk hopping.

use crate::bessel::bessel_j_sequence;
use crate::error::{Error, Result};
use crate::par;
use crate::quadrature::periodic_trapezoid;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_PI, PI};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Survival probabilities at or below this are treated as exact nodes of `c₁`.
pub const NODE_PROBABILITY: f64 = 1e-28;

/// Single-defect coupling of the edge site to the bulk chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingModel {
    delta: f64,
    alpha_sq: f64,
}

impl CouplingModel {
    /// Builds the model for `0 < delta <= 1`.
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::Domain(format!(
                "coupling must satisfy 0 < delta <= 1, got {delta}"
            )));
        }
        let alpha_sq = (1.0 - delta) * (1.0 + delta);
        Ok(Self { delta, alpha_sq })
    }

    /// The strong-coupling point `Δ = 1` (uniform chain).
    pub fn strong() -> Self {
        Self {
            delta: 1.0,
            alpha_sq: 0.0,
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `α = (1 - Δ²)^{1/2}`.
    pub fn alpha(&self) -> f64 {
        self.alpha_sq.sqrt()
    }

    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }

    pub fn is_strong(&self) -> bool {
        self.alpha_sq == 0.0
    }

    /// Natural (Gamow) decay rate; `None` at `Δ = 1` where it diverges.
    pub fn gamma0(&self) -> Option<f64> {
        (!self.is_strong()).then(|| 2.0 * self.delta * self.delta / self.alpha())
    }

    /// Residue weight `√Z = (α² + 1) / (2α²)` of the exponential term;
    /// `None` at `Δ = 1`.
    pub fn sqrt_z(&self) -> Option<f64> {
        (!self.is_strong()).then(|| (self.alpha_sq + 1.0) / (2.0 * self.alpha_sq))
    }

    /// Number of trapezoid nodes for a Brillouin-zone integral at time `t`.
    ///
    /// The phase `e^{2it cos Q}` carries harmonics up to roughly `2t`, and the
    /// boundary pole sits at distance `-ln α` from the real axis, so the
    /// aliasing error is about `α^(N - 2t)`. `extra` widens the band for
    /// site-resolved integrands.
    pub fn quadrature_nodes(&self, t: f64, extra: usize) -> usize {
        let base = 1024usize.max((16.0 * t).ceil() as usize);
        let pole = if self.is_strong() {
            0.0
        } else {
            let decay = -self.alpha().ln();
            2.0 * t + 40.0 + extra as f64 + 36.0 / decay
        };
        let n = base.max(pole.min((1u64 << 24) as f64).ceil() as usize);
        n + extra + (n + extra) % 2
    }
}

/// Natural decay rate `γ₀ = 2Δ² (1 - Δ²)^{-1/2}` for `0 < Δ < 1`.
pub fn gamow_rate(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!(
            "Gamow rate is defined for 0 < delta < 1, got {delta}"
        )));
    }
    Ok(2.0 * delta * delta / ((1.0 - delta) * (1.0 + delta)).sqrt())
}

/// Bloch wave of the bulk band together with its boundary reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochMode {
    pub q: f64,
    pub omega: f64,
    pub r: Complex64,
    pub model: CouplingModel,
}

impl BlochMode {
    pub fn new(model: CouplingModel, q: f64) -> Self {
        Self {
            q,
            omega: 2.0 * q.cos(),
            r: reflection_coefficient(&model, q),
            model,
        }
    }
}

/// `Δ² - 2 cos Q e^{-iQ}`, equivalently `-(α² + e^{-2iQ})`.
fn boundary_denominator(model: &CouplingModel, q: f64) -> Complex64 {
    -(model.alpha_sq + Complex64::from_polar(1.0, -2.0 * q))
}

/// Reflection coefficient of a Bloch wave at the weakened boundary bond.
pub fn reflection_coefficient(model: &CouplingModel, q: f64) -> Complex64 {
    // Δ² - 2cosQ e^{±iQ} = -(α² + e^{±2iQ}); the two are complex conjugates
    let den = boundary_denominator(model, q);
    -den.conj() / den
}

/// Site component `u_n(Q)` of the stationary scattering state.
///
/// The edge component uses `2iΔ sin Q / (Δ² - 2 cos Q e^{-iQ})`, which equals
/// `Δ(1 + r) / (2 cos Q)` and stays finite at `cos Q = 0`.
pub fn eigenmode(model: &CouplingModel, q: f64, n: usize) -> Result<Complex64> {
    match n {
        0 => Err(Error::Domain("site index starts at 1".into())),
        1 => Ok(edge_component(model, q)),
        _ => Ok(bulk_component(
            model,
            q,
            n,
            reflection_coefficient(model, q),
        )),
    }
}

fn edge_component(model: &CouplingModel, q: f64) -> Complex64 {
    2.0 * I * model.delta * q.sin() / boundary_denominator(model, q)
}

fn bulk_component(_model: &CouplingModel, q: f64, n: usize, r: Complex64) -> Complex64 {
    let phase = q * (n as f64 - 2.0);
    Complex64::from_polar(1.0, -phase) + r * Complex64::from_polar(1.0, phase)
}

/// Expansion weight `F(Q)` of the initial state `δ_{n,1}` over the
/// scattering states.
pub fn spectrum(model: &CouplingModel, q: f64) -> Complex64 {
    let d2 = model.delta * model.delta;
    let num = d2 * Complex64::from_polar(1.0, q) - 2.0 * q.cos();
    let den = (d2 - 1.0) - Complex64::from_polar(1.0, 2.0 * q);
    -num / (den * 2.0 * PI * model.delta)
}

/// Exact edge amplitude `c₁(t)` from the Brillouin-zone integral
///
/// ```text
/// c₁(t) = (1/2π) ∫ dQ e^{2it cos Q} (1 - e^{-2iQ}) / (1 + α² e^{-2iQ})
/// ```
///
/// evaluated with the periodic trapezoid rule.
pub fn exact_amplitude(model: &CouplingModel, t: f64) -> Complex64 {
    let a2 = model.alpha_sq;
    let n = model.quadrature_nodes(t, 0);
    let integral = periodic_trapezoid(n, |q| {
        let w = Complex64::from_polar(1.0, -2.0 * q);
        Complex64::from_polar(1.0, 2.0 * t * q.cos()) * (1.0 - w) / (1.0 + a2 * w)
    });
    integral * (0.5 * FRAC_1_PI)
}

/// Amplitude on site `n` at time `t`: `∫ dQ F(Q) u_n(Q) e^{2it cos Q}`.
pub fn site_amplitude(model: &CouplingModel, n: usize, t: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("site index starts at 1".into()));
    }
    let nodes = model.quadrature_nodes(t, n - 1);
    Ok(periodic_trapezoid(nodes, |q| {
        let u = if n == 1 {
            edge_component(model, q)
        } else {
            bulk_component(model, q, n, reflection_coefficient(model, q))
        };
        spectrum(model, q) * u * Complex64::from_polar(1.0, 2.0 * t * q.cos())
    }))
}

/// `c₁(t) = J₁(2t) / t` for the uniform chain (`Δ = 1`).
pub fn strong_coupling_amplitude(t: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let j = bessel_j_sequence(1, 2.0 * t);
    Complex64::new(j[1] / t, 0.0)
}

/// Stationary-phase asymptote of `c₁(t)` for large `t`.
pub fn asymptotic_amplitude(model: &CouplingModel, t: f64) -> f64 {
    let a2 = model.alpha_sq;
    let prefactor = (1.0 - a2) / ((1.0 + a2) * (1.0 + a2) * PI.sqrt());
    prefactor * t.powf(-1.5) * (2.0 * t - 0.75 * PI).cos()
}

/// Split of `c₁(t)` into the Gamow exponential and its Bessel-series remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayDecomposition {
    pub t: f64,
    /// `√Z e^{-γ₀ t / 2}`.
    pub exponential_part: Complex64,
    /// The non-exponential remainder `s(t)`.
    pub correction: Complex64,
    /// Estimated absolute error of `exponential_part + correction`.
    pub error_bound: f64,
    /// Set for `Δ > 0.95`, where `√Z` and `1/α^l` become large.
    pub ill_conditioned: bool,
}

impl DecayDecomposition {
    pub fn total(&self) -> Complex64 {
        self.exponential_part + self.correction
    }
}

const SERIES_REL_TOL: f64 = 1e-14;

fn series_order_limit(t: f64) -> usize {
    let x = 2.0 * t;
    (x + 40.0 + 4.0 * x.cbrt()).ceil() as usize
}

fn check_decomposable(model: &CouplingModel) -> Result<()> {
    if model.is_strong() {
        return Err(Error::Domain(
            "decomposition needs delta < 1; use strong_coupling_amplitude".into(),
        ));
    }
    Ok(())
}

/// Decomposes `c₁(t) = √Z e^{-γ₀ t/2} + s(t)`.
///
/// The Neumann series for `s(t)`,
///
/// ```text
/// s = J₀ + (1 + α⁻²) [ ½ Σ_{l∈ℤ} J_l(2t) α^{-l} - Σ_{l≥0} J_{2l}(2t) α^{-2l} ]
/// ```
///
/// contains the generating function `Σ_l J_l(2t) α^{-l} = e^{γ₀t/2}`, which
/// grows exponentially and cancels against the second sum. Collecting terms
/// order by order gives the equivalent, cancellation-free form
///
/// ```text
/// s = J₀ - √Z e^{-γ₀t/2} + (1 + α⁻²) Σ_{m≥1} α^{2m} J_{2m}(2t)
/// ```
///
/// which is what is summed here. [`neumann_correction_direct`] sums the
/// first form literally.
pub fn decay_decomposition(model: &CouplingModel, t: f64) -> Result<DecayDecomposition> {
    check_decomposable(model)?;
    let a2 = model.alpha_sq;
    let sqrt_z = model.sqrt_z().unwrap_or(f64::INFINITY);
    let gamma0 = model.gamma0().unwrap_or(f64::INFINITY);
    let exponential = sqrt_z * (-0.5 * gamma0 * t).exp();

    let mut lmax = series_order_limit(t);
    let (series, abs_sum, last) = loop {
        let j = bessel_j_sequence(lmax, 2.0 * t);
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut weight = 1.0;
        let mut last = f64::INFINITY;
        let mut converged = false;
        for m in 1..=lmax / 2 {
            weight *= a2;
            let term = weight * j[2 * m];
            sum += term;
            abs_sum += term.abs();
            last = term.abs();
            if (2 * m) as f64 > 2.0 * t + 20.0 && last <= SERIES_REL_TOL * sum.abs().max(1e-300) {
                converged = true;
                break;
            }
            if weight == 0.0 {
                converged = true;
                break;
            }
        }
        if converged || lmax > 1 << 20 {
            break (sum, abs_sum, last);
        }
        lmax *= 2;
    };
    let j0 = bessel_j_sequence(0, 2.0 * t)[0];
    let scale = 1.0 + 1.0 / a2;
    let correction = j0 - exponential + scale * series;
    let error_bound =
        8.0 * f64::EPSILON * (j0.abs() + 2.0 * exponential + scale * abs_sum) + scale * last;
    Ok(DecayDecomposition {
        t,
        exponential_part: Complex64::new(exponential, 0.0),
        correction: Complex64::new(correction, 0.0),
        error_bound,
        ill_conditioned: model.delta > 0.95,
    })
}

/// Literal term-by-term summation of the Neumann series for `s(t)`.
///
/// Returns `(s, estimated rounding error)`. The rounding error grows like
/// `ε e^{γ₀ t/2}`; use [`decay_decomposition`] for production values.
pub fn neumann_correction_direct(model: &CouplingModel, t: f64) -> Result<(f64, f64)> {
    check_decomposable(model)?;
    let alpha = model.alpha();
    let x = 2.0 * t;
    let mut lmax = series_order_limit(t);
    let j = loop {
        let j = bessel_j_sequence(lmax, x);
        if j[lmax].abs() * alpha.powi(-(lmax as i32)) < 1e-30 || lmax > 1 << 16 {
            break j;
        }
        lmax *= 2;
    };

    // ½ Σ_{l∈ℤ} J_l α^{-l}, with J_{-l} = (-1)^l J_l
    let mut full = j[0];
    let mut full_abs = j[0].abs();
    // Σ_{l≥0} J_{2l} α^{-2l}
    let mut even = j[0];
    let mut even_abs = j[0].abs();
    let mut up = 1.0;
    let mut down = 1.0;
    for (l, &jl) in j.iter().enumerate().skip(1) {
        up /= alpha;
        down *= alpha;
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        let pos = jl * up;
        let neg = sign * jl * down;
        full += pos + neg;
        full_abs += pos.abs() + neg.abs();
        if l % 2 == 0 {
            even += pos;
            even_abs += pos.abs();
        }
        if l as f64 > x + 20.0 && pos.abs() < SERIES_REL_TOL * full.abs() {
            break;
        }
    }
    let scale = 1.0 + 1.0 / (alpha * alpha);
    let s = j[0] + scale * (0.5 * full - even);
    let err = 4.0 * f64::EPSILON * scale * (0.5 * full_abs + even_abs);
    Ok((s, err))
}

/// `γ_eff(t) = -(1/t) ln |c₁(t)|²` from a known amplitude.
///
/// Returns `0` at `t = 0` and `+∞` at numerical nodes of `c₁`.
pub fn effective_rate_from(c1: Complex64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let p = c1.norm_sqr();
    if p <= NODE_PROBABILITY {
        return f64::INFINITY;
    }
    -p.ln() / t
}

/// Effective decay rate of the edge site.
pub fn effective_rate(model: &CouplingModel, t: f64) -> f64 {
    effective_rate_from(exact_amplitude(model, t), t)
}

/// `exact_amplitude` over a grid of times.
pub fn exact_amplitude_series(model: &CouplingModel, times: &[f64]) -> Vec<Complex64> {
    par::map(times, |&t| exact_amplitude(model, t))
}

/// `effective_rate` over a grid of times.
pub fn effective_rate_series(model: &CouplingModel, times: &[f64]) -> Vec<f64> {
    par::map(times, |&t| effective_rate(model, t))
}
