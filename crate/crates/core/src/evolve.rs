//! RK4 integration of the lattice equations of motion
//!
//! ```text
//! i ċ₁ = -Δ c₂,   i ċ₂ = -c₃ - Δ c₁,   i ċₙ = -(c_{n+1} + c_{n-1})  (n ≥ 3)
//! ```
//!
//! on a chain truncated after `N` sites (`c_{N+1} ≡ 0`). The truncation is
//! exact until the wavefront, which moves at most two sites per unit time,
//! reaches the far end, hence the `N ≥ 2 t_max + 20` requirement.

use crate::analytic::CouplingModel;
use crate::error::{Error, Result};
use num_complex::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Step size used when none is given.
pub const DEFAULT_DT: f64 = 0.005;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub dt: f64,
    /// Keep every step instead of one sample per ~0.1 time units.
    pub full_resolution: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            dt: DEFAULT_DT,
            full_resolution: false,
        }
    }
}

impl EvolveOptions {
    fn stride(&self) -> usize {
        if self.full_resolution {
            1
        } else {
            (0.1 / self.dt - 1e-9).ceil().max(1.0) as usize
        }
    }
}

/// Sampled site amplitudes `c_n(t_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTrajectory {
    pub times: Vec<f64>,
    /// `amplitudes[k][n - 1] = c_n(t_k)`.
    pub amplitudes: Vec<Vec<Complex64>>,
    pub n_sites: usize,
    pub edge_hopping: f64,
}

impl AmplitudeTrajectory {
    /// The coupling model, if the edge hopping lies in `(0, 1]`.
    pub fn model(&self) -> Option<CouplingModel> {
        CouplingModel::new(self.edge_hopping).ok()
    }

    /// Time series of site `n` (1-based).
    pub fn site(&self, n: usize) -> Vec<Complex64> {
        self.amplitudes.iter().map(|c| c[n - 1]).collect()
    }

    /// `Σ_n |c_n(t_k)|²` at every stored time.
    pub fn norms(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }
}

/// Smallest lattice that keeps the edge amplitude free of boundary echoes.
pub fn min_sites(t_max: f64) -> usize {
    (2.0 * t_max + 20.0).ceil() as usize
}

/// Evolves the edge-localized initial state `c_n(0) = δ_{n,1}`.
pub fn evolve(
    model: &CouplingModel,
    t_max: f64,
    dt: f64,
    n_sites: usize,
) -> Result<AmplitudeTrajectory> {
    let mut init = vec![Complex64::new(0.0, 0.0); n_sites.max(1)];
    init[0] = Complex64::new(1.0, 0.0);
    let opts = EvolveOptions {
        dt,
        ..Default::default()
    };
    evolve_state(model.delta(), &init, t_max, n_sites, &opts)
}

/// Evolves an arbitrary initial state. `edge_hopping` may be `0`
/// (decoupled edge site).
pub fn evolve_state(
    edge_hopping: f64,
    initial: &[Complex64],
    t_max: f64,
    n_sites: usize,
    opts: &EvolveOptions,
) -> Result<AmplitudeTrajectory> {
    if !(t_max > 0.0) {
        return Err(Error::Config(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    if !(opts.dt > 0.0 && opts.dt <= 0.01) {
        return Err(Error::Config(format!(
            "dt must lie in (0, 0.01], got {}",
            opts.dt
        )));
    }
    if !(0.0..=1.0).contains(&edge_hopping) {
        return Err(Error::Domain(format!(
            "edge hopping must lie in [0, 1], got {edge_hopping}"
        )));
    }
    let needed = min_sites(t_max);
    if n_sites < needed {
        return Err(Error::Config(format!(
            "{n_sites} sites cannot hold t_max = {t_max} without boundary echoes; need {needed}"
        )));
    }
    if initial.len() != n_sites {
        return Err(Error::Config(format!(
            "initial state has {} sites, lattice has {n_sites}",
            initial.len()
        )));
    }

    let dt = opts.dt;
    let steps = (t_max / dt - 1e-9).ceil() as usize;
    let stride = opts.stride();

    let mut c = initial.to_vec();
    let mut k1 = vec![Complex64::default(); n_sites];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();

    let mut times = vec![0.0];
    let mut amplitudes = vec![c.clone()];
    for step in 1..=steps {
        derivative(edge_hopping, &c, &mut k1);
        axpy(&c, 0.5 * dt, &k1, &mut tmp);
        derivative(edge_hopping, &tmp, &mut k2);
        axpy(&c, 0.5 * dt, &k2, &mut tmp);
        derivative(edge_hopping, &tmp, &mut k3);
        axpy(&c, dt, &k3, &mut tmp);
        derivative(edge_hopping, &tmp, &mut k4);
        let w = dt / 6.0;
        for n in 0..n_sites {
            c[n] += w * (k1[n] + 2.0 * (k2[n] + k3[n]) + k4[n]);
        }
        if step % stride == 0 || step == steps {
            times.push(step as f64 * dt);
            amplitudes.push(c.clone());
        }
    }

    Ok(AmplitudeTrajectory {
        times,
        amplitudes,
        n_sites,
        edge_hopping,
    })
}

/// `ċ = i A c`, with `A` the hopping matrix (edge bond `Δ`, bulk bonds 1).
fn derivative(edge: f64, c: &[Complex64], out: &mut [Complex64]) {
    let n = c.len();
    if n == 1 {
        out[0] = Complex64::default();
        return;
    }
    out[0] = I * (edge * c[1]);
    let second_right = if n > 2 { c[2] } else { Complex64::default() };
    out[1] = I * (second_right + edge * c[0]);
    for k in 2..n - 1 {
        out[k] = I * (c[k + 1] + c[k - 1]);
    }
    if n > 2 {
        out[n - 1] = I * c[n - 2];
    }
}

fn axpy(x: &[Complex64], a: f64, y: &[Complex64], out: &mut [Complex64]) {
    for ((o, &xi), &yi) in out.iter_mut().zip(x).zip(y) {
        *o = xi + a * yi;
    }
}

/// `P(t_k) = |c₁(t_k)|²`.
pub fn survival_probability(traj: &AmplitudeTrajectory) -> Vec<f64> {
    traj.amplitudes.iter().map(|c| c[0].norm_sqr()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_edge_stays_put() {
        let mut init = vec![Complex64::default(); 30];
        init[0] = Complex64::new(1.0, 0.0);
        let tr = evolve_state(0.0, &init, 5.0, 30, &EvolveOptions::default()).unwrap();
        for c in &tr.amplitudes {
            assert!((c[0] - 1.0).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_short_lattice_and_bad_steps() {
        let m = CouplingModel::new(0.5).unwrap();
        assert!(matches!(evolve(&m, 20.0, 0.005, 59), Err(Error::Config(_))));
        assert!(evolve(&m, 20.0, 0.005, 60).is_ok());
        assert!(evolve(&m, 1.0, 0.02, 40).is_err());
        assert!(evolve(&m, 0.0, 0.005, 40).is_err());
    }

    #[test]
    fn sampling_grid() {
        let m = CouplingModel::new(0.5).unwrap();
        let tr = evolve(&m, 2.0, 0.005, 30).unwrap();
        assert_eq!(tr.times.len(), 21);
        assert_eq!(tr.times[0], 0.0);
        assert!((tr.times[20] - 2.0).abs() < 1e-12);
        assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(tr.amplitudes[0][0], Complex64::new(1.0, 0.0));
        assert!(tr.amplitudes[0][1..].iter().all(|z| z.norm() == 0.0));
        let full = evolve_state(
            0.5,
            &tr.amplitudes[0],
            0.1,
            30,
            &EvolveOptions {
                dt: 0.005,
                full_resolution: true,
            },
        )
        .unwrap();
        assert_eq!(full.times.len(), 21);
    }

    #[test]
    fn short_time_parabola() {
        let m = CouplingModel::new(0.7).unwrap();
        let tr = evolve_state(
            0.7,
            &{
                let mut v = vec![Complex64::default(); 25];
                v[0] = Complex64::new(1.0, 0.0);
                v
            },
            0.05,
            25,
            &EvolveOptions {
                dt: 0.001,
                full_resolution: true,
            },
        )
        .unwrap();
        let p = survival_probability(&tr);
        let t = tr.times[10];
        let ratio = (1.0 - p[10]) / (m.delta().powi(2) * t * t);
        assert!((ratio - 1.0).abs() < 1e-3, "{ratio}");
    }
}
