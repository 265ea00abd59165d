//! Crank–Nicolson beam propagation with absorbing window edges.

use super::coupling::{hopping_ratio, HoppingRatio};
use super::profile::{index_map, IndexMap, UniformGrid, MIN_MARGIN};
use super::spec::{Geometry, WaveguideArraySpec};
use crate::analytic::effective_rate_from;
use crate::error::{Error, Result};
use num_complex::Complex64;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Quadratic imaginary-potential ramp `W(d) = strength (d / width)²`, where
/// `d` is the depth into the ramp from its inner edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Absorber {
    /// µm
    pub width: f64,
    /// µm⁻¹
    pub strength: f64,
}

impl Default for Absorber {
    fn default() -> Self {
        Self {
            width: 150.0,
            strength: 0.02,
        }
    }
}

impl Absorber {
    /// Absorption rate at every node of `grid`.
    pub fn profile(&self, grid: &UniformGrid) -> Vec<f64> {
        let (lo, hi) = (grid.x0, grid.x_max());
        grid.points()
            .iter()
            .map(|&x| {
                let depth = (lo + self.width - x).max(x - (hi - self.width)).max(0.0);
                self.strength * (depth / self.width).powi(2)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpmOptions {
    /// Transverse step (µm).
    pub dx: f64,
    /// Propagation step (µm).
    pub dz: f64,
    /// Clearance between outermost guide and window edge (µm).
    pub margin: f64,
    pub absorber: Option<Absorber>,
    /// Spacing of the recorded `c₁(z)` samples (mm).
    pub record_every: f64,
    /// Spacing of stored field snapshots (mm); `None` stores none.
    pub snapshot_every: Option<f64>,
    /// Keep every `snapshot_stride`-th transverse node in snapshots.
    pub snapshot_stride: usize,
}

impl Default for BpmOptions {
    fn default() -> Self {
        Self {
            dx: 0.05,
            dz: 0.5,
            margin: 180.0,
            absorber: Some(Absorber::default()),
            record_every: 0.05,
            snapshot_every: None,
            snapshot_stride: 20,
        }
    }
}

impl BpmOptions {
    fn validate(&self) -> Result<()> {
        if !(self.dx > 0.0 && self.dx <= 0.5) {
            return Err(Error::Config(format!(
                "dx must lie in (0, 0.5] µm, got {}",
                self.dx
            )));
        }
        if !(self.dz > 0.0 && self.dz <= 5.0) {
            return Err(Error::Config(format!(
                "dz must lie in (0, 5] µm, got {}",
                self.dz
            )));
        }
        if !(self.record_every > 0.0) {
            return Err(Error::Config("record spacing must be positive".into()));
        }
        if let Some(a) = self.absorber {
            if !(a.width > 0.0 && a.width + MIN_MARGIN <= self.margin && a.strength >= 0.0) {
                return Err(Error::Config(format!(
                    "absorber of width {} µm must leave {MIN_MARGIN} µm clear inside the {} µm margin",
                    a.width, self.margin
                )));
            }
        }
        if self.snapshot_stride == 0 {
            return Err(Error::Config("snapshot stride must be at least 1".into()));
        }
        Ok(())
    }
}

/// Transverse field at one propagation distance.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub x_grid: Vec<f64>,
    pub psi: Vec<Complex64>,
    /// mm
    pub z: f64,
}

impl FieldState {
    pub fn intensity(&self) -> Vec<f64> {
        self.psi.iter().map(|p| p.norm_sqr()).collect()
    }
}

/// One Crank–Nicolson step `(1 + i dz H/2) ψ' = (1 - i dz H/2) ψ` for
/// `H = -D ∂² + U(x)` with Dirichlet ends. The tridiagonal factorization is
/// computed once, so each step is a single fused sweep.
#[derive(Debug, Clone)]
pub struct CrankNicolson {
    b_diag: Vec<Complex64>,
    b_off: Complex64,
    a_off: Complex64,
    c_prime: Vec<Complex64>,
    inv_den: Vec<Complex64>,
    work: Vec<Complex64>,
}

impl CrankNicolson {
    /// `potential` is `U(x)` in µm⁻¹ (negative imaginary part absorbs).
    pub fn new(potential: &[Complex64], diffusion: f64, dx: f64, dz: f64) -> Self {
        let n = potential.len();
        let dd = diffusion / (dx * dx);
        let half = 0.5 * dz * I;
        let h_off = -dd;
        let a_off = half * h_off;
        let b_off = -half * h_off;
        let mut b_diag = Vec::with_capacity(n);
        let mut c_prime = Vec::with_capacity(n);
        let mut inv_den = Vec::with_capacity(n);
        let mut prev_c = Complex64::new(0.0, 0.0);
        for &u in potential {
            let h = 2.0 * dd + u;
            let a = 1.0 + half * h;
            b_diag.push(1.0 - half * h);
            let inv = 1.0 / (a - a_off * prev_c);
            prev_c = a_off * inv;
            c_prime.push(prev_c);
            inv_den.push(inv);
        }
        Self {
            b_diag,
            b_off,
            a_off,
            c_prime,
            inv_den,
            work: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn step(&mut self, psi: &mut [Complex64]) {
        let n = psi.len();
        debug_assert_eq!(n, self.work.len());
        let zero = Complex64::new(0.0, 0.0);
        let mut left = zero;
        let mut prev_d = zero;
        for j in 0..n {
            let right = if j + 1 < n { psi[j + 1] } else { zero };
            let here = psi[j];
            let r = self.b_diag[j] * here + self.b_off * (left + right);
            left = here;
            prev_d = (r - self.a_off * prev_d) * self.inv_den[j];
            self.work[j] = prev_d;
        }
        psi[n - 1] = self.work[n - 1];
        for j in (0..n - 1).rev() {
            psi[j] = self.work[j] - self.c_prime[j] * psi[j + 1];
        }
    }
}

/// Output of a propagation run.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    /// mm
    pub z: Vec<f64>,
    /// `∫ φ(x) ψ(x, z) dx`, the modal amplitude of guide 1.
    pub c1: Vec<Complex64>,
    /// `∫ |ψ|² dx`.
    pub power: Vec<f64>,
    pub snapshots: Vec<FieldState>,
    pub coupling: HoppingRatio,
    pub grid: UniformGrid,
}

impl PropagationResult {
    /// Equivalent lattice times `t = κ z`.
    pub fn lattice_time(&self) -> Vec<f64> {
        self.z.iter().map(|z| self.coupling.kappa * z).collect()
    }

    /// `γ_eff` in lattice units, `-ln|c₁|² / (κ z)`.
    pub fn effective_rate(&self) -> Vec<f64> {
        self.lattice_time()
            .iter()
            .zip(&self.c1)
            .map(|(&t, &c)| effective_rate_from(c, t))
            .collect()
    }
}

/// Propagates the fundamental mode of guide 1 with default grid options.
/// `z_max` and `dz` in mm.
pub fn propagate(spec: &WaveguideArraySpec, z_max: f64, dz: f64) -> Result<PropagationResult> {
    let opts = BpmOptions {
        dz: dz * 1e3,
        ..Default::default()
    };
    propagate_with(spec, z_max, &opts)
}

fn check_light_cone(spec: &WaveguideArraySpec, kappa: f64, z_max: f64) -> Result<()> {
    let span = match spec.geometry {
        Geometry::SemiInfinite => z_max,
        Geometry::ZenoSegmented { segment_length, .. } => segment_length.min(z_max),
    };
    let needed = (2.0 * kappa * span).ceil() as usize + 4;
    if spec.n_guides.saturating_sub(1) < needed && spec.n_guides > 1 {
        return Err(Error::Config(format!(
            "{} lateral guides are too few: light reaches guide {needed} within {span} mm",
            spec.n_guides - 1
        )));
    }
    Ok(())
}

pub fn propagate_with(
    spec: &WaveguideArraySpec,
    z_max: f64,
    opts: &BpmOptions,
) -> Result<PropagationResult> {
    spec.validate()?;
    opts.validate()?;
    if !(z_max > 0.0) {
        return Err(Error::Config(format!(
            "propagation length must be positive, got {z_max}"
        )));
    }
    if let Geometry::ZenoSegmented { total_length, .. } = spec.geometry {
        if z_max > total_length * (1.0 + 1e-12) {
            return Err(Error::Config(format!(
                "segmented array ends at {total_length} mm, cannot propagate to {z_max} mm"
            )));
        }
    }
    let coupling = hopping_ratio(spec, opts.dx)?;
    check_light_cone(spec, coupling.kappa, z_max)?;
    let map = index_map(spec, opts.dx, opts.margin)?;
    run(spec, &map, coupling, z_max, opts)
}

fn run(
    spec: &WaveguideArraySpec,
    map: &IndexMap,
    coupling: HoppingRatio,
    z_max: f64,
    opts: &BpmOptions,
) -> Result<PropagationResult> {
    let grid = map.grid;
    let k0 = spec.k0();
    let absorb = opts
        .absorber
        .map(|a| a.profile(&grid))
        .unwrap_or_else(|| vec![0.0; grid.len]);
    let mut steppers: Vec<CrankNicolson> = map
        .profiles
        .iter()
        .map(|index| {
            let u: Vec<Complex64> = index
                .iter()
                .zip(&absorb)
                .map(|(&n, &w)| Complex64::new(k0 * (spec.n_substrate - n), -w))
                .collect();
            CrankNicolson::new(&u, spec.diffusion(), grid.dx, opts.dz)
        })
        .collect();

    // guide-1 mode sampled on the propagation grid (x = 0 is a node)
    let mode = &coupling.mode;
    let reach = mode.grid.x_max();
    let support: Vec<(usize, f64)> = (0..grid.len)
        .filter(|&j| grid.x(j).abs() <= reach)
        .map(|j| (j, mode.value_at(grid.x(j))))
        .collect();
    let mut psi = vec![Complex64::new(0.0, 0.0); grid.len];
    for &(j, v) in &support {
        psi[j] = Complex64::new(v, 0.0);
    }

    let modal = |psi: &[Complex64]| -> Complex64 {
        support.iter().map(|&(j, v)| psi[j] * v).sum::<Complex64>() * grid.dx
    };
    let power =
        |psi: &[Complex64]| -> f64 { psi.iter().map(|p| p.norm_sqr()).sum::<f64>() * grid.dx };
    let snapshot = |psi: &[Complex64], z: f64| FieldState {
        x_grid: (0..grid.len)
            .step_by(opts.snapshot_stride)
            .map(|j| grid.x(j))
            .collect(),
        psi: psi.iter().step_by(opts.snapshot_stride).copied().collect(),
        z,
    };

    let dz_mm = opts.dz * 1e-3;
    let steps = (z_max / dz_mm).round() as usize;
    let record_stride = ((opts.record_every / dz_mm).round() as usize).max(1);
    let snap_stride = opts
        .snapshot_every
        .map(|s| ((s / dz_mm).round() as usize).max(1));

    let mut out_z = vec![0.0];
    let mut out_c1 = vec![modal(&psi)];
    let mut out_power = vec![power(&psi)];
    let mut snapshots = Vec::new();
    if snap_stride.is_some() {
        snapshots.push(snapshot(&psi, 0.0));
    }

    for step in 1..=steps {
        let z_mid = (step as f64 - 0.5) * dz_mm;
        let which = map.profile_at(z_mid);
        steppers[which].step(&mut psi);
        let z = step as f64 * dz_mm;
        if step % record_stride == 0 || step == steps {
            out_z.push(z);
            out_c1.push(modal(&psi));
            out_power.push(power(&psi));
        }
        if let Some(s) = snap_stride {
            if step % s == 0 {
                snapshots.push(snapshot(&psi, z));
            }
        }
    }

    Ok(PropagationResult {
        z: out_z,
        c1: out_c1,
        power: out_power,
        snapshots,
        coupling,
        grid,
    })
}
