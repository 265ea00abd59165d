//! Bound mode of a single channel.
//!
//! The stationary problem `-D φ'' + U φ = ε φ` is discretized with the
//! three-point Laplacian (Dirichlet ends), giving a symmetric tridiagonal
//! matrix. Eigenvalues are isolated by Sturm-sequence bisection, the
//! eigenvector by inverse iteration. Using the same stencil as the
//! propagator makes the returned mode an exact stationary state of the
//! discrete propagation.

use super::profile::UniformGrid;
use super::spec::WaveguideArraySpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GuidedMode {
    pub grid: UniformGrid,
    /// Real, positive-centred, `Σ φ² dx = 1`.
    pub phi: Vec<f64>,
    /// Propagation-constant offset `b = -ε > 0` (µm⁻¹).
    pub beta: f64,
    /// Number of bound states the channel supports (1 for a single-mode guide).
    pub bound_modes: usize,
}

impl GuidedMode {
    pub fn is_single_mode(&self) -> bool {
        self.bound_modes == 1
    }

    pub fn x_grid(&self) -> Vec<f64> {
        self.grid.points()
    }

    /// Mode value at arbitrary `x` (cubic Lagrange interpolation, zero
    /// outside the solved window).
    pub fn value_at(&self, x: f64) -> f64 {
        let g = &self.grid;
        let s = (x - g.x0) / g.dx;
        let nearest = s.round();
        if (s - nearest).abs() < 1e-9 {
            let j = nearest as i64;
            return if j < 0 || j as usize >= g.len {
                0.0
            } else {
                self.phi[j as usize]
            };
        }
        let j = s.floor() as i64;
        if j < 1 || j as usize + 2 >= g.len {
            return 0.0;
        }
        let j = j as usize;
        let u = s - j as f64;
        let (p0, p1, p2, p3) = (
            self.phi[j - 1],
            self.phi[j],
            self.phi[j + 1],
            self.phi[j + 2],
        );
        -p0 * u * (u - 1.0) * (u - 2.0) / 6.0 + p1 * (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0
            - p2 * (u + 1.0) * u * (u - 2.0) / 2.0
            + p3 * (u + 1.0) * u * (u - 1.0) / 6.0
    }
}

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct Tridiagonal<'a> {
    diag: &'a [f64],
    off: f64,
}

impl Tridiagonal<'_> {
    /// Number of eigenvalues strictly below `lambda`.
    fn count_below(&self, lambda: f64) -> usize {
        let e2 = self.off * self.off;
        let mut count = 0;
        let mut q = 1.0;
        for (j, &d) in self.diag.iter().enumerate() {
            q = if j == 0 {
                d - lambda
            } else {
                d - lambda - e2 / q
            };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + self.off.abs()).max(f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn bounds(&self) -> (f64, f64) {
        let r = 2.0 * self.off.abs();
        let lo = self.diag.iter().cloned().fold(f64::INFINITY, f64::min) - r;
        let hi = self.diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + r;
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based).
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.bounds();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solves `(T - shift) x = rhs` by the Thomas algorithm.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        let e = self.off;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut den = self.diag[0] - shift;
        c[0] = e / den;
        d[0] = rhs[0] / den;
        for j in 1..n {
            den = self.diag[j] - shift - e * c[j - 1];
            if den == 0.0 {
                den = f64::EPSILON;
            }
            c[j] = e / den;
            d[j] = (rhs[j] - e * d[j - 1]) / den;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for j in (0..n - 1).rev() {
            x[j] = d[j] - c[j] * x[j + 1];
        }
        x
    }
}

/// Lowest bound state of the sampled index profile `index` on `grid`.
pub fn solve_guided_mode(
    grid: UniformGrid,
    index: &[f64],
    spec: &WaveguideArraySpec,
) -> Result<GuidedMode> {
    if index.len() != grid.len || grid.len < 5 {
        return Err(Error::Config("index samples do not match the grid".into()));
    }
    let k0 = spec.k0();
    let dd = spec.diffusion() / (grid.dx * grid.dx);
    let diag: Vec<f64> = index
        .iter()
        .map(|&n| 2.0 * dd + k0 * (spec.n_substrate - n))
        .collect();
    let t = Tridiagonal {
        diag: &diag,
        off: -dd,
    };

    let bound_modes = t.count_below(0.0);
    if bound_modes == 0 {
        return Err(Error::NoBoundMode(format!(
            "channel (Δn = {}, w = {} µm) has no state below the substrate line",
            spec.delta_n, spec.channel_width
        )));
    }
    let eps = t.eigenvalue(0);

    let shift = eps - 1e-10 * eps.abs().max(1e-12);
    let mut v = vec![1.0; grid.len];
    for _ in 0..4 {
        v = t.solve_shifted(shift, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    let centre = v[grid.len / 2];
    let scale = centre.signum() / (v.iter().map(|x| x * x).sum::<f64>() * grid.dx).sqrt();
    v.iter_mut().for_each(|x| *x *= scale);

    Ok(GuidedMode {
        grid,
        phi: v,
        beta: -eps,
        bound_modes,
    })
}

/// Half-width of the window used for an isolated channel (µm).
pub(crate) const ISOLATED_HALF_WIDTH: f64 = 60.0;

/// Mode of one isolated channel centred at `x = 0`.
pub(crate) fn isolated_mode(spec: &WaveguideArraySpec, dx: f64) -> Result<GuidedMode> {
    let grid = UniformGrid::covering(-ISOLATED_HALF_WIDTH, ISOLATED_HALF_WIDTH, dx);
    let index: Vec<f64> = grid
        .points()
        .iter()
        .map(|&x| spec.n_substrate + spec.delta_n * spec.channel_shape(x))
        .collect();
    solve_guided_mode(grid, &index, spec)
}
