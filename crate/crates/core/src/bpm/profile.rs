use super::spec::{Geometry, WaveguideArraySpec};
use crate::error::{Error, Result};

/// Minimum clearance between the outermost guide and the window edge (µm).
pub const MIN_MARGIN: f64 = 30.0;

/// Uniform transverse grid `x_j = x0 + j dx`, `j = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub x0: f64,
    pub dx: f64,
    pub len: usize,
}

impl UniformGrid {
    /// Grid covering `[lo, hi]` whose nodes are integer multiples of `dx`,
    /// so that `x = 0` is always a node.
    pub fn covering(lo: f64, hi: f64, dx: f64) -> Self {
        let first = (lo / dx - 1e-9).floor() as i64;
        let last = (hi / dx + 1e-9).ceil() as i64;
        Self {
            x0: first as f64 * dx,
            dx,
            len: (last - first + 1) as usize,
        }
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len).map(|j| self.x(j)).collect()
    }

    pub fn x_max(&self) -> f64 {
        self.x(self.len - 1)
    }
}

/// Sampled refractive index `n(x)` together with the guide centres.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexProfile {
    pub grid: UniformGrid,
    pub index: Vec<f64>,
    pub guide_centers: Vec<f64>,
}

fn sample(spec: &WaveguideArraySpec, grid: UniformGrid, centers: &[f64]) -> Vec<f64> {
    let reach = 4.0 * spec.channel_width;
    let mut index = vec![spec.n_substrate; grid.len];
    for &c in centers {
        let j_lo = (((c - reach - grid.x0) / grid.dx).floor().max(0.0)) as usize;
        let j_hi = ((((c + reach - grid.x0) / grid.dx).ceil()) as usize).min(grid.len - 1);
        for (j, n) in index.iter_mut().enumerate().take(j_hi + 1).skip(j_lo) {
            *n += spec.delta_n * spec.channel_shape(grid.x(j) - c);
        }
    }
    index
}

fn check_margin(margin: f64) -> Result<()> {
    if margin < MIN_MARGIN {
        return Err(Error::Config(format!(
            "window margin {margin} µm is below the {MIN_MARGIN} µm absorber clearance"
        )));
    }
    Ok(())
}

/// Samples `n(x) = n_s + Δn Σ_j exp(-[(x - x_j)/w]^p)` for guide 1 at `x = 0`
/// followed by the array on the positive side (`x₂ = a₀`, then period `a`).
pub fn build_index_profile(
    spec: &WaveguideArraySpec,
    dx: f64,
    margin: f64,
) -> Result<IndexProfile> {
    spec.validate()?;
    check_margin(margin)?;
    let mut centers = vec![0.0];
    centers.extend(spec.lateral_offsets());
    let last = *centers.last().unwrap();
    let grid = UniformGrid::covering(-margin, last + margin, dx);
    let index = sample(spec, grid, &centers);
    Ok(IndexProfile {
        grid,
        index,
        guide_centers: centers,
    })
}

/// `z`-interval over which one cross-section applies. Lengths in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub z_start: f64,
    pub z_end: f64,
    pub profile: usize,
}

/// Piecewise-constant-in-`z` index map on a common transverse grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexMap {
    pub grid: UniformGrid,
    pub profiles: Vec<Vec<f64>>,
    /// Empty for a `z`-invariant structure (profile 0 everywhere).
    pub segments: Vec<Segment>,
    pub guide_centers: Vec<Vec<f64>>,
}

impl IndexMap {
    /// Cross-section in force at `z` (mm).
    pub fn profile_at(&self, z: f64) -> usize {
        self.segments
            .iter()
            .find(|s| z >= s.z_start && z < s.z_end)
            .or(self.segments.last())
            .map_or(0, |s| s.profile)
    }

    fn invariant(profile: IndexProfile) -> Self {
        Self {
            grid: profile.grid,
            profiles: vec![profile.index],
            segments: Vec::new(),
            guide_centers: vec![profile.guide_centers],
        }
    }
}

/// Segmented geometry: guide 1 runs straight at `x = 0`; in segment `k` a
/// fresh semi-infinite array occupies the right side (even `k`) or the left
/// side (odd `k`). Cross-sections switch abruptly at `z = kτ`.
pub fn build_zeno_array(
    spec: &WaveguideArraySpec,
    segment_length: f64,
    total_length: f64,
    dx: f64,
    margin: f64,
) -> Result<IndexMap> {
    let spec = WaveguideArraySpec {
        geometry: Geometry::ZenoSegmented {
            segment_length,
            total_length,
        },
        ..*spec
    };
    spec.validate()?;
    check_margin(margin)?;
    let offsets = spec.lateral_offsets();
    let reach = offsets.last().copied().unwrap_or(0.0);
    let grid = UniformGrid::covering(-reach - margin, reach + margin, dx);

    let mut right = vec![0.0];
    right.extend(offsets.iter().copied());
    let mut left = vec![0.0];
    left.extend(offsets.iter().map(|o| -o));

    let count = (total_length / segment_length).round() as usize;
    let segments = (0..count)
        .map(|k| Segment {
            z_start: k as f64 * segment_length,
            z_end: (k + 1) as f64 * segment_length,
            profile: k % 2,
        })
        .collect();
    Ok(IndexMap {
        grid,
        profiles: vec![sample(&spec, grid, &right), sample(&spec, grid, &left)],
        segments,
        guide_centers: vec![right, left],
    })
}

/// Index map for whichever geometry the spec declares.
pub fn index_map(spec: &WaveguideArraySpec, dx: f64, margin: f64) -> Result<IndexMap> {
    match spec.geometry {
        Geometry::SemiInfinite => Ok(IndexMap::invariant(build_index_profile(spec, dx, margin)?)),
        Geometry::ZenoSegmented {
            segment_length,
            total_length,
        } => build_zeno_array(spec, segment_length, total_length, dx, margin),
    }
}
