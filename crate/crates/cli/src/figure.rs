//! Data recipes behind `tbdecay figure`. Each kind has fixed default
//! parameters; flags override them.

use crate::commands::{array_spec, bpm_artifacts, bpm_options, positive, Outputs};
use crate::config::Settings;
use crate::error::CliResult;
use crate::output::{Artifact, DenseMap, Table};
use clap::ValueEnum;
use num_complex::Complex64;
use tbdecay::analytic::{effective_rate_from, exact_amplitude_series};
use tbdecay::bpm::{propagate_with, Geometry, WaveguideArraySpec};
use tbdecay::evolve::{evolve_state, min_sites};
use tbdecay::par::{self, linspace_step};
use tbdecay::{CouplingModel, EvolveOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    /// γ_eff(t), |c₁(t)| and |c_n(t)| for Δ = 0.3, 0.5, 0.9
    Fig2,
    /// weak (a₀ = 16 µm) and strong (a₀ = 12.5 µm) arrays, L = 50 mm
    Fig3,
    /// segmented vs plain array, τ = 4 mm, L = 20 mm
    Fig4,
}

pub const FIG2_DELTAS: [f64; 3] = [0.3, 0.5, 0.9];

pub fn figure(kind: FigureKind, s: &Settings) -> CliResult<Outputs> {
    match kind {
        FigureKind::Fig2 => fig2(s),
        FigureKind::Fig3 => fig3(s),
        FigureKind::Fig4 => fig4(s),
    }
}

fn fig2(s: &Settings) -> CliResult<Outputs> {
    let deltas: Vec<f64> = s.delta.map_or(FIG2_DELTAS.to_vec(), |d| vec![d]);
    let tmax = positive("tmax", s.tmax.unwrap_or(30.0))?;
    let dt = positive("dt", s.dt.unwrap_or(0.1))?;
    let models = deltas
        .iter()
        .map(|&d| CouplingModel::new(d))
        .collect::<tbdecay::Result<Vec<_>>>()?;
    let times = linspace_step(0.0, tmax, dt);
    let curves: Vec<Vec<Complex64>> = models
        .iter()
        .map(|m| exact_amplitude_series(m, &times))
        .collect();

    let label = |d: f64| format!("{d}");
    let mut rate_cols = vec!["t[1/hop]".to_string()];
    let mut amp_cols = vec!["t[1/hop]".to_string()];
    for &d in &deltas {
        rate_cols.push(format!("gamma_eff[delta={}]", label(d)));
        amp_cols.push(format!("abs_c1[delta={}]", label(d)));
    }
    let rates = (0..times.len())
        .map(|k| {
            std::iter::once(times[k])
                .chain(curves.iter().map(|c| effective_rate_from(c[k], times[k])))
                .collect()
        })
        .collect();
    let amps = (0..times.len())
        .map(|k| {
            std::iter::once(times[k])
                .chain(curves.iter().map(|c| c[k].norm()))
                .collect()
        })
        .collect();
    let gamma0 = Table {
        columns: vec!["delta".into(), "gamma0[hop]".into()],
        rows: models
            .iter()
            .map(|m| vec![m.delta(), m.gamma0().unwrap_or(f64::INFINITY)])
            .collect(),
    };

    let mut out: Outputs = vec![
        (
            "fig2_gamma_eff".into(),
            Artifact::Table(Table {
                columns: rate_cols,
                rows: rates,
            }),
        ),
        (
            "fig2_abs_c1".into(),
            Artifact::Table(Table {
                columns: amp_cols,
                rows: amps,
            }),
        ),
        ("fig2_gamma0".into(), Artifact::Table(gamma0)),
    ];

    let sites = s.sites.unwrap_or_else(|| min_sites(tmax));
    let show = s.show.unwrap_or(40).clamp(1, sites);
    let opts = EvolveOptions::default();
    let maps = par::map(&deltas, |&d| {
        let mut init = vec![Complex64::new(0.0, 0.0); sites];
        init[0] = Complex64::new(1.0, 0.0);
        evolve_state(d, &init, tmax, sites, &opts)
    });
    for (&d, traj) in deltas.iter().zip(maps) {
        let traj = traj?;
        let map = DenseMap {
            corner: "t[1/hop]\\n".into(),
            row_axis: traj.times.clone(),
            col_axis: (1..=show).map(|n| n as f64).collect(),
            values: traj
                .amplitudes
                .iter()
                .map(|c| c[..show].iter().map(|z| z.norm()).collect())
                .collect(),
        };
        out.push((format!("fig2_map_delta{}", label(d)), Artifact::Map(map)));
    }
    Ok(out)
}

fn fig3(s: &Settings) -> CliResult<Outputs> {
    let zmax = positive("zmax", s.zmax.unwrap_or(50.0))?;
    let opts = bpm_options(s)?;
    let weak = array_spec(s, WaveguideArraySpec::weak_coupling());
    let strong = WaveguideArraySpec {
        first_gap: 12.5,
        ..weak
    };
    let (a, b) = par::join(
        || propagate_with(&weak, zmax, &opts),
        || propagate_with(&strong, zmax, &opts),
    );
    let mut out = bpm_artifacts("fig3a", &weak, &a?);
    out.extend(bpm_artifacts("fig3b", &strong, &b?));
    Ok(out)
}

fn fig4(s: &Settings) -> CliResult<Outputs> {
    let zmax = positive("zmax", s.zmax.unwrap_or(20.0))?;
    let tau = positive("tau", s.tau.unwrap_or(4.0))?;
    let opts = bpm_options(s)?;
    let mut segmented = array_spec(s, WaveguideArraySpec::zeno_array());
    segmented.geometry = Geometry::ZenoSegmented {
        segment_length: tau,
        total_length: zmax,
    };
    let plain = WaveguideArraySpec {
        geometry: Geometry::SemiInfinite,
        ..segmented
    };
    let (a, b) = par::join(
        || propagate_with(&segmented, zmax, &opts),
        || propagate_with(&plain, zmax, &opts),
    );
    let (a, b) = (a?, b?);
    let pair = Table {
        columns: ["z[mm]", "abs_c1_segmented", "abs_c1_plain"]
            .map(String::from)
            .to_vec(),
        rows: (0..a.z.len())
            .map(|k| vec![a.z[k], a.c1[k].norm(), b.c1[k].norm()])
            .collect(),
    };
    let mut out: Outputs = vec![("fig4_c1".into(), Artifact::Table(pair))];
    out.extend(
        bpm_artifacts("fig4_segmented", &segmented, &a)
            .into_iter()
            .filter(|(n, _)| !n.ends_with("_c1")),
    );
    Ok(out)
}
