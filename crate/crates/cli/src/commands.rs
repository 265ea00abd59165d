//! One function per subcommand. Each returns its artifacts in a fixed
//! order; the first one is the primary output.

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::output::{Artifact, DenseMap, Report, Table};
use num_complex::Complex64;
use tbdecay::analytic::{effective_rate_from, exact_amplitude_series};
use tbdecay::bpm::{
    calibrate_channel_width, hopping_ratio, propagate_with, BpmOptions, Geometry,
    PropagationResult, WaveguideArraySpec,
};
use tbdecay::evolve::{evolve_state, min_sites, DEFAULT_DT};
use tbdecay::par::linspace_step;
use tbdecay::zeno::antizeno_peak;
use tbdecay::*;

pub type Outputs = Vec<(String, Artifact)>;

pub fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Validation(format!(
            "{name} must be positive, got {v}"
        )))
    }
}

fn model(delta: f64) -> CliResult<CouplingModel> {
    Ok(CouplingModel::new(delta)?)
}

fn time_grid(s: &Settings, default_tmax: f64, default_dt: f64) -> CliResult<Vec<f64>> {
    let tmax = positive("tmax", s.tmax.unwrap_or(default_tmax))?;
    let dt = positive("dt", s.dt.unwrap_or(default_dt))?;
    if dt > tmax {
        return Err(CliError::Validation(format!(
            "dt = {dt} exceeds tmax = {tmax}"
        )));
    }
    Ok(linspace_step(0.0, tmax, dt))
}

/// `t, Re c₁, Im c₁, P, γ_eff` from the Brillouin-zone integral.
pub fn exact(s: &Settings) -> CliResult<Outputs> {
    let m = model(s.require_delta()?)?;
    let times = time_grid(s, 30.0, 0.1)?;
    let c1 = exact_amplitude_series(&m, &times);
    let rows = times
        .iter()
        .zip(&c1)
        .map(|(&t, c)| vec![t, c.re, c.im, c.norm_sqr(), effective_rate_from(*c, t)])
        .collect();
    let table = Table {
        columns: ["t[1/hop]", "re_c1", "im_c1", "P", "gamma_eff[hop]"]
            .map(String::from)
            .to_vec(),
        rows,
    };
    Ok(vec![("exact".into(), Artifact::Table(table))])
}

/// RK4 trajectory of the first `show` sites.
pub fn evolve(s: &Settings) -> CliResult<Outputs> {
    let delta = s.require_delta()?;
    let tmax = positive("tmax", s.tmax.unwrap_or(30.0))?;
    let opts = EvolveOptions {
        dt: s.dt.unwrap_or(DEFAULT_DT),
        full_resolution: s.full_resolution.unwrap_or(false),
    };
    let sites = s.sites.unwrap_or_else(|| min_sites(tmax));
    let show = s.show.unwrap_or(10).clamp(1, sites.max(1));
    let mut init = vec![Complex64::new(0.0, 0.0); sites.max(1)];
    init[0] = Complex64::new(1.0, 0.0);
    let traj = evolve_state(delta, &init, tmax, sites, &opts)?;

    let mut columns = vec!["t[1/hop]".to_string(), "P".to_string()];
    for n in 1..=show {
        columns.push(format!("re_c{n}"));
        columns.push(format!("im_c{n}"));
    }
    let rows = traj
        .times
        .iter()
        .zip(&traj.amplitudes)
        .map(|(&t, c)| {
            let mut r = vec![t, c[0].norm_sqr()];
            for z in &c[..show] {
                r.push(z.re);
                r.push(z.im);
            }
            r
        })
        .collect();
    Ok(vec![(
        "evolve".into(),
        Artifact::Table(Table { columns, rows }),
    )])
}

/// `NotFound` becomes `None`; other errors propagate.
fn optional<T>(r: tbdecay::Result<T>) -> CliResult<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::NotFound(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Zeno crossing, anti-Zeno peak and, with `--tau`, the measured decay.
pub fn zeno(s: &Settings) -> CliResult<Outputs> {
    let delta = s.require_delta()?;
    let m = model(delta)?;
    let mut r = Report::default();
    r.number("delta", delta);
    r.number("gamma0[hop]", m.gamma0().unwrap_or(f64::INFINITY));
    let crossing = if m.is_strong() {
        None
    } else {
        optional(zeno_crossing(&m))?
    };
    r.number("tau_star[1/hop]", crossing.map_or(f64::NAN, |c| c.tau));
    r.push(
        "tau_star_tangential",
        crossing.map_or(serde_json::Value::Null, |c| c.tangential.into()),
    );
    let peak = optional(antizeno_peak(&m))?;
    r.number("antizeno_tau[1/hop]", peak.map_or(f64::NAN, |p| p.tau));
    r.number(
        "antizeno_gamma_eff[hop]",
        peak.map_or(f64::NAN, |p| p.gamma_eff),
    );
    if let Some(tau) = s.tau {
        let count = s.count.unwrap_or(10);
        let sched = MeasurementSchedule::new(tau, count)?;
        let cl = classify_regime(&m, tau)?;
        let pk = measured_survival(&m, &sched);
        r.number("tau[1/hop]", tau);
        r.push("regime", cl.regime.as_str());
        r.number("gamma_meas[hop]", cl.gamma_meas);
        r.push("count", count);
        r.number("measured_survival", pk[count]);
        r.number(
            "free_survival",
            exact_amplitude(&m, tau * count as f64).norm_sqr(),
        );
    }
    Ok(vec![("zeno".into(), Artifact::Report(r))])
}

/// Array spec from the defaults plus any overridden geometry keys.
pub fn array_spec(s: &Settings, base: WaveguideArraySpec) -> WaveguideArraySpec {
    WaveguideArraySpec {
        n_substrate: s.n_substrate.unwrap_or(base.n_substrate),
        wavelength: s.wavelength.unwrap_or(base.wavelength),
        delta_n: s.delta_n.unwrap_or(base.delta_n),
        channel_width: s.channel_width.unwrap_or(base.channel_width),
        profile_exponent: s.profile_exponent.unwrap_or(base.profile_exponent),
        spacing: s.spacing.unwrap_or(base.spacing),
        first_gap: s.first_gap.unwrap_or(base.first_gap),
        n_guides: s.n_guides.unwrap_or(base.n_guides),
        geometry: base.geometry,
    }
}

pub fn bpm_options(s: &Settings) -> CliResult<BpmOptions> {
    let d = BpmOptions::default();
    Ok(BpmOptions {
        dx: s.dx.unwrap_or(d.dx),
        dz: positive("dz", s.dz.unwrap_or(d.dz * 1e-3))? * 1e3,
        snapshot_every: Some(positive("map_every", s.map_every.unwrap_or(0.25))?),
        ..d
    })
}

fn coupling_report(spec: &WaveguideArraySpec, h: &tbdecay::bpm::HoppingRatio) -> Report {
    let mut r = Report::default();
    r.number("channel_width[um]", spec.channel_width);
    r.push("profile_exponent", spec.profile_exponent);
    r.number("first_gap[um]", spec.first_gap);
    r.number("spacing[um]", spec.spacing);
    r.number("delta", h.delta);
    r.number("kappa[1/mm]", h.kappa);
    r.number("beta[1/um]", h.mode.beta);
    r.push("bound_modes", h.mode.bound_modes);
    r.push("single_mode", h.mode.is_single_mode());
    r.number("edge_overlap", h.edge_overlap);
    r.number("bulk_overlap", h.bulk_overlap);
    r
}

/// `|c₁(κz)|` of the lattice model with the extracted `Δ`.
fn lattice_curve(run: &PropagationResult) -> Vec<f64> {
    match CouplingModel::new(run.coupling.delta.min(1.0)) {
        Ok(m) => exact_amplitude_series(&m, &run.lattice_time())
            .iter()
            .map(|c| c.norm())
            .collect(),
        Err(_) => vec![f64::NAN; run.z.len()],
    }
}

fn c1_table(run: &PropagationResult) -> Table {
    let t = run.lattice_time();
    let gamma = run.effective_rate();
    let lattice = lattice_curve(run);
    let rows = (0..run.z.len())
        .map(|k| {
            let c = run.c1[k];
            vec![
                run.z[k],
                t[k],
                c.re,
                c.im,
                c.norm(),
                run.power[k],
                gamma[k],
                lattice[k],
            ]
        })
        .collect();
    Table {
        columns: [
            "z[mm]",
            "t[1/hop]",
            "re_c1",
            "im_c1",
            "abs_c1",
            "power",
            "gamma_eff[hop]",
            "abs_c1_lattice",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    }
}

fn intensity_map(run: &PropagationResult) -> DenseMap {
    DenseMap {
        corner: "z[mm]\\x[um]".into(),
        row_axis: run.snapshots.iter().map(|f| f.z).collect(),
        col_axis: run
            .snapshots
            .first()
            .map(|f| f.x_grid.clone())
            .unwrap_or_default(),
        values: run.snapshots.iter().map(|f| f.intensity()).collect(),
    }
}

pub fn bpm_artifacts(prefix: &str, spec: &WaveguideArraySpec, run: &PropagationResult) -> Outputs {
    let name = |s: &str| {
        if prefix.is_empty() {
            s.to_string()
        } else {
            format!("{prefix}_{s}")
        }
    };
    vec![
        (name("c1"), Artifact::Table(c1_table(run))),
        (name("intensity"), Artifact::Map(intensity_map(run))),
        (
            name("coupling"),
            Artifact::Report(coupling_report(spec, &run.coupling)),
        ),
    ]
}

/// Beam propagation; `--tau` switches to the segmented geometry.
pub fn bpm(s: &Settings) -> CliResult<Outputs> {
    let zmax = positive("zmax", s.zmax.unwrap_or(50.0))?;
    let mut spec = array_spec(s, WaveguideArraySpec::default());
    if let Some(tau) = s.tau {
        spec.geometry = Geometry::ZenoSegmented {
            segment_length: tau,
            total_length: zmax,
        };
    }
    let run = propagate_with(&spec, zmax, &bpm_options(s)?)?;
    Ok(bpm_artifacts("", &spec, &run))
}

/// Single-channel mode and extracted lattice parameters.
pub fn modes(s: &Settings) -> CliResult<Outputs> {
    let mut spec = array_spec(s, WaveguideArraySpec::default());
    let dx = s.dx.unwrap_or(BpmOptions::default().dx);
    if let Some(target) = s.calibrate {
        spec.channel_width = calibrate_channel_width(&spec, target, dx)?;
    }
    let h = hopping_ratio(&spec, dx)?;
    Ok(vec![(
        "modes".into(),
        Artifact::Report(coupling_report(&spec, &h)),
    )])
}
