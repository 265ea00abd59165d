use proptest::prelude::*;
use std::f64::consts::PI;
use tbdecay::analytic::{exact_amplitude_series, neumann_correction_direct};
use tbdecay::evolve::{evolve, min_sites, DEFAULT_DT};
use tbdecay::quadrature::periodic_trapezoid;
use tbdecay::*;

fn model(delta: f64) -> CouplingModel {
    CouplingModel::new(delta).unwrap()
}

fn grid(stop: f64, step: f64) -> Vec<f64> {
    tbdecay::par::linspace_step(0.0, stop, step)
}

fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[test]
fn uniform_chain_matches_bessel_closed_form() {
    let m = CouplingModel::strong();
    for t in grid(50.0, 0.05) {
        let d = (exact_amplitude(&m, t) - strong_coupling_amplitude(t)).norm();
        assert!(d < 1e-10, "t = {t}: {d:e}");
    }
}

#[test]
fn quadrature_rk4_and_decomposition_agree() {
    for delta in [0.3, 0.5, 0.7, 0.9, 1.0] {
        let m = model(delta);
        let traj = evolve(&m, 30.0, DEFAULT_DT, min_sites(30.0)).unwrap();
        for (&t, c) in traj.times.iter().zip(&traj.amplitudes) {
            let q = exact_amplitude(&m, t);
            assert!((q - c[0]).norm() < 1e-6, "delta {delta} t {t}");
            if delta <= 0.7 {
                let d = decay_decomposition(&m, t).unwrap().total();
                assert!((q - d).norm() < 1e-8, "delta {delta} t {t}");
            }
        }
    }
}

#[test]
fn decomposition_holds_for_weak_edges() {
    for delta in [0.2, 0.3, 0.5, 0.7] {
        let m = model(delta);
        for t in grid(30.0, 0.25) {
            let d = decay_decomposition(&m, t).unwrap();
            assert!((exact_amplitude(&m, t) - d.total()).norm() < 1e-8);
        }
    }
}

#[test]
fn literal_series_agrees_where_it_is_stable() {
    let m = model(0.3);
    for t in grid(20.0, 0.5) {
        let (s, err) = neumann_correction_direct(&m, t).unwrap();
        let stable = decay_decomposition(&m, t).unwrap().correction.re;
        assert!((s - stable).abs() < 1e-10 + 10.0 * err, "t {t}");
    }
}

#[test]
fn scattering_states_are_complete() {
    for delta in [0.1, 0.3, 0.5, 0.7, 0.9, 1.0] {
        let m = model(delta);
        for n in 1..=10 {
            let v = periodic_trapezoid(m.quadrature_nodes(0.0, n), |q| {
                spectrum(&m, q) * eigenmode(&m, q, n).unwrap()
            });
            let want = if n == 1 { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-8, "delta {delta} n {n}: {v}");
        }
    }
}

#[test]
fn short_time_decay_is_parabolic() {
    let t: f64 = 1e-3;
    for delta in [0.3, 0.7, 1.0] {
        let p = exact_amplitude(&model(delta), t).norm_sqr();
        let ratio = (1.0 - p) / (delta * delta * t * t);
        assert!((ratio - 1.0).abs() < 1e-4, "delta {delta}: {ratio}");
    }
}

#[test]
fn envelope_falls_as_three_halves_power() {
    for delta in [0.5, 1.0] {
        let m = model(delta);
        let times = tbdecay::par::linspace_step(95.0, 405.0, 0.05);
        let amp: Vec<f64> = exact_amplitude_series(&m, &times)
            .iter()
            .map(|c| c.norm())
            .collect();
        let (mut lx, mut ly) = (vec![], vec![]);
        for k in 1..amp.len() - 1 {
            let t = times[k];
            if (100.0..=400.0).contains(&t) && amp[k] > amp[k - 1] && amp[k] >= amp[k + 1] {
                lx.push(t.ln());
                ly.push(amp[k].ln());
            }
        }
        let (slope, _) = fit_line(&lx, &ly);
        assert!((slope + 1.5).abs() < 0.05, "delta {delta}: slope {slope}");
    }
}

#[test]
fn tail_matches_stationary_phase() {
    let m = model(0.5);
    for t in [200.0, 300.0] {
        let c = exact_amplitude(&m, t).re;
        let a = asymptotic_amplitude(&m, t);
        assert!((c - a).abs() < 0.05 * t.powf(-1.5), "t {t}: {c} vs {a}");
    }
}

#[test]
fn gamow_fit_at_weak_coupling() {
    let m = model(0.3);
    let times = tbdecay::par::linspace_step(5.0, 40.0, 0.1);
    let lnp: Vec<f64> = times
        .iter()
        .map(|&t| exact_amplitude(&m, t).norm_sqr().ln())
        .collect();
    let (slope, intercept) = fit_line(&times, &lnp);
    let g0 = m.gamma0().unwrap();
    let ln_z = 2.0 * m.sqrt_z().unwrap().ln();
    assert!((slope + g0).abs() < 0.05 * g0);
    assert!((intercept - ln_z).abs() < 0.1 * ln_z.abs());
}

#[test]
fn site_amplitudes_match_rk4() {
    let m = model(0.6);
    let traj = evolve(&m, 8.0, DEFAULT_DT, min_sites(8.0)).unwrap();
    let k = traj.times.len() - 1;
    for n in 1..=6 {
        let q = site_amplitude(&m, n, traj.times[k]).unwrap();
        assert!((q - traj.amplitudes[k][n - 1]).norm() < 1e-6, "site {n}");
    }
}

#[test]
fn imaginary_part_vanishes() {
    let m = model(0.45);
    for t in grid(60.0, 0.7) {
        assert!(exact_amplitude(&m, t).im.abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn reflection_is_unimodular(delta in 1e-6f64..=1.0, q in -PI..PI) {
        let r = reflection_coefficient(&model(delta), q);
        prop_assert!((r.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_never_exceeds_one(delta in 0.05f64..=1.0, t in 0.0f64..200.0) {
        prop_assert!(exact_amplitude(&model(delta), t).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn bloch_frequency_is_band(delta in 0.05f64..=1.0, q in -PI..PI) {
        let b = BlochMode::new(model(delta), q);
        prop_assert!((b.omega - 2.0 * q.cos()).abs() < 1e-15);
        prop_assert!(b.r == reflection_coefficient(&b.model, q));
    }
}

#[test]
fn edge_component_matches_reflection_form() {
    let m = model(0.55);
    for q in [0.3, 1.2, -2.0, 2.9] {
        let r = reflection_coefficient(&m, q);
        let via_r = m.delta() * (1.0 + r) / (2.0 * q.cos());
        assert!((eigenmode(&m, q, 1).unwrap() - via_r).norm() < 1e-12);
        let u2 = eigenmode(&m, q, 2).unwrap();
        assert!((u2 - (1.0 + r)).norm() < 1e-12);
    }
}
