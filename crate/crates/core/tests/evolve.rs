use num_complex::Complex64;
use tbdecay::evolve::{evolve_state, min_sites, DEFAULT_DT};
use tbdecay::*;

fn edge_state(n: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::default(); n];
    v[0] = Complex64::new(1.0, 0.0);
    v
}

fn max_error(traj: &AmplitudeTrajectory, m: &CouplingModel) -> f64 {
    traj.times
        .iter()
        .zip(&traj.amplitudes)
        .map(|(&t, c)| (c[0] - exact_amplitude(m, t)).norm())
        .fold(0.0, f64::max)
}

#[test]
fn norm_is_conserved() {
    let m = CouplingModel::new(0.7).unwrap();
    let traj = evolve(&m, 25.0, DEFAULT_DT, 4 * min_sites(25.0)).unwrap();
    for n in traj.norms() {
        assert!((n - 1.0).abs() < 1e-9, "{n}");
    }
}

#[test]
fn fourth_order_convergence() {
    let m = CouplingModel::new(0.5).unwrap();
    let n = min_sites(20.0);
    let coarse = evolve(&m, 20.0, 0.01, n).unwrap();
    let fine = evolve(&m, 20.0, 0.005, n).unwrap();
    assert_eq!(coarse.times.len(), fine.times.len());
    let ratio = max_error(&coarse, &m) / max_error(&fine, &m);
    assert!((12.0..20.0).contains(&ratio), "error ratio {ratio}");
}

#[test]
fn minimal_lattice_is_free_of_echoes() {
    let m = CouplingModel::new(0.9).unwrap();
    let t_max = 30.0;
    let small = evolve(&m, t_max, DEFAULT_DT, min_sites(t_max)).unwrap();
    let large = evolve(&m, t_max, DEFAULT_DT, (4.0 * t_max) as usize).unwrap();
    for (a, b) in small.site(1).iter().zip(large.site(1)) {
        assert!((a - b).norm() < 1e-8);
    }
}

#[test]
fn superposition_principle() {
    let n = min_sites(10.0);
    let opts = EvolveOptions::default();
    let psi1: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new((-(k as f64) / 3.0).exp(), 0.0))
        .collect();
    let psi2: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(if k < 5 { 0.4 } else { 0.0 }, k as f64))
        .collect();
    let (a, b) = (Complex64::new(0.3, -1.1), Complex64::new(-0.7, 0.2));
    let mix: Vec<Complex64> = psi1.iter().zip(&psi2).map(|(x, y)| a * x + b * y).collect();
    let t1 = evolve_state(0.4, &psi1, 10.0, n, &opts).unwrap();
    let t2 = evolve_state(0.4, &psi2, 10.0, n, &opts).unwrap();
    let tm = evolve_state(0.4, &mix, 10.0, n, &opts).unwrap();
    for k in 0..tm.times.len() {
        for j in 0..n {
            let want = a * t1.amplitudes[k][j] + b * t2.amplitudes[k][j];
            assert!((tm.amplitudes[k][j] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn full_resolution_keeps_every_step() {
    let n = min_sites(1.0);
    let opts = EvolveOptions {
        dt: 0.01,
        full_resolution: true,
    };
    let traj = evolve_state(0.5, &edge_state(n), 1.0, n, &opts).unwrap();
    assert_eq!(traj.times.len(), 101);
    assert_eq!(survival_probability(&traj).len(), 101);
}

#[test]
fn strong_edge_tracks_closed_form() {
    let m = CouplingModel::strong();
    let traj = evolve(&m, 20.0, DEFAULT_DT, min_sites(20.0)).unwrap();
    for (&t, c) in traj.times.iter().zip(&traj.amplitudes) {
        assert!((c[0] - strong_coupling_amplitude(t)).norm() < 1e-8);
    }
}
