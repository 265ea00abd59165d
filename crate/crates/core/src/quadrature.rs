//! Composite trapezoid rule for smooth 2π-periodic integrands.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `∫_{-π}^{π} f(Q) dQ` using `n` equispaced nodes `Q_k = -π + 2πk/n`.
///
/// For an analytic periodic integrand the error decays geometrically in `n`,
/// with a rate set by the distance of the nearest singularity from the real
/// axis.
pub fn periodic_trapezoid<F>(n: usize, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    assert!(n > 0, "need at least one node");
    let h = 2.0 * PI / n as f64;
    // pairwise partials keep the rounding at O(eps log n)
    let mut acc = PairwiseSum::default();
    for k in 0..n {
        acc.push(f(-PI + k as f64 * h));
    }
    acc.total() * h
}

#[derive(Default)]
struct PairwiseSum {
    stack: Vec<(u32, Complex64)>,
}

impl PairwiseSum {
    fn push(&mut self, v: Complex64) {
        let mut item = (0u32, v);
        while let Some(&(level, top)) = self.stack.last() {
            if level != item.0 {
                break;
            }
            self.stack.pop();
            item = (level + 1, top + item.1);
        }
        self.stack.push(item);
    }

    fn total(&self) -> Complex64 {
        self.stack.iter().rev().map(|&(_, v)| v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_low_trig_polynomials() {
        let v = periodic_trapezoid(16, |q| Complex64::new((3.0 * q).cos().powi(2), 0.0));
        assert!((v.re - PI).abs() < 1e-14);
        let z = periodic_trapezoid(16, |q| Complex64::from_polar(1.0, 5.0 * q));
        assert!(z.norm() < 1e-14);
    }

    #[test]
    fn geometric_convergence_for_rational_integrand() {
        // ∫ dQ / (1 + a² e^{-2iQ}) = 2π for |a| < 1
        let a2 = 0.81;
        let f = |q: f64| 1.0 / (1.0 + a2 * Complex64::from_polar(1.0, -2.0 * q));
        let coarse = (periodic_trapezoid(40, f) - 2.0 * PI).norm();
        let fine = (periodic_trapezoid(400, f) - 2.0 * PI).norm();
        assert!(coarse > 1e-6);
        assert!(fine < 1e-13);
    }
}
