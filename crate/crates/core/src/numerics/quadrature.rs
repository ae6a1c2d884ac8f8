//! Composite Gauss–Legendre quadrature with panel-doubling convergence.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::scalar::{from_f64, Real};

/// Hard cap on the number of panels before giving up.
pub const PANEL_CAP: usize = 1 << 20;

/// Composite Gauss–Legendre rule: `panels` subintervals of equal length,
/// `nodes_per_panel` Gauss nodes on each, doubled until two successive
/// refinements agree to `rel_tol` relatively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub rel_tol: f64,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule {
            panels: 1,
            nodes_per_panel: 8,
            rel_tol: 1e-8,
        }
    }
}

impl QuadratureRule {
    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.nodes_per_panel == 0 {
            return Err(CoreError::config("quadrature panel/node counts must be positive"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(CoreError::config("quadrature rel_tol must be positive"));
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Chebyshev-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and its derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (
        nodes.into_iter().map(from_f64).collect(),
        weights.into_iter().map(from_f64).collect(),
    )
}

fn composite_pass<T: Real>(
    f: &mut impl FnMut(T) -> Complex<T>,
    a: T,
    b: T,
    panels: usize,
    nodes: &[T],
    weights: &[T],
) -> Complex<T> {
    let h = (b - a) / from_f64(panels as f64);
    let half = h / from_f64(2.0);
    let mut acc = Complex::new(T::zero(), T::zero());
    for p in 0..panels {
        let mid = a + h * from_f64(p as f64) + half;
        let mut panel = Complex::new(T::zero(), T::zero());
        for (&x, &w) in nodes.iter().zip(weights) {
            panel = panel + f(mid + half * x).scale(w);
        }
        acc = acc + panel.scale(half);
    }
    acc
}

/// `∫_a^b f(t) dt` by panel-doubling composite Gauss–Legendre.
///
/// Doubling stops when successive results agree to `rel_tol` relatively;
/// magnitudes below `rel_tol` are compared at the absolute scale `rel_tol²`.
/// Hitting [`PANEL_CAP`] without convergence reports both last iterates.
pub fn integrate_1d<T: Real>(
    mut f: impl FnMut(T) -> Complex<T>,
    a: T,
    b: T,
    rule: &QuadratureRule,
) -> Result<Complex<T>> {
    rule.validate()?;
    if a > b {
        return Err(CoreError::domain("integrate_1d requires a <= b"));
    }
    if a == b {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let (nodes, weights) = gauss_legendre::<T>(rule.nodes_per_panel);
    let rel_tol = from_f64::<T>(rule.rel_tol);
    let mut panels = rule.panels;
    let mut prev = composite_pass(&mut f, a, b, panels, &nodes, &weights);
    loop {
        panels *= 2;
        let next = composite_pass(&mut f, a, b, panels, &nodes, &weights);
        let diff = (next - prev).norm();
        let scale = next.norm().max(prev.norm());
        if diff <= rel_tol * scale.max(rel_tol) {
            return Ok(next);
        }
        if panels >= PANEL_CAP {
            return Err(CoreError::NonConvergence {
                last_re: next.re.to_f64().unwrap_or(f64::NAN),
                last_im: next.im.to_f64().unwrap_or(f64::NAN),
                prev_re: prev.re.to_f64().unwrap_or(f64::NAN),
                prev_im: prev.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        prev = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn real_fn(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Complex64 {
        move |t| Complex64::new(f(t), 0.0)
    }

    #[test]
    fn cubic_is_exact() {
        let rule = QuadratureRule::default();
        let v = integrate_1d(real_fn(|t| t * t * t), 0.0, 1.0, &rule).unwrap();
        assert!((v.re - 0.25).abs() < 1e-15);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn empty_interval_is_zero() {
        let rule = QuadratureRule::default();
        let v = integrate_1d(real_fn(|t| t.exp()), 2.0, 2.0, &rule).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
        assert!(integrate_1d(real_fn(|t| t), 1.0, 0.0, &rule).is_err());
    }

    #[test]
    fn fresnel_integral_to_moderate_scale() {
        // ∫₀^{50} e^{2πi t²} dt; frozen from a 10⁷-point midpoint oracle.
        // (The Fresnel limit (1+i)/4 is ~1.6e-3 away at this scale.)
        let oracle = {
            let points = 10_000_000usize;
            let h = 50.0 / points as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..points {
                let t = (k as f64 + 0.5) * h;
                let phase = 2.0 * std::f64::consts::PI * t * t;
                acc += Complex64::new(phase.cos(), phase.sin());
            }
            acc * h
        };
        let rule = QuadratureRule::default();
        let v = integrate_1d(
            |t: f64| {
                let phase = 2.0 * std::f64::consts::PI * t * t;
                Complex64::new(phase.cos(), phase.sin())
            },
            0.0,
            50.0,
            &rule,
        )
        .unwrap();
        assert!((v - oracle).norm() < 1e-6, "{v} vs oracle {oracle}");
        assert!((v - Complex64::new(0.25, 0.25)).norm() < 2e-3);
        // same value from the closed-form kernel
        let closed: Complex64 = super::super::oscillatory::phase_integral(0.0, 1.0, 50.0);
        assert!((v - closed).norm() < 1e-7);
    }

    #[test]
    fn linear_in_integrand_and_additive_over_intervals() {
        let rule = QuadratureRule::default();
        let f = |t: f64| Complex64::new((3.0 * t).sin(), t.cos());
        let g = |t: f64| Complex64::new(t * t, -t);
        let lhs = integrate_1d(|t| 2.0 * f(t) + 3.0 * g(t), 0.0, 2.0, &rule).unwrap();
        let rhs = integrate_1d(f, 0.0, 2.0, &rule).unwrap() * 2.0
            + integrate_1d(g, 0.0, 2.0, &rule).unwrap() * 3.0;
        assert!((lhs - rhs).norm() < 1e-8);
        let whole = integrate_1d(f, 0.0, 2.0, &rule).unwrap();
        let split = integrate_1d(f, 0.0, 0.7, &rule).unwrap()
            + integrate_1d(f, 0.7, 2.0, &rule).unwrap();
        assert!((whole - split).norm() < 1e-8);
    }

    #[test]
    fn doubling_invariance_of_converged_integral() {
        let coarse = QuadratureRule {
            panels: 2,
            ..QuadratureRule::default()
        };
        let fine = QuadratureRule {
            panels: 4,
            ..QuadratureRule::default()
        };
        let f = |t: f64| Complex64::new((5.0 * t).cos(), 0.0);
        let a = integrate_1d(f, 0.0, 3.0, &coarse).unwrap();
        let b = integrate_1d(f, 0.0, 3.0, &fine).unwrap();
        assert!((a - b).norm() < 1e-8 * a.norm().max(1.0));
    }

    #[test]
    fn gauss_nodes_are_symmetric_and_weights_sum_to_two() {
        for n in [2usize, 5, 8, 16] {
            let (x, w) = gauss_legendre::<f64>(n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-13);
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-14);
            }
        }
    }
}
