//! Transference embedding: evaluates an observable along the ℝ²-orbit of a
//! point over a long box, producing the compactly supported planar function
//! `F^{x,N}(u,v) = f(S^u T^v x)·𝟙_{[0,3N]}(u)·𝟙_{[0,2N²]}(v)`.

use num_complex::Complex;

use crate::dynamics::flow::{FlowPair, TorusPoint};
use crate::dynamics::trigpoly::TrigPolynomial;
use crate::error::{CoreError, Result};
use crate::numerics::grid::{Grid2D, GridFunction2D};
use crate::scalar::{from_f64, unit_phase, Real};

/// Samples `F^{x,N}` on `grid`. The grid periods must leave padding beyond
/// the support box so that the shifts `u + t + δ ≤ 3N + 3` and `v + t²`
/// used downstream stay inside one period.
pub fn embed_transfer_function<T: Real>(
    sys: &FlowPair<T>,
    f: &TrigPolynomial<T>,
    x: &TorusPoint<T>,
    n_scale: T,
    grid: &Grid2D<T>,
) -> Result<GridFunction2D<T>> {
    if f.dimension() != sys.dimension() || x.dimension() != sys.dimension() {
        return Err(CoreError::config("flow/observable/point dimension mismatch"));
    }
    if n_scale < T::one() {
        return Err(CoreError::domain("embedding requires N >= 1"));
    }
    let four = from_f64::<T>(4.0);
    let u_extent = from_f64::<T>(3.0) * n_scale;
    let v_extent = from_f64::<T>(2.0) * n_scale * n_scale;
    if grid.period_u() < u_extent + four || grid.period_v() < v_extent + four {
        return Err(CoreError::config(format!(
            "insufficient padding: need periods >= ({}, {}), got ({}, {})",
            u_extent + four,
            v_extent + four,
            grid.period_u(),
            grid.period_v()
        )));
    }

    // separable accumulation: f(S^u T^v x) = Σ_k c_k e(k·x) e((k·s)u) e((k·t)v)
    let n_u = grid.n_u();
    let n_v = grid.n_v();
    let zero = Complex::new(T::zero(), T::zero());
    let mut samples = vec![zero; n_u * n_v];
    for (k, c) in f.terms() {
        let phase_x: T = k
            .iter()
            .zip(x.coordinates())
            .map(|(&ki, &xi)| from_f64::<T>(ki as f64) * xi)
            .fold(T::zero(), |a, b| a + b);
        let amp = c * unit_phase(phase_x);
        let fu = sys.s_frequency(k);
        let fv = sys.t_frequency(k);
        let u_phases: Vec<Complex<T>> = (0..n_u)
            .map(|i| unit_phase(fu * grid.spacing_u() * from_f64(i as f64)))
            .collect();
        let v_phases: Vec<Complex<T>> = (0..n_v)
            .map(|j| unit_phase(fv * grid.spacing_v() * from_f64(j as f64)))
            .collect();
        for i in 0..n_u {
            let row = amp * u_phases[i];
            let out = &mut samples[i * n_v..(i + 1) * n_v];
            for j in 0..n_v {
                out[j] = out[j] + row * v_phases[j];
            }
        }
    }
    // indicator cutoffs 𝟙_{[0,3N]} ⊗ 𝟙_{[0,2N²]}
    for i in 0..n_u {
        let u = grid.spacing_u() * from_f64::<T>(i as f64);
        let keep_u = u <= u_extent;
        for j in 0..n_v {
            if !keep_u {
                samples[i * n_v + j] = zero;
            } else {
                let v = grid.spacing_v() * from_f64::<T>(j as f64);
                if v > v_extent {
                    samples[i * n_v + j] = zero;
                }
            }
        }
    }
    GridFunction2D::new(*grid, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::flow::flow_apply;
    use num_complex::Complex64;

    fn sys() -> FlowPair {
        FlowPair::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn indicator_box_for_constant_observable() {
        let grid = Grid2D::new(8.0, 8.0, 256, 256).unwrap();
        let f = TrigPolynomial::constant(2, Complex64::new(1.0, 0.0));
        let x = TorusPoint::origin(2);
        let emb = embed_transfer_function(&sys(), &f, &x, 1.0, &grid).unwrap();
        // support [0,3]x[0,2], L2 norm squared = 6 up to one boundary cell layer
        let norm2 = emb.lp_norm(2.0).unwrap().powi(2);
        assert!((norm2 - 6.0).abs() < 0.2, "{norm2}");
        assert_eq!(emb.get(200, 10), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cocycle_identity_under_base_point_shift() {
        let sys = sys();
        let grid = Grid2D::new(8.0, 8.0, 64, 64).unwrap();
        let f = TrigPolynomial::from_terms(
            2,
            vec![
                (vec![1, 0], Complex64::new(0.7, 0.1)),
                (vec![0, 2], Complex64::new(-0.2, 0.5)),
            ],
        )
        .unwrap();
        let x = TorusPoint::new(vec![0.15, 0.4]);
        let (a, b) = (0.3, 0.6);
        let shifted_x = flow_apply(&sys, &x, a, b);
        let emb_shifted = embed_transfer_function(&sys, &f, &shifted_x, 1.0, &grid).unwrap();
        // on the support interior, F at the shifted base point equals f
        // evaluated at the translate in (u,v)
        for i in 0..16 {
            for j in 0..12 {
                let (u, v) = grid.point(i, j);
                if u > 3.0 || v > 2.0 {
                    continue;
                }
                let expect = f.eval(&flow_apply(&sys, &x, u + a, v + b));
                assert!((emb_shifted.get(i, j) - expect).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn l2_mass_matches_continuum_value() {
        let grid = Grid2D::new(16.0, 16.0, 1024, 1024).unwrap();
        let f = TrigPolynomial::single_mode(vec![1, 1], Complex64::new(1.0, 0.0));
        let x = TorusPoint::new(vec![0.3, 0.8]);
        let n_scale = 2.0;
        let emb = embed_transfer_function(&sys(), &f, &x, n_scale, &grid).unwrap();
        let norm2 = emb.lp_norm(2.0).unwrap().powi(2);
        let expect = 6.0 * n_scale.powi(3); // 6N³·Σ|c|²
        assert!(
            (norm2 - expect).abs() / expect < 0.02,
            "{norm2} vs {expect}"
        );
    }

    #[test]
    fn rejects_insufficient_padding() {
        let grid = Grid2D::new(6.0, 6.0, 64, 64).unwrap();
        let f = TrigPolynomial::constant(2, Complex64::new(1.0, 0.0));
        let x = TorusPoint::origin(2);
        assert!(embed_transfer_function(&sys(), &f, &x, 1.0, &grid).is_err());
    }
}
