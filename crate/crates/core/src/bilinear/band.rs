//! Frequency splitting along the first axis and the Plancherel shift bound.

use crate::error::{CoreError, Result};
use crate::numerics::grid::{dft_forward, dft_inverse, GridFunction2D, Spectrum2D};
use crate::scalar::{from_f64, Real};

/// `F = low + high` with the low part spectrally supported in `|ξ₁| ≤ R`.
#[derive(Debug, Clone)]
pub struct BandSplit<T = f64> {
    pub low: GridFunction2D<T>,
    pub high: GridFunction2D<T>,
}

/// Splits `F` by the closed band `𝟙_{[−R,R]}(ξ₁)`; modes with `|ξ₁| = R`
/// go to the low part.
pub fn band_split<T: Real>(f: &GridFunction2D<T>, r: f64) -> Result<BandSplit<T>> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(CoreError::domain("split radius R must be nonnegative"));
    }
    let spectrum = dft_forward(f);
    let grid = *f.grid();
    let mut low = Spectrum2D::zero(grid);
    let mut high = Spectrum2D::zero(grid);
    let n_v = grid.n_v();
    let radius = from_f64::<T>(r);
    for i in 0..grid.n_u() {
        let in_band = grid.freq_u(i).abs() <= radius;
        let dst = if in_band { &mut low } else { &mut high };
        let row = i * n_v;
        dst.coefficients_mut()[row..row + n_v]
            .copy_from_slice(&spectrum.coefficients()[row..row + n_v]);
    }
    Ok(BandSplit {
        low: dft_inverse(&low),
        high: dft_inverse(&high),
    })
}

/// The shifted-difference norm `‖F(·+δ, ·) − F‖₂` computed two ways, and
/// the band-limited bound `2πδR·‖F‖₂` when a radius is supplied.
#[derive(Debug, Clone, Copy)]
pub struct ShiftDifferenceNorm<T = f64> {
    pub spatial: T,
    pub spectral: T,
    pub bound_holds: Option<bool>,
}

/// Computes the L² norm of `F(·+δ, ·) − F` on the spatial side (spectral
/// interpolation of the shift, then a grid sum) and on the spectral side
/// (`Σ|F̂|²·|e^{2πiδξ₁}−1|²`). With `r = Some(R)` it additionally checks
/// `spatial ≤ 2πδR·‖F‖₂`, valid when `F̂` vanishes for `|ξ₁| > R`.
pub fn shift_difference_norm<T: Real>(
    f: &GridFunction2D<T>,
    delta: f64,
    r: Option<f64>,
) -> Result<ShiftDifferenceNorm<T>> {
    if !delta.is_finite() {
        return Err(CoreError::domain("shift delta must be finite"));
    }
    let spectrum = dft_forward(f);
    let d = from_f64::<T>(delta);

    let shifted = dft_inverse(&spectrum.shifted_u(d));
    let spatial = shifted.sub(f)?.lp_norm(from_f64(2.0))?;

    let grid = f.grid();
    let mut sum = T::zero();
    let two_pi = from_f64::<T>(2.0 * std::f64::consts::PI);
    for i in 0..grid.n_u() {
        let theta = two_pi * d * grid.freq_u(i);
        // |e^{iθ} − 1|² = 4 sin²(θ/2)
        let half = (theta / from_f64(2.0)).sin();
        let gain = from_f64::<T>(4.0) * half * half;
        for j in 0..grid.n_v() {
            sum = sum + gain * spectrum.coefficients()[i * grid.n_v() + j].norm_sqr();
        }
    }
    let spectral = (sum * grid.period_u() * grid.period_v()).sqrt();

    let bound_holds = r.map(|radius| {
        let rhs = two_pi * from_f64::<T>(delta.abs() * radius) * spectrum.l2_norm();
        spatial <= rhs + from_f64::<T>(1e-12) * (T::one() + rhs)
    });
    Ok(ShiftDifferenceNorm {
        spatial,
        spectral,
        bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::Grid2D;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_band_limited(
        rng: &mut ChaCha8Rng,
        grid: Grid2D,
        max_k1: i64,
        max_k2: i64,
    ) -> GridFunction2D {
        let mut modes = Vec::new();
        for _ in 0..8 {
            modes.push((
                rng.gen_range(-max_k1..=max_k1),
                rng.gen_range(-max_k2..=max_k2),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ));
        }
        GridFunction2D::from_modes(grid, &modes).unwrap()
    }

    #[test]
    fn split_reconstructs_and_respects_band() {
        let grid = Grid2D::new(4.0, 4.0, 64, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_band_limited(&mut rng, grid, 12, 12);
        let split = band_split(&f, 1.5).unwrap();
        let recon = split.low.add(&split.high).unwrap();
        let err = recon.sub(&f).unwrap().lp_norm(f64::INFINITY).unwrap();
        assert!(err < 1e-10);
        // Parseval additivity
        let (nl, nh, nf) = (
            split.low.lp_norm(2.0).unwrap(),
            split.high.lp_norm(2.0).unwrap(),
            f.lp_norm(2.0).unwrap(),
        );
        assert!((nl * nl + nh * nh - nf * nf).abs() < 1e-10);
        // spectral supports
        let sl = dft_forward(&split.low);
        let sh = dft_forward(&split.high);
        for i in 0..grid.n_u() {
            for j in 0..grid.n_v() {
                let c_low = sl.coefficients()[i * grid.n_v() + j].norm();
                let c_high = sh.coefficients()[i * grid.n_v() + j].norm();
                if grid.freq_u(i).abs() <= 1.5 {
                    assert!(c_high < 1e-12);
                } else {
                    assert!(c_low < 1e-12);
                }
            }
        }
    }

    #[test]
    fn split_extremes() {
        let grid = Grid2D::new(4.0, 4.0, 32, 32).unwrap();
        let f = GridFunction2D::from_modes(grid, &[(2, 1, Complex64::new(1.0, 0.0))]).unwrap();
        // mode at xi1 = 0.5, inside a generous band
        let inside = band_split(&f, 1.0).unwrap();
        assert!(inside.high.lp_norm(2.0).unwrap() < 1e-12);
        // same mode outside a tight band
        let outside = band_split(&f, 0.4).unwrap();
        assert!(outside.low.lp_norm(2.0).unwrap() < 1e-12);
        assert!(
            (outside.high.lp_norm(2.0).unwrap() - f.lp_norm(2.0).unwrap()).abs() < 1e-12
        );
        // closed-interval convention: |xi1| = R stays low
        let edge = band_split(&f, 0.5).unwrap();
        assert!(edge.high.lp_norm(2.0).unwrap() < 1e-12);
    }

    #[test]
    fn shift_difference_zero_delta() {
        let grid = Grid2D::new(4.0, 4.0, 32, 32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_band_limited(&mut rng, grid, 8, 8);
        let out = shift_difference_norm(&f, 0.0, None).unwrap();
        // spatial route goes through an FFT roundtrip, so only near-zero
        assert!(out.spatial < 1e-12);
        assert_eq!(out.spectral, 0.0);
    }

    #[test]
    fn single_mode_closed_form() {
        // unit-L2-norm mode at xi1 = 2: norm = 2|sin(pi delta xi1)|
        let grid = Grid2D::new(1.0, 1.0, 32, 32).unwrap();
        let f = GridFunction2D::from_modes(grid, &[(2, 0, Complex64::new(1.0, 0.0))]).unwrap();
        assert!((f.lp_norm(2.0).unwrap() - 1.0).abs() < 1e-12);
        let out = shift_difference_norm(&f, 0.1, None).unwrap();
        let expect = 2.0 * (0.2 * std::f64::consts::PI).sin().abs();
        assert!((out.spatial - expect).abs() < 1e-12, "{}", out.spatial);
        assert!((out.spectral - expect).abs() < 1e-12);
    }

    #[test]
    fn spatial_spectral_agreement_and_bound() {
        let grid = Grid2D::new(2.0, 2.0, 64, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let f = random_band_limited(&mut rng, grid, 16, 16);
            let out = shift_difference_norm(&f, 0.01, Some(8.0)).unwrap();
            assert!((out.spatial - out.spectral).abs() < 1e-8);
            assert_eq!(out.bound_holds, Some(true));
        }
    }
}
