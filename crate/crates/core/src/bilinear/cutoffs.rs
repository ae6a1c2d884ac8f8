//! Smooth cutoff data: the planar partition bump η, the wide plateau η̃,
//! and the mollified time window φ_δ with `‖φ_δ − 𝟙_{[1,2]}‖₁ ≤ δ`.

use std::marker::PhantomData;

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::numerics::quadrature::{integrate_1d, QuadratureRule};
use crate::scalar::{from_f64, Real};

/// `e^{-1/(1-s²)}` on (−1, 1), zero outside: the standard compact bump.
fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - s * s)).exp()
    }
}

/// `e^{-1/s}` transition kernel: 0 for s ≤ 0, 1 for s ≥ 1, smooth ramp.
fn transition(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / s).exp();
        let b = (-1.0 / (1.0 - s)).exp();
        a / (a + b)
    }
}

const CDF_CELLS: usize = 1 << 13;

/// Cutoff family at smoothing parameter δ. The mollifier CDF is tabulated
/// once (cumulative Simpson) and interpolated with cubic Hermite cells,
/// using the exact bump density as the derivative data.
#[derive(Debug, Clone)]
pub struct CutoffSpec<T = f64> {
    delta: f64,
    cdf: Vec<f64>,
    mass: f64,
    _marker: PhantomData<T>,
}

/// Builds the cutoff family for `δ ∈ (0, 1]`: φ_δ is the width-δ/8
/// mollification of `𝟙_{[1+δ/4, 2−δ/4]}`.
pub fn build_cutoffs<T: Real>(delta: f64) -> Result<CutoffSpec<T>> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(CoreError::domain("cutoff parameter delta must lie in (0, 1]"));
    }
    let h = 2.0 / CDF_CELLS as f64;
    let mut cdf = Vec::with_capacity(CDF_CELLS + 1);
    cdf.push(0.0);
    let mut acc = 0.0;
    for i in 0..CDF_CELLS {
        let a = -1.0 + i as f64 * h;
        let b = a + h;
        acc += (bump(a) + 4.0 * bump(0.5 * (a + b)) + bump(b)) * h / 6.0;
        cdf.push(acc);
    }
    let mass = acc;
    Ok(CutoffSpec {
        delta,
        cdf,
        mass,
        _marker: PhantomData,
    })
}

impl<T: Real> CutoffSpec<T> {
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Normalized mollifier CDF: 0 at u ≤ −1, 1 at u ≥ 1, C^∞ in between
    /// up to the interpolation tolerance (~1e-12).
    fn mollifier_cdf(&self, u: f64) -> f64 {
        if u <= -1.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        let h = 2.0 / CDF_CELLS as f64;
        let pos = (u + 1.0) / h;
        let cell = (pos.floor() as usize).min(CDF_CELLS - 1);
        let s = pos - cell as f64;
        let a = -1.0 + cell as f64 * h;
        let (f0, f1) = (self.cdf[cell], self.cdf[cell + 1]);
        let (d0, d1) = (bump(a) * h, bump(a + h) * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * f0
            + (s3 - 2.0 * s2 + s) * d0
            + (-2.0 * s3 + 3.0 * s2) * f1
            + (s3 - s2) * d1;
        value / self.mass
    }

    fn phi_f64(&self, t: f64) -> f64 {
        let w = self.delta / 8.0;
        let left = (t - (1.0 + self.delta / 4.0)) / w;
        let right = (t - (2.0 - self.delta / 4.0)) / w;
        self.mollifier_cdf(left) - self.mollifier_cdf(right)
    }

    /// Time window `φ_δ`: supported in `[1+δ/8, 2−δ/8]`, identically 1 on
    /// `[1+3δ/8, 2−3δ/8]`.
    pub fn phi(&self, t: T) -> T {
        from_f64(self.phi_f64(t.to_f64().expect("scalar convertible to f64")))
    }

    fn partition_profile(s: f64) -> f64 {
        let num = bump(s);
        if num == 0.0 {
            return 0.0;
        }
        num / (bump(s - 1.0) + num + bump(s + 1.0))
    }

    /// Planar bump `η`, supported in `[−1,1]²`; its integer translates
    /// `η_m` form a partition of unity.
    pub fn eta(&self, x: T, y: T) -> T {
        let x = x.to_f64().expect("scalar convertible to f64");
        let y = y.to_f64().expect("scalar convertible to f64");
        from_f64(Self::partition_profile(x) * Self::partition_profile(y))
    }

    /// Translate `η_m(x, y) = η(x − m₁, y − m₂)`.
    pub fn eta_shifted(&self, m: (i64, i64), x: T, y: T) -> T {
        self.eta(
            x - from_f64(m.0 as f64),
            y - from_f64(m.1 as f64),
        )
    }

    /// Wide plateau `η̃`: 1 on `[−10,10]²`, supported in `[−20,20]²`.
    pub fn eta_tilde(&self, x: T, y: T) -> T {
        let x = x.to_f64().expect("scalar convertible to f64");
        let y = y.to_f64().expect("scalar convertible to f64");
        let profile = |s: f64| transition((20.0 - s.abs()) / 10.0);
        from_f64(profile(x) * profile(y))
    }

    /// `ζ(x, y, t) = η(x, y)·φ_δ(t)`.
    pub fn zeta(&self, x: T, y: T, t: T) -> T {
        self.eta(x, y) * self.phi(t)
    }

    /// Interior breakpoints of `φ_δ` (ramp edges and plateau edges), used
    /// to segment t-quadrature.
    pub fn time_breakpoints(&self) -> [f64; 4] {
        let d = self.delta;
        [
            1.0 + d / 8.0,
            1.0 + 3.0 * d / 8.0,
            2.0 - 3.0 * d / 8.0,
            2.0 - d / 8.0,
        ]
    }

    /// Quadrature evaluation of `∫ |φ_δ − 𝟙_{[1,2]}|`; the certificate is
    /// that this does not exceed δ (the construction gives ≈ δ/2).
    pub fn l1_distance_to_indicator(&self, rule: &QuadratureRule) -> Result<f64> {
        let bp = self.time_breakpoints();
        let segments = [(1.0, bp[0]), (bp[0], bp[1]), (bp[2], bp[3]), (bp[3], 2.0)];
        let mut total = 0.0;
        for (a, b) in segments {
            let part = integrate_1d(
                |t: f64| Complex::new((1.0 - self.phi_f64(t)).abs(), 0.0),
                a,
                b,
                rule,
            )?;
            total += part.re;
        }
        Ok(total)
    }

    /// `Σ_{m ∈ [−w,w]²} η_m(x, y)`: equals 1 whenever the window covers
    /// the unit neighborhood of `(x, y)`.
    pub fn partition_sum(&self, x: T, y: T, window: i64) -> T {
        let mut sum = T::zero();
        for m1 in -window..=window {
            for m2 in -window..=window {
                sum = sum + self.eta_shifted((m1, m2), x, y);
            }
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_delta_out_of_range() {
        assert!(build_cutoffs::<f64>(0.0).is_err());
        assert!(build_cutoffs::<f64>(-0.5).is_err());
        assert!(build_cutoffs::<f64>(1.5).is_err());
        assert!(build_cutoffs::<f64>(1.0).is_ok());
    }

    #[test]
    fn phi_support_and_plateau() {
        let cut = build_cutoffs::<f64>(0.5).unwrap();
        assert_eq!(cut.phi(1.0), 0.0);
        assert_eq!(cut.phi(1.0 + 0.5 / 8.0 - 1e-9), 0.0);
        assert_eq!(cut.phi(2.0), 0.0);
        assert!((cut.phi(1.5) - 1.0).abs() < 1e-11);
        assert!((cut.phi(1.0 + 3.0 * 0.5 / 8.0 + 1e-9) - 1.0).abs() < 1e-9);
        // ramp midpoint by CDF symmetry
        assert!((cut.phi(1.0 + 0.5 / 4.0) - 0.5).abs() < 1e-11);
        // symmetry about t = 1.5
        for s in [0.05, 0.11, 0.2, 0.31] {
            assert!((cut.phi(1.5 - s) - cut.phi(1.5 + s)).abs() < 1e-11);
        }
    }

    #[test]
    fn phi_l1_budget() {
        let rule = QuadratureRule::default();
        for delta in [1.0, 0.25, 1.0 / 16.0] {
            let cut = build_cutoffs::<f64>(delta).unwrap();
            let gap = cut.l1_distance_to_indicator(&rule).unwrap();
            assert!(gap <= delta, "delta={delta}: gap {gap}");
            // the construction concentrates the loss at the two ramps
            assert!((gap - delta / 2.0).abs() < 0.05 * delta, "{gap}");
        }
    }

    #[test]
    fn eta_support_and_positivity() {
        let cut = build_cutoffs::<f64>(0.5).unwrap();
        assert!(cut.eta(0.0, 0.0) > 0.0);
        assert_eq!(cut.eta(1.2, 0.0), 0.0);
        assert_eq!(cut.eta(0.0, -1.0), 0.0);
    }

    #[test]
    fn integer_translates_partition_unity() {
        let cut = build_cutoffs::<f64>(0.25).unwrap();
        let s = cut.partition_sum(0.4, -1.2, 3);
        assert!((s - 1.0).abs() < 1e-10, "{s}");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let s = cut.partition_sum(x, y, 4);
            assert!((s - 1.0).abs() < 1e-10, "({x}, {y}): {s}");
        }
    }

    #[test]
    fn plateau_values() {
        let cut = build_cutoffs::<f64>(1.0).unwrap();
        assert_eq!(cut.eta_tilde(3.0, -7.0), 1.0);
        assert_eq!(cut.eta_tilde(25.0, 0.0), 0.0);
        assert_eq!(cut.eta_tilde(0.0, 20.0), 0.0);
        let mid = cut.eta_tilde(15.0, 0.0);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn mollifier_cdf_matches_direct_quadrature() {
        let cut = build_cutoffs::<f64>(0.5).unwrap();
        let rule = QuadratureRule::default();
        for u in [-0.7, -0.2, 0.0, 0.4, 0.9] {
            let direct = integrate_1d(
                |s: f64| Complex::new(bump(s), 0.0),
                -1.0,
                u,
                &rule,
            )
            .unwrap()
            .re
                / cut.mass;
            assert!((cut.mollifier_cdf(u) - direct).abs() < 1e-9, "u={u}");
        }
    }
}
