//! Request and result types for the averaging operator.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::numerics::quadrature::QuadratureRule;

/// Parameters of a single `A_N` evaluation: the horizon `N`, the power `κ`
/// in `T^{t^κ}`, and the quadrature rule for routes that integrate directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageRequest {
    pub n: f64,
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default)]
    pub rule: QuadratureRule,
}

fn default_kappa() -> f64 {
    2.0
}

impl AverageRequest {
    pub fn new(n: f64) -> Self {
        AverageRequest {
            n,
            kappa: 2.0,
            rule: QuadratureRule::default(),
        }
    }

    pub fn with_kappa(n: f64, kappa: f64) -> Self {
        AverageRequest {
            n,
            kappa,
            rule: QuadratureRule::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n > 0.0 && self.n.is_finite()) {
            return Err(CoreError::domain("average horizon N must be positive"));
        }
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(CoreError::domain("power kappa must be positive"));
        }
        self.rule.validate()
    }

    /// `κ = 1` is accepted but degenerate: both flows then act linearly in
    /// `t` and the quadratic phenomena under study disappear.
    pub fn kappa_warning(&self) -> Option<String> {
        if (self.kappa - 1.0).abs() < 1e-12 {
            Some(
                "kappa = 1 gives a linear-linear average; decay and splitting \
                 behavior differs qualitatively from kappa = 2"
                    .to_string(),
            )
        } else {
            None
        }
    }
}

/// Geometric scale ladder `{α^n : 0 ≤ n ≤ n_max}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LacunarySchedule {
    pub alpha: f64,
    pub n_max: usize,
}

impl LacunarySchedule {
    pub fn new(alpha: f64, n_max: usize) -> Result<Self> {
        let sched = LacunarySchedule { alpha, n_max };
        sched.validate()?;
        Ok(sched)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0 && self.alpha.is_finite()) {
            return Err(CoreError::domain("lacunary ratio alpha must exceed 1"));
        }
        if self.n_max == 0 {
            return Err(CoreError::domain("lacunary schedule needs n_max >= 1"));
        }
        Ok(())
    }

    pub fn scales(&self) -> Vec<f64> {
        (0..=self.n_max).map(|n| self.alpha.powi(n as i32)).collect()
    }
}

/// Values of `A_{α^n}` along a schedule, with a Cauchy-style limit probe
/// over the last three entries.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord<T = f64> {
    pub scales: Vec<T>,
    pub values: Vec<Complex<T>>,
    pub limit_estimate: Option<Complex<T>>,
    pub cauchy_residual: T,
}

/// Conjugate exponents `1/p + 1/q = 1`, both in `(1, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub p: f64,
    pub q: f64,
}

impl ExponentPair {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let pair = ExponentPair { p, q };
        pair.validate()?;
        Ok(pair)
    }

    pub fn conjugate_to(p: f64) -> Result<Self> {
        if p <= 1.0 {
            return Err(CoreError::domain("exponent p must exceed 1"));
        }
        Self::new(p, p / (p - 1.0))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 1.0 && self.p.is_finite() && self.q > 1.0 && self.q.is_finite()) {
            return Err(CoreError::domain("exponents must lie in (1, infinity)"));
        }
        if (1.0 / self.p + 1.0 / self.q - 1.0).abs() > 1e-12 {
            return Err(CoreError::domain("exponents must be conjugate: 1/p + 1/q = 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_defaults_and_validation() {
        let req = AverageRequest::new(10.0);
        assert_eq!(req.kappa, 2.0);
        assert!(req.validate().is_ok());
        assert!(req.kappa_warning().is_none());
        assert!(AverageRequest::new(-1.0).validate().is_err());
        assert!(AverageRequest::with_kappa(1.0, 0.0).validate().is_err());
        assert!(AverageRequest::with_kappa(5.0, 1.0).kappa_warning().is_some());
    }

    #[test]
    fn request_deserializes_with_default_kappa() {
        let req: AverageRequest = serde_json::from_str(r#"{"n": 4.0}"#).unwrap();
        assert_eq!(req.kappa, 2.0);
        assert!(req.rule.validate().is_ok());
    }

    #[test]
    fn schedule_scales_are_strictly_increasing() {
        let sched = LacunarySchedule::new(1.5, 6).unwrap();
        let scales = sched.scales();
        assert_eq!(scales.len(), 7);
        assert_eq!(scales[0], 1.0);
        assert!(scales.windows(2).all(|w| w[1] > w[0]));
        assert!(LacunarySchedule::new(1.0, 4).is_err());
        assert!(LacunarySchedule::new(2.0, 0).is_err());
    }

    #[test]
    fn exponent_pairs() {
        assert!(ExponentPair::new(2.0, 2.0).is_ok());
        assert!(ExponentPair::new(3.0, 1.5).is_ok());
        assert!(ExponentPair::new(3.0, 2.0).is_err());
        assert!(ExponentPair::new(1.0, f64::INFINITY).is_err());
        let pair = ExponentPair::conjugate_to(3.0).unwrap();
        assert!((pair.q - 1.5).abs() < 1e-15);
    }
}
