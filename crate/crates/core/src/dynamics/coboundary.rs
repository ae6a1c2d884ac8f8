//! Exact coboundary ⊕ invariant decomposition of a trig polynomial with
//! respect to the Koopman operator U^δ of the S-flow:
//! `f = (g∘S^δ − g) + h` with `h` S-invariant.
//!
//! In the spectral model the kernel condition is simply `k·s_dir = 0`: such
//! terms are invariant under S^t for every `t`, not just `t = δ`. Terms
//! with `k·s_dir ≠ 0` whose divisor `e^{2πiδ k·s_dir} − 1` falls below the
//! resonance floor are a discretization artifact and are rejected, not
//! silently absorbed.

use num_complex::Complex;

use crate::dynamics::flow::FlowPair;
use crate::dynamics::trigpoly::TrigPolynomial;
use crate::error::{CoreError, Result};
use crate::scalar::{from_f64, unit_phase, Real};

pub const DEFAULT_RESONANCE_FLOOR: f64 = 1e-8;

/// `f = (g∘S^δ − g) + h`, exact at the coefficient level.
#[derive(Debug, Clone)]
pub struct CoboundaryDecomposition<T = f64> {
    pub invariant_part: TrigPolynomial<T>,
    pub transfer_part: TrigPolynomial<T>,
    pub delta: T,
}

/// Decomposes `f` with the default resonance floor 1e-8.
pub fn coboundary_decompose<T: Real>(
    sys: &FlowPair<T>,
    f: &TrigPolynomial<T>,
    delta: T,
) -> Result<CoboundaryDecomposition<T>> {
    coboundary_decompose_with_floor(sys, f, delta, from_f64(DEFAULT_RESONANCE_FLOOR))
}

pub fn coboundary_decompose_with_floor<T: Real>(
    sys: &FlowPair<T>,
    f: &TrigPolynomial<T>,
    delta: T,
    resonance_floor: T,
) -> Result<CoboundaryDecomposition<T>> {
    if !(delta > T::zero() && delta <= T::one()) {
        return Err(CoreError::domain("coboundary step delta must lie in (0, 1]"));
    }
    if f.dimension() != sys.dimension() {
        return Err(CoreError::config("polynomial/flow dimension mismatch"));
    }
    let mut invariant_terms: Vec<(Vec<i64>, Complex<T>)> = Vec::new();
    let mut transfer_terms: Vec<(Vec<i64>, Complex<T>)> = Vec::new();
    for (k, c) in f.terms() {
        let omega = sys.s_frequency(k);
        // scale for deciding that k·s_dir is an exact zero up to roundoff
        let scale: T = k
            .iter()
            .zip(&sys.s_dir)
            .map(|(&ki, &si)| (from_f64::<T>(ki as f64) * si).abs())
            .fold(T::zero(), |a, b| a + b);
        let invariant_tol = T::epsilon() * (T::one() + scale) * from_f64(8.0);
        if omega.abs() <= invariant_tol {
            invariant_terms.push((k.to_vec(), c));
            continue;
        }
        let divisor = unit_phase(delta * omega) - Complex::new(T::one(), T::zero());
        if divisor.norm() < resonance_floor {
            return Err(CoreError::Resonance {
                freq: k.to_vec(),
                detail: format!(
                    "|e^(2pi i delta k.s) - 1| = {:e} below floor {:e} while k.s = {} != 0",
                    divisor.norm().to_f64().unwrap_or(f64::NAN),
                    resonance_floor.to_f64().unwrap_or(f64::NAN),
                    omega.to_f64().unwrap_or(f64::NAN),
                ),
            });
        }
        transfer_terms.push((k.to_vec(), c / divisor));
    }
    Ok(CoboundaryDecomposition {
        invariant_part: TrigPolynomial::from_terms(f.dimension(), invariant_terms)?,
        transfer_part: TrigPolynomial::from_terms(f.dimension(), transfer_terms)?,
        delta,
    })
}
