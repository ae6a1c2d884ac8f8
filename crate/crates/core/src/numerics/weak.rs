//! Weak-L¹ norm of a finite weighted sample set.

use num_complex::Complex;

use crate::error::{CoreError, Result};
use crate::scalar::Real;

/// `sup_α α · mass{|value| > α}` for a finite weighted sample set.
///
/// The supremum is attained just below one of the sample magnitudes, so it
/// is computed exactly by sorting: the maximum over k of
/// `|v|_(k) · mass{|v| ≥ |v|_(k)}`. Empty input gives 0.
pub fn weak_l1_norm<T: Real>(values: &[Complex<T>], weights: &[T]) -> Result<T> {
    if values.len() != weights.len() {
        return Err(CoreError::config("values and weights must have equal length"));
    }
    if weights.iter().any(|w| *w < T::zero() || !w.is_finite()) {
        return Err(CoreError::domain("weights must be nonnegative and finite"));
    }
    let mut pairs: Vec<(T, T)> = values
        .iter()
        .map(|z| z.norm())
        .zip(weights.iter().copied())
        .collect();
    // descending by magnitude; ties are harmless (cumulative mass covers them)
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut mass = T::zero();
    let mut best = T::zero();
    for (value, weight) in pairs {
        mass = mass + weight;
        best = best.max(value * mass);
    }
    Ok(best)
}
