//! Lacunary-scale trajectories of the averaging operator.

use num_complex::Complex;

use crate::averages::operator::compute_average;
use crate::averages::types::{AverageRequest, LacunarySchedule, TrajectoryRecord};
use crate::dynamics::flow::{FlowPair, TorusPoint};
use crate::dynamics::trigpoly::TrigPolynomial;
use crate::error::Result;
use crate::numerics::quadrature::QuadratureRule;
use crate::scalar::{from_f64, Real};

/// Evaluates `A_{α^n}(f1, f2)(x)` for `0 ≤ n ≤ n_max` and probes for a
/// limit: the estimate is set when the last three values agree to
/// `1e-2 · (1 + |last|)`.
pub fn lacunary_trajectory<T: Real>(
    sys: &FlowPair<T>,
    f1: &TrigPolynomial<T>,
    f2: &TrigPolynomial<T>,
    x: &TorusPoint<T>,
    sched: &LacunarySchedule,
    kappa: f64,
    rule: &QuadratureRule,
) -> Result<TrajectoryRecord<T>> {
    sched.validate()?;
    let scales = sched.scales();
    let mut values: Vec<Complex<T>> = Vec::with_capacity(scales.len());
    for &n in &scales {
        let req = AverageRequest {
            n,
            kappa,
            rule: rule.clone(),
        };
        values.push(compute_average(sys, f1, f2, x, &req)?);
    }
    let tail_start = values.len().saturating_sub(3);
    let tail = &values[tail_start..];
    let mut cauchy_residual = T::zero();
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            cauchy_residual = cauchy_residual.max((tail[i] - tail[j]).norm());
        }
    }
    let last = *values.last().expect("schedule is nonempty");
    let limit_estimate = if cauchy_residual < from_f64::<T>(1e-2) * (T::one() + last.norm()) {
        Some(last)
    } else {
        None
    };
    Ok(TrajectoryRecord {
        scales: scales.into_iter().map(from_f64).collect(),
        values,
        limit_estimate,
        cauchy_residual,
    })
}
