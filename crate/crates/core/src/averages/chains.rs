//! The two inequality chains: the lacunary sandwich for nonnegative
//! observables and the dyadically split maximal bound.

use num_complex::Complex;

use crate::averages::operator::compute_average;
use crate::averages::types::{AverageRequest, ExponentPair};
use crate::dynamics::flow::{flow_apply, FlowPair, TorusPoint};
use crate::dynamics::trigpoly::TrigPolynomial;
use crate::error::{CoreError, Result};
use crate::numerics::quadrature::{integrate_1d, QuadratureRule};
use crate::scalar::{from_f64, Real};

/// `α^{-1} A_{α^m} ≤ A_N ≤ α A_{α^{m+1}}` with `m = ⌊log_α N⌋`.
#[derive(Debug, Clone, Copy)]
pub struct SandwichOutcome<T = f64> {
    pub lower: T,
    pub middle: T,
    pub upper: T,
    pub holds: bool,
}

/// `|A_N| ≤ (p-average of |f1| on [0,N]) · (dyadic q-sum for |f2|)^{1/q}`.
#[derive(Debug, Clone, Copy)]
pub struct MaximalChainOutcome<T = f64> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

/// Rejects observables that are not real-valued or take negative values.
/// Hermitian symmetry is exact coefficient algebra; nonnegativity is probed
/// on a deterministic equidistributed point set.
fn require_nonnegative<T: Real>(f: &TrigPolynomial<T>, name: &str) -> Result<()> {
    let tol = from_f64::<T>(1e-9) * (T::one() + f.sup_bound());
    if !f.is_real_valued(tol) {
        return Err(CoreError::domain(format!(
            "{name} must be real-valued (Hermitian coefficients)"
        )));
    }
    // irrational-step lattice on the torus
    let steps: Vec<f64> = [2.0f64, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0]
        .iter()
        .cycle()
        .take(f.dimension())
        .map(|p| p.sqrt().fract())
        .collect();
    for j in 0..512 {
        let coords = steps
            .iter()
            .map(|&s| from_f64::<T>((j as f64 * s).fract()))
            .collect();
        let v = f.eval(&TorusPoint::new(coords));
        if v.re < -tol {
            return Err(CoreError::domain(format!(
                "{name} takes negative values (found {:e})",
                v.re.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    Ok(())
}

/// Checks the sandwich chain at horizon `req.n` with lacunary ratio `alpha`.
/// Both observables must be nonnegative.
pub fn sandwich_check<T: Real>(
    sys: &FlowPair<T>,
    f1: &TrigPolynomial<T>,
    f2: &TrigPolynomial<T>,
    x: &TorusPoint<T>,
    alpha: f64,
    req: &AverageRequest,
) -> Result<SandwichOutcome<T>> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(CoreError::domain("sandwich ratio alpha must exceed 1"));
    }
    req.validate()?;
    require_nonnegative(f1, "f1")?;
    require_nonnegative(f2, "f2")?;
    let ratio = req.n.ln() / alpha.ln();
    let m = if (ratio - ratio.round()).abs() < 1e-12 {
        ratio.round()
    } else {
        ratio.floor()
    };
    let value_at = |n: f64| -> Result<T> {
        let sub = AverageRequest { n, ..req.clone() };
        Ok(compute_average(sys, f1, f2, x, &sub)?.re)
    };
    let lower = from_f64::<T>(1.0 / alpha) * value_at(alpha.powf(m))?;
    let middle = value_at(req.n)?;
    let upper = from_f64::<T>(alpha) * value_at(alpha.powf(m + 1.0))?;
    let scale = lower.abs().max(middle.abs()).max(upper.abs()).max(T::one());
    let tol = from_f64::<T>(1e-9) * scale;
    Ok(SandwichOutcome {
        lower,
        middle,
        upper,
        holds: lower <= middle + tol && middle <= upper + tol,
    })
}

fn power_average<T: Real>(
    f: impl Fn(T) -> T,
    length: T,
    exponent: f64,
    rule: &QuadratureRule,
) -> Result<T> {
    let p = from_f64::<T>(exponent);
    let integral = integrate_1d(
        |t: T| Complex::new(f(t).powf(p), T::zero()),
        T::zero(),
        length,
        rule,
    )?;
    Ok(integral.re / length)
}

/// Checks `|A_N(f1,f2)(x)| ≤ rhs` where the right side splits the `f2`
/// average over dyadic blocks of `[0, N²]` (weights `2^{-m/2}`) and closes
/// the truncation with the analytic geometric tail times `sup|f2|^q`.
pub fn maximal_chain_check<T: Real>(
    sys: &FlowPair<T>,
    f1: &TrigPolynomial<T>,
    f2: &TrigPolynomial<T>,
    x: &TorusPoint<T>,
    exps: &ExponentPair,
    m_max: usize,
    req: &AverageRequest,
) -> Result<MaximalChainOutcome<T>> {
    exps.validate()?;
    req.validate()?;
    if req.n < 1.0 {
        return Err(CoreError::domain("maximal chain requires N >= 1"));
    }
    if m_max == 0 {
        return Err(CoreError::domain("maximal chain requires m_max >= 1"));
    }
    let lhs = compute_average(sys, f1, f2, x, req)?.norm();

    let n = from_f64::<T>(req.n);
    let f1_avg = power_average(
        |t| f1.eval(&flow_apply(sys, x, t, T::zero())).norm(),
        n,
        exps.p,
        &req.rule,
    )?;
    let f1_factor = f1_avg.powf(from_f64(1.0 / exps.p));

    let mut f2_sum = T::zero();
    for m in 1..=m_max {
        let length = from_f64::<T>(2f64.powi(1 - m as i32)) * n * n;
        let avg = power_average(
            |s| f2.eval(&flow_apply(sys, x, T::zero(), s)).norm(),
            length,
            exps.q,
            &req.rule,
        )?;
        f2_sum = f2_sum + from_f64::<T>(2f64.powf(-(m as f64) / 2.0)) * avg;
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let tail_weight = from_f64::<T>(2f64.powf(-(m_max as f64) / 2.0) * (sqrt2 + 1.0));
    let tail = tail_weight * f2.sup_bound().powf(from_f64(exps.q));
    let rhs = f1_factor * (f2_sum + tail).powf(from_f64(1.0 / exps.q));
    Ok(MaximalChainOutcome {
        lhs,
        rhs,
        holds: lhs <= rhs + from_f64(1e-6),
    })
}
