//! δ-decay sweep for `B_δ`, with the low/high frequency split bookkeeping.

use serde::{Deserialize, Serialize};

use crate::bilinear::band::band_split;
use crate::bilinear::bdelta::apply_b_delta;
use crate::bilinear::cutoffs::build_cutoffs;
use crate::error::{CoreError, Result};
use crate::numerics::fit::{fit_power_law, FitResult};
use crate::numerics::grid::GridFunction2D;
use crate::numerics::quadrature::QuadratureRule;
use crate::scalar::{from_f64, Real};

/// How the split radius follows δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadiusRule {
    Fixed(f64),
    InverseSqrtDelta,
}

impl RadiusRule {
    pub fn radius(&self, delta: f64) -> f64 {
        match *self {
            RadiusRule::Fixed(r) => r,
            RadiusRule::InverseSqrtDelta => delta.powf(-0.5),
        }
    }
}

/// Family-averaged norms at one δ.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DeltaDecayPoint {
    pub delta: f64,
    pub radius: f64,
    pub norm_low: f64,
    pub norm_high: f64,
    pub norm_total: f64,
    pub triangle_holds: bool,
}

/// Full sweep result: the γ fit on totals and the low-band slope fit.
#[derive(Debug, Clone)]
pub struct DeltaDecayOutcome {
    pub points: Vec<DeltaDecayPoint>,
    pub total_fit: Option<FitResult>,
    pub low_fit: Option<FitResult>,
}

/// For each δ: builds the δ-cutoffs, splits every `F1` at the rule's
/// radius, and records the mean L¹ norms of `B_δ` on the low part, the
/// high part, and the unsplit input, together with the triangle check
/// `‖B_δ(F1)‖₁ ≤ ‖B_δ(F_{1,R})‖₁ + ‖B_δ(G_{1,R})‖₁`.
pub fn delta_decay_experiment<T: Real>(
    pairs: &[(GridFunction2D<T>, GridFunction2D<T>)],
    delta_list: &[f64],
    r_rule: RadiusRule,
    kappa: f64,
    rule: &QuadratureRule,
) -> Result<DeltaDecayOutcome> {
    if pairs.is_empty() {
        return Err(CoreError::domain("decay experiment needs at least one input pair"));
    }
    if delta_list.len() < 4 {
        return Err(CoreError::domain("decay experiment needs at least 4 delta values"));
    }
    if delta_list.iter().any(|&d| !(d > 0.0 && d <= 1.0)) {
        return Err(CoreError::domain(
            "decay experiment deltas must lie in (0, 1]; the claim is vacuous beyond 1",
        ));
    }
    let l1 = |f: &GridFunction2D<T>| -> Result<f64> {
        Ok(f.lp_norm(from_f64(1.0))?.to_f64().unwrap_or(f64::NAN))
    };
    let mut points = Vec::with_capacity(delta_list.len());
    for &delta in delta_list {
        let cut = build_cutoffs::<T>(delta)?;
        let radius = r_rule.radius(delta);
        let (mut low, mut high, mut total) = (0.0, 0.0, 0.0);
        for (f1, f2) in pairs {
            let split = band_split(f1, radius)?;
            low += l1(&apply_b_delta(&split.low, f2, &cut, delta, kappa, rule)?)?;
            high += l1(&apply_b_delta(&split.high, f2, &cut, delta, kappa, rule)?)?;
            total += l1(&apply_b_delta(f1, f2, &cut, delta, kappa, rule)?)?;
        }
        let count = pairs.len() as f64;
        let (norm_low, norm_high, norm_total) = (low / count, high / count, total / count);
        points.push(DeltaDecayPoint {
            delta,
            radius,
            norm_low,
            norm_high,
            norm_total,
            triangle_holds: norm_total <= norm_low + norm_high + 1e-8,
        });
    }
    let total_pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.delta, p.norm_total)).collect();
    let low_pairs: Vec<(f64, f64)> = points.iter().map(|p| (p.delta, p.norm_low)).collect();
    Ok(DeltaDecayOutcome {
        total_fit: fit_power_law(&total_pairs).ok(),
        low_fit: fit_power_law(&low_pairs).ok(),
        points,
    })
}
