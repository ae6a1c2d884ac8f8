//! Log-log power-law fitting and rank statistics for decay sweeps.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::scalar::Real;

/// Result of a least-squares power-law fit `y ≈ prefactor · x^exponent`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

/// Unweighted least squares through `(log x, log y)`.
///
/// Requires at least 3 strictly positive pairs.
pub fn fit_power_law<T: Real>(pairs: &[(T, T)]) -> Result<FitResult> {
    if pairs.len() < 3 {
        return Err(CoreError::domain(format!(
            "power-law fit needs at least 3 points, got {}",
            pairs.len()
        )));
    }
    let mut logs = Vec::with_capacity(pairs.len());
    for &(x, y) in pairs {
        let (x, y) = (
            x.to_f64().unwrap_or(f64::NAN),
            y.to_f64().unwrap_or(f64::NAN),
        );
        if !(x > 0.0) || !(y > 0.0) {
            return Err(CoreError::domain(format!(
                "power-law fit requires strictly positive data, got ({x}, {y})"
            )));
        }
        logs.push((x.ln(), y.ln()));
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(CoreError::domain("power-law fit is degenerate: all x equal"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        exponent: slope,
        prefactor: intercept.exp(),
        r_squared,
        points_used: logs.len(),
    })
}

/// Spearman rank correlation of `y` against `x` (ties get averaged ranks).
pub fn spearman_rho(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(CoreError::domain("spearman_rho needs two equal-length series"));
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    let n = rx.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for i in 0..rx.len() {
        num += (rx[i] - mean) * (ry[i] - mean);
        dx += (rx[i] - mean).powi(2);
        dy += (ry[i] - mean).powi(2);
    }
    if dx == 0.0 || dy == 0.0 {
        return Err(CoreError::domain("spearman_rho is degenerate: constant series"));
    }
    Ok(num / (dx * dy).sqrt())
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].partial_cmp(&v[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for k in i..=j {
            out[idx[k]] = rank;
        }
        i = j + 1;
    }
    out
}
