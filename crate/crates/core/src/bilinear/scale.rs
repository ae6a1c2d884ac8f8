//! Parabolic rescaling and the dyadic decomposition of `(1/N)𝟙_{(0,N]}`.

use crate::error::{CoreError, Result};
use crate::numerics::grid::{Grid2D, GridFunction2D};
use crate::scalar::{from_f64, Real};

/// `(x, y) ↦ a^{3/2}·F(ax, a²y)`, realized exactly: the sample values are
/// scaled by `a^{3/2}` and the grid periods by `(1/a, 1/a²)`, so no
/// interpolation enters and the L² norm is preserved to roundoff.
pub fn rescale_parabolic<T: Real>(f: &GridFunction2D<T>, a: f64) -> Result<GridFunction2D<T>> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(CoreError::domain("rescaling factor a must be positive"));
    }
    let grid = f.grid();
    let a_t = from_f64::<T>(a);
    let new_grid = Grid2D::new(
        grid.period_u() / a_t,
        grid.period_v() / (a_t * a_t),
        grid.n_u(),
        grid.n_v(),
    )?;
    let gain = a_t.powf(from_f64(1.5));
    let samples = f.samples().iter().map(|&z| z * gain).collect();
    GridFunction2D::new(new_grid, samples)
}

/// One term `{(2^{-k}N, 2^{-k+1}N], weight 2^{-k}}` of the dyadic identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicInterval {
    pub lower: f64,
    pub upper: f64,
    pub weight: f64,
}

/// The first `K` terms of
/// `(1/N)𝟙_{(0,N]} = Σ_k 2^{-k}·(2^{-k}N)^{-1}·𝟙_{(2^{-k}N, 2^{-k+1}N]}`.
#[derive(Debug, Clone)]
pub struct DyadicDecomposition {
    pub n: f64,
    pub intervals: Vec<DyadicInterval>,
}

impl DyadicDecomposition {
    /// Value of the truncated sum at `t`: the normalized-indicator terms
    /// reproduce `1/N` exactly on `(2^{-K}N, N]` and 0 elsewhere.
    pub fn partial_sum_at(&self, t: f64) -> f64 {
        self.intervals
            .iter()
            .filter(|iv| t > iv.lower && t <= iv.upper)
            .map(|iv| iv.weight / (iv.upper - iv.lower))
            .sum()
    }

    /// L¹ mass not covered by the truncation: `2^{-K}` exactly.
    pub fn residual_mass(&self) -> f64 {
        2f64.powi(-(self.intervals.len() as i32))
    }
}

/// Builds the decomposition with `K` terms.
pub fn dyadic_scale_decomposition(n: f64, k_terms: usize) -> Result<DyadicDecomposition> {
    if !(n >= 1.0 && n.is_finite()) {
        return Err(CoreError::domain("dyadic decomposition requires N >= 1"));
    }
    if k_terms == 0 {
        return Err(CoreError::domain("dyadic decomposition requires K >= 1"));
    }
    let intervals = (1..=k_terms)
        .map(|k| {
            let w = 2f64.powi(-(k as i32));
            DyadicInterval {
                lower: w * n,
                upper: 2.0 * w * n,
                weight: w,
            }
        })
        .collect();
    Ok(DyadicDecomposition { n, intervals })
}
