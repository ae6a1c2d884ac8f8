//! Commuting translation flows on the torus 𝕋^d.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::scalar::{from_f64, Real};

/// A point on 𝕋^d, coordinates normalized into `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint<T = f64> {
    coordinates: Vec<T>,
}

impl<T: Real> TorusPoint<T> {
    pub fn new(coordinates: Vec<T>) -> Self {
        let coordinates = coordinates.into_iter().map(wrap_unit).collect();
        TorusPoint { coordinates }
    }

    pub fn origin(dimension: usize) -> Self {
        TorusPoint {
            coordinates: vec![T::zero(); dimension],
        }
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[T] {
        &self.coordinates
    }
}

fn wrap_unit<T: Real>(x: T) -> T {
    let y = x.fract();
    if y < T::zero() {
        y + T::one()
    } else {
        y
    }
}

/// Two commuting translation flows S^t, T^t on 𝕋^d, given by their
/// direction (speed) vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowPair<T = f64> {
    pub d: usize,
    pub s_dir: Vec<T>,
    pub t_dir: Vec<T>,
}

impl<T: Real> FlowPair<T> {
    pub fn new(s_dir: Vec<T>, t_dir: Vec<T>) -> Result<Self> {
        if s_dir.is_empty() || s_dir.len() != t_dir.len() {
            return Err(CoreError::config(
                "flow direction vectors must be nonempty and of equal dimension",
            ));
        }
        Ok(FlowPair {
            d: s_dir.len(),
            s_dir,
            t_dir,
        })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Dot product `k·s_dir` of an integer frequency with the S-direction.
    pub fn s_frequency(&self, k: &[i64]) -> T {
        dot(k, &self.s_dir)
    }

    /// Dot product `k·t_dir`.
    pub fn t_frequency(&self, k: &[i64]) -> T {
        dot(k, &self.t_dir)
    }
}

fn dot<T: Real>(k: &[i64], dir: &[T]) -> T {
    k.iter()
        .zip(dir)
        .map(|(&ki, &di)| from_f64::<T>(ki as f64) * di)
        .fold(T::zero(), |a, b| a + b)
}

/// `S^s T^t x`: translation by `s·s_dir + t·t_dir`, componentwise mod 1.
pub fn flow_apply<T: Real>(sys: &FlowPair<T>, x: &TorusPoint<T>, s: T, t: T) -> TorusPoint<T> {
    assert_eq!(
        sys.dimension(),
        x.dimension(),
        "flow and point dimension mismatch"
    );
    TorusPoint::new(
        x.coordinates()
            .iter()
            .zip(sys.s_dir.iter().zip(&sys.t_dir))
            .map(|(&xi, (&si, &ti))| xi + s * si + t * ti)
            .collect(),
    )
}
