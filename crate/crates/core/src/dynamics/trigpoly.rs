//! Trigonometric polynomials on 𝕋^d: exact finite Fourier sums, the dense
//! subspace of observables used throughout the lab, with exact Koopman
//! action.

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynamics::flow::{FlowPair, TorusPoint};
use crate::error::{CoreError, Result};
use crate::scalar::{from_f64, unit_phase, Real};

/// `f(x) = Σ_k c_k e^{2πi k·x}` with finitely many integer frequencies
/// `k ∈ ℤ^d`. Coefficient arithmetic is exact: no sampling is involved.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial<T = f64> {
    dimension: usize,
    terms: BTreeMap<Vec<i64>, Complex<T>>,
}

impl<T: Real> TrigPolynomial<T> {
    pub fn zero(dimension: usize) -> Self {
        TrigPolynomial {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, c: Complex<T>) -> Self {
        Self::from_terms(dimension, vec![(vec![0; dimension], c)]).unwrap()
    }

    pub fn single_mode(k: Vec<i64>, c: Complex<T>) -> Self {
        let dimension = k.len();
        Self::from_terms(dimension, vec![(k, c)]).unwrap()
    }

    pub fn from_terms(dimension: usize, terms: Vec<(Vec<i64>, Complex<T>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            if k.len() != dimension {
                return Err(CoreError::config(format!(
                    "frequency vector {k:?} does not have dimension {dimension}"
                )));
            }
            let entry = map.entry(k).or_insert_with(|| Complex::new(T::zero(), T::zero()));
            *entry = *entry + c;
        }
        map.retain(|_, c: &mut Complex<T>| c.norm_sqr() > T::zero());
        Ok(TrigPolynomial {
            dimension,
            terms: map,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], Complex<T>)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, k: &[i64]) -> Complex<T> {
        self.terms
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Exact evaluation `Σ c_k e^{2πi k·x}`.
    pub fn eval(&self, x: &TorusPoint<T>) -> Complex<T> {
        assert_eq!(self.dimension, x.dimension(), "dimension mismatch");
        let mut acc = Complex::new(T::zero(), T::zero());
        for (k, c) in &self.terms {
            let phase: T = k
                .iter()
                .zip(x.coordinates())
                .map(|(&ki, &xi)| from_f64::<T>(ki as f64) * xi)
                .fold(T::zero(), |a, b| a + b);
            acc = acc + c * unit_phase(phase);
        }
        acc
    }

    /// Exact L²(𝕋^d) norm `(Σ|c_k|²)^{1/2}`.
    pub fn l2_norm(&self) -> T {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Coefficient-sum bound on the sup norm: `sup|f| ≤ Σ|c_k|`.
    pub fn sup_bound(&self) -> T {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a + b)
    }

    pub fn scale(&self, a: Complex<T>) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = *c * a;
        }
        out.terms.retain(|_, c| c.norm_sqr() > T::zero());
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut terms: Vec<(Vec<i64>, Complex<T>)> =
            self.terms.iter().map(|(k, &c)| (k.clone(), c)).collect();
        terms.extend(other.terms.iter().map(|(k, &c)| (k.clone(), c)));
        Self::from_terms(self.dimension, terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    /// Pointwise product, computed exactly as a coefficient convolution.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (k1, &c1) in &self.terms {
            for (k2, &c2) in &other.terms {
                let k: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                terms.push((k, c1 * c2));
            }
        }
        Self::from_terms(self.dimension, terms)
    }

    /// Complex conjugate: `c_k ↦ conj(c_{-k})`.
    pub fn conj(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.iter().map(|ki| -ki).collect(), c.conj()))
            .collect();
        Self::from_terms(self.dimension, terms).expect("dimension preserved")
    }

    /// `|f|² = f · conj(f)`: real-valued and nonnegative by construction.
    pub fn modulus_squared(&self) -> Self {
        self.mul(&self.conj()).expect("dimension preserved")
    }

    /// True when coefficients satisfy the Hermitian symmetry
    /// `c_{-k} = conj(c_k)` (so the polynomial is real-valued).
    pub fn is_real_valued(&self, tol: T) -> bool {
        self.terms.iter().all(|(k, c)| {
            let neg: Vec<i64> = k.iter().map(|ki| -ki).collect();
            (self.coefficient(&neg) - c.conj()).norm() <= tol
        })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dimension != other.dimension {
            return Err(CoreError::config(format!(
                "trig polynomial dimension mismatch: {} vs {}",
                self.dimension, other.dimension
            )));
        }
        Ok(())
    }
}

/// Koopman action `f ↦ f ∘ S^s T^t`: each coefficient picks up the phase
/// `e^{2πi k·(s·s_dir + t·t_dir)}`. Unitary: coefficient moduli unchanged.
pub fn koopman_apply<T: Real>(
    sys: &FlowPair<T>,
    f: &TrigPolynomial<T>,
    s: T,
    t: T,
) -> Result<TrigPolynomial<T>> {
    if f.dimension() != sys.dimension() {
        return Err(CoreError::config(format!(
            "polynomial dimension {} does not match flow dimension {}",
            f.dimension(),
            sys.dimension()
        )));
    }
    let terms = f
        .terms
        .iter()
        .map(|(k, &c)| {
            let theta = s * sys.s_frequency(k) + t * sys.t_frequency(k);
            (k.clone(), c * unit_phase(theta))
        })
        .collect();
    TrigPolynomial::from_terms(f.dimension(), terms)
}

// JSON schema: a list of {"k": [..], "re": .., "im": ..} entries.
#[derive(Serialize, Deserialize)]
struct TermJson {
    k: Vec<i64>,
    re: f64,
    im: f64,
}

impl<T: Real> Serialize for TrigPolynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(k, c)| TermJson {
                k: k.clone(),
                re: c.re.to_f64().unwrap_or(f64::NAN),
                im: c.im.to_f64().unwrap_or(f64::NAN),
            })
            .collect();
        entries.serialize(serializer)
    }
}

impl<'de, T: Real> Deserialize<'de> for TrigPolynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<TermJson>::deserialize(deserializer)?;
        let dimension = entries
            .first()
            .map(|e| e.k.len())
            .ok_or_else(|| D::Error::custom("trig polynomial needs at least one term"))?;
        let terms = entries
            .into_iter()
            .map(|e| (e.k, Complex::new(from_f64(e.re), from_f64(e.im))))
            .collect();
        TrigPolynomial::from_terms(dimension, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(seed: u64, n: usize) -> TrigPolynomial {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TrigPolynomial::from_terms(
            2,
            (0..n)
                .map(|_| {
                    (
                        vec![rng.gen_range(-4i64..=4), rng.gen_range(-4i64..=4)],
                        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    )
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn constants_are_invariant_under_koopman() {
        let sys = FlowPair::new(vec![0.3, 0.4], vec![0.1, 0.9]).unwrap();
        let f = TrigPolynomial::constant(2, Complex64::new(2.5, -1.0));
        let g = koopman_apply(&sys, &f, 0.77, -3.1).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn single_mode_picks_up_phase() {
        let sys = FlowPair::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        let f = TrigPolynomial::single_mode(vec![1, 0], Complex64::new(1.0, 0.0));
        let delta = 0.3;
        let g = koopman_apply(&sys, &f, delta, 0.0).unwrap();
        let expect = crate::scalar::unit_phase(delta);
        assert!((g.coefficient(&[1, 0]) - expect).norm() < 1e-15);
    }

    #[test]
    fn koopman_is_unitary() {
        let sys = FlowPair::new(vec![0.21, 0.67], vec![-0.4, 1.3]).unwrap();
        let f = random_poly(5, 12);
        let g = koopman_apply(&sys, &f, 1.234, -0.77).unwrap();
        assert!((f.l2_norm() - g.l2_norm()).abs() < 1e-14);
        for (k, c) in f.terms() {
            assert!((g.coefficient(k).norm() - c.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn eval_matches_koopman_composition() {
        let sys = FlowPair::new(vec![0.5, 0.25], vec![0.75, -0.5]).unwrap();
        let f = random_poly(9, 8);
        let x = TorusPoint::new(vec![0.17, 0.62]);
        let (s, t) = (0.83, 1.91);
        let moved = crate::dynamics::flow::flow_apply(&sys, &x, s, t);
        let composed = koopman_apply(&sys, &f, s, t).unwrap();
        assert!((f.eval(&moved) - composed.eval(&x)).norm() < 1e-12);
    }

    #[test]
    fn modulus_squared_is_real_and_nonnegative() {
        let f = random_poly(3, 6);
        let sq = f.modulus_squared();
        assert!(sq.is_real_valued(1e-14));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = TorusPoint::new(vec![rng.gen::<f64>(), rng.gen::<f64>()]);
            let v = sq.eval(&x);
            assert!(v.im.abs() < 1e-12);
            assert!(v.re >= -1e-12);
            let direct = f.eval(&x).norm_sqr();
            assert!((v.re - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn json_roundtrip_follows_schema() {
        let f = TrigPolynomial::from_terms(
            2,
            vec![
                (vec![1, -2], Complex64::new(0.5, 0.25)),
                (vec![0, 0], Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        let json = serde_json::to_value(&f).unwrap();
        assert!(json.as_array().unwrap().iter().all(|e| {
            e.get("k").is_some() && e.get("re").is_some() && e.get("im").is_some()
        }));
        let back: TrigPolynomial = serde_json::from_value(json).unwrap();
        assert_eq!(back, f);
    }
}
