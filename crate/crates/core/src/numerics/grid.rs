//! Periodic planar grids, sampled complex functions on them, and their
//! discrete Fourier transforms.
//!
//! Conventions: samples live at the left endpoints `(i·h_u, j·h_v)` of a
//! uniform grid on `[0, P_u) × [0, P_v)`, stored row-major with the `u`
//! index outermost. Spectral coefficients are Fourier-series coefficients
//! (forward DFT divided by `n_u·n_v`), so that the physical frequency of
//! storage index `i` is `wrap(i) / period`. Discrete norms use the cell
//! weight `h_u·h_v`, which makes Parseval exact at the discrete level.

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::scalar::{from_f64, unit_phase, Real};

/// Uniform periodic grid on `[0, P_u) × [0, P_v)` with power-of-two sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D<T = f64> {
    period_u: T,
    period_v: T,
    n_u: usize,
    n_v: usize,
}

impl<T: Real> Grid2D<T> {
    pub fn new(period_u: T, period_v: T, n_u: usize, n_v: usize) -> Result<Self> {
        if !(period_u > T::zero()) || !(period_v > T::zero()) {
            return Err(CoreError::config("grid periods must be positive"));
        }
        for (name, n) in [("n_u", n_u), ("n_v", n_v)] {
            if n < 2 || !n.is_power_of_two() {
                return Err(CoreError::config(format!(
                    "{name} = {n} must be a power of two and at least 2"
                )));
            }
        }
        Ok(Grid2D {
            period_u,
            period_v,
            n_u,
            n_v,
        })
    }

    pub fn period_u(&self) -> T {
        self.period_u
    }

    pub fn period_v(&self) -> T {
        self.period_v
    }

    pub fn n_u(&self) -> usize {
        self.n_u
    }

    pub fn n_v(&self) -> usize {
        self.n_v
    }

    pub fn spacing_u(&self) -> T {
        self.period_u / from_f64(self.n_u as f64)
    }

    pub fn spacing_v(&self) -> T {
        self.period_v / from_f64(self.n_v as f64)
    }

    /// Area weight of one grid cell.
    pub fn cell_area(&self) -> T {
        self.spacing_u() * self.spacing_v()
    }

    pub fn len(&self) -> usize {
        self.n_u * self.n_v
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical coordinates of sample `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> (T, T) {
        (
            self.spacing_u() * from_f64(i as f64),
            self.spacing_v() * from_f64(j as f64),
        )
    }

    /// Signed integer frequency for storage index `i` of an axis of size `n`.
    /// The Nyquist index maps to `-n/2`.
    pub fn wrap_index(i: usize, n: usize) -> i64 {
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Physical frequency along `u` for storage index `i` (cycles per unit).
    pub fn freq_u(&self, i: usize) -> T {
        from_f64::<T>(Self::wrap_index(i, self.n_u) as f64) / self.period_u
    }

    /// Physical frequency along `v` for storage index `j`.
    pub fn freq_v(&self, j: usize) -> T {
        from_f64::<T>(Self::wrap_index(j, self.n_v) as f64) / self.period_v
    }

    /// Storage index for a signed integer frequency, if representable.
    pub fn storage_index(k: i64, n: usize) -> Option<usize> {
        let half = (n / 2) as i64;
        if k >= 0 && k < half {
            Some(k as usize)
        } else if k >= -half && k < 0 {
            Some((k + n as i64) as usize)
        } else {
            None
        }
    }

    /// Wraps a coordinate into the centered fundamental domain
    /// `[-P/2, P/2)` of the given period.
    pub fn center_coordinate(x: T, period: T) -> T {
        let half = period / from_f64(2.0);
        let mut y = x % period;
        if y < -half {
            y = y + period;
        }
        if y >= half {
            y = y - period;
        }
        y
    }
}

/// Complex function sampled on a [`Grid2D`], periodic extension implied.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2D<T = f64> {
    grid: Grid2D<T>,
    samples: Vec<Complex<T>>,
}

impl<T: Real> GridFunction2D<T> {
    pub fn new(grid: Grid2D<T>, samples: Vec<Complex<T>>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(CoreError::config(format!(
                "sample count {} does not match grid size {}",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(CoreError::domain("grid function contains non-finite samples"));
        }
        Ok(GridFunction2D { grid, samples })
    }

    pub fn zero(grid: Grid2D<T>) -> Self {
        GridFunction2D {
            samples: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            grid,
        }
    }

    /// Samples `f` at the grid points.
    pub fn from_fn(grid: Grid2D<T>, mut f: impl FnMut(T, T) -> Complex<T>) -> Self {
        let mut samples = Vec::with_capacity(grid.len());
        for i in 0..grid.n_u() {
            for j in 0..grid.n_v() {
                let (u, v) = grid.point(i, j);
                samples.push(f(u, v));
            }
        }
        GridFunction2D { grid, samples }
    }

    /// Builds the function `Σ c·e^{2πi(k₁ u/P_u + k₂ v/P_v)}` from a sparse
    /// list of integer modes.
    pub fn from_modes(grid: Grid2D<T>, modes: &[(i64, i64, Complex<T>)]) -> Result<Self> {
        let mut spectrum = Spectrum2D::zero(grid);
        for &(k1, k2, c) in modes {
            let i = Grid2D::<T>::storage_index(k1, grid.n_u()).ok_or_else(|| {
                CoreError::config(format!("mode k1 = {k1} not representable on grid"))
            })?;
            let j = Grid2D::<T>::storage_index(k2, grid.n_v()).ok_or_else(|| {
                CoreError::config(format!("mode k2 = {k2} not representable on grid"))
            })?;
            let idx = i * grid.n_v() + j;
            spectrum.coefficients[idx] = spectrum.coefficients[idx] + c;
        }
        Ok(dft_inverse(&spectrum))
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.samples
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.samples[i * self.grid.n_v() + j]
    }

    /// Riemann-sum L^p norm with cell weight `h_u·h_v`; `p = ∞` is the max
    /// absolute sample.
    pub fn lp_norm(&self, p: T) -> Result<T> {
        if p.is_infinite() && p > T::zero() {
            return Ok(self
                .samples
                .iter()
                .map(|z| z.norm())
                .fold(T::zero(), T::max));
        }
        if p < T::one() {
            return Err(CoreError::domain(format!("lp_norm requires p >= 1, got {p}")));
        }
        let sum: T = self.samples.iter().map(|z| z.norm().powf(p)).sum();
        Ok((sum * self.grid.cell_area()).powf(T::one() / p))
    }

    pub fn scale(&self, a: Complex<T>) -> Self {
        GridFunction2D {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * a).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if self.grid != other.grid {
            return Err(CoreError::config("grid mismatch in pointwise operation"));
        }
        Ok(GridFunction2D {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

/// Discrete Fourier coefficients of a [`GridFunction2D`], FFT storage order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2D<T = f64> {
    grid: Grid2D<T>,
    coefficients: Vec<Complex<T>>,
}

impl<T: Real> Spectrum2D<T> {
    pub fn zero(grid: Grid2D<T>) -> Self {
        Spectrum2D {
            coefficients: vec![Complex::new(T::zero(), T::zero()); grid.len()],
            grid,
        }
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    pub fn coefficients(&self) -> &[Complex<T>] {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coefficients
    }

    /// Coefficient at signed integer frequency pair `(k1, k2)`.
    pub fn coeff(&self, k1: i64, k2: i64) -> Option<Complex<T>> {
        let i = Grid2D::<T>::storage_index(k1, self.grid.n_u())?;
        let j = Grid2D::<T>::storage_index(k2, self.grid.n_v())?;
        Some(self.coefficients[i * self.grid.n_v() + j])
    }

    /// Spectral L² norm `(P_u P_v Σ|c|²)^{1/2}`; equals the spatial L² norm
    /// by the discrete Parseval identity.
    pub fn l2_norm(&self) -> T {
        let sum: T = self.coefficients.iter().map(|z| z.norm_sqr()).sum();
        (sum * self.grid.period_u() * self.grid.period_v()).sqrt()
    }

    /// Multiplies coefficients by `e^{2πi a ξ₁}`: the spectrum of
    /// `(x, y) ↦ f(x + a, y)`.
    pub fn shifted_u(&self, a: T) -> Self {
        let mut out = self.clone();
        out.shift_u_in_place(a);
        out
    }

    pub fn shift_u_in_place(&mut self, a: T) {
        let n_v = self.grid.n_v();
        for i in 0..self.grid.n_u() {
            let phase = unit_phase(a * self.grid.freq_u(i));
            for j in 0..n_v {
                let idx = i * n_v + j;
                self.coefficients[idx] = self.coefficients[idx] * phase;
            }
        }
    }

    /// Multiplies coefficients by `e^{2πi a ξ₂}`: the spectrum of
    /// `(x, y) ↦ f(x, y + a)`.
    pub fn shifted_v(&self, a: T) -> Self {
        let mut out = self.clone();
        out.shift_v_in_place(a);
        out
    }

    pub fn shift_v_in_place(&mut self, a: T) {
        let n_v = self.grid.n_v();
        let phases: Vec<Complex<T>> = (0..n_v)
            .map(|j| unit_phase(a * self.grid.freq_v(j)))
            .collect();
        for i in 0..self.grid.n_u() {
            for j in 0..n_v {
                let idx = i * n_v + j;
                self.coefficients[idx] = self.coefficients[idx] * phases[j];
            }
        }
    }
}

/// Cached FFT plans for one grid shape.
pub struct Fft2D<T: Real> {
    n_u: usize,
    n_v: usize,
    fwd_u: Arc<dyn Fft<T>>,
    inv_u: Arc<dyn Fft<T>>,
    fwd_v: Arc<dyn Fft<T>>,
    inv_v: Arc<dyn Fft<T>>,
}

impl<T: Real> Fft2D<T> {
    pub fn new(grid: &Grid2D<T>) -> Self {
        let mut planner = FftPlanner::new();
        Fft2D {
            n_u: grid.n_u(),
            n_v: grid.n_v(),
            fwd_u: planner.plan_fft_forward(grid.n_u()),
            inv_u: planner.plan_fft_inverse(grid.n_u()),
            fwd_v: planner.plan_fft_forward(grid.n_v()),
            inv_v: planner.plan_fft_inverse(grid.n_v()),
        }
    }

    fn transform(&self, data: &mut [Complex<T>], forward: bool) {
        let (op_v, op_u) = if forward {
            (&self.fwd_v, &self.fwd_u)
        } else {
            (&self.inv_v, &self.inv_u)
        };
        // rows: contiguous slices of length n_v
        for row in data.chunks_exact_mut(self.n_v) {
            op_v.process(row);
        }
        // columns: gather, transform, scatter
        let mut col = vec![Complex::new(T::zero(), T::zero()); self.n_u];
        for j in 0..self.n_v {
            for i in 0..self.n_u {
                col[i] = data[i * self.n_v + j];
            }
            op_u.process(&mut col);
            for i in 0..self.n_u {
                data[i * self.n_v + j] = col[i];
            }
        }
    }

    pub fn forward(&self, f: &GridFunction2D<T>) -> Spectrum2D<T> {
        let mut coefficients = f.samples.clone();
        self.transform(&mut coefficients, true);
        let scale = T::one() / from_f64::<T>((self.n_u * self.n_v) as f64);
        for c in &mut coefficients {
            *c = c.scale(scale);
        }
        Spectrum2D {
            grid: f.grid,
            coefficients,
        }
    }

    pub fn inverse(&self, s: &Spectrum2D<T>) -> GridFunction2D<T> {
        let mut samples = s.coefficients.clone();
        self.transform(&mut samples, false);
        GridFunction2D {
            grid: s.grid,
            samples,
        }
    }
}

/// Forward DFT: Fourier-series coefficients of the sampled function.
pub fn dft_forward<T: Real>(f: &GridFunction2D<T>) -> Spectrum2D<T> {
    Fft2D::new(f.grid()).forward(f)
}

/// Inverse DFT, the exact inverse of [`dft_forward`] up to roundoff.
pub fn dft_inverse<T: Real>(s: &Spectrum2D<T>) -> GridFunction2D<T> {
    Fft2D::new(s.grid()).inverse(s)
}
