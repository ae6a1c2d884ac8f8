//! Shared numerics: periodic grids and discrete Fourier analysis, norms,
//! 1-D quadrature, closed-form quadratic-phase integrals, and power-law
//! fitting.

pub mod fit;
pub mod grid;
pub mod oscillatory;
pub mod quadrature;
pub mod weak;

pub use fit::{fit_power_law, spearman_rho, FitResult};
pub use grid::{dft_forward, dft_inverse, Fft2D, Grid2D, GridFunction2D, Spectrum2D};
pub use oscillatory::{fresnel_e, phase_integral, phase_integral_between};
pub use quadrature::{gauss_legendre, integrate_1d, QuadratureRule};
pub use weak::weak_l1_norm;
