//! Numerical laboratory for time-scale concentration over the hyperbolic plane.
//!
//! The crate computes continuous wavelet transforms with power-law (Cauchy-type)
//! windows, identifies them with weighted Bergman spaces of the upper half-plane
//! and the unit disc, and measures how much transform mass a signal can
//! concentrate on a set of prescribed hyperbolic measure. The sharp envelope
//! `theta(s) = 1 - (1 + s/pi)^{-1-alpha}` is attained exactly by reproducing
//! kernels on pseudohyperbolic discs; everything here exists to compute, test
//! and stress that statement at desk scale:
//!
//! - [`specfun`]: log-gamma, generalized Laguerre polynomials, regularized
//!   incomplete beta, monomial norms and window normalization constants.
//! - [`geometry`]: the two conformal models, Cayley maps, pseudohyperbolic
//!   metric and discs, hyperbolic measures, the affine group action.
//! - [`quadrature`]: deterministic Gauss-Jacobi polar grids on the disc and
//!   generalized Gauss-Laguerre rules on the frequency axis.
//! - [`bergman`]: inner products, reproducing kernels, the half-plane/disc
//!   isomorphism and Galerkin (Toeplitz) matrices of domain restrictions.
//! - [`wavelet`]: Hardy-space signals, the window family, wavelet and Bergman
//!   transforms, Laguerre eigenfunctions and extremizer signals.
//! - [`concentration`]: concentration ratios, the sharp envelope, level-set
//!   rearrangement machinery, isoperimetric audits and the Lebesgue-constraint
//!   functionals with their demonstration sequences.
//! - [`sampling`]: seeded random test functions and domains for property
//!   suites.
//! - [`report`]: serializable reports and CSV emission helpers.

pub mod bergman;
pub mod concentration;
pub mod error;
pub mod wavelet;
pub mod geometry;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
