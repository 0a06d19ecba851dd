//! Special-function kernels.
//!
//! Everything here is a pure function of its arguments. Gamma ratios are
//! assembled in log space so that dimensions up to ~20 never overflow.

mod beta;
mod gamma;
mod hyp2f1;
mod legendre;

pub use beta::{reg_inc_beta, reg_inc_beta_with};
pub use gamma::{
    complex_gamma, complex_ln_gamma, gamma, gamma_ratio, ln_beta, ln_gamma, pochhammer,
};
pub use hyp2f1::{hyp2f1, hyp2f1_with, hyp2f1_with_complement};
pub use legendre::{legendre_p, legendre_p_at_ratio};

use crate::error::{Error, Result};

/// Complex numbers as used by the characteristic exponent.
pub type ComplexValue = num_complex::Complex64;

/// Accuracy and effort limits shared by the series and quadrature kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPrecision {
    /// Target relative tolerance, in `(0, 1e-3]`.
    pub rel_tol: f64,
    /// Maximum number of series terms before a kernel gives up.
    pub max_terms: usize,
    /// Maximum number of interval bisections in adaptive quadrature.
    pub max_quad_subdivisions: usize,
    /// Argument above which `₂F₁` stops summing its power series directly.
    pub z_switch: f64,
}

impl Default for EvalPrecision {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000,
            max_quad_subdivisions: 4_000,
            z_switch: 0.5,
        }
    }
}

impl EvalPrecision {
    pub fn new(rel_tol: f64, max_terms: usize, max_quad_subdivisions: usize) -> Result<Self> {
        Self {
            rel_tol,
            max_terms,
            max_quad_subdivisions,
            ..Self::default()
        }
        .validated()
    }

    /// Default precision with a different relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        Self {
            rel_tol,
            ..Self::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::Config(format!(
                "rel_tol must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 64 {
            return Err(Error::Config(format!(
                "max_terms must be at least 64, got {}",
                self.max_terms
            )));
        }
        if self.max_quad_subdivisions == 0 {
            return Err(Error::Config("max_quad_subdivisions must be positive".into()));
        }
        if !(self.z_switch > 0.0 && self.z_switch < 1.0) {
            return Err(Error::Config(format!(
                "z_switch must lie in (0, 1), got {}",
                self.z_switch
            )));
        }
        Ok(self)
    }
}

/// True when `x` is zero or a negative integer.
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}
