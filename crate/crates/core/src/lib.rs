//! Closed-form laws of the hypergeometric-stable Lévy process.
//!
//! The process `ξ` is obtained by writing the radial part `R = ‖Z‖` of a
//! `d`-dimensional symmetric `α`-stable process as `R_t = exp(ξ_{τ(t)})`.
//! This crate evaluates its Lévy measure, Wiener–Hopf factors, exit and
//! hitting laws, and ships an independent Monte-Carlo engine that simulates
//! `Z` directly so the closed forms can be checked against sample paths.
//!
//! Module map:
//!
//! * [`specfun`]: gamma, Pochhammer, Gauss `₂F₁`, Legendre `P^μ_ν`, incomplete beta.
//! * [`quad`]: adaptive Gauss–Kronrod quadrature with endpoint-singularity helpers.
//! * [`model`]: process parameters, Lévy density, drift, numeric characteristic exponent.
//! * [`fluctuation`]: ladder exponents, renewal densities, closed-form exponent.
//! * [`passage`]: exit, infimum, point-hitting, n-tuple and potential laws.
//! * [`sim`]: Monte-Carlo simulation of the stable process and empirical laws.

pub mod error;
pub mod fluctuation;
pub mod model;
pub mod passage;
pub mod quad;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};
pub use model::{LevyCharacteristics, ProcessParams, Regime};
pub use specfun::{ComplexValue, EvalPrecision};
