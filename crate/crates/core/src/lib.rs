//! Covariate shift, statistical sufficiency and class prior estimation.
//!
//! The crate has two halves that share one theme: what happens to the
//! covariate shift property when the information captured by the covariates
//! is reduced.
//!
//! * [`finite_space`] realizes binary classification on finite probability
//!   spaces, where sub-σ-algebras are partitions and every claim about
//!   conditional probabilities can be checked by enumeration. It verifies
//!   that covariate shift is inherited by a coarser information set exactly
//!   when the coarser set is statistically sufficient for the finer one.
//! * [`binormal`] is the analytic worked example: two equal-variance normal
//!   class-conditionals with a logistic posterior, where discretizing the
//!   covariate visibly breaks covariate shift and biases naive class prior
//!   estimates.
//!
//! On top of these, [`estimators`] implements standard class prior
//! estimators (probability average, classify & count, adjusted count,
//! mean matching, single-threshold discretization) and [`probing`]
//! implements prior estimation by aggregating an ensemble of cost-sensitive
//! classifiers over a cost grid.

// negated comparisons like !(m >= 0.0) are deliberate: they reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binormal;
pub mod error;
pub mod estimators;
pub mod finite_space;
pub mod normal;
pub mod probing;
pub mod quadrature;
pub mod samples;

pub use error::{Error, Result};

/// Default tolerance for probability comparisons in shift and sufficiency
/// predicates.
pub const DEFAULT_TOL: f64 = 1e-9;
