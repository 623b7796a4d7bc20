//! Closed-form dynamics of free-particle Gaussian wave packets, with
//! independent numerical machinery to cross-check every formula.
//!
//! The library covers five connected stories:
//!
//! * [`gaussian`]: the analytic wavefunction of a (possibly squeezed)
//!   Gaussian packet under free evolution, its moments, spreading law,
//!   and characteristic times.
//! * [`propagator`]: grid-based propagation by two unrelated numerical
//!   routes (spectral and direct kernel quadrature), plus moment
//!   extraction from sampled fields. These exist to confirm the closed
//!   forms rather than to replace them.
//! * [`thermal`]: velocity-ensemble averages at temperature T, the
//!   mixed-state density matrix, and a Monte Carlo estimator that checks
//!   the averaged closed forms.
//! * [`quantum_limit`]: the position-variance floor reachable after a
//!   free flight of duration t, with and without squeezing, verified by
//!   direct numerical minimization.
//! * [`decoherence`]: two-packet superpositions, thermal attenuation of
//!   their interference term, and the decoherence timescale.
//!
//! Formulas are exact, not series approximations, so tests hold them to
//! tolerances near machine precision against the numerical routes.
//!
//! Units are caller-chosen through [`units::Constants`]: either CGS values
//! of hbar and k_B or the dimensionless pair (1, 1).

// Validation uses negated comparisons like !(sigma > 0.0) on purpose: the
// negation rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decoherence;
pub mod error;
pub mod gaussian;
pub mod propagator;
pub mod quantum_limit;
pub mod thermal;
pub mod units;

pub use error::{Error, Result};
