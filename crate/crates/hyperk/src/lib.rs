//! Branch-aware evaluation of the Gauss hypergeometric function and the
//! complete elliptic integral, symbolic Pfaffian chains, the modular
//! lambda and j invariants, and certified rational point counting.
//!
//! Start with the examples directory; each file there is a small runnable
//! tour of one capability:
//!
//! * `f21_values` evaluates the hypergeometric series and cross-checks the
//!   integral representation,
//! * `elliptic_k` walks the evaluation regions of `k_principal`,
//! * `branch_crossing` and `monodromy_loop` follow K across and around the
//!   cut with explicit sheet bookkeeping,
//! * `pfaffian_chains` builds chains symbolically and integrates them,
//! * `riccati_chain` turns a Riccati equation into a Noetherian pair,
//! * `modular_values` computes lambda(tau) and j(tau),
//! * `count_points` runs a rational point count with certified enclosures.

pub mod cli;
pub mod complex;
pub mod counting;
pub mod elliptic;
pub mod error;
pub mod gamma;
pub mod hyp2f1;
pub mod modular;
pub mod ode;
pub mod path;
pub mod pfaffian;
pub mod quadrature;

pub use complex::{branch_sqrt, principal_log, BranchedLog, ComplexValue, SqrtBranch};
pub use counting::{
    count_rational_points, enumerate_rationals, fit_growth, height, CountReport, RationalNumber,
};
pub use error::{Error, Result};
pub use path::{MonodromyMatrix, PathSpec};
