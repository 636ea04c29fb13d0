//! Exact laboratory for nested-floor identities over real algebraic numbers.
//!
//! * [`exact`]: rationals, integer polynomials, real algebraic numbers with
//!   isolating intervals, and canonical arithmetic in `Q[a]`.
//! * [`floor`]: certified floors and fractional parts of `n*x + c` and of
//!   nested bracket chains.
//! * [`identity`]: per-`n` and range checks of the identity families, the
//!   matching algebraic conditions, and their cross-validation.
//! * [`torus`]: orbit points on the 2-torus, exact band membership, line
//!   support, r(n) statistics and Weyl sums.

pub mod exact;
pub mod floor;
pub mod identity;
pub mod torus;

pub use exact::{AlgebraicReal, ExactError, FieldElement, IntPolynomial, Rational};
