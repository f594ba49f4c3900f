//! Exact-arithmetic evaluation of nested-sum representations of integer powers.
//!
//! The crate evaluates three proven representations of `x^n` (the
//! consecutive-power form, the telescoping form, and the mod-2 form whose
//! inner exponents all share the parity of `n`) together with the conjectural
//! mod-3 form built from triple sums and a quadratic tail polynomial. All
//! arithmetic is arbitrary-precision and exact; there is no floating point
//! anywhere in the evaluation paths.
//!
//! Modules:
//! - [`exactnum`]: bigint/rational plumbing, factorial cache, binomials.
//! - [`powersum`]: single/double/triple power sums with naive and
//!   prefix-table backends, plus bigint operation counters.
//! - [`identities`]: the proven representations and their term-level
//!   decompositions, extended to negative bases by the parity rule.
//! - [`coefficients`]: exact rational checks of the alternating
//!   reciprocal-factorial sums behind the mod-2 coefficients.
//! - [`fermat`]: the prime-power congruence `x^p ≡ x (mod p)` as an exact
//!   divisibility witness.
//! - [`conjecture`]: the mod-3 representation, tail polynomials, and the
//!   grid-search harness with JSON/CSV reports.
//! - [`cli`]: the command-line surface.

pub mod cli;
pub mod coefficients;
pub mod conjecture;
pub mod exactnum;
pub mod fermat;
pub mod identities;
pub mod powersum;

mod error;
mod range;

pub use error::Error;
pub use range::IntRange;

pub use exactnum::{binomial, factorial, pow_int};
pub use powersum::{Backend, OpCounter};
