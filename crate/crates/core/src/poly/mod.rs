//! Exact multivariate polynomials.

mod monomial;
mod order;
mod parse;
mod polynomial;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use polynomial::{Polynomial, Variables, MAX_VARIABLES};
