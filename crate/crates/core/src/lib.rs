//! Exact computation of Hilbert-Samuel and mixed multiplicities of ideals in
//! local rings, generalized Lelong numbers of curve germs, and multiplicities
//! of Grauert blow-downs of negative line bundles over Riemann surfaces.
//!
//! Algebraic code is generic over the coefficient [`Field`]; the aliases
//! below fix it to arbitrary precision rationals, which is what the command
//! line tool uses.
//!
//! ```
//! use mixmult::{multiplicity::hs_multiplicity, Ideal};
//!
//! let m = Ideal::parse(&["x", "y"], &["x", "y"])?;
//! let cusp = Ideal::parse(&["x", "y"], &["y^2 - x^3"])?;
//! let report = hs_multiplicity(&m, Some(&cusp), None)?;
//! assert_eq!(report.value, 2);
//! # Ok::<(), mixmult::Error>(())
//! ```

pub mod blowdown;
pub mod chern;
pub mod curve;
pub mod error;
pub mod ideal;
pub mod monomial_ideal;
pub mod multiplicity;
pub mod poly;
pub mod scalar;

pub use error::{Error, ErrorKind, Result};
pub use poly::{Monomial, OrderKind, TermOrder, Variables};
pub use scalar::Field;

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials over [`Rational`].
pub type Poly = poly::Polynomial<Rational>;
/// Ideals over [`Rational`].
pub type Ideal = ideal::IdealPresentation<Rational>;
