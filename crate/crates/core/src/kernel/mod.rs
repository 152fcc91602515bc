//! Exact coefficients, monomials, monomial orders and polynomials.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{Field, FieldKind, PrimeField, Rationals, Q};
pub use monomial::{Exponents, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{Bidegree, Polynomial};
pub use ring::{Budget, Grading, Ring};

#[cfg(test)]
mod tests;
