//! Monomials, orders, rings, sparse polynomials and their text form.

mod divide;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use divide::poly_divmod;
pub(crate) use divide::reduce;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_rational};
pub use polynomial::Poly;
pub use ring::PolyRing;

use std::cmp::Ordering;

use crate::error::Result;

/// Compares two monomials under `order`, checking arity.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    order.compare(a, b)
}
