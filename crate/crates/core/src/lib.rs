//! Exact computation of singularity invariants of polynomial map germs.
//!
//! The crate is layered: [`poly`] holds exact sparse polynomials, [`ideal`] the
//! Gröbner/standard basis engine and ideal arithmetic, [`singlocal`] the classical
//! local invariants, [`charclass`] limit cycles, Segre and Chern–Schwartz–MacPherson
//! classes, and [`constructible`] constructible functions built from them.

pub mod error;
pub mod field;
pub mod generic;
pub mod ideal;
pub mod poly;
pub mod singlocal;
pub mod charclass;
pub mod constructible;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use generic::Genericity;
pub use ideal::Ideal;
pub use poly::{parse_poly, Monomial, MonomialOrder, Poly, PolyRing};
