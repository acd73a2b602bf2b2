use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial orders. Variables are ranked by position: index 0 is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
    /// Negative degree reverse lexicographic: a local order, `1` is the largest monomial.
    LocalDs,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the first `k` variables.
    BlockElim(usize),
}

impl MonomialOrder {
    pub fn is_global(self) -> bool {
        !matches!(self, MonomialOrder::LocalDs)
    }

    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::LocalDs => deg(b).cmp(&deg(a)).then_with(|| revlex(a, b)),
            MonomialOrder::BlockElim(k) => {
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    /// Comparison with an arity check.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(a.arity(), b.arity()));
        }
        if let MonomialOrder::BlockElim(k) = self {
            if k > a.arity() {
                return Err(Error::ArityMismatch(k, a.arity()));
            }
        }
        Ok(self.cmp(a, b))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrLex => write!(f, "grlex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::LocalDs => write!(f, "ds"),
            MonomialOrder::BlockElim(k) => write!(f, "elim({k})"),
        }
    }
}

fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

// Same degree: the monomial with the smaller exponent in the last differing
// variable is larger.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    deg(a).cmp(&deg(b)).then_with(|| revlex(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn textbook_comparisons() {
        use MonomialOrder::*;
        assert_eq!(GrevLex.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        assert_eq!(LocalDs.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(Lex.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // x*z^2 vs y^3 separates grlex from grevlex
        assert_eq!(GrLex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(GrevLex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
        // elimination: anything with the first variable beats the rest
        assert_eq!(BlockElim(1).cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert!(BlockElim(4).compare(&m(&[1]), &m(&[0])).is_err());
        assert!(GrevLex.compare(&m(&[1]), &m(&[0, 1])).is_err());
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrLex),
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::LocalDs),
            (0usize..=3).prop_map(MonomialOrder::BlockElim),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(|v| Monomial::from_exponents(&v))
    }

    proptest! {
        #[test]
        fn total_and_antisymmetric(o in order(), a in mono(), b in mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn transitive(o in order(), a in mono(), b in mono(), c in mono()) {
            if o.cmp(&a, &b) != Ordering::Less && o.cmp(&b, &c) != Ordering::Less {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Less);
            }
        }

        #[test]
        fn multiplicative(o in order(), a in mono(), b in mono(), n in mono()) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&n), &b.mul(&n)));
        }

        #[test]
        fn local_prefers_low_degree(a in mono(), b in mono()) {
            if a.degree() < b.degree() {
                prop_assert_eq!(MonomialOrder::LocalDs.cmp(&a, &b), Ordering::Greater);
            }
        }
    }
}
