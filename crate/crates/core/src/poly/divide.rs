use super::polynomial::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// Multivariate division with remainder under the ring's (global) order.
///
/// Returns quotients `q_i` and remainder `r` with `g = Σ q_i d_i + r`, where no
/// monomial of `r` is divisible by a leading monomial of a divisor.
pub fn poly_divmod<F: Field>(g: &Poly<F>, divisors: &[Poly<F>]) -> Result<(Vec<Poly<F>>, Poly<F>)> {
    let ring = g.ring();
    if !ring.order().is_global() {
        return Err(Error::LocalOrderUnsupported);
    }
    if divisors.iter().any(|d| !d.same_ring(g)) {
        return Err(Error::RingMismatch);
    }
    if divisors.iter().any(|d| d.is_zero()) {
        return Err(Error::InvalidInput("zero divisor in division".into()));
    }
    let mut quotients: Vec<Vec<_>> = vec![Vec::new(); divisors.len()];
    let mut rem = Vec::new();
    let mut p = g.clone();
    while let Some((lm, lc)) = p.terms().first().cloned() {
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(i, d)| d.leading_monomial().unwrap().div(&lm).map(|q| (i, q)));
        match hit {
            Some((i, q)) => {
                let c = lc.div(divisors[i].leading_coeff().unwrap());
                p.sub_mul_term(&c, &q, &divisors[i]);
                quotients[i].push((q, c));
            }
            None => {
                rem.push((lm, lc));
                p = Poly::from_terms(ring, p.terms()[1..].to_vec());
            }
        }
    }
    let quotients = quotients.into_iter().map(|t| Poly::from_terms(ring, t)).collect();
    Ok((quotients, Poly::from_terms(ring, rem)))
}

/// Fully reduced remainder of `g` modulo `basis` (global orders only).
pub(crate) fn reduce<F: Field>(g: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let ring = g.ring();
    let mut rem = Vec::new();
    let mut p = g.clone();
    loop {
        let Some((lm, lc)) = p.terms().first() else { break };
        let hit = basis
            .iter()
            .find_map(|d| d.leading_monomial().unwrap().div(lm).map(|q| (d, q)));
        match hit {
            Some((d, q)) => {
                let c = lc.div(d.leading_coeff().unwrap());
                p.sub_mul_term(&c, &q, d);
            }
            None => {
                let mut terms = p.into_terms();
                let head = terms.remove(0);
                rem.push(head);
                p = Poly::from_terms(ring, terms);
            }
        }
    }
    Poly::from_terms(ring, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder, PolyRing};

    #[test]
    fn worked_divisions() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        let p = |s| parse_poly(s, &r).unwrap();
        let (q, rem) = poly_divmod(&p("x^2*y + 1"), &[p("x*y - 1")]).unwrap();
        assert_eq!(q, vec![p("x")]);
        assert_eq!(rem, p("x + 1"));
        let (q, rem) = poly_divmod(&p("x"), &[p("x")]).unwrap();
        assert_eq!((q[0].clone(), rem.is_zero()), (p("1"), true));
        let (q, rem) = poly_divmod(&p("y"), &[p("x^2")]).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(rem, p("y"));
    }

    #[test]
    fn local_order_rejected() {
        let r = PolyRing::new(&["x"], MonomialOrder::LocalDs).unwrap();
        let x = parse_poly("x", &r).unwrap();
        assert_eq!(poly_divmod(&x, &[x.clone()]), Err(Error::LocalOrderUnsupported));
    }
}
