//! Mora's tangent cone algorithm for the local order `ds`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Weak normal form of `g` with respect to `basis` in the local ring.
///
/// The result `h` satisfies `u*g - h ∈ (basis)` for a unit `u`, and is zero or has a
/// leading monomial outside the leading ideal of `basis`.
pub fn mora_normal_form<F: Field>(g: &Poly<F>, basis: &[Poly<F>]) -> Result<Poly<F>> {
    if g.ring().order().is_global() {
        return Err(Error::GlobalOrderUnsupported);
    }
    Ok(nf_mora(g, basis))
}

pub(crate) fn nf_mora<F: Field>(g: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    let mut h = g.clone();
    let mut t: Vec<Poly<F>> = basis.iter().filter(|b| !b.is_zero()).cloned().collect();
    loop {
        let Some(lm) = h.leading_monomial() else { return h };
        let choice = t
            .iter()
            .enumerate()
            .filter(|(_, b)| b.leading_monomial().unwrap().divides(lm))
            .min_by_key(|(k, b)| (b.ecart(), *k))
            .map(|(k, _)| k);
        let Some(k) = choice else { return h };
        let red = t[k].clone();
        if red.ecart() > h.ecart() {
            t.push(h.clone());
        }
        let q = red.leading_monomial().unwrap().div(lm).unwrap();
        let c = h.leading_coeff().unwrap().div(red.leading_coeff().unwrap());
        h.sub_mul_term(&c, &q, &red);
    }
}

/// Standard basis for the local order: monic, minimal, sorted by increasing leading monomial.
pub fn local_standard_basis<F: Field>(gens: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if ring.order().is_global() {
        return Err(Error::GlobalOrderUnsupported);
    }
    let order = ring.order();
    let mut s: Vec<Poly<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |s: &mut Vec<Poly<F>>, pairs: &mut Vec<(usize, usize)>, h: Poly<F>| {
        let h = h.monic();
        let j = s.len();
        for i in 0..j {
            let (a, b) = (s[i].leading_monomial().unwrap(), h.leading_monomial().unwrap());
            if !a.is_coprime(b) {
                pairs.push((i, j));
            }
        }
        s.push(h);
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let h = nf_mora(g, &s);
        if !h.is_zero() {
            if h.leading_monomial().unwrap().is_one() {
                return Ok(vec![Poly::one(&ring)]);
            }
            push(&mut s, &mut pairs, h);
        }
    }
    while !pairs.is_empty() {
        // smallest lcm degree first keeps ecarts small
        let best = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                let l = s[i].leading_monomial().unwrap().lcm(s[j].leading_monomial().unwrap());
                (l.degree(), j, i)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let (f, g) = (&s[i], &s[j]);
        let lcm = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
        let mf = f.leading_monomial().unwrap().div(&lcm).unwrap();
        let mg = g.leading_monomial().unwrap().div(&lcm).unwrap();
        let mut sp = f.mul_term(&mf, g.leading_coeff().unwrap());
        sp.sub_mul_term(f.leading_coeff().unwrap(), &mg, g);
        let h = nf_mora(&sp, &s);
        if !h.is_zero() {
            if h.leading_monomial().unwrap().is_one() {
                return Ok(vec![Poly::one(&ring)]);
            }
            push(&mut s, &mut pairs, h);
        }
    }
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for (k, g) in s.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = s.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder, PolyRing};

    #[test]
    fn unit_factors_disappear() {
        let r = PolyRing::new(&["x"], MonomialOrder::LocalDs).unwrap();
        let sb = local_standard_basis(&[parse_poly("x - x^2", &r).unwrap()]).unwrap();
        assert_eq!(sb.len(), 1);
        assert_eq!(sb[0].leading_monomial().unwrap().exponents(), &[1]);
        let x = parse_poly("x", &r).unwrap();
        assert!(mora_normal_form(&x, &sb).unwrap().is_zero());
        let x3 = parse_poly("x^3", &r).unwrap();
        assert!(mora_normal_form(&x3, &[parse_poly("x^2", &r).unwrap()]).unwrap().is_zero());
    }

    #[test]
    fn leading_ideal_of_local_basis() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::LocalDs).unwrap();
        let gens = [parse_poly("x^2 + x^3", &r).unwrap(), parse_poly("y", &r).unwrap()];
        let sb = local_standard_basis(&gens).unwrap();
        let mut lms: Vec<_> = sb.iter().map(|g| g.leading_monomial().unwrap().exponents().to_vec()).collect();
        lms.sort();
        assert_eq!(lms, vec![vec![0, 1], vec![2, 0]]);
        let x2 = parse_poly("x^2", &r).unwrap();
        assert!(mora_normal_form(&x2, &sb).unwrap().is_zero());
    }

    #[test]
    fn global_order_rejected() {
        let r = PolyRing::new(&["x"], MonomialOrder::GrevLex).unwrap();
        let x = parse_poly("x", &r).unwrap();
        assert_eq!(mora_normal_form(&x, &[]), Err(Error::GlobalOrderUnsupported));
    }
}
