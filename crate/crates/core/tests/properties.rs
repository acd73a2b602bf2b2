use std::sync::Arc;

use proptest::prelude::*;
use singclass::ideal::{intersect, saturate};
use singclass::poly::poly_divmod;
use singclass::{Field, Ideal, Monomial, MonomialOrder, Poly, PolyRing, Rational};

fn ring() -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap()
}

fn poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform3(0..=max_deg), -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(
        |terms| {
            let r = ring();
            let terms = terms
                .into_iter()
                .map(|(e, n, d)| (Monomial::from_exponents(&e), Rational::new(n, d)))
                .collect();
            Poly::from_terms(&r, terms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in poly(4, 3), b in poly(4, 3), c in poly(4, 3)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Poly::one(&ring())), a.clone());
    }

    #[test]
    fn print_then_parse(a in poly(6, 4)) {
        let back = Poly::parse(&a.to_string(), &ring()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(4, 3), b in poly(4, 3), p in prop::array::uniform3(-5i64..=5)) {
        let p: Vec<Rational> = p.iter().map(|&c| Rational::from(c)).collect();
        prop_assert_eq!(a.mul(&b).eval(&p), a.eval(&p).mul(&b.eval(&p)));
        prop_assert_eq!(a.add(&b).eval(&p), a.eval(&p).add(&b.eval(&p)));
    }

    #[test]
    fn division_reconstructs(g in poly(6, 4), ds in prop::collection::vec(poly(3, 2), 1..4)) {
        let ds: Vec<Poly> = ds.into_iter().filter(|d| !d.is_zero()).collect();
        prop_assume!(!ds.is_empty());
        let (q, r) = poly_divmod(&g, &ds).unwrap();
        let back = q.iter().zip(&ds).fold(r.clone(), |acc, (qi, d)| acc.add(&qi.mul(d)));
        prop_assert_eq!(back, g);
        for (m, _) in r.terms() {
            prop_assert!(ds.iter().all(|d| !d.leading_monomial().unwrap().divides(m)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn reduced_basis_is_canonical(f in poly(3, 2), g in poly(3, 2), c in 1i64..5) {
        let r = ring();
        let i = Ideal::new(&r, vec![f.clone(), g.clone()]).unwrap();
        let j = Ideal::new(&r, vec![g.clone(), f.add(&g.scale(&Rational::from(c)))]).unwrap();
        let a = i.groebner_basis(MonomialOrder::GrevLex).unwrap();
        let b = j.groebner_basis(MonomialOrder::GrevLex).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert!(i.same_ideal(&j));
        prop_assert!(i.contains(&f.mul(&g)));
    }

    #[test]
    fn saturation_and_intersection(f in poly(3, 2), g in poly(3, 2), v in 0usize..3) {
        let r = ring();
        let i = Ideal::new(&r, vec![f, g]).unwrap();
        let x = Ideal::new(&r, vec![Poly::var(&r, v)]).unwrap();
        let s = saturate(&i, &x).unwrap();
        prop_assert!(s.contains_ideal(&i));
        prop_assert!(saturate(&s, &x).unwrap().same_ideal(&s));
        let k = intersect(&i, &x).unwrap();
        prop_assert!(i.contains_ideal(&k) && x.contains_ideal(&k));
        prop_assert!(k.contains_ideal(&i.product(&x).unwrap()));
    }
}
