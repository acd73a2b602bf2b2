use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::field::{Field, Rational};

/// Sparse polynomial; terms are kept sorted by the ring order, largest first.
#[derive(Clone)]
pub struct Poly<F: Field = Rational> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing>, c: i64) -> Self {
        Self::constant(ring, F::from_i64(c))
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: F) -> Self {
        assert_eq!(m.arity(), ring.nvars(), "monomial arity");
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, F)>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.nvars(), "monomial arity");
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant coefficient.
    pub fn constant_coeff(&self) -> F {
        self.terms.iter().find(|(m, _)| m.is_one()).map_or_else(F::zero, |(_, c)| c.clone())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Mora's ecart: total degree minus degree of the leading monomial.
    pub fn ecart(&self) -> u32 {
        match self.leading_monomial() {
            Some(lm) => self.total_degree().unwrap() - lm.degree(),
            None => 0,
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    fn merge(&self, other: &Self, sign_other: bool) -> Self {
        assert!(self.same_ring(other), "ring mismatch");
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + other.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let conv = |c: &F| if sign_other { c.neg() } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, ac)), Some((bm, bc))) => match order.cmp(am, bm) {
                    Ordering::Greater => {
                        out.push((am.clone(), ac.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((bm.clone(), conv(bc)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = if sign_other { ac.sub(bc) } else { ac.add(bc) };
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((am, ac)), None) => {
                    out.push((am.clone(), ac.clone()));
                    a.next();
                }
                (None, Some((bm, bc))) => {
                    out.push((bm.clone(), conv(bc)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    /// `self -= c * m * g`, the inner step of every reduction.
    pub fn sub_mul_term(&mut self, c: &F, m: &Monomial, g: &Self) {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + g.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = g.terms.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => order.cmp(am, &bm.mul(m)),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => break,
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm.mul(m), bc.mul(c).neg()));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let s = ac.sub(&bc.mul(c));
                    if !s.is_zero() {
                        out.push((am, s));
                    }
                }
            }
        }
        self.terms = out;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_ring(other), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.add(&big.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[i];
                let mut m = m.clone();
                m.exponents_mut()[i] -= 1;
                (m, c.mul(&F::from_i64(e as i64)))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut cache: Vec<Vec<Poly<F>>> = vec![Vec::new(); images.len()];
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one(&target));
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul(&images[i]);
                    powers.push(next);
                }
                t = t.mul(&powers[e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    /// Panics if a variable that occurs is mapped to `None`.
    pub fn map_vars(&self, target: &Arc<PolyRing>, map: &[Option<usize>]) -> Poly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(target.nvars());
                for (i, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        let j = map[i].expect("variable not present in target ring");
                        e.exponents_mut()[j] += x;
                    }
                }
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Same polynomial in a ring with the same variables but another order or grading.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Poly<F> {
        assert_eq!(target.vars(), self.ring.vars());
        Poly::from_terms(target, self.terms.clone())
    }

    /// Degree vector of a monomial with respect to the ring grading.
    pub fn block_degree(&self, m: &Monomial) -> Vec<u32> {
        let mut d = vec![0; self.ring.nblocks()];
        for (i, &e) in m.exponents().iter().enumerate() {
            d[self.ring.block_of(i)] += e;
        }
        d
    }

    /// Multidegree when all terms share one, `None` otherwise (or for zero).
    pub fn homogeneous_degree(&self) -> Option<Vec<u32>> {
        let first = self.block_degree(self.leading_monomial()?);
        self.terms.iter().all(|(m, _)| self.block_degree(m) == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Index set of the variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponents()[i] > 0))
            .collect()
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Poly<G>> {
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let g = f(c)?;
            if !g.is_zero() {
                terms.push((m.clone(), g));
            }
        }
        Some(Poly { ring: self.ring.clone(), terms })
    }
}

impl Poly<Rational> {
    /// Scales to a polynomial with coprime integer coefficients and positive leading coefficient.
    pub fn primitive(&self) -> Poly<Rational> {
        use num_integer::Integer;
        use num_traits::{One, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = num_bigint::BigInt::one();
        let mut gcd = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
            gcd = gcd.gcd(c.numer());
        }
        let mut s = Rational::new(lcm, gcd);
        if self.terms[0].1.is_negative() {
            s = s.neg();
        }
        self.scale(&s)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, abs) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if abs != "1" || m.is_one() {
                factors.push(abs);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &'a Poly<F>) -> Poly<F> {
        Poly::add(self, rhs)
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &'a Poly<F>) -> Poly<F> {
        Poly::sub(self, rhs)
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &'a Poly<F>) -> Poly<F> {
        Poly::mul(self, rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, MonomialOrder};

    #[test]
    fn display_is_canonical() {
        let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        let p = parse_poly("x^2*y - 3/2*z", &r).unwrap();
        assert_eq!(p.to_string(), "x^2*y - 3/2*z");
        assert_eq!(p.len(), 2);
        assert_eq!(parse_poly("-1 + -x", &r).unwrap().to_string(), "-x - 1");
        assert_eq!(Poly::<Rational>::zero(&r).to_string(), "0");
    }

    #[test]
    fn derivative_and_eval() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        let p = parse_poly("x^3 + x*y + 2", &r).unwrap();
        assert_eq!(p.derivative(0), parse_poly("3*x^2 + y", &r).unwrap());
        assert_eq!(p.eval(&[Rational::from(1), Rational::from(2)]), Rational::from(5));
    }

    #[test]
    fn substitution() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        let t = PolyRing::new(&["t"], MonomialOrder::GrevLex).unwrap();
        let p = parse_poly("x*y - y^2", &r).unwrap();
        let img = [parse_poly("t + 1", &t).unwrap(), parse_poly("2*t", &t).unwrap()];
        assert_eq!(p.substitute(&img), parse_poly("-2*t^2 + 2*t", &t).unwrap());
    }

    #[test]
    fn primitive_part() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        let p = parse_poly("-2/3*x + 4/9*y", &r).unwrap();
        assert_eq!(p.primitive(), parse_poly("3*x - 2*y", &r).unwrap());
    }
}
