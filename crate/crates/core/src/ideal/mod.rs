//! Ideals: Gröbner and standard bases, ideal arithmetic, Hilbert data, slicing.

mod groebner;
pub mod hilbert;
mod mora;
mod ops;
pub mod slicing;

pub use groebner::{buchberger, take_gb_stats, GbStats};
pub use hilbert::HilbertData;
pub use mora::{local_standard_basis, mora_normal_form};
pub use ops::{eliminate, ideal_quotient, intersect, quotient_by_poly, saturate, saturation};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, reduce, Monomial, MonomialOrder, Poly, PolyRing};

/// Ideal given by generators, with a lazily computed (and cached) basis for the ring order.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if g.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
        }
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| if g.ring() == ring { g } else { g.reorder(ring) })
            .collect();
        Ok(Ideal { ring: ring.clone(), gens, basis: OnceLock::new() })
    }

    /// Ideal from generators known to live in `ring`.
    pub(crate) fn from_polys(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Ideal {
        Ideal::new(ring, gens).expect("generators in ring")
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, gens: &[S]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| parse_poly(s.as_ref(), ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::from_polys(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::from_polys(ring, vec![Poly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis (global order) or minimal standard basis (local order), cached.
    pub fn basis(&self) -> &[Poly] {
        self.basis.get_or_init(|| {
            if self.ring.order().is_global() {
                buchberger(&self.gens)
            } else {
                local_standard_basis(&self.gens).expect("local order")
            }
        })
    }

    pub fn has_cached_basis(&self) -> bool {
        self.basis.get().is_some()
    }

    /// Reduced Gröbner basis for another global order (same variables).
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Vec<Poly>> {
        if !order.is_global() {
            return Err(Error::LocalOrderUnsupported);
        }
        if order == self.ring.order() {
            return Ok(self.basis().to_vec());
        }
        let r = self.ring.with_order(order);
        let gens: Vec<Poly> = self.gens.iter().map(|g| g.reorder(&r)).collect();
        Ok(buchberger(&gens))
    }

    /// Same ideal in a ring with the same variables but another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let r = self.ring.with_order(order);
        Ideal::from_polys(&r, self.gens.iter().map(|g| g.reorder(&r)).collect())
    }

    /// Same ideal with ring `r` (same variables).
    pub fn in_ring(&self, r: &Arc<PolyRing>) -> Ideal {
        Ideal::from_polys(r, self.gens.iter().map(|g| g.reorder(r)).collect())
    }

    /// Reduction of `p` modulo the ideal: zero iff `p` is a member (for local orders,
    /// a member of the localisation at the origin).
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let p = if p.ring() == &self.ring { p.clone() } else { p.reorder(&self.ring) };
        if self.ring.order().is_global() {
            reduce(&p, self.basis())
        } else {
            mora::nf_mora(&p, self.basis())
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.basis().iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_exponents(&self) -> Vec<Vec<u32>> {
        self.basis().iter().map(|g| g.leading_monomial().unwrap().exponents().to_vec()).collect()
    }

    /// Krull dimension of `R/I` (the local ring at the origin for local orders); `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        hilbert::independent_set_dimension(&self.leading_exponents(), self.ring.nvars())
    }

    /// `dim_Q R/I` when finite (local order: of the local ring at the origin).
    pub fn vsdim(&self) -> Option<u64> {
        if self.is_unit() {
            return Some(0);
        }
        hilbert::standard_monomial_count(&self.leading_exponents(), self.ring.nvars())
    }

    /// Hilbert data for the ring grading; generators must be homogeneous.
    pub fn hilbert_data(&self) -> Result<HilbertData> {
        if !self.ring.order().is_global() {
            return Err(Error::LocalOrderUnsupported);
        }
        if self.gens.iter().any(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous);
        }
        let blocks: Vec<usize> = (0..self.ring.nvars()).map(|i| self.ring.block_of(i)).collect();
        Ok(hilbert::monomial_hilbert_data(&self.leading_exponents(), &blocks, self.ring.nblocks()))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring.vars() != other.ring.vars() {
            return Err(Error::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().map(|p| p.reorder(&self.ring)));
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring.vars() != other.ring.vars() {
            return Err(Error::RingMismatch);
        }
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(&b.reorder(&self.ring)));
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn with_gens(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend_from_slice(extra);
        Ideal::from_polys(&self.ring, g)
    }

    pub fn pow(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
