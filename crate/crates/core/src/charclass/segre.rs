//! Segre classes `s(A, B)` for `B ⊂ C^m × P^N` and `A = B ∩ V(c_1, …, c_k)` with the `c_i`
//! of one bidegree, by projective degrees of the rational map `[c_1 : … : c_k]`.
//!
//! Let `Γ ⊂ C^m × P^N × P^{k-1}` be the closure of its graph (the blow-up of `B` along
//! `A`), `Ẽ` the exceptional divisor, `h`, `K` the hyperplane classes and `b` the
//! `P^N`-degree of the `c_i`. Then `O(Ẽ) = O(bh - K)` and
//! `s(A, B) = Σ_{k≥1} (-1)^{k-1} π_*(Ẽ^k)` plus the components of `B` lying in `A`.
//! For a generic combination `ℓ`, `div ℓ(c) = Ẽ + div ℓ(w)` on `Γ`, so
//! `∫ h^j K^{d-1-j} [Ẽ]` is a difference of two point counts.

use super::classes::SegreClass;
use super::{fresh, Layout};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::generic::{Genericity, BASE_RANGE};
use crate::ideal::slicing::{sliced_count, BlockKind};
use crate::ideal::{saturate, Ideal};
use crate::poly::Poly;

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn count(ideal: &Ideal, remove: &[Ideal], layout: &Layout, cuts: &[u32], ctx: &Genericity) -> Result<i64> {
    let (space, kept) = layout.space()?;
    let cuts: Vec<u32> = kept.iter().map(|&k| cuts[k]).collect();
    match sliced_count(ideal, remove, &space, &cuts, ctx)? {
        Some(c) => Ok(c as i64),
        None => Err(Error::InvalidInput("slice is not zero-dimensional".into())),
    }
}

fn u_degree(p: &Poly, m: usize) -> Option<u32> {
    let mut deg = None;
    for (mono, _) in p.terms() {
        let d: u32 = mono.exponents()[m..].iter().sum();
        if *deg.get_or_insert(d) != d {
            return None;
        }
    }
    deg
}

/// `s(B ∩ V(cut), B)` where the ring of `b` has `m` affine variables followed by the
/// homogeneous coordinates of `P^N`. The intersection must be supported over finitely
/// many points of `C^m` for the coefficients to be degrees.
pub fn segre_class(b: &Ideal, m: usize, cut: &[Poly], ctx: &Genericity) -> Result<SegreClass> {
    let ring = b.ring().clone();
    if m >= ring.nvars() {
        return Err(Error::InvalidInput("no projective coordinates".into()));
    }
    let n_proj = ring.nvars() - m - 1;
    let cut: Vec<Poly> = cut.iter().filter(|c| !c.is_zero()).cloned().collect();
    if cut.iter().any(|c| c.ring().vars() != ring.vars()) {
        return Err(Error::RingMismatch);
    }
    let degs: Vec<Option<u32>> = cut.iter().map(|c| u_degree(c, m)).collect();
    if degs.iter().any(Option::is_none) || degs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NonUniformDegrees);
    }
    let bdeg = degs.first().copied().flatten().unwrap_or(0) as i64;
    if b.is_unit() {
        return Ok(SegreClass::zero(n_proj));
    }
    if b.gens().iter().any(|g| u_degree(g, m).is_none()) {
        return Err(Error::NotHomogeneous);
    }
    // affine cone over P^N adds one to the Krull dimension
    let d = b.krull_dimension() - 1;
    if d < 0 {
        return Ok(SegreClass::zero(n_proj));
    }
    let d = d as usize;

    let zs: Vec<String> = ring.vars()[..m].to_vec();
    let us: Vec<String> = ring.vars()[m..].to_vec();
    let base = Layout::new(&[(BlockKind::Affine, zs.clone()), (BlockKind::Projective, us.clone())])?;
    let bb = b.in_ring(&base.ring);
    let cut_b: Vec<Poly> = cut.iter().map(|c| c.reorder(&base.ring)).collect();
    if cut_b.is_empty() {
        // A = B
        let e = count(&bb, &[], &base, &[0, d as u32], ctx)?;
        let mut coefficients = vec![0; d + 1];
        coefficients[d] = e;
        return Ok(SegreClass { coefficients, n_proj });
    }
    let a_ideal = Ideal::new(&base.ring, cut_b.clone())?;

    // components of B inside A
    let full = count(&bb, &[], &base, &[0, d as u32], ctx)?;
    let away = count(&bb, &[a_ideal.clone()], &base, &[0, d as u32], ctx)?;
    let top = full - away;

    // the graph of [c_1 : … : c_k]
    let k = cut_b.len();
    let mut taken = ring.vars().to_vec();
    let ws: Vec<String> = (0..k).map(|i| fresh(&mut taken, &format!("w{i}"))).collect();
    let big = Layout::new(&[(BlockKind::Affine, zs), (BlockKind::Projective, us), (BlockKind::Projective, ws)])?;
    let lift: Vec<Option<usize>> = (0..ring.nvars()).map(Some).collect();
    let c: Vec<Poly> = cut_b.iter().map(|p| p.map_vars(&big.ring, &lift)).collect();
    let w: Vec<Poly> = big.block(2).map(|i| Poly::var(&big.ring, i)).collect();
    let mut gens: Vec<Poly> = bb.gens().iter().map(|p| p.map_vars(&big.ring, &lift)).collect();
    for i in 0..k {
        for j in i + 1..k {
            gens.push(w[i].mul(&c[j]).sub(&w[j].mul(&c[i])));
        }
    }
    let gamma = saturate(&Ideal::new(&big.ring, gens)?, &Ideal::new(&big.ring, c.clone())?)?;

    let mut draw = ctx.draw(BASE_RANGE);
    let mut ell = Poly::zero(&big.ring);
    for ci in &c {
        ell = ell.add(&ci.scale(&Rational::from_i64(draw.nonzero())));
    }
    let gamma_ell = gamma.with_gens(&[ell]);

    // E_j = ∫ h^j K^{d-1-j} [Ẽ]
    let mut e = vec![0i64; d];
    for (j, ej) in e.iter_mut().enumerate() {
        let on = count(&gamma_ell, &[], &big, &[0, j as u32, (d - 1 - j) as u32], ctx)?;
        let off = count(&gamma, &[], &big, &[0, j as u32, (d - j) as u32], ctx)?;
        *ej = on - off;
    }
    let mut coefficients = vec![0i64; d + 1];
    for i in 0..d {
        let n = d - 1 - i;
        coefficients[i] = (0..=n).map(|l| binom(n, l) * (-bdeg).pow(l as u32) * e[i + l]).sum();
    }
    coefficients[d] = top;
    Ok(SegreClass { coefficients, n_proj })
}

/// `s(π^{-1}(z) ∩ B, B)` for the fibre of `B ⊂ C^m × P^N` over `z`.
pub fn segre_class_fibre(b: &Ideal, m: usize, z: &[Rational], ctx: &Genericity) -> Result<SegreClass> {
    if z.len() != m {
        return Err(Error::ArityMismatch(m, z.len()));
    }
    let ring = b.ring();
    let cut: Vec<Poly> = (0..m)
        .map(|i| Poly::var(ring, i).sub(&Poly::constant(ring, z[i].clone())))
        .collect();
    segre_class(b, m, &cut, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing};

    fn origin(m: usize) -> Vec<Rational> {
        vec![Rational::zero(); m]
    }

    #[test]
    fn node_example() {
        let ctx = Genericity::new(5);
        let r = PolyRing::new(&["x", "y", "u1", "u2"], MonomialOrder::GrevLex).unwrap();
        // Bl_Y M for f = xy, Y = (y, x), u ↔ (∂_x f, ∂_y f)
        let bl = Ideal::parse(&r, &["x*u1 - y*u2"]).unwrap();
        let s = segre_class_fibre(&bl, 2, &origin(2), &ctx).unwrap();
        assert_eq!(s.coefficients, vec![1, 1, 0]);
        assert_eq!(s.dual_quotient_integral(), 0);
        // total transform of xy = 0
        let tt = bl.with_gens(&[Poly::parse("x*y", &r).unwrap()]);
        let s = segre_class_fibre(&tt, 2, &origin(2), &ctx).unwrap();
        assert_eq!(s.coefficients, vec![2, 2]);
        assert_eq!(s.dual_quotient_integral(), 0);
    }

    #[test]
    fn simple_point() {
        let ctx = Genericity::new(5);
        let r = PolyRing::new(&["x", "y", "u1", "u2"], MonomialOrder::GrevLex).unwrap();
        let bl = Ideal::parse(&r, &["x*u1 - y*u2"]).unwrap();
        let s = segre_class_fibre(&bl, 2, &[1.into(), 1.into()], &ctx).unwrap();
        assert_eq!(s.coefficients, vec![1, 0, 0]);
    }

    #[test]
    fn line_in_the_plane() {
        let ctx = Genericity::new(5);
        let r = PolyRing::new(&["u0", "u1", "u2"], MonomialOrder::GrevLex).unwrap();
        let s = segre_class(&Ideal::zero(&r), 0, &[Poly::parse("u0", &r).unwrap()], &ctx).unwrap();
        assert_eq!(s.coefficients, vec![-1, 1, 0]);
        let s = segre_class(&Ideal::zero(&r), 0, &[Poly::parse("u0^2", &r).unwrap()], &ctx).unwrap();
        // s(2L, P^2) = 2[L] - 4[pt]
        assert_eq!(s.coefficients, vec![-4, 2, 0]);
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let ctx = Genericity::new(5);
        let r = PolyRing::new(&["u0", "u1"], MonomialOrder::GrevLex).unwrap();
        let cut = [Poly::parse("u0", &r).unwrap(), Poly::parse("u1^2", &r).unwrap()];
        assert_eq!(segre_class(&Ideal::zero(&r), 0, &cut, &ctx), Err(Error::NonUniformDegrees));
    }
}
