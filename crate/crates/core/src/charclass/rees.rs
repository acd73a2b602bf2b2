use std::ops::Range;
use std::sync::Arc;

use super::{fresh, Layout};
use crate::error::{Error, Result};
use crate::ideal::slicing::BlockKind;
use crate::ideal::{saturate, Ideal};
use crate::poly::{Poly, PolyRing};

/// Kernel of `u_j ↦ g_j T` written in `target`, the `g_j` mapped by `map` and the `u_j`
/// being the variables `u`. Other target variables stay free.
pub(crate) fn rees_into(
    gens: &[Poly],
    map: &[Option<usize>],
    target: &Arc<PolyRing>,
    u: Range<usize>,
) -> Result<Ideal> {
    let g: Vec<Poly> = gens.iter().map(|p| p.map_vars(target, map)).collect();
    if g.len() != u.len() {
        return Err(Error::ArityMismatch(u.len(), g.len()));
    }
    let Some(k) = (0..g.len()).filter(|&k| !g[k].is_zero()).min_by_key(|&k| g[k].len()) else {
        return Err(Error::EmptyIdeal);
    };
    let uv: Vec<Poly> = u.map(|i| Poly::var(target, i)).collect();
    let mut minors = Vec::new();
    for a in 0..g.len() {
        for b in a + 1..g.len() {
            let p = uv[a].mul(&g[b]).sub(&uv[b].mul(&g[a]));
            if !p.is_zero() {
                minors.push(p);
            }
        }
    }
    // zero generators give u_j = 0 directly
    for (a, ga) in g.iter().enumerate() {
        if ga.is_zero() {
            minors.push(uv[a].clone());
        }
    }
    let pres = Ideal::new(target, minors)?;
    if g[k].is_constant() {
        return Ok(pres);
    }
    saturate(&pres, &Ideal::new(target, vec![g[k].clone()])?)
}

/// Ideal of the graph of `z ↦ [g_0(z) : … : g_r(z)]`, i.e. of `Bl_I C^m ⊂ C^m × P^r`,
/// in the ring of `I` extended by `u0..ur` (second grading block).
///
/// With `cone_twist` the generators of `I` are added, giving the projectivised cone
/// `Proj(Rees(I)/I·Rees(I))` over `V(I)`.
pub fn rees_graph_ideal(i: &Ideal, cone_twist: bool) -> Result<Ideal> {
    let src = i.ring();
    let gens = i.gens();
    if gens.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut taken: Vec<String> = src.vars().to_vec();
    let u: Vec<String> = (0..gens.len()).map(|j| fresh(&mut taken, &format!("u{j}"))).collect();
    let layout = Layout::new(&[(BlockKind::Affine, src.vars().to_vec()), (BlockKind::Projective, u)])?;
    let m = src.nvars();
    let map: Vec<Option<usize>> = (0..m).map(Some).collect();
    let r = rees_into(gens, &map, &layout.ring, layout.block(1))?;
    if cone_twist {
        let g: Vec<Poly> = gens.iter().map(|p| p.map_vars(&layout.ring, &map)).collect();
        return Ok(r.with_gens(&g));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn blow_up_of_the_origin() {
        let r = ring(&["x", "y"]);
        let b = rees_graph_ideal(&Ideal::parse(&r, &["x", "y"]).unwrap(), false).unwrap();
        assert!(b.same_ideal(&Ideal::parse(b.ring(), &["x*u1 - y*u0"]).unwrap()));
    }

    #[test]
    fn principal_ideal_is_a_coordinate_change() {
        let r = ring(&["x", "y"]);
        let b = rees_graph_ideal(&Ideal::parse(&r, &["x"]).unwrap(), false).unwrap();
        assert!(b.is_zero());
        let c = rees_graph_ideal(&Ideal::parse(&r, &["x"]).unwrap(), true).unwrap();
        assert!(c.same_ideal(&Ideal::parse(c.ring(), &["x"]).unwrap()));
    }

    #[test]
    fn rees_of_a_non_reduced_ideal_is_saturated() {
        let r = ring(&["x", "y"]);
        let b = rees_graph_ideal(&Ideal::parse(&r, &["x^2", "x*y"]).unwrap(), false).unwrap();
        // the graph of [x : y] away from x = 0
        assert!(b.same_ideal(&Ideal::parse(b.ring(), &["x*u1 - y*u0"]).unwrap()));
        let e = rees_graph_ideal(&Ideal::parse(&r, &["x^3", "y"]).unwrap(), true).unwrap();
        assert_eq!(e.krull_dimension(), 2);
    }

    #[test]
    fn empty_ideal_is_rejected() {
        let r = ring(&["x"]);
        assert!(matches!(rees_graph_ideal(&Ideal::zero(&r), false), Err(Error::EmptyIdeal)));
    }
}
