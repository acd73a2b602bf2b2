use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::poly::{poly_divmod, MonomialOrder, Poly, PolyRing};

// Quotients, intersections and eliminations are computed globally; they commute
// with localisation, so local rings just borrow a grevlex copy.
fn global_ring(r: &Arc<PolyRing>) -> Arc<PolyRing> {
    if r.order().is_global() {
        r.clone()
    } else {
        r.with_order(MonomialOrder::GrevLex)
    }
}

fn check_same(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.ring().vars() != j.ring().vars() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Ring with `extra` variables in front of `base`'s, eliminating them.
fn prepend_vars(base: &PolyRing, extra: &[&str]) -> Arc<PolyRing> {
    let mut vars: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
    for v in base.vars() {
        vars.push(v.clone());
    }
    PolyRing::new(&vars, MonomialOrder::BlockElim(extra.len())).expect("fresh names")
}

fn fresh_name(base: &PolyRing, stem: &str) -> String {
    let mut name = stem.to_string();
    while base.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// `I ∩ k[vars ∖ drop]`, returned in the ring of the remaining variables.
pub fn eliminate(i: &Ideal, drop: &[usize]) -> Result<Ideal> {
    let ring = i.ring();
    let n = ring.nvars();
    if drop.iter().any(|&d| d >= n) {
        return Err(Error::InvalidInput("variable index out of range".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|k| !drop.contains(k)).collect();
    let drop: Vec<usize> = (0..n).filter(|k| drop.contains(k)).collect();

    let mut names: Vec<&str> = drop.iter().map(|&k| ring.vars()[k].as_str()).collect();
    names.extend(keep.iter().map(|&k| ring.vars()[k].as_str()));
    let work = PolyRing::new(&names, MonomialOrder::BlockElim(drop.len()))?;
    let mut map = vec![None; n];
    for (pos, &k) in drop.iter().chain(keep.iter()).enumerate() {
        map[k] = Some(pos);
    }
    let gens: Vec<Poly> = i.gens().iter().map(|g| g.map_vars(&work, &map)).collect();
    let gb = super::buchberger(&gens);

    let order = if ring.order().is_global() { ring.order() } else { MonomialOrder::GrevLex };
    let order = match order {
        MonomialOrder::BlockElim(_) => MonomialOrder::GrevLex,
        o => o,
    };
    let keep_names: Vec<&str> = keep.iter().map(|&k| ring.vars()[k].as_str()).collect();
    let target = match ring.grading() {
        Some(g) => {
            let mut ids: Vec<usize> = keep.iter().map(|&k| g[k]).collect();
            let mut seen: Vec<usize> = ids.clone();
            seen.sort_unstable();
            seen.dedup();
            for b in ids.iter_mut() {
                *b = seen.iter().position(|s| s == b).unwrap();
            }
            PolyRing::graded(&keep_names, order, ids)?
        }
        None => PolyRing::new(&keep_names, order)?,
    };
    let nd = drop.len();
    let back: Vec<Option<usize>> = (0..n).map(|p| p.checked_sub(nd)).collect();
    let out = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..nd].iter().all(|&e| e == 0)))
        .map(|g| g.map_vars(&target, &back))
        .collect();
    Ok(Ideal::from_polys(&target, out))
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(i.ring()));
    }
    let ring = i.ring();
    let t = fresh_name(ring, "t");
    let work = prepend_vars(ring, &[&t]);
    let map: Vec<Option<usize>> = (0..ring.nvars()).map(|k| Some(k + 1)).collect();
    let tv: Poly = Poly::var(&work, 0);
    let one_minus_t = Poly::one(&work).sub(&tv);
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(tv.mul(&g.map_vars(&work, &map)));
    }
    for g in j.gens() {
        gens.push(one_minus_t.mul(&g.map_vars(&work, &map)));
    }
    let gb = super::buchberger(&gens);
    let back: Vec<Option<usize>> = (0..=ring.nvars()).map(|p| p.checked_sub(1)).collect();
    let out = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| g.map_vars(ring, &back))
        .collect();
    Ok(Ideal::from_polys(ring, out))
}

/// `I : (g)`.
pub fn quotient_by_poly(i: &Ideal, g: &Poly) -> Result<Ideal> {
    let ring = i.ring();
    if g.ring().vars() != ring.vars() {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    let work = global_ring(ring);
    let gi = i.in_ring(&work);
    let gg = g.reorder(&work);
    let k = intersect(&gi, &Ideal::from_polys(&work, vec![gg.clone()]))?;
    let mut out = Vec::new();
    for h in k.basis() {
        let (q, r) = poly_divmod(h, std::slice::from_ref(&gg))?;
        debug_assert!(r.is_zero(), "intersection element not divisible");
        out.push(q[0].reorder(ring));
    }
    Ok(Ideal::from_polys(ring, out))
}

/// `I : J = {g | g·J ⊆ I}`.
pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let q = quotient_by_poly(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.ring())))
}

/// `I : g^∞` through the Rabinowitsch trick.
fn saturate_poly(i: &Ideal, g: &Poly) -> Ideal {
    let ring = i.ring();
    if g.is_constant() {
        return i.clone();
    }
    let y = fresh_name(ring, "y");
    let work = prepend_vars(ring, &[&y]);
    let map: Vec<Option<usize>> = (0..ring.nvars()).map(|k| Some(k + 1)).collect();
    let mut gens: Vec<Poly> = i.gens().iter().map(|p| p.map_vars(&work, &map)).collect();
    let yv: Poly = Poly::var(&work, 0);
    gens.push(Poly::one(&work).sub(&yv.mul(&g.map_vars(&work, &map))));
    let gb = super::buchberger(&gens);
    let back: Vec<Option<usize>> = (0..=ring.nvars()).map(|p| p.checked_sub(1)).collect();
    let out = gb
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|p| p.map_vars(ring, &back))
        .collect();
    Ideal::from_polys(ring, out)
}

/// `I : J^∞`.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same(i, j)?;
    if j.is_zero() {
        return Ok(Ideal::unit(i.ring()));
    }
    let ring = i.ring();
    let work = global_ring(ring);
    let wi = i.in_ring(&work);
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let s = saturate_poly(&wi, &g.reorder(&work));
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    let out = acc.unwrap();
    Ok(Ideal::from_polys(ring, out.basis().iter().map(|p| p.reorder(ring)).collect()))
}

/// `(I : J^∞, k)` with `k` the least exponent such that `J^k · (I : J^∞) ⊆ I`.
pub fn saturation(i: &Ideal, j: &Ideal) -> Result<(Ideal, u32)> {
    let sat = saturate(i, j)?;
    let mut q = i.clone();
    let mut k = 0;
    while !q.contains_ideal(&sat) {
        q = ideal_quotient(&q, j)?;
        k += 1;
    }
    Ok((sat, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(vars, MonomialOrder::GrevLex).unwrap()
    }

    fn id(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn quotients() {
        let r = ring(&["x", "y"]);
        assert!(ideal_quotient(&id(&r, &["x*y"]), &id(&r, &["x"])).unwrap().same_ideal(&id(&r, &["y"])));
        let q = ideal_quotient(&id(&r, &["x^2", "x*y"]), &id(&r, &["x"])).unwrap();
        assert!(q.same_ideal(&id(&r, &["x", "y"])));
        let i = id(&r, &["x^2 + y", "x*y^2"]);
        assert!(ideal_quotient(&i, &id(&r, &["1"])).unwrap().same_ideal(&i));
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let (s, k) = saturation(&id(&r, &["x^2", "x*y"]), &id(&r, &["x", "y"])).unwrap();
        assert!(s.same_ideal(&id(&r, &["x"])));
        assert_eq!(k, 1);
        let i = id(&r, &["x^3 - y"]);
        let (s, k) = saturation(&i, &id(&r, &["1"])).unwrap();
        assert!(s.same_ideal(&i));
        assert_eq!(k, 0);
    }

    #[test]
    fn eliminations() {
        let r = ring(&["x", "y", "z"]);
        let e = eliminate(&id(&r, &["y - x^2", "y^2 - z"]), &[1]).unwrap();
        assert_eq!(e.ring().vars(), ["x", "z"]);
        assert!(e.same_ideal(&id(e.ring(), &["x^4 - z"])));
        let r2 = ring(&["x", "y"]);
        assert!(eliminate(&id(&r2, &["x"]), &[0]).unwrap().is_zero());
        let e = eliminate(&id(&r2, &["x - 1", "y - x"]), &[0]).unwrap();
        assert!(e.same_ideal(&id(e.ring(), &["y - 1"])));
    }

    #[test]
    fn intersections() {
        let r = ring(&["x", "y"]);
        let k = intersect(&id(&r, &["x"]), &id(&r, &["y"])).unwrap();
        assert!(k.same_ideal(&id(&r, &["x*y"])));
    }
}
