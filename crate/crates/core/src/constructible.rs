//! Constructible functions as priority-ordered strata, the Euler relation between `χ`
//! and `μ`, and the function attached to a conic Lagrangian cycle.

use std::sync::Arc;

use crate::charclass::{chi_at_point, mu_at_point, mu_at_point_experimental, segre_class_fibre, signs};
use crate::charclass::{fresh, Layout};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::generic::Genericity;
use crate::ideal::slicing::BlockKind;
use crate::ideal::{saturate, Ideal};
use crate::poly::{Poly, PolyRing};
use crate::singlocal::{jacobian_matrix, minors, GermMap};

fn vanishes_at(i: &Ideal, z: &[Rational]) -> bool {
    i.gens().iter().all(|g| g.eval(z).is_zero())
}

fn check_point(ring: &Arc<PolyRing>, z: &[Rational]) -> Result<()> {
    if z.len() != ring.nvars() {
        return Err(Error::ArityMismatch(ring.nvars(), z.len()));
    }
    Ok(())
}

/// A function on `C^m` constant on each stratum. The value at a point is that of the
/// first listed stratum containing it, or `default` if there is none.
#[derive(Clone, Debug)]
pub struct ConstructibleFn {
    ring: Arc<PolyRing>,
    strata: Vec<(Ideal, i64)>,
    default: i64,
}

impl ConstructibleFn {
    pub fn new(ring: &Arc<PolyRing>, strata: Vec<(Ideal, i64)>, default: i64) -> Result<ConstructibleFn> {
        for (i, _) in &strata {
            if i.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
            if i.is_unit() {
                return Err(Error::InvalidInput("a stratum is empty".into()));
            }
        }
        Ok(ConstructibleFn { ring: ring.clone(), strata, default })
    }

    pub fn constant(ring: &Arc<PolyRing>, value: i64) -> ConstructibleFn {
        ConstructibleFn { ring: ring.clone(), strata: Vec::new(), default: value }
    }

    /// `1_X`.
    pub fn indicator(x: &Ideal) -> Result<ConstructibleFn> {
        ConstructibleFn::new(x.ring(), vec![(x.clone(), 1)], 0)
    }

    /// Values at finitely many points, `default` elsewhere.
    pub fn from_points(ring: &Arc<PolyRing>, points: &[(Vec<Rational>, i64)], default: i64) -> Result<ConstructibleFn> {
        let mut strata = Vec::new();
        for (p, v) in points {
            check_point(ring, p)?;
            let gens = (0..ring.nvars()).map(|i| Poly::var(ring, i).sub(&Poly::constant(ring, p[i].clone()))).collect();
            strata.push((Ideal::new(ring, gens)?, *v));
        }
        ConstructibleFn::new(ring, strata, default)
    }

    /// `μ` of a function germ, given candidate critical points; points with `μ = 0` are dropped.
    pub fn milnor(f: &GermMap, points: &[Vec<Rational>], ctx: &Genericity) -> Result<ConstructibleFn> {
        let mut vals = Vec::new();
        for p in points {
            let mu = mu_at_point(f, p, ctx)?;
            if mu != 0 {
                vals.push((p.clone(), mu));
            }
        }
        ConstructibleFn::from_points(f.ring(), &vals, 0)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn strata(&self) -> &[(Ideal, i64)] {
        &self.strata
    }

    pub fn default_value(&self) -> i64 {
        self.default
    }

    pub fn evaluate(&self, z: &[Rational]) -> Result<i64> {
        check_point(&self.ring, z)?;
        Ok(self.strata.iter().find(|(i, _)| vanishes_at(i, z)).map_or(self.default, |(_, v)| *v))
    }
}

/// Outcome of `1 = χ(z) + (-1)^{m-n+1} μ(z)` at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerPoint {
    pub point: Vec<Rational>,
    pub chi: i64,
    pub mu: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub m: usize,
    pub n: usize,
    pub points: Vec<EulerPoint>,
    pub pass: bool,
}

/// Checks the Euler relation at each point. For `n ≥ 2` the `μ` side goes through the
/// experimental extraction of `Σ_f` and must be requested explicitly.
pub fn check_euler_relation(
    f: &GermMap,
    points: &[Vec<Rational>],
    ctx: &Genericity,
    experimental: bool,
) -> Result<EulerReport> {
    let (m, n) = (f.source_dim(), f.target_dim());
    if n > 1 && !experimental {
        return Err(Error::InvalidInput("mu for n >= 2 is experimental".into()));
    }
    let sign = signs::euler_mu(m, n);
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let chi = chi_at_point(f, p, ctx)?;
        let mu = if n == 1 { mu_at_point(f, p, ctx)? } else { mu_at_point_experimental(f, p, ctx)? };
        out.push(EulerPoint { point: p.clone(), chi, mu, pass: chi + sign * mu == 1 });
    }
    let pass = out.iter().all(|p| p.pass);
    Ok(EulerReport { m, n, points: out, pass })
}

/// `Σ k_i [T*_{W_i} M]`, each `W_i` given by its ideal in the ring of `M`.
#[derive(Clone, Debug)]
pub struct LagrangianCycleList {
    ring: Arc<PolyRing>,
    components: Vec<(Ideal, i64)>,
}

impl LagrangianCycleList {
    pub fn new(ring: &Arc<PolyRing>, components: Vec<(Ideal, i64)>) -> Result<LagrangianCycleList> {
        for (k, (w, mult)) in components.iter().enumerate() {
            if w.ring().vars() != ring.vars() {
                return Err(Error::RingMismatch);
            }
            if *mult == 0 {
                return Err(Error::InvalidInput("zero multiplicity".into()));
            }
            if w.is_unit() {
                return Err(Error::InvalidInput("empty component".into()));
            }
            if components[..k].iter().any(|(v, _)| v.same_ideal(w)) {
                return Err(Error::InvalidInput("repeated component".into()));
            }
        }
        Ok(LagrangianCycleList { ring: ring.clone(), components })
    }

    pub fn empty(ring: &Arc<PolyRing>) -> LagrangianCycleList {
        LagrangianCycleList { ring: ring.clone(), components: Vec::new() }
    }

    pub fn components(&self) -> &[(Ideal, i64)] {
        &self.components
    }
}

/// `P(T*_W M ⊕ 1) ⊂ C^m × P^m` for a smooth `W`, the first projective coordinate being
/// the `⊕ 1` slot. Singular `W` are rejected.
pub fn conormal_cone_ideal(w: &Ideal) -> Result<Ideal> {
    let src = w.ring();
    let m = src.nvars();
    let c = (m as i64 - w.krull_dimension()) as usize;
    let jac = jacobian_matrix(w.gens());
    let cminors = minors(&jac, c);
    if c > 0 && !w.with_gens(&cminors).is_unit() {
        return Err(Error::UnsupportedComponent(format!("{w} is singular")));
    }
    let mut taken = src.vars().to_vec();
    let a: Vec<String> = (0..=m).map(|j| fresh(&mut taken, &format!("a{j}"))).collect();
    let lay = Layout::new(&[(BlockKind::Affine, src.vars().to_vec()), (BlockKind::Projective, a)])?;
    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let p = lay.block(1).start;
    let mut rows = vec![(1..=m).map(|j| Poly::var(&lay.ring, p + j)).collect::<Vec<_>>()];
    rows.extend(jac.iter().map(|r| r.iter().map(|g| g.map_vars(&lay.ring, &zmap)).collect()));
    let mut gens: Vec<Poly> = w.gens().iter().map(|g| g.map_vars(&lay.ring, &zmap)).collect();
    gens.extend(minors(&rows, c + 1));
    let lifted: Vec<Poly> = cminors.iter().map(|g| g.map_vars(&lay.ring, &zmap)).collect();
    if c == 0 || lifted.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ideal::new(&lay.ring, gens);
    }
    saturate(&Ideal::new(&lay.ring, gens)?, &Ideal::new(&lay.ring, lifted)?)
}

/// `(-1)^m ∫ c(ζ^∨) ∩ s(π^{-1}(z) ∩ B, B)` for a projectivised cycle `B ⊂ C^m × P^m`.
pub fn projectivised_value(b: &Ideal, m: usize, z: &[Rational], ctx: &Genericity) -> Result<i64> {
    let s = segre_class_fibre(b, m, z, ctx)?;
    Ok(signs::lagrangian_function(m) * s.dual_quotient_integral())
}

/// Value at `z` of the constructible function whose characteristic cycle is `cycle`.
/// With this normalisation `(-1)^m [T*_M M]` gives `1_M` and `[T*_p M]` gives `1_p`.
pub fn cycle_to_function_value(cycle: &LagrangianCycleList, z: &[Rational], ctx: &Genericity) -> Result<i64> {
    check_point(&cycle.ring, z)?;
    let m = cycle.ring.nvars();
    let mut total = 0;
    for (w, k) in &cycle.components {
        if !vanishes_at(w, z) {
            continue;
        }
        let b = conormal_cone_ideal(w)?;
        total += k * projectivised_value(&b, m, z, ctx)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn pt(a: i64, b: i64) -> Vec<Rational> {
        vec![a.into(), b.into()]
    }

    #[test]
    fn evaluation_by_priority() {
        let r = ring();
        let x = Ideal::parse(&r, &["x*y"]).unwrap();
        let one = ConstructibleFn::indicator(&x).unwrap();
        assert_eq!(one.evaluate(&pt(1, 0)), Ok(1));
        assert_eq!(one.evaluate(&pt(1, 1)), Ok(0));
        let c = ConstructibleFn::constant(&r, 7);
        assert_eq!(c.evaluate(&pt(3, -2)), Ok(7));
        let two = ConstructibleFn::new(&r, vec![(Ideal::parse(&r, &["x", "y"]).unwrap(), 5), (x, 1)], 0).unwrap();
        assert_eq!(two.evaluate(&pt(0, 0)), Ok(5));
        assert_eq!(two.evaluate(&pt(0, 4)), Ok(1));
        assert!(two.evaluate(&[Rational::zero()]).is_err());
    }

    #[test]
    fn milnor_function_of_the_node() {
        let ctx = Genericity::new(1);
        let f = GermMap::at_origin(vec![Poly::parse("x*y", &ring()).unwrap()]).unwrap();
        let mu = ConstructibleFn::milnor(&f, &[pt(0, 0), pt(1, 1)], &ctx).unwrap();
        assert_eq!(mu.evaluate(&pt(0, 0)), Ok(1));
        assert_eq!(mu.evaluate(&pt(1, 1)), Ok(0));
    }

    #[test]
    fn euler_relation_on_small_germs() {
        let ctx = Genericity::new(2);
        for s in ["x*y", "x^3 + y^2"] {
            let f = GermMap::at_origin(vec![Poly::parse(s, &ring()).unwrap()]).unwrap();
            let rep = check_euler_relation(&f, &[pt(0, 0), pt(1, 1)], &ctx, false).unwrap();
            assert!(rep.pass, "{s}: {rep:?}");
        }
        let f = GermMap::at_origin(vec![Poly::parse("x^3 + y^2", &ring()).unwrap()]).unwrap();
        let rep = check_euler_relation(&f, &[pt(0, 0)], &ctx, false).unwrap();
        assert_eq!((rep.points[0].chi, rep.points[0].mu), (-1, 2));
    }

    #[test]
    fn zero_section_and_point() {
        let ctx = Genericity::new(3);
        let r = ring();
        let zero = LagrangianCycleList::new(&r, vec![(Ideal::zero(&r), 1)]).unwrap();
        assert_eq!(cycle_to_function_value(&zero, &pt(2, 5), &ctx), Ok(1));
        let p = LagrangianCycleList::new(&r, vec![(Ideal::parse(&r, &["x", "y"]).unwrap(), 1)]).unwrap();
        assert_eq!(cycle_to_function_value(&p, &pt(0, 0), &ctx), Ok(1));
        assert_eq!(cycle_to_function_value(&p, &pt(0, 1), &ctx), Ok(0));
        assert_eq!(cycle_to_function_value(&LagrangianCycleList::empty(&r), &pt(0, 0), &ctx), Ok(0));
    }

    #[test]
    fn indicator_of_a_smooth_curve() {
        // (-1)^{dim W} [T*_W M] is the cycle of 1_W
        let ctx = Genericity::new(4);
        let r = ring();
        let l = LagrangianCycleList::new(&r, vec![(Ideal::parse(&r, &["y - x^2"]).unwrap(), -1)]).unwrap();
        assert_eq!(cycle_to_function_value(&l, &pt(0, 0), &ctx), Ok(1));
        assert_eq!(cycle_to_function_value(&l, &pt(2, 4), &ctx), Ok(1));
        assert_eq!(cycle_to_function_value(&l, &pt(1, 0), &ctx), Ok(0));
    }

    #[test]
    fn sigma_f_of_the_node_gives_mu() {
        let ctx = Genericity::new(5);
        let f = GermMap::at_origin(vec![Poly::parse("x*y", &ring()).unwrap()]).unwrap();
        let sigma = crate::charclass::sigma_f_ideal(&f).unwrap();
        let v = signs::characteristic_cycle_mu(1) * projectivised_value(&sigma, 2, &pt(0, 0), &ctx).unwrap();
        assert_eq!(v, mu_at_point(&f, &pt(0, 0), &ctx).unwrap());
    }

    #[test]
    fn singular_components_are_rejected() {
        let ctx = Genericity::new(6);
        let r = ring();
        let c = LagrangianCycleList::new(&r, vec![(Ideal::parse(&r, &["x*y"]).unwrap(), 1)]).unwrap();
        assert!(matches!(cycle_to_function_value(&c, &pt(0, 0), &ctx), Err(Error::UnsupportedComponent(_))));
        assert!(LagrangianCycleList::new(&r, vec![(Ideal::zero(&r), 0)]).is_err());
    }
}
