use std::sync::Arc;

use super::classes::{signs, CycleClass};
use super::rees::rees_into;
use super::segre::segre_class_fibre;
use super::{fresh, Layout};
use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::generic::Genericity;
use crate::ideal::slicing::{multidegree, BlockKind};
use crate::ideal::{saturate, Ideal};
use crate::poly::{Poly, PolyRing};
use crate::singlocal::{critical_scheme, relative_conormal_ideal, GermMap};

/// The three classes of the graph construction for `df: f*T*C → T*M`, all in
/// `C^m × P^m = P(T*M ⊕ f*T*C)` with `u0` the coordinate of the `T*C` summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLimit {
    /// `[Bl_Y M]`, inside `u0 = 0`.
    pub dominant: CycleClass,
    /// `[P(C_Y M ⊕ 1)]` over `Y`.
    pub residual: CycleClass,
    /// The flat limit `[M_∞]`.
    pub total: CycleClass,
}

impl GraphLimit {
    /// `dominant + residual == total`, coefficient by coefficient.
    pub fn is_conserved(&self) -> bool {
        self.dominant.add(&self.residual).map(|s| s.coefficients == self.total.coefficients).unwrap_or(false)
    }
}

/// The two parts of the limit of the conormal family of `z ↦ (z, -t f(z))`, in
/// `C^{m+1} × P^m` (coordinates `z, v` and the covector `(α, β)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianLimit {
    /// Part supported over `Y × {0}`.
    pub cone_part: CycleClass,
    /// `[𝒳' × C]`, the components not contained in `v = 0`.
    pub cylinder_part: CycleClass,
}

fn partials(f: &Poly, target: &Arc<PolyRing>, map: &[Option<usize>]) -> Vec<Poly> {
    let g = f.map_vars(target, map);
    (0..f.ring().nvars()).map(|i| f.derivative(i).map_vars(target, map)).filter(|_| !g.is_zero()).collect()
}

/// Sets variable `idx` to zero and maps the remaining ones, in order, into `target`.
fn set_zero(i: &Ideal, idx: usize, target: &Arc<PolyRing>) -> Result<Ideal> {
    let src = i.ring();
    let mut images = Vec::with_capacity(src.nvars());
    let mut next = 0;
    for k in 0..src.nvars() {
        if k == idx {
            images.push(Poly::zero(target));
        } else {
            images.push(Poly::var(target, next));
            next += 1;
        }
    }
    Ideal::new(target, i.gens().iter().map(|g| g.substitute(&images)).collect())
}

fn class_of(ideal: &Ideal, remove: &[Ideal], layout: &Layout, dim: usize, tag: &str, ctx: &Genericity) -> Result<CycleClass> {
    let (space, _) = layout.space()?;
    let affine = layout.block(0).len();
    let n_proj = layout.block(1).len() - 1;
    let md = multidegree(ideal, remove, &space, Some(dim as u32), ctx)?;
    CycleClass::from_multidegree(md.as_ref(), affine, n_proj, dim, tag)
}

fn check_source(f: &Poly) -> Result<()> {
    if f.is_constant() {
        return Err(Error::EmptyIdeal);
    }
    Ok(())
}

/// Dominant, residual and total classes of the graph-construction limit for `f`.
///
/// For a submersion the residual class is zero and `dominant == total`.
pub fn graph_limit_cycle(f: &Poly, ctx: &Genericity) -> Result<GraphLimit> {
    check_source(f)?;
    let src = f.ring();
    let m = src.nvars();
    let mut taken = src.vars().to_vec();
    let s = fresh(&mut taken, "s");
    let u: Vec<String> = (0..=m).map(|j| fresh(&mut taken, &format!("u{j}"))).collect();

    let mut zs = src.vars().to_vec();
    let zu = Layout::new(&[(BlockKind::Affine, zs.clone()), (BlockKind::Projective, u.clone())])?;
    zs.push(s);
    let fam = Layout::new(&[(BlockKind::Affine, zs), (BlockKind::Projective, u)])?;

    // total: Rees(s, ∂f) at s = 0
    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let mut gens = vec![Poly::var(&fam.ring, m)];
    gens.extend(partials(f, &fam.ring, &zmap));
    let ident: Vec<Option<usize>> = (0..fam.ring.nvars()).map(Some).collect();
    let rees_s = rees_into(&gens, &ident, &fam.ring, fam.block(1))?;
    let total = set_zero(&rees_s, m, &zu.ring)?;

    // Rees(∂f) on u1..um, u0 free
    let j = partials(f, &zu.ring, &zmap);
    let ub = zu.block(1);
    let ident: Vec<Option<usize>> = (0..zu.ring.nvars()).map(Some).collect();
    let rees = rees_into(&j, &ident, &zu.ring, ub.start + 1..ub.end)?;
    let dominant = rees.with_gens(&[Poly::var(&zu.ring, ub.start)]);
    let residual = rees.with_gens(&j);

    Ok(GraphLimit {
        dominant: class_of(&dominant, &[], &zu, m, "Bl_Y M", ctx)?,
        residual: class_of(&residual, &[], &zu, m, "P(C_Y M + 1)", ctx)?,
        total: class_of(&total, &[], &zu, m, "M_inf", ctx)?,
    })
}

/// Limit of the conormal spaces of the graphs of `-t f` as `t → ∞`, split into the
/// part over `Y × {0}` and the cylinder `𝒳' × C`.
///
/// Requires `f(0) = 0` and `f^{-1}(0)` to be the only singular fibre.
pub fn lagrangian_specialisation(f: &Poly, ctx: &Genericity) -> Result<LagrangianLimit> {
    check_source(f)?;
    let src = f.ring();
    let m = src.nvars();
    if !f.constant_coeff().is_zero() {
        return Err(Error::InvalidInput("f must vanish at the origin".into()));
    }
    let germ = GermMap::at_origin(vec![f.clone()])?;
    let disc = crate::singlocal::discriminant_ideal(&germ)?;
    let w = Ideal::new(disc.ring(), vec![Poly::var(disc.ring(), 0)])?;
    if !saturate(&disc, &w)?.is_unit() {
        return Err(Error::MultipleSingularFibres);
    }

    let mut taken = src.vars().to_vec();
    let v = fresh(&mut taken, "v");
    let s = fresh(&mut taken, "s");
    let u: Vec<String> = (0..=m).map(|j| fresh(&mut taken, &format!("u{j}"))).collect();
    let mut zv = src.vars().to_vec();
    zv.push(v);
    let lim = Layout::new(&[(BlockKind::Affine, zv.clone()), (BlockKind::Projective, u.clone())])?;
    let mut zvs = zv;
    zvs.push(s);
    let fam = Layout::new(&[(BlockKind::Affine, zvs), (BlockKind::Projective, u)])?;

    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let (vi, si) = (m, m + 1);
    let sv: Poly = Poly::var(&fam.ring, si);
    let mut gens = vec![sv.clone()];
    gens.extend(partials(f, &fam.ring, &zmap));
    let ident: Vec<Option<usize>> = (0..fam.ring.nvars()).map(Some).collect();
    let rees = rees_into(&gens, &ident, &fam.ring, fam.block(1))?;
    let a = sv.mul(&Poly::var(&fam.ring, vi)).add(&f.map_vars(&fam.ring, &zmap));
    let sat = saturate(&rees.with_gens(&[a]), &Ideal::new(&fam.ring, vec![sv])?)?;
    let l0 = set_zero(&sat, si, &lim.ring)?;
    let cyl = saturate(&l0, &Ideal::new(&lim.ring, vec![Poly::var(&lim.ring, vi)])?)?;

    Ok(LagrangianLimit {
        cone_part: class_of(&l0, &[cyl.clone()], &lim, m, "cone", ctx)?,
        cylinder_part: class_of(&cyl, &[], &lim, m, "X' x C", ctx)?,
    })
}

/// Off the critical locus the relative conormal space is a graph over `M`, so the
/// fibre is a reduced point of a smooth space and its Segre class is `[pt]`.
fn is_regular(f: &GermMap, zt: &[Rational]) -> bool {
    critical_scheme(f).gens().iter().any(|g| !g.eval(zt).is_zero())
}

fn translated(f: &GermMap, z: &[Rational]) -> Result<Vec<Rational>> {
    if z.len() != f.source_dim() {
        return Err(Error::ArityMismatch(f.source_dim(), z.len()));
    }
    Ok(z.iter().zip(f.base_point()).map(|(a, b)| a.sub(b)).collect())
}

/// Euler characteristic of the Milnor fibre at `z` (original coordinates):
/// `(-1)^{n-1} ∫ c(ζ_M^∨) ∩ s(p^{-1}(z), p^{-1}(M_{f(z)}))`, the Segre class taken in the
/// part of the relative conormal space over the fibre through `z`.
///
/// Taking it in the whole space instead gives the right answer for the node but `0`
/// for the cusp, so the fibre form is the one used.
pub fn chi_at_point(f: &GermMap, z: &[Rational], ctx: &Genericity) -> Result<i64> {
    let zt = translated(f, z)?;
    if is_regular(f, &zt) {
        return Ok(1);
    }
    let con = relative_conormal_ideal(f)?;
    let zmap: Vec<Option<usize>> = (0..con.m).map(Some).collect();
    let fibre: Vec<Poly> = f
        .components()
        .iter()
        .map(|c| c.sub(&Poly::constant(c.ring(), c.eval(&zt))).map_vars(&con.ring, &zmap))
        .collect();
    let b = con.ideal.with_gens(&fibre);
    let s = segre_class_fibre(&b, con.m, &zt, ctx)?;
    Ok(signs::chi_integral(f.target_dim()) * s.dual_quotient_integral())
}

/// Ideal of `Σ_f = P(C_Y M ⊕ 1) ⊂ C^m × P^m` for a function (`n = 1`), built as the
/// cone of the Rees algebra of the Jacobian ideal with a free `u0`.
pub fn sigma_f_ideal(f: &GermMap) -> Result<Ideal> {
    if f.target_dim() != 1 {
        return Err(Error::InvalidInput("the cone presentation needs n = 1".into()));
    }
    let src = f.ring();
    let m = src.nvars();
    let mut taken = src.vars().to_vec();
    let u: Vec<String> = (0..=m).map(|j| fresh(&mut taken, &format!("u{j}"))).collect();
    let zu = Layout::new(&[(BlockKind::Affine, src.vars().to_vec()), (BlockKind::Projective, u)])?;
    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let j = partials(&f.components()[0], &zu.ring, &zmap);
    let ub = zu.block(1);
    let ident: Vec<Option<usize>> = (0..zu.ring.nvars()).map(Some).collect();
    let rees = rees_into(&j, &ident, &zu.ring, ub.start + 1..ub.end)?;
    Ok(rees.with_gens(&j))
}

/// Milnor number at `z` as `(-1)^m ∫ c(ζ^∨) ∩ s(π^{-1}(z) ∩ Σ_f, Σ_f)`; `n = 1` only.
pub fn mu_at_point(f: &GermMap, z: &[Rational], ctx: &Genericity) -> Result<i64> {
    let zt = translated(f, z)?;
    if is_regular(f, &zt) {
        return Ok(0);
    }
    let sigma = sigma_f_ideal(f)?;
    let s = segre_class_fibre(&sigma, f.source_dim(), &zt, ctx)?;
    Ok(signs::mu_integral(f.source_dim()) * s.dual_quotient_integral())
}

/// `Σ_f` as the part of the graph-construction limit in `P(T*M ⊕ f*T*N)` lying over
/// the critical locus. Works for any `n`; used for `n ≥ 2` and as a cross-check.
pub fn sigma_f_experimental(f: &GermMap) -> Result<(Ideal, usize)> {
    let src = f.ring();
    let (m, n) = (f.source_dim(), f.target_dim());
    let mut taken = src.vars().to_vec();
    let s = fresh(&mut taken, "s");
    let uv: Vec<String> = (0..m + n).map(|j| fresh(&mut taken, &format!("u{j}"))).collect();
    let mut zs = src.vars().to_vec();
    let lim = Layout::new(&[(BlockKind::Affine, zs.clone()), (BlockKind::Projective, uv.clone())])?;
    zs.push(s);
    let fam = Layout::new(&[(BlockKind::Affine, zs), (BlockKind::Projective, uv)])?;
    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let sv: Poly = Poly::var(&fam.ring, m);
    let p = fam.block(1).start;
    let jac = f.jacobian();
    let mut gens = Vec::new();
    for j in 0..m {
        let mut g = sv.mul(&Poly::var(&fam.ring, p + j));
        for (i, row) in jac.iter().enumerate() {
            g = g.sub(&Poly::var(&fam.ring, p + m + i).mul(&row[j].map_vars(&fam.ring, &zmap)));
        }
        gens.push(g);
    }
    let sat = saturate(&Ideal::new(&fam.ring, gens)?, &Ideal::new(&fam.ring, vec![sv])?)?;
    let l0 = set_zero(&sat, m, &lim.ring)?;
    let crit: Vec<Poly> = critical_scheme(f).gens().iter().map(|g| g.map_vars(&lim.ring, &zmap)).collect();
    let dominant = saturate(&l0, &Ideal::new(&lim.ring, crit)?)?;
    Ok((saturate(&l0, &dominant)?, m + n - 1))
}

/// `μ(z)` through [`sigma_f_experimental`]; for `n ≥ 2` the extraction of `Σ_f` is not
/// backed by an exactness statement, so results should be compared with an oracle.
pub fn mu_at_point_experimental(f: &GermMap, z: &[Rational], ctx: &Genericity) -> Result<i64> {
    let zt = translated(f, z)?;
    if is_regular(f, &zt) {
        return Ok(0);
    }
    let (sigma, _) = sigma_f_experimental(f)?;
    let s = segre_class_fibre(&sigma, f.source_dim(), &zt, ctx)?;
    Ok(signs::mu_integral(f.source_dim()) * s.dual_quotient_integral())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn germ(s: &str) -> GermMap {
        GermMap::at_origin(vec![Poly::parse(s, &ring()).unwrap()]).unwrap()
    }

    fn pt(a: i64, b: i64) -> Vec<Rational> {
        vec![a.into(), b.into()]
    }

    #[test]
    fn graph_limit_of_the_node() {
        let ctx = Genericity::new(1);
        let g = graph_limit_cycle(&Poly::parse("x*y", &ring()).unwrap(), &ctx).unwrap();
        assert_eq!(g.dominant.coefficients, vec![1, 1, 0]);
        assert_eq!(g.residual.coefficients, vec![0, 0, 1]);
        assert_eq!(g.total.coefficients, vec![1, 1, 1]);
        assert!(g.is_conserved());
    }

    #[test]
    fn graph_limit_of_a_submersion() {
        let ctx = Genericity::new(1);
        let g = graph_limit_cycle(&Poly::parse("x", &ring()).unwrap(), &ctx).unwrap();
        assert!(g.residual.is_zero());
        assert_eq!(g.dominant, GraphLimit { ..g.clone() }.dominant);
        assert_eq!(g.dominant.coefficients, g.total.coefficients);
    }

    #[test]
    fn lagrangian_limit_of_the_node() {
        let ctx = Genericity::new(2);
        let f = Poly::parse("x*y", &ring()).unwrap();
        let l = lagrangian_specialisation(&f, &ctx).unwrap();
        let g = graph_limit_cycle(&f, &ctx).unwrap();
        assert_eq!(l.cone_part.coefficients, g.residual.coefficients);
        assert!(!l.cylinder_part.is_zero());
    }

    #[test]
    fn two_singular_fibres_are_rejected() {
        let ctx = Genericity::new(2);
        let f = Poly::parse("x^3 - 3*x + y^2", &ring()).unwrap();
        assert_eq!(lagrangian_specialisation(&f, &ctx), Err(Error::MultipleSingularFibres));
    }

    #[test]
    fn chi_and_mu_of_the_node() {
        let ctx = Genericity::new(3);
        let f = germ("x*y");
        assert_eq!(chi_at_point(&f, &pt(0, 0), &ctx), Ok(0));
        assert_eq!(chi_at_point(&f, &pt(1, 1), &ctx), Ok(1));
        assert_eq!(mu_at_point(&f, &pt(0, 0), &ctx), Ok(1));
        assert_eq!(mu_at_point(&f, &pt(1, 1), &ctx), Ok(0));
    }

    #[test]
    fn chi_and_mu_of_a_cusp() {
        let ctx = Genericity::new(4);
        let f = germ("x^3 + y^2");
        assert_eq!(mu_at_point(&f, &pt(0, 0), &ctx), Ok(2));
        assert_eq!(chi_at_point(&f, &pt(0, 0), &ctx), Ok(-1));
    }

    #[test]
    fn experimental_sigma_agrees_for_functions() {
        let ctx = Genericity::new(5);
        let f = germ("x*y");
        assert_eq!(mu_at_point_experimental(&f, &pt(0, 0), &ctx), Ok(1));
    }

    #[test]
    fn a_k_family() {
        let ctx = Genericity::new(6);
        for k in 1..=4i64 {
            let f = germ(&format!("x^{} + y^2", k + 1));
            assert_eq!(mu_at_point(&f, &pt(0, 0), &ctx), Ok(k));
            assert_eq!(chi_at_point(&f, &pt(0, 0), &ctx), Ok(1 - k));
            assert_eq!(mu_at_point(&f, &pt(1, 2), &ctx), Ok(0));
            assert_eq!(chi_at_point(&f, &pt(1, 2), &ctx), Ok(1));
        }
    }

    #[test]
    fn base_point_is_respected() {
        let ctx = Genericity::new(6);
        let r = ring();
        let f = GermMap::new(vec![Poly::parse("(x-1)^3 + y^2", &r).unwrap()], Some(pt(1, 0))).unwrap();
        assert_eq!(mu_at_point(&f, &pt(1, 0), &ctx), Ok(2));
        assert_eq!(chi_at_point(&f, &pt(1, 0), &ctx), Ok(-1));
        assert_eq!(mu_at_point(&f, &pt(0, 0), &ctx), Ok(0));
    }

    #[test]
    fn icis_through_the_experimental_path() {
        let ctx = Genericity::new(8);
        let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        let comps = ["x^2 + y^2 + z^2", "z"].iter().map(|s| Poly::parse(s, &r).unwrap()).collect();
        let f = GermMap::at_origin(comps).unwrap();
        let o = vec![Rational::zero(); 3];
        let mu = mu_at_point_experimental(&f, &o, &ctx).unwrap();
        let chi = chi_at_point(&f, &o, &ctx).unwrap();
        assert_eq!(mu, 1);
        assert_eq!(1, chi + signs::euler_mu(3, 2) * mu);
    }
}
