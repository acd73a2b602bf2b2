use super::classes::signs;
use super::{fresh, Layout};
use crate::error::{Error, Result};
use crate::generic::Genericity;
use crate::ideal::slicing::{multidegree, BlockKind};
use crate::ideal::{saturate, Ideal};
use crate::poly::Poly;
use crate::singlocal::{critical_scheme, GermMap};

/// Zero scheme `Z ⊂ C^m × P^{n-1}` of the section `Σ_i u_i df_i` of `ζ_N^∨ ⊗ T*M`,
/// with the components inside `u = 0` removed.
pub fn ohmoto_z_ideal(f: &GermMap) -> Result<Ideal> {
    Ok(z_in_layout(f)?.0)
}

fn z_in_layout(f: &GermMap) -> Result<(Ideal, Layout)> {
    let src = f.ring();
    let (m, n) = (f.source_dim(), f.target_dim());
    let mut taken = src.vars().to_vec();
    let us: Vec<String> = (0..n).map(|i| fresh(&mut taken, &format!("u{}", i + 1))).collect();
    let lay = Layout::new(&[(BlockKind::Affine, src.vars().to_vec()), (BlockKind::Projective, us)])?;
    let zmap: Vec<Option<usize>> = (0..m).map(Some).collect();
    let jac = f.jacobian();
    let u: Vec<Poly> = lay.block(1).map(|i| Poly::var(&lay.ring, i)).collect();
    let gens: Vec<Poly> = (0..m)
        .map(|j| {
            jac.iter()
                .zip(&u)
                .fold(Poly::zero(&lay.ring), |acc, (row, ui)| acc.add(&ui.mul(&row[j].map_vars(&lay.ring, &zmap))))
        })
        .collect();
    let z = saturate(&Ideal::new(&lay.ring, gens)?, &Ideal::new(&lay.ring, u)?)?;
    Ok((z, lay))
}

fn check_isolated(f: &GermMap) -> Result<Ideal> {
    let crit = critical_scheme(f);
    if crit.krull_dimension() > 0 {
        return Err(Error::PositiveDimensionalCritical);
    }
    Ok(crit)
}

/// Sum of the Milnor numbers over all critical points, as the degree of
/// `π_{N*}(c(ζ_N^∨) ∩ [Z])`.
pub fn mu_total_via_z(f: &GermMap, ctx: &Genericity) -> Result<i64> {
    check_isolated(f)?;
    let n = f.target_dim();
    let (z, lay) = z_in_layout(f)?;
    let fib = (n - 1) as u32;
    let (space, kept) = lay.space()?;
    let md = multidegree(&z, &[], &space, Some(fib), ctx)?;
    let count = match md {
        Some(md) if md.dim == fib => {
            let cuts: Vec<u32> = kept.iter().map(|&k| [0, fib][k]).collect();
            md.get(&cuts) as i64
        }
        Some(md) if md.dim > fib => return Err(Error::PositiveDimensionalCritical),
        _ => 0,
    };
    Ok(signs::z_pushforward(n) * count)
}

/// Global colength of the critical scheme, which is the sum of the local Milnor numbers.
pub fn mu_total_oracle(f: &GermMap) -> Result<u64> {
    check_isolated(f)?.vsdim().ok_or(Error::PositiveDimensionalCritical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing};

    fn germ(s: &str) -> GermMap {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::GrevLex).unwrap();
        GermMap::at_origin(vec![Poly::parse(s, &r).unwrap()]).unwrap()
    }

    #[test]
    fn totals_agree_with_the_colength() {
        let ctx = Genericity::new(7);
        for (s, mu) in [("x^2 + y^2", 1), ("x^3 - 3*x + y^2", 2), ("x^3 + y^3", 4)] {
            let f = germ(s);
            assert_eq!(mu_total_oracle(&f), Ok(mu), "{s}");
            assert_eq!(mu_total_via_z(&f, &ctx), Ok(mu as i64), "{s}");
        }
    }

    #[test]
    fn non_isolated_is_rejected() {
        let ctx = Genericity::new(7);
        assert_eq!(mu_total_via_z(&germ("x^2"), &ctx), Err(Error::PositiveDimensionalCritical));
    }
}
