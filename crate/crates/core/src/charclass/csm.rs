//! Chern–Schwartz–MacPherson class of a projective hypersurface `X = V(F) ⊂ P^m`
//! from the graph `Γ ⊂ P^m × P^m` of the polar map `[∂_0 F : … : ∂_m F]`.
//!
//! On `Γ`, `𝒳' = Γ ∩ π^{-1}(X)` and `𝒴' = Γ ∩ π^{-1}(V(∂F))` is the exceptional divisor,
//! so `𝒳' - 𝒴'` is the proper transform and all classes are bidegrees.

use super::classes::signs;
use super::rees::rees_into;
use super::Layout;
use crate::error::{Error, Result};
use crate::ideal::slicing::BlockKind;
use crate::ideal::Ideal;
use crate::poly::Poly;

/// Classes in `A_*(P^m)`, each indexed by dimension (`[0]` is the degree of the
/// zero-dimensional part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsmClasses {
    pub m: usize,
    pub degree: u32,
    /// Bidegrees of `Γ`.
    pub graph: Vec<i64>,
    /// Bidegrees of `𝒳'` and `𝒴'`.
    pub x_prime: Vec<i64>,
    pub y_prime: Vec<i64>,
    /// `c_*(1_X)`.
    pub one_x: Vec<i64>,
    /// `c_*` of the function whose cycle is `𝒳'`.
    pub chi_prime: Vec<i64>,
    /// `c_*(μ)`.
    pub mu: Vec<i64>,
    /// `𝒳' - 𝒴'` is effective.
    pub positive: bool,
}

impl CsmClasses {
    pub fn euler_characteristic(&self) -> i64 {
        self.one_x[0]
    }
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn padded(v: Vec<i64>, len: usize) -> Vec<i64> {
    let mut v = v;
    v.resize(len, 0);
    v
}

/// `c(TP^m) ∩ π_*(D / (1 + H + K))` for a class `D` of dimension `m - 1` on `Γ`.
fn push(d: &[i64], m: usize) -> Vec<i64> {
    let mut by_codim = vec![0i64; m + 1];
    for k in 0..m {
        let s: i64 = (0..=k.min(d.len().saturating_sub(1))).map(|l| binom(k, l) * d[l]).sum();
        by_codim[k + 1] += signs::neg_one_pow(k as i64) * s;
    }
    let mut out = vec![0i64; m + 1];
    for (i, a) in by_codim.iter().enumerate() {
        for j in 0..=m - i {
            out[i + j] += a * binom(m + 1, j);
        }
    }
    out.reverse();
    out
}

/// CSM classes of `V(F)` for a homogeneous `F` in the `m + 1` variables of its ring.
pub fn csm_projective_hypersurface(f: &Poly) -> Result<CsmClasses> {
    let src = f.ring();
    let np = src.nvars();
    if np < 2 {
        return Err(Error::InvalidInput("at least two homogeneous coordinates are needed".into()));
    }
    let e = match f.total_degree() {
        Some(e) if e > 0 => e,
        _ => return Err(Error::InvalidInput("F must be a nonconstant form".into())),
    };
    if f.terms().iter().any(|(mono, _)| mono.degree() != e) {
        return Err(Error::NotHomogeneous);
    }
    let m = np - 1;
    let mut taken = src.vars().to_vec();
    let ws: Vec<String> = (0..np).map(|j| super::fresh(&mut taken, &format!("w{j}"))).collect();
    let lay = Layout::new(&[(BlockKind::Projective, src.vars().to_vec()), (BlockKind::Projective, ws)])?;
    let zmap: Vec<Option<usize>> = (0..np).map(Some).collect();
    let grads: Vec<Poly> = (0..np).map(|i| f.derivative(i)).collect();
    let gamma = rees_into(&grads, &zmap, &lay.ring, lay.block(1))?;

    let bideg = |i: &Ideal, dim: usize| -> Result<Vec<i64>> {
        let h = i.hilbert_data()?;
        if h.projective_dimension() != dim as i64 {
            return Ok(vec![0; dim + 1]);
        }
        Ok(padded(h.bidegrees(), dim + 1))
    };
    let graph = bideg(&gamma, m)?;
    let fx = f.map_vars(&lay.ring, &zmap);
    let x_prime = bideg(&gamma.with_gens(&[fx]), m - 1)?;
    let g: Vec<Poly> = grads.iter().map(|p| p.map_vars(&lay.ring, &zmap)).collect();
    let y_prime = bideg(&gamma.with_gens(&g), m - 1)?;

    let diff: Vec<i64> = x_prime.iter().zip(&y_prime).map(|(a, b)| a - b).collect();
    let mu_d: Vec<i64> = y_prime.iter().map(|y| signs::csm_mu(m) * y).collect();
    Ok(CsmClasses {
        m,
        degree: e,
        positive: diff.iter().all(|&d| d >= 0),
        one_x: push(&diff, m),
        chi_prime: push(&x_prime, m),
        mu: push(&mu_d, m),
        graph,
        x_prime,
        y_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrder, PolyRing};

    fn csm(s: &str) -> CsmClasses {
        let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        csm_projective_hypersurface(&Poly::parse(s, &r).unwrap()).unwrap()
    }

    #[test]
    fn smooth_conic() {
        let c = csm("x*y - z^2");
        assert_eq!(c.one_x, vec![2, 2, 0]);
        assert_eq!(c.mu, vec![0, 0, 0]);
        assert!(c.positive);
    }

    #[test]
    fn nodal_and_cuspidal_cubics() {
        let n = csm("y^2*z - x^3 - x^2*z");
        assert_eq!(n.euler_characteristic(), 1);
        let c = csm("y^2*z - x^3");
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.one_x[1], 3);
    }

    #[test]
    fn x_prime_is_the_pullback_of_the_hypersurface() {
        let c = csm("y^2*z - x^3");
        for (k, x) in c.x_prime.iter().enumerate() {
            assert_eq!(*x, 3 * c.graph[k]);
        }
        for k in 0..c.y_prime.len() {
            assert!(c.x_prime[k] >= c.y_prime[k]);
        }
    }

    #[test]
    fn line_and_non_forms() {
        let c = csm("x");
        assert_eq!(c.one_x, vec![2, 1, 0]);
        let r = PolyRing::new(&["x", "y", "z"], MonomialOrder::GrevLex).unwrap();
        let f = Poly::parse("x^2 - y", &r).unwrap();
        assert_eq!(csm_projective_hypersurface(&f), Err(Error::NotHomogeneous));
    }
}
