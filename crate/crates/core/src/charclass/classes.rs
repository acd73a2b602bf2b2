use std::fmt;

use crate::error::{Error, Result};
use crate::ideal::slicing::Multidegree;

/// Class of a `dim`-dimensional cycle in `C^m × P^N`.
///
/// Entry `b` is the number of points cut out by `dim - b` generic affine hyperplanes of
/// `C^m` and `b` generic hyperplanes of `P^N`, i.e. the coefficient of the `b`-th power
/// of the projective hyperplane class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    pub m: usize,
    pub n_proj: usize,
    pub dim: usize,
    pub coefficients: Vec<i64>,
    pub support_tag: String,
}

impl CycleClass {
    pub fn zero(m: usize, n_proj: usize, dim: usize, tag: &str) -> CycleClass {
        CycleClass { m, n_proj, dim, coefficients: vec![0; n_proj + 1], support_tag: tag.to_string() }
    }

    /// Reads the top-dimensional counts of a slice computation; lower-dimensional or
    /// empty results give the zero class.
    pub fn from_multidegree(
        md: Option<&Multidegree>,
        m: usize,
        n_proj: usize,
        dim: usize,
        tag: &str,
    ) -> Result<CycleClass> {
        let mut c = CycleClass::zero(m, n_proj, dim, tag);
        let Some(md) = md else { return Ok(c) };
        if md.dim as usize > dim {
            return Err(Error::InvalidInput(format!("{tag}: dimension {} exceeds {dim}", md.dim)));
        }
        if (md.dim as usize) < dim {
            return Ok(c);
        }
        for b in 0..=n_proj.min(dim) {
            if dim - b <= m {
                c.coefficients[b] = md.get(&[(dim - b) as u32, b as u32]) as i64;
            }
        }
        Ok(c)
    }

    fn check(&self, other: &CycleClass) -> Result<()> {
        if (self.m, self.n_proj, self.dim) != (other.m, other.n_proj, other.dim) {
            return Err(Error::InvalidInput("cycle classes live in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycleClass) -> Result<CycleClass> {
        self.check(other)?;
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        let support_tag = format!("{} + {}", self.support_tag, other.support_tag);
        Ok(CycleClass { coefficients, support_tag, ..self.clone() })
    }

    pub fn sub(&self, other: &CycleClass) -> Result<CycleClass> {
        self.check(other)?;
        let coefficients = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect();
        let support_tag = format!("{} - {}", self.support_tag, other.support_tag);
        Ok(CycleClass { coefficients, support_tag, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?} in C^{} x P^{}", self.support_tag, self.coefficients, self.m, self.n_proj)
    }
}

/// Segre class supported in a fibre `{z} × P^N`: `coefficients[i] = ∫ h^i ∩ s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreClass {
    pub coefficients: Vec<i64>,
    pub n_proj: usize,
}

impl SegreClass {
    pub fn zero(n_proj: usize) -> SegreClass {
        SegreClass { coefficients: Vec::new(), n_proj }
    }

    /// `∫ c(ζ^∨) ∩ s` for the dual tautological quotient, `c(ζ^∨) = 1/(1+h)` on a fibre.
    pub fn dual_quotient_integral(&self) -> i64 {
        ChernIntegrand::dual_tautological_quotient(self.n_proj).integrate(self)
    }
}

/// Truncated power series in the fibre hyperplane class `h`, modulo `h^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernIntegrand {
    pub coefficients: Vec<i64>,
}

impl ChernIntegrand {
    pub fn one(n_proj: usize) -> ChernIntegrand {
        let mut coefficients = vec![0; n_proj + 1];
        coefficients[0] = 1;
        ChernIntegrand { coefficients }
    }

    /// `c(O(k)) = 1 + k h`.
    pub fn line(n_proj: usize, k: i64) -> ChernIntegrand {
        let mut c = ChernIntegrand::one(n_proj);
        if n_proj > 0 {
            c.coefficients[1] = k;
        }
        c
    }

    /// `c(ζ^∨) = c(ξ^∨)^{-1} = 1/(1+h)` on a fibre, the ambient bundle being trivial there.
    pub fn dual_tautological_quotient(n_proj: usize) -> ChernIntegrand {
        ChernIntegrand { coefficients: (0..=n_proj).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect() }
    }

    pub fn mul(&self, other: &ChernIntegrand) -> ChernIntegrand {
        let n = self.coefficients.len().min(other.coefficients.len());
        let mut out = vec![0; n];
        for (i, a) in self.coefficients.iter().enumerate().take(n) {
            for (j, b) in other.coefficients.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        ChernIntegrand { coefficients: out }
    }

    /// Inverse of a series with constant term 1.
    pub fn inverse(&self) -> ChernIntegrand {
        assert_eq!(self.coefficients.first(), Some(&1), "constant term 1 expected");
        let n = self.coefficients.len();
        let mut out = vec![0i64; n];
        out[0] = 1;
        for k in 1..n {
            out[k] = -(1..=k).map(|i| self.coefficients[i] * out[k - i]).sum::<i64>();
        }
        ChernIntegrand { coefficients: out }
    }

    /// Degree of the zero-dimensional part of `self ∩ s`.
    pub fn integrate(&self, s: &SegreClass) -> i64 {
        s.coefficients.iter().enumerate().map(|(i, c)| c * self.coefficients.get(i).copied().unwrap_or(0)).sum()
    }
}

/// All signs used by the class formulas, in one place.
pub mod signs {
    pub fn neg_one_pow(e: i64) -> i64 {
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// `1 = χ(z) + (-1)^{m-n+1} μ(z)`.
    pub fn euler_mu(m: usize, n: usize) -> i64 {
        neg_one_pow(m as i64 - n as i64 + 1)
    }

    /// `μ(z) = (-1)^m ∫ c(ζ^∨) ∩ s(π^{-1}(z) ∩ Σ_f, Σ_f)`; the ambient is `M × N`.
    pub fn mu_integral(m: usize) -> i64 {
        neg_one_pow(m as i64)
    }

    /// `χ(z) = (-1)^{n-1} ∫ c(ζ_M^∨) ∩ s(…)` over the relative conormal space.
    pub fn chi_integral(n: usize) -> i64 {
        neg_one_pow(n as i64 - 1)
    }

    /// Function of a conic Lagrangian cycle, read in `P(T*M ⊕ 1)` over `M × C`.
    pub fn lagrangian_function(m: usize) -> i64 {
        neg_one_pow(m as i64)
    }

    /// Chern class of `μ` from the exceptional divisor of `Bl_{Y'} P^m`.
    pub fn csm_mu(m: usize) -> i64 {
        neg_one_pow(m as i64 - 1)
    }

    /// Degree-zero part of `π_{N*}(c(ζ_N^∨) ∩ [Z])` for `Z ⊂ M × P^{n-1}`.
    pub fn z_pushforward(n: usize) -> i64 {
        neg_one_pow(n as i64 - 1)
    }

    /// The characteristic cycle of `μ` is `(-1)^{n-1} [Σ_f]`.
    pub fn characteristic_cycle_mu(n: usize) -> i64 {
        neg_one_pow(n as i64 - 1)
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn table() {
            assert_eq!(euler_mu(2, 1), 1);
            assert_eq!(euler_mu(3, 1), -1);
            assert_eq!(euler_mu(3, 2), 1);
            assert_eq!(mu_integral(2), 1);
            assert_eq!(mu_integral(3), -1);
            assert_eq!(chi_integral(1), 1);
            assert_eq!(chi_integral(2), -1);
            assert_eq!(csm_mu(2), -1);
            assert_eq!(z_pushforward(1), 1);
            assert_eq!(characteristic_cycle_mu(1), 1);
            assert_eq!(lagrangian_function(2), 1);
            assert_eq!(neg_one_pow(-3), -1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_arithmetic() {
        let q = ChernIntegrand::dual_tautological_quotient(3);
        assert_eq!(q.coefficients, vec![1, -1, 1, -1]);
        assert_eq!(q.mul(&ChernIntegrand::line(3, 1)), ChernIntegrand::one(3));
        assert_eq!(ChernIntegrand::line(3, 1).inverse(), q);
    }

    #[test]
    fn integrals_of_the_node_example() {
        let s = SegreClass { coefficients: vec![1, 1], n_proj: 1 };
        assert_eq!(s.dual_quotient_integral(), 0);
        let s = SegreClass { coefficients: vec![2, 2], n_proj: 1 };
        assert_eq!(s.dual_quotient_integral(), 0);
    }

    #[test]
    fn class_arithmetic() {
        let a = CycleClass { m: 2, n_proj: 2, dim: 2, coefficients: vec![1, 1, 0], support_tag: "a".into() };
        let b = CycleClass { coefficients: vec![0, 0, 1], support_tag: "b".into(), ..a.clone() };
        assert_eq!(a.add(&b).unwrap().coefficients, vec![1, 1, 1]);
        assert!(!a.sub(&b).unwrap().is_effective());
        let c = CycleClass::zero(2, 1, 2, "c");
        assert!(a.add(&c).is_err());
    }
}
