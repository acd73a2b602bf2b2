//! Hilbert series of monomial ideals by pivot recursion, multigraded.

use std::collections::BTreeMap;

/// Integer polynomial in one variable per grading block, keyed by exponent vectors.
pub type MultiPoly = BTreeMap<Vec<u32>, i128>;

/// Hilbert series data of `S/I`: `HS = numerator / Π_k (1 - t_k)^{denominator_exponents[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: MultiPoly,
    pub denominator_exponents: Vec<u32>,
    /// Krull dimension of `S/I` (`-1` for the unit ideal).
    pub dimension: i64,
    /// Degree for the total grading; `0` for the unit ideal.
    pub degree: i64,
    /// Multidegree polynomial in the block classes (lowest part of the K-polynomial in `1 - t`),
    /// keyed by codimension exponents.
    pub multidegree: MultiPoly,
}

impl HilbertData {
    /// Dimension of the subvariety of the product of projective spaces.
    pub fn projective_dimension(&self) -> i64 {
        self.dimension - self.denominator_exponents.len() as i64
    }

    /// For a product of two projective spaces: entry `k` is `∫ [X] H_1^{d-k} H_2^k`,
    /// `d` the projective dimension.
    pub fn bidegrees(&self) -> Vec<i64> {
        assert_eq!(self.denominator_exponents.len(), 2, "two grading blocks expected");
        let d = self.projective_dimension();
        if d < 0 {
            return Vec::new();
        }
        let (a, b) = (self.denominator_exponents[0] as i64 - 1, self.denominator_exponents[1] as i64 - 1);
        (0..=d)
            .map(|k| {
                let (i, j) = (a - (d - k), b - k);
                if i < 0 || j < 0 {
                    return 0;
                }
                *self.multidegree.get(&vec![i as u32, j as u32]).unwrap_or(&0) as i64
            })
            .collect()
    }
}

/// Drops generators divisible by others and duplicates.
pub fn minimalize(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut g: Vec<Vec<u32>> = gens.to_vec();
    g.sort_by_key(|m| m.iter().sum::<u32>());
    let mut out: Vec<Vec<u32>> = Vec::new();
    for m in g {
        if !out.iter().any(|o| divides(o, &m)) {
            out.push(m);
        }
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_into(acc: &mut MultiPoly, p: &MultiPoly, scale: i128, shift: &[u32]) {
    for (e, c) in p {
        let key: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = acc.entry(key.clone()).or_insert(0);
        *v += c * scale;
        if *v == 0 {
            acc.remove(&key);
        }
    }
}

fn mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::new();
    for (e, c) in b {
        add_into(&mut out, a, *c, e);
    }
    out
}

/// Numerator of the Hilbert series of `S/(gens)`; `blocks[i]` is the grading block of variable `i`.
pub fn hilbert_numerator(gens: &[Vec<u32>], blocks: &[usize], nblocks: usize) -> MultiPoly {
    numerator(minimalize(gens), blocks, nblocks)
}

fn block_degree(m: &[u32], blocks: &[usize], nblocks: usize) -> Vec<u32> {
    let mut d = vec![0; nblocks];
    for (i, &e) in m.iter().enumerate() {
        d[blocks[i]] += e;
    }
    d
}

fn numerator(gens: Vec<Vec<u32>>, blocks: &[usize], nblocks: usize) -> MultiPoly {
    let one = || {
        let mut p = MultiPoly::new();
        p.insert(vec![0; nblocks], 1);
        p
    };
    if gens.is_empty() {
        return one();
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return MultiPoly::new();
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens.iter().enumerate().all(|(k, a)| {
        gens[k + 1..].iter().all(|b| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0))
    });
    if coprime {
        let mut acc = one();
        for g in &gens {
            let mut f = one();
            f.insert(block_degree(g, blocks, nblocks), -1);
            acc = mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-linear generators
    let nv = gens[0].len();
    let var = (0..nv)
        .max_by_key(|&i| (gens.iter().filter(|g| g[i] > 0 && g.iter().sum::<u32>() > 1).count(), std::cmp::Reverse(i)))
        .unwrap();
    let mut pivot = vec![0; nv];
    pivot[var] = 1;

    let mut sum = gens.clone();
    sum.push(pivot.clone());
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| g.iter().zip(&pivot).map(|(a, b)| a.saturating_sub(*b)).collect())
        .collect();
    let mut out = numerator(minimalize(&sum), blocks, nblocks);
    let shift = block_degree(&pivot, blocks, nblocks);
    add_into(&mut out, &numerator(minimalize(&colon), blocks, nblocks), 1, &shift);
    out
}

fn binom(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// Collapses a multigraded numerator to the total grading.
pub fn total_grading(p: &MultiPoly) -> Vec<i128> {
    let mut out = Vec::new();
    for (e, c) in p {
        let d = e.iter().sum::<u32>() as usize;
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += c;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Dimension and degree from a univariate numerator over `(1 - t)^n`.
pub fn dimension_and_degree(num: &[i128], n: u32) -> (i64, i64) {
    if num.is_empty() {
        return (-1, 0);
    }
    // divide by (1 - t) while it vanishes at t = 1
    let mut q: Vec<i128> = num.to_vec();
    let mut k = 0;
    while q.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - t) = -(t - 1)
        let mut out = vec![0i128; q.len() - 1];
        let mut carry = 0i128;
        for i in (1..q.len()).rev() {
            carry += q[i];
            out[i - 1] = carry;
        }
        q = out.into_iter().map(|c| -c).collect();
        k += 1;
    }
    (n as i64 - k as i64, q.iter().sum::<i128>() as i64)
}

/// Lowest-degree part of `K(1 - s)`.
pub fn multidegree_of(num: &MultiPoly, nblocks: usize) -> MultiPoly {
    let mut full = MultiPoly::new();
    for (e, c) in num {
        // Π_k (1 - s_k)^{e_k}
        let mut term = MultiPoly::new();
        term.insert(vec![0; nblocks], *c);
        for (k, &ek) in e.iter().enumerate() {
            let mut f = MultiPoly::new();
            for j in 0..=ek {
                let mut key = vec![0; nblocks];
                key[k] = j;
                let sign = if j % 2 == 0 { 1 } else { -1 };
                f.insert(key, sign * binom(ek, j));
            }
            term = mul(&term, &f);
        }
        add_into(&mut full, &term, 1, &vec![0; nblocks]);
    }
    let Some(low) = full.keys().map(|e| e.iter().sum::<u32>()).min() else {
        return full;
    };
    full.into_iter().filter(|(e, _)| e.iter().sum::<u32>() == low).collect()
}

/// Full Hilbert data of `S/(gens)` for a monomial ideal.
pub fn monomial_hilbert_data(gens: &[Vec<u32>], blocks: &[usize], nblocks: usize) -> HilbertData {
    let numerator = hilbert_numerator(gens, blocks, nblocks);
    let mut counts = vec![0u32; nblocks];
    for &b in blocks {
        counts[b] += 1;
    }
    let (dimension, degree) = dimension_and_degree(&total_grading(&numerator), blocks.len() as u32);
    let multidegree = multidegree_of(&numerator, nblocks);
    HilbertData { numerator, denominator_exponents: counts, dimension, degree, multidegree }
}

/// Number of monomials outside the ideal, `None` if infinite.
pub fn standard_monomial_count(gens: &[Vec<u32>], nvars: usize) -> Option<u64> {
    let g = minimalize(gens);
    for i in 0..nvars {
        let pure = g.iter().any(|m| m[i] > 0 && m.iter().enumerate().all(|(j, &e)| j == i || e == 0));
        if !pure {
            return None;
        }
    }
    let data = monomial_hilbert_data(&g, &vec![0; nvars], 1);
    Some(data.degree.max(0) as u64)
}

/// Krull dimension from a maximal independent set of variables; `-1` for the unit ideal.
pub fn independent_set_dimension(gens: &[Vec<u32>], nvars: usize) -> i64 {
    let g = minimalize(gens);
    if g.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return -1;
    }
    let supports: Vec<u64> = g
        .iter()
        .map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | 1 << i))
        .collect();
    let mut best = 0;
    for u in 0u64..(1u64 << nvars) {
        let size = u.count_ones() as i64;
        if size > best && supports.iter().all(|&s| s & !u != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(gens: &[Vec<u32>], bound: u32) -> u64 {
        let mut n = 0;
        for a in 0..bound {
            for b in 0..bound {
                if !gens.iter().any(|g| g[0] <= a && g[1] <= b) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn staircases() {
        let gens = vec![vec![2, 0], vec![1, 1], vec![0, 3]];
        assert_eq!(standard_monomial_count(&gens, 2), Some(4));
        assert_eq!(brute_count(&gens, 10), 4);
        assert_eq!(standard_monomial_count(&[vec![1, 1]], 2), None);
        assert_eq!(standard_monomial_count(&[vec![2, 0], vec![0, 4]], 2), Some(8));
    }

    #[test]
    fn conic_and_diagonal() {
        // leading term of a conic in P^2
        let d = monomial_hilbert_data(&[vec![2, 0, 0]], &[0, 0, 0], 1);
        assert_eq!((d.dimension, d.degree), (2, 2));
        // x0*y1 in P^1 x P^1
        let d = monomial_hilbert_data(&[vec![1, 0, 0, 1]], &[0, 0, 1, 1], 2);
        assert_eq!(d.projective_dimension(), 1);
        assert_eq!(d.bidegrees(), vec![1, 1]);
    }

    #[test]
    fn independent_sets() {
        assert_eq!(independent_set_dimension(&[vec![1, 1, 0]], 3), 2);
        assert_eq!(independent_set_dimension(&[vec![1, 0, 0], vec![0, 1, 0]], 3), 1);
        assert_eq!(independent_set_dimension(&[vec![0, 0, 0]], 3), -1);
        assert_eq!(independent_set_dimension(&[], 3), 3);
    }
}
