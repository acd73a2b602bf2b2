//! Buchberger's algorithm with the Gebauer–Möller criteria.

use std::cell::Cell;

use crate::field::Field;
use crate::poly::{reduce, Monomial, MonomialOrder, Poly};

/// Counters collected by the Gröbner engine on the current thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub bases: u64,
    pub pairs: u64,
    pub zero_reductions: u64,
}

thread_local! {
    static STATS: Cell<GbStats> = const { Cell::new(GbStats { bases: 0, pairs: 0, zero_reductions: 0 }) };
}

/// Returns and resets the counters of this thread.
pub fn take_gb_stats() -> GbStats {
    STATS.with(|s| s.replace(GbStats::default()))
}

fn bump(f: impl FnOnce(&mut GbStats)) {
    STATS.with(|s| {
        let mut v = s.get();
        f(&mut v);
        s.set(v);
    });
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Basis<F: Field> {
    polys: Vec<Poly<F>>,
    sugar: Vec<u32>,
    live: Vec<bool>,
}

impl<F: Field> Basis<F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.lm(i), self.lm(j));
        let lcm = a.lcm(b);
        let d = lcm.degree();
        let sugar = (self.sugar[i] + d - a.degree()).max(self.sugar[j] + d - b.degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer–Möller update after adding polynomial `h`.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: usize) {
        let lm_h = self.lm(h).clone();
        let mut c: Vec<Pair> = (0..h).filter(|&g| self.live[g]).map(|g| self.pair(g, h)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = c.pop() {
            let coprime = self.lm(p.i).is_coprime(&lm_h);
            if coprime || !c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm)) {
                d.push(p);
            }
        }
        d.retain(|p| !self.lm(p.i).is_coprime(&lm_h));

        pairs.retain(|p| {
            !lm_h.divides(&p.lcm)
                || self.lm(p.i).lcm(&lm_h) == p.lcm
                || self.lm(p.j).lcm(&lm_h) == p.lcm
        });
        pairs.extend(d);

        for g in 0..h {
            if self.live[g] && lm_h.divides(self.lm(g)) {
                self.live[g] = false;
            }
        }
    }

    fn active(&self) -> Vec<Poly<F>> {
        self.polys
            .iter()
            .zip(&self.live)
            .filter(|(_, &l)| l)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

fn spoly<F: Field>(f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let mf = f.leading_monomial().unwrap().div(lcm).unwrap();
    let mg = g.leading_monomial().unwrap().div(lcm).unwrap();
    let mut s = f.mul_term(&mf, &g.leading_coeff().unwrap().clone());
    s.sub_mul_term(f.leading_coeff().unwrap(), &mg, g);
    s
}

fn degree_compatible(order: MonomialOrder) -> bool {
    matches!(order, MonomialOrder::GrLex | MonomialOrder::GrevLex)
}

/// The reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by increasing leading monomial. The ring order must be global.
pub fn buchberger<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let order = ring.order();
    assert!(order.is_global(), "Buchberger needs a global order");
    bump(|s| s.bases += 1);

    let mut basis = Basis { polys: Vec::new(), sugar: Vec::new(), live: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();

    // seed with an interreduced generating set, smallest leading term first
    let mut seeds: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    seeds.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in seeds {
        let h = reduce(&g, &basis.active());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Poly::one(&ring)];
        }
        basis.sugar.push(h.total_degree().unwrap());
        basis.polys.push(h.monic());
        basis.live.push(true);
        let idx = basis.polys.len() - 1;
        basis.update(&mut pairs, idx);
    }

    let graded = degree_compatible(order);
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&pairs[a], &pairs[b]);
                let by_lcm = order.cmp(&p.lcm, &q.lcm);
                if graded {
                    by_lcm.then(p.sugar.cmp(&q.sugar))
                } else {
                    p.sugar.cmp(&q.sugar).then(by_lcm)
                }
                .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        bump(|s| s.pairs += 1);
        let s = spoly(&basis.polys[pair.i], &basis.polys[pair.j], &pair.lcm);
        let h = reduce(&s, &basis.active());
        if h.is_zero() {
            bump(|s| s.zero_reductions += 1);
            continue;
        }
        if h.is_constant() {
            return vec![Poly::one(&ring)];
        }
        basis.polys.push(h.monic());
        basis.sugar.push(pair.sugar);
        basis.live.push(true);
        let idx = basis.polys.len() - 1;
        basis.update(&mut pairs, idx);
    }
    interreduce(basis.active())
}

/// Turns a Gröbner basis into the reduced one.
pub(crate) fn interreduce<F: Field>(gb: Vec<Poly<F>>) -> Vec<Poly<F>> {
    if gb.is_empty() {
        return gb;
    }
    let order = gb[0].ring().order();
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for (k, g) in gb.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = gb.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().unwrap();
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            minimal.push(g.monic());
        }
    }
    minimal.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, p)| p.clone())
            .collect();
        let g = &minimal[k];
        let head = Poly::monomial(g.ring(), g.leading_monomial().unwrap().clone(), F::one());
        let tail = g.sub(&head);
        out.push(head.add(&reduce(&tail, &others)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};

    fn gb(vars: &[&str], order: MonomialOrder, gens: &[&str]) -> Vec<String> {
        let r = PolyRing::new(vars, order).unwrap();
        let g: Vec<_> = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        buchberger(&g).iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(gb(&["x", "y"], MonomialOrder::GrevLex, &["x^2", "x*y"]), ["x*y", "x^2"]);
        assert_eq!(gb(&["x", "y"], MonomialOrder::Lex, &["x+y", "x-y"]), ["y", "x"]);
        assert_eq!(gb(&["x", "y"], MonomialOrder::GrevLex, &["1"]), ["1"]);
        assert_eq!(gb(&["x", "y"], MonomialOrder::GrevLex, &["0"]), Vec::<String>::new());
    }

    #[test]
    fn twisted_cubic_lex() {
        // parametrisation (t, t^2, t^3) eliminated
        let got = gb(
            &["t", "x", "y", "z"],
            MonomialOrder::Lex,
            &["x - t", "y - t^2", "z - t^3"],
        );
        assert_eq!(got, ["y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y", "t - x"]);
    }
}
