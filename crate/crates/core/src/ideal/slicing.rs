//! Multidegrees of subvarieties of products of affine and projective spaces by
//! generic linear slicing.
//!
//! A block of `n` coordinates is either affine (`C^n`) or projective (`P^{n-1}`).
//! Cutting a block with `c` generic hyperplanes is done by substituting a random
//! affine parametrisation of the cut: `C^{n-c}` for an affine block, a random chart
//! of `P^{n-1-c}` for a projective one. Components lying in the zero locus of the
//! `remove` ideals are discarded by inverting a generic combination of their
//! generators, and the remaining points are counted with multiplicity.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{buchberger, hilbert, Ideal};
use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rational};
use crate::generic::{Draw, Genericity};
use crate::poly::{MonomialOrder, Poly, PolyRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub vars: Vec<usize>,
}

impl Block {
    /// Dimension of the factor.
    pub fn dim(&self) -> u32 {
        match self.kind {
            BlockKind::Affine => self.vars.len() as u32,
            BlockKind::Projective => self.vars.len() as u32 - 1,
        }
    }
}

/// A product of affine and projective spaces whose coordinates are the ring variables.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    ring: Arc<PolyRing>,
    blocks: Vec<Block>,
}

impl ProductSpace {
    pub fn new<S: AsRef<str>>(ring: &Arc<PolyRing>, blocks: &[(BlockKind, &[S])]) -> Result<ProductSpace> {
        let mut seen = vec![false; ring.nvars()];
        let mut out = Vec::new();
        for (kind, names) in blocks {
            let mut vars = Vec::new();
            for n in names.iter() {
                let i = ring
                    .index_of(n.as_ref())
                    .ok_or_else(|| Error::UnknownVariable(n.as_ref().to_string()))?;
                if seen[i] {
                    return Err(Error::InvalidInput(format!("variable `{}` in two blocks", n.as_ref())));
                }
                seen[i] = true;
                vars.push(i);
            }
            if *kind == BlockKind::Projective && vars.is_empty() {
                return Err(Error::InvalidInput("empty projective block".into()));
            }
            out.push(Block { kind: *kind, vars });
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidInput(format!("variable `{}` in no block", ring.vars()[i])));
        }
        Ok(ProductSpace { ring: ring.clone(), blocks: out })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> u32 {
        self.blocks.iter().map(Block::dim).sum()
    }

    /// Cut distributions with `total` hyperplanes, each block cut at most its dimension.
    pub fn distributions(&self, total: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.blocks.len()];
        self.fill(0, total, &mut cur, &mut out);
        out
    }

    fn fill(&self, b: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if b == self.blocks.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for c in 0..=left.min(self.blocks[b].dim()) {
            cur[b] = c;
            self.fill(b + 1, left - c, cur, out);
        }
        cur[b] = 0;
    }
}

/// Cycle data of a slice computation: dimension and point counts per cut distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multidegree {
    pub dim: u32,
    pub counts: BTreeMap<Vec<u32>, u64>,
}

impl Multidegree {
    pub fn get(&self, cuts: &[u32]) -> u64 {
        self.counts.get(cuts).copied().unwrap_or(0)
    }
}

fn convert<F: Field>(p: &Poly, f: &impl Fn(&Rational) -> Option<F>) -> Option<Poly<F>> {
    p.map_coeffs(f)
}

fn count_once<F: Field>(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    cuts: &[u32],
    draw: &mut Draw,
    conv: &impl Fn(&Rational) -> Option<F>,
) -> Option<Option<u64>> {
    if space.blocks.iter().zip(cuts).any(|(b, &c)| c > b.dim()) {
        return Some(Some(0));
    }
    if remove.iter().any(Ideal::is_zero) {
        return Some(Some(0));
    }
    let nparams: u32 = space.blocks.iter().zip(cuts).map(|(b, &c)| b.dim() - c).sum();
    let need_y = remove.iter().any(|r| !r.gens().iter().any(Poly::is_constant));
    let mut names: Vec<String> = (0..nparams).map(|k| format!("t{k}")).collect();
    if need_y {
        names.push("y".into());
    }
    let target = PolyRing::new(&names, MonomialOrder::GrevLex).expect("parameter ring");
    let mut images: Vec<Poly<F>> = vec![Poly::zero(&target); space.ring.nvars()];
    let mut offset = 0usize;
    for (b, &c) in space.blocks.iter().zip(cuts) {
        let q = (b.dim() - c) as usize;
        for &v in &b.vars {
            let mut img = Poly::constant(&target, F::from_i64(draw.coeff()));
            for k in 0..q {
                let t: Poly<F> = Poly::var(&target, offset + k);
                img = img.add(&t.scale(&F::from_i64(draw.coeff())));
            }
            images[v] = img;
        }
        offset += q;
    }
    let mut gens = Vec::new();
    for g in ideal.gens() {
        gens.push(convert(g, conv)?.substitute(&images));
    }
    if need_y {
        let mut h: Poly<F> = Poly::one(&target);
        for r in remove {
            if r.gens().iter().any(Poly::is_constant) {
                continue;
            }
            let mut comb = Poly::zero(&target);
            for g in r.gens() {
                let s = convert(g, conv)?.substitute(&images);
                comb = comb.add(&s.scale(&F::from_i64(draw.nonzero())));
            }
            h = h.mul(&comb);
        }
        let y: Poly<F> = Poly::var(&target, nparams as usize);
        gens.push(Poly::one(&target).sub(&y.mul(&h)));
    }
    let gb = buchberger(&gens);
    if gb.iter().any(|g| g.is_constant()) {
        return Some(Some(0));
    }
    let lead: Vec<Vec<u32>> = gb.iter().map(|g| g.leading_monomial().unwrap().exponents().to_vec()).collect();
    Some(hilbert::standard_monomial_count(&lead, target.nvars()))
}

/// Number of points, with multiplicity, of `closure(V(I) ∖ ∪ V(remove))` cut by `cuts[b]`
/// generic hyperplanes in block `b`; `None` when the cut is positive dimensional.
pub fn sliced_count(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    cuts: &[u32],
    ctx: &Genericity,
) -> Result<Option<u64>> {
    check_space(ideal, remove, space, cuts)?;
    ctx.agree(|draw| {
        Ok(count_once(ideal, remove, space, cuts, draw, &|q: &Rational| Some(q.clone()))
            .expect("rational coefficients always convert"))
    })
}

fn sliced_count_mod_p(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    cuts: &[u32],
    ctx: &Genericity,
) -> Result<Option<Option<u64>>> {
    ctx.agree(|draw| Ok(count_once(ideal, remove, space, cuts, draw, &|q: &Rational| Fp::from_rational(q))))
}

fn check_space(ideal: &Ideal, remove: &[Ideal], space: &ProductSpace, cuts: &[u32]) -> Result<()> {
    if ideal.ring().vars() != space.ring.vars() || remove.iter().any(|r| r.ring().vars() != space.ring.vars()) {
        return Err(Error::RingMismatch);
    }
    if cuts.len() != space.blocks.len() {
        return Err(Error::InvalidInput("one cut count per block expected".into()));
    }
    Ok(())
}

enum Probe {
    Infinite,
    Counts(BTreeMap<Vec<u32>, u64>),
}

fn probe(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    d: u32,
    ctx: &Genericity,
    modular: bool,
) -> Result<Probe> {
    let mut counts = BTreeMap::new();
    for cuts in space.distributions(d) {
        let c = if modular {
            match sliced_count_mod_p(ideal, remove, space, &cuts, ctx)? {
                Some(c) => c,
                // a denominator vanished mod p: no verdict, treat as unknown
                None => return Ok(Probe::Infinite),
            }
        } else {
            sliced_count(ideal, remove, space, &cuts, ctx)?
        };
        match c {
            None => return Ok(Probe::Infinite),
            Some(0) => {}
            Some(n) => {
                counts.insert(cuts, n);
            }
        }
    }
    Ok(Probe::Counts(counts))
}

fn search(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    hint: Option<u32>,
    ctx: &Genericity,
    modular: bool,
) -> Result<Option<(u32, BTreeMap<Vec<u32>, u64>)>> {
    let top = space.dim();
    let start = hint.unwrap_or(0).min(top);
    // first d with every distribution finite is the dimension (all zero: empty)
    let mut d = start;
    let mut found: Option<(u32, BTreeMap<Vec<u32>, u64>)> = None;
    loop {
        match probe(ideal, remove, space, d, ctx, modular)? {
            Probe::Infinite => {
                if found.is_some() || d == top {
                    break;
                }
                d += 1;
            }
            Probe::Counts(c) => {
                found = Some((d, c));
                if d == 0 {
                    break;
                }
                if start > 0 && d <= start {
                    d -= 1;
                    continue;
                }
                break;
            }
        }
    }
    Ok(match found {
        Some((_, c)) if c.is_empty() => None,
        other => other,
    })
}

/// Dimension and multidegree of `closure(V(I) ∖ ∪ V(remove))`; `None` when empty.
///
/// `hint` is a guess of the dimension that shortens the search.
pub fn multidegree(
    ideal: &Ideal,
    remove: &[Ideal],
    space: &ProductSpace,
    hint: Option<u32>,
    ctx: &Genericity,
) -> Result<Option<Multidegree>> {
    check_space(ideal, remove, space, &vec![0; space.blocks.len()])?;
    let mut hint = hint;
    if ctx.prescreen() {
        if let Some((d, _)) = search(ideal, remove, space, hint, ctx, true)? {
            hint = Some(d);
        }
    }
    Ok(search(ideal, remove, space, hint, ctx, false)?.map(|(dim, counts)| Multidegree { dim, counts }))
}
