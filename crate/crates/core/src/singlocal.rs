//! Classical local invariants of map germs: Jacobian and critical schemes, Milnor
//! numbers, relative conormal spaces and discriminants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::ideal::{eliminate, saturate, Ideal};
use crate::poly::{MonomialOrder, Poly, PolyRing};

/// A polynomial map germ `f: (C^m, p) → (C^n, f(p))`.
///
/// On construction coordinates are translated so that `p` becomes the origin and
/// `f(p)` is subtracted, so every component vanishes at the origin.
#[derive(Clone, Debug)]
pub struct GermMap {
    ring: Arc<PolyRing>,
    components: Vec<Poly>,
    base_point: Vec<Rational>,
    value: Vec<Rational>,
}

impl GermMap {
    pub fn new(components: Vec<Poly>, base_point: Option<Vec<Rational>>) -> Result<GermMap> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidInput("a map needs at least one component".into()));
        };
        let src = first.ring().clone();
        if components.iter().any(|c| c.ring().vars() != src.vars()) {
            return Err(Error::RingMismatch);
        }
        let m = src.nvars();
        if components.len() > m {
            return Err(Error::InvalidInput("target dimension exceeds source dimension".into()));
        }
        let ring = src.with_order(MonomialOrder::GrevLex);
        let p = base_point.unwrap_or_else(|| vec![Rational::zero(); m]);
        if p.len() != m {
            return Err(Error::InvalidInput(format!("base point needs {m} coordinates")));
        }
        let shift: Vec<Poly> = (0..m)
            .map(|i| Poly::var(&ring, i).add(&Poly::constant(&ring, p[i].clone())))
            .collect();
        let mut value = Vec::new();
        let mut comps = Vec::new();
        for c in &components {
            let v = c.eval(&p);
            comps.push(c.reorder(&ring).substitute(&shift).sub(&Poly::constant(&ring, v.clone())));
            value.push(v);
        }
        Ok(GermMap { ring, components: comps, base_point: p, value })
    }

    /// Germ at the origin.
    pub fn at_origin(components: Vec<Poly>) -> Result<GermMap> {
        GermMap::new(components, None)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn source_dim(&self) -> usize {
        self.ring.nvars()
    }

    pub fn target_dim(&self) -> usize {
        self.components.len()
    }

    pub fn base_point(&self) -> &[Rational] {
        &self.base_point
    }

    /// `f(p)` before translation.
    pub fn value(&self) -> &[Rational] {
        &self.value
    }

    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        jacobian_matrix(&self.components)
    }
}

pub fn jacobian_matrix(f: &[Poly]) -> Vec<Vec<Poly>> {
    f.iter()
        .map(|fi| (0..fi.ring().nvars()).map(|j| fi.derivative(j)).collect())
        .collect()
}

fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Poly::zero(&ring);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = m[0][c].mul(&det(&minor));
        acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k × k` minors of a matrix of polynomials.
pub fn minors(m: &[Vec<Poly>], k: usize) -> Vec<Poly> {
    if k == 0 || m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut out = Vec::new();
    for rows in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let d = det(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// `(∂f/∂z_1, …, ∂f/∂z_m)`.
pub fn jacobian_ideal(f: &Poly) -> Ideal {
    let ring = f.ring();
    Ideal::from_polys(ring, (0..ring.nvars()).map(|j| f.derivative(j)).collect())
}

/// The ideal of `n × n` minors of the Jacobian matrix.
pub fn critical_scheme(f: &GermMap) -> Ideal {
    Ideal::from_polys(&f.ring, minors(&f.jacobian(), f.target_dim()))
}

/// `dim_Q O_{C^m,0} / I` via a local standard basis; `None` when infinite.
pub fn local_vsdim(i: &Ideal) -> Option<u64> {
    i.with_order(MonomialOrder::LocalDs).vsdim()
}

/// Milnor number of a hypersurface germ at the origin, `dim O/J(f)`.
///
/// When the global critical locus is the origin alone the global quotient is used;
/// otherwise a local standard basis. Zero at smooth points.
pub fn milnor_number_hypersurface(f: &Poly) -> Result<u64> {
    let j = jacobian_ideal(f);
    let g = j.with_order(MonomialOrder::GrevLex);
    if g.is_unit() {
        return Ok(0);
    }
    let ring = g.ring().clone();
    let maximal = Ideal::from_polys(&ring, (0..ring.nvars()).map(|i| Poly::var(&ring, i)).collect());
    if saturate(&g, &maximal)?.is_unit() {
        return g.vsdim().ok_or(Error::NonIsolated);
    }
    local_vsdim(&j).ok_or(Error::NonIsolated)
}

/// Milnor number of an isolated complete intersection germ by the Lê–Greuel recursion
/// `μ(f_1..f_k) + μ(f_1..f_{k-1}) = dim O/((f_1..f_{k-1}) + I_k(J(f_1..f_k)))`.
pub fn le_greuel_icis(f: &GermMap) -> Result<u64> {
    let comps = f.components();
    let mut prev: i64 = 0;
    for k in 1..=comps.len() {
        let head = &comps[..k];
        let mut gens: Vec<Poly> = head[..k - 1].to_vec();
        gens.extend(minors(&jacobian_matrix(head), k));
        let i = Ideal::from_polys(&f.ring, gens);
        let d = local_vsdim(&i).ok_or(Error::NotICIS)? as i64;
        let mu = d - prev;
        if mu < 0 {
            return Err(Error::NotICIS);
        }
        prev = mu;
    }
    Ok(prev as u64)
}

fn fresh(ring: &PolyRing, taken: &[String], stem: &str) -> String {
    let mut name = stem.to_string();
    while ring.index_of(&name).is_some() || taken.contains(&name) {
        name.push('_');
    }
    name
}

/// Relative conormal ideal in `C[z_1..z_m, a_1..a_m]`, the cotangent variables forming
/// the second grading block.
#[derive(Clone, Debug)]
pub struct ConormalIdeal {
    pub ring: Arc<PolyRing>,
    pub ideal: Ideal,
    /// Number of source variables; the cotangent variables follow them.
    pub m: usize,
}

impl ConormalIdeal {
    pub fn dimension(&self) -> i64 {
        self.ideal.krull_dimension()
    }
}

/// The closure of `{(z, a) : a ∈ rowspan df(z)}` over the submersion locus.
pub fn relative_conormal_ideal(f: &GermMap) -> Result<ConormalIdeal> {
    let src = &f.ring;
    let (m, n) = (f.source_dim(), f.target_dim());
    let mut names: Vec<String> = Vec::new();
    for i in 0..n {
        let l = fresh(src, &names, &format!("l{}", i + 1));
        names.push(l);
    }
    let mut a_names = Vec::new();
    for v in src.vars() {
        let a = fresh(src, &names, &format!("a_{v}"));
        names.push(a.clone());
        a_names.push(a);
    }
    // lambda block first so it can be eliminated
    let mut all: Vec<String> = names[..n].to_vec();
    all.extend(src.vars().iter().cloned());
    all.extend(a_names.iter().cloned());
    let work = PolyRing::new(&all, MonomialOrder::GrevLex)?;
    let embed: Vec<Option<usize>> = (0..m).map(|j| Some(n + j)).collect();
    let jac = f.jacobian();
    let mut gens = Vec::new();
    for j in 0..m {
        let mut g: Poly = Poly::var(&work, n + m + j);
        for (i, row) in jac.iter().enumerate() {
            let l: Poly = Poly::var(&work, i);
            g = g.sub(&l.mul(&row[j].map_vars(&work, &embed)));
        }
        gens.push(g);
    }
    let elim = eliminate(&Ideal::from_polys(&work, gens), &(0..n).collect::<Vec<_>>())?;
    let mut za: Vec<String> = src.vars().to_vec();
    za.extend(a_names);
    let ring = PolyRing::graded(&za, MonomialOrder::GrevLex, (0..2 * m).map(|k| usize::from(k >= m)).collect())?;
    let elim = elim.in_ring(&ring);
    let lift: Vec<Option<usize>> = (0..m).map(Some).collect();
    let crit = Ideal::from_polys(&ring, critical_scheme(f).gens().iter().map(|g| g.map_vars(&ring, &lift)).collect());
    let ideal = saturate(&elim, &crit)?;
    Ok(ConormalIdeal { ring, ideal, m })
}

/// Fibre dimensions of the relative conormal space over target points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoBlowupReport {
    /// `(target point, dimension)`; the first entry is the image of the base point.
    pub fibre_dimensions: Vec<(Vec<Rational>, i64)>,
    pub pass: bool,
}

/// Checks that the conormal fibres over the base value and over `samples`
/// (target points in translated coordinates) all have dimension `m`.
pub fn check_no_blowup_codim0(f: &GermMap, samples: &[Vec<Rational>]) -> Result<NoBlowupReport> {
    let con = relative_conormal_ideal(f)?;
    let (m, n) = (f.source_dim(), f.target_dim());
    let lift: Vec<Option<usize>> = (0..m).map(Some).collect();
    let mut points = vec![vec![Rational::zero(); n]];
    for s in samples {
        if s.len() != n {
            return Err(Error::InvalidInput(format!("sample point needs {n} coordinates")));
        }
        points.push(s.clone());
    }
    let mut out = Vec::new();
    for w in points {
        let extra: Vec<Poly> = f
            .components()
            .iter()
            .zip(&w)
            .map(|(c, wi)| c.map_vars(&con.ring, &lift).sub(&Poly::constant(&con.ring, wi.clone())))
            .collect();
        let dim = con.ideal.with_gens(&extra).krull_dimension();
        out.push((w, dim));
    }
    let pass = out.iter().all(|(_, d)| *d == m as i64);
    Ok(NoBlowupReport { fibre_dimensions: out, pass })
}

/// Ideal of the discriminant in the target coordinates `w` (or `w1..wn`).
pub fn discriminant_ideal(f: &GermMap) -> Result<Ideal> {
    let src = &f.ring;
    let (m, n) = (f.source_dim(), f.target_dim());
    let mut w = Vec::new();
    for i in 0..n {
        let stem = if n == 1 { "w".to_string() } else { format!("w{}", i + 1) };
        let name = fresh(src, &w, &stem);
        w.push(name);
    }
    let mut all: Vec<String> = src.vars().to_vec();
    all.extend(w);
    let ring = PolyRing::new(&all, MonomialOrder::GrevLex)?;
    let lift: Vec<Option<usize>> = (0..m).map(Some).collect();
    let mut gens: Vec<Poly> = critical_scheme(f).gens().iter().map(|g| g.map_vars(&ring, &lift)).collect();
    for (i, c) in f.components().iter().enumerate() {
        gens.push(c.map_vars(&ring, &lift).sub(&Poly::var(&ring, m + i)));
    }
    eliminate(&Ideal::from_polys(&ring, gens), &(0..m).collect::<Vec<_>>())
}
