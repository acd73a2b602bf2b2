//! Characteristic classes from the graph construction: Rees ideals, limit cycles,
//! Segre classes of fibres, `χ` and `μ` as Chern–Segre integrals, CSM classes of
//! projective hypersurfaces and Ohmoto's zero scheme.
//!
//! Every class lives in a product `C^m × P^N`. Over a fibre `{z} × P^N` the base
//! bundles are trivial, so all integrands are series in the fibre hyperplane class.

mod classes;
mod csm;
mod limits;
mod ohmoto;
mod rees;
mod segre;

pub use classes::{signs, ChernIntegrand, CycleClass, SegreClass};
pub use csm::{csm_projective_hypersurface, CsmClasses};
pub use limits::{
    chi_at_point, graph_limit_cycle, lagrangian_specialisation, mu_at_point, mu_at_point_experimental,
    sigma_f_ideal, GraphLimit, LagrangianLimit,
};
pub use ohmoto::{mu_total_oracle, mu_total_via_z, ohmoto_z_ideal};
pub use rees::rees_graph_ideal;
pub use segre::{segre_class, segre_class_fibre};

use std::ops::Range;
use std::sync::Arc;

use crate::error::Result;
use crate::ideal::slicing::{BlockKind, ProductSpace};
use crate::poly::{MonomialOrder, PolyRing};

/// A ring whose variables are split into affine and projective blocks, graded by block.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub ring: Arc<PolyRing>,
    pub blocks: Vec<(BlockKind, Range<usize>)>,
}

impl Layout {
    pub fn new(blocks: &[(BlockKind, Vec<String>)]) -> Result<Layout> {
        let mut names = Vec::new();
        let mut grading = Vec::new();
        let mut ranges = Vec::new();
        for (k, (kind, vars)) in blocks.iter().enumerate() {
            let start = names.len();
            names.extend(vars.iter().cloned());
            grading.extend(std::iter::repeat(k).take(vars.len()));
            ranges.push((*kind, start..names.len()));
        }
        let ring = PolyRing::graded(&names, MonomialOrder::GrevLex, grading)?;
        Ok(Layout { ring, blocks: ranges })
    }

    pub fn block(&self, k: usize) -> Range<usize> {
        self.blocks[k].1.clone()
    }

    /// Slicing space over the non-empty blocks, with the block indices it keeps.
    pub fn space(&self) -> Result<(ProductSpace, Vec<usize>)> {
        let kept: Vec<usize> = (0..self.blocks.len()).filter(|&k| !self.blocks[k].1.is_empty()).collect();
        let names: Vec<Vec<String>> =
            kept.iter().map(|&k| self.blocks[k].1.clone().map(|i| self.ring.vars()[i].clone()).collect()).collect();
        let spec: Vec<(BlockKind, &[String])> =
            kept.iter().zip(&names).map(|(&k, n)| (self.blocks[k].0, n.as_slice())).collect();
        Ok((ProductSpace::new(&self.ring, &spec)?, kept))
    }
}

/// Picks a name not in `taken` and records it.
pub(crate) fn fresh(taken: &mut Vec<String>, stem: &str) -> String {
    let mut name = stem.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    taken.push(name.clone());
    name
}
