use std::sync::Arc;

use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Named variables, a monomial order and an optional multigrading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
    grading: Option<Vec<usize>>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Arc<PolyRing>> {
        Self::build(vars.iter().map(|v| v.as_ref().to_string()).collect(), order, None)
    }

    /// A ring whose variable `i` lies in grading block `blocks[i]`.
    pub fn graded<S: AsRef<str>>(
        vars: &[S],
        order: MonomialOrder,
        blocks: Vec<usize>,
    ) -> Result<Arc<PolyRing>> {
        Self::build(vars.iter().map(|v| v.as_ref().to_string()).collect(), order, Some(blocks))
    }

    fn build(
        vars: Vec<String>,
        order: MonomialOrder,
        grading: Option<Vec<usize>>,
    ) -> Result<Arc<PolyRing>> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidInput(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::BlockElim(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidInput(format!("elimination block {k} too large")));
            }
        }
        if let Some(g) = &grading {
            if g.len() != vars.len() {
                return Err(Error::InvalidInput("grading length differs from variable count".into()));
            }
        }
        Ok(Arc::new(PolyRing { vars, order, grading }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn grading(&self) -> Option<&[usize]> {
        self.grading.as_deref()
    }

    /// Number of grading blocks (1 for an ungraded ring, counted as standard grading).
    pub fn nblocks(&self) -> usize {
        match &self.grading {
            Some(g) => g.iter().max().map_or(0, |m| m + 1),
            None => 1,
        }
    }

    /// Block of variable `i` under the grading, block 0 when ungraded.
    pub fn block_of(&self, i: usize) -> usize {
        self.grading.as_ref().map_or(0, |g| g[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { vars: self.vars.clone(), order, grading: self.grading.clone() })
    }

    pub fn with_grading(&self, grading: Option<Vec<usize>>) -> Result<Arc<PolyRing>> {
        Self::build(self.vars.clone(), self.order, grading)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(PolyRing::new(&["x", "x"], MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["1x"], MonomialOrder::GrevLex).is_err());
        assert!(PolyRing::new(&["x"], MonomialOrder::BlockElim(2)).is_err());
        let r = PolyRing::graded(&["x", "u0", "u1"], MonomialOrder::GrevLex, vec![0, 1, 1]).unwrap();
        assert_eq!(r.nblocks(), 2);
        assert_eq!(r.index_of("u1"), Some(2));
    }
}
