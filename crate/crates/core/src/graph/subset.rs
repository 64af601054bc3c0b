use serde::{Serialize, Serializer};

use super::{EdgeId, Graph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A set of edge ids of one particular [`Graph`].
///
/// Subsets remember which graph they were built for; handing a subset to an
/// operation on another graph is an error rather than a silent misread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubset {
    token: u64,
    mask: Vec<bool>,
    len: usize,
}

impl EdgeSubset {
    pub fn empty(g: &Graph) -> EdgeSubset {
        EdgeSubset { token: g.token(), mask: vec![false; g.edge_count()], len: 0 }
    }

    pub fn full(g: &Graph) -> EdgeSubset {
        EdgeSubset { token: g.token(), mask: vec![true; g.edge_count()], len: g.edge_count() }
    }

    pub fn from_ids(g: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Result<EdgeSubset> {
        let mut s = EdgeSubset::empty(g);
        for e in ids {
            g.try_edge(e)?;
            s.insert(e);
        }
        Ok(s)
    }

    pub(crate) fn insert(&mut self, e: EdgeId) {
        if !self.mask[e] {
            self.mask[e] = true;
            self.len += 1;
        }
    }

    pub(crate) fn remove(&mut self, e: EdgeId) {
        if self.mask[e] {
            self.mask[e] = false;
            self.len -= 1;
        }
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.mask.iter().enumerate().filter_map(|(e, &m)| m.then_some(e))
    }

    pub fn weight(&self, g: &Graph) -> Result<Rational> {
        self.check_parent(g)?;
        Ok(self.ids().map(|e| g.weight(e)).sum())
    }

    pub fn union(&self, other: &EdgeSubset) -> Result<EdgeSubset> {
        if self.token != other.token {
            return Err(Error::ForeignSubset);
        }
        let mut out = self.clone();
        for e in other.ids() {
            out.insert(e);
        }
        Ok(out)
    }

    pub fn without(&self, e: EdgeId) -> EdgeSubset {
        let mut out = self.clone();
        out.remove(e);
        out
    }

    pub fn is_subset_of(&self, other: &EdgeSubset) -> bool {
        self.token == other.token && self.ids().all(|e| other.contains(e))
    }

    pub fn belongs_to(&self, g: &Graph) -> bool {
        self.token == g.token() && self.mask.len() == g.edge_count()
    }

    pub(crate) fn check_parent(&self, g: &Graph) -> Result<()> {
        if self.belongs_to(g) {
            Ok(())
        } else {
            Err(Error::ForeignSubset)
        }
    }
}

impl Serialize for EdgeSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.ids())
    }
}
