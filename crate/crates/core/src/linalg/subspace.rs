use std::collections::BTreeMap;

use super::{Rat, RatVector};
use crate::error::{Error, Result};

/// A subspace of `Q^n`, kept as a fully reduced echelon basis keyed by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, RatVector>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    /// Span of the given vectors.
    pub fn spanned_by<'a>(
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a RatVector>,
    ) -> Result<Self> {
        let mut s = Subspace::new(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis in pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &RatVector> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn check(&self, v: &RatVector) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::Shape(format!(
                "vector of length {} in a subspace of Q^{}",
                v.len(),
                self.ambient
            )));
        }
        Ok(())
    }

    /// Residue of `v` modulo the subspace; zero iff `v` is a member.
    pub fn reduce(&self, v: &RatVector) -> Result<RatVector> {
        self.check(v)?;
        let mut r = v.clone();
        for (p, row) in &self.rows {
            let c = r.get(*p);
            if !c.is_zero() {
                r.axpy(&-c, row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &RatVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &RatVector) -> Result<bool> {
        let r = self.reduce(v)?;
        let Some((p, lead)) = r.leading() else {
            return Ok(false);
        };
        let r = r.scale(&lead.recip());
        for row in self.rows.values_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                row.axpy(&-c, &r);
            }
        }
        self.rows.insert(p, r);
        Ok(true)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis() {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of a member `v` in the echelon basis.
    pub fn coordinates(&self, v: &RatVector) -> Result<Option<Vec<Rat>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.rows.keys().map(|p| v.get(*p)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RatVector {
        RatVector::from_dense(&xs.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn full_plane() {
        let s = Subspace::spanned_by(2, &[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn empty_set() {
        let s = Subspace::spanned_by(3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&v(&[0, 0, 0])).unwrap());
        assert!(!s.contains(&v(&[0, 1, 0])).unwrap());
    }

    #[test]
    fn proportional_pair() {
        let s = Subspace::spanned_by(2, &[v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&v(&[-3, -6])).unwrap());
        assert!(!s.contains(&v(&[1, 0])).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let s = Subspace::new(2);
        assert!(matches!(s.contains(&v(&[1, 2, 3])), Err(Error::Shape(_))));
    }

    #[test]
    fn coordinates_reconstruct() {
        let s = Subspace::spanned_by(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let target = v(&[2, 5, 3]);
        let coords = s.coordinates(&target).unwrap().unwrap();
        let mut rebuilt = RatVector::zeros(3);
        for (c, b) in coords.iter().zip(s.basis()) {
            rebuilt.axpy(c, b);
        }
        assert_eq!(rebuilt, target);
        assert_eq!(s.coordinates(&v(&[1, 0, 0])).unwrap(), None);
    }
}
