//! Sparse rational vectors and matrices with exact row reduction.

use std::collections::BTreeMap;

use super::Rat;
use crate::error::{Error, Result};

/// A sparse vector: index -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatVector {
    len: usize,
    entries: BTreeMap<usize, Rat>,
}

impl RatVector {
    pub fn zeros(len: usize) -> Self {
        RatVector {
            len,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(values: &[Rat]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        RatVector {
            len: values.len(),
            entries,
        }
    }

    pub fn from_entries(len: usize, entries: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut v = RatVector::zeros(len);
        for (i, c) in entries {
            v.add_at(i, &c);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rat {
        self.entries.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Rat)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn add_at(&mut self, i: usize, c: &Rat) {
        assert!(i < self.len, "index {i} out of bounds for length {}", self.len);
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(i).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    /// `self += factor * other`.
    pub fn axpy(&mut self, factor: &Rat, other: &RatVector) {
        debug_assert_eq!(self.len, other.len);
        if factor.is_zero() {
            return;
        }
        for (i, c) in &other.entries {
            self.add_at(*i, &(factor * c));
        }
    }

    pub fn scale(&self, factor: &Rat) -> RatVector {
        if factor.is_zero() {
            return RatVector::zeros(self.len);
        }
        RatVector {
            len: self.len,
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, c * factor))
                .collect(),
        }
    }
}

/// A sparse `rows x cols` matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<RatVector>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            cols,
            rows: vec![RatVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix {
            cols,
            rows: rows.iter().map(|r| RatVector::from_dense(r)).collect(),
        })
    }

    pub fn from_vectors(cols: usize, rows: Vec<RatVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(RatMatrix { cols, rows })
    }

    /// Builds a matrix from small integers, row by row.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        RatMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        let row = &mut self.rows[r];
        let old = row.get(c);
        row.add_at(c, &(value - old));
    }

    pub fn row(&self, r: usize) -> &RatVector {
        &self.rows[r]
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(RatVector::nnz).sum()
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = RatVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            let dot: Rat = row.iter().map(|(c, x)| x * v.get(c)).sum();
            out.add_at(r, &dot);
        }
        Ok(out)
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form over the rationals.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut rows: Vec<RatVector> = m.rows.clone();
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols {
        if next == nrows {
            break;
        }
        // Sparsest row with a nonzero in this column keeps fill-in down.
        let Some(p) = (next..nrows)
            .filter(|&r| !rows[r].get(col).is_zero())
            .min_by_key(|&r| rows[r].nnz())
        else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next].get(col).recip();
        rows[next] = rows[next].scale(&inv);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            let c = row.get(col);
            if !c.is_zero() {
                row.axpy(&-c, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    Rref {
        matrix: RatMatrix {
            cols: m.cols,
            rows,
        },
        rank: pivots.len(),
        pivots,
    }
}

/// Solves `values[j] = sum_k samples[j]^exponents[k] * c_k` for the components `c_k`.
///
/// Each value is a vector; the system is solved coordinatewise with one
/// shared inverse of the Vandermonde-type matrix.
pub fn solve_vandermonde(
    samples: &[i64],
    exponents: &[i32],
    values: &[RatVector],
) -> Result<Vec<RatVector>> {
    if samples.len() != values.len() {
        return Err(Error::Shape(format!(
            "{} samples but {} values",
            samples.len(),
            values.len()
        )));
    }
    if samples.len() != exponents.len() {
        return Err(Error::Shape(format!(
            "{} samples for {} unknown components",
            samples.len(),
            exponents.len()
        )));
    }
    for (i, s) in samples.iter().enumerate() {
        if *s == 0 {
            return Err(Error::DegenerateBasis("sample 0 is not allowed".into()));
        }
        if samples[..i].contains(s) {
            return Err(Error::DegenerateBasis(format!("repeated sample {s}")));
        }
    }
    let width = values.first().map_or(0, RatVector::len);
    if values.iter().any(|v| v.len() != width) {
        return Err(Error::Shape("values of differing lengths".into()));
    }
    let n = samples.len();
    // Augment [V | I] and reduce to get V^{-1}.
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for (j, &s) in samples.iter().enumerate() {
        for (k, &e) in exponents.iter().enumerate() {
            aug.set(j, k, Rat::int_pow(s, e));
        }
        aug.set(j, n + j, Rat::one());
    }
    let red = rref(&aug);
    if red.pivots.iter().take(n).copied().ne(0..n) {
        return Err(Error::DegenerateBasis(format!(
            "exponents {exponents:?} do not separate samples {samples:?}"
        )));
    }
    let mut out = vec![RatVector::zeros(width); n];
    for (k, comp) in out.iter_mut().enumerate() {
        let row = red.matrix.row(k);
        for j in 0..n {
            let c = row.get(n + j);
            comp.axpy(&c, &values[j]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn rref_proportional_rows() {
        let red = rref(&RatMatrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(red.rank, 1);
        assert_eq!(red.pivots, vec![0]);
        assert_eq!(red.matrix, RatMatrix::from_ints(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_identity_fixed() {
        let id = RatMatrix::identity(3);
        let red = rref(&id);
        assert_eq!(red.matrix, id);
        assert_eq!(red.rank, 3);
    }

    #[test]
    fn rref_two_by_two() {
        // [[1,1],[1,2]] -> R2 -= R1 -> [[1,1],[0,1]] -> R1 -= R2 -> I.
        let red = rref(&RatMatrix::from_ints(&[&[1, 1], &[1, 2]]));
        assert_eq!(red.matrix, RatMatrix::identity(2));
        assert_eq!(red.rank, 2);
        assert_eq!(red.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_empty() {
        let red = rref(&RatMatrix::zeros(0, 0));
        assert_eq!(red.rank, 0);
        assert!(red.pivots.is_empty());
    }

    #[test]
    fn vandermonde_two_by_two() {
        // 4a + 16b = 20, 9a + 81b = 90  =>  a = b = 1.
        let values = vec![RatVector::from_dense(&[r(20)]), RatVector::from_dense(&[r(90)])];
        let comps = solve_vandermonde(&[2, 3], &[2, 4], &values).unwrap();
        assert_eq!(comps[0].get(0), r(1));
        assert_eq!(comps[1].get(0), r(1));
    }

    #[test]
    fn vandermonde_single_unknown() {
        let comps =
            solve_vandermonde(&[3], &[2], &[RatVector::from_dense(&[r(7)])]).unwrap();
        assert_eq!(comps[0].get(0), Rat::new(7, 9));
    }

    #[test]
    fn vandermonde_zero_values() {
        let values = vec![RatVector::zeros(3); 3];
        let comps = solve_vandermonde(&[2, 3, 4], &[0, 1, 2], &values).unwrap();
        assert!(comps.iter().all(RatVector::is_zero));
    }

    #[test]
    fn vandermonde_repeated_exponent_is_degenerate() {
        let values = vec![RatVector::zeros(1); 2];
        assert!(matches!(
            solve_vandermonde(&[2, 3], &[2, 2], &values),
            Err(Error::DegenerateBasis(_))
        ));
        assert!(matches!(
            solve_vandermonde(&[2, 2], &[1, 2], &values),
            Err(Error::DegenerateBasis(_))
        ));
    }

    #[test]
    fn vandermonde_shape_errors() {
        assert!(matches!(
            solve_vandermonde(&[2, 3], &[1, 2], &[RatVector::zeros(1)]),
            Err(Error::Shape(_))
        ));
    }
}
