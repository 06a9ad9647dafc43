//! Exact sparse linear algebra over the rationals.
//!
//! Everything downstream (cohomology, induced maps, extension problems,
//! spectral-sequence pages) reduces to three questions about finitely many
//! rational vectors: what is the rank, what is the kernel, and is a given
//! vector in a span (and with which coefficients). [`Echelon`] answers all
//! three incrementally.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, Q::one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, v) in entries {
            *acc.entry(i).or_insert_with(Q::zero) += v;
        }
        Self {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    /// Largest stored index plus one.
    pub fn support_end(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &SparseVec, c: &Q) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        self.add_scaled(other, &-Q::one())
    }

    /// Keeps the entries whose index satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    /// Re-indexes entries; `f` must be strictly increasing on the support.
    pub fn reindexed(&self, mut f: impl FnMut(usize) -> usize) -> Self {
        Self::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())))
    }
}

/// Column-major sparse matrix: column `j` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            cols: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.support_end() <= nrows));
        Self { nrows, cols }
    }

    /// Row-major dense input, convenient in tests and fixtures.
    pub fn from_rows(rows: &[Vec<Q>], ncols: usize) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged row {r}");
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[c].push((r, v.clone()));
                }
            }
        }
        Self {
            nrows: rows.len(),
            cols: cols.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.cols[c].get(r)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (j, x) in v.iter() {
            for (i, a) in self.cols[j].iter() {
                *acc.entry(i).or_insert_with(Q::zero) += a * x;
            }
        }
        SparseVec::from_entries(acc)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch in compose");
        SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            nrows: self.ncols(),
            cols: rows.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Q>> {
        let mut rows = vec![vec![Q::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col.iter() {
                rows[i][j] = v.clone();
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c);
        }
        e.rank()
    }

    /// Kernel basis: one vector per non-pivot column, in column order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::tracking();
        let mut out = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            if let Inserted::Dependent(comb) = e.insert(c) {
                out.push(SparseVec::unit(j).sub(&comb));
            }
        }
        out
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut e = Echelon::tracking();
        for c in &self.cols {
            e.insert(c);
        }
        e.solve(b)
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Q {
        assert_eq!(self.nrows, self.ncols(), "determinant of a non-square matrix");
        let mut rows = self.to_dense_rows();
        let n = rows.len();
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] / &pivot;
                for c in col..n {
                    let delta = &f * &rows[col][c];
                    rows[r][c] -= delta;
                }
            }
        }
        det
    }
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inserted {
    /// The vector enlarged the span; its reduced form has this pivot.
    Independent(usize),
    /// The vector was already in the span. With tracking enabled the payload
    /// expresses it as a combination of previously inserted vectors (by
    /// insertion index); otherwise it is empty.
    Dependent(SparseVec),
}

/// An incrementally built row-echelon basis of a subspace.
///
/// Rows have leading coefficient 1 at distinct pivots. With tracking enabled
/// each row remembers how it was assembled from the inserted vectors, so
/// membership queries can return explicit coefficients.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    track: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Self {
            track: Some(Vec::new()),
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// coefficients (by row) that were subtracted.
    fn reduce_with(&self, v: &SparseVec) -> (SparseVec, Vec<(usize, Q)>) {
        let mut w = v.clone();
        let mut used = Vec::new();
        let mut cursor = 0;
        loop {
            let hit = w
                .iter()
                .filter(|(i, _)| *i >= cursor)
                .find_map(|(i, x)| self.pivot_row.get(&i).map(|&r| (i, r, x.clone())));
            let Some((i, r, x)) = hit else { break };
            w = w.add_scaled(&self.rows[r], &-x.clone());
            used.push((r, x));
            cursor = i + 1;
        }
        (w, used)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    fn combination(&self, used: &[(usize, Q)]) -> SparseVec {
        let track = self.track.as_ref().expect("echelon built without tracking");
        used.iter()
            .fold(SparseVec::new(), |acc, (r, x)| acc.add_scaled(&track[*r], x))
    }

    pub fn insert(&mut self, v: &SparseVec) -> Inserted {
        let index = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_with(v);
        match rem.leading() {
            None => {
                let comb = if self.track.is_some() {
                    self.combination(&used)
                } else {
                    SparseVec::new()
                };
                Inserted::Dependent(comb)
            }
            Some((p, lead)) => {
                let inv = Q::one() / lead;
                let row = rem.scaled(&inv);
                let t = self
                    .track
                    .is_some()
                    .then(|| SparseVec::unit(index).sub(&self.combination(&used)).scaled(&inv));
                if let (Some(track), Some(t)) = (self.track.as_mut(), t) {
                    track.push(t);
                }
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(row);
                Inserted::Independent(p)
            }
        }
    }

    /// Coefficients (by insertion index) expressing `v` in the span, if it lies there.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, used) = self.reduce_with(v);
        rem.is_zero().then(|| self.combination(&used))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        SparseMatrix::from_rows(&rows, ncols)
    }

    #[test]
    fn add_scaled_cancels() {
        let a = SparseVec::from_entries([(0, q(1)), (3, q(2))]);
        let b = SparseVec::from_entries([(3, q(1)), (5, q(1))]);
        let c = a.add_scaled(&b, &q(-2));
        assert_eq!(c, SparseVec::from_entries([(0, q(1)), (5, q(-2))]));
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.apply(&ker[0]).is_zero());
    }

    #[test]
    fn solve_finds_preimage_or_none() {
        let a = m(&[&[1, 1], &[0, 1], &[1, 2]]);
        let b = SparseVec::from_dense(&[q(3), q(1), q(4)]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        let bad = SparseVec::from_dense(&[q(1), q(0), q(0)]);
        assert!(a.solve(&bad).is_none());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[2, 1], &[1, 3]]).determinant(), q(5));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), q(0));
    }

    #[test]
    fn transpose_and_compose() {
        let a = m(&[&[1, 2], &[3, 4], &[5, 6]]);
        let t = a.transpose();
        assert_eq!(t.to_dense_rows(), m(&[&[1, 3, 5], &[2, 4, 6]]).to_dense_rows());
        let p = t.compose(&a);
        assert_eq!(p.to_dense_rows(), m(&[&[35, 44], &[44, 56]]).to_dense_rows());
    }
}
