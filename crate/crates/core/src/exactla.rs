//! Exact rational scalars and sparse linear algebra over ℚ.
//!
//! Everything here is exact: elimination is plain Gaussian elimination over
//! [`Rat`], with the pivot of each new row chosen by least bit-size to keep
//! coefficient growth in check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Bits of numerator plus bits of denominator.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Sparse vector: entries sorted by index, no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Rat::one())] }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rat)>>(iter: I) -> Self {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, c) in iter {
            *acc.entry(i).or_insert_with(Rat::zero) += c;
        }
        Self { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Rat]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Option<&Rat> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&mut self, a: &Rat) {
        if a.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, c) in &mut self.entries {
            *c *= a;
        }
    }

    pub fn scaled(&self, a: &Rat) -> Self {
        let mut out = self.clone();
        out.scale(a);
        out
    }

    /// `self += a * other`
    pub fn axpy(&mut self, a: &Rat, other: &SparseVec) {
        if a.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut lhs = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut rhs = other.entries.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(lhs.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, c) = rhs.next().unwrap();
                    out.push((*j, a * c));
                }
                (Some(_), Some(_)) => {
                    let (i, mut c) = lhs.next().unwrap();
                    let (_, d) = rhs.next().unwrap();
                    c += a * d;
                    if !c.is_zero() {
                        out.push((i, c));
                    }
                }
                (Some(_), None) => out.push(lhs.next().unwrap()),
                (None, Some(_)) => {
                    let (j, c) = rhs.next().unwrap();
                    out.push((*j, a * c));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, dense: &[Rat]) -> Rat {
        self.iter().map(|(i, c)| c * &dense[i]).sum()
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "}}")
    }
}

/// Fraction of nonzero entries below which a matrix is stored sparsely.
const SPARSE_DENSITY: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Storage {
    Dense(Vec<Vec<Rat>>),
    Sparse(Vec<SparseVec>),
}

/// Rational matrix with fixed dimensions; stored row-major, densely or sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_sparse_rows(cols, vec![SparseVec::new(); rows])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_sparse_rows(n, (0..n).map(SparseVec::unit).collect())
    }

    pub fn from_dense(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let sparse = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        Self::from_sparse_rows(cols, sparse)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_dense(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols)
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        assert!(
            rows.iter().all(|r| r.max_index().is_none_or(|i| i < cols)),
            "row entry out of range"
        );
        let n_rows = rows.len();
        let nnz: usize = rows.iter().map(SparseVec::nnz).sum();
        let total = (n_rows * cols).max(1);
        let storage = if (nnz as f64) / (total as f64) < SPARSE_DENSITY {
            Storage::Sparse(rows)
        } else {
            Storage::Dense(rows.iter().map(|r| r.to_dense(cols)).collect())
        };
        Self { rows: n_rows, cols, storage }
    }

    /// Builds a `rows × columns.len()` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut row_entries: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                row_entries[i].push((j, c.clone()));
            }
        }
        let rows_sparse = row_entries.into_iter().map(|e| SparseVec { entries: e }).collect();
        Self::from_sparse_rows(columns.len(), rows_sparse)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        match &self.storage {
            Storage::Dense(d) => d[i][j].clone(),
            Storage::Sparse(s) => s[i].get(j).cloned().unwrap_or_else(Rat::zero),
        }
    }

    pub fn row(&self, i: usize) -> SparseVec {
        match &self.storage {
            Storage::Dense(d) => SparseVec::from_dense(&d[i]),
            Storage::Sparse(s) => s[i].clone(),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.cols, &self.sparse_rows())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows).map(|i| self.row(i).dot(v)).collect()
    }
}

/// Incrementally built row echelon form.
///
/// Each stored row is normalized to 1 at its pivot and vanishes at the pivots
/// of all rows stored before it, so reducing against the rows in insertion
/// order clears every pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(vectors: I) -> Self {
        let mut e = Self::new();
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_with_trace(&self, v: &SparseVec, mut trace: impl FnMut(usize, &Rat)) -> SparseVec {
        let mut v = v.clone();
        let mut pending: BTreeSet<usize> =
            v.iter().filter_map(|(i, _)| self.pivot_row.get(&i).copied()).collect();
        while let Some(k) = pending.pop_first() {
            let Some(c) = v.get(self.pivots[k]).cloned() else { continue };
            trace(k, &c);
            v.axpy(&-c, &self.rows[k]);
            pending.extend(
                self.rows[k]
                    .iter()
                    .filter_map(|(i, _)| self.pivot_row.get(&i).copied())
                    .filter(|&j| j > k),
            );
        }
        v
    }

    /// Canonical representative of `v` modulo the span; zero at every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_with_trace(v, |_, _| {})
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        self.push_reduced(r).is_some()
    }

    fn push_reduced(&mut self, mut r: SparseVec) -> Option<Rat> {
        let (pivot, pv) = r
            .iter()
            .min_by_key(|(i, c)| (bit_size(c), *i))
            .map(|(i, c)| (i, c.clone()))?;
        r.scale(&pv.recip());
        self.pivot_row.insert(pivot, self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(r);
        Some(pv)
    }

    /// Clears every pivot column in every row (reduced row echelon form, up to row order).
    pub fn fully_reduce(&mut self) {
        let n = self.rows.len();
        for j in 0..n {
            let mut row = std::mem::take(&mut self.rows[j]);
            let mut pending: BTreeSet<usize> = row
                .iter()
                .filter_map(|(i, _)| self.pivot_row.get(&i).copied())
                .filter(|&k| k > j)
                .collect();
            while let Some(k) = pending.pop_first() {
                let Some(c) = row.get(self.pivots[k]).cloned() else { continue };
                row.axpy(&-c, &self.rows[k]);
                pending.extend(
                    self.rows[k]
                        .iter()
                        .filter_map(|(i, _)| self.pivot_row.get(&i).copied())
                        .filter(|&x| x > k),
                );
            }
            self.rows[j] = row;
        }
    }

    /// Basis of `{x : r·x = 0 for every stored row r}` in a space of dimension `dim`.
    /// Consumes the echelon (it is fully reduced first).
    pub fn null_space(mut self, dim: usize) -> Vec<SparseVec> {
        self.fully_reduce();
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let mut kernel: BTreeMap<usize, Vec<(usize, Rat)>> = (0..dim)
            .filter(|c| !pivot_set.contains(c))
            .map(|c| (c, vec![(c, Rat::one())]))
            .collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            for (col, val) in row.iter() {
                if col != p {
                    kernel.get_mut(&col).expect("fully reduced row has entry at pivot").push((p, -val));
                }
            }
        }
        kernel.into_values().map(SparseVec::from_entries).collect()
    }
}

/// Echelon form that remembers how each row was built from the inserted
/// vectors, so it can express members of the span in those vectors.
#[derive(Clone, Debug, Default)]
pub struct Solver {
    echelon: Echelon,
    combos: Vec<SparseVec>,
    inserted: usize,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(vectors: I) -> Self {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Inserts the next vector. On linear dependence returns the relation
    /// (coefficients over inserted vectors, summing to zero).
    pub fn insert(&mut self, v: SparseVec) -> Option<SparseVec> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = SparseVec::unit(idx);
        let r = self.echelon.reduce_with_trace(&v, |k, c| combo.axpy(&-c, &self.combos[k]));
        match self.echelon.push_reduced(r) {
            Some(pv) => {
                combo.scale(&pv.recip());
                self.combos.push(combo);
                None
            }
            None => Some(combo),
        }
    }

    /// Coefficients `c` with `v = Σ c_i · inserted_i`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut combo = SparseVec::new();
        let r = self.echelon.reduce_with_trace(v, |k, c| combo.axpy(c, &self.combos[k]));
        r.is_zero().then_some(combo)
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    Echelon::from_vectors(m.sparse_rows()).rank()
}

/// Basis of `{v : m·v = 0}`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    Echelon::from_vectors(m.sparse_rows())
        .null_space(m.cols())
        .into_iter()
        .map(|v| v.to_dense(m.cols()))
        .collect()
}

pub fn in_span(v: &[Rat], basis: &[Vec<Rat>]) -> bool {
    assert!(basis.iter().all(|b| b.len() == v.len()), "length mismatch");
    let e = Echelon::from_vectors(basis.iter().map(|b| SparseVec::from_dense(b)));
    e.contains(&SparseVec::from_dense(v))
}

/// `rank(m) = cols(m) − dim ker` bookkeeping for a linear map given by column images.
pub fn rank_of_columns(columns: &[SparseVec]) -> usize {
    Echelon::from_vectors(columns.iter().cloned()).rank()
}

/// `true` if every entry is an integer of absolute value at most `bound`.
pub fn entries_bounded(v: &SparseVec, bound: i64) -> bool {
    let b = BigInt::from(bound);
    v.iter().all(|(_, c)| c.is_integer() && c.numer().abs() <= b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RatMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&dense(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn span_examples() {
        assert!(in_span(&[rat(0), rat(0)], &[vec![rat(3), rat(1)]]));
        assert!(in_span(&[rat(0), rat(0)], &[]));
        assert!(!in_span(&[rat(1), rat(0)], &[vec![rat(0), rat(1)]]));
        assert!(in_span(&[rat(2), rat(2)], &[vec![rat(1), rat(1)]]));
    }

    #[test]
    fn storage_follows_density() {
        assert!(RatMatrix::identity(8).is_sparse());
        assert!(!dense(&[&[1, 2], &[3, 4]]).is_sparse());
    }

    #[test]
    fn reduce_clears_pivots() {
        let e = Echelon::from_vectors(
            [vec![1, 2, 0, 1], vec![0, 1, 1, 0], vec![3, 0, 1, 1]]
                .into_iter()
                .map(|r| SparseVec::from_dense(&r.into_iter().map(rat).collect::<Vec<_>>())),
        );
        let v = SparseVec::from_dense(&[rat(5), rat(7), rat(1), rat(2)]);
        let r = e.reduce(&v);
        for &p in e.pivots() {
            assert!(r.get(p).is_none());
        }
    }

    #[test]
    fn solver_coordinates() {
        let vs = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]];
        let mut s = Solver::new();
        let mut deps = Vec::new();
        for v in &vs {
            let sv = SparseVec::from_dense(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>());
            if let Some(d) = s.insert(sv) {
                deps.push(d);
            }
        }
        assert_eq!(s.rank(), 2);
        assert_eq!(deps.len(), 1);
        let target = SparseVec::from_dense(&[rat(2), rat(5), rat(3)]);
        let c = s.coordinates(&target).unwrap();
        let mut back = SparseVec::new();
        for (i, ci) in c.iter() {
            back.axpy(ci, &SparseVec::from_dense(&vs[i].iter().map(|&x| rat(x)).collect::<Vec<_>>()));
        }
        assert_eq!(back, target);
        assert!(s.coordinates(&SparseVec::from_dense(&[rat(1), rat(0), rat(0)])).is_none());
    }

    #[test]
    fn pivot_prefers_small_entries() {
        let mut e = Echelon::new();
        e.insert(SparseVec::from_dense(&[ratio(7, 3), rat(1), rat(1000)]));
        assert_eq!(e.pivots(), &[1]);
    }
}
