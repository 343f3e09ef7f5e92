//! Exact sparse linear algebra over the rationals.
//!
//! Everything here is exact: ranks, kernels and solutions are computed with
//! arbitrary-precision rationals, never floats. Pivoting always takes the
//! leftmost column that still has a nonzero entry and, within that column, the
//! remaining row with the smallest index. Reduced row echelon forms are unique,
//! so solutions and kernel bases do not depend on the row order of the input.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Scalars for every cochain, coefficient and matrix entry in the crate.
pub type Rational = BigRational;

/// A sparse vector: coordinate index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}) is outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"-p/q"` or a plain integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let bad = || LinalgError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Row-major sparse matrix with no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rational::one());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Zero values are dropped;
    /// a position may appear at most once.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        let mut seen = std::collections::BTreeSet::new();
        for (row, col, value) in entries {
            if row >= rows || col >= cols {
                return Err(LinalgError::IndexOutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            if !seen.insert((row, col)) {
                return Err(LinalgError::DuplicateEntry { row, col });
            }
            if !value.is_zero() {
                m.data[row].insert(col, value);
            }
        }
        Ok(m)
    }

    /// Panics if the rows are ragged.
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, v) in col {
                assert!(i < rows, "column entry out of range");
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.data[row]
            .get(&col)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Adds `value` to the entry at `(row, col)`, removing it if it cancels.
    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        add_into(&mut self.data[row], col, value);
    }

    pub fn row(&self, row: usize) -> &SparseVec {
        &self.data[row]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (&j, v)| acc + v * &x[j])
            })
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.data[k] {
                    add_into(&mut out.data[i], j, &(a * b));
                }
            }
        }
        out
    }

    /// Appends `b` as an extra column.
    pub fn augment(&self, b: &[Rational]) -> SparseMatrix {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        m.cols += 1;
        for (row, v) in m.data.iter_mut().zip(b) {
            if !v.is_zero() {
                row.insert(self.cols, v.clone());
            }
        }
        m
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn add_into(row: &mut SparseVec, col: usize, value: &Rational) {
    if value.is_zero() {
        return;
    }
    let remove = match row.get_mut(&col) {
        Some(existing) => {
            *existing += value;
            existing.is_zero()
        }
        None => {
            row.insert(col, value.clone());
            false
        }
    };
    if remove {
        row.remove(&col);
    }
}

pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// Rank over the rationals by fraction-free elimination.
///
/// Each row is cleared of denominators and elimination then proceeds over the
/// integers (`r <- a*r - b*p`), dividing every updated row by its content so
/// entries stay small.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .filter(|r| !r.is_empty())
        .map(integer_row)
        .collect();
    let mut rank = 0;
    let mut active: Vec<usize> = (0..rows.len()).collect();
    for col in 0..m.cols {
        let Some(pos) = active.iter().position(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        let pivot_row = active.remove(pos);
        let pivot = rows[pivot_row].clone();
        let a = pivot[&col].clone();
        for &r in &active {
            let Some(b) = rows[r].get(&col).cloned() else {
                continue;
            };
            let row = &mut rows[r];
            for v in row.values_mut() {
                *v *= &a;
            }
            for (&j, p) in &pivot {
                let delta = -(&b * p);
                let remove = match row.get_mut(&j) {
                    Some(e) => {
                        *e += &delta;
                        e.is_zero()
                    }
                    None => {
                        row.insert(j, delta);
                        false
                    }
                };
                if remove {
                    row.remove(&j);
                }
            }
            remove_content(row);
        }
        rank += 1;
        active.retain(|&r| !rows[r].is_empty());
        if active.is_empty() {
            break;
        }
    }
    rank
}

fn integer_row(row: &SparseVec) -> BTreeMap<usize, BigInt> {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut out: BTreeMap<usize, BigInt> = row
        .iter()
        .map(|(&j, v)| (j, v.numer() * (&lcm / v.denom())))
        .collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Reduced row echelon form: pivot columns ascending, each pivot row
/// normalized to 1 at its pivot and zero in every other pivot column.
#[derive(Debug, Clone)]
pub struct Rref {
    cols: usize,
    pivots: Vec<(usize, SparseVec)>,
}

impl Rref {
    pub fn of(m: &SparseMatrix) -> Self {
        let mut rows: Vec<SparseVec> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots: Vec<(usize, SparseVec)> = Vec::new();
        for col in 0..m.cols {
            let Some(pos) = rows.iter().position(|r| r.contains_key(&col)) else {
                continue;
            };
            let mut pivot = rows.remove(pos);
            let inv = pivot[&col].recip();
            for v in pivot.values_mut() {
                *v *= &inv;
            }
            for r in rows.iter_mut() {
                eliminate(r, col, &pivot);
            }
            for (_, r) in pivots.iter_mut() {
                eliminate(r, col, &pivot);
            }
            rows.retain(|r| !r.is_empty());
            pivots.push((col, pivot));
        }
        Rref {
            cols: m.cols,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let pivots = self.pivot_columns();
        (0..self.cols).filter(|c| !pivots.contains(c)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }
}

/// `row -= row[col] * pivot`, where `pivot[col] == 1`.
fn eliminate(row: &mut SparseVec, col: usize, pivot: &SparseVec) {
    let Some(factor) = row.get(&col).cloned() else {
        return;
    };
    for (&j, p) in pivot {
        add_into(row, j, &-(&factor * p));
    }
}

/// One exact solution of `m x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &SparseMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(
        b.len(),
        m.rows(),
        "right-hand side length must equal row count"
    );
    let rref = Rref::of(&m.augment(b));
    let mut x = vec![Rational::zero(); m.cols()];
    for (col, row) in rref.rows() {
        if col == m.cols() {
            return None;
        }
        if let Some(v) = row.get(&m.cols()) {
            x[col] = v.clone();
        }
    }
    Some(x)
}

/// Kernel basis, one vector per free column in ascending order. Each vector
/// has a 1 in its free column and 0 in every other free column.
pub fn nullspace_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let rref = Rref::of(m);
    rref.free_columns()
        .into_iter()
        .map(|free| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[free] = Rational::one();
            for (col, row) in rref.rows() {
                if let Some(a) = row.get(&free) {
                    v[col] = -a;
                }
            }
            v
        })
        .collect()
}

/// An incrementally grown subspace kept in reduced echelon form. Used to
/// reduce vectors modulo a span and to pick independent vectors in order.
#[derive(Debug, Clone, Default)]
pub struct Span {
    pivots: Vec<(usize, SparseVec)>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// The canonical representative of `v` modulo the span: zero in every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (col, row) in &self.pivots {
            eliminate(&mut out, *col, row);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&col, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in r.values_mut() {
            *x *= &inv;
        }
        for (_, row) in self.pivots.iter_mut() {
            eliminate(row, col, &r);
        }
        let at = self.pivots.partition_point(|(c, _)| *c < col);
        self.pivots.insert(at, (col, r));
        true
    }
}

/// Cohomology at the middle of `incoming -> V -> outgoing`.
///
/// Returns the dimension of `ker(outgoing) / im(incoming)` and one
/// representative per class: kernel basis vectors reduced modulo the image,
/// kept in order when they add a new class.
pub fn cohomology(
    outgoing: &SparseMatrix,
    incoming: Option<&SparseMatrix>,
) -> (usize, Vec<SparseVec>) {
    let kernel = nullspace_basis(outgoing);
    let mut image = Span::new();
    if let Some(m) = incoming {
        assert_eq!(m.rows(), outgoing.cols(), "complex maps do not compose");
        let columns = m.transpose();
        for c in 0..columns.rows() {
            image.insert(columns.row(c));
        }
    }
    let mut chosen = Span::new();
    let mut representatives = Vec::new();
    for v in &kernel {
        let reduced = image.reduce(&to_sparse(v));
        if chosen.insert(&reduced) {
            representatives.push(reduced);
        }
    }
    let dim = kernel.len() - image.dim();
    debug_assert_eq!(dim, representatives.len());
    (dim, representatives)
}
