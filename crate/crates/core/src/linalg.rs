//! Exact linear algebra over a field: dense matrices, sparse row echelon
//! forms, kernels and inverses.
//!
//! Everything is generic over [`Field`], implemented for [`QScalar`] (symbolic
//! work over Q(q)) and for [`Rational`] (work at a rational specialization of q).

use std::collections::HashMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::QError;
use crate::qscalar::{QScalar, Rational};

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Send
    + Sync
{
    /// Rough storage size, used to pick cheap pivots.
    fn cost(&self) -> usize;
}

impl Field for QScalar {
    fn cost(&self) -> usize {
        self.size_hint()
    }
}

impl Field for Rational {
    fn cost(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and
/// nonzero values.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_get<'a, F>(v: &'a SparseVec<F>, idx: usize) -> Option<&'a F> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|p| &v[p].1)
}

/// `v - c * r`.
pub fn sparse_sub_scaled<F: Field>(v: &SparseVec<F>, c: &F, r: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(v.len() + r.len());
    let (mut a, mut b) = (v.iter().peekable(), r.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, x)), Some((j, y))) => {
                if i < j {
                    out.push((*i, x.clone()));
                    a.next();
                } else if j < i {
                    out.push((*j, -(c.clone() * y)));
                    b.next();
                } else {
                    let s = x.clone() - &(c.clone() * y);
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
                out.push((*j, -(c.clone() * y)));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

pub fn sparse_scale<F: Field>(v: &SparseVec<F>, c: &F) -> SparseVec<F> {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.clone() * c)).collect()
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `(row, col, value)` for every nonzero entry, row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    let cur = std::mem::replace(&mut out.data[idx], F::zero());
                    out.data[idx] = cur + &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + &(a.clone() * b))
            })
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.nonzeros() {
            out.set(j, i, x.clone());
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    /// Kronecker product; basis `i ⊗ j` is index `i * other.rows + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out.set(i * other.rows + k, j * other.cols + l, a.clone() * b);
            }
        }
        out
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl Matrix<QScalar> {
    /// Entrywise specialization `q = q0`.
    pub fn eval_at(&self, q0: &Rational) -> Result<Matrix<Rational>, QError> {
        self.try_map(|x| x.eval_at(q0))
    }
}

/// Result of inserting a vector into an [`Echelon`] basis.
#[derive(Debug, Clone)]
pub enum Reduced<F> {
    /// The vector was independent and became a new basis row with this pivot.
    Independent(usize),
    /// The vector reduced to zero on the pivotable columns; this is what is left
    /// on the remaining (tracking) columns.
    Dependent(SparseVec<F>),
}

/// Incrementally built row echelon basis of a subspace.
///
/// Pivots are only taken among columns `< pivot_limit`; columns beyond the
/// limit carry bookkeeping data (combination coefficients, images under a
/// linear map) along with the row operations.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    pivot_limit: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(pivot_limit: usize) -> Self {
        Echelon {
            pivot_limit,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Subtracts basis rows in insertion order; every row is already reduced
    /// against its predecessors, so one pass clears all pivot columns.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.is_empty() {
                break;
            }
            if let Some(c) = sparse_get(&v, p).cloned() {
                v = sparse_sub_scaled(&v, &c, row);
            }
        }
        v
    }

    pub fn insert(&mut self, v: SparseVec<F>) -> Reduced<F> {
        let v = self.reduce(v);
        let pivot = v
            .iter()
            .filter(|(i, _)| *i < self.pivot_limit)
            .min_by_key(|(i, x)| (x.cost(), *i))
            .map(|(i, x)| (*i, x.clone()));
        match pivot {
            None => Reduced::Dependent(v),
            Some((col, x)) => {
                let inv = F::one() / &x;
                let row = sparse_scale(&v, &inv);
                self.pivot_row.insert(col, self.rows.len());
                self.rows.push(row);
                self.pivots.push(col);
                Reduced::Independent(col)
            }
        }
    }

    /// Whether `v` (restricted to the pivotable columns) lies in the span.
    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).iter().all(|(i, _)| *i >= self.pivot_limit)
    }
}

/// Rank of the span of `rows`.
pub fn rank<F: Field>(rows: impl IntoIterator<Item = SparseVec<F>>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns
/// (increasing).
pub fn rref<F: Field>(rows: Vec<SparseVec<F>>, ncols: usize) -> (Vec<SparseVec<F>>, Vec<usize>) {
    let mut pending: Vec<SparseVec<F>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<SparseVec<F>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let candidate = pending
            .iter()
            .enumerate()
            .filter_map(|(k, r)| sparse_get(r, col).map(|x| (k, x.cost())))
            .min_by_key(|&(k, c)| (c, k))
            .map(|(k, _)| k);
        let Some(k) = candidate else { continue };
        let r = pending.swap_remove(k);
        let inv = F::one() / sparse_get(&r, col).unwrap();
        let r = sparse_scale(&r, &inv);
        for other in pending.iter_mut().chain(done.iter_mut()) {
            if let Some(c) = sparse_get(other, col).cloned() {
                *other = sparse_sub_scaled(other, &c, &r);
            }
        }
        pending.retain(|x| !x.is_empty());
        done.push(r);
        pivots.push(col);
    }
    (done, pivots)
}

/// Basis of `{x : A x = 0}` where `A` has the given sparse rows; one vector per
/// free column in increasing order, with a 1 in that column.
pub fn nullspace<F: Field>(rows: Vec<SparseVec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![F::zero(); ncols];
            x[f] = F::one();
            for (row, &p) in r.iter().zip(&pivots) {
                if let Some(c) = sparse_get(row, f) {
                    x[p] = -c.clone();
                }
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "inverse of a non-square matrix");
    let rows: Vec<SparseVec<F>> = (0..n)
        .map(|i| {
            let mut r = sparse_from_dense(m.row(i));
            r.push((n + i, F::one()));
            r
        })
        .collect();
    let (red, pivots) = rref(rows, n);
    if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return None;
    }
    let mut out = Matrix::zeros(n, n);
    for (i, row) in red.iter().enumerate() {
        for (j, x) in row {
            if *j >= n {
                out.set(i, j - n, x.clone());
            }
        }
    }
    Some(out)
}

/// Basis of the intersection of the spans of `a` and `b` inside a space of
/// dimension `n`. The rows of `a` must be linearly independent.
pub fn intersect<F: Field>(a: &[SparseVec<F>], b: &[SparseVec<F>], n: usize) -> Vec<SparseVec<F>> {
    let mut eb = Echelon::new(n);
    for r in b {
        eb.insert(r.clone());
    }
    // Track combinations of the rows of `a` in columns n.. while reducing
    // their residues modulo span(b).
    let mut track = Echelon::new(n);
    let mut out = Vec::new();
    for (k, r) in a.iter().enumerate() {
        let mut v = eb.reduce(r.clone());
        v.push((n + k, F::one()));
        if let Reduced::Dependent(rest) = track.insert(v) {
            let mut acc: SparseVec<F> = Vec::new();
            for (idx, c) in rest {
                acc = sparse_sub_scaled(&acc, &(-c), &a[idx - n]);
            }
            out.push(acc);
        }
    }
    out
}
