//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Every hom-space and kernel in the crate is computed here. Subspaces are
//! always stored in reduced row echelon form with strictly increasing pivot
//! columns, so two generating sets of the same space produce identical
//! [`Subspace`] values and downstream output is byte-deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The scalar field: canonical arbitrary-precision fractions.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`) into a canonical rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational {s:?}: bad numerator"))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format!("invalid rational {s:?}: bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("invalid rational {s:?}: zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn zero_vec(len: usize) -> Vec<Rational> {
    vec![Rational::zero(); len]
}

pub fn unit_vec(len: usize, at: usize) -> Vec<Rational> {
    let mut v = zero_vec(len);
    v[at] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a matrix from small integers; handy for presets and tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| rat(x))).collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Matrix::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut r = RowReducer::new(self.cols);
        for i in 0..self.rows {
            r.push_dense(self.row(i));
        }
        r.rank()
    }

    /// Rows as string-encoded rationals, for serialization.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

/// Incremental Gaussian elimination with sparse pivot rows.
///
/// Rows are kept in semi-echelon form (each stored row starts with a 1 at its
/// pivot column) while they are being pushed; [`RowReducer::finish`] performs
/// the back substitution that yields the canonical RREF. Constraint systems in
/// this crate have many more rows than columns and most rows are redundant,
/// so only independent rows are ever stored.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    pivots: BTreeMap<usize, Vec<(usize, Rational)>>,
    scratch: Vec<Rational>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            pivots: BTreeMap::new(),
            scratch: zero_vec(cols),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    pub fn push_dense(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        self.push_sparse(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone())),
        )
    }

    /// Adds a row given as `(column, value)` pairs; repeated columns are
    /// summed. Returns true when the row raised the rank.
    pub fn push_sparse(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut lo = self.cols;
        let mut any = false;
        for (j, x) in entries {
            assert!(j < self.cols, "column {j} out of range");
            if x.is_zero() {
                continue;
            }
            self.scratch[j] += x;
            lo = lo.min(j);
            any = true;
        }
        if !any {
            return false;
        }
        let w = &mut self.scratch;
        for c in lo..self.cols {
            if w[c].is_zero() {
                continue;
            }
            match self.pivots.get(&c) {
                Some(prow) => {
                    let f = std::mem::take(&mut w[c]);
                    for (cc, v) in &prow[1..] {
                        w[*cc] -= &f * v;
                    }
                }
                None => {
                    let inv = w[c].recip();
                    let mut row = Vec::new();
                    for (j, x) in w.iter_mut().enumerate().skip(c) {
                        if !x.is_zero() {
                            row.push((j, std::mem::take(x) * &inv));
                        }
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }

    /// Back-substitutes and returns the canonical RREF rows with their pivots.
    pub fn finish(self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let cols = self.cols;
        let mut reduced: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut w = zero_vec(cols);
            for (j, x) in row {
                w[*j] = x.clone();
            }
            for c in p + 1..cols {
                if w[c].is_zero() {
                    continue;
                }
                if let Some(r) = reduced.get(&c) {
                    let f = std::mem::take(&mut w[c]);
                    for (cc, v) in &r[1..] {
                        w[*cc] -= &f * v;
                    }
                }
            }
            let sparse = w.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            reduced.insert(p, sparse);
        }
        let pivots: Vec<usize> = reduced.keys().copied().collect();
        let rows = reduced
            .into_values()
            .map(|r| {
                let mut d = zero_vec(cols);
                for (j, x) in r {
                    d[j] = x;
                }
                d
            })
            .collect();
        (rows, pivots)
    }

    pub fn into_subspace(self) -> Subspace {
        let cols = self.cols;
        let (basis, pivots) = self.finish();
        Subspace {
            ambient_dim: cols,
            basis,
            pivots,
        }
    }

    /// Kernel of the accumulated rows, in canonical form.
    pub fn into_nullspace(self) -> Subspace {
        let cols = self.cols;
        let (rows, pivots) = self.finish();
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = RowReducer::new(cols);
        for f in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = unit_vec(cols, f);
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            out.push_dense(&v);
        }
        out.into_subspace()
    }
}

/// Reduced row echelon form of `m` and its pivot columns. Zero rows are kept
/// at the bottom so the result has the shape of `m`.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut r = RowReducer::new(m.cols);
    for i in 0..m.rows {
        r.push_dense(m.row(i));
    }
    let (rows, pivots) = r.finish();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    (out, pivots)
}

/// Kernel `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Subspace {
    let mut r = RowReducer::new(m.cols);
    for i in 0..m.rows {
        r.push_dense(m.row(i));
    }
    r.into_nullspace()
}

/// Particular solution and kernel of `m x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Rational>,
    pub kernel: Subspace,
}

/// Solves `m x = b`. Returns `Ok(None)` when `b` is outside the column space;
/// the particular solution has every free variable set to zero.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Solution>> {
    if b.len() != m.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows
        )));
    }
    let n = m.cols;
    let mut r = RowReducer::new(n + 1);
    for (i, bi) in b.iter().enumerate() {
        r.push_sparse(
            m.row(i)
                .iter()
                .cloned()
                .enumerate()
                .chain(std::iter::once((n, bi.clone()))),
        );
    }
    let (rows, pivots) = r.finish();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = zero_vec(n);
    for (row, &p) in rows.iter().zip(&pivots) {
        particular[p] = row[n].clone();
    }
    Ok(Some(Solution {
        particular,
        kernel: nullspace(m),
    }))
}

/// A linear subspace of `Q^ambient_dim` in canonical RREF form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| unit_vec(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary generators.
    pub fn span<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut r = RowReducer::new(ambient_dim);
        for v in vectors {
            r.push_dense(v);
        }
        r.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. With an RREF basis the coordinates are just the entries
    /// of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = zero_vec(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim(), "coordinate length");
        let mut out = zero_vec(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += c * y;
                }
            }
        }
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient_dim, self.basis.iter().chain(&other.basis)))
    }

    /// Vectors annihilating the subspace under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let mut r = RowReducer::new(self.ambient_dim);
        for b in &self.basis {
            r.push_dense(b);
        }
        r.into_nullspace()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut r = RowReducer::new(self.ambient_dim);
        for a in self.annihilator().basis.iter().chain(&other.annihilator().basis) {
            r.push_dense(a);
        }
        Ok(r.into_nullspace())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// Canonical complement representatives: the vectors of `candidates`
    /// (taken in order) that extend `self` to the span of `self ∪ candidates`.
    pub fn extend_with<'a>(&self, candidates: impl IntoIterator<Item = &'a Vec<Rational>>) -> Vec<Vec<Rational>> {
        let mut r = RowReducer::new(self.ambient_dim);
        for b in &self.basis {
            r.push_dense(b);
        }
        candidates.into_iter().filter(|c| r.push_dense(c)).cloned().collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .basis
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "Subspace(ambient {}, {:?})", self.ambient_dim, rows)
    }
}
