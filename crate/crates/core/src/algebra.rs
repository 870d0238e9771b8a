//! Finite-dimensional unital associative algebras given by structure constants.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{unit_vec, zero_vec, Matrix, Rational, RowReducer, Subspace};

/// Coefficient vector of an algebra element in the basis `e_0..e_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Rational>);

impl Element {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Element {
        Element(self.0.iter().map(|a| a * s).collect())
    }
}

/// A unital associative algebra over Q.
///
/// `e_i · e_j = Σ_k c[i][j][k] e_k`. The left and right regular
/// representations of the basis are cached at construction because every
/// hom-space computation goes through them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Rational>,
    unit: Vec<Rational>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    center: Center,
}

impl Algebra {
    /// Validates structure constants and builds the algebra.
    ///
    /// `table[i][j]` is the coefficient vector of `e_i · e_j`. Associativity
    /// and the unit law are checked on every basis triple.
    pub fn new(table: Vec<Vec<Vec<Rational>>>, unit: Vec<Rational>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if unit.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "unit has {} coefficients, table has dimension {n}",
                unit.len()
            )));
        }
        if labels.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for dimension {n}",
                labels.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!("table row {i} has {} entries", row.len())));
            }
            for (j, prod) in row.into_iter().enumerate() {
                if prod.len() != n {
                    return Err(Error::ShapeMismatch(format!(
                        "product e{i}·e{j} has {} coefficients",
                        prod.len()
                    )));
                }
                flat.extend(prod);
            }
        }
        let mut alg = Algebra {
            dim: n,
            labels,
            table: flat,
            unit,
            left: Vec::new(),
            right: Vec::new(),
            center: Center {
                subspace: Subspace::zero(n),
            },
        };
        alg.check_associative()?;
        alg.left = (0..n).map(|i| alg.mult_matrix(&unit_vec(n, i), Side::Left)).collect();
        alg.right = (0..n).map(|i| alg.mult_matrix(&unit_vec(n, i), Side::Right)).collect();
        alg.check_unit()?;
        alg.center = alg.compute_center();
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut lhs = zero_vec(n);
                    let mut rhs = zero_vec(n);
                    for l in 0..n {
                        let a = self.c(i, j, l);
                        if !a.is_zero() {
                            for (m, x) in lhs.iter_mut().enumerate() {
                                *x += a * self.c(l, k, m);
                            }
                        }
                        let b = self.c(j, k, l);
                        if !b.is_zero() {
                            for (m, x) in rhs.iter_mut().enumerate() {
                                *x += b * self.c(i, l, m);
                            }
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        let one = Element(self.unit.clone());
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul_unchecked(&one, &e) != e || self.mul_unchecked(&e, &one) != e {
                return Err(Error::BadUnit { index: i });
            }
        }
        Ok(())
    }

    /// Structure constant: coefficient of `e_k` in `e_i · e_j`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structure constants as nested vectors, `table[i][j][k]`.
    pub fn table(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.c(i, j, k).clone()).collect())
                    .collect()
            })
            .collect()
    }

    pub fn one(&self) -> Element {
        Element(self.unit.clone())
    }

    pub fn zero(&self) -> Element {
        Element(zero_vec(self.dim))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element(unit_vec(self.dim, i))
    }

    pub fn element(&self, coeffs: Vec<Rational>) -> Result<Element> {
        self.check(&Element(coeffs)).cloned()
    }

    fn check<'a>(&self, x: &'a Element) -> Result<&'a Element> {
        if x.len() != self.dim {
            return Err(Error::AlgebraMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(x)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Element, y: &Element) -> Element {
        let n = self.dim;
        let mut out = zero_vec(n);
        for (i, a) in x.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        Element(out)
    }

    /// `[x, y] = x·y − y·x`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.mul(x, y)?.sub(&self.mul(y, x)?))
    }

    fn mult_matrix(&self, a: &[Rational], side: Side) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for j in 0..n {
                for k in 0..n {
                    let c = match side {
                        Side::Left => self.c(i, j, k),
                        Side::Right => self.c(j, i, k),
                    };
                    if !c.is_zero() {
                        m[(k, j)] += x * c;
                    }
                }
            }
        }
        m
    }

    /// Matrix of `y ↦ a·y` in the column convention.
    pub fn left_matrix(&self, a: &Element) -> Matrix {
        self.mult_matrix(&a.0, Side::Left)
    }

    /// Matrix of `y ↦ y·b`.
    pub fn right_matrix(&self, b: &Element) -> Matrix {
        self.mult_matrix(&b.0, Side::Right)
    }

    /// Cached `L_{e_i}`.
    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Cached `R_{e_i}`.
    pub fn right_basis(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    /// The center `Z = {z : z·e_i = e_i·z for all i}`, as a nullspace.
    pub fn center(&self) -> Center {
        self.center.clone()
    }

    fn compute_center(&self) -> Center {
        let n = self.dim;
        let mut r = RowReducer::new(n);
        for i in 0..n {
            let d = self.right[i].sub(&self.left[i]).expect("square");
            for row in 0..n {
                r.push_dense(d.row(row));
            }
        }
        Center {
            subspace: r.into_nullspace(),
        }
    }

    /// Returns the index of the first basis element `x` fails to commute with.
    pub fn first_noncommuting(&self, x: &Element) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let e = self.basis_element(i);
            self.mul_unchecked(x, &e) != self.mul_unchecked(&e, x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.center().dim() == self.dim
    }

    /// Human-readable form of an element using the basis labels.
    pub fn format_element(&self, x: &Element) -> String {
        let terms: Vec<String> =
            x.0.iter()
                .zip(&self.labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, l)| {
                    if c.is_one() {
                        l.clone()
                    } else if *c == -Rational::one() {
                        format!("-{l}")
                    } else {
                        format!("{c}*{l}")
                    }
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// The center `Z` of an algebra in canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    subspace: Subspace,
}

impl Center {
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.subspace.basis().iter().cloned().map(Element).collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.subspace.contains(&x.0)
    }
}
