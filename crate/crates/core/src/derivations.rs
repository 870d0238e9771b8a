//! Derivations of an algebra and Z-submodules of them.
//!
//! A derivation is stored as its matrix in the column convention
//! `v(e_j) = Σ_i D[i][j] e_i`; flattened row-major it lives in `Q^(n²)`,
//! which is the ambient space of every [`VModule`].

use num_traits::Zero;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, RowReducer, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    /// Wraps a matrix after checking the Leibniz rule on all basis pairs.
    pub fn new(alg: &Algebra, matrix: Matrix) -> Result<Self> {
        check_square(alg, &matrix)?;
        if let Some((i, j)) = leibniz_defect(alg, &matrix)?.first_failure() {
            return Err(Error::NotADerivation { generator: 0, i, j });
        }
        Ok(Derivation { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: Matrix) -> Self {
        Derivation { matrix }
    }

    pub(crate) fn from_flat(n: usize, flat: Vec<Rational>) -> Self {
        Derivation {
            matrix: Matrix::from_vec(n, n, flat).expect("n² entries"),
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Derivation {
            matrix: Matrix::zeros(alg.dim(), alg.dim()),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn flat(&self) -> &[Rational] {
        self.matrix.as_slice()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `v(a)`.
    pub fn apply(&self, a: &Element) -> Element {
        Element(
            self.matrix
                .mul_vec(a.coeffs())
                .expect("dimension checked at construction"),
        )
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            matrix: self.matrix.add(&other.matrix).expect("same algebra"),
        }
    }

    pub fn scale(&self, s: &Rational) -> Derivation {
        Derivation {
            matrix: self.matrix.scale(s),
        }
    }
}

fn check_square(alg: &Algebra, m: &Matrix) -> Result<()> {
    let n = alg.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// `defect(i, j) = m(e_i·e_j) − m(e_i)·e_j − e_i·m(e_j)` for all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizDefect {
    n: usize,
    values: Vec<Element>,
}

impl LeibnizDefect {
    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.values[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Element::is_zero)
    }

    pub fn first_failure(&self) -> Option<(usize, usize)> {
        self.values
            .iter()
            .position(|v| !v.is_zero())
            .map(|p| (p / self.n, p % self.n))
    }
}

pub fn leibniz_defect(alg: &Algebra, m: &Matrix) -> Result<LeibnizDefect> {
    check_square(alg, m)?;
    let n = alg.dim();
    let images: Vec<Element> = (0..n).map(|j| Element(m.column(j))).collect();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        let ei = alg.basis_element(i);
        for j in 0..n {
            let ej = alg.basis_element(j);
            let prod: Vec<Rational> = (0..n).map(|k| alg.c(i, j, k).clone()).collect();
            let lhs = Element(m.mul_vec(&prod)?);
            let rhs = alg
                .mul_unchecked(&images[i], &ej)
                .add(&alg.mul_unchecked(&ei, &images[j]));
            values.push(lhs.sub(&rhs));
        }
    }
    Ok(LeibnizDefect { n, values })
}

/// A Z-submodule `V ⊆ Der(A)` in canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VModule {
    n: usize,
    subspace: Subspace,
    basis: Vec<Derivation>,
}

impl VModule {
    pub(crate) fn from_subspace(n: usize, subspace: Subspace) -> Self {
        let basis = subspace
            .basis()
            .iter()
            .map(|b| Derivation::from_flat(n, b.clone()))
            .collect();
        VModule { n, subspace, basis }
    }

    pub fn zero(alg: &Algebra) -> Self {
        let n = alg.dim();
        VModule::from_subspace(n, Subspace::zero(n * n))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: &Derivation) -> bool {
        self.subspace.contains(v.flat())
    }

    /// Coordinates of `v` over the canonical basis.
    pub fn coordinates(&self, v: &Derivation) -> Result<Vec<Rational>> {
        self.subspace.coordinates(v.flat()).ok_or(Error::NotInModule)
    }

    pub fn combine(&self, coords: &[Rational]) -> Derivation {
        Derivation::from_flat(self.n, self.subspace.combine(coords))
    }

    /// Checks `z·u ∈ V` for every center basis element `z` and basis vector `u`.
    pub fn is_z_closed(&self, alg: &Algebra) -> bool {
        let center = alg.center();
        center.basis().iter().all(|z| {
            let lz = alg.left_matrix(z);
            self.basis
                .iter()
                .all(|u| self.subspace.contains(lz.mul(&u.matrix).expect("square").as_slice()))
        })
    }
}

/// `Der(A)`: the kernel of the Leibniz system in the `n²` matrix entries.
pub fn derivations(alg: &Algebra) -> VModule {
    let n = alg.dim();
    let mut r = RowReducer::new(n * n);
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // D(e_i e_j)_k − (D(e_i) e_j)_k − (e_i D(e_j))_k = 0
                let plus = (0..n).map(|l| (k * n + l, alg.c(i, j, l).clone()));
                let left = (0..n).map(|s| (s * n + i, -alg.c(s, j, k)));
                let right = (0..n).map(|s| (s * n + j, -alg.c(i, s, k)));
                r.push_sparse(plus.chain(left).chain(right));
                if r.is_full() {
                    break 'outer;
                }
            }
        }
    }
    VModule::from_subspace(n, r.into_nullspace())
}

/// `ad_a : x ↦ a·x − x·a`.
pub fn inner_derivation(alg: &Algebra, a: &Element) -> Result<Derivation> {
    alg.element(a.coeffs().to_vec())?;
    let m = alg.left_matrix(a).sub(&alg.right_matrix(a))?;
    Ok(Derivation::from_matrix_unchecked(m))
}

/// `(z·v)(a) = z·v(a)`, defined for central `z`.
pub fn z_action(alg: &Algebra, z: &Element, v: &Derivation) -> Result<Derivation> {
    alg.element(z.coeffs().to_vec())?;
    check_square(alg, &v.matrix)?;
    if let Some(index) = alg.first_noncommuting(z) {
        return Err(Error::NotCentral { index });
    }
    Ok(Derivation::from_matrix_unchecked(alg.left_matrix(z).mul(&v.matrix)?))
}

/// Smallest Z-submodule of `Der(A)` containing the generators.
///
/// Alternates between taking the span and applying every center basis
/// element (in canonical order) until the dimension stops growing.
pub fn z_closure(alg: &Algebra, generators: &[Matrix]) -> Result<VModule> {
    let n = alg.dim();
    for (g, m) in generators.iter().enumerate() {
        check_square(alg, m)?;
        if let Some((i, j)) = leibniz_defect(alg, m)?.first_failure() {
            return Err(Error::NotADerivation { generator: g, i, j });
        }
    }
    let center: Vec<Matrix> = alg.center().basis().iter().map(|z| alg.left_matrix(z)).collect();
    let flats: Vec<Vec<Rational>> = generators.iter().map(|m| m.as_slice().to_vec()).collect();
    let mut current = Subspace::span(n * n, &flats);
    loop {
        let mut r = RowReducer::new(n * n);
        for b in current.basis() {
            r.push_dense(b);
        }
        for lz in &center {
            for b in current.basis() {
                let d = Matrix::from_vec(n, n, b.clone())?;
                r.push_dense(lz.mul(&d)?.as_slice());
            }
        }
        let next = r.into_subspace();
        if next.dim() == current.dim() {
            return Ok(VModule::from_subspace(n, next));
        }
        current = next;
    }
}

/// Whether every inner derivation `ad_{e_i}` lies in `v`.
pub fn contains_inner_derivations(alg: &Algebra, v: &VModule) -> bool {
    (0..alg.dim()).all(|i| {
        let ad = inner_derivation(alg, &alg.basis_element(i)).expect("basis element");
        v.contains(&ad)
    })
}

/// `v(1) = 0` for every derivation; exposed for checks.
pub fn kills_unit(alg: &Algebra, v: &Derivation) -> bool {
    v.apply(&alg.one()).coeffs().iter().all(Zero::is_zero)
}
