//! Covectors: the bimodule `V† = hom_Z(V, A)` and its Z-valued part `V* = hom_Z(V, Z)`.
//!
//! A covector is stored by its values on the canonical basis `u_1..u_m` of
//! `V`: an `n×m` matrix whose column `j` is `ω(u_j)`. Every Q-linear map
//! `V → A` has this form, and Z-linearity is imposed as linear constraints
//! `ω(z_k·u_j) = z_k·ω(u_j)` over the center basis, so each hom-space is a
//! single nullspace.

use num_traits::Zero;

use crate::algebra::{Algebra, Element};
use crate::derivations::{Derivation, VModule};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, RowReducer, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Covector {
    values: Matrix,
}

impl Covector {
    pub fn from_values(values: Matrix) -> Self {
        Covector { values }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Covector {
            values: Matrix::zeros(n, m),
        }
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// `ω(u_j)` for the `j`-th basis vector of `V`.
    pub fn on_basis(&self, j: usize) -> Element {
        Element(self.values.column(j))
    }

    /// `ω(v)` for `v ∈ V`, going through coordinates.
    pub fn evaluate(&self, v_module: &VModule, v: &Derivation) -> Result<Element> {
        let x = v_module.coordinates(v)?;
        Ok(Element(self.values.mul_vec(&x)?))
    }

    pub fn add(&self, other: &Covector) -> Covector {
        Covector {
            values: self.values.add(&other.values).expect("same shape"),
        }
    }

    pub fn scale(&self, s: &Rational) -> Covector {
        Covector {
            values: self.values.scale(s),
        }
    }
}

/// Which codomain a covector space was computed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codomain {
    /// `V† = hom_Z(V, A)`
    Algebra,
    /// `V* = hom_Z(V, Z)`
    Center,
}

/// A space of covectors in canonical basis, either `V†` or `V*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovectorSpace {
    n: usize,
    m: usize,
    codomain: Codomain,
    subspace: Subspace,
    basis: Vec<Covector>,
}

impl CovectorSpace {
    fn from_subspace(n: usize, m: usize, codomain: Codomain, subspace: Subspace) -> Self {
        let basis = subspace
            .basis()
            .iter()
            .map(|b| Covector::from_values(Matrix::from_vec(n, m, b.clone()).expect("n·m entries")))
            .collect();
        CovectorSpace {
            n,
            m,
            codomain,
            subspace,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Covector] {
        &self.basis
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Dimension of `V` the covectors act on.
    pub fn module_dim(&self) -> usize {
        self.m
    }

    pub fn algebra_dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, w: &Covector) -> bool {
        self.subspace.contains(w.values.as_slice())
    }

    pub fn coordinates(&self, w: &Covector) -> Option<Vec<Rational>> {
        self.subspace.coordinates(w.values.as_slice())
    }

    pub fn combine(&self, coords: &[Rational]) -> Covector {
        Covector::from_values(Matrix::from_vec(self.n, self.m, self.subspace.combine(coords)).expect("n·m entries"))
    }

    /// Whether `e_i·φ·e_k` stays in the space for every basis pair and basis covector.
    pub fn is_bimodule_closed(&self, alg: &Algebra) -> bool {
        let n = alg.dim();
        (0..n).all(|i| {
            (0..n).all(|k| {
                let lr = alg.left_basis(i).mul(alg.right_basis(k)).expect("square");
                self.basis
                    .iter()
                    .all(|phi| self.subspace.contains(lr.mul(&phi.values).expect("shape").as_slice()))
            })
        })
    }
}

/// Pushes the Z-linearity constraints `ω(z·u_j) − z·ω(u_j) = 0` for unknown
/// `W` (`n×m`, flattened row-major).
fn push_z_linearity(alg: &Algebra, v: &VModule, r: &mut RowReducer) -> Result<()> {
    let n = alg.dim();
    let m = v.dim();
    for z in alg.center().basis() {
        let lz = alg.left_matrix(&z);
        for (j, u) in v.basis().iter().enumerate() {
            let zu = Derivation::from_matrix_unchecked(lz.mul(u.matrix())?);
            let c = v
                .coordinates(&zu)
                .map_err(|_| Error::Inconsistent("module is not closed under the center action".into()))?;
            for row in 0..n {
                let lhs = c
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(l, x)| (row * m + l, x.clone()));
                let rhs = (0..n)
                    .filter(|&s| !lz[(row, s)].is_zero())
                    .map(|s| (s * m + j, -lz[(row, s)].clone()));
                r.push_sparse(lhs.chain(rhs).collect::<Vec<_>>());
            }
        }
    }
    Ok(())
}

/// `V† = hom_Z(V, A)`.
pub fn dual(alg: &Algebra, v: &VModule) -> Result<CovectorSpace> {
    let (n, m) = (alg.dim(), v.dim());
    let mut r = RowReducer::new(n * m);
    push_z_linearity(alg, v, &mut r)?;
    Ok(CovectorSpace::from_subspace(
        n,
        m,
        Codomain::Algebra,
        r.into_nullspace(),
    ))
}

/// `V* = hom_Z(V, Z)`: the covectors of `V†` whose values are central.
pub fn star_dual(alg: &Algebra, v: &VModule) -> Result<CovectorSpace> {
    let (n, m) = (alg.dim(), v.dim());
    let mut r = RowReducer::new(n * m);
    push_z_linearity(alg, v, &mut r)?;
    // each column must commute with every basis element: (R_{e_i} − L_{e_i}) W[:, j] = 0
    for i in 0..n {
        let d = alg.right_basis(i).sub(alg.left_basis(i))?;
        for j in 0..m {
            for row in 0..n {
                r.push_sparse(
                    (0..n)
                        .filter(|&s| !d[(row, s)].is_zero())
                        .map(|s| (s * m + j, d[(row, s)].clone()))
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    Ok(CovectorSpace::from_subspace(n, m, Codomain::Center, r.into_nullspace()))
}

/// The coupling `⟨ω, v⟩ = ω(v)`.
pub fn couple(v_module: &VModule, omega: &Covector, v: &Derivation) -> Result<Element> {
    omega.evaluate(v_module, v)
}

/// `(a·ω·b)(v) = a·ω(v)·b`.
pub fn bimodule_act(alg: &Algebra, a: &Element, omega: &Covector, b: &Element) -> Result<Covector> {
    alg.element(a.coeffs().to_vec())?;
    alg.element(b.coeffs().to_vec())?;
    if omega.values.rows() != alg.dim() {
        return Err(Error::AlgebraMismatch {
            expected: alg.dim(),
            got: omega.values.rows(),
        });
    }
    let rw = alg.right_matrix(b).mul(&omega.values)?;
    Ok(Covector::from_values(alg.left_matrix(a).mul(&rw)?))
}

/// Same as [`bimodule_act`] for basis elements, using the cached regular representations.
pub(crate) fn act_basis(alg: &Algebra, i: usize, omega: &Covector, k: usize) -> Covector {
    let v = alg
        .left_basis(i)
        .mul(&alg.right_basis(k).mul(&omega.values).expect("shape"))
        .expect("shape");
    Covector::from_values(v)
}

/// The differential `da : v ↦ v(a)`.
pub fn differential(alg: &Algebra, v_module: &VModule, a: &Element) -> Result<Covector> {
    alg.element(a.coeffs().to_vec())?;
    let cols: Vec<Vec<Rational>> = v_module.basis().iter().map(|u| u.apply(a).coeffs().to_vec()).collect();
    Ok(Covector::from_values(Matrix::from_columns(alg.dim(), &cols)))
}

fn kernel_of_pairing<'a>(v: &VModule, n: usize, covectors: impl IntoIterator<Item = &'a Covector>) -> Subspace {
    let m = v.dim();
    let mut r = RowReducer::new(m);
    for w in covectors {
        for row in 0..n {
            r.push_dense(w.values.row(row));
        }
    }
    let coords = r.into_nullspace();
    let flats: Vec<Vec<Rational>> = coords.basis().iter().map(|x| v.subspace().combine(x)).collect();
    Subspace::span(v.subspace().ambient_dim(), &flats)
}

/// `{v ∈ V : ω(v) = 0 for every ω ∈ V†}` computed from the pairing with the
/// whole of `V†`, cross-checked against the pairing with differentials only.
/// A disagreement between the two is reported as [`Error::Inconsistent`].
pub fn right_kernel(alg: &Algebra, v: &VModule) -> Result<Subspace> {
    let full = kernel_of_pairing(v, alg.dim(), dual(alg, v)?.basis());
    let via_d = right_kernel_via_differentials(alg, v)?;
    if full != via_d {
        return Err(Error::Inconsistent(format!(
            "right kernel of the full pairing has dimension {}, differentials give {}",
            full.dim(),
            via_d.dim()
        )));
    }
    Ok(full)
}

/// `{v ∈ V : da(v) = 0 for every basis element a}`.
pub fn right_kernel_via_differentials(alg: &Algebra, v: &VModule) -> Result<Subspace> {
    let ds = (0..alg.dim())
        .map(|i| differential(alg, v, &alg.basis_element(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(kernel_of_pairing(v, alg.dim(), &ds))
}

/// Outcome of checking `d(e_i·e_j) = d(e_i)·e_j + e_i·d(e_j)` on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialLeibniz {
    pub pairs_checked: usize,
    pub counterexample: Option<(usize, usize)>,
}

impl DifferentialLeibniz {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn leibniz_for_differentials(alg: &Algebra, v: &VModule) -> Result<DifferentialLeibniz> {
    let n = alg.dim();
    let one = alg.one();
    let ds = (0..n)
        .map(|i| differential(alg, v, &alg.basis_element(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs_checked = 0;
    for i in 0..n {
        for j in 0..n {
            let ei = alg.basis_element(i);
            let ej = alg.basis_element(j);
            let lhs = differential(alg, v, &alg.mul(&ei, &ej)?)?;
            let rhs = bimodule_act(alg, &one, &ds[i], &ej)?.add(&bimodule_act(alg, &ei, &ds[j], &one)?);
            pairs_checked += 1;
            if lhs != rhs {
                return Ok(DifferentialLeibniz {
                    pairs_checked,
                    counterexample: Some((i, j)),
                });
            }
        }
    }
    Ok(DifferentialLeibniz {
        pairs_checked,
        counterexample: None,
    })
}

/// Checks `ω(z·u_j) = z·ω(u_j)` over the center basis and the basis of `V`.
pub fn is_z_linear(alg: &Algebra, v: &VModule, omega: &Covector) -> Result<bool> {
    for z in alg.center().basis() {
        for u in v.basis() {
            let zu = crate::derivations::z_action(alg, &z, u)?;
            let lhs = omega.evaluate(v, &zu)?;
            let rhs = alg.mul(&z, &omega.evaluate(v, u)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
