//! The second dual `V†† = hom_A(V†, A)`, the canonical embedding, dual-basis
//! certificates with the constructive lift back into `V`, ghost detection and
//! the reflexivity report that ties it all together.
//!
//! Bimodule-homomorphism constraints are generated from single-sided actions
//! only: `w(e_i·φ) = e_i·w(φ)` and `w(φ·e_k) = w(φ)·e_k` for basis elements.
//! Bilinearity of the action and `a·φ·b = a·(φ·b)` make these equivalent to
//! the constraints on all triples `(e_i, φ, e_k)`.

use num_traits::Zero;

use crate::algebra::{Algebra, Center, Element};
use crate::derivations::{Derivation, VModule};
use crate::duality::{act_basis, dual, right_kernel, star_dual, Covector, CovectorSpace};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational, RowReducer, Subspace};

/// `w ∈ V††`, stored by its values on the canonical basis of `V†`: column `l`
/// of the `n×p` matrix is `w(φ_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BidualElement {
    values: Matrix,
}

impl BidualElement {
    pub fn from_values(values: Matrix) -> Self {
        BidualElement { values }
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// `w(ω)` for any `ω ∈ V†`.
    pub fn evaluate(&self, vdag: &CovectorSpace, omega: &Covector) -> Result<Element> {
        let c = vdag.coordinates(omega).ok_or(Error::NotInModule)?;
        Ok(Element(self.values.mul_vec(&c)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BidualSpace {
    n: usize,
    p: usize,
    subspace: Subspace,
    basis: Vec<BidualElement>,
}

impl BidualSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BidualElement] {
        &self.basis
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn contains(&self, w: &BidualElement) -> bool {
        self.subspace.contains(w.values.as_slice())
    }

    pub fn coordinates(&self, w: &BidualElement) -> Option<Vec<Rational>> {
        self.subspace.coordinates(w.values.as_slice())
    }

    /// Closure under `(z·w)(ω) = z·w(ω)` for every center and `V††` basis pair.
    pub fn is_z_closed(&self, alg: &Algebra, center: &Center) -> bool {
        center.basis().iter().all(|z| {
            let lz = alg.left_matrix(z);
            self.basis
                .iter()
                .all(|w| self.subspace.contains(lz.mul(&w.values).expect("shape").as_slice()))
        })
    }
}

/// Pushes `w(act(φ_j)) − side·w(φ_j) = 0` rows for one single-sided action.
fn push_hom_constraints(
    vdag: &CovectorSpace,
    action: &Matrix,
    acted: impl Fn(&Covector) -> Covector,
    r: &mut RowReducer,
) -> Result<()> {
    let n = action.rows();
    let p = vdag.dim();
    for (j, phi) in vdag.basis().iter().enumerate() {
        let d = vdag
            .coordinates(&acted(phi))
            .ok_or_else(|| Error::Inconsistent("covector space is not closed under the bimodule action".into()))?;
        for row in 0..n {
            let lhs = d
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(l, x)| (row * p + l, x.clone()));
            let rhs = (0..n)
                .filter(|&s| !action[(row, s)].is_zero())
                .map(|s| (s * p + j, -action[(row, s)].clone()));
            r.push_sparse(lhs.chain(rhs).collect::<Vec<_>>());
            if r.is_full() {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// `V†† = hom_A(V†, A)`: Q-linear maps `V† → A` commuting with the bimodule action.
pub fn second_dual(alg: &Algebra, vdag: &CovectorSpace) -> Result<BidualSpace> {
    let n = alg.dim();
    let p = vdag.dim();
    let mut r = RowReducer::new(n * p);
    let one = alg.one();
    let unit_index = (0..n).find(|&i| alg.basis_element(i) == one);
    for i in 0..n {
        // the unit acts trivially, its constraints are all zero
        if Some(i) == unit_index {
            continue;
        }
        let left = alg.left_basis(i);
        push_hom_constraints(
            vdag,
            left,
            |phi| Covector::from_values(left.mul(phi.values()).expect("shape")),
            &mut r,
        )?;
        let right = alg.right_basis(i);
        push_hom_constraints(
            vdag,
            right,
            |phi| Covector::from_values(right.mul(phi.values()).expect("shape")),
            &mut r,
        )?;
    }
    let subspace = r.into_nullspace();
    let basis = subspace
        .basis()
        .iter()
        .map(|b| BidualElement::from_values(Matrix::from_vec(n, p, b.clone()).expect("n·p entries")))
        .collect();
    Ok(BidualSpace { n, p, subspace, basis })
}

/// Checks `w(e_i·φ_j·e_k) = e_i·w(φ_j)·e_k` on every basis triple.
pub fn is_bimodule_hom(alg: &Algebra, vdag: &CovectorSpace, w: &BidualElement) -> Result<bool> {
    let n = alg.dim();
    for (j, phi) in vdag.basis().iter().enumerate() {
        let wphi = Element(w.values.column(j));
        for i in 0..n {
            for k in 0..n {
                let lhs = w.evaluate(vdag, &act_basis(alg, i, phi, k))?;
                let rhs = alg.mul(&alg.mul(&alg.basis_element(i), &wphi)?, &alg.basis_element(k))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The canonical embedding `v ↦ v̂`, `v̂(ω) = ω(v)`.
pub fn embed(v_module: &VModule, vdag: &CovectorSpace, v: &Derivation) -> Result<BidualElement> {
    let x = v_module.coordinates(v)?;
    let n = vdag.algebra_dim();
    let cols = vdag
        .basis()
        .iter()
        .map(|phi| phi.values().mul_vec(&x))
        .collect::<Result<Vec<_>>>()?;
    Ok(BidualElement::from_values(Matrix::from_columns(n, &cols)))
}

/// Rank of the embedding `V → V††` over the canonical bases.
pub fn embedding_rank(v_module: &VModule, vdag: &CovectorSpace) -> Result<usize> {
    let images = embedding_images(v_module, vdag)?;
    let flats: Vec<Vec<Rational>> = images.iter().map(|w| w.values.as_slice().to_vec()).collect();
    Ok(Subspace::span(vdag.algebra_dim() * vdag.dim(), &flats).dim())
}

fn embedding_images(v_module: &VModule, vdag: &CovectorSpace) -> Result<Vec<BidualElement>> {
    v_module.basis().iter().map(|u| embed(v_module, vdag, u)).collect()
}

/// Generators `v_i` of `V` with Z-valued cogenerators `ω^i` such that
/// `v = Σ_i ω^i(v)·v_i` for every `v ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasisCertificate {
    pub generators: Vec<Derivation>,
    pub cogenerators: Vec<Covector>,
}

impl DualBasisCertificate {
    /// Re-checks the expansion on the basis of `V` and that every cogenerator
    /// lies in `V*`.
    pub fn verify(&self, alg: &Algebra, v: &VModule, vstar: &CovectorSpace) -> Result<bool> {
        if self.generators.len() != self.cogenerators.len() {
            return Ok(false);
        }
        if !self.cogenerators.iter().all(|w| vstar.contains(w)) {
            return Ok(false);
        }
        for u in v.basis() {
            let mut sum = Matrix::zeros(alg.dim(), alg.dim());
            for (g, w) in self.generators.iter().zip(&self.cogenerators) {
                let coeff = w.evaluate(v, u)?;
                sum = sum.add(&alg.left_matrix(&coeff).mul(g.matrix())?)?;
            }
            if &sum != u.matrix() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Searches for a dual-basis certificate over the canonical basis of `V`.
///
/// With the generators fixed, `v_j = Σ_i ω^i(v_j)·v_i` is linear in the
/// coordinates of the unknown `ω^i ∈ V*`, so one solve decides whether `V`
/// is finitely generated projective over `Z` (dual-basis lemma). `None`
/// means the system is inconsistent.
pub fn dual_basis_certificate(alg: &Algebra, v: &VModule) -> Result<Option<DualBasisCertificate>> {
    let vstar = star_dual(alg, v)?;
    dual_basis_certificate_with(alg, v, &vstar)
}

fn dual_basis_certificate_with(
    alg: &Algebra,
    v: &VModule,
    vstar: &CovectorSpace,
) -> Result<Option<DualBasisCertificate>> {
    let n = alg.dim();
    let m = v.dim();
    let s = vstar.dim();
    let generators = v.basis().to_vec();
    if m == 0 {
        return Ok(Some(DualBasisCertificate {
            generators,
            cogenerators: Vec::new(),
        }));
    }
    // unknown c[i][k] (index i·s + k): ω^i = Σ_k c[i][k] ψ_k
    let mut columns = Vec::with_capacity(m * s);
    for u_i in &generators {
        for psi in vstar.basis() {
            let mut col = Vec::with_capacity(m * n * n);
            for j in 0..m {
                let term = alg.left_matrix(&psi.on_basis(j)).mul(u_i.matrix())?;
                col.extend(term.into_vec());
            }
            columns.push(col);
        }
    }
    let rhs: Vec<Rational> = generators.iter().flat_map(|u| u.flat().to_vec()).collect();
    let system = Matrix::from_columns(m * n * n, &columns);
    let Some(sol) = crate::linalg::solve(&system, &rhs)? else {
        return Ok(None);
    };
    let cogenerators = (0..m)
        .map(|i| vstar.combine(&sol.particular[i * s..(i + 1) * s]))
        .collect();
    Ok(Some(DualBasisCertificate {
        generators,
        cogenerators,
    }))
}

/// Constructs `v = Σ_i w(ω^i)·v_i` and checks that it is a preimage of `w`.
///
/// Fails with [`Error::CoefficientNotCentral`] if some `w(ω^i)` is not in the
/// center and with [`Error::LiftMismatch`] if `v̂ ≠ w`; neither can happen
/// for a valid certificate and a genuine element of `V††`.
pub fn lift(
    alg: &Algebra,
    v: &VModule,
    vdag: &CovectorSpace,
    cert: &DualBasisCertificate,
    w: &BidualElement,
) -> Result<Derivation> {
    let n = alg.dim();
    let mut out = Matrix::zeros(n, n);
    for (index, (g, omega)) in cert.generators.iter().zip(&cert.cogenerators).enumerate() {
        let coeff = w.evaluate(vdag, omega)?;
        if alg.first_noncommuting(&coeff).is_some() {
            return Err(Error::CoefficientNotCentral { index });
        }
        out = out.add(&alg.left_matrix(&coeff).mul(g.matrix())?)?;
    }
    let lifted = Derivation::from_matrix_unchecked(out);
    if !v.contains(&lifted) {
        return Err(Error::LiftMismatch);
    }
    if &embed(v, vdag, &lifted)? != w {
        return Err(Error::LiftMismatch);
    }
    Ok(lifted)
}

/// `ω(v) = Σ_i ω^i(v)·ω(v_i)` for every `V†` basis covector and `V` basis vector.
pub fn covector_expansion_holds(
    alg: &Algebra,
    v: &VModule,
    vdag: &CovectorSpace,
    cert: &DualBasisCertificate,
) -> Result<bool> {
    for phi in vdag.basis() {
        for u in v.basis() {
            let mut sum = alg.zero();
            for (g, omega) in cert.generators.iter().zip(&cert.cogenerators) {
                sum = sum.add(&alg.mul(&omega.evaluate(v, u)?, &phi.evaluate(v, g)?)?);
            }
            if sum != phi.evaluate(v, u)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Covectors outside the sub-bimodule generated by the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostCovectors {
    pub dim: usize,
    /// The sub-bimodule of `V†` generated by `d e_1, .., d e_n`.
    pub closure: Subspace,
    /// `V†` basis covectors completing `closure` to `V†`, in basis order.
    pub representatives: Vec<Covector>,
}

/// Grows the span of the differentials under `e_i·(−)·e_k` until it is stable
/// and compares it with `V†`.
pub fn ghost_covectors(alg: &Algebra, v: &VModule) -> Result<GhostCovectors> {
    let vdag = dual(alg, v)?;
    ghost_covectors_with(alg, v, &vdag)
}

fn ghost_covectors_with(alg: &Algebra, v: &VModule, vdag: &CovectorSpace) -> Result<GhostCovectors> {
    let n = alg.dim();
    let m = v.dim();
    let mut r = RowReducer::new(n * m);
    let mut queue = Vec::new();
    for i in 0..n {
        let d = crate::duality::differential(alg, v, &alg.basis_element(i))?;
        if r.push_dense(d.values().as_slice()) {
            queue.push(d);
        }
    }
    while let Some(w) = queue.pop() {
        for i in 0..n {
            for k in 0..n {
                let acted = act_basis(alg, i, &w, k);
                if r.push_dense(acted.values().as_slice()) {
                    queue.push(acted);
                }
            }
        }
    }
    let closure = r.into_subspace();
    if !closure.is_subspace_of(vdag.subspace())? {
        return Err(Error::Inconsistent(
            "differentials generate covectors outside the dual".into(),
        ));
    }
    let flats: Vec<Vec<Rational>> = vdag.basis().iter().map(|b| b.values().as_slice().to_vec()).collect();
    let representatives = closure
        .extend_with(&flats)
        .into_iter()
        .map(|f| Covector::from_values(Matrix::from_vec(n, m, f).expect("n·m entries")))
        .collect();
    Ok(GhostCovectors {
        dim: vdag.dim() - closure.dim(),
        closure,
        representatives,
    })
}

/// Everything computed for one differential algebra `(A, V)`.
#[derive(Clone, Debug)]
pub struct ReflexivityReport {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub module_dim: usize,
    pub star_dual_dim: usize,
    pub dual_dim: usize,
    pub bidual_dim: usize,
    pub embedding_rank: usize,
    pub injective: bool,
    pub reflexive: bool,
    pub nondegenerate: bool,
    pub certificate: Option<DualBasisCertificate>,
    pub ghost_covector_dim: usize,
    pub ghost_bidual_dim: usize,
    pub checks: Checks,

    pub center: Center,
    pub module: VModule,
    pub star_dual: CovectorSpace,
    pub dual: CovectorSpace,
    pub bidual: BidualSpace,
    pub ghost_covectors: Vec<Covector>,
    pub ghost_bidual: Vec<BidualElement>,
}

/// Outcomes of the identity checks run while building a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checks {
    pub module_z_closed: bool,
    pub dual_bimodule_closed: bool,
    pub differential_leibniz: bool,
    pub bidual_z_closed: bool,
    /// Present when a certificate exists.
    pub covector_expansion: Option<bool>,
    pub lift_round_trip: Option<bool>,
}

/// Runs the whole pipeline for `(A, V)`.
///
/// Hard failures (returned as [`Error::Inconsistent`]): a non-injective
/// embedding, a certificate without reflexivity, a failed lift round trip,
/// or the two right-kernel computations disagreeing.
pub fn reflexivity_report(alg: &Algebra, v: &VModule) -> Result<ReflexivityReport> {
    let center = alg.center();
    let module_z_closed = v.is_z_closed(alg);
    if !module_z_closed {
        return Err(Error::Inconsistent(
            "module is not closed under the center action".into(),
        ));
    }
    let vstar = star_dual(alg, v)?;
    let vdag = dual(alg, v)?;
    let dual_bimodule_closed = vdag.is_bimodule_closed(alg);
    let vdd = second_dual(alg, &vdag)?;
    let bidual_z_closed = vdd.is_z_closed(alg, &center);
    let differential_leibniz = crate::duality::leibniz_for_differentials(alg, v)?.holds();
    let nondegenerate = right_kernel(alg, v)?.is_zero();

    let images = embedding_images(v, &vdag)?;
    let image_flats: Vec<Vec<Rational>> = images.iter().map(|w| w.values.as_slice().to_vec()).collect();
    let image = Subspace::span(vdd.subspace().ambient_dim(), &image_flats);
    if !image.is_subspace_of(vdd.subspace())? {
        return Err(Error::Inconsistent(
            "embedded vectors are not bimodule homomorphisms".into(),
        ));
    }
    let embedding_rank = image.dim();
    let injective = embedding_rank == v.dim();
    if !injective {
        return Err(Error::Inconsistent(format!(
            "canonical embedding has rank {embedding_rank} < dim V = {}",
            v.dim()
        )));
    }
    let reflexive = embedding_rank == vdd.dim();
    let bidual_flats: Vec<Vec<Rational>> = vdd.basis().iter().map(|w| w.values.as_slice().to_vec()).collect();
    let ghost_bidual: Vec<BidualElement> = image
        .extend_with(&bidual_flats)
        .into_iter()
        .map(|f| BidualElement::from_values(Matrix::from_vec(alg.dim(), vdag.dim(), f).expect("n·p entries")))
        .collect();

    let certificate = dual_basis_certificate_with(alg, v, &vstar)?;
    let (covector_expansion, lift_round_trip) = match &certificate {
        Some(cert) => {
            if !cert.verify(alg, v, &vstar)? {
                return Err(Error::Inconsistent("certificate fails its own expansion".into()));
            }
            if !reflexive {
                return Err(Error::Inconsistent(
                    "dual-basis certificate exists but the module is not reflexive".into(),
                ));
            }
            let expansion = covector_expansion_holds(alg, v, &vdag, cert)?;
            let round_trip = lift_round_trip(alg, v, &vdag, &vdd, cert)?;
            if !round_trip {
                return Err(Error::Inconsistent("lift and embed are not mutually inverse".into()));
            }
            (Some(expansion), Some(round_trip))
        }
        None => (None, None),
    };

    let ghosts = ghost_covectors_with(alg, v, &vdag)?;
    Ok(ReflexivityReport {
        algebra_dim: alg.dim(),
        center_dim: center.dim(),
        module_dim: v.dim(),
        star_dual_dim: vstar.dim(),
        dual_dim: vdag.dim(),
        bidual_dim: vdd.dim(),
        embedding_rank,
        injective,
        reflexive,
        nondegenerate,
        certificate,
        ghost_covector_dim: ghosts.dim,
        ghost_bidual_dim: vdd.dim() - embedding_rank,
        checks: Checks {
            module_z_closed,
            dual_bimodule_closed,
            differential_leibniz,
            bidual_z_closed,
            covector_expansion,
            lift_round_trip,
        },
        center,
        module: v.clone(),
        star_dual: vstar,
        dual: vdag,
        bidual: vdd,
        ghost_covectors: ghosts.representatives,
        ghost_bidual,
    })
}

/// `lift ∘ embed = id` on the basis of `V` and `embed ∘ lift = id` on the basis of `V††`.
pub fn lift_round_trip(
    alg: &Algebra,
    v: &VModule,
    vdag: &CovectorSpace,
    vdd: &BidualSpace,
    cert: &DualBasisCertificate,
) -> Result<bool> {
    for u in v.basis() {
        let w = embed(v, vdag, u)?;
        if &lift(alg, v, vdag, cert, &w)? != u {
            return Ok(false);
        }
    }
    for w in vdd.basis() {
        let lifted = lift(alg, v, vdag, cert, w)?;
        if &embed(v, vdag, &lifted)? != w {
            return Ok(false);
        }
    }
    Ok(true)
}
