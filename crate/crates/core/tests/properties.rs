mod common;

use common::library_algebra;
use ncvec::duality::is_z_linear;
use ncvec::linalg::{nullspace, ratio, rref, solve};
use ncvec::{
    bimodule_act, couple, derivations, differential, dual, z_action, z_closure, Algebra, Covector, Derivation, Element,
    Matrix, Rational, Subspace,
};
use num_traits::Zero;
use proptest::prelude::*;

// Cheap presets only; the big ones are covered exhaustively elsewhere.
const PRESETS: &[&str] = &[
    "matrix-2",
    "dual-numbers",
    "triangular-2",
    "triangular-3",
    "cyclic-3",
    "quaternions",
];

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn vector(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), len)
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // Sparse-ish entries give a healthy mix of ranks.
        prop::collection::vec(prop_oneof![2 => Just(ratio(0, 1)), 3 => rational()], r * c)
            .prop_map(move |data| Matrix::from_vec(r, c, data).unwrap())
    })
}

fn preset() -> impl Strategy<Value = &'static str> {
    prop::sample::select(PRESETS)
}

fn element(alg: &Algebra, coeffs: &[Rational]) -> Element {
    alg.element(coeffs[..alg.dim()].to_vec()).unwrap()
}

/// A Q-combination of the basis of Der(A).
fn derivation(alg: &Algebra, coeffs: &[Rational]) -> Derivation {
    let der = derivations(alg);
    der.basis()
        .iter()
        .zip(coeffs)
        .fold(Derivation::zero(alg), |acc, (d, c)| acc.add(&d.scale(c)))
}

fn central(alg: &Algebra, coeffs: &[Rational]) -> Element {
    let basis = alg.center().basis();
    let mut z = alg.zero();
    for (b, c) in basis.iter().zip(coeffs) {
        z = z.add(&b.scale(c));
    }
    z
}

fn covector(alg: &Algebra, coeffs: &[Rational]) -> (ncvec::VModule, Covector) {
    let v = derivations(alg);
    let vdag = dual(alg, &v).unwrap();
    let w = vdag
        .basis()
        .iter()
        .zip(coeffs.iter().cycle())
        .fold(Covector::zero(alg.dim(), v.dim()), |acc, (b, c)| acc.add(&b.scale(c)));
    (v, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let (r, p) = rref(&m);
        let (rr, pp) = rref(&r);
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(p, pp);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        let k = nullspace(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for b in k.basis() {
            prop_assert!(m.mul_vec(b).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_reproduces_consistent_rhs((m, x) in matrix(5, 6).prop_flat_map(|m| { let c = m.cols(); (Just(m), vector(c)) })) {
        let b = m.mul_vec(&x).unwrap();
        let sol = solve(&m, &b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
        prop_assert!(sol.kernel.same_as(&nullspace(&m)).unwrap());
        // x differs from the particular solution by a kernel vector
        let diff: Vec<Rational> = x.iter().zip(&sol.particular).map(|(a, b)| a - b).collect();
        prop_assert!(sol.kernel.contains(&diff));
    }

    #[test]
    fn subspace_is_basis_independent(vs in prop::collection::vec(vector(5), 1..5), mix in vector(4)) {
        let a = Subspace::span(5, &vs);
        // Add multiples of the last vector to the others and reverse the order.
        let last = vs.last().unwrap().clone();
        let mut ws: Vec<Vec<Rational>> = vs
            .iter()
            .zip(mix.iter().cycle())
            .map(|(v, c)| v.iter().zip(&last).map(|(x, y)| x + c * y).collect())
            .collect();
        ws.push(last);
        ws.reverse();
        let b = Subspace::span(5, &ws);
        prop_assert!(a.same_as(&b).unwrap());
        prop_assert_eq!(a.basis(), b.basis());
        prop_assert_eq!(a.intersection(&b).unwrap().dim(), a.dim());
        prop_assert_eq!(a.sum(&a.annihilator()).unwrap().dim(), 5);
    }

    #[test]
    fn commutator_is_antisymmetric_and_satisfies_jacobi(name in preset(), x in vector(6), y in vector(6), z in vector(6)) {
        let alg = library_algebra(name);
        let (x, y, z) = (element(&alg, &x), element(&alg, &y), element(&alg, &z));
        let xy = alg.commutator(&x, &y).unwrap();
        let yx = alg.commutator(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
        let j = alg
            .commutator(&x, &alg.commutator(&y, &z).unwrap()).unwrap()
            .add(&alg.commutator(&y, &alg.commutator(&z, &x).unwrap()).unwrap())
            .add(&alg.commutator(&z, &alg.commutator(&x, &y).unwrap()).unwrap());
        prop_assert!(j.is_zero());
    }

    #[test]
    fn regular_representation_is_multiplicative(name in preset(), x in vector(6), y in vector(6)) {
        let alg = library_algebra(name);
        let (x, y) = (element(&alg, &x), element(&alg, &y));
        let xy = alg.mul(&x, &y).unwrap();
        prop_assert_eq!(alg.left_matrix(&x).mul_vec(y.coeffs()).unwrap(), xy.0.clone());
        prop_assert_eq!(alg.right_matrix(&y).mul_vec(x.coeffs()).unwrap(), xy.0);
    }

    #[test]
    fn derivations_obey_leibniz(name in preset(), c in vector(5), x in vector(6), y in vector(6)) {
        let alg = library_algebra(name);
        let v = derivation(&alg, &c);
        let (x, y) = (element(&alg, &x), element(&alg, &y));
        let lhs = v.apply(&alg.mul(&x, &y).unwrap());
        let rhs = alg.mul(&v.apply(&x), &y).unwrap().add(&alg.mul(&x, &v.apply(&y)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_action_composes_and_is_bilinear(name in preset(), c in vector(5), z1 in vector(3), z2 in vector(3), s in rational()) {
        let alg = library_algebra(name);
        let v = derivation(&alg, &c);
        let (z1, z2) = (central(&alg, &z1), central(&alg, &z2));
        let nested = z_action(&alg, &z1, &z_action(&alg, &z2, &v).unwrap()).unwrap();
        let product = z_action(&alg, &alg.mul(&z1, &z2).unwrap(), &v).unwrap();
        prop_assert_eq!(nested, product);
        let sum = z_action(&alg, &z1.add(&z2.scale(&s)), &v).unwrap();
        let split = z_action(&alg, &z1, &v).unwrap().add(&z_action(&alg, &z2, &v).unwrap().scale(&s));
        prop_assert_eq!(sum, split);
        let w = derivation(&alg, &c.iter().rev().cloned().collect::<Vec<_>>());
        let lhs = z_action(&alg, &z1, &v.add(&w.scale(&s))).unwrap();
        let rhs = z_action(&alg, &z1, &v).unwrap().add(&z_action(&alg, &z1, &w).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_closure_is_idempotent_and_monotone(name in preset(), c1 in vector(5), c2 in vector(5)) {
        let alg = library_algebra(name);
        let g1 = derivation(&alg, &c1).matrix().clone();
        let g2 = derivation(&alg, &c2).matrix().clone();
        let small = z_closure(&alg, std::slice::from_ref(&g1)).unwrap();
        prop_assert!(small.is_z_closed(&alg));
        let again: Vec<Matrix> = small.basis().iter().map(|d| d.matrix().clone()).collect();
        prop_assert!(z_closure(&alg, &again).unwrap().subspace().same_as(small.subspace()).unwrap());
        let big = z_closure(&alg, &[g1, g2]).unwrap();
        prop_assert!(small.subspace().is_subspace_of(big.subspace()).unwrap());
        prop_assert!(big.subspace().is_subspace_of(derivations(&alg).subspace()).unwrap());
    }

    #[test]
    fn differential_is_q_linear(name in preset(), x in vector(6), y in vector(6), s in rational()) {
        let alg = library_algebra(name);
        let v = derivations(&alg);
        let (x, y) = (element(&alg, &x), element(&alg, &y));
        let lhs = differential(&alg, &v, &x.add(&y.scale(&s))).unwrap();
        let rhs = differential(&alg, &v, &x).unwrap().add(&differential(&alg, &v, &y).unwrap().scale(&s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_pairs_to_evaluation(name in preset(), c in vector(5), x in vector(6)) {
        let alg = library_algebra(name);
        let v = derivations(&alg);
        let x = element(&alg, &x);
        let d = derivation(&alg, &c);
        prop_assert_eq!(couple(&v, &differential(&alg, &v, &x).unwrap(), &d).unwrap(), d.apply(&x));
    }

    #[test]
    fn bimodule_axioms(name in preset(), w in vector(8), a in vector(6), b in vector(6), a2 in vector(6), b2 in vector(6)) {
        let alg = library_algebra(name);
        let (v, omega) = covector(&alg, &w);
        let one = alg.one();
        let (a, b, a2, b2) = (element(&alg, &a), element(&alg, &b), element(&alg, &a2), element(&alg, &b2));
        let act = |x: &Element, w: &Covector, y: &Element| bimodule_act(&alg, x, w, y).unwrap();
        prop_assert_eq!(act(&one, &omega, &one), omega.clone());
        prop_assert_eq!(act(&a, &act(&a2, &omega, &one), &one), act(&alg.mul(&a, &a2).unwrap(), &omega, &one));
        prop_assert_eq!(act(&one, &act(&one, &omega, &b), &b2), act(&one, &omega, &alg.mul(&b, &b2).unwrap()));
        prop_assert_eq!(act(&a, &act(&one, &omega, &b), &one), act(&one, &act(&a, &omega, &one), &b));
        let acted = act(&a, &omega, &b);
        prop_assert!(is_z_linear(&alg, &v, &acted).unwrap());
        for u in v.basis() {
            let expected = alg.mul(&alg.mul(&a, &couple(&v, &omega, u).unwrap()).unwrap(), &b).unwrap();
            prop_assert_eq!(couple(&v, &acted, u).unwrap(), expected);
        }
    }

    #[test]
    fn coupling_is_bilinear(name in preset(), w1 in vector(8), w2 in vector(8), c1 in vector(5), c2 in vector(5), s in rational()) {
        let alg = library_algebra(name);
        let (v, o1) = covector(&alg, &w1);
        let (_, o2) = covector(&alg, &w2);
        let (d1, d2) = (derivation(&alg, &c1), derivation(&alg, &c2));
        let pair = |o: &Covector, d: &Derivation| couple(&v, o, d).unwrap();
        prop_assert_eq!(pair(&o1, &d1.add(&d2.scale(&s))), pair(&o1, &d1).add(&pair(&o1, &d2).scale(&s)));
        prop_assert_eq!(pair(&o1.add(&o2.scale(&s)), &d1), pair(&o1, &d1).add(&pair(&o2, &d1).scale(&s)));
    }
}
