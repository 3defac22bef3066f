use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use toric_kh::linalg::{
    cokernel_structure, complex_cohomology, exterior_power_map, kernel_lattice, primitive, smith_normal_form, vector,
    IntegerMatrix, Lattice, Vector,
};
use toric_kh::monoid::{hilbert_basis, AffineMonoid};
use toric_kh::polyhedral::{Cone, Fan};
use toric_kh::spectral::{betti_formula, E1Page};
use toric_kh::verify::brute_force_hilbert_basis;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-20i64..=20, rows * cols).prop_map(move |e| {
        IntegerMatrix::new(rows, cols, e.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| matrix(r, c))
}

fn vectors(dim: usize, count: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, dim), count)
        .prop_map(|vs| vs.iter().map(|v| vector(v)).collect())
}

/// Angle order of nonzero plane vectors, exactly: by half-plane, then by cross product.
fn angle_key(v: &Vector) -> (u8, i64, i64) {
    let (x, y) = (i64::try_from(&v[0]).unwrap(), i64::try_from(&v[1]).unwrap());
    let half = if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    (half, x, y)
}

fn cross(a: &Vector, b: &Vector) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// A complete simplicial fan in the plane: the four axis rays plus up to three more,
/// with cones between angularly consecutive rays.
fn complete_plane_fan() -> impl Strategy<Value = Fan> {
    vectors(2, 0..=3, -4, 4).prop_map(|extra| {
        let mut rays: BTreeSet<Vector> = [[1, 0], [0, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|v| vector(v))
            .collect();
        for v in extra {
            if v.iter().any(|x| !x.is_zero()) {
                rays.insert(primitive(&v));
            }
        }
        let mut rays: Vec<Vector> = rays.into_iter().collect();
        rays.sort_by(|a, b| {
            let (ha, hb) = (angle_key(a).0, angle_key(b).0);
            ha.cmp(&hb).then_with(|| BigInt::zero().cmp(&cross(a, b)))
        });
        let cones: Vec<Vec<Vector>> = (0..rays.len())
            .map(|i| vec![rays[i].clone(), rays[(i + 1) % rays.len()].clone()])
            .collect();
        Fan::new(2, &cones).unwrap()
    })
}

fn positive_monoid() -> impl Strategy<Value = AffineMonoid> {
    prop_oneof![
        vectors(1, 1..=3, 1, 7).prop_map(|g| AffineMonoid::new(1, &g).unwrap()),
        vectors(2, 1..=4, 0, 3).prop_map(|g| AffineMonoid::new(2, &g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in any_matrix()) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&(&snf.u * &a) * &snf.v), &snf.d);
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        let diag = snf.invariant_factors();
        let nonzero: Vec<&BigInt> = diag.iter().filter(|x| !x.is_zero()).collect();
        prop_assert!(nonzero.iter().all(|x| x.is_positive()));
        prop_assert!(nonzero.windows(2).all(|w| (w[1] % w[0]).is_zero()));
        prop_assert!(diag[nonzero.len()..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn exterior_powers_are_functorial(
        (f, g, a) in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(m, k, n)| {
            (matrix(m, k), matrix(k, n), 0..=m.min(k).min(n))
        })
    ) {
        let lhs = exterior_power_map(&(&f * &g), a);
        let rhs = &exterior_power_map(&f, a) * &exterior_power_map(&g, a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernels_are_saturated(a in any_matrix()) {
        let k = kernel_lattice(&a);
        prop_assert_eq!(k.rank() + a.rank(), a.cols());
        for v in k.basis_vectors() {
            prop_assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        }
        // saturated iff the quotient by it is torsion-free
        let basis = IntegerMatrix::from_vectors(a.cols(), &k.basis_vectors());
        prop_assert!(cokernel_structure(&basis.transpose()).torsion.is_empty());
    }

    #[test]
    fn cokernel_of_a_square_matrix_has_order_det(a in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let zero = IntegerMatrix::zeros(0, a.rows());
        let h = complex_cohomology(&a, &zero).unwrap();
        let det = a.determinant().unwrap();
        if det.is_zero() {
            prop_assert!(h.free_rank > 0);
        } else {
            prop_assert_eq!(h.free_rank, 0);
            let order: BigInt = h.torsion.iter().product();
            prop_assert_eq!(order, det.abs());
        }
    }

    #[test]
    fn cohomology_rank_matches_linear_algebra(
        (d_in, d_out) in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(a, b, c)| {
            (matrix(b, a), matrix(c, b))
        })
    ) {
        // force d_out d_in = 0 by precomposing with P^T P, where the rows of P span
        // ker(d_in^T)
        let k = kernel_lattice(&d_in.transpose());
        let p = IntegerMatrix::from_vectors(d_in.rows(), &k.basis_vectors());
        let proj = &p.transpose() * &p;
        let d_out = &d_out * &proj;
        let h = complex_cohomology(&d_in, &d_out).unwrap();
        prop_assert_eq!(h.free_rank, d_in.rows() - d_out.rank() - d_in.rank());
    }

    #[test]
    fn dual_is_an_involution(gens in vectors(3, 1..=5, -3, 3)) {
        let cone = Cone::from_generators(3, &gens).unwrap();
        prop_assert_eq!(cone.dual().dual(), cone.clone());
    }

    #[test]
    fn m_lattice_rank_complements_dimension(gens in vectors(3, 1..=4, -3, 3)) {
        let cone = Cone::from_generators(3, &gens).unwrap();
        prop_assert_eq!(cone.m_lattice().rank() + cone.dim(), 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normalization_and_seminormalization_are_idempotent(m in positive_monoid()) {
        let n = m.normalization();
        prop_assert_eq!(n.normalization(), n.clone());
        let sn = m.seminormalization().unwrap();
        prop_assert_eq!(sn.seminormalization().unwrap(), sn.clone());
        for g in m.generators() {
            prop_assert!(sn.contains(g).unwrap());
        }
        for g in sn.generators() {
            prop_assert!(n.contains(g).unwrap());
        }
    }

    #[test]
    fn frobenius_obeys_the_support_law(m in positive_monoid(), c in 1u64..=6) {
        let gap = m.gap(10).unwrap();
        for x in &gap.elements {
            prop_assert!(m.seminormal_contains(x).unwrap() && !m.contains(x).unwrap());
        }
        let map = m.frobenius_on_gap(c, &gap).unwrap();
        prop_assert!(map.support_law_holds);
    }

    #[test]
    fn hilbert_bases_are_minimal_and_generate(gens in vectors(2, 1..=3, 0, 4)) {
        let cone = Cone::from_generators(2, &gens).unwrap();
        let hb: BTreeSet<Vector> = hilbert_basis(&cone, &Lattice::full(2)).unwrap().into_iter().collect();
        let brute = brute_force_hilbert_basis(&cone, &[0, 0], &[8, 8]);
        // basis elements lie in a fundamental parallelepiped, inside [0, 8]^2
        prop_assert_eq!(hb, brute);
    }

    #[test]
    fn random_plane_fans_are_complexes_with_the_right_betti_numbers(fan in complete_plane_fan()) {
        let e1 = E1Page::build(&fan).unwrap();
        for p in 0..e1.columns().saturating_sub(1) {
            for q in 0..e1.rows() {
                let square = e1.differential(p + 1, q).checked_mul(e1.differential(p, q)).unwrap();
                prop_assert!(square.is_zero());
            }
        }
        let diagonals = e1.page2().unwrap().anti_diagonals();
        let n = fan.max_cones().len();
        let betti = betti_formula(&fan).unwrap();
        prop_assert_eq!(&betti.even, &vec![1, n as i64 - 2, 1]);
        prop_assert_eq!(&diagonals[..5], &[1, 0, n - 2, 0, 1][..]);
        prop_assert!(diagonals[5..].iter().all(|&d| d == 0));
    }
}
