mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use common::*;
use tilecoh::exactlin::{
    cokernel, hnf, kernel, lattice_intersect, lattice_sum, member, rank_mod_p, saturate, snf,
    AbelianGroup, IntMatrix, Sublattice,
};

fn is_diagonal_chain(d: &IntMatrix) -> bool {
    let n = d.rows().min(d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    (0..n).all(|i| d[(i, i)] >= BigInt::zero())
        && (1..n).all(|i| d[(i, i)].is_multiple_of(&d[(i - 1, i - 1)]) || d[(i, i)].is_zero())
}

#[test]
fn snf_of_random_5x7_matches_determinantal_divisors() {
    let mut rng = rng(11);
    for _ in 0..25 {
        let m = random_matrix(&mut rng, 5, 7, 9);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        assert!(is_diagonal_chain(&s.d));
        assert_eq!(s.diagonal(), determinantal_invariant_factors(&m));
        assert_eq!(s.diagonal(), naive_invariant_factors(&m));
    }
}

#[test]
fn snf_of_rank_deficient_matrices() {
    let mut rng = rng(12);
    for _ in 0..25 {
        // product of 4x2 and 2x5 has rank at most 2
        let a = random_matrix(&mut rng, 4, 2, 5);
        let b = random_matrix(&mut rng, 2, 5, 5);
        let m = a.mul(&b).unwrap();
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.rank() <= 2);
        assert_eq!(s.diagonal(), determinantal_invariant_factors(&m));
    }
}

#[test]
fn hnf_identity_and_zero() {
    let i3 = IntMatrix::identity(3);
    let h = hnf(&i3);
    assert_eq!(h.h, i3);
    assert_eq!(h.u, i3);
    let z = IntMatrix::zeros(2, 2);
    let h = hnf(&z);
    assert!(h.h.is_zero());
    assert_eq!(z.mul(&h.u).unwrap(), h.h);
    assert!(h.u.is_unimodular());
}

#[test]
fn cokernel_examples() {
    assert_eq!(cokernel(&IntMatrix::zeros(3, 2)), AbelianGroup::free(3));
    let two = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
    assert_eq!(cokernel(&two).factors, bigs(&[2, 2]));
    assert_eq!(cokernel(&two).free_rank, 0);
    let d23 = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(cokernel(&d23), AbelianGroup::from_cyclic(0, &bigs(&[6])));
}

#[test]
fn cokernel_rank_identity() {
    let mut rng = rng(13);
    for _ in 0..40 {
        let (r, c) = (rng.random_range(1..7), rng.random_range(1..7));
        let m = random_matrix(&mut rng, r, c, 6);
        let g = cokernel(&m);
        assert_eq!(g.free_rank + rational_rank(&m), r);
        let naive: Vec<BigInt> = naive_invariant_factors(&m).into_iter().filter(|d| !d.is_one()).collect();
        assert_eq!(g.factors, naive);
    }
}

#[test]
fn kernel_matches_rational_null_space() {
    assert_eq!(kernel(&IntMatrix::identity(3)).rank(), 0);
    let k = kernel(&IntMatrix::from_i64_rows(&[vec![1, 1]]));
    assert_eq!(k, Sublattice::from_i64_vectors(2, &[vec![1, -1]]).unwrap());

    let mut rng = rng(14);
    for _ in 0..30 {
        let m = random_matrix(&mut rng, 3, 5, 7);
        let k = kernel(&m);
        let null = rational_nullspace(&m);
        assert_eq!(k.rank(), null.len());
        assert_eq!(k.rank(), 5 - rational_rank(&m));
        for v in k.basis_vectors() {
            assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
        for v in &null {
            assert!(member(&k, &primitive_integer(v)).unwrap());
        }
        assert!(k.is_saturated());
    }
}

#[test]
fn saturation_examples() {
    let s = Sublattice::from_i64_vectors(2, &[vec![2, 0], vec![0, 1]]).unwrap();
    assert_eq!(saturate(&s), Sublattice::full(2));
    let s = Sublattice::from_i64_vectors(2, &[vec![2, 2]]).unwrap();
    assert_eq!(saturate(&s), Sublattice::from_i64_vectors(2, &[vec![1, 1]]).unwrap());
}

#[test]
fn saturation_ignores_scaling() {
    let mut rng = rng(15);
    for _ in 0..30 {
        let rows = random_rows(&mut rng, 3, 6, 5);
        let s = Sublattice::from_i64_vectors(6, &rows).unwrap();
        let scaled: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| 4 * x).collect()).collect();
        let s4 = Sublattice::from_i64_vectors(6, &scaled).unwrap();
        let sat = saturate(&s);
        assert_eq!(saturate(&s4), sat);
        assert_eq!(saturate(&sat), sat);
        assert_eq!(sat.rank(), s.rank());
        assert!(sat.contains_lattice(&s).unwrap());
        assert_eq!(sat.index_in_saturation(), BigInt::one());
        if s.rank() == 3 {
            assert_eq!(s4.index_in_saturation(), s.index_in_saturation() * 64);
        }
    }
}

#[test]
fn sum_and_intersection() {
    let mut rng = rng(16);
    let e = |i: usize| -> Vec<i64> { (0..3).map(|j| i64::from(i == j)).collect() };
    let a = Sublattice::from_i64_vectors(3, &[e(0), e(1)]).unwrap();
    let b = Sublattice::from_i64_vectors(3, &[e(1), e(2)]).unwrap();
    assert_eq!(lattice_intersect(&a, &b).unwrap(), Sublattice::from_i64_vectors(3, &[e(1)]).unwrap());
    assert_eq!(lattice_sum(&a, &a).unwrap(), a);
    assert_eq!(lattice_intersect(&a, &a).unwrap(), a);
    assert!(lattice_sum(&a, &Sublattice::zero(4)).is_err());

    for _ in 0..40 {
        let (k1, k2) = (rng.random_range(1..5), rng.random_range(1..5));
        let s = Sublattice::from_i64_vectors(5, &random_rows(&mut rng, k1, 5, 4)).unwrap();
        let t = Sublattice::from_i64_vectors(5, &random_rows(&mut rng, k2, 5, 4)).unwrap();
        let sum = lattice_sum(&s, &t).unwrap();
        let cap = lattice_intersect(&s, &t).unwrap();
        for v in s.basis_vectors().iter().chain(t.basis_vectors().iter()) {
            assert!(rational_solve(&sum.basis_vectors(), v).is_some());
            assert!(member(&sum, v).unwrap());
        }
        for v in cap.basis_vectors() {
            assert!(member(&s, &v).unwrap() && member(&t, &v).unwrap());
        }
        assert_eq!(cap.rank(), s.rank() + t.rank() - sum.rank());
    }
}

#[test]
fn member_matches_rational_solve() {
    let s = Sublattice::from_i64_vectors(2, &[vec![2, 0]]).unwrap();
    assert!(!member(&s, &bigs(&[1, 0])).unwrap());
    assert!(member(&s, &bigs(&[0, 0])).unwrap());
    assert!(member(&s, &bigs(&[1])).is_err());

    let mut rng = rng(17);
    for _ in 0..60 {
        let s = Sublattice::from_i64_vectors(4, &random_rows(&mut rng, 2, 4, 3)).unwrap();
        let basis = s.basis_vectors();
        let coeffs: Vec<i64> = basis.iter().map(|_| rng.random_range(-3..=3)).collect();
        let mut v: Vec<BigInt> = (0..4)
            .map(|i| basis.iter().zip(&coeffs).map(|(c, x)| &c[i] * x).sum::<BigInt>())
            .collect();
        match rng.random_range(0..3) {
            0 => {}
            1 => v = v.into_iter().map(|x| x / 2).collect(),
            _ => v = bigs(&random_rows(&mut rng, 1, 4, 3)[0]),
        }
        let expected = rational_solve(&basis, &v).is_some_and(|x| x.iter().all(|c| c.is_integer()));
        assert_eq!(member(&s, &v).unwrap(), expected);
    }
}

#[test]
fn rank_mod_p_examples() {
    let two = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 2]]);
    assert_eq!(rank_mod_p(&two, 2).unwrap(), 0);
    assert_eq!(rank_mod_p(&IntMatrix::identity(4), 3).unwrap(), 4);
    let d23 = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(rank_mod_p(&d23, 3).unwrap(), 1);
    assert!(rank_mod_p(&d23, 4).is_err());
}

#[test]
fn rank_mod_p_matches_snf_and_naive_elimination() {
    let mut rng = rng(18);
    for _ in 0..40 {
        let a = random_matrix(&mut rng, 5, 3, 4);
        let b = random_matrix(&mut rng, 3, 6, 4);
        let m = a.mul(&b).unwrap();
        let d = snf(&m).diagonal();
        for p in [2u64, 3, 5, 7] {
            let divisible = d.iter().filter(|x| x.is_multiple_of(&BigInt::from(p))).count();
            let r = rank_mod_p(&m, p).unwrap();
            assert_eq!(r, d.len() - divisible);
            assert_eq!(r, rank_mod_p_naive(&m, p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_round_trip(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let m = random_matrix(&mut rng, rows, cols, 20);
        let s = snf(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(is_diagonal_chain(&s.d));
    }

    #[test]
    fn hnf_contract(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let m = random_matrix(&mut rng, rows, cols, 10);
        let h = hnf(&m);
        prop_assert_eq!(m.mul(&h.u).unwrap(), h.h.clone());
        prop_assert!(h.u.is_unimodular());
        prop_assert_eq!(h.rank(), rational_rank(&m));
    }
}
