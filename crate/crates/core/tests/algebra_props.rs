use gaincurv_core::algebra::{FieldSpec, IntMatrix, Matrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn cofactor_det(n: usize, a: &[i64]) -> i64 {
    if n == 1 {
        return a[0];
    }
    let mut total = 0;
    for j in 0..n {
        let minor: Vec<i64> = (1..n)
            .flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| a[i * n + k]))
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * a[j] * cofactor_det(n - 1, &minor);
    }
    total
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6)
        .prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..5, r * c)))
}

const FIELDS: [FieldSpec; 4] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
];

proptest! {
    #[test]
    fn rank_equals_rank_of_transpose((r, c, data) in small_matrix()) {
        for f in FIELDS {
            let m = Matrix::from_i64(f, r, c, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(data in prop::collection::vec(-9i64..10, 16)) {
        let m = IntMatrix::from_i64(4, 4, &data);
        prop_assert_eq!(m.det().unwrap(), BigInt::from(cofactor_det(4, &data)));
    }

    #[test]
    fn smith_form_divides_and_reconstructs((r, c, data) in small_matrix()) {
        let m = IntMatrix::from_i64(r, c, &data);
        let snf = m.smith_normal_form_with_transforms();
        let nonzero: Vec<&BigInt> = snf.diagonal.iter().filter(|d| !d.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), snf.rank);
        for w in nonzero.windows(2) {
            prop_assert!((w[1] % w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        let (u, v) = (snf.left.as_ref().unwrap(), snf.right.as_ref().unwrap());
        let d = u.mul(&m).mul(v);
        for i in 0..r {
            for j in 0..c {
                let expect = if i == j && i < snf.diagonal.len() { snf.diagonal[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(d.get(i, j), &expect);
            }
        }
        prop_assert!(u.det().unwrap().abs().is_one());
        prop_assert!(v.det().unwrap().abs().is_one());
    }

    #[test]
    fn prime_rank_drop_matches_invariant_factors((r, c, data) in small_matrix()) {
        let m = IntMatrix::from_i64(r, c, &data);
        let snf = m.smith_normal_form();
        let q_rank = Matrix::from_i64(FieldSpec::Rationals, r, c, &data).rank();
        prop_assert_eq!(q_rank, snf.rank);
        for p in [2u64, 3, 5, 7] {
            let p_rank = Matrix::from_i64(FieldSpec::Prime(p), r, c, &data).rank();
            let divisible = snf.diagonal.iter().filter(|d| !d.is_zero() && (*d % BigInt::from(p)).is_zero()).count();
            prop_assert!(p_rank <= q_rank);
            prop_assert_eq!(p_rank, q_rank - divisible);
        }
    }
}
