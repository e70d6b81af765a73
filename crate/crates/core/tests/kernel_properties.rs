mod common;

use common::leibniz_det;
use num_traits::Zero;
use proptest::prelude::*;
use soddy_core::numeric::{determinant, inverse, linear_solve};
use soddy_core::{rat, Matrix, Rational, Scalar};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn square(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transpose_preserves_determinant(m in square(5)) {
        prop_assert_eq!(determinant(&m.transpose()).unwrap(), determinant(&m).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(p in square(4), m in square(4), q in square(4)) {
        let lhs = determinant(&(&(&p * &m) * &q)).unwrap();
        let rhs = determinant(&p).unwrap() * determinant(&m).unwrap() * determinant(&q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_matrices_have_integer_determinants(v in prop::collection::vec(-30i64..=30, 36)) {
        let m = Matrix::from_fn(6, 6, |i, j| rat(v[i * 6 + j], 1));
        prop_assert!(determinant(&m).unwrap().is_integer());
    }

    #[test]
    fn bareiss_matches_leibniz(m in square(5)) {
        prop_assert_eq!(determinant(&m).unwrap(), leibniz_det(&m));
    }

    #[test]
    fn float_lu_tracks_exact(m in square(5)) {
        let exact = determinant(&m).unwrap().to_f64();
        let float = determinant(&m.map(Scalar::to_f64)).unwrap();
        prop_assert!((exact - float).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn exact_solve_satisfies_system(m in square(4), b in prop::collection::vec(rational(), 4)) {
        prop_assume!(!determinant(&m).unwrap().is_zero());
        let x = linear_solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
        prop_assert_eq!(&m * &inverse(&m).unwrap(), Matrix::identity(4));
    }
}
