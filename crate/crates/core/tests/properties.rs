use alphapf::alphapf::{alpha_pf, alpha_pf_dp, diagonal_product};
use alphapf::permcycle::{cycle_count_poly, decompose, Permutation};
use alphapf::skewmat::{alpha_det, make_j, BlockSkewMatrix, Matrix, Scalar, C64, QC};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn skew_from(m: usize, entries: &[(i64, i64)]) -> BlockSkewMatrix<QC> {
    let mut it = entries.iter().cycle();
    BlockSkewMatrix::from_upper(m, |_, _| {
        let &(re, im) = it.next().unwrap();
        QC::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    })
}

fn small_entries() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-4i64..=4, -2i64..=2), 1..40)
}

fn rational() -> impl Strategy<Value = QC> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| QC::from_ratio(p, q))
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_equals_bruteforce(m in 1usize..=5, entries in small_entries(), alpha in rational()) {
        let b = skew_from(m, &entries);
        prop_assert_eq!(alpha_pf_dp(&b, &alpha).unwrap().value, alpha_pf(&b, &alpha).unwrap().value);
    }

    #[test]
    fn minus_one_is_pfaffian_and_zero_is_diagonal(m in 1usize..=5, entries in small_entries()) {
        let b = skew_from(m, &entries);
        prop_assert_eq!(alpha_pf_dp(&b, &QC::from_int(-1)).unwrap().value, b.pfaffian());
        prop_assert_eq!(alpha_pf_dp(&b, &QC::from_int(0)).unwrap().value, diagonal_product(&b));
    }

    #[test]
    fn homogeneous_of_degree_m(m in 1usize..=4, entries in small_entries(), alpha in rational(), c in rational()) {
        let b = skew_from(m, &entries);
        let scaled = alpha_pf_dp(&b.scale(&c), &alpha).unwrap().value;
        let mut factor = QC::from_int(1);
        for _ in 0..m {
            factor = factor * c.clone();
        }
        prop_assert_eq!(scaled, factor * alpha_pf_dp(&b, &alpha).unwrap().value);
    }

    #[test]
    fn j_is_fixed(m in 0usize..=6, alpha in rational()) {
        prop_assert_eq!(alpha_pf_dp(&make_j::<QC>(m), &alpha).unwrap().value, QC::from_int(1));
    }

    #[test]
    fn pfaffian_squares_to_determinant(m in 1usize..=6, seed in any::<u64>()) {
        let b: BlockSkewMatrix<C64> = alphapf::ensemble::random_skew(m, &mut alphapf::ensemble::rng(seed));
        let pf = b.pfaffian();
        let det = b.as_matrix().det().unwrap();
        prop_assert!((pf * pf - det).norm() <= 1e-9 * det.norm().max(1.0));
    }

    #[test]
    fn alpha_det_of_all_ones(n in 1usize..=6, alpha in rational()) {
        let ones = Matrix::from_fn(n, n, |_, _| QC::from_int(1));
        prop_assert_eq!(alpha_det(&ones, &alpha).unwrap(), cycle_count_poly(n, &alpha));
    }

    #[test]
    fn cycle_structure_is_conjugation_invariant(sigma in permutation(9), tau_seed in any::<u64>()) {
        let n = sigma.len();
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut alphapf::ensemble::rng(tau_seed));
        let tau = Permutation::new(images).unwrap();
        let conj = tau.compose(&sigma).compose(&tau.inverse());
        prop_assert_eq!(decompose(&conj).cycle_type(), decompose(&sigma).cycle_type());
        prop_assert_eq!(sigma.inverse().cycle_count(), sigma.cycle_count());
        prop_assert_eq!(sigma.compose(&tau).sign(), sigma.sign() * tau.sign());
        prop_assert_eq!(decompose(&sigma).reconstruct(), sigma);
    }
}
