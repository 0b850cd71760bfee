//! Property tests for the algebraic invariants of the matrix layer, the
//! measurement calculus, and the choice policies.

use biased_collapse_core::matrix::{Complex64, Matrix};
use biased_collapse_core::measure::{born_probability, luders_update, Outcome};
use biased_collapse_core::policy::{ChoicePolicy, RngSeed};
use biased_collapse_core::random::{random_density, random_projector};
use biased_collapse_core::state::validate_density;
use proptest::prelude::*;

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        Matrix::new(
            n,
            n,
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap()
    })
}

fn rect(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), rows * cols).prop_map(move |v| {
        Matrix::new(
            rows,
            cols,
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap()
    })
}

/// Entries on a dyadic grid multiply exactly in double precision.
fn dyadic_square(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec((-16i32..=16, -16i32..=16), n * n).prop_map(move |v| {
        Matrix::new(
            n,
            n,
            v.into_iter()
                .map(|(re, im)| Complex64::new(re as f64 / 8.0, im as f64 / 8.0))
                .collect(),
        )
        .unwrap()
    })
}

fn square_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (1usize..=4).prop_flat_map(|n| (square(n), square(n)))
}

proptest! {
    #[test]
    fn trace_is_cyclic((x, y) in square_pair()) {
        let xy = x.matmul(&y).unwrap().trace().unwrap();
        let yx = y.matmul(&x).unwrap().trace().unwrap();
        prop_assert!((xy - yx).norm() < 1e-12);
    }

    #[test]
    fn adjoint_is_an_involution(m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| rect(r, c))) {
        prop_assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn product_adjoint_reverses((a, b) in square_pair()) {
        let lhs = a.matmul(&b).unwrap().adjoint();
        let rhs = b.adjoint().matmul(&a.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn tensor_product_is_associative(
        a in dyadic_square(2),
        b in dyadic_square(2),
        c in dyadic_square(3),
    ) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
    }

    #[test]
    fn trace_is_multiplicative_over_tensor(a in square(2), b in square(3)) {
        let lhs = a.tensor(&b).trace().unwrap();
        let rhs = a.trace().unwrap() * b.trace().unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_over_all_subsystems_is_trace(m in square(6)) {
        let full = m.partial_trace(&[2, 3], &[]).unwrap();
        prop_assert_eq!(full.rows(), 1);
        prop_assert!((full.get(0, 0) - m.trace().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn frobenius_distance_is_symmetric((a, b) in square_pair()) {
        prop_assert_eq!(
            a.frobenius_distance(&b).unwrap(),
            b.frobenius_distance(&a).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn luders_outputs_are_normalized_valid_and_repeatable(
        seed in any::<u64>(),
        dim in 2usize..=4,
        rank_raw in 0usize..64,
    ) {
        let mut rng = RngSeed(seed).rng();
        let rho = random_density(dim, 1e-9, &mut rng);
        let rank = 1 + rank_raw % dim;
        let p = random_projector(dim, rank, &mut rng);
        let p_yes = born_probability(&rho, &p).unwrap();
        if p_yes >= 1e-6 {
            let updated = luders_update(&rho, &p, Outcome::Yes).unwrap();
            let trace = updated.matrix().trace().unwrap();
            prop_assert!((trace.re - 1.0).abs() < 1e-12 && trace.im.abs() < 1e-12);
            prop_assert!(validate_density(updated.matrix().clone(), 1e-9).is_ok());
            let again = born_probability(&updated, &p).unwrap();
            prop_assert!((again - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn complement_probabilities_are_complete(
        seed in any::<u64>(),
        dim in 2usize..=4,
        rank_raw in 0usize..64,
    ) {
        let mut rng = RngSeed(seed).rng();
        let rho = random_density(dim, 1e-9, &mut rng);
        let p = random_projector(dim, rank_raw % (dim + 1), &mut rng);
        let yes = born_probability(&rho, &p).unwrap();
        let no = born_probability(&rho, &p.complement()).unwrap();
        prop_assert!((yes + no - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_weights_are_exactly_orthodox(seed in any::<u64>(), dim in 2usize..=4) {
        let mut rng = RngSeed(seed).rng();
        let rho = random_density(dim, 1e-9, &mut rng);
        let p = random_projector(dim, 1, &mut rng);
        let orthodox = ChoicePolicy::Orthodox.distribution(&rho, &p).unwrap();
        let unit = ChoicePolicy::biased(1.0, 1.0)
            .unwrap()
            .distribution(&rho, &p)
            .unwrap();
        prop_assert_eq!(orthodox, unit);
    }

    #[test]
    fn distributions_are_normalized(
        seed in any::<u64>(),
        dim in 2usize..=4,
        w_yes in 0.05f64..20.0,
        w_no in 0.05f64..20.0,
    ) {
        let mut rng = RngSeed(seed).rng();
        let rho = random_density(dim, 1e-9, &mut rng);
        let p = random_projector(dim, 1, &mut rng);
        for policy in [
            ChoicePolicy::Orthodox,
            ChoicePolicy::biased(w_yes, w_no).unwrap(),
            ChoicePolicy::Deterministic(Outcome::Yes),
        ] {
            let (yes, no) = policy.distribution(&rho, &p).unwrap();
            prop_assert!((0.0..=1.0).contains(&yes) && (0.0..=1.0).contains(&no));
            prop_assert!((yes + no - 1.0).abs() < 1e-12);
        }
    }
}
