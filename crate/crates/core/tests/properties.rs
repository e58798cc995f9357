use geodiscord::discord::{k12_phase_form, kmatrix_two_qubit};
use geodiscord::io::format_sig;
use geodiscord::monogamy::{closed_form_d12, closed_form_d13};
use geodiscord::oracle::{dephase_qubit1, direction};
use geodiscord::xstate::{pattern_violation, random_state, random_x_state};
use geodiscord::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix_from(dim: usize, xs: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |r, c| C64::new(xs[2 * (r * dim + c)], xs[2 * (r * dim + c) + 1]))
}

fn entries(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim)
}

fn x_class() -> impl Strategy<Value = XClass> {
    prop_oneof![Just(XClass::Class1), Just(XClass::Class2)]
}

fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_sum_to_trace(xs in entries(8)) {
        let a = matrix_from(8, &xs);
        let h = (&a + &a.adjoint()).scale_real(0.5);
        let sum: f64 = hermitian_eigenvalues(&h).unwrap().iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10);
    }

    #[test]
    fn partial_trace_of_product(xa in entries(4), xb in entries(2)) {
        let a = matrix_from(4, &xa);
        let b = matrix_from(2, &xb);
        let reduced = kron(&a, &b).unwrap().partial_trace(3).unwrap();
        prop_assert!(max_diff(&reduced, &a.scale(b.trace())) < 1e-12);
    }

    #[test]
    fn hs_norm_is_entry_sum(xs in entries(8)) {
        let a = matrix_from(8, &xs);
        let direct: f64 = a.as_slice().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((hs_norm_sq(&a) - direct).abs() < 1e-12);
    }

    #[test]
    fn bloch_round_trips(seed in any::<u64>()) {
        let rho = random_state(8, &mut rng(seed)).unwrap();
        let t = bloch3(&rho).unwrap();
        prop_assert!(max_diff(&inverse_bloch3(&t), rho.matrix()) < 1e-12);
        let back = bloch3(&DensityMatrix::new(inverse_bloch3(&t)).unwrap()).unwrap();
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    worst = worst.max((back[(a, b, c)] - t[(a, b, c)]).abs());
                }
            }
        }
        prop_assert!(worst < 1e-12);
        let purity = rho.matrix().matmul(rho.matrix()).trace().re;
        prop_assert!((t.norm_sq() - 8.0 * purity).abs() < 1e-10);
    }

    #[test]
    fn twirl_lands_in_class(seed in any::<u64>(), class in x_class()) {
        let rho = twirl(&random_state(8, &mut rng(seed)).unwrap(), class).unwrap();
        prop_assert!(classify(&rho).unwrap().admits(class));
        prop_assert!(pattern_violation(&rho, class).unwrap() <= 1e-12);
    }

    #[test]
    fn ghz_parity_residuals(p in 0.0f64..=1.0) {
        let (r1, r2) = xstate::class_residuals(&ghz_mixed(p).unwrap()).unwrap();
        prop_assert!(r1 <= 1e-12);
        // |000><111| flips sign under full parity
        prop_assert!((r2 - (1.0 - p)).abs() <= 1e-12);
    }

    #[test]
    fn closed_form_k_matches_tensor(seed in any::<u64>(), class in x_class()) {
        let rho = random_x_state(class, &mut rng(seed)).unwrap();
        let closed = match class {
            XClass::Class1 => kmatrix_class1(&rho).unwrap(),
            _ => kmatrix_class2(&rho).unwrap(),
        };
        let tensor = kmatrix_tensor(&rho).unwrap();
        prop_assert!(closed.max_abs_diff(&tensor) <= 1e-10);
        prop_assert!((k12_phase_form(&rho, class).unwrap() - tensor[(0, 1)]).abs() <= 1e-10);
    }

    #[test]
    fn k_eigenvalues_are_nonnegative(seed in any::<u64>()) {
        let mut r = rng(seed);
        for rho in [random_state(8, &mut r).unwrap(), random_x_state(XClass::Class1, &mut r).unwrap()] {
            let d = discord3(&rho).unwrap();
            prop_assert!(d.k1 >= -1e-10 && d.k2 >= -1e-10 && d.k3 >= -1e-10);
        }
    }

    #[test]
    fn closest_state_certifies_discord(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rhos = [
            random_state(8, &mut r).unwrap(),
            random_x_state(XClass::Class1, &mut r).unwrap(),
            random_x_state(XClass::Class2, &mut r).unwrap(),
        ];
        for rho in &rhos {
            let d = discord3(rho).unwrap().value;
            let chi = closest_classical3(rho).unwrap();
            prop_assert!((chi.distance_sq - d).abs() <= 1e-9);
            prop_assert!(chi.psd_ok);
            let e = discord3(rho).unwrap().e_max;
            prop_assert!(max_diff(&chi.chi, &dephase_qubit1(rho, &e)) < 1e-12);
            let chi_state = DensityMatrix::new(chi.chi).unwrap();
            prop_assert!(discord3(&chi_state).unwrap().value <= 1e-10);
        }
    }

    #[test]
    fn two_qubit_closed_form_matches_tensor(seed in any::<u64>()) {
        let rho = random_x_state(XClass::TwoQubitX, &mut rng(seed)).unwrap();
        let d = discord2(&rho).unwrap();
        let eig = k_eigen(&kmatrix_two_qubit(&rho).unwrap());
        prop_assert!((d.value - eig.residual_mass() / 4.0).abs() <= 1e-12);
        let chi = closest_classical2(&rho).unwrap();
        prop_assert!((chi.distance_sq - d.value).abs() <= 1e-9);
    }

    #[test]
    fn ancilla_leaves_discord_unchanged(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho12 = random_x_state(XClass::TwoQubitX, &mut r).unwrap();
        let anc = xstate::random_pure(2, &mut r).unwrap();
        let joint = DensityMatrix::new(kron(rho12.matrix(), anc.matrix()).unwrap()).unwrap();
        let d2 = discord2(&rho12).unwrap().value;
        prop_assert!((discord3(&joint).unwrap().value - d2).abs() <= 1e-10);
    }

    #[test]
    fn qubit1_phase_rotation_is_invisible(seed in any::<u64>(), class in x_class(), phi in 0.0f64..6.3) {
        let rho = random_x_state(class, &mut rng(seed)).unwrap();
        let phase = C64::from_polar(1.0, phi);
        let u = ComplexMatrix::from_fn(8, |r, c| {
            if r != c { C64::new(0.0, 0.0) } else if r >= 4 { phase } else { C64::new(1.0, 0.0) }
        });
        let rotated = DensityMatrix::new(u.matmul(rho.matrix()).matmul(&u.adjoint())).unwrap();
        let a = discord3(&rho).unwrap().value;
        let b = discord3(&rotated).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn pairwise_closed_forms(seed in any::<u64>(), class in x_class()) {
        let rho = random_x_state(class, &mut rng(seed)).unwrap();
        let d12 = pairwise_discord_12(&rho).unwrap();
        prop_assert!((closed_form_d12(&rho).unwrap() - d12).abs() <= 1e-12);
        let d13 = pairwise_discord_13(&rho).unwrap();
        match class {
            XClass::Class1 => prop_assert!(d13.abs() <= 1e-12),
            _ => prop_assert!((closed_form_d13(&rho).unwrap() - d13).abs() <= 1e-12),
        }
    }

    #[test]
    fn csv_digits_round_trip(x in prop::num::f64::NORMAL) {
        let back: f64 = format_sig(x, 12).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn oracle_grid_bounds_analytic_from_above(seed in any::<u64>(), class in x_class()) {
        let rho = random_x_state(class, &mut rng(seed)).unwrap();
        let analytic = discord3(&rho).unwrap().value;
        let coarse = SphereGrid::new(8, 16, 1e-10, 200).unwrap();
        let fine = SphereGrid::new(16, 32, 1e-10, 200).unwrap();
        let a = oracle_discord_sphere(&rho, &coarse).unwrap();
        let b = oracle_discord_sphere(&rho, &fine).unwrap();
        prop_assert!(a.grid_value >= analytic - 1e-12);
        prop_assert!(b.grid_value <= a.grid_value);
        let m = oracle_discord_measurement(&rho, &fine).unwrap();
        prop_assert!(m.grid_value >= analytic - 1e-12);
        prop_assert!((m.value - b.value).abs() <= 2e-10);
        prop_assert!((b.value - analytic).abs() <= 1e-6);
    }

    #[test]
    fn oracle_direction_is_unit(theta in -1.0f64..4.0, phi in -1.0f64..7.0) {
        let e = direction(theta, phi);
        prop_assert!((e.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
    }
}
