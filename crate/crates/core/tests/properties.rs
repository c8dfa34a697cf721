use proptest::prelude::*;

use negfont::catalog::catalog_state;
use negfont::classify::{classify, decide, ClassSignature, MajorClass};
use negfont::fonts::{enumerate_fonts, font_det};
use negfont::invariants::{aggregate_invariants, degree, three_qubit_report};
use negfont::params::{format_complex, parse_complex};
use negfont::ptrans::{decomposition_residual, density_from_pure, global_pt, negativity, partial_transpose, TransposeKind};
use negfont::state::{bits_of, index_of, random_special_unitary_with, random_state_with, scramble_locally, stream_rng};
use negfont::suites::{random_pair_pair, random_triple_single};
use negfont::{Amplitude, Params, PureState};

fn state(n: usize, seed: u64) -> PureState {
    random_state_with(n, &mut stream_rng(seed, 0)).unwrap()
}

fn rel(a: Amplitude, b: Amplitude, deg: i32, norm: f64) -> f64 {
    (a - b).norm() / a.norm().max(norm.powi(deg))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn index_round_trip(n in 1usize..9, raw in any::<usize>()) {
        let idx = raw % (1 << n);
        let bits = bits_of(idx, n);
        prop_assert_eq!(bits.len(), n);
        prop_assert_eq!(index_of(&bits), idx);
    }

    #[test]
    fn local_unitaries_preserve_norm(n in 2usize..6, seed in any::<u64>()) {
        let s = state(n, seed);
        let u = scramble_locally(&s, &mut stream_rng(seed, 1));
        prop_assert!((u.norm() - s.norm()).abs() < 1e-12);
    }

    #[test]
    fn global_transpose_decomposes(n in 3usize..5, seed in any::<u64>(), p in 1usize..4) {
        let s = state(n, seed);
        prop_assert!(decomposition_residual(&s, p).unwrap() < 1e-12);
    }

    #[test]
    fn global_transpose_is_hermitian_involution(n in 2usize..5, seed in any::<u64>(), p in 1usize..3) {
        let rho = density_from_pure(&state(n, seed));
        let t = global_pt(&rho, p).unwrap();
        prop_assert!(t.rho.matrix().hermiticity_residual() < 1e-14);
        prop_assert!((t.rho.trace() - 1.0).abs() < 1e-12);
        let back = global_pt(&t.rho, p).unwrap();
        prop_assert!(back.rho.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn every_transpose_kind_is_hermitian(n in 2usize..5, seed in any::<u64>(), p in 1usize..3, k in 2usize..5) {
        let rho = density_from_pure(&state(n, seed));
        let kind = if k > n { TransposeKind::Global } else { TransposeKind::KWay(k) };
        let t = partial_transpose(&rho, p, kind).unwrap();
        prop_assert!(t.rho.matrix().hermiticity_residual() < 1e-12);
    }

    #[test]
    fn negativity_is_nonnegative(n in 2usize..5, seed in any::<u64>()) {
        let s = state(n, seed);
        let neg = negativity(&s, 1, TransposeKind::Global).unwrap();
        prop_assert!(neg.value >= 0.0);
    }

    #[test]
    fn invariants_survive_local_unitaries(seed in any::<u64>()) {
        let s = state(4, seed);
        let u = scramble_locally(&s, &mut stream_rng(seed, 1));
        let (a, b) = (aggregate_invariants(&s).unwrap(), aggregate_invariants(&u).unwrap());
        prop_assert!(rel(a.i4, b.i4, degree::I4, 1.0) < 1e-9);
        prop_assert!(rel(a.i48, b.i48, degree::I48, 1.0) < 1e-9);
        prop_assert!(rel(a.j12, b.j12, degree::J12, 1.0) < 1e-9);
        prop_assert!(rel(a.delta24, b.delta24, degree::DELTA, 1.0) < 1e-9);
        prop_assert!((a.n44_sq - b.n44_sq).abs() < 1e-9);
        prop_assert!((a.dres - b.dres).abs() < 1e-9);
    }

    #[test]
    fn invariants_are_homogeneous(seed in any::<u64>(), lambda in 0.3f64..3.0) {
        let s = state(4, seed);
        let (a, b) = (aggregate_invariants(&s).unwrap(), aggregate_invariants(&s.scaled(lambda).unwrap()).unwrap());
        for (x, y, deg) in [(a.i48, b.i48, degree::I48), (a.j12, b.j12, degree::J12), (a.delta24, b.delta24, degree::DELTA)] {
            let expected = x * lambda.powi(deg);
            prop_assert!((y - expected).norm() <= 1e-9 * expected.norm());
        }
    }

    #[test]
    fn i48_vanishes_on_products(seed in any::<u64>()) {
        let mut rng = stream_rng(seed, 0);
        for s in [random_triple_single(&mut rng).unwrap(), random_pair_pair(&mut rng).unwrap()] {
            prop_assert!(aggregate_invariants(&s).unwrap().i48.norm() < 1e-12);
        }
    }

    #[test]
    fn pair_weights_survive_unitaries_on_spectator_when_three_tangle_vanishes(seed in any::<u64>()) {
        // generalized W states: no |011>, |101>, |110>, |111> components, so I3 = 0
        let mut rng = stream_rng(seed, 0);
        let raw = random_state_with(3, &mut rng).unwrap();
        let amps: Vec<Amplitude> =
            raw.amps().iter().enumerate().map(|(i, a)| if i.count_ones() <= 1 { *a } else { Amplitude::new(0.0, 0.0) }).collect();
        let s = PureState::new(3, amps).unwrap().normalize().unwrap();
        let before = three_qubit_report(&s).unwrap();
        prop_assert!(before.i3_zero);
        let u = s.apply_local_unitary(&random_special_unitary_with(&mut rng, 3)).unwrap();
        let after = three_qubit_report(&u).unwrap();
        prop_assert!((before.w_sums[2] - after.w_sums[2]).abs() < 1e-9);
    }

    #[test]
    fn complemented_font_flips_sign(seed in any::<u64>(), p in 1usize..5) {
        let s = state(4, seed);
        for spec in enumerate_fonts(4, p).unwrap() {
            let d = font_det(&s, &spec).unwrap();
            let e = font_det(&s, &spec.complemented()).unwrap();
            prop_assert!((d + e).norm() < 1e-15);
        }
    }

    #[test]
    fn decision_table_is_total(i in any::<bool>(), d in any::<bool>(), z in any::<bool>(), n2 in 0usize..13, n3 in 0usize..13) {
        let sig = ClassSignature { i48_zero: i, dres_zero: d, delta_zero: z, n2, n3, n4: 1 };
        let (class, _) = decide(&sig);
        prop_assert_eq!(class == MajorClass::Unresolved, i && !z);
    }

    #[test]
    fn class_is_local_unitary_invariant(seed in any::<u64>(), pick in 0usize..4) {
        let (name, params) = [
            ("GHZ4", Params::new()),
            ("W4", Params::new()),
            ("Psi_a", Params::new().with("a", 0.8)),
            ("G_abcd", Params::new().with("a", 1.0).with("b", 2.0).with("c", 3.0).with("d", 4.0)),
        ][pick].clone();
        let s = catalog_state(name, &params).unwrap().normalize().unwrap();
        let u = scramble_locally(&s, &mut stream_rng(seed, 0));
        let (a, b) = (classify(&s, 1e-9, false).unwrap(), classify(&u, 1e-9, false).unwrap());
        prop_assert_eq!(a.major_class, b.major_class);
    }

    #[test]
    fn complex_text_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let z = Amplitude::new(re, im);
        prop_assert_eq!(parse_complex(&format_complex(z)).unwrap(), z);
    }
}
