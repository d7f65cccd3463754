use num_bigint::BigInt;
use quadunit::progressions::{
    build_progression, coverage_report, empirical_density, index_pairs, omega_p_count, omega_p_prediction,
    predicted_density, IndexPair,
};
use quadunit::arith::primes_up_to;

#[test]
fn coverage_mu_2_and_3() {
    for mu in [2i64, 3] {
        let r = coverage_report(&BigInt::from(mu), 200, 300, 200, 100_000).unwrap();
        assert!(r.uncovered.is_empty(), "mu = {mu}: {:?}", r.uncovered);
        println!("mu = {mu}: {} witnesses, {} exception-only {:?}", r.witnesses.len(), r.exception_only.len(), r.exception_only);
    }
}

#[test]
fn density_of_worked_pairs() {
    for (mu, j, y, x) in [(2i64, 0u8, 7i64, 3i64), (2, 0, 1, 0), (2, 0, 7, 4), (5, 1, 1, 0)] {
        let pair = IndexPair::new(mu, j, y, x).unwrap();
        let prog = build_progression(&pair, 10_000).unwrap();
        let predicted = predicted_density(&pair, 100_000).unwrap().value;
        let empirical = empirical_density(&prog, 100_000).unwrap();
        println!("{mu} {j} ({y},{x}): predicted {predicted:.5} empirical {:.5} unfactored {}", empirical.value(), empirical.unfactored);
        assert!((predicted - empirical.value()).abs() <= 0.02);
    }
}

#[test]
fn omega_p_matches_cases() {
    for mu in [-1i64, 2, 3, 5, -7, 17] {
        for j in [0u8, 1] {
            for pair in index_pairs(&BigInt::from(mu), j, 40).unwrap() {
                let Ok(prog) = build_progression(&pair, 10_000) else { continue };
                for p in primes_up_to(50) {
                    assert_eq!(omega_p_count(&prog, p), omega_p_prediction(&pair, p).unwrap(), "{pair:?} p = {p}");
                }
            }
        }
    }
}

mod hensel {
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use quadunit::progressions::hensel_quadratic;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn matches_brute_force(
            p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23]),
            m in 1u32..=4,
            a2 in -60i64..60,
            a1 in -60i64..60,
            a0 in -60i64..60,
        ) {
            prop_assume!(a2 % p as i64 != 0);
            let got = hensel_quadratic(&BigInt::from(a2), &BigInt::from(a1), &BigInt::from(a0), p, m).unwrap();
            prop_assert_eq!(got, quadunit_oracle::quadratic_solvable_scan(a2, a1, a0, p, m));
        }
    }
}
