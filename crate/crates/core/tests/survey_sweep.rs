use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use quadunit::arith::{is_squarefree, primes_up_to};
use quadunit::survey::{
    convergent_range, e_mu, e_mu_per_field, f_mu, minimal_by_convergents, minimal_by_ideals, minimal_elements,
    negative_pell, ramified_identity_check, split_identity_check, theorem_bound_sweep,
};
use quadunit::{Error, FieldContext};

fn doubled(rec: &quadunit::survey::MinimalRecord) -> (BigInt, BigInt) {
    let s = rec.xi.to_surd();
    let k = BigInt::from(2) / &s.w;
    (&s.u * &k, &s.v * &k)
}

#[test]
fn minimal_elements_against_scan() {
    let mut compared = 0;
    for d in 2u64..400 {
        if !is_squarefree(&BigInt::from(d)).unwrap() {
            continue;
        }
        let ctx = FieldContext::new(d).unwrap();
        for mu in [1u64, 2, 3, 5, 6, 7, 10, 11] {
            let Some(expected) = quadunit_oracle::minimal_elements_scan(d, mu, 2_000_000) else { continue };
            let mut got: Vec<_> = minimal_elements(&ctx, &BigInt::from(mu)).unwrap().iter().map(doubled).collect();
            got.sort();
            assert_eq!(got, expected, "d = {d}, mu = {mu}");
            compared += 1;
        }
    }
    assert!(compared > 1000, "{compared}");
}

#[test]
fn convergent_and_ideal_routes_agree() {
    for d in 2u64..2000 {
        if !is_squarefree(&BigInt::from(d)).unwrap() {
            continue;
        }
        let ctx = FieldContext::new(d).unwrap();
        for mu in [1u64, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            let mu = BigInt::from(mu);
            if !convergent_range(&ctx, &mu) {
                continue;
            }
            let a = minimal_by_convergents(&ctx, &mu);
            let b = minimal_by_ideals(&ctx, &mu).unwrap();
            assert_eq!(a, b, "d = {d}, mu = {mu}");
        }
    }
}

#[test]
fn e_mu_routes_agree() {
    for mu in [1i64, 2, 3, 5, 6] {
        for x in [2i64, 5, 20, 60] {
            let x = BigRational::from_integer(x.into());
            let a = e_mu(&BigInt::from(mu), &x).unwrap();
            let b = e_mu_per_field(&BigInt::from(mu), &x).unwrap();
            assert_eq!(a.records, b.records, "mu = {mu}, x = {x}");
        }
    }
}

#[test]
fn e_mu_below_twice_x() {
    for mu in [2i64, 3] {
        let start = Instant::now();
        let x = BigRational::from_integer(100_000.into());
        let r = e_mu(&BigInt::from(mu), &x).unwrap();
        println!("E_{mu}(1e5) = {} excess {:.3} in {:?}", r.count(), r.excess, start.elapsed());
        assert!(r.below_twice_x && r.below_twice_throughout());
    }
}

#[test]
fn f_mu_ratios() {
    for mu in [2i64, 3, 5, 6] {
        let r = f_mu(&BigInt::from(mu), 10_000).unwrap();
        println!("f_{mu}(1e4) = {} ratio {:.4} bound {}", r.count(), r.ratio, r.bound);
        assert!(r.ratio >= r.bound - 0.05);
    }
}

#[test]
fn negative_pell_routes() {
    let start = Instant::now();
    let r = negative_pell(10_000).unwrap();
    println!(
        "negative Pell to 1e4: {} radicands, {} from small pairs, {:?}",
        r.cf_route.len(),
        r.from_small_pairs,
        start.elapsed()
    );
    assert!(r.agree());
    for d in 2u64..1000 {
        if !is_squarefree(&BigInt::from(d)).unwrap() {
            continue;
        }
        let listed = r.cf_route.contains(&d);
        assert_eq!(quadunit_oracle::fundamental_unit(d).norm == -1, listed, "d = {d}");
        if quadunit_oracle::negative_pell_scan(d, 20_000).is_some() {
            assert!(listed, "d = {d}");
        }
    }
}

#[test]
fn split_identity_everywhere() {
    let mut checked = 0;
    for d in 2u64..=2000 {
        if !is_squarefree(&BigInt::from(d)).unwrap() {
            continue;
        }
        for p in primes_up_to(50) {
            match split_identity_check(&BigInt::from(d), p) {
                Ok(r) => {
                    assert!(r.holds, "d = {d}, p = {p}: {r:?}");
                    checked += 1;
                }
                Err(Error::Hypothesis(_)) => {}
                Err(e) => panic!("d = {d}, p = {p}: {e}"),
            }
        }
    }
    println!("split identity checked on {checked} pairs");
    assert!(checked > 100);
}

#[test]
fn ramified_identity_survey() {
    let mut outcomes = (0, 0);
    for d in 2u64..=2000 {
        if !is_squarefree(&BigInt::from(d)).unwrap() {
            continue;
        }
        for p in [2u64, 3, 5, 7] {
            if let Ok(r) = ramified_identity_check(&BigInt::from(d), p) {
                if r.holds {
                    outcomes.0 += 1;
                } else {
                    outcomes.1 += 1;
                }
            }
        }
    }
    println!("ramified identity: {} hold, {} fail", outcomes.0, outcomes.1);
    assert!(ramified_identity_check(&BigInt::from(14), 2).unwrap().holds);
}

#[test]
fn bound_sweep() {
    let start = Instant::now();
    let a = theorem_bound_sweep(2, 10_000, 0.0).unwrap();
    println!(
        "bound sweep: {} rows, min {:.3} at T = {}, medians {:?}, rho {:.3}, {:?}",
        a.rows.len(),
        a.min_residual,
        a.min_at_t,
        a.bin_medians,
        a.bin_rank_correlation,
        start.elapsed()
    );
    let b = theorem_bound_sweep(2, 10_000, 0.0).unwrap();
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    assert!(a.min_residual.is_finite());
}
