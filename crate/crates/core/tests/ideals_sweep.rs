use num_bigint::BigInt;
use quadunit::arith::is_squarefree;
use quadunit::ideals::{count_reduced_formula, norm_below_omega, reduced_ideals_of_norm, xi_alpha_check};
use quadunit::FieldContext;

fn squarefree_upto(n: i64) -> impl Iterator<Item = i64> {
    (2..n).filter(|&d| is_squarefree(&BigInt::from(d)).unwrap())
}

#[test]
fn enumeration_matches_formula_below_2000() {
    let mut mismatches = Vec::new();
    for d in squarefree_upto(2000) {
        let ctx = FieldContext::new(d).unwrap();
        for mu in squarefree_upto(2000).chain([1]) {
            let mu = BigInt::from(mu);
            if !norm_below_omega(&ctx, &mu) {
                continue;
            }
            let listed = reduced_ideals_of_norm(&ctx, &mu).unwrap().ideals.len();
            let formula = count_reduced_formula(&ctx, &mu).unwrap();
            if BigInt::from(listed) != formula {
                mismatches.push((d, mu, listed, formula));
            }
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn xi_alpha_below_2000() {
    for d in squarefree_upto(2000) {
        assert!(xi_alpha_check(&FieldContext::new(d).unwrap()).all_pass(), "d = {d}");
    }
}
