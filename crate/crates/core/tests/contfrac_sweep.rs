use num_bigint::BigInt;
use num_traits::{One, Signed};
use quadunit::arith::is_squarefree;
use quadunit::contfrac::{expand_omega, prod_alpha, quotient_norm_sweep};
use quadunit::{BasisKind, FieldContext};

fn squarefree_upto(n: i64) -> impl Iterator<Item = i64> {
    (2..n).filter(|&d| is_squarefree(&BigInt::from(d)).unwrap())
}

#[test]
fn units_match_pell_oracle_below_1000() {
    for d in squarefree_upto(1000) {
        let ctx = FieldContext::new(d).unwrap();
        let eps = expand_omega(&ctx).fundamental_unit();
        let s = eps.to_surd();
        let unit = quadunit_oracle::fundamental_unit(d as u64);
        let w = BigInt::from(unit.w);
        assert_eq!((s.u.clone(), s.v.clone(), s.w.clone()), reduce(unit.x, unit.y, w), "d = {d}");
        assert_eq!(eps.norm(), BigInt::from(unit.norm));
    }
}

fn reduce(x: BigInt, y: BigInt, w: BigInt) -> (BigInt, BigInt, BigInt) {
    use num_integer::Integer;
    let g = x.gcd(&y).gcd(&w);
    (x / &g, y / &g, w / &g)
}

#[test]
fn expansion_invariants_below_5000() {
    for d in squarefree_upto(5000) {
        let ctx = FieldContext::new(d).unwrap();
        let e = expand_omega(&ctx);
        let l = e.period();
        let last = &e.periodic[l - 1];
        let expected_last = match ctx.kind() {
            BasisKind::Half => &e.a0 * 2 - 1,
            BasisKind::Whole => &e.a0 * 2,
        };
        assert_eq!(last, &expected_last, "d = {d}");
        let inner = &e.periodic[..l - 1];
        assert!(inner.iter().eq(inner.iter().rev()), "d = {d}");
        let conv = e.convergent_list(2 * l);
        for n in 1..2 * l {
            let det = &conv[n].0 * &conv[n - 1].1 - &conv[n - 1].0 * &conv[n].1;
            let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(det, sign, "d = {d}, n = {n}");
        }
        let eps = e.fundamental_unit();
        assert!(eps.norm().abs().is_one());
        assert_eq!(eps.norm(), if l % 2 == 0 { BigInt::one() } else { -BigInt::one() });
    }
}

#[test]
fn product_of_quotients_below_2000() {
    for d in squarefree_upto(2000) {
        let e = expand_omega(&FieldContext::new(d).unwrap());
        assert_eq!(prod_alpha(&e), e.fundamental_unit().to_surd(), "d = {d}");
    }
}

#[test]
fn quotient_norm_below_5000() {
    for d in squarefree_upto(5000) {
        let ctx = FieldContext::new(d).unwrap();
        let e = expand_omega(&ctx);
        let checks = quotient_norm_sweep(&e, 256);
        if ctx.disc() > &BigInt::from(16) {
            assert!(checks.iter().all(|c| c.passes()), "d = {d}");
        } else {
            assert!(checks.iter().all(|c| c.alpha_bound), "d = {d}");
        }
    }
}
