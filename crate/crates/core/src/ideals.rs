//! Integral ideals through their canonical bases `[a, b + cω]`, `ω = (D + √D)/2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::contfrac::{expand_omega, QuadIrr};
use crate::error::{Error, Result};
use crate::quadfield::{BasisKind, FieldContext, QuadInt, Surd};

/// `[a, b + cω]` over ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    ctx: FieldContext,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// `ω = k + ω_d`; returns `k`.
fn omega_shift(ctx: &FieldContext) -> BigInt {
    match ctx.kind() {
        BasisKind::Whole => ctx.d() * 2,
        BasisKind::Half => (ctx.d() - 1) / 2,
    }
}

/// `N(ω) = (D² − D)/4`.
fn omega_norm(ctx: &FieldContext) -> BigInt {
    let dd = ctx.disc();
    (dd * dd - dd) / 4
}

/// `⌊−c·ω̄⌋`.
fn floor_neg_c_omega_bar(ctx: &FieldContext, c: &BigInt) -> BigInt {
    let d = ctx.d();
    let root = (c * c * d).sqrt();
    match ctx.kind() {
        // −c(2d − √d)
        BasisKind::Whole => root - c * d * 2,
        // −c(d − √d)/2
        BasisKind::Half => (root - c * d).div_floor(&BigInt::from(2)),
    }
}

impl IdealBasis {
    /// Puts `b` into the window `−a < b + cω̄ < 0` modulo `a`.
    pub fn canonical(ctx: &FieldContext, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if !a.is_positive() || !c.is_positive() {
            return Err(Error::InvalidArgument(format!("ideal basis needs a, c > 0 (a = {a}, c = {c})")));
        }
        let top = floor_neg_c_omega_bar(ctx, &c);
        let b = &b + &a * (&top - &b).div_floor(&a);
        Ok(IdealBasis { ctx: ctx.clone(), a, b, c })
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    /// `b + cω` in the basis `{1, ω_d}`.
    pub fn second_generator(&self) -> QuadInt {
        self.ctx.element(&self.b + &self.c * omega_shift(&self.ctx), self.c.clone())
    }

    /// The three defining conditions of a canonical basis.
    pub fn is_canonical(&self) -> bool {
        if !self.a.is_positive() || !self.c.is_positive() {
            return false;
        }
        if !self.a.is_multiple_of(&self.c) || !self.b.is_multiple_of(&self.c) {
            return false;
        }
        let gen = self.second_generator();
        if !gen.norm().is_multiple_of(&self.norm()) {
            return false;
        }
        let d = self.ctx.d();
        // b + cω̄ as a surd
        let shifted = self.second_generator().conj().to_surd();
        shifted < Surd::integer(d, 0) && shifted > Surd::integer(d, -&self.a)
    }

    pub fn is_primitive(&self) -> bool {
        self.c.is_one()
    }

    /// `α(I) = (b + cω)/a` as `(P + √d)/Q`.
    pub fn alpha(&self) -> Result<QuadIrr> {
        let (bq, br) = self.b.div_rem(&self.c);
        let (aq, ar) = self.a.div_rem(&self.c);
        if !br.is_zero() || !ar.is_zero() {
            return Err(Error::InvalidArgument(format!("c = {} does not divide a and b", self.c)));
        }
        let d = self.ctx.d().clone();
        let (p, q) = match self.ctx.kind() {
            BasisKind::Whole => (bq + &d * 2, aq),
            BasisKind::Half => (bq * 2 + &d, aq * 2),
        };
        QuadIrr::new(d, p, q)
    }

    /// Reduced: primitive with a reduced associated irrational.
    pub fn is_reduced(&self) -> bool {
        self.is_primitive() && self.alpha().map(|al| al.is_reduced()).unwrap_or(false)
    }

    /// `gcd(I, Ī) = 1`. The sum `I + Ī` is the lattice spanned by `a`,
    /// `2b + cD` and `b + cω`, whose index in `O_d` is `c·gcd(a, 2b + cD)`.
    pub fn coprime_to_conjugate(&self) -> bool {
        let t = &self.b * 2 + &self.c * self.ctx.disc();
        self.c.is_one() && self.a.gcd(&t).is_one()
    }
}

/// Canonical basis of the principal ideal `(ξ)`, from the Hermite form of
/// the coordinates of `ξ` and `ωξ` in the basis `{1, ω}`.
pub fn principal_basis(xi: &QuadInt) -> Result<IdealBasis> {
    if xi.a.is_zero() && xi.b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ctx = xi.ctx();
    let x1 = &xi.a - &xi.b * omega_shift(ctx);
    let y1 = xi.b.clone();
    // ω² = Dω − N(ω)
    let x2 = -&y1 * omega_norm(ctx);
    let y2 = &x1 + &y1 * ctx.disc();
    let eg = y1.extended_gcd(&y2);
    let (mut c, mut s, mut t) = (eg.gcd, eg.x, eg.y);
    if c.is_negative() {
        c = -c;
        s = -s;
        t = -t;
    }
    let det = (&x1 * &y2 - &x2 * &y1).abs();
    let (a, b0) = if c.is_zero() {
        // ξ rational: (ξ) = [|x1|, |x1|·ω]
        let m = x1.abs();
        return IdealBasis::canonical(ctx, m.clone(), BigInt::zero(), m);
    } else {
        (&det / &c, s * &x1 + t * &x2)
    };
    IdealBasis::canonical(ctx, a, b0, c)
}

pub fn alpha_of_ideal(ideal: &IdealBasis) -> Result<QuadIrr> {
    ideal.alpha()
}

/// `N(b + ω)`.
fn norm_b_plus_omega(ctx: &FieldContext, b: &BigInt) -> BigInt {
    let dd = ctx.disc();
    b * b + b * dd + omega_norm(ctx)
}

/// All primitive ideals of square-free norm `mu`, ascending in `b`.
pub fn ideals_of_norm(ctx: &FieldContext, mu: &BigInt) -> Result<Vec<IdealBasis>> {
    if !mu.is_positive() {
        return Err(Error::InvalidArgument(format!("ideal norm must be positive, got {mu}")));
    }
    if !arith::is_squarefree(mu)? {
        return Err(Error::NotSquarefree(mu.clone()));
    }
    let top = floor_neg_c_omega_bar(ctx, &BigInt::one());
    let mut out = Vec::new();
    let mut b = &top - mu + 1;
    while b <= top {
        if norm_b_plus_omega(ctx, &b).is_multiple_of(mu) {
            out.push(IdealBasis { ctx: ctx.clone(), a: mu.clone(), b: b.clone(), c: BigInt::one() });
        }
        b += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedIdeals {
    pub ideals: Vec<IdealBasis>,
    /// `μ < ω_d`, the range where the count formula applies.
    pub hypothesis_met: bool,
}

/// `μ < ω_d`, decided exactly.
pub fn norm_below_omega(ctx: &FieldContext, mu: &BigInt) -> bool {
    Surd::integer(ctx.d(), mu.clone()) < ctx.omega()
}

pub fn reduced_ideals_of_norm(ctx: &FieldContext, mu: &BigInt) -> Result<ReducedIdeals> {
    let ideals = ideals_of_norm(ctx, mu)?
        .into_iter()
        .filter(IdealBasis::is_reduced)
        .collect();
    Ok(ReducedIdeals { ideals, hypothesis_met: norm_below_omega(ctx, mu) })
}

/// Closed-form count of reduced ideals of square-free norm `mu < ω_d`.
pub fn count_reduced_formula(ctx: &FieldContext, mu: &BigInt) -> Result<BigInt> {
    if !mu.is_positive() {
        return Err(Error::InvalidArgument(format!("ideal norm must be positive, got {mu}")));
    }
    let f = arith::factorize(mu)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(mu.clone()));
    }
    if !norm_below_omega(ctx, mu) {
        return Err(Error::Hypothesis(format!("norm {mu} is not below omega_{}", ctx.d())));
    }
    let d = ctx.d();
    let two = BigInt::from(2);
    let square_mod_mu = f
        .primes()
        .filter(|p| *p != &two)
        .all(|p| arith::jacobi(d, p).map(|j| j != -1).unwrap_or(false));
    if !square_mod_mu {
        return Ok(BigInt::zero());
    }
    let mu1 = mu.gcd(&(d * 2));
    let mu2 = mu / &mu1;
    let w = arith::omega(&mu2)?;
    let mu_even = mu.is_even();
    let pow = |e: usize| BigInt::one() << e;
    Ok(match ctx.kind() {
        BasisKind::Whole => pow(w),
        BasisKind::Half if !mu_even => pow(w),
        BasisKind::Half if d.mod_floor(&BigInt::from(8)).is_one() => pow(w + 1),
        BasisKind::Half => BigInt::zero(),
    })
}

/// Per-index outcome of comparing `α((ξ_n))` with `α_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiAlphaReport {
    pub d: BigInt,
    pub passes: Vec<bool>,
}

impl XiAlphaReport {
    pub fn all_pass(&self) -> bool {
        self.passes.iter().all(|&p| p)
    }
}

pub fn xi_alpha_check(ctx: &FieldContext) -> XiAlphaReport {
    let exp = expand_omega(ctx);
    let passes = exp
        .xis()
        .take(exp.period())
        .enumerate()
        .map(|(n, xi)| {
            let nu = xi.norm().abs();
            match principal_basis(&xi) {
                Ok(ideal) => {
                    ideal.is_primitive()
                        && ideal.a == nu
                        && ideal.alpha().is_ok_and(|al| &al == exp.total_quotient(n))
                }
                Err(_) => false,
            }
        })
        .collect();
    XiAlphaReport { d: ctx.d().clone(), passes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: i64) -> FieldContext {
        FieldContext::new(d).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn principal_examples() {
        let unit = principal_basis(&ctx(2).element(1, 1)).unwrap();
        assert_eq!((unit.a.clone(), unit.c.clone()), (big(1), big(1)));
        assert!(unit.is_canonical());
        let two = principal_basis(&ctx(2).element(10, 7)).unwrap();
        assert_eq!((two.a.clone(), two.c.clone()), (big(2), big(1)));
        assert!(two.is_canonical());
        let u13 = principal_basis(&ctx(13).element(1, 1)).unwrap();
        assert_eq!((u13.a.clone(), u13.c.clone()), (big(1), big(1)));
        let rational = principal_basis(&ctx(7).element(3, 0)).unwrap();
        assert_eq!((rational.a.clone(), rational.c.clone()), (big(3), big(3)));
        assert!(rational.is_canonical());
        assert!(!rational.is_reduced());
        assert!(matches!(principal_basis(&ctx(7).element(0, 0)), Err(Error::ZeroElement)));
    }

    #[test]
    fn alpha_of_unit_ideal() {
        let unit = principal_basis(&ctx(2).element(1, 1)).unwrap();
        let alpha = unit.alpha().unwrap();
        assert_eq!(alpha, QuadIrr::new(big(2), big(1), big(1)).unwrap());
        assert!(alpha.is_reduced());
    }

    #[test]
    fn reduced_counts() {
        let r = reduced_ideals_of_norm(&ctx(61), &big(3)).unwrap();
        assert_eq!(r.ideals.len(), 2);
        assert!(r.hypothesis_met);
        assert!(reduced_ideals_of_norm(&ctx(23), &big(3)).unwrap().ideals.is_empty());
        assert_eq!(reduced_ideals_of_norm(&ctx(23), &big(1)).unwrap().ideals.len(), 1);
        assert!(matches!(reduced_ideals_of_norm(&ctx(23), &big(4)), Err(Error::NotSquarefree(_))));
        assert!(!reduced_ideals_of_norm(&ctx(5), &big(2)).unwrap().hypothesis_met);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(count_reduced_formula(&ctx(61), &big(3)).unwrap(), big(2));
        assert_eq!(count_reduced_formula(&ctx(17), &big(2)).unwrap(), big(2));
        assert_eq!(count_reduced_formula(&ctx(23), &big(3)).unwrap(), big(0));
        assert!(matches!(count_reduced_formula(&ctx(5), &big(2)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn xi_alpha_small_fields() {
        for d in [2i64, 3, 5, 13, 61, 71, 94] {
            let report = xi_alpha_check(&ctx(d));
            assert!(report.all_pass(), "d = {d}: {:?}", report.passes);
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        for d in [2i64, 3, 5, 13, 21, 71] {
            let c = ctx(d);
            for a in -20i64..20 {
                for b in -20i64..20 {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let ideal = principal_basis(&c.element(a, b)).unwrap();
                    assert!(ideal.is_canonical(), "d = {d}, xi = {a} + {b}w");
                    assert_eq!(ideal.norm(), c.element(a, b).norm().abs());
                    let again =
                        IdealBasis::canonical(&c, ideal.a.clone(), ideal.b.clone(), ideal.c.clone()).unwrap();
                    assert_eq!(again, ideal);
                }
            }
        }
    }
}
