//! Continued fractions of `ω_d` driven by the integer state `(P, Q)` of the
//! total quotients `(P + √d)/Q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadfield::{BasisKind, FieldContext, QuadInt, Surd};

/// `(P + √d)/Q` with `Q | d − P²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    pub d: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

impl QuadIrr {
    pub fn new(d: BigInt, p: BigInt, q: BigInt) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidArgument("quadratic irrational with Q = 0".into()));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            return Err(Error::InvalidArgument(format!("{q} does not divide {d} - {p}^2")));
        }
        Ok(QuadIrr { d, p, q })
    }

    pub fn to_surd(&self) -> Surd {
        Surd::new(self.d.clone(), self.p.clone(), BigInt::one(), self.q.clone())
    }

    pub fn conj_surd(&self) -> Surd {
        self.to_surd().conj()
    }

    /// `⌊(P + √d)/Q⌋` given `⌊√d⌋`.
    pub fn floor_with(&self, sqrt_floor: &BigInt) -> BigInt {
        if self.q.is_positive() {
            (&self.p + sqrt_floor).div_floor(&self.q)
        } else {
            // P + √d lies strictly inside (P + s, P + s + 1) and no multiple of Q fits between.
            (&self.p + sqrt_floor + BigInt::one()).div_floor(&self.q)
        }
    }

    pub fn floor(&self) -> BigInt {
        self.floor_with(&self.d.sqrt())
    }

    /// `1/(α − a)` for `a = ⌊α⌋`, together with `a`.
    pub fn step_with(&self, sqrt_floor: &BigInt) -> (BigInt, QuadIrr) {
        let a = self.floor_with(sqrt_floor);
        let p = &a * &self.q - &self.p;
        let q = (&self.d - &p * &p) / &self.q;
        (a, QuadIrr { d: self.d.clone(), p, q })
    }

    /// Reduced: `α > 1` and `−1 < ᾱ < 0`.
    pub fn is_reduced(&self) -> bool {
        let one = Surd::integer(&self.d, 1);
        let zero = Surd::integer(&self.d, 0);
        let conj = self.conj_surd();
        self.to_surd() > one && conj < zero && conj > one.neg()
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// Free-function form of [`QuadIrr::is_reduced`].
pub fn is_reduced(q: &QuadIrr) -> bool {
    q.is_reduced()
}

/// The state of `α_0 = ω_d`.
pub fn omega_state(ctx: &FieldContext) -> QuadIrr {
    match ctx.kind() {
        BasisKind::Whole => QuadIrr { d: ctx.d().clone(), p: BigInt::zero(), q: BigInt::one() },
        BasisKind::Half => QuadIrr { d: ctx.d().clone(), p: BigInt::one(), q: BigInt::from(2) },
    }
}

/// `ξ_n = conj(p_n − q_n ω_d)` in the basis `{1, ω_d}`.
pub fn xi_from_convergent(ctx: &FieldContext, p: &BigInt, q: &BigInt) -> QuadInt {
    match ctx.kind() {
        BasisKind::Whole => ctx.element(p.clone(), q.clone()),
        BasisKind::Half => ctx.element(p - q, q.clone()),
    }
}

/// Convergents `(p_n, q_n)` of a continued fraction given by its partial quotients.
#[derive(Debug, Clone)]
pub struct Convergents<I> {
    quotients: I,
    prev: (BigInt, BigInt),
    prev2: (BigInt, BigInt),
}

impl<I: Iterator<Item = BigInt>> Convergents<I> {
    pub fn new(quotients: I) -> Self {
        Convergents {
            quotients,
            prev: (BigInt::one(), BigInt::zero()),
            prev2: (BigInt::zero(), BigInt::one()),
        }
    }
}

impl<I: Iterator<Item = BigInt>> Iterator for Convergents<I> {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<(BigInt, BigInt)> {
        let a = self.quotients.next()?;
        let p = &a * &self.prev.0 + &self.prev2.0;
        let q = &a * &self.prev.1 + &self.prev2.1;
        self.prev2 = std::mem::replace(&mut self.prev, (p.clone(), q.clone()));
        Some((p, q))
    }
}

/// Full expansion `ω_d = [a_0; (a_1, …, a_l)]`.
#[derive(Debug, Clone)]
pub struct CFExpansion {
    ctx: FieldContext,
    pub a0: BigInt,
    pub periodic: Vec<BigInt>,
    /// States of `α_0, α_1, …, α_l`; `α_{l+1} = α_1`.
    pub states: Vec<QuadIrr>,
}

impl CFExpansion {
    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn period(&self) -> usize {
        self.periodic.len()
    }

    /// `a_n` for any `n >= 0`.
    pub fn partial_quotient(&self, n: usize) -> &BigInt {
        if n == 0 {
            &self.a0
        } else {
            &self.periodic[(n - 1) % self.period()]
        }
    }

    /// `α_{n+1}`, the tail after `a_n`.
    pub fn total_quotient(&self, n: usize) -> &QuadIrr {
        &self.states[1 + n % self.period()]
    }

    pub fn quotients(&self) -> impl Iterator<Item = BigInt> + '_ {
        (0..).map(move |n| self.partial_quotient(n).clone())
    }

    pub fn convergents(&self) -> Convergents<impl Iterator<Item = BigInt> + '_> {
        Convergents::new(self.quotients())
    }

    /// `(p_n, q_n)` for `n < count`.
    pub fn convergent_list(&self, count: usize) -> Vec<(BigInt, BigInt)> {
        self.convergents().take(count).collect()
    }

    pub fn xis(&self) -> impl Iterator<Item = QuadInt> + '_ {
        self.convergents().map(move |(p, q)| xi_from_convergent(&self.ctx, &p, &q))
    }

    /// `ν_n = |N(ξ_n)|`.
    pub fn nus(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.xis().map(|x| x.norm().abs())
    }

    /// `ε_d = ξ_{l−1}`.
    pub fn fundamental_unit(&self) -> QuadInt {
        self.xis().nth(self.period() - 1).expect("infinite stream")
    }
}

/// Expands `ω_d` until the state of `α_1` recurs.
pub fn expand_omega(ctx: &FieldContext) -> CFExpansion {
    let s = ctx.sqrt_floor();
    let alpha0 = omega_state(ctx);
    let (a0, alpha1) = alpha0.step_with(s);
    let mut states = vec![alpha0, alpha1.clone()];
    let mut periodic = Vec::new();
    let mut cur = alpha1.clone();
    loop {
        let (a, next) = cur.step_with(s);
        periodic.push(a);
        if next == alpha1 {
            break;
        }
        states.push(next.clone());
        cur = next;
    }
    CFExpansion { ctx: ctx.clone(), a0, periodic, states }
}

pub fn period_length(ctx: &FieldContext) -> usize {
    expand_omega(ctx).period()
}

/// `ε_d` together with the period length, without storing the states.
pub fn fundamental_unit_with_period(ctx: &FieldContext) -> (QuadInt, usize) {
    let s = ctx.sqrt_floor();
    let (a0, alpha1) = omega_state(ctx).step_with(s);
    let mut prev = (a0.clone(), BigInt::one());
    let mut prev2 = (BigInt::one(), BigInt::zero());
    let mut cur = alpha1.clone();
    let mut l = 0usize;
    loop {
        l += 1;
        let (a, next) = cur.step_with(s);
        if next == alpha1 {
            // a_l closes the period; ξ_{l−1} is the previous convergent.
            return (xi_from_convergent(ctx, &prev.0, &prev.1), l);
        }
        let p = &a * &prev.0 + &prev2.0;
        let q = &a * &prev.1 + &prev2.1;
        prev2 = std::mem::replace(&mut prev, (p, q));
        cur = next;
    }
}

pub fn fundamental_unit(ctx: &FieldContext) -> QuadInt {
    fundamental_unit_with_period(ctx).0
}

/// Compares `x` with `ε_d`, stopping as soon as some `ξ_n` (which never
/// decrease along the expansion) exceeds `x`.
pub fn compare_with_unit(ctx: &FieldContext, x: &Surd) -> Ordering {
    let s = ctx.sqrt_floor();
    let (a0, alpha1) = omega_state(ctx).step_with(s);
    let mut prev = (a0, BigInt::one());
    let mut prev2 = (BigInt::one(), BigInt::zero());
    let mut cur = alpha1.clone();
    loop {
        let xi = xi_from_convergent(ctx, &prev.0, &prev.1).to_surd();
        let (a, next) = cur.step_with(s);
        if next == alpha1 {
            return x.cmp(&xi);
        }
        if xi > *x {
            return Ordering::Less;
        }
        let p = &a * &prev.0 + &prev2.0;
        let q = &a * &prev.1 + &prev2.1;
        prev2 = std::mem::replace(&mut prev, (p, q));
        cur = next;
    }
}

/// Exact `∏_{i=1}^{l} α_i`.
pub fn prod_alpha(exp: &CFExpansion) -> Surd {
    let d = exp.ctx().d();
    exp.states[1..]
        .iter()
        .fold(Surd::integer(d, 1), |acc, st| acc.mul(&st.to_surd()))
}

/// Outcome of the quotient/norm estimate at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientNormCheck {
    pub n: usize,
    pub nu: BigInt,
    pub q: BigInt,
    /// Exact `α_{n+1} − √D/ν_n + q_{n−1}/q_n` (absent at `n = 0`).
    pub delta: Option<Surd>,
    /// Dyadic enclosure `[lo, hi]` of `δ_n`.
    pub enclosure: Option<(BigRational, BigRational)>,
    /// `|δ_n| < 4/(q_n²√D)`, decided exactly.
    pub delta_bound: Option<bool>,
    /// `α_{n+1} < √D/ν_n`, decided exactly.
    pub alpha_bound: bool,
}

impl QuotientNormCheck {
    pub fn passes(&self) -> bool {
        self.alpha_bound && self.delta_bound.unwrap_or(true)
    }
}

/// `√D` as a surd over `d`.
fn sqrt_disc(ctx: &FieldContext) -> Surd {
    let c = match ctx.kind() {
        BasisKind::Half => 1,
        BasisKind::Whole => 2,
    };
    Surd::new(ctx.d().clone(), BigInt::zero(), BigInt::from(c), BigInt::one())
}

/// Dyadic enclosure of a surd with `bits` fractional bits.
pub fn enclose(s: &Surd, bits: u64) -> (BigRational, BigRational) {
    // fixed_point is within one unit of the true scaled numerator
    let approx = s.fixed_point(bits);
    let denom = &s.w << bits;
    let lo = BigRational::new(approx.clone() - 2, denom.clone());
    let hi = BigRational::new(approx + 2, denom);
    (lo, hi)
}

/// Checks the quotient/norm estimate at index `n` with a `bits`-bit enclosure.
pub fn quotient_norm_residual(exp: &CFExpansion, n: usize, bits: u64) -> QuotientNormCheck {
    let ctx = exp.ctx();
    let d = ctx.d();
    let conv = exp.convergent_list(n + 1);
    let (p_n, q_n) = conv[n].clone();
    let nu = xi_from_convergent(ctx, &p_n, &q_n).norm().abs();
    let alpha = exp.total_quotient(n).to_surd();
    let root_d = sqrt_disc(ctx);
    let ratio = Surd::new(d.clone(), BigInt::zero(), root_d.v.clone(), nu.clone());
    let alpha_bound = alpha < ratio;
    if n == 0 {
        return QuotientNormCheck {
            n,
            nu,
            q: q_n,
            delta: None,
            enclosure: None,
            delta_bound: None,
            alpha_bound,
        };
    }
    let q_prev = conv[n - 1].1.clone();
    let delta = alpha
        .sub(&ratio)
        .add(&Surd::new(d.clone(), q_prev, BigInt::zero(), q_n.clone()));
    // |δ| < 4/(q²√D)  ⇔  |δ·√D| < 4/q²
    let scaled = delta.mul(&root_d);
    let limit = Surd::new(d.clone(), BigInt::from(4), BigInt::zero(), &q_n * &q_n);
    let delta_bound = scaled < limit && scaled > limit.neg();
    let enclosure = enclose(&delta, bits);
    QuotientNormCheck {
        n,
        nu,
        q: q_n,
        delta: Some(delta),
        enclosure: Some(enclosure),
        delta_bound: Some(delta_bound),
        alpha_bound,
    }
}

/// Runs [`quotient_norm_residual`] on `n = 0, …, 2l − 1` sharing one convergent walk.
pub fn quotient_norm_sweep(exp: &CFExpansion, bits: u64) -> Vec<QuotientNormCheck> {
    let l = exp.period();
    let ctx = exp.ctx();
    let d = ctx.d();
    let root_d = sqrt_disc(ctx);
    let conv = exp.convergent_list(2 * l);
    (0..2 * l)
        .map(|n| {
            let (p_n, q_n) = &conv[n];
            let nu = xi_from_convergent(ctx, p_n, q_n).norm().abs();
            let alpha = exp.total_quotient(n).to_surd();
            let ratio = Surd::new(d.clone(), BigInt::zero(), root_d.v.clone(), nu.clone());
            let alpha_bound = alpha < ratio;
            if n == 0 {
                return QuotientNormCheck {
                    n,
                    nu,
                    q: q_n.clone(),
                    delta: None,
                    enclosure: None,
                    delta_bound: None,
                    alpha_bound,
                };
            }
            let delta = alpha
                .sub(&ratio)
                .add(&Surd::new(d.clone(), conv[n - 1].1.clone(), BigInt::zero(), q_n.clone()));
            let scaled = delta.mul(&root_d);
            let limit = Surd::new(d.clone(), BigInt::from(4), BigInt::zero(), q_n * q_n);
            let delta_bound = scaled < limit && scaled > limit.neg();
            QuotientNormCheck {
                n,
                nu,
                q: q_n.clone(),
                enclosure: Some(enclose(&delta, bits)),
                delta: Some(delta),
                delta_bound: Some(delta_bound),
                alpha_bound,
            }
        })
        .collect()
}

/// `log ε_d` as `Σ log α_i` over one period, in floating point.
pub fn log_unit_from_quotients(exp: &CFExpansion) -> f64 {
    exp.states[1..].iter().map(|st| st.to_surd().ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: i64) -> FieldContext {
        FieldContext::new(d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn irr(d: i64, p: i64, q: i64) -> QuadIrr {
        QuadIrr::new(BigInt::from(d), BigInt::from(p), BigInt::from(q)).unwrap()
    }

    #[test]
    fn small_expansions() {
        for (d, a0, per) in [(2, 1, vec![2]), (3, 1, vec![1, 2]), (5, 1, vec![1]), (13, 2, vec![3])] {
            let e = expand_omega(&ctx(d));
            assert_eq!(e.a0, BigInt::from(a0), "d = {d}");
            assert_eq!(e.periodic, ints(&per), "d = {d}");
        }
        assert_eq!(period_length(&ctx(71)), 8);
    }

    #[test]
    fn total_quotients() {
        assert_eq!(expand_omega(&ctx(2)).total_quotient(0), &irr(2, 1, 1));
        assert_eq!(expand_omega(&ctx(13)).total_quotient(0), &irr(13, 3, 2));
        assert_eq!(expand_omega(&ctx(3)).total_quotient(1), &irr(3, 1, 1));
    }

    #[test]
    fn units() {
        assert_eq!(fundamental_unit(&ctx(2)), ctx(2).element(1, 1));
        assert_eq!(fundamental_unit(&ctx(5)), ctx(5).element(0, 1));
        assert_eq!(fundamental_unit(&ctx(71)), ctx(71).element(3480, 413));
        let e = expand_omega(&ctx(94));
        assert_eq!(e.fundamental_unit(), ctx(94).element(2143295, 221064));
        assert_eq!(fundamental_unit_with_period(&ctx(94)), (e.fundamental_unit(), e.period()));
    }

    #[test]
    fn reducedness() {
        assert!(irr(2, 1, 1).is_reduced());
        assert!(!irr(2, 0, 1).is_reduced());
        assert!(irr(13, 3, 2).is_reduced());
        assert!(!irr(13, 3, -2).is_reduced());
    }

    #[test]
    fn floors_with_negative_denominators() {
        for d in [2i64, 3, 7, 13, 31] {
            let s = (d as f64).sqrt();
            for p in -12i64..12 {
                for q in -9i64..9 {
                    if q == 0 || (d - p * p) % q != 0 {
                        continue;
                    }
                    let exact = irr(d, p, q).floor();
                    assert_eq!(exact, BigInt::from(((p as f64 + s) / q as f64).floor() as i64));
                }
            }
        }
    }

    #[test]
    fn unit_comparison_exits_early_and_agrees() {
        let c = ctx(71);
        let eps = fundamental_unit(&c).to_surd();
        assert_eq!(compare_with_unit(&c, &c.element(59, 7).to_surd()), Ordering::Less);
        assert_eq!(compare_with_unit(&c, &eps), Ordering::Equal);
        assert_eq!(compare_with_unit(&c, &c.element(3481, 413).to_surd()), Ordering::Greater);
        let c2 = ctx(2);
        assert_eq!(compare_with_unit(&c2, &c2.element(10, 7).to_surd()), Ordering::Greater);
    }

    #[test]
    fn product_of_total_quotients_is_the_unit() {
        for d in [2i64, 3, 5, 13, 61, 71, 94] {
            let e = expand_omega(&ctx(d));
            assert_eq!(prod_alpha(&e), e.fundamental_unit().to_surd(), "d = {d}");
        }
    }

    #[test]
    fn quotient_norm_examples() {
        assert_eq!(quotient_norm_residual(&expand_omega(&ctx(3)), 1, 256).delta_bound, Some(true));
        assert_eq!(quotient_norm_residual(&expand_omega(&ctx(13)), 1, 256).delta_bound, Some(true));
        let zero = quotient_norm_residual(&expand_omega(&ctx(2)), 0, 256);
        assert!(zero.alpha_bound);
        assert_eq!(zero.nu, BigInt::from(1));
        let e = expand_omega(&ctx(71));
        for check in quotient_norm_sweep(&e, 256) {
            assert!(check.passes(), "n = {}", check.n);
            if let (Some(delta), Some((lo, hi))) = (&check.delta, &check.enclosure) {
                let dl = Surd::rational(&delta.d, lo);
                let dh = Surd::rational(&delta.d, hi);
                assert!(&dl < delta && delta < &dh);
            }
        }
    }

    #[test]
    fn log_from_quotients() {
        let e = expand_omega(&ctx(94));
        assert!((log_unit_from_quotients(&e) - e.fundamental_unit().ln()).abs() < 1e-9);
    }
}
