//! Real quadratic fields `ℚ(√d)` and exact arithmetic on their integers
//! `a + b·ω_d`, where `ω_d = (1+√d)/2` for `d ≡ 1 (mod 4)` and `√d` otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// `d ≡ 1 (mod 4)`, `ω_d = (1+√d)/2`.
    Half,
    /// `d ≡ 2, 3 (mod 4)`, `ω_d = √d`.
    Whole,
}

#[derive(Debug)]
struct FieldInner {
    d: BigInt,
    disc: BigInt,
    kind: BasisKind,
    sqrt_floor: BigInt,
}

/// A real quadratic field given by its square-free radicand.
#[derive(Debug, Clone)]
pub struct FieldContext(Arc<FieldInner>);

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.d == other.0.d
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// Validates that `d >= 2` is square-free.
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d < BigInt::from(2) {
            return Err(Error::BadRadicand(d));
        }
        if !arith::is_squarefree(&d)? {
            return Err(Error::BadRadicand(d));
        }
        Ok(Self::new_unchecked(d))
    }

    /// Builds a context without the square-free check. The caller guarantees
    /// that `d >= 2` is square-free (for example a sieved kernel).
    pub fn new_unchecked(d: impl Into<BigInt>) -> Self {
        let d = d.into();
        let kind = if d.mod_floor(&BigInt::from(4)).is_one() {
            BasisKind::Half
        } else {
            BasisKind::Whole
        };
        let disc = match kind {
            BasisKind::Half => d.clone(),
            BasisKind::Whole => &d * 4,
        };
        let sqrt_floor = d.sqrt();
        FieldContext(Arc::new(FieldInner {
            d,
            disc,
            kind,
            sqrt_floor,
        }))
    }

    pub fn d(&self) -> &BigInt {
        &self.0.d
    }

    /// Field discriminant `D`.
    pub fn disc(&self) -> &BigInt {
        &self.0.disc
    }

    pub fn kind(&self) -> BasisKind {
        self.0.kind
    }

    /// `⌊√d⌋`.
    pub fn sqrt_floor(&self) -> &BigInt {
        &self.0.sqrt_floor
    }

    /// `Tr(ω_d)`.
    pub fn omega_trace(&self) -> BigInt {
        match self.kind() {
            BasisKind::Half => BigInt::one(),
            BasisKind::Whole => BigInt::zero(),
        }
    }

    /// `N(ω_d)`.
    pub fn omega_norm(&self) -> BigInt {
        match self.kind() {
            BasisKind::Half => (BigInt::one() - self.d()) / 4,
            BasisKind::Whole => -self.d(),
        }
    }

    /// `⌊ω_d⌋`.
    pub fn omega_floor(&self) -> BigInt {
        match self.kind() {
            BasisKind::Half => (self.sqrt_floor() + 1) / 2,
            BasisKind::Whole => self.sqrt_floor().clone(),
        }
    }

    /// `ω_d` as a surd.
    pub fn omega(&self) -> Surd {
        self.element(BigInt::zero(), BigInt::one()).to_surd()
    }

    pub fn element(&self, a: impl Into<BigInt>, b: impl Into<BigInt>) -> QuadInt {
        QuadInt {
            ctx: self.clone(),
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn one(&self) -> QuadInt {
        self.element(1, 0)
    }

    /// The element `(u + v√d)/w` if it lies in the ring of integers.
    pub fn element_from_surd(&self, s: &Surd) -> Option<QuadInt> {
        if s.d != *self.d() && !s.v.is_zero() {
            return None;
        }
        match self.kind() {
            BasisKind::Whole => {
                let (a, ra) = s.u.div_rem(&s.w);
                let (b, rb) = s.v.div_rem(&s.w);
                (ra.is_zero() && rb.is_zero()).then(|| self.element(a, b))
            }
            BasisKind::Half => {
                // (u + v√d)/w = a + b(1+√d)/2  ⇔  b = 2v/w, a = (u - v)/w.
                let (b, rb) = (&s.v * BigInt::from(2)).div_rem(&s.w);
                let (a, ra) = (&s.u - &s.v).div_rem(&s.w);
                (ra.is_zero() && rb.is_zero()).then(|| self.element(a, b))
            }
        }
    }
}

/// Sign of `u + v·√d` for `d > 0` non-square, decided with integers only.
pub fn surd_sign(u: &BigInt, v: &BigInt, d: &BigInt) -> Ordering {
    let su = u.sign();
    let sv = v.sign();
    use num_bigint::Sign::*;
    match (su, sv) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
        (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
        (Plus, Minus) => (u * u).cmp(&(v * v * d)),
        (Minus, Plus) => (v * v * d).cmp(&(u * u)),
    }
}

/// Exact element `(u + v√d)/w` of `ℚ(√d)` with `w > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    pub d: BigInt,
    pub u: BigInt,
    pub v: BigInt,
    pub w: BigInt,
}

impl Surd {
    pub fn new(d: BigInt, u: BigInt, v: BigInt, w: BigInt) -> Self {
        assert!(!w.is_zero(), "surd with zero denominator");
        let mut s = Surd { d, u, v, w };
        s.normalize();
        s
    }

    pub fn rational(d: &BigInt, value: &BigRational) -> Self {
        Surd::new(d.clone(), value.numer().clone(), BigInt::zero(), value.denom().clone())
    }

    pub fn integer(d: &BigInt, n: impl Into<BigInt>) -> Self {
        Surd::new(d.clone(), n.into(), BigInt::zero(), BigInt::one())
    }

    fn normalize(&mut self) {
        if self.w.is_negative() {
            self.w = -&self.w;
            self.u = -&self.u;
            self.v = -&self.v;
        }
        let g = self.u.gcd(&self.v).gcd(&self.w);
        if !g.is_zero() && !g.is_one() {
            self.u /= &g;
            self.v /= &g;
            self.w /= &g;
        }
    }

    fn check(&self, other: &Surd) {
        assert!(
            self.d == other.d || self.v.is_zero() || other.v.is_zero(),
            "surds from different fields"
        );
    }

    fn radicand(&self, other: &Surd) -> BigInt {
        if self.v.is_zero() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    pub fn add(&self, other: &Surd) -> Surd {
        self.check(other);
        Surd::new(
            self.radicand(other),
            &self.u * &other.w + &other.u * &self.w,
            &self.v * &other.w + &other.v * &self.w,
            &self.w * &other.w,
        )
    }

    pub fn neg(&self) -> Surd {
        Surd::new(self.d.clone(), -&self.u, -&self.v, self.w.clone())
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        self.check(other);
        let d = self.radicand(other);
        Surd::new(
            d.clone(),
            &self.u * &other.u + &self.v * &other.v * &d,
            &self.u * &other.v + &self.v * &other.u,
            &self.w * &other.w,
        )
    }

    pub fn conj(&self) -> Surd {
        Surd::new(self.d.clone(), self.u.clone(), -&self.v, self.w.clone())
    }

    /// Field norm as a rational.
    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.u * &self.u - &self.v * &self.v * &self.d, &self.w * &self.w)
    }

    pub fn recip(&self) -> Option<Surd> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Surd::new(
            self.d.clone(),
            &c.u * n.denom(),
            &c.v * n.denom(),
            &c.w * n.numer(),
        ))
    }

    pub fn div(&self, other: &Surd) -> Option<Surd> {
        other.recip().map(|r| self.mul(&r))
    }

    pub fn signum(&self) -> Ordering {
        surd_sign(&self.u, &self.v, &self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// Natural logarithm of a value `>= 1`, from a 128-bit-accurate fixed-point
    /// integer image of the surd.
    pub fn ln(&self) -> f64 {
        let shift = 128 + self.w.bits();
        let scaled = self.fixed_point(shift);
        ln_bigint(&scaled) - ln_bigint(&self.w) - shift as f64 * std::f64::consts::LN_2
    }

    /// `⌊(u + v√d)·2^shift⌋` up to one unit.
    pub fn fixed_point(&self, shift: u64) -> BigInt {
        let u = &self.u << shift;
        let v2 = &self.v * &self.v * &self.d;
        let root = (v2 << (2 * shift)).sqrt();
        if self.v.is_negative() {
            u - root
        } else {
            u + root
        }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = 80u64;
        let num = self.fixed_point(shift);
        let den = &self.w << shift;
        ratio_to_f64(&num, &den)
    }

    /// Decimal rendering with `digits` fractional digits (truncated toward -∞).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        // floor((u + v√d)·10^k / w) using an exact floor of v·10^k·√d.
        let vs = &self.v * &scale;
        let mut root = (&vs * &vs * &self.d).sqrt();
        if vs.is_negative() {
            if &root * &root != &vs * &vs * &self.d {
                root += 1;
            }
            root = -root;
        }
        let num = &self.u * &scale + root;
        let q = num.div_floor(&self.w);
        let sign = if q.is_negative() { "-" } else { "" };
        let (int, frac) = q.abs().div_rem(&scale);
        if digits == 0 {
            return format!("{sign}{int}");
        }
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

pub(crate) fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let sign = if num.is_negative() { -1.0 } else { 1.0 };
    let ln = ln_bigint(&num.abs()) - ln_bigint(den);
    sign * ln.exp()
}

/// `a + b·ω_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    ctx: FieldContext,
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    fn same_field(&self, other: &QuadInt) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedFields(self.ctx.d().clone(), other.ctx.d().clone()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &QuadInt) -> QuadInt {
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        let bb = b1 * b2;
        let cross = a1 * b2 + a2 * b1;
        let (a, b) = match self.ctx.kind() {
            // ω² = d
            BasisKind::Whole => (a1 * a2 + &bb * self.ctx.d(), cross),
            // ω² = ω + (d-1)/4
            BasisKind::Half => {
                let r = (self.ctx.d() - 1) / 4;
                (a1 * a2 + &bb * r, cross + bb)
            }
        };
        self.ctx.element(a, b)
    }

    pub fn add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(self.ctx.element(&self.a + &other.a, &self.b + &other.b))
    }

    pub fn neg(&self) -> QuadInt {
        self.ctx.element(-&self.a, -&self.b)
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        self.ctx.element(&self.a * k, &self.b * k)
    }

    pub fn pow(&self, mut e: u32) -> QuadInt {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self) -> QuadInt {
        match self.ctx.kind() {
            BasisKind::Whole => self.ctx.element(self.a.clone(), -&self.b),
            // conj(ω) = 1 - ω
            BasisKind::Half => self.ctx.element(&self.a + &self.b, -&self.b),
        }
    }

    pub fn norm(&self) -> BigInt {
        match self.ctx.kind() {
            BasisKind::Whole => &self.a * &self.a - &self.b * &self.b * self.ctx.d(),
            BasisKind::Half => {
                let r = (self.ctx.d() - 1) / 4;
                &self.a * &self.a + &self.a * &self.b - &self.b * &self.b * r
            }
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.a * 2 + &self.b * self.ctx.omega_trace()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Inverse of a unit: `N(ε)·conj(ε)`.
    pub fn unit_inverse(&self) -> Result<QuadInt> {
        let n = self.norm();
        if !n.abs().is_one() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(self.conj().scale(&n))
    }

    pub fn to_surd(&self) -> Surd {
        let d = self.ctx.d().clone();
        match self.ctx.kind() {
            BasisKind::Whole => Surd::new(d, self.a.clone(), self.b.clone(), BigInt::one()),
            BasisKind::Half => Surd::new(d, &self.a * 2 + &self.b, self.b.clone(), BigInt::from(2)),
        }
    }

    pub fn cmp_value(&self, other: &QuadInt) -> Result<Ordering> {
        self.same_field(other)?;
        Ok(self.to_surd().cmp(&other.to_surd()))
    }

    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        self.to_surd().cmp(&Surd::rational(self.ctx.d(), q))
    }

    pub fn cmp_integer(&self, n: i64) -> Ordering {
        self.to_surd().cmp(&Surd::integer(self.ctx.d(), n))
    }

    pub fn ln(&self) -> f64 {
        self.to_surd().ln()
    }

    pub fn to_f64(&self) -> f64 {
        self.to_surd().to_f64()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*w[{}]", self.a, -&self.b, self.ctx.d())
        } else {
            write!(f, "{}+{}*w[{}]", self.a, self.b, self.ctx.d())
        }
    }
}

impl FromStr for QuadInt {
    type Err = Error;

    /// Parses the canonical text form `a+b*w[d]` (also `a-b*w[d]`).
    fn from_str(s: &str) -> Result<QuadInt> {
        let bad = || Error::Parse(s.to_string());
        let s_trim: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = s_trim.find("*w[").ok_or_else(bad)?;
        let close = s_trim.strip_suffix(']').ok_or_else(bad)?.len();
        let d: BigInt = s_trim[open + 3..close].parse().map_err(|_| bad())?;
        let head = &s_trim[..open];
        // split at the last sign that is not a leading sign
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(head.as_bytes()[i - 1], b'+' | b'-'))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a: BigInt = head[..split].parse().map_err(|_| bad())?;
        let b_str = &head[split..];
        let b: BigInt = b_str
            .strip_prefix('+')
            .unwrap_or(b_str)
            .parse()
            .map_err(|_| bad())?;
        let ctx = FieldContext::new(d)?;
        Ok(ctx.element(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraOp {
    Mul,
    Conj,
    Norm,
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraValue {
    Element(QuadInt),
    Integer(BigInt),
}

/// Dispatches the four basic operations; `y` is only read by `Mul`.
pub fn qi_algebra(x: &QuadInt, y: &QuadInt, op: AlgebraOp) -> Result<AlgebraValue> {
    Ok(match op {
        AlgebraOp::Mul => AlgebraValue::Element(x.mul(y)?),
        AlgebraOp::Conj => AlgebraValue::Element(x.conj()),
        AlgebraOp::Norm => AlgebraValue::Integer(x.norm()),
        AlgebraOp::Trace => AlgebraValue::Integer(x.trace()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    Rational(BigRational),
    Element(QuadInt),
}

/// Exact ordering of `x` against `bound`.
pub fn qi_compare(x: &QuadInt, bound: &Bound) -> Result<Ordering> {
    match bound {
        Bound::Rational(q) => Ok(x.cmp_rational(q)),
        Bound::Element(y) => x.cmp_value(y),
    }
}

/// True iff `x` is the least associate of itself exceeding 1, i.e.
/// `x·eps⁻¹ <= 1 < x`.
pub fn is_minimal(x: &QuadInt, eps: &QuadInt) -> Result<bool> {
    x.same_field(eps)?;
    let inv = eps.unit_inverse()?;
    if x.is_rational() || x.cmp_integer(1) != Ordering::Greater {
        return Ok(false);
    }
    Ok(x.mul_unchecked(&inv).cmp_integer(1) != Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(d: i64) -> FieldContext {
        FieldContext::new(d).unwrap()
    }

    #[test]
    fn context_validation() {
        assert!(FieldContext::new(12).is_err());
        assert!(FieldContext::new(1).is_err());
        let c5 = ctx(5);
        assert_eq!(c5.kind(), BasisKind::Half);
        assert_eq!(c5.disc(), &BigInt::from(5));
        let c7 = ctx(7);
        assert_eq!(c7.kind(), BasisKind::Whole);
        assert_eq!(c7.disc(), &BigInt::from(28));
        assert_eq!(ctx(13).omega_floor(), BigInt::from(2));
        assert_eq!(ctx(17).omega_floor(), BigInt::from(2));
        assert_eq!(ctx(21).omega_floor(), BigInt::from(2));
    }

    #[test]
    fn algebra_examples() {
        let c2 = ctx(2);
        let x = c2.element(10, 7);
        assert_eq!(qi_algebra(&x, &x, AlgebraOp::Norm).unwrap(), AlgebraValue::Integer(BigInt::from(2)));
        let w5 = ctx(5).element(0, 1);
        assert_eq!(w5.norm(), BigInt::from(-1));
        let c13 = ctx(13);
        assert_eq!(c13.element(1, 1).trace(), BigInt::from(3));
        let e = c13.element(1, 1);
        assert_eq!(e.conj().conj(), e);
        assert!(matches!(x.mul(&w5), Err(Error::MixedFields(_, _))));
    }

    #[test]
    fn compare_examples() {
        let c2 = ctx(2);
        let eps2 = c2.element(1, 1);
        assert_eq!(qi_compare(&c2.element(2, 1), &Bound::Element(eps2)).unwrap(), Ordering::Greater);
        let c71 = ctx(71);
        let cmp = qi_compare(&c71.element(59, 7), &Bound::Element(c71.element(3480, 413))).unwrap();
        assert_eq!(cmp, Ordering::Less);
        let one = BigRational::from_integer(BigInt::one());
        assert_eq!(qi_compare(&ctx(5).element(0, 1), &Bound::Rational(one)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn minimality_examples() {
        let c2 = ctx(2);
        let eps2 = c2.element(1, 1);
        assert!(is_minimal(&c2.element(0, 1), &eps2).unwrap());
        assert!(!is_minimal(&c2.element(2, 1), &eps2).unwrap());
        let c17 = ctx(17);
        // (5+√17)/2 = 2 + ω, ε = 4 + √17 = 3 + 2ω
        assert!(is_minimal(&c17.element(2, 1), &c17.element(3, 2)).unwrap());
        assert!(is_minimal(&eps2, &eps2).unwrap());
        assert!(matches!(is_minimal(&eps2, &c2.element(2, 1)), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn text_form_round_trip() {
        let x: QuadInt = "3480+413*w[71]".parse().unwrap();
        assert_eq!((x.a.clone(), x.b.clone()), (BigInt::from(3480), BigInt::from(413)));
        assert_eq!(x.to_string(), "3480+413*w[71]");
        let y: QuadInt = "-1-2*w[5]".parse().unwrap();
        assert_eq!(y.to_string(), "-1-2*w[5]");
        let z: QuadInt = "4+-3*w[13]".parse().unwrap();
        assert_eq!(z.b, BigInt::from(-3));
        assert!("4+3*w[12]".parse::<QuadInt>().is_err());
        assert!("garbage".parse::<QuadInt>().is_err());
    }

    #[test]
    fn logs_and_decimals() {
        let eps2 = ctx(2).element(1, 1);
        assert!((eps2.ln() - (1.0f64 + 2f64.sqrt()).ln()).abs() < 1e-14);
        assert_eq!(eps2.to_surd().to_decimal(10), "2.4142135623");
        assert_eq!(ctx(2).element(1, -1).to_surd().to_decimal(4), "-0.4143");
        let huge = ctx(94).element(2143295, 221064);
        let float = (2143295.0 + 221064.0 * 94f64.sqrt()).ln();
        assert!((huge.ln() - float).abs() < 1e-12);
    }

    const SQUAREFREE: [i64; 16] = [2, 3, 5, 6, 7, 10, 13, 17, 21, 29, 33, 41, 61, 71, 94, 97];

    proptest! {
        #[test]
        fn norm_is_multiplicative(i in 0usize..16, a1 in -500i64..500, b1 in -500i64..500, a2 in -500i64..500, b2 in -500i64..500) {
            let c = ctx(SQUAREFREE[i]);
            let x = c.element(a1, b1);
            let y = c.element(a2, b2);
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
            let xs = x.to_surd();
            prop_assert_eq!(xs.mul(&y.to_surd()), x.mul(&y).unwrap().to_surd());
            prop_assert_eq!(BigRational::from_integer(x.norm()), xs.norm());
        }

        #[test]
        fn compare_agrees_with_float(i in 0usize..16, a1 in -10_000i64..10_000, b1 in -100i64..100, num in -100_000i64..100_000, den in 1i64..100) {
            let c = ctx(SQUAREFREE[i]);
            let x = c.element(a1, b1);
            let q = BigRational::new(BigInt::from(num), BigInt::from(den));
            let exact = x.cmp_rational(&q);
            let approx = x.to_f64() - num as f64 / den as f64;
            if approx.abs() > 1e-6 {
                prop_assert_eq!(exact, approx.partial_cmp(&0.0).unwrap());
            }
        }
    }
}
