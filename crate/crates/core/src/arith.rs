//! Exact integer utilities: integer square roots, square-free kernels,
//! modular inverses, Jacobi symbols and budgeted factorization.
//!
//! Factorization is trial division by primes up to a configurable bound
//! followed by a deterministic Miller-Rabin test on the cofactor. A cofactor
//! that cannot be certified prime is reported as [`Error::Unfactored`].

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};

/// Default trial-division bound.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Environment variable overriding the trial-division bound of the global factorizer.
pub const FACTOR_BUDGET_ENV: &str = "QUADUNIT_FACTOR_BUDGET";

// Miller-Rabin with the first 13 prime bases is deterministic below this value.
const MR_DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative(n.clone()));
    }
    Ok(n.sqrt())
}

/// Returns `Some(r)` when `n = r²`.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn is_square(n: &BigInt) -> bool {
    exact_sqrt(n).is_some()
}

/// Prime factorization `n = ∏ p^e`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn from_pairs(mut factors: Vec<(BigInt, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn product(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Splits into `(kernel, cofactor)` with `n = kernel · cofactor²`.
    pub fn kernel_split(&self) -> (BigInt, BigInt) {
        let mut kernel = BigInt::one();
        let mut cofactor = BigInt::one();
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                kernel *= p;
            }
            for _ in 0..e / 2 {
                cofactor *= p;
            }
        }
        (kernel, cofactor)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial-division factorizer with a fixed prime table.
#[derive(Debug, Clone)]
pub struct Factorizer {
    bound: u64,
    primes: Vec<u64>,
}

static GLOBAL: OnceCell<Factorizer> = OnceCell::new();

impl Factorizer {
    pub fn new(bound: u64) -> Self {
        let bound = bound.max(2);
        Factorizer {
            bound,
            primes: primes_up_to(bound),
        }
    }

    /// Process-wide factorizer. The bound comes from `QUADUNIT_FACTOR_BUDGET`
    /// when set, else [`DEFAULT_FACTOR_BOUND`].
    pub fn global() -> &'static Factorizer {
        GLOBAL.get_or_init(|| {
            let bound = std::env::var(FACTOR_BUDGET_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<u64>().ok())
                .unwrap_or(DEFAULT_FACTOR_BOUND);
            Factorizer::new(bound)
        })
    }

    /// Installs the global factorizer; returns false if one was already in use.
    pub fn install_global(bound: u64) -> bool {
        GLOBAL.set(Factorizer::new(bound)).is_ok()
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn factorize(&self, n: &BigInt) -> Result<Factorization> {
        match n.sign() {
            Sign::NoSign => return Err(Error::Zero),
            Sign::Minus => return Err(Error::Negative(n.clone())),
            Sign::Plus => {}
        }
        if let Some(small) = n.to_u64() {
            return self.factorize_u64(small).map_err(|cofactor| Error::Unfactored {
                value: n.clone(),
                cofactor: BigInt::from(cofactor),
                bound: self.bound,
            });
        }
        let mut rest = n.magnitude().clone();
        let mut factors = Vec::new();
        for &p in &self.primes {
            if rest.is_one() {
                break;
            }
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((BigInt::from(p), e));
                if let Some(small) = rest.to_u64() {
                    let tail = self.factorize_u64(small).map_err(|cofactor| Error::Unfactored {
                        value: n.clone(),
                        cofactor: BigInt::from(cofactor),
                        bound: self.bound,
                    })?;
                    factors.extend(tail.factors);
                    return Ok(Factorization::from_pairs(factors));
                }
            }
        }
        if !rest.is_one() {
            let bound_sq = BigUint::from(self.bound) * BigUint::from(self.bound);
            let certified = rest <= bound_sq || is_prime_biguint(&rest) == Some(true);
            if !certified {
                return Err(Error::Unfactored {
                    value: n.clone(),
                    cofactor: BigInt::from(rest),
                    bound: self.bound,
                });
            }
            factors.push((BigInt::from(rest), 1));
        }
        Ok(Factorization::from_pairs(factors))
    }

    /// Fast path for values fitting in 64 bits; `Err` carries the uncertified cofactor.
    fn factorize_u64(&self, mut n: u64) -> std::result::Result<Factorization, u64> {
        let mut factors = Vec::new();
        for &p in &self.primes {
            if n == 1 || p.saturating_mul(p) > n {
                break;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                factors.push((BigInt::from(p), e));
            }
        }
        if n > 1 {
            let exhausted = (self.bound as u128) * (self.bound as u128) < n as u128;
            if exhausted && !is_prime_u64(n) {
                return Err(n);
            }
            factors.push((BigInt::from(n), 1));
        }
        Ok(Factorization::from_pairs(factors))
    }

    pub fn squarefree_kernel(&self, n: &BigInt) -> Result<(BigInt, BigInt)> {
        Ok(self.factorize(n)?.kernel_split())
    }

    pub fn is_squarefree(&self, n: &BigInt) -> Result<bool> {
        Ok(self.factorize(n)?.is_squarefree())
    }
}

pub fn factorize(n: &BigInt) -> Result<Factorization> {
    Factorizer::global().factorize(n)
}

/// `n = kernel · cofactor²` with `kernel` square-free.
pub fn squarefree_kernel(n: &BigInt) -> Result<(BigInt, BigInt)> {
    Factorizer::global().squarefree_kernel(n)
}

pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Factorizer::global().is_squarefree(n)
}

/// Number of distinct prime factors of `|n|`.
pub fn omega(n: &BigInt) -> Result<usize> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    Ok(factorize(&n.abs())?.omega())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModKind {
    Inverse,
    Jacobi,
}

pub fn mod_arith(a: &BigInt, m: &BigInt, kind: ModKind) -> Result<BigInt> {
    match kind {
        ModKind::Inverse => mod_inverse(a, m),
        ModKind::Jacobi => jacobi(a, m).map(BigInt::from),
    }
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!("modulus must be positive, got {m}")));
    }
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            a: a.clone(),
            m: m.clone(),
        });
    }
    Ok(ext.x.mod_floor(m))
}

/// Jacobi symbol (a/m) for odd positive `m`.
pub fn jacobi(a: &BigInt, m: &BigInt) -> Result<i32> {
    if !m.is_positive() || m.is_even() {
        return Err(Error::BadJacobiModulus(m.clone()));
    }
    let mut a = a.mod_floor(m);
    let mut n = m.clone();
    let mut sign = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let n8 = (&n % 8u32).to_u32().unwrap();
            if tz % 2 == 1 && (n8 == 3 || n8 == 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Jacobi symbol on machine words; `m` odd and positive.
pub fn jacobi_u64(a: u64, m: u64) -> i32 {
    debug_assert!(m % 2 == 1);
    let mut a = a % m;
    let mut n = m;
    let mut sign = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality for `n` below the 13-base Miller-Rabin limit;
/// `None` when `n` is too large to certify.
pub fn is_prime_biguint(n: &BigUint) -> Option<bool> {
    if let Some(small) = n.to_u64() {
        return Some(is_prime_u64(small));
    }
    match n.to_u128() {
        Some(v) if v < MR_DETERMINISTIC_LIMIT => {}
        _ => return None,
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return Some(false);
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return Some(false);
    }
    Some(true)
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(3481)).unwrap(), big(59));
        assert_eq!(isqrt(&big(71)).unwrap(), big(8));
        assert!(matches!(isqrt(&big(-4)), Err(Error::Negative(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(squarefree_kernel(&big(56)).unwrap(), (big(14), big(2)));
        assert_eq!(squarefree_kernel(&big(73)).unwrap(), (big(73), big(1)));
        assert_eq!(squarefree_kernel(&big(16)).unwrap(), (big(1), big(4)));
        assert_eq!(squarefree_kernel(&big(0)), Err(Error::Zero));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(mod_arith(&big(2), &big(7), ModKind::Inverse).unwrap(), big(4));
        assert_eq!(mod_arith(&big(2), &big(7), ModKind::Jacobi).unwrap(), big(1));
        assert_eq!(mod_arith(&big(2), &big(3), ModKind::Jacobi).unwrap(), big(-1));
        assert!(matches!(mod_inverse(&big(6), &big(9)), Err(Error::NotInvertible { .. })));
        assert!(matches!(jacobi(&big(3), &big(8)), Err(Error::BadJacobiModulus(_))));
        assert_eq!(mod_inverse(&big(-3), &big(7)).unwrap(), big(2));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&big(12)).unwrap();
        assert_eq!(f.factors(), &[(big(2), 2), (big(3), 1)]);
        assert!(factorize(&big(1)).unwrap().factors().is_empty());
        assert_eq!(factorize(&big(503)).unwrap().factors(), &[(big(503), 1)]);
    }

    #[test]
    fn small_budget_reports_unfactored() {
        let f = Factorizer::new(10);
        // 101 * 103 has no factor below 10 and is composite.
        let err = f.factorize(&big(101 * 103)).unwrap_err();
        assert!(matches!(err, Error::Unfactored { .. }));
        assert!(err.is_budget());
        // A prime cofactor is certified even above the bound.
        assert_eq!(f.factorize(&big(2 * 1_000_003)).unwrap().factors().len(), 2);
    }

    #[test]
    fn large_values_use_bigint_path() {
        // 999983 is the largest prime below the default bound.
        let p = BigInt::from(999_983u64);
        let n = &p * &p * BigInt::from(12u32) * BigInt::from(1_000_000_009u64);
        assert!(n > BigInt::from(u64::MAX));
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.kernel_split().0, BigInt::from(3u32) * BigInt::from(1_000_000_009u64));
        // two primes above the bound cannot be separated
        let q = BigInt::from(1_000_000_007u64);
        assert!(factorize(&(&q * &q * 12)).unwrap_err().is_budget());
    }

    #[test]
    fn tonelli_shanks_roots() {
        for &p in &[3u64, 5, 7, 13, 17, 41, 97, 65537, 1_000_003] {
            for a in 0..60u64 {
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(jacobi_u64(a, p), -1),
                }
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let primes: std::collections::HashSet<u64> = primes_up_to(20_000).into_iter().collect();
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), primes.contains(&n), "n = {n}");
        }
        // Strong pseudoprime to bases 2 and 3.
        assert!(!is_prime_u64(1_373_653));
        assert_eq!(is_prime_biguint(&BigUint::from(18_446_744_073_709_551_629u128)), Some(true));
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in 0u64..1_000_000_000) {
            let r = isqrt(&BigInt::from(n)).unwrap();
            let n = BigInt::from(n);
            prop_assert!(&r * &r <= n);
            let r1 = r + 1;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn kernel_reconstructs(n in 1u64..10_000_000) {
            let n = BigInt::from(n);
            let (k, c) = squarefree_kernel(&n).unwrap();
            prop_assert_eq!(&k * &c * &c, n);
            prop_assert!(factorize(&k).unwrap().is_squarefree());
        }

        #[test]
        fn inverse_is_inverse(a in -10_000i64..10_000, m in 2i64..10_000) {
            let (a, m) = (BigInt::from(a), BigInt::from(m));
            if a.gcd(&m).is_one() {
                let t = mod_inverse(&a, &m).unwrap();
                prop_assert!((&(&a * &t)).mod_floor(&m).is_one());
            }
        }

        #[test]
        fn jacobi_multiplicative(a in -5000i64..5000, b in -5000i64..5000, m in 0i64..5000) {
            let m = BigInt::from(2 * m + 1);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            let lhs = jacobi(&(&a * &b), &m).unwrap();
            prop_assert_eq!(lhs, jacobi(&a, &m).unwrap() * jacobi(&b, &m).unwrap());
        }
    }
}
