//! Sieve factorization of the values of an integer quadratic polynomial
//! over a run of consecutive arguments.
//!
//! For every prime `p <= sqrt(max |f(k)|)` the roots of `f` modulo `p` are
//! found (Tonelli-Shanks on the discriminant, or a direct scan for small
//! primes and primes dividing the leading coefficient), and `p` is divided
//! out of every value in those residue classes. What remains of each value
//! afterwards is 1 or a single prime, so the resulting kernels are exact.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::arith::{inverse_u64, jacobi_u64, mul_mod, primes_up_to, sqrt_mod_prime};
use crate::error::{Error, Result};

/// Largest prime table the sieve will build.
pub const MAX_SIEVE_PRIME: u64 = 200_000_000;

/// `a2·k² + a1·k + a0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticPoly {
    pub a2: i128,
    pub a1: i128,
    pub a0: i128,
}

impl QuadraticPoly {
    pub fn new(a2: i128, a1: i128, a0: i128) -> Self {
        QuadraticPoly { a2, a1, a0 }
    }

    pub fn from_bigints(a2: &BigInt, a1: &BigInt, a0: &BigInt) -> Result<Self> {
        let conv = |v: &BigInt| {
            v.to_i128()
                .ok_or_else(|| Error::BudgetExhausted(format!("coefficient {v} exceeds the sieve range")))
        };
        Ok(QuadraticPoly::new(conv(a2)?, conv(a1)?, conv(a0)?))
    }

    pub fn eval(&self, k: i128) -> Option<i128> {
        self.a2
            .checked_mul(k)?
            .checked_mul(k)?
            .checked_add(self.a1.checked_mul(k)?)?
            .checked_add(self.a0)
    }

    fn residue(v: i128, p: u64) -> u64 {
        v.rem_euclid(p as i128) as u64
    }

    /// Roots of the polynomial modulo the prime `p`, ascending.
    pub fn roots_mod_prime(&self, p: u64) -> Vec<u64> {
        let (c2, c1, c0) = (
            Self::residue(self.a2, p),
            Self::residue(self.a1, p),
            Self::residue(self.a0, p),
        );
        if p < 64 || c2 == 0 {
            return (0..p)
                .filter(|&k| (mul_mod(mul_mod(c2, k, p), k, p) + mul_mod(c1, k, p) + c0) % p == 0)
                .collect();
        }
        let disc = (mul_mod(c1, c1, p) + p - mul_mod(4 % p, mul_mod(c2, c0, p), p)) % p;
        if disc != 0 && jacobi_u64(disc, p) != 1 {
            return Vec::new();
        }
        let s = sqrt_mod_prime(disc, p).expect("residue has a root");
        let inv = inverse_u64(mul_mod(2, c2, p), p).expect("p does not divide 2·a2");
        let neg_b = (p - c1) % p;
        let r1 = mul_mod((neg_b + s) % p, inv, p);
        let r2 = mul_mod((neg_b + p - s) % p, inv, p);
        let mut roots = vec![r1];
        if r2 != r1 {
            roots.push(r2);
        }
        roots.sort_unstable();
        roots
    }
}

/// Factorization summary of one polynomial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueKernel {
    pub value: i128,
    /// Square-free part of `|value|`.
    pub kernel: u128,
    /// `|value| = kernel · cofactor²`.
    pub cofactor: u128,
}

impl ValueKernel {
    pub fn is_squarefree(&self) -> bool {
        self.cofactor == 1
    }
}

/// Kernels of `f(start), f(start+1), …, f(start+count-1)`; `None` where the value is 0.
pub fn value_kernels(poly: &QuadraticPoly, start: i128, count: usize) -> Result<Vec<Option<ValueKernel>>> {
    let mut values = Vec::with_capacity(count);
    let mut max_abs: u128 = 0;
    for i in 0..count {
        let k = start + i as i128;
        let v = poly
            .eval(k)
            .ok_or_else(|| Error::BudgetExhausted(format!("polynomial value at k = {k} overflows the sieve")))?;
        max_abs = max_abs.max(v.unsigned_abs());
        values.push(v);
    }
    let limit = isqrt_u128(max_abs);
    if limit > MAX_SIEVE_PRIME as u128 {
        return Err(Error::BudgetExhausted(format!(
            "sieve needs primes up to {limit}, above {MAX_SIEVE_PRIME}"
        )));
    }
    let mut rest: Vec<u128> = values.iter().map(|v| v.unsigned_abs()).collect();
    let mut kernel = vec![1u128; count];
    let mut cofactor = vec![1u128; count];
    for p in primes_up_to(limit as u64) {
        let p128 = p as u128;
        for r in poly.roots_mod_prime(p) {
            let offset = (r as i128 - start).rem_euclid(p as i128) as usize;
            let mut idx = offset;
            while idx < count {
                if rest[idx] != 0 {
                    let mut e = 0u32;
                    while rest[idx] % p128 == 0 {
                        rest[idx] /= p128;
                        e += 1;
                    }
                    if e % 2 == 1 {
                        kernel[idx] *= p128;
                    }
                    for _ in 0..e / 2 {
                        cofactor[idx] *= p128;
                    }
                }
                idx += p as usize;
            }
        }
    }
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, value)| {
            (value != 0).then(|| ValueKernel {
                value,
                kernel: kernel[i] * rest[i],
                cofactor: cofactor[i],
            })
        })
        .collect())
}

pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}
