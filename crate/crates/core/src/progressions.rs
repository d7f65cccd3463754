//! Quadratic progressions of radicands `d` whose ring of integers contains an
//! element `ny + x + y·√d` (`j = 0`) or `ny + x + y·ω_d` (`j = 1`) of norm `μ`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{self, is_prime_u64, jacobi, jacobi_u64, mod_inverse, primes_up_to};
use crate::contfrac::compare_with_unit;
use crate::error::{Error, Result};
use crate::quadfield::{FieldContext, Surd};
use crate::sieve::{value_kernels, QuadraticPoly};

/// `(y, x)` with `0 <= x < y`, `gcd(x, y) = 1`, `x² ≡ μ (mod y)`; `y` odd when `j = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPair {
    pub mu: BigInt,
    pub j: u8,
    pub y: BigInt,
    pub x: BigInt,
}

impl IndexPair {
    pub fn new(mu: impl Into<BigInt>, j: u8, y: impl Into<BigInt>, x: impl Into<BigInt>) -> Result<Self> {
        let pair = IndexPair { mu: mu.into(), j, y: y.into(), x: x.into() };
        pair.validate()?;
        Ok(pair)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidArgument(format!("pair (y = {}, x = {}): {why}", self.y, self.x)));
        if self.j > 1 {
            return Err(Error::InvalidArgument(format!("branch j must be 0 or 1, got {}", self.j)));
        }
        if self.mu.is_zero() {
            return Err(Error::InvalidArgument("norm must be nonzero".into()));
        }
        if !self.y.is_positive() {
            return bad("y must be positive");
        }
        if self.x.is_negative() || self.x >= self.y {
            return bad("x must lie in [0, y)");
        }
        if !self.x.gcd(&self.y).is_one() {
            return bad("gcd(x, y) must be 1");
        }
        if !(&self.x * &self.x - &self.mu).is_multiple_of(&self.y) {
            return bad("x^2 must be congruent to mu modulo y");
        }
        if self.j == 1 && self.y.is_even() {
            return bad("y must be odd on the j = 1 branch");
        }
        Ok(())
    }

    /// `ỹ = y/2` for even `y`, else `y`.
    pub fn ytilde(&self) -> BigInt {
        if self.y.is_even() {
            &self.y / 2
        } else {
            self.y.clone()
        }
    }

    /// Common difference of the admissible `n`: `ỹ` for `j = 0`, `y` for `j = 1`.
    pub fn n_step(&self) -> BigInt {
        if self.j == 0 {
            self.ytilde()
        } else {
            self.y.clone()
        }
    }

    /// `s(n)`: `ny + x` for `j = 0`, `(2n+1)y + 2x` for `j = 1`.
    pub fn s_of(&self, n: &BigInt) -> BigInt {
        if self.j == 0 {
            n * &self.y + &self.x
        } else {
            (n * 2 + 1) * &self.y + &self.x * 2
        }
    }

    /// The radicand attached to `n`, `(s² − 4^j μ)/y²`, if integral.
    pub fn radicand_at(&self, n: &BigInt) -> Option<BigInt> {
        let s = self.s_of(n);
        let num = &s * &s - self.four_j_mu();
        let y2 = &self.y * &self.y;
        num.is_multiple_of(&y2).then(|| num / y2)
    }

    fn four_j_mu(&self) -> BigInt {
        if self.j == 0 {
            self.mu.clone()
        } else {
            &self.mu * 4
        }
    }

    /// `ξ(n)` as `(s + y√d)/2^j`.
    pub fn xi_at(&self, n: &BigInt, d: &BigInt) -> Surd {
        let w = if self.j == 0 { BigInt::one() } else { BigInt::from(2) };
        Surd::new(d.clone(), self.s_of(n), self.y.clone(), w)
    }
}

/// All index pairs with `y <= y_max`, ascending in `(y, x)`.
pub fn index_pairs(mu: &BigInt, j: u8, y_max: u64) -> Result<Vec<IndexPair>> {
    if j > 1 {
        return Err(Error::InvalidArgument(format!("branch j must be 0 or 1, got {j}")));
    }
    if mu.is_zero() {
        return Err(Error::InvalidArgument("norm must be nonzero".into()));
    }
    let pairs: Vec<Vec<IndexPair>> = (1..=y_max)
        .into_par_iter()
        .filter(|y| j == 0 || y % 2 == 1)
        .map(|y| {
            let yb = BigInt::from(y);
            let m = mu.mod_floor(&yb).to_u64().unwrap_or(0);
            (0..y)
                .filter(|&x| num_integer::gcd(x, y) == 1 && ((x as u128 * x as u128) % y as u128) as u64 == m)
                .map(|x| IndexPair { mu: mu.clone(), j, y: yb.clone(), x: BigInt::from(x) })
                .collect()
        })
        .collect();
    Ok(pairs.into_iter().flatten().collect())
}

/// The class `n₀ (mod n_step)` of admissible `n`, in `[0, n_step)`.
pub fn solve_n0(pair: &IndexPair) -> Result<BigInt> {
    pair.validate()?;
    let y = &pair.y;
    if y.is_one() {
        return Ok(BigInt::zero());
    }
    let r = (&pair.mu - &pair.x * &pair.x) / y;
    let empty = || Error::EmptyProgression { mu: pair.mu.clone(), y: y.clone(), x: pair.x.clone() };
    let n0 = if pair.j == 0 {
        if y.is_odd() {
            // 2x·n ≡ r (mod y)
            (r * mod_inverse(&(&pair.x * 2), y)?).mod_floor(y)
        } else {
            // x·n ≡ r/2 (mod ỹ), solvable only for even r
            if r.is_odd() {
                return Err(empty());
            }
            let yt = pair.ytilde();
            if yt.is_one() {
                BigInt::zero()
            } else {
                (r / BigInt::from(2) * mod_inverse(&pair.x, &yt)?).mod_floor(&yt)
            }
        }
    } else {
        // (2n+1)·x ≡ r (mod y)
        let odd = (r * mod_inverse(&pair.x, y)?).mod_floor(y);
        ((odd - BigInt::one()) * mod_inverse(&BigInt::from(2), y)?).mod_floor(y)
    };
    if pair.radicand_at(&n0).is_none() {
        return Err(Error::Internal(format!("n0 = {n0} does not give an integral radicand for {pair:?}")));
    }
    Ok(n0)
}

/// A progression `{element(k) : k >= 0}` started at its canonical radicand `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    pub pair: IndexPair,
    pub n0: BigInt,
    /// The `n` producing `t`.
    pub n_t: BigInt,
    pub t: BigInt,
    /// `s² = 4^j μ + y² t`.
    pub s: BigInt,
    /// Square-free radicands before `t` whose norm-`μ` element is not below `ε_d`.
    pub exceptions: Vec<BigInt>,
}

/// Whether the element `ξ` of the candidate field passes the canonical-start
/// test: `ξ < ε_d`, or `ξ <= ε_d` for unit norms where `ξ` may be `ε_d` itself.
fn below_unit(pair: &IndexPair, n: &BigInt, d: &BigInt) -> bool {
    let ctx = FieldContext::new_unchecked(d.clone());
    let xi = pair.xi_at(n, d);
    match compare_with_unit(&ctx, &xi) {
        Ordering::Less => true,
        Ordering::Equal => pair.mu.abs().is_one(),
        Ordering::Greater => false,
    }
}

/// Scans the admissible `n` upward for the first square-free radicand whose
/// element lies below the fundamental unit; at most `scan_limit` values of `n`.
pub fn build_progression(pair: &IndexPair, scan_limit: u64) -> Result<Progression> {
    let n0 = solve_n0(pair)?;
    let step = pair.n_step();
    let mut exceptions = Vec::new();
    let two = BigInt::from(2);
    for i in 0..scan_limit {
        let n = &n0 + &step * i;
        let d = pair.radicand_at(&n).ok_or_else(|| Error::Internal(format!("non-integral radicand at n = {n}")))?;
        if d < two || !arith::is_squarefree(&d)? {
            continue;
        }
        if below_unit(pair, &n, &d) {
            let s = pair.s_of(&n);
            let prog = Progression { pair: pair.clone(), n0, n_t: n, t: d, s, exceptions };
            prog.check_closed_form()?;
            return Ok(prog);
        }
        exceptions.push(d);
    }
    Err(Error::PhiNotFound(scan_limit))
}

impl Progression {
    /// Coefficients `(a2, a1, a0)` of `element(k) = a2·k² + a1·k + a0`.
    pub fn coefficients(&self) -> (BigInt, BigInt, BigInt) {
        let p = &self.pair;
        if p.j == 0 {
            let yt = p.ytilde();
            // 2(ỹ/y)s is s for even y and 2s for odd y
            let a1 = if p.y.is_even() { self.s.clone() } else { &self.s * 2 };
            (&yt * &yt, a1, self.t.clone())
        } else {
            (&p.y * &p.y * 4, &self.s * 4, self.t.clone())
        }
    }

    pub fn element(&self, k: &BigInt) -> BigInt {
        let (a2, a1, a0) = self.coefficients();
        &a2 * k * k + a1 * k + a0
    }

    /// The `n` attached to `element(k)`.
    pub fn n_at(&self, k: &BigInt) -> BigInt {
        &self.n_t + self.pair.n_step() * k
    }

    /// `a1² − 4·a2·a0`.
    pub fn discriminant(&self) -> BigInt {
        let (a2, a1, a0) = self.coefficients();
        &a1 * &a1 - a2 * a0 * 4
    }

    /// The closed form must agree with the defining relation between `n` and `d`.
    fn check_closed_form(&self) -> Result<()> {
        if &self.s * &self.s != self.pair.four_j_mu() + &self.pair.y * &self.pair.y * &self.t {
            return Err(Error::Internal(format!("s^2 relation fails for {self:?}")));
        }
        for k in 0..3u32 {
            let k = BigInt::from(k);
            if Some(self.element(&k)) != self.pair.radicand_at(&self.n_at(&k)) {
                return Err(Error::Internal(format!("closed form disagrees at k = {k} for {self:?}")));
            }
        }
        Ok(())
    }

    /// `k` with `element(k) = d`, if any.
    pub fn index_of(&self, d: &BigInt) -> Option<BigInt> {
        let (a2, a1, a0) = self.coefficients();
        let disc = &a1 * &a1 - &a2 * (a0 - d) * 4;
        let root = arith::exact_sqrt(&disc)?;
        let num = root - a1;
        let den = a2 * 2;
        (num.is_multiple_of(&den) && !num.is_negative()).then(|| num / den)
    }

    pub fn sieve_poly(&self) -> Result<QuadraticPoly> {
        let (a2, a1, a0) = self.coefficients();
        QuadraticPoly::from_bigints(&a2, &a1, &a0)
    }

    /// Largest partial quotient of `x/y` paired with `⌊√D⌋` for each exception.
    pub fn exception_diagnostics(&self) -> Vec<(BigInt, BigInt, BigInt)> {
        let a_max = largest_partial_quotient(&self.pair.x, &self.pair.y);
        self.exceptions
            .iter()
            .map(|d| {
                let disc = if d.mod_floor(&BigInt::from(4)).is_one() { d.clone() } else { d * 4 };
                (d.clone(), disc.sqrt(), a_max.clone())
            })
            .collect()
    }
}

fn largest_partial_quotient(x: &BigInt, y: &BigInt) -> BigInt {
    let (mut num, mut den) = (x.clone(), y.clone());
    let mut best = BigInt::zero();
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        best = best.max(q);
        num = std::mem::replace(&mut den, r);
    }
    best
}

/// Witness radicands and where each was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub mu: BigInt,
    /// Ascending, deduplicated.
    pub witnesses: Vec<BigInt>,
    /// `(d, j, y, x, k)` of the first progression containing `d` with `k <= k_max`.
    pub covered: Vec<(BigInt, u8, BigInt, BigInt, BigInt)>,
    /// `(d, j, y, x)` of the first progression listing `d` as an exception.
    pub exception_only: Vec<(BigInt, u8, BigInt, BigInt)>,
    pub uncovered: Vec<BigInt>,
    /// Pairs whose congruence for `n₀` has no solution.
    pub empty_pairs: usize,
}

/// Square-free kernels of `T² − 4μ` for `1 < T <= t_max`, skipping
/// non-positive values and perfect squares.
pub fn witness_radicands(mu: &BigInt, t_max: u64) -> Result<Vec<BigInt>> {
    let mut out = Vec::new();
    for t in 2..=t_max {
        let v: BigInt = BigInt::from(t) * t - mu * BigInt::from(4);
        if !v.is_positive() || arith::is_square(&v) {
            continue;
        }
        out.push(arith::squarefree_kernel(&v)?.0);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn coverage_report(mu: &BigInt, t_max: u64, y_max: u64, k_max: u64, scan_limit: u64) -> Result<CoverageReport> {
    let witnesses = witness_radicands(mu, t_max)?;
    let mut pairs = index_pairs(mu, 0, y_max)?;
    pairs.extend(index_pairs(mu, 1, y_max)?);
    let built: Vec<Result<Progression>> = pairs.par_iter().map(|p| build_progression(p, scan_limit)).collect();
    let mut progs = Vec::new();
    let mut empty_pairs = 0;
    for b in built {
        match b {
            Ok(p) => progs.push(p),
            Err(Error::EmptyProgression { .. }) => empty_pairs += 1,
            Err(e) => return Err(e),
        }
    }
    let kmax = BigInt::from(k_max);
    let mut covered = Vec::new();
    let mut exception_only = Vec::new();
    let mut uncovered = Vec::new();
    for d in &witnesses {
        let hit = progs.iter().find_map(|p| {
            p.index_of(d)
                .filter(|k| k <= &kmax)
                .map(|k| (d.clone(), p.pair.j, p.pair.y.clone(), p.pair.x.clone(), k))
        });
        if let Some(h) = hit {
            covered.push(h);
            continue;
        }
        let exc = progs
            .iter()
            .find(|p| p.exceptions.contains(d))
            .map(|p| (d.clone(), p.pair.j, p.pair.y.clone(), p.pair.x.clone()));
        match exc {
            Some(e) => exception_only.push(e),
            None => uncovered.push(d.clone()),
        }
    }
    Ok(CoverageReport { mu: mu.clone(), witnesses, covered, exception_only, uncovered, empty_pairs })
}

/// Number of roots of the progression polynomial mod 4 (`p = 2`) or mod `p²`
/// predicted by the case analysis.
pub fn omega_p_prediction(pair: &IndexPair, p: u64) -> Result<u64> {
    if p == 2 {
        return Ok(omega_two(pair));
    }
    if !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pb = BigInt::from(p);
    if pair.ytilde().is_multiple_of(&pb) {
        return Ok(1);
    }
    if pair.mu.is_multiple_of(&(&pb * &pb)) {
        return Ok(p);
    }
    if pair.mu.is_multiple_of(&pb) {
        return Ok(0);
    }
    Ok(if jacobi(&pair.mu, &pb)? == 1 { 2 } else { 0 })
}

/// The 2-adic row of the density table.
pub fn omega_two(pair: &IndexPair) -> u64 {
    if pair.j == 1 {
        return 0;
    }
    let y4 = pair.y.mod_floor(&BigInt::from(4)).to_u64().unwrap();
    let mu4 = pair.mu.mod_floor(&BigInt::from(4)).to_u64().unwrap();
    let mu8 = pair.mu.mod_floor(&BigInt::from(8)).to_u64().unwrap();
    match y4 {
        1 | 3 if mu4 == 0 || mu4 == 1 => 2,
        2 if mu8 == 1 => 2,
        0 => 1,
        _ => 0,
    }
}

/// `#{k ∈ [0, p²) : element(k) ≡ 0 (mod p²)}` by direct count.
pub fn omega_p_count(prog: &Progression, p: u64) -> u64 {
    let m = BigInt::from(p * p);
    let (a2, a1, a0) = prog.coefficients();
    let (a2, a1, a0) = (a2.mod_floor(&m), a1.mod_floor(&m), a0.mod_floor(&m));
    (0..p * p)
        .filter(|&k| (&a2 * k * k + &a1 * k + &a0).mod_floor(&m).is_zero())
        .count() as u64
}

/// The limiting square-free proportion of a progression, as a truncated Euler product.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityPrediction {
    pub omega2: u64,
    /// `1 − ω(2)/4`.
    pub two_adic: f64,
    /// `∏ (1 − 1/p²)` over odd `p | y`.
    pub divisor_factor: f64,
    /// `∏ (1 − 1/p)` over odd `p` with `p² | μ`.
    pub square_factor: f64,
    /// `∏ (1 − 2/p²)` over odd `p <= cutoff`, `p ∤ μy`, `(μ/p) = 1`.
    pub residue_factor: f64,
    pub cutoff: u64,
    /// `Σ_{p > cutoff} 2/p²` bounds the omitted part of the residue product.
    pub tail_bound: f64,
    pub value: f64,
}

pub fn predicted_density(pair: &IndexPair, prime_cutoff: u64) -> Result<DensityPrediction> {
    if prime_cutoff < 3 {
        return Err(Error::InvalidArgument(format!("prime cutoff must be at least 3, got {prime_cutoff}")));
    }
    let omega2 = omega_two(pair);
    let two_adic = 1.0 - omega2 as f64 / 4.0;
    let y_primes = arith::factorize(&pair.y)?;
    let mu_f = arith::factorize(&pair.mu.abs())?;
    let odd = |p: &&BigInt| p.is_odd();
    let divisor_factor = y_primes
        .primes()
        .filter(odd)
        .map(|p| 1.0 - 1.0 / p.to_f64().unwrap().powi(2))
        .product();
    let square_factor = mu_f
        .factors()
        .iter()
        .filter(|(p, e)| p.is_odd() && *e >= 2)
        .map(|(p, _)| 1.0 - 1.0 / p.to_f64().unwrap())
        .product();
    let mu_y = (&pair.mu * &pair.y).abs();
    let mu_mod = |p: u64| pair.mu.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let residue_factor = primes_up_to(prime_cutoff)
        .into_iter()
        .filter(|&p| p > 2 && !mu_y.is_multiple_of(&BigInt::from(p)) && jacobi_u64(mu_mod(p), p) == 1)
        .map(|p| 1.0 - 2.0 / (p as f64 * p as f64))
        .product();
    // Σ_{p > c} 2/p² < Σ_{n > c} 2/n² < 2/c
    let tail_bound = 2.0 / prime_cutoff as f64;
    let value = two_adic * divisor_factor * square_factor * residue_factor;
    Ok(DensityPrediction {
        omega2,
        two_adic,
        divisor_factor,
        square_factor,
        residue_factor,
        cutoff: prime_cutoff,
        tail_bound,
        value,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDensity {
    pub squarefree: u64,
    pub sampled: u64,
    /// Values the factorizer could not settle; excluded from both counts above.
    pub unfactored: u64,
}

impl EmpiricalDensity {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.squarefree), BigInt::from(self.sampled.max(1)))
    }

    pub fn value(&self) -> f64 {
        self.squarefree as f64 / self.sampled.max(1) as f64
    }
}

/// Square-free proportion of `element(0), …, element(k_max − 1)`.
pub fn empirical_density(prog: &Progression, k_max: u64) -> Result<EmpiricalDensity> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("empirical density needs k_max >= 1".into()));
    }
    let flags = squarefree_flags(prog, k_max)?;
    let squarefree = flags.iter().filter(|f| **f == Some(true)).count() as u64;
    let unfactored = flags.iter().filter(|f| f.is_none()).count() as u64;
    Ok(EmpiricalDensity { squarefree, sampled: k_max - unfactored, unfactored })
}

/// Square-free flags of the first `count` elements; `None` marks values that
/// could not be factored within budget.
pub fn squarefree_flags(prog: &Progression, count: u64) -> Result<Vec<Option<bool>>> {
    const BLOCK: u64 = 1 << 16;
    if let Ok(poly) = prog.sieve_poly() {
        let blocks: Vec<u64> = (0..count).step_by(BLOCK as usize).collect();
        let sieved: Result<Vec<Vec<Option<bool>>>> = blocks
            .par_iter()
            .map(|&start| {
                let len = BLOCK.min(count - start) as usize;
                value_kernels(&poly, start as i128, len)
                    .map(|ks| ks.into_iter().map(|k| Some(k.is_some_and(|k| k.is_squarefree()))).collect())
            })
            .collect();
        match sieved {
            Ok(v) => return Ok(v.into_iter().flatten().collect()),
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
    }
    (0..count)
        .into_par_iter()
        .map(|k| match arith::is_squarefree(&prog.element(&BigInt::from(k))) {
            Ok(f) => Ok(Some(f)),
            Err(e) if e.is_budget() => Ok(None),
            Err(e) => Err(e),
        })
        .collect()
}

/// Solvability of `a2·x² + a1·x + a0 ≡ 0 (mod p^m)` for odd prime `p ∤ a2`,
/// decided by whether the discriminant is a square modulo `p^m`.
pub fn hensel_quadratic(a2: &BigInt, a1: &BigInt, a0: &BigInt, p: u64, m: u32) -> Result<bool> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("exponent must be positive".into()));
    }
    let pb = BigInt::from(p);
    if a2.is_multiple_of(&pb) {
        return Err(Error::InvalidArgument(format!("{p} divides the leading coefficient {a2}")));
    }
    let modulus = num_traits::pow(pb.clone(), m as usize);
    let disc: BigInt = a1 * a1 - a2 * a0 * BigInt::from(4);
    let disc = disc.mod_floor(&modulus);
    Ok(is_square_mod_prime_power(&disc, &pb, m))
}

/// `Δ` is a square mod `p^m` iff `Δ ≡ 0`, or `Δ = p^v·u` with `v` even and `u` a residue mod `p`.
fn is_square_mod_prime_power(disc: &BigInt, p: &BigInt, m: u32) -> bool {
    if disc.is_zero() {
        return true;
    }
    let mut v = 0u32;
    let mut u = disc.clone();
    while u.is_multiple_of(p) {
        u /= p;
        v += 1;
    }
    if v >= m {
        return true;
    }
    v % 2 == 0 && jacobi(&u, p).map(|j| j == 1).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn prog(mu: i64, j: u8, y: i64, x: i64) -> Progression {
        build_progression(&IndexPair::new(mu, j, y, x).unwrap(), 10_000).unwrap()
    }

    fn yx(pairs: &[IndexPair]) -> Vec<(i64, i64)> {
        pairs.iter().map(|p| (p.y.to_i64().unwrap(), p.x.to_i64().unwrap())).collect()
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(yx(&index_pairs(&big(2), 0, 7).unwrap()), vec![(1, 0), (7, 3), (7, 4)]);
        assert_eq!(yx(&index_pairs(&big(-1), 0, 5).unwrap()), vec![(1, 0), (2, 1), (5, 2), (5, 3)]);
        assert_eq!(yx(&index_pairs(&big(5), 1, 3).unwrap()), vec![(1, 0)]);
    }

    #[test]
    fn n0_examples() {
        assert_eq!(solve_n0(&IndexPair::new(2, 0, 7, 3).unwrap()).unwrap(), big(1));
        assert_eq!(solve_n0(&IndexPair::new(2, 0, 7, 4).unwrap()).unwrap(), big(5));
        assert_eq!(solve_n0(&IndexPair::new(2, 0, 1, 0).unwrap()).unwrap(), big(0));
        assert!(matches!(
            solve_n0(&IndexPair::new(-1, 0, 2, 1).unwrap()),
            Err(Error::EmptyProgression { .. })
        ));
    }

    #[test]
    fn canonical_starts() {
        let p = prog(2, 0, 7, 3);
        assert_eq!((p.t.clone(), p.exceptions.clone()), (big(71), vec![big(2)]));
        let p = prog(2, 0, 1, 0);
        assert_eq!((p.t.clone(), p.exceptions.clone()), (big(7), vec![big(2)]));
        assert_eq!(prog(2, 0, 7, 4).t, big(31));
        let p = prog(5, 1, 1, 0);
        assert_eq!((p.t.clone(), p.exceptions.clone()), (big(61), vec![big(5), big(29)]));
    }

    #[test]
    fn elements() {
        let p = prog(2, 0, 7, 3);
        let e: Vec<BigInt> = (0..3).map(|k| p.element(&big(k))).collect();
        assert_eq!(e, vec![big(71), big(238), big(503)]);
        assert_eq!(prog(2, 0, 7, 4).element(&big(1)), big(158));
        assert_eq!(prog(5, 1, 1, 0).element(&big(1)), big(101));
        assert_eq!(p.index_of(&big(503)), Some(big(2)));
        assert_eq!(p.index_of(&big(504)), None);
    }

    #[test]
    fn discriminants() {
        assert_eq!(prog(2, 0, 7, 3).discriminant(), big(8));
        assert_eq!(prog(5, 1, 1, 0).discriminant(), big(320));
        let even = build_progression(&IndexPair::new(17, 0, 2, 1).unwrap(), 10_000).unwrap();
        assert_eq!(even.discriminant(), big(17));
        let even = build_progression(&IndexPair::new(-7, 0, 4, 1).unwrap(), 10_000).unwrap();
        assert_eq!(even.discriminant(), big(-7));
    }

    #[test]
    fn densities() {
        let p = prog(2, 0, 7, 3);
        let e = empirical_density(&p, 3).unwrap();
        assert_eq!((e.squarefree, e.sampled), (3, 3));
        assert_eq!(empirical_density(&prog(5, 1, 1, 0), 3).unwrap().squarefree, 3);
        assert!(empirical_density(&p, 0).is_err());
        assert_eq!(predicted_density(&p.pair, 100).unwrap().omega2, 0);
        assert_eq!(predicted_density(&IndexPair::new(5, 1, 1, 0).unwrap(), 100).unwrap().omega2, 0);
        let j0 = predicted_density(&IndexPair::new(5, 0, 1, 0).unwrap(), 100).unwrap();
        assert_eq!(j0.two_adic, 0.5);
        assert!(predicted_density(&p.pair, 2).is_err());
    }

    #[test]
    fn local_root_counts() {
        let p = prog(2, 0, 7, 3);
        assert_eq!(omega_p_count(&p, 3), 0);
        assert_eq!(omega_p_count(&p, 7), 1);
        assert_eq!(omega_p_count(&prog(5, 1, 1, 0), 2), 0);
        for q in [2u64, 3, 5, 7, 11, 13, 17, 23, 31, 41, 47] {
            assert_eq!(omega_p_count(&p, q), omega_p_prediction(&p.pair, q).unwrap(), "p = {q}");
        }
    }

    #[test]
    fn hensel_examples() {
        assert!(hensel_quadratic(&big(1), &big(0), &big(-5), 11, 2).unwrap());
        assert!(!hensel_quadratic(&big(1), &big(0), &big(-2), 3, 1).unwrap());
        assert_eq!(
            hensel_quadratic(&big(1), &big(1), &big(1), 3, 2).unwrap(),
            quadunit_oracle::quadratic_solvable_scan(1, 1, 1, 3, 2)
        );
        assert!(hensel_quadratic(&big(3), &big(1), &big(1), 3, 2).is_err());
    }

    #[test]
    fn coverage_small() {
        let r = coverage_report(&big(2), 10, 50, 10, 10_000).unwrap();
        let w: Vec<i64> = r.witnesses.iter().map(|d| d.to_i64().unwrap()).collect();
        // T = 10 contributes 92 = 4·23
        assert_eq!(w, vec![2, 7, 14, 17, 23, 41, 73]);
        assert!(r.uncovered.is_empty());
        assert_eq!(r.exception_only.iter().map(|e| e.0.clone()).collect::<Vec<_>>(), vec![big(2)]);
        let empty = coverage_report(&big(-1), 0, 10, 10, 10_000).unwrap();
        assert!(empty.witnesses.is_empty() && empty.uncovered.is_empty());
    }
}
