//! Surveys across many fields: minimal elements of a given norm, their
//! counting function `E_μ(x)`, the field count `f_μ(N)`, the split and
//! ramified unit identities, regulator lower-bound residuals and the
//! negative Pell equation.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith;
use crate::contfrac::{compare_with_unit, expand_omega, fundamental_unit, fundamental_unit_with_period};
use crate::error::{Error, Result};
use crate::ideals::ideals_of_norm;
use crate::progressions::{index_pairs, solve_n0, IndexPair};
use crate::quadfield::{BasisKind, FieldContext, QuadInt, Surd};
use crate::sieve::{value_kernels, QuadraticPoly};

/// Digits after the point in [`MinimalRecord::value_approx`].
pub const VALUE_DIGITS: usize = 30;

/// One minimal element of absolute norm `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRecord {
    pub d: BigInt,
    pub xi: QuadInt,
    pub trace: BigInt,
    pub signed_norm: BigInt,
    pub value_approx: String,
}

impl MinimalRecord {
    pub fn new(xi: QuadInt) -> Self {
        MinimalRecord {
            d: xi.ctx().d().clone(),
            trace: xi.trace(),
            signed_norm: xi.norm(),
            value_approx: xi.to_surd().to_decimal(VALUE_DIGITS),
            xi,
        }
    }

    pub fn value(&self) -> f64 {
        self.xi.to_f64()
    }
}

fn check_abs_norm(mu: &BigInt) -> Result<()> {
    if !mu.is_positive() {
        return Err(Error::InvalidArgument(format!("absolute norm must be positive, got {mu}")));
    }
    if !arith::is_squarefree(mu)? {
        return Err(Error::NotSquarefree(mu.clone()));
    }
    Ok(())
}

/// `μ < ω_d − 1`: every minimal element of norm `±μ` is then some `ξ_n`.
pub fn convergent_range(ctx: &FieldContext, mu: &BigInt) -> bool {
    Surd::integer(ctx.d(), mu + 1) < ctx.omega()
}

/// `F_{(d,μ)}` in ascending order: the least element above 1 of every
/// associate class of absolute norm `abs_norm`.
pub fn minimal_elements(ctx: &FieldContext, abs_norm: &BigInt) -> Result<Vec<MinimalRecord>> {
    check_abs_norm(abs_norm)?;
    if convergent_range(ctx, abs_norm) {
        Ok(minimal_by_convergents(ctx, abs_norm))
    } else {
        minimal_by_ideals(ctx, abs_norm)
    }
}

/// The `ξ_n`, `n < l`, with `ν_n = μ`.
pub fn minimal_by_convergents(ctx: &FieldContext, abs_norm: &BigInt) -> Vec<MinimalRecord> {
    let exp = expand_omega(ctx);
    let mut out: Vec<QuadInt> = exp.xis().take(exp.period()).filter(|x| &x.norm().abs() == abs_norm).collect();
    out.dedup();
    out.into_iter().map(MinimalRecord::new).collect()
}

/// One generator per principal ideal of norm `μ`, found by reducing the
/// ideal's irrational onto the cycle of `ω_d` and moved into `(1, ε_d]`.
pub fn minimal_by_ideals(ctx: &FieldContext, abs_norm: &BigInt) -> Result<Vec<MinimalRecord>> {
    let exp = expand_omega(ctx);
    let l = exp.period();
    let cycle: HashMap<(BigInt, BigInt), usize> = (1..=l)
        .map(|m| {
            let st = exp.total_quotient(m - 1);
            ((st.p.clone(), st.q.clone()), m)
        })
        .collect();
    let eps = exp.fundamental_unit().to_surd();
    let eps_inv = eps.recip().expect("unit");
    let d = ctx.d();
    let s = ctx.sqrt_floor();
    let one = Surd::integer(d, 1);
    let mut out = Vec::new();
    for ideal in ideals_of_norm(ctx, abs_norm)? {
        let mut gamma = ideal.alpha()?;
        // I = a·(γ_1⋯γ_k)⁻¹·L(γ_k)
        let mut gen = Surd::integer(d, ideal.a.clone());
        while !gamma.is_reduced() {
            gamma = gamma.step_with(s).1;
            gen = gen.div(&gamma.to_surd()).expect("nonzero");
        }
        let Some(&m) = cycle.get(&(gamma.p.clone(), gamma.q.clone())) else {
            continue;
        };
        // L(α_m) = α_1⋯α_m·O
        for i in 0..m {
            gen = gen.mul(&exp.total_quotient(i).to_surd());
        }
        if gen.signum() == Ordering::Less {
            gen = gen.neg();
        }
        while gen > eps {
            gen = gen.mul(&eps_inv);
        }
        while gen <= one {
            gen = gen.mul(&eps);
        }
        let xi = ctx
            .element_from_surd(&gen)
            .ok_or_else(|| Error::Internal(format!("generator {gen:?} is not integral")))?;
        if &xi.norm().abs() != abs_norm {
            return Err(Error::Internal(format!("generator {xi} has the wrong norm")));
        }
        out.push(xi);
    }
    out.sort_by(|a, b| a.to_surd().cmp(&b.to_surd()));
    out.dedup();
    Ok(out.into_iter().map(MinimalRecord::new).collect())
}

/// `E_μ(x)` with its records, ascending in value.
#[derive(Debug, Clone, PartialEq)]
pub struct EMuReport {
    pub mu: BigInt,
    pub x_bound: BigRational,
    pub records: Vec<MinimalRecord>,
    /// `E_μ(x) < 2x`.
    pub below_twice_x: bool,
    /// `max_k (k − 2ξ_k + 2√μ)` over the sorted records: the smallest `K`
    /// with `E_μ(t) <= 2t − 2√μ + K` for all `t <= x`.
    pub excess: f64,
}

impl EMuReport {
    pub fn count(&self) -> usize {
        self.records.len()
    }

    /// `E_μ(t) < 2t` for every `t <= x`: the `k`-th record exceeds `k/2`.
    pub fn below_twice_throughout(&self) -> bool {
        self.records
            .iter()
            .enumerate()
            .all(|(i, r)| r.xi.cmp_rational(&BigRational::new(BigInt::from(i + 1), BigInt::from(2))) == Ordering::Greater)
    }

    fn assemble(mu: &BigInt, x_bound: &BigRational, mut records: Vec<MinimalRecord>) -> Self {
        let mut keyed: Vec<(f64, MinimalRecord)> = records.drain(..).map(|r| (r.value(), r)).collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.d.cmp(&b.1.d)));
        let root_mu = 2.0 * mu.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let excess = keyed
            .iter()
            .enumerate()
            .map(|(i, (v, _))| (i + 1) as f64 - 2.0 * v + root_mu)
            .fold(f64::NEG_INFINITY, f64::max);
        let records: Vec<MinimalRecord> = keyed.into_iter().map(|(_, r)| r).collect();
        let twice = x_bound * BigInt::from(2);
        EMuReport {
            mu: mu.clone(),
            x_bound: x_bound.clone(),
            below_twice_x: BigRational::from_integer(BigInt::from(records.len())) < twice,
            excess,
            records,
        }
    }
}

fn check_x_bound(x_bound: &BigRational) -> Result<()> {
    if !x_bound.is_positive() {
        return Err(Error::InvalidArgument(format!("x bound must be positive, got {x_bound}")));
    }
    Ok(())
}

/// Traces scanned per sieve block.
const TRACE_BLOCK: usize = 1 << 15;

/// `E_μ(x)` by scanning traces: every `ξ > 1` of norm `N = ±μ` is a root of
/// `t² − mt + N` with `1 − μ < m < x + μ`.
pub fn e_mu(abs_norm: &BigInt, x_bound: &BigRational) -> Result<EMuReport> {
    check_abs_norm(abs_norm)?;
    check_x_bound(x_bound)?;
    let mu = abs_norm
        .to_i128()
        .filter(|m| *m < 1 << 60)
        .ok_or_else(|| Error::BudgetExhausted(format!("norm {abs_norm} exceeds the trace sieve")))?;
    let m_lo = 2 - mu;
    let m_hi = x_bound.ceil().to_integer().to_i128().unwrap_or(i128::MAX).saturating_add(mu);
    if m_hi > 1 << 40 {
        return Err(Error::BudgetExhausted(format!("x bound {x_bound} exceeds the trace sieve")));
    }
    let starts: Vec<i128> = (m_lo..m_hi).step_by(TRACE_BLOCK).collect();
    let mut records = Vec::new();
    for sign in [1i128, -1] {
        let poly = QuadraticPoly::new(1, 0, -4 * sign * mu);
        let blocks: Vec<Result<Vec<MinimalRecord>>> = starts
            .par_iter()
            .map(|&start| {
                let count = TRACE_BLOCK.min((m_hi - start) as usize);
                let kernels = value_kernels(&poly, start, count)?;
                let mut found = Vec::new();
                for (i, vk) in kernels.into_iter().enumerate() {
                    let Some(vk) = vk else { continue };
                    if vk.value <= 0 || vk.kernel == 1 {
                        continue;
                    }
                    let m = BigInt::from(start + i as i128);
                    let ctx = FieldContext::new_unchecked(BigInt::from(vk.kernel));
                    let f = BigInt::from(vk.cofactor);
                    let mut roots = vec![Surd::new(ctx.d().clone(), m.clone(), f.clone(), BigInt::from(2))];
                    if sign > 0 {
                        roots.push(roots[0].conj());
                    }
                    for root in roots {
                        if let Some(xi) = keep_root(&ctx, &root, x_bound) {
                            found.push(MinimalRecord::new(xi));
                        }
                    }
                }
                Ok(found)
            })
            .collect();
        for b in blocks {
            records.extend(b?);
        }
    }
    Ok(EMuReport::assemble(abs_norm, x_bound, records))
}

fn keep_root(ctx: &FieldContext, root: &Surd, x_bound: &BigRational) -> Option<QuadInt> {
    let d = ctx.d();
    if *root <= Surd::integer(d, 1) || *root >= Surd::rational(d, x_bound) {
        return None;
    }
    if compare_with_unit(ctx, root) == Ordering::Greater {
        return None;
    }
    ctx.element_from_surd(root)
}

/// `E_μ(x)` field by field: `ξ − ξ̄ >= √d` forces `d < (x + μ)²`.
pub fn e_mu_per_field(abs_norm: &BigInt, x_bound: &BigRational) -> Result<EMuReport> {
    check_abs_norm(abs_norm)?;
    check_x_bound(x_bound)?;
    let reach = x_bound.ceil().to_integer() + abs_norm;
    let d_max = (&reach * &reach)
        .to_u64()
        .filter(|v| *v <= 1 << 32)
        .ok_or_else(|| Error::BudgetExhausted(format!("x bound {x_bound} needs too many fields")))?;
    let per_field: Vec<Result<Vec<MinimalRecord>>> = (2..d_max)
        .into_par_iter()
        .map(|d| {
            let d = BigInt::from(d);
            if !arith::is_squarefree(&d)? {
                return Ok(Vec::new());
            }
            let ctx = FieldContext::new_unchecked(d);
            minimal_below(&ctx, abs_norm, x_bound)
        })
        .collect();
    let mut records = Vec::new();
    for r in per_field {
        records.extend(r?);
    }
    Ok(EMuReport::assemble(abs_norm, x_bound, records))
}

/// Members of `F_{(d,μ)}` below `x`. Inside the convergent range the scan
/// stops at the first `ξ_n >= x`.
fn minimal_below(ctx: &FieldContext, abs_norm: &BigInt, x_bound: &BigRational) -> Result<Vec<MinimalRecord>> {
    let x = Surd::rational(ctx.d(), x_bound);
    if !convergent_range(ctx, abs_norm) {
        return Ok(minimal_by_ideals(ctx, abs_norm)?
            .into_iter()
            .filter(|r| r.xi.to_surd() < x)
            .collect());
    }
    let (_, l) = fundamental_unit_with_period(ctx);
    let exp_states = crate::contfrac::omega_state(ctx);
    let s = ctx.sqrt_floor();
    let (a0, mut cur) = exp_states.step_with(s);
    let mut prev = (a0, BigInt::one());
    let mut prev2 = (BigInt::one(), BigInt::zero());
    let mut out = Vec::new();
    for _ in 0..l {
        let xi = crate::contfrac::xi_from_convergent(ctx, &prev.0, &prev.1);
        if xi.to_surd() >= x {
            break;
        }
        if &xi.norm().abs() == abs_norm {
            out.push(MinimalRecord::new(xi));
        }
        let (a, next) = cur.step_with(s);
        let p = &a * &prev.0 + &prev2.0;
        let q = &a * &prev.1 + &prev2.1;
        prev2 = std::mem::replace(&mut prev, (p, q));
        cur = next;
    }
    Ok(out)
}

/// `f_μ(N)`: distinct fields `ℚ(√(T² − 4μ))` over `1 < T < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct FMuReport {
    pub mu: BigInt,
    pub n: u64,
    pub fields: Vec<BigInt>,
    /// `f_μ(N)/N`.
    pub ratio: f64,
    /// `2^{−ω(μ)}`.
    pub bound: f64,
}

impl FMuReport {
    pub fn count(&self) -> usize {
        self.fields.len()
    }
}

pub fn f_mu(mu: &BigInt, n: u64) -> Result<FMuReport> {
    if n <= 2 {
        return Err(Error::InvalidArgument(format!("f_mu needs N > 2, got {n}")));
    }
    check_abs_norm(mu)?;
    let fields = crate::progressions::witness_radicands(mu, n - 1)?;
    let w = arith::omega(mu)?;
    Ok(FMuReport {
        mu: mu.clone(),
        n,
        ratio: fields.len() as f64 / n as f64,
        bound: 0.5f64.powi(w as i32),
        fields,
    })
}

/// Outcome of `ξ·ξ̃ = p·ε_d` for a principal split prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIdentity {
    pub d: BigInt,
    pub p: u64,
    pub xi: QuadInt,
    pub xi_tilde: QuadInt,
    pub product: QuadInt,
    pub eps: QuadInt,
    pub holds: bool,
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

/// `(d/p)` extended to `p = 2` through `d mod 8`; 0 when `p` ramifies.
fn splitting_symbol(ctx: &FieldContext, p: u64) -> i32 {
    let d = ctx.d();
    if p == 2 {
        if ctx.kind() == BasisKind::Whole {
            return 0;
        }
        return if d.mod_floor(&BigInt::from(8)).is_one() { 1 } else { -1 };
    }
    arith::jacobi_u64(d.mod_floor(&BigInt::from(p)).to_u64().expect("residue"), p)
}

/// Requires `p < √D/2` and `p` split into principal primes.
pub fn split_identity_check(d: &BigInt, p: u64) -> Result<SplitIdentity> {
    check_prime(p)?;
    let ctx = FieldContext::new(d.clone())?;
    let pb = BigInt::from(p);
    if &pb * &pb * 4 >= *ctx.disc() {
        return Err(Error::Hypothesis(format!("{p} is not below sqrt(D)/2 for d = {d}")));
    }
    if splitting_symbol(&ctx, p) != 1 {
        return Err(Error::Hypothesis(format!("{p} does not split in Q(sqrt {d})")));
    }
    let mins = minimal_elements(&ctx, &pb)?;
    if mins.len() != 2 {
        return Err(Error::Hypothesis(format!("the primes above {p} are not principal in Q(sqrt {d})")));
    }
    let xi = mins[0].xi.clone();
    let xi_tilde = mins[1].xi.clone();
    let product = xi.mul(&xi_tilde)?;
    let eps = fundamental_unit(&ctx);
    Ok(SplitIdentity {
        d: d.clone(),
        p,
        holds: product == eps.scale(&pb),
        xi,
        xi_tilde,
        product,
        eps,
    })
}

/// Outcome of `ξ²/p = ε_d` for a principal ramified prime `p`, with
/// `ξ = s + y√d` the minimal generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamifiedIdentity {
    pub d: BigInt,
    pub p: u64,
    pub xi: QuadInt,
    pub square_over_p: QuadInt,
    pub eps: QuadInt,
    pub holds: bool,
    /// `(y, x)` with `s = ⌊√d⌋y + x`.
    pub floor_form: (BigInt, BigInt),
    /// Whether that `x` lies in `[0, y)`.
    pub floor_form_reduced: bool,
}

/// Requires `d ≡ 2, 3 (mod 4)`, `√d − 1 > p` and `p` ramified and principal.
pub fn ramified_identity_check(d: &BigInt, p: u64) -> Result<RamifiedIdentity> {
    check_prime(p)?;
    let ctx = FieldContext::new(d.clone())?;
    if ctx.kind() != BasisKind::Whole {
        return Err(Error::Hypothesis(format!("{d} is 1 mod 4")));
    }
    let pb = BigInt::from(p);
    // √d − 1 > p  ⇔  d > (p + 1)²
    if d <= &((&pb + 1) * (&pb + 1)) {
        return Err(Error::Hypothesis(format!("sqrt {d} - 1 does not exceed {p}")));
    }
    if splitting_symbol(&ctx, p) != 0 {
        return Err(Error::Hypothesis(format!("{p} is not ramified in Q(sqrt {d})")));
    }
    let mins = minimal_elements(&ctx, &pb)?;
    let Some(first) = mins.first() else {
        return Err(Error::Hypothesis(format!("the prime above {p} is not principal in Q(sqrt {d})")));
    };
    let xi = first.xi.clone();
    let sq = xi.pow(2);
    if !sq.a.is_multiple_of(&pb) || !sq.b.is_multiple_of(&pb) {
        return Err(Error::Internal(format!("{p} does not divide {sq}")));
    }
    let square_over_p = ctx.element(&sq.a / &pb, &sq.b / &pb);
    let eps = fundamental_unit(&ctx);
    let y = xi.b.clone();
    let x = &xi.a - ctx.sqrt_floor() * &y;
    Ok(RamifiedIdentity {
        d: d.clone(),
        p,
        holds: square_over_p == eps,
        floor_form_reduced: !x.is_negative() && x < y,
        floor_form: (y, x),
        xi,
        square_over_p,
        eps,
    })
}

/// Period length and `log ε_d = Σ_{i=1}^{l} log α_i` from machine-word
/// states. Each term carries a relative error of a few ulps and all terms
/// are positive, so the sum is accurate to about `10⁻¹³` relative.
pub fn regulator_fast(d: u64) -> Option<(usize, f64)> {
    let dd = d as i128;
    if d < 2 || d > 1 << 60 {
        return None;
    }
    let s = arith::isqrt(&BigInt::from(d)).ok()?.to_i128()?;
    if s * s == dd {
        return None;
    }
    let root = (d as f64).sqrt();
    let step = |p: i128, q: i128| -> (i128, i128) {
        let a = if q > 0 { (p + s).div_euclid(q) } else { Integer::div_floor(&(p + s + 1), &q) };
        let p2 = a * q - p;
        (p2, (dd - p2 * p2) / q)
    };
    let start = if d % 4 == 1 { (1, 2) } else { (0, 1) };
    let first = step(start.0, start.1);
    let mut cur = first;
    let mut l = 0usize;
    let mut log = 0.0f64;
    loop {
        l += 1;
        log += ((cur.0 as f64 + root) / cur.1 as f64).ln();
        cur = step(cur.0, cur.1);
        if cur == first {
            return Some((l, log));
        }
    }
}

/// One term of the lower-bound sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub t: u64,
    pub d: u64,
    pub disc: u64,
    pub log_eps: f64,
    /// `(1/log μ)L² − (3 − 2 log 2/log μ)L`, `L = log(√D/2)`.
    pub bound: f64,
    pub residual: f64,
    /// `μ` shares a prime with `D`, so some prime above `μ` ramifies.
    pub ramified: bool,
}

/// Residuals of `log ε_d` against the quadratic lower bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub mu: u64,
    pub t_max: u64,
    pub rows: Vec<BoundRow>,
    pub min_residual: f64,
    pub min_at_t: u64,
    /// Nearest-rank percentiles `(q, value)`.
    pub percentiles: Vec<(u32, f64)>,
    pub probe: f64,
    /// Rows with `residual < −probe`.
    pub violations: usize,
    /// Median residual of each decile of rows sorted by `D`.
    pub bin_medians: Vec<f64>,
    /// Spearman correlation of bin index against bin median.
    pub bin_rank_correlation: f64,
    pub ramified_rows: usize,
    /// The decile correlation restricted to rows where `μ` is unramified.
    pub unramified_rank_correlation: f64,
    /// The decile correlation restricted to rows where `μ` ramifies.
    pub ramified_rank_correlation: f64,
}

impl BoundReport {
    pub fn violation_fraction(&self) -> f64 {
        self.violations as f64 / self.rows.len().max(1) as f64
    }

    pub fn trend_upward(&self) -> bool {
        self.bin_rank_correlation > 0.0
    }
}

pub const PERCENTILES: [u32; 7] = [1, 5, 10, 25, 50, 75, 90];
pub const BINS: usize = 10;

/// `T` from 3 to `t_max` with `T² − 4μ` positive and not a square.
pub fn theorem_bound_sweep(mu: u64, t_max: u64, probe: f64) -> Result<BoundReport> {
    if mu < 2 || !arith::is_squarefree(&BigInt::from(mu))? {
        return Err(Error::InvalidArgument(format!("norm must be a square-free integer >= 2, got {mu}")));
    }
    let log_mu = (mu as f64).ln();
    let rows: Vec<Result<Option<BoundRow>>> = (2..=t_max)
        .into_par_iter()
        .map(|t| {
            let v = BigInt::from(t) * t - BigInt::from(4 * mu);
            if !v.is_positive() || arith::is_square(&v) {
                return Ok(None);
            }
            let d = arith::squarefree_kernel(&v)?
                .0
                .to_u64()
                .ok_or_else(|| Error::BudgetExhausted(format!("radicand of T = {t} is too large")))?;
            let disc = if d % 4 == 1 { d } else { 4 * d };
            let (_, log_eps) =
                regulator_fast(d).ok_or_else(|| Error::Internal(format!("no regulator for {d}")))?;
            let l = ((disc as f64).sqrt() / 2.0).ln();
            let bound = l * l / log_mu - (3.0 - 2.0 * std::f64::consts::LN_2 / log_mu) * l;
            let ramified = num_integer::gcd(mu, disc) > 1;
            Ok(Some(BoundRow { t, d, disc, log_eps, bound, residual: log_eps - bound, ramified }))
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        if let Some(row) = r? {
            out.push(row);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument(format!("no admissible T up to {t_max}")));
    }
    let (min_at_t, min_residual) = out
        .iter()
        .map(|r| (r.t, r.residual))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("nonempty");
    let mut sorted: Vec<f64> = out.iter().map(|r| r.residual).collect();
    sorted.sort_by(f64::total_cmp);
    let percentiles = PERCENTILES.iter().map(|&q| (q, nearest_rank(&sorted, q))).collect();
    let violations = out.iter().filter(|r| r.residual < -probe).count();

    let all: Vec<&BoundRow> = out.iter().collect();
    let bin_medians = decile_medians(&all);
    let bin_rank_correlation = spearman(&bin_medians);
    let (ram, unram): (Vec<&BoundRow>, Vec<&BoundRow>) = out.iter().partition(|r| r.ramified);
    let ramified_rows = ram.len();
    let unramified_rank_correlation = spearman(&decile_medians(&unram));
    let ramified_rank_correlation = spearman(&decile_medians(&ram));
    Ok(BoundReport {
        mu,
        t_max,
        rows: out,
        min_residual,
        min_at_t,
        percentiles,
        probe,
        violations,
        bin_medians,
        bin_rank_correlation,
        ramified_rows,
        unramified_rank_correlation,
        ramified_rank_correlation,
    })
}

/// Median residual of each tenth of `rows` ordered by `(D, T)`; empty when
/// there are fewer rows than bins.
fn decile_medians(rows: &[&BoundRow]) -> Vec<f64> {
    let n = rows.len();
    if n < BINS {
        return Vec::new();
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by_key(|r| (r.disc, r.t));
    (0..BINS)
        .map(|b| {
            let mut chunk: Vec<f64> = sorted[b * n / BINS..(b + 1) * n / BINS].iter().map(|r| r.residual).collect();
            chunk.sort_by(f64::total_cmp);
            median(&chunk)
        })
        .collect()
}

fn nearest_rank(sorted: &[f64], q: u32) -> f64 {
    let rank = ((q as usize * sorted.len()).div_ceil(100)).max(1);
    sorted[rank - 1]
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => sorted[n / 2],
        n => (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0,
    }
}

/// Average ranks, ties sharing the mean rank.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0;
        for &k in &idx[i..=j] {
            out[k] = r;
        }
        i = j + 1;
    }
    out
}

/// Spearman correlation of `values` against their positions.
pub fn spearman(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let n = values.len() as f64;
    let rv = ranks(values);
    let mean = (n - 1.0) / 2.0;
    let (mut cov, mut var_x, mut var_y) = (0.0, 0.0, 0.0);
    for (i, r) in rv.iter().enumerate() {
        let dx = i as f64 - mean;
        let dy = r - mean;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if var_y == 0.0 {
        return 0.0;
    }
    cov / (var_x * var_y).sqrt()
}

/// Radicands `d <= N` with `N(ε_d) = −1` by two routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativePellReport {
    pub n: u64,
    /// From norm `−1` progressions.
    pub progression_route: Vec<u64>,
    /// From odd period length.
    pub cf_route: Vec<u64>,
    /// Radicands of the progression route reached by pairs with `y <= y_max`.
    pub from_small_pairs: usize,
}

impl NegativePellReport {
    pub fn agree(&self) -> bool {
        self.progression_route == self.cf_route
    }
}

/// Largest `y` enumerated directly on the progression route.
pub const NEGATIVE_PELL_Y_MAX: u64 = 1000;

pub fn negative_pell(n: u64) -> Result<NegativePellReport> {
    negative_pell_with(n, NEGATIVE_PELL_Y_MAX)
}

/// Progression route: walk every norm `−1` progression with `y <= y_max`,
/// then, for each remaining square-free `d`, read the pair off the unit's
/// coordinates and confirm `d` is the radicand at its index.
pub fn negative_pell_with(n: u64, y_max: u64) -> Result<NegativePellReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("negative Pell survey needs N >= 2, got {n}")));
    }
    let mu = BigInt::from(-1);
    let limit = BigInt::from(n);
    let mut pairs = index_pairs(&mu, 0, y_max)?;
    pairs.extend(index_pairs(&mu, 1, y_max)?);
    let walked: Vec<Result<Vec<u64>>> = pairs.par_iter().map(|pair| walk_pair(pair, &limit)).collect();
    let mut found = BTreeSet::new();
    for w in walked {
        found.extend(w?);
    }
    let from_small_pairs = found.len();

    let squarefree: Vec<u64> = (2..=n)
        .filter(|&d| arith::is_squarefree(&BigInt::from(d)).unwrap_or(false))
        .collect();
    let located: Vec<Result<Option<u64>>> = squarefree
        .par_iter()
        .filter(|d| !found.contains(d))
        .map(|&d| locate_by_unit(d))
        .collect();
    for r in located {
        if let Some(d) = r? {
            found.insert(d);
        }
    }
    let cf_route = squarefree
        .par_iter()
        .filter(|&&d| regulator_fast(d).is_some_and(|(l, _)| l % 2 == 1))
        .copied()
        .collect();
    Ok(NegativePellReport { n, progression_route: found.into_iter().collect(), cf_route, from_small_pairs })
}

/// Square-free radicands `<= limit` at the admissible `n >= 0` of one pair.
fn walk_pair(pair: &IndexPair, limit: &BigInt) -> Result<Vec<u64>> {
    let n0 = match solve_n0(pair) {
        Ok(n0) => n0,
        Err(Error::EmptyProgression { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let step = pair.n_step();
    let mut out = Vec::new();
    let mut n = n0;
    loop {
        let Some(d) = pair.radicand_at(&n) else {
            return Err(Error::Internal(format!("non-integral radicand at n = {n} for {pair:?}")));
        };
        if &d > limit {
            break;
        }
        if d >= BigInt::from(2) && arith::is_squarefree(&d)? {
            out.push(d.to_u64().expect("below limit"));
        }
        n += &step;
    }
    Ok(out)
}

/// `Some(d)` when `ε_d` has norm −1 and `d` is the radicand of the pair
/// read off `ε_d = (s + y√d)/2^j`.
fn locate_by_unit(d: u64) -> Result<Option<u64>> {
    let ctx = FieldContext::new_unchecked(d);
    let eps = fundamental_unit(&ctx);
    if eps.norm() != BigInt::from(-1) {
        return Ok(None);
    }
    let surd = eps.to_surd();
    let (j, s, y) = if surd.w.is_one() {
        (0u8, surd.u.clone(), surd.v.clone())
    } else {
        (1u8, surd.u.clone(), surd.v.clone())
    };
    let (x, n) = if j == 0 {
        let (n, x) = s.div_mod_floor(&y);
        (x, n)
    } else {
        // s = (2n + 1)y + 2x
        let half: BigInt = (&s - &y) / 2;
        let (n, x) = half.div_mod_floor(&y);
        (x, n)
    };
    let pair = IndexPair::new(-1, j, y, x)?;
    match pair.radicand_at(&n) {
        Some(r) if r == BigInt::from(d) => Ok(Some(d)),
        _ => Err(Error::Internal(format!("unit of {d} does not sit in its own progression"))),
    }
}
