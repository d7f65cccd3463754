use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use quadunit::contfrac::{expand_omega, fundamental_unit_with_period};
use quadunit::ideals::{count_reduced_formula, ideals_of_norm, norm_below_omega};
use quadunit::progressions::{
    build_progression, coverage_report, empirical_density, hensel_quadratic, index_pairs, predicted_density, IndexPair,
};
use quadunit::survey::{self, theorem_bound_sweep, BoundReport, EMuReport};
use quadunit::FieldContext;

use crate::args::{Command, Survey};
use crate::report::{big, bigs, Report};
use crate::{doc, CliError, RunConfig};

pub fn parse_int(field: &str, s: &str) -> Result<BigInt, CliError> {
    BigInt::from_str(s).map_err(|_| CliError::Usage(format!("{field}: expected an integer, got {s:?}")))
}

/// A non-negative decimal such as `1.5` as an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("expected a decimal number, got {s:?}"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let int = if int.is_empty() { BigInt::zero() } else { BigInt::from_str(int).map_err(|_| bad())? };
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let frac = if frac.is_empty() { BigInt::zero() } else { BigInt::from_str(frac).map_err(|_| bad())? };
    let sign = if s.starts_with('-') { -BigInt::one() } else { BigInt::one() };
    Ok(BigRational::new(int * &scale + sign * frac, scale))
}

fn field(d: &str) -> Result<FieldContext, CliError> {
    Ok(FieldContext::new(parse_int("d", d)?)?)
}

fn pair(mu: &str, j: u8, y: &str, x: &str) -> Result<IndexPair, CliError> {
    Ok(IndexPair::new(parse_int("mu", mu)?, j, parse_int("y", y)?, parse_int("x", x)?)?)
}

/// Decimal digits carried by `bits` binary digits.
fn digits_for(bits: u64) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).floor() as usize
}

pub fn dispatch(cfg: &RunConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Cf { d } => cf(d),
        Command::Unit { d } => unit(d, cfg.precision),
        Command::Ideals { d, mu } => ideals(d, mu),
        Command::Progression { mu, j, y, x, scan_limit } => progression(&pair(mu, *j, y, x)?, *scan_limit),
        Command::Pairs { mu, j, y_max } => pairs(mu, *j, *y_max),
        Command::Density { mu, j, y, x, k_max, scan_limit } => {
            density(&pair(mu, *j, y, x)?, *k_max, *scan_limit, cfg.cutoff)
        }
        Command::Coverage { mu, t_max, y_max, k_max, scan_limit } => {
            coverage(&parse_int("mu", mu)?, *t_max, *y_max, *k_max, *scan_limit)
        }
        Command::Hensel { a2, a1, a0, p, m } => {
            let (a2, a1, a0) = (parse_int("a2", a2)?, parse_int("a1", a1)?, parse_int("a0", a0)?);
            let solvable = hensel_quadratic(&a2, &a1, &a0, *p, *m)?;
            Ok(doc! { "a2" => big(&a2), "a1" => big(&a1), "a0" => big(&a0), "p" => *p, "m" => *m, "solvable" => solvable })
        }
        Command::Survey(s) => survey(s),
        Command::Verify { only } => Ok(crate::acceptance::report(&crate::acceptance::run(only, cfg.seed))),
    }
}

fn cf(d: &str) -> Result<Report, CliError> {
    let ctx = field(d)?;
    let exp = expand_omega(&ctx);
    let eps = exp.fundamental_unit();
    Ok(doc! {
        "d" => big(ctx.d()),
        "disc" => big(ctx.disc()),
        "a0" => big(&exp.a0),
        "period" => bigs(&exp.periodic),
        "l" => exp.period(),
        "unit" => eps.to_string(),
        "unit_norm" => big(&eps.norm()),
    })
}

fn unit(d: &str, precision: u64) -> Result<Report, CliError> {
    let ctx = field(d)?;
    let (eps, l) = fundamental_unit_with_period(&ctx);
    let s = eps.to_surd();
    Ok(doc! {
        "d" => big(ctx.d()),
        "unit" => eps.to_string(),
        "u" => big(&s.u),
        "v" => big(&s.v),
        "w" => big(&s.w),
        "norm" => big(&eps.norm()),
        "period" => l,
        "regulator" => eps.ln(),
        "value" => s.to_decimal(digits_for(precision)),
    })
}

fn ideals(d: &str, mu: &str) -> Result<Report, CliError> {
    let ctx = field(d)?;
    let mu = parse_int("mu", mu)?;
    let list = ideals_of_norm(&ctx, &mu)?;
    let rows: Vec<Value> = list
        .iter()
        .map(|i| {
            serde_json::json!({
                "a": big(&i.a),
                "b": big(&i.b),
                "c": big(&i.c),
                "reduced": i.is_reduced(),
                "coprime_to_conjugate": i.coprime_to_conjugate(),
            })
        })
        .collect();
    let reduced = list.iter().filter(|i| i.is_reduced()).count();
    let formula = if norm_below_omega(&ctx, &mu) { big(&count_reduced_formula(&ctx, &mu)?) } else { Value::Null };
    Ok(doc! {
        "d" => big(ctx.d()),
        "mu" => big(&mu),
        "ideals" => rows,
        "reduced" => reduced,
        "formula" => formula,
    })
}

fn progression(p: &IndexPair, scan_limit: u64) -> Result<Report, CliError> {
    let prog = build_progression(p, scan_limit)?;
    let (a2, a1, a0) = prog.coefficients();
    Ok(doc! {
        "mu" => big(&p.mu),
        "j" => p.j,
        "y" => big(&p.y),
        "x" => big(&p.x),
        "n0" => big(&prog.n0),
        "n_t" => big(&prog.n_t),
        "t" => big(&prog.t),
        "s" => big(&prog.s),
        "exceptions" => bigs(&prog.exceptions),
        "coefficients" => bigs([&a2, &a1, &a0]),
        "discriminant" => big(&prog.discriminant()),
    })
}

fn pairs(mu: &str, j: Option<u8>, y_max: u64) -> Result<Report, CliError> {
    let mu = parse_int("mu", mu)?;
    let branches = match j {
        Some(j) => vec![j],
        None => vec![0, 1],
    };
    let mut rows = Vec::new();
    for j in branches {
        for p in index_pairs(&mu, j, y_max)? {
            rows.push(vec![Value::from(j), big(&p.y), big(&p.x)]);
        }
    }
    Ok(Report::Rows { columns: vec!["j", "y", "x"], rows })
}

fn density(p: &IndexPair, k_max: u64, scan_limit: u64, cutoff: u64) -> Result<Report, CliError> {
    let prog = build_progression(p, scan_limit)?;
    let pred = predicted_density(p, cutoff)?;
    let emp = empirical_density(&prog, k_max)?;
    Ok(doc! {
        "mu" => big(&p.mu),
        "j" => p.j,
        "y" => big(&p.y),
        "x" => big(&p.x),
        "t" => big(&prog.t),
        "predicted" => pred.value,
        "omega2" => pred.omega2,
        "cutoff" => pred.cutoff,
        "tail_bound" => pred.tail_bound,
        "empirical" => emp.value(),
        "sampled" => emp.sampled,
        "squarefree" => emp.squarefree,
        "unfactored" => emp.unfactored,
    })
}

fn coverage(mu: &BigInt, t_max: u64, y_max: u64, k_max: u64, scan_limit: u64) -> Result<Report, CliError> {
    let r = coverage_report(mu, t_max, y_max, k_max, scan_limit)?;
    let mut keyed: Vec<(BigInt, Vec<Value>)> = Vec::new();
    for (d, j, y, x, k) in &r.covered {
        keyed.push((d.clone(), vec![big(d), "progression".into(), Value::from(*j), big(y), big(x), big(k)]));
    }
    for (d, j, y, x) in &r.exception_only {
        keyed.push((d.clone(), vec![big(d), "exception".into(), Value::from(*j), big(y), big(x), Value::Null]));
    }
    for d in &r.uncovered {
        keyed.push((d.clone(), vec![big(d), "uncovered".into(), Value::Null, Value::Null, Value::Null, Value::Null]));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let rows = keyed.into_iter().map(|(_, r)| r).collect();
    Ok(Report::Rows { columns: vec!["d", "status", "j", "y", "x", "k"], rows })
}

fn survey(s: &Survey) -> Result<Report, CliError> {
    match s {
        Survey::EMu { mu, limit, per_field } => {
            let mu = parse_int("mu", mu)?;
            let x = parse_decimal(limit)?;
            let r = if *per_field { survey::e_mu_per_field(&mu, &x)? } else { survey::e_mu(&mu, &x)? };
            Ok(e_mu_rows(&r))
        }
        Survey::FMu { mu, limit } => {
            let r = survey::f_mu(&parse_int("mu", mu)?, *limit)?;
            Ok(doc! {
                "mu" => big(&r.mu),
                "n" => r.n,
                "count" => r.count(),
                "ratio" => r.ratio,
                "bound" => r.bound,
            })
        }
        Survey::Pell { limit } => {
            let r = survey::negative_pell(*limit)?;
            if !r.agree() {
                return Err(CliError::Core(quadunit::Error::Internal(
                    "progression and period-parity routes disagree".into(),
                )));
            }
            let rows = r.progression_route.iter().map(|&d| vec![Value::from(d)]).collect();
            Ok(Report::Rows { columns: vec!["d"], rows })
        }
        Survey::Bound { mu, limit, probe, summary } => {
            let r = theorem_bound_sweep(*mu, *limit, *probe)?;
            Ok(if *summary { bound_summary(&r) } else { bound_rows(&r) })
        }
    }
}

pub fn e_mu_rows(r: &EMuReport) -> Report {
    let rows = r
        .records
        .iter()
        .map(|m| {
            vec![
                big(&m.d),
                Value::from(m.xi.to_string()),
                big(&m.trace),
                big(&m.signed_norm),
                Value::from(m.value_approx.clone()),
            ]
        })
        .collect();
    Report::Rows { columns: vec!["d", "xi", "trace", "signed_norm", "value"], rows }
}

pub fn bound_rows(r: &BoundReport) -> Report {
    let rows = r
        .rows
        .iter()
        .map(|b| {
            vec![
                Value::from(b.t),
                Value::from(b.d),
                Value::from(b.disc),
                Value::from(b.log_eps),
                Value::from(b.bound),
                Value::from(b.residual),
                Value::from(b.ramified),
            ]
        })
        .collect();
    Report::Rows { columns: vec!["t", "d", "disc", "log_eps", "bound", "residual", "ramified"], rows }
}

pub fn bound_summary(r: &BoundReport) -> Report {
    let pct: serde_json::Map<String, Value> =
        r.percentiles.iter().map(|(q, v)| (format!("p{q:02}"), Value::from(*v))).collect();
    doc! {
        "mu" => r.mu,
        "t_max" => r.t_max,
        "samples" => r.rows.len(),
        "min_residual" => r.min_residual,
        "min_at_t" => r.min_at_t,
        "percentiles" => pct,
        "probe" => r.probe,
        "violations" => r.violations,
        "violation_fraction" => r.violation_fraction(),
        "bin_medians" => r.bin_medians.clone(),
        "bin_rank_correlation" => r.bin_rank_correlation,
        "ramified_rows" => r.ramified_rows,
        "unramified_rank_correlation" => r.unramified_rank_correlation,
        "ramified_rank_correlation" => r.ramified_rank_correlation,
    }
}
