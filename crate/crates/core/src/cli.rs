//! Command-line front end. `main` only forwards to [`run`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::algebra::{
    appendix_induction_check, char_poly, eisenstein_witness, plr_shape_feasible, EisensteinOutcome,
    InductionOutcome, PlrReport, PlrVerdict, DEFAULT_DEGREE_BOUND,
};
use crate::config::Budgets;
use crate::counting::{build_table_limited, expand_f_limited, g_closed_form, moments, CountTable};
use crate::decomp::{check_bijection, decompose, enumerate_legal, tally_by_count};
use crate::error::{Error, Result};
use crate::params::BinParams;
use crate::real::Real;
use crate::report::VerificationReport;
use crate::sequence::BinSequence;
use crate::stats::{
    constants_with_digits, exact_normality, exact_stats, sample_normality, simulate,
    NormalityThresholds,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Recurrences,
    Bijection,
    Gf,
    Plrs,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "nmbin",
    version,
    about = "(n,m)-bin sequences and their legal decompositions"
)]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Number of bins (command-specific default).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 2019)]
    pub seed: u64,
    /// Working precision in bits; overrides NMBIN_PRECISION.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(16..))]
    pub precision: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Large profile for `simulate`: k = 10000, 100000 samples.
    #[arg(long, global = true)]
    pub full: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree_bound: usize,
    /// Output file. For `simulate` this is the JSON result; the histogram is
    /// written next to it with a `.histogram.csv` suffix.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms with their bin positions.
    Gen {
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Greedy legal decomposition of a nonnegative integer.
    Decompose { z: String },
    /// Table of p_{k,c}, the number of integers in [0, a_{sk}) with c summands.
    Pkc,
    /// Gaussian constants with predicted and exact moments at k.
    Stats,
    /// Monte Carlo sample of summand counts.
    Simulate,
    /// Run verification suites.
    Check {
        #[arg(value_enum, default_value_t = CheckKind::All)]
        which: CheckKind,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 when a check reports
/// violations, 2 on usage or runtime errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return e.exit_code();
        }
    };
    let mut budgets = Budgets::from_env();
    if let Some(bits) = cli.precision {
        budgets.precision_bits = bits as usize;
    }
    match execute(&cli, &budgets, err) {
        Ok(output) => {
            let written = match &cli.output {
                Some(path) if !matches!(cli.command, Command::Simulate) => {
                    std::fs::write(path, &output.text).map_err(|e| e.to_string())
                }
                _ => out
                    .write_all(output.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if output.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn execute(cli: &Cli, budgets: &Budgets, err: &mut dyn Write) -> Result<Output> {
    let params = BinParams::new(cli.n, cli.m)?;
    match &cli.command {
        Command::Gen { count } => cmd_gen(params, *count, cli.format, budgets).map(Output::ok),
        Command::Decompose { z } => cmd_decompose(params, z, cli.format, budgets).map(Output::ok),
        Command::Pkc => cmd_pkc(params, cli.k.unwrap_or(10), cli.format, budgets).map(Output::ok),
        Command::Stats => {
            cmd_stats(params, cli.k.unwrap_or(10_000), cli.format, budgets).map(Output::ok)
        }
        Command::Simulate => cmd_simulate(cli, params, budgets, err).map(Output::ok),
        Command::Check { which } => cmd_check(cli, params, *which, budgets),
    }
}

fn digits_for_bits(bits: usize) -> usize {
    (bits * 1000 / 3322).max(1)
}

/// Terms `a_0 .. a_{count-1}` with their bin positions.
pub fn cmd_gen(params: BinParams, count: u64, format: Format, budgets: &Budgets) -> Result<String> {
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    seq.extend_to(count - 1)?;
    let terms = &seq.terms()[..count as usize];
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows: Vec<_> = terms
                .iter()
                .enumerate()
                .map(|(x, t)| {
                    let loc = params.locate(x as u64);
                    json!({ "x": x, "term": t.to_string(), "bin": loc.k, "sub_bin": loc.sub, "offset": loc.offset })
                })
                .collect();
            out = to_json(&json!({ "params": params, "terms": rows }));
        }
        Format::Csv => {
            out.push_str("x,term,bin,sub_bin,offset\n");
            for (x, t) in terms.iter().enumerate() {
                let loc = params.locate(x as u64);
                let sub = serde_json::to_value(loc.sub).unwrap();
                let _ = writeln!(
                    out,
                    "{x},{t},{},{},{}",
                    loc.k,
                    sub.as_str().unwrap(),
                    loc.offset
                );
            }
        }
        Format::Plain => {
            // one line per bin-pair: n-sub-bin | m-sub-bin
            let s = params.s() as usize;
            for (k, chunk) in terms.chunks(s).enumerate() {
                let join = |v: &[BigUint]| {
                    v.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let split = chunk.len().min(params.n() as usize);
                let _ = write!(out, "B{k}: {}", join(&chunk[..split]));
                if chunk.len() > split {
                    let _ = write!(out, " | {}", join(&chunk[split..]));
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

pub fn cmd_decompose(
    params: BinParams,
    z: &str,
    format: Format,
    budgets: &Budgets,
) -> Result<String> {
    let z_val: BigUint = z
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a nonnegative decimal integer: {z:?}")))?;
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    let d = decompose(&mut seq, &z_val)?;
    let summands: Vec<&BigUint> = d.summands(&seq).collect();
    let mut out = String::new();
    match format {
        Format::Json => {
            let parts: Vec<_> = d
                .indices()
                .iter()
                .zip(&summands)
                .map(|(&x, v)| json!({ "index": x, "summand": v.to_string(), "location": params.locate(x) }))
                .collect();
            out = to_json(&json!({ "params": params, "z": z_val.to_string(), "summands": parts }));
        }
        Format::Csv => {
            out.push_str("index,summand,location\n");
            for (&x, v) in d.indices().iter().zip(&summands) {
                let _ = writeln!(out, "{x},{v},{}", params.locate(x));
            }
        }
        Format::Plain => {
            if summands.is_empty() {
                let _ = writeln!(out, "{z_val} = (empty)");
            } else {
                let sum = summands
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" + ");
                let _ = writeln!(out, "{z_val} = {sum}");
                for (&x, v) in d.indices().iter().zip(&summands) {
                    let _ = writeln!(out, "  a_{x} = {v}  {}", params.locate(x));
                }
            }
        }
    }
    Ok(out)
}

pub fn cmd_pkc(params: BinParams, k: u64, format: Format, budgets: &Budgets) -> Result<String> {
    let table = build_table_limited(params, k, budgets.table_cells)?;
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..=k)
                .map(|k| {
                    table
                        .row(k)
                        .unwrap()
                        .iter()
                        .map(|v| v.to_string())
                        .collect()
                })
                .collect();
            to_json(&json!({ "params": params, "k_max": k, "rows": rows }))
        }
        Format::Plain => {
            let mut out = String::new();
            for k in 0..=k {
                let row: Vec<String> = table
                    .row(k)
                    .unwrap()
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                let _ = writeln!(out, "k={k}: {}", row.join(" "));
            }
            out
        }
    })
}

pub fn cmd_stats(params: BinParams, k: u64, format: Format, budgets: &Budgets) -> Result<String> {
    let digits = digits_for_bits(budgets.precision_bits);
    let record = constants_with_digits(params, digits).at(k).record(digits);
    // exact moments cost O(k) big-integer steps of O(k) bits each
    let exact = if params.s() * k <= budgets.max_terms as u64 {
        let st = exact_stats(params, k)?;
        let normality = exact_normality(params, k, &NormalityThresholds::default())?;
        Some((st, normality.skewness))
    } else {
        None
    };
    let fixed = |r: &BigRational| Real::from_ratio(r, 256).to_fixed(6);
    let mut out = String::new();
    match format {
        Format::Json => {
            let exact_json = exact.as_ref().map(|(st, skew)| {
                json!({
                    "mean": st.mean.to_string(),
                    "variance": st.variance.to_string(),
                    "mean_decimal": fixed(&st.mean),
                    "variance_decimal": fixed(&st.variance),
                    "skewness": skew,
                })
            });
            out = to_json(&json!({ "constants": record, "exact": exact_json }));
        }
        Format::Csv => {
            out.push_str("quantity,value\n");
            let _ = writeln!(out, "beta,{}", record.beta);
            let _ = writeln!(out, "C,{}", record.c);
            let _ = writeln!(out, "C_prime,{}", record.c_prime);
            let _ = writeln!(out, "k,{k}");
            let _ = writeln!(
                out,
                "predicted_mean,{}",
                record.predicted_mean.as_deref().unwrap_or("")
            );
            let _ = writeln!(
                out,
                "predicted_variance,{}",
                record.predicted_variance.as_deref().unwrap_or("")
            );
            if let Some((st, skew)) = &exact {
                let _ = writeln!(out, "exact_mean,{}", fixed(&st.mean));
                let _ = writeln!(out, "exact_variance,{}", fixed(&st.variance));
                let _ = writeln!(out, "exact_skewness,{skew:.6}");
            }
        }
        Format::Plain => {
            let _ = writeln!(out, "params {params}");
            let _ = writeln!(out, "beta = {}", record.beta);
            let _ = writeln!(out, "C    = {}", record.c);
            let _ = writeln!(out, "C'   = {}", record.c_prime);
            let _ = writeln!(out, "k = {k}");
            let _ = writeln!(
                out,
                "predicted mean     = {}",
                record.predicted_mean.as_deref().unwrap_or("")
            );
            let _ = writeln!(
                out,
                "predicted variance = {}",
                record.predicted_variance.as_deref().unwrap_or("")
            );
            match &exact {
                Some((st, skew)) => {
                    let _ = writeln!(out, "exact mean         = {}", fixed(&st.mean));
                    let _ = writeln!(out, "exact variance     = {}", fixed(&st.variance));
                    let _ = writeln!(out, "exact skewness     = {skew:.6}");
                }
                None => {
                    let _ = writeln!(out, "exact moments skipped (s*k exceeds NMBIN_MAX_TERMS)");
                }
            }
        }
    }
    Ok(out)
}

fn histogram_path(json_path: &Path) -> PathBuf {
    let stem = json_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    json_path.with_file_name(format!("{stem}.histogram.csv"))
}

fn cmd_simulate(
    cli: &Cli,
    params: BinParams,
    budgets: &Budgets,
    err: &mut dyn Write,
) -> Result<String> {
    let (k, samples, work_budget) = if cli.full {
        let (k, n) = (cli.k.unwrap_or(10_000), 100_000u64.max(cli.samples));
        (k, n, budgets.simulate_work.max(k * n))
    } else {
        (cli.k.unwrap_or(1000), cli.samples, budgets.simulate_work)
    };
    let work = k as u128 * samples as u128;
    if work > work_budget as u128 {
        return Err(Error::Resource {
            what: "simulation work (k * samples)",
            requested: work,
            limit: work_budget as u128,
        });
    }
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    seq.extend_to(params.s() * k)?;
    let result = simulate(&seq, k, samples, cli.seed, work_budget)?;
    let normality = sample_normality(&result, &NormalityThresholds::default());
    let exact = exact_stats(params, k)?;
    let json_path = cli
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("simulation.json"));
    let csv_path = histogram_path(&json_path);
    let io = |e: std::io::Error| Error::Domain(format!("writing output: {e}"));
    std::fs::write(
        &json_path,
        to_json(&json!({ "result": result, "normality": normality })),
    )
    .map_err(io)?;
    std::fs::write(&csv_path, result.histogram_csv()).map_err(io)?;
    let _ = writeln!(err, "elapsed {:.3} s", result.elapsed);

    let mut out = String::new();
    match cli.format {
        Format::Json => out = to_json(&json!({ "result": result, "normality": normality })),
        Format::Csv => {
            out.push_str("quantity,value\n");
            let _ = writeln!(out, "sample_mean,{:.6}", result.sample_mean);
            let _ = writeln!(out, "sample_variance,{:.6}", result.sample_variance);
            let _ = writeln!(out, "exact_mean,{:.6}", exact.mean_f64());
            let _ = writeln!(out, "exact_variance,{:.6}", exact.variance_f64());
            let _ = writeln!(
                out,
                "ks_statistic,{:.6}",
                normality.ks_statistic.unwrap_or(f64::NAN)
            );
        }
        Format::Plain => {
            let _ = writeln!(
                out,
                "params {params}, k = {k}, samples = {samples}, seed = {}",
                cli.seed
            );
            let _ = writeln!(out, "sample mean     = {:.6}", result.sample_mean);
            let _ = writeln!(out, "sample variance = {:.6}", result.sample_variance);
            let _ = writeln!(out, "exact mean      = {:.6}", exact.mean_f64());
            let _ = writeln!(out, "exact variance  = {:.6}", exact.variance_f64());
            let _ = writeln!(
                out,
                "KS = {:.6} (threshold {:.6}), skewness = {:.6}",
                normality.ks_statistic.unwrap_or(f64::NAN),
                normality.ks_threshold.unwrap_or(f64::NAN),
                normality.skewness
            );
            let _ = writeln!(
                out,
                "wrote {} and {}",
                json_path.display(),
                csv_path.display()
            );
        }
    }
    Ok(out)
}

/// Family identities up to `x_max` and the single recurrence on `[2s, x_max]`.
pub fn check_recurrences(
    params: BinParams,
    x_max: u64,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    let x_max = x_max.max(2 * params.s());
    let mut report = seq.verify_family_recurrences(x_max / params.s())?;
    report.merge(seq.verify_single_recurrence(x_max)?);
    report.check = format!("recurrences {params} x<={x_max}");
    Ok(report)
}

/// Brute-force uniqueness: enumeration hits `[0, a_{sk})` once each, and the
/// tally by summand count matches row `k` of the count table.
pub fn check_uniqueness(
    params: BinParams,
    k: u64,
    budgets: &Budgets,
) -> Result<VerificationReport> {
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    let mut report = check_bijection(&mut seq, k, budgets.enumerate_work)?;
    let all = enumerate_legal(&mut seq, k, budgets.enumerate_work)?;
    let tally = tally_by_count(&all);
    let table = build_table_limited(params, k, budgets.table_cells)?;
    let row = table.row(k).unwrap();
    let width = tally.len().max(row.len());
    for c in 0..width {
        let expected = row.get(c).cloned().unwrap_or_default();
        let actual = BigUint::from(tally.get(c).copied().unwrap_or(0));
        report.expect_eq("tally:p_kc", c as u64, expected.into(), actual.into());
    }
    report.check = format!("bijection {params} k={k}");
    Ok(report)
}

/// Count-table identities up to `k_max`: recurrence table against series
/// expansion, row sums against `a_{sk}`, the moment recurrence against
/// direct sums, and the closed form against row evaluation.
pub fn check_gf(params: BinParams, k_max: u64, budgets: &Budgets) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("gf {params} k<={k_max}"));
    let table = build_table_limited(params, k_max, budgets.table_cells)?;
    let series = expand_f_limited(params, k_max, budgets.table_cells)?;
    compare_tables(&mut report, &table, &series);
    let mut seq = BinSequence::with_limit(params, budgets.max_terms);
    seq.extend_to(params.s() * k_max)?;
    for k in 0..=k_max {
        let sum = table.row_sum(k).unwrap();
        let term = seq.get(params.s() * k).unwrap().clone();
        report.expect_eq("row_sum:a_sk", k, term.into(), sum.into());
    }
    for ms in moments(params, k_max) {
        let direct = table.moments_direct(ms.k).unwrap();
        for (rule, a, b) in [
            ("moment:0", &direct.s, &ms.s),
            ("moment:1", &direct.m, &ms.m),
            ("moment:2", &direct.q, &ms.q),
            ("moment:3", &direct.t, &ms.t),
        ] {
            report.expect_eq(rule, ms.k, a.clone(), b.clone());
        }
    }
    let bits = budgets.precision_bits;
    let tol = Real::from_ratio(
        &BigRational::new(BigInt::from(1), BigInt::from(10).pow(30)),
        bits,
    );
    let ys = ["1/2", "9/10", "1", "11/10", "2"];
    for k in 0..=k_max.min(50) {
        for y in ys {
            let y: BigRational = y.parse().unwrap();
            let exact = Real::from_ratio(&table.eval_row(k, &y).unwrap(), bits);
            let closed = g_closed_form(params, k, &y, bits)?;
            report.checked += 1;
            let rel = (&closed - &exact).abs() / exact.abs();
            if rel > tol {
                report.fail(format!(
                    "closed form at k={k}, y={y}: relative error {}",
                    rel.to_decimal_string(5)
                ));
            }
        }
    }
    Ok(report)
}

fn compare_tables(report: &mut VerificationReport, a: &CountTable, b: &CountTable) {
    for k in 0..=a.k_max() {
        let width = a.row(k).unwrap().len().max(b.row(k).map_or(0, |r| r.len()));
        for c in 0..width as u64 {
            report.expect_eq("table:expand_f", k, b.get(k, c).into(), a.get(k, c).into());
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlrsSummary {
    pub polynomial: String,
    pub eisenstein: EisensteinOutcome,
    pub feasibility: PlrReport,
    pub induction: InductionOutcome,
}

/// Characteristic polynomial, Eisenstein witness, per-degree feasibility and
/// the induction trace. The report fails only if a returned witness does not
/// reproduce its product or violates the sign pattern.
pub fn check_plrs(
    params: BinParams,
    degree_bound: usize,
    budgets: &Budgets,
) -> Result<(VerificationReport, PlrsSummary)> {
    let poly = char_poly(params);
    let prime_bound = poly
        .coeffs()
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    let prime_bound = prime_bound.try_into().unwrap_or(u64::MAX).clamp(2, 1 << 20);
    let eisenstein = eisenstein_witness(&poly, prime_bound);
    let bound = degree_bound.max(poly.degree());
    let feasibility = plr_shape_feasible(&poly, bound, budgets.lp_pivots)?;
    let mut report = VerificationReport::new(format!("plrs {params} d<={bound}"));
    for v in &feasibility.verdicts {
        report.checked += 1;
        if let PlrVerdict::FeasibleReal {
            multiplier,
            product,
            margin,
            ..
        } = &v.verdict
        {
            let recomputed = crate::algebra::multiply_rational(multiplier, &poly);
            let leading_ok = product
                .last()
                .is_some_and(|c| *c == BigRational::from_integer(1.into()));
            let signs_ok = product[..product.len() - 1]
                .iter()
                .all(|c| *c <= -margin.clone());
            if recomputed != *product || !leading_ok || !signs_ok || product.len() != v.degree + 1 {
                report.fail(format!("invalid witness at degree {}", v.degree));
            }
            if margin < &BigRational::zero() {
                report.fail(format!("negative margin at degree {}", v.degree));
            }
        }
    }
    let summary = PlrsSummary {
        polynomial: poly.to_string(),
        eisenstein,
        feasibility,
        induction: appendix_induction_check(params),
    };
    Ok((report, summary))
}

fn plrs_plain(summary: &PlrsSummary, out: &mut String) {
    let _ = writeln!(out, "characteristic polynomial: {}", summary.polynomial);
    match &summary.eisenstein {
        EisensteinOutcome::Witness { prime } => {
            let _ = writeln!(out, "Eisenstein witness: {prime} (irreducible over Q)");
        }
        EisensteinOutcome::NoWitness { prime_bound } => {
            let _ = writeln!(out, "Eisenstein witness: none up to {prime_bound}");
        }
        EisensteinOutcome::NotApplicable => {
            let _ = writeln!(out, "Eisenstein witness: not applicable");
        }
    }
    let mut infeasible = Vec::new();
    for v in &summary.feasibility.verdicts {
        match &v.verdict {
            PlrVerdict::Infeasible => infeasible.push(v.degree),
            PlrVerdict::FeasibleReal {
                multiplier,
                strict,
                margin,
                ..
            } => {
                let q: Vec<String> = multiplier.iter().map(|c| c.to_string()).collect();
                let kind = if *strict { "strict" } else { "boundary only" };
                let _ = writeln!(
                    out,
                    "degree {}: feasible over the reals ({kind}, margin {margin}), q = [{}]",
                    v.degree,
                    q.join(", ")
                );
            }
        }
    }
    if infeasible.len() == summary.feasibility.verdicts.len() {
        let first = summary.feasibility.verdicts.first().map_or(0, |v| v.degree);
        let _ = writeln!(
            out,
            "degrees {first}..{}: infeasible",
            summary.feasibility.degree_bound
        );
    } else if !infeasible.is_empty() {
        let list: Vec<String> = infeasible.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "infeasible at degrees: {}", list.join(" "));
    }
    match &summary.induction {
        InductionOutcome::Proved { s, p, .. } => {
            let _ = writeln!(out, "induction (s={s}, p={p}): applies");
        }
        InductionOutcome::DoesNotApply {
            s, p, failed_step, ..
        } => {
            let _ = writeln!(
                out,
                "induction (s={s}, p={p}): does not apply ({failed_step} fails)"
            );
        }
    }
    for step in summary.induction.steps() {
        let mark = if step.holds { "ok" } else { "FAILS" };
        let _ = writeln!(out, "  {}: requires {} [{mark}]", step.name, step.requires);
        for line in &step.derivation {
            let _ = writeln!(out, "    {line}");
        }
    }
}

fn cmd_check(cli: &Cli, params: BinParams, which: CheckKind, budgets: &Budgets) -> Result<Output> {
    let wants = |kind: CheckKind| which == kind || which == CheckKind::All;
    let mut reports = Vec::new();
    let mut plrs = None;
    if wants(CheckKind::Recurrences) {
        let x_max = cli.k.map_or(2000, |k| k * params.s());
        reports.push(check_recurrences(params, x_max, budgets)?);
    }
    if wants(CheckKind::Bijection) {
        reports.push(check_uniqueness(params, cli.k.unwrap_or(4), budgets)?);
    }
    if wants(CheckKind::Gf) {
        reports.push(check_gf(params, cli.k.unwrap_or(30), budgets)?);
    }
    if wants(CheckKind::Plrs) {
        let (report, summary) = check_plrs(params, cli.degree_bound, budgets)?;
        reports.push(report);
        plrs = Some(summary);
    }
    let passed = reports.iter().all(|r| r.passed());
    let mut out = String::new();
    match cli.format {
        Format::Json => {
            out = to_json(&json!({ "passed": passed, "reports": reports, "plrs": plrs }))
        }
        Format::Csv => {
            out.push_str("check,checked,violations,passed\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.check,
                    r.checked,
                    r.violations.len() + r.notes.len(),
                    r.passed()
                );
            }
        }
        Format::Plain => {
            for r in &reports {
                let _ = writeln!(out, "{r}");
                for v in r.violations.iter().take(20) {
                    let _ = writeln!(
                        out,
                        "  {} at {}: expected {}, got {}",
                        v.rule, v.index, v.expected, v.actual
                    );
                }
                for note in r.notes.iter().take(20) {
                    let _ = writeln!(out, "  {note}");
                }
            }
            if let Some(summary) = &plrs {
                plrs_plain(summary, &mut out);
            }
        }
    }
    Ok(Output { text: out, passed })
}
