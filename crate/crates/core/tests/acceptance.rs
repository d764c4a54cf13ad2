//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use nmbin::algebra::{
    appendix_induction_check, eisenstein_witness, plr_shape_feasible, IntPolynomial,
};
use nmbin::cli::{check_gf, check_recurrences, check_uniqueness, cmd_gen, Format};
use nmbin::counting::build_table;
use nmbin::stats::{constants, exact_stats, sample_normality, simulate, NormalityThresholds};
use nmbin::{decompose, BinParams, BinSequence, Budgets, Real};

// tolerances
const PREDICTED_TOL: f64 = 1e-6;
const MEAN_OFFSET_MAX: f64 = 2.0;
const VARIANCE_OFFSET_MAX: f64 = 5.0;
const CLOSED_FORM_REL_TOL_EXP: u32 = 30;
const CLOSED_FORM_BITS: usize = 200;
const MC_MEAN_SIGMAS: f64 = 5.0;
const KS_COEFFICIENT: f64 = 1.63;
const KS_SAFETY: f64 = 3.0;
const SKEW_DECAY_RATIO: f64 = 0.6;
const MC_SEED: u64 = 2019;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn bp(n: u64, m: u64) -> BinParams {
    BinParams::new(n, m).unwrap()
}

fn grid() -> impl Iterator<Item = BinParams> {
    (1..=5).flat_map(|n| (1..=5).map(move |m| bp(n, m)))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_sequence() -> Outcome {
    let listed: Vec<u64> = vec![
        1, 2, 3, 4, 5, 6, 9, 12, 18, 24, 30, 42, 54, 84, 114, 144, 198, 252, 396, 540, 684, 936,
        1188, 1872, 2556,
    ];
    let csv = cmd_gen(bp(2, 3), 25, Format::Csv, &Budgets::default()).map_err(|e| e.to_string())?;
    let got: Vec<u64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    ensure(got == listed, || format!("got {got:?}"))?;
    Ok("25 terms match".into())
}

fn c2_decomposition() -> Outcome {
    let mut seq = BinSequence::new(bp(2, 3));
    let d = decompose(&mut seq, &BigUint::from(2018u32)).map_err(|e| e.to_string())?;
    let summands: Vec<u64> = d.summands(&seq).map(|v| v.to_u64().unwrap()).collect();
    ensure(summands == [1872, 144, 2], || format!("got {summands:?}"))?;
    ensure(d.is_legal(), || "not legal".into())?;
    Ok("2018 = 1872 + 144 + 2".into())
}

fn c3_recurrences() -> Outcome {
    let budgets = Budgets::default();
    let mut checked = 0;
    for params in grid() {
        let r = check_recurrences(params, 2000, &budgets).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        checked += r.checked;
    }
    Ok(format!("{checked} identities over 25 parameter pairs"))
}

fn c4_uniqueness() -> Outcome {
    let budgets = Budgets::default();
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)] {
        for k in 1..=4 {
            let r = check_uniqueness(bp(n, m), k, &budgets).map_err(|e| e.to_string())?;
            ensure(r.passed(), || r.to_string())?;
        }
        let params = bp(n, m);
        let table = build_table(params, 200).map_err(|e| e.to_string())?;
        let mut seq = BinSequence::new(params);
        for k in 0..=200 {
            let term = seq.term(params.s() * k).map_err(|e| e.to_string())?.clone();
            ensure(table.row_sum(k).unwrap() == term, || {
                format!("{params} row sum at k={k}")
            })?;
        }
    }
    Ok("bijections for k<=4, row sums for k<=200".into())
}

fn c5_generating_function() -> Outcome {
    let budgets = Budgets {
        precision_bits: CLOSED_FORM_BITS,
        ..Budgets::default()
    };
    assert_eq!(
        CLOSED_FORM_REL_TOL_EXP, 30,
        "check_gf pins a relative tolerance of 1e-30"
    );
    let mut checked = 0;
    for params in grid() {
        // table/series equality for k <= 30, closed form for k <= 50
        let r = check_gf(params, 30, &budgets).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
        checked += r.checked;
        let table = build_table(params, 50).unwrap();
        let tol = Real::from_ratio(
            &BigRational::new(
                1.into(),
                num_bigint::BigInt::from(10).pow(CLOSED_FORM_REL_TOL_EXP),
            ),
            CLOSED_FORM_BITS,
        );
        for k in 31..=50 {
            for y in ["1/2", "9/10", "1", "11/10", "2"] {
                let y: BigRational = y.parse().unwrap();
                let exact = Real::from_ratio(&table.eval_row(k, &y).unwrap(), CLOSED_FORM_BITS);
                let closed =
                    nmbin::counting::g_closed_form(params, k, &y, CLOSED_FORM_BITS).unwrap();
                ensure((&closed - &exact).abs() / exact.abs() <= tol, || {
                    format!("{params} k={k} y={y}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} table, series and closed-form comparisons"
    ))
}

fn c6_predicted_constants() -> Outcome {
    let rows = [
        ((1, 2), 6464.466094, 1767.766953),
        ((2, 1), 6464.466094, 1767.766953),
        ((2, 3), 7113.248654, 1443.375673),
        ((3, 2), 7113.248654, 1443.375673),
    ];
    for ((n, m), mean, var) in rows {
        let g = constants(bp(n, m)).at(10_000);
        let pm = g.predicted_mean().unwrap().to_f64();
        let pv = g.predicted_variance().unwrap().to_f64();
        // reference values carry six decimals
        ensure((pm - mean).abs() <= PREDICTED_TOL + 5e-7, || {
            format!("({n},{m}) mean {pm}")
        })?;
        ensure((pv - var).abs() <= PREDICTED_TOL + 5e-7, || {
            format!("({n},{m}) variance {pv}")
        })?;
        let rec = g.record(20);
        ensure(
            rec.predicted_mean.as_deref() == Some(&format!("{mean:.6}")[..]),
            || format!("{rec:?}"),
        )?;
        ensure(
            rec.predicted_variance.as_deref() == Some(&format!("{var:.6}")[..]),
            || format!("{rec:?}"),
        )?;
    }
    Ok("eight predicted values reproduced".into())
}

fn c7_exact_vs_asymptotic() -> Outcome {
    let mut worst: (f64, f64) = (0.0, 0.0);
    for (n, m) in [(1, 2), (2, 1), (2, 3), (3, 2)] {
        let params = bp(n, m);
        let st = exact_stats(params, 10_000).map_err(|e| e.to_string())?;
        let g = constants(params).at(10_000);
        let dm = (st.mean_real() - g.predicted_mean().unwrap())
            .to_f64()
            .abs();
        let dv = (st.variance_real() - g.predicted_variance().unwrap())
            .to_f64()
            .abs();
        ensure(dm < MEAN_OFFSET_MAX, || {
            format!("({n},{m}) mean offset {dm}")
        })?;
        ensure(dv < VARIANCE_OFFSET_MAX, || {
            format!("({n},{m}) variance offset {dv}")
        })?;
        worst = (worst.0.max(dm), worst.1.max(dv));
    }
    Ok(format!(
        "max |mean - Ck| = {:.4}, max |var - C'k| = {:.4}",
        worst.0, worst.1
    ))
}

fn c8_monte_carlo() -> Outcome {
    let params = bp(1, 2);
    let (k, n) = (1000u64, 10_000u64);
    let mut seq = BinSequence::new(params);
    seq.extend_to(params.s() * k).unwrap();
    let result = simulate(&seq, k, n, MC_SEED, u64::MAX).map_err(|e| e.to_string())?;
    let exact = exact_stats(params, k).unwrap();
    let bound = MC_MEAN_SIGMAS * (exact.variance_f64() / n as f64).sqrt();
    let dm = (result.sample_mean - exact.mean_f64()).abs();
    ensure(dm <= bound, || format!("mean deviation {dm} > {bound}"))?;
    let th = NormalityThresholds {
        ks_coefficient: KS_COEFFICIENT,
        ks_safety: KS_SAFETY,
        ..NormalityThresholds::default()
    };
    let report = sample_normality(&result, &th);
    let ks = report.ks_statistic.unwrap();
    let ks_bound = KS_SAFETY * KS_COEFFICIENT / (n as f64).sqrt();
    ensure(ks < ks_bound, || format!("KS {ks} >= {ks_bound}"))?;
    Ok(format!(
        "|mean diff| = {dm:.4} <= {bound:.4}, KS = {ks:.5} < {ks_bound:.5}"
    ))
}

fn c9_normality_trend() -> Outcome {
    let mut parts = Vec::new();
    for (n, m) in [(1, 1), (2, 3)] {
        let s100 = exact_stats(bp(n, m), 100).unwrap().skewness().abs();
        let s400 = exact_stats(bp(n, m), 400).unwrap().skewness().abs();
        ensure(s400 < SKEW_DECAY_RATIO * s100, || {
            format!("({n},{m}) {s400} vs {s100}")
        })?;
        parts.push(format!("({n},{m}) ratio {:.3}", s400 / s100));
    }
    Ok(parts.join(", "))
}

fn c10_polynomial() -> Outcome {
    let poly = IntPolynomial::from_i64(&[2, 0, 0, -4, 0, 0, 1]).unwrap();
    let w = eisenstein_witness(&poly, 100).prime();
    ensure(w == Some(2), || format!("witness {w:?}"))?;
    let report =
        plr_shape_feasible(&poly, 30, Budgets::default().lp_pivots).map_err(|e| e.to_string())?;
    let degrees: Vec<usize> = report.verdicts.iter().map(|v| v.degree).collect();
    ensure(degrees == (6..=30).collect::<Vec<_>>(), || {
        format!("degrees {degrees:?}")
    })?;
    ensure(report.all_infeasible(), || "a degree was feasible".into())?;
    ensure(appendix_induction_check(bp(1, 2)).applies(), || {
        "(3,2) trace failed".into()
    })?;
    ensure(!appendix_induction_check(bp(2, 3)).applies(), || {
        "(5,6) trace applied".into()
    })?;
    Ok("witness 2, infeasible at degrees 6..30, induction (3,2) yes / (5,6) no".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("sequence fidelity", c1_sequence, Duration::from_secs(1)),
        (
            "decomposition fidelity",
            c2_decomposition,
            Duration::from_secs(1),
        ),
        ("recurrence suite", c3_recurrences, Duration::from_secs(30)),
        ("uniqueness oracle", c4_uniqueness, Duration::from_secs(60)),
        (
            "generating function",
            c5_generating_function,
            Duration::from_secs(60),
        ),
        (
            "predicted constants",
            c6_predicted_constants,
            Duration::from_secs(1),
        ),
        (
            "exact vs asymptotic",
            c7_exact_vs_asymptotic,
            Duration::from_secs(60),
        ),
        (
            "Monte Carlo desk profile",
            c8_monte_carlo,
            Duration::from_secs(300),
        ),
        (
            "normality trend",
            c9_normality_trend,
            Duration::from_secs(60),
        ),
        (
            "polynomial falsification",
            c10_polynomial,
            Duration::from_secs(60),
        ),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, target)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > *target {
            outcome = Err(format!("runtime {:.2}s over target", elapsed.as_secs_f64()));
        }
        let timing = format!(
            "{:.2}s, target {}s",
            elapsed.as_secs_f64(),
            target.as_secs()
        );
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({timing})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name}: {why} ({timing})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
