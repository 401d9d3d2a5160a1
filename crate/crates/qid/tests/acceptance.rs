//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p qid --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qid_core::deriv::{deriv_term, eval_term, parse_term, BoundPoch, Term};
use qid_core::formal::LaurentSeriesQ;
use qid_core::harness::{verify_formal, Aggregate, SampleStatus, VerificationReport};
use qid_core::qcore::{poch_finite, ComplexHP, NumericContext, PochIndex};
use qid_core::registry::{self, FormalCase, Mode, Side, SideValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SUITE_LIMIT: Duration = Duration::from_secs(300);
const TOL_LOG10: f64 = -30.0;
const MIN_SHRINK: f64 = 10.0;

type Outcome = Result<String, String>;

fn qid(args: &[&str]) -> (i32, String, Duration) {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_qid"))
        .args(args)
        .output()
        .expect("qid runs");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.is_empty() || out.status.code() != Some(0),
        "unexpected stderr: {stderr}"
    );
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8"),
        started.elapsed(),
    )
}

fn json_report(digits: u32) -> (i32, Value, Duration) {
    let digits = digits.to_string();
    let (code, out, took) = qid(&["report", "--all", "--format", "json", "--digits", &digits]);
    (code, serde_json::from_str(&out).expect("report is JSON"), took)
}

/// log10 of a printed discrepancy; an exact zero sits at the resolution
/// floor of the working precision.
fn log10_of(text: &str, floor: f64) -> f64 {
    if text == "0" {
        return floor;
    }
    let (m, e) = text.split_once('e').unwrap_or((text, "0"));
    let m: f64 = m.parse().expect("mantissa");
    let e: f64 = e.parse().expect("exponent");
    (m.log10() + e).max(floor)
}

fn formal_side(id: &str, side: Side, mode: Mode, case: &FormalCase) -> LaurentSeriesQ {
    match registry::evaluate_side(
        id,
        side,
        &case.params,
        mode,
        &NumericContext::default(),
        case.order,
    )
    .unwrap()
    {
        SideValue::Formal(s) => s,
        SideValue::Numeric(_) => unreachable!(),
    }
}

fn int_coeffs(s: &LaurentSeriesQ, to: i64) -> Vec<i64> {
    s.int_coeffs(0, to).expect("integer coefficients")
}

fn all_pass(r: &VerificationReport) -> bool {
    r.aggregate == Aggregate::Pass && r.samples.iter().all(|s| s.status == SampleStatus::Pass)
}

fn max_param(r: &VerificationReport, name: &str) -> i64 {
    r.samples
        .iter()
        .filter_map(|s| s.params.get(name)?.parse().ok())
        .max()
        .unwrap_or(-1)
}

fn criterion_1(report60: &(i32, Value, Duration)) -> Outcome {
    let (code, json, took) = report60;
    let reports = json["reports"].as_array().ok_or("no reports")?;
    let ids: std::collections::BTreeSet<&str> =
        reports.iter().filter_map(|r| r["identity"].as_str()).collect();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !matches!(r["aggregate"].as_str(), Some("PASS" | "EXPECTED-FAIL-CONFIRMED")))
        .map(|r| format!("{} {}", r["identity"], r["aggregate"]))
        .collect();
    if *code != 0 || !bad.is_empty() || ids.len() != 48 || *took >= SUITE_LIMIT {
        return Err(format!(
            "exit {code}, {} records, {:.1}s, not passing: {bad:?}",
            ids.len(),
            took.as_secs_f64()
        ));
    }
    Ok(format!(
        "48 records, {} reports, exit 0 in {:.1}s",
        reports.len(),
        took.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let dx = verify_formal("qbinom-dx-at-qm", 100).map_err(|e| e.to_string())?;
    let thm = verify_formal("qbinom-thm", 100).map_err(|e| e.to_string())?;
    let (n_dx, n_thm) = (max_param(&dx, "n"), max_param(&thm, "n"));
    if !all_pass(&dx) || !all_pass(&thm) || n_dx < 12 || n_thm < 20 {
        return Err(format!(
            "qbinom-dx-at-qm {} up to n={n_dx}; qbinom-thm {} up to n={n_thm}",
            dx.aggregate, thm.aggregate
        ));
    }
    Ok(format!(
        "qbinom-dx-at-qm exact for n <= {n_dx} ({} cases), qbinom-thm exact for n <= {n_thm} ({} cases)",
        dx.samples.len(),
        thm.samples.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for (id, order) in [
        ("eisenstein", 100),
        ("rogers-ramanujan", 100),
        ("quintuple-dx", 60),
    ] {
        let r = verify_formal(id, order).map_err(|e| e.to_string())?;
        if !all_pass(&r) {
            return Err(format!("{id} at order {order}: {}", r.aggregate));
        }
        notes.push(format!("{id} to q^{order}"));
    }
    let record = registry::lookup("eisenstein").unwrap();
    let case = &(record.formal_spec(Mode::Formal).unwrap().cases)(100)[0];
    let e = int_coeffs(&formal_side("eisenstein", Side::Lhs, Mode::Formal, case), 3);
    if e != [0, -1, -1, 1] {
        return Err(format!("eisenstein LHS starts {e:?}"));
    }
    let record = registry::lookup("rogers-ramanujan").unwrap();
    let case = &(record.formal_spec(Mode::Formal).unwrap().cases)(100)[0];
    let rr = int_coeffs(&formal_side("rogers-ramanujan", Side::Lhs, Mode::Formal, case), 6);
    if rr != [1, 1, 1, 1, 2, 2, 3] {
        return Err(format!("Rogers-Ramanujan LHS starts {rr:?}"));
    }
    Ok(format!(
        "{}; eisenstein LHS -q-q^2+q^3+..., RR 1,1,1,1,2,2,3",
        notes.join(", ")
    ))
}

fn criterion_4() -> Outcome {
    let record = registry::lookup("rr-finite").unwrap();
    let mode = record.formal_mode().unwrap();
    let cases = (record.formal_spec(mode).unwrap().cases)(100);
    let n1 = cases
        .iter()
        .find(|c| c.params.int("n").ok() == Some(1))
        .ok_or("no n = 1 case")?;
    let (l, r) = (
        formal_side("rr-finite", Side::Lhs, mode, n1),
        formal_side("rr-finite", Side::Rhs, mode, n1),
    );
    let to = n1.order;
    let (lc, rc) = (int_coeffs(&l, to), int_coeffs(&r, to));
    let ratio = l.checked_div(&r).map_err(|e| e.to_string())?;
    let qc = int_coeffs(&ratio, 1);
    let pad = |mut v: Vec<i64>, k: usize| {
        v.resize(k, 0);
        v
    };
    if pad(lc.clone(), 4) != [1, 1, -1, -1] || pad(rc.clone(), 3) != [1, 2, 1] || qc != [1, -1] {
        return Err(format!("n=1: LHS {lc:?}, RHS {rc:?}, ratio {qc:?}"));
    }
    let expected = verify_formal("rr-finite", 100).map_err(|e| e.to_string())?;
    let corrected = verify_formal("rr-finite-corrected", 100).map_err(|e| e.to_string())?;
    let n_max = max_param(&corrected, "n");
    if expected.aggregate != Aggregate::ExpectedFailConfirmed || !all_pass(&corrected) || n_max < 8 {
        return Err(format!(
            "rr-finite {}, rr-finite-corrected {} up to n={n_max}",
            expected.aggregate, corrected.aggregate
        ));
    }
    Ok(format!(
        "n=1 LHS 1+q-q^2-q^3, RHS (1+q)^2, ratio 1-q; printed form {}; corrected exact for n <= {n_max}",
        expected.aggregate
    ))
}

fn polar(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn regular_term(rng: &mut ChaCha8Rng, bits: usize) -> (Term, ComplexHP, ComplexHP) {
    loop {
        let (q, x) = (polar(rng, 0.1, 0.7), polar(rng, 0.3, 0.9));
        let factors: Vec<(Complex64, i64, i32)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (
                    polar(rng, 0.2, 1.5),
                    rng.gen_range(-3..=6),
                    if rng.gen_bool(0.5) { 1 } else { -1 },
                )
            })
            .collect();
        // keep every factor 1 - alpha x q^k away from zero
        let near = factors.iter().any(|&(a, n, _)| {
            let ks: Vec<i32> = if n >= 0 {
                (0..n as i32).collect()
            } else {
                (n as i32..0).collect()
            };
            ks.into_iter().any(|k| (1.0 - a * x * q.powi(k)).norm() < 0.1)
        });
        if near {
            continue;
        }
        let term = Term {
            coeff: ComplexHP::from_c64(polar(rng, 0.5, 2.0), bits),
            power: rng.gen_range(0..=3),
            factors: factors
                .into_iter()
                .map(|(a, n, eps)| BoundPoch {
                    alpha: ComplexHP::from_c64(a, bits),
                    n: PochIndex::Finite(n),
                    eps,
                })
                .collect(),
        };
        return (term, ComplexHP::from_c64(x, bits), ComplexHP::from_c64(q, bits));
    }
}

fn criterion_5() -> Outcome {
    let ctx = NumericContext::default();
    let bits = ctx.bits();
    let h_log10 = -(ctx.digits as f64 / 3.0).floor();
    let h = ComplexHP::parse(&format!("1e{h_log10}"), bits).unwrap();
    let bound = 3.0 + 2.0 * h_log10;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..100 {
        let (t, x, q) = regular_term(&mut rng, bits);
        let f = |z: &ComplexHP| eval_term(&t, z, &q, &ctx).unwrap();
        let (fp, f0, fm) = (f(&(&x + &h)), f(&x), f(&(&x - &h)));
        let d1 = (&fp - &fm).checked_div(&h.scale_i64(2)).unwrap();
        let d2 = (&(&fp - &f0.scale_i64(2)) + &fm).checked_div(&(&h * &h)).unwrap();
        for (order, fd) in [(1u8, d1), (2, d2)] {
            let d = deriv_term(&t, &x, &q, &ctx, order).map_err(|e| e.to_string())?;
            // relative to the term itself where the derivative vanishes
            let err = (&d - &fd).log10_abs() - fd.log10_abs().max(f0.log10_abs());
            worst = worst.max(err);
            if err >= bound {
                return Err(format!(
                    "point {i}, order {order}: relative error 10^{err:.1} >= 10^{bound}"
                ));
            }
        }
    }
    let one = ComplexHP::one(bits);
    let q = ComplexHP::from_f64(0.4, 0.3, bits);
    for n in 1..=10 {
        let t = parse_term(&format!("poch(x)_{n}"))
            .unwrap()
            .bind(0, &one, &q, &ctx)
            .unwrap();
        let d = deriv_term(&t, &one, &q, &ctx, 1).map_err(|e| e.to_string())?;
        let want = -poch_finite(&q, &q, n - 1, &ctx).unwrap();
        let err = (&d - &want).log10_abs() - want.log10_abs();
        if err > -(ctx.digits as f64) {
            return Err(format!("D(x;q)_{n} at x=1 off by 10^{err:.1}"));
        }
    }
    Ok(format!(
        "100 points, orders 1 and 2, worst relative error 10^{worst:.1} < 10^{bound}; D(x;q)_n(1) = -(q;q)_(n-1) for n <= 10"
    ))
}

fn criterion_6() -> Outcome {
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs/phi10.dcheck");
    let (code, out, _) = qid(&[
        "dcheck",
        "--spec",
        spec.to_str().unwrap(),
        "--points",
        "5",
        "--format",
        "json",
    ]);
    let json: Value = serde_json::from_str(&out).map_err(|e| format!("exit {code}: {e}"))?;
    let samples = json["samples"].as_array().ok_or("no samples")?;
    let mut per_m: BTreeMap<String, usize> = BTreeMap::new();
    let mut worst = f64::NEG_INFINITY;
    for s in samples {
        let d = log10_of(
            s["discrepancy"].as_str().ok_or("missing discrepancy")?,
            f64::NEG_INFINITY,
        );
        worst = worst.max(d);
        *per_m
            .entry(s["params"]["m"].as_str().unwrap_or("?").to_string())
            .or_default() += 1;
    }
    let counts_ok = (0..=3).all(|m| per_m.get(&m.to_string()) == Some(&5));
    if code != 0 || !counts_ok || worst >= TOL_LOG10 {
        return Err(format!(
            "exit {code}, points per m {per_m:?}, worst 10^{worst:.1}"
        ));
    }
    Ok(format!(
        "1phi0 spec, m = 0..3 at 5 points each, worst discrepancy 10^{worst:.1} < 1e-30"
    ))
}

fn criterion_7(report60: &(i32, Value, Duration)) -> Outcome {
    let (_, low, _) = report60;
    let (code, high, _) = json_report(120);
    let floors = [NumericContext::default().working_digits(), {
        let c = NumericContext {
            digits: 120,
            ..NumericContext::default()
        };
        c.working_digits()
    }]
    .map(|w| -(w as f64));
    let (lows, highs) = (
        low["reports"].as_array().unwrap(),
        high["reports"].as_array().unwrap(),
    );
    if lows.len() != highs.len() {
        return Err(format!("report counts differ: {} vs {}", lows.len(), highs.len()));
    }
    let mut flips = Vec::new();
    let mut least = f64::INFINITY;
    let mut compared = 0;
    for (a, b) in lows.iter().zip(highs) {
        if (&a["identity"], &a["mode"]) != (&b["identity"], &b["mode"]) {
            return Err("report order differs".into());
        }
        if a["aggregate"] != b["aggregate"] {
            flips.push(format!(
                "{} {} -> {}",
                a["identity"], a["aggregate"], b["aggregate"]
            ));
        }
        if a["mode"] != "NUMERIC" {
            continue;
        }
        for (sa, sb) in a["samples"]
            .as_array()
            .unwrap()
            .iter()
            .zip(b["samples"].as_array().unwrap())
        {
            if sa["status"] != "PASS" {
                continue;
            }
            if sb["status"] != "PASS" {
                flips.push(format!(
                    "{} sample {} -> {}",
                    a["identity"], sa["index"], sb["status"]
                ));
                continue;
            }
            let da = log10_of(sa["discrepancy"].as_str().unwrap(), floors[0]);
            let db = log10_of(sb["discrepancy"].as_str().unwrap(), floors[1]);
            least = least.min(da - db);
            compared += 1;
        }
    }
    if code != 0 || !flips.is_empty() || least < MIN_SHRINK {
        return Err(format!(
            "exit {code}, flips {flips:?}, least shrink {least:.1} orders"
        ));
    }
    Ok(format!(
        "{compared} numeric samples, every discrepancy shrinks by >= {least:.1} orders, no status flips"
    ))
}

#[test]
fn acceptance() {
    let report60 = json_report(60);
    let results = [
        ("1 full suite", criterion_1(&report60)),
        ("2 exact q-binomial cases", criterion_2()),
        ("3 formal expansions", criterion_3()),
        ("4 finite Rogers-Ramanujan", criterion_4()),
        ("5 derivative engine", criterion_5()),
        ("6 dcheck on 1phi0", criterion_6()),
        ("7 precision scaling", criterion_7(&report60)),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
