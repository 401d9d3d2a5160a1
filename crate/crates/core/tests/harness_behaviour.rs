use num_complex::Complex64;
use qid_core::harness::{
    run_suite, run_suite_with, sample_params, verify_formal, verify_numeric, verify_numeric_at, Aggregate,
    SampleSpec, SampleStatus,
};
use qid_core::qcore::NumericContext;
use qid_core::registry::{
    self, Draw, Expected, IdentityRecord, Mode, NumericSpec, ParamAssignment, ParamValue, Strategy,
};
use qid_core::QError;

fn spec(seed: u64, count: usize) -> SampleSpec {
    SampleSpec {
        seed,
        count,
        strategy: Strategy::Uniform,
    }
}

#[test]
fn sampling_is_reproducible() {
    for record in registry::catalog().iter().filter(|r| r.supports(Mode::Numeric)) {
        let a = sample_params(record, &spec(42, 5)).unwrap();
        let b = sample_params(record, &spec(42, 5)).unwrap();
        let c = sample_params(record, &spec(43, 5)).unwrap();
        assert_eq!(a, b, "{}", record.id);
        assert_ne!(a, c, "{}", record.id);
        let boundary = sample_params(
            record,
            &SampleSpec {
                strategy: Strategy::BoundaryBiased,
                ..spec(42, 5)
            },
        )
        .unwrap();
        assert_eq!(boundary.len(), 5, "{}", record.id);
    }
}

#[test]
fn sampler_gives_up_after_redraws() {
    let record = IdentityRecord {
        id: "never-admissible",
        citation: "",
        quote: "",
        params: &[("q", "")],
        modes: &[Mode::Numeric],
        expected: Expected::Pass,
        companion: None,
        notes: "",
        numeric: Some(NumericSpec {
            sample: |d: &mut Draw| {
                d.q();
            },
            admissible: |_| false,
            guards: |_| Vec::new(),
            lhs: |_, _| unreachable!(),
            rhs: |_, _| unreachable!(),
        }),
        formal: None,
    };
    let err = sample_params(&record, &spec(0, 3)).unwrap_err();
    assert!(matches!(err.root(), QError::SamplingExhausted(id, 100) if id == "never-admissible"));
}

#[test]
fn unknown_ids_and_modes_are_errors() {
    let ctx = NumericContext::default();
    assert!(matches!(
        verify_numeric("no-such-id", &spec(0, 1), &ctx),
        Err(QError::NotFound(_))
    ));
    assert!(matches!(
        verify_numeric("eisenstein", &spec(0, 1), &ctx).map_err(|e| e.root().clone()),
        Err(QError::UnsupportedMode { .. })
    ));
    assert!(verify_formal("qgauss", 20).is_err());
}

#[test]
fn empty_filter_gives_empty_report() {
    let suite = run_suite("nothing-matches-*", &spec(0, 2), &NumericContext::default(), 20).unwrap();
    assert!(suite.reports.is_empty());
    assert!(suite.all_succeeded());
    assert_eq!(suite.exit_code(), 0);
}

#[test]
fn parallel_and_serial_runs_agree() {
    let ctx = NumericContext::default();
    let parallel = run_suite_with("*phi1*", &spec(3, 4), &ctx, 30, true).unwrap();
    let serial = run_suite_with("*phi1*", &spec(3, 4), &ctx, 30, false).unwrap();
    assert!(parallel.reports.len() >= 4);
    assert_eq!(parallel.to_json_untimed(), serial.to_json_untimed());
}

#[test]
fn json_reports_replay() {
    let ctx = NumericContext::default();
    let first = verify_numeric("qgauss", &spec(9, 4), &ctx).unwrap();
    let again = verify_numeric("qgauss", &spec(9, 4), &ctx).unwrap();
    assert_eq!(first.to_json_untimed(), again.to_json_untimed());

    // the printed parameters are exact, so feeding them back reproduces every sample
    let json = first.to_json_untimed();
    let assignments: Vec<ParamAssignment> = json["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let mut a = ParamAssignment::new();
            for (name, value) in s["params"].as_object().unwrap() {
                let v = value.as_str().unwrap();
                let z: Complex64 = v.parse().unwrap_or_else(|_| panic!("{name} = {v}"));
                a.set_c64(name, z);
            }
            a
        })
        .collect();
    let replay = verify_numeric_at("qgauss", &assignments, &ctx).unwrap();
    for (x, y) in first.samples.iter().zip(&replay.samples) {
        assert_eq!(x.discrepancy, y.discrepancy);
        assert_eq!(x.params, y.params);
    }
    assert_eq!(json["seed"], 9);
    assert_eq!(json["mode"], "NUMERIC");
    assert!(json["samples"][0]["discrepancy"].is_string());
}

#[test]
fn euler_exponential_at_the_origin() {
    let ctx = NumericContext::default();
    let a = ParamAssignment::new()
        .with("x", ParamValue::Complex(qid_core::qcore::ComplexHP::zero(53)))
        .with(
            "q",
            ParamValue::Complex(qid_core::qcore::ComplexHP::from_f64(0.5, 0.1, 53)),
        );
    let report = verify_numeric_at("euler-exp", &[a], &ctx).unwrap();
    assert_eq!(report.aggregate, Aggregate::Pass);
    assert_eq!(report.samples[0].discrepancy.as_deref(), Some("0"));
}

#[test]
fn bilateral_summation_small_run() {
    let report = verify_numeric("ramanujan-1psi1", &spec(1, 3), &NumericContext::default()).unwrap();
    assert_eq!(report.samples.len(), 3);
    assert!(report.samples.iter().all(|s| s.status == SampleStatus::Pass));
    assert_eq!(report.aggregate, Aggregate::Pass);
}

#[test]
fn printed_finite_rogers_ramanujan_fails_as_expected() {
    let report = verify_formal("rr-finite", 20).unwrap();
    assert_eq!(report.aggregate, Aggregate::ExpectedFailConfirmed);
    let fail = report
        .samples
        .iter()
        .find(|s| s.status == SampleStatus::Fail)
        .unwrap();
    assert!(fail.witness.is_some());
    assert_eq!(
        verify_formal("rr-finite-corrected", 20).unwrap().aggregate,
        Aggregate::Pass
    );
}
