use capax::fixtures;
use capax::pipeline::{
    capacity_lower_bound, capacity_upper_bound, cube5_graph, run_counterexample,
    CounterexampleReport, PipelineOptions,
};
use capax_core::{Graph, SearchBudget};

#[test]
fn report_round_trips_and_ranks() {
    let report = run_counterexample(&PipelineOptions::new(SearchBudget::default(), 1e-6)).unwrap();
    let text = serde_json::to_string_pretty(&report).unwrap();
    let back: CounterexampleReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);

    assert!(report.verdict);
    assert_eq!(report.alpha_g, 4);
    assert_eq!(report.theta_prime_exact, "4/1");
    assert_eq!(report.theta_exact, "16/3");
    assert!(report.fixture_checks.iter().all(|c| c.passed));
    // 4 = α = ϑ′ < ϑ = 16/3
    assert!((report.theta_prime_sdp - report.alpha_g as f64).abs() < 1e-4);
    assert!(report.theta_sdp > report.theta_prime_sdp + 1.0);
    assert_eq!(report.capacity_lb, 20f64.sqrt());
    assert_eq!(
        report.verdict,
        report.capacity_lb > report.theta_prime_sdp + 0.1
    );

    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in [
        "alpha_G",
        "theta_prime_sdp",
        "theta_sdp",
        "theta_exact",
        "lambda_max_X_exact",
        "alpha_product_lb",
        "capacity_lb",
        "verdict",
        "fixture_checks",
    ] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn capacity_bounds() {
    let g = cube5_graph();
    assert_eq!(
        capacity_lower_bound(&g, 1, SearchBudget::default(), None).unwrap(),
        4.0
    );
    let seeded = capacity_lower_bound(
        &g,
        2,
        SearchBudget::nodes(1000),
        Some(fixtures::independent_set_product()),
    )
    .unwrap();
    assert!(seeded >= 20f64.sqrt() - 1e-12);

    let c5 = capacity_upper_bound(&Graph::cycle(5).unwrap(), 1e-7).unwrap();
    assert!((c5 - 5f64.sqrt()).abs() < 1e-4);
    let k = capacity_upper_bound(&Graph::complete(6), 1e-7).unwrap();
    assert!((k - 1.0).abs() < 1e-4);
    let up = capacity_upper_bound(&g, 1e-7).unwrap();
    assert!((up - 16.0 / 3.0).abs() < 1e-4);
}
