use sunada_core::config::PipelineConfig;
use sunada_core::pipeline::{check_gassmann, run_reproduce_paper};
use sunada_core::report::{PaperReport, Status};

#[test]
fn report_is_deterministic_and_round_trips() {
    let s = PipelineConfig::paper().resolve().unwrap();
    let a = run_reproduce_paper(&s).to_json();
    let b = run_reproduce_paper(&PipelineConfig::paper().resolve().unwrap()).to_json();
    assert_eq!(a, b);
    let parsed = PaperReport::from_json(&a).unwrap();
    assert_eq!(parsed.to_json(), a);
    assert_eq!(parsed, run_reproduce_paper(&s));
}

#[test]
fn verdict_and_stage_order() {
    let r = run_reproduce_paper(&PipelineConfig::paper().resolve().unwrap());
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "gassmann",
            "surjectivity",
            "curve-forms",
            "lift-degrees",
            "sunada-degrees",
            "lift-orbits",
            "involution",
            "trace",
            "spine-model",
            "candidates",
            "trace-uniqueness",
            "ribbon",
            "lift-crossings",
            "simplicity",
        ]
    );
    assert!(r.verdict.complete);
    assert!(r.verdict.statement.contains("not simple iso-length spectral"));
    assert!(r.verdict.witness_length.as_deref().unwrap().starts_with("ℓ(α) = 7.957513083736446"));
    assert!(r.verdict.corollary.as_deref().unwrap().contains("simple length sets"));
    assert!(r.assumptions.iter().any(|a| a.statement.contains("i(α, y1) = 1")));
    assert!(r.assumptions.iter().any(|a| a.statement.contains("k ∈ {1, 1/2, 1/4, 1/8}")));
    let md = r.to_markdown();
    for c in &r.checks {
        assert!(md.contains(&format!("`{}`", c.name)));
    }
    let orbits = r.check("lift-orbits").unwrap();
    assert_eq!(orbits.status, Status::DocumentedDeviation);
    assert_eq!(orbits.certificate["subgroups"][1]["differs_from_published"]["computed"], serde_json::json!([[2, 8, 12, 14]]));
}

#[test]
fn swapped_subgroups_still_pass() {
    let mut cfg = PipelineConfig::paper();
    let h = cfg.subgroups["H"].clone();
    let k = cfg.subgroups["K"].clone();
    cfg.subgroups.insert("H".into(), k);
    cfg.subgroups.insert("K".into(), h);
    let s = cfg.resolve().unwrap();
    assert_eq!(check_gassmann(&s).unwrap().status, Status::Pass);
    // the published orbit data no longer matches, so the run stops there
    let r = run_reproduce_paper(&s);
    assert!(!r.verdict.complete);
    assert_eq!(r.verdict.failing_check.as_deref(), Some("lift-orbits"));
}

#[test]
fn failing_stages_stop_the_run() {
    let mut cfg = PipelineConfig::paper();
    cfg.subgroups.insert("K".into(), cfg.subgroups["H"].clone());
    let r = run_reproduce_paper(&cfg.resolve().unwrap());
    assert_eq!(r.checks.len(), 1);
    assert!(r.verdict.statement.starts_with("incomplete: subgroups conjugate, covers isometric"));

    let mut cfg = PipelineConfig::paper();
    cfg.subgroups.insert("K".into(), vec!["(1,0)".into(), "(1,4)".into(), "(7,0)".into(), "(7,4)".into()]);
    let r = run_reproduce_paper(&cfg.resolve().unwrap());
    assert_eq!(r.verdict.statement, "incomplete: subgroups not almost conjugate");

    let mut cfg = PipelineConfig::paper();
    cfg.metric.preset = Some("printed".into());
    let r = run_reproduce_paper(&cfg.resolve().unwrap());
    assert_eq!(r.verdict.failing_check.as_deref(), Some("trace"));
    assert!(r.verdict.statement.contains("85865/28032"));
    assert!(r.to_json().contains("\"fail\""));
}
