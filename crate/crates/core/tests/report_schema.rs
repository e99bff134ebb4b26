use gabidulin_core::campaign::{run_campaign, CampaignConfig, SolverChoice};
use serde_json::Value;

fn validator() -> jsonschema::Validator {
    let schema: Value =
        serde_json::from_str(include_str!("../schemas/report.schema.json")).expect("schema is valid JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn config(solver: SolverChoice) -> CampaignConfig {
    CampaignConfig { p: 5, g: 2, n: 4, k: 2, tau_min: 0, tau_max: 1, trials: 4, seed: 5, solver, coeff_box: 9 }
}

#[test]
fn reports_match_schema() {
    let v = validator();
    for solver in [SolverChoice::Popov, SolverChoice::Eea, SolverChoice::Both] {
        let report: Value = serde_json::from_str(&run_campaign(&config(solver)).unwrap().to_json()).unwrap();
        let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{solver}: {errors:?}");
    }
}

#[test]
fn schema_rejects_broken_reports() {
    let v = validator();
    let mut report: Value = serde_json::from_str(&run_campaign(&config(SolverChoice::Both)).unwrap().to_json()).unwrap();
    report["solver_agreement"] = Value::from(1.5);
    assert!(!v.is_valid(&report));
    report["solver_agreement"] = Value::Null;
    report["per_tau"][0].as_object_mut().unwrap().remove("mean_ops");
    assert!(!v.is_valid(&report));
}
