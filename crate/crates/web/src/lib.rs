//! Browser bindings: run a scenario, fetch a bundled one, search for the
//! no-recovery witness. `www/index.html` is the page that uses them.

use latent_belief::engine::Selection;
use latent_belief::logic::Fragment;
use latent_belief::oracle::no_recovery_witness;
use latent_belief::scenario::{bundled, bundled_names, RunOptions, Scenario};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct RunResult {
    passed: bool,
    human: String,
    trace: serde_json::Value,
}

/// Runs scenario text. `strategy` may be empty. Returns JSON with the
/// plain-text report, the trace and whether every assertion held.
pub fn run_text(text: &str, strategy: &str) -> Result<String, String> {
    let strategy = match strategy.trim() {
        "" => None,
        s => Some(s.parse::<Selection>().map_err(|e| e.to_string())?),
    };
    let scenario = Scenario::parse("page", text, None).map_err(|e| e.to_string())?;
    let opts = RunOptions { strategy, max_iter: None };
    let run = scenario.run(&opts).map_err(|e| e.to_string())?;
    let result = RunResult {
        passed: run.report.passed(),
        human: run.human(&scenario, &opts),
        trace: serde_json::to_value(&run.report).map_err(|e| e.to_string())?,
    };
    serde_json::to_string(&result).map_err(|e| e.to_string())
}

/// Witness report for `full` or `monotone` as JSON.
pub fn witness_json(mode: &str) -> Result<String, String> {
    let mode: Fragment = mode.parse().map_err(|e: latent_belief::Error| e.to_string())?;
    let report = no_recovery_witness(mode).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = runScenario)]
pub fn run_scenario(text: &str, strategy: &str) -> Result<String, JsError> {
    run_text(text, strategy).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = bundledScenario)]
pub fn bundled_scenario(name: &str) -> Option<String> {
    bundled(name).map(str::to_string)
}

#[wasm_bindgen(js_name = bundledNames)]
pub fn bundled_list() -> Vec<String> {
    bundled_names().map(str::to_string).collect()
}

#[wasm_bindgen]
pub fn witness(mode: &str) -> Result<String, JsError> {
    witness_json(mode).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_a_bundled_scenario() {
        let out = run_text(bundled("conan").unwrap(), "").unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
        assert!(v["human"].as_str().unwrap().contains("PASS p3 in final"));
    }

    #[test]
    fn reports_errors_as_text() {
        assert!(run_text("[base]\nbelieve p1 &\n", "").unwrap_err().contains("line"));
        assert!(run_text(bundled("conan").unwrap(), "often").is_err());
        assert!(witness_json("modal").is_err());
    }

    #[test]
    fn monotone_witness() {
        let v: serde_json::Value = serde_json::from_str(&witness_json("monotone").unwrap()).unwrap();
        assert_eq!(v["failing_runs"], v["runs"]);
    }
}
