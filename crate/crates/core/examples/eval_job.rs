//! Evaluator jobs as JSON, the same format `charderiv eval --job` reads.

use charderiv::evaluators::EvalJob;

const JOB: &str = r#"{
  "mode": "det",
  "kernel": {"vars": ["x", "y"], "terms": [[[0, 0], "1/1"], [[1, 1], "1/1"], [[2, 1], "-3/2"]]},
  "points": ["1/2", "1/5"],
  "alpha": [2, 0],
  "beta": [1, 1],
  "oracle": true
}"#;

fn main() -> charderiv::Result<()> {
    let out = EvalJob::from_json(JOB)?.run()?;
    println!("{}", serde_json::to_string_pretty(&out).expect("serialisable"));
    Ok(())
}
