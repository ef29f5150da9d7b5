//! Sweeps the six rules over generated scenarios and prints per-rule means.

use ctrust::benchgen::{gen_scenario, GeneratorSpec};
use ctrust::harness::{run_experiment, scenario_orders, summarize, summary_table};
use ctrust::RuleSpec;

fn main() -> ctrust::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let scenario = gen_scenario(&GeneratorSpec::default().with_seed(seed))?;
    let orders = scenario_orders(&scenario, 1)?;
    let rows = run_experiment(&scenario, &RuleSpec::standard_set(), &orders)?;
    println!("seed {seed}, {} runs", rows.len());
    print!("{}", summary_table(&summarize(&rows)?));
    Ok(())
}
