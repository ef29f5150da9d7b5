//! Collaborative reliability of the two-expert rule as group quality varies.
//! Values above 1 mean collaboration introduced more errors than it fixed.

use ctrust::benchgen::{gen_scenario, DistributionProfile, GeneratorSpec};
use ctrust::harness::{run_experiment, scenario_orders, summarize};
use ctrust::RuleSpec;

fn main() -> ctrust::Result<()> {
    println!(
        "{:<6} {:>14} {:>12} {:>12} {:>8}",
        "group", "individual err", "introduced", "corrected", "R^c"
    );
    for profile in DistributionProfile::ALL {
        let mut acc = [0.0; 4];
        let seeds = 10;
        for seed in 0..seeds {
            let s = gen_scenario(
                &GeneratorSpec::default()
                    .with_seed(seed)
                    .with_profile(profile),
            )?;
            let rows = run_experiment(&s, &[RuleSpec::NExpert(2)], &scenario_orders(&s, 1)?)?;
            let m = &summarize(&rows)?[0];
            acc[0] += m.mean_individual_err_pct;
            acc[1] += m.mean_introduced_pct;
            acc[2] += m.mean_corrected_pct;
            acc[3] += m.mean_r_c.unwrap_or(f64::NAN);
        }
        let [e, i, c, r] = acc.map(|v| v / seeds as f64);
        println!("{profile:<6} {e:>13.2}% {i:>11.2}% {c:>11.2}% {r:>8.3}");
    }
    Ok(())
}
