//! Walks one chain of raw beliefs through every rule and shows where the
//! expert rules converge.

use ctrust::{propagate_chain, RuleSpec, TotalOrder};

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn main() -> ctrust::Result<()> {
    let raw = [
        true, false, false, true, false, true, true, false, true, true, true, false,
    ];
    let order = TotalOrder::identity(raw.len());
    println!("{:<14} {}", "raw", bits(&raw));
    let rules = [
        RuleSpec::MostExpert,
        RuleSpec::NExpert(2),
        RuleSpec::NExpert(3),
        RuleSpec::Majority,
        RuleSpec::GravityPoint,
    ];
    for rule in rules {
        let t = propagate_chain(&order, &raw, rule)?;
        let conv = t
            .convergence_index
            .map_or_else(|| "-".to_string(), |c| c.to_string());
        println!(
            "{:<14} {}  converged at {conv}",
            rule.to_string(),
            bits(&t.aggregated)
        );
    }
    Ok(())
}
