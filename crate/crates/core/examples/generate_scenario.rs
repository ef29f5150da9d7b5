//! Generates a small seeded scenario and prints it as JSON.

use ctrust::benchgen::{gen_scenario, DistributionProfile, GeneratorSpec};

fn main() -> ctrust::Result<()> {
    let spec = GeneratorSpec {
        n_systems: 4,
        n_predicates: 2,
        n_configurations: 2,
        ..GeneratorSpec::default()
            .with_seed(42)
            .with_profile(DistributionProfile::Dist3)
    };
    let scenario = gen_scenario(&spec)?;
    println!("{}", scenario.to_json());
    Ok(())
}
