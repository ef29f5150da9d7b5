use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ctrust::benchgen::{gen_scenario, DistributionProfile, GeneratorSpec};
use ctrust::fixture::{demo_intersection, intersection_scenario};
use ctrust::harness::{
    run_experiment, scenario_orders, summarize, summary_table, to_csv, to_jsonl,
};
use ctrust::obdd::{build_propagated, build_unreduced, reduce, reduce_terminals};
use ctrust::propagation::propagate_all;
use ctrust::{
    build_partial_order, linear_extensions, Error, Result, RuleSpec, Scenario, TotalOrder,
};

#[derive(Parser)]
#[command(
    name = "ctrust",
    version,
    about = "Belief aggregation among ranked autonomous agents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dump {
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic scenario.
    Gen {
        /// Generator spec JSON; defaults apply to missing fields.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// dist1..dist4 quality preset.
        #[arg(long)]
        profile: Option<DistributionProfile>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep rules over every configuration and print per-run metrics.
    Run {
        #[arg(long, conflicts_with = "spec")]
        scenario: Option<PathBuf>,
        /// Generate the scenario from this spec instead of reading one.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        profile: Option<DistributionProfile>,
        /// Repeatable; defaults to the six experiment rules.
        #[arg(long = "rule")]
        rules: Vec<RuleSpec>,
        /// Sweep up to N linear extensions instead of the first one.
        #[arg(long, value_name = "N")]
        all_orders: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print per-rule means instead of per-run rows.
        #[arg(long)]
        summary: bool,
    },
    /// Print the propagation trace of one configuration as JSON.
    Propagate {
        /// Defaults to the intersection fixture.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        rule: RuleSpec,
        #[arg(long, default_value_t = 0)]
        order_index: usize,
        #[arg(long, default_value_t = 0)]
        config: usize,
    },
    /// Print the dominance order as JSON.
    Lattice {
        /// Defaults to the intersection fixture.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        extensions: usize,
    },
    /// Node counts of the decision diagrams over N agents.
    Bdd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rule: RuleSpec,
        #[arg(long, value_enum)]
        dump: Option<Dump>,
        #[arg(long)]
        verbose: bool,
    },
    /// Walk through the intersection example.
    Demo {
        #[arg(long, default_value_t = 3)]
        orders: usize,
        #[arg(long)]
        json: bool,
    },
}

fn read_scenario(path: Option<&Path>) -> Result<Scenario> {
    match path {
        Some(p) => Scenario::from_json(&fs::read_to_string(p)?),
        None => Ok(intersection_scenario()),
    }
}

fn read_spec(
    path: Option<&Path>,
    seed: Option<u64>,
    profile: Option<DistributionProfile>,
) -> Result<GeneratorSpec> {
    let mut spec: GeneratorSpec = match path {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?)?,
        None => GeneratorSpec::default(),
    };
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(p) = profile {
        spec = spec.with_profile(p);
    }
    Ok(spec)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn nth_order(scenario: &Scenario, index: usize) -> Result<TotalOrder> {
    let orders = scenario_orders(scenario, index + 1)?;
    let len = orders.len();
    orders.into_iter().nth(index).ok_or(Error::IndexOutOfRange {
        what: "order",
        index,
        len,
    })
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen {
            spec,
            seed,
            profile,
            out,
        } => {
            let spec = read_spec(spec.as_deref(), seed, profile)?;
            let mut text = gen_scenario(&spec)?.to_json();
            text.push('\n');
            emit(&text, out.as_deref())
        }
        Command::Run {
            scenario,
            spec,
            seed,
            profile,
            rules,
            all_orders,
            format,
            out,
            summary,
        } => {
            let scenario = match scenario {
                Some(p) => read_scenario(Some(&p))?,
                None => gen_scenario(&read_spec(spec.as_deref(), seed, profile)?)?,
            };
            let rules = if rules.is_empty() {
                RuleSpec::standard_set()
            } else {
                rules
            };
            let orders = scenario_orders(&scenario, all_orders.unwrap_or(1).max(1))?;
            let rows = run_experiment(&scenario, &rules, &orders)?;
            let text = if summary {
                summary_table(&summarize(&rows)?)
            } else {
                match format {
                    Format::Csv => to_csv(&rows),
                    Format::Jsonl => to_jsonl(&rows),
                }
            };
            emit(&text, out.as_deref())
        }
        Command::Propagate {
            scenario,
            rule,
            order_index,
            config,
        } => {
            let scenario = read_scenario(scenario.as_deref())?;
            let order = nth_order(&scenario, order_index)?;
            let agg = propagate_all(&scenario, config, &order, rule)?;
            println!("{}", serde_json::to_string_pretty(&agg.traces)?);
            Ok(())
        }
        Command::Lattice {
            scenario,
            extensions,
        } => {
            let scenario = read_scenario(scenario.as_deref())?;
            let po = build_partial_order(scenario.systems())?;
            let report = json!({
                "cover_edges": po.cover_edges(),
                "ranks": po.depth_rank(),
                "join": po.join(),
                "meet": po.meet(),
                "extensions": linear_extensions(&po, extensions),
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(())
        }
        Command::Bdd {
            n,
            rule,
            dump,
            verbose,
        } => {
            let order = TotalOrder::identity(n);
            let propagated = build_propagated(&order, rule)?;
            let reduced = reduce(&propagated);
            match build_unreduced(n) {
                Ok(tree) => println!("unreduced {}", tree.node_count()),
                Err(Error::TooLarge(_)) => {
                    println!("unreduced {}", (1u128 << (n + 1)) - 1)
                }
                Err(e) => return Err(e),
            }
            println!("propagated {}", propagated.node_count());
            if verbose {
                println!(
                    "terminals-merged {}",
                    reduce_terminals(&propagated).node_count()
                );
            }
            println!("reduced {}", reduced.node_count());
            if let Some(Dump::Dot) = dump {
                print!("{}", reduced.to_dot());
            }
            Ok(())
        }
        Command::Demo { orders, json } => {
            let report = demo_intersection(orders)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ctrust: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
