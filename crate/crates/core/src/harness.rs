//! Rule sweeps over scenarios and their CSV / JSON-lines output.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{build_partial_order, linear_extensions, TotalOrder};
use crate::model::Scenario;
use crate::propagation::propagate_all;
use crate::reliability::{collaborative_reliability, tally, ErrorTally};
use crate::rules::RuleSpec;

pub const CSV_HEADER: &str = "rule,order,config,unchanged_correct,unchanged_error,corrected,introduced,individual_err_pct,introduced_pct,corrected_pct,r_c";

/// Metrics of one (rule, order, configuration) run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub rule: RuleSpec,
    pub order: usize,
    pub config: usize,
    #[serde(flatten)]
    pub tally: ErrorTally,
    pub individual_err_pct: f64,
    pub introduced_pct: f64,
    pub corrected_pct: f64,
    /// `None` when the ratio is undefined for this configuration.
    pub r_c: Option<f64>,
}

impl ExperimentResult {
    fn new(rule: RuleSpec, order: usize, config: usize, tally: ErrorTally) -> Self {
        let pct = |v: u64| 100.0 * v as f64 / tally.total() as f64;
        ExperimentResult {
            rule,
            order,
            config,
            individual_err_pct: pct(tally.individual_errors()),
            introduced_pct: pct(tally.introduced),
            corrected_pct: pct(tally.corrected),
            r_c: collaborative_reliability(&tally).ok(),
            tally,
        }
    }

    pub fn unchanged_pct(&self) -> f64 {
        100.0 * self.tally.unchanged() as f64 / self.tally.total() as f64
    }
}

/// The first `limit` linear extensions of the scenario's dominance order.
pub fn scenario_orders(scenario: &Scenario, limit: usize) -> Result<Vec<TotalOrder>> {
    let po = build_partial_order(scenario.systems())?;
    Ok(linear_extensions(&po, limit))
}

/// Propagates and scores every configuration under every (rule, order).
///
/// Rows come out rule-major, then order, then configuration, whatever order
/// the worker pool finishes in.
pub fn run_experiment(
    scenario: &Scenario,
    rules: &[RuleSpec],
    orders: &[TotalOrder],
) -> Result<Vec<ExperimentResult>> {
    if rules.is_empty() || orders.is_empty() {
        return Err(Error::EmptyInput);
    }
    let jobs: Vec<(RuleSpec, usize, usize)> = rules
        .iter()
        .flat_map(|&r| {
            (0..orders.len())
                .flat_map(move |o| (0..scenario.configurations().len()).map(move |c| (r, o, c)))
        })
        .collect();
    jobs.into_par_iter()
        .map(|(rule, o, c)| {
            let agg = propagate_all(scenario, c, &orders[o], rule)?;
            let t = tally(scenario.configuration(c)?, &agg.y, scenario.truth())?;
            Ok(ExperimentResult::new(rule, o, c, t))
        })
        .collect()
}

/// Per-rule means over all rows of that rule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleSummary {
    pub rule: RuleSpec,
    pub rows: usize,
    pub mean_individual_err_pct: f64,
    pub mean_introduced_pct: f64,
    pub mean_corrected_pct: f64,
    /// Mean over rows where the ratio is defined.
    pub mean_r_c: Option<f64>,
}

/// Aggregates rows per rule, in first-appearance order of the rules.
pub fn summarize(results: &[ExperimentResult]) -> Result<Vec<RuleSummary>> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mut rules: Vec<RuleSpec> = Vec::new();
    for r in results {
        if !rules.contains(&r.rule) {
            rules.push(r.rule);
        }
    }
    Ok(rules
        .into_iter()
        .map(|rule| {
            let rows: Vec<&ExperimentResult> = results.iter().filter(|r| r.rule == rule).collect();
            let mean = |f: &dyn Fn(&ExperimentResult) -> f64| {
                rows.iter().map(|r| f(r)).sum::<f64>() / rows.len() as f64
            };
            let defined: Vec<f64> = rows.iter().filter_map(|r| r.r_c).collect();
            RuleSummary {
                rule,
                rows: rows.len(),
                mean_individual_err_pct: mean(&|r| r.individual_err_pct),
                mean_introduced_pct: mean(&|r| r.introduced_pct),
                mean_corrected_pct: mean(&|r| r.corrected_pct),
                mean_r_c: (!defined.is_empty())
                    .then(|| defined.iter().sum::<f64>() / defined.len() as f64),
            }
        })
        .collect())
}

/// Formats like C's `%g` with 6 significant digits.
pub fn fmt_g6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_g6(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".to_string(), fmt_g6)
}

pub fn to_csv(results: &[ExperimentResult]) -> String {
    let mut out = String::with_capacity(64 * (results.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in results {
        let t = &r.tally;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.rule,
            r.order,
            r.config,
            t.unchanged_correct,
            t.unchanged_error,
            t.corrected,
            t.introduced,
            fmt_g6(r.individual_err_pct),
            fmt_g6(r.introduced_pct),
            fmt_g6(r.corrected_pct),
            opt_g6(r.r_c),
        );
    }
    out
}

pub fn to_jsonl(results: &[ExperimentResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(r).expect("result serializes"));
        out.push('\n');
    }
    out
}

pub fn summary_table(summary: &[RuleSummary]) -> String {
    let mut out = String::from("rule,rows,individual_err_pct,introduced_pct,corrected_pct,r_c\n");
    for s in summary {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.rule,
            s.rows,
            fmt_g6(s.mean_individual_err_pct),
            fmt_g6(s.mean_introduced_pct),
            fmt_g6(s.mean_corrected_pct),
            opt_g6(s.mean_r_c),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchgen::{gen_scenario, GeneratorSpec};

    #[test]
    fn g6_formatting() {
        assert_eq!(fmt_g6(2.5), "2.5");
        assert_eq!(fmt_g6(100.0), "100");
        assert_eq!(fmt_g6(1.0 / 3.0), "0.333333");
        assert_eq!(fmt_g6(52.7123456), "52.7123");
        assert_eq!(fmt_g6(0.0), "0");
        assert_eq!(fmt_g6(1234567.0), "1.23457e+06");
        assert_eq!(fmt_g6(0.00001234), "1.234e-05");
        assert_eq!(fmt_g6(999999.5), "1e+06");
    }

    #[test]
    fn row_count_is_rules_orders_configs() {
        let s = gen_scenario(&GeneratorSpec::default().with_seed(4)).unwrap();
        let orders = scenario_orders(&s, 1).unwrap();
        let rows = run_experiment(&s, &RuleSpec::standard_set(), &orders).unwrap();
        assert_eq!(rows.len(), 600);
        assert_eq!((rows[0].rule, rows[0].config), (RuleSpec::MostExpert, 0));
        assert_eq!(
            (rows[599].rule, rows[599].config),
            (RuleSpec::GravityPoint, 99)
        );
        for r in &rows {
            let sum = r.introduced_pct + r.corrected_pct + r.unchanged_pct();
            assert!((sum - 100.0).abs() < 1e-9);
        }
        assert!(matches!(
            run_experiment(&s, &[], &orders),
            Err(Error::EmptyInput)
        ));
    }

    fn row(rule: RuleSpec, config: usize, introduced: u64) -> ExperimentResult {
        ExperimentResult::new(
            rule,
            0,
            config,
            ErrorTally {
                unchanged_correct: 100 - introduced,
                introduced,
                ..Default::default()
            },
        )
    }

    #[test]
    fn summary_means() {
        let one = [row(RuleSpec::Majority, 0, 5)];
        let s = summarize(&one).unwrap();
        assert_eq!(s[0].mean_introduced_pct, one[0].introduced_pct);
        assert_eq!(s[0].mean_r_c, one[0].r_c);

        let two = [
            row(RuleSpec::NExpert(2), 0, 2),
            row(RuleSpec::NExpert(2), 1, 4),
        ];
        let s = summarize(&two).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].mean_introduced_pct - 3.0).abs() < 1e-12);
        assert!(matches!(summarize(&[]), Err(Error::EmptyResults)));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let rows = [row(RuleSpec::MostExpert, 0, 0)];
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.next(), Some("most-expert,0,0,100,0,0,0,0,0,0,1"));
        let json = to_jsonl(&rows);
        assert!(json.contains("\"rule\":\"most-expert\""));
        assert!(json.contains("\"unchanged_correct\":100"));
    }
}
