//! The five-vehicle intersection and its walkthrough report.
//!
//! Attribute 1 is the pedestrian's size in the vehicle's camera frame
//! (pixels), attribute 2 the percentage of the crosswalk covered by the
//! vehicle's field of view. A belief of 1 means "pedestrian detected"; the
//! pedestrian is present.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{build_partial_order, linear_extensions, PartialOrder, TotalOrder};
use crate::model::{validate_scenario, AutonomousSystem, Predicate, Scenario, ScenarioFile};
use crate::propagation::{detect_peer_disagreement, propagate_all, PropagationTrace};
use crate::reliability::{tally, ErrorTally};
use crate::rules::RuleSpec;

pub const VEHICLE_ATTRIBUTES: [[f64; 2]; 5] = [
    [1271.0, 53.3],
    [3766.0, 66.7],
    [748.0, 22.2],
    [915.0, 60.0],
    [0.0, 26.7],
];

pub const VEHICLE_BELIEFS: [bool; 5] = [true, true, false, true, false];

pub const PEDESTRIAN_PRESENT: bool = true;

/// Expertise ranks as tabulated for the fixture (vehicle order).
pub const PINNED_RANKS: [usize; 5] = [2, 1, 3, 2, 4];

/// Pixel bound of attribute 1; attribute 2 is a percentage.
pub const PIXEL_BOUND: f64 = 4000.0;

pub const PREDICATE_LABEL: &str = "pedestrian on the crosswalk (0 = crosswalk is free)";

/// Vehicle `id` as numbered in the walkthrough (1-based).
pub fn vehicle_name(id: usize) -> String {
    format!("vehicle {}", id + 1)
}

pub fn intersection_scenario() -> Scenario {
    validate_scenario(ScenarioFile {
        attributes_dim: 2,
        systems: VEHICLE_ATTRIBUTES
            .iter()
            .enumerate()
            .map(|(id, a)| AutonomousSystem {
                id,
                attributes: a.to_vec().into(),
            })
            .collect(),
        predicates: vec![Predicate {
            id: 0,
            label: PREDICATE_LABEL.into(),
        }],
        truth: vec![PEDESTRIAN_PRESENT],
        configurations: vec![VEHICLE_BELIEFS.iter().map(|&b| vec![b]).collect()],
        attribute_bounds: Some(vec![[0.0, PIXEL_BOUND], [0.0, 100.0]]),
    })
    .expect("fixture is valid")
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleWalkthrough {
    pub rule: RuleSpec,
    pub order: TotalOrder,
    pub trace: PropagationTrace,
    pub tally: ErrorTally,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub cover_edges: Vec<(usize, usize)>,
    pub depth_ranks: Vec<usize>,
    pub pinned_ranks: Vec<usize>,
    pub join: Vec<f64>,
    pub meet: Vec<f64>,
    pub raw_disagreement: bool,
    pub extensions: Vec<TotalOrder>,
    pub runs: Vec<RuleWalkthrough>,
}

/// Runs the intersection under the two- and three-expert rules on the first
/// `max_orders` linear extensions.
pub fn demo_intersection(max_orders: usize) -> Result<DemoReport> {
    let s = intersection_scenario();
    let po: PartialOrder = build_partial_order(s.systems())?;
    let extensions = linear_extensions(&po, max_orders);
    let mut runs = Vec::new();
    for rule in [RuleSpec::NExpert(2), RuleSpec::NExpert(3)] {
        for order in &extensions {
            let agg = propagate_all(&s, 0, order, rule)?;
            let t = tally(s.configuration(0)?, &agg.y, s.truth())?;
            runs.push(RuleWalkthrough {
                rule,
                order: order.clone(),
                trace: agg.traces.into_iter().next().expect("one predicate"),
                tally: t,
            });
        }
    }
    Ok(DemoReport {
        cover_edges: po.cover_edges().to_vec(),
        depth_ranks: po.depth_rank().to_vec(),
        pinned_ranks: PINNED_RANKS.to_vec(),
        join: po.join().values().to_vec(),
        meet: po.meet().values().to_vec(),
        raw_disagreement: detect_peer_disagreement(s.configuration(0)?, 0),
        extensions,
        runs,
    })
}

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn names(order: &TotalOrder) -> String {
    order
        .sequence()
        .iter()
        .map(|&a| (a + 1).to_string())
        .collect::<Vec<_>>()
        .join(" > ")
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "intersection: {PREDICATE_LABEL}, truth = {}",
            u8::from(PEDESTRIAN_PRESENT)
        )?;
        writeln!(
            f,
            "vehicle  belief  pixels  coverage%  depth-rank  table-rank"
        )?;
        for (id, a) in VEHICLE_ATTRIBUTES.iter().enumerate() {
            writeln!(
                f,
                "{:>7}  {:>6}  {:>6}  {:>9}  {:>10}  {:>10}",
                id + 1,
                u8::from(VEHICLE_BELIEFS[id]),
                a[0],
                a[1],
                self.depth_ranks[id],
                self.pinned_ranks[id]
            )?;
        }
        let edges: Vec<String> = self
            .cover_edges
            .iter()
            .map(|(a, b)| format!("{}->{}", a + 1, b + 1))
            .collect();
        writeln!(f, "hasse edges: {}", edges.join(", "))?;
        writeln!(f, "join {:?}, meet {:?}", self.join, self.meet)?;
        writeln!(
            f,
            "peer disagreement before collaboration: {}",
            self.raw_disagreement
        )?;
        for run in &self.runs {
            writeln!(
                f,
                "{:<11} order {}  x={} y={}  corrected={} introduced={}",
                run.rule.to_string(),
                names(&run.order),
                bits(&run.trace.raw),
                bits(&run.trace.aggregated),
                run.tally.corrected,
                run.tally.introduced
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_expert_corrects_vehicles_three_and_five_everywhere() {
        let report = demo_intersection(3).unwrap();
        assert!(report.raw_disagreement);
        assert_eq!(report.extensions.len(), 3);
        for run in report
            .runs
            .iter()
            .filter(|r| r.rule == RuleSpec::NExpert(2))
        {
            assert_eq!(run.order.agent(0), 1);
            assert_eq!(run.trace.aggregated, vec![true; 5]);
            assert_eq!((run.tally.corrected, run.tally.introduced), (2, 0));
        }
    }

    #[test]
    fn report_renders() {
        let text = demo_intersection(3).unwrap().to_string();
        assert!(text.contains("hasse edges: 1->3, 1->5, 2->1, 2->4, 4->3, 4->5"));
        assert!(text.contains("n-expert:2"));
    }
}
