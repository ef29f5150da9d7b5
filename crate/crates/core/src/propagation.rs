//! Single-pass belief propagation along a total order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::TotalOrder;
use crate::model::{BeliefMatrix, BeliefRole, Scenario};
use crate::rules::{
    combine_majority, combine_unanimous_flip, gravity_decide, group_of_interest, RuleSpec,
};

/// Raw and aggregated beliefs on one predicate, both indexed by position in
/// `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationTrace {
    pub rule: RuleSpec,
    pub order: TotalOrder,
    pub predicate: usize,
    pub raw: Vec<bool>,
    pub aggregated: Vec<bool>,
    /// First position `c` whose `k` predecessors hold one common aggregated
    /// value. Only set for the expert rules.
    pub convergence_index: Option<usize>,
}

impl PropagationTrace {
    /// Aggregated belief of the last agent in the order.
    pub fn last(&self) -> bool {
        *self.aggregated.last().expect("non-empty chain")
    }

    /// Aggregated beliefs re-indexed by agent id.
    pub fn aggregated_by_agent(&self) -> Vec<bool> {
        let mut out = vec![false; self.aggregated.len()];
        for (pos, &y) in self.aggregated.iter().enumerate() {
            out[self.order.agent(pos)] = y;
        }
        out
    }
}

/// Aggregated matrix for one configuration plus the per-predicate traces.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregatedConfiguration {
    pub y: BeliefMatrix,
    pub traces: Vec<PropagationTrace>,
}

/// Propagates raw beliefs (in order positions) through `rule`.
pub fn propagate_chain(
    order: &TotalOrder,
    raw: &[bool],
    rule: RuleSpec,
) -> Result<PropagationTrace> {
    propagate_predicate(order, raw, rule, 0)
}

fn propagate_predicate(
    order: &TotalOrder,
    raw: &[bool],
    rule: RuleSpec,
    predicate: usize,
) -> Result<PropagationTrace> {
    let n = order.len();
    if raw.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: raw.len(),
        });
    }
    let (aggregated, convergence_index) = match rule.expert_k() {
        Some(k) => {
            let mut y = Vec::with_capacity(n);
            for (i, &own) in raw.iter().enumerate() {
                if i < k {
                    y.push(own);
                } else {
                    let group = group_of_interest(rule, order, i);
                    let inputs: Vec<bool> = group.member_positions.iter().map(|&j| y[j]).collect();
                    y.push(combine_unanimous_flip(own, &inputs));
                }
            }
            let c = convergence_index(&y, k);
            (y, c)
        }
        None if rule == RuleSpec::Majority => {
            let y = (0..n)
                .map(|i| {
                    let others: Vec<bool> = (0..n).filter(|&j| j != i).map(|j| raw[j]).collect();
                    combine_majority(raw[i], &others)
                })
                .collect();
            (y, None)
        }
        None => (
            (0..n).map(|i| gravity_decide(order, raw, i)).collect(),
            None,
        ),
    };
    Ok(PropagationTrace {
        rule,
        order: order.clone(),
        predicate,
        raw: raw.to_vec(),
        aggregated,
        convergence_index,
    })
}

/// Smallest position `c` (with `k <= c < n`) such that positions
/// `c-k .. c-1` all hold the same value.
pub fn convergence_index(aggregated: &[bool], k: usize) -> Option<usize> {
    if k == 0 {
        return None;
    }
    (k..aggregated.len()).find(|&c| {
        let window = &aggregated[c - k..c];
        window.iter().all(|&b| b == window[0])
    })
}

/// Propagates every predicate of one configuration independently.
pub fn propagate_all(
    scenario: &Scenario,
    config_index: usize,
    order: &TotalOrder,
    rule: RuleSpec,
) -> Result<AggregatedConfiguration> {
    let x = scenario.configuration(config_index)?;
    if order.len() != x.n_agents() {
        return Err(Error::LengthMismatch {
            expected: x.n_agents(),
            actual: order.len(),
        });
    }
    let mut y = BeliefMatrix::filled(
        x.n_agents(),
        x.n_predicates(),
        false,
        BeliefRole::Aggregated,
    );
    let mut traces = Vec::with_capacity(x.n_predicates());
    for p in 0..x.n_predicates() {
        let raw = order.arrange(&x.column(p));
        let trace = propagate_predicate(order, &raw, rule, p)?;
        for (pos, &v) in trace.aggregated.iter().enumerate() {
            y.set(order.agent(pos), p, v);
        }
        traces.push(trace);
    }
    Ok(AggregatedConfiguration { y, traces })
}

/// True iff two agents hold different beliefs on `predicate`.
pub fn detect_peer_disagreement(beliefs: &BeliefMatrix, predicate: usize) -> bool {
    disagree(&beliefs.column(predicate))
}

/// True iff the slice holds both values.
pub fn disagree(values: &[bool]) -> bool {
    values.iter().any(|&b| b != values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::scenario;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn intersection_two_expert_chain() {
        // vehicles 2,1,4,3,5 -> ids 1,0,3,2,4
        let order = TotalOrder::new(vec![1, 0, 3, 2, 4]).unwrap();
        let t = propagate_chain(&order, &bits("11100"), RuleSpec::NExpert(2)).unwrap();
        assert_eq!(t.aggregated, bits("11111"));
        assert_eq!(t.convergence_index, Some(2));
        assert_eq!(t.aggregated_by_agent(), bits("11111"));
    }

    #[test]
    fn uniform_raw_is_a_fixpoint() {
        let order = TotalOrder::identity(6);
        for rule in RuleSpec::standard_set() {
            for v in [false, true] {
                let t = propagate_chain(&order, &[v; 6], rule).unwrap();
                assert_eq!(t.aggregated, vec![v; 6], "{rule}");
            }
        }
    }

    #[test]
    fn most_expert_cascade() {
        let t = propagate_chain(
            &TotalOrder::identity(4),
            &bits("1010"),
            RuleSpec::MostExpert,
        )
        .unwrap();
        assert_eq!(t.aggregated, bits("1111"));
        assert_eq!(t.convergence_index, Some(1));
    }

    #[test]
    fn short_chains_keep_raw() {
        let t =
            propagate_chain(&TotalOrder::identity(3), &bits("100"), RuleSpec::NExpert(3)).unwrap();
        assert_eq!(t.aggregated, bits("100"));
        assert_eq!(t.convergence_index, None);
    }

    #[test]
    fn voting_rules_have_no_convergence_index() {
        let order = TotalOrder::identity(5);
        for rule in [RuleSpec::Majority, RuleSpec::GravityPoint] {
            let t = propagate_chain(&order, &bits("11000"), rule).unwrap();
            assert_eq!(t.convergence_index, None);
        }
        let t = propagate_chain(&order, &bits("11000"), RuleSpec::Majority).unwrap();
        assert_eq!(t.aggregated, bits("00000"));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            propagate_chain(&TotalOrder::identity(3), &bits("10"), RuleSpec::MostExpert),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn propagate_all_single_agent_is_identity() {
        let s = scenario(
            vec![vec![50.0]],
            &["a", "b"],
            vec![true, false],
            vec![vec![vec![false, true]]],
        )
        .unwrap();
        let agg = propagate_all(&s, 0, &TotalOrder::identity(1), RuleSpec::NExpert(2)).unwrap();
        assert_eq!(agg.y.rows(), s.configuration(0).unwrap().rows());
        assert_eq!(agg.y.role(), BeliefRole::Aggregated);
        assert!(matches!(
            propagate_all(&s, 1, &TotalOrder::identity(1), RuleSpec::Majority),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn disagreement() {
        let m = BeliefMatrix::from_rows(
            &[vec![true], vec![true], vec![false], vec![true], vec![false]],
            BeliefRole::Raw,
        )
        .unwrap();
        assert!(detect_peer_disagreement(&m, 0));
        assert!(!disagree(&bits("1111")));
        assert!(disagree(&bits("01")));
    }
}
