//! Group-of-interest selection and belief combination for each rule.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::lattice::TotalOrder;

/// Aggregation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleSpec {
    /// Everyone defers to the head of the order.
    MostExpert,
    /// Defer to the `k` immediate predecessors when they all disagree with you.
    NExpert(usize),
    /// Whole-group vote over raw beliefs.
    Majority,
    /// Vote among the nearest neighbours in the order, widening on ties.
    GravityPoint,
}

impl RuleSpec {
    /// Group size of the unanimous-flip family; `None` for voting rules.
    pub fn expert_k(self) -> Option<usize> {
        match self {
            RuleSpec::MostExpert => Some(1),
            RuleSpec::NExpert(k) => Some(k),
            RuleSpec::Majority | RuleSpec::GravityPoint => None,
        }
    }

    /// The rule set compared in the synthetic experiments.
    pub fn standard_set() -> Vec<RuleSpec> {
        vec![
            RuleSpec::MostExpert,
            RuleSpec::NExpert(2),
            RuleSpec::NExpert(3),
            RuleSpec::NExpert(4),
            RuleSpec::Majority,
            RuleSpec::GravityPoint,
        ]
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleSpec::MostExpert => f.write_str("most-expert"),
            RuleSpec::NExpert(k) => write!(f, "n-expert:{k}"),
            RuleSpec::Majority => f.write_str("majority"),
            RuleSpec::GravityPoint => f.write_str("gravity-point"),
        }
    }
}

impl FromStr for RuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "most-expert" => Ok(RuleSpec::MostExpert),
            "majority" => Ok(RuleSpec::Majority),
            "gravity-point" => Ok(RuleSpec::GravityPoint),
            _ => match s.strip_prefix("n-expert:").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => Ok(RuleSpec::NExpert(k)),
                _ => Err(Error::InvalidRule(s.to_string())),
            },
        }
    }
}

impl Serialize for RuleSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Positions in a total order whose beliefs feed one agent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOfInterest {
    pub member_positions: Vec<usize>,
}

impl GroupOfInterest {
    pub fn is_empty(&self) -> bool {
        self.member_positions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.member_positions.len()
    }
}

/// Group of interest of the agent at `position` in `order`.
///
/// For `GravityPoint` this is only the first ring of neighbours; the group
/// widens inside [`gravity_decide`].
pub fn group_of_interest(rule: RuleSpec, order: &TotalOrder, position: usize) -> GroupOfInterest {
    let n = order.len();
    let member_positions = match rule {
        RuleSpec::MostExpert => {
            if position == 0 {
                vec![]
            } else {
                vec![0]
            }
        }
        RuleSpec::NExpert(k) => (position.saturating_sub(k)..position).collect(),
        RuleSpec::Majority => (0..n).collect(),
        RuleSpec::GravityPoint => {
            let mut g = Vec::with_capacity(2);
            if position > 0 {
                g.push(position - 1);
            }
            if position + 1 < n {
                g.push(position + 1);
            }
            g
        }
    };
    GroupOfInterest { member_positions }
}

/// Flips `own` iff the group is non-empty and every input contradicts it.
pub fn combine_unanimous_flip(own: bool, inputs: &[bool]) -> bool {
    if !inputs.is_empty() && inputs.iter().all(|&b| b != own) {
        !own
    } else {
        own
    }
}

/// Strict majority over `inputs` plus `own`; a tie keeps `own`.
pub fn combine_majority(own: bool, inputs: &[bool]) -> bool {
    let ones = inputs.iter().filter(|&&b| b).count() + usize::from(own);
    let total = inputs.len() + 1;
    let zeros = total - ones;
    match ones.cmp(&zeros) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => own,
    }
}

/// Gravity-point decision for the agent at `position`.
///
/// The group starts as the nearest predecessor and successor and widens one
/// ring at a time on each side that still has agents. The agent adopts the
/// strict majority of the current group; when the whole group contradicts it
/// that majority is the flip. A group that is tied at every width leaves the
/// agent on its own belief.
pub fn gravity_decide(order: &TotalOrder, raw: &[bool], position: usize) -> bool {
    let n = order.len();
    debug_assert_eq!(raw.len(), n);
    let own = raw[position];
    let mut ones = 0usize;
    let mut members = 0usize;
    let mut radius = 1;
    loop {
        let before = position.checked_sub(radius);
        let after = Some(position + radius).filter(|&p| p < n);
        if before.is_none() && after.is_none() {
            return own;
        }
        for p in before.into_iter().chain(after) {
            members += 1;
            ones += usize::from(raw[p]);
        }
        let zeros = members - ones;
        if ones != zeros {
            return ones > zeros;
        }
        radius += 1;
    }
}
