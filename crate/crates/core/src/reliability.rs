//! Correctness of beliefs against ground truth and the reliability ratios
//! built on it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{BeliefMatrix, GroundTruth};

/// Effect of collaboration on one (agent, predicate) cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ErrorStatus {
    UnchangedCorrect,
    UnchangedError,
    Corrected,
    Introduced,
}

/// Correctness `ζ` and error `θ` of belief `x` against truth `t`.
pub fn correctness_error(x: bool, t: bool) -> (bool, bool) {
    let correct = x == t;
    (correct, !correct)
}

/// Classifies a cell from its raw belief `x`, aggregated belief `y` and truth `t`.
pub fn classify(x: bool, y: bool, t: bool) -> ErrorStatus {
    match (x == y, y == t) {
        (true, true) => ErrorStatus::UnchangedCorrect,
        (true, false) => ErrorStatus::UnchangedError,
        (false, true) => ErrorStatus::Corrected,
        (false, false) => ErrorStatus::Introduced,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ErrorTally {
    pub unchanged_correct: u64,
    pub unchanged_error: u64,
    pub corrected: u64,
    pub introduced: u64,
}

impl ErrorTally {
    pub fn record(&mut self, status: ErrorStatus) {
        match status {
            ErrorStatus::UnchangedCorrect => self.unchanged_correct += 1,
            ErrorStatus::UnchangedError => self.unchanged_error += 1,
            ErrorStatus::Corrected => self.corrected += 1,
            ErrorStatus::Introduced => self.introduced += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.unchanged_correct + self.unchanged_error + self.corrected + self.introduced
    }

    /// Cells that were wrong before collaboration.
    pub fn individual_errors(&self) -> u64 {
        self.unchanged_error + self.corrected
    }

    pub fn unchanged(&self) -> u64 {
        self.unchanged_correct + self.unchanged_error
    }
}

impl std::ops::Add for ErrorTally {
    type Output = ErrorTally;

    fn add(self, o: ErrorTally) -> ErrorTally {
        ErrorTally {
            unchanged_correct: self.unchanged_correct + o.unchanged_correct,
            unchanged_error: self.unchanged_error + o.unchanged_error,
            corrected: self.corrected + o.corrected,
            introduced: self.introduced + o.introduced,
        }
    }
}

/// Fraction of predicates on which `agent` believes the truth.
pub fn individual_reliability(x: &BeliefMatrix, t: &GroundTruth, agent: usize) -> f64 {
    let p = x.n_predicates();
    let correct = (0..p)
        .filter(|&q| correctness_error(x.get(agent, q), t.get(q)).0)
        .count();
    correct as f64 / p as f64
}

fn check_shapes(x: &BeliefMatrix, y: &BeliefMatrix, t: &GroundTruth) -> Result<()> {
    if !x.same_shape(y) || t.len() != x.n_predicates() {
        return Err(Error::DimensionMismatch(format!(
            "raw {}x{}, aggregated {}x{}, truth {}",
            x.n_agents(),
            x.n_predicates(),
            y.n_agents(),
            y.n_predicates(),
            t.len()
        )));
    }
    Ok(())
}

/// Classifies every cell of the configuration.
pub fn tally(x: &BeliefMatrix, y: &BeliefMatrix, t: &GroundTruth) -> Result<ErrorTally> {
    check_shapes(x, y, t)?;
    let mut out = ErrorTally::default();
    for a in 0..x.n_agents() {
        for p in 0..x.n_predicates() {
            out.record(classify(x.get(a, p), y.get(a, p), t.get(p)));
        }
    }
    Ok(out)
}

/// Tally restricted to one agent's row.
pub fn agent_tally(
    x: &BeliefMatrix,
    y: &BeliefMatrix,
    t: &GroundTruth,
    agent: usize,
) -> Result<ErrorTally> {
    check_shapes(x, y, t)?;
    let mut out = ErrorTally::default();
    for p in 0..x.n_predicates() {
        out.record(classify(x.get(agent, p), y.get(agent, p), t.get(p)));
    }
    Ok(out)
}

/// `(unchanged_correct + introduced) / (unchanged_correct + corrected)`.
///
/// 1 when collaboration introduced as many errors as it corrected, below 1
/// when it corrected more.
pub fn collaborative_reliability(tally: &ErrorTally) -> Result<f64> {
    let denominator = tally.unchanged_correct + tally.corrected;
    if denominator == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok((tally.unchanged_correct + tally.introduced) as f64 / denominator as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BeliefRole;

    fn column(bits: &[u8]) -> BeliefMatrix {
        let rows: Vec<Vec<bool>> = bits.iter().map(|&b| vec![b == 1]).collect();
        BeliefMatrix::from_rows(&rows, BeliefRole::Raw).unwrap()
    }

    #[test]
    fn correctness_follows_table() {
        assert_eq!(correctness_error(true, true), (true, false));
        assert_eq!(correctness_error(true, false), (false, true));
        assert_eq!(correctness_error(false, false), (true, false));
        assert_eq!(correctness_error(false, true), (false, true));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(true, false, true), ErrorStatus::Introduced);
        assert_eq!(classify(true, false, false), ErrorStatus::Corrected);
        assert_eq!(classify(false, false, true), ErrorStatus::UnchangedError);
        assert_eq!(classify(false, false, false), ErrorStatus::UnchangedCorrect);
    }

    #[test]
    fn individual_reliability_counts() {
        let x = BeliefMatrix::from_rows(
            &[
                vec![true, true, false, true],
                vec![false, false, true, false],
            ],
            BeliefRole::Raw,
        )
        .unwrap();
        let t = GroundTruth(vec![true, true, false, false]);
        assert_eq!(individual_reliability(&x, &t, 0), 0.75);
        let all_right = GroundTruth(vec![false, false, true, false]);
        assert_eq!(individual_reliability(&x, &all_right, 1), 1.0);
        let all_wrong = GroundTruth(vec![true, true, false, true]);
        assert_eq!(individual_reliability(&x, &all_wrong, 1), 0.0);
    }

    #[test]
    fn tally_examples() {
        let t = GroundTruth(vec![true]);
        let x = column(&[1, 1, 0]);
        let y = column(&[1, 1, 1]);
        let got = tally(&x, &y, &t).unwrap();
        assert_eq!(
            got,
            ErrorTally {
                unchanged_correct: 2,
                corrected: 1,
                ..Default::default()
            }
        );
        let same = tally(&y, &y, &t).unwrap();
        assert_eq!(same.unchanged_correct, 3);
        assert_eq!(same.total(), 3);
        assert!(matches!(
            tally(&x, &column(&[1, 1]), &t),
            Err(Error::DimensionMismatch(_))
        ));
        let a = agent_tally(&x, &y, &t, 2).unwrap();
        assert_eq!(a.corrected, 1);
    }

    #[test]
    fn collaborative_reliability_examples() {
        let r = |uc, i, c| {
            collaborative_reliability(&ErrorTally {
                unchanged_correct: uc,
                unchanged_error: 0,
                corrected: c,
                introduced: i,
            })
        };
        assert_eq!(r(7, 4, 4).unwrap(), 1.0);
        assert_eq!(r(5, 0, 5).unwrap(), 0.5);
        assert_eq!(r(3, 6, 3).unwrap(), 1.5);
        assert!(matches!(r(0, 3, 0), Err(Error::UndefinedRatio)));
    }
}
