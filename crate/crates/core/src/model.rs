//! Agents, predicates, beliefs, ground truth and scenario validation.
//!
//! A [`Scenario`] can only be obtained through validation, so every other
//! module may assume its matrices are dimensioned `systems × predicates`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default per-dimension quality bounds, in percent.
pub const DEFAULT_BOUNDS: [f64; 2] = [0.0, 100.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Predicate {
    pub id: usize,
    pub label: String,
}

/// Quality measures of one agent; larger is better in every dimension.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeVector(pub Vec<f64>);

impl AttributeVector {
    pub fn new(values: Vec<f64>) -> Self {
        AttributeVector(values)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }
}

impl From<Vec<f64>> for AttributeVector {
    fn from(values: Vec<f64>) -> Self {
        AttributeVector(values)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutonomousSystem {
    pub id: usize,
    pub attributes: AttributeVector,
}

/// Correct value of every predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroundTruth(pub Vec<bool>);

impl GroundTruth {
    pub fn get(&self, predicate: usize) -> bool {
        self.0[predicate]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BeliefRole {
    /// Individual beliefs before collaboration.
    Raw,
    /// Beliefs after aggregation and propagation.
    Aggregated,
}

/// Boolean belief per (agent, predicate), stored row-major by agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefMatrix {
    n_agents: usize,
    n_predicates: usize,
    bits: Vec<bool>,
    role: BeliefRole,
}

impl BeliefMatrix {
    pub fn filled(n_agents: usize, n_predicates: usize, value: bool, role: BeliefRole) -> Self {
        BeliefMatrix {
            n_agents,
            n_predicates,
            bits: vec![value; n_agents * n_predicates],
            role,
        }
    }

    /// Builds a matrix from one row of predicate beliefs per agent.
    pub fn from_rows(rows: &[Vec<bool>], role: BeliefRole) -> Result<Self> {
        let n_predicates = rows.first().map_or(0, Vec::len);
        if let Some((agent, row)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != n_predicates)
        {
            return Err(Error::DimensionMismatch(format!(
                "agent {agent} has {} beliefs, expected {n_predicates}",
                row.len()
            )));
        }
        Ok(BeliefMatrix {
            n_agents: rows.len(),
            n_predicates,
            bits: rows.iter().flatten().copied().collect(),
            role,
        })
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn n_predicates(&self) -> usize {
        self.n_predicates
    }

    pub fn role(&self) -> BeliefRole {
        self.role
    }

    pub fn get(&self, agent: usize, predicate: usize) -> bool {
        self.bits[agent * self.n_predicates + predicate]
    }

    pub fn set(&mut self, agent: usize, predicate: usize, value: bool) {
        self.bits[agent * self.n_predicates + predicate] = value;
    }

    /// Beliefs of every agent on one predicate, indexed by agent id.
    pub fn column(&self, predicate: usize) -> Vec<bool> {
        (0..self.n_agents).map(|a| self.get(a, predicate)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.bits
            .chunks(self.n_predicates.max(1))
            .take(self.n_agents)
            .map(<[bool]>::to_vec)
            .collect()
    }

    pub fn same_shape(&self, other: &BeliefMatrix) -> bool {
        self.n_agents == other.n_agents && self.n_predicates == other.n_predicates
    }
}

/// On-disk scenario layout. Converted to a [`Scenario`] by validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub attributes_dim: usize,
    pub systems: Vec<AutonomousSystem>,
    pub predicates: Vec<Predicate>,
    pub truth: Vec<bool>,
    pub configurations: Vec<Vec<Vec<bool>>>,
    /// Per-dimension `[lo, hi]` bounds of the attribute hypercube; `[0, 100]`
    /// in every dimension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attribute_bounds: Option<Vec<[f64; 2]>>,
}

/// A validated experiment: agents, predicates, ground truth and one or more
/// raw belief configurations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScenarioFile", into = "ScenarioFile")]
pub struct Scenario {
    attributes_dim: usize,
    systems: Vec<AutonomousSystem>,
    predicates: Vec<Predicate>,
    truth: GroundTruth,
    configurations: Vec<BeliefMatrix>,
    attribute_bounds: Option<Vec<[f64; 2]>>,
}

impl Scenario {
    pub fn systems(&self) -> &[AutonomousSystem] {
        &self.systems
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn truth(&self) -> &GroundTruth {
        &self.truth
    }

    pub fn configurations(&self) -> &[BeliefMatrix] {
        &self.configurations
    }

    pub fn configuration(&self, index: usize) -> Result<&BeliefMatrix> {
        self.configurations
            .get(index)
            .ok_or(Error::IndexOutOfRange {
                what: "configuration",
                index,
                len: self.configurations.len(),
            })
    }

    pub fn attributes_dim(&self) -> usize {
        self.attributes_dim
    }

    pub fn n_systems(&self) -> usize {
        self.systems.len()
    }

    pub fn n_predicates(&self) -> usize {
        self.predicates.len()
    }

    pub fn attribute_bounds(&self) -> Vec<[f64; 2]> {
        self.attribute_bounds
            .clone()
            .unwrap_or_else(|| vec![DEFAULT_BOUNDS; self.attributes_dim])
    }

    pub fn to_file(&self) -> ScenarioFile {
        ScenarioFile {
            attributes_dim: self.attributes_dim,
            systems: self.systems.clone(),
            predicates: self.predicates.clone(),
            truth: self.truth.0.clone(),
            configurations: self.configurations.iter().map(BeliefMatrix::rows).collect(),
            attribute_bounds: self.attribute_bounds.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

impl TryFrom<ScenarioFile> for Scenario {
    type Error = Error;

    fn try_from(raw: ScenarioFile) -> Result<Scenario> {
        validate_scenario(raw)
    }
}

impl From<Scenario> for ScenarioFile {
    fn from(s: Scenario) -> ScenarioFile {
        s.to_file()
    }
}

fn check_dense<T>(items: &[T], id: impl Fn(&T) -> usize, what: &str) -> Result<()> {
    for (pos, item) in items.iter().enumerate() {
        if id(item) != pos {
            return Err(Error::DimensionMismatch(format!(
                "{what} ids must be dense and ordered: position {pos} has id {}",
                id(item)
            )));
        }
    }
    Ok(())
}

/// Checks every scenario invariant and returns the validated scenario.
pub fn validate_scenario(raw: ScenarioFile) -> Result<Scenario> {
    if raw.systems.is_empty() {
        return Err(Error::EmptyScenario("no systems"));
    }
    if raw.predicates.is_empty() {
        return Err(Error::EmptyScenario("no predicates"));
    }
    if raw.configurations.is_empty() {
        return Err(Error::EmptyScenario("no configurations"));
    }
    if raw.attributes_dim == 0 {
        return Err(Error::AttributeOutOfRange(
            "attributes_dim must be at least 1".into(),
        ));
    }
    check_dense(&raw.systems, |s| s.id, "system")?;
    check_dense(&raw.predicates, |p| p.id, "predicate")?;

    let d = raw.attributes_dim;
    let bounds = match &raw.attribute_bounds {
        Some(b) if b.len() != d => {
            return Err(Error::AttributeOutOfRange(format!(
                "{} attribute bounds for dimension {d}",
                b.len()
            )))
        }
        Some(b) => b.clone(),
        None => vec![DEFAULT_BOUNDS; d],
    };
    for (dim, [lo, hi]) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::AttributeOutOfRange(format!(
                "bounds of dimension {dim} are not a finite interval: [{lo}, {hi}]"
            )));
        }
    }
    for sys in &raw.systems {
        if sys.attributes.dim() != d {
            return Err(Error::AttributeOutOfRange(format!(
                "system {} has {} attributes, expected {d}",
                sys.id,
                sys.attributes.dim()
            )));
        }
        for (dim, (&v, [lo, hi])) in sys.attributes.values().iter().zip(&bounds).enumerate() {
            if !(v.is_finite() && *lo <= v && v <= *hi) {
                return Err(Error::AttributeOutOfRange(format!(
                    "system {} attribute {dim} = {v} outside [{lo}, {hi}]",
                    sys.id
                )));
            }
        }
    }

    let n = raw.systems.len();
    let p = raw.predicates.len();
    if raw.truth.len() != p {
        return Err(Error::DimensionMismatch(format!(
            "truth has {} entries for {p} predicates",
            raw.truth.len()
        )));
    }
    let mut configurations = Vec::with_capacity(raw.configurations.len());
    for (c, rows) in raw.configurations.iter().enumerate() {
        if rows.len() != n || rows.iter().any(|r| r.len() != p) {
            return Err(Error::DimensionMismatch(format!(
                "configuration {c} is not {n} systems x {p} predicates"
            )));
        }
        configurations.push(BeliefMatrix::from_rows(rows, BeliefRole::Raw)?);
    }

    Ok(Scenario {
        attributes_dim: d,
        systems: raw.systems,
        predicates: raw.predicates,
        truth: GroundTruth(raw.truth),
        configurations,
        attribute_bounds: raw.attribute_bounds,
    })
}

/// Builds and validates a scenario from in-memory parts with default bounds.
pub fn scenario(
    attributes: Vec<Vec<f64>>,
    labels: &[&str],
    truth: Vec<bool>,
    configurations: Vec<Vec<Vec<bool>>>,
) -> Result<Scenario> {
    let attributes_dim = attributes.first().map_or(0, Vec::len);
    validate_scenario(ScenarioFile {
        attributes_dim,
        systems: attributes
            .into_iter()
            .enumerate()
            .map(|(id, a)| AutonomousSystem {
                id,
                attributes: a.into(),
            })
            .collect(),
        predicates: labels
            .iter()
            .enumerate()
            .map(|(id, l)| Predicate {
                id,
                label: (*l).to_string(),
            })
            .collect(),
        truth,
        configurations,
        attribute_bounds: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn intersection_file() -> ScenarioFile {
        let attrs = [
            (1271.0, 53.3),
            (3766.0, 66.7),
            (748.0, 22.2),
            (915.0, 60.0),
            (0.0, 26.7),
        ];
        ScenarioFile {
            attributes_dim: 2,
            systems: attrs
                .iter()
                .enumerate()
                .map(|(id, &(a, b))| AutonomousSystem {
                    id,
                    attributes: vec![a, b].into(),
                })
                .collect(),
            predicates: vec![Predicate {
                id: 0,
                label: "pedestrian on crosswalk".into(),
            }],
            truth: vec![true],
            configurations: vec![[1, 1, 0, 1, 0].iter().map(|&b| vec![b == 1]).collect()],
            attribute_bounds: Some(vec![[0.0, 4000.0], [0.0, 100.0]]),
        }
    }

    #[test]
    fn intersection_vehicles_are_accepted() {
        let s = validate_scenario(intersection_file()).unwrap();
        assert_eq!(s.n_systems(), 5);
        assert_eq!(
            s.configuration(0).unwrap().column(0),
            vec![true, true, false, true, false]
        );
    }

    #[test]
    fn zero_predicates_is_empty() {
        let mut f = intersection_file();
        f.predicates.clear();
        f.truth.clear();
        f.configurations = vec![vec![vec![]; 5]];
        assert!(matches!(validate_scenario(f), Err(Error::EmptyScenario(_))));
    }

    #[test]
    fn attribute_above_bound_rejected() {
        let s = scenario(
            vec![vec![103.2, 50.0], vec![10.0, 10.0]],
            &["p"],
            vec![true],
            vec![vec![vec![true], vec![false]]],
        );
        assert!(matches!(s, Err(Error::AttributeOutOfRange(_))));
    }

    #[test]
    fn attribute_length_mismatch_rejected() {
        let mut f = intersection_file();
        f.systems[3].attributes = vec![1.0].into();
        assert!(matches!(
            validate_scenario(f),
            Err(Error::AttributeOutOfRange(_))
        ));
    }

    #[test]
    fn matrix_shape_mismatch_rejected() {
        let mut f = intersection_file();
        f.configurations[0].pop();
        assert!(matches!(
            validate_scenario(f),
            Err(Error::DimensionMismatch(_))
        ));
        let mut f = intersection_file();
        f.configurations[0][2].push(true);
        assert!(matches!(
            validate_scenario(f),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn unknown_fields_rejected() {
        let json = r#"{"attributes_dim":1,"systems":[{"id":0,"attributes":[1.0]}],
            "predicates":[{"id":0,"label":"p"}],"truth":[true],
            "configurations":[[[true]]],"extra":1}"#;
        assert!(Scenario::from_json(json).is_err());
    }

    #[test]
    fn validation_is_idempotent_and_round_trips() {
        let s = validate_scenario(intersection_file()).unwrap();
        let again = validate_scenario(s.to_file()).unwrap();
        assert_eq!(s, again);
        let json = s.to_json();
        let back = Scenario::from_json(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json(), json);
    }
}
