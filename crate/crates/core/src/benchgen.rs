//! Seeded synthetic scenarios: uniform quality attributes, quality-linked
//! error rates and independent belief draws.
//!
//! Every scenario is a pure function of its [`GeneratorSpec`]. The master
//! seed keys a ChaCha8 generator; stream 0 draws attributes and ground truth,
//! stream `c + 1` draws the beliefs of configuration `c`, so configurations
//! can be generated in any order or in parallel with identical results.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    validate_scenario, AttributeVector, AutonomousSystem, BeliefMatrix, BeliefRole, GroundTruth,
    Predicate, Scenario, ScenarioFile,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorSpec {
    pub n_systems: usize,
    pub n_attributes: usize,
    pub n_predicates: usize,
    pub n_configurations: usize,
    /// `[lo, hi]` quality percentages attributes are drawn from.
    pub quality_range: [f64; 2],
    /// Slope of the linear quality-to-error map.
    pub error_scale: f64,
    pub seed: u64,
}

impl Default for GeneratorSpec {
    /// 20 agents, 2 attributes, 1 predicate, 100 configurations over the full
    /// quality range.
    fn default() -> Self {
        GeneratorSpec {
            n_systems: 20,
            n_attributes: 2,
            n_predicates: 1,
            n_configurations: 100,
            quality_range: [0.0, 100.0],
            error_scale: 1.0,
            seed: 0,
        }
    }
}

impl GeneratorSpec {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_profile(mut self, profile: DistributionProfile) -> Self {
        self.quality_range = profile.quality_range();
        self
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.quality_range;
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 100.0) {
            return Err(Error::InvalidRange(format!(
                "quality range [{lo}, {hi}] is not inside [0, 100]"
            )));
        }
        if !(self.error_scale.is_finite() && self.error_scale > 0.0) {
            return Err(Error::InvalidRange(format!(
                "error scale {} must be positive",
                self.error_scale
            )));
        }
        for (name, v) in [
            ("n_systems", self.n_systems),
            ("n_attributes", self.n_attributes),
            ("n_predicates", self.n_predicates),
            ("n_configurations", self.n_configurations),
        ] {
            if v == 0 {
                return Err(Error::InvalidRange(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    fn stream(&self, id: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(id);
        rng
    }
}

/// Group-quality presets. Each maps a band of per-agent error rates back to
/// the quality range that produces it under `error_scale = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistributionProfile {
    /// Poor group, error rates 80-95%.
    Dist1,
    /// Mixed group, error rates 26-90%.
    Dist2,
    /// Good group, error rates 0-64%.
    Dist3,
    /// High-quality group, error rates 0-22%.
    Dist4,
}

impl DistributionProfile {
    pub const ALL: [DistributionProfile; 4] = [
        DistributionProfile::Dist1,
        DistributionProfile::Dist2,
        DistributionProfile::Dist3,
        DistributionProfile::Dist4,
    ];

    pub fn quality_range(self) -> [f64; 2] {
        match self {
            DistributionProfile::Dist1 => [5.0, 20.0],
            DistributionProfile::Dist2 => [10.0, 74.0],
            DistributionProfile::Dist3 => [36.0, 100.0],
            DistributionProfile::Dist4 => [78.0, 100.0],
        }
    }

    /// Error-rate band the preset targets, as fractions.
    pub fn error_band(self) -> [f64; 2] {
        match self {
            DistributionProfile::Dist1 => [0.80, 0.95],
            DistributionProfile::Dist2 => [0.26, 0.90],
            DistributionProfile::Dist3 => [0.0, 0.64],
            DistributionProfile::Dist4 => [0.0, 0.22],
        }
    }
}

impl fmt::Display for DistributionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = DistributionProfile::ALL
            .iter()
            .position(|p| p == self)
            .unwrap()
            + 1;
        write!(f, "dist{i}")
    }
}

impl FromStr for DistributionProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dist1" => Ok(DistributionProfile::Dist1),
            "dist2" => Ok(DistributionProfile::Dist2),
            "dist3" => Ok(DistributionProfile::Dist3),
            "dist4" => Ok(DistributionProfile::Dist4),
            _ => Err(Error::InvalidRange(format!("unknown profile `{s}`"))),
        }
    }
}

/// Draws `n_systems` attribute vectors uniformly from the quality range.
pub fn gen_attributes<R: Rng>(spec: &GeneratorSpec, rng: &mut R) -> Result<Vec<AttributeVector>> {
    spec.validate()?;
    let [lo, hi] = spec.quality_range;
    Ok((0..spec.n_systems)
        .map(|_| {
            (0..spec.n_attributes)
                .map(|_| if lo == hi { lo } else { rng.gen_range(lo..=hi) })
                .collect::<Vec<f64>>()
                .into()
        })
        .collect())
}

/// `clamp(scale * (1 - mean quality / 100), 0, 1)`.
pub fn error_rate(attrs: &AttributeVector, scale: f64) -> f64 {
    (scale * (1.0 - attrs.mean() / 100.0)).clamp(0.0, 1.0)
}

/// Each agent reports the truth except with its own error probability.
pub fn gen_beliefs<R: Rng>(
    systems: &[AutonomousSystem],
    truth: &GroundTruth,
    scale: f64,
    rng: &mut R,
) -> BeliefMatrix {
    let mut m = BeliefMatrix::filled(systems.len(), truth.len(), false, BeliefRole::Raw);
    for (a, sys) in systems.iter().enumerate() {
        let eps = error_rate(&sys.attributes, scale);
        for p in 0..truth.len() {
            let wrong = rng.gen_bool(eps);
            m.set(a, p, truth.get(p) != wrong);
        }
    }
    m
}

/// Generates a full scenario from its spec.
pub fn gen_scenario(spec: &GeneratorSpec) -> Result<Scenario> {
    spec.validate()?;
    let mut base = spec.stream(0);
    let systems: Vec<AutonomousSystem> = gen_attributes(spec, &mut base)?
        .into_iter()
        .enumerate()
        .map(|(id, attributes)| AutonomousSystem { id, attributes })
        .collect();
    let truth = GroundTruth((0..spec.n_predicates).map(|_| base.gen_bool(0.5)).collect());
    let configurations: Vec<Vec<Vec<bool>>> = (0..spec.n_configurations)
        .into_par_iter()
        .map(|c| {
            let mut rng = spec.stream(c as u64 + 1);
            gen_beliefs(&systems, &truth, spec.error_scale, &mut rng).rows()
        })
        .collect();
    validate_scenario(ScenarioFile {
        attributes_dim: spec.n_attributes,
        systems,
        predicates: (0..spec.n_predicates)
            .map(|id| Predicate {
                id,
                label: format!("p{id}"),
            })
            .collect(),
        truth: truth.0,
        configurations,
        attribute_bounds: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attributes_are_deterministic() {
        let spec = GeneratorSpec::default().with_seed(11);
        let a = gen_attributes(&spec, &mut spec.stream(0)).unwrap();
        let b = gen_attributes(&spec, &mut spec.stream(0)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
    }

    #[test]
    fn degenerate_range() {
        let spec = GeneratorSpec {
            quality_range: [90.0, 90.0],
            ..GeneratorSpec::default()
        };
        let a = gen_attributes(&spec, &mut spec.stream(0)).unwrap();
        assert!(a.iter().flat_map(|v| v.values()).all(|&x| x == 90.0));
    }

    #[test]
    fn samples_stay_in_range() {
        let spec = GeneratorSpec {
            n_systems: 500,
            quality_range: [80.0, 95.0],
            ..GeneratorSpec::default()
        };
        let a = gen_attributes(&spec, &mut spec.stream(0)).unwrap();
        let all: Vec<f64> = a.iter().flat_map(|v| v.values().to_vec()).collect();
        assert_eq!(all.len(), 1000);
        assert!(all.iter().all(|&x| (80.0..=95.0).contains(&x)));
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            GeneratorSpec {
                quality_range: [60.0, 40.0],
                ..Default::default()
            },
            GeneratorSpec {
                quality_range: [0.0, 101.0],
                ..Default::default()
            },
            GeneratorSpec {
                error_scale: 0.0,
                ..Default::default()
            },
            GeneratorSpec {
                n_systems: 0,
                ..Default::default()
            },
        ];
        for spec in bad {
            assert!(matches!(gen_scenario(&spec), Err(Error::InvalidRange(_))));
        }
    }

    #[test]
    fn error_rate_examples() {
        assert_eq!(error_rate(&vec![100.0, 100.0].into(), 3.0), 0.0);
        assert_eq!(error_rate(&vec![0.0, 0.0].into(), 1.0), 1.0);
        assert!((error_rate(&vec![80.0, 60.0].into(), 1.0) - 0.30).abs() < 1e-12);
        assert_eq!(error_rate(&vec![0.0].into(), 2.5), 1.0);
    }

    fn systems_with(quality: f64, n: usize) -> Vec<AutonomousSystem> {
        (0..n)
            .map(|id| AutonomousSystem {
                id,
                attributes: vec![quality, quality].into(),
            })
            .collect()
    }

    #[test]
    fn beliefs_follow_error_rate() {
        let truth = GroundTruth(vec![true, false, true]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let perfect = gen_beliefs(&systems_with(100.0, 4), &truth, 1.0, &mut rng);
        assert!((0..4).all(|a| (0..3).all(|p| perfect.get(a, p) == truth.get(p))));
        let hopeless = gen_beliefs(&systems_with(0.0, 4), &truth, 1.0, &mut rng);
        assert!((0..4).all(|a| (0..3).all(|p| hopeless.get(a, p) != truth.get(p))));
    }

    #[test]
    fn half_error_rate_concentrates() {
        let truth = GroundTruth(vec![true; 100]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = gen_beliefs(&systems_with(50.0, 100), &truth, 1.0, &mut rng);
        let wrong = (0..100)
            .flat_map(|a| (0..100).map(move |p| (a, p)))
            .filter(|&(a, p)| !m.get(a, p))
            .count();
        let frac = wrong as f64 / 10_000.0;
        assert!((frac - 0.5).abs() <= 0.02, "{frac}");
    }

    #[test]
    fn default_scale_scenario_shape() {
        let s = gen_scenario(&GeneratorSpec::default().with_seed(3)).unwrap();
        assert_eq!(s.n_systems(), 20);
        assert_eq!(s.configurations().len(), 100);
        assert_eq!(s.attributes_dim(), 2);
        let one = gen_scenario(&GeneratorSpec {
            n_configurations: 1,
            ..GeneratorSpec::default()
        })
        .unwrap();
        assert_eq!(one.configurations().len(), 1);
    }

    #[test]
    fn same_seed_same_json() {
        let spec = GeneratorSpec::default().with_seed(99);
        assert_eq!(
            gen_scenario(&spec).unwrap().to_json(),
            gen_scenario(&spec).unwrap().to_json()
        );
        assert_ne!(
            gen_scenario(&spec).unwrap().to_json(),
            gen_scenario(&spec.clone().with_seed(100))
                .unwrap()
                .to_json()
        );
    }

    #[test]
    fn profiles_parse() {
        for p in DistributionProfile::ALL {
            assert_eq!(p.to_string().parse::<DistributionProfile>().unwrap(), p);
        }
    }
}
