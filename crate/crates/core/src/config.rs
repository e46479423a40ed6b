//! Experiment and sweep configuration documents (JSON).
//!
//! ```json
//! {
//!   "network": {
//!     "n": 20,
//!     "interference": {"kofn": 5},
//!     "weights": 1.0,
//!     "channel": {"good": 0.9, "bad": 0.1, "theta": 0.25, "assignment": "first"}
//!   },
//!   "policies": [{"kind": "piC"}, {"kind": "piQ", "V": 1.0}, {"kind": "piA", "beta": 1.0}],
//!   "horizon": 100000,
//!   "seeds": [1, 2, 3],
//!   "output": "results/base",
//!   "trace_level": "none"
//! }
//! ```
//!
//! `interference` is either `{"kofn": k}` or `{"explicit": [[0, 1], [2]]}`;
//! `weights` is a scalar or a per-link list; `channel` is either the
//! good/bad form above or `{"per_link": [...]}`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::network::{validate_network, ActivationSet, InterferenceSpec, NetworkSpec};
use crate::policy::PolicySpec;
use crate::sim::TraceLevel;

/// ChaCha stream used for the seeded-random bad-link assignment.
pub const ASSIGNMENT_STREAM: u64 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub network: NetworkConfig,
    pub policies: Vec<PolicySpec>,
    pub horizon: u64,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    /// Slots simulated before measurement starts.
    #[serde(default)]
    pub warmup: u64,
    #[serde(default = "default_output")]
    pub output: String,
    #[serde(default)]
    pub trace_level: TraceLevel,
}

fn default_seeds() -> Vec<u64> {
    (1..=10).collect()
}

fn default_output() -> String {
    "results/run".to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n: usize,
    pub interference: InterferenceConfig,
    #[serde(default)]
    pub weights: WeightsConfig,
    pub channel: ChannelConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterferenceConfig {
    Kofn(usize),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightsConfig {
    Scalar(f64),
    PerLink(Vec<f64>),
}

impl Default for WeightsConfig {
    fn default() -> Self {
        WeightsConfig::Scalar(1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelConfig {
    GoodBad(GoodBadChannel),
    PerLink(PerLinkChannel),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoodBadChannel {
    pub good: f64,
    pub bad: f64,
    pub theta: f64,
    #[serde(default)]
    pub assignment: BadLinkAssignment,
    /// Seed of the random assignment; ignored for `first`.
    #[serde(default)]
    pub assignment_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerLinkChannel {
    pub per_link: Vec<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadLinkAssignment {
    /// Links `0..ceil(theta n)` are bad.
    #[default]
    #[serde(rename = "first")]
    First,
    #[serde(rename = "seeded_random")]
    SeededRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "V")]
    V,
    /// Values are measured-slot checkpoints.
    #[serde(rename = "time")]
    Time,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::Theta => "theta",
            SweepAxis::Beta => "beta",
            SweepAxis::V => "V",
            SweepAxis::Time => "time",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub base: ExperimentConfig,
}

/// One schema or semantic problem, located by a field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigIssue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid configuration: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ConfigError(pub Vec<ConfigIssue>);

fn issue(path: impl Into<String>, message: impl Into<String>) -> ConfigIssue {
    ConfigIssue {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "<root>".to_string() } else { path };
        ConfigError(vec![issue(path, e.into_inner().to_string())])
    })
}

fn short_hash(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

/// Number of bad links for a fraction `theta` of `n`: `ceil(theta n)`,
/// robust to products like `0.15 * 20 = 3.0000000000000004`.
pub fn bad_link_count(theta: f64, n: usize) -> usize {
    let x = theta * n as f64;
    let rounded = x.round();
    let count = if (x - rounded).abs() < 1e-9 { rounded } else { x.ceil() };
    (count.max(0.0) as usize).min(n)
}

impl ExperimentConfig {
    /// Parses and validates a configuration document.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let config: ExperimentConfig = parse_json(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Canonical serialized form: every field explicit, fixed key order.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// First 16 hex digits of the SHA-256 of the canonical form, with the
    /// output prefix cleared: where results go does not change them.
    pub fn config_hash(&self) -> String {
        let mut c = self.clone();
        c.output.clear();
        short_hash(&c.to_canonical_json())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let issues = self.issues();
        if issues.is_empty() {
            Ok(())
        } else {
            Err(ConfigError(issues))
        }
    }

    pub fn issues(&self) -> Vec<ConfigIssue> {
        let mut out = self.network.issues();
        if self.policies.is_empty() {
            out.push(issue("policies", "at least one policy is required"));
        }
        for (i, p) in self.policies.iter().enumerate() {
            if let Err(e) = p.check() {
                out.push(issue(format!("policies[{i}]"), e.to_string()));
            }
        }
        if out.is_empty() {
            let spec = self.network.build();
            for (i, p) in self.policies.iter().enumerate() {
                if *p == PolicySpec::RoundRobin && !spec.admits_singletons() {
                    out.push(issue(
                        format!("policies[{i}]"),
                        "round robin needs every single-link set to be feasible",
                    ));
                }
            }
        }
        if self.horizon == 0 {
            out.push(issue("horizon", "must be at least 1"));
        }
        if self.seeds.is_empty() {
            out.push(issue("seeds", "at least one seed is required"));
        }
        out
    }
}

impl NetworkConfig {
    pub fn issues(&self) -> Vec<ConfigIssue> {
        let mut out = Vec::new();
        let n = self.n;
        if n == 0 {
            out.push(issue("network.n", "must be at least 1"));
            return out;
        }
        if let WeightsConfig::PerLink(w) = &self.weights {
            if w.len() != n {
                out.push(issue("network.weights", format!("has {} entries, expected {n}", w.len())));
            }
        }
        match &self.channel {
            ChannelConfig::GoodBad(c) => {
                if !(0.0..=1.0).contains(&c.theta) {
                    out.push(issue("network.channel.theta", format!("must lie in [0, 1], got {}", c.theta)));
                }
                for (name, g) in [("good", c.good), ("bad", c.bad)] {
                    if !(g > 0.0 && g <= 1.0) {
                        out.push(issue(format!("network.channel.{name}"), format!("must lie in (0, 1], got {g}")));
                    }
                }
            }
            ChannelConfig::PerLink(c) => {
                if c.per_link.len() != n {
                    out.push(issue(
                        "network.channel.per_link",
                        format!("has {} entries, expected {n}", c.per_link.len()),
                    ));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for v in validate_network(&self.build()) {
            let path = match v {
                crate::network::Violation::NonPositiveWeight { .. } => "network.weights",
                crate::network::Violation::SuccessProbOutOfRange { .. } => "network.channel",
                _ => "network.interference",
            };
            out.push(issue(path, v.to_string()));
        }
        out
    }

    pub fn success_probs(&self) -> Vec<f64> {
        let n = self.n;
        match &self.channel {
            ChannelConfig::PerLink(c) => c.per_link.clone(),
            ChannelConfig::GoodBad(c) => {
                let bad = bad_link_count(c.theta, n);
                let mut order: Vec<usize> = (0..n).collect();
                if c.assignment == BadLinkAssignment::SeededRandom {
                    let mut rng = ChaCha8Rng::seed_from_u64(c.assignment_seed);
                    rng.set_stream(ASSIGNMENT_STREAM);
                    order.shuffle(&mut rng);
                }
                let mut gamma = vec![c.good; n];
                for &e in &order[..bad] {
                    gamma[e] = c.bad;
                }
                gamma
            }
        }
    }

    /// Builds the network. Does not validate; see [`NetworkConfig::issues`].
    pub fn build(&self) -> NetworkSpec {
        let weights = match &self.weights {
            WeightsConfig::Scalar(w) => vec![*w; self.n],
            WeightsConfig::PerLink(w) => w.clone(),
        };
        let interference = match &self.interference {
            InterferenceConfig::Kofn(k) => InterferenceSpec::KofN { k: *k },
            InterferenceConfig::Explicit(sets) => InterferenceSpec::Explicit {
                sets: sets.iter().map(|s| ActivationSet::new(s.iter().copied())).collect(),
            },
        };
        NetworkSpec {
            link_count: self.n,
            weights,
            success_probs: self.success_probs(),
            interference,
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self.interference {
            InterferenceConfig::Kofn(k) => Some(k),
            InterferenceConfig::Explicit(_) => None,
        }
    }
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let sweep: SweepSpec = parse_json(text)?;
        sweep.validate()?;
        Ok(sweep)
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep serializes")
    }

    /// Hash of the canonical form, output prefix cleared.
    pub fn config_hash(&self) -> String {
        let mut s = self.clone();
        s.base.output.clear();
        short_hash(&s.to_canonical_json())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut out: Vec<ConfigIssue> = self
            .base
            .issues()
            .into_iter()
            .map(|i| issue(format!("base.{}", i.path), i.message))
            .collect();
        if self.values.is_empty() {
            out.push(issue("values", "at least one value is required"));
        }
        for (i, &v) in self.values.iter().enumerate() {
            let path = format!("values[{i}]");
            if !v.is_finite() {
                out.push(issue(path, "must be finite"));
                continue;
            }
            let problem = match self.axis {
                SweepAxis::Theta if !(0.0..=1.0).contains(&v) => Some("theta must lie in [0, 1]".to_string()),
                SweepAxis::Beta if v < crate::policy::MIN_BETA => Some("beta must be at least -1".to_string()),
                SweepAxis::V if v <= 0.0 => Some("V must be positive".to_string()),
                SweepAxis::Time if v < 1.0 || v.fract() != 0.0 || v > self.base.horizon as f64 => {
                    Some(format!("checkpoint must be an integer in 1..={}", self.base.horizon))
                }
                _ => None,
            };
            if let Some(msg) = problem {
                out.push(issue(path, msg));
            }
        }
        let has = |kind: &str| self.base.policies.iter().any(|p| p.kind() == kind);
        match self.axis {
            SweepAxis::Theta if !matches!(self.base.network.channel, ChannelConfig::GoodBad(_)) => {
                out.push(issue("base.network.channel", "theta sweeps need the good/bad channel form"));
            }
            SweepAxis::Beta if !has("piA") => out.push(issue("base.policies", "beta sweeps need a piA policy")),
            SweepAxis::V if !has("piQ") => out.push(issue("base.policies", "V sweeps need a piQ policy")),
            _ => {}
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(ConfigError(out))
        }
    }

    /// The experiment run at one axis value. Policies the axis does not act
    /// on are dropped for `beta` and `V` sweeps.
    pub fn point_config(&self, value: f64) -> ExperimentConfig {
        let mut config = self.base.clone();
        match self.axis {
            SweepAxis::Theta => {
                if let ChannelConfig::GoodBad(c) = &mut config.network.channel {
                    c.theta = value;
                }
            }
            SweepAxis::Beta => {
                config.policies = config
                    .policies
                    .iter()
                    .filter(|p| p.kind() == "piA")
                    .map(|_| PolicySpec::AgeBased { beta: value })
                    .take(1)
                    .collect();
            }
            SweepAxis::V => {
                config.policies = config
                    .policies
                    .iter()
                    .filter(|p| p.kind() == "piQ")
                    .map(|_| PolicySpec::VirtualQueue { v: value })
                    .take(1)
                    .collect();
            }
            SweepAxis::Time => {}
        }
        config
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const BASE: &str = r#"{
        "network": {"n": 20, "interference": {"kofn": 5}, "weights": 1.0,
                    "channel": {"good": 0.9, "bad": 0.1, "theta": 0.25}},
        "policies": [{"kind": "piC"}, {"kind": "piQ", "V": 1}, {"kind": "piA", "beta": 1}],
        "horizon": 100000
    }"#;

    #[test]
    fn parses_base_config_with_defaults() {
        let c = ExperimentConfig::from_json(BASE).unwrap();
        assert_eq!(c.seeds, (1..=10).collect::<Vec<_>>());
        assert_eq!(c.trace_level, TraceLevel::None);
        let spec = c.network.build();
        assert_eq!(spec.success_probs.iter().filter(|&&g| g == 0.1).count(), 5);
        assert!(spec.success_probs[..5].iter().all(|&g| g == 0.1));
        assert_eq!(spec.interference, InterferenceSpec::KofN { k: 5 });
    }

    #[test]
    fn empty_policy_list_names_the_field() {
        let text = BASE.replace(
            r#"[{"kind": "piC"}, {"kind": "piQ", "V": 1}, {"kind": "piA", "beta": 1}]"#,
            "[]",
        );
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert_eq!(err.0, vec![issue("policies", "at least one policy is required")]);
    }

    #[test]
    fn schema_errors_carry_field_paths() {
        let text = BASE.replace(r#""horizon": 100000"#, r#""horizon": "long""#);
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert_eq!(err.0[0].path, "horizon");
        let text = BASE.replace(r#"{"kind": "piC"}"#, r#"{"kind": "piC", "beta": 2}"#);
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert!(err.0[0].path.starts_with("policies[0]"), "{err}");
        let text = BASE.replace(r#""horizon""#, r#""horizonn""#);
        assert!(ExperimentConfig::from_json(&text).is_err());
    }

    #[test]
    fn semantic_errors_carry_field_paths() {
        let text = BASE.replace(r#""theta": 0.25"#, r#""theta": 1.5"#);
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert_eq!(err.0[0].path, "network.channel.theta");

        let text = BASE.replace(r#""weights": 1.0"#, r#""weights": [1, 2]"#);
        assert_eq!(ExperimentConfig::from_json(&text).unwrap_err().0[0].path, "network.weights");

        let text = BASE.replace(r#"{"kofn": 5}"#, r#"{"explicit": [[0, 1]]}"#);
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert!(err.0.iter().all(|i| i.path == "network.interference"));
        assert_eq!(err.0.len(), 18);

        let text = BASE.replace(r#"{"kind": "piA", "beta": 1}"#, r#"{"kind": "piA", "beta": -3}"#);
        let err = ExperimentConfig::from_json(&text).unwrap_err();
        assert!(err.0[0].path.starts_with("policies[2]"), "{err}");
    }

    #[test]
    fn round_robin_needs_singletons() {
        let text = r#"{
            "network": {"n": 2, "interference": {"explicit": [[0, 1]]}, "channel": {"per_link": [1, 1]}},
            "policies": [{"kind": "roundrobin"}], "horizon": 10
        }"#;
        let err = ExperimentConfig::from_json(text).unwrap_err();
        assert_eq!(err.0[0].path, "policies[0]");
    }

    #[test]
    fn bad_link_count_rounds_up() {
        assert_eq!(bad_link_count(0.0, 20), 0);
        assert_eq!(bad_link_count(0.25, 20), 5);
        assert_eq!(bad_link_count(0.15, 20), 3);
        assert_eq!(bad_link_count(0.26, 20), 6);
        assert_eq!(bad_link_count(1.0, 20), 20);
        assert_eq!(bad_link_count(0.1, 3), 1);
    }

    #[test]
    fn seeded_random_assignment_is_reproducible() {
        let text = BASE.replace(
            r#""theta": 0.25}"#,
            r#""theta": 0.25, "assignment": "seeded_random", "assignment_seed": 7}"#,
        );
        let c = ExperimentConfig::from_json(&text).unwrap();
        let a = c.network.success_probs();
        assert_eq!(a, c.network.success_probs());
        assert_eq!(a.iter().filter(|&&g| g == 0.1).count(), 5);
        assert_ne!(a, ExperimentConfig::from_json(BASE).unwrap().network.success_probs());
    }

    #[test]
    fn hash_ignores_formatting() {
        let a = ExperimentConfig::from_json(BASE).unwrap();
        let compact: String = BASE.split_whitespace().collect();
        let b = ExperimentConfig::from_json(&compact).unwrap();
        assert_eq!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 16);
        let mut moved = a.clone();
        moved.output = "elsewhere/run".into();
        assert_eq!(a.config_hash(), moved.config_hash());
        let mut c = a.clone();
        c.seeds = vec![1];
        assert_ne!(a.config_hash(), c.config_hash());
    }

    #[test]
    fn sweep_validation() {
        let text = format!(r#"{{"axis": "theta", "values": [0, 0.5, 1], "base": {BASE}}}"#);
        let s = SweepSpec::from_json(&text).unwrap();
        assert_eq!(s.point_config(0.5).network.success_probs().iter().filter(|&&g| g == 0.1).count(), 10);

        let text = format!(r#"{{"axis": "beta", "values": [], "base": {BASE}}}"#);
        assert_eq!(SweepSpec::from_json(&text).unwrap_err().0[0].path, "values");

        let text = format!(r#"{{"axis": "V", "values": [0.1, -1], "base": {BASE}}}"#);
        assert_eq!(SweepSpec::from_json(&text).unwrap_err().0[0].path, "values[1]");

        let text = format!(r#"{{"axis": "time", "values": [10, 2.5], "base": {BASE}}}"#);
        assert_eq!(SweepSpec::from_json(&text).unwrap_err().0[0].path, "values[1]");

        let text = format!(r#"{{"axis": "beta", "values": [0, 1], "base": {BASE}}}"#);
        let s = SweepSpec::from_json(&text).unwrap();
        assert_eq!(s.point_config(0.0).policies, vec![PolicySpec::AgeBased { beta: 0.0 }]);
    }

    fn arb_config() -> impl Strategy<Value = ExperimentConfig> {
        let network = (2usize..30).prop_flat_map(|n| {
            (
                Just(n),
                1..=n,
                prop_oneof![
                    (0.1f64..5.0).prop_map(WeightsConfig::Scalar),
                    prop::collection::vec(0.1f64..5.0, n).prop_map(WeightsConfig::PerLink),
                ],
                prop_oneof![
                    (0.01f64..=1.0, 0.01f64..=1.0, 0.0f64..=1.0, any::<bool>(), any::<u64>()).prop_map(
                        |(good, bad, theta, random, assignment_seed)| {
                            ChannelConfig::GoodBad(GoodBadChannel {
                                good,
                                bad,
                                theta,
                                assignment: if random {
                                    BadLinkAssignment::SeededRandom
                                } else {
                                    BadLinkAssignment::First
                                },
                                assignment_seed,
                            })
                        }
                    ),
                    prop::collection::vec(0.01f64..=1.0, n).prop_map(|per_link| ChannelConfig::PerLink(PerLinkChannel { per_link })),
                ],
            )
                .prop_map(|(n, k, weights, channel)| NetworkConfig {
                    n,
                    interference: InterferenceConfig::Kofn(k),
                    weights,
                    channel,
                })
        });
        let policy = prop_oneof![
            Just(PolicySpec::Stationary),
            Just(PolicySpec::RoundRobin),
            (0.01f64..100.0).prop_map(|v| PolicySpec::VirtualQueue { v }),
            (-1.0f64..5.0).prop_map(|beta| PolicySpec::AgeBased { beta }),
        ];
        (
            network,
            prop::collection::vec(policy, 1..5),
            1u64..1_000_000,
            prop::collection::vec(any::<u64>(), 1..5),
            0u64..100,
        )
            .prop_map(|(network, policies, horizon, seeds, warmup)| ExperimentConfig {
                network,
                policies,
                horizon,
                seeds,
                warmup,
                output: "out/x".into(),
                trace_level: TraceLevel::Aggregates,
            })
    }

    proptest! {
        #[test]
        fn canonical_form_round_trips(config in arb_config()) {
            let text = config.to_canonical_json();
            let parsed = ExperimentConfig::from_json(&text).unwrap();
            prop_assert_eq!(&parsed, &config);
            prop_assert_eq!(parsed.to_canonical_json(), text);
        }
    }
}
