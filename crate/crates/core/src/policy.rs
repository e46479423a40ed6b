//! Per-slot scheduling rules.
//!
//! Every policy sees only what the scheduler may know at the start of slot
//! `t`: the current ages and the feedback of slot `t - 1` (the scheduled set
//! and which of its members succeeded). The channel state of slot `t` is
//! never passed to a policy.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{activation_frequencies, max_weight_set, ActivationSet, FrequencyError, NetworkSpec};

/// Smallest admissible `beta` for the age-based policy. Below it,
/// `A^2 + beta * A` is negative at `A = 1`.
pub const MIN_BETA: f64 = -1.0;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PolicyError {
    #[error("beta = {0} is below the supported minimum of -1")]
    BetaTooSmall(f64),
    #[error("V must be positive and finite, got {0}")]
    InvalidV(f64),
    #[error("invalid stationary distribution: {0}")]
    Distribution(#[from] FrequencyError),
    #[error("stationary support set {index} ({set}) is not feasible")]
    InfeasibleSet { index: usize, set: ActivationSet },
    #[error("round robin needs every single-link set to be feasible")]
    SingletonsInfeasible,
    #[error("round robin start index {start} is outside 0..{link_count}")]
    StartOutOfRange { start: usize, link_count: usize },
}

/// What the scheduler learns at the start of slot `t` about slot `t - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotFeedback {
    pub scheduled: ActivationSet,
    /// `successes[e]` is `U_e S_e`; always false for unscheduled links.
    pub successes: Vec<bool>,
}

impl SlotFeedback {
    pub fn success(&self, link: usize) -> bool {
        self.successes[link]
    }
}

/// Serializable description of a policy: its kind and parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPolicySpec", into = "RawPolicySpec")]
pub enum PolicySpec {
    /// Peak-age-optimal stationary randomized policy.
    Stationary,
    VirtualQueue { v: f64 },
    AgeBased { beta: f64 },
    RoundRobin,
}

/// Wire form of [`PolicySpec`]: `{"kind": "piQ", "V": 1.0}` and friends.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolicySpec {
    kind: String,
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
}

impl TryFrom<RawPolicySpec> for PolicySpec {
    type Error = String;

    fn try_from(raw: RawPolicySpec) -> Result<Self, Self::Error> {
        let spec = match raw.kind.as_str() {
            "piC" | "roundrobin" => {
                if raw.v.is_some() || raw.beta.is_some() {
                    return Err(format!("policy kind {} takes no parameters", raw.kind));
                }
                if raw.kind == "piC" {
                    PolicySpec::Stationary
                } else {
                    PolicySpec::RoundRobin
                }
            }
            "piQ" => {
                if raw.beta.is_some() {
                    return Err("policy kind piQ takes V, not beta".into());
                }
                PolicySpec::VirtualQueue { v: raw.v.unwrap_or(1.0) }
            }
            "piA" => {
                if raw.v.is_some() {
                    return Err("policy kind piA takes beta, not V".into());
                }
                PolicySpec::AgeBased {
                    beta: raw.beta.unwrap_or(1.0),
                }
            }
            other => return Err(format!("unknown policy kind {other:?} (expected piC, piQ, piA or roundrobin)")),
        };
        spec.check().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

impl From<PolicySpec> for RawPolicySpec {
    fn from(spec: PolicySpec) -> Self {
        let (v, beta) = match spec {
            PolicySpec::VirtualQueue { v } => (Some(v), None),
            PolicySpec::AgeBased { beta } => (None, Some(beta)),
            _ => (None, None),
        };
        RawPolicySpec {
            kind: spec.kind().to_string(),
            v,
            beta,
        }
    }
}

impl PolicySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            PolicySpec::Stationary => "piC",
            PolicySpec::VirtualQueue { .. } => "piQ",
            PolicySpec::AgeBased { .. } => "piA",
            PolicySpec::RoundRobin => "roundrobin",
        }
    }

    pub fn check(&self) -> Result<(), PolicyError> {
        match *self {
            PolicySpec::VirtualQueue { v } if !(v > 0.0 && v.is_finite()) => Err(PolicyError::InvalidV(v)),
            PolicySpec::AgeBased { beta } if !(beta >= MIN_BETA && beta.is_finite()) => {
                Err(PolicyError::BetaTooSmall(beta))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicySpec::VirtualQueue { v } => write!(f, "piQ(V={v})"),
            PolicySpec::AgeBased { beta } => write!(f, "piA(beta={beta})"),
            other => f.write_str(other.kind()),
        }
    }
}

/// Samples a fixed distribution over activation sets every slot.
#[derive(Clone, Debug, PartialEq)]
pub struct StationaryPolicy {
    sets: Vec<ActivationSet>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl StationaryPolicy {
    pub fn new(spec: &NetworkSpec, sets: Vec<ActivationSet>, probs: Vec<f64>) -> Result<Self, PolicyError> {
        activation_frequencies(spec.link_count, &sets, &probs)?;
        if let Some((index, set)) = sets.iter().enumerate().find(|(_, s)| !spec.is_feasible(s)) {
            return Err(PolicyError::InfeasibleSet {
                index,
                set: set.clone(),
            });
        }
        let cumulative = probs
            .iter()
            .scan(0.0, |acc, p| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Ok(StationaryPolicy { sets, probs, cumulative })
    }

    pub fn sets(&self) -> &[ActivationSet] {
        &self.sets
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Inverse-CDF lookup over the ordered support; residual mass idles.
    pub fn decide_with_draw(&self, u: f64) -> ActivationSet {
        let i = self.cumulative.partition_point(|&c| c <= u);
        self.sets.get(i).cloned().unwrap_or_default()
    }

    pub fn decide<R: Rng + ?Sized>(&self, rng: &mut R) -> ActivationSet {
        self.decide_with_draw(rng.gen::<f64>())
    }
}

/// Drift-plus-penalty policy driven by per-link virtual queues.
#[derive(Clone, Debug, PartialEq)]
pub struct VirtualQueuePolicy {
    q: Vec<f64>,
    v: f64,
    scratch: Vec<f64>,
}

impl VirtualQueuePolicy {
    /// All queues start at 1.
    pub fn new(link_count: usize, v: f64) -> Result<Self, PolicyError> {
        PolicySpec::VirtualQueue { v }.check()?;
        Ok(VirtualQueuePolicy {
            q: vec![1.0; link_count],
            v,
            scratch: vec![0.0; link_count],
        })
    }

    pub fn queues(&self) -> &[f64] {
        &self.q
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    /// `Q_e <- max(Q_e + sqrt(V / Q_e) - U_e S_e, 1)` for every link.
    pub fn update(&mut self, feedback: &SlotFeedback) {
        for (e, q) in self.q.iter_mut().enumerate() {
            let served = if feedback.success(e) { 1.0 } else { 0.0 };
            *q = (*q + (self.v / *q).sqrt() - served).max(1.0);
        }
    }

    pub fn decide(&mut self, spec: &NetworkSpec) -> ActivationSet {
        for (e, value) in self.scratch.iter_mut().enumerate() {
            *value = spec.weights[e] * spec.success_probs[e] * self.q[e];
        }
        max_weight_set(spec, &self.scratch)
    }
}

/// Schedules the set maximizing `sum w_e gamma_e (A_e^2 + beta A_e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AgeBasedPolicy {
    beta: f64,
    scratch: Vec<f64>,
}

impl AgeBasedPolicy {
    pub fn new(link_count: usize, beta: f64) -> Result<Self, PolicyError> {
        PolicySpec::AgeBased { beta }.check()?;
        Ok(AgeBasedPolicy {
            beta,
            scratch: vec![0.0; link_count],
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn decide(&mut self, ages: &[u64], spec: &NetworkSpec) -> ActivationSet {
        for (e, value) in self.scratch.iter_mut().enumerate() {
            let a = ages[e] as f64;
            // clamp -0.0 and rounding noise at the beta = -1 boundary
            *value = (spec.weights[e] * spec.success_probs[e] * (a * a + self.beta * a)).max(0.0);
        }
        max_weight_set(spec, &self.scratch)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRobinPolicy {
    next_index: usize,
    link_count: usize,
}

impl RoundRobinPolicy {
    pub fn new(spec: &NetworkSpec, start: usize) -> Result<Self, PolicyError> {
        if !spec.admits_singletons() {
            return Err(PolicyError::SingletonsInfeasible);
        }
        if start >= spec.link_count {
            return Err(PolicyError::StartOutOfRange {
                start,
                link_count: spec.link_count,
            });
        }
        Ok(RoundRobinPolicy {
            next_index: start,
            link_count: spec.link_count,
        })
    }

    pub fn next_index(&self) -> usize {
        self.next_index
    }

    pub fn decide(&mut self) -> ActivationSet {
        let set = ActivationSet::singleton(self.next_index);
        self.next_index = (self.next_index + 1) % self.link_count;
        set
    }
}

/// The state of one policy instance, owned by a single simulation run.
#[derive(Clone, Debug, PartialEq)]
pub enum PolicyState {
    Stationary(StationaryPolicy),
    VirtualQueue(VirtualQueuePolicy),
    AgeBased(AgeBasedPolicy),
    RoundRobin(RoundRobinPolicy),
}

impl PolicyState {
    /// Consumes the feedback of the previous slot. Only the virtual-queue
    /// policy keeps state that depends on it.
    pub fn observe(&mut self, feedback: &SlotFeedback) {
        if let PolicyState::VirtualQueue(p) = self {
            p.update(feedback);
        }
    }

    pub fn decide<R: Rng + ?Sized>(&mut self, ages: &[u64], spec: &NetworkSpec, rng: &mut R) -> ActivationSet {
        match self {
            PolicyState::Stationary(p) => p.decide(rng),
            PolicyState::VirtualQueue(p) => p.decide(spec),
            PolicyState::AgeBased(p) => p.decide(ages, spec),
            PolicyState::RoundRobin(p) => p.decide(),
        }
    }

    pub fn descriptor(&self) -> PolicySpec {
        match self {
            PolicyState::Stationary(_) => PolicySpec::Stationary,
            PolicyState::VirtualQueue(p) => PolicySpec::VirtualQueue { v: p.v },
            PolicyState::AgeBased(p) => PolicySpec::AgeBased { beta: p.beta },
            PolicyState::RoundRobin(_) => PolicySpec::RoundRobin,
        }
    }
}
