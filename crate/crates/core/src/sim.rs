//! The slotted closed loop.
//!
//! Within slot `t` the order is fixed: the policy consumes the feedback of
//! slot `t - 1`, emits `m_t`, the channel states `S_e(t)` are drawn for every
//! link, and ages advance.
//!
//! Randomness comes from ChaCha8 seeded with the run seed. Channel states
//! use stream 0 and are drawn for all links every slot in link order, so the
//! draw for `(slot, link)` depends only on the seed and different policies
//! on the same seed see identical channels. Policy randomness uses stream 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{AgeAccumulator, SimulationResult};
use crate::network::{ActivationSet, InvalidNetwork, NetworkSpec};
use crate::policy::{PolicyState, SlotFeedback};

pub const CHANNEL_STREAM: u64 = 0;
pub const POLICY_STREAM: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceLevel {
    #[default]
    None,
    /// Running estimates at checkpoints.
    Aggregates,
    /// One [`SlotTrace`] per measured slot, plus checkpoints.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Number of measured slots.
    pub horizon: u64,
    pub seed: u64,
    /// Slots simulated before measurement starts.
    #[serde(default)]
    pub warmup: u64,
    #[serde(default)]
    pub trace_level: TraceLevel,
    /// Measured-slot counts at which running estimates are recorded. Empty
    /// means log-spaced defaults when `trace_level` is not `None`.
    #[serde(default)]
    pub checkpoints: Vec<u64>,
}

impl RunConfig {
    pub fn new(horizon: u64, seed: u64) -> Self {
        RunConfig {
            horizon,
            seed,
            warmup: 0,
            trace_level: TraceLevel::None,
            checkpoints: Vec::new(),
        }
    }
}

/// Per-link ages, in slots. Always at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgeVector(pub Vec<u64>);

impl AgeVector {
    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// Channel states of one slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelDraw {
    pub states: Vec<bool>,
}

impl ChannelDraw {
    /// Draws one Bernoulli(`gamma_e`) state per link, in link order.
    pub fn sample<R: Rng + ?Sized>(success_probs: &[f64], rng: &mut R) -> Self {
        let mut states = vec![false; success_probs.len()];
        fill_channel(success_probs, rng, &mut states);
        ChannelDraw { states }
    }
}

fn fill_channel<R: Rng + ?Sized>(success_probs: &[f64], rng: &mut R, out: &mut [bool]) {
    for (s, &g) in out.iter_mut().zip(success_probs) {
        *s = rng.gen::<f64>() < g;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotTrace {
    /// Measured-slot index, starting at 0 after warmup.
    pub t: u64,
    pub scheduled: ActivationSet,
    /// `U_e S_e` per link.
    pub successes: Vec<bool>,
    /// Ages at the start of the next slot.
    pub ages_after: Option<AgeVector>,
}

/// Running network estimates after `t` measured slots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: u64,
    pub network_peak: f64,
    pub network_avg: f64,
}

/// Everything one run produces.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationRun {
    pub result: SimulationResult,
    pub accumulator: AgeAccumulator,
    /// Ages at the start of the measured window.
    pub initial_ages: AgeVector,
    pub checkpoints: Vec<Checkpoint>,
    pub trace: Vec<SlotTrace>,
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    InvalidNetwork(#[from] InvalidNetwork),
    #[error("horizon must be at least 1")]
    EmptyHorizon,
    #[error("policy chose infeasible set {set} at slot {t}")]
    InfeasibleDecision { t: u64, set: ActivationSet },
}

/// All ages start at 1.
pub fn initial_ages(spec: &NetworkSpec) -> AgeVector {
    AgeVector(vec![1; spec.link_count])
}

/// `A_e(t+1) = 1` if `e` was scheduled and its channel was on, else `A_e(t) + 1`.
pub fn step_age(ages: &AgeVector, scheduled: &ActivationSet, draw: &ChannelDraw) -> AgeVector {
    let mut next = ages.clone();
    advance(&mut next.0, scheduled, &draw.states);
    next
}

fn advance(ages: &mut [u64], scheduled: &ActivationSet, channel: &[bool]) {
    for a in ages.iter_mut() {
        *a += 1;
    }
    for &e in scheduled.members() {
        if channel[e] {
            ages[e] = 1;
        }
    }
}

/// Log-spaced checkpoints: 1, 2, 5 times powers of ten up to the horizon,
/// always ending at the horizon.
pub fn log_checkpoints(horizon: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let c = m * decade;
            if c >= horizon {
                break 'outer;
            }
            out.push(c);
        }
        decade *= 10;
    }
    out.push(horizon);
    out
}

/// Runs `run.warmup + run.horizon` slots of `policy` on `spec`.
///
/// Identical inputs give identical outputs.
pub fn run_simulation(spec: &NetworkSpec, mut policy: PolicyState, run: &RunConfig) -> Result<SimulationRun, SimError> {
    spec.validate()?;
    if run.horizon == 0 {
        return Err(SimError::EmptyHorizon);
    }
    let n = spec.link_count;
    let descriptor = policy.descriptor();

    let mut channel_rng = ChaCha8Rng::seed_from_u64(run.seed);
    channel_rng.set_stream(CHANNEL_STREAM);
    let mut policy_rng = ChaCha8Rng::seed_from_u64(run.seed);
    policy_rng.set_stream(POLICY_STREAM);

    let mut checkpoints_at = match (run.trace_level, run.checkpoints.is_empty()) {
        (TraceLevel::None, true) => Vec::new(),
        (_, true) => log_checkpoints(run.horizon),
        (_, false) => run.checkpoints.clone(),
    };
    checkpoints_at.retain(|&c| c >= 1 && c <= run.horizon);
    checkpoints_at.sort_unstable();
    checkpoints_at.dedup();
    let mut next_checkpoint = checkpoints_at.iter().copied().peekable();

    let mut ages = initial_ages(spec).0;
    let mut channel = vec![false; n];
    let mut feedback = SlotFeedback {
        scheduled: ActivationSet::empty(),
        successes: vec![false; n],
    };
    let mut acc = AgeAccumulator::new(n);
    let mut initial = AgeVector(ages.clone());
    let mut checkpoints = Vec::with_capacity(checkpoints_at.len());
    let mut trace = Vec::new();

    let total = run.warmup + run.horizon;
    for slot in 0..total {
        let measuring = slot >= run.warmup;
        if slot == run.warmup {
            initial = AgeVector(ages.clone());
        }
        if slot > 0 {
            policy.observe(&feedback);
        }
        let scheduled = policy.decide(&ages, spec, &mut policy_rng);
        if !spec.is_feasible(&scheduled) {
            return Err(SimError::InfeasibleDecision { t: slot, set: scheduled });
        }
        fill_channel(&spec.success_probs, &mut channel_rng, &mut channel);

        for &e in feedback.scheduled.members() {
            feedback.successes[e] = false;
        }
        for &e in scheduled.members() {
            feedback.successes[e] = channel[e];
        }

        if measuring {
            acc.record(&ages, &scheduled, &feedback.successes);
        }
        advance(&mut ages, &scheduled, &channel);

        if measuring {
            let t = slot - run.warmup + 1;
            if run.trace_level == TraceLevel::Full {
                trace.push(SlotTrace {
                    t: t - 1,
                    scheduled: scheduled.clone(),
                    successes: feedback.successes.clone(),
                    ages_after: Some(AgeVector(ages.clone())),
                });
            }
            if next_checkpoint.peek() == Some(&t) {
                next_checkpoint.next();
                let r = SimulationResult::from_accumulator(spec, &acc, descriptor.clone());
                checkpoints.push(Checkpoint {
                    t,
                    network_peak: r.network_peak,
                    network_avg: r.network_avg,
                });
            }
        }
        feedback.scheduled = scheduled;
    }

    Ok(SimulationRun {
        result: SimulationResult::from_accumulator(spec, &acc, descriptor),
        accumulator: acc,
        initial_ages: initial,
        checkpoints,
        trace,
    })
}
