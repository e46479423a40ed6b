//! Links, their weights and channel statistics, and the family of feasible
//! activation sets.
//!
//! Two interference descriptions are supported: `KofN`, where any set of at
//! most `k` links may transmit together, and `Explicit`, where exactly the
//! listed sets (and the empty set) are feasible. The incidence matrix of the
//! family is never built for `KofN`; every query is answered
//! combinatorially.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of links scheduled together in one slot. Members are kept sorted,
/// so the derived ordering is lexicographic on the sorted member list.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActivationSet(Vec<usize>);

impl ActivationSet {
    /// Builds a set from arbitrary members. Duplicates are kept so that
    /// [`validate_network`] can report them.
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        ActivationSet(members)
    }

    pub fn empty() -> Self {
        ActivationSet(Vec::new())
    }

    pub fn singleton(link: usize) -> Self {
        ActivationSet(vec![link])
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, link: usize) -> bool {
        self.0.binary_search(&link).is_ok()
    }

    fn first_duplicate(&self) -> Option<usize> {
        self.0.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }

    /// Sum of `values` over the members.
    pub fn weight(&self, values: &[f64]) -> f64 {
        self.0.iter().map(|&e| values[e]).sum()
    }
}

impl fmt::Display for ActivationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum InterferenceSpec {
    /// Every set of at most `k` links is feasible.
    KofN { k: usize },
    /// Exactly the listed sets, plus the empty set, are feasible.
    Explicit { sets: Vec<ActivationSet> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkSpec {
    pub link_count: usize,
    pub weights: Vec<f64>,
    pub success_probs: Vec<f64>,
    pub interference: InterferenceSpec,
}

/// One violated network invariant.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Violation {
    #[error("network has no links")]
    NoLinks,
    #[error("{field} has {got} entries, expected {expected}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("weight of link {link} must be positive, got {value}")]
    NonPositiveWeight { link: usize, value: f64 },
    #[error("success probability of link {link} must lie in (0, 1], got {value}")]
    SuccessProbOutOfRange { link: usize, value: f64 },
    #[error("k = {k} must satisfy 1 <= k <= {link_count}")]
    KOutOfRange { k: usize, link_count: usize },
    #[error("explicit activation family is empty")]
    EmptyFamily,
    #[error("activation set {set} names link {link}, which does not exist")]
    LinkOutOfRange { set: usize, link: usize },
    #[error("activation set {set} lists link {link} more than once")]
    DuplicateMember { set: usize, link: usize },
    #[error("link {link} is not covered by any feasible activation set")]
    Uncovered { link: usize },
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("invalid network: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidNetwork(pub Vec<Violation>);

impl NetworkSpec {
    pub fn kofn(weights: Vec<f64>, success_probs: Vec<f64>, k: usize) -> Self {
        NetworkSpec {
            link_count: weights.len(),
            weights,
            success_probs,
            interference: InterferenceSpec::KofN { k },
        }
    }

    pub fn explicit(weights: Vec<f64>, success_probs: Vec<f64>, sets: Vec<ActivationSet>) -> Self {
        NetworkSpec {
            link_count: weights.len(),
            weights,
            success_probs,
            interference: InterferenceSpec::Explicit { sets },
        }
    }

    /// Homogeneous network: every link has weight `w` and success probability `gamma`.
    pub fn homogeneous_kofn(n: usize, k: usize, w: f64, gamma: f64) -> Self {
        Self::kofn(vec![w; n], vec![gamma; n], k)
    }

    pub fn validate(&self) -> Result<(), InvalidNetwork> {
        let violations = validate_network(self);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(InvalidNetwork(violations))
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Whether `set` belongs to the feasible family.
    pub fn is_feasible(&self, set: &ActivationSet) -> bool {
        if set.members().iter().any(|&e| e >= self.link_count) || set.first_duplicate().is_some() {
            return false;
        }
        match &self.interference {
            InterferenceSpec::KofN { k } => set.len() <= *k,
            InterferenceSpec::Explicit { sets } => set.is_empty() || sets.contains(set),
        }
    }

    /// Whether every single-link set is feasible (required by round robin).
    pub fn admits_singletons(&self) -> bool {
        match &self.interference {
            InterferenceSpec::KofN { k } => *k >= 1,
            InterferenceSpec::Explicit { sets } => {
                (0..self.link_count).all(|e| sets.iter().any(|s| s.members() == [e]))
            }
        }
    }
}

/// Lists every violated invariant of `spec`. An empty list means the network
/// is usable by the policies, the solver and the simulator.
pub fn validate_network(spec: &NetworkSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = spec.link_count;
    if n == 0 {
        out.push(Violation::NoLinks);
    }
    if spec.weights.len() != n {
        out.push(Violation::LengthMismatch {
            field: "weights",
            expected: n,
            got: spec.weights.len(),
        });
    }
    if spec.success_probs.len() != n {
        out.push(Violation::LengthMismatch {
            field: "success_probs",
            expected: n,
            got: spec.success_probs.len(),
        });
    }
    for (link, &value) in spec.weights.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            out.push(Violation::NonPositiveWeight { link, value });
        }
    }
    for (link, &value) in spec.success_probs.iter().enumerate() {
        if !(value > 0.0 && value <= 1.0) {
            out.push(Violation::SuccessProbOutOfRange { link, value });
        }
    }
    match &spec.interference {
        InterferenceSpec::KofN { k } => {
            if *k == 0 || *k > n {
                out.push(Violation::KOutOfRange { k: *k, link_count: n });
            }
        }
        InterferenceSpec::Explicit { sets } => {
            if sets.is_empty() {
                out.push(Violation::EmptyFamily);
            }
            let mut covered = vec![false; n];
            for (set_idx, set) in sets.iter().enumerate() {
                for &link in set.members() {
                    if link >= n {
                        out.push(Violation::LinkOutOfRange { set: set_idx, link });
                    } else {
                        covered[link] = true;
                    }
                }
                if let Some(link) = set.first_duplicate() {
                    out.push(Violation::DuplicateMember { set: set_idx, link });
                }
            }
            for (link, c) in covered.iter().enumerate() {
                if !c {
                    out.push(Violation::Uncovered { link });
                }
            }
        }
    }
    out
}

/// Returns a feasible set maximizing `sum_{e in m} values[e]`.
///
/// Ties go to the lexicographically smallest sorted member list. For `KofN`
/// only strictly positive links are selected, so the result has
/// `min(k, #positive)` members.
pub fn max_weight_set(spec: &NetworkSpec, values: &[f64]) -> ActivationSet {
    debug_assert_eq!(values.len(), spec.link_count);
    debug_assert!(values.iter().all(|v| *v >= 0.0), "values must be non-negative");
    match &spec.interference {
        InterferenceSpec::KofN { k } => top_k_positive(values, *k),
        InterferenceSpec::Explicit { sets } => {
            let mut best = ActivationSet::empty();
            let mut best_sum = 0.0;
            for set in sets {
                let sum = set.weight(values);
                let better = match sum.partial_cmp(&best_sum) {
                    Some(Ordering::Greater) => true,
                    Some(Ordering::Equal) => set < &best,
                    _ => false,
                };
                if better {
                    best = set.clone();
                    best_sum = sum;
                }
            }
            best
        }
    }
}

/// The `k` largest strictly positive values, ties to the lower index.
fn top_k_positive(values: &[f64], k: usize) -> ActivationSet {
    let mut idx: Vec<usize> = (0..values.len()).filter(|&e| values[e] > 0.0).collect();
    if idx.len() > k {
        // stable sort keeps lower indices first among equal values
        idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        idx.truncate(k);
    }
    ActivationSet::new(idx)
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum FrequencyError {
    #[error("support has {sets} sets but {probs} probabilities")]
    LengthMismatch { sets: usize, probs: usize },
    #[error("probability {index} is negative or not finite: {value}")]
    Negative { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, which exceeds 1")]
    MassExceeded { sum: f64 },
    #[error("set {index} names link {link} outside 0..{link_count}")]
    LinkOutOfRange {
        index: usize,
        link: usize,
        link_count: usize,
    },
}

/// Per-link activation frequencies `f = M x` induced by a distribution over
/// activation sets.
pub fn activation_frequencies(
    link_count: usize,
    support: &[ActivationSet],
    probs: &[f64],
) -> Result<Vec<f64>, FrequencyError> {
    if support.len() != probs.len() {
        return Err(FrequencyError::LengthMismatch {
            sets: support.len(),
            probs: probs.len(),
        });
    }
    if let Some((index, &value)) = probs.iter().enumerate().find(|(_, p)| p.is_nan() || **p < 0.0 || !p.is_finite()) {
        return Err(FrequencyError::Negative { index, value });
    }
    let sum: f64 = probs.iter().sum();
    if sum > 1.0 + 1e-12 {
        return Err(FrequencyError::MassExceeded { sum });
    }
    let mut f = vec![0.0; link_count];
    for (index, (set, &p)) in support.iter().zip(probs).enumerate() {
        for &link in set.members() {
            if link >= link_count {
                return Err(FrequencyError::LinkOutOfRange {
                    index,
                    link,
                    link_count,
                });
            }
            f[link] += p;
        }
    }
    Ok(f)
}

/// Greedy cover of all links: repeatedly take the feasible set covering the
/// most still-uncovered links. Requires a valid spec.
pub fn greedy_cover(spec: &NetworkSpec) -> Vec<ActivationSet> {
    let n = spec.link_count;
    let mut covered = vec![false; n];
    let mut cover = Vec::new();
    match &spec.interference {
        InterferenceSpec::KofN { k } => {
            let uncovered: Vec<usize> = (0..n).collect();
            for chunk in uncovered.chunks((*k).max(1)) {
                cover.push(ActivationSet::new(chunk.iter().copied()));
            }
        }
        InterferenceSpec::Explicit { sets } => loop {
            let mut best: Option<(usize, &ActivationSet)> = None;
            for set in sets {
                let gain = set.members().iter().filter(|&&e| e < n && !covered[e]).count();
                if gain == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((g, b)) => gain > g || (gain == g && set < b),
                };
                if better {
                    best = Some((gain, set));
                }
            }
            match best {
                Some((_, set)) => {
                    for &e in set.members() {
                        covered[e] = true;
                    }
                    cover.push(set.clone());
                }
                None => break,
            }
        },
    }
    cover
}
