//! Peak-age-optimal stationary policy.
//!
//! The optimal stationary policy minimizes `sum_e w_e / (gamma_e f_e)` over
//! activation frequencies `f = M x` with `x` a sub-distribution over the
//! feasible family. The solver is a pairwise Frank-Wolfe method whose linear
//! subproblem, `argmax_m sum_{e in m} w_e / (gamma_e f_e^2)`, is a
//! [`max_weight_set`] query. For `KofN` families the closed-form
//! [`waterfill_kofn`] solution is available as an independent check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{
    activation_frequencies, greedy_cover, max_weight_set, ActivationSet, InterferenceSpec, InvalidNetwork,
    NetworkSpec,
};

/// Frequencies are never allowed to fall below this during line search.
pub const FREQ_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Relative duality-gap target: stop once `gap <= tol * max(1, objective)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-9,
            max_iter: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationarySolution {
    pub support: Vec<ActivationSet>,
    pub probs: Vec<f64>,
    pub freqs: Vec<f64>,
    /// Objective value `sum_e w_e / (gamma_e f_e)` at `freqs`.
    pub peak_opt: f64,
    /// Frank-Wolfe duality gap at `freqs`; upper-bounds `peak_opt - optimum`.
    pub gap: f64,
    pub iterations: usize,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    InvalidNetwork(#[from] InvalidNetwork),
    #[error("no convergence after {iterations} iterations (gap {gap:.3e}, objective {:.6})", .best.peak_opt)]
    NotConverged {
        best: Box<StationarySolution>,
        gap: f64,
        iterations: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SupportError {
    #[error("frequency of link {link} is {value}, outside [0, 1]")]
    OutOfRange { link: usize, value: f64 },
    #[error("frequencies sum to {sum}, above the budget k = {k}")]
    BudgetExceeded { sum: f64, k: usize },
    #[error("k must be positive")]
    ZeroK,
}

/// `sum_e w_e / (gamma_e f_e)`, or `+inf` when any `f_e <= 0`.
pub fn eval_peak_objective(spec: &NetworkSpec, f: &[f64]) -> f64 {
    let mut total = 0.0;
    for ((&w, &g), &fe) in spec.weights.iter().zip(&spec.success_probs).zip(f) {
        if fe <= 0.0 || fe.is_nan() {
            return f64::INFINITY;
        }
        total += w / (g * fe);
    }
    total
}

/// `(peak_opt + sum_e w_e) / 2`, a lower bound on the optimal average age.
pub fn average_age_lower_bound(peak_opt: f64, spec: &NetworkSpec) -> f64 {
    (peak_opt + spec.total_weight()) / 2.0
}

/// Closed-form minimizer of `sum_e w_e / (gamma_e f_e)` subject to
/// `sum_e f_e = k` and `0 < f_e <= 1`.
///
/// `f_e = min(1, sqrt(w_e / gamma_e) / nu)` with `nu` set so the budget
/// binds. Links pinned at 1 leave the pool and `nu` is recomputed until no
/// further link exceeds 1.
pub fn waterfill_kofn(w: &[f64], gamma: &[f64], k: usize) -> Vec<f64> {
    let n = w.len();
    if k >= n {
        return vec![1.0; n];
    }
    let root: Vec<f64> = w.iter().zip(gamma).map(|(w, g)| (w / g).sqrt()).collect();
    let mut pinned = vec![false; n];
    let mut pinned_count = 0;
    let nu = loop {
        let free_sum: f64 = (0..n).filter(|&e| !pinned[e]).map(|e| root[e]).sum();
        let nu = free_sum / (k - pinned_count) as f64;
        let mut changed = false;
        for e in 0..n {
            if !pinned[e] && root[e] > nu {
                pinned[e] = true;
                pinned_count += 1;
                changed = true;
            }
        }
        if !changed {
            break nu;
        }
    };
    (0..n).map(|e| if pinned[e] { 1.0 } else { root[e] / nu }).collect()
}

/// Decomposes target frequencies into a distribution over sets of at most
/// `k` links.
///
/// Greedy: take the `k` largest residual frequencies as a set and give it
/// the largest probability that keeps the residual representable with the
/// remaining mass. Each step zeroes a residual or makes an excluded link
/// tight, so at most `n + 1` sets are produced.
pub fn stationary_support_kofn(f: &[f64], k: usize) -> Result<(Vec<ActivationSet>, Vec<f64>), SupportError> {
    const EPS: f64 = 1e-12;
    if k == 0 {
        return Err(SupportError::ZeroK);
    }
    if let Some((link, &value)) = f.iter().enumerate().find(|(_, &v)| !(-EPS..=1.0 + 1e-9).contains(&v)) {
        return Err(SupportError::OutOfRange { link, value });
    }
    let sum: f64 = f.iter().sum();
    if sum > k as f64 + 1e-9 {
        return Err(SupportError::BudgetExceeded { sum, k });
    }

    let n = f.len();
    let mut residual: Vec<f64> = f.iter().map(|v| v.clamp(0.0, 1.0)).collect();
    let mut mass = 1.0f64;
    let mut sets = Vec::new();
    let mut probs = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..=2 * n + 1 {
        order.sort_by(|&a, &b| residual[b].total_cmp(&residual[a]));
        let chosen: Vec<usize> = order.iter().copied().take(k).filter(|&e| residual[e] > EPS).collect();
        if chosen.is_empty() {
            break;
        }
        let min_in = chosen.iter().map(|&e| residual[e]).fold(f64::INFINITY, f64::min);
        let max_out = order.iter().skip(chosen.len()).map(|&e| residual[e]).fold(0.0, f64::max);
        let p = min_in.min(mass - max_out).max(0.0);
        if p <= 0.0 {
            break;
        }
        for &e in &chosen {
            residual[e] = if residual[e] - p <= EPS { 0.0 } else { residual[e] - p };
        }
        mass -= p;
        sets.push(ActivationSet::new(chosen));
        probs.push(p);
    }
    Ok((sets, probs))
}

struct Atom {
    set: ActivationSet,
    weight: f64,
}

/// Negative gradient of the objective: `w_e / (gamma_e f_e^2)`.
fn descent_weights(spec: &NetworkSpec, f: &[f64], out: &mut [f64]) {
    for e in 0..f.len() {
        out[e] = spec.weights[e] / (spec.success_probs[e] * f[e] * f[e]);
    }
}

/// Frank-Wolfe duality gap at `f`, together with the vertex attaining it.
fn duality_gap(spec: &NetworkSpec, f: &[f64], g: &mut [f64]) -> (f64, ActivationSet) {
    descent_weights(spec, f, g);
    let s = max_weight_set(spec, g);
    let gap = s.weight(g) - g.iter().zip(f).map(|(g, f)| g * f).sum::<f64>();
    (gap, s)
}

/// Minimizes `sum_e w_e / (gamma_e (f_e + eta d_e))` over `eta in [0, eta_max]`
/// by bisection on the sign of the derivative.
fn line_search(spec: &NetworkSpec, f: &[f64], dir: &[(usize, f64)], eta_max: f64) -> f64 {
    let slope = |eta: f64| -> f64 {
        dir.iter()
            .map(|&(e, d)| {
                let x = f[e] + eta * d;
                -spec.weights[e] * d / (spec.success_probs[e] * x * x)
            })
            .sum()
    };
    if slope(eta_max) <= 0.0 {
        return eta_max;
    }
    let (mut lo, mut hi) = (0.0, eta_max);
    while hi - lo > 1e-12 * eta_max.max(1e-300) && hi - lo > f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if slope(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves for the peak-age-optimal stationary distribution.
///
/// On non-convergence the best iterate is returned inside the error.
pub fn solve_stationary(spec: &NetworkSpec, opts: SolverOptions) -> Result<StationarySolution, SolveError> {
    spec.validate()?;
    let n = spec.link_count;

    let cover = greedy_cover(spec);
    let share = 1.0 / cover.len() as f64;
    let mut atoms: Vec<Atom> = cover
        .into_iter()
        .map(|set| Atom { set, weight: share })
        .collect();
    let mut f = vec![0.0; n];
    for atom in &atoms {
        for &e in atom.set.members() {
            f[e] += atom.weight;
        }
    }

    let mut g = vec![0.0; n];
    let mut delta = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let mut gap = f64::INFINITY;
    while iterations < opts.max_iter {
        let (current_gap, toward) = duality_gap(spec, &f, &mut g);
        gap = current_gap;
        let objective = eval_peak_objective(spec, &f);
        if gap <= opts.tol * objective.max(1.0) {
            converged = true;
            break;
        }
        iterations += 1;

        // away atom: the active vertex with the least descent weight
        let (away, _) = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (i, a.set.weight(&g)))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        if atoms[away].set == toward {
            break;
        }

        for &e in toward.members() {
            delta[e] += 1.0;
        }
        for &e in atoms[away].set.members() {
            delta[e] -= 1.0;
        }
        let dir: Vec<(usize, f64)> = toward
            .members()
            .iter()
            .chain(atoms[away].set.members())
            .filter_map(|&e| {
                let d = std::mem::take(&mut delta[e]);
                (d != 0.0).then_some((e, d))
            })
            .collect();

        let mut eta_max = atoms[away].weight;
        for &(e, d) in &dir {
            if d < 0.0 {
                eta_max = eta_max.min((f[e] - FREQ_FLOOR) / -d);
            }
        }
        if eta_max <= 0.0 {
            break;
        }
        let eta = line_search(spec, &f, &dir, eta_max);
        if eta <= 0.0 {
            break;
        }

        for &(e, d) in &dir {
            f[e] += eta * d;
        }
        if eta >= atoms[away].weight {
            atoms.swap_remove(away);
        } else {
            atoms[away].weight -= eta;
        }
        match atoms.iter_mut().find(|a| a.set == toward) {
            Some(atom) => atom.weight += eta,
            None => atoms.push(Atom {
                set: toward,
                weight: eta,
            }),
        }
    }

    let (support, probs) = match &spec.interference {
        InterferenceSpec::KofN { k } => {
            let f_now: Vec<f64> = atoms_to_freqs(n, &atoms);
            stationary_support_kofn(&f_now, *k).expect("iterate lies in the k-of-n frequency polytope")
        }
        InterferenceSpec::Explicit { .. } => {
            atoms.sort_by(|a, b| a.set.cmp(&b.set));
            atoms.into_iter().map(|a| (a.set, a.weight)).unzip()
        }
    };
    let freqs = activation_frequencies(n, &support, &probs).expect("solver keeps a sub-distribution");
    let peak_opt = eval_peak_objective(spec, &freqs);
    let final_gap = duality_gap(spec, &freqs, &mut g).0;
    if final_gap.is_finite() {
        gap = final_gap;
    }
    let solution = StationarySolution {
        support,
        probs,
        freqs,
        peak_opt,
        gap,
        iterations,
    };
    // a stalled line search can still leave a certified iterate
    if converged || gap <= opts.tol * peak_opt.max(1.0) {
        Ok(solution)
    } else {
        Err(SolveError::NotConverged {
            gap,
            iterations,
            best: Box::new(solution),
        })
    }
}

fn atoms_to_freqs(n: usize, atoms: &[Atom]) -> Vec<f64> {
    let mut f = vec![0.0; n];
    for atom in atoms {
        for &e in atom.set.members() {
            f[e] += atom.weight;
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(members: &[usize]) -> ActivationSet {
        ActivationSet::new(members.iter().copied())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    /// Dense grid over sub-distributions on up to three sets. Test oracle.
    fn grid_search(spec: &NetworkSpec, sets: &[ActivationSet], step: f64) -> f64 {
        let steps = (1.0 / step).round() as usize;
        let mut best = f64::INFINITY;
        let mut eval = |x: &[f64]| {
            let f = activation_frequencies(spec.link_count, sets, x).unwrap();
            best = best.min(eval_peak_objective(spec, &f));
        };
        match sets.len() {
            1 => (0..=steps).for_each(|i| eval(&[i as f64 * step])),
            2 => {
                for i in 0..=steps {
                    for j in 0..=steps - i {
                        eval(&[i as f64 * step, j as f64 * step]);
                    }
                }
            }
            3 => {
                for i in 0..=steps {
                    for j in 0..=steps - i {
                        // objective decreases in every coordinate: no slack at a grid optimum
                        let l = steps - i - j;
                        eval(&[i as f64 * step, j as f64 * step, l as f64 * step]);
                    }
                }
            }
            _ => unreachable!(),
        }
        best
    }

    #[test]
    fn objective_examples() {
        let spec = NetworkSpec::kofn(vec![1.0], vec![1.0], 1);
        assert_eq!(eval_peak_objective(&spec, &[1.0]), 1.0);
        let spec = NetworkSpec::homogeneous_kofn(20, 5, 1.0, 0.9);
        assert!((eval_peak_objective(&spec, &[0.25; 20]) - 88.888_888_888_9).abs() < 1e-9);
        let spec = NetworkSpec::kofn(vec![4.0, 1.0], vec![1.0, 1.0], 1);
        assert!((eval_peak_objective(&spec, &[2.0 / 3.0, 1.0 / 3.0]) - 9.0).abs() < 1e-12);
        assert_eq!(eval_peak_objective(&spec, &[0.0, 1.0]), f64::INFINITY);
    }

    #[test]
    fn lower_bound_examples() {
        let spec = NetworkSpec::homogeneous_kofn(20, 5, 1.0, 0.9);
        let lb = average_age_lower_bound(800.0 / 9.0, &spec);
        assert!((lb - 54.444_444_444).abs() < 1e-6);
        assert!((lb / 20.0 - 2.722_222_222).abs() < 1e-6);
        let spec = NetworkSpec::kofn(vec![1.0], vec![1.0], 1);
        assert_eq!(average_age_lower_bound(1.0, &spec), 1.0);
        let spec = NetworkSpec::kofn(vec![4.0, 1.0], vec![1.0, 1.0], 1);
        assert_eq!(average_age_lower_bound(9.0, &spec), 7.0);
    }

    #[test]
    fn waterfill_examples() {
        assert_eq!(waterfill_kofn(&[1.0; 4], &[0.5; 4], 2), vec![0.5; 4]);
        let f = waterfill_kofn(&[4.0, 1.0], &[1.0, 1.0], 1);
        assert!((f[0] - 2.0 / 3.0).abs() < 1e-12 && (f[1] - 1.0 / 3.0).abs() < 1e-12);
        let f = waterfill_kofn(&[9.0, 1.0, 1.0], &[1.0; 3], 2);
        assert_eq!(f, vec![1.0, 0.5, 0.5]);
        let spec = NetworkSpec::kofn(vec![9.0, 1.0, 1.0], vec![1.0; 3], 2);
        assert!((eval_peak_objective(&spec, &f) - 13.0).abs() < 1e-12);
    }

    #[test]
    fn waterfill_matches_grid_search() {
        // n = 2, k = 1: f = (t, 1 - t)
        let spec = NetworkSpec::kofn(vec![4.0, 1.0], vec![1.0, 1.0], 1);
        let grid = (1..1000)
            .map(|i| eval_peak_objective(&spec, &[i as f64 / 1000.0, 1.0 - i as f64 / 1000.0]))
            .fold(f64::INFINITY, f64::min);
        let f = waterfill_kofn(&spec.weights, &spec.success_probs, 1);
        assert!(rel(eval_peak_objective(&spec, &f), grid) < 1e-5);

        // n = 3, k = 2: f3 = 2 - f1 - f2 with every f in (0, 1]
        let spec = NetworkSpec::kofn(vec![9.0, 1.0, 1.0], vec![1.0; 3], 2);
        let mut best = f64::INFINITY;
        for i in 1..=400 {
            for j in 1..=400 {
                let (a, b) = (i as f64 / 400.0, j as f64 / 400.0);
                let c = 2.0 - a - b;
                if c > 0.0 && c <= 1.0 {
                    best = best.min(eval_peak_objective(&spec, &[a, b, c]));
                }
            }
        }
        assert!((best - 13.0).abs() < 1e-9);
    }

    #[test]
    fn support_examples() {
        let (sets, probs) = stationary_support_kofn(&[0.5, 0.5], 1).unwrap();
        assert_eq!(sets, vec![set(&[0]), set(&[1])]);
        assert_eq!(probs, vec![0.5, 0.5]);

        let (sets, probs) = stationary_support_kofn(&[1.0, 0.5, 0.5], 2).unwrap();
        assert_eq!(sets, vec![set(&[0, 1]), set(&[0, 2])]);
        assert_eq!(probs, vec![0.5, 0.5]);
        assert_eq!(activation_frequencies(3, &sets, &probs).unwrap(), vec![1.0, 0.5, 0.5]);

        let (sets, probs) = stationary_support_kofn(&[0.25; 4], 1).unwrap();
        assert_eq!(sets, (0..4).map(ActivationSet::singleton).collect::<Vec<_>>());
        assert_eq!(probs, vec![0.25; 4]);
    }

    #[test]
    fn support_rejects_infeasible_targets() {
        assert!(matches!(
            stationary_support_kofn(&[0.9, 0.9], 1),
            Err(SupportError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            stationary_support_kofn(&[1.5], 1),
            Err(SupportError::OutOfRange { link: 0, .. })
        ));
    }

    #[test]
    fn solve_homogeneous_kofn() {
        let spec = NetworkSpec::homogeneous_kofn(20, 5, 1.0, 0.9);
        let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
        assert!(sol.freqs.iter().all(|f| (f - 0.25).abs() < 1e-6));
        assert!(rel(sol.peak_opt, 800.0 / 9.0) < 1e-9);
        assert!((sol.probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(sol.support.len() <= 21);
    }

    #[test]
    fn solve_two_singletons() {
        let spec = NetworkSpec::explicit(vec![4.0, 1.0], vec![1.0, 1.0], vec![set(&[0]), set(&[1])]);
        let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
        assert_eq!(sol.support, vec![set(&[0]), set(&[1])]);
        assert!((sol.probs[0] - 2.0 / 3.0).abs() < 1e-4);
        assert!(rel(sol.peak_opt, 9.0) < 1e-8);
        assert!(rel(sol.peak_opt, grid_search(&spec, &[set(&[0]), set(&[1])], 1e-3)) < 1e-4);
    }

    #[test]
    fn solve_single_choice() {
        let spec = NetworkSpec::explicit(vec![5.0], vec![0.5], vec![set(&[0])]);
        let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
        assert_eq!(sol.support, vec![set(&[0])]);
        assert_eq!(sol.probs, vec![1.0]);
        assert_eq!(sol.peak_opt, 10.0);
    }

    #[test]
    fn solve_three_set_family_matches_grid() {
        let sets = vec![set(&[0, 1]), set(&[1, 2]), set(&[0, 2, 3])];
        let spec = NetworkSpec::explicit(vec![1.0, 2.0, 0.5, 3.0], vec![0.9, 0.3, 0.6, 0.5], sets.clone());
        let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
        let grid = grid_search(&spec, &sets, 1e-3);
        assert!(sol.peak_opt <= grid * (1.0 + 1e-9));
        assert!(rel(sol.peak_opt, grid) < 1e-4);
    }

    #[test]
    fn solution_invariants_hold() {
        let spec = NetworkSpec::kofn(vec![1.0, 3.0, 0.2, 2.0, 1.0], vec![0.1, 0.9, 0.5, 0.3, 1.0], 2);
        let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
        assert!(sol.probs.iter().all(|&p| p >= 0.0));
        assert!(sol.probs.iter().sum::<f64>() <= 1.0 + 1e-12);
        let f = activation_frequencies(5, &sol.support, &sol.probs).unwrap();
        for (a, b) in f.iter().zip(&sol.freqs) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!(sol.freqs.iter().all(|&x| x > 0.0));
        assert!(rel(sol.peak_opt, eval_peak_objective(&spec, &sol.freqs)) < 1e-9);
        assert!(sol.support.iter().all(|s| spec.is_feasible(s)));
    }

    #[test]
    fn non_convergence_returns_best_iterate() {
        let spec = NetworkSpec::kofn(vec![1.0, 3.0, 0.2, 2.0, 1.0], vec![0.1, 0.9, 0.5, 0.3, 1.0], 2);
        let opts = SolverOptions { tol: 1e-9, max_iter: 1 };
        match solve_stationary(&spec, opts) {
            Err(SolveError::NotConverged { best, gap, iterations }) => {
                assert_eq!(iterations, 1);
                assert!(gap > 0.0);
                assert!(best.peak_opt.is_finite());
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn linear_subproblem_is_max_weight_query() {
        // brute force over all subsets of size <= k against the oracle call
        let spec = NetworkSpec::kofn(vec![1.0, 2.0, 0.5, 3.0, 1.5], vec![0.9, 0.3, 0.6, 0.5, 0.2], 3);
        let f = [0.4, 0.7, 0.2, 0.9, 0.5];
        let mut g = vec![0.0; 5];
        let (_, s) = duality_gap(&spec, &f, &mut g);
        let brute = (0u32..32)
            .filter(|m| m.count_ones() <= 3)
            .map(|m| (0..5).filter(|e| m & (1 << e) != 0).map(|e| g[e]).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((s.weight(&g) - brute).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn solver_matches_waterfill(
            (w, gamma, k) in (2usize..=16).prop_flat_map(|n| (
                prop::collection::vec(0.1f64..5.0, n),
                prop::collection::vec(0.05f64..1.0, n),
                1..=n,
            ))
        ) {
            let spec = NetworkSpec::kofn(w.clone(), gamma.clone(), k);
            let sol = solve_stationary(&spec, SolverOptions::default()).unwrap();
            let oracle = eval_peak_objective(&spec, &waterfill_kofn(&w, &gamma, k));
            prop_assert!(rel(sol.peak_opt, oracle) < 1e-6, "solver {} oracle {}", sol.peak_opt, oracle);
            prop_assert!(sol.freqs.iter().all(|&f| f > 0.0));
        }

        #[test]
        fn support_round_trips(
            (f, k) in (1usize..=12).prop_flat_map(|n| (prop::collection::vec(0.0f64..=1.0, n), 1..=n))
        ) {
            let sum: f64 = f.iter().sum();
            let scale = if sum > k as f64 { k as f64 / sum } else { 1.0 };
            let f: Vec<f64> = f.iter().map(|v| v * scale).collect();
            let (sets, probs) = stationary_support_kofn(&f, k).unwrap();
            prop_assert!(sets.len() <= f.len() + 1);
            prop_assert!(sets.iter().all(|s| s.len() <= k));
            let induced = activation_frequencies(f.len(), &sets, &probs).unwrap();
            for (a, b) in induced.iter().zip(&f) {
                prop_assert!((a - b).abs() < 1e-9, "{:?} vs {:?}", induced, f);
            }
        }
    }
}
