//! User-facing reliability estimators.
//!
//! Every estimator dispatches between two regimes. When the probability
//! that a minimum cut fails is at least n^-4 (so the target quantity is at
//! least that large), direct Monte Carlo simulation with a stopping rule is
//! fast and accurate. Below the threshold, the estimators enumerate
//! near-minimum cuts, express "some enumerated cut fails" as a DNF formula,
//! and estimate its truth probability by coverage sampling. The target
//! relative error is split between the enumeration tail and the sampling
//! error so the combined guarantee is a true (1 +- epsilon).

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::connectivity;
use crate::cut_enum::{self, CutRecord, DirectedCutRecord};
use crate::dnf::{self, DnfFormula, Literal};
use crate::error::{Error, Result};
use crate::multigraph::{Digraph, Multigraph, WeightedView};
use crate::parallel;

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MonteCarlo,
    CutEnumDnf,
    ExactOracle,
    HeuristicSum,
    PasInclExcl,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::MonteCarlo => "monte_carlo",
            Method::CutEnumDnf => "cut_enum_dnf",
            Method::ExactOracle => "exact_oracle",
            Method::HeuristicSum => "heuristic_sum",
            Method::PasInclExcl => "pas_incl_excl",
        }
    }
}

/// Numeric estimate with its method tag and run diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub method: Method,
    pub seed: u64,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    pub n: usize,
    pub m: usize,
    /// Exact minimum cut value driving the regime test (count or weight).
    pub min_cut: f64,
    /// Failure probability of a fixed minimum cut: p^c, or exp(-c_hat) under
    /// varying probabilities.
    pub p_c: f64,
    pub log_p_c: f64,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub cuts_enumerated: Option<usize>,
    /// Monte Carlo trials or DNF samples, whichever the method consumed.
    pub trials: u64,
    pub certified_error_bound: Option<f64>,
    pub wall_ms: f64,
}

/// Which branch the regime test selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Mc,
    Small,
}

/// Outcome of the regime test: minimum-cut failure probability against the
/// dispatch threshold, in log space. A pure function of its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeDecision {
    pub log_p_c: f64,
    pub log_threshold: f64,
    pub branch: Branch,
}

pub fn regime_decision(log_p_c: f64, log_threshold: f64) -> RegimeDecision {
    let branch = if log_p_c >= log_threshold {
        Branch::Mc
    } else {
        Branch::Small
    };
    RegimeDecision {
        log_p_c,
        log_threshold,
        branch,
    }
}

/// Tuning knobs shared by the estimators.
#[derive(Debug, Clone)]
pub struct EstimatorConfig {
    /// Hard ceiling on the enumeration alpha; exceeding it is an error that
    /// reports the required value.
    pub alpha_cap: f64,
    /// Threshold slack for floating-point ties in cut values.
    pub slack: f64,
    /// Force a branch instead of dispatching on the regime test.
    pub forced: Option<Branch>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self {
            alpha_cap: 3.0,
            slack: cut_enum::DEFAULT_SLACK,
            forced: None,
        }
    }
}

const MC_CHUNK: u64 = 1024;
const SEED_TAG_ENUM: u64 = 1;
const SEED_TAG_DNF: u64 = 2;

/// Split a target relative error into two equal multiplicative stages:
/// (1 + part)^2 = 1 + eps, so compounding the enumeration tail with the
/// sampling error stays within the advertised bound.
fn split_epsilon(eps: f64) -> f64 {
    (1.0 + eps).sqrt() - 1.0
}

fn validate_eps_eta(epsilon: f64, eta: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be in (0, 1), got {epsilon}"
        )));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "eta must be in (0, 1), got {eta}"
        )));
    }
    Ok(())
}

/// Stopping-rule Monte Carlo: run until ceil(3 ln(2/eta) / eps^2) failures
/// are observed or the trial budget implied by the regime lower bound is
/// exhausted; the estimate is failures/trials.
fn monte_carlo(
    epsilon: f64,
    eta: f64,
    seed: u64,
    p_lower_bound: f64,
    trial_fails: impl Fn(&mut rand_chacha::ChaCha8Rng) -> bool + Sync + Send,
) -> (f64, u64) {
    let base = 3.0 * (2.0 / eta).ln() / (epsilon * epsilon);
    let target_hits = base.ceil() as u64;
    let n_max = (base / p_lower_bound).ceil() as u64;
    let (hits, trials) =
        parallel::stopped_trial_count(seed, n_max, MC_CHUNK, target_hits, trial_fails);
    (hits as f64 / trials as f64, trials)
}

fn simulate_edges(
    g: &Multigraph,
    rng: &mut rand_chacha::ChaCha8Rng,
    survivors: &mut Vec<(usize, usize)>,
) {
    survivors.clear();
    for e in g.edges() {
        if rng.random::<f64>() >= e.p_fail {
            survivors.push((e.u, e.v));
        }
    }
}

/// alpha solving `families * 2 * exp(-delta * alpha * ln_n) <=
/// eps_tail * exp(-(2 + delta) * ln_n)`: with that alpha, the probability
/// that any cut beyond the enumerated family fails is at most eps_tail
/// times the minimum-cut failure probability.
fn alpha_for_tail(delta: f64, ln_n: f64, eps_tail: f64, families: f64) -> f64 {
    1.0 + 2.0 / delta + (2.0 * families / eps_tail).ln() / (delta * ln_n)
}

/// No cut can exceed the total edge weight, so an alpha reaching it covers
/// every cut of the graph and leaves a tail of exactly zero. Combining with
/// the analytic value keeps desk-scale alphas small.
fn alpha_with_cover(alpha_formula: f64, total_weight: f64, c: f64) -> f64 {
    if c > 0.0 && total_weight.is_finite() {
        alpha_formula.min(total_weight / c)
    } else {
        alpha_formula
    }
}

fn total_enumeration_weight(g: &Multigraph, view: Option<&WeightedView>) -> f64 {
    match view {
        None => g.m() as f64,
        Some(v) => v.weights.iter().filter(|w| w.is_finite()).sum(),
    }
}

fn cap_alpha(alpha: f64, cfg: &EstimatorConfig, context: &str) -> Result<f64> {
    if alpha > cfg.alpha_cap {
        return Err(Error::Regime(format!(
            "{context}: required alpha {alpha:.4} exceeds the cap {}; \
             raise --alpha-cap to proceed",
            cfg.alpha_cap
        )));
    }
    Ok(alpha.max(1.0))
}

fn finish(
    value: f64,
    epsilon: f64,
    eta: f64,
    method: Method,
    seed: u64,
    mut diagnostics: Diagnostics,
    started: Instant,
) -> Estimate {
    diagnostics.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    Estimate {
        value: value.clamp(0.0, 1.0),
        epsilon,
        eta,
        method,
        seed,
        diagnostics,
    }
}

/// Weighted view when failure probabilities vary; None keeps cut values as
/// plain edge counts.
fn weighting(g: &Multigraph) -> Option<WeightedView> {
    (!g.is_uniform_p()).then(|| g.weighted_view())
}

/// Probability that the graph disconnects under independent edge failures,
/// within (1 +- epsilon) relative error with probability at least 1 - eta.
pub fn estimate_fail(g: &Multigraph, epsilon: f64, eta: f64, seed: u64) -> Result<Estimate> {
    estimate_fail_with(g, epsilon, eta, seed, &EstimatorConfig::default())
}

pub fn estimate_fail_with(
    g: &Multigraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    let started = Instant::now();
    let mut diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    if g.n() == 1 {
        diag.p_c = 0.0;
        diag.log_p_c = f64::NEG_INFINITY;
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    if !g.is_connected_full() {
        diag.p_c = 1.0;
        diag.log_p_c = 0.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let view = weighting(g);
    let min_cut = g.min_cut(view.as_ref());
    let log_p_c = log_cut_failure(g, view.as_ref(), min_cut.value);
    diag.min_cut = min_cut.value;
    diag.p_c = log_p_c.exp();
    diag.log_p_c = log_p_c;
    if log_p_c == f64::NEG_INFINITY {
        // every cut contains a never-failing edge
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let n = g.n() as f64;
    let decision = regime_decision(log_p_c, -4.0 * n.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, diag.p_c, |rng| {
                let mut survivors = Vec::with_capacity(g.m());
                simulate_edges(g, rng, &mut survivors);
                !connectivity::is_connected(g.n(), survivors.iter().copied())
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            if decision.branch == Branch::Mc {
                return Err(Error::Regime(format!(
                    "cut-enumeration branch requires p^c < n^-4 but p^c = {:.6e} >= {:.6e}",
                    diag.p_c,
                    (-4.0 * n.ln()).exp()
                )));
            }
            small_fail_pipeline(g, view.as_ref(), epsilon, eta, seed, cfg, diag, started)
        }
    }
}

/// Direct Monte Carlo branch of `estimate_fail` (valid when the minimum-cut
/// failure probability is at least n^-4).
pub fn estimate_fail_monte_carlo(
    g: &Multigraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_fail_with(
        g,
        epsilon,
        eta,
        seed,
        &EstimatorConfig {
            forced: Some(Branch::Mc),
            ..Default::default()
        },
    )
}

/// Cut-enumeration + DNF branch of `estimate_fail` (valid when the
/// minimum-cut failure probability is below n^-4).
pub fn estimate_fail_small(g: &Multigraph, epsilon: f64, eta: f64, seed: u64) -> Result<Estimate> {
    estimate_fail_with(
        g,
        epsilon,
        eta,
        seed,
        &EstimatorConfig {
            forced: Some(Branch::Small),
            ..Default::default()
        },
    )
}

/// ln of a cut's failure probability given its value: value * ln(p) for a
/// uniform failure probability p, or -value when the value is already a
/// weight in nats.
fn log_cut_failure(g: &Multigraph, view: Option<&WeightedView>, value: f64) -> f64 {
    if view.is_some() {
        -value
    } else {
        match g.edges().first() {
            Some(e) => value * e.p_fail.ln(),
            None => f64::NEG_INFINITY,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn small_fail_pipeline(
    g: &Multigraph,
    view: Option<&WeightedView>,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
    mut diag: Diagnostics,
    started: Instant,
) -> Result<Estimate> {
    let n = g.n() as f64;
    let eps_part = split_epsilon(epsilon);
    let delta = -diag.log_p_c / n.ln() - 2.0;
    diag.delta = Some(delta);
    let alpha = cap_alpha(
        alpha_with_cover(
            alpha_for_tail(delta, n.ln(), eps_part, 1.0),
            total_enumeration_weight(g, view),
            diag.min_cut,
        ),
        cfg,
        "all-terminal estimator",
    )?;
    diag.alpha = Some(alpha);
    let (cuts, _plan) = cut_enum::enumerate_two_way_detailed(
        g,
        view,
        alpha,
        eta / 2.0,
        parallel::derive_seed(seed, SEED_TAG_ENUM),
        cfg.slack,
    )?;
    diag.cuts_enumerated = Some(cuts.len());
    let formula = dnf::build_cut_failure_formula(&cuts, g)?;
    if formula.clause_count() == 0 {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::CutEnumDnf,
            seed,
            diag,
            started,
        ));
    }
    let est = formula.estimate_union_probability(
        eps_part,
        eta / 2.0,
        parallel::derive_seed(seed, SEED_TAG_DNF),
    )?;
    diag.trials = est.samples;
    Ok(finish(
        est.value,
        epsilon,
        eta,
        Method::CutEnumDnf,
        seed,
        diag,
        started,
    ))
}

/// Probability that some pair of terminals is disconnected.
pub fn estimate_multiterminal(
    g: &Multigraph,
    terminals: &[usize],
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_multiterminal_with(
        g,
        terminals,
        epsilon,
        eta,
        seed,
        &EstimatorConfig::default(),
    )
}

pub fn estimate_multiterminal_with(
    g: &Multigraph,
    terminals: &[usize],
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    let started = Instant::now();
    let mut k_set: Vec<usize> = terminals.to_vec();
    k_set.sort_unstable();
    k_set.dedup();
    if k_set.len() < 2 {
        return Err(Error::InvalidInput(
            "multiterminal estimation needs at least two distinct terminals".into(),
        ));
    }
    if k_set.iter().any(|&t| t >= g.n()) {
        return Err(Error::InvalidInput("terminal out of range".into()));
    }
    let mut diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    if !connectivity::terminals_connected(g.n(), g.endpoint_pairs(), &k_set) {
        diag.p_c = 1.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let view = weighting(g);
    // minimum terminal-separating cut: min over s-t max flows within K
    let flow_edges: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let w = view.as_ref().map_or(1.0, |v| v.weights[i]);
            (e.u, e.v, w)
        })
        .collect();
    let s = k_set[0];
    let sep_value = k_set[1..]
        .iter()
        .map(|&t| connectivity::weighted_max_flow(g.n(), &flow_edges, s, t))
        .fold(f64::INFINITY, f64::min);
    let log_p_sep = log_cut_failure(g, view.as_ref(), sep_value);
    diag.min_cut = sep_value;
    diag.p_c = log_p_sep.exp();
    diag.log_p_c = log_p_sep;
    if log_p_sep == f64::NEG_INFINITY {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let n = g.n() as f64;
    let decision = regime_decision(log_p_sep, -4.0 * n.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, diag.p_c, |rng| {
                let mut survivors = Vec::with_capacity(g.m());
                simulate_edges(g, rng, &mut survivors);
                !connectivity::terminals_connected(g.n(), survivors.iter().copied(), &k_set)
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            let eps_part = split_epsilon(epsilon);
            // alpha such that n^(-2 alpha) <= eps * p^(beta c)
            let alpha_required = (-(eps_part.ln() + log_p_sep)) / (2.0 * n.ln());
            let global_c = g.min_cut(view.as_ref()).value;
            let alpha = cap_alpha(
                alpha_with_cover(
                    alpha_required,
                    total_enumeration_weight(g, view.as_ref()),
                    global_c,
                ),
                cfg,
                "multiterminal estimator",
            )?;
            diag.alpha = Some(alpha);
            let (cuts, _) = cut_enum::enumerate_two_way_detailed(
                g,
                view.as_ref(),
                alpha,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_ENUM),
                cfg.slack,
            )?;
            let separating: Vec<CutRecord> = cuts
                .into_iter()
                .filter(|cut| {
                    let side = cut.signature.block_of(k_set[0]);
                    k_set[1..]
                        .iter()
                        .any(|&t| cut.signature.block_of(t) != side)
                })
                .collect();
            diag.cuts_enumerated = Some(separating.len());
            let formula = dnf::build_cut_failure_formula(&separating, g)?;
            if formula.clause_count() == 0 {
                return Ok(finish(
                    0.0,
                    epsilon,
                    eta,
                    Method::CutEnumDnf,
                    seed,
                    diag,
                    started,
                ));
            }
            let est = formula.estimate_union_probability(
                eps_part,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_DNF),
            )?;
            diag.trials = est.samples;
            Ok(finish(
                est.value,
                epsilon,
                eta,
                Method::CutEnumDnf,
                seed,
                diag,
                started,
            ))
        }
    }
}

/// Probability that the surviving graph is not k-edge-connected.
pub fn estimate_kconn_failure(
    g: &Multigraph,
    k: usize,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_kconn_failure_with(g, k, epsilon, eta, seed, &EstimatorConfig::default())
}

pub fn estimate_kconn_failure_with(
    g: &Multigraph,
    k: usize,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k == 1 {
        return estimate_fail_with(g, epsilon, eta, seed, cfg);
    }
    let started = Instant::now();
    let mut diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    let unweighted_min = g.min_cut(None);
    if g.n() > 1 && (!unweighted_min.connected || unweighted_min.value < k as f64) {
        // not k-edge-connected even with no failures
        diag.min_cut = unweighted_min.value;
        diag.p_c = 1.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    if g.n() == 1 {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let view = weighting(g);
    let min_cut = g.min_cut(view.as_ref());
    diag.min_cut = min_cut.value;
    // probability the chosen minimum cut keeps fewer than k of its edges
    let cut_edges = min_cut.crossing_edges(g);
    let q_c = tail_fewer_than_k_survive(g, &cut_edges, k);
    diag.p_c = q_c;
    diag.log_p_c = q_c.ln();
    if q_c == 0.0 {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let n = g.n() as f64;
    let decision = regime_decision(diag.log_p_c, -4.0 * n.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, q_c, |rng| {
                let mut survivors = Vec::with_capacity(g.m());
                simulate_edges(g, rng, &mut survivors);
                !connectivity::is_k_edge_connected(g.n(), &survivors, k)
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            let eps_part = split_epsilon(epsilon);
            let delta = -diag.log_p_c / n.ln() - 2.0;
            diag.delta = Some(delta);
            let alpha = cap_alpha(
                alpha_with_cover(
                    alpha_for_tail(delta, n.ln(), eps_part, 1.0),
                    total_enumeration_weight(g, view.as_ref()),
                    diag.min_cut,
                ),
                cfg,
                "k-connectivity estimator",
            )?;
            diag.alpha = Some(alpha);
            let (cuts, _) = cut_enum::enumerate_two_way_detailed(
                g,
                view.as_ref(),
                alpha,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_ENUM),
                cfg.slack,
            )?;
            diag.cuts_enumerated = Some(cuts.len());
            let formula = dnf::build_k_failure_formula(&cuts, g, k)?;
            if formula.clause_count() == 0 {
                return Ok(finish(
                    0.0,
                    epsilon,
                    eta,
                    Method::CutEnumDnf,
                    seed,
                    diag,
                    started,
                ));
            }
            let est = formula.estimate_union_probability(
                eps_part,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_DNF),
            )?;
            diag.trials = est.samples;
            Ok(finish(
                est.value,
                epsilon,
                eta,
                Method::CutEnumDnf,
                seed,
                diag,
                started,
            ))
        }
    }
}

/// Exact probability that fewer than k of the listed edges survive,
/// by dynamic programming over the failure-count distribution.
fn tail_fewer_than_k_survive(g: &Multigraph, edges: &[usize], k: usize) -> f64 {
    let c = edges.len();
    // distribution of the number of failed edges
    let mut dist = vec![0.0f64; c + 1];
    dist[0] = 1.0;
    for (step, &e) in edges.iter().enumerate() {
        let p = g.edges()[e].p_fail;
        for j in (0..=step + 1).rev() {
            let stay = if j <= step { dist[j] * (1.0 - p) } else { 0.0 };
            let fail = if j > 0 { dist[j - 1] * p } else { 0.0 };
            dist[j] = stay + fail;
        }
    }
    // fewer than k survive <=> at least c - k + 1 fail
    let threshold = c + 1 - k;
    dist[threshold..].iter().sum()
}

/// Probability that an Eulerian digraph loses strong connectivity.
pub fn estimate_eulerian_strong_failure(
    dg: &Digraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_eulerian_strong_failure_with(dg, epsilon, eta, seed, &EstimatorConfig::default())
}

pub fn estimate_eulerian_strong_failure_with(
    dg: &Digraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    dg.check_eulerian()?;
    let started = Instant::now();
    let mut diag = Diagnostics {
        n: dg.n(),
        m: dg.m(),
        ..Default::default()
    };
    if dg.n() == 1 {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    if !dg.is_strongly_connected_full() {
        diag.p_c = 1.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let h = dg.underlying()?;
    let view = weighting(&h);
    let min_cut = h.min_cut(view.as_ref());
    diag.min_cut = min_cut.value;
    // the lighter direction of the minimum cut of the underlying graph has
    // at most half its value
    let log_p_dir = log_cut_failure(&h, view.as_ref(), min_cut.value) / 2.0;
    diag.p_c = log_p_dir.exp();
    diag.log_p_c = log_p_dir;
    if log_p_dir == f64::NEG_INFINITY {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let n = dg.n() as f64;
    let decision = regime_decision(log_p_dir, -4.0 * n.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, diag.p_c, |rng| {
                let mut survivors: Vec<(usize, usize)> = Vec::with_capacity(dg.m());
                for a in dg.arcs() {
                    if rng.random::<f64>() >= a.p_fail {
                        survivors.push((a.u, a.v));
                    }
                }
                !connectivity::is_strongly_connected(dg.n(), &survivors)
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            let eps_part = split_epsilon(epsilon);
            let delta = -diag.log_p_c / n.ln() - 2.0;
            diag.delta = Some(delta);
            // two directed cuts per undirected cut
            let alpha = cap_alpha(
                alpha_with_cover(
                    alpha_for_tail(delta, n.ln(), eps_part, 2.0),
                    total_enumeration_weight(&h, view.as_ref()),
                    diag.min_cut,
                ),
                cfg,
                "Eulerian strong-connectivity estimator",
            )?;
            diag.alpha = Some(alpha);
            let cuts = cut_enum::enumerate_directed_eulerian_cuts(
                dg,
                alpha,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_ENUM),
            )?;
            diag.cuts_enumerated = Some(cuts.len());
            let formula = directed_failure_formula(dg, &cuts)?;
            if formula.clause_count() == 0 {
                return Ok(finish(
                    0.0,
                    epsilon,
                    eta,
                    Method::CutEnumDnf,
                    seed,
                    diag,
                    started,
                ));
            }
            let est = formula.estimate_union_probability(
                eps_part,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_DNF),
            )?;
            diag.trials = est.samples;
            Ok(finish(
                est.value,
                epsilon,
                eta,
                Method::CutEnumDnf,
                seed,
                diag,
                started,
            ))
        }
    }
}

fn directed_failure_formula(dg: &Digraph, cuts: &[DirectedCutRecord]) -> Result<DnfFormula> {
    let probs: Vec<f64> = dg.arcs().iter().map(|a| a.p_fail).collect();
    let clauses: Vec<Vec<usize>> = cuts
        .iter()
        .filter(|cut| !cut.arc_ids.is_empty() && cut.arc_ids.iter().all(|&a| probs[a] > 0.0))
        .map(|cut| cut.arc_ids.clone())
        .collect();
    DnfFormula::positive(probs, clauses)
}

/// Probability that a uniformly random orientation of the graph is not
/// strongly connected. Edge failure probabilities are ignored; each edge
/// points one way or the other with probability 1/2.
pub fn estimate_orientation_failure(
    g: &Multigraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_orientation_failure_with(g, epsilon, eta, seed, &EstimatorConfig::default())
}

pub fn estimate_orientation_failure_with(
    g: &Multigraph,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    let started = Instant::now();
    let mut diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    if g.n() == 1 {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    if !g.is_connected_full() {
        diag.p_c = 1.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let min_cut = g.min_cut(None);
    diag.min_cut = min_cut.value;
    // a fixed direction of a fixed minimum cut occurs with probability 2^-c
    let log_p_dir = min_cut.value * 0.5f64.ln();
    diag.p_c = log_p_dir.exp();
    diag.log_p_c = log_p_dir;
    let n = g.n() as f64;
    let decision = regime_decision(log_p_dir, -4.0 * n.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, diag.p_c, |rng| {
                let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(g.m());
                for e in g.edges() {
                    if rng.random::<f64>() < 0.5 {
                        arcs.push((e.u, e.v));
                    } else {
                        arcs.push((e.v, e.u));
                    }
                }
                !connectivity::is_strongly_connected(g.n(), &arcs)
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            let eps_part = split_epsilon(epsilon);
            let delta = -diag.log_p_c / n.ln() - 2.0;
            diag.delta = Some(delta);
            let alpha = cap_alpha(
                alpha_with_cover(
                    alpha_for_tail(delta, n.ln(), eps_part, 2.0),
                    g.m() as f64,
                    diag.min_cut,
                ),
                cfg,
                "orientation estimator",
            )?;
            diag.alpha = Some(alpha);
            let (cuts, _) = cut_enum::enumerate_two_way_detailed(
                g,
                None,
                alpha,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_ENUM),
                cfg.slack,
            )?;
            diag.cuts_enumerated = Some(cuts.len());
            let formula = orientation_failure_formula(g, &cuts)?;
            let est = formula.estimate_union_probability(
                eps_part,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_DNF),
            )?;
            diag.trials = est.samples;
            Ok(finish(
                est.value,
                epsilon,
                eta,
                Method::CutEnumDnf,
                seed,
                diag,
                started,
            ))
        }
    }
}

/// Two clauses per cut over per-edge orientation bits (true = stored
/// direction): one clause per crossing direction.
fn orientation_failure_formula(g: &Multigraph, cuts: &[CutRecord]) -> Result<DnfFormula> {
    let probs = vec![0.5f64; g.m()];
    let mut clauses: Vec<Vec<Literal>> = Vec::with_capacity(2 * cuts.len());
    for cut in cuts {
        let mut toward_b = Vec::with_capacity(cut.edge_ids.len());
        let mut toward_a = Vec::with_capacity(cut.edge_ids.len());
        for &e in &cut.edge_ids {
            let edge = &g.edges()[e];
            // u -> v is the stored direction; side 1 holds the signature bits
            let u_side = cut.signature.block_of(edge.u);
            if u_side == 0 {
                toward_b.push(Literal::pos(e));
                toward_a.push(Literal::neg(e));
            } else {
                toward_b.push(Literal::neg(e));
                toward_a.push(Literal::pos(e));
            }
        }
        clauses.push(toward_b);
        clauses.push(toward_a);
    }
    DnfFormula::new(probs, clauses)
}

/// Probability that the graph partitions into r or more components.
pub fn estimate_rway_failure(
    g: &Multigraph,
    r: usize,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<Estimate> {
    estimate_rway_failure_with(g, r, epsilon, eta, seed, &EstimatorConfig::default())
}

pub fn estimate_rway_failure_with(
    g: &Multigraph,
    r: usize,
    epsilon: f64,
    eta: f64,
    seed: u64,
    cfg: &EstimatorConfig,
) -> Result<Estimate> {
    validate_eps_eta(epsilon, eta)?;
    if r < 2 {
        return Err(Error::InvalidInput("r must be at least 2".into()));
    }
    if r == 2 {
        return estimate_fail_with(g, epsilon, eta, seed, cfg);
    }
    if r > g.n() {
        return Err(Error::InvalidInput(format!(
            "r = {r} exceeds the vertex count {}",
            g.n()
        )));
    }
    let started = Instant::now();
    let mut diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        ..Default::default()
    };
    if connectivity::component_count(g.n(), g.endpoint_pairs()) >= r {
        diag.p_c = 1.0;
        return Ok(finish(
            1.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let view = weighting(g);
    let c_r = minimum_rway_cut_value(g, view.as_ref(), r)?;
    diag.min_cut = c_r;
    let log_p_cr = log_cut_failure(g, view.as_ref(), c_r);
    diag.p_c = log_p_cr.exp();
    diag.log_p_c = log_p_cr;
    if log_p_cr == f64::NEG_INFINITY {
        return Ok(finish(
            0.0,
            epsilon,
            eta,
            Method::ExactOracle,
            seed,
            diag,
            started,
        ));
    }
    let rn = (r * g.n()) as f64;
    let rm1 = (r - 1) as f64;
    let decision = regime_decision(log_p_cr, -4.0 * rm1 * rn.ln());
    let branch = cfg.forced.unwrap_or(decision.branch);
    match branch {
        Branch::Mc => {
            let (value, trials) = monte_carlo(epsilon, eta, seed, diag.p_c, |rng| {
                let mut survivors = Vec::with_capacity(g.m());
                simulate_edges(g, rng, &mut survivors);
                connectivity::component_count(g.n(), survivors.iter().copied()) >= r
            });
            diag.trials = trials;
            Ok(finish(
                value,
                epsilon,
                eta,
                Method::MonteCarlo,
                seed,
                diag,
                started,
            ))
        }
        Branch::Small => {
            let eps_part = split_epsilon(epsilon);
            let delta = -diag.log_p_c / (rm1 * rn.ln()) - 2.0;
            diag.delta = Some(delta);
            let alpha = cap_alpha(
                alpha_with_cover(
                    alpha_for_tail(delta, rm1 * rn.ln(), eps_part, 1.0),
                    total_enumeration_weight(g, view.as_ref()),
                    c_r,
                ),
                cfg,
                "r-way estimator",
            )?;
            diag.alpha = Some(alpha);
            let (cuts, _) = cut_enum::enumerate_r_way_detailed(
                g,
                view.as_ref(),
                r,
                alpha,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_ENUM),
                cfg.slack,
            )?;
            diag.cuts_enumerated = Some(cuts.len());
            let formula = dnf::build_cut_failure_formula(&cuts, g)?;
            if formula.clause_count() == 0 {
                return Ok(finish(
                    0.0,
                    epsilon,
                    eta,
                    Method::CutEnumDnf,
                    seed,
                    diag,
                    started,
                ));
            }
            let est = formula.estimate_union_probability(
                eps_part,
                eta / 2.0,
                parallel::derive_seed(seed, SEED_TAG_DNF),
            )?;
            diag.trials = est.samples;
            Ok(finish(
                est.value,
                epsilon,
                eta,
                Method::CutEnumDnf,
                seed,
                diag,
                started,
            ))
        }
    }
}

/// Exact minimum r-way cut value by partition enumeration (desk-scale).
fn minimum_rway_cut_value(g: &Multigraph, view: Option<&WeightedView>, r: usize) -> Result<f64> {
    const CAP: usize = 12;
    if g.n() > CAP {
        return Err(Error::Budget(format!(
            "exact minimum {r}-way cut needs at most {CAP} vertices, graph has {}",
            g.n()
        )));
    }
    let mut best = f64::INFINITY;
    for_each_partition_exact(g.n(), r, &mut |labels| {
        let mut value = 0.0f64;
        for (i, e) in g.edges().iter().enumerate() {
            if labels[e.u] != labels[e.v] {
                value += view.map_or(1.0, |v| v.weights[i]);
            }
        }
        best = best.min(value);
    });
    Ok(best)
}

fn for_each_partition_exact(n: usize, r: usize, f: &mut impl FnMut(&[u8])) {
    let mut labels = vec![0u8; n];
    go(1, 1, n, r, &mut labels, f);

    fn go(
        i: usize,
        used: usize,
        n: usize,
        r: usize,
        labels: &mut Vec<u8>,
        f: &mut impl FnMut(&[u8]),
    ) {
        if i == n {
            if used == r {
                f(labels);
            }
            return;
        }
        if used + (n - i) < r {
            return;
        }
        let cap = used.min(r - 1);
        for b in 0..=cap {
            labels[i] = b as u8;
            go(
                i + 1,
                if b == used { used + 1 } else { used },
                n,
                r,
                labels,
                f,
            );
        }
        labels[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle;

    fn within(est: f64, truth: f64, rel: f64) -> bool {
        (est - truth).abs() <= rel * truth
    }

    #[test]
    fn single_edge_fail() {
        let g = generators::path(2, 0.3).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 1).unwrap();
        assert_eq!(est.method, Method::MonteCarlo);
        assert!(within(est.value, 0.3, 0.05), "value {}", est.value);
    }

    #[test]
    fn triangle_mc_branch() {
        let g = generators::cycle(3, 0.5).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 2).unwrap();
        assert_eq!(est.method, Method::MonteCarlo);
        assert!(within(est.value, 0.5, 0.05));
    }

    #[test]
    fn triangle_varying_probabilities() {
        let g = Multigraph::build(3, &[(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.3)]).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 3).unwrap();
        assert!(within(est.value, 0.098, 0.05), "value {}", est.value);
    }

    #[test]
    fn six_cycle_small_branch() {
        let g = generators::cycle(6, 0.005).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 4).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = oracle::exact_fail(&g).unwrap();
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn k4_small_branch() {
        let g = generators::clique(4, 0.01).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 5).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = oracle::exact_fail(&g).unwrap();
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn tree_small_regime_closed_form() {
        let g = generators::path(4, 0.001).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 6).unwrap();
        let exact = 1.0 - 0.999f64.powi(3);
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn trivial_cases() {
        let single = Multigraph::build(1, &[]).unwrap();
        assert_eq!(estimate_fail(&single, 0.05, 0.01, 0).unwrap().value, 0.0);
        let disconnected = Multigraph::uniform(3, &[(0, 1)], 0.5).unwrap();
        assert_eq!(
            estimate_fail(&disconnected, 0.05, 0.01, 0).unwrap().value,
            1.0
        );
        let never = Multigraph::build(2, &[(0, 1, 0.0)]).unwrap();
        assert_eq!(estimate_fail(&never, 0.05, 0.01, 0).unwrap().value, 0.0);
    }

    #[test]
    fn regime_dispatch_pure() {
        let a = regime_decision(-3.0, -4.0);
        assert_eq!(a.branch, Branch::Mc);
        let b = regime_decision(-5.0, -4.0);
        assert_eq!(b.branch, Branch::Small);
    }

    #[test]
    fn forced_small_on_mc_regime_rejected() {
        let g = generators::cycle(3, 0.5).unwrap();
        assert!(estimate_fail_small(&g, 0.05, 0.01, 0).is_err());
    }

    #[test]
    fn multiterminal_path_ends() {
        let g = generators::path(3, 0.1).unwrap();
        let est = estimate_multiterminal(&g, &[0, 2], 0.05, 0.01, 7).unwrap();
        assert!(within(est.value, 0.19, 0.05), "value {}", est.value);
    }

    #[test]
    fn multiterminal_all_vertices_is_all_terminal() {
        let g = generators::cycle(3, 0.5).unwrap();
        let est = estimate_multiterminal(&g, &[0, 1, 2], 0.05, 0.01, 8).unwrap();
        assert!(within(est.value, 0.5, 0.05));
    }

    #[test]
    fn multiterminal_small_branch() {
        let g = generators::clique(4, 0.01).unwrap();
        let est = estimate_multiterminal(&g, &[0, 1], 0.05, 0.01, 9).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = oracle::exact_multiterminal_fail(&g, &[0, 1]).unwrap();
        assert!(
            within(est.value, exact, 0.1),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn kconn_c4() {
        let g = generators::cycle(4, 0.1).unwrap();
        let est = estimate_kconn_failure(&g, 2, 0.05, 0.01, 10).unwrap();
        let exact = 1.0 - 0.9f64.powi(4);
        assert!(within(est.value, exact, 0.05), "value {}", est.value);
    }

    #[test]
    fn kconn_one_is_fail() {
        let g = generators::cycle(4, 0.3).unwrap();
        let a = estimate_kconn_failure(&g, 1, 0.05, 0.01, 11).unwrap();
        let b = estimate_fail(&g, 0.05, 0.01, 11).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn kconn_below_connectivity_is_certain() {
        let g = generators::path(3, 0.1).unwrap();
        let est = estimate_kconn_failure(&g, 2, 0.05, 0.01, 12).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.method, Method::ExactOracle);
    }

    #[test]
    fn kconn_k3_on_k4() {
        let g = generators::clique(4, 0.01).unwrap();
        let est = estimate_kconn_failure(&g, 3, 0.05, 0.01, 33).unwrap();
        let exact = oracle::exact_kconn_fail(&g, 3).unwrap();
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn four_cycle_mc_value() {
        let g = generators::cycle(4, 0.1).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 34).unwrap();
        assert_eq!(est.method, Method::MonteCarlo);
        let exact = 1.0 - 0.9f64.powi(4) - 4.0 * 0.1 * 0.9f64.powi(3);
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn small_branch_delta_matches_p_c() {
        let g = generators::cycle(6, 0.005).unwrap();
        let est = estimate_fail(&g, 0.05, 0.01, 35).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let delta = est.diagnostics.delta.unwrap();
        let n = g.n() as f64;
        assert!((n.powf(-(2.0 + delta)) - est.diagnostics.p_c).abs() < 1e-12);
    }

    #[test]
    fn kconn_small_branch_bundled() {
        let g = generators::bundled_cycle(4, 3, 0.01).unwrap();
        let est = estimate_kconn_failure(&g, 2, 0.1, 0.01, 13).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = oracle::exact_kconn_fail(&g, 2).unwrap();
        assert!(
            (est.value - exact).abs() <= 0.1 * exact,
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn eulerian_three_cycle() {
        let dg = Digraph::build(3, &[(0, 1, 0.1), (1, 2, 0.1), (2, 0, 0.1)]).unwrap();
        let est = estimate_eulerian_strong_failure(&dg, 0.05, 0.01, 14).unwrap();
        assert!(within(est.value, 0.271, 0.05), "value {}", est.value);
    }

    #[test]
    fn eulerian_two_cycle() {
        let dg = Digraph::build(2, &[(0, 1, 0.2), (1, 0, 0.2)]).unwrap();
        let est = estimate_eulerian_strong_failure(&dg, 0.05, 0.01, 15).unwrap();
        assert!(within(est.value, 0.36, 0.05), "value {}", est.value);
    }

    #[test]
    fn eulerian_bidirected_triangle() {
        let tri = generators::cycle(3, 0.05).unwrap();
        let dg = Digraph::bidirected(&tri);
        let est = estimate_eulerian_strong_failure(&dg, 0.05, 0.01, 16).unwrap();
        let exact = oracle::exact_strong_fail(&dg).unwrap();
        assert!(
            within(est.value, exact, 0.1),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn eulerian_small_branch() {
        let tri = generators::bundled_cycle(3, 2, 0.001).unwrap();
        let dg = Digraph::bidirected(&tri);
        let est = estimate_eulerian_strong_failure(&dg, 0.1, 0.01, 17).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = oracle::exact_strong_fail(&dg).unwrap();
        assert!(
            (est.value - exact).abs() <= 0.1 * exact,
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn orientation_triangle() {
        let g = generators::cycle(3, 0.5).unwrap();
        let est = estimate_orientation_failure(&g, 0.05, 0.01, 18).unwrap();
        assert!(within(est.value, 0.75, 0.05), "value {}", est.value);
    }

    #[test]
    fn orientation_single_edge() {
        let g = generators::path(2, 0.5).unwrap();
        let est = estimate_orientation_failure(&g, 0.05, 0.01, 19).unwrap();
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn orientation_c4() {
        let g = generators::cycle(4, 0.5).unwrap();
        let est = estimate_orientation_failure(&g, 0.05, 0.01, 20).unwrap();
        assert!(within(est.value, 0.875, 0.05), "value {}", est.value);
    }

    #[test]
    fn orientation_small_branch_bundled() {
        // high connectivity forces the cut-enumeration branch
        let g = generators::bundled_cycle(4, 6, 0.5).unwrap();
        let est = estimate_orientation_failure(&g, 0.1, 0.01, 21).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        // orientation failure = some bundle fully aligned; compute directly:
        // P[union of 12 direction events over 4 bundles of 6 edges]
        let formula_exact = {
            let cuts = crate::oracle::exact_cut_list(&g, 1.34).unwrap();
            let f = orientation_failure_formula(&g, &cuts).unwrap();
            f.exact_union_probability().unwrap()
        };
        assert!(
            (est.value - formula_exact).abs() <= 0.1 * formula_exact,
            "est {} exact {formula_exact}",
            est.value
        );
    }

    #[test]
    fn rway_triangle_all_edges() {
        let g = generators::cycle(3, 0.5).unwrap();
        let est = estimate_rway_failure(&g, 3, 0.05, 0.01, 22).unwrap();
        assert!(within(est.value, 0.125, 0.05), "value {}", est.value);
    }

    #[test]
    fn rway_two_is_fail() {
        let g = generators::cycle(4, 0.3).unwrap();
        let a = estimate_rway_failure(&g, 2, 0.05, 0.01, 23).unwrap();
        let b = estimate_fail(&g, 0.05, 0.01, 23).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn rway_c4_three_components() {
        let g = generators::cycle(4, 0.1).unwrap();
        let est = estimate_rway_failure(&g, 3, 0.05, 0.01, 24).unwrap();
        let tail = oracle::exact_partition_tail(&g).unwrap();
        let exact = tail.s_r(3);
        assert!(
            within(est.value, exact, 0.05),
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn rway_small_branch_triangle() {
        let g = generators::cycle(3, 0.001).unwrap();
        let est = estimate_rway_failure(&g, 3, 0.1, 0.01, 25).unwrap();
        assert_eq!(est.method, Method::CutEnumDnf);
        let exact = 0.001f64.powi(3);
        assert!(
            (est.value - exact).abs() <= 0.1 * exact,
            "est {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn rway_rejects_r_above_n() {
        let g = generators::path(2, 0.5).unwrap();
        assert!(estimate_rway_failure(&g, 3, 0.05, 0.01, 0).is_err());
    }

    #[test]
    fn estimates_deterministic() {
        let g = generators::cycle(5, 0.2).unwrap();
        let a = estimate_fail(&g, 0.05, 0.01, 42).unwrap();
        let b = estimate_fail(&g, 0.05, 0.01, 42).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.diagnostics.trials, b.diagnostics.trials);
    }

    #[test]
    fn monotone_in_p_spot_check() {
        let g_lo = generators::cycle(4, 0.2).unwrap();
        let g_hi = generators::cycle(4, 0.3).unwrap();
        let f_lo = oracle::exact_fail(&g_lo).unwrap();
        let f_hi = oracle::exact_fail(&g_hi).unwrap();
        assert!(f_hi >= f_lo);
        let e_lo = estimate_fail(&g_lo, 0.05, 0.01, 30).unwrap().value;
        let e_hi = estimate_fail(&g_hi, 0.05, 0.01, 30).unwrap().value;
        assert!(e_hi >= e_lo * (1.0 - 0.1));
    }

    #[test]
    fn fail_lower_bounded_by_min_cut_failure() {
        for p in [0.2, 0.4] {
            let g = generators::cycle(4, p).unwrap();
            let exact = oracle::exact_fail(&g).unwrap();
            assert!(exact >= p * p - 1e-12);
        }
    }
}
