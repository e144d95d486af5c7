//! Deterministic approximations of the disconnection probability: the sum
//! of near-minimum-cut failure probabilities with a certified error bound,
//! and a truncated inclusion-exclusion scheme whose truncation depth is
//! chosen constructively from the same certificates.

use std::time::Instant;

use crate::cut_enum::{self, CutRecord};
use crate::error::{Error, Result};
use crate::estimators::{Diagnostics, Estimate, EstimatorConfig, Method};
use crate::multigraph::Multigraph;
use crate::oracle;
use crate::parallel;

/// A family of events, each the conjunction "all listed variables are true",
/// over independent variables with the given truth probabilities.
#[derive(Debug, Clone)]
pub struct EventSystem {
    pub var_probs: Vec<f64>,
    pub events: Vec<Vec<usize>>,
}

impl EventSystem {
    pub fn new(var_probs: Vec<f64>, events: Vec<Vec<usize>>) -> Result<Self> {
        for (i, &p) in var_probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidInput(format!(
                    "variable {i}: probability {p} outside [0, 1]"
                )));
            }
        }
        for (i, ev) in events.iter().enumerate() {
            if ev.is_empty() {
                return Err(Error::InvalidInput(format!("event {i} is empty")));
            }
            if ev.iter().any(|&v| v >= var_probs.len()) {
                return Err(Error::InvalidInput(format!(
                    "event {i}: undefined variable"
                )));
            }
        }
        Ok(Self { var_probs, events })
    }

    fn from_cuts(g: &Multigraph, cuts: &[CutRecord]) -> Result<Self> {
        let var_probs: Vec<f64> = g.edges().iter().map(|e| e.p_fail).collect();
        let events: Vec<Vec<usize>> = cuts.iter().map(|c| c.edge_ids.clone()).collect();
        Self::new(var_probs, events)
    }

    /// ln Pr[all events in the index set occur] = sum of ln p over the union
    /// of their variable sets.
    pub fn log_intersection_probability(&self, indices: &[usize]) -> f64 {
        let mut count = vec![0u32; self.var_probs.len()];
        let mut log_sum = 0.0f64;
        for &i in indices {
            for &v in &self.events[i] {
                if count[v] == 0 {
                    log_sum += self.var_probs[v].ln();
                }
                count[v] += 1;
            }
        }
        log_sum
    }
}

/// Both sides of the truncation-error identity, computed independently.
#[derive(Debug, Clone)]
pub struct TruncationLemmaCheck {
    /// Inclusion-exclusion truncated before the k-th term.
    pub truncated_sum: f64,
    /// Exact union probability by exhaustive assignment enumeration.
    pub exact_union: f64,
    /// truncated_sum - exact_union (sign alternates with k).
    pub signed_error: f64,
    /// sum over u of C(u-2, k-2) * Pr[u or more events occur].
    pub lemma_error_sum: f64,
    /// Pr[u or more events occur], indexed by u.
    pub s_events: Vec<f64>,
    /// Pr[exactly u events occur], indexed by u.
    pub t_events: Vec<f64>,
}

const EXACT_EVENT_VARIABLE_BUDGET: usize = 20;

/// Evaluate both sides of the truncation identity: the actual error of the
/// inclusion-exclusion sum truncated before term k, and the certificate sum
/// over occurrence counts. They agree exactly (up to float noise).
pub fn truncation_error_exact(sys: &EventSystem, k: usize) -> Result<TruncationLemmaCheck> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "truncation term k must be at least 2".into(),
        ));
    }
    let used: std::collections::BTreeSet<usize> = sys.events.iter().flatten().copied().collect();
    let used: Vec<usize> = used.into_iter().collect();
    let v = used.len();
    if v > EXACT_EVENT_VARIABLE_BUDGET {
        return Err(Error::Budget(format!(
            "{v} variables exceeds the {EXACT_EVENT_VARIABLE_BUDGET}-variable budget"
        )));
    }
    let slot_of: std::collections::HashMap<usize, usize> =
        used.iter().enumerate().map(|(s, &var)| (var, s)).collect();
    let event_masks: Vec<u32> = sys
        .events
        .iter()
        .map(|ev| ev.iter().fold(0u32, |m, &var| m | (1 << slot_of[&var])))
        .collect();
    let probs: Vec<f64> = used.iter().map(|&var| sys.var_probs[var]).collect();

    let e_count = sys.events.len();
    let mut t_events = vec![0.0f64; e_count + 1];
    for assignment in 0u32..(1 << v) {
        let mut prob = 1.0f64;
        for (slot, &q) in probs.iter().enumerate() {
            prob *= if (assignment >> slot) & 1 == 1 {
                q
            } else {
                1.0 - q
            };
        }
        if prob == 0.0 {
            continue;
        }
        let u = event_masks.iter().filter(|&&m| assignment & m == m).count();
        t_events[u] += prob;
    }
    let mut s_events = vec![0.0f64; e_count + 2];
    for u in (0..=e_count).rev() {
        s_events[u] = s_events[u + 1] + t_events[u];
    }
    s_events.truncate(e_count + 1);
    let exact_union = s_events.get(1).copied().unwrap_or(0.0);

    let truncated_sum = truncated_inclusion_exclusion(sys, k);

    let lemma_error_sum: f64 = (2..=e_count)
        .map(|u| binomial_f64(u - 2, k - 2) * s_events[u])
        .sum();

    Ok(TruncationLemmaCheck {
        truncated_sum,
        exact_union,
        signed_error: truncated_sum - exact_union,
        lemma_error_sum,
        s_events,
        t_events,
    })
}

/// Inclusion-exclusion over the events, keeping terms 1 through k-1.
pub fn truncated_inclusion_exclusion(sys: &EventSystem, k: usize) -> f64 {
    let depth = (k - 1).min(sys.events.len());
    let mut terms = vec![0.0f64; depth + 1];
    let mut count = vec![0u32; sys.var_probs.len()];
    let mut chosen: Vec<usize> = Vec::with_capacity(depth);
    walk(sys, 0, 0.0, depth, &mut count, &mut chosen, &mut terms);
    let mut total = 0.0f64;
    for (j, &t) in terms.iter().enumerate().skip(1) {
        if j % 2 == 1 {
            total += t;
        } else {
            total -= t;
        }
    }
    return total;

    fn walk(
        sys: &EventSystem,
        start: usize,
        log_sum: f64,
        depth_left_base: usize,
        count: &mut Vec<u32>,
        chosen: &mut Vec<usize>,
        terms: &mut Vec<f64>,
    ) {
        if chosen.len() == depth_left_base {
            return;
        }
        for i in start..sys.events.len() {
            let mut added = 0.0f64;
            for &v in &sys.events[i] {
                if count[v] == 0 {
                    added += sys.var_probs[v].ln();
                }
                count[v] += 1;
            }
            chosen.push(i);
            let log_now = log_sum + added;
            terms[chosen.len()] += log_now.exp();
            walk(sys, i + 1, log_now, depth_left_base, count, chosen, terms);
            chosen.pop();
            for &v in &sys.events[i] {
                count[v] -= 1;
            }
        }
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Which tail inequality produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateSource {
    /// Occurrence counts forced via the log2 bound on distinct failed cuts.
    LogCount,
    /// Occurrence counts forced via the u^(1/(2 alpha)) bound.
    PowerCount,
    /// Per-term minimum of the two.
    Tighter,
}

/// Certified upper bound on the truncation error at term k.
#[derive(Debug, Clone)]
pub struct TruncationCertificate {
    pub k: usize,
    pub bound: f64,
    pub source: CertificateSource,
}

/// Certified bound on sum over u >= k of C(u-2, k-2) Pr[S_u]: when u
/// distinct near-minimum cuts fail the graph splits into at least r_u
/// components, and the probability of r or more components is below
/// n^(-delta r / 2).
fn truncation_certificate(
    k: usize,
    n_events: usize,
    delta: f64,
    ln_n: f64,
    alpha: f64,
) -> TruncationCertificate {
    let mut bound = 0.0f64;
    for u in k.max(2)..=n_events {
        let r_log = ((u as f64 + 1.0).log2() + 1.0).ceil();
        let r_pow = (u as f64).powf(1.0 / (2.0 * alpha)).floor() + 1.0;
        let r_u = r_log.max(r_pow);
        let s_bound = (-delta * r_u * ln_n / 2.0).exp().min(1.0);
        bound += binomial_f64(u - 2, k - 2) * s_bound;
    }
    TruncationCertificate {
        k,
        bound,
        source: CertificateSource::Tighter,
    }
}

/// Probability that any cut of value above alpha times the minimum fails:
/// n^(-delta alpha) * max(2, 1 + 2/delta), valid for delta > 0.
fn tail_probability_bound(delta: f64, ln_n: f64, alpha: f64) -> f64 {
    (2.0f64).max(1.0 + 2.0 / delta) * (-delta * alpha * ln_n).exp()
}

fn alpha_for_tail_target(delta: f64, ln_n: f64, target_log: f64) -> f64 {
    // smallest alpha with ln(tail_probability_bound) <= target_log
    let mult = (2.0f64).max(1.0 + 2.0 / delta).ln();
    (mult - target_log) / (delta * ln_n)
}

/// Near-minimum cuts for the deterministic approximations: exhaustive
/// partition enumeration at desk scale (fully deterministic), randomized
/// contraction beyond it.
fn weak_cuts(g: &Multigraph, alpha: f64, seed: u64) -> Result<Vec<CutRecord>> {
    let view = (!g.is_uniform_p()).then(|| g.weighted_view());
    if g.n() <= 10 {
        let cuts = oracle::exact_cut_list_weighted(g, view.as_ref(), alpha)?;
        Ok(cuts)
    } else {
        cut_enum::enumerate_alpha_min_cuts(g, view.as_ref(), alpha, 1e-3, seed)
    }
}

fn small_regime_diagnostics(g: &Multigraph) -> Result<(Diagnostics, f64, f64)> {
    if g.n() < 2 {
        return Err(Error::InvalidInput("need at least two vertices".into()));
    }
    if !g.is_connected_full() {
        return Err(Error::InvalidGraph("graph must be connected".into()));
    }
    let view = (!g.is_uniform_p()).then(|| g.weighted_view());
    let min_cut = g.min_cut(view.as_ref());
    let log_p_c = if view.is_some() {
        -min_cut.value
    } else {
        match g.edges().first() {
            Some(e) => min_cut.value * e.p_fail.ln(),
            None => f64::NEG_INFINITY,
        }
    };
    let n = g.n() as f64;
    let diag = Diagnostics {
        n: g.n(),
        m: g.m(),
        min_cut: min_cut.value,
        p_c: log_p_c.exp(),
        log_p_c,
        ..Default::default()
    };
    Ok((diag, log_p_c, n.ln()))
}

/// Sum of the failure probabilities of all near-minimum cuts, with a
/// certified absolute error bound attached. Requires the minimum-cut
/// failure probability below n^-4.
pub fn heuristic_sum_fail(g: &Multigraph, seed: u64) -> Result<Estimate> {
    let started = Instant::now();
    let (mut diag, log_p_c, ln_n) = small_regime_diagnostics(g)?;
    if log_p_c == f64::NEG_INFINITY {
        return Ok(finish_estimate(
            0.0,
            0.0,
            Method::HeuristicSum,
            seed,
            diag,
            started,
            Some(0.0),
        ));
    }
    if log_p_c >= -4.0 * ln_n {
        return Err(Error::Regime(format!(
            "cut-probability sum requires p^c < n^-4, but p^c = {:.6e} >= {:.6e}",
            log_p_c.exp(),
            (-4.0 * ln_n).exp()
        )));
    }
    let delta = -log_p_c / ln_n - 2.0;
    diag.delta = Some(delta);
    const EPS_ENUM: f64 = 0.01;
    let alpha = alpha_for_tail_target(delta, ln_n, (EPS_ENUM.ln()) + log_p_c).max(1.0);
    diag.alpha = Some(alpha);
    let cuts = weak_cuts(g, alpha, parallel::derive_seed(seed, 1))?;
    diag.cuts_enumerated = Some(cuts.len());
    let sum: f64 = cuts
        .iter()
        .map(|cut| {
            let log_fail: f64 = cut.edge_ids.iter().map(|&e| g.log_p(e)).sum();
            log_fail.exp()
        })
        .sum();
    // certified bound: overlap among tracked cuts plus the untracked tail
    let geo = 2.0 * (-delta * ln_n / 2.0).exp();
    let overlap = if geo < 1.0 {
        2.0 * (-1.5 * delta * ln_n).exp() / (1.0 - geo)
    } else {
        f64::INFINITY
    };
    let tail = tail_probability_bound(delta, ln_n, alpha);
    let bound = overlap + tail;
    Ok(finish_estimate(
        sum,
        0.0,
        Method::HeuristicSum,
        seed,
        diag,
        started,
        Some(bound),
    ))
}

/// Deterministic approximation of the disconnection probability by
/// inclusion-exclusion over the near-minimum-cut failure events, truncated
/// at the smallest term whose certificate meets the error target.
pub fn pas_fail(g: &Multigraph, epsilon: f64) -> Result<Estimate> {
    pas_fail_with(g, epsilon, &EstimatorConfig::default(), 0)
}

pub fn pas_fail_with(
    g: &Multigraph,
    epsilon: f64,
    cfg: &EstimatorConfig,
    seed: u64,
) -> Result<Estimate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidInput(format!(
            "epsilon must be in (0, 1), got {epsilon}"
        )));
    }
    let started = Instant::now();
    let (mut diag, log_p_c, ln_n) = small_regime_diagnostics(g)?;
    if log_p_c == f64::NEG_INFINITY {
        return Ok(finish_estimate(
            0.0,
            epsilon,
            Method::PasInclExcl,
            seed,
            diag,
            started,
            Some(0.0),
        ));
    }
    if log_p_c >= -2.0 * ln_n {
        return Err(Error::Regime(format!(
            "inclusion-exclusion scheme requires p^c < n^-2, but p^c = {:.6e} >= {:.6e}",
            log_p_c.exp(),
            (-2.0 * ln_n).exp()
        )));
    }
    let delta = -log_p_c / ln_n - 2.0;
    diag.delta = Some(delta);
    // half the error budget to the enumeration tail, half to truncation
    let eps_tail = epsilon / 2.0;
    let eps_trunc = epsilon / 2.0;
    let alpha_raw = alpha_for_tail_target(delta, ln_n, eps_tail.ln() + log_p_c).max(1.0);
    let alpha = if alpha_raw > cfg.alpha_cap {
        return Err(Error::Regime(format!(
            "inclusion-exclusion scheme: required alpha {alpha_raw:.4} exceeds the cap {}",
            cfg.alpha_cap
        )));
    } else {
        alpha_raw
    };
    diag.alpha = Some(alpha);
    let cuts = weak_cuts(g, alpha, parallel::derive_seed(seed, 1))?;
    let n_events = cuts.len();
    diag.cuts_enumerated = Some(n_events);
    if n_events == 0 {
        return Ok(finish_estimate(
            0.0,
            epsilon,
            Method::PasInclExcl,
            seed,
            diag,
            started,
            Some(0.0),
        ));
    }
    let target = eps_trunc * log_p_c.exp();
    let mut chosen: Option<TruncationCertificate> = None;
    for k in 2..=(n_events + 1) {
        let cert = truncation_certificate(k, n_events, delta, ln_n, alpha);
        if cert.bound <= target {
            chosen = Some(cert);
            break;
        }
    }
    let cert = chosen.expect("k = n_events + 1 always certifies zero error");
    let work: f64 = (1..cert.k).map(|j| binomial_f64(n_events, j)).sum();
    if work > 5e6 {
        return Err(Error::Budget(format!(
            "truncation needs k = {} over {n_events} cut events ({work:.3e} terms)",
            cert.k
        )));
    }
    let sys = EventSystem::from_cuts(g, &cuts)?;
    let value = truncated_inclusion_exclusion(&sys, cert.k);
    let tail = tail_probability_bound(delta, ln_n, alpha);
    let total_bound = cert.bound + tail;
    let mut est = finish_estimate(
        value,
        epsilon,
        Method::PasInclExcl,
        seed,
        diag,
        started,
        Some(total_bound),
    );
    est.diagnostics.trials = cert.k as u64;
    Ok(est)
}

#[allow(clippy::too_many_arguments)]
fn finish_estimate(
    value: f64,
    epsilon: f64,
    method: Method,
    seed: u64,
    mut diag: Diagnostics,
    started: Instant,
    bound: Option<f64>,
) -> Estimate {
    diag.certified_error_bound = bound;
    diag.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    Estimate {
        value: value.clamp(0.0, 1.0),
        epsilon,
        eta: 0.0,
        method,
        seed,
        diagnostics: diag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn two_events_truncated_at_two() {
        // truncation at k = 2 keeps only the single-event sum; the error is
        // exactly the pairwise intersection
        let sys = EventSystem::new(vec![0.3, 0.4, 0.5], vec![vec![0, 1], vec![1, 2]]).unwrap();
        let check = truncation_error_exact(&sys, 2).unwrap();
        let p1 = 0.3 * 0.4;
        let p2 = 0.4 * 0.5;
        let both = 0.3 * 0.4 * 0.5;
        assert!((check.truncated_sum - (p1 + p2)).abs() < 1e-12);
        assert!((check.exact_union - (p1 + p2 - both)).abs() < 1e-12);
        assert!((check.signed_error - both).abs() < 1e-12);
        assert!((check.lemma_error_sum - both).abs() < 1e-12);
    }

    #[test]
    fn three_overlapping_events() {
        let sys = EventSystem::new(
            vec![0.5, 0.5, 0.5],
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        for k in 2..=4 {
            let check = truncation_error_exact(&sys, k).unwrap();
            assert!(
                (check.signed_error.abs() - check.lemma_error_sum).abs() < 1e-12,
                "k = {k}"
            );
            // even k overestimates, odd k underestimates
            if k % 2 == 0 {
                assert!(check.signed_error >= -1e-15);
            } else {
                assert!(check.signed_error <= 1e-15);
            }
        }
    }

    #[test]
    fn truncation_beyond_event_count_is_exact() {
        let sys = EventSystem::new(vec![0.2, 0.7], vec![vec![0], vec![1]]).unwrap();
        let check = truncation_error_exact(&sys, 3).unwrap();
        assert!(check.signed_error.abs() < 1e-15);
        assert!(check.lemma_error_sum.abs() < 1e-15);
    }

    #[test]
    fn event_tail_consistency() {
        let sys = EventSystem::new(
            vec![0.3, 0.6, 0.2, 0.8],
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
        )
        .unwrap();
        let check = truncation_error_exact(&sys, 2).unwrap();
        // t_u = S_u - S_{u+1}; S nonincreasing
        for u in 0..check.t_events.len() {
            let s_next = check.s_events.get(u + 1).copied().unwrap_or(0.0);
            assert!((check.t_events[u] - (check.s_events[u] - s_next)).abs() < 1e-12);
        }
        for u in 0..check.s_events.len() - 1 {
            assert!(check.s_events[u] + 1e-15 >= check.s_events[u + 1]);
        }
    }

    #[test]
    fn heuristic_two_disjoint_cuts_overestimates_by_product() {
        // two parallel-edge bundles in series: cuts {0,1} and {2,3}
        let g = Multigraph::build(
            3,
            &[(0, 1, 0.001), (0, 1, 0.001), (1, 2, 0.001), (1, 2, 0.001)],
        )
        .unwrap();
        let est = heuristic_sum_fail(&g, 1).unwrap();
        let a = 0.001f64 * 0.001;
        let exact = a + a - a * a;
        assert!((est.value - 2.0 * a).abs() < 1e-15);
        let err = (est.value - exact).abs();
        assert!((err - a * a).abs() < 1e-18);
        assert!(err <= est.diagnostics.certified_error_bound.unwrap());
    }

    #[test]
    fn heuristic_six_cycle() {
        let g = generators::cycle(6, 0.005).unwrap();
        let est = heuristic_sum_fail(&g, 2).unwrap();
        // sum over the fifteen minimum cuts dominates
        assert!((est.value - 15.0 * 0.005f64.powi(2)).abs() < 1e-7);
        let exact = oracle::exact_fail(&g).unwrap();
        assert!((est.value - exact).abs() <= est.diagnostics.certified_error_bound.unwrap());
    }

    #[test]
    fn heuristic_rejects_large_failure() {
        let g = generators::cycle(3, 0.5).unwrap();
        assert!(heuristic_sum_fail(&g, 0).is_err());
    }

    #[test]
    fn pas_two_events_is_first_order() {
        let g = Multigraph::build(
            3,
            &[
                (0, 1, 0.0005),
                (0, 1, 0.0005),
                (1, 2, 0.0005),
                (1, 2, 0.0005),
            ],
        )
        .unwrap();
        let est = pas_fail(&g, 0.01).unwrap();
        let exact = oracle::exact_fail(&g).unwrap();
        assert!((est.value - exact).abs() <= 0.01 * exact);
        assert!((est.value - exact).abs() <= est.diagnostics.certified_error_bound.unwrap());
    }

    #[test]
    fn pas_six_cycle() {
        let g = generators::cycle(6, 0.0005).unwrap();
        let est = pas_fail(&g, 0.01).unwrap();
        let exact = oracle::exact_fail(&g).unwrap();
        assert!(
            (est.value - exact).abs() <= 0.01 * exact,
            "pas {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn pas_k4() {
        let g = generators::clique(4, 0.005).unwrap();
        let est = pas_fail(&g, 0.01).unwrap();
        let exact = oracle::exact_fail(&g).unwrap();
        assert!(
            (est.value - exact).abs() <= 0.01 * exact,
            "pas {} exact {exact}",
            est.value
        );
    }

    #[test]
    fn pas_deterministic() {
        let g = generators::cycle(5, 0.001).unwrap();
        let a = pas_fail(&g, 0.01).unwrap();
        let b = pas_fail(&g, 0.01).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
