//! Tutte polynomial evaluation through the edge-failure model.
//!
//! For y > 1, T(G; x, y) equals (y^m / (y-1)^(n-1)) E[Q^(kappa - 1)] where
//! Q = (x-1)(y-1) and kappa is the component count when each edge fails
//! independently with probability p = 1/y (survives with probability
//! 1 - 1/y; the random-cluster weighting attaches (y-1) to each surviving
//! edge). Highly connected graphs make the expectation nearly 1, so the
//! prefactor alone is a good approximation and the second-order correction
//! reduces to estimating the probabilities s_r of partitioning into r or
//! more components.

use crate::error::{Error, Result};
use crate::estimators::{self, EstimatorConfig};
use crate::multigraph::Multigraph;
use crate::oracle::PartitionTail;
use crate::parallel;

const EXACT_EDGE_BUDGET: usize = 16;

/// Evaluation point with the derived failure-model quantities.
#[derive(Debug, Clone, Copy)]
pub struct TuttePoint {
    pub x: f64,
    pub y: f64,
}

impl TuttePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidInput("Tutte point must be finite".into()));
        }
        Ok(Self { x, y })
    }

    pub fn q(&self) -> f64 {
        (self.x - 1.0) * (self.y - 1.0)
    }

    /// Edge failure probability of the evaluation model; needs y > 1.
    pub fn p(&self) -> Result<f64> {
        if self.y <= 1.0 {
            return Err(Error::InvalidInput(format!(
                "failure-model evaluation needs y > 1, got y = {}",
                self.y
            )));
        }
        Ok(1.0 / self.y)
    }
}

/// Q^e with the 0^0 = 1 convention.
fn q_pow(q: f64, e: usize) -> f64 {
    if e == 0 {
        1.0
    } else {
        q.powi(e as i32)
    }
}

/// Exact Tutte polynomial by deletion-contraction: loops contribute a
/// factor y, bridges x, everything else splits into delete + contract.
pub fn exact_tutte(g: &Multigraph, x: f64, y: f64) -> Result<f64> {
    if g.m() > EXACT_EDGE_BUDGET {
        return Err(Error::Budget(format!(
            "{} edges exceeds the {EXACT_EDGE_BUDGET}-edge deletion-contraction budget",
            g.m()
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    Ok(deletion_contraction(edges, g.n(), x, y))
}

fn deletion_contraction(mut edges: Vec<(usize, usize)>, n: usize, x: f64, y: f64) -> f64 {
    let mut factor = 1.0f64;
    loop {
        // strip loops
        let before = edges.len();
        edges.retain(|&(u, v)| u != v);
        factor *= y.powi((before - edges.len()) as i32);
        let Some(&(u, v)) = edges.last() else {
            return factor;
        };
        let rest = &edges[..edges.len() - 1];
        let bridge = {
            let mut uf = crate::connectivity::UnionFind::new(n);
            for &(a, b) in rest {
                uf.union(a, b);
            }
            !uf.same(u, v)
        };
        if bridge {
            factor *= x;
            edges.pop();
            for e in edges.iter_mut() {
                if e.0 == v {
                    e.0 = u;
                }
                if e.1 == v {
                    e.1 = u;
                }
            }
            continue;
        }
        // delete + contract
        let deleted = rest.to_vec();
        let mut contracted = deleted.clone();
        for e in contracted.iter_mut() {
            if e.0 == v {
                e.0 = u;
            }
            if e.1 == v {
                e.1 = u;
            }
        }
        return factor
            * (deletion_contraction(deleted, n, x, y) + deletion_contraction(contracted, n, x, y));
    }
}

/// Exact Tutte value through the failure-model identity: enumerate all
/// failure patterns at p = 1 - 1/y, average Q^(kappa - 1), and scale by
/// y^m / (y-1)^(n-1).
pub fn exact_expectation_identity(g: &Multigraph, x: f64, y: f64) -> Result<f64> {
    if g.m() > EXACT_EDGE_BUDGET {
        return Err(Error::Budget(format!(
            "{} edges exceeds the {EXACT_EDGE_BUDGET}-edge enumeration budget",
            g.m()
        )));
    }
    let point = TuttePoint::new(x, y)?;
    let p = point.p()?;
    let q_val = point.q();
    let n = g.n();
    let m = g.m();
    let mut expectation = 0.0f64;
    let mut uf = crate::connectivity::UnionFind::new(n);
    for mask in 0u32..(1u32 << m) {
        let mut prob = 1.0f64;
        uf.reset();
        for (i, e) in g.edges().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prob *= p;
            } else {
                prob *= 1.0 - p;
                uf.union(e.u, e.v);
            }
        }
        expectation += prob * q_pow(q_val, uf.components() - 1);
    }
    Ok(y.powi(m as i32) / (y - 1.0).powi(n as i32 - 1) * expectation)
}

/// E[Q^(kappa-1)] reconstructed from the component-count tail:
/// 1 + (Q - 1) * sum over r >= 2 of s_r Q^(r-2).
pub fn expectation_from_tail(tail: &PartitionTail, q_val: f64) -> f64 {
    let mut sum = 0.0f64;
    for r in 2..tail.s.len() {
        sum += tail.s[r] * q_pow(q_val, r - 2);
    }
    1.0 + (q_val - 1.0) * sum
}

/// Approximation output. The Tutte value is carried in sign + log-magnitude
/// form because the prefactor y^m / (y-1)^(n-1) overflows quickly;
/// `t_prime` (the normalized expectation) is the primary numeric payload.
#[derive(Debug, Clone)]
pub struct TutteEstimate {
    pub t_prime: f64,
    pub t_sign: i8,
    pub log_t_magnitude: f64,
    /// Normalized second-order term (1 - Q) * sum of s_r Q^(r-2), when
    /// estimated.
    pub delta_t_normalized: Option<f64>,
    pub delta_t_sign: Option<i8>,
    pub log_delta_t_magnitude: Option<f64>,
    /// Certified bound on |T' - 1| (leading approximation) or on the
    /// dropped series tail (second-order estimation).
    pub error_bound: f64,
    /// Series truncation depth used by the second-order estimator.
    pub r0: Option<usize>,
    pub delta: f64,
    pub min_cut: f64,
}

fn log_prefactor(g: &Multigraph, y: f64) -> f64 {
    g.m() as f64 * y.ln() - (g.n() as f64 - 1.0) * (y - 1.0).ln()
}

/// Regime check shared by the approximations: the minimum cut must be large
/// enough that p^c < n^-3 (delta > 1) under the evaluation failure
/// probability p = 1/y, and Q must be small against n^(delta/4).
/// Returns (c, delta).
fn tutte_regime(g: &Multigraph, x: f64, y: f64) -> Result<(f64, f64)> {
    if g.n() < 2 {
        return Err(Error::InvalidInput("need at least two vertices".into()));
    }
    if !g.is_connected_full() {
        return Err(Error::InvalidGraph("graph must be connected".into()));
    }
    let point = TuttePoint::new(x, y)?;
    let p = point.p()?;
    let n = g.n() as f64;
    let c = g.min_cut(None).value;
    // ln(1/p) = ln y for the evaluation model
    let c_required = 3.0 * n.ln() / y.ln();
    if c <= c_required {
        return Err(Error::Regime(format!(
            "connectivity {c} does not exceed 3 ln n / ln(1/p) = {c_required:.4}; \
             need minimum cut at least {}",
            (c_required.floor() as u64) + 1
        )));
    }
    let q_val = point.q();
    // equivalent form of |Q| < n^(delta/4) / 4
    let q_bound = (256.0 * q_val.powi(4) * n * n).ln() / y.ln();
    if q_bound >= c {
        return Err(Error::Regime(format!(
            "ln(256 Q^4 n^2)/ln(1/p) = {q_bound:.4} must be below the minimum cut {c}"
        )));
    }
    let delta = -c * p.ln() / n.ln() - 2.0;
    Ok((c, delta))
}

/// Constant-time leading approximation T' ~ 1, with a certified bound on
/// the truncation: valid when the connectivity checks pass.
pub fn approx_tutte_leading(g: &Multigraph, x: f64, y: f64) -> Result<TutteEstimate> {
    let (c, delta) = tutte_regime(g, x, y)?;
    let n = g.n() as f64;
    let q_val = TuttePoint::new(x, y)?.q();
    let bound = 2.0 * (1.0f64).max((q_val - 1.0).abs()) * (-delta * n.ln()).exp();
    Ok(TutteEstimate {
        t_prime: 1.0,
        t_sign: 1,
        log_t_magnitude: log_prefactor(g, y),
        delta_t_normalized: None,
        delta_t_sign: None,
        log_delta_t_magnitude: None,
        error_bound: bound,
        r0: None,
        delta,
        min_cut: c,
    })
}

/// Estimate the second-order term: Delta T / prefactor = (1 - Q) * sum over
/// r of s_r Q^(r-2), truncated at r0 with the dropped tail certified below
/// (epsilon/2) * n^-(2+delta), each s_r estimated to relative error
/// epsilon/2.
pub fn estimate_delta_t(
    g: &Multigraph,
    x: f64,
    y: f64,
    epsilon: f64,
    eta: f64,
    seed: u64,
) -> Result<TutteEstimate> {
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
    let (c, delta) = tutte_regime(g, x, y)?;
    let point = TuttePoint::new(x, y)?;
    let q_val = point.q();
    let p = point.p()?;
    let n = g.n() as f64;
    let n_vertices = g.n();

    // truncation depth: geometric tail 2 Q^-2 (|Q| n^(-delta/2))^r0 below
    // (epsilon/2) n^-(2+delta); the series ends at r = n anyway
    let target = 0.5 * epsilon * (-(2.0 + delta) * n.ln()).exp();
    let decay = q_val.abs() * (-0.5 * delta * n.ln()).exp();
    let mut r0 = 2usize;
    let mut tail_bound = 0.0f64;
    if q_val != 0.0 {
        loop {
            let b = 2.0 * q_val.powi(-2).abs() * decay.powi(r0 as i32);
            if b <= target || r0 >= n_vertices {
                tail_bound = if r0 >= n_vertices { 0.0 } else { b };
                break;
            }
            r0 += 1;
        }
    }
    let r0 = r0.min(n_vertices);

    // estimate s_r for r = 2..=r0 under the evaluation model p = 1 - 1/y
    let model = g.with_uniform_p(p)?;
    let per_eta = eta / (r0 - 1) as f64;
    let cfg = EstimatorConfig::default();
    let mut s_estimates = Vec::with_capacity(r0 - 1);
    for r in 2..=r0 {
        let est = estimators::estimate_rway_failure_with(
            &model,
            r,
            epsilon / 2.0,
            per_eta,
            parallel::derive_seed(seed, r as u64),
            &cfg,
        )?;
        s_estimates.push(est.value);
    }
    let series: f64 = s_estimates
        .iter()
        .enumerate()
        .map(|(i, &s)| s * q_pow(q_val, i))
        .sum();

    if x < 1.0 {
        // alternating series: the r >= 3 terms must not cancel s_2
        let s2 = s_estimates[0];
        let geo = q_val.abs() * (-0.5 * delta * n.ln()).exp();
        let r3_bound = q_val.abs() * (-1.5 * delta * n.ln()).exp() / (1.0 - geo);
        if r3_bound >= 0.25 * s2 {
            return Err(Error::Regime(format!(
                "alternating-series safety check failed: bound {r3_bound:.6e} on the r >= 3 \
                 terms is not below a quarter of s_2 = {s2:.6e}"
            )));
        }
    }

    let delta_normalized = (1.0 - q_val) * series;
    let t_prime = 1.0 - delta_normalized;
    let log_pref = log_prefactor(g, y);
    let (dt_sign, dt_log) = if delta_normalized == 0.0 {
        (0i8, f64::NEG_INFINITY)
    } else {
        (
            delta_normalized.signum() as i8,
            log_pref + delta_normalized.abs().ln(),
        )
    };
    Ok(TutteEstimate {
        t_prime,
        t_sign: t_prime.signum() as i8,
        log_t_magnitude: log_pref + t_prime.abs().ln(),
        delta_t_normalized: Some(delta_normalized),
        delta_t_sign: Some(dt_sign),
        log_delta_t_magnitude: Some(dt_log),
        error_bound: tail_bound,
        r0: Some(r0),
        delta,
        min_cut: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::oracle;

    #[test]
    fn triangle_at_two_two() {
        let g = generators::cycle(3, 0.5).unwrap();
        assert!((exact_tutte(&g, 2.0, 2.0).unwrap() - 8.0).abs() < 1e-9);
        assert!((exact_expectation_identity(&g, 2.0, 2.0).unwrap() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn trees_evaluate_to_x_power_m() {
        let g = generators::path(4, 0.5).unwrap();
        assert!((exact_tutte(&g, 2.0, 3.0).unwrap() - 8.0).abs() < 1e-9);
        assert!((exact_tutte(&g, 0.5, 2.0).unwrap() - 0.125).abs() < 1e-9);
        let star = generators::star(3, 0.5).unwrap();
        assert!((exact_tutte(&star, 2.0, 1.5).unwrap() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn triangle_identity_at_one_two() {
        // T' at x = 1 is the probability of staying connected at p = 1/2
        let g = generators::cycle(3, 0.5).unwrap();
        let t = exact_tutte(&g, 1.0, 2.0).unwrap();
        assert!((t - 4.0).abs() < 1e-9);
        let via_identity = exact_expectation_identity(&g, 1.0, 2.0).unwrap();
        assert!((via_identity - t).abs() < 1e-9);
        // prefactor 8, REL = 1/2
        let rel = 1.0 - oracle::exact_fail(&g).unwrap();
        assert!((t - 8.0 * rel).abs() < 1e-9);
    }

    #[test]
    fn identity_agreement_on_small_graphs() {
        let graphs = vec![
            generators::cycle(3, 0.5).unwrap(),
            generators::cycle(5, 0.5).unwrap(),
            generators::path(4, 0.5).unwrap(),
            generators::clique(4, 0.5).unwrap(),
            generators::bundled_cycle(3, 2, 0.5).unwrap(),
            generators::star(4, 0.5).unwrap(),
        ];
        for g in &graphs {
            for &(x, y) in &[(0.5, 2.0), (1.0, 2.0), (2.0, 2.0), (2.0, 3.0), (1.0, 1.5)] {
                let a = exact_tutte(g, x, y).unwrap();
                let b = exact_expectation_identity(g, x, y).unwrap();
                assert!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "n={} m={} ({x},{y}): {a} vs {b}",
                    g.n(),
                    g.m()
                );
            }
        }
    }

    #[test]
    fn series_form_matches_expectation() {
        let graphs = vec![
            generators::cycle(4, 0.5).unwrap(),
            generators::clique(4, 0.5).unwrap(),
            generators::bundled_cycle(3, 2, 0.5).unwrap(),
        ];
        for g in &graphs {
            for &(x, y) in &[(0.5, 2.0), (2.0, 2.0), (1.5, 3.0), (1.0, 2.0)] {
                let p = 1.0 / y;
                let model = g.with_uniform_p(p).unwrap();
                let tail = oracle::exact_partition_tail(&model).unwrap();
                let q_val = (x - 1.0) * (y - 1.0);
                let lhs = expectation_from_tail(&tail, q_val);
                let rhs = exact_expectation_identity(g, x, y).unwrap()
                    / (y.powi(g.m() as i32) / (y - 1.0).powi(g.n() as i32 - 1));
                assert!(
                    (lhs - rhs).abs() <= 1e-9,
                    "({x},{y}) series {lhs} direct {rhs}"
                );
            }
        }
    }

    #[test]
    fn two_to_the_m_at_two_two() {
        for g in [
            generators::cycle(4, 0.5).unwrap(),
            generators::clique(4, 0.5).unwrap(),
            generators::path(3, 0.5).unwrap(),
        ] {
            let t = exact_tutte(&g, 2.0, 2.0).unwrap();
            assert!((t - (2.0f64).powi(g.m() as i32)).abs() < 1e-9);
        }
    }

    #[test]
    fn leading_approximation_bound_contains_truth() {
        // bundled triangle with c = 6 > 3 ln 3 / ln 2
        let g = generators::bundled_cycle(3, 3, 0.5).unwrap();
        let approx = approx_tutte_leading(&g, 1.0, 2.0).unwrap();
        let exact_t_prime =
            exact_expectation_identity(&g, 1.0, 2.0).unwrap() / (2.0f64.powi(9) / 1.0);
        assert!(
            (exact_t_prime - 1.0).abs() <= approx.error_bound,
            "t' {exact_t_prime} bound {}",
            approx.error_bound
        );
        // nonzero Q inside the regime needs a bigger cut
        let g4 = generators::bundled_cycle(3, 4, 0.5).unwrap();
        let approx4 = approx_tutte_leading(&g4, 1.5, 2.0).unwrap();
        let exact4 = exact_expectation_identity(&g4, 1.5, 2.0).unwrap() / (2.0f64.powi(12) / 1.0);
        assert!((exact4 - 1.0).abs() <= approx4.error_bound);
    }

    #[test]
    fn leading_approximation_rejects_low_connectivity() {
        let g = generators::cycle(3, 0.5).unwrap();
        let err = approx_tutte_leading(&g, 2.0, 3.0).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("minimum cut"), "{msg}");
    }

    #[test]
    fn delta_t_at_x_one_is_disconnection_probability() {
        let g = generators::bundled_cycle(3, 4, 0.5).unwrap();
        let est = estimate_delta_t(&g, 1.0, 2.0, 0.1, 0.02, 5).unwrap();
        assert_eq!(est.r0, Some(2));
        let model = g.with_uniform_p(0.5).unwrap();
        let exact = oracle::exact_fail(&model).unwrap();
        let got = est.delta_t_normalized.unwrap();
        assert!(
            (got - exact).abs() <= 0.15 * exact,
            "delta {got} exact {exact}"
        );
    }

    #[test]
    fn delta_t_series_truncation_against_oracle() {
        // exact s_r feeds the same truncated series the estimator targets
        let g = generators::bundled_cycle(4, 4, 0.5).unwrap();
        let (x, y) = (1.4, 2.0);
        let q_val = (x - 1.0) * (y - 1.0);
        let model = g.with_uniform_p(0.5).unwrap();
        let tail = oracle::exact_partition_tail(&model).unwrap();
        let full: f64 = (2..tail.s.len())
            .map(|r| tail.s[r] * q_pow(q_val, r - 2))
            .sum();
        for r0 in 2..=4usize {
            let truncated: f64 = (2..=r0).map(|r| tail.s[r] * q_pow(q_val, r - 2)).sum();
            let n = g.n() as f64;
            let p: f64 = 0.5;
            let delta = -(g.min_cut(None).value) * p.ln() / n.ln() - 2.0;
            let dropped = (full - truncated).abs();
            let geo_bound =
                2.0 * q_val.powi(-2) * (q_val * (-0.5 * delta * n.ln()).exp()).powi(r0 as i32 + 1)
                    / (1.0 - q_val * (-0.5 * delta * n.ln()).exp());
            if r0 < 4 {
                assert!(
                    dropped <= geo_bound.max(1e-18),
                    "r0={r0} dropped {dropped} bound {geo_bound}"
                );
            } else {
                assert!(dropped < 1e-15);
            }
        }
    }

    #[test]
    fn delta_t_with_nonzero_q() {
        let g = generators::bundled_cycle(3, 3, 0.5).unwrap();
        let est = estimate_delta_t(&g, 1.3, 2.0, 0.2, 0.02, 9).unwrap();
        let q_val = 0.3 * 1.0;
        let model = g.with_uniform_p(0.5).unwrap();
        let tail = oracle::exact_partition_tail(&model).unwrap();
        let exact: f64 = (1.0 - q_val)
            * (2..tail.s.len())
                .map(|r| tail.s[r] * q_pow(q_val, r - 2))
                .sum::<f64>();
        let got = est.delta_t_normalized.unwrap();
        assert!(
            (got - exact).abs() <= 0.3 * exact + est.error_bound,
            "got {got} exact {exact}"
        );
    }

    #[test]
    fn budget_enforced() {
        let g = generators::bundled_cycle(5, 4, 0.5).unwrap();
        assert!(exact_tutte(&g, 2.0, 2.0).is_err());
    }
}
