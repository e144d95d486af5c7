//! Randomized enumeration of near-minimum cuts.
//!
//! Repeated random edge contraction (weighted by edge weight, uniform when
//! unweighted) down to a small base graph, followed by exhaustive
//! partitioning of the base, finds any particular cut of value at most
//! alpha times the minimum with probability at least n^(-2 alpha) per
//! trial. Enough independent trials drive the probability of missing any
//! such cut below a caller-chosen budget eta.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multigraph::{ContractionState, Digraph, EdgeId, Multigraph, WeightedView};
use crate::parallel;

/// Multiplier applied to the enumeration threshold so floating-point ties at
/// alpha * c are kept (and flagged) rather than dropped.
pub const DEFAULT_SLACK: f64 = 1.05;

const MAX_TRIALS: u64 = 100_000_000;
const MAX_BASE_PARTITIONS: u64 = 1 << 24;
const RELATIVE_TIE: f64 = 1e-12;

/// Canonical partition encoding. Two records describing the same vertex
/// partition are byte-identical.
///
/// Two-way: bitmask of the side not containing vertex 0 (so bit 0 is never
/// set). R-way: per-vertex block labels, blocks numbered by smallest
/// contained vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CutSignature {
    TwoWay(u64),
    RWay(Vec<u8>),
}

impl CutSignature {
    /// True when the edge (u, v) crosses the partition.
    pub fn crosses(&self, u: usize, v: usize) -> bool {
        match self {
            CutSignature::TwoWay(mask) => (mask >> u) & 1 != (mask >> v) & 1,
            CutSignature::RWay(labels) => labels[u] != labels[v],
        }
    }

    /// Block label of a vertex (side membership for two-way cuts).
    pub fn block_of(&self, v: usize) -> usize {
        match self {
            CutSignature::TwoWay(mask) => ((mask >> v) & 1) as usize,
            CutSignature::RWay(labels) => labels[v] as usize,
        }
    }
}

/// A cut: canonical partition signature, exact crossing edge set, and value
/// (edge count, or total weight when enumerating under a weighting).
/// `flagged` marks cuts that exceeded alpha * c but fell inside the
/// floating-point slack zone; consumers include them.
#[derive(Debug, Clone, PartialEq)]
pub struct CutRecord {
    pub signature: CutSignature,
    pub edge_ids: Vec<EdgeId>,
    pub value: f64,
    pub flagged: bool,
}

/// One directed cut obtained from an undirected cut of the underlying graph
/// of an Eulerian digraph: the arcs crossing in a single direction.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedCutRecord {
    /// Signature of the underlying undirected partition (vertex 0 on side A).
    pub signature: CutSignature,
    /// True for the A -> B direction, false for B -> A.
    pub forward: bool,
    pub arc_ids: Vec<usize>,
    pub value: f64,
    pub flagged: bool,
}

/// Trial schedule for one enumeration run.
#[derive(Debug, Clone)]
pub struct EnumerationPlan {
    pub alpha: f64,
    pub r: usize,
    /// Supervertex count the contraction stops at.
    pub base_size: usize,
    pub trials: u64,
    /// Bound on the number of alpha-minimum cuts: n^(2 alpha) for two-way,
    /// (rn)^(2 alpha (r-1)) for r-way.
    pub n_alpha: f64,
    pub eta: f64,
    /// True when the base is the whole graph, so a single exhaustive pass
    /// enumerates every cut with certainty.
    pub exhaustive: bool,
}

impl EnumerationPlan {
    pub fn two_way(n: usize, alpha: f64, eta: f64) -> Result<Self> {
        Self::new(n, 2, alpha, eta)
    }

    pub fn r_way(n: usize, r: usize, alpha: f64, eta: f64) -> Result<Self> {
        Self::new(n, r, alpha, eta)
    }

    fn new(n: usize, r: usize, alpha: f64, eta: f64) -> Result<Self> {
        if alpha < 1.0 {
            return Err(Error::InvalidInput(format!(
                "alpha must be >= 1, got {alpha}"
            )));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::InvalidInput(format!(
                "eta must be in (0, 1), got {eta}"
            )));
        }
        if r < 2 {
            return Err(Error::InvalidInput(format!("r must be >= 2, got {r}")));
        }
        let ln_count = if r == 2 {
            2.0 * alpha * (n as f64).ln()
        } else {
            2.0 * alpha * (r as f64 - 1.0) * ((r * n) as f64).ln()
        };
        let n_alpha = ln_count.exp();
        let base_size = (2.0 * alpha * (r as f64 - 1.0)).ceil() as usize;
        let base_size = base_size.clamp(r, n.max(r));
        let exhaustive = base_size >= n;
        let trials = if exhaustive {
            1
        } else {
            let t = n_alpha * (n_alpha / eta).ln();
            if !t.is_finite() || t > MAX_TRIALS as f64 {
                return Err(Error::Budget(format!(
                    "enumeration needs {t:.3e} contraction trials (alpha = {alpha}, n = {n}, r = {r}); \
                     exceeds the {MAX_TRIALS} trial budget"
                )));
            }
            (t.ceil() as u64).max(1)
        };
        Ok(Self {
            alpha,
            r,
            base_size,
            trials,
            n_alpha,
            eta,
            exhaustive,
        })
    }
}

/// Crossing edges of a partition, in edge-id order.
pub fn cut_edges_for_signature(g: &Multigraph, sig: &CutSignature) -> Vec<EdgeId> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| sig.crosses(e.u, e.v))
        .map(|(i, _)| i)
        .collect()
}

/// Value of a cut given per-edge weights (1 per edge when unweighted),
/// summed in edge-id order so repeated computations agree bit for bit.
pub fn signature_value(g: &Multigraph, weights: Option<&WeightedView>, sig: &CutSignature) -> f64 {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| sig.crosses(e.u, e.v))
        .map(|(i, _)| weights.map_or(1.0, |w| w.weights[i]))
        .sum()
}

/// All cuts of value at most alpha times the minimum cut, with probability
/// at least 1 - eta, deduplicated and sorted by value. Cuts in the slack
/// zone above alpha * c are included but flagged.
pub fn enumerate_alpha_min_cuts(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    alpha: f64,
    eta: f64,
    seed: u64,
) -> Result<Vec<CutRecord>> {
    let (records, _) = enumerate_two_way_detailed(g, weights, alpha, eta, seed, DEFAULT_SLACK)?;
    Ok(records)
}

/// Two-way enumeration returning the trial plan alongside the records.
pub fn enumerate_two_way_detailed(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    alpha: f64,
    eta: f64,
    seed: u64,
    slack: f64,
) -> Result<(Vec<CutRecord>, EnumerationPlan)> {
    if slack < 1.0 {
        return Err(Error::InvalidInput(format!(
            "slack must be >= 1, got {slack}"
        )));
    }
    if g.n() > 64 {
        return Err(Error::Budget(
            "two-way enumeration supports at most 64 vertices".into(),
        ));
    }
    let min_cut = g.min_cut(weights);
    if !min_cut.connected {
        return Err(Error::InvalidGraph(
            "cut enumeration needs a connected graph".into(),
        ));
    }
    let primed = primed_state(g, weights);
    let n_eff = primed.supervertices();
    if n_eff < 2 {
        // every cut contains a never-failing edge
        let plan = EnumerationPlan::two_way(2, alpha, eta)?;
        return Ok((Vec::new(), plan));
    }
    let plan = EnumerationPlan::two_way(n_eff, alpha, eta)?;
    let c = min_cut.value;
    let records = run_trials(
        g,
        weights,
        &primed,
        &plan,
        seed,
        Some(c * alpha * slack),
        slack,
    )?;
    Ok((finalize(records, c, alpha, slack), plan))
}

/// All r-way cuts of value at most alpha times the minimum r-way cut value,
/// with probability at least 1 - eta.
pub fn enumerate_alpha_min_rway_cuts(
    g: &Multigraph,
    r: usize,
    alpha: f64,
    eta: f64,
    seed: u64,
) -> Result<Vec<CutRecord>> {
    let (records, _) = enumerate_r_way_detailed(g, None, r, alpha, eta, seed, DEFAULT_SLACK)?;
    Ok(records)
}

pub fn enumerate_r_way_detailed(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    r: usize,
    alpha: f64,
    eta: f64,
    seed: u64,
    slack: f64,
) -> Result<(Vec<CutRecord>, EnumerationPlan)> {
    if slack < 1.0 {
        return Err(Error::InvalidInput(format!(
            "slack must be >= 1, got {slack}"
        )));
    }
    if r > g.n() {
        return Err(Error::InvalidInput(format!(
            "r = {r} exceeds the vertex count {}",
            g.n()
        )));
    }
    if g.n() > 255 {
        return Err(Error::Budget(
            "r-way enumeration supports at most 255 vertices".into(),
        ));
    }
    if !g.is_connected_full() {
        return Err(Error::InvalidGraph(
            "cut enumeration needs a connected graph".into(),
        ));
    }
    if r == 2 {
        return enumerate_two_way_detailed(g, weights, alpha, eta, seed, slack);
    }
    let primed = primed_state(g, weights);
    let n_eff = primed.supervertices();
    if n_eff < r {
        return Err(Error::InvalidGraph(format!(
            "never-failing edges leave only {n_eff} supervertices, fewer than r = {r}"
        )));
    }
    let plan = EnumerationPlan::r_way(n_eff, r, alpha, eta)?;
    // The minimum r-way cut value is not known in advance; collect first,
    // then threshold against the smallest value observed.
    let records = run_trials(g, weights, &primed, &plan, seed, None, slack)?;
    let c_r = records
        .values()
        .fold(f64::INFINITY, |acc, &(_, v)| acc.min(v));
    Ok((finalize(records, c_r, alpha, slack), plan))
}

/// Directed near-minimum cuts of an Eulerian digraph: enumerate the
/// near-minimum cuts of the underlying undirected graph and emit, per cut,
/// the two one-direction arc sets. In the uniform case each directed value
/// is half the undirected value.
pub fn enumerate_directed_eulerian_cuts(
    dg: &Digraph,
    alpha: f64,
    eta: f64,
    seed: u64,
) -> Result<Vec<DirectedCutRecord>> {
    dg.check_eulerian()?;
    if !dg.is_strongly_connected_full() {
        return Err(Error::InvalidGraph(
            "directed cut enumeration needs a strongly connected graph".into(),
        ));
    }
    let h = dg.underlying()?;
    let uniform = h.is_uniform_p();
    let view = (!uniform).then(|| h.weighted_view());
    let (undirected, _) =
        enumerate_two_way_detailed(&h, view.as_ref(), alpha, eta, seed, DEFAULT_SLACK)?;
    let mut out = Vec::with_capacity(2 * undirected.len());
    for rec in &undirected {
        for forward in [true, false] {
            let arc_ids: Vec<usize> = dg
                .arcs()
                .iter()
                .enumerate()
                .filter(|(_, a)| {
                    // crossing A -> B when forward, B -> A otherwise
                    let u_side = rec.signature.block_of(a.u);
                    let v_side = rec.signature.block_of(a.v);
                    if forward {
                        u_side == 0 && v_side == 1
                    } else {
                        u_side == 1 && v_side == 0
                    }
                })
                .map(|(i, _)| i)
                .collect();
            let value = if uniform {
                arc_ids.len() as f64
            } else {
                arc_ids.iter().map(|&i| -dg.arcs()[i].p_fail.ln()).sum()
            };
            out.push(DirectedCutRecord {
                signature: rec.signature.clone(),
                forward,
                arc_ids,
                value,
                flagged: rec.flagged,
            });
        }
    }
    out.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.signature.cmp(&b.signature))
            .then_with(|| b.forward.cmp(&a.forward))
    });
    Ok(out)
}

/// One contraction trial: contract to the plan's base size, then emit one
/// record per partition of the base graph (every two-way split, or every
/// partition into exactly r blocks). No threshold is applied.
pub fn single_contraction_trial(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    plan: &EnumerationPlan,
    rng: &mut ChaCha8Rng,
) -> Vec<CutRecord> {
    let primed = primed_state(g, weights);
    let mut found: Vec<(CutSignature, f64)> = Vec::new();
    contraction_trial(g, &primed, plan, None, rng, &mut |sig, value| {
        found.push((sig, value))
    });
    let mut seen = std::collections::HashSet::new();
    let mut records: Vec<CutRecord> = found
        .into_iter()
        .filter(|(sig, _)| seen.insert(sig.clone()))
        .map(|(sig, _)| CutRecord {
            edge_ids: cut_edges_for_signature(g, &sig),
            value: signature_value(g, weights, &sig),
            flagged: false,
            signature: sig,
        })
        .collect();
    records.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.signature.cmp(&b.signature))
    });
    records
}

/// Contract never-failing (infinite weight) edges up front; they cannot
/// appear in any cut with a finite failure probability.
fn primed_state(g: &Multigraph, weights: Option<&WeightedView>) -> ContractionState {
    let mut st = ContractionState::new(g, weights);
    if let Some(view) = weights {
        for (e, &w) in view.weights.iter().enumerate() {
            if w.is_infinite() {
                // may already be internal after an earlier merge
                let _ = st.contract(e);
            }
        }
    }
    st
}

fn run_trials(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    primed: &ContractionState,
    plan: &EnumerationPlan,
    seed: u64,
    pre_threshold: Option<f64>,
    slack: f64,
) -> Result<HashMap<CutSignature, (Vec<EdgeId>, f64)>> {
    let k = plan.base_size.min(primed.supervertices());
    if plan.r == 2 {
        let partitions = 1u64 << (k - 1);
        if partitions > MAX_BASE_PARTITIONS {
            return Err(Error::Budget(format!(
                "base graph with {k} supervertices has too many partitions"
            )));
        }
    }
    let pre = pre_threshold.map(|t| t * (1.0 + 1e-9) + 1e-300);
    const CHUNK: u64 = 128;
    let chunks = plan.trials.div_ceil(CHUNK);
    let chunk_results: Vec<Vec<(CutSignature, f64)>> = parallel::map_chunks(chunks, |c| {
        let mut rng = parallel::chunk_rng(seed, c);
        let trials_here = CHUNK.min(plan.trials - c * CHUNK);
        let mut local: Vec<(CutSignature, f64)> = Vec::new();
        let mut local_min = f64::INFINITY;
        for _ in 0..trials_here {
            contraction_trial(g, primed, plan, pre, &mut rng, &mut |sig, value| {
                local_min = local_min.min(value);
                local.push((sig, value));
            });
        }
        // within a chunk, drop records that can never pass the final
        // threshold given the minimum seen so far
        if pre.is_none() {
            let keep = local_min * plan.alpha * slack * (1.0 + 1e-9) + 1e-300;
            local.retain(|&(_, v)| v <= keep);
        }
        local
    });
    let mut dedup: HashMap<CutSignature, (Vec<EdgeId>, f64)> = HashMap::new();
    for chunk in chunk_results {
        for (sig, _) in chunk {
            dedup.entry(sig).or_insert_with_key(|s| {
                (
                    cut_edges_for_signature(g, s),
                    signature_value(g, weights, s),
                )
            });
        }
    }
    Ok(dedup)
}

/// Contract down to the plan's base size, then walk every base partition,
/// reporting (signature over original vertices, partition value).
fn contraction_trial(
    g: &Multigraph,
    primed: &ContractionState,
    plan: &EnumerationPlan,
    pre_threshold: Option<f64>,
    rng: &mut ChaCha8Rng,
    emit: &mut impl FnMut(CutSignature, f64),
) {
    let mut st = primed.clone();
    while st.supervertices() > plan.base_size {
        let edge_id = {
            let surv = st.surviving_weighted();
            debug_assert!(!surv.is_empty(), "connected graph ran out of edges");
            let total: f64 = surv.iter().map(|&(_, w)| w).sum();
            let idx = if total > 0.0 {
                let x = rng.random::<f64>() * total;
                let mut acc = 0.0;
                let mut chosen = surv.len() - 1;
                for (i, &(_, w)) in surv.iter().enumerate() {
                    acc += w;
                    if x < acc {
                        chosen = i;
                        break;
                    }
                }
                chosen
            } else {
                rng.random_range(0..surv.len())
            };
            surv[idx].0
        };
        st.contract(edge_id).expect("crossing edge");
    }
    let labels = st.canonical_labels(g.n());
    let k = st.supervertices();
    // aggregated weights between supervertex labels
    let mut mat = vec![0.0f64; k * k];
    for &(id, w) in st.surviving_weighted() {
        let a = labels[g.edges()[id].u] as usize;
        let b = labels[g.edges()[id].v] as usize;
        mat[a * k + b] += w;
        mat[b * k + a] += w;
    }
    if plan.r == 2 {
        for mask in 1u64..(1 << (k - 1)) {
            let side = |label: u8| label > 0 && (mask >> (label - 1)) & 1 == 1;
            let mut value = 0.0;
            for i in 0..k {
                if side(i as u8) {
                    continue;
                }
                for j in 0..k {
                    if side(j as u8) {
                        value += mat[i * k + j];
                    }
                }
            }
            if pre_threshold.is_some_and(|t| value > t) {
                continue;
            }
            let mut sig = 0u64;
            for (v, &label) in labels.iter().enumerate() {
                if side(label) {
                    sig |= 1 << v;
                }
            }
            emit(CutSignature::TwoWay(sig), value);
        }
    } else {
        for_each_partition_exact_r(k, plan.r, &mut |blocks| {
            let mut value = 0.0;
            for i in 0..k {
                for j in (i + 1)..k {
                    if blocks[i] != blocks[j] {
                        value += mat[i * k + j];
                    }
                }
            }
            if pre_threshold.is_some_and(|t| value > t) {
                return;
            }
            let sig: Vec<u8> = labels.iter().map(|&l| blocks[l as usize]).collect();
            emit(CutSignature::RWay(sig), value);
        });
    }
}

/// Restricted-growth enumeration of the partitions of k items into exactly
/// r nonempty blocks. Visits each partition once, in canonical label form.
fn for_each_partition_exact_r(k: usize, r: usize, f: &mut impl FnMut(&[u8])) {
    if r > k {
        return;
    }
    let mut blocks = vec![0u8; k];
    go(1, 1, k, r, &mut blocks, f);

    fn go(
        i: usize,
        used: usize,
        k: usize,
        r: usize,
        blocks: &mut Vec<u8>,
        f: &mut impl FnMut(&[u8]),
    ) {
        if i == k {
            if used == r {
                f(blocks);
            }
            return;
        }
        // must still be able to open enough new blocks
        let remaining = k - i;
        if used + remaining < r {
            return;
        }
        let cap = used.min(r - 1);
        for b in 0..=cap {
            blocks[i] = b as u8;
            let next_used = if b == used { used + 1 } else { used };
            go(i + 1, next_used, k, r, blocks, f);
        }
        blocks[i] = 0;
    }
}

fn finalize(
    dedup: HashMap<CutSignature, (Vec<EdgeId>, f64)>,
    c: f64,
    alpha: f64,
    slack: f64,
) -> Vec<CutRecord> {
    let keep = alpha * c * slack * (1.0 + RELATIVE_TIE) + 1e-300;
    let strict = alpha * c * (1.0 + RELATIVE_TIE) + 1e-300;
    let mut records: Vec<CutRecord> = dedup
        .into_iter()
        .filter(|&(_, (_, value))| value <= keep)
        .map(|(sig, (edge_ids, value))| CutRecord {
            signature: sig,
            edge_ids,
            value,
            flagged: value > strict,
        })
        .collect();
    records.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.signature.cmp(&b.signature))
    });
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn four_cycle_min_cuts() {
        let g = generators::cycle(4, 0.5).unwrap();
        let cuts = enumerate_alpha_min_cuts(&g, None, 1.0, 0.01, 7).unwrap();
        assert_eq!(cuts.len(), 6);
        assert!(cuts.iter().all(|c| c.value == 2.0 && !c.flagged));
    }

    #[test]
    fn k4_min_cuts_are_singletons() {
        let g = generators::clique(4, 0.5).unwrap();
        let cuts = enumerate_alpha_min_cuts(&g, None, 1.0, 0.01, 11).unwrap();
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(|c| c.value == 3.0));
        // each signature isolates one vertex
        for cut in &cuts {
            let CutSignature::TwoWay(mask) = &cut.signature else {
                panic!("two-way expected")
            };
            assert!(mask.count_ones() == 1 || mask.count_ones() == 3);
        }
    }

    #[test]
    fn cycles_have_n_choose_2_min_cuts() {
        for n in 4..=8 {
            let g = generators::cycle(n, 0.5).unwrap();
            let cuts = enumerate_alpha_min_cuts(&g, None, 1.0, 0.01, 3).unwrap();
            assert_eq!(cuts.len(), n * (n - 1) / 2, "n = {n}");
        }
    }

    #[test]
    fn path_min_cuts() {
        let g = generators::path(3, 0.5).unwrap();
        let cuts = enumerate_alpha_min_cuts(&g, None, 1.0, 0.01, 5).unwrap();
        assert_eq!(cuts.len(), 2);
        assert!(cuts.iter().all(|c| c.value == 1.0));
    }

    #[test]
    fn star_leaf_cuts() {
        let g = generators::star(3, 0.5).unwrap();
        let cuts = enumerate_alpha_min_rway_cuts(&g, 2, 1.0, 0.01, 5).unwrap();
        assert_eq!(cuts.len(), 3);
        assert!(cuts.iter().all(|c| c.value == 1.0 && c.edge_ids.len() == 1));
    }

    #[test]
    fn triangle_three_way_cut() {
        let g = generators::cycle(3, 0.5).unwrap();
        let cuts = enumerate_alpha_min_rway_cuts(&g, 3, 1.0, 0.01, 5).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].value, 3.0);
        assert_eq!(cuts[0].edge_ids, vec![0, 1, 2]);
    }

    #[test]
    fn path_three_way_cut() {
        let g = generators::path(3, 0.5).unwrap();
        let cuts = enumerate_alpha_min_rway_cuts(&g, 3, 1.0, 0.01, 5).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].value, 2.0);
    }

    #[test]
    fn r_larger_than_n_rejected() {
        let g = generators::path(2, 0.5).unwrap();
        assert!(enumerate_alpha_min_rway_cuts(&g, 3, 1.0, 0.01, 5).is_err());
    }

    #[test]
    fn weighted_triangle_enumeration() {
        let g = Multigraph::build(3, &[(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.3)]).unwrap();
        let view = g.weighted_view();
        let cuts = enumerate_alpha_min_cuts(&g, Some(&view), 1.0, 0.01, 9).unwrap();
        // only the cut isolating vertex 2 is 1-minimum
        assert_eq!(cuts.iter().filter(|c| !c.flagged).count(), 1);
        let min = &cuts[0];
        assert_eq!(min.edge_ids, vec![1, 2]);
        let expected = (1.0f64 / 0.2).ln() + (1.0f64 / 0.3).ln();
        assert!((min.value - expected).abs() < 1e-12);
    }

    #[test]
    fn never_failing_edges_are_not_cut() {
        let g = Multigraph::build(3, &[(0, 1, 0.0), (1, 2, 0.5), (0, 2, 0.5)]).unwrap();
        let view = g.weighted_view();
        let cuts = enumerate_alpha_min_cuts(&g, Some(&view), 2.0, 0.01, 9).unwrap();
        for cut in &cuts {
            assert!(!cut.edge_ids.contains(&0));
        }
    }

    #[test]
    fn coverage_over_many_trials() {
        // ten thousand seeded trials at alpha = 1 observe all six minimum
        // cuts of the four-cycle
        let g = generators::cycle(4, 0.5).unwrap();
        let plan = EnumerationPlan::two_way(4, 1.0, 0.01).unwrap();
        let mut rng = parallel::chunk_rng(123, 0);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..10_000 {
            for rec in single_contraction_trial(&g, None, &plan, &mut rng) {
                if rec.value == 2.0 {
                    seen.insert(rec.signature.clone());
                }
            }
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn degenerate_plan_enumerates_everything() {
        let g = generators::cycle(4, 0.5).unwrap();
        let plan = EnumerationPlan {
            alpha: 1.0,
            r: 2,
            base_size: 4,
            trials: 1,
            n_alpha: 16.0,
            eta: 0.01,
            exhaustive: true,
        };
        let mut rng = parallel::chunk_rng(1, 0);
        let records = single_contraction_trial(&g, None, &plan, &mut rng);
        assert_eq!(records.len(), 7); // all 2^(4-1) - 1 partitions
    }

    #[test]
    fn two_vertex_base_yields_single_cut() {
        let g = generators::cycle(3, 0.5).unwrap();
        let plan = EnumerationPlan::two_way(3, 1.0, 0.01).unwrap();
        assert_eq!(plan.base_size, 2);
        let mut rng = parallel::chunk_rng(2, 0);
        let records = single_contraction_trial(&g, None, &plan, &mut rng);
        assert_eq!(records.len(), 1);
    }

    #[test]
    fn plan_trial_count_formula() {
        let plan = EnumerationPlan::two_way(8, 1.5, 0.01).unwrap();
        assert!(!plan.exhaustive);
        let n_alpha = (8f64).powf(3.0);
        let expected = (n_alpha * (n_alpha / 0.01).ln()).ceil() as u64;
        assert_eq!(plan.trials, expected);
        assert!((plan.n_alpha - n_alpha).abs() < 1e-6);
    }

    #[test]
    fn determinism_same_seed() {
        let g = generators::cycle(6, 0.5).unwrap();
        let a = enumerate_alpha_min_cuts(&g, None, 1.5, 0.01, 42).unwrap();
        let b = enumerate_alpha_min_cuts(&g, None, 1.5, 0.01, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn soundness_edges_match_signature() {
        let g = generators::clique(4, 0.5).unwrap();
        let cuts = enumerate_alpha_min_cuts(&g, None, 1.5, 0.01, 13).unwrap();
        let min = cuts.iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
        for cut in &cuts {
            assert_eq!(cut.edge_ids, cut_edges_for_signature(&g, &cut.signature));
            if !cut.flagged {
                assert!(cut.value <= 1.5 * min + 1e-9);
            }
        }
    }

    #[test]
    fn directed_three_cycle() {
        let dg = Digraph::build(3, &[(0, 1, 0.1), (1, 2, 0.1), (2, 0, 0.1)]).unwrap();
        let cuts = enumerate_directed_eulerian_cuts(&dg, 1.0, 0.01, 3).unwrap();
        // 3 undirected minimum cuts, each giving 2 directed cuts of value 1
        assert_eq!(cuts.len(), 6);
        assert!(cuts.iter().all(|c| c.value == 1.0 && c.arc_ids.len() == 1));
    }

    #[test]
    fn directed_two_cycle() {
        let dg = Digraph::build(2, &[(0, 1, 0.2), (1, 0, 0.2)]).unwrap();
        let cuts = enumerate_directed_eulerian_cuts(&dg, 1.0, 0.01, 3).unwrap();
        assert_eq!(cuts.len(), 2);
        assert!(cuts.iter().all(|c| c.arc_ids.len() == 1));
    }

    #[test]
    fn non_eulerian_rejected() {
        let dg = Digraph::build(2, &[(0, 1, 0.2)]).unwrap();
        assert!(enumerate_directed_eulerian_cuts(&dg, 1.0, 0.01, 3).is_err());
    }

    #[test]
    fn disconnected_rejected() {
        let g = Multigraph::uniform(4, &[(0, 1), (2, 3)], 0.5).unwrap();
        assert!(enumerate_alpha_min_cuts(&g, None, 1.0, 0.01, 3).is_err());
    }
}
