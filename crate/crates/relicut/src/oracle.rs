//! Brute-force reference implementations. Deliberately naive: exhaustive
//! enumeration over edge subsets, partitions, or orientations, guarded by
//! explicit budgets. Used by tests as ground truth and exposed through the
//! CLI `exact` subcommand.

use crate::connectivity::{self, UnionFind};
use crate::cut_enum::{CutRecord, CutSignature};
use crate::error::{Error, Result};
use crate::multigraph::{Digraph, Multigraph, WeightedView};

/// Enumeration budgets enforced before any exhaustive loop starts.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_edges: usize,
    pub max_vertices_for_partitions: usize,
    pub max_orientations: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_edges: 20,
            max_vertices_for_partitions: 10,
            max_orientations: 16,
        }
    }
}

const R_WAY_VERTEX_CAP: usize = 8;

fn check_edges(m: usize, budget: &OracleBudget) -> Result<()> {
    if m > budget.max_edges {
        return Err(Error::Budget(format!(
            "{m} edges exceeds the {}-edge oracle budget",
            budget.max_edges
        )));
    }
    Ok(())
}

/// Sum of subset probabilities for which the surviving subgraph fails the
/// given predicate (predicate receives the surviving edge endpoints).
fn subset_failure_probability(
    g: &Multigraph,
    budget: &OracleBudget,
    mut fails: impl FnMut(&[(usize, usize)]) -> bool,
) -> Result<f64> {
    check_edges(g.m(), budget)?;
    let m = g.m();
    let mut total = 0.0f64;
    let mut survivors: Vec<(usize, usize)> = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        let mut prob = 1.0f64;
        survivors.clear();
        for (i, e) in g.edges().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prob *= e.p_fail;
            } else {
                prob *= 1.0 - e.p_fail;
                survivors.push((e.u, e.v));
            }
        }
        if prob > 0.0 && fails(&survivors) {
            total += prob;
        }
    }
    Ok(total)
}

/// Exact probability that the graph disconnects.
pub fn exact_fail(g: &Multigraph) -> Result<f64> {
    exact_fail_with(g, &OracleBudget::default())
}

pub fn exact_fail_with(g: &Multigraph, budget: &OracleBudget) -> Result<f64> {
    let n = g.n();
    subset_failure_probability(g, budget, |survivors| {
        !connectivity::is_connected(n, survivors.iter().copied())
    })
}

/// Exact probability that the surviving graph is not k-edge-connected.
pub fn exact_kconn_fail(g: &Multigraph, k: usize) -> Result<f64> {
    let n = g.n();
    subset_failure_probability(g, &OracleBudget::default(), |survivors| {
        !connectivity::is_k_edge_connected(n, survivors, k)
    })
}

/// Exact probability that some pair of terminals becomes disconnected.
pub fn exact_multiterminal_fail(g: &Multigraph, terminals: &[usize]) -> Result<f64> {
    let n = g.n();
    if terminals.iter().any(|&t| t >= n) {
        return Err(Error::InvalidInput("terminal out of range".into()));
    }
    subset_failure_probability(g, &OracleBudget::default(), |survivors| {
        !connectivity::terminals_connected(n, survivors.iter().copied(), terminals)
    })
}

/// Exact probability that the digraph loses strong connectivity.
pub fn exact_strong_fail(dg: &Digraph) -> Result<f64> {
    let budget = OracleBudget::default();
    check_edges(dg.m(), &budget)?;
    let m = dg.m();
    let n = dg.n();
    let mut total = 0.0f64;
    let mut survivors: Vec<(usize, usize)> = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        let mut prob = 1.0f64;
        survivors.clear();
        for (i, a) in dg.arcs().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prob *= a.p_fail;
            } else {
                prob *= 1.0 - a.p_fail;
                survivors.push((a.u, a.v));
            }
        }
        if prob > 0.0 && !connectivity::is_strongly_connected(n, &survivors) {
            total += prob;
        }
    }
    Ok(total)
}

/// Exact probability that a uniformly random orientation of the graph is
/// not strongly connected.
pub fn exact_orientation_fail(g: &Multigraph) -> Result<f64> {
    let budget = OracleBudget::default();
    if g.m() > budget.max_orientations {
        return Err(Error::Budget(format!(
            "{} edges exceeds the {}-edge orientation budget",
            g.m(),
            budget.max_orientations
        )));
    }
    let m = g.m();
    let n = g.n();
    let mut bad = 0u64;
    let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        arcs.clear();
        for (i, e) in g.edges().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                arcs.push((e.u, e.v));
            } else {
                arcs.push((e.v, e.u));
            }
        }
        if !connectivity::is_strongly_connected(n, &arcs) {
            bad += 1;
        }
    }
    Ok(bad as f64 / (1u64 << m) as f64)
}

/// Probabilities of partitioning into r or more components (s) and into
/// exactly r components (p), indexed by r, for r = 0..=n.
#[derive(Debug, Clone)]
pub struct PartitionTail {
    pub s: Vec<f64>,
    pub p: Vec<f64>,
}

impl PartitionTail {
    pub fn s_r(&self, r: usize) -> f64 {
        self.s.get(r).copied().unwrap_or(0.0)
    }

    pub fn p_r(&self, r: usize) -> f64 {
        self.p.get(r).copied().unwrap_or(0.0)
    }
}

/// Exact component-count distribution under the graph's edge failure
/// probabilities.
pub fn exact_partition_tail(g: &Multigraph) -> Result<PartitionTail> {
    let budget = OracleBudget::default();
    check_edges(g.m(), &budget)?;
    let n = g.n();
    let m = g.m();
    let mut p = vec![0.0f64; n + 1];
    let mut uf = UnionFind::new(n);
    for mask in 0u32..(1u32 << m) {
        let mut prob = 1.0f64;
        uf.reset();
        for (i, e) in g.edges().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prob *= e.p_fail;
            } else {
                prob *= 1.0 - e.p_fail;
                uf.union(e.u, e.v);
            }
        }
        p[uf.components()] += prob;
    }
    let mut s = vec![0.0f64; n + 2];
    for r in (0..=n).rev() {
        s[r] = s[r + 1] + p[r];
    }
    s.truncate(n + 1);
    Ok(PartitionTail { s, p })
}

/// All cuts of value at most alpha times the minimum, by exhaustive
/// partition enumeration, canonicalized identically to the randomized
/// enumerator.
pub fn exact_cut_list(g: &Multigraph, alpha: f64) -> Result<Vec<CutRecord>> {
    exact_cut_list_weighted(g, None, alpha)
}

pub fn exact_cut_list_weighted(
    g: &Multigraph,
    weights: Option<&WeightedView>,
    alpha: f64,
) -> Result<Vec<CutRecord>> {
    let budget = OracleBudget::default();
    let n = g.n();
    if n > budget.max_vertices_for_partitions {
        return Err(Error::Budget(format!(
            "{n} vertices exceeds the {}-vertex partition budget",
            budget.max_vertices_for_partitions
        )));
    }
    if !g.is_connected_full() {
        return Err(Error::InvalidGraph(
            "cut listing needs a connected graph".into(),
        ));
    }
    let weight = |e: usize| weights.map_or(1.0, |w| w.weights[e]);
    let mut all: Vec<(u64, f64)> = Vec::new();
    for mask in 1u64..(1 << (n - 1)) {
        let sig = mask << 1;
        let mut value = 0.0f64;
        for (i, e) in g.edges().iter().enumerate() {
            if (sig >> e.u) & 1 != (sig >> e.v) & 1 {
                value += weight(i);
            }
        }
        all.push((sig, value));
    }
    let c = all.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let mut records: Vec<CutRecord> = all
        .into_iter()
        .filter(|&(_, v)| v <= alpha * c * (1.0 + 1e-12))
        .map(|(sig, value)| {
            let signature = CutSignature::TwoWay(sig);
            CutRecord {
                edge_ids: crate::cut_enum::cut_edges_for_signature(g, &signature),
                signature,
                value,
                flagged: false,
            }
        })
        .collect();
    records.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.signature.cmp(&b.signature))
    });
    Ok(records)
}

/// All r-way cuts of value at most alpha times the minimum r-way cut value.
pub fn exact_rway_cut_list(g: &Multigraph, r: usize, alpha: f64) -> Result<Vec<CutRecord>> {
    let n = g.n();
    if n > R_WAY_VERTEX_CAP {
        return Err(Error::Budget(format!(
            "{n} vertices exceeds the {R_WAY_VERTEX_CAP}-vertex r-way budget"
        )));
    }
    if r < 2 || r > n {
        return Err(Error::InvalidInput(format!("r = {r} must be in [2, {n}]")));
    }
    if !g.is_connected_full() {
        return Err(Error::InvalidGraph(
            "cut listing needs a connected graph".into(),
        ));
    }
    let mut all: Vec<(Vec<u8>, f64)> = Vec::new();
    for_each_partition(n, r, &mut |labels| {
        let mut value = 0.0f64;
        for e in g.edges() {
            if labels[e.u] != labels[e.v] {
                value += 1.0;
            }
        }
        all.push((labels.to_vec(), value));
    });
    let c = all.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
    let mut records: Vec<CutRecord> = all
        .into_iter()
        .filter(|&(_, v)| v <= alpha * c * (1.0 + 1e-12))
        .map(|(labels, value)| {
            let signature = if r == 2 {
                let mut mask = 0u64;
                for (v, &l) in labels.iter().enumerate() {
                    if l == 1 {
                        mask |= 1 << v;
                    }
                }
                CutSignature::TwoWay(mask)
            } else {
                CutSignature::RWay(labels)
            };
            CutRecord {
                edge_ids: crate::cut_enum::cut_edges_for_signature(g, &signature),
                signature,
                value,
                flagged: false,
            }
        })
        .collect();
    records.sort_by(|a, b| {
        a.value
            .partial_cmp(&b.value)
            .unwrap()
            .then_with(|| a.signature.cmp(&b.signature))
    });
    Ok(records)
}

/// Canonical enumeration of partitions of 0..n into exactly r blocks.
fn for_each_partition(n: usize, r: usize, f: &mut impl FnMut(&[u8])) {
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
            let next = if b == used { used + 1 } else { used };
            go(i + 1, next, n, r, labels, f);
        }
        labels[i] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn triangle_fail_probabilities() {
        let g = generators::cycle(3, 0.5).unwrap();
        assert!((exact_fail(&g).unwrap() - 0.5).abs() < 1e-12);

        let varying = Multigraph::build(3, &[(0, 1, 0.1), (1, 2, 0.2), (0, 2, 0.3)]).unwrap();
        assert!((exact_fail(&varying).unwrap() - 0.098).abs() < 1e-12);
    }

    #[test]
    fn four_cycle_fail() {
        let g = generators::cycle(4, 0.1).unwrap();
        let expected = 1.0 - 0.9f64.powi(4) - 4.0 * 0.1 * 0.9f64.powi(3);
        assert!((exact_fail(&g).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 0.0523).abs() < 1e-4);
    }

    #[test]
    fn kconn_fail_examples() {
        let c4 = generators::cycle(4, 0.1).unwrap();
        let expected = 1.0 - 0.9f64.powi(4);
        assert!((exact_kconn_fail(&c4, 2).unwrap() - expected).abs() < 1e-12);
        // k = 1 is plain connectivity
        let f1 = exact_kconn_fail(&c4, 1).unwrap();
        assert!((f1 - exact_fail(&c4).unwrap()).abs() < 1e-15);
        // a path is never 2-edge-connected
        let p3 = generators::path(3, 0.1).unwrap();
        assert_eq!(exact_kconn_fail(&p3, 2).unwrap(), 1.0);
    }

    #[test]
    fn multiterminal_path() {
        let g = generators::path(3, 0.1).unwrap();
        let f = exact_multiterminal_fail(&g, &[0, 2]).unwrap();
        assert!((f - 0.19).abs() < 1e-12);
        // all-vertex terminal set coincides with all-terminal failure
        let tri = generators::cycle(3, 0.5).unwrap();
        let all = exact_multiterminal_fail(&tri, &[0, 1, 2]).unwrap();
        assert!((all - 0.5).abs() < 1e-12);
    }

    #[test]
    fn strong_fail_examples() {
        let cyc = Digraph::build(3, &[(0, 1, 0.1), (1, 2, 0.1), (2, 0, 0.1)]).unwrap();
        assert!((exact_strong_fail(&cyc).unwrap() - 0.271).abs() < 1e-12);
        let two = Digraph::build(2, &[(0, 1, 0.2), (1, 0, 0.2)]).unwrap();
        assert!((exact_strong_fail(&two).unwrap() - 0.36).abs() < 1e-12);
    }

    #[test]
    fn orientation_examples() {
        let tri = generators::cycle(3, 0.5).unwrap();
        assert_eq!(exact_orientation_fail(&tri).unwrap(), 0.75);
        let single = generators::path(2, 0.5).unwrap();
        assert_eq!(exact_orientation_fail(&single).unwrap(), 1.0);
        let c4 = generators::cycle(4, 0.5).unwrap();
        assert_eq!(exact_orientation_fail(&c4).unwrap(), 0.875);
    }

    #[test]
    fn partition_tail_triangle() {
        let g = generators::cycle(3, 0.5).unwrap();
        let tail = exact_partition_tail(&g).unwrap();
        assert!((tail.s_r(2) - 0.5).abs() < 1e-12);
        assert!((tail.s_r(3) - 0.125).abs() < 1e-12);
        assert!((tail.s_r(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_tail_small_tree() {
        let g = generators::path(3, 0.1).unwrap();
        let tail = exact_partition_tail(&g).unwrap();
        assert!((tail.s_r(2) - 0.19).abs() < 1e-12);
        assert!((tail.s_r(3) - 0.01).abs() < 1e-12);
    }

    #[test]
    fn partition_tail_zero_failure() {
        let g = generators::cycle(4, 0.0).unwrap();
        let tail = exact_partition_tail(&g).unwrap();
        for r in 2..=4 {
            assert_eq!(tail.s_r(r), 0.0);
        }
    }

    #[test]
    fn tail_invariants() {
        let g = generators::clique(4, 0.3).unwrap();
        let tail = exact_partition_tail(&g).unwrap();
        // s nonincreasing, p sums to one, s_2 = FAIL
        for r in 1..tail.s.len() - 1 {
            assert!(tail.s[r] + 1e-15 >= tail.s[r + 1]);
        }
        let total: f64 = tail.p.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert!((tail.s_r(2) - exact_fail(&g).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cut_lists() {
        let c4 = generators::cycle(4, 0.5).unwrap();
        assert_eq!(exact_cut_list(&c4, 1.0).unwrap().len(), 6);

        let k4 = generators::clique(4, 0.5).unwrap();
        let list = exact_cut_list(&k4, 4.0 / 3.0).unwrap();
        assert_eq!(list.len(), 7);
        assert_eq!(list.iter().filter(|c| c.value == 3.0).count(), 4);
        assert_eq!(list.iter().filter(|c| c.value == 4.0).count(), 3);

        let p3 = generators::path(3, 0.5).unwrap();
        assert_eq!(exact_cut_list(&p3, 1.0).unwrap().len(), 2);
    }

    #[test]
    fn rway_cut_lists() {
        let tri = generators::cycle(3, 0.5).unwrap();
        let list = exact_rway_cut_list(&tri, 3, 1.0).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].value, 3.0);
    }
}
