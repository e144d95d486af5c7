//! Undirected multigraphs with per-edge failure probabilities, plus the
//! contraction machinery and the exact global minimum cut used for regime
//! selection.

use crate::connectivity::{self, UnionFind};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// One edge of a multigraph. Parallel edges are distinct entries; self-loops
/// are rejected at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub p_fail: f64,
}

/// Undirected multigraph, immutable after construction.
#[derive(Debug, Clone)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    /// ln(p_fail) per edge, -inf for p_fail = 0. Kept alongside the linear
    /// value so products over many edges can stay in log space.
    log_p: Vec<f64>,
}

impl Multigraph {
    pub fn build(n: usize, edge_list: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "vertex count must be at least 1".into(),
            ));
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut log_p = Vec::with_capacity(edge_list.len());
        for (idx, &(u, v, p)) in edge_list.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx}: endpoint ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx}: self-loop at vertex {u}"
                )));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidGraph(format!(
                    "edge {idx}: failure probability {p} outside [0, 1]"
                )));
            }
            edges.push(Edge { u, v, p_fail: p });
            log_p.push(p.ln());
        }
        Ok(Self { n, edges, log_p })
    }

    /// All edges share one failure probability.
    pub fn uniform(n: usize, pairs: &[(VertexId, VertexId)], p: f64) -> Result<Self> {
        let list: Vec<_> = pairs.iter().map(|&(u, v)| (u, v, p)).collect();
        Self::build(n, &list)
    }

    /// Same topology, every failure probability replaced by `p`.
    pub fn with_uniform_p(&self, p: f64) -> Result<Self> {
        let list: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, p)).collect();
        Self::build(self.n, &list)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn log_p(&self, e: EdgeId) -> f64 {
        self.log_p[e]
    }

    pub fn is_uniform_p(&self) -> bool {
        match self.edges.first() {
            None => true,
            Some(first) => self.edges.iter().all(|e| e.p_fail == first.p_fail),
        }
    }

    pub fn endpoint_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|e| (e.u, e.v))
    }

    pub fn is_connected_full(&self) -> bool {
        connectivity::is_connected(self.n, self.endpoint_pairs())
    }

    /// Connectivity of the subgraph keeping only the listed edges. A
    /// one-vertex graph is connected.
    pub fn is_connected(&self, surviving: &[EdgeId]) -> bool {
        connectivity::is_connected(
            self.n,
            surviving
                .iter()
                .map(|&e| (self.edges[e].u, self.edges[e].v)),
        )
    }

    /// Log-probability weighting: w_e = ln(1/p_e), infinite for edges that
    /// never fail. A cut's failure probability is exp(-sum of its weights).
    pub fn weighted_view(&self) -> WeightedView {
        WeightedView {
            weights: self.log_p.iter().map(|&lp| -lp).collect(),
        }
    }

    /// Exact deterministic global minimum cut (edge count, or total weight
    /// under the given view). Disconnected graphs report value 0 with the
    /// `connected` flag cleared; a graph with no finite cut (every cut
    /// contains a never-failing edge) reports infinity.
    pub fn min_cut(&self, weights: Option<&WeightedView>) -> MinCut {
        if self.n == 1 {
            return MinCut {
                value: f64::INFINITY,
                connected: true,
                side: Vec::new(),
            };
        }
        if !self.is_connected_full() {
            let side = smallest_component(self.n, &self.edges);
            return MinCut {
                value: 0.0,
                connected: false,
                side,
            };
        }
        // Merge endpoints of infinite-weight edges first; Stoer-Wagner then
        // runs on finite weights only.
        let mut uf = UnionFind::new(self.n);
        if let Some(view) = weights {
            for (e, &w) in view.weights.iter().enumerate() {
                if w.is_infinite() {
                    uf.union(self.edges[e].u, self.edges[e].v);
                }
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let r = uf.find(v);
            if label[r] == usize::MAX {
                label[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[label[r]].push(v);
        }
        let k = groups.len();
        if k == 1 {
            return MinCut {
                value: f64::INFINITY,
                connected: true,
                side: Vec::new(),
            };
        }
        let mut mat = vec![0.0f64; k * k];
        for (e, edge) in self.edges.iter().enumerate() {
            let a = label[uf.find(edge.u)];
            let b = label[uf.find(edge.v)];
            if a == b {
                continue;
            }
            let w = weights.map_or(1.0, |view| view.weights[e]);
            mat[a * k + b] += w;
            mat[b * k + a] += w;
        }
        let (value, side) = stoer_wagner(k, mat, groups);
        MinCut {
            value,
            connected: true,
            side,
        }
    }
}

/// Per-edge weights in nats for near-minimum-cut enumeration under varying
/// failure probabilities.
#[derive(Debug, Clone)]
pub struct WeightedView {
    pub weights: Vec<f64>,
}

/// Result of an exact global minimum cut computation. `side` holds the
/// vertices of one shore of a minimum cut (empty when no finite cut exists).
#[derive(Debug, Clone)]
pub struct MinCut {
    pub value: f64,
    pub connected: bool,
    pub side: Vec<VertexId>,
}

impl MinCut {
    /// Ids of the edges crossing the recorded cut side.
    pub fn crossing_edges(&self, g: &Multigraph) -> Vec<EdgeId> {
        let mut in_side = vec![false; g.n()];
        for &v in &self.side {
            in_side[v] = true;
        }
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| in_side[e.u] != in_side[e.v])
            .map(|(i, _)| i)
            .collect()
    }
}

fn smallest_component(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for e in edges {
        uf.union(e.u, e.v);
    }
    let mut sizes = std::collections::HashMap::new();
    for v in 0..n {
        *sizes.entry(uf.find(v)).or_insert(0usize) += 1;
    }
    let (&root, _) = sizes.iter().min_by_key(|&(&r, &s)| (s, r)).expect("n >= 1");
    (0..n).filter(|&v| uf.find(v) == root).collect()
}

/// Stoer-Wagner minimum cut on a dense weight matrix. `groups[i]` lists the
/// original vertices merged into supervertex i; the returned side is in
/// original vertex ids.
fn stoer_wagner(k: usize, mut w: Vec<f64>, mut groups: Vec<Vec<usize>>) -> (f64, Vec<usize>) {
    debug_assert!(k >= 2);
    let mut active: Vec<usize> = (0..k).collect();
    let mut best_value = f64::INFINITY;
    let mut best_side: Vec<usize> = Vec::new();
    let mut key = vec![0.0f64; k];
    let mut in_order = vec![false; k];
    while active.len() > 1 {
        for &v in &active {
            key[v] = 0.0;
            in_order[v] = false;
        }
        let start = active[0];
        in_order[start] = true;
        for &v in &active {
            if v != start {
                key[v] = w[start * k + v];
            }
        }
        let mut prev = start;
        let mut last = start;
        for _ in 1..active.len() {
            let mut pick = usize::MAX;
            for &v in &active {
                if !in_order[v] && (pick == usize::MAX || key[v] > key[pick]) {
                    pick = v;
                }
            }
            in_order[pick] = true;
            prev = last;
            last = pick;
            for &v in &active {
                if !in_order[v] {
                    key[v] += w[pick * k + v];
                }
            }
        }
        // key[last] is the value of the cut isolating the `last` supervertex
        if key[last] < best_value {
            best_value = key[last];
            best_side = groups[last].clone();
        }
        // merge last into prev
        for &v in &active {
            if v != prev && v != last {
                let add = w[last * k + v];
                w[prev * k + v] += add;
                w[v * k + prev] = w[prev * k + v];
            }
        }
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        active.retain(|&v| v != last);
    }
    best_side.sort_unstable();
    (best_value, best_side)
}

/// A running edge contraction: a union-find labeling of original vertices
/// into supervertices and the surviving edges with back-references to the
/// original edge ids.
#[derive(Debug, Clone)]
pub struct ContractionState {
    uf: UnionFind,
    supervertices: usize,
    /// (original edge id, weight); self-loops are dropped as they form.
    surviving: Vec<(EdgeId, f64)>,
    endpoints: Vec<(VertexId, VertexId)>,
}

impl ContractionState {
    /// Start from the full graph. Weights default to 1 per edge.
    pub fn new(g: &Multigraph, weights: Option<&WeightedView>) -> Self {
        let surviving = (0..g.m())
            .map(|e| (e, weights.map_or(1.0, |view| view.weights[e])))
            .collect();
        Self {
            uf: UnionFind::new(g.n()),
            supervertices: g.n(),
            surviving,
            endpoints: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }

    pub fn supervertices(&self) -> usize {
        self.supervertices
    }

    /// Surviving original edge ids (edges joining distinct supervertices).
    pub fn surviving_edges(&self) -> Vec<EdgeId> {
        self.surviving.iter().map(|&(e, _)| e).collect()
    }

    pub fn surviving_weighted(&self) -> &[(EdgeId, f64)] {
        &self.surviving
    }

    /// Supervertex root of an original vertex.
    pub fn root_of(&mut self, v: VertexId) -> usize {
        self.uf.find(v)
    }

    /// Merge the endpoints of the given original edge and discard the
    /// self-loops this creates. Fails if the edge is already internal to a
    /// supervertex.
    pub fn contract(&mut self, e: EdgeId) -> Result<()> {
        let (u, v) = self.endpoints[e];
        if !self.uf.union(u, v) {
            return Err(Error::InvalidInput(format!(
                "edge {e} is internal to a supervertex and cannot be contracted"
            )));
        }
        self.supervertices -= 1;
        let uf = &mut self.uf;
        let endpoints = &self.endpoints;
        self.surviving
            .retain(|&(id, _)| uf.find(endpoints[id].0) != uf.find(endpoints[id].1));
        Ok(())
    }

    /// Canonical supervertex labels: scanning original vertices in order,
    /// each new root receives the next label, so label 0 always contains
    /// vertex 0 and labels are ordered by smallest contained vertex.
    pub fn canonical_labels(&mut self, n: usize) -> Vec<u8> {
        let mut label_of_root = vec![u8::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0u8;
        for v in 0..n {
            let r = self.uf.find(v);
            if label_of_root[r] == u8::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        labels
    }
}

/// Directed multigraph for strong-connectivity reliability.
#[derive(Debug, Clone)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Edge>,
}

impl Digraph {
    pub fn build(n: usize, arc_list: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph(
                "vertex count must be at least 1".into(),
            ));
        }
        let mut arcs = Vec::with_capacity(arc_list.len());
        for (idx, &(u, v, p)) in arc_list.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "arc {idx}: endpoint ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "arc {idx}: self-loop at vertex {u}"
                )));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidGraph(format!(
                    "arc {idx}: failure probability {p} outside [0, 1]"
                )));
            }
            arcs.push(Edge { u, v, p_fail: p });
        }
        Ok(Self { n, arcs })
    }

    /// Both directions of every edge of an undirected graph.
    pub fn bidirected(g: &Multigraph) -> Self {
        let mut arcs = Vec::with_capacity(2 * g.m());
        for e in g.edges() {
            arcs.push(Edge {
                u: e.u,
                v: e.v,
                p_fail: e.p_fail,
            });
            arcs.push(Edge {
                u: e.v,
                v: e.u,
                p_fail: e.p_fail,
            });
        }
        Self { n: g.n(), arcs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Edge] {
        &self.arcs
    }

    /// Every vertex must have in-degree equal to out-degree; the error
    /// message lists each mismatched vertex.
    pub fn check_eulerian(&self) -> Result<()> {
        let mut balance = vec![0i64; self.n];
        for a in &self.arcs {
            balance[a.u] += 1;
            balance[a.v] -= 1;
        }
        let bad: Vec<String> = balance
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(v, &b)| format!("vertex {v} (out - in = {b})"))
            .collect();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(format!(
                "directed graph is not Eulerian: {}",
                bad.join(", ")
            )))
        }
    }

    pub fn is_strongly_connected_full(&self) -> bool {
        let arcs: Vec<_> = self.arcs.iter().map(|a| (a.u, a.v)).collect();
        connectivity::is_strongly_connected(self.n, &arcs)
    }

    /// Undirected shadow: one undirected edge per arc, same probabilities.
    pub fn underlying(&self) -> Result<Multigraph> {
        let list: Vec<_> = self.arcs.iter().map(|a| (a.u, a.v, a.p_fail)).collect();
        Multigraph::build(self.n, &list)
    }
}
