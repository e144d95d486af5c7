//! Connectivity predicates shared by the estimators and the brute-force
//! oracles, so that both sides agree on what "connected" means.

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two elements were in different sets.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let mut xr = self.find(x);
        let mut yr = self.find(y);
        if xr == yr {
            return false;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.fill(1);
        self.components = self.parent.len();
    }
}

/// Number of connected components of the subgraph on `n` vertices with the
/// given surviving edges.
pub fn component_count(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    uf.components()
}

pub fn is_connected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    component_count(n, edges) == 1
}

/// True when all terminals lie in one component of the surviving subgraph.
pub fn terminals_connected(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
    terminals: &[usize],
) -> bool {
    if terminals.len() <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    let root = uf.find(terminals[0]);
    terminals[1..].iter().all(|&t| uf.find(t) == root)
}

/// Strong connectivity of the subgraph on `n` vertices with the given arcs:
/// every vertex reachable from vertex 0 and vertex 0 reachable from every
/// vertex.
pub fn is_strongly_connected(n: usize, arcs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut rev = vec![Vec::new(); n];
    for &(u, v) in arcs {
        fwd[u].push(v);
        rev[v].push(u);
    }
    reaches_all(n, &fwd) && reaches_all(n, &rev)
}

fn reaches_all(n: usize, adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == n
}

/// k-edge-connectivity of the subgraph with the given surviving edges.
///
/// k = 1 is plain connectivity, k = 2 is connected and bridgeless, larger k
/// goes through unit-capacity max-flow from vertex 0 to every other vertex
/// (Menger), with augmentation stopped once k paths are found.
pub fn is_k_edge_connected(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if k == 0 || n <= 1 {
        return true;
    }
    if !is_connected(n, edges.iter().copied()) {
        return false;
    }
    match k {
        1 => true,
        2 => !has_bridge(n, edges),
        _ => {
            let mut deg = vec![0usize; n];
            for &(u, v) in edges {
                deg[u] += 1;
                deg[v] += 1;
            }
            if deg.iter().any(|&d| d < k) {
                return false;
            }
            let flow = FlowNetwork::new(n, edges);
            (1..n).all(|t| flow.clone().max_flow_capped(0, t, k) >= k)
        }
    }
}

/// Bridge detection on a multigraph via DFS lowlink; parallel edges are never
/// bridges (the DFS skips only the specific edge id it arrived by).
pub fn has_bridge(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    // iterative DFS: (vertex, incoming edge id, adjacency cursor)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        stack.push((start, usize::MAX, 0));
        while !stack.is_empty() {
            let top = stack.len() - 1;
            let (u, in_edge, cursor) = stack[top];
            if cursor < adj[u].len() {
                stack[top].2 += 1;
                let (v, id) = adj[u][cursor];
                if id == in_edge {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, id, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    if low[u] > disc[p] {
                        return true;
                    }
                    low[p] = low[p].min(low[u]);
                }
            }
        }
    }
    false
}

/// Unit-capacity flow network over a small vertex set, represented as a
/// dense capacity matrix (parallel edges accumulate capacity).
#[derive(Clone)]
pub struct FlowNetwork {
    n: usize,
    cap: Vec<u32>,
}

impl FlowNetwork {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut cap = vec![0u32; n * n];
        for &(u, v) in edges {
            cap[u * n + v] += 1;
            cap[v * n + u] += 1;
        }
        Self { n, cap }
    }

    /// Max flow from s to t, stopping early once `limit` is reached.
    pub fn max_flow_capped(mut self, s: usize, t: usize, limit: usize) -> usize {
        let n = self.n;
        let mut flow = 0usize;
        let mut parent = vec![usize::MAX; n];
        while flow < limit {
            parent.fill(usize::MAX);
            parent[s] = s;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                let row = &self.cap[u * n..(u + 1) * n];
                for (v, &cap_uv) in row.iter().enumerate() {
                    if cap_uv > 0 && parent[v] == usize::MAX {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let u = parent[v];
                bottleneck = bottleneck.min(self.cap[u * n + v]);
                v = u;
            }
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.cap[u * n + v] -= bottleneck;
                self.cap[v * n + u] += bottleneck;
                v = u;
            }
            flow += bottleneck as usize;
        }
        flow
    }
}

/// Weighted max flow for real-valued capacities (used for minimum
/// terminal-separating cuts in the log-probability weighting). Capacities
/// may be infinite; an all-infinite s-t path short-circuits to infinity.
pub fn weighted_max_flow(n: usize, edges: &[(usize, usize, f64)], s: usize, t: usize) -> f64 {
    let mut cap = vec![0.0f64; n * n];
    let mut max_finite: f64 = 0.0;
    for &(u, v, w) in edges {
        cap[u * n + v] += w;
        cap[v * n + u] += w;
        if w.is_finite() {
            max_finite = max_finite.max(w);
        }
    }
    // Infinite-capacity path check first.
    {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if !seen[v] && cap[u * n + v].is_infinite() {
                    if v == t {
                        return f64::INFINITY;
                    }
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    let tol = max_finite.max(1.0) * 1e-12;
    let mut flow = 0.0f64;
    let mut parent = vec![usize::MAX; n];
    loop {
        parent.fill(usize::MAX);
        parent[s] = s;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u * n + v] > tol {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            break;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u * n + v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u * n + v] -= bottleneck;
            if cap[v * n + u].is_finite() {
                cap[v * n + u] += bottleneck;
            }
            v = u;
        }
        flow += bottleneck;
    }
    flow
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_counts() {
        assert_eq!(component_count(3, [(0, 1), (1, 2)]), 1);
        assert_eq!(component_count(3, [(0, 1)]), 2);
        assert_eq!(component_count(1, []), 1);
        assert_eq!(component_count(4, []), 4);
    }

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(3, &[(0, 1), (1, 2), (2, 0)]));
        assert!(!is_strongly_connected(3, &[(0, 1), (1, 2)]));
        assert!(is_strongly_connected(2, &[(0, 1), (1, 0)]));
        assert!(!is_strongly_connected(2, &[(0, 1)]));
        assert!(is_strongly_connected(1, &[]));
    }

    #[test]
    fn bridges() {
        // path has bridges, cycle does not
        assert!(has_bridge(3, &[(0, 1), (1, 2)]));
        assert!(!has_bridge(3, &[(0, 1), (1, 2), (2, 0)]));
        // parallel edges are not bridges
        assert!(!has_bridge(2, &[(0, 1), (0, 1)]));
        assert!(has_bridge(2, &[(0, 1)]));
    }

    #[test]
    fn k_edge_connectivity_matches_definitions() {
        let c4 = [(0, 1), (1, 2), (2, 3), (3, 0)];
        assert!(is_k_edge_connected(4, &c4, 2));
        assert!(!is_k_edge_connected(4, &c4, 3));
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert!(is_k_edge_connected(4, &k4, 3));
        assert!(!is_k_edge_connected(4, &k4, 4));
        // bridge-only connection is 1- but not 2-edge-connected
        assert!(is_k_edge_connected(2, &[(0, 1)], 1));
        assert!(!is_k_edge_connected(2, &[(0, 1)], 2));
    }

    #[test]
    fn k_edge_connectivity_fast_path_agrees_with_flow() {
        // compare the k = 2 bridge path against the max-flow route on a
        // few multigraphs
        let graphs: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
            (4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)]),
            (3, vec![(0, 1), (1, 2)]),
            (5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
        ];
        for (n, edges) in graphs {
            let fast = is_k_edge_connected(n, &edges, 2);
            let connected = is_connected(n, edges.iter().copied());
            let flow_route = connected
                && (1..n).all(|t| FlowNetwork::new(n, &edges).max_flow_capped(0, t, 2) >= 2);
            assert_eq!(fast, flow_route, "n={n} edges={edges:?}");
        }
    }

    #[test]
    fn weighted_flow_basics() {
        // triangle with weights; s-t min cut = min(w01 + w21*.., ..)
        let edges = [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 4.0)];
        let f = weighted_max_flow(3, &edges, 0, 2);
        assert!((f - 5.0).abs() < 1e-9);
        let inf_edges = [(0, 1, f64::INFINITY), (1, 2, f64::INFINITY)];
        assert!(weighted_max_flow(3, &inf_edges, 0, 2).is_infinite());
    }
}
