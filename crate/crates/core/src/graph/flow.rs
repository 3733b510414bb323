//! Unit-capacity max-flow: edge-disjoint and vertex-disjoint path families
//! with Menger cuts.

use super::{EdgeSet, Graph, Path, VertexId};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Directed residual network; arcs are stored in pairs `(i, i ^ 1)`.
struct Net {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    orig: Vec<u32>,
}

impl Net {
    fn new(n: usize) -> Self {
        Net { adj: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), orig: Vec::new() }
    }

    fn add_arc(&mut self, u: usize, v: usize, c: u32) -> usize {
        let i = self.to.len();
        self.to.push(v);
        self.cap.push(c);
        self.orig.push(c);
        self.adj[u].push(i);
        self.to.push(u);
        self.cap.push(0);
        self.orig.push(0);
        self.adj[v].push(i + 1);
        i
    }

    fn flow(&self, arc: usize) -> u32 {
        self.orig[arc].saturating_sub(self.cap[arc])
    }

    /// Augments one unit at a time along BFS-shortest paths until `bound`.
    fn run(&mut self, s: usize, t: usize, bound: usize) -> usize {
        let n = self.adj.len();
        let mut value = 0;
        let mut prev = vec![usize::MAX; n];
        while value < bound {
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && !seen[w] {
                        seen[w] = true;
                        prev[w] = a;
                        q.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let a = prev[v];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                v = self.to[a ^ 1];
            }
            value += 1;
        }
        value
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Result of an edge-disjoint path computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFlow {
    pub value: usize,
    pub paths: Vec<Path>,
    /// Present when `value` is below the requested bound: a cut of exactly `value` edges.
    pub cut: Option<EdgeSet>,
}

/// Follows net flow from `start` through an undirected flow assignment,
/// stopping at a vertex where `stop` still has capacity. Loops are cut out.
fn trace(
    start: VertexId,
    g: &Graph,
    net_flow: &mut [i8],
    stop: &mut [usize],
) -> Option<Path> {
    let mut walk = vec![start];
    let mut pos = vec![usize::MAX; g.vertex_bound()];
    pos[start.index()] = 0;
    let mut v = start;
    loop {
        if stop[v.index()] > 0 && v != start {
            stop[v.index()] -= 1;
            return Some(Path::new(walk));
        }
        let mut next = None;
        for &(w, e) in g.incident(v) {
            let (a, _) = g.endpoints(e).unwrap();
            let out = if a == v { net_flow[e.index()] > 0 } else { net_flow[e.index()] < 0 };
            if out {
                net_flow[e.index()] = 0;
                next = Some(w);
                break;
            }
        }
        let w = next?;
        if pos[w.index()] != usize::MAX {
            let keep = pos[w.index()] + 1;
            for x in walk.drain(keep..) {
                pos[x.index()] = usize::MAX;
            }
        } else {
            pos[w.index()] = walk.len();
            walk.push(w);
        }
        v = w;
    }
}

/// Edge-disjoint paths from `s` to any vertex of `sinks`, at most `bound` of them.
/// If fewer than `bound` exist, the returned cut separates `s` from `sinks`.
pub fn edge_disjoint_paths_to_set(
    g: &Graph,
    s: VertexId,
    sinks: &[VertexId],
    bound: usize,
) -> Result<EdgeFlow> {
    if !g.has_vertex(s) {
        return Err(Error::UnknownVertex(s));
    }
    if sinks.contains(&s) {
        return Err(Error::SameVertex(s));
    }
    let n = g.vertex_bound();
    let sink_node = n;
    let mut net = Net::new(n + 1);
    let mut arcs = Vec::new();
    for (e, u, v) in g.edges() {
        let f = net.add_arc(u.index(), v.index(), 1);
        let b = net.add_arc(v.index(), u.index(), 1);
        arcs.push((e, f, b));
    }
    let mut sink_cap = vec![0usize; n];
    for &t in sinks {
        if !g.has_vertex(t) {
            return Err(Error::UnknownVertex(t));
        }
        if sink_cap[t.index()] == 0 {
            net.add_arc(t.index(), sink_node, bound.max(1) as u32);
        }
        sink_cap[t.index()] = usize::MAX;
    }
    let value = net.run(s.index(), sink_node, bound);

    let mut net_flow = vec![0i8; g.edge_bound()];
    for &(e, f, b) in &arcs {
        net_flow[e.index()] = net.flow(f) as i8 - net.flow(b) as i8;
    }
    let mut stop: Vec<usize> = vec![0; n];
    for &t in sinks {
        stop[t.index()] = usize::MAX;
    }
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let p = trace(s, g, &mut net_flow, &mut stop)
            .ok_or_else(|| Error::InvariantViolation("flow decomposition failed".into()))?;
        paths.push(p);
    }
    let cut = if value < bound {
        let r = net.reachable(s.index());
        Some(
            g.edges()
                .filter(|&(_, u, v)| r[u.index()] != r[v.index()])
                .map(|(e, _, _)| e)
                .collect(),
        )
    } else {
        None
    };
    Ok(EdgeFlow { value, paths, cut })
}

/// Up to `bound` edge-disjoint `s`-`t` paths, plus a minimum cut when the
/// maximum is below `bound`.
pub fn max_edge_disjoint_paths(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    bound: usize,
) -> Result<EdgeFlow> {
    if s == t {
        return Err(Error::SameVertex(s));
    }
    edge_disjoint_paths_to_set(g, s, &[t], bound)
}

fn decompose_directed(net: &Net, source: usize, sink: usize, value: usize) -> Vec<Vec<usize>> {
    let mut used = vec![0u32; net.to.len()];
    let mut out = Vec::new();
    for _ in 0..value {
        let mut walk = vec![source];
        let mut u = source;
        while u != sink {
            let a = net.adj[u]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && net.flow(a) > used[a])
                .expect("flow conservation");
            used[a] += 1;
            u = net.to[a];
            if let Some(p) = walk.iter().position(|&x| x == u) {
                walk.truncate(p + 1);
            } else {
                walk.push(u);
            }
        }
        out.push(walk);
    }
    out
}

/// Up to `bound` internally vertex-disjoint `s`-`t` paths avoiding `blocked`
/// vertices (a direct edge counts as one path).
pub fn vertex_disjoint_paths(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    bound: usize,
    blocked: &[bool],
) -> Vec<Path> {
    assert_ne!(s, t);
    let n = g.vertex_bound();
    let is_blocked = |v: VertexId| blocked.get(v.index()).copied().unwrap_or(false);
    let mut net = Net::new(2 * n);
    for v in g.vertices() {
        if v == s || v == t {
            net.add_arc(2 * v.index(), 2 * v.index() + 1, bound as u32);
        } else if !is_blocked(v) {
            net.add_arc(2 * v.index(), 2 * v.index() + 1, 1);
        }
    }
    for (_, u, v) in g.edges() {
        net.add_arc(2 * u.index() + 1, 2 * v.index(), 1);
        net.add_arc(2 * v.index() + 1, 2 * u.index(), 1);
    }
    let value = net.run(2 * s.index() + 1, 2 * t.index(), bound);
    decompose_directed(&net, 2 * s.index() + 1, 2 * t.index(), value)
        .into_iter()
        .map(|w| {
            let mut vs: Vec<VertexId> = Vec::new();
            for x in w {
                let v = VertexId((x / 2) as u32);
                if vs.last() != Some(&v) {
                    vs.push(v);
                }
            }
            Path::new(vs)
        })
        .collect()
}

/// Up to `bound` pairwise vertex-disjoint paths from `sources` to `sinks`
/// avoiding `blocked`. A vertex in both sets yields a trivial path.
pub fn disjoint_set_paths(
    g: &Graph,
    sources: &[VertexId],
    sinks: &[VertexId],
    bound: usize,
    blocked: &[bool],
) -> Vec<Path> {
    let n = g.vertex_bound();
    let is_blocked = |v: VertexId| blocked.get(v.index()).copied().unwrap_or(false);
    let (ss, tt) = (2 * n, 2 * n + 1);
    let mut net = Net::new(2 * n + 2);
    for v in g.vertices() {
        if !is_blocked(v) {
            net.add_arc(2 * v.index(), 2 * v.index() + 1, 1);
        }
    }
    for (_, u, v) in g.edges() {
        net.add_arc(2 * u.index() + 1, 2 * v.index(), 1);
        net.add_arc(2 * v.index() + 1, 2 * u.index(), 1);
    }
    for &v in sources {
        net.add_arc(ss, 2 * v.index(), 1);
    }
    for &v in sinks {
        net.add_arc(2 * v.index() + 1, tt, 1);
    }
    let value = net.run(ss, tt, bound);
    decompose_directed(&net, ss, tt, value)
        .into_iter()
        .map(|w| {
            let mut vs: Vec<VertexId> = Vec::new();
            for &x in &w[1..w.len() - 1] {
                let v = VertexId((x / 2) as u32);
                if vs.last() != Some(&v) {
                    vs.push(v);
                }
            }
            Path::new(vs)
        })
        .collect()
}

#[cfg(test)]
fn path_edges(g: &Graph, paths: &[Path]) -> Vec<super::EdgeId> {
    paths.iter().flat_map(|p| p.edges(g).unwrap_or_default()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn k4_has_three_paths() {
        let g = k4();
        let f = max_edge_disjoint_paths(&g, VertexId(0), VertexId(3), 10).unwrap();
        assert_eq!(f.value, 3);
        assert_eq!(f.cut.as_ref().unwrap().len(), 3);
        let es = path_edges(&g, &f.paths);
        let mut d = es.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), es.len());
        for p in &f.paths {
            assert!(p.is_valid_in(&g));
            assert_eq!((p.first(), p.last()), (VertexId(0), VertexId(3)));
        }
    }

    #[test]
    fn bound_limits_paths() {
        let f = max_edge_disjoint_paths(&k4(), VertexId(0), VertexId(1), 2).unwrap();
        assert_eq!(f.value, 2);
        assert!(f.cut.is_none());
    }

    #[test]
    fn bridge_and_disconnected() {
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let f = max_edge_disjoint_paths(&p5, VertexId(0), VertexId(4), 5).unwrap();
        assert_eq!(f.value, 1);
        assert_eq!(f.cut.unwrap().len(), 1);
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        let f = max_edge_disjoint_paths(&g, VertexId(0), VertexId(3), 1).unwrap();
        assert_eq!(f.value, 0);
        assert!(f.paths.is_empty());
        assert!(f.cut.unwrap().is_empty());
        assert!(max_edge_disjoint_paths(&g, VertexId(1), VertexId(1), 1).is_err());
    }

    #[test]
    fn vertex_disjoint_in_k4() {
        let g = k4();
        let ps = vertex_disjoint_paths(&g, VertexId(0), VertexId(1), 5, &[]);
        assert_eq!(ps.len(), 3);
        let blocked = g.vertex_mask([VertexId(2)]);
        assert_eq!(vertex_disjoint_paths(&g, VertexId(0), VertexId(1), 5, &blocked).len(), 2);
    }

    #[test]
    fn bowtie_vertex_vs_edge() {
        // two triangles sharing vertex 2
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(vertex_disjoint_paths(&g, VertexId(0), VertexId(3), 5, &[]).len(), 1);
        let f = max_edge_disjoint_paths(&g, VertexId(0), VertexId(3), 5).unwrap();
        assert_eq!(f.value, 2);
    }

    #[test]
    fn set_paths_allow_trivial() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let ps = disjoint_set_paths(&g, &[VertexId(0), VertexId(3)], &[VertexId(3), VertexId(1)], 2, &[]);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().any(|p| p.is_trivial() && p.first() == VertexId(3)));
    }
}
