//! Traversals, spanning trees and exact longest-cycle search.

use std::collections::VecDeque;

use super::{blocks, Cycle, Graph, Path, VertexId};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.vertex_bound()];
    let mut out = Vec::new();
    for v in g.vertices() {
        if !seen[v.index()] {
            let mut comp = component_from(g, v, &mut seen);
            comp.sort();
            out.push(comp);
        }
    }
    out
}

fn component_from(g: &Graph, v: VertexId, seen: &mut [bool]) -> Vec<VertexId> {
    seen[v.index()] = true;
    let mut stack = vec![v];
    let mut comp = vec![v];
    while let Some(u) = stack.pop() {
        for w in g.neighbors(u) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                comp.push(w);
                stack.push(w);
            }
        }
    }
    comp
}

/// Sorted vertex set of the component containing `v`.
pub fn component_of(g: &Graph, v: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; g.vertex_bound()];
    let mut comp = component_from(g, v, &mut seen);
    comp.sort();
    comp
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

pub fn is_forest(g: &Graph) -> bool {
    g.edge_count() + components(g).len() == g.vertex_count()
}

pub fn is_tree(g: &Graph) -> bool {
    g.vertex_count() > 0 && is_connected(g) && g.edge_count() + 1 == g.vertex_count()
}

/// Shortest `s`-`t` path using only vertices allowed by `allowed` (endpoints
/// are always allowed); neighbours are scanned smallest id first.
pub fn bfs_path(g: &Graph, s: VertexId, t: VertexId, allowed: &dyn Fn(VertexId) -> bool) -> Option<Path> {
    if s == t {
        return Some(Path::single(s));
    }
    let mut prev = vec![u32::MAX; g.vertex_bound()];
    prev[s.index()] = s.0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for w in g.neighbors(u) {
            if prev[w.index()] != u32::MAX {
                continue;
            }
            if w != t && !allowed(w) {
                continue;
            }
            prev[w.index()] = u.0;
            if w == t {
                let mut vs = vec![t];
                let mut x = t;
                while x != s {
                    x = VertexId(prev[x.index()]);
                    vs.push(x);
                }
                vs.reverse();
                return Some(Path::new(vs));
            }
            q.push_back(w);
        }
    }
    None
}

/// BFS spanning tree from the smallest vertex, neighbours smallest id first.
pub fn spanning_tree(g: &Graph) -> Result<Graph> {
    let Some(root) = g.vertices().next() else {
        return Ok(Graph::new());
    };
    let mut seen = vec![false; g.vertex_bound()];
    seen[root.index()] = true;
    let mut q = VecDeque::from([root]);
    let mut keep = Vec::new();
    while let Some(u) = q.pop_front() {
        for &(w, e) in g.incident(u) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                keep.push(e);
                q.push_back(w);
            }
        }
    }
    if keep.len() + 1 != g.vertex_count() {
        return Err(Error::Disconnected);
    }
    Ok(g.spanning_subgraph(keep))
}

/// A longest cycle under the default budget, or `None` for forests.
pub fn longest_cycle(g: &Graph) -> Result<Option<Cycle>> {
    longest_cycle_with(g, &Budget::default())
}

struct CycleSearch<'a> {
    g: &'a Graph,
    budget: &'a Budget,
    start: VertexId,
    allowed: Vec<bool>,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
    best: Vec<VertexId>,
    target: usize,
}

impl CycleSearch<'_> {
    /// Vertices still reachable from `v` through allowed, unused vertices.
    fn reach_bound(&self, v: VertexId) -> usize {
        let mut seen = vec![false; self.g.vertex_bound()];
        seen[v.index()] = true;
        let mut stack = vec![v];
        let mut count = 0;
        while let Some(u) = stack.pop() {
            for w in self.g.neighbors(u) {
                if self.allowed[w.index()] && !self.on_path[w.index()] && !seen[w.index()] {
                    seen[w.index()] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    fn dfs(&mut self, v: VertexId) -> Result<bool> {
        self.budget.tick()?;
        if self.path.len() >= 3 && self.path.len() > self.best.len() && self.g.is_adjacent(v, self.start) {
            self.best = self.path.clone();
            if self.best.len() == self.target {
                return Ok(true);
            }
        }
        if self.path.len() + self.reach_bound(v) <= self.best.len() {
            return Ok(false);
        }
        let next: Vec<VertexId> = self
            .g
            .neighbors(v)
            .filter(|w| self.allowed[w.index()] && !self.on_path[w.index()])
            .collect();
        for w in next {
            self.on_path[w.index()] = true;
            self.path.push(w);
            let done = self.dfs(w)?;
            self.path.pop();
            self.on_path[w.index()] = false;
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Exact longest cycle by per-block DFS with a reachability bound.
pub fn longest_cycle_with(g: &Graph, budget: &Budget) -> Result<Option<Cycle>> {
    let mut best: Vec<VertexId> = Vec::new();
    for es in blocks(g).edge_sets {
        if es.len() < 3 {
            continue;
        }
        let h = g.edge_subgraph(es.iter().copied());
        let verts: Vec<VertexId> = h.vertices().collect();
        if verts.len() <= best.len() {
            continue;
        }
        let mut s = CycleSearch {
            g: &h,
            budget,
            start: verts[0],
            allowed: vec![false; h.vertex_bound()],
            on_path: vec![false; h.vertex_bound()],
            path: Vec::new(),
            best: best.clone(),
            target: verts.len(),
        };
        for (i, &start) in verts.iter().enumerate() {
            if verts.len() - i <= s.best.len() {
                break;
            }
            s.allowed.iter_mut().for_each(|a| *a = false);
            for &w in &verts[i..] {
                s.allowed[w.index()] = true;
            }
            s.target = verts.len() - i;
            s.start = start;
            s.on_path[start.index()] = true;
            s.path = vec![start];
            let done = s.dfs(start)?;
            s.on_path[start.index()] = false;
            if done {
                break;
            }
        }
        best = s.best;
    }
    Ok(if best.len() >= 3 { Some(Cycle::new(best)) } else { None })
}
