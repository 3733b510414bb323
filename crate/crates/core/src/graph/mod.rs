//! Undirected simple graphs with stable dense identifiers.
//!
//! Vertex and edge ids are assigned at creation and never reused, so
//! subgraphs keep the ids of their host and witnesses stay meaningful
//! across deletions.

mod blocks;
mod flow;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use blocks::{blocks, is_two_connected, Blocks};
pub use flow::{
    disjoint_set_paths, edge_disjoint_paths_to_set, max_edge_disjoint_paths, vertex_disjoint_paths, EdgeFlow,
};
pub use search::{
    bfs_path, component_of, components, is_connected, is_forest, is_tree, longest_cycle,
    longest_cycle_with, spanning_tree,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A set of edge ids, used for forbidden sets, deletions and hitting sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(BTreeSet::new())
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.0.remove(&e)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn extend(&mut self, it: impl IntoIterator<Item = EdgeId>) {
        self.0.extend(it);
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// True if every edge is present in `g`.
    pub fn is_subset_of(&self, g: &Graph) -> bool {
        self.0.iter().all(|&e| g.has_edge(e))
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a EdgeId;
    type IntoIter = std::collections::btree_set::Iter<'a, EdgeId>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A vertex sequence; length counts edges, a single vertex has length 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<VertexId>);

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path(vertices)
    }

    pub fn single(v: VertexId) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().unwrap()
    }

    pub fn interior(&self) -> &[VertexId] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.0.clone();
        v.reverse();
        Path(v)
    }

    /// Concatenates `other`, which must start where `self` ends.
    pub fn join(&self, other: &Path) -> Path {
        assert_eq!(self.last(), other.first(), "paths do not meet");
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Path(v)
    }

    /// Edge ids along the path; `None` if some step is not an edge of `g`.
    pub fn edges(&self, g: &Graph) -> Option<Vec<EdgeId>> {
        self.0.windows(2).map(|w| g.edge_between(w[0], w[1])).collect()
    }

    /// Consecutive vertices adjacent in `g` and no vertex repeated.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|&v| g.has_vertex(v) && seen.insert(v)) && self.edges(g).is_some()
    }
}

/// A cycle given by its cyclic vertex order (the closing edge is implicit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<VertexId>);

impl Cycle {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        assert!(vertices.len() >= 3, "a cycle has at least three vertices");
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self, g: &Graph) -> Option<Vec<EdgeId>> {
        let n = self.0.len();
        (0..n).map(|i| g.edge_between(self.0[i], self.0[(i + 1) % n])).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    present: Vec<bool>,
    vertex_count: usize,
    ends: Vec<Option<(VertexId, VertexId)>>,
    edge_count: usize,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph on vertices `0..n` without edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Graph::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Builds a graph on `0..n` from an edge list; panics on invalid edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v)).expect("valid edge");
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.present.len() as u32);
        self.present.push(true);
        self.adj.push(Vec::new());
        self.vertex_count += 1;
        v
    }

    /// Makes sure `v` exists, allocating ids up to it (unused ids stay absent).
    pub fn insert_vertex(&mut self, v: VertexId) {
        while self.present.len() <= v.index() {
            self.present.push(false);
            self.adj.push(Vec::new());
        }
        if !self.present[v.index()] {
            self.present[v.index()] = true;
            self.vertex_count += 1;
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let e = EdgeId(self.ends.len() as u32);
        self.insert_edge(e, u, v)?;
        Ok(e)
    }

    /// Adds an edge with a prescribed id (ids below it that are unused stay absent).
    pub fn insert_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if !self.has_vertex(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::InvariantViolation(format!("self-loop at vertex {u}")));
        }
        if self.edge_between(u, v).is_some() {
            return Err(Error::InvariantViolation(format!("parallel edge {u}-{v}")));
        }
        if self.has_edge(e) {
            return Err(Error::InvariantViolation(format!("duplicate edge id {}", e.0)));
        }
        while self.ends.len() <= e.index() {
            self.ends.push(None);
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.ends[e.index()] = Some((a, b));
        self.edge_count += 1;
        Self::adj_insert(&mut self.adj[u.index()], (v, e));
        Self::adj_insert(&mut self.adj[v.index()], (u, e));
        Ok(())
    }

    fn adj_insert(list: &mut Vec<(VertexId, EdgeId)>, item: (VertexId, EdgeId)) {
        let pos = list.partition_point(|x| x.0 < item.0);
        list.insert(pos, item);
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<()> {
        let (u, v) = self.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        self.ends[e.index()] = None;
        self.edge_count -= 1;
        self.adj[u.index()].retain(|x| x.1 != e);
        self.adj[v.index()].retain(|x| x.1 != e);
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let inc: Vec<EdgeId> = self.adj[v.index()].iter().map(|x| x.1).collect();
        for e in inc {
            self.remove_edge(e)?;
        }
        self.present[v.index()] = false;
        self.vertex_count -= 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// One past the largest vertex id ever allocated; size for dense arrays.
    pub fn vertex_bound(&self) -> usize {
        self.present.len()
    }

    /// One past the largest edge id ever allocated.
    pub fn edge_bound(&self) -> usize {
        self.ends.len()
    }

    #[inline]
    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.present.get(v.index()).copied().unwrap_or(false)
    }

    #[inline]
    pub fn has_edge(&self, e: EdgeId) -> bool {
        matches!(self.ends.get(e.index()), Some(Some(_)))
    }

    /// Endpoints with the smaller id first.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.ends.get(e.index()).copied().flatten()
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|(u, v)| (EdgeId(i as u32), u, v)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _, _)| e)
    }

    /// Incident (neighbour, edge) pairs, ordered by neighbour id.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        self.adj.get(v.index()).map(|x| x.as_slice()).unwrap_or(&[])
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(|x| x.0)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let list = self.incident(u);
        list.binary_search_by(|x| x.0.cmp(&v)).ok().map(|i| list[i].1)
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Same vertices, edges in `removed` dropped; ids preserved.
    pub fn without_edges<'a>(&self, removed: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let mut g = self.clone();
        for &e in removed {
            if g.has_edge(e) {
                g.remove_edge(e).expect("edge present");
            }
        }
        g
    }

    /// Deletes the given vertices and their incident edges; ids preserved.
    pub fn without_vertices(&self, removed: impl IntoIterator<Item = VertexId>) -> Graph {
        let mut g = self.clone();
        for v in removed {
            if g.has_vertex(v) {
                g.remove_vertex(v).expect("vertex present");
            }
        }
        g
    }

    /// Subgraph induced by `keep`; ids preserved.
    pub fn induced(&self, keep: impl IntoIterator<Item = VertexId>) -> Graph {
        let mut mask = vec![false; self.vertex_bound()];
        for v in keep {
            if self.has_vertex(v) {
                mask[v.index()] = true;
            }
        }
        let drop: Vec<VertexId> = self.vertices().filter(|v| !mask[v.index()]).collect();
        self.without_vertices(drop)
    }

    /// Subgraph formed by the given edges and their endpoints; ids preserved.
    pub fn edge_subgraph(&self, keep: impl IntoIterator<Item = EdgeId>) -> Graph {
        let mut g = Graph::new();
        let mut list: Vec<EdgeId> = keep.into_iter().filter(|&e| self.has_edge(e)).collect();
        list.sort();
        list.dedup();
        for e in list {
            let (u, v) = self.endpoints(e).unwrap();
            g.insert_vertex(u);
            g.insert_vertex(v);
            g.insert_edge(e, u, v).expect("fresh edge");
        }
        g
    }

    /// All vertices of `self`, only the listed edges; ids preserved.
    pub fn spanning_subgraph(&self, keep: impl IntoIterator<Item = EdgeId>) -> Graph {
        let mut mask = vec![false; self.edge_bound()];
        for e in keep {
            if self.has_edge(e) {
                mask[e.index()] = true;
            }
        }
        let drop: Vec<EdgeId> = self.edge_ids().filter(|e| !mask[e.index()]).collect();
        self.without_edges(drop.iter())
    }

    /// Dense boolean vertex mask for the given vertices.
    pub fn vertex_mask(&self, vs: impl IntoIterator<Item = VertexId>) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_bound()];
        for v in vs {
            if v.index() < mask.len() {
                mask[v.index()] = true;
            }
        }
        mask
    }
}
