//! Decision procedures for ladder-free and house-free 2-connected graphs,
//! and segment counting in trees.
//!
//! A ladder-free 2-connected graph on six or more vertices is a circular
//! ordering of short Θ_r's: blocks `B_1..B_m`, each two endvertices joined
//! by paths of length at most two (or a diamond, whose endvertices are its
//! two degree-2 vertices), with the second endvertex of `B_j`
//! glued to the first endvertex of `B_{j+1}` (cyclically).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{is_tree, is_two_connected, longest_cycle_with, Cycle, EdgeId, Graph, VertexId};
use crate::patterns::{
    find_house_with, find_ladder3_with, recognize_short_theta, ShortTheta, SubdivisionWitness, ThetaConvention,
};

/// One short Θ_r of a chain, with the host edges it owns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaBlock {
    pub ends: [VertexId; 2],
    pub r: usize,
    pub interior: Vec<VertexId>,
    pub edges: Vec<(EdgeId, VertexId, VertexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaChain {
    pub blocks: Vec<ThetaBlock>,
}

impl ThetaChain {
    /// The graph obtained by gluing the blocks; vertex and edge ids are the host's.
    pub fn reassemble(&self) -> Graph {
        let mut g = Graph::new();
        let mut edges: Vec<(EdgeId, VertexId, VertexId)> =
            self.blocks.iter().flat_map(|b| b.edges.iter().copied()).collect();
        edges.sort();
        let mut vs: Vec<VertexId> = self
            .blocks
            .iter()
            .flat_map(|b| b.ends.iter().chain(b.interior.iter()).copied())
            .collect();
        vs.sort();
        vs.dedup();
        for v in vs {
            g.insert_vertex(v);
        }
        for (e, u, v) in edges {
            // duplicate ids are caught by `check`
            let _ = g.insert_edge(e, u, v);
        }
        g
    }

    /// Checks the chain against its host: every block a short Θ_r on its
    /// own edges, blocks edge-disjoint and covering `g`, ends glued cyclically.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let m = self.blocks.len();
        if m == 0 {
            return Err("empty chain".into());
        }
        let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
        let mut interior_owner: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (j, b) in self.blocks.iter().enumerate() {
            if b.ends[1] != self.blocks[(j + 1) % m].ends[0] {
                return Err(format!("block {j} does not meet block {}", (j + 1) % m));
            }
            for &(e, u, v) in &b.edges {
                match g.endpoints(e) {
                    Some((x, y)) if (x, y) == (u, v) || (y, x) == (u, v) => {}
                    _ => return Err(format!("edge {e} is not {u}-{v} in the host")),
                }
                if owner.insert(e, j).is_some() {
                    return Err(format!("edge {e} is in two blocks"));
                }
            }
            for &v in &b.interior {
                if interior_owner.insert(v, j).is_some() {
                    return Err(format!("vertex {v} is interior to two blocks"));
                }
            }
            check_block(b).map_err(|s| format!("block {j}: {s}"))?;
        }
        if owner.len() != g.edge_count() {
            return Err(format!("blocks cover {} of {} edges", owner.len(), g.edge_count()));
        }
        let ends: Vec<VertexId> = self.blocks.iter().map(|b| b.ends[0]).collect();
        if let Some(v) = ends.iter().find(|v| interior_owner.contains_key(v)) {
            return Err(format!("endvertex {v} is also an interior vertex"));
        }
        let mut sorted = ends.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != ends.len() && m > 2 {
            return Err("an endvertex is visited twice".into());
        }
        Ok(())
    }
}

fn check_block(b: &ThetaBlock) -> std::result::Result<(), String> {
    let [x, y] = b.ends;
    if x == y {
        return Err("endvertices coincide".into());
    }
    if let [p, q] = b.interior[..] {
        let has = |u: VertexId, v: VertexId| b.edges.iter().any(|&(_, a, c)| (a, c) == (u, v) || (c, a) == (u, v));
        if has(p, q) {
            let diamond = b.r == 2
                && b.edges.len() == 5
                && [p, q].iter().all(|&m| has(m, x) && has(m, y))
                && !has(x, y);
            return if diamond { Ok(()) } else { Err("malformed diamond".into()) };
        }
    }
    let mut direct = 0;
    let mut touch: BTreeMap<VertexId, (bool, bool)> = b.interior.iter().map(|&v| (v, (false, false))).collect();
    for &(_, u, v) in &b.edges {
        if (u, v) == (x, y) || (v, u) == (x, y) {
            direct += 1;
            continue;
        }
        let (end, mid) = if u == x || u == y { (u, v) } else { (v, u) };
        let slot = touch.get_mut(&mid).ok_or_else(|| format!("edge {u}-{v} leaves the block"))?;
        if end == x && !slot.0 {
            slot.0 = true;
        } else if end == y && !slot.1 {
            slot.1 = true;
        } else {
            return Err(format!("edge {u}-{v} is not an end-to-midpoint edge"));
        }
    }
    if touch.values().any(|&(a, c)| !(a && c)) {
        return Err("a midpoint misses an endvertex".into());
    }
    if direct > 1 || b.r != direct + b.interior.len() || b.r == 0 {
        return Err(format!("r = {} does not match the paths", b.r));
    }
    if b.edges.len() != direct + 2 * b.interior.len() {
        return Err("edge count mismatch".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    ThetaChainResult { chain: ThetaChain },
    SmallGraph { vertices: usize },
    ShortThetaResult { theta: ShortTheta },
    CycleResult { cycle: Cycle },
    LadderFound { witness: SubdivisionWitness },
    HouseFound { witness: SubdivisionWitness },
}

/// A maximal path whose interior vertices have degree 2 and whose ends do not.
struct Thread {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

fn threads(g: &Graph, joint: &[bool]) -> Vec<Thread> {
    let mut out = Vec::new();
    for x in g.vertices().filter(|v| joint[v.index()]) {
        for &(w0, e0) in g.incident(x) {
            let mut vs = vec![x, w0];
            let mut es = vec![e0];
            let (mut prev, mut cur) = (x, w0);
            while !joint[cur.index()] {
                let &(next, e) = g.incident(cur).iter().find(|&&(n, _)| n != prev).expect("degree two");
                vs.push(next);
                es.push(e);
                prev = cur;
                cur = next;
            }
            // keep one orientation: smaller end first, ties by first edge
            let last = *vs.last().unwrap();
            if x < last || (x == last && es[0] < *es.last().unwrap()) {
                out.push(Thread { vertices: vs, edges: es });
            }
        }
    }
    out
}

fn edge_triples(g: &Graph, es: &[EdgeId]) -> Vec<(EdgeId, VertexId, VertexId)> {
    es.iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e).unwrap();
            (e, u, v)
        })
        .collect()
}

/// Θ_1 blocks, one per edge, walking `vs` forwards.
fn edge_blocks(g: &Graph, vs: &[VertexId], es: &[EdgeId], out: &mut Vec<ThetaBlock>) {
    for (i, &e) in es.iter().enumerate() {
        out.push(ThetaBlock { ends: [vs[i], vs[i + 1]], r: 1, interior: vec![], edges: edge_triples(g, &[e]) });
    }
}

fn bundle_block(g: &Graph, x: VertexId, y: VertexId, ts: &[&Thread]) -> ThetaBlock {
    let mut interior = Vec::new();
    let mut es = Vec::new();
    for t in ts {
        interior.extend(t.vertices[1..t.vertices.len() - 1].iter().copied());
        es.extend(t.edges.iter().copied());
    }
    interior.sort();
    es.sort();
    ThetaBlock { ends: [x, y], r: ts.len(), interior, edges: edge_triples(g, &es) }
}

fn oriented(t: &Thread, from: VertexId) -> (Vec<VertexId>, Vec<EdgeId>) {
    if t.vertices[0] == from {
        (t.vertices.clone(), t.edges.clone())
    } else {
        let mut vs = t.vertices.clone();
        let mut es = t.edges.clone();
        vs.reverse();
        es.reverse();
        (vs, es)
    }
}

/// A diamond hanging between `ends`: adjacent midpoints of degree 3, both
/// joined to both ends.
struct Diamond {
    ends: [VertexId; 2],
    mids: [VertexId; 2],
    edges: Vec<EdgeId>,
}

fn diamonds(g: &Graph) -> Vec<Diamond> {
    let mut out = Vec::new();
    for (e, x, y) in g.edges() {
        if g.degree(x) != 3 || g.degree(y) != 3 {
            continue;
        }
        let mut nx: Vec<VertexId> = g.neighbors(x).filter(|&w| w != y).collect();
        let mut ny: Vec<VertexId> = g.neighbors(y).filter(|&w| w != x).collect();
        nx.sort();
        ny.sort();
        if nx != ny {
            continue;
        }
        let mut edges = vec![e];
        for m in [x, y] {
            for &end in &nx {
                edges.push(g.edge_between(m, end).unwrap());
            }
        }
        edges.sort();
        out.push(Diamond { ends: [nx[0], nx[1]], mids: [x, y], edges });
    }
    out
}

/// Decomposes a 2-connected graph into a circular ordering of short Θ's,
/// or returns `None` when it is not one. Diamonds count as short Θ_2's
/// whose ends are their two degree-2 vertices.
fn theta_chain(g: &Graph) -> Option<ThetaChain> {
    let ds = diamonds(g);
    if ds.is_empty() {
        return plain_theta_chain(g, &BTreeSet::new());
    }
    // keep one midpoint of each diamond as a degree-2 stand-in
    let mut h = g.clone();
    let mut stand_in: BTreeMap<VertexId, usize> = BTreeMap::new();
    let (mut used, mut ends) = (BTreeSet::new(), BTreeSet::new());
    for (i, d) in ds.iter().enumerate() {
        if d.mids.iter().any(|v| used.contains(v) || ends.contains(v)) || d.ends.iter().any(|v| used.contains(v)) {
            continue;
        }
        used.extend(d.mids);
        ends.extend(d.ends);
        h.remove_vertex(d.mids[1]).ok()?;
        stand_in.insert(d.mids[0], i);
    }
    let mut chain = plain_theta_chain(&h, &stand_in.keys().copied().collect())?;
    for (&x, &i) in &stand_in {
        let blocks = &mut chain.blocks;
        let m = blocks.len();
        let j = blocks.iter().position(|b| b.r == 1 && b.ends[1] == x)?;
        let k = (j + 1) % m;
        if blocks[k].r != 1 || blocks[k].ends[0] != x || m < 2 {
            return None;
        }
        let d = &ds[i];
        let mut interior = d.mids.to_vec();
        interior.sort();
        let diamond = ThetaBlock { ends: [blocks[j].ends[0], blocks[k].ends[1]], r: 2, interior, edges: edge_triples(g, &d.edges) };
        blocks[j] = diamond;
        blocks.remove(k);
    }
    Some(chain)
}

fn plain_theta_chain(g: &Graph, closers: &BTreeSet<VertexId>) -> Option<ThetaChain> {
    let n = g.vertex_count();
    if n < 3 {
        return None;
    }
    let joint: Vec<bool> = (0..g.vertex_bound()).map(|i| g.has_vertex(VertexId(i as u32)) && g.degree(VertexId(i as u32)) >= 3).collect();
    let mut blocks = Vec::new();
    if !joint.iter().any(|&b| b) {
        // a cycle: one Θ_1 per edge, from the smallest vertex towards its smaller neighbour
        let start = g.vertices().next()?;
        let mut vs = vec![start];
        let mut es = Vec::new();
        let (mut prev, mut cur) = (start, start);
        loop {
            let &(next, e) = g.incident(cur).iter().find(|&&(w, _)| w != prev || cur == start && vs.len() == 1)?;
            es.push(e);
            vs.push(next);
            if next == start {
                break;
            }
            prev = cur;
            cur = next;
        }
        edge_blocks(g, &vs, &es, &mut blocks);
        return Some(ThetaChain { blocks });
    }

    let ts = threads(g, &joint);
    if ts.iter().any(|t| t.vertices[0] == *t.vertices.last().unwrap()) {
        return None;
    }
    let mut groups: BTreeMap<(VertexId, VertexId), Vec<&Thread>> = BTreeMap::new();
    for t in &ts {
        groups.entry((t.vertices[0], *t.vertices.last().unwrap())).or_default().push(t);
    }
    for list in groups.values_mut() {
        list.sort_by_key(|t| (t.edges.len(), t.vertices[1]));
    }

    if groups.len() == 1 {
        // two joints: the longest thread closes the circle, unless a
        // contracted diamond is there to do it
        let (&(x, y), list) = groups.iter().next().unwrap();
        let mut list = list.clone();
        if let Some(i) = list.iter().position(|t| t.edges.len() == 2 && closers.contains(&t.vertices[1])) {
            let t = list.remove(i);
            list.push(t);
        }
        let (long, short) = list.split_last()?;
        if short.len() < 2 || short.iter().any(|t| t.edges.len() > 2) {
            return None;
        }
        blocks.push(bundle_block(g, x, y, short));
        let (vs, es) = oriented(long, y);
        edge_blocks(g, &vs, &es, &mut blocks);
        return Some(ThetaChain { blocks });
    }

    let mut nbrs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(x, y) in groups.keys() {
        nbrs.entry(x).or_default().push(y);
        nbrs.entry(y).or_default().push(x);
    }
    if nbrs.values().any(|l| l.len() != 2) {
        return None;
    }
    let start = *nbrs.keys().next()?;
    let (mut prev, mut cur) = (start, start);
    let mut visited = 0;
    loop {
        let l = &nbrs[&cur];
        let next = if cur == start && visited == 0 { l[0].min(l[1]) } else if l[0] == prev { l[1] } else { l[0] };
        let key = (cur.min(next), cur.max(next));
        let list = &groups[&key];
        if list.len() == 1 {
            let (vs, es) = oriented(list[0], cur);
            edge_blocks(g, &vs, &es, &mut blocks);
        } else {
            if list.iter().any(|t| t.edges.len() > 2) {
                return None;
            }
            blocks.push(bundle_block(g, cur, next, list));
        }
        visited += 1;
        prev = cur;
        cur = next;
        if cur == start {
            break;
        }
        if visited > nbrs.len() {
            return None;
        }
    }
    (visited == nbrs.len()).then_some(ThetaChain { blocks })
}

/// Classifies a 2-connected graph as containing a 3-rung ladder or as
/// ladder-free with a structural certificate.
pub fn classify_ladder_free(g: &Graph) -> Result<Classification> {
    classify_ladder_free_with(g, &Budget::from_env())
}

pub fn classify_ladder_free_with(g: &Graph, budget: &Budget) -> Result<Classification> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if let Some(witness) = find_ladder3_with(g, &Default::default(), budget)? {
        return Ok(Classification::LadderFound { witness });
    }
    let longest = longest_cycle_with(g, budget)?.map_or(0, |c| c.len());
    if longest <= 4 {
        if let Some(theta) = recognize_short_theta(g, ThetaConvention::default()) {
            return Ok(Classification::ShortThetaResult { theta });
        }
    }
    if let Some(chain) = theta_chain(g) {
        debug_assert_eq!(chain.check(g), Ok(()));
        return Ok(Classification::ThetaChainResult { chain });
    }
    if g.vertex_count() < 6 {
        return Ok(Classification::SmallGraph { vertices: g.vertex_count() });
    }
    Err(Error::InvariantViolation("ladder-free graph on six or more vertices is not a circular ordering of short thetas".into()))
}

/// Classifies a 2-connected graph as containing a house or as a cycle or
/// short Θ_r. `K_4` is house-free and neither; it is reported as small.
pub fn classify_house_free(g: &Graph) -> Result<Classification> {
    classify_house_free_with(g, &Budget::from_env())
}

pub fn classify_house_free_with(g: &Graph, budget: &Budget) -> Result<Classification> {
    if !is_two_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    if let Some(witness) = find_house_with(g, &Default::default(), budget)? {
        return Ok(Classification::HouseFound { witness });
    }
    if g.vertices().all(|v| g.degree(v) == 2) {
        let cycle = longest_cycle_with(g, budget)?.ok_or(Error::NotTwoConnected)?;
        return Ok(Classification::CycleResult { cycle });
    }
    if let Some(theta) = recognize_short_theta(g, ThetaConvention::default()) {
        return Ok(Classification::ShortThetaResult { theta });
    }
    if g.vertex_count() < 6 {
        return Ok(Classification::SmallGraph { vertices: g.vertex_count() });
    }
    Err(Error::InvariantViolation("house-free graph is neither a cycle nor a short theta".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentCount {
    pub segments: usize,
    pub leaves: usize,
}

/// Counts maximal paths with degree-2 interiors, and leaves.
pub fn count_segments(t: &Graph) -> Result<SegmentCount> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    if t.vertex_count() < 2 {
        return Err(Error::TooSmall(format!("{} vertex", t.vertex_count())));
    }
    let joint: Vec<bool> = (0..t.vertex_bound())
        .map(|i| t.has_vertex(VertexId(i as u32)) && t.degree(VertexId(i as u32)) != 2)
        .collect();
    let segments = threads(t, &joint).len();
    let leaves = t.vertices().filter(|&v| t.degree(v) == 1).count();
    if segments > 2 * leaves {
        return Err(Error::InvariantViolation(format!("{segments} segments but {leaves} leaves")));
    }
    Ok(SegmentCount { segments, leaves })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let es: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &es)
    }

    #[test]
    fn c5_is_a_chain_of_edges() {
        let g = cycle(5);
        match classify_ladder_free(&g).unwrap() {
            Classification::ThetaChainResult { chain } => {
                assert_eq!(chain.blocks.len(), 5);
                assert!(chain.blocks.iter().all(|b| b.r == 1 && b.interior.is_empty()));
                chain.check(&g).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_is_a_diamond_and_an_edge() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        match classify_ladder_free(&g).unwrap() {
            Classification::ThetaChainResult { chain } => {
                chain.check(&g).unwrap();
                assert_eq!(chain.blocks.iter().map(|b| b.r).collect::<Vec<_>>(), vec![1, 2]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(classify_house_free(&g).unwrap(), Classification::SmallGraph { vertices: 4 });
    }

    #[test]
    fn ladder_and_house() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]);
        assert!(matches!(classify_ladder_free(&g).unwrap(), Classification::LadderFound { .. }));
        let house = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4)]);
        assert!(matches!(classify_house_free(&house).unwrap(), Classification::HouseFound { .. }));
        assert!(matches!(classify_house_free(&cycle(7)).unwrap(), Classification::CycleResult { .. }));
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert!(matches!(
            classify_house_free(&diamond).unwrap(),
            Classification::ShortThetaResult { theta } if theta.r == 2
        ));
    }

    #[test]
    fn two_joint_chain() {
        // K_{2,4}: x=0, y=1
        let g = Graph::from_edges(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)]);
        match classify_ladder_free(&g).unwrap() {
            Classification::ShortThetaResult { theta } => assert_eq!(theta.r, 4),
            other => panic!("{other:?}"),
        }
        let chain = theta_chain(&g).unwrap();
        chain.check(&g).unwrap();
        assert_eq!(chain.blocks[0].r, 3);
    }

    #[test]
    fn diamonds_are_short_thetas() {
        // K_4 with one edge stretched into a path
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (3, 4), (2, 5), (4, 6), (4, 5), (5, 6), (2, 6)]);
        match classify_ladder_free(&g).unwrap() {
            Classification::ThetaChainResult { chain } => {
                chain.check(&g).unwrap();
                let d: Vec<_> = chain.blocks.iter().filter(|b| b.interior.len() == 2).collect();
                assert_eq!(d.len(), 1);
                assert_eq!(d[0].interior, vec![VertexId(5), VertexId(6)]);
                assert_eq!(d[0].edges.len(), 5);
            }
            other => panic!("{other:?}"),
        }
        // two diamonds side by side
        let g = Graph::from_edges(6, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (3, 4)]);
        match classify_ladder_free(&g).unwrap() {
            Classification::ThetaChainResult { chain } => {
                chain.check(&g).unwrap();
                assert_eq!(chain.blocks.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_cut_vertices() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        assert_eq!(classify_ladder_free(&g), Err(Error::NotTwoConnected));
    }

    #[test]
    fn segments() {
        assert_eq!(count_segments(&Graph::from_edges(2, &[(0, 1)])).unwrap(), SegmentCount { segments: 1, leaves: 2 });
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(count_segments(&star).unwrap(), SegmentCount { segments: 3, leaves: 3 });
        assert_eq!(count_segments(&cycle(3)), Err(Error::NotATree));
        assert!(matches!(count_segments(&Graph::with_vertices(1)), Err(Error::TooSmall(_))));
    }
}
