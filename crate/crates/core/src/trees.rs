//! Marked-tree splitting and the packing-or-hitting algorithm for
//! A-m-trees (trees containing at least `m` vertices of a set `A`).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{components, edge_disjoint_paths_to_set, is_tree, spanning_tree, EdgeId, EdgeSet, Graph, VertexId};

/// States the exact packing search may visit before giving up and keeping
/// the hitting set.
pub const COMPLETION_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTree {
    pub tree: Graph,
    pub marked: BTreeSet<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPart {
    pub edges: EdgeSet,
    /// Marked vertices assigned to this part; no vertex is assigned twice.
    pub owned: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSplit {
    pub parts: Vec<SplitPart>,
}

impl TreeSplit {
    pub fn check(&self, t: &MarkedTree, m: usize) -> std::result::Result<(), String> {
        let mut seen_e = BTreeSet::new();
        let mut seen_v = BTreeSet::new();
        for (p, part) in self.parts.iter().enumerate() {
            for e in part.edges.iter() {
                if !t.tree.has_edge(e) || !seen_e.insert(e) {
                    return Err(format!("part {p}: edge {e} missing or reused"));
                }
            }
            let sub = t.tree.edge_subgraph(part.edges.iter());
            if part.edges.is_empty() {
                if part.owned.len() > 1 {
                    return Err(format!("part {p}: edgeless part owns several vertices"));
                }
            } else if !is_tree(&sub) {
                return Err(format!("part {p} is not a tree"));
            }
            if part.owned.len() < m {
                return Err(format!("part {p} owns {} < {m} marks", part.owned.len()));
            }
            for &v in &part.owned {
                let inside = if part.edges.is_empty() { t.tree.has_vertex(v) } else { sub.has_vertex(v) };
                if !t.marked.contains(&v) || !inside || !seen_v.insert(v) {
                    return Err(format!("part {p}: bad owned vertex {v}"));
                }
            }
        }
        if seen_e.len() != t.tree.edge_count() {
            return Err("parts do not cover the tree".into());
        }
        Ok(())
    }
}

/// One binary split: returns (edges of T1, marks owned by T1, cut vertex).
fn split_once(t: &Graph, marks: &BTreeSet<VertexId>, m: usize) -> (Vec<EdgeId>, Vec<VertexId>, VertexId) {
    let root = t.vertices().next().expect("nonempty tree");
    let n = t.vertex_bound();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut order = vec![root];
    let mut seen = vec![false; n];
    seen[root.index()] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &(w, e) in t.incident(u) {
            if !seen[w.index()] {
                seen[w.index()] = true;
                parent[w.index()] = Some((u, e));
                order.push(w);
            }
        }
    }
    let mut children: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for &v in &order[1..] {
        let (p, e) = parent[v.index()].unwrap();
        children[p.index()].push((v, e));
    }
    let mut cnt = vec![0usize; n];
    let mut pick = root;
    for &v in order.iter().rev() {
        cnt[v.index()] = usize::from(marks.contains(&v)) + children[v.index()].iter().map(|(c, _)| cnt[c.index()]).sum::<usize>();
    }
    // deepest vertex carrying at least m marks: all of its children carry fewer
    for &v in order.iter().rev() {
        if cnt[v.index()] >= m && children[v.index()].iter().all(|(c, _)| cnt[c.index()] < m) {
            pick = v;
            break;
        }
    }
    let subtree = |c: VertexId, es: &mut Vec<EdgeId>, owned: &mut Vec<VertexId>| {
        let mut stack = vec![c];
        while let Some(u) = stack.pop() {
            if marks.contains(&u) {
                owned.push(u);
            }
            for &(w, e) in &children[u.index()] {
                es.push(e);
                stack.push(w);
            }
        }
    };
    let mut es = Vec::new();
    let mut owned = Vec::new();
    for &(c, e) in &children[pick.index()] {
        if owned.len() >= m {
            break;
        }
        es.push(e);
        subtree(c, &mut es, &mut owned);
    }
    if owned.len() < m {
        // children hold m-1 marks in total and `pick` is marked
        owned.push(pick);
    }
    owned.sort();
    (es, owned, pick)
}

/// Splits a marked tree into `k` edge-disjoint subtrees that cover it, each
/// owning at least `m` marked vertices of its own.
pub fn split_marked_tree(t: &MarkedTree, k: usize, m: usize) -> Result<TreeSplit> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidParams("k and m must be positive".into()));
    }
    if !is_tree(&t.tree) {
        return Err(Error::NotATree);
    }
    let have = t.marked.iter().filter(|v| t.tree.has_vertex(**v)).count();
    if have < 2 * m * k {
        return Err(Error::TooFewMarks { have, need: 2 * m * k });
    }
    let mut rest = t.tree.clone();
    let mut marks: BTreeSet<VertexId> = t.marked.iter().copied().filter(|v| t.tree.has_vertex(*v)).collect();
    let mut parts = Vec::with_capacity(k);
    for _ in 1..k {
        let (es, owned, cut) = split_once(&rest, &marks, m);
        let t1 = rest.edge_subgraph(es.iter().copied());
        for &v in &owned {
            marks.remove(&v);
        }
        let drop: Vec<VertexId> = t1.vertices().filter(|&v| v != cut).collect();
        rest = rest.without_vertices(drop);
        parts.push(SplitPart { edges: es.into_iter().collect(), owned });
    }
    parts.push(SplitPart { edges: rest.edge_ids().collect(), owned: marks.into_iter().collect() });
    Ok(TreeSplit { parts })
}

/// A tree given by its host vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmTree {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl AmTree {
    pub fn to_graph(&self, g: &Graph) -> Graph {
        let mut t = g.edge_subgraph(self.edges.iter().copied());
        for &v in &self.vertices {
            t.insert_vertex(v);
        }
        t
    }

    fn from_graph(t: &Graph) -> Self {
        AmTree { vertices: t.vertices().collect(), edges: t.edge_ids().collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmTreeOutcome {
    Packing { trees: Vec<AmTree> },
    HittingSet { edges: EdgeSet },
}

/// True iff `t` is a tree with at least `m` vertices of `a`.
pub fn verify_am_tree(t: &Graph, a: &BTreeSet<VertexId>, m: usize) -> bool {
    is_tree(t) && t.vertices().filter(|v| a.contains(v)).count() >= m
}

pub fn am_tree_solve(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize) -> Result<AmTreeOutcome> {
    am_tree_solve_with(g, a, m, k, &Budget::from_env())
}

/// Either `k` edge-disjoint A-m-trees or at most `2m²k²` edges meeting
/// all of them. When the inductive argument ends in a hitting set, a
/// bounded exact search still looks for a packing.
pub fn am_tree_solve_with(
    g: &Graph,
    a: &BTreeSet<VertexId>,
    m: usize,
    k: usize,
    budget: &Budget,
) -> Result<AmTreeOutcome> {
    am_tree_solve_inner(g, a, m, k, budget, true)
}

pub(crate) fn am_tree_solve_inner(
    g: &Graph,
    a: &BTreeSet<VertexId>,
    m: usize,
    k: usize,
    budget: &Budget,
    complete: bool,
) -> Result<AmTreeOutcome> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidParams("k and m must be positive".into()));
    }
    let a: BTreeSet<VertexId> = a.iter().copied().filter(|v| g.has_vertex(*v)).collect();
    let out = solve_general(g, &a, m, k, budget)?;
    if let AmTreeOutcome::HittingSet { edges } = &out {
        if edges.len() > 2 * m * m * k * k {
            return Err(Error::InvariantViolation(format!("hitting set of {} edges", edges.len())));
        }
        if complete && !edges.is_empty() {
            let local = Budget::new(COMPLETION_LIMIT);
            if let Ok(Some(trees)) = exact_packing(g, &a, m, k, &local) {
                return Ok(AmTreeOutcome::Packing { trees });
            }
        }
    }
    Ok(out)
}

fn count_in(vs: &[VertexId], a: &BTreeSet<VertexId>) -> usize {
    vs.iter().filter(|v| a.contains(v)).count()
}

fn solve_general(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize, budget: &Budget) -> Result<AmTreeOutcome> {
    let rich: Vec<Vec<VertexId>> = components(g).into_iter().filter(|c| count_in(c, a) >= m).collect();
    if rich.len() >= k {
        let trees = rich[..k]
            .iter()
            .map(|c| spanning_tree(&g.induced(c.iter().copied())).map(|t| AmTree::from_graph(&t)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(AmTreeOutcome::Packing { trees });
    }
    let mut trees = Vec::new();
    let mut hit = EdgeSet::new();
    for c in &rich {
        let h = g.induced(c.iter().copied());
        let mut best = vec![AmTree::from_graph(&spanning_tree(&h)?)];
        for j in 2..=k {
            match solve_connected(&h, a, m, j, budget)? {
                AmTreeOutcome::Packing { trees: t } => {
                    if j == k {
                        return Ok(AmTreeOutcome::Packing { trees: t });
                    }
                    best = t;
                }
                AmTreeOutcome::HittingSet { edges } => {
                    hit.extend(edges.iter());
                    break;
                }
            }
        }
        trees.extend(best);
    }
    if trees.len() >= k {
        trees.truncate(k);
        return Ok(AmTreeOutcome::Packing { trees });
    }
    Ok(AmTreeOutcome::HittingSet { edges: hit })
}

/// The inductive step on a connected graph.
fn solve_connected(h: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize, budget: &Budget) -> Result<AmTreeOutcome> {
    budget.tick()?;
    let in_a: Vec<VertexId> = h.vertices().filter(|v| a.contains(v)).collect();
    if in_a.len() < m {
        return Ok(AmTreeOutcome::HittingSet { edges: EdgeSet::new() });
    }
    if in_a.len() >= 2 * m * k {
        let t = spanning_tree(h)?;
        let split = split_marked_tree(&MarkedTree { tree: t.clone(), marked: in_a.iter().copied().collect() }, k, m)?;
        let trees = split
            .parts
            .iter()
            .map(|p| {
                let mut vs: Vec<VertexId> = t.edge_subgraph(p.edges.iter()).vertices().collect();
                if vs.is_empty() {
                    vs = p.owned.clone();
                }
                AmTree { vertices: vs, edges: p.edges.iter().collect() }
            })
            .collect();
        return Ok(AmTreeOutcome::Packing { trees });
    }

    let root = in_a[0];
    // pendant gadget: k fresh vertices hanging off every other A-vertex
    let mut aux = h.clone();
    let real_edges = h.edge_bound();
    let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut next_v = h.vertex_bound() as u32;
    let mut next_e = real_edges as u32;
    for &v in &in_a[1..] {
        for _ in 0..k {
            let p = VertexId(next_v);
            next_v += 1;
            aux.insert_vertex(p);
            aux.insert_edge(EdgeId(next_e), v, p)?;
            next_e += 1;
            owner.insert(p, v);
        }
    }
    let sinks: Vec<VertexId> = owner.keys().copied().collect();
    let need = (m - 1) * k;
    let flow = edge_disjoint_paths_to_set(&aux, root, &sinks, need)?;

    if flow.value >= need {
        let mut by_set: BTreeMap<VertexId, Vec<Vec<VertexId>>> = BTreeMap::new();
        for p in flow.paths {
            let vs = p.vertices();
            let end = *vs.last().unwrap();
            by_set.entry(owner[&end]).or_default().push(vs[..vs.len() - 1].to_vec());
        }
        let mut trees = Vec::with_capacity(k);
        for _ in 0..k {
            let mut sets: Vec<(usize, VertexId)> =
                by_set.iter().filter(|(_, l)| !l.is_empty()).map(|(&v, l)| (l.len(), v)).collect();
            sets.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
            if sets.len() + 1 < m {
                return Err(Error::InvariantViolation("path ends spread over too few sets".into()));
            }
            let mut es = Vec::new();
            for &(_, v) in &sets[..m - 1] {
                let path = by_set.get_mut(&v).unwrap().pop().unwrap();
                for w in path.windows(2) {
                    es.push(h.edge_between(w[0], w[1]).expect("path edge"));
                }
            }
            let mut union = h.edge_subgraph(es);
            union.insert_vertex(root);
            trees.push(AmTree::from_graph(&spanning_tree(&union)?));
        }
        return Ok(AmTreeOutcome::Packing { trees });
    }

    let cut = flow.cut.expect("cut below bound");
    let real: Vec<EdgeId> = cut.iter().filter(|e| e.index() < real_edges).collect();
    let rest = h.without_edges(real.iter());
    let root_side = crate::graph::component_of(&rest, root);
    if count_in(&root_side, a) >= m {
        return Err(Error::InvariantViolation("root component keeps m A-vertices after the cut".into()));
    }
    let rest = rest.without_vertices(root_side);
    match solve_general(&rest, a, m, k, budget)? {
        AmTreeOutcome::HittingSet { mut edges } => {
            edges.extend(real);
            Ok(AmTreeOutcome::HittingSet { edges })
        }
        packing => Ok(packing),
    }
}

/// Enumerates subtrees rooted at `root` with exactly `m` A-vertices, all
/// leaves in A, no A-vertex below `root`; include/exclude on frontier edges.
struct TreeEnum<'a> {
    g: &'a Graph,
    a: &'a BTreeSet<VertexId>,
    m: usize,
    root: VertexId,
    budget: &'a Budget,
    in_tree: Vec<bool>,
    banned: Vec<bool>,
    edges: Vec<EdgeId>,
}

impl TreeEnum<'_> {
    fn run(&mut self, count: usize, frontier: Vec<EdgeId>, emit: &mut dyn FnMut(&[EdgeId]) -> Result<bool>) -> Result<bool> {
        self.budget.tick()?;
        if count == self.m {
            let t = self.g.edge_subgraph(self.edges.iter().copied());
            if t.vertices().all(|v| t.degree(v) != 1 || self.a.contains(&v)) {
                return emit(&self.edges);
            }
            return Ok(false);
        }
        let mut frontier = frontier;
        while let Some(e) = frontier.pop() {
            if self.banned[e.index()] {
                continue;
            }
            let (u, v) = self.g.endpoints(e).unwrap();
            let w = if self.in_tree[u.index()] { v } else { u };
            if self.in_tree[w.index()] {
                continue;
            }
            // include e
            self.in_tree[w.index()] = true;
            self.edges.push(e);
            let mut next = frontier.clone();
            for &(x, f) in self.g.incident(w) {
                if !self.in_tree[x.index()] && !self.banned[f.index()] && !(self.a.contains(&x) && x < self.root) {
                    next.push(f);
                }
            }
            let gained = usize::from(self.a.contains(&w));
            let done = self.run(count + gained, next, emit)?;
            self.edges.pop();
            self.in_tree[w.index()] = false;
            if done {
                return Ok(true);
            }
            // exclude e for the rest of this branch
            self.banned[e.index()] = true;
            let done = self.run(count, frontier.clone(), emit);
            self.banned[e.index()] = false;
            return done;
        }
        Ok(false)
    }
}

fn for_each_min_tree(
    g: &Graph,
    a: &BTreeSet<VertexId>,
    m: usize,
    budget: &Budget,
    emit: &mut dyn FnMut(&[EdgeId]) -> Result<bool>,
) -> Result<bool> {
    for &root in a {
        let mut en = TreeEnum {
            g,
            a,
            m,
            root,
            budget,
            in_tree: vec![false; g.vertex_bound()],
            banned: vec![false; g.edge_bound()],
            edges: Vec::new(),
        };
        en.in_tree[root.index()] = true;
        let frontier: Vec<EdgeId> = g
            .incident(root)
            .iter()
            .filter(|(x, _)| !(a.contains(x) && *x < root))
            .map(|&(_, f)| f)
            .collect();
        if en.run(1, frontier, emit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Exhaustive search for `k` edge-disjoint A-m-trees.
fn exact_packing(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize, budget: &Budget) -> Result<Option<Vec<AmTree>>> {
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if m == 1 {
        let v = a.iter().next().copied();
        return Ok(v.map(|v| vec![AmTree { vertices: vec![v], edges: vec![] }; k]));
    }
    let mut found = None;
    for_each_min_tree(g, a, m, budget, &mut |es| {
        let rest = g.without_edges(es.iter());
        if let Some(mut more) = exact_packing(&rest, a, m, k - 1, budget)? {
            more.push(AmTree::from_graph(&g.edge_subgraph(es.iter().copied())));
            found = Some(more);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[u32]) -> BTreeSet<VertexId> {
        vs.iter().map(|&v| VertexId(v)).collect()
    }

    fn check_packing(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize, out: &AmTreeOutcome) {
        let AmTreeOutcome::Packing { trees } = out else { panic!("expected packing: {out:?}") };
        assert_eq!(trees.len(), k);
        let mut used = BTreeSet::new();
        for t in trees {
            assert!(verify_am_tree(&t.to_graph(g), a, m));
            for &e in &t.edges {
                assert!(used.insert(e));
            }
        }
    }

    #[test]
    fn path_split() {
        let t = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
        let mt = MarkedTree { tree: t, marked: set(&[0, 1, 2, 3, 4, 5, 6]) };
        let s = split_marked_tree(&mt, 3, 1).unwrap();
        assert_eq!(s.parts.len(), 3);
        s.check(&mt, 1).unwrap();
    }

    #[test]
    fn star_split() {
        let t = Graph::from_edges(9, &(1..9).map(|i| (0, i)).collect::<Vec<_>>());
        let mt = MarkedTree { tree: t, marked: set(&[1, 2, 3, 4, 5, 6, 7, 8]) };
        let s = split_marked_tree(&mt, 2, 2).unwrap();
        s.check(&mt, 2).unwrap();
        let few = MarkedTree { marked: set(&[1, 2, 3]), ..mt };
        assert_eq!(split_marked_tree(&few, 2, 1), Err(Error::TooFewMarks { have: 3, need: 4 }));
    }

    #[test]
    fn two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let a = set(&[0, 1, 2, 3, 4, 5]);
        check_packing(&g, &a, 3, 2, &am_tree_solve(&g, &a, 3, 2).unwrap());
    }

    #[test]
    fn star_hits() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let a = set(&[1, 2, 3, 4]);
        let AmTreeOutcome::HittingSet { edges } = am_tree_solve(&g, &a, 3, 2).unwrap() else { panic!() };
        let rest = g.without_edges(edges.iter().collect::<Vec<_>>().iter());
        for c in components(&rest) {
            assert!(count_in(&c, &a) < 3);
        }
    }

    #[test]
    fn too_few_terminals() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            am_tree_solve(&g, &set(&[0, 2]), 3, 1).unwrap(),
            AmTreeOutcome::HittingSet { edges: EdgeSet::new() }
        );
    }

    #[test]
    fn path_completion() {
        // the flow step alone cuts this path; the exact search recovers the tree pair
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let a = set(&[0, 1, 2, 3, 4]);
        check_packing(&g, &a, 2, 2, &am_tree_solve(&g, &a, 2, 2).unwrap());
    }

    #[test]
    fn verify() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(verify_am_tree(&p, &set(&[0, 1, 2]), 3));
        assert!(!verify_am_tree(&p, &set(&[0, 1]), 3));
        let c = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(!verify_am_tree(&c, &set(&[0, 1, 2]), 3));
    }
}
