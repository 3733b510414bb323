//! The one-vertex case: every expansion passes through a fixed vertex `v`.
//!
//! A tree in `G - v` through all neighbours of `v` whose leaves are
//! neighbours of `v` organises the search. Preleaves are tree vertices
//! adjacent to a leaf; 1-preleaves are adjacent to exactly one.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CoreSummary, PatternKind};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{components, spanning_tree, EdgeId, EdgeSet, Graph, Path, VertexId};
use crate::patterns::{ladder3_from_theta, validate, SubdivisionWitness};
use crate::trees::{split_marked_tree, AmTreeOutcome, MarkedTree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreleafAnalysis {
    pub v: VertexId,
    /// Edges of the pruned tree (a forest when `G - v` is disconnected).
    pub tree: Vec<EdgeId>,
    pub leaves: Vec<VertexId>,
    pub preleaves: Vec<VertexId>,
    pub one_preleaves: Vec<VertexId>,
    pub exchanges: usize,
    pub cap_hit: bool,
}

/// Pruned forest from a spanning forest: repeatedly drop leaves that are
/// not neighbours of `v`.
fn prune(h: &Graph, forest: &[EdgeId], nbr: &BTreeSet<VertexId>) -> Graph {
    let mut t = h.spanning_subgraph(forest.iter().copied());
    loop {
        let drop: Vec<VertexId> = t.vertices().filter(|&x| t.degree(x) <= 1 && !nbr.contains(&x)).collect();
        if drop.is_empty() {
            return t;
        }
        t = t.without_vertices(drop);
    }
}

fn score(t: &Graph) -> (Vec<VertexId>, Vec<VertexId>, Vec<VertexId>) {
    let leaves: Vec<VertexId> = t.vertices().filter(|&x| t.degree(x) == 1).collect();
    let is_leaf: BTreeSet<VertexId> = leaves.iter().copied().collect();
    let mut pre = Vec::new();
    let mut one = Vec::new();
    for x in t.vertices() {
        let c = t.neighbors(x).filter(|w| is_leaf.contains(w)).count();
        if c >= 1 {
            pre.push(x);
        }
        if c == 1 {
            one.push(x);
        }
    }
    (leaves, pre, one)
}

/// Local exchange search maximising the number of preleaves, then
/// minimising the number of 1-preleaves; at most `10·|E|` accepted moves.
pub fn preleaf_analysis(g: &Graph, v: VertexId) -> Result<PreleafAnalysis> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let nbr: BTreeSet<VertexId> = g.neighbors(v).collect();
    let h0 = g.without_vertices([v]);
    let keep: Vec<VertexId> = components(&h0)
        .into_iter()
        .filter(|c| c.iter().any(|x| nbr.contains(x)))
        .flatten()
        .collect();
    let h = h0.induced(keep);
    let mut forest: Vec<EdgeId> = Vec::new();
    for c in components(&h) {
        forest.extend(spanning_tree(&h.induced(c))?.edge_ids());
    }
    let eval = |f: &[EdgeId]| {
        let t = prune(&h, f, &nbr);
        let (_, pre, one) = score(&t);
        (pre.len(), usize::MAX - one.len())
    };
    let cap = 10 * h.edge_count().max(1);
    let mut cur = eval(&forest);
    let mut exchanges = 0;
    let mut cap_hit = false;
    'outer: loop {
        let in_forest: BTreeSet<EdgeId> = forest.iter().copied().collect();
        let tg = h.spanning_subgraph(forest.iter().copied());
        for (e, x, y) in h.edges() {
            if in_forest.contains(&e) {
                continue;
            }
            let Some(p) = crate::graph::bfs_path(&tg, x, y, &|_| true) else { continue };
            for f in p.edges(&tg).unwrap() {
                let cand: Vec<EdgeId> = forest.iter().copied().filter(|&z| z != f).chain([e]).collect();
                let s = eval(&cand);
                if s > cur {
                    if exchanges >= cap {
                        cap_hit = true;
                        break 'outer;
                    }
                    forest = cand;
                    cur = s;
                    exchanges += 1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let t = prune(&h, &forest, &nbr);
    let (leaves, preleaves, one_preleaves) = score(&t);
    Ok(PreleafAnalysis { v, tree: t.edge_ids().collect(), leaves, preleaves, one_preleaves, exchanges, cap_hit })
}

/// Ladders from a path carrying neighbours of `v`: every five consecutive
/// neighbours give one ladder, and distinct ladders share only `v`.
pub fn path_ladders(g: &Graph, v: VertexId, path: &Path, n: usize) -> Vec<SubdivisionWitness> {
    let vs = path.vertices();
    let hits: Vec<usize> = (0..vs.len()).filter(|&i| vs[i] != v && g.is_adjacent(vs[i], v)).collect();
    hits.chunks_exact(5)
        .take(n)
        .map(|c| {
            let (i1, i3, i5) = (c[0], c[2], c[4]);
            let x3 = vs[i3];
            let mut p = vec![v];
            p.extend_from_slice(&vs[i1..=i3]);
            let mut q = vec![v];
            q.extend(vs[i3..=i5].iter().rev());
            ladder3_from_theta(v, x3, &[Path::new(vec![v, x3]), Path::new(p), Path::new(q)])
        })
        .collect()
}

/// The pattern found inside the subgraph formed by `edges`, validated in `g`.
fn witness_in(g: &Graph, edges: &[EdgeId], kind: PatternKind, budget: &Budget) -> Result<Option<SubdivisionWitness>> {
    let u = g.edge_subgraph(edges.iter().copied());
    Ok(kind.find(&u, budget)?.filter(|w| validate(g, w).is_ok()))
}

fn disjoint(g: &Graph, ws: &[SubdivisionWitness]) -> bool {
    let mut seen = BTreeSet::new();
    ws.iter().all(|w| w.edge_ids(g).is_some_and(|es| es.into_iter().all(|e| seen.insert(e))))
}

pub(crate) enum CoreOutcome {
    Packing(Vec<SubdivisionWitness>),
    Hitting { av_cut: EdgeSet, star: EdgeSet },
}

fn claim_one(
    g: &Graph,
    v: VertexId,
    k: usize,
    pa: &PreleafAnalysis,
    kind: PatternKind,
    budget: &Budget,
) -> Result<Option<Vec<SubdivisionWitness>>> {
    if pa.preleaves.len() < 6 * k {
        return Ok(None);
    }
    let t = g.edge_subgraph(pa.tree.iter().copied());
    let leaves: BTreeSet<VertexId> = pa.leaves.iter().copied().collect();
    let inner = t.without_vertices(pa.leaves.iter().copied());
    let mut out = Vec::new();
    for comp in components(&inner) {
        let marked: BTreeSet<VertexId> = comp.iter().copied().filter(|x| pa.preleaves.contains(x)).collect();
        let kc = (marked.len() / 6).min(k - out.len());
        if kc == 0 {
            continue;
        }
        let mt = MarkedTree { tree: inner.induced(comp.iter().copied()), marked };
        let split = split_marked_tree(&mt, kc, 3)?;
        for part in &split.parts {
            let mut es: Vec<EdgeId> = part.edges.iter().collect();
            for &a in part.owned.iter().take(3) {
                let l = t.neighbors(a).find(|w| leaves.contains(w)).expect("preleaf has a leaf");
                es.push(g.edge_between(a, l).unwrap());
                es.push(g.edge_between(l, v).unwrap());
            }
            match witness_in(g, &es, kind, budget)? {
                Some(w) => out.push(w),
                None => return Ok(None),
            }
        }
        if out.len() == k {
            break;
        }
    }
    Ok((out.len() == k && disjoint(g, &out)).then_some(out))
}

fn claim_two(
    g: &Graph,
    v: VertexId,
    k: usize,
    pa: &PreleafAnalysis,
    kind: PatternKind,
    budget: &Budget,
) -> Result<Option<Vec<SubdivisionWitness>>> {
    let t = g.edge_subgraph(pa.tree.iter().copied());
    let mut best: Option<(usize, Path)> = None;
    for (i, &l1) in pa.leaves.iter().enumerate() {
        for &l2 in &pa.leaves[i + 1..] {
            let Some(p) = crate::graph::bfs_path(&t, l1, l2, &|_| true) else { continue };
            let c = p.vertices().iter().filter(|&&x| g.is_adjacent(x, v)).count();
            if best.as_ref().is_none_or(|(b, _)| c > *b) {
                best = Some((c, p));
            }
        }
    }
    let Some((c, p)) = best else { return Ok(None) };
    if c < 5 * k {
        return Ok(None);
    }
    let ladders = path_ladders(g, v, &p, k);
    let ws = match kind {
        PatternKind::Ladder3 => ladders,
        PatternKind::House => {
            let mut out = Vec::new();
            for l in &ladders {
                match witness_in(g, &l.edge_ids(g).unwrap(), kind, budget)? {
                    Some(w) => out.push(w),
                    None => return Ok(None),
                }
            }
            out
        }
    };
    Ok((ws.len() == k && ws.iter().all(|w| validate(g, w).is_ok()) && disjoint(g, &ws)).then_some(ws))
}

/// Splits `v` into one copy per preleaf and looks for `A_v`-trees
/// (3 copies for ladders, 2 for houses). Returns a packing, or the cut
/// mapped back to edges of `g`.
fn av_phase(
    g: &Graph,
    v: VertexId,
    k: usize,
    pa: &PreleafAnalysis,
    kind: PatternKind,
    budget: &Budget,
) -> Result<std::result::Result<Vec<SubdivisionWitness>, EdgeSet>> {
    let mut s = g.without_vertices([v]);
    let mut back: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut copies = BTreeSet::new();
    let mut next_v = g.vertex_bound() as u32;
    let mut next_e = g.edge_bound() as u32;
    for &w in &pa.preleaves {
        let vi = VertexId(next_v);
        next_v += 1;
        s.insert_vertex(vi);
        copies.insert(vi);
        for x in g.neighbors(v) {
            if g.is_adjacent(x, w) {
                s.insert_edge(EdgeId(next_e), vi, x)?;
                back.insert(EdgeId(next_e), g.edge_between(v, x).unwrap());
                next_e += 1;
            }
        }
    }
    let m = match kind {
        PatternKind::Ladder3 => 3,
        PatternKind::House => 2,
    };
    let map = |e: EdgeId| back.get(&e).copied().unwrap_or(e);
    match crate::trees::am_tree_solve_inner(&s, &copies, m, k, budget, false)? {
        AmTreeOutcome::Packing { trees } => {
            let mut ws = Vec::new();
            for t in &trees {
                let es: Vec<EdgeId> = t.edges.iter().map(|&e| map(e)).collect();
                match witness_in(g, &es, kind, budget)? {
                    Some(w) => ws.push(w),
                    None => return Ok(Err(EdgeSet::new())),
                }
            }
            if disjoint(g, &ws) {
                Ok(Ok(ws))
            } else {
                Ok(Err(EdgeSet::new()))
            }
        }
        AmTreeOutcome::HittingSet { edges } => Ok(Err(edges.iter().map(map).collect())),
    }
}

pub(crate) fn core(
    g: &Graph,
    v: VertexId,
    k: usize,
    kind: PatternKind,
    budget: &Budget,
    log: &mut Vec<CoreSummary>,
) -> Result<CoreOutcome> {
    if k == 0 {
        return Ok(CoreOutcome::Packing(Vec::new()));
    }
    if kind.find(g, budget)?.is_none() {
        return Ok(CoreOutcome::Hitting { av_cut: EdgeSet::new(), star: EdgeSet::new() });
    }
    let pa = preleaf_analysis(g, v)?;
    let mut summary = CoreSummary {
        v,
        k,
        tree_edges: pa.tree.len(),
        preleaves: pa.preleaves.len(),
        one_preleaves: pa.one_preleaves.len(),
        exchange_cap_hit: pa.cap_hit,
        outcome: String::new(),
    };
    if let Some(ws) = claim_one(g, v, k, &pa, kind, budget)? {
        summary.outcome = "preleaf packing".into();
        log.push(summary);
        return Ok(CoreOutcome::Packing(ws));
    }
    if let Some(ws) = claim_two(g, v, k, &pa, kind, budget)? {
        summary.outcome = "path packing".into();
        log.push(summary);
        return Ok(CoreOutcome::Packing(ws));
    }
    let av_cut = match av_phase(g, v, k, &pa, kind, budget)? {
        Ok(ws) => {
            summary.outcome = "A_v-tree packing".into();
            log.push(summary);
            return Ok(CoreOutcome::Packing(ws));
        }
        Err(cut) => cut,
    };
    let rest = g.without_edges(av_cut.iter().collect::<Vec<_>>().iter());
    // remaining expansions all use edges at v: keep a minimal set of them
    let mut star: Vec<EdgeId> = rest.incident(v).iter().map(|&(_, e)| e).collect();
    star.sort();
    let mut i = 0;
    while i < star.len() {
        let trial: Vec<EdgeId> = star.iter().copied().filter(|&e| e != star[i]).collect();
        if kind.find(&rest.without_edges(trial.iter()), budget)?.is_none() {
            star = trial;
        } else {
            i += 1;
        }
    }
    let after = rest.without_edges(star.iter());
    if let Some(w) = kind.find(&after, budget)? {
        return Err(Error::AssumptionViolated(format!(
            "an expansion avoids vertex {v}: {:?}",
            w.vertex_ids()
        )));
    }
    summary.outcome = format!("hitting set: {} cut, {} at v", av_cut.len(), star.len());
    log.push(summary);
    Ok(CoreOutcome::Hitting { av_cut, star: star.into_iter().collect() })
}
