//! (a-b, c-d)-linkages: vertex-disjoint unions of an a-b path and a c-d path.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{bfs_path, EdgeSet, Graph, Path, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageWitness {
    pub path_ab: Path,
    pub path_cd: Path,
}

impl LinkageWitness {
    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<crate::graph::EdgeId>> {
        let mut v = self.path_ab.edges(g)?;
        v.extend(self.path_cd.edges(g)?);
        v.sort();
        Some(v)
    }
}

fn check_ends(g: &Graph, ends: [VertexId; 4]) -> Result<()> {
    for (i, &v) in ends.iter().enumerate() {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        if ends[..i].contains(&v) {
            return Err(Error::SameVertex(v));
        }
    }
    Ok(())
}

/// Depth-first enumeration of a-b paths that avoid `c`,`d` and leave `c`
/// and `d` connected; `visit` sees each complete path.
fn for_each_ab_path(
    g: &Graph,
    [a, b, c, d]: [VertexId; 4],
    budget: &Budget,
    visit: &mut dyn FnMut(&[VertexId], &[bool]) -> Result<bool>,
) -> Result<bool> {
    let mut on = vec![false; g.vertex_bound()];
    on[a.index()] = true;
    let mut path = vec![a];
    fn rec(
        g: &Graph,
        ends: [VertexId; 4],
        budget: &Budget,
        on: &mut Vec<bool>,
        path: &mut Vec<VertexId>,
        visit: &mut dyn FnMut(&[VertexId], &[bool]) -> Result<bool>,
    ) -> Result<bool> {
        budget.tick()?;
        let [_, b, c, d] = ends;
        let tip = *path.last().unwrap();
        if bfs_path(g, c, d, &|v| !on[v.index()]).is_none() {
            return Ok(false);
        }
        if tip == b {
            return visit(path, on);
        }
        let nbrs: Vec<VertexId> = g.neighbors(tip).collect();
        for w in nbrs {
            if on[w.index()] || w == c || w == d {
                continue;
            }
            on[w.index()] = true;
            path.push(w);
            let stop = rec(g, ends, budget, on, path, visit)?;
            path.pop();
            on[w.index()] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    rec(g, [a, b, c, d], budget, &mut on, &mut path, visit)
}

pub fn find_linkage(
    g: &Graph,
    ends: [VertexId; 4],
    forbidden: &EdgeSet,
) -> Result<Option<LinkageWitness>> {
    find_linkage_with(g, ends, forbidden, &Budget::from_env())
}

pub fn find_linkage_with(
    g: &Graph,
    ends: [VertexId; 4],
    forbidden: &EdgeSet,
    budget: &Budget,
) -> Result<Option<LinkageWitness>> {
    check_ends(g, ends)?;
    let h = g.without_edges(forbidden.iter().collect::<Vec<_>>().iter());
    let [_, _, c, d] = ends;
    let mut out = None;
    for_each_ab_path(&h, ends, budget, &mut |p, on| {
        let q = bfs_path(&h, c, d, &|v| !on[v.index()]).expect("pruning keeps c-d connected");
        out = Some(LinkageWitness { path_ab: Path::new(p.to_vec()), path_cd: q });
        Ok(true)
    })?;
    Ok(out)
}

/// Edge sets of all linkages in `g`, as bitsets over edge ids.
fn all_linkages(g: &Graph, ends: [VertexId; 4], budget: &Budget) -> Result<Vec<Vec<u64>>> {
    check_ends(g, ends)?;
    let [_, _, c, d] = ends;
    let words = g.edge_bound().div_ceil(64).max(1);
    let mut out = Vec::new();
    for_each_ab_path(g, ends, budget, &mut |p, on| {
        let mut base = vec![0u64; words];
        for w in p.windows(2) {
            let e = g.edge_between(w[0], w[1]).unwrap().index();
            base[e / 64] |= 1 << (e % 64);
        }
        // all c-d paths in the rest
        let mut used = on.to_vec();
        used[c.index()] = true;
        let mut stack = vec![c];
        let mut bits = base.clone();
        fn rec(
            g: &Graph,
            d: VertexId,
            budget: &Budget,
            used: &mut Vec<bool>,
            stack: &mut Vec<VertexId>,
            bits: &mut Vec<u64>,
            out: &mut Vec<Vec<u64>>,
        ) -> Result<()> {
            budget.tick()?;
            let tip = *stack.last().unwrap();
            if tip == d {
                out.push(bits.clone());
                return Ok(());
            }
            let inc: Vec<(VertexId, crate::graph::EdgeId)> = g.incident(tip).to_vec();
            for (w, e) in inc {
                if used[w.index()] {
                    continue;
                }
                used[w.index()] = true;
                stack.push(w);
                bits[e.index() / 64] |= 1 << (e.index() % 64);
                rec(g, d, budget, used, stack, bits, out)?;
                bits[e.index() / 64] &= !(1 << (e.index() % 64));
                stack.pop();
                used[w.index()] = false;
            }
            Ok(())
        }
        rec(g, d, budget, &mut used, &mut stack, &mut bits, &mut out)?;
        Ok(false)
    })?;
    Ok(out)
}

/// Number of distinct linkages (pairs of paths) in `g`.
pub fn count_linkages(g: &Graph, ends: [VertexId; 4], budget: &Budget) -> Result<usize> {
    Ok(all_linkages(g, ends, budget)?.len())
}

pub fn max_edge_disjoint_linkages(g: &Graph, ends: [VertexId; 4]) -> Result<usize> {
    max_edge_disjoint_linkages_with(g, ends, &Budget::from_env())
}

/// Maximum number of pairwise edge-disjoint linkages, by exhaustive search.
pub fn max_edge_disjoint_linkages_with(g: &Graph, ends: [VertexId; 4], budget: &Budget) -> Result<usize> {
    let sets = all_linkages(g, ends, budget)?;
    let disjoint = |x: &[u64], y: &[u64]| x.iter().zip(y).all(|(p, q)| p & q == 0);
    fn best(
        sets: &[Vec<u64>],
        cand: &[usize],
        budget: &Budget,
        disjoint: &dyn Fn(&[u64], &[u64]) -> bool,
    ) -> Result<usize> {
        let mut top = 0;
        for (i, &s) in cand.iter().enumerate() {
            budget.tick()?;
            if 1 + cand.len() - i - 1 <= top {
                break;
            }
            let rest: Vec<usize> = cand[i + 1..].iter().copied().filter(|&t| disjoint(&sets[s], &sets[t])).collect();
            top = top.max(1 + best(sets, &rest, budget, disjoint)?);
        }
        Ok(top)
    }
    let all: Vec<usize> = (0..sets.len()).collect();
    best(&sets, &all, budget, &disjoint)
}
