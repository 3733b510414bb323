//! Maximum edge-disjoint packing of Θ-shaped expansions.
//!
//! All expansions are listed as edge bitmasks, then a branching search
//! uses the fact that a maximum packing always contains a member meeting
//! any fixed expansion `T` (otherwise `T` could be added).

use std::ops::ControlFlow;

use super::PatternKind;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::patterns::{find_theta, for_each_theta, ThetaFound};

/// Expansions listed before the exact search gives way to greedy packing.
pub const THETA_CAP: usize = 200_000;
/// Branching states for the exact search per block.
pub const PACK_LIMIT: u64 = 5_000_000;

#[derive(Clone, PartialEq, Eq)]
struct Mask(Vec<u64>);

impl Mask {
    fn of(t: &ThetaFound, g: &Graph) -> Mask {
        let mut m = vec![0u64; g.edge_bound().div_ceil(64)];
        for e in t.edge_set(g).iter() {
            m[e.index() / 64] |= 1 << (e.index() % 64);
        }
        Mask(m)
    }

    fn meets(&self, o: &Mask) -> bool {
        self.0.iter().zip(&o.0).any(|(a, b)| a & b != 0)
    }

    fn weight(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

fn best(masks: &[Mask], alive: &[usize], cap: usize, budget: &Budget) -> Result<Vec<usize>> {
    budget.tick()?;
    if cap == 0 || alive.is_empty() {
        return Ok(Vec::new());
    }
    let &t = alive.iter().min_by_key(|&&i| masks[i].weight()).unwrap();
    let mut out: Vec<usize> = Vec::new();
    for &s in alive.iter().filter(|&&s| masks[s].meets(&masks[t])) {
        let rest: Vec<usize> = alive.iter().copied().filter(|&i| !masks[i].meets(&masks[s])).collect();
        if rest.len() < out.len() {
            continue;
        }
        let sub = best(masks, &rest, cap - 1, budget)?;
        if sub.len() + 1 > out.len() {
            out = std::iter::once(s).chain(sub).collect();
            if out.len() == cap {
                break;
            }
        }
    }
    Ok(out)
}

/// Repeatedly takes the first expansion found and deletes its edges.
pub(crate) fn greedy_packing(g: &Graph, kind: PatternKind, cap: usize, budget: &Budget) -> Result<Vec<ThetaFound>> {
    let mut h = g.clone();
    let mut out = Vec::new();
    while out.len() < cap {
        let Some(t) = find_theta(&h, &kind.query(), &EdgeSet::new(), budget)? else { break };
        h = h.without_edges(t.edge_set(&h).iter().collect::<Vec<_>>().iter());
        out.push(t);
    }
    Ok(out)
}

/// Up to `cap` edge-disjoint expansions; the flag tells whether the count
/// is the exact maximum (capped at `cap`).
pub(crate) fn max_packing(g: &Graph, kind: PatternKind, cap: usize, budget: &Budget) -> Result<(Vec<ThetaFound>, bool)> {
    let mut found: Vec<ThetaFound> = Vec::new();
    let mut overflow = false;
    for_each_theta(g, &kind.query(), budget, |t| {
        if found.len() >= THETA_CAP {
            overflow = true;
            return ControlFlow::Break(());
        }
        found.push(t.clone());
        ControlFlow::Continue(())
    })?;
    if !overflow {
        let masks: Vec<Mask> = found.iter().map(|t| Mask::of(t, g)).collect();
        let alive: Vec<usize> = (0..masks.len()).collect();
        let local = Budget::new(PACK_LIMIT);
        match best(&masks, &alive, cap, &local) {
            Ok(pick) => {
                budget.charge(local.used())?;
                return Ok((pick.into_iter().map(|i| found[i].clone()).collect(), true));
            }
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((greedy_packing(g, kind, cap, budget)?, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_ladders() {
        let mut es = vec![(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (3, 4), (4, 5)];
        es.extend(es.clone().iter().map(|&(a, b)| (a + 6, b + 6)));
        let g = Graph::from_edges(12, &es);
        let (p, exact) = max_packing(&g, PatternKind::Ladder3, 3, &Budget::unlimited()).unwrap();
        assert!(exact);
        assert_eq!(p.len(), 2);
    }
}
