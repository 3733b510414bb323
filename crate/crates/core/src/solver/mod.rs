//! Packing-or-hitting solvers for the 3-rung ladder and the house.
//!
//! Pipeline per block of the input: exact maximum packing `ℓ`; if the
//! blocks together hold fewer than `k`, each block with `ℓ ≥ 1` gets a
//! hitting set for `ℓ + 1` expansions. That step strips smallest possible
//! expansions wholesale, takes a greedy vertex hitting set (the vertices
//! of a maximal family of vertex-disjoint expansions), and then removes
//! expansions through those vertices one at a time with the one-vertex
//! core, each time with the later hitting vertices deleted.

mod core;
mod pack;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::{blocks, EdgeId, EdgeSet, Graph, VertexId};
use crate::patterns::{
    find_house_with, find_ladder3_with, find_theta, validate, Pattern, SubdivisionWitness, ThetaFound, ThetaQuery,
};

pub use self::core::{path_ladders, preleaf_analysis, PreleafAnalysis};
pub use pack::{PACK_LIMIT, THETA_CAP};

use self::core::{core, CoreOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Ladder3,
    House,
}

impl PatternKind {
    pub fn query(self) -> ThetaQuery {
        match self {
            PatternKind::Ladder3 => ThetaQuery::ladder3(),
            PatternKind::House => ThetaQuery::house(),
        }
    }

    /// Edges of the smallest expansion.
    pub fn min_edges(self) -> usize {
        self.query().mins.iter().sum()
    }

    pub fn pattern(self) -> Pattern {
        match self {
            PatternKind::Ladder3 => Pattern::Ladder(3),
            PatternKind::House => Pattern::House,
        }
    }

    pub fn witness(self, t: &ThetaFound) -> SubdivisionWitness {
        match self {
            PatternKind::Ladder3 => t.as_ladder3(),
            PatternKind::House => t.as_house(),
        }
    }

    pub fn find(self, g: &Graph, budget: &Budget) -> Result<Option<SubdivisionWitness>> {
        match self {
            PatternKind::Ladder3 => find_ladder3_with(g, &EdgeSet::new(), budget),
            PatternKind::House => find_house_with(g, &EdgeSet::new(), budget),
        }
    }

    /// Hitting-set audit bound for the one-vertex case, where one exists.
    pub fn one_vertex_bound(self, k: usize) -> Option<usize> {
        match self {
            PatternKind::Ladder3 => Some(18 * k * k + 111 * k),
            PatternKind::House => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EppCertificate {
    Packing { pattern: PatternKind, witnesses: Vec<SubdivisionWitness> },
    HittingSet { pattern: PatternKind, edges: EdgeSet },
}

impl EppCertificate {
    pub fn pattern(&self) -> PatternKind {
        match self {
            EppCertificate::Packing { pattern, .. } | EppCertificate::HittingSet { pattern, .. } => *pattern,
        }
    }

    pub fn is_packing(&self) -> bool {
        matches!(self, EppCertificate::Packing { .. })
    }
}

/// Edges removed per phase of the hitting branch; the fields sum to `|X|`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Whole small expansions.
    pub strip: usize,
    /// Cuts against `A_v`-trees or `A_v`-paths.
    pub av_cut: usize,
    /// Edges at the hitting vertex.
    pub at_vertex: usize,
}

impl Tally {
    pub fn total(&self) -> usize {
        self.strip + self.av_cut + self.at_vertex
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSummary {
    pub v: VertexId,
    pub k: usize,
    pub tree_edges: usize,
    pub preleaves: usize,
    pub one_preleaves: usize,
    pub exchange_cap_hit: bool,
    pub outcome: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub branch: String,
    pub k: usize,
    pub blocks: usize,
    /// Per block with expansions: (maximum packing found, whether exact).
    pub block_packings: Vec<(usize, bool)>,
    pub tally: Tally,
    pub hitting_size: usize,
    pub one_vertex_bound: Option<usize>,
    pub core_calls: Vec<CoreSummary>,
    pub notes: Vec<String>,
    pub budget_used: u64,
}

pub fn solve_ladder3(g: &Graph, k: usize) -> Result<(EppCertificate, SolveReport)> {
    solve_with(g, k, PatternKind::Ladder3, &Budget::from_env())
}

pub fn solve_house(g: &Graph, k: usize) -> Result<(EppCertificate, SolveReport)> {
    solve_with(g, k, PatternKind::House, &Budget::from_env())
}

fn remove(g: &Graph, es: impl IntoIterator<Item = EdgeId>) -> Graph {
    let v: Vec<EdgeId> = es.into_iter().collect();
    g.without_edges(v.iter())
}

enum BlockResult {
    Packing(Vec<SubdivisionWitness>),
    Hitting(EdgeSet),
}

/// Hitting set for `want` expansions in one block, or a packing of `want`.
fn block_hitting(
    h: &Graph,
    want: usize,
    kind: PatternKind,
    budget: &Budget,
    report: &mut SolveReport,
) -> Result<BlockResult> {
    let mut cur = h.clone();
    let mut x = EdgeSet::new();
    let mut stripped: Vec<SubdivisionWitness> = Vec::new();
    let small = ThetaQuery { max_total: Some(kind.min_edges()), ..kind.query() };
    while let Some(t) = find_theta(&cur, &small, &EdgeSet::new(), budget)? {
        let es = t.edge_set(&cur);
        report.tally.strip += es.len();
        x.extend(es.iter());
        cur = remove(&cur, es.iter());
        stripped.push(kind.witness(&t));
        if stripped.len() == want {
            return Ok(BlockResult::Packing(stripped));
        }
    }
    let need = want - stripped.len();

    let mut tmp = cur.clone();
    let mut family = Vec::new();
    while let Some(w) = kind.find(&tmp, budget)? {
        tmp = tmp.without_vertices(w.vertex_ids());
        family.push(w);
    }
    if family.len() >= need {
        stripped.extend(family.into_iter().take(need));
        return Ok(BlockResult::Packing(stripped));
    }
    let mut hitting: Vec<VertexId> = Vec::new();
    for w in &family {
        for v in w.vertex_ids() {
            if !hitting.contains(&v) {
                hitting.push(v);
            }
        }
    }

    for (i, &v) in hitting.iter().enumerate() {
        let sub = cur.without_vertices(hitting[i + 1..].iter().copied());
        match core(&sub, v, need, kind, budget, &mut report.core_calls)? {
            CoreOutcome::Packing(ws) => {
                stripped.extend(ws);
                return Ok(BlockResult::Packing(stripped));
            }
            CoreOutcome::Hitting { av_cut, star } => {
                report.tally.av_cut += av_cut.len();
                report.tally.at_vertex += star.len();
                x.extend(av_cut.iter().chain(star.iter()));
                cur = remove(&cur, av_cut.iter().chain(star.iter()));
            }
        }
    }
    Ok(BlockResult::Hitting(x))
}

/// Either `k` edge-disjoint expansions of the pattern or an edge set
/// meeting all of them.
pub fn solve_with(g: &Graph, k: usize, kind: PatternKind, budget: &Budget) -> Result<(EppCertificate, SolveReport)> {
    let mut report = SolveReport { k, one_vertex_bound: kind.one_vertex_bound(k), ..Default::default() };
    let done = |cert: EppCertificate, mut report: SolveReport| {
        report.branch = if cert.is_packing() { "packing" } else { "hitting_set" }.into();
        report.budget_used = budget.used();
        Ok((cert, report))
    };
    if k == 0 {
        return done(EppCertificate::Packing { pattern: kind, witnesses: Vec::new() }, report);
    }
    let hs: Vec<Graph> = blocks(g).graphs(g).into_iter().filter(|h| h.edge_count() >= kind.min_edges()).collect();
    report.blocks = hs.len();
    let mut packs: Vec<Vec<SubdivisionWitness>> = Vec::new();
    for h in &hs {
        let (p, exact) = pack::max_packing(h, kind, k, budget)?;
        if !exact {
            report.notes.push("block packing fell back to greedy".into());
        }
        report.block_packings.push((p.len(), exact));
        packs.push(p.iter().map(|t| kind.witness(t)).collect());
    }
    let total = |packs: &[Vec<SubdivisionWitness>]| packs.iter().map(Vec::len).sum::<usize>();
    let take = |packs: Vec<Vec<SubdivisionWitness>>| packs.into_iter().flatten().take(k).collect();
    if total(&packs) >= k {
        return done(EppCertificate::Packing { pattern: kind, witnesses: take(packs) }, report);
    }

    report.notes.push("vertex hitting set: vertices of a maximal family of vertex-disjoint expansions".into());
    let mut x = EdgeSet::new();
    for (j, h) in hs.iter().enumerate() {
        loop {
            let have = packs[j].len();
            if have == 0 {
                break;
            }
            match block_hitting(h, have + 1, kind, budget, &mut report)? {
                BlockResult::Hitting(xj) => {
                    x.extend(xj.iter());
                    break;
                }
                BlockResult::Packing(ws) => {
                    packs[j] = ws;
                    if total(&packs) >= k {
                        return done(EppCertificate::Packing { pattern: kind, witnesses: take(packs) }, report);
                    }
                }
            }
        }
    }
    report.hitting_size = x.len();
    if report.tally.total() != x.len() {
        return Err(Error::InvariantViolation(format!("tally {} but |X| = {}", report.tally.total(), x.len())));
    }
    if let Some(w) = kind.find(&remove(g, x.iter()), budget)? {
        return Err(Error::AssumptionViolated(format!("expansion survives the hitting set: {:?}", w.vertex_ids())));
    }
    done(EppCertificate::HittingSet { pattern: kind, edges: x }, report)
}

/// The one-vertex case for 3-rung ladders: every ladder in `g` uses `v`.
pub fn solve_core_1v(g: &Graph, v: VertexId, k: usize) -> Result<(EppCertificate, SolveReport)> {
    solve_core_1v_with(g, v, k, PatternKind::Ladder3, &Budget::from_env())
}

pub fn solve_core_1v_with(
    g: &Graph,
    v: VertexId,
    k: usize,
    kind: PatternKind,
    budget: &Budget,
) -> Result<(EppCertificate, SolveReport)> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let mut report = SolveReport { k, one_vertex_bound: kind.one_vertex_bound(k), ..Default::default() };
    let cert = match core(g, v, k, kind, budget, &mut report.core_calls)? {
        CoreOutcome::Packing(witnesses) => EppCertificate::Packing { pattern: kind, witnesses },
        CoreOutcome::Hitting { av_cut, star } => {
            report.tally.av_cut = av_cut.len();
            report.tally.at_vertex = star.len();
            let edges: EdgeSet = av_cut.union(&star);
            report.hitting_size = edges.len();
            EppCertificate::HittingSet { pattern: kind, edges }
        }
    };
    report.branch = if cert.is_packing() { "packing" } else { "hitting_set" }.into();
    report.budget_used = budget.used();
    Ok((cert, report))
}

/// Independent check of a certificate: witnesses validate, are pairwise
/// edge-disjoint and number at least `k`; or no expansion survives `X`.
pub fn verify_certificate(g: &Graph, k: usize, cert: &EppCertificate) -> bool {
    match cert {
        EppCertificate::Packing { pattern, witnesses } => {
            if witnesses.len() < k {
                return false;
            }
            let mut used = BTreeSet::new();
            for w in witnesses {
                if w.pattern != pattern.pattern() || validate(g, w).is_err() {
                    return false;
                }
                let Some(es) = w.edge_ids(g) else { return false };
                if !es.into_iter().all(|e| used.insert(e)) {
                    return false;
                }
            }
            true
        }
        EppCertificate::HittingSet { pattern, edges } => {
            if !edges.is_subset_of(g) {
                return false;
            }
            let rest = remove(g, edges.iter());
            let budget = Budget::from_env();
            matches!(pattern.find(&rest, &budget), Ok(None))
        }
    }
}
