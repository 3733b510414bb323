//! Exhaustive small-instance checks of the structural lemmas about walls
//! and G*, plus a seeded fuzzer for cross-module invariants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::constructions::{embed_ladder13, embed_xwing, witness_ladder_l, CondensedWall, CounterexampleGraph};
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, max_edge_disjoint_paths, EdgeId, EdgeSet, Graph, VertexId};
use crate::io::{export_graph, Labels};
use crate::patterns::{find_ladder3, max_edge_disjoint_linkages_with, max_ladder_size_with, validate, Pattern};
use crate::solver::{solve_with, verify_certificate, PatternKind};
use crate::structure::{classify_ladder_free, Classification};

/// Deletion sets enumerated before switching to sampling.
pub const ENUMERATION_CAP: u64 = 1_000_000;
/// Samples drawn when the deletion sets are too many to enumerate.
pub const SAMPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    HoldsSampled,
    Counterexample,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub instance: String,
    pub claim: String,
    pub verdict: Verdict,
    pub counterexample: Option<String>,
    pub cases: u64,
    pub states: u64,
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn new(lemma: &str, instance: String, claim: &str) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            instance,
            claim: claim.into(),
            verdict: Verdict::Holds,
            counterexample: None,
            cases: 0,
            states: 0,
            notes: Vec::new(),
        }
    }

    fn fail(&mut self, what: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(what);
        }
        self.verdict = Verdict::Counterexample;
    }

    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::HoldsSampled)
    }
}

/// At most one edge-disjoint (a-b, c-d)-linkage.
pub fn check_no_two_linkages(w: &CondensedWall, budget: &Budget) -> Result<LemmaReport> {
    if w.r > 3 {
        return Err(Error::InvalidSize(format!("wall size {} is beyond exhaustive range", w.r)));
    }
    check_no_two_linkages_in(&w.graph, w.ends(), format!("condensed wall of size {}", w.r), budget)
}

pub fn check_no_two_linkages_in(
    g: &Graph,
    ends: [VertexId; 4],
    instance: String,
    budget: &Budget,
) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new("no-two-linkages", instance, "no two edge-disjoint (a-b, c-d)-linkages");
    let n = max_edge_disjoint_linkages_with(g, ends, budget)?;
    rep.cases = 1;
    rep.states = budget.used();
    rep.notes.push(format!("maximum number of edge-disjoint linkages: {n}"));
    if n > 1 {
        rep.fail(format!("{n} edge-disjoint linkages"));
    }
    Ok(rep)
}

/// Ladder sizes in `W - {a,b}` (at most 5) and in `W` (at most 13); on
/// walls of size 5 and more, the 13-rung lower bound by construction.
pub fn check_ladder_bounds(w: &CondensedWall, budget: &Budget) -> Result<LemmaReport> {
    let mut rep = LemmaReport::new(
        "ladder-bounds",
        format!("condensed wall of size {}", w.r),
        "ladders in W-{a,b} have at most 5 rungs; ladders in W at most 13",
    );
    if w.r <= 4 {
        let inner = w.graph.without_vertices([w.a, w.b]);
        let s = max_ladder_size_with(&inner, budget)?;
        rep.cases += 1;
        rep.notes.push(format!("largest ladder in W-{{a,b}}: {s} rungs"));
        if s > 5 {
            rep.fail(format!("{s}-rung ladder in W-{{a,b}}"));
        }
    }
    if w.r <= 3 {
        let s = max_ladder_size_with(&w.graph, budget)?;
        rep.cases += 1;
        rep.notes.push(format!("largest ladder in W: {s} rungs"));
        if s > 13 {
            rep.fail(format!("{s}-rung ladder in W"));
        }
    }
    if w.r >= 5 {
        let l = embed_ladder13(w, 0)?;
        validate(&w.graph, &l).map_err(Error::InvariantViolation)?;
        rep.cases += 1;
        rep.notes.push("13-rung ladder embedded in layers 1..5".into());
    }
    if rep.cases == 0 {
        rep.verdict = Verdict::Informational;
        rep.notes.push("no exhaustive bound applies at this size".into());
    }
    rep.states = budget.used();
    Ok(rep)
}

fn binom(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Deletion sets of size `d` from `edges`: all of them when few, else a
/// seeded sample. The flag reports sampling.
fn deletion_sets(edges: &[EdgeId], d: usize, seed: u64) -> (Vec<EdgeSet>, bool) {
    let total = binom(edges.len() as u64, d as u64);
    if total > ENUMERATION_CAP {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sets = (0..SAMPLES).map(|_| edges.choose_multiple(&mut rng, d).copied().collect()).collect();
        return (sets, true);
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if d > edges.len() {
        return (out, false);
    }
    loop {
        out.push(idx.iter().map(|&i| edges[i]).collect());
        let mut i = d;
        loop {
            if i == 0 {
                return (out, false);
            }
            i -= 1;
            if idx[i] < edges.len() - d + i {
                idx[i] += 1;
                for j in i + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// An X-wing survives every deletion of `deletions` edges; in scope when
/// the wall has even size `2r` and `deletions <= r - 1`.
pub fn check_xwing_robustness(w: &CondensedWall, deletions: usize, seed: u64) -> Result<LemmaReport> {
    let in_scope = w.r.is_multiple_of(2) && deletions < w.r / 2 || w.r == 2 && deletions == 0;
    let mut rep = LemmaReport::new(
        "xwing",
        format!("condensed wall of size {}, {deletions} deleted edges", w.r),
        "an X-wing exists after deleting r-1 edges of a wall of size 2r",
    );
    let edges: Vec<EdgeId> = w.graph.edge_ids().collect();
    let (sets, sampled) = deletion_sets(&edges, deletions, seed);
    let mut ok = 0u64;
    for del in &sets {
        rep.cases += 1;
        match embed_xwing(w, del) {
            Ok(x) if crate::patterns::validate_avoiding(&w.graph, &x, del).is_ok() => ok += 1,
            Ok(_) => rep.fail(format!("invalid X-wing after deleting {:?}", del.iter().collect::<Vec<_>>())),
            Err(_) if !in_scope => {}
            Err(e) => rep.fail(format!("deleting {:?}: {e}", del.iter().collect::<Vec<_>>())),
        }
    }
    rep.notes.push(format!("{ok} of {} deletion sets embed an X-wing", rep.cases));
    if !in_scope {
        rep.verdict = Verdict::Informational;
        rep.notes.push("outside the lemma's deletion range".into());
    } else if sampled && rep.holds() {
        rep.verdict = Verdict::HoldsSampled;
    }
    if sampled {
        rep.notes.push(format!("{} sampled deletion sets, seed {seed}", sets.len()));
    }
    Ok(rep)
}

/// An `l`-rung ladder survives every deletion of `r - 1` edges of G*.
pub fn check_gstar_one_ladder(gx: &CounterexampleGraph, seed: u64) -> Result<LemmaReport> {
    let l = gx.l();
    let d = gx.r - 1;
    let mut rep = LemmaReport::new(
        "gstar-one-ladder",
        format!("G*(r={}, lA={}, lC={})", gx.r, gx.la, gx.lc),
        "a ladder with lA+3+lC rungs survives deleting r-1 edges",
    );
    let edges: Vec<EdgeId> = gx.graph.edge_ids().collect();
    let (mut sets, sampled) = deletion_sets(&edges, d, seed);
    if d > 0 {
        sets.insert(0, EdgeSet::new());
    }
    for del in &sets {
        rep.cases += 1;
        match witness_ladder_l(gx, del) {
            Ok(w) if w.pattern == Pattern::Ladder(l) && crate::patterns::validate_avoiding(&gx.graph, &w, del).is_ok() => {}
            Ok(_) => rep.fail(format!("bad witness after deleting {:?}", del.iter().collect::<Vec<_>>())),
            Err(e) => rep.fail(format!("deleting {:?}: {e}", del.iter().collect::<Vec<_>>())),
        }
    }
    if sampled {
        rep.notes.push(format!("{} sampled deletion sets, seed {seed}", sets.len()));
        if rep.holds() {
            rep.verdict = Verdict::HoldsSampled;
        }
    }
    Ok(rep)
}

/// Seeded random graph generators.
pub mod gen {
    use rand::Rng;

    use crate::graph::{Graph, VertexId};

    pub fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
        let mut g = Graph::with_vertices(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.gen_bool(p) {
                    g.add_edge(VertexId(u), VertexId(v)).expect("fresh pair");
                }
            }
        }
        g
    }

    /// Random graph on `n` vertices whose edges are each subdivided with
    /// probability `q`.
    pub fn subdivided(n: usize, p: f64, q: f64, rng: &mut impl Rng) -> Graph {
        let base = erdos_renyi(n, p, rng);
        let mut g = Graph::with_vertices(n);
        for (_, u, v) in base.edges() {
            if rng.gen_bool(q) {
                let m = g.add_vertex();
                g.add_edge(u, m).unwrap();
                g.add_edge(m, v).unwrap();
            } else {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// `k` vertex-disjoint 3-rung ladders with randomly lengthened
    /// stringers, plus `extra` random edges.
    pub fn planted_ladders(k: usize, extra: usize, rng: &mut impl Rng) -> Graph {
        let mut g = Graph::new();
        for _ in 0..k {
            let u: Vec<VertexId> = (0..3).map(|_| g.add_vertex()).collect();
            let v: Vec<VertexId> = (0..3).map(|_| g.add_vertex()).collect();
            for i in 0..3 {
                g.add_edge(u[i], v[i]).unwrap();
            }
            for side in [&u, &v] {
                for i in 0..2 {
                    let mut prev = side[i];
                    for _ in 0..rng.gen_range(0..2) {
                        let m = g.add_vertex();
                        g.add_edge(prev, m).unwrap();
                        prev = m;
                    }
                    g.add_edge(prev, side[i + 1]).unwrap();
                }
            }
        }
        let n = g.vertex_count() as u32;
        for _ in 0..extra {
            let (a, b) = (VertexId(rng.gen_range(0..n)), VertexId(rng.gen_range(0..n)));
            if a != b && !g.is_adjacent(a, b) {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }
}

fn describe(g: &Graph) -> String {
    export_graph(g, &Labels::new())
}

/// Random graphs through witness validation, solver soundness, classifier
/// checks and Menger equality, plus planted packings. Reports are a pure
/// function of the arguments.
pub fn fuzz_invariants(seed: u64, cases: usize, max_n: usize) -> Vec<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inst = format!("seed {seed}, {cases} graphs, at most {max_n} vertices");
    let mut witness = LemmaReport::new("fuzz-witness", inst.clone(), "found ladders validate");
    let mut sound = LemmaReport::new("fuzz-solver", inst.clone(), "solver certificates verify");
    let mut classify = LemmaReport::new("fuzz-classifier", inst.clone(), "classifier certificates re-check");
    let mut menger = LemmaReport::new("fuzz-menger", inst.clone(), "edge-disjoint path count equals cut size");
    let mut planted = LemmaReport::new("fuzz-planted", inst, "planted ladders are packed");
    for i in 0..cases {
        let n = rng.gen_range(4..=max_n.max(4));
        let g = if i % 2 == 0 {
            gen::erdos_renyi(n, rng.gen_range(0.2..0.6), &mut rng)
        } else {
            gen::subdivided(n.saturating_sub(2).max(3), rng.gen_range(0.3..0.7), 0.4, &mut rng)
        };

        witness.cases += 1;
        match find_ladder3(&g, &EdgeSet::new()) {
            Ok(Some(w)) if validate(&g, &w).is_err() => witness.fail(describe(&g)),
            Err(e) => witness.fail(format!("{e}: {}", describe(&g))),
            _ => {}
        }

        let k = rng.gen_range(1..=3);
        sound.cases += 1;
        for kind in [PatternKind::Ladder3, PatternKind::House] {
            match solve_with(&g, k, kind, &Budget::from_env()) {
                Ok((cert, _)) if verify_certificate(&g, k, &cert) => {}
                Ok(_) => sound.fail(format!("{kind:?} k={k}: {}", describe(&g))),
                Err(e) => sound.fail(format!("{kind:?} k={k}: {e}: {}", describe(&g))),
            }
        }

        if is_two_connected(&g) {
            classify.cases += 1;
            match classify_ladder_free(&g) {
                Ok(Classification::LadderFound { witness: w }) if validate(&g, &w).is_err() => {
                    classify.fail(describe(&g))
                }
                Ok(Classification::ThetaChainResult { chain }) => {
                    if chain.check(&g).is_err() || describe(&chain.reassemble()) != describe(&g) {
                        classify.fail(describe(&g));
                    }
                }
                Err(e) => classify.fail(format!("{e}: {}", describe(&g))),
                _ => {}
            }
        }

        let vs: Vec<VertexId> = g.vertices().collect();
        let (s, t) = (vs[0], vs[vs.len() - 1]);
        menger.cases += 1;
        match max_edge_disjoint_paths(&g, s, t, g.edge_count() + 1) {
            Ok(f) => {
                let cut = f.cut.unwrap_or_default();
                let rest = g.without_edges(cut.iter().collect::<Vec<_>>().iter());
                let separated = !crate::graph::component_of(&rest, s).contains(&t);
                if cut.len() != f.value || !separated || f.paths.len() != f.value {
                    menger.fail(describe(&g));
                }
            }
            Err(e) => menger.fail(e.to_string()),
        }
    }
    for _ in 0..cases.div_ceil(10) {
        let k = rng.gen_range(1..=2);
        let g = gen::planted_ladders(k, rng.gen_range(0..4), &mut rng);
        planted.cases += 1;
        match solve_with(&g, k, PatternKind::Ladder3, &Budget::from_env()) {
            Ok((cert, _)) if cert.is_packing() && verify_certificate(&g, k, &cert) => {}
            _ => planted.fail(describe(&g)),
        }
    }
    vec![witness, sound, classify, menger, planted]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_condensed_wall;

    #[test]
    fn combinations() {
        let es: Vec<EdgeId> = (0..5).map(EdgeId).collect();
        assert_eq!(deletion_sets(&es, 2, 0).0.len(), 10);
        assert_eq!(deletion_sets(&es, 0, 0).0.len(), 1);
    }

    #[test]
    fn linkage_checker_detects_a_second_linkage() {
        let w = build_condensed_wall(2).unwrap();
        let b = Budget::unlimited();
        assert!(check_no_two_linkages(&w, &b).unwrap().holds());
        let mut g = w.graph.clone();
        g.add_edge(w.a, w.c()).unwrap();
        g.add_edge(w.b, w.d()).unwrap();
        let rep = check_no_two_linkages_in(&g, w.ends(), "wall plus a-c, b-d".into(), &b).unwrap();
        assert!(rep.holds(), "a-c and b-d edges join the pairs to each other, not within");
        g.add_edge(w.a, w.b).unwrap();
        g.add_edge(w.c(), w.d()).unwrap();
        let rep = check_no_two_linkages_in(&g, w.ends(), "wall plus a-b, c-d".into(), &b).unwrap();
        assert_eq!(rep.verdict, Verdict::Counterexample);
    }

    #[test]
    fn fuzz_is_deterministic() {
        let a = fuzz_invariants(7, 20, 7);
        assert_eq!(a, fuzz_invariants(7, 20, 7));
        assert!(a.iter().all(LemmaReport::holds), "{a:?}");
    }
}
