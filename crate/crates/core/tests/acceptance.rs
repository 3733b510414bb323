//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use ladder_epp::budget::Budget;
use ladder_epp::constructions::{
    build_condensed_wall, build_counterexample, embed_ladder13, embed_xwing, pack_ladders13, wall_edge_count,
    wall_vertex_count, witness_ladder_l,
};
use ladder_epp::graph::{is_tree, is_two_connected};
use ladder_epp::io::{export_graph, Labels};
use ladder_epp::patterns::{
    find_ladder3, find_ladder_with, max_edge_disjoint_linkages_with, max_ladder_size_with, validate,
    validate_avoiding, Pattern,
};
use ladder_epp::solver::{solve_core_1v, solve_ladder3, verify_certificate, EppCertificate};
use ladder_epp::structure::{classify_ladder_free, count_segments, Classification};
use ladder_epp::trees::{am_tree_solve, verify_am_tree, AmTreeOutcome};
use ladder_epp::verifier::gen;
use ladder_epp::{EdgeSet, Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wall_closed_forms() -> Outcome {
    for r in 1..=10 {
        let w = build_condensed_wall(r).map_err(|e| e.to_string())?;
        let mut name: BTreeMap<VertexId, String> = BTreeMap::new();
        name.insert(w.a, "a".into());
        name.insert(w.b, "b".into());
        for (i, &z) in w.z.iter().enumerate() {
            name.insert(z, format!("z{i}"));
        }
        for (j, row) in w.u.iter().enumerate() {
            for (i, &u) in row.iter().enumerate() {
                name.insert(u, format!("u{}_{}", j + 1, i + 1));
            }
        }
        ensure(name.len() == w.graph.vertex_count(), || format!("r={r}: roles do not cover the vertices"))?;
        let got: BTreeSet<(String, String)> = w
            .graph
            .edges()
            .map(|(_, u, v)| {
                let (x, y) = (name[&u].clone(), name[&v].clone());
                if x < y { (x, y) } else { (y, x) }
            })
            .collect();
        ensure(got == common::wall_rule_edges(r), || format!("r={r}: edges differ from the rules"))?;
        let (nv, ne) = (2 * r * r + r + 3, 4 * r * r + 2 * r);
        ensure(w.graph.vertex_count() == nv && w.graph.edge_count() == ne, || format!("r={r}: counts"))?;
        ensure(wall_vertex_count(r) == nv && wall_edge_count(r) == ne, || format!("r={r}: count functions"))?;
    }
    Ok("r = 1..10".into())
}

fn packings13() -> Outcome {
    for (r, n) in [(5, 1), (10, 2)] {
        let w = build_condensed_wall(r).map_err(|e| e.to_string())?;
        let ws = pack_ladders13(&w, n).map_err(|e| e.to_string())?;
        ensure(ws.len() == n, || format!("size {r}: {} witnesses", ws.len()))?;
        let mut used = BTreeSet::new();
        for x in &ws {
            ensure(x.pattern == Pattern::Ladder(13), || format!("size {r}: pattern {:?}", x.pattern))?;
            validate(&w.graph, x)?;
            for e in x.edge_ids(&w.graph).ok_or("witness leaves the wall")? {
                ensure(used.insert(e), || format!("size {r}: edge {e} shared"))?;
            }
        }
    }
    Ok("sizes 5 and 10".into())
}

fn single_linkage() -> Outcome {
    let mut states = Vec::new();
    for r in 2..=3 {
        let w = build_condensed_wall(r).map_err(|e| e.to_string())?;
        let budget = Budget::new(100_000_000);
        let n = max_edge_disjoint_linkages_with(&w.graph, w.ends(), &budget).map_err(|e| e.to_string())?;
        ensure(n == 1, || format!("size {r}: {n} edge-disjoint linkages"))?;
        states.push(budget.used());
    }
    Ok(format!("states {states:?}"))
}

fn inner_ladders() -> Outcome {
    let mut sizes = Vec::new();
    for r in 2..=4 {
        let w = build_condensed_wall(r).map_err(|e| e.to_string())?;
        let inner = w.graph.without_vertices([w.a, w.b]);
        let l = max_ladder_size_with(&inner, &Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(l <= 5, || format!("size {r}: ladder with {l} rungs"))?;
        sizes.push(l);
    }
    Ok(format!("max rungs {sizes:?}"))
}

fn sandwich() -> Outcome {
    let w = build_condensed_wall(5).map_err(|e| e.to_string())?;
    let x = embed_ladder13(&w, 0).map_err(|e| e.to_string())?;
    ensure(x.rungs() == Some(13), || format!("rungs {:?}", x.rungs()))?;
    validate(&w.graph, &x)?;
    let w = build_condensed_wall(2).map_err(|e| e.to_string())?;
    let budget = Budget::unlimited();
    let found = find_ladder_with(&w.graph, 14, &EdgeSet::new(), &budget).map_err(|e| e.to_string())?;
    ensure(found.is_none(), || "14-rung ladder in the size-2 wall".into())?;
    Ok(format!("size-2 search states {}", budget.used()))
}

fn xwing_robustness() -> Outcome {
    let w = build_condensed_wall(4).map_err(|e| e.to_string())?;
    let es: Vec<_> = w.graph.edge_ids().collect();
    ensure(es.len() == 72, || format!("{} edges", es.len()))?;
    for &e in &es {
        let del: EdgeSet = [e].into_iter().collect();
        let x = embed_xwing(&w, &del).map_err(|err| format!("deleting {e}: {err}"))?;
        validate_avoiding(&w.graph, &x, &del).map_err(|err| format!("deleting {e}: {err}"))?;
    }
    Ok("72 deletions".into())
}

fn gstar_one_ladder() -> Outcome {
    let gx = build_counterexample(2, 7, 4).map_err(|e| e.to_string())?;
    let es: Vec<_> = gx.graph.edge_ids().collect();
    for &e in &es {
        let del: EdgeSet = [e].into_iter().collect();
        let x = witness_ladder_l(&gx, &del).map_err(|err| format!("deleting {e}: {err}"))?;
        ensure(x.pattern == Pattern::Ladder(14), || format!("deleting {e}: {:?}", x.pattern))?;
        validate_avoiding(&gx.graph, &x, &del).map_err(|err| format!("deleting {e}: {err}"))?;
    }
    Ok(format!("{} deletions", es.len()))
}

fn check_am(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize) -> Result<(), String> {
    let out = am_tree_solve(g, a, m, k).map_err(|e| e.to_string())?;
    let want = common::am_packing_exists(g, a, m, k);
    let ctx = || format!("{} A={a:?} m={m} k={k}", export_graph(g, &Labels::new()));
    match out {
        AmTreeOutcome::Packing { trees } => {
            ensure(want, || format!("{}: packing where brute force has none", ctx()))?;
            ensure(trees.len() == k, || format!("{}: {} trees", ctx(), trees.len()))?;
            let mut used = BTreeSet::new();
            for t in &trees {
                let tg = t.to_graph(g);
                ensure(is_tree(&tg) && verify_am_tree(&tg, a, m), || format!("{}: bad tree", ctx()))?;
                for &e in &t.edges {
                    ensure(g.has_edge(e) && used.insert(e), || format!("{}: edge {e} reused", ctx()))?;
                }
            }
        }
        AmTreeOutcome::HittingSet { edges } => {
            ensure(!want, || format!("{}: hitting set where a packing exists", ctx()))?;
            ensure(edges.len() <= 2 * m * m * k * k, || format!("{}: |X| = {}", ctx(), edges.len()))?;
            let rest = g.without_edges(edges.iter().collect::<Vec<_>>().iter());
            ensure(!common::has_am_tree(&rest, a, m), || format!("{}: hitting set misses a tree", ctx()))?;
        }
    }
    Ok(())
}

fn am_trees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut runs = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let extra = rng.gen_range(0..=4);
        let g = common::random_connected(&mut rng, n, extra);
        let a: BTreeSet<VertexId> = g.vertices().filter(|_| rng.gen_bool(0.5)).collect();
        for m in 1..=3 {
            for k in 1..=3 {
                check_am(&g, &a, m, k)?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs on 10^4 graphs"))
}

fn check_epp(g: &Graph, k: usize, exact: bool) -> Result<(), String> {
    let (cert, _) = solve_ladder3(g, k).map_err(|e| e.to_string())?;
    let ctx = || format!("{} k={k}", export_graph(g, &Labels::new()));
    ensure(verify_certificate(g, k, &cert), || format!("{}: certificate rejected", ctx()))?;
    if exact {
        let want = common::has_disjoint(&common::ladder3_masks(g), k);
        ensure(cert.is_packing() == want, || format!("{}: packing {} vs brute force {want}", ctx(), cert.is_packing()))?;
    }
    Ok(())
}

fn epp_solver() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut exact = 0;
    for i in 0..10_000 {
        let n = rng.gen_range(4..=12);
        let (base, extra) = (rng.gen_range(3..=6), rng.gen_range(0..=7));
        let g = if i % 4 == 0 {
            gen::subdivided(base, 0.6, 0.3, &mut rng)
        } else {
            common::random_connected(&mut rng, n, extra)
        };
        let small = g.vertex_count() <= 10 && g.edge_count() <= 20;
        exact += small as usize;
        check_epp(&g, rng.gen_range(1..=3), small)?;
    }
    let mut planted = 0;
    for k in 1..=3 {
        for extra in 0..=6 {
            for _ in 0..10 {
                let g = gen::planted_ladders(k, extra, &mut rng);
                let (cert, _) = solve_ladder3(&g, k).map_err(|e| e.to_string())?;
                ensure(cert.is_packing() && verify_certificate(&g, k, &cert), || {
                    format!("planted k={k}: {}", export_graph(&g, &Labels::new()))
                })?;
                planted += 1;
            }
        }
    }
    Ok(format!("10^4 random ({exact} brute-forced), {planted} planted"))
}

fn one_vertex_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut hitting = 0;
    for _ in 0..2_000 {
        let n = rng.gen_range(4..=40);
        let mut g = common::random_tree(&mut rng, n);
        let v = g.add_vertex();
        let p = rng.gen_range(0.2..=1.0);
        for u in 0..n as u32 {
            if rng.gen_bool(p) {
                g.add_edge(v, VertexId(u)).unwrap();
            }
        }
        let k = rng.gen_range(1..=4);
        let (cert, _) = solve_core_1v(&g, v, k).map_err(|e| e.to_string())?;
        let ctx = || format!("{} k={k}", export_graph(&g, &Labels::new()));
        ensure(verify_certificate(&g, k, &cert), || format!("{}: certificate rejected", ctx()))?;
        if let EppCertificate::HittingSet { edges, .. } = &cert {
            hitting += 1;
            ensure(edges.len() <= 18 * k * k + 111 * k, || format!("{}: |X| = {}", ctx(), edges.len()))?;
            let rest = g.without_edges(edges.iter().collect::<Vec<_>>().iter());
            let left = find_ladder3(&rest, &EdgeSet::new()).map_err(|e| e.to_string())?;
            ensure(left.is_none(), || format!("{}: a ladder survives", ctx()))?;
        }
    }
    Ok(format!("2000 instances, {hitting} hitting sets"))
}

fn structure_agrees(g: &Graph, oracle: bool) -> Result<(), String> {
    let ctx = || export_graph(g, &Labels::new());
    let ladder = find_ladder3(g, &EdgeSet::new()).map_err(|e| e.to_string())?.is_some();
    if oracle {
        let brute = !common::ladder3_masks(g).is_empty();
        ensure(brute == ladder, || format!("{}: detector says {ladder}, brute force {brute}", ctx()))?;
    }
    match classify_ladder_free(g).map_err(|e| format!("{}: {e}", ctx()))? {
        Classification::LadderFound { witness } => {
            ensure(ladder, || format!("{}: ladder reported", ctx()))?;
            validate(g, &witness)?;
        }
        Classification::ThetaChainResult { chain } if !ladder => {
            chain.check(g).map_err(|e| format!("{}: {e}", ctx()))?;
            let none = Labels::new();
            ensure(export_graph(&chain.reassemble(), &none) == export_graph(g, &none), || {
                format!("{}: reassembly differs", ctx())
            })?;
        }
        Classification::ShortThetaResult { .. } if !ladder => {}
        Classification::SmallGraph { vertices } if !ladder && vertices < 6 => {}
        other => return Err(format!("{}: unexpected {other:?}", ctx())),
    }
    Ok(())
}

/// Edge subsets whose degree sequence is non-increasing in the vertex order;
/// every isomorphism class has such a labelling.
fn sorted_degree_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).filter_map(move |s| {
        let mut deg = vec![0usize; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if s >> i & 1 == 1 {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
        if deg.windows(2).any(|w| w[0] < w[1]) || deg[n - 1] < 2 {
            return None;
        }
        let es: Vec<(u32, u32)> = (0..pairs.len()).filter(|i| s >> i & 1 == 1).map(|i| pairs[i]).collect();
        Some(Graph::from_edges(n, &es))
    })
}

fn structure() -> Outcome {
    let mut exhaustive = 0;
    for n in 3..=7 {
        for g in sorted_degree_graphs(n).filter(is_two_connected) {
            structure_agrees(&g, n <= 5)?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..3_000 {
        let n = rng.gen_range(8..=9);
        let extra = rng.gen_range(0..=4);
        let g = common::random_two_connected(&mut rng, n, extra);
        structure_agrees(&g, i % 3 == 0)?;
    }
    Ok(format!("{exhaustive} exhaustive, 3000 sampled"))
}

fn segments() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=200);
        let t = common::random_tree(&mut rng, n);
        let c = count_segments(&t).map_err(|e| e.to_string())?;
        ensure(c.segments == common::segments(&t), || format!("n={n}: segment count"))?;
        ensure(c.segments <= 2 * c.leaves, || format!("n={n}: {} segments, {} leaves", c.segments, c.leaves))?;
    }
    Ok("10^4 trees".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("wall closed forms", wall_closed_forms),
        ("13-rung packings", packings13),
        ("one linkage in small walls", single_linkage),
        ("short ladders between the hubs", inner_ladders),
        ("13 <= max rungs < 14", sandwich),
        ("x-wing robustness", xwing_robustness),
        ("one-ladder counterexample", gstar_one_ladder),
        ("A-m-tree packing or hitting", am_trees),
        ("ladder packing or hitting", epp_solver),
        ("one-vertex hitting bound", one_vertex_bound),
        ("ladder-free structure", structure),
        ("segments and leaves", segments),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
