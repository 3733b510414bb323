//! Explicit embeddings: X-wings in damaged walls, 13-rung ladders in wall
//! chunks, and the long ladder through G*.

use super::{CondensedWall, CounterexampleGraph};
use crate::error::{Error, Result};
use crate::graph::{bfs_path, EdgeSet, Graph, Path, VertexId};
use crate::patterns::{assemble, validate, Pattern, SubdivisionWitness};

fn checked(g: &Graph, w: SubdivisionWitness) -> Result<SubdivisionWitness> {
    validate(g, &w).map_err(|e| Error::InvariantViolation(format!("constructed witness is invalid: {e}")))?;
    Ok(w)
}

fn ladder_from_parts(
    us: &[VertexId],
    vs: &[VertexId],
    rungs: Vec<Path>,
    ustr: Vec<Path>,
    vstr: Vec<Path>,
) -> SubdivisionWitness {
    let names: Vec<(String, VertexId)> = us
        .iter()
        .enumerate()
        .map(|(i, &u)| (format!("u{}", i + 1), u))
        .chain(vs.iter().enumerate().map(|(i, &v)| (format!("v{}", i + 1), v)))
        .collect();
    let refs: Vec<(&str, VertexId)> = names.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let mut paths = rungs;
    paths.extend(ustr);
    paths.extend(vstr);
    assemble(Pattern::Ladder(us.len()), &refs, paths)
}

fn route(h: &Graph, s: VertexId, t: VertexId, inside: &[bool]) -> Option<Path> {
    bfs_path(h, s, t, &|v| inside.get(v.index()).copied().unwrap_or(false))
}

/// X-wing in the first pair of adjacent layers `W_{i-1}`, `W_i` whose edges
/// and hub attachments avoid `forbidden`. The first rung runs `a`, layer `i`,
/// `b`; the last rung is the jump edge `z_{i-2} z_{i-1}`, which reaches `c`
/// through the lower layers and `d` through `z_i` and the upper layers.
pub fn embed_xwing(w: &CondensedWall, forbidden: &EdgeSet) -> Result<SubdivisionWitness> {
    let g = &w.graph;
    let h = g.without_edges(forbidden.iter().collect::<Vec<_>>().iter());
    let r = w.r;
    let clean = |j: usize| w.layer_edges(j).iter().all(|&e| !forbidden.contains(e));
    for i in 2..=r {
        if !clean(i - 1) || !clean(i) {
            continue;
        }
        let mut lower = vec![false; g.vertex_bound()];
        for j in 1..i - 1 {
            for v in w.layer(j) {
                lower[v.index()] = true;
            }
        }
        let mut upper = vec![false; g.vertex_bound()];
        for j in i + 1..=r {
            for v in w.layer(j) {
                upper[v.index()] = true;
            }
        }
        let Some(to_c) = route(&h, w.z[i - 2], w.c(), &lower) else { continue };
        let Some(to_d) = route(&h, w.z[i], w.d(), &upper) else { continue };
        let to_d = Path::new(vec![w.z[i - 1], w.z[i]]).join(&to_d);

        let mut rung1 = vec![w.a];
        rung1.extend_from_slice(&w.u[i - 1]);
        rung1.push(w.b);
        let mut v12 = vec![w.b];
        v12.extend(w.u[i - 2][1..].iter().rev());
        let (u2, v2) = (w.u(i - 1, 1), w.u(i - 1, 2));
        let (u3, v3) = (w.z[i - 2], w.z[i - 1]);
        let paths = vec![
            Path::new(rung1),
            Path::new(vec![u2, v2]),
            Path::new(vec![u3, v3]),
            Path::new(vec![w.a, u2]),
            Path::new(vec![u2, u3]),
            Path::new(v12),
            Path::new(vec![v2, v3]),
            Path::single(w.a),
            Path::single(w.b),
            to_c,
            to_d,
        ];
        let branch = [
            ("u1", w.a),
            ("u2", u2),
            ("u3", u3),
            ("v1", w.b),
            ("v2", v2),
            ("v3", v3),
            ("a", w.a),
            ("b", w.b),
            ("c", w.c()),
            ("d", w.d()),
        ];
        return checked(&h, assemble(Pattern::XWing { twisted: false }, &branch, paths));
    }
    Err(Error::NotFound("no two adjacent clean layers".into()))
}

/// The 13-rung ladder in chunk `chunk`: layers `5 chunk + 1 ..= 5 chunk + 5`.
pub fn embed_ladder13(w: &CondensedWall, chunk: usize) -> Result<SubdivisionWitness> {
    if w.r < 5 * (chunk + 1) {
        return Err(Error::InvalidChunk { chunk, size: w.r });
    }
    let base = 5 * chunk;
    let shift = 2 * w.r - 10;
    // position p of layer k (1..=5) of the chunk; layers 4 and 5 are
    // addressed from the b end
    let p = |k: usize, pos: usize| {
        let pos = if k >= 4 { pos + shift } else { pos };
        w.u(base + k, pos)
    };
    let z = |k: usize| w.z[base + k];
    let (a, b) = (w.a, w.b);

    let mut xs = vec![p(1, 7), z(0), p(1, 3), p(1, 2), p(1, 1), a, p(3, 1), p(3, 2), z(3)];
    xs.extend([p(4, 9), p(4, 10), z(4), p(5, 7), p(5, 6), p(5, 5)]);
    let mut ys = vec![p(1, 6), p(1, 5), p(1, 4), z(1), p(2, 1), p(2, 2), z(2)];
    ys.extend((3..=2 * w.r).map(|pos| p(3, pos)));
    ys.extend([b, p(5, 10), p(5, 9), p(5, 8), z(5), p(5, 4)]);
    let rungs: [(VertexId, VertexId); 13] = [
        (p(1, 7), p(1, 6)),
        (z(0), p(1, 5)),
        (p(1, 3), p(1, 4)),
        (p(1, 2), z(1)),
        (a, p(2, 1)),
        (p(3, 1), z(2)),
        (p(3, 2), p(3, 3)),
        (z(3), p(3, 4)),
        (p(4, 10), b),
        (z(4), p(5, 9)),
        (p(5, 7), p(5, 8)),
        (p(5, 6), z(5)),
        (p(5, 5), p(5, 4)),
    ];
    let us: Vec<VertexId> = rungs.iter().map(|r| r.0).collect();
    let vs: Vec<VertexId> = rungs.iter().map(|r| r.1).collect();
    let split = |line: &[VertexId], ends: &[VertexId]| -> Vec<Path> {
        let pos: Vec<usize> = ends.iter().map(|e| line.iter().position(|x| x == e).unwrap()).collect();
        pos.windows(2).map(|q| Path::new(line[q[0]..=q[1]].to_vec())).collect()
    };
    let ustr = split(&xs, &us);
    let vstr = split(&ys, &vs);
    let rung_paths = rungs.iter().map(|&(x, y)| Path::new(vec![x, y])).collect();
    checked(&w.graph, ladder_from_parts(&us, &vs, rung_paths, ustr, vstr))
}

/// `n` edge-disjoint 13-rung ladders, one per chunk; later layers stay unused.
pub fn pack_ladders13(w: &CondensedWall, n: usize) -> Result<Vec<SubdivisionWitness>> {
    if w.r < 5 * n {
        return Err(Error::InvalidParams(format!("wall of size {} holds fewer than {n} chunks", w.r)));
    }
    (0..n).map(|c| embed_ladder13(w, c)).collect()
}

/// The `(lA + 3 + lC)`-rung ladder in G* minus `deleted`: both outer ladders
/// through surviving bundle paths, joined by an X-wing in the wall.
pub fn witness_ladder_l(gx: &CounterexampleGraph, deleted: &EdgeSet) -> Result<SubdivisionWitness> {
    if deleted.len() + 1 > gx.r {
        return Err(Error::InvalidParams(format!(
            "at most {} deletions are allowed, got {}",
            gx.r - 1,
            deleted.len()
        )));
    }
    let g = &gx.graph;
    for e in deleted.iter() {
        if !g.has_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
    }
    let alive = |x: VertexId, y: VertexId| g.edge_between(x, y).is_some_and(|e| !deleted.contains(e));
    let hop = |x: VertexId, y: VertexId| -> Result<Path> {
        let b = gx.bundle(x, y).ok_or_else(|| Error::NotFound(format!("no bundle {x}-{y}")))?;
        let m = b
            .mids
            .iter()
            .copied()
            .find(|&m| alive(x, m) && alive(m, y))
            .ok_or_else(|| Error::NotFound(format!("bundle {x}-{y} fully cut")))?;
        Ok(Path::new(vec![x, m, y]))
    };

    let wall_deleted: EdgeSet = deleted.iter().filter(|&e| gx.wall.graph.has_edge(e)).collect();
    let x = embed_xwing(&gx.wall, &wall_deleted)?;
    let Pattern::XWing { twisted } = x.pattern else { unreachable!() };

    let (ua, va) = (&gx.ladder_a.u, &gx.ladder_a.v);
    let (cu, cv) = if twisted {
        (&gx.ladder_c.v, &gx.ladder_c.u)
    } else {
        (&gx.ladder_c.u, &gx.ladder_c.v)
    };
    let (la, lc) = (gx.la, gx.lc);
    let mut us = Vec::new();
    let mut vs = Vec::new();
    let mut rungs = Vec::new();
    let mut ustr = Vec::new();
    let mut vstr = Vec::new();

    for k in (0..la).rev() {
        us.push(ua[k]);
        vs.push(va[k]);
        rungs.push(hop(ua[k], va[k])?);
        if k > 0 {
            ustr.push(hop(ua[k], ua[k - 1])?);
            vstr.push(hop(va[k], va[k - 1])?);
        }
    }
    let (wa, wb, wc, wd) = (gx.wall.a, gx.wall.b, gx.wall.c(), gx.wall.d());
    ustr.push(hop(ua[0], wa)?.join(&x.paths[7].reversed()));
    vstr.push(hop(va[0], wb)?.join(&x.paths[8].reversed()));
    for i in 1..=3 {
        us.push(x.branch(&format!("u{i}")));
        vs.push(x.branch(&format!("v{i}")));
    }
    rungs.extend(x.paths[0..3].iter().cloned());
    ustr.extend(x.paths[3..5].iter().cloned());
    vstr.extend(x.paths[5..7].iter().cloned());
    let (into_u, into_v) = if twisted { (wd, wc) } else { (wc, wd) };
    ustr.push(x.paths[9].join(&hop(into_u, cu[0])?));
    vstr.push(x.paths[10].join(&hop(into_v, cv[0])?));
    for k in 0..lc {
        us.push(cu[k]);
        vs.push(cv[k]);
        rungs.push(hop(cu[k], cv[k])?);
        if k + 1 < lc {
            ustr.push(hop(cu[k], cu[k + 1])?);
            vstr.push(hop(cv[k], cv[k + 1])?);
        }
    }
    let h = g.without_edges(deleted.iter().collect::<Vec<_>>().iter());
    checked(&h, ladder_from_parts(&us, &vs, rungs, ustr, vstr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_condensed_wall, build_counterexample};

    #[test]
    fn xwing_in_small_wall() {
        let w = build_condensed_wall(2).unwrap();
        let x = embed_xwing(&w, &EdgeSet::new()).unwrap();
        assert_eq!(x.branch("u3"), w.c());
        assert_eq!(x.paths[10].vertices(), &[w.z[1], w.z[2]]);
        assert!(embed_xwing(&build_condensed_wall(1).unwrap(), &EdgeSet::new()).is_err());
    }

    #[test]
    fn ladder13_chunks() {
        let w = build_condensed_wall(5).unwrap();
        assert_eq!(embed_ladder13(&w, 0).unwrap().rungs(), Some(13));
        assert!(embed_ladder13(&w, 1).is_err());
        let w = build_condensed_wall(12).unwrap();
        let ls = pack_ladders13(&w, 2).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(pack_ladders13(&w, 3).is_err());
    }

    #[test]
    fn long_ladder_in_gstar() {
        let gx = build_counterexample(2, 7, 4).unwrap();
        let l = witness_ladder_l(&gx, &EdgeSet::new()).unwrap();
        assert_eq!(l.rungs(), Some(14));
        let two: EdgeSet = gx.graph.edge_ids().take(2).collect();
        assert!(matches!(witness_ladder_l(&gx, &two), Err(Error::InvalidParams(_))));
    }
}
