//! Condensed walls, the counterexample graph G*, and explicit embeddings.

mod embed;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::io::{Label, Labels};

pub use embed::{embed_ladder13, embed_xwing, pack_ladders13, witness_ladder_l};

/// Condensed wall of size `r`: hubs `a`,`b`, bottlenecks `z_0..z_r` and
/// `r` layers, each a path `u^j_1..u^j_{2r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensedWall {
    pub graph: Graph,
    pub r: usize,
    pub a: VertexId,
    pub b: VertexId,
    /// `z[0] = c`, `z[r] = d`.
    pub z: Vec<VertexId>,
    /// `u[j - 1][i - 1]` is `u^j_i`.
    pub u: Vec<Vec<VertexId>>,
}

impl CondensedWall {
    pub fn c(&self) -> VertexId {
        self.z[0]
    }

    pub fn d(&self) -> VertexId {
        self.z[self.r]
    }

    /// `[a, b, c, d]`.
    pub fn ends(&self) -> [VertexId; 4] {
        [self.a, self.b, self.c(), self.d()]
    }

    /// `u^j_i`, 1-based.
    pub fn u(&self, j: usize, i: usize) -> VertexId {
        self.u[j - 1][i - 1]
    }

    /// Vertices of layer `j` (1-based): its path plus `z_{j-1}` and `z_j`.
    pub fn layer(&self, j: usize) -> Vec<VertexId> {
        let mut v = self.u[j - 1].clone();
        v.push(self.z[j - 1]);
        v.push(self.z[j]);
        v.sort();
        v
    }

    /// Edges of layer `j` together with its two hub attachments.
    pub fn layer_edges(&self, j: usize) -> Vec<EdgeId> {
        let vs = self.layer(j);
        let mut out: Vec<EdgeId> = self.graph.induced(vs).edge_ids().collect();
        out.push(self.graph.edge_between(self.a, self.u(j, 1)).unwrap());
        out.push(self.graph.edge_between(self.b, self.u(j, 2 * self.r)).unwrap());
        out.sort();
        out
    }

    pub fn labels(&self) -> Labels {
        let mut l = BTreeMap::new();
        l.insert("a".to_string(), Label::One(self.a));
        l.insert("b".to_string(), Label::One(self.b));
        l.insert("c".to_string(), Label::One(self.c()));
        l.insert("d".to_string(), Label::One(self.d()));
        l.insert("z".to_string(), Label::Many(self.z.clone()));
        for (j, row) in self.u.iter().enumerate() {
            l.insert(format!("u{}", j + 1), Label::Many(row.clone()));
        }
        l
    }

    /// Rebuilds the wall view of a labelled graph, checking every wall edge.
    pub fn from_labels(graph: Graph, labels: &Labels) -> Result<Self> {
        let one = |k: &str| match labels.get(k) {
            Some(Label::One(v)) => Ok(*v),
            _ => Err(Error::Parse(format!("wall label {k:?} missing or not a vertex"))),
        };
        let many = |k: &str| match labels.get(k) {
            Some(Label::Many(v)) => Ok(v.clone()),
            _ => Err(Error::Parse(format!("wall label {k:?} missing or not a list"))),
        };
        let z = many("z")?;
        if z.len() < 2 {
            return Err(Error::Parse("wall label \"z\" needs at least two vertices".into()));
        }
        let r = z.len() - 1;
        let u = (1..=r).map(|j| many(&format!("u{j}"))).collect::<Result<Vec<_>>>()?;
        let w = CondensedWall { graph, r, a: one("a")?, b: one("b")?, z, u };
        if w.c() != one("c")? || w.d() != one("d")? {
            return Err(Error::Parse("labels c/d disagree with z".into()));
        }
        for (x, y) in wall_edge_pairs(&w) {
            if !w.graph.is_adjacent(x, y) {
                return Err(Error::Parse(format!("labelled wall lacks edge {x}-{y}")));
            }
        }
        Ok(w)
    }
}

/// Wall edges as vertex pairs, in insertion order.
fn wall_edge_pairs(w: &CondensedWall) -> Vec<(VertexId, VertexId)> {
    let r = w.r;
    let mut out = Vec::new();
    for j in 1..=r {
        for i in 1..2 * r {
            out.push((w.u(j, i), w.u(j, i + 1)));
        }
        for i in 1..=r {
            out.push((w.z[j - 1], w.u(j, 2 * i - 1)));
            out.push((w.z[j], w.u(j, 2 * i)));
        }
        out.push((w.z[j - 1], w.z[j]));
        out.push((w.a, w.u(j, 1)));
        out.push((w.b, w.u(j, 2 * r)));
    }
    out
}

/// Adds the wall vertices and edges to `g`: `a`, `b`, the `z`'s, then the
/// `u`'s row by row.
fn add_wall(g: &mut Graph, r: usize) -> Result<CondensedWall> {
    let a = g.add_vertex();
    let b = g.add_vertex();
    let z: Vec<VertexId> = (0..=r).map(|_| g.add_vertex()).collect();
    let u: Vec<Vec<VertexId>> = (0..r).map(|_| (0..2 * r).map(|_| g.add_vertex()).collect()).collect();
    let mut w = CondensedWall { graph: Graph::new(), r, a, b, z, u };
    for (x, y) in wall_edge_pairs(&w) {
        g.add_edge(x, y)?;
    }
    w.graph = g.clone();
    Ok(w)
}

pub fn build_condensed_wall(r: usize) -> Result<CondensedWall> {
    if r == 0 {
        return Err(Error::InvalidSize("wall size must be at least 1".into()));
    }
    let mut g = Graph::new();
    add_wall(&mut g, r)
}

/// `r` internally disjoint length-2 paths standing in for one edge `x`-`y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub x: VertexId,
    pub y: VertexId,
    pub mids: Vec<VertexId>,
}

/// Branch vertices of an elementary ladder, `u[i]`-`v[i]` being rung `i + 1`;
/// rung 1 is the end attached to the wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderLabels {
    pub u: Vec<VertexId>,
    pub v: Vec<VertexId>,
}

/// G*: two elementary ladders with every edge replaced by `r` length-2
/// paths, attached to a condensed wall of size `2r` (L_A at `a`,`b`; L_C at
/// `c`,`d`).
#[derive(Clone, Debug)]
pub struct CounterexampleGraph {
    pub graph: Graph,
    pub r: usize,
    pub la: usize,
    pub lc: usize,
    pub wall: CondensedWall,
    pub ladder_a: LadderLabels,
    pub ladder_c: LadderLabels,
    pub component_a: Vec<VertexId>,
    pub component_c: Vec<VertexId>,
    pub bundles: Vec<Bundle>,
}

impl CounterexampleGraph {
    /// Total rung count of the ladder G* is built around.
    pub fn l(&self) -> usize {
        self.la + self.lc + 3
    }

    pub fn bundle(&self, x: VertexId, y: VertexId) -> Option<&Bundle> {
        self.bundles.iter().find(|b| (b.x == x && b.y == y) || (b.x == y && b.y == x))
    }

    pub fn labels(&self) -> Labels {
        let mut l = self.wall.labels();
        l.insert("la_u".into(), Label::Many(self.ladder_a.u.clone()));
        l.insert("la_v".into(), Label::Many(self.ladder_a.v.clone()));
        l.insert("lc_u".into(), Label::Many(self.ladder_c.u.clone()));
        l.insert("lc_v".into(), Label::Many(self.ladder_c.v.clone()));
        l
    }
}

pub fn build_counterexample(r: usize, la: usize, lc: usize) -> Result<CounterexampleGraph> {
    if r < 2 || la < 7 || lc < 4 {
        return Err(Error::InvalidParams(format!(
            "need r >= 2, lA >= 7, lC >= 4 (got r={r}, lA={la}, lC={lc})"
        )));
    }
    let wall = build_condensed_wall(2 * r)?;
    let mut g = wall.graph.clone();
    let ladder = |g: &mut Graph, l: usize| LadderLabels {
        u: (0..l).map(|_| g.add_vertex()).collect(),
        v: (0..l).map(|_| g.add_vertex()).collect(),
    };
    let ladder_a = ladder(&mut g, la);
    let ladder_c = ladder(&mut g, lc);

    let mut pairs = Vec::new();
    for lad in [&ladder_a, &ladder_c] {
        let l = lad.u.len();
        for i in 0..l {
            pairs.push((lad.u[i], lad.v[i]));
            if i + 1 < l {
                pairs.push((lad.u[i], lad.u[i + 1]));
                pairs.push((lad.v[i], lad.v[i + 1]));
            }
        }
    }
    pairs.push((ladder_a.u[0], wall.a));
    pairs.push((ladder_a.v[0], wall.b));
    pairs.push((ladder_c.u[0], wall.c()));
    pairs.push((ladder_c.v[0], wall.d()));

    let mut bundles = Vec::new();
    for (x, y) in pairs {
        let mut mids = Vec::with_capacity(r);
        for _ in 0..r {
            let m = g.add_vertex();
            g.add_edge(x, m)?;
            g.add_edge(m, y)?;
            mids.push(m);
        }
        bundles.push(Bundle { x, y, mids });
    }

    let rest = g.without_vertices(wall.graph.vertices());
    let comp_a = crate::graph::component_of(&rest, ladder_a.u[0]);
    let comp_c = crate::graph::component_of(&rest, ladder_c.u[0]);
    Ok(CounterexampleGraph {
        graph: g,
        r,
        la,
        lc,
        wall,
        ladder_a,
        ladder_c,
        component_a: comp_a,
        component_c: comp_c,
        bundles,
    })
}

/// `2r^2 + r + 3`.
pub fn wall_vertex_count(r: usize) -> usize {
    2 * r * r + r + 3
}

/// `4r^2 + 2r`.
pub fn wall_edge_count(r: usize) -> usize {
    4 * r * r + 2 * r
}
