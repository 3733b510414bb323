//! Fixed patterns and their subdivision witnesses.
//!
//! A witness maps every branch vertex of a pattern to a host vertex and every
//! pattern edge to a host path. Zero-length pattern edges (only in X-wing
//! attachments) let two branch vertices share a host vertex.

pub mod check;
mod ladder;
mod linkage;
mod short_theta;
mod theta;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Path, VertexId};

pub use check::{validate, validate_avoiding, validate_linkage};
pub use ladder::{find_ladder, find_ladder_with, find_xwing, find_xwing_with, max_ladder_size, max_ladder_size_with};
pub use linkage::{
    count_linkages, find_linkage, find_linkage_with, max_edge_disjoint_linkages,
    max_edge_disjoint_linkages_with, LinkageWitness,
};
pub use short_theta::{recognize_short_theta, ShortTheta, ThetaConvention};
pub use theta::{
    find_house, find_house_with, find_ladder3, find_ladder3_with, find_theta, for_each_theta, ThetaFound,
    ThetaQuery, HOUSE_LENGTHS, LADDER3_LENGTHS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Elementary ladder with `l` rungs.
    Ladder(usize),
    House,
    /// Two branch vertices joined by `r` paths.
    Theta(usize),
    /// A 3-rung ladder with attachments from its first rung to `a`,`b` and
    /// from its last rung to `c`,`d` (or `d`,`c` when twisted).
    XWing { twisted: bool },
}

/// One pattern edge: endpoint branch names and the minimum host path length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternEdge {
    pub from: String,
    pub to: String,
    pub min_len: usize,
}

fn pe(from: impl Into<String>, to: impl Into<String>, min_len: usize) -> PatternEdge {
    PatternEdge { from: from.into(), to: to.into(), min_len }
}

impl Pattern {
    pub fn branch_names(&self) -> Vec<String> {
        match *self {
            Pattern::Ladder(l) => (1..=l)
                .map(|i| format!("u{i}"))
                .chain((1..=l).map(|i| format!("v{i}")))
                .collect(),
            Pattern::House => ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect(),
            Pattern::Theta(_) => vec!["x".into(), "y".into()],
            Pattern::XWing { .. } => {
                let mut v = Pattern::Ladder(3).branch_names();
                v.extend(["a", "b", "c", "d"].iter().map(|s| s.to_string()));
                v
            }
        }
    }

    /// Pattern edges in the canonical order used by witness path lists.
    /// Ladders: rungs first, then the `u` stringer, then the `v` stringer.
    pub fn edges(&self) -> Vec<PatternEdge> {
        match *self {
            Pattern::Ladder(l) => {
                let mut v: Vec<PatternEdge> =
                    (1..=l).map(|i| pe(format!("u{i}"), format!("v{i}"), 1)).collect();
                for s in ["u", "v"] {
                    for i in 1..l {
                        v.push(pe(format!("{s}{i}"), format!("{s}{}", i + 1), 1));
                    }
                }
                v
            }
            Pattern::House => vec![
                pe("a", "b", 1),
                pe("a", "e", 1),
                pe("e", "b", 1),
                pe("a", "d", 1),
                pe("d", "c", 1),
                pe("c", "b", 1),
            ],
            Pattern::Theta(r) => (0..r).map(|_| pe("x", "y", 1)).collect(),
            Pattern::XWing { twisted } => {
                let mut v = Pattern::Ladder(3).edges();
                v.push(pe("u1", "a", 0));
                v.push(pe("v1", "b", 0));
                if twisted {
                    v.push(pe("u3", "d", 0));
                    v.push(pe("v3", "c", 0));
                } else {
                    v.push(pe("u3", "c", 0));
                    v.push(pe("v3", "d", 0));
                }
                v
            }
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Pattern::Ladder(_) => "ladder",
            Pattern::House => "house",
            Pattern::Theta(_) => "theta",
            Pattern::XWing { .. } => "xwing",
        }
    }
}

/// Embedding of a pattern: branch map plus one host path per pattern edge,
/// in the order of [`Pattern::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessRepr", try_from = "WitnessRepr")]
pub struct SubdivisionWitness {
    pub pattern: Pattern,
    pub branch: BTreeMap<String, VertexId>,
    pub paths: Vec<Path>,
}

impl SubdivisionWitness {
    pub fn branch(&self, name: &str) -> VertexId {
        self.branch[name]
    }

    /// Host edges used by the witness, sorted and deduplicated.
    pub fn edge_ids(&self, g: &crate::graph::Graph) -> Option<Vec<crate::graph::EdgeId>> {
        let mut out = Vec::new();
        for p in &self.paths {
            out.extend(p.edges(g)?);
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    /// Host vertices used by the witness, sorted and deduplicated.
    pub fn vertex_ids(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.paths.iter().flat_map(|p| p.vertices().iter().copied()).collect();
        out.extend(self.branch.values().copied());
        out.sort();
        out.dedup();
        out
    }

    /// Number of rungs for ladder witnesses.
    pub fn rungs(&self) -> Option<usize> {
        match self.pattern {
            Pattern::Ladder(l) => Some(l),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twisted: Option<bool>,
    branch_map: BTreeMap<String, VertexId>,
    paths: Vec<Vec<VertexId>>,
}

impl From<SubdivisionWitness> for WitnessRepr {
    fn from(w: SubdivisionWitness) -> Self {
        let (l, r, twisted) = match w.pattern {
            Pattern::Ladder(l) => (Some(l), None, None),
            Pattern::Theta(r) => (None, Some(r), None),
            Pattern::XWing { twisted } => (None, None, Some(twisted)),
            Pattern::House => (None, None, None),
        };
        WitnessRepr {
            pattern: w.pattern.tag().to_string(),
            l,
            r,
            twisted,
            branch_map: w.branch,
            paths: w.paths.into_iter().map(Path::into_vertices).collect(),
        }
    }
}

impl TryFrom<WitnessRepr> for SubdivisionWitness {
    type Error = String;
    fn try_from(r: WitnessRepr) -> Result<Self, String> {
        let pattern = match r.pattern.as_str() {
            "ladder" => Pattern::Ladder(r.l.ok_or("ladder witness needs \"l\"")?),
            "house" => Pattern::House,
            "theta" => Pattern::Theta(r.r.ok_or("theta witness needs \"r\"")?),
            "xwing" => Pattern::XWing { twisted: r.twisted.unwrap_or(false) },
            other => return Err(format!("unknown pattern {other:?}")),
        };
        if r.paths.iter().any(|p| p.is_empty()) {
            return Err("empty path in witness".into());
        }
        Ok(SubdivisionWitness {
            pattern,
            branch: r.branch_map,
            paths: r.paths.into_iter().map(Path::new).collect(),
        })
    }
}

/// Builds a witness from branch assignments and paths keyed by pattern edge.
pub(crate) fn assemble(
    pattern: Pattern,
    branch: &[(&str, VertexId)],
    paths: Vec<Path>,
) -> SubdivisionWitness {
    debug_assert_eq!(paths.len(), pattern.edges().len());
    SubdivisionWitness {
        pattern,
        branch: branch.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        paths,
    }
}

/// Ladder view of three internally disjoint `x`-`y` paths with lengths
/// at least 1, 3, 3 (in that order): `x`,`y` become `u2`,`v2`.
pub fn ladder3_from_theta(x: VertexId, y: VertexId, paths: &[Path; 3]) -> SubdivisionWitness {
    let [mid, p, q] = paths;
    debug_assert!(p.len() >= 3 && q.len() >= 3);
    let split = |p: &Path| {
        let vs = p.vertices();
        let n = vs.len();
        (
            Path::new(vec![vs[0], vs[1]]),
            Path::new(vs[1..n - 1].to_vec()),
            Path::new(vec![vs[n - 2], vs[n - 1]]),
        )
    };
    let (xu1, rung1, v1y) = split(p);
    let (xu3, rung3, v3y) = split(q);
    let (u1, v1, u3, v3) = (rung1.first(), rung1.last(), rung3.first(), rung3.last());
    assemble(
        Pattern::Ladder(3),
        &[("u1", u1), ("u2", x), ("u3", u3), ("v1", v1), ("v2", y), ("v3", v3)],
        vec![
            rung1,
            mid.clone(),
            rung3,
            xu1.reversed(),
            xu3,
            v1y,
            v3y.reversed(),
        ],
    )
}

/// House view of three internally disjoint `x`-`y` paths with lengths at
/// least 1, 2, 3 (in that order).
pub fn house_from_theta(x: VertexId, y: VertexId, paths: &[Path; 3]) -> SubdivisionWitness {
    let [p1, p2, p3] = paths;
    let v2 = p2.vertices();
    let v3 = p3.vertices();
    let e = v2[1];
    let (d, c) = (v3[1], v3[2]);
    assemble(
        Pattern::House,
        &[("a", x), ("b", y), ("c", c), ("d", d), ("e", e)],
        vec![
            p1.clone(),
            Path::new(v2[..2].to_vec()),
            Path::new(v2[1..].to_vec()),
            Path::new(v3[..2].to_vec()),
            Path::new(v3[1..=2].to_vec()),
            Path::new(v3[2..].to_vec()),
        ],
    )
}

/// Rotates a ladder witness so that rung order is reversed.
pub fn reverse_ladder(w: &SubdivisionWitness) -> SubdivisionWitness {
    let Pattern::Ladder(l) = w.pattern else { return w.clone() };
    let mut branch = BTreeMap::new();
    for i in 1..=l {
        branch.insert(format!("u{i}"), w.branch[&format!("u{}", l + 1 - i)]);
        branch.insert(format!("v{i}"), w.branch[&format!("v{}", l + 1 - i)]);
    }
    let mut paths = Vec::with_capacity(w.paths.len());
    for i in 1..=l {
        paths.push(w.paths[l - i].clone());
    }
    for s in 0..2 {
        for i in 1..l {
            // new stringer i..i+1 is old stringer (l-i)..(l+1-i), reversed
            let old = l + s * (l - 1) + (l - 1 - i);
            paths.push(w.paths[old].reversed());
        }
    }
    SubdivisionWitness { pattern: w.pattern, branch, paths }
}
