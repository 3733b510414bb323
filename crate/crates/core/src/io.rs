//! Graph JSON and DOT export.
//!
//! Graph JSON: `{"vertices":[..],"edges":[[u,v],..],"labels":{..}}` with the
//! smaller endpoint first. Edge ids are the positions in `edges` unless an
//! explicit `"edge_ids"` array is present; it is written only when the ids
//! are not `0..m`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId};
use crate::patterns::SubdivisionWitness;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    One(VertexId),
    Many(Vec<VertexId>),
}

pub type Labels = BTreeMap<String, Label>;

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_ids: Option<Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: Labels,
}

/// Parses graph JSON, validating simplicity and label references.
pub fn parse_graph(bytes: &[u8]) -> Result<(Graph, Labels)> {
    let doc: GraphDoc = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let mut g = Graph::new();
    for &v in &doc.vertices {
        if g.has_vertex(v) {
            return Err(Error::InvariantViolation(format!("vertex {v} listed twice")));
        }
        g.insert_vertex(v);
    }
    if let Some(ids) = &doc.edge_ids {
        if ids.len() != doc.edges.len() {
            return Err(Error::Parse("\"edge_ids\" and \"edges\" differ in length".into()));
        }
    }
    for (k, &[u, v]) in doc.edges.iter().enumerate() {
        let id = doc.edge_ids.as_ref().map_or(EdgeId(k as u32), |ids| ids[k]);
        if !g.has_vertex(u) || !g.has_vertex(v) {
            return Err(Error::InvariantViolation(format!("edge {u}-{v} has an unknown endpoint")));
        }
        g.insert_edge(id, u, v)?;
    }
    for (name, l) in &doc.labels {
        let vs: Vec<VertexId> = match l {
            Label::One(v) => vec![*v],
            Label::Many(v) => v.clone(),
        };
        if let Some(v) = vs.iter().find(|v| !g.has_vertex(**v)) {
            return Err(Error::InvariantViolation(format!("label {name:?} names unknown vertex {v}")));
        }
    }
    Ok((g, doc.labels))
}

/// Serializes `g` and its labels as one line of JSON (no trailing newline).
pub fn export_graph(g: &Graph, labels: &Labels) -> String {
    let mut edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
    edges.sort();
    let dense = edges.iter().enumerate().all(|(k, e)| e.0 .0 as usize == k);
    let doc = GraphDoc {
        vertices: g.vertices().collect(),
        edges: edges.iter().map(|&(_, u, v)| [u.min(v), u.max(v)]).collect(),
        edge_ids: (!dense).then(|| edges.iter().map(|e| e.0).collect()),
        labels: labels.clone(),
    };
    serde_json::to_string(&doc).expect("graph documents always serialize")
}

/// Something to draw in bold on top of a graph.
#[derive(Clone, Copy, Debug)]
pub enum Highlight<'a> {
    Witness(&'a SubdivisionWitness),
    Edges(&'a EdgeSet),
}

const PALETTE: [&str; 6] = ["red", "blue", "darkgreen", "purple", "orange", "brown"];

/// DOT rendering; labelled vertices are named, hubs `a`..`d` filled.
pub fn export_dot(g: &Graph, labels: &Labels, highlights: &[Highlight]) -> Result<String> {
    let mut style: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (k, h) in highlights.iter().enumerate() {
        let ids: Vec<EdgeId> = match h {
            Highlight::Witness(w) => {
                let mut out = Vec::new();
                for p in &w.paths {
                    let es = p
                        .edges(g)
                        .ok_or_else(|| Error::DanglingReference(format!("witness path {:?} leaves the graph", p)))?;
                    out.extend(es);
                }
                out
            }
            Highlight::Edges(es) => {
                if let Some(e) = es.iter().find(|&e| !g.has_edge(e)) {
                    return Err(Error::DanglingReference(format!("unknown edge {e}")));
                }
                es.iter().collect()
            }
        };
        for e in ids {
            style.entry(e).or_insert(k);
        }
    }

    let mut names: BTreeMap<VertexId, String> = BTreeMap::new();
    for (name, l) in labels {
        match l {
            Label::One(v) => {
                names.entry(*v).or_insert_with(|| name.clone());
            }
            Label::Many(vs) if name == "z" => {
                for (i, v) in vs.iter().enumerate() {
                    names.entry(*v).or_insert_with(|| format!("z{i}"));
                }
            }
            Label::Many(_) => {}
        }
    }

    let mut s = String::from("graph G {\n");
    if g.vertex_count() > 0 {
        s.push_str("  node [shape=circle, width=0.25, fontsize=10];\n");
    }
    for v in g.vertices() {
        match names.get(&v) {
            Some(n) if ["a", "b", "c", "d"].contains(&n.as_str()) => {
                let _ = writeln!(s, "  {v} [label=\"{n}\", style=filled, fillcolor=gold];");
            }
            Some(n) => {
                let _ = writeln!(s, "  {v} [label=\"{n}\"];");
            }
            None => {
                let _ = writeln!(s, "  {v} [label=\"\"];");
            }
        }
    }
    let mut edges: Vec<(EdgeId, VertexId, VertexId)> = g.edges().collect();
    edges.sort();
    for (e, u, v) in edges {
        match style.get(&e) {
            Some(&k) => {
                let _ = writeln!(s, "  {u} -- {v} [color={}, penwidth=3];", PALETTE[k % PALETTE.len()]);
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let (g, l) = parse_graph(br#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(l.is_empty());
        assert_eq!(export_graph(&g, &l), r#"{"vertices":[0,1,2],"edges":[[0,1],[1,2],[0,2]]}"#);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            parse_graph(br#"{"vertices":[0],"edges":[[0,0]]}"#),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(
            parse_graph(br#"{"vertices":[0,1],"edges":[[0,1],[1,0]]}"#),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(parse_graph(b"{\"vertices\":[0],\n\"edges\":"), Err(Error::Parse(_))));
    }

    #[test]
    fn sparse_edge_ids_survive() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let h = g.without_edges([EdgeId(1)].iter());
        let s = export_graph(&h, &Labels::new());
        assert!(s.contains("\"edge_ids\":[0,2]"));
        let (back, _) = parse_graph(s.as_bytes()).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn dot_output() {
        assert_eq!(export_dot(&Graph::new(), &Labels::new(), &[]).unwrap(), "graph G {\n}\n");
        let g = Graph::from_edges(2, &[(0, 1)]);
        let bad: EdgeSet = [EdgeId(7)].into_iter().collect();
        assert!(matches!(
            export_dot(&g, &Labels::new(), &[Highlight::Edges(&bad)]),
            Err(Error::DanglingReference(_))
        ));
    }
}
