//! Independent witness validation. Uses only elementary graph queries.

use std::collections::{BTreeMap, BTreeSet};

use super::{LinkageWitness, SubdivisionWitness};
use crate::graph::{EdgeSet, Graph, VertexId};

/// Checks a witness against `g`; the error names the first violated condition.
pub fn validate(g: &Graph, w: &SubdivisionWitness) -> Result<(), String> {
    validate_avoiding(g, w, &EdgeSet::new())
}

/// As [`validate`], additionally rejecting any use of `forbidden` edges.
pub fn validate_avoiding(g: &Graph, w: &SubdivisionWitness, forbidden: &EdgeSet) -> Result<(), String> {
    let pedges = w.pattern.edges();
    let names = w.pattern.branch_names();
    if w.paths.len() != pedges.len() {
        return Err(format!("expected {} paths, got {}", pedges.len(), w.paths.len()));
    }
    for n in &names {
        let Some(&v) = w.branch.get(n) else {
            return Err(format!("branch vertex {n} missing"));
        };
        if !g.has_vertex(v) {
            return Err(format!("branch vertex {n} -> {v} not in graph"));
        }
    }
    if w.branch.len() != names.len() {
        return Err("unexpected branch names".into());
    }

    // branch vertices may coincide only through zero-length pattern edges
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..names.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (pe, path) in pedges.iter().zip(&w.paths) {
        if path.len() == 0 {
            let a = find(&mut parent, index[pe.from.as_str()]);
            let b = find(&mut parent, index[pe.to.as_str()]);
            parent[a] = b;
        }
    }
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let same_host = w.branch[&names[i]] == w.branch[&names[j]];
            let same_class = find(&mut parent, i) == find(&mut parent, j);
            if same_host != same_class {
                return Err(format!(
                    "branch vertices {} and {} {} share a host vertex",
                    names[i],
                    names[j],
                    if same_host { "illegally" } else { "must" }
                ));
            }
        }
    }
    let branch_hosts: BTreeSet<VertexId> = w.branch.values().copied().collect();

    let mut interior_seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges_seen = BTreeSet::new();
    for (k, (pe, path)) in pedges.iter().zip(&w.paths).enumerate() {
        let vs = path.vertices();
        if vs[0] != w.branch[&pe.from] || vs[vs.len() - 1] != w.branch[&pe.to] {
            return Err(format!("path {k} ({}-{}) has wrong endpoints", pe.from, pe.to));
        }
        if path.len() < pe.min_len {
            return Err(format!("path {k} ({}-{}) shorter than {}", pe.from, pe.to, pe.min_len));
        }
        let mut local = BTreeSet::new();
        for &v in vs {
            if !g.has_vertex(v) {
                return Err(format!("path {k} uses missing vertex {v}"));
            }
            if !local.insert(v) {
                return Err(format!("path {k} repeats vertex {v}"));
            }
        }
        for pair in vs.windows(2) {
            let Some(e) = g.edge_between(pair[0], pair[1]) else {
                return Err(format!("path {k} steps along non-edge {}-{}", pair[0], pair[1]));
            };
            if forbidden.contains(e) {
                return Err(format!("path {k} uses forbidden edge {e}"));
            }
            if !edges_seen.insert(e) {
                return Err(format!("edge {e} used twice"));
            }
        }
        if vs.len() > 2 {
            for &v in &vs[1..vs.len() - 1] {
                if branch_hosts.contains(&v) {
                    return Err(format!("path {k} passes through branch vertex {v}"));
                }
                if !interior_seen.insert(v) {
                    return Err(format!("interior vertex {v} shared between paths"));
                }
            }
        }
    }
    Ok(())
}

/// Checks an (a-b, c-d)-linkage: two vertex-disjoint paths with the right ends.
pub fn validate_linkage(
    g: &Graph,
    l: &LinkageWitness,
    ends: [VertexId; 4],
    forbidden: &EdgeSet,
) -> Result<(), String> {
    let [a, b, c, d] = ends;
    for (name, p, s, t) in [("a-b", &l.path_ab, a, b), ("c-d", &l.path_cd, c, d)] {
        let vs = p.vertices();
        let ok_ends = (vs[0] == s && vs[vs.len() - 1] == t) || (vs[0] == t && vs[vs.len() - 1] == s);
        if !ok_ends {
            return Err(format!("{name} path has wrong endpoints"));
        }
        let mut seen = BTreeSet::new();
        for &v in vs {
            if !g.has_vertex(v) || !seen.insert(v) {
                return Err(format!("{name} path is not a simple path in the graph"));
            }
        }
        for pair in vs.windows(2) {
            match g.edge_between(pair[0], pair[1]) {
                Some(e) if !forbidden.contains(e) => {}
                _ => return Err(format!("{name} path uses a missing or forbidden edge")),
            }
        }
    }
    let ab: BTreeSet<_> = l.path_ab.vertices().iter().collect();
    if l.path_cd.vertices().iter().any(|v| ab.contains(v)) {
        return Err("paths are not vertex-disjoint".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Path;
    use crate::patterns::Pattern;

    fn p(v: &[u32]) -> Path {
        Path::new(v.iter().map(|&i| VertexId(i)).collect())
    }

    fn theta_witness(paths: Vec<Path>) -> SubdivisionWitness {
        SubdivisionWitness {
            pattern: Pattern::Theta(paths.len()),
            branch: [("x".to_string(), VertexId(0)), ("y".to_string(), VertexId(1))].into(),
            paths,
        }
    }

    #[test]
    fn accepts_and_rejects_thetas() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]);
        assert!(validate(&g, &theta_witness(vec![p(&[0, 1]), p(&[0, 2, 1]), p(&[0, 3, 4, 1])])).is_ok());
        let shared = theta_witness(vec![p(&[0, 2, 1]), p(&[0, 2, 1])]);
        assert!(validate(&g, &shared).is_err());
        let bad_end = theta_witness(vec![p(&[0, 2]), p(&[0, 1])]);
        assert!(validate(&g, &bad_end).is_err());
        let mut forbidden = EdgeSet::new();
        forbidden.insert(g.edge_between(VertexId(0), VertexId(1)).unwrap());
        let w = theta_witness(vec![p(&[0, 1]), p(&[0, 2, 1])]);
        assert!(validate_avoiding(&g, &w, &forbidden).is_err());
    }

    #[test]
    fn zero_length_identifies_branches() {
        // xwing attachments of length zero: u1 = a
        let names = Pattern::XWing { twisted: false }.branch_names();
        assert!(names.contains(&"a".to_string()));
        let g = Graph::from_edges(2, &[(0, 1)]);
        let w = SubdivisionWitness {
            pattern: Pattern::Theta(1),
            branch: [("x".to_string(), VertexId(0)), ("y".to_string(), VertexId(0))].into(),
            paths: vec![p(&[0])],
        };
        // min length 1 violated and x,y share a host without a zero-length edge allowed
        assert!(validate(&g, &w).is_err());
    }
}
