//! Biconnected components via Hopcroft-Tarjan with an edge stack.

use super::{EdgeId, Graph, VertexId};

#[derive(Clone, Debug)]
pub struct Blocks {
    /// Edge sets of the blocks, each sorted; blocks ordered by their smallest edge id.
    pub edge_sets: Vec<Vec<EdgeId>>,
    pub cut_vertices: Vec<VertexId>,
}

impl Blocks {
    pub fn graphs(&self, g: &Graph) -> Vec<Graph> {
        self.edge_sets
            .iter()
            .map(|es| g.edge_subgraph(es.iter().copied()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.edge_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_sets.is_empty()
    }
}

struct State<'a> {
    g: &'a Graph,
    disc: Vec<u32>,
    low: Vec<u32>,
    time: u32,
    stack: Vec<EdgeId>,
    out: Vec<Vec<EdgeId>>,
    is_cut: Vec<bool>,
}

impl State<'_> {
    fn dfs(&mut self, v: VertexId, parent_edge: Option<EdgeId>) {
        self.time += 1;
        self.disc[v.index()] = self.time;
        self.low[v.index()] = self.time;
        let mut children = 0;
        for &(w, e) in self.g.incident(v) {
            if Some(e) == parent_edge {
                continue;
            }
            if self.disc[w.index()] == 0 {
                children += 1;
                self.stack.push(e);
                self.dfs(w, Some(e));
                self.low[v.index()] = self.low[v.index()].min(self.low[w.index()]);
                if self.low[w.index()] >= self.disc[v.index()] {
                    if parent_edge.is_some() || children > 1 {
                        self.is_cut[v.index()] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(f) = self.stack.pop() {
                        block.push(f);
                        if f == e {
                            break;
                        }
                    }
                    block.sort();
                    self.out.push(block);
                }
            } else if self.disc[w.index()] < self.disc[v.index()] {
                self.stack.push(e);
                self.low[v.index()] = self.low[v.index()].min(self.disc[w.index()]);
            }
        }
        if parent_edge.is_none() && children > 1 {
            self.is_cut[v.index()] = true;
        }
    }
}

/// Blocks (maximal 2-connected subgraphs and bridges) and cut vertices.
/// Every edge lies in exactly one block; isolated vertices form no block.
pub fn blocks(g: &Graph) -> Blocks {
    let n = g.vertex_bound();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
        is_cut: vec![false; n],
    };
    for v in g.vertices() {
        if st.disc[v.index()] == 0 {
            st.dfs(v, None);
        }
    }
    let mut edge_sets = st.out;
    edge_sets.sort();
    let cut_vertices = g.vertices().filter(|v| st.is_cut[v.index()]).collect();
    Blocks { edge_sets, cut_vertices }
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    if g.vertex_count() < 3 {
        return false;
    }
    let b = blocks(g);
    b.len() == 1 && b.edge_sets[0].len() == g.edge_count() && {
        let touched = g.vertices().all(|v| g.degree(v) > 0);
        touched
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_triangles_sharing_a_vertex() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
        let b = blocks(&g);
        assert_eq!(b.len(), 2);
        assert_eq!(b.cut_vertices, vec![VertexId(2)]);
    }

    #[test]
    fn tree_blocks_are_edges() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        let b = blocks(&g);
        assert_eq!(b.len(), 5);
        assert!(b.edge_sets.iter().all(|s| s.len() == 1));
        assert_eq!(b.cut_vertices, vec![VertexId(1), VertexId(3)]);
    }

    #[test]
    fn empty_graph_has_no_blocks() {
        assert!(blocks(&Graph::new()).is_empty());
        assert!(blocks(&Graph::with_vertices(3)).is_empty());
    }

    #[test]
    fn two_connectivity() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_two_connected(&c4));
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(!is_two_connected(&p));
        let mut iso = c4.clone();
        iso.add_vertex();
        assert!(!is_two_connected(&iso));
    }
}
