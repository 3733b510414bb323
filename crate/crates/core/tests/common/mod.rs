//! Test-side oracles: brute force over paths and edge subsets, written
//! without the library's search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use ladder_epp::{EdgeId, EdgeSet, Graph, VertexId};
use rand::Rng;

/// Dense re-indexing of a graph with at most 128 edges.
pub struct Dense {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub ids: Vec<EdgeId>,
    pub vids: Vec<VertexId>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        let vids: Vec<VertexId> = g.vertices().collect();
        let idx: BTreeMap<VertexId, usize> = vids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); vids.len()];
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for (e, u, v) in g.edges() {
            let (a, b) = (idx[&u], idx[&v]);
            adj[a].push((b, edges.len()));
            adj[b].push((a, edges.len()));
            edges.push((a, b));
            ids.push(e);
        }
        assert!(edges.len() <= 128, "oracle graphs have at most 128 edges");
        Dense { n: vids.len(), edges, ids, vids, adj }
    }

    pub fn mask_of(&self, es: &EdgeSet) -> u128 {
        self.ids.iter().enumerate().filter(|(_, e)| es.contains(**e)).fold(0, |m, (i, _)| m | 1 << i)
    }

    /// All simple x-y paths as (interior vertex mask, edge mask, length).
    fn paths(&self, x: usize, y: usize) -> Vec<(u64, u128, usize)> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.n];
        seen[x] = true;
        self.walk(x, y, &mut seen, 0, 0, 0, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(&self, at: usize, y: usize, seen: &mut [bool], vm: u64, em: u128, len: usize, out: &mut Vec<(u64, u128, usize)>) {
        for &(w, e) in &self.adj[at] {
            if w == y {
                out.push((vm, em | 1 << e, len + 1));
            } else if !seen[w] {
                seen[w] = true;
                self.walk(w, y, seen, vm | 1 << w, em | 1 << e, len + 1, out);
                seen[w] = false;
            }
        }
    }

    /// Edge masks of all thetas whose sorted path lengths dominate `min`.
    pub fn thetas(&self, min: [usize; 3]) -> Vec<u128> {
        let mut found = HashSet::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.adj[x].len() < 3 || self.adj[y].len() < 3 {
                    continue;
                }
                let ps = self.paths(x, y);
                for i in 0..ps.len() {
                    for j in i + 1..ps.len() {
                        if ps[i].0 & ps[j].0 != 0 || ps[i].1 & ps[j].1 != 0 {
                            continue;
                        }
                        for k in j + 1..ps.len() {
                            if ps[k].0 & (ps[i].0 | ps[j].0) != 0 || ps[k].1 & (ps[i].1 | ps[j].1) != 0 {
                                continue;
                            }
                            let mut l = [ps[i].2, ps[j].2, ps[k].2];
                            l.sort();
                            if l[0] >= min[0] && l[1] >= min[1] && l[2] >= min[2] {
                                found.insert(ps[i].1 | ps[j].1 | ps[k].1);
                            }
                        }
                    }
                }
            }
        }
        minimal(found.into_iter().collect())
    }

    /// Edge masks of inclusion-minimal trees holding at least `m >= 2`
    /// vertices of `a`; by edge-subset enumeration.
    pub fn am_trees(&self, a: &BTreeSet<VertexId>, m: usize) -> Vec<u128> {
        assert!(m >= 2);
        let ne = self.edges.len();
        assert!(ne <= 20, "edge-subset enumeration capped at 20 edges");
        let in_a: Vec<bool> = self.vids.iter().map(|v| a.contains(v)).collect();
        let mut out = Vec::new();
        let mut parent: Vec<usize> = Vec::with_capacity(self.n);
        'subset: for s in 1u32..1 << ne {
            parent.clear();
            parent.extend(0..self.n);
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut touched: u64 = 0;
            for i in 0..ne {
                if s >> i & 1 == 1 {
                    let (u, v) = self.edges[i];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        continue 'subset;
                    }
                    parent[ru] = rv;
                    touched |= 1 << u | 1 << v;
                }
            }
            if touched.count_ones() != s.count_ones() + 1 {
                continue;
            }
            let hits = (0..self.n).filter(|&v| touched >> v & 1 == 1 && in_a[v]).count();
            if hits >= m {
                out.push(s as u128);
            }
        }
        minimal(out)
    }
}

/// Keeps masks with no proper subset in the list.
pub fn minimal(mut ms: Vec<u128>) -> Vec<u128> {
    ms.sort_by_key(|m| (m.count_ones(), *m));
    ms.dedup();
    let mut keep: Vec<u128> = Vec::new();
    for m in ms {
        if !keep.iter().any(|&k| k & m == k) {
            keep.push(m);
        }
    }
    keep
}

/// Whether `k` pairwise disjoint masks exist.
pub fn has_disjoint(ms: &[u128], k: usize) -> bool {
    fn go(ms: &[u128], from: usize, used: u128, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        (from..ms.len()).any(|i| ms[i] & used == 0 && go(ms, i + 1, used | ms[i], k - 1))
    }
    go(ms, 0, 0, k)
}

pub fn ladder3_masks(g: &Graph) -> Vec<u128> {
    Dense::new(g).thetas([1, 3, 3])
}

pub fn house_masks(g: &Graph) -> Vec<u128> {
    Dense::new(g).thetas([1, 2, 3])
}

/// Whether `g` has a tree with at least `m` vertices of `a`.
pub fn has_am_tree(g: &Graph, a: &BTreeSet<VertexId>, m: usize) -> bool {
    let mut seen = BTreeSet::new();
    for s in g.vertices() {
        if seen.contains(&s) {
            continue;
        }
        let mut stack = vec![s];
        seen.insert(s);
        let mut hits = 0;
        while let Some(v) = stack.pop() {
            hits += a.contains(&v) as usize;
            for w in g.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if hits >= m {
            return true;
        }
    }
    false
}

/// Whether `k` edge-disjoint A-m-trees exist.
pub fn am_packing_exists(g: &Graph, a: &BTreeSet<VertexId>, m: usize, k: usize) -> bool {
    if m == 1 {
        return g.vertices().any(|v| a.contains(&v));
    }
    has_disjoint(&Dense::new(g).am_trees(a, m), k)
}

/// Segments of a tree: the edges left after suppressing degree-2 vertices.
pub fn segments(t: &Graph) -> usize {
    t.vertices().filter(|&v| t.degree(v) != 2).count() - 1
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for i in 1..n as u32 {
        let j = rng.gen_range(0..i);
        g.add_edge(VertexId(j), VertexId(i)).unwrap();
    }
    g
}

/// A random spanning tree plus up to `extra` random chords.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut g = random_tree(rng, n);
    for _ in 0..extra {
        let (u, v) = (VertexId(rng.gen_range(0..n as u32)), VertexId(rng.gen_range(0..n as u32)));
        if u != v && !g.is_adjacent(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// A random 2-connected graph on `n >= 3` vertices: a cycle, then ears
/// between existing vertices until `n` is reached, then up to `extra` chords.
pub fn random_two_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let c = rng.gen_range(3..=n);
    let mut g = Graph::with_vertices(n);
    for i in 0..c as u32 {
        g.add_edge(VertexId(i), VertexId((i + 1) % c as u32)).unwrap();
    }
    let mut have = c as u32;
    while (have as usize) < n {
        let len = rng.gen_range(1..=(n - have as usize));
        let x = VertexId(rng.gen_range(0..have));
        let mut y = VertexId(rng.gen_range(0..have));
        while y == x {
            y = VertexId(rng.gen_range(0..have));
        }
        let mut prev = x;
        for i in 0..len as u32 {
            g.add_edge(prev, VertexId(have + i)).unwrap();
            prev = VertexId(have + i);
        }
        g.add_edge(prev, y).unwrap();
        have += len as u32;
    }
    for _ in 0..extra {
        let (u, v) = (VertexId(rng.gen_range(0..n as u32)), VertexId(rng.gen_range(0..n as u32)));
        if u != v && !g.is_adjacent(u, v) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Every graph on `n` labelled vertices, as edge lists over pairs.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |s| {
        let es: Vec<(u32, u32)> = (0..pairs.len()).filter(|i| s >> i & 1 == 1).map(|i| pairs[i]).collect();
        Graph::from_edges(n, &es)
    })
}

/// The condensed wall rebuilt from its defining rules, as unordered pairs
/// of role names.
pub fn wall_rule_edges(r: usize) -> BTreeSet<(String, String)> {
    let z = |i: usize| format!("z{i}");
    let u = |j: usize, i: usize| format!("u{j}_{i}");
    let mut es = BTreeSet::new();
    let mut add = |x: String, y: String| {
        es.insert(if x < y { (x, y) } else { (y, x) });
    };
    for j in 1..=r {
        for i in 1..2 * r {
            add(u(j, i), u(j, i + 1));
        }
        for i in 1..=r {
            add(z(j - 1), u(j, 2 * i - 1));
            add(z(j), u(j, 2 * i));
        }
        add("a".into(), u(j, 1));
        add("b".into(), u(j, 2 * r));
        add(z(j - 1), z(j));
    }
    es
}
