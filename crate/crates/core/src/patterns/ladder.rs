//! Exhaustive search for ladders with `l` rungs and for X-wings.
//!
//! A ladder is grown rung by rung. Branch vertices `u2`,`v2` are joined by a
//! rung and by a path of length at least 3 (the far end, carrying the corners
//! `u1`,`v1`). Each further step routes two stringers to new branch vertices
//! and a rung between them. The last end is a path of length at least 3
//! between the final branch vertices, found by a component check rather than
//! enumeration.

use super::{assemble, Pattern, SubdivisionWitness};
use crate::budget::Budget;
use crate::error::Result;
use crate::graph::{bfs_path, blocks, disjoint_set_paths, EdgeSet, Graph, Path, VertexId};

type Then<'t, 'g> = &'t mut dyn FnMut(&mut Grow<'g>, &[VertexId]) -> Result<bool>;
type Accept<'t, 'g> = &'t dyn Fn(&Grow<'g>, VertexId) -> bool;

struct Grow<'g> {
    g: &'g Graph,
    budget: &'g Budget,
    used: Vec<bool>,
    /// May end a path but never be passed through.
    no_pass: Vec<bool>,
    free: usize,
    l: usize,
    rungs: Vec<Path>,
    ustr: Vec<Path>,
    vstr: Vec<Path>,
    cap1: Option<Path>,
    found: Option<SubdivisionWitness>,
}

impl<'g> Grow<'g> {
    fn new(g: &'g Graph, budget: &'g Budget, l: usize) -> Self {
        Grow {
            g,
            budget,
            used: vec![false; g.vertex_bound()],
            no_pass: vec![false; g.vertex_bound()],
            free: g.vertex_count(),
            l,
            rungs: Vec::new(),
            ustr: Vec::new(),
            vstr: Vec::new(),
            cap1: None,
            found: None,
        }
    }

    fn take(&mut self, v: VertexId) {
        debug_assert!(!self.used[v.index()]);
        self.used[v.index()] = true;
        self.free -= 1;
    }

    fn give(&mut self, v: VertexId) {
        self.used[v.index()] = false;
        self.free += 1;
    }

    fn deg3(&self, v: VertexId) -> bool {
        self.g.degree(v) >= 3 && !self.no_pass[v.index()]
    }

    /// Paths from `s` through unused vertices to an accepted end.
    fn path_open(
        &mut self,
        s: VertexId,
        min_len: usize,
        reserve: usize,
        accept: Accept<'_, 'g>,
        then: Then<'_, 'g>,
    ) -> Result<bool> {
        let mut path = vec![s];
        self.open_rec(&mut path, min_len, reserve, accept, then)
    }

    fn open_rec(
        &mut self,
        path: &mut Vec<VertexId>,
        min_len: usize,
        reserve: usize,
        accept: Accept<'_, 'g>,
        then: &mut dyn FnMut(&mut Grow<'g>, &[VertexId]) -> Result<bool>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let tip = *path.last().unwrap();
        if path.len() > min_len && accept(self, tip) && then(self, path)? {
            return Ok(true);
        }
        if (path.len() > 1 && self.no_pass[tip.index()]) || self.free <= reserve {
            return Ok(false);
        }
        let g = self.g;
        for &(w, _) in g.incident(tip) {
            if self.used[w.index()] {
                continue;
            }
            self.take(w);
            path.push(w);
            let r = self.open_rec(path, min_len, reserve, accept, then);
            path.pop();
            self.give(w);
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Paths from `s` to the used vertex `t` through unused vertices.
    fn path_to(
        &mut self,
        s: VertexId,
        t: VertexId,
        min_len: usize,
        reserve: usize,
        then: Then<'_, 'g>,
    ) -> Result<bool> {
        let mut path = vec![s];
        self.to_rec(&mut path, t, min_len, reserve, then)
    }

    fn to_rec(
        &mut self,
        path: &mut Vec<VertexId>,
        t: VertexId,
        min_len: usize,
        reserve: usize,
        then: &mut dyn FnMut(&mut Grow<'g>, &[VertexId]) -> Result<bool>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let tip = *path.last().unwrap();
        let g = self.g;
        for &(w, _) in g.incident(tip) {
            if w == t {
                if path.len() >= min_len {
                    path.push(t);
                    let r = then(self, path);
                    path.pop();
                    if r? {
                        return Ok(true);
                    }
                }
                continue;
            }
            if self.used[w.index()] || self.no_pass[w.index()] || self.free <= reserve {
                continue;
            }
            self.take(w);
            path.push(w);
            let r = self.to_rec(path, t, min_len, reserve, then);
            path.pop();
            self.give(w);
            if r? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether some component of the unused graph touching both `p` and `q`
    /// has at least `need` vertices.
    fn room(&self, p: VertexId, q: VertexId, need: usize) -> bool {
        let mut comp = vec![usize::MAX; self.g.vertex_bound()];
        let mut sizes = Vec::new();
        for start in self.g.neighbors(p) {
            if self.used[start.index()] || self.no_pass[start.index()] || comp[start.index()] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            comp[start.index()] = id;
            let mut stack = vec![start];
            let mut n = 0;
            while let Some(x) = stack.pop() {
                n += 1;
                for y in self.g.neighbors(x) {
                    if !self.used[y.index()] && !self.no_pass[y.index()] && comp[y.index()] == usize::MAX {
                        comp[y.index()] = id;
                        stack.push(y);
                    }
                }
            }
            sizes.push(n);
        }
        self.g
            .neighbors(q)
            .any(|y| !self.used[y.index()] && comp[y.index()] != usize::MAX && sizes[comp[y.index()]] >= need)
    }

    /// A path `p, x, .., y, q` of length at least 3 through unused vertices.
    fn cheap_cap(&self, p: VertexId, q: VertexId) -> Option<Path> {
        let free = |v: VertexId| !self.used[v.index()] && !self.no_pass[v.index()];
        let xs: Vec<VertexId> = self.g.neighbors(p).filter(|&v| free(v)).collect();
        let ys: Vec<VertexId> = self.g.neighbors(q).filter(|&v| free(v)).collect();
        for &x in &xs {
            for &y in &ys {
                if x == y {
                    continue;
                }
                if let Some(mid) = bfs_path(self.g, x, y, &|v| free(v)) {
                    let mut vs = vec![p];
                    vs.extend_from_slice(mid.vertices());
                    vs.push(q);
                    return Some(Path::new(vs));
                }
            }
        }
        None
    }

    fn ladder_from(&mut self, p: VertexId, q: VertexId) -> Result<bool> {
        let l = self.l;
        self.take(p);
        self.take(q);
        let r = self.path_to(p, q, 1, 2 * (l - 3) + 4, &mut |s, rung| {
            s.rungs.push(Path::new(rung.to_vec()));
            let r = s.path_to(p, q, 3, 2 * (s.l - 3) + 2, &mut |s, cap| {
                s.cap1 = Some(Path::new(cap.to_vec()));
                if s.l == 3 {
                    s.finish(p, q)
                } else {
                    s.ear(p, q, s.l - 3)
                }
            });
            s.rungs.pop();
            r
        });
        self.give(p);
        self.give(q);
        r
    }

    fn ear(&mut self, p: VertexId, q: VertexId, e: usize) -> Result<bool> {
        if !self.room(p, q, 2 * e + 2) {
            return Ok(false);
        }
        let rest = 2 * (e - 1) + 2;
        self.path_open(p, 1, rest + 1, &|s, v| s.deg3(v), &mut |s, su| {
            let p2 = *su.last().unwrap();
            s.ustr.push(Path::new(su.to_vec()));
            let r = s.path_open(q, 1, rest, &|s, v| s.deg3(v), &mut |s, sv| {
                let q2 = *sv.last().unwrap();
                s.vstr.push(Path::new(sv.to_vec()));
                let r = s.path_to(p2, q2, 1, rest, &mut |s, rung| {
                    s.rungs.push(Path::new(rung.to_vec()));
                    let r = if e == 1 { s.finish(p2, q2) } else { s.ear(p2, q2, e - 1) };
                    s.rungs.pop();
                    r
                });
                s.vstr.pop();
                r
            });
            s.ustr.pop();
            r
        })
    }

    fn finish(&mut self, p: VertexId, q: VertexId) -> Result<bool> {
        let Some(cap2) = self.cheap_cap(p, q) else { return Ok(false) };
        self.found = Some(self.assemble_ladder(&cap2));
        Ok(true)
    }

    fn assemble_ladder(&self, cap2: &Path) -> SubdivisionWitness {
        let c1 = self.cap1.as_ref().unwrap().vertices();
        let c2 = cap2.vertices();
        let (n1, n2) = (c1.len(), c2.len());
        let mut us = vec![c1[1], c1[0]];
        let mut vs = vec![c1[n1 - 2], c1[n1 - 1]];
        us.extend(self.ustr.iter().map(Path::last));
        vs.extend(self.vstr.iter().map(Path::last));
        us.push(c2[1]);
        vs.push(c2[n2 - 2]);
        let mut paths = vec![Path::new(c1[1..n1 - 1].to_vec())];
        paths.extend(self.rungs.iter().cloned());
        paths.push(Path::new(c2[1..n2 - 1].to_vec()));
        paths.push(Path::new(vec![c1[1], c1[0]]));
        paths.extend(self.ustr.iter().cloned());
        paths.push(Path::new(vec![c2[0], c2[1]]));
        paths.push(Path::new(vec![c1[n1 - 2], c1[n1 - 1]]));
        paths.extend(self.vstr.iter().cloned());
        paths.push(Path::new(vec![c2[n2 - 1], c2[n2 - 2]]));
        ladder_witness(&us, &vs, paths)
    }
}

fn ladder_witness(us: &[VertexId], vs: &[VertexId], paths: Vec<Path>) -> SubdivisionWitness {
    let l = us.len();
    let names: Vec<(String, VertexId)> = us
        .iter()
        .enumerate()
        .map(|(i, &u)| (format!("u{}", i + 1), u))
        .chain(vs.iter().enumerate().map(|(i, &v)| (format!("v{}", i + 1), v)))
        .collect();
    let refs: Vec<(&str, VertexId)> = names.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    assemble(Pattern::Ladder(l), &refs, paths)
}

fn single_rung(g: &Graph) -> Option<SubdivisionWitness> {
    let (_, u, v) = g.edges().next()?;
    Some(ladder_witness(&[u], &[v], vec![Path::new(vec![u, v])]))
}

fn two_rungs(g: &Graph, budget: &Budget) -> Result<Option<SubdivisionWitness>> {
    for (_, p, q) in g.edges() {
        budget.tick()?;
        let mut s = Grow::new(g, budget, 2);
        s.take(p);
        s.take(q);
        if let Some(cap) = s.cheap_cap(p, q) {
            let c = cap.vertices();
            let n = c.len();
            let paths = vec![
                Path::new(vec![p, q]),
                Path::new(c[1..n - 1].to_vec()),
                Path::new(vec![p, c[1]]),
                Path::new(vec![q, c[n - 2]]),
            ];
            return Ok(Some(ladder_witness(&[p, c[1]], &[q, c[n - 2]], paths)));
        }
    }
    Ok(None)
}

pub fn find_ladder(g: &Graph, l: usize, forbidden: &EdgeSet) -> Result<Option<SubdivisionWitness>> {
    find_ladder_with(g, l, forbidden, &Budget::from_env())
}

/// An `l`-rung ladder avoiding `forbidden`, searched block by block.
pub fn find_ladder_with(
    g: &Graph,
    l: usize,
    forbidden: &EdgeSet,
    budget: &Budget,
) -> Result<Option<SubdivisionWitness>> {
    let h = g.without_edges(forbidden.iter().collect::<Vec<_>>().iter());
    match l {
        0 => return Ok(None),
        1 => return Ok(single_rung(&h)),
        _ => {}
    }
    for b in blocks(&h).graphs(&h) {
        if b.vertex_count() < 2 * l {
            continue;
        }
        if l == 2 {
            if let Some(w) = two_rungs(&b, budget)? {
                return Ok(Some(w));
            }
            continue;
        }
        let branch: Vec<VertexId> = b.vertices().filter(|&v| b.degree(v) >= 3).collect();
        if branch.len() < 2 * l - 4 {
            continue;
        }
        for (i, &p) in branch.iter().enumerate() {
            for &q in &branch[i + 1..] {
                let mut s = Grow::new(&b, budget, l);
                if s.ladder_from(p, q)? {
                    return Ok(s.found);
                }
            }
        }
    }
    Ok(None)
}

pub fn max_ladder_size(g: &Graph) -> Result<usize> {
    max_ladder_size_with(g, &Budget::from_env())
}

/// Largest `l` with an `l`-rung ladder: 0 without edges, 1 with edges only.
pub fn max_ladder_size_with(g: &Graph, budget: &Budget) -> Result<usize> {
    let none = EdgeSet::new();
    let mut l = 0;
    while find_ladder_with(g, l + 1, &none, budget)?.is_some() {
        l += 1;
    }
    Ok(l)
}

pub fn find_xwing(g: &Graph, ends: [VertexId; 4], forbidden: &EdgeSet) -> Result<Option<SubdivisionWitness>> {
    find_xwing_with(g, ends, forbidden, &Budget::from_env())
}

/// An X-wing whose first rung attaches to `a`,`b` and last rung to `c`,`d`.
pub fn find_xwing_with(
    g: &Graph,
    [a, b, c, d]: [VertexId; 4],
    forbidden: &EdgeSet,
    budget: &Budget,
) -> Result<Option<SubdivisionWitness>> {
    let h = g.without_edges(forbidden.iter().collect::<Vec<_>>().iter());
    for v in [a, b, c, d] {
        if !h.has_vertex(v) {
            return Err(crate::error::Error::UnknownVertex(v));
        }
    }
    let mut s = Grow::new(&h, budget, 3);
    s.take(a);
    s.take(b);
    s.no_pass[c.index()] = true;
    s.no_pass[d.index()] = true;
    let not_cd = move |_: &Grow, v: VertexId| v != c && v != d;
    s.path_open(a, 0, 4, &not_cd, &mut |s, sa| {
        let u1 = *sa.last().unwrap();
        let sa = Path::new(sa.to_vec());
        s.path_open(b, 0, 4, &not_cd, &mut |s, sb| {
            let v1 = *sb.last().unwrap();
            let sb = Path::new(sb.to_vec());
            s.path_to(u1, v1, 1, 4, &mut |s, r1| {
                let r1 = Path::new(r1.to_vec());
                xwing_ear2(s, [a, b, c, d], [&sa, &sb, &r1])
            })
        })
    })?;
    Ok(s.found)
}

fn xwing_ear2(s: &mut Grow, ends: [VertexId; 4], first: [&Path; 3]) -> Result<bool> {
    let (u1, v1) = (first[2].first(), first[2].last());
    s.path_open(u1, 1, 3, &|s, v| s.deg3(v), &mut |s, s12| {
        let u2 = *s12.last().unwrap();
        let s12 = Path::new(s12.to_vec());
        s.path_open(v1, 1, 2, &|s, v| s.deg3(v), &mut |s, t12| {
            let v2 = *t12.last().unwrap();
            let t12 = Path::new(t12.to_vec());
            s.path_to(u2, v2, 1, 2, &mut |s, r2| {
                let second = [&s12, &t12, &Path::new(r2.to_vec())];
                xwing_ear3(s, ends, first, second)
            })
        })
    })
}

fn xwing_ear3(s: &mut Grow, [a, b, c, d]: [VertexId; 4], first: [&Path; 3], second: [&Path; 3]) -> Result<bool> {
    let (u2, v2) = (second[2].first(), second[2].last());
    s.path_open(u2, 1, 1, &|_, _| true, &mut |s, s23| {
        let u3 = *s23.last().unwrap();
        let s23 = Path::new(s23.to_vec());
        s.path_open(v2, 1, 0, &|_, _| true, &mut |s, t23| {
            let v3 = *t23.last().unwrap();
            let t23 = Path::new(t23.to_vec());
            s.path_to(u3, v3, 1, 0, &mut |s, r3| {
                let mut blocked = s.used.clone();
                for v in [u3, v3, c, d] {
                    blocked[v.index()] = false;
                }
                let tails = disjoint_set_paths(s.g, &[u3, v3], &[c, d], 2, &blocked);
                if tails.len() < 2 {
                    return Ok(false);
                }
                let tu = tails.iter().find(|p| p.first() == u3).unwrap().clone();
                let tv = tails.iter().find(|p| p.first() == v3).unwrap().clone();
                let twisted = tu.last() == d;
                let r3 = Path::new(r3.to_vec());
                let (sa, sb, r1) = (first[0], first[1], first[2]);
                let paths = vec![
                    r1.clone(),
                    second[2].clone(),
                    r3,
                    second[0].clone(),
                    s23.clone(),
                    second[1].clone(),
                    t23.clone(),
                    sa.reversed(),
                    sb.reversed(),
                    tu,
                    tv,
                ];
                let branch = [
                    ("u1", r1.first()),
                    ("u2", u2),
                    ("u3", u3),
                    ("v1", r1.last()),
                    ("v2", v2),
                    ("v3", v3),
                    ("a", a),
                    ("b", b),
                    ("c", c),
                    ("d", d),
                ];
                s.found = Some(assemble(Pattern::XWing { twisted }, &branch, paths));
                Ok(true)
            })
        })
    })
}
