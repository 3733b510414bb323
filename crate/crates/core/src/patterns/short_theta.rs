//! Recognition of short Θ_r's: two endvertices joined by `r` paths of
//! length 1 or 2. The diamond is treated as a short Θ_2 whose endvertices
//! are its two degree-2 vertices.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortTheta {
    pub x: VertexId,
    pub y: VertexId,
    pub r: usize,
    /// Number of vertices other than the endvertices.
    pub order: usize,
}

/// Whether a lone edge or a 2-path counts as a short Θ_1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ThetaConvention {
    pub allow_theta1: bool,
}

pub fn recognize_short_theta(g: &Graph, conv: ThetaConvention) -> Option<ShortTheta> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    let m = g.edge_count();
    if n < 2 {
        return None;
    }
    let deg = |v: VertexId| g.degree(v);

    if conv.allow_theta1 {
        if n == 2 && m == 1 {
            return Some(ShortTheta { x: vs[0], y: vs[1], r: 1, order: 0 });
        }
        if n == 3 && m == 2 {
            let mid = *vs.iter().find(|&&v| deg(v) == 2)?;
            let ends: Vec<VertexId> = vs.iter().copied().filter(|&v| v != mid).collect();
            return Some(ShortTheta { x: ends[0], y: ends[1], r: 1, order: 1 });
        }
    }

    // diamond
    if n == 4 && m == 5 {
        let twos: Vec<VertexId> = vs.iter().copied().filter(|&v| deg(v) == 2).collect();
        if twos.len() == 2 && !g.is_adjacent(twos[0], twos[1]) {
            return Some(ShortTheta { x: twos[0], y: twos[1], r: 2, order: 2 });
        }
    }

    // cycles of length 3 and 4 are short Θ_2's
    if (n == 3 || n == 4) && m == n && vs.iter().all(|&v| deg(v) == 2) {
        let x = vs[0];
        let y = if n == 3 {
            vs[1]
        } else {
            *vs.iter().find(|&&v| v != x && !g.is_adjacent(x, v))?
        };
        return Some(ShortTheta { x, y, r: 2, order: n - 2 });
    }

    let big: Vec<VertexId> = vs.iter().copied().filter(|&v| deg(v) != 2).collect();
    if big.len() != 2 {
        return None;
    }
    let (x, y) = (big[0], big[1]);
    let r = deg(x);
    if r < 3 || deg(y) != r {
        return None;
    }
    let direct = usize::from(g.is_adjacent(x, y));
    for &v in &vs {
        if v != x && v != y && !(g.is_adjacent(v, x) && g.is_adjacent(v, y)) {
            return None;
        }
    }
    if (n - 2) + direct != r || m != 2 * (n - 2) + direct {
        return None;
    }
    Some(ShortTheta { x, y, r, order: n - 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    const STRICT: ThetaConvention = ThetaConvention { allow_theta1: false };
    const LOOSE: ThetaConvention = ThetaConvention { allow_theta1: true };

    #[test]
    fn subdivided_theta3() {
        let g = Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let t = recognize_short_theta(&g, STRICT).unwrap();
        assert_eq!((t.x, t.y, t.r, t.order), (VertexId(0), VertexId(1), 3, 3));
    }

    #[test]
    fn diamond_ends_are_degree_two() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let t = recognize_short_theta(&g, STRICT).unwrap();
        assert_eq!((t.x, t.y, t.r), (VertexId(0), VertexId(3), 2));
    }

    #[test]
    fn c5_is_never_short() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(recognize_short_theta(&g, STRICT), None);
        assert_eq!(recognize_short_theta(&g, LOOSE), None);
    }

    #[test]
    fn theta1_only_under_flag() {
        let e = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(recognize_short_theta(&e, STRICT), None);
        assert_eq!(recognize_short_theta(&e, LOOSE).unwrap().r, 1);
        let p = Graph::from_edges(3, &[(0, 2), (2, 1)]);
        let t = recognize_short_theta(&p, LOOSE).unwrap();
        assert_eq!((t.x, t.y, t.order), (VertexId(0), VertexId(1), 1));
    }

    #[test]
    fn small_cycles_and_k4() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let t = recognize_short_theta(&c4, STRICT).unwrap();
        assert_eq!((t.x, t.y, t.r), (VertexId(0), VertexId(2), 2));
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(recognize_short_theta(&k4, STRICT), None);
        // Θ_4 with a direct edge
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        assert_eq!(recognize_short_theta(&g, STRICT).unwrap().r, 4);
    }
}
