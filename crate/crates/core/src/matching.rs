//! Proper edge coloring of bipartite multigraphs.
//!
//! A bipartite multigraph of maximum degree at most `N` splits into `N`
//! matchings (König's edge-coloring theorem). In a Clos network the flows
//! form such a graph between input and output switches, and each matching is
//! the set of flows sharing one middle switch, so a proper `N`-coloring is a
//! link-disjoint routing.
//!
//! Everything in this module is 0-based: vertices, edge ids and colors.
//! Callers translate colors to 1-based middle switches.
//!
//! Edges are colored one at a time. If some color is free at both endpoints
//! the lowest one is used. Otherwise, with `a` the lowest color free at the
//! left endpoint and `b` the lowest free at the right one, the `a`/`b`
//! alternating path starting at the right endpoint is flipped, which frees
//! `a` there. In a bipartite graph that path never reaches the left
//! endpoint. Each step is `O(|E|)`, so the whole coloring is `O(|E|^2)`.

use thiserror::Error;

use crate::model::{FlowSet, Routing};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error(
        "{side:?} vertex {vertex} has degree {degree}, more than the {limit} available colors"
    )]
    DegreeExceeded {
        side: Side,
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("edge ({left}, {right}) has an endpoint outside the graph")]
    BadEdge { left: usize, right: usize },
    #[error("edge order is not a permutation of the {n_edges} edge ids")]
    BadOrder { n_edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    /// Edge `e` joins `edges[e].0` on the left with `edges[e].1` on the right.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, MatchingError> {
        if let Some(&(left, right)) = edges
            .iter()
            .find(|(l, r)| *l >= left_count || *r >= right_count)
        {
            return Err(MatchingError::BadEdge { left, right });
        }
        Ok(BipartiteMultigraph {
            left_count,
            right_count,
            edges,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Largest vertex degree, with the side and vertex attaining it (first
    /// such vertex, left before right).
    pub fn max_degree(&self) -> (usize, Side, usize) {
        let mut left = vec![0usize; self.left_count];
        let mut right = vec![0usize; self.right_count];
        for &(l, r) in &self.edges {
            left[l] += 1;
            right[r] += 1;
        }
        let mut best = (0, Side::Left, 0);
        for (side, degs) in [(Side::Left, &left), (Side::Right, &right)] {
            for (v, &d) in degs.iter().enumerate() {
                if d > best.0 {
                    best = (d, side, v);
                }
            }
        }
        best
    }
}

/// Color of each edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn color(&self, edge: usize) -> usize {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn n_colors_used(&self) -> usize {
        self.colors.iter().max().map_or(0, |c| c + 1)
    }
}

/// True iff `colors` assigns every edge a color below `n_colors` and no two
/// edges sharing a vertex get the same color.
pub fn is_proper_coloring(g: &BipartiteMultigraph, colors: &[usize], n_colors: usize) -> bool {
    if colors.len() != g.edges.len() || colors.iter().any(|&c| c >= n_colors) {
        return false;
    }
    let mut left = vec![false; g.left_count * n_colors];
    let mut right = vec![false; g.right_count * n_colors];
    for (&(l, r), &c) in g.edges.iter().zip(colors) {
        let (li, ri) = (l * n_colors + c, r * n_colors + c);
        if left[li] || right[ri] {
            return false;
        }
        left[li] = true;
        right[ri] = true;
    }
    true
}

struct Slots {
    n_colors: usize,
    // left[v * n_colors + c] = edge of color c at left vertex v
    left: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
}

impl Slots {
    fn left(&self, v: usize, c: usize) -> Option<usize> {
        self.left[v * self.n_colors + c]
    }

    fn right(&self, v: usize, c: usize) -> Option<usize> {
        self.right[v * self.n_colors + c]
    }

    fn set(&mut self, (l, r): (usize, usize), c: usize, edge: Option<usize>) {
        self.left[l * self.n_colors + c] = edge;
        self.right[r * self.n_colors + c] = edge;
    }
}

/// Properly colors `g` with at most `n_colors` colors, processing edges in
/// id order or in the explicit `order` when given.
pub fn edge_color(
    g: &BipartiteMultigraph,
    n_colors: usize,
    order: Option<&[usize]>,
) -> Result<EdgeColoring, MatchingError> {
    let (degree, side, vertex) = g.max_degree();
    if degree > n_colors {
        return Err(MatchingError::DegreeExceeded {
            side,
            vertex,
            degree,
            limit: n_colors,
        });
    }
    let n_edges = g.edges.len();
    let order: Vec<usize> = match order {
        Some(o) => {
            let mut seen = vec![false; n_edges];
            if o.len() != n_edges
                || o.iter()
                    .any(|&e| e >= n_edges || std::mem::replace(&mut seen[e], true))
            {
                return Err(MatchingError::BadOrder { n_edges });
            }
            o.to_vec()
        }
        None => (0..n_edges).collect(),
    };

    let mut colors = vec![usize::MAX; n_edges];
    let mut slots = Slots {
        n_colors,
        left: vec![None; g.left_count * n_colors],
        right: vec![None; g.right_count * n_colors],
    };
    for e in order {
        let (u, v) = g.edges[e];
        if let Some(c) =
            (0..n_colors).find(|&c| slots.left(u, c).is_none() && slots.right(v, c).is_none())
        {
            colors[e] = c;
            slots.set((u, v), c, Some(e));
            continue;
        }
        // Both exist because the uncolored edge leaves a free color at each end.
        let a = (0..n_colors).find(|&c| slots.left(u, c).is_none()).unwrap();
        let b = (0..n_colors)
            .find(|&c| slots.right(v, c).is_none())
            .unwrap();

        // Walk v -a- w -b- x -a- ... collecting the alternating path.
        let mut path = Vec::new();
        let mut at_right = true;
        let mut vertex = v;
        let mut want = a;
        loop {
            let next = if at_right {
                slots.right(vertex, want)
            } else {
                slots.left(vertex, want)
            };
            let Some(edge) = next else { break };
            path.push(edge);
            let (l, r) = g.edges[edge];
            vertex = if at_right { l } else { r };
            at_right = !at_right;
            want = if want == a { b } else { a };
        }
        for &p in &path {
            slots.set(g.edges[p], colors[p], None);
        }
        for &p in &path {
            colors[p] = if colors[p] == a { b } else { a };
            slots.set(g.edges[p], colors[p], Some(p));
        }
        debug_assert!(slots.left(u, a).is_none() && slots.right(v, a).is_none());
        colors[e] = a;
        slots.set((u, v), a, Some(e));
    }
    Ok(EdgeColoring { colors })
}

/// Link-disjoint routing of a flow set with at most `N` flows per ToR
/// switch. Flows are edges between input and output switches; the color of
/// each edge plus one is its middle switch.
pub fn link_disjoint_routing(fs: &FlowSet) -> Result<Routing, MatchingError> {
    let dims = fs.dims();
    let edges = fs
        .flows()
        .iter()
        .map(|f| (f.input - 1, f.output - 1))
        .collect();
    let g = BipartiteMultigraph::new(dims.n_tor(), dims.n_tor(), edges)?;
    let coloring = edge_color(&g, dims.n_middle(), None)?;
    Ok(Routing::new(
        coloring.colors().iter().map(|c| c + 1).collect(),
    ))
}
