//! Small simple graphs, input to the edge-coloring reduction.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 1..={2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) appears twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, above the limit {limit}")]
    DegreeTooHigh {
        vertex: usize,
        degree: usize,
        limit: usize,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Undirected simple graph on vertices `1..=n`. Edge `m` (1-based) is
/// `edges()[m - 1]`; neighbor lists follow edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u == 0 || v == 0 || u > n_vertices || v > n_vertices {
                return Err(GraphError::VertexOutOfRange(u, v, n_vertices));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(SimpleGraph { n_vertices, edges })
    }

    pub fn empty(n_vertices: usize) -> Self {
        SimpleGraph {
            n_vertices,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        SimpleGraph {
            n_vertices: n,
            edges,
        }
    }

    pub fn triangle() -> Self {
        Self::complete(3)
    }

    pub fn k4() -> Self {
        Self::complete(4)
    }

    /// `K4` with edge `{1, 2}` replaced by the path `1 - 5 - 2`.
    pub fn subdivided_k4() -> Self {
        let edges = vec![(1, 5), (5, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        SimpleGraph {
            n_vertices: 5,
            edges,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn check_max_degree(&self, limit: usize) -> Result<(), GraphError> {
        match (1..=self.n_vertices).find(|&v| self.degree(v) > limit) {
            Some(vertex) => Err(GraphError::DegreeTooHigh {
                vertex,
                degree: self.degree(vertex),
                limit,
            }),
            None => Ok(()),
        }
    }

    /// Parses `graph <n>` followed by `edge <u> <v>` lines; `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let syntax = |line, message: &str| GraphError::Syntax {
            line,
            message: message.into(),
        };
        let mut n = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let tokens: Vec<&str> = raw
                .split('#')
                .next()
                .unwrap_or("")
                .split_whitespace()
                .collect();
            match (n, tokens.as_slice()) {
                (_, []) => {}
                (None, ["graph", count]) => {
                    n = Some(
                        count
                            .parse()
                            .map_err(|_| syntax(line, "bad vertex count"))?,
                    );
                }
                (None, _) => return Err(syntax(line, "expected `graph <n>`")),
                (Some(_), ["edge", u, v]) => {
                    let u = u.parse().map_err(|_| syntax(line, "bad vertex"))?;
                    let v = v.parse().map_err(|_| syntax(line, "bad vertex"))?;
                    edges.push((u, v));
                }
                (Some(_), _) => return Err(syntax(line, "expected `edge <u> <v>`")),
            }
        }
        let n = n.ok_or_else(|| syntax(1, "missing `graph <n>` header"))?;
        Self::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {}\n", self.n_vertices);
        for (u, v) in &self.edges {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graphs() {
        assert_eq!(SimpleGraph::k4().edges().len(), 6);
        let s = SimpleGraph::subdivided_k4();
        assert_eq!((s.n_vertices(), s.edges().len()), (5, 7));
        assert_eq!(s.degree(5), 2);
        s.check_max_degree(3).unwrap();
        assert_eq!(SimpleGraph::triangle().neighbors(2), vec![1, 3]);
    }

    #[test]
    fn rejects_non_simple_graphs() {
        assert_eq!(
            SimpleGraph::new(2, vec![(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(SimpleGraph::new(2, vec![(1, 2), (2, 1)]).is_err());
        assert!(SimpleGraph::new(2, vec![(1, 3)]).is_err());
        assert!(SimpleGraph::complete(5).check_max_degree(3).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = SimpleGraph::subdivided_k4();
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
        assert!(SimpleGraph::parse("edge 1 2\n").is_err());
    }
}
