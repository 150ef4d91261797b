//! Routing instance built from a graph of maximum degree 3, with congestion
//! 1 exactly when the graph is 3-edge-colorable.
//!
//! Vertex `k` owns ToR switches `3(k-1)+1..=3k` and carries a translated
//! cross gadget of size 3 on source servers 1-2. Edge `m` owns switch
//! `3|V| + m`, with two unit flows on servers 1 and 2. For edge
//! `{v_k, v_l}`, each endpoint sends a flow of demand 1/2 from source server
//! 3 of its input switch numbered by the neighbor's rank to destination
//! server 3 of the edge switch. Under congestion 1 both such flows share a
//! middle switch, which is the color of the edge.

use crate::graph::SimpleGraph;
use crate::model::{ClosDims, FlowId, FlowSet, Routing};
use crate::oracle::three_edge_colorable;
use crate::rational::Rational;

use super::gadgets::elemental_middle;
use super::{bad, InstanceError, NamedInstance};

/// Reduction instance with the flow ids of each part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub instance: NamedInstance,
    pub graph: SimpleGraph,
    /// `ranks[k - 1]` lists the neighbors of vertex `k` by rank 1, 2, 3.
    pub ranks: Vec<Vec<usize>>,
    /// Six gadget flows per vertex, ordered by local input then source.
    pub vertex_flows: Vec<Vec<FlowId>>,
    /// The two unit flows of each edge block.
    pub edge_flows: Vec<(FlowId, FlowId)>,
    /// The two half flows into each edge block: from the first endpoint,
    /// then from the second.
    pub incident_flows: Vec<(FlowId, FlowId)>,
}

impl Reduction {
    fn rank(&self, v: usize, neighbor: usize) -> usize {
        self.ranks[v - 1]
            .iter()
            .position(|&u| u == neighbor)
            .expect("neighbor is ranked")
            + 1
    }
}

/// Builds the instance for `g`. Without `ranks`, neighbors are ranked in
/// the order their edges appear in `g`.
///
/// When `g` is 3-edge-colorable the result carries a witness
/// `"from-coloring"` with congestion 1.
pub fn coloring_reduction(
    g: &SimpleGraph,
    ranks: Option<Vec<Vec<usize>>>,
) -> Result<Reduction, InstanceError> {
    g.check_max_degree(3)?;
    let nv = g.n_vertices();
    let ranks = match ranks {
        None => (1..=nv).map(|v| g.neighbors(v)).collect(),
        Some(r) => {
            if r.len() != nv {
                return Err(bad(format!("ranks given for {} of {nv} vertices", r.len())));
            }
            for (idx, listed) in r.iter().enumerate() {
                let mut a = listed.clone();
                let mut b = g.neighbors(idx + 1);
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Err(bad(format!(
                        "ranks of vertex {} are not its neighbors",
                        idx + 1
                    )));
                }
            }
            r
        }
    };

    let n_tor = 3 * nv + g.edges().len();
    if n_tor == 0 {
        return Err(bad("graph has no vertices"));
    }
    let mut b = FlowSet::builder(ClosDims::new(3, n_tor)?);
    let mut vertex_flows = Vec::new();
    for k in 1..=nv {
        let base = 3 * (k - 1);
        let mut ids = Vec::new();
        for i in 1..=3 {
            for j in 1..=2 {
                ids.push(b.add(base + i, j, base + j, i, Rational::one()));
            }
        }
        vertex_flows.push(ids);
    }
    let mut red = Reduction {
        instance: NamedInstance::new("", FlowSet::empty(ClosDims::new(3, n_tor)?)),
        graph: g.clone(),
        ranks,
        vertex_flows,
        edge_flows: Vec::new(),
        incident_flows: Vec::new(),
    };
    let half = Rational::new(1, 2);
    for (m, &(k, l)) in g.edges().iter().enumerate() {
        let sw = 3 * nv + m + 1;
        let e1 = b.add(sw, 1, sw, 1, Rational::one());
        let e2 = b.add(sw, 2, sw, 2, Rational::one());
        red.edge_flows.push((e1, e2));
        let a = b.add(3 * (k - 1) + red.rank(k, l), 3, sw, 3, half.clone());
        let c = b.add(3 * (l - 1) + red.rank(l, k), 3, sw, 3, half.clone());
        red.incident_flows.push((a, c));
    }
    red.instance = NamedInstance::new(
        format!("reduction-{}v-{}e", nv, g.edges().len()),
        b.build()?,
    );
    if let Some(colors) = three_edge_colorable(g)? {
        let r = routing_from_coloring(&red, &colors)?;
        red.instance = red
            .instance
            .with_witness("from-coloring", r, Rational::one())
            .with_expected("opt", Rational::one());
    }
    Ok(red)
}

/// Congestion-1 routing from a proper 3-edge-coloring (colors `1..=3`, in
/// edge order): each edge's half flows go to the middle switch of its color,
/// its unit flows to the other two, and each vertex gadget follows the
/// elemental routing with middles renamed so that the switch left free at
/// each input is the color its half flow needs.
pub fn routing_from_coloring(red: &Reduction, colors: &[usize]) -> Result<Routing, InstanceError> {
    let g = &red.graph;
    if colors.len() != g.edges().len() || colors.iter().any(|c| !(1..=3).contains(c)) {
        return Err(bad("coloring must give each edge a color in 1..=3"));
    }
    let mut middles = vec![0; red.instance.flowset.len()];
    for v in 1..=g.n_vertices() {
        // wanted[r - 1]: color needed at the input of rank r.
        let mut wanted = [0usize; 3];
        for (m, &(a, b)) in g.edges().iter().enumerate() {
            if a == v || b == v {
                let other = if a == v { b } else { a };
                wanted[red.rank(v, other) - 1] = colors[m];
            }
        }
        let spare_colors: Vec<usize> = (1..=3).filter(|c| !wanted.contains(c)).collect();
        let mut spare = spare_colors.into_iter();
        for w in wanted.iter_mut().filter(|w| **w == 0) {
            *w = spare
                .next()
                .ok_or_else(|| bad(format!("coloring is not proper at vertex {v}")))?;
        }
        // Input i leaves middle (i + 1) mod 3 + 1 free in the elemental routing.
        let mut perm = [0usize; 4];
        for i in 1..=3 {
            perm[(i + 1) % 3 + 1] = wanted[i - 1];
        }
        let mut check = perm[1..].to_vec();
        check.sort_unstable();
        if check != [1, 2, 3] {
            return Err(bad(format!("coloring is not proper at vertex {v}")));
        }
        for (pos, id) in red.vertex_flows[v - 1].iter().enumerate() {
            let (i, j) = (pos / 2 + 1, pos % 2 + 1);
            middles[id.index()] = perm[elemental_middle(i, j, 3)];
        }
    }
    for (m, &c) in colors.iter().enumerate() {
        let (e1, e2) = red.edge_flows[m];
        let (a, b) = red.incident_flows[m];
        let mut rest = (1..=3).filter(|&x| x != c);
        middles[e1.index()] = rest.next().expect("two colors remain");
        middles[e2.index()] = rest.next().expect("two colors remain");
        middles[a.index()] = c;
        middles[b.index()] = c;
    }
    Ok(Routing::new(middles))
}

/// Edge colors read off the half flows of `r`, or `None` if the two half
/// flows of some edge use different middle switches.
pub fn coloring_from_routing(red: &Reduction, r: &Routing) -> Option<Vec<usize>> {
    red.incident_flows
        .iter()
        .map(|&(a, b)| (r.middle(a) == r.middle(b)).then(|| r.middle(a)))
        .collect()
}
