//! Link loads, congestion, the hose-model check and the lower bound `L`.
//!
//! Only the links between ToR switches and middle switches carry load;
//! server links are not modelled.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::model::{ClosDims, Flow, FlowId, FlowSet, Link, Routing};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error("routing leaves flows unassigned: {}", list_ids(.0))]
    Unassigned(Vec<FlowId>),
    #[error("routing assigns flow {id} to middle switch {middle}, outside 1..={n_middle}")]
    MiddleOutOfRange {
        id: FlowId,
        middle: usize,
        n_middle: usize,
    },
    #[error("routing has {routed} assignments but the flow set has {flows} flows")]
    TooManyAssignments { routed: usize, flows: usize },
}

pub(crate) fn list_ids(ids: &[FlowId]) -> String {
    ids.iter()
        .map(|id| id.0.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Which side of a server endpoint overflows the hose model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Endpoint {
    Source { switch: usize, server: usize },
    Destination { switch: usize, server: usize },
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Source { switch, server } => write!(f, "source s{server} of I{switch}"),
            Endpoint::Destination { switch, server } => {
                write!(f, "destination t{server} of O{switch}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hose model violated at {endpoint}: total demand {total} exceeds 1")]
pub struct HoseViolation {
    pub endpoint: Endpoint,
    pub total: Rational,
}

/// Checks the hose model: every source and every destination server carries
/// total demand at most 1. Sources are checked before destinations, each in
/// (switch, server) order; the first overflowing endpoint is reported.
pub fn validate_flowset(fs: &FlowSet) -> Result<(), HoseViolation> {
    let dims = fs.dims();
    let n = dims.n_middle();
    let mut src = vec![Rational::zero(); dims.n_tor() * n];
    let mut dst = vec![Rational::zero(); dims.n_tor() * n];
    for f in fs.flows() {
        src[(f.input - 1) * n + f.source - 1] += &f.demand;
        dst[(f.output - 1) * n + f.dest - 1] += &f.demand;
    }
    let one = Rational::one();
    let endpoint = |idx: usize, source: bool| {
        let (switch, server) = (idx / n + 1, idx % n + 1);
        if source {
            Endpoint::Source { switch, server }
        } else {
            Endpoint::Destination { switch, server }
        }
    };
    for (loads, is_source) in [(src, true), (dst, false)] {
        if let Some((idx, total)) = loads.into_iter().enumerate().find(|(_, t)| *t > one) {
            return Err(HoseViolation {
                endpoint: endpoint(idx, is_source),
                total,
            });
        }
    }
    Ok(())
}

/// Per-link load of a (possibly partial) routing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkLoads {
    dims: ClosDims,
    // up[(i - 1) * N + (m - 1)] is the load of I_i M_m.
    up: Vec<Rational>,
    // down[(j - 1) * N + (m - 1)] is the load of M_m O_j.
    down: Vec<Rational>,
}

impl LinkLoads {
    pub fn new(dims: ClosDims) -> Self {
        let size = dims.n_tor() * dims.n_middle();
        LinkLoads {
            dims,
            up: vec![Rational::zero(); size],
            down: vec![Rational::zero(); size],
        }
    }

    pub fn dims(&self) -> ClosDims {
        self.dims
    }

    fn up_index(&self, input: usize, middle: usize) -> usize {
        (input - 1) * self.dims.n_middle() + middle - 1
    }

    fn down_index(&self, middle: usize, output: usize) -> usize {
        (output - 1) * self.dims.n_middle() + middle - 1
    }

    /// Load of `I_input M_middle`.
    pub fn up(&self, input: usize, middle: usize) -> &Rational {
        &self.up[self.up_index(input, middle)]
    }

    /// Load of `M_middle O_output`.
    pub fn down(&self, middle: usize, output: usize) -> &Rational {
        &self.down[self.down_index(middle, output)]
    }

    pub fn load(&self, link: Link) -> &Rational {
        match link {
            Link::Up { input, middle } => self.up(input, middle),
            Link::Down { middle, output } => self.down(middle, output),
        }
    }

    /// Congestion of the path `I_input M_middle O_output`: the larger of its
    /// two link loads.
    pub fn path(&self, input: usize, middle: usize, output: usize) -> &Rational {
        self.up(input, middle).max_ref(self.down(middle, output))
    }

    pub fn add_flow(&mut self, flow: &Flow, middle: usize) {
        let u = self.up_index(flow.input, middle);
        let d = self.down_index(middle, flow.output);
        self.up[u] += &flow.demand;
        self.down[d] += &flow.demand;
    }

    pub fn max(&self) -> Rational {
        self.up
            .iter()
            .chain(self.down.iter())
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// All links in the order `I_1M_1, I_1M_2, ..., M_1O_1, M_2O_1, ...`.
    pub fn links(&self) -> impl Iterator<Item = (Link, &Rational)> + '_ {
        let n = self.dims.n_middle();
        let ups = self.up.iter().enumerate().map(move |(idx, load)| {
            (
                Link::Up {
                    input: idx / n + 1,
                    middle: idx % n + 1,
                },
                load,
            )
        });
        let downs = self.down.iter().enumerate().map(move |(idx, load)| {
            (
                Link::Down {
                    middle: idx % n + 1,
                    output: idx / n + 1,
                },
                load,
            )
        });
        ups.chain(downs)
    }
}

/// Exact per-link loads of a total routing and their maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongestionReport {
    loads: LinkLoads,
    max: Rational,
}

impl CongestionReport {
    pub fn loads(&self) -> &LinkLoads {
        &self.loads
    }

    pub fn up(&self, input: usize, middle: usize) -> &Rational {
        self.loads.up(input, middle)
    }

    pub fn down(&self, middle: usize, output: usize) -> &Rational {
        self.loads.down(middle, output)
    }

    /// Maximum link load; zero for an empty flow set.
    pub fn max_congestion(&self) -> &Rational {
        &self.max
    }

    /// Links whose load equals the maximum (none when nothing is routed).
    pub fn max_links(&self) -> Vec<Link> {
        if self.max.is_zero() {
            return Vec::new();
        }
        self.loads
            .links()
            .filter(|(_, load)| **load == self.max)
            .map(|(link, _)| link)
            .collect()
    }
}

fn check_routing(fs: &FlowSet, r: &Routing) -> Result<(), RoutingError> {
    if r.len() > fs.len() {
        return Err(RoutingError::TooManyAssignments {
            routed: r.len(),
            flows: fs.len(),
        });
    }
    if r.len() < fs.len() {
        let missing = (r.len()..fs.len()).map(FlowId::from_index).collect();
        return Err(RoutingError::Unassigned(missing));
    }
    let n_middle = fs.dims().n_middle();
    for (id, middle) in r.assignments() {
        if middle == 0 || middle > n_middle {
            return Err(RoutingError::MiddleOutOfRange {
                id,
                middle,
                n_middle,
            });
        }
    }
    Ok(())
}

/// Exact congestion of `r` on `fs`.
pub fn congestion(fs: &FlowSet, r: &Routing) -> Result<CongestionReport, RoutingError> {
    check_routing(fs, r)?;
    let mut loads = LinkLoads::new(fs.dims());
    for f in fs.flows() {
        loads.add_flow(f, r.middle(f.id));
    }
    let max = loads.max();
    Ok(CongestionReport { loads, max })
}

/// The lower bound `L` on the optimum: over every ToR switch, the larger of
/// its heaviest incident demand and its total incident demand divided by `N`.
pub fn lower_bound(fs: &FlowSet) -> Rational {
    let dims = fs.dims();
    let r = dims.n_tor();
    let mut max_in = vec![Rational::zero(); r];
    let mut max_out = vec![Rational::zero(); r];
    let mut sum_in = vec![Rational::zero(); r];
    let mut sum_out = vec![Rational::zero(); r];
    for f in fs.flows() {
        let (i, j) = (f.input - 1, f.output - 1);
        if f.demand > max_in[i] {
            max_in[i] = f.demand.clone();
        }
        if f.demand > max_out[j] {
            max_out[j] = f.demand.clone();
        }
        sum_in[i] += &f.demand;
        sum_out[j] += &f.demand;
    }
    let n = Rational::from_integer(dims.n_middle() as i64);
    max_in
        .into_iter()
        .chain(max_out)
        .zip(sum_in.into_iter().chain(sum_out))
        .map(|(mx, sum)| {
            let avg = sum / &n;
            if avg > mx {
                avg
            } else {
                mx
            }
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// True iff no ToR-to-middle link carries two flows.
pub fn is_link_disjoint(fs: &FlowSet, r: &Routing) -> Result<bool, RoutingError> {
    check_routing(fs, r)?;
    let dims = fs.dims();
    let n = dims.n_middle();
    let mut up = vec![false; dims.n_tor() * n];
    let mut down = vec![false; dims.n_tor() * n];
    for f in fs.flows() {
        let m = r.middle(f.id) - 1;
        let u = (f.input - 1) * n + m;
        let d = (f.output - 1) * n + m;
        if up[u] || down[d] {
            return Ok(false);
        }
        up[u] = true;
        down[d] = true;
    }
    Ok(true)
}
