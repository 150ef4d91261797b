//! Clos networks, flows and routings.
//!
//! All switch, server and middle-switch indices exposed here are 1-based,
//! matching the file formats and the usual `I_i`, `M_m`, `O_j`, `s^k_i`,
//! `t^k_j` naming. A network `C(N, R)` has `N` middle switches, `R` input and
//! `R` output top-of-rack switches, and `N` servers per top-of-rack switch.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("a Clos network needs at least one middle switch and one ToR switch (got N={n_middle}, R={n_tor})")]
    BadDims { n_middle: usize, n_tor: usize },
    #[error("flow {id}: {what} index {value} outside 1..={limit}")]
    IndexOutOfRange {
        id: FlowId,
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("flow {id}: demand {demand} outside (0, 1]")]
    BadDemand { id: FlowId, demand: Rational },
    #[error("flow ids must be 1..={expected_len} in order; found {found} at position {position}")]
    BadIds {
        position: usize,
        found: FlowId,
        expected_len: usize,
    },
}

/// Dimensions of the Clos network `C(N, R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClosDims {
    n_middle: usize,
    n_tor: usize,
}

impl ClosDims {
    pub fn new(n_middle: usize, n_tor: usize) -> Result<Self, ModelError> {
        if n_middle == 0 || n_tor == 0 {
            return Err(ModelError::BadDims { n_middle, n_tor });
        }
        Ok(ClosDims { n_middle, n_tor })
    }

    /// Number of middle switches, which is also the number of servers per
    /// ToR switch and of paths between any source and destination.
    pub fn n_middle(&self) -> usize {
        self.n_middle
    }

    /// Number of input (equivalently output) ToR switches.
    pub fn n_tor(&self) -> usize {
        self.n_tor
    }
}

impl fmt::Display for ClosDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}, {})", self.n_middle, self.n_tor)
    }
}

/// 1-based flow identifier, unique within a [`FlowSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlowId(pub usize);

impl FlowId {
    /// Position of the flow in its set.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    pub fn from_index(index: usize) -> Self {
        FlowId(index + 1)
    }
}

impl fmt::Display for FlowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// An unsplittable demand from source server `s^source_input` to
/// destination server `t^dest_output`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flow {
    pub id: FlowId,
    pub input: usize,
    pub source: usize,
    pub output: usize,
    pub dest: usize,
    pub demand: Rational,
}

/// A set of flows in a fixed network. Ids are `1..=len` in order.
///
/// Construction checks index ranges and demands; the hose-model constraint
/// is checked separately by [`crate::validate_flowset`] because some
/// constructions are deliberately studied outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSet {
    dims: ClosDims,
    flows: Vec<Flow>,
}

impl FlowSet {
    pub fn new(dims: ClosDims, flows: Vec<Flow>) -> Result<Self, ModelError> {
        let expected_len = flows.len();
        for (position, flow) in flows.iter().enumerate() {
            if flow.id != FlowId::from_index(position) {
                return Err(ModelError::BadIds {
                    position: position + 1,
                    found: flow.id,
                    expected_len,
                });
            }
            let checks = [
                ("input switch", flow.input, dims.n_tor),
                ("source server", flow.source, dims.n_middle),
                ("output switch", flow.output, dims.n_tor),
                ("destination server", flow.dest, dims.n_middle),
            ];
            for (what, value, limit) in checks {
                if value == 0 || value > limit {
                    return Err(ModelError::IndexOutOfRange {
                        id: flow.id,
                        what,
                        value,
                        limit,
                    });
                }
            }
            if !flow.demand.is_positive() || flow.demand > Rational::one() {
                return Err(ModelError::BadDemand {
                    id: flow.id,
                    demand: flow.demand.clone(),
                });
            }
        }
        Ok(FlowSet { dims, flows })
    }

    pub fn empty(dims: ClosDims) -> Self {
        FlowSet {
            dims,
            flows: Vec::new(),
        }
    }

    pub fn builder(dims: ClosDims) -> FlowSetBuilder {
        FlowSetBuilder {
            dims,
            flows: Vec::new(),
        }
    }

    pub fn dims(&self) -> ClosDims {
        self.dims
    }

    pub fn flows(&self) -> &[Flow] {
        &self.flows
    }

    pub fn flow(&self, id: FlowId) -> &Flow {
        &self.flows[id.index()]
    }

    pub fn len(&self) -> usize {
        self.flows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flows.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = FlowId> + '_ {
        self.flows.iter().map(|f| f.id)
    }

    /// Flow ids by non-increasing demand, equal demands by ascending id.
    pub fn demand_order(&self) -> Vec<FlowId> {
        let mut ids: Vec<FlowId> = self.ids().collect();
        ids.sort_by(|a, b| {
            self.flow(*b)
                .demand
                .cmp(&self.flow(*a).demand)
                .then(a.cmp(b))
        });
        ids
    }

    /// Largest number of flows incident to a single input or output switch.
    pub fn max_switch_degree(&self) -> usize {
        let r = self.dims.n_tor;
        let mut in_deg = vec![0usize; r];
        let mut out_deg = vec![0usize; r];
        for f in &self.flows {
            in_deg[f.input - 1] += 1;
            out_deg[f.output - 1] += 1;
        }
        in_deg.into_iter().chain(out_deg).max().unwrap_or(0)
    }

    pub fn all_unit_demands(&self) -> bool {
        self.flows.iter().all(|f| f.demand == Rational::one())
    }

    /// Restriction to the given flows, renumbered `1..` in the given order.
    pub fn subset(&self, ids: &[FlowId]) -> FlowSet {
        let flows = ids
            .iter()
            .enumerate()
            .map(|(pos, id)| Flow {
                id: FlowId::from_index(pos),
                ..self.flow(*id).clone()
            })
            .collect();
        FlowSet {
            dims: self.dims,
            flows,
        }
    }
}

/// Accumulates flows with consecutive ids.
#[derive(Debug, Clone)]
pub struct FlowSetBuilder {
    dims: ClosDims,
    flows: Vec<Flow>,
}

impl FlowSetBuilder {
    /// Appends the flow `(s^source_input, t^dest_output)` and returns its id.
    pub fn add(
        &mut self,
        input: usize,
        source: usize,
        output: usize,
        dest: usize,
        demand: Rational,
    ) -> FlowId {
        let id = FlowId::from_index(self.flows.len());
        self.flows.push(Flow {
            id,
            input,
            source,
            output,
            dest,
            demand,
        });
        id
    }

    pub fn len(&self) -> usize {
        self.flows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flows.is_empty()
    }

    pub fn build(self) -> Result<FlowSet, ModelError> {
        FlowSet::new(self.dims, self.flows)
    }
}

/// Assignment of every flow to a middle switch (1-based), indexed by flow id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Routing {
    middles: Vec<usize>,
}

impl Routing {
    pub fn new(middles: Vec<usize>) -> Self {
        Routing { middles }
    }

    pub fn empty() -> Self {
        Routing {
            middles: Vec::new(),
        }
    }

    pub fn middle(&self, id: FlowId) -> usize {
        self.middles[id.index()]
    }

    pub fn get(&self, id: FlowId) -> Option<usize> {
        self.middles.get(id.index()).copied()
    }

    pub fn set(&mut self, id: FlowId, middle: usize) {
        self.middles[id.index()] = middle;
    }

    pub fn len(&self) -> usize {
        self.middles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.middles.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.middles
    }

    pub fn assignments(&self) -> impl Iterator<Item = (FlowId, usize)> + '_ {
        self.middles
            .iter()
            .enumerate()
            .map(|(i, m)| (FlowId::from_index(i), *m))
    }

    /// Relabels middle switches: flow on `m` moves to `perm[m - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> Routing {
        Routing {
            middles: self.middles.iter().map(|m| perm[m - 1]).collect(),
        }
    }
}

/// A ToR-to-middle link: `I_i M_m` or `M_m O_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Link {
    Up { input: usize, middle: usize },
    Down { middle: usize, output: usize },
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Link::Up { input, middle } => write!(f, "I{input}M{middle}"),
            Link::Down { middle, output } => write!(f, "M{middle}O{output}"),
        }
    }
}
