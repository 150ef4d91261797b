//! Two-phase routing.
//!
//! Phase 1 admits flows in non-increasing demand order into copies of their
//! ToR switches (`N` flows per copy, copies filled in order). Once a switch
//! has filled `q - 1` copies, a flow is admitted there only if the largest
//! demands of the used copies still sum to at most `P = p * L`. Admitted flows
//! are routed link-disjointly in the expanded network. Phase 2 routes the
//! rest greedily, largest demand first, on top of the Phase 1 loads.

use crate::congestion::{lower_bound, validate_flowset, LinkLoads};
use crate::model::{FlowId, FlowSet, Routing};
use crate::rational::Rational;

use super::expansion::{copy_count, CopyExpansion};
use super::greedy::greedy_into;
use super::{AlgorithmConfig, AlgorithmError};

/// Flow count and demand range of one copy of a ToR switch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CopyStats {
    pub count: usize,
    pub max: Option<Rational>,
    pub min: Option<Rational>,
}

impl CopyStats {
    fn push(&mut self, demand: &Rational) {
        self.count += 1;
        if self.max.as_ref().is_none_or(|m| demand > m) {
            self.max = Some(demand.clone());
        }
        if self.min.as_ref().is_none_or(|m| demand < m) {
            self.min = Some(demand.clone());
        }
    }

    fn max_or_zero(&self) -> Rational {
        self.max.clone().unwrap_or_else(Rational::zero)
    }
}

/// Bookkeeping of the admission step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phase1State {
    n_middle: usize,
    k_copies: usize,
    // [switch - 1][copy - 1]
    inputs: Vec<Vec<CopyStats>>,
    outputs: Vec<Vec<CopyStats>>,
    accepted: Vec<Option<(usize, usize)>>,
}

impl Phase1State {
    fn new(fs: &FlowSet) -> Self {
        let dims = fs.dims();
        let k = copy_count(fs);
        Phase1State {
            n_middle: dims.n_middle(),
            k_copies: k,
            inputs: vec![vec![CopyStats::default(); k]; dims.n_tor()],
            outputs: vec![vec![CopyStats::default(); k]; dims.n_tor()],
            accepted: vec![None; fs.len()],
        }
    }

    pub fn k_copies(&self) -> usize {
        self.k_copies
    }

    pub fn input_copy(&self, switch: usize, copy: usize) -> &CopyStats {
        &self.inputs[switch - 1][copy - 1]
    }

    pub fn output_copy(&self, switch: usize, copy: usize) -> &CopyStats {
        &self.outputs[switch - 1][copy - 1]
    }

    /// Input and output copy of an admitted flow.
    pub fn copies_of(&self, id: FlowId) -> Option<(usize, usize)> {
        self.accepted[id.index()]
    }

    pub fn accepted(&self) -> Vec<FlowId> {
        (0..self.accepted.len())
            .filter(|&i| self.accepted[i].is_some())
            .map(FlowId::from_index)
            .collect()
    }

    /// Lowest copy with room for another flow.
    fn first_open(&self, copies: &[CopyStats]) -> usize {
        copies
            .iter()
            .position(|c| c.count < self.n_middle)
            .expect("K copies hold every flow of the busiest switch")
            + 1
    }

    fn admits(
        copies: &[CopyStats],
        x: usize,
        demand: &Rational,
        q: usize,
        bound: &Rational,
    ) -> bool {
        if x < q {
            return true;
        }
        let mut total: Rational = copies[..x - 1].iter().map(CopyStats::max_or_zero).sum();
        total += copies[x - 1].max_or_zero().max_ref(demand);
        total <= *bound
    }

    /// Every copy holds at most `N` flows and a copy is used only when the
    /// previous one is full.
    pub fn satisfies_p1(&self) -> bool {
        self.inputs.iter().chain(&self.outputs).all(|copies| {
            copies.iter().all(|c| c.count <= self.n_middle)
                && copies
                    .windows(2)
                    .all(|w| w[1].count == 0 || w[0].count == self.n_middle)
        })
    }

    /// At each switch, admitted flows with larger demand never sit in a
    /// higher copy than flows with smaller demand.
    pub fn satisfies_p2(&self) -> bool {
        self.inputs.iter().chain(&self.outputs).all(|copies| {
            copies.windows(2).all(|w| match (&w[0].min, &w[1].max) {
                (Some(lo), Some(hi)) => hi <= lo,
                _ => true,
            })
        })
    }

    /// Whenever copy `q` of a switch is used, the largest demands of its
    /// copies sum to at most `bound`.
    pub fn satisfies_p3(&self, q: usize, bound: &Rational) -> bool {
        self.inputs.iter().chain(&self.outputs).all(|copies| {
            copies.get(q - 1).is_none_or(|c| c.count == 0)
                || copies.iter().map(CopyStats::max_or_zero).sum::<Rational>() <= *bound
        })
    }
}

/// Admission step: returns the admitted flows (in id order) and the copy
/// bookkeeping. `lower_bound` is `L` of the flow set.
pub fn uphold_properties(
    fs: &FlowSet,
    cfg: &AlgorithmConfig,
    lower_bound: &Rational,
) -> (Vec<FlowId>, Phase1State) {
    let bound = &cfg.p * lower_bound;
    let mut state = Phase1State::new(fs);
    for id in fs.demand_order() {
        let f = fs.flow(id);
        let x = state.first_open(&state.inputs[f.input - 1]);
        let y = state.first_open(&state.outputs[f.output - 1]);
        let input_ok = Phase1State::admits(&state.inputs[f.input - 1], x, &f.demand, cfg.q, &bound);
        let output_ok =
            Phase1State::admits(&state.outputs[f.output - 1], y, &f.demand, cfg.q, &bound);
        if input_ok && output_ok {
            state.inputs[f.input - 1][x - 1].push(&f.demand);
            state.outputs[f.output - 1][y - 1].push(&f.demand);
            state.accepted[id.index()] = Some((x, y));
        }
    }
    (state.accepted(), state)
}

/// Everything computed by a two-phase run.
#[derive(Debug, Clone)]
pub struct TwoPhaseRun {
    pub routing: Routing,
    pub lower_bound: Rational,
    /// `p * L`.
    pub threshold: Rational,
    pub f1: Vec<FlowId>,
    /// Flows routed greedily, in routing order.
    pub f2: Vec<FlowId>,
    pub state: Phase1State,
    /// Link loads after Phase 1.
    pub phase1_loads: LinkLoads,
}

impl TwoPhaseRun {
    pub fn phase1_congestion(&self) -> Rational {
        self.phase1_loads.max()
    }
}

pub fn two_phase_detailed(
    fs: &FlowSet,
    cfg: &AlgorithmConfig,
) -> Result<TwoPhaseRun, AlgorithmError> {
    cfg.validate()?;
    validate_flowset(fs)?;
    let lb = lower_bound(fs);
    let (f1, state) = uphold_properties(fs, cfg, &lb);

    let entries = f1
        .iter()
        .map(|&id| {
            let (k, l) = state.copies_of(id).expect("admitted flow has copies");
            (id, k, l)
        })
        .collect();
    let expansion = CopyExpansion::new(fs.dims(), state.k_copies(), entries);
    let mut middles = vec![0; fs.len()];
    expansion.route_into(fs, None, &mut middles)?;

    let mut loads = LinkLoads::new(fs.dims());
    for &id in &f1 {
        loads.add_flow(fs.flow(id), middles[id.index()]);
    }
    let phase1_loads = loads.clone();

    let f2: Vec<FlowId> = fs
        .demand_order()
        .into_iter()
        .filter(|&id| state.copies_of(id).is_none())
        .collect();
    greedy_into(fs, &f2, &mut loads, &mut middles);

    Ok(TwoPhaseRun {
        routing: Routing::new(middles),
        threshold: &cfg.p * &lb,
        lower_bound: lb,
        f1,
        f2,
        state,
        phase1_loads,
    })
}

/// Two-phase routing with congestion at most `p * min(OPT, 1)` for the
/// default parameters.
pub fn route_two_phase(fs: &FlowSet, cfg: &AlgorithmConfig) -> Result<Routing, AlgorithmError> {
    two_phase_detailed(fs, cfg).map(|run| run.routing)
}
