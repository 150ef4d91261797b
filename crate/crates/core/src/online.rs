//! Online routing: routers see flows one at a time and never revise a
//! decision.
//!
//! The adversary of [`adversary_xy`] feeds the shared prefix `X1`, looks at
//! how the router placed it, and continues with whichever suffix (`X2` or
//! `Y2`) the placement cannot absorb, forcing two unit flows onto one link.
//! [`adversary_super`] repeats this per block of a supersequence, and
//! [`exhaustive_supersequences`] / [`randomized_experiment`] measure routers
//! against the whole family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algorithms::greedy_choice;
use crate::congestion::{congestion, is_link_disjoint, LinkLoads};
use crate::instances::{online_sequences, satisfies_p1, FlowSequence, InstanceError};
use crate::model::{ClosDims, Flow, FlowId, FlowSet, Routing};
use crate::rational::Rational;

/// A deterministic online router, possibly parameterized by a seed.
pub trait OnlineRouter {
    fn name(&self) -> &str;

    /// Middle switch for `flow`, given the loads created by earlier flows.
    fn route(&mut self, dims: ClosDims, loads: &LinkLoads, flow: &Flow) -> usize;
}

/// Least congested path, lowest middle on ties.
#[derive(Debug, Default, Clone)]
pub struct GreedyRouter;

impl OnlineRouter for GreedyRouter {
    fn name(&self) -> &str {
        "unsorted-greedy"
    }

    fn route(&mut self, _dims: ClosDims, loads: &LinkLoads, flow: &Flow) -> usize {
        greedy_choice(loads, flow)
    }
}

/// Sorted greedy restricted to what an online router can do. It cannot
/// reorder arrivals, so its decisions coincide with [`GreedyRouter`].
#[derive(Debug, Default, Clone)]
pub struct SortedGreedyRouter;

impl OnlineRouter for SortedGreedyRouter {
    fn name(&self) -> &str {
        "sorted-greedy"
    }

    fn route(&mut self, _dims: ClosDims, loads: &LinkLoads, flow: &Flow) -> usize {
        greedy_choice(loads, flow)
    }
}

/// Cycles through the middle switches regardless of load.
#[derive(Debug, Default, Clone)]
pub struct RoundRobinRouter {
    next: usize,
}

impl OnlineRouter for RoundRobinRouter {
    fn name(&self) -> &str {
        "round-robin"
    }

    fn route(&mut self, dims: ClosDims, _loads: &LinkLoads, _flow: &Flow) -> usize {
        let m = self.next % dims.n_middle() + 1;
        self.next += 1;
        m
    }
}

/// Uniformly random middle switch per flow from a seeded ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct EcmpRouter {
    rng: ChaCha8Rng,
}

impl EcmpRouter {
    pub fn new(seed: u64) -> Self {
        EcmpRouter {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl OnlineRouter for EcmpRouter {
    fn name(&self) -> &str {
        "ecmp"
    }

    fn route(&mut self, dims: ClosDims, _loads: &LinkLoads, _flow: &Flow) -> usize {
        self.rng.gen_range(1..=dims.n_middle())
    }
}

/// Names accepted by [`router_by_name`].
pub const ROUTER_NAMES: [&str; 4] = ["unsorted-greedy", "sorted-greedy", "round-robin", "ecmp"];

/// Router by name; `seed` is used by `ecmp` only.
pub fn router_by_name(name: &str, seed: u64) -> Option<Box<dyn OnlineRouter>> {
    Some(match name {
        "unsorted-greedy" | "greedy" => Box::new(GreedyRouter),
        "sorted-greedy" => Box::new(SortedGreedyRouter),
        "round-robin" => Box::new(RoundRobinRouter::default()),
        "ecmp" => Box::new(EcmpRouter::new(seed)),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OnlineError {
    #[error(
        "router `{router}` sent flow {flow} to middle switch {middle}, outside 1..={n_middle}"
    )]
    BadMiddle {
        router: String,
        flow: FlowId,
        middle: usize,
        n_middle: usize,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Loads and decisions of one router over a stream of flows.
struct Session<'r> {
    router: &'r mut dyn OnlineRouter,
    dims: ClosDims,
    loads: LinkLoads,
    flows: Vec<Flow>,
    middles: Vec<usize>,
}

impl<'r> Session<'r> {
    fn new(router: &'r mut dyn OnlineRouter, dims: ClosDims) -> Self {
        Session {
            router,
            dims,
            loads: LinkLoads::new(dims),
            flows: Vec::new(),
            middles: Vec::new(),
        }
    }

    fn feed(&mut self, flow: &Flow) -> Result<usize, OnlineError> {
        let m = self.router.route(self.dims, &self.loads, flow);
        if !(1..=self.dims.n_middle()).contains(&m) {
            return Err(OnlineError::BadMiddle {
                router: self.router.name().to_string(),
                flow: flow.id,
                middle: m,
                n_middle: self.dims.n_middle(),
            });
        }
        self.loads.add_flow(flow, m);
        self.flows.push(Flow {
            id: FlowId(self.flows.len() + 1),
            ..flow.clone()
        });
        self.middles.push(m);
        Ok(m)
    }

    /// Flows seen so far, renumbered in arrival order, with their routing.
    fn finish(self) -> (FlowSet, Routing) {
        let fs = FlowSet::new(self.dims, self.flows).expect("flows came from valid flow sets");
        (fs, Routing::new(self.middles))
    }
}

/// Feeds `seq` to `router` in order. The routing is indexed by flow id.
pub fn run_online(
    router: &mut dyn OnlineRouter,
    seq: &FlowSequence,
) -> Result<Routing, OnlineError> {
    let mut session = Session::new(router, seq.flowset.dims());
    let mut middles = vec![0; seq.flowset.len()];
    for &id in &seq.order {
        middles[id.index()] = session.feed(seq.flowset.flow(id))?;
    }
    Ok(Routing::new(middles))
}

/// Result of an adversarial run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryOutcome {
    /// Flows in arrival order, ids matching arrival.
    pub chosen_sequence: FlowSequence,
    /// Per block, whether the adversary picked `Y` (true) or `X` (false).
    pub choices: Vec<bool>,
    pub routing: Routing,
    pub final_congestion: Rational,
    pub witness: Routing,
    pub opt_witness_congestion: Rational,
}

/// Adaptive adversary on `C(n, 3s)`: in every block it feeds `X1`, then `Y2`
/// if the router's placement of `X1` has its two groups on the same middles,
/// and `X2` otherwise.
pub fn adversary_super(
    router: &mut dyn OnlineRouter,
    n: usize,
    s: usize,
) -> Result<AdversaryOutcome, OnlineError> {
    online_sequences(n)?;
    if s == 0 {
        return Err(InstanceError::BadParameter("s must be at least 1".into()).into());
    }
    let r = 3 * s;
    let dims = ClosDims::new(n, r).map_err(InstanceError::from)?;
    let mut session = Session::new(router, dims);
    let mut choices = Vec::new();
    let mut witness = Vec::new();
    for j in 1..=s {
        let (x_block, _) = crate::instances::block(n, r, j, false);
        let mut placed = Vec::new();
        for f in &x_block.flows()[..n] {
            placed.push(session.feed(f)?);
        }
        let y = satisfies_p1(n, &placed);
        let (chosen, w) = crate::instances::block(n, r, j, y);
        for f in &chosen.flows()[n..] {
            session.feed(f)?;
        }
        choices.push(y);
        witness.extend(w);
    }
    let (fs, routing) = session.finish();
    let final_congestion = congestion(&fs, &routing)
        .expect("router output is total")
        .max_congestion()
        .clone();
    let witness = Routing::new(witness);
    let opt_witness_congestion = congestion(&fs, &witness)
        .expect("witness is total")
        .max_congestion()
        .clone();
    Ok(AdversaryOutcome {
        chosen_sequence: FlowSequence::in_id_order(fs),
        choices,
        routing,
        final_congestion,
        witness,
        opt_witness_congestion,
    })
}

/// Single-block adversary on `C(n, 3)`.
pub fn adversary_xy(
    router: &mut dyn OnlineRouter,
    n: usize,
) -> Result<AdversaryOutcome, OnlineError> {
    adversary_super(router, n, 1)
}

/// Routers on every supersequence of `C(n, 3s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    /// Final congestion per run.
    pub congestions: Vec<Rational>,
    /// Runs whose routing was link-disjoint.
    pub link_disjoint: usize,
    pub mean: Rational,
}

fn summarize(congestions: Vec<Rational>, link_disjoint: usize) -> FamilyReport {
    let count = congestions.len().max(1) as i64;
    let mean = &congestions.iter().sum::<Rational>() / &Rational::from_integer(count);
    FamilyReport {
        congestions,
        link_disjoint,
        mean,
    }
}

fn run_instance(
    router: &mut dyn OnlineRouter,
    fs: &FlowSet,
) -> Result<(Rational, bool), OnlineError> {
    let seq = FlowSequence::in_id_order(fs.clone());
    let r = run_online(router, &seq)?;
    let c = congestion(fs, &r).expect("router output is total");
    let disjoint = is_link_disjoint(fs, &r).expect("router output is total");
    Ok((c.max_congestion().clone(), disjoint))
}

/// Runs a fresh router from `make_router` on each of the `2^s`
/// supersequences.
pub fn exhaustive_supersequences(
    mut make_router: impl FnMut() -> Box<dyn OnlineRouter>,
    n: usize,
    s: usize,
) -> Result<FamilyReport, OnlineError> {
    let mut congestions = Vec::new();
    let mut disjoint = 0;
    for inst in crate::instances::supersequences(n, s)? {
        let mut router = make_router();
        let (c, d) = run_instance(router.as_mut(), &inst.flowset)?;
        congestions.push(c);
        disjoint += usize::from(d);
    }
    Ok(summarize(congestions, disjoint))
}

/// Draws `trials` supersequences uniformly (ChaCha8 from `seed`) and runs a
/// router built from a fresh per-trial seed on each.
pub fn randomized_experiment(
    make_router: impl Fn(u64) -> Box<dyn OnlineRouter>,
    n: usize,
    s: usize,
    trials: usize,
    seed: u64,
) -> Result<FamilyReport, OnlineError> {
    let family = crate::instances::supersequences(n, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut congestions = Vec::with_capacity(trials);
    let mut disjoint = 0;
    for _ in 0..trials {
        let inst = &family[rng.gen_range(0..family.len())];
        let mut router = make_router(rng.gen());
        let (c, d) = run_instance(router.as_mut(), &inst.flowset)?;
        congestions.push(c);
        disjoint += usize::from(d);
    }
    Ok(summarize(congestions, disjoint))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::unsorted_greedy;

    #[test]
    fn greedy_router_matches_offline_greedy() {
        let seq = online_sequences(4).unwrap().y;
        let online = run_online(&mut GreedyRouter, &seq).unwrap();
        assert_eq!(online, unsorted_greedy(&seq.flowset, &seq.order).unwrap());
    }

    #[test]
    fn decisions_on_a_prefix_do_not_change() {
        let seq = online_sequences(4).unwrap().x;
        let full = run_online(&mut RoundRobinRouter::default(), &seq).unwrap();
        let head = run_online(&mut RoundRobinRouter::default(), &seq.prefix(4)).unwrap();
        assert_eq!(&full.as_slice()[..4], head.as_slice());
    }

    #[test]
    fn adversary_forces_two() {
        for n in [2, 4] {
            for name in ["unsorted-greedy", "sorted-greedy", "round-robin"] {
                let mut router = router_by_name(name, 0).unwrap();
                let out = adversary_xy(router.as_mut(), n).unwrap();
                assert!(
                    out.final_congestion >= Rational::from_integer(2),
                    "{name} n={n}"
                );
                assert_eq!(out.opt_witness_congestion, Rational::one());
            }
        }
    }

    struct Broken;

    impl OnlineRouter for Broken {
        fn name(&self) -> &str {
            "broken"
        }

        fn route(&mut self, dims: ClosDims, _: &LinkLoads, _: &Flow) -> usize {
            dims.n_middle() + 1
        }
    }

    #[test]
    fn out_of_range_middle_is_an_error() {
        let seq = online_sequences(2).unwrap().x;
        assert!(matches!(
            run_online(&mut Broken, &seq),
            Err(OnlineError::BadMiddle { middle: 3, .. })
        ));
    }

    #[test]
    fn exhaustive_family_bound() {
        let report = exhaustive_supersequences(|| Box::new(GreedyRouter), 4, 2).unwrap();
        assert_eq!(report.congestions.len(), 4);
        assert!(report.link_disjoint <= 1);
        assert!(report.mean >= Rational::new(7, 4));
    }

    #[test]
    fn ecmp_experiment_is_reproducible() {
        let make = |seed| Box::new(EcmpRouter::new(seed)) as Box<dyn OnlineRouter>;
        let a = randomized_experiment(make, 4, 1, 50, 9).unwrap();
        let b = randomized_experiment(make, 4, 1, 50, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.mean >= Rational::one());
    }
}
