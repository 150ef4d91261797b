//! Exact minimum congestion by branch and bound, and exact 3-edge-coloring
//! of small graphs.
//!
//! The search assigns flows in non-increasing demand order, starting from
//! the sorted-greedy routing as incumbent, and cuts any branch whose partial
//! congestion already reaches the incumbent. Middle switches that carry no
//! flow yet are interchangeable, so only the first of them is tried. The
//! search stops early once the incumbent meets the lower bound `L`.
//!
//! A second search in flow-id order then returns the lexicographically
//! smallest routing attaining the optimum, so witnesses do not depend on
//! search internals. Demands are scaled to integers when their common
//! denominator is small, otherwise the search runs on exact rationals.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::algorithms::sorted_greedy;
use crate::congestion::{congestion, lower_bound};
use crate::graph::{GraphError, SimpleGraph};
use crate::model::{FlowSet, Routing};
use crate::rational::Rational;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub opt: Rational,
    /// Lexicographically smallest optimal routing.
    pub witness: Routing,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("node budget of {budget} exhausted; best routing found has congestion {incumbent}")]
    BudgetExceeded {
        budget: u64,
        /// Best congestion found, an upper bound on the optimum only.
        incumbent: Rational,
        routing: Routing,
    },
}

trait Weight: Clone + Ord + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self> {
    fn zero() -> Self;
}

impl Weight for u64 {
    fn zero() -> Self {
        0
    }
}

impl Weight for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
}

struct Search<W> {
    n: usize,
    // (input - 1, output - 1, demand) per flow, indexed by flow index
    flows: Vec<(usize, usize, W)>,
    up: Vec<W>,
    down: Vec<W>,
    current: Vec<usize>,
    best: W,
    best_routing: Vec<usize>,
    target: W,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl<W: Weight> Search<W> {
    fn new(n: usize, n_tor: usize, flows: Vec<(usize, usize, W)>, budget: u64) -> Self {
        let len = flows.len();
        Search {
            n,
            flows,
            up: vec![W::zero(); n_tor * n],
            down: vec![W::zero(); n_tor * n],
            current: vec![0; len],
            best: W::zero(),
            best_routing: vec![0; len],
            target: W::zero(),
            nodes: 0,
            budget,
            aborted: false,
        }
    }

    /// Congestion of the path after adding flow `f` on middle `m`.
    fn path_after(&self, f: usize, m: usize) -> W {
        let (i, j, ref d) = self.flows[f];
        let mut a = self.up[i * self.n + m].clone();
        a += d;
        let mut b = self.down[j * self.n + m].clone();
        b += d;
        a.max(b)
    }

    fn place(&mut self, f: usize, m: usize) {
        let (i, j, ref d) = self.flows[f];
        self.up[i * self.n + m] += d;
        self.down[j * self.n + m] += d;
        self.current[f] = m;
    }

    fn unplace(&mut self, f: usize, m: usize) {
        let (i, j, ref d) = self.flows[f];
        self.up[i * self.n + m] -= d;
        self.down[j * self.n + m] -= d;
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
        }
        !self.aborted
    }

    /// Improves on `best` over flows `order[k..]`.
    fn improve(&mut self, order: &[usize], k: usize, partial: &W, used: usize) {
        if k == order.len() {
            self.best = partial.clone();
            self.best_routing.clone_from(&self.current);
            return;
        }
        let f = order[k];
        for m in 0..self.n.min(used + 1) {
            if !self.tick() || self.best <= self.target {
                return;
            }
            let load = self.path_after(f, m);
            let next = partial.clone().max(load);
            if next >= self.best {
                continue;
            }
            self.place(f, m);
            self.improve(order, k + 1, &next, used.max(m + 1));
            self.unplace(f, m);
        }
    }

    /// First routing in lexicographic order with congestion at most `best`.
    fn first_within(&mut self, k: usize, used: usize) -> bool {
        if k == self.flows.len() {
            self.best_routing.clone_from(&self.current);
            return true;
        }
        for m in 0..self.n.min(used + 1) {
            if !self.tick() {
                return false;
            }
            if self.path_after(k, m) > self.best {
                continue;
            }
            self.place(k, m);
            let found = self.first_within(k + 1, used.max(m + 1));
            self.unplace(k, m);
            if found {
                return true;
            }
        }
        false
    }
}

fn solve<W: Weight>(
    fs: &FlowSet,
    weights: Vec<W>,
    target: W,
    budget: u64,
    to_rational: impl Fn(&W) -> Rational,
) -> Result<OracleResult, OracleError> {
    let dims = fs.dims();
    let flows = fs
        .flows()
        .iter()
        .zip(weights)
        .map(|(f, w)| (f.input - 1, f.output - 1, w))
        .collect();
    let mut search = Search::new(dims.n_middle(), dims.n_tor(), flows, budget);

    let greedy = sorted_greedy(fs);
    search.best_routing = greedy.as_slice().iter().map(|m| m - 1).collect();
    for f in 0..fs.len() {
        let m = search.best_routing[f];
        search.place(f, m);
    }
    search.best = search
        .up
        .iter()
        .chain(&search.down)
        .max()
        .cloned()
        .unwrap_or_else(W::zero);
    for f in 0..fs.len() {
        let m = search.best_routing[f];
        search.unplace(f, m);
    }
    search.target = target;

    let order: Vec<usize> = fs.demand_order().iter().map(|id| id.index()).collect();
    search.improve(&order, 0, &W::zero(), 0);
    let witness_of = |s: &Search<W>| Routing::new(s.best_routing.iter().map(|m| m + 1).collect());
    if !search.aborted {
        search.first_within(0, 0);
    }
    if search.aborted {
        return Err(OracleError::BudgetExceeded {
            budget,
            incumbent: to_rational(&search.best),
            routing: witness_of(&search),
        });
    }
    Ok(OracleResult {
        opt: to_rational(&search.best),
        witness: witness_of(&search),
        nodes_explored: search.nodes,
    })
}

// Scaled demands stay far below u64::MAX for any searchable instance.
const MAX_SCALE: u64 = 1 << 32;

/// Minimum congestion over all routings of `fs`, with a witness. Stops with
/// [`OracleError::BudgetExceeded`] after `budget` search nodes.
pub fn exact_opt(fs: &FlowSet, budget: u64) -> Result<OracleResult, OracleError> {
    let lb = lower_bound(fs);
    let scale = fs
        .flows()
        .iter()
        .fold(BigInt::one(), |acc, f| acc.lcm(f.demand.denom()));
    match scale
        .to_u64()
        .filter(|&s| s <= MAX_SCALE && fs.len() < (1 << 20))
    {
        Some(s) => {
            let scaled = |r: &Rational| -> u64 {
                (r.numer() * BigInt::from(s) / r.denom())
                    .to_u64()
                    .expect("scaled demand fits")
            };
            let weights = fs.flows().iter().map(|f| scaled(&f.demand)).collect();
            // Loads are whole multiples of 1/s, so OPT >= ceil(L * s) / s.
            let lb_scaled = &lb * &Rational::from_integer(s as i64);
            let target =
                lb_scaled.floor_i64().expect("small") as u64 + u64::from(!lb_scaled.is_integer());
            solve(fs, weights, target, budget, |w| {
                Rational::new(*w as i64, s as i64)
            })
        }
        None => {
            let weights = fs.flows().iter().map(|f| f.demand.clone()).collect();
            solve(fs, weights, lb, budget, Rational::clone)
        }
    }
}

/// Congestion of the witness recomputed from scratch; equals `opt`.
pub fn recheck(fs: &FlowSet, result: &OracleResult) -> bool {
    congestion(fs, &result.witness).is_ok_and(|c| *c.max_congestion() == result.opt)
}

/// A proper edge coloring of `g` with colors `1..=3` (edge order of `g`), or
/// `None` when none exists. The first coloring in lexicographic order is
/// returned.
pub fn three_edge_colorable(g: &SimpleGraph) -> Result<Option<Vec<usize>>, GraphError> {
    g.check_max_degree(3)?;
    let edges = g.edges();
    let adjacent: Vec<Vec<usize>> = (0..edges.len())
        .map(|e| {
            let (a, b) = edges[e];
            (0..e)
                .filter(|&o| {
                    let (c, d) = edges[o];
                    a == c || a == d || b == c || b == d
                })
                .collect()
        })
        .collect();
    let mut colors = vec![0usize; edges.len()];

    fn extend(e: usize, adjacent: &[Vec<usize>], colors: &mut [usize]) -> bool {
        if e == colors.len() {
            return true;
        }
        for c in 1..=3 {
            if adjacent[e].iter().all(|&o| colors[o] != c) {
                colors[e] = c;
                if extend(e + 1, adjacent, colors) {
                    return true;
                }
            }
        }
        colors[e] = 0;
        false
    }

    Ok(extend(0, &adjacent, &mut colors).then_some(colors))
}
