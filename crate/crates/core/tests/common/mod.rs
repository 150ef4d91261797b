//! Helpers shared by the integration tests.
#![allow(dead_code)]

use closflow::instances::random_corpus;
use closflow::{FlowSet, Rational, Routing};

pub const CORPUS_SEED: u64 = 0x5eed_c105;

/// The 1000-instance random corpus used by the property checks: N <= 3,
/// R <= 3, at most 9 flows, denominators up to 4.
pub fn corpus() -> Vec<FlowSet> {
    random_corpus(1000, 3, 3, 9, 4, CORPUS_SEED)
}

/// Unit-demand instances (every demand is 1/1).
pub fn unit_corpus(count: usize, seed: u64) -> Vec<FlowSet> {
    random_corpus(count, 3, 3, 9, 1, seed)
}

/// Maximum link load, computed from scratch without the library's load table.
pub fn naive_congestion(fs: &FlowSet, middles: &[usize]) -> Rational {
    let n = fs.dims().n_middle();
    let r = fs.dims().n_tor();
    let mut up = vec![Rational::zero(); r * n];
    let mut down = vec![Rational::zero(); r * n];
    for (f, &m) in fs.flows().iter().zip(middles) {
        up[(f.input - 1) * n + m - 1] += &f.demand;
        down[(f.output - 1) * n + m - 1] += &f.demand;
    }
    up.into_iter().chain(down).max().unwrap_or_default()
}

/// Every routing in lexicographic order: the odometer over `1..=N` per flow.
pub fn all_routings(fs: &FlowSet) -> impl Iterator<Item = Vec<usize>> {
    let n = fs.dims().n_middle();
    let len = fs.len();
    let mut next = Some(vec![1; len]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            if succ[pos] < n {
                succ[pos] += 1;
                next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(current)
    })
}

/// Minimum congestion by full enumeration, with the first optimal routing.
pub fn naive_opt(fs: &FlowSet) -> (Rational, Routing) {
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for middles in all_routings(fs) {
        let c = naive_congestion(fs, &middles);
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, middles));
        }
    }
    let (c, m) = best.expect("at least the empty routing");
    (c, Routing::new(m))
}
