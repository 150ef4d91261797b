use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{ClosDims, FlowSet};
use crate::rational::Rational;

/// Random flow set obeying the hose model, deterministic in `seed`.
///
/// Each flow picks a source and a destination server with spare capacity,
/// then a demand `k/d` with `d` uniform in `1..=max_denominator` and `k`
/// uniform among the values that fit. Generation stops early once capacity
/// runs out or too many draws fail to fit.
pub fn random_hose_instance(
    dims: ClosDims,
    target_flows: usize,
    max_denominator: u32,
    seed: u64,
) -> FlowSet {
    let (n, r) = (dims.n_middle(), dims.n_tor());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut src = vec![Rational::one(); n * r];
    let mut dst = vec![Rational::one(); n * r];
    let mut b = FlowSet::builder(dims);
    let max_den = max_denominator.max(1);
    let mut misses = 0;
    while b.len() < target_flows && misses < 32 {
        let open_src: Vec<usize> = (0..n * r).filter(|&e| src[e].is_positive()).collect();
        let open_dst: Vec<usize> = (0..n * r).filter(|&e| dst[e].is_positive()).collect();
        if open_src.is_empty() || open_dst.is_empty() {
            break;
        }
        let a = open_src[rng.gen_range(0..open_src.len())];
        let z = open_dst[rng.gen_range(0..open_dst.len())];
        let d = rng.gen_range(1..=max_den) as i64;
        let cap = src[a].clone().min(dst[z].clone());
        let k_max = (&cap * &Rational::from_integer(d))
            .floor_i64()
            .expect("at most d");
        if k_max == 0 {
            misses += 1;
            continue;
        }
        let demand = Rational::new(rng.gen_range(1..=k_max), d);
        src[a] -= &demand;
        dst[z] -= &demand;
        b.add(a / n + 1, a % n + 1, z / n + 1, z % n + 1, demand);
    }
    b.build().expect("generated flows are in range")
}

/// `count` random instances with `N <= max_n`, `R <= max_r` and at most
/// `max_flows` flows each, all drawn from one ChaCha8 stream.
pub fn random_corpus(
    count: usize,
    max_n: usize,
    max_r: usize,
    max_flows: usize,
    max_denominator: u32,
    seed: u64,
) -> Vec<FlowSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dims = ClosDims::new(
                rng.gen_range(1..=max_n.max(1)),
                rng.gen_range(1..=max_r.max(1)),
            )
            .expect("positive dimensions");
            let flows = rng.gen_range(0..=max_flows);
            random_hose_instance(dims, flows, max_denominator, rng.gen())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congestion::validate_flowset;

    #[test]
    fn deterministic_and_valid() {
        let dims = ClosDims::new(3, 2).unwrap();
        let a = random_hose_instance(dims, 8, 4, 11);
        assert_eq!(a, random_hose_instance(dims, 8, 4, 11));
        assert_eq!(a.len(), 8);
        for seed in 0..2000 {
            validate_flowset(&random_hose_instance(dims, 12, 5, seed)).unwrap();
        }
    }

    #[test]
    fn corpus_respects_bounds() {
        let corpus = random_corpus(50, 3, 2, 9, 4, 1);
        assert_eq!(corpus, random_corpus(50, 3, 2, 9, 4, 1));
        for fs in &corpus {
            assert!(fs.dims().n_middle() <= 3 && fs.dims().n_tor() <= 2 && fs.len() <= 9);
        }
    }

    #[test]
    fn zero_target_is_empty() {
        assert!(random_hose_instance(ClosDims::new(2, 2).unwrap(), 0, 3, 5).is_empty());
    }

    #[test]
    fn denominator_one_gives_unit_flows() {
        let fs = random_hose_instance(ClosDims::new(3, 3).unwrap(), 9, 1, 3);
        assert!(fs.all_unit_demands());
    }
}
