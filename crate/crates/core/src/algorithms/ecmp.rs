use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{FlowSet, Routing};

/// Equal-cost multipath: every flow, in id order, on a middle switch drawn
/// uniformly from a ChaCha8 stream seeded with `seed`.
pub fn ecmp(fs: &FlowSet, seed: u64) -> Routing {
    let n = fs.dims().n_middle();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Routing::new((0..fs.len()).map(|_| rng.gen_range(1..=n)).collect())
}
