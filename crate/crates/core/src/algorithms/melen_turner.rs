use crate::model::{FlowId, FlowSet, Routing};

use super::expansion::{copy_count, CopyExpansion};
use super::greedy::check_permutation;
use super::AlgorithmError;

/// Copies filled in non-increasing demand order, `N` flows per copy, at every
/// input and output switch. Nothing is rejected.
pub fn melen_turner_expansion(fs: &FlowSet) -> CopyExpansion {
    let dims = fs.dims();
    let n = dims.n_middle();
    let mut in_seen = vec![0usize; dims.n_tor()];
    let mut out_seen = vec![0usize; dims.n_tor()];
    let mut copies = vec![(0, 0); fs.len()];
    for id in fs.demand_order() {
        let f = fs.flow(id);
        copies[id.index()] = (in_seen[f.input - 1] / n + 1, out_seen[f.output - 1] / n + 1);
        in_seen[f.input - 1] += 1;
        out_seen[f.output - 1] += 1;
    }
    let entries = copies
        .into_iter()
        .enumerate()
        .map(|(idx, (k, l))| (FlowId::from_index(idx), k, l))
        .collect();
    CopyExpansion::new(dims, copy_count(fs), entries)
}

/// Melen-Turner routing: expand, edge-color the expanded network and
/// project back. `decomposition_order` fixes the order in which flows are
/// colored (default: id order).
pub fn melen_turner(
    fs: &FlowSet,
    decomposition_order: Option<&[FlowId]>,
) -> Result<Routing, AlgorithmError> {
    let expansion = melen_turner_expansion(fs);
    let order: Option<Vec<usize>> = match decomposition_order {
        Some(o) => {
            check_permutation(fs, o)?;
            Some(o.iter().map(|id| id.index()).collect())
        }
        None => None,
    };
    let mut routing = vec![0; fs.len()];
    expansion.route_into(fs, order.as_deref(), &mut routing)?;
    Ok(Routing::new(routing))
}
