use crate::matching::{edge_color, is_proper_coloring, BipartiteMultigraph, MatchingError};
use crate::model::{ClosDims, FlowId, FlowSet, Routing};

/// Number of copies `K = ceil(F / N)` of each ToR switch, where `F` is the
/// largest number of flows at a single ToR switch; at least 1.
pub fn copy_count(fs: &FlowSet) -> usize {
    fs.max_switch_degree().div_ceil(fs.dims().n_middle()).max(1)
}

/// Flows mapped onto copies of their ToR switches. Each copy is a vertex of
/// a bipartite multigraph; properly coloring it with `N` colors gives a
/// routing with at most one flow per expanded link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyExpansion {
    dims: ClosDims,
    k_copies: usize,
    // (flow, input copy, output copy), copies 1-based; edge e is entries[e].
    entries: Vec<(FlowId, usize, usize)>,
}

impl CopyExpansion {
    pub fn new(dims: ClosDims, k_copies: usize, entries: Vec<(FlowId, usize, usize)>) -> Self {
        assert!(
            entries
                .iter()
                .all(|&(_, k, l)| (1..=k_copies).contains(&k) && (1..=k_copies).contains(&l)),
            "copy index outside 1..={k_copies}"
        );
        CopyExpansion {
            dims,
            k_copies,
            entries,
        }
    }

    pub fn k_copies(&self) -> usize {
        self.k_copies
    }

    pub fn entries(&self) -> &[(FlowId, usize, usize)] {
        &self.entries
    }

    /// Edge `e` joins input copy `(i, k)` to output copy `(j, l)` of the
    /// flow in `entries()[e]`.
    pub fn graph(&self, fs: &FlowSet) -> BipartiteMultigraph {
        let side = self.dims.n_tor() * self.k_copies;
        let edges = self
            .entries
            .iter()
            .map(|&(id, k, l)| {
                let f = fs.flow(id);
                (
                    (f.input - 1) * self.k_copies + k - 1,
                    (f.output - 1) * self.k_copies + l - 1,
                )
            })
            .collect();
        BipartiteMultigraph::new(side, side, edges).expect("copy vertices are in range")
    }

    /// Colors the expanded graph (edges in entry order, or `order` over entry
    /// positions) and writes middle switches for the covered flows into
    /// `routing`.
    pub fn route_into(
        &self,
        fs: &FlowSet,
        order: Option<&[usize]>,
        routing: &mut [usize],
    ) -> Result<(), MatchingError> {
        let coloring = edge_color(&self.graph(fs), self.dims.n_middle(), order)?;
        for (&(id, _, _), &c) in self.entries.iter().zip(coloring.colors()) {
            routing[id.index()] = c + 1;
        }
        Ok(())
    }

    /// True iff `routing`, restricted to the covered flows, is link-disjoint
    /// in the expanded network, i.e. could be produced by some proper
    /// coloring.
    pub fn admits(&self, fs: &FlowSet, routing: &Routing) -> bool {
        let n = self.dims.n_middle();
        let colors: Option<Vec<usize>> = self
            .entries
            .iter()
            .map(|&(id, _, _)| {
                routing
                    .get(id)
                    .filter(|m| (1..=n).contains(m))
                    .map(|m| m - 1)
            })
            .collect();
        colors.is_some_and(|c| is_proper_coloring(&self.graph(fs), &c, n))
    }
}
