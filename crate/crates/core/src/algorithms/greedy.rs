use crate::congestion::LinkLoads;
use crate::model::{Flow, FlowId, FlowSet, Routing};

use super::AlgorithmError;

/// Lowest middle switch whose path for `flow` has minimum congestion under
/// the current `loads`.
pub fn greedy_choice(loads: &LinkLoads, flow: &Flow) -> usize {
    let n = loads.dims().n_middle();
    let mut best = 1;
    for m in 2..=n {
        if loads.path(flow.input, m, flow.output) < loads.path(flow.input, best, flow.output) {
            best = m;
        }
    }
    best
}

pub(crate) fn check_permutation(fs: &FlowSet, order: &[FlowId]) -> Result<(), AlgorithmError> {
    let mut seen = vec![false; fs.len()];
    for &id in order {
        if id.0 == 0 || id.0 > fs.len() || std::mem::replace(&mut seen[id.index()], true) {
            return Err(AlgorithmError::BadOrder(Some(id)));
        }
    }
    if order.len() != fs.len() {
        return Err(AlgorithmError::BadOrder(None));
    }
    Ok(())
}

pub(crate) fn greedy_into(
    fs: &FlowSet,
    order: &[FlowId],
    loads: &mut LinkLoads,
    routing: &mut [usize],
) {
    for &id in order {
        let flow = fs.flow(id);
        let m = greedy_choice(loads, flow);
        loads.add_flow(flow, m);
        routing[id.index()] = m;
    }
}

/// Routes flows one by one in `order`, each on a least congested path.
pub fn unsorted_greedy(fs: &FlowSet, order: &[FlowId]) -> Result<Routing, AlgorithmError> {
    check_permutation(fs, order)?;
    let mut loads = LinkLoads::new(fs.dims());
    let mut routing = vec![0; fs.len()];
    greedy_into(fs, order, &mut loads, &mut routing);
    Ok(Routing::new(routing))
}

/// Greedy over flows sorted by non-increasing demand (stable in flow id).
pub fn sorted_greedy(fs: &FlowSet) -> Routing {
    let order = fs.demand_order();
    let mut loads = LinkLoads::new(fs.dims());
    let mut routing = vec![0; fs.len()];
    greedy_into(fs, &order, &mut loads, &mut routing);
    Routing::new(routing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congestion::congestion;
    use crate::model::ClosDims;
    use crate::rational::Rational;

    fn two_unit_flows() -> FlowSet {
        let mut b = FlowSet::builder(ClosDims::new(3, 1).unwrap());
        b.add(1, 1, 1, 1, Rational::one());
        b.add(1, 2, 1, 2, Rational::one());
        b.build().unwrap()
    }

    #[test]
    fn single_flow_lands_on_first_middle() {
        let mut b = FlowSet::builder(ClosDims::new(4, 2).unwrap());
        b.add(2, 3, 1, 4, Rational::new(2, 3));
        let fs = b.build().unwrap();
        assert_eq!(unsorted_greedy(&fs, &[FlowId(1)]).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn second_flow_avoids_loaded_link() {
        let fs = two_unit_flows();
        let r = unsorted_greedy(&fs, &[FlowId(1), FlowId(2)]).unwrap();
        assert_eq!(r.as_slice(), &[1, 2]);
    }

    #[test]
    fn order_must_be_permutation() {
        let fs = two_unit_flows();
        assert!(unsorted_greedy(&fs, &[FlowId(1)]).is_err());
        assert!(unsorted_greedy(&fs, &[FlowId(1), FlowId(1)]).is_err());
        assert!(unsorted_greedy(&fs, &[FlowId(1), FlowId(3)]).is_err());
    }

    #[test]
    fn sorted_greedy_on_empty_set() {
        let fs = FlowSet::empty(ClosDims::new(2, 2).unwrap());
        let r = sorted_greedy(&fs);
        assert!(r.is_empty());
        assert_eq!(
            *congestion(&fs, &r).unwrap().max_congestion(),
            Rational::zero()
        );
    }

    #[test]
    fn sorted_greedy_with_equal_demands_matches_id_order() {
        let mut b = FlowSet::builder(ClosDims::new(2, 2).unwrap());
        for (i, s, j, t) in [(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 1, 2), (2, 2, 2, 2)] {
            b.add(i, s, j, t, Rational::new(1, 3));
        }
        let fs = b.build().unwrap();
        let ids: Vec<FlowId> = fs.ids().collect();
        assert_eq!(sorted_greedy(&fs), unsorted_greedy(&fs, &ids).unwrap());
    }

    #[test]
    fn sorted_greedy_places_large_flows_first() {
        let mut b = FlowSet::builder(ClosDims::new(2, 1).unwrap());
        b.add(1, 1, 1, 1, Rational::new(1, 2));
        b.add(1, 1, 1, 1, Rational::new(1, 2));
        b.add(1, 2, 1, 2, Rational::one());
        let fs = b.build().unwrap();
        // The unit flow is routed first and takes M_1.
        assert_eq!(sorted_greedy(&fs).as_slice(), &[2, 2, 1]);
    }
}
