use crate::algorithms::{melen_turner, melen_turner_expansion};
use crate::model::{ClosDims, FlowId, FlowSet, Routing};
use crate::rational::Rational;

use super::{bad, InstanceError, NamedInstance};

/// Middle switch of flow `(i, j)` in the elemental routing of the cross
/// gadget of size `n`.
pub fn elemental_middle(i: usize, j: usize, n: usize) -> usize {
    (i + j - 2) % n + 1
}

fn gadget_flow_id(i: usize, j: usize, n: usize) -> FlowId {
    FlowId((i - 1) * (n - 1) + j)
}

/// Cross gadget of size `n` on `C(n, n)`: a unit flow from source server `j`
/// of input `i` to destination server `i` of output `j`, for every input `i`
/// and every `j < n`. Flow ids run over `i`, then `j`.
///
/// Witness `"elemental"` has congestion 1, which is optimal.
pub fn cross_gadget(n: usize) -> Result<NamedInstance, InstanceError> {
    if n < 2 {
        return Err(bad(format!("cross gadget needs n >= 2, got {n}")));
    }
    let mut b = FlowSet::builder(ClosDims::new(n, n)?);
    let mut elemental = Vec::new();
    for i in 1..=n {
        for j in 1..n {
            b.add(i, j, j, i, Rational::one());
            elemental.push(elemental_middle(i, j, n));
        }
    }
    Ok(NamedInstance::new(format!("cross-gadget-{n}"), b.build()?)
        .with_witness("elemental", Routing::new(elemental), Rational::one())
        .with_expected("opt", Rational::one()))
}

/// The two structural facts about a congestion-1 routing `r` of the cross
/// gadget of size `n`:
/// flows sharing a ToR switch use distinct middles, and the middle left
/// unused at each input switch differs from input to input.
pub fn cross_gadget_properties(n: usize, r: &Routing) -> (bool, bool) {
    let mut distinct = true;
    let mut free = Vec::new();
    for i in 1..=n {
        let mut used = vec![false; n + 1];
        for j in 1..n {
            let m = r.middle(gadget_flow_id(i, j, n));
            distinct &= !std::mem::replace(&mut used[m], true);
        }
        free.extend((1..=n).filter(|&m| !used[m]));
    }
    for j in 1..n {
        let mut used = vec![false; n + 1];
        for i in 1..=n {
            distinct &= !std::mem::replace(&mut used[r.middle(gadget_flow_id(i, j, n))], true);
        }
    }
    let mut sorted = free.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let free_distinct = distinct && free.len() == n && sorted.len() == n;
    (distinct, free_distinct)
}

/// Instance on `C(n, n + 1)` whose minimum congestion is 3/2.
///
/// Flows `1..=n(n-1)` are the cross gadget. Then, for each input `i <= n`,
/// a flow of demand 1/2 from source server `n` to destination server
/// `ceil(i/2)` of output `n`, and finally a unit flow from source server `n`
/// of input `n + 1` to destination server `n` of output `n`.
///
/// Witness `"optimal"` reaches 3/2 on link `M_n O_n`.
pub fn theorem6_instance(n: usize) -> Result<NamedInstance, InstanceError> {
    if n < 2 {
        return Err(bad(format!("instance needs n >= 2, got {n}")));
    }
    let half = Rational::new(1, 2);
    let mut b = FlowSet::builder(ClosDims::new(n, n + 1)?);
    let mut optimal = Vec::new();
    for i in 1..=n {
        for j in 1..n {
            b.add(i, j, j, i, Rational::one());
            optimal.push(elemental_middle(i, j, n));
        }
    }
    for i in 1..=n {
        b.add(i, n, n, i.div_ceil(2), half.clone());
        optimal.push((i + n - 2) % n + 1);
    }
    b.add(n + 1, n, n, n, Rational::one());
    optimal.push(n);
    let three_halves = Rational::new(3, 2);
    Ok(NamedInstance::new(format!("theorem6-{n}"), b.build()?)
        .with_witness("optimal", Routing::new(optimal), three_halves.clone())
        .with_expected("opt", three_halves))
}

/// `2 - eps - (1 - eps)/n`, the congestion the worst Melen-Turner run is
/// claimed to reach on [`mt_worstcase`]. It matches the true worst case only
/// when `(1 + (n - 1)/eps)/n` is a whole number of copies.
pub fn mt_worstcase_formula(n: usize, eps: &Rational) -> Rational {
    let one = Rational::one();
    &(&Rational::from_integer(2) - eps) - &(&(&one - eps) / &Rational::from_integer(n as i64))
}

/// Worst case for Melen-Turner on `C(n, 1)`: a unit flow from source server 1
/// to destination server 1, and `1/eps` flows of demand `eps` from each source
/// server `s >= 2` to destination server `s`.
///
/// Witness `"optimal"` has congestion 1 (unit flow on `M_1`, server `s`'s
/// flows on `M_s`). Witness `"mt-adversarial"` is the Melen-Turner routing
/// coloring flows in id order; it stacks one small flow from every later copy
/// onto the middle switch of the unit flow, reaching `1 + eps (K - 1)` with
/// `K` copies.
pub fn mt_worstcase(n: usize, eps: &Rational) -> Result<NamedInstance, InstanceError> {
    if n < 2 {
        return Err(bad(format!("family needs n >= 2, got {n}")));
    }
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(bad(format!("eps must lie in (0, 1], got {eps}")));
    }
    let per_server = eps.recip();
    if !per_server.is_integer() {
        return Err(bad(format!("1/eps must be an integer, got {per_server}")));
    }
    let per_server = per_server.floor_i64().expect("small") as usize;

    let mut b = FlowSet::builder(ClosDims::new(n, 1)?);
    let mut optimal = vec![1];
    b.add(1, 1, 1, 1, Rational::one());
    for s in 2..=n {
        for _ in 0..per_server {
            b.add(1, s, 1, s, eps.clone());
            optimal.push(s);
        }
    }
    let fs = b.build()?;
    let adversarial = melen_turner(&fs, None).expect("every flow fits in the expansion");
    let copies = melen_turner_expansion(&fs).k_copies();
    let worst = Rational::one() + eps * &Rational::from_integer(copies as i64 - 1);
    Ok(NamedInstance::new(format!("mt-worstcase-{n}-{eps}"), fs)
        .with_witness("optimal", Routing::new(optimal), Rational::one())
        .with_witness("mt-adversarial", adversarial, worst)
        .with_expected("opt", Rational::one())
        .with_expected("formula", mt_worstcase_formula(n, eps)))
}

/// Nine flows leaving `I_1` of `C(4, 3)`: `f1` (demand 1) from source 1,
/// `f2..f5` (1/2) two each from sources 2 and 3, `f6..f9` (1/4) from
/// source 4. Outputs: `f1, f2, f6` to `O_1`, `f3, f4, f7` to `O_2`,
/// `f5, f8, f9` to `O_3`, destination servers packed from 1.
///
/// `L = 1`; with `p = 5/3` and `q = 3` the admission step keeps `f1..f8`
/// and refuses `f9`, whose third copy would need `1 + 1/2 + 1/4 > 5/3`.
pub fn figure5_instance() -> NamedInstance {
    let mut b = FlowSet::builder(ClosDims::new(4, 3).expect("valid"));
    let (one, half, quarter) = (Rational::one(), Rational::new(1, 2), Rational::new(1, 4));
    b.add(1, 1, 1, 1, one);
    b.add(1, 2, 1, 2, half.clone());
    b.add(1, 2, 2, 1, half.clone());
    b.add(1, 3, 2, 2, half.clone());
    b.add(1, 3, 3, 1, half);
    b.add(1, 4, 1, 2, quarter.clone());
    b.add(1, 4, 2, 2, quarter.clone());
    b.add(1, 4, 3, 1, quarter.clone());
    b.add(1, 4, 3, 1, quarter);
    NamedInstance::new("figure5", b.build().expect("valid"))
        .with_expected("lower-bound", Rational::one())
        .with_expected("p", Rational::new(5, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congestion::{is_link_disjoint, validate_flowset};

    #[test]
    fn gadget_sizes_and_witness() {
        for n in 2..=6 {
            let g = cross_gadget(n).unwrap();
            assert_eq!(g.flowset.len(), n * (n - 1));
            validate_flowset(&g.flowset).unwrap();
            g.verify_witnesses().unwrap();
            let r = g.witness("elemental").unwrap();
            assert!(is_link_disjoint(&g.flowset, r).unwrap());
            assert_eq!(cross_gadget_properties(n, r), (true, true));
        }
        assert!(cross_gadget(1).is_err());
    }

    #[test]
    fn gadget_properties_detect_shared_free_middle() {
        // Input 1 and input 2 both leave M_3 free.
        let r = Routing::new(vec![1, 2, 1, 2, 3, 1]);
        assert_eq!(cross_gadget_properties(3, &r), (false, false));
    }

    #[test]
    fn theorem6_witness() {
        for n in 2..=5 {
            let inst = theorem6_instance(n).unwrap();
            assert_eq!(inst.flowset.len(), n * (n - 1) + n + 1);
            validate_flowset(&inst.flowset).unwrap();
            inst.verify_witnesses().unwrap();
        }
    }

    #[test]
    fn mt_worstcase_counts() {
        let inst = mt_worstcase(4, &Rational::new(1, 2)).unwrap();
        assert_eq!(inst.flowset.len(), 7);
        validate_flowset(&inst.flowset).unwrap();
        inst.verify_witnesses().unwrap();
        assert_eq!(inst.expected("formula"), Some(&Rational::new(11, 8)));
        assert_eq!(
            inst.witnesses["mt-adversarial"].congestion,
            Rational::new(3, 2)
        );
        assert!(mt_worstcase(4, &Rational::new(2, 5)).is_err());
        assert!(mt_worstcase(1, &Rational::new(1, 2)).is_err());
    }

    #[test]
    fn mt_worstcase_matches_formula_with_whole_copies() {
        for (n, eps) in [
            (4, Rational::new(1, 5)),
            (2, Rational::new(1, 3)),
            (3, Rational::new(1, 4)),
        ] {
            let inst = mt_worstcase(n, &eps).unwrap();
            inst.verify_witnesses().unwrap();
            assert_eq!(
                inst.witnesses["mt-adversarial"].congestion,
                mt_worstcase_formula(n, &eps),
                "n = {n}, eps = {eps}"
            );
        }
    }

    #[test]
    fn mt_worstcase_unit_eps() {
        let inst = mt_worstcase(3, &Rational::one()).unwrap();
        assert!(inst.flowset.all_unit_demands());
        assert_eq!(inst.witnesses["mt-adversarial"].congestion, Rational::one());
    }

    #[test]
    fn figure5_admission_and_completion() {
        use crate::algorithms::{two_phase_detailed, AlgorithmConfig};
        let inst = figure5_instance();
        let fs = &inst.flowset;
        validate_flowset(fs).unwrap();
        let cfg = AlgorithmConfig::default().with_p(Rational::new(5, 3));
        let run = two_phase_detailed(fs, &cfg).unwrap();
        assert_eq!(run.lower_bound, Rational::one());
        assert_eq!(run.f1, (1..=8).map(FlowId).collect::<Vec<_>>());
        assert_eq!(run.f2, vec![FlowId(9)]);
        assert_eq!(run.state.k_copies(), 3);
        assert!(run.state.satisfies_p1() && run.state.satisfies_p2());
        assert!(run.state.satisfies_p3(3, &run.threshold));
        // Three middles tie at 3/4 for f9, M_4 among them; the lowest wins.
        let f9 = fs.flow(FlowId(9));
        let paths: Vec<Rational> = (1..=4)
            .map(|m| run.phase1_loads.path(1, m, f9.output).clone())
            .collect();
        let best = paths.iter().min().unwrap();
        assert_eq!(*best, Rational::new(3, 4));
        assert_eq!(paths[3], *best);
        assert_eq!(run.routing.middle(FlowId(9)), 2);
    }
}
