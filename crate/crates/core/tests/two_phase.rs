mod common;

use closflow::algorithms::two_phase_detailed;
use closflow::instances::{figure5_instance, random_corpus};
use closflow::oracle::DEFAULT_NODE_BUDGET;
use closflow::{congestion, exact_opt, AlgorithmConfig, FlowSet, Rational};

fn int(k: usize) -> Rational {
    Rational::from_integer(k as i64)
}

fn with_opts(corpus: Vec<FlowSet>) -> Vec<(FlowSet, Rational)> {
    corpus
        .into_iter()
        .map(|fs| {
            let opt = exact_opt(&fs, DEFAULT_NODE_BUDGET).unwrap().opt;
            (fs, opt)
        })
        .collect()
}

/// Q1, Q2 and Claim 2 for one configuration; returns the number of Phase 2 flows.
fn check_admission_invariants(cases: &[(FlowSet, Rational)], cfg: &AlgorithmConfig) -> usize {
    let mut f2 = 0;
    for (k, (fs, opt)) in cases.iter().enumerate() {
        let run = two_phase_detailed(fs, cfg).unwrap();
        assert!(run.phase1_congestion() <= &cfg.p * opt, "instance {k}: Q1");
        for &id in &run.f2 {
            assert!(
                fs.flow(id).demand <= opt / &int(cfg.q),
                "instance {k}: Q2 for {id}"
            );
        }
        for &id in &run.f1 {
            let (ki, lo) = run.state.copies_of(id).unwrap();
            let d = &fs.flow(id).demand;
            assert!(
                *d <= opt / &int(ki) && *d <= opt / &int(lo),
                "instance {k}: Claim 2 for {id}"
            );
        }
        assert!(run.state.satisfies_p1() && run.state.satisfies_p2());
        assert!(run.state.satisfies_p3(cfg.q, &run.threshold));
        assert_eq!(run.f1.len() + run.f2.len(), fs.len());
        f2 += run.f2.len();
    }
    f2
}

#[test]
fn admission_invariants_with_default_parameters() {
    let cases = with_opts(random_corpus(400, 3, 3, 9, 4, 7));
    check_admission_invariants(&cases, &AlgorithmConfig::default());
}

#[test]
fn admission_invariants_when_phase_two_is_busy() {
    // p = 1, q = 2 is the smallest valid configuration and rejects often.
    let cases = with_opts(random_corpus(400, 4, 2, 10, 4, 8));
    let cfg = AlgorithmConfig::default().with_p(Rational::one()).with_q(2);
    let f2 = check_admission_invariants(&cases, &cfg);
    assert!(f2 > 100, "only {f2} flows reached Phase 2");
}

#[test]
fn no_rejections_for_small_n_with_defaults() {
    // Copies fill in demand order, so the admission sum is at most
    // (2 - 1/N) L, which is below 9/5 L for N <= 5.
    let cfg = AlgorithmConfig::default();
    for fs in random_corpus(500, 5, 3, 16, 6, 9) {
        let run = two_phase_detailed(&fs, &cfg).unwrap();
        assert!(run.f2.is_empty());
        assert!(run.phase1_congestion() <= run.threshold);
    }
}

#[test]
fn approximation_bound_on_fresh_corpus() {
    let cfg = AlgorithmConfig::default();
    for (fs, opt) in with_opts(random_corpus(300, 4, 3, 10, 5, 10)) {
        let run = two_phase_detailed(&fs, &cfg).unwrap();
        let c = congestion(&fs, &run.routing)
            .unwrap()
            .max_congestion()
            .clone();
        assert!(c <= Rational::new(9, 5) * opt.min(Rational::one()));
        assert!(run.lower_bound <= Rational::one());
    }
}

#[test]
fn claims_one_and_three_per_switch() {
    for (fs, opt) in with_opts(random_corpus(300, 3, 3, 9, 6, 11)) {
        let n = fs.dims().n_middle();
        for sw in 1..=fs.dims().n_tor() {
            for k in [2usize, 3] {
                let above = |t: &Rational, input: bool| {
                    fs.flows()
                        .iter()
                        .filter(|f| (if input { f.input } else { f.output }) == sw && f.demand > *t)
                        .count()
                };
                for input in [true, false] {
                    assert!(above(&(&opt / &int(k)), input) <= n * (k - 1));
                    assert!(above(&Rational::new(1, k as i64), input) <= n * (k - 1));
                }
            }
        }
    }
}

#[test]
fn figure5_phase_two_receives_the_last_flow() {
    let inst = figure5_instance();
    let cfg = AlgorithmConfig::default().with_p(inst.expected("p").unwrap().clone());
    let run = two_phase_detailed(&inst.flowset, &cfg).unwrap();
    assert_eq!(run.f2.len(), 1);
    assert_eq!(run.f2[0].0, 9);
    assert_eq!(&run.lower_bound, inst.expected("lower-bound").unwrap());
}
