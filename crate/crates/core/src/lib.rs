//! Minimum-congestion routing of unsplittable flows in three-stage Clos
//! networks.
//!
//! A Clos network `C(N, R)` has `R` input and `R` output ToR switches with
//! `N` servers each, and `N` middle switches. A flow goes from a source
//! server to a destination server and must pick one middle switch. The
//! congestion of a routing is the largest total demand on any ToR-to-middle
//! link. All arithmetic is on exact rationals.
//!
//! ```
//! use closflow::{congestion, route_two_phase, AlgorithmConfig, ClosDims, FlowSet, Rational};
//!
//! let mut b = FlowSet::builder(ClosDims::new(2, 2).unwrap());
//! b.add(1, 1, 1, 1, Rational::new(1, 2));
//! b.add(1, 2, 1, 2, Rational::new(1, 2));
//! let fs = b.build().unwrap();
//! let r = route_two_phase(&fs, &AlgorithmConfig::default()).unwrap();
//! assert_eq!(*congestion(&fs, &r).unwrap().max_congestion(), Rational::new(1, 2));
//! ```

pub mod algorithms;
pub mod cli;
pub mod congestion;
pub mod format;
pub mod graph;
pub mod instances;
pub mod matching;
pub mod model;
pub mod online;
pub mod oracle;
pub mod rational;

pub use algorithms::{
    ecmp, melen_turner, route_two_phase, sorted_greedy, unsorted_greedy, AlgorithmConfig,
    AlgorithmError,
};
pub use congestion::{
    congestion, is_link_disjoint, lower_bound, validate_flowset, CongestionReport,
};
pub use graph::SimpleGraph;
pub use matching::{edge_color, link_disjoint_routing};
pub use model::{ClosDims, Flow, FlowId, FlowSet, Routing};
pub use oracle::{exact_opt, three_edge_colorable, OracleResult};
pub use rational::Rational;

/// The guide's chapters, compiled as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/matching.md")]
    mod matching {}
    #[doc = include_str!("../../../book/src/two-phase.md")]
    mod two_phase {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/lower-bounds.md")]
    mod lower_bounds {}
    #[doc = include_str!("../../../book/src/online.md")]
    mod online {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
