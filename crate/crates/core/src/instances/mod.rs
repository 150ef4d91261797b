//! Generators for the lower-bound constructions, worst-case families for the
//! baselines, and random hose-model instances.
//!
//! Each construction is returned as a [`NamedInstance`]: the flow set, named
//! witness routings with the congestion they are meant to reach, and other
//! expected values such as `"opt"`. [`NamedInstance::verify_witnesses`]
//! recomputes every witness congestion instead of trusting the record.

mod gadgets;
mod random;
mod reduction;
mod sequences;

use std::collections::BTreeMap;

use thiserror::Error;

pub use gadgets::{
    cross_gadget, cross_gadget_properties, elemental_middle, figure5_instance, mt_worstcase,
    mt_worstcase_formula, theorem6_instance,
};
pub use random::{random_corpus, random_hose_instance};
pub use reduction::{coloring_from_routing, coloring_reduction, routing_from_coloring, Reduction};
pub(crate) use sequences::block;
pub use sequences::{
    online_sequences, satisfies_p1, satisfies_p2, sorted_greedy_xy, supersequences, XySequences,
};

use crate::congestion::{congestion, RoutingError};
use crate::graph::GraphError;
use crate::model::{FlowId, FlowSet, ModelError, Routing};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn bad(msg: impl Into<String>) -> InstanceError {
    InstanceError::BadParameter(msg.into())
}

/// A routing that comes with the congestion it should have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub routing: Routing,
    pub congestion: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness `{name}`: {source}")]
    Routing { name: String, source: RoutingError },
    #[error("witness `{name}` has congestion {actual}, expected {expected}")]
    Mismatch {
        name: String,
        expected: Rational,
        actual: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedInstance {
    pub name: String,
    pub flowset: FlowSet,
    pub witnesses: BTreeMap<String, Witness>,
    pub expected: BTreeMap<String, Rational>,
}

impl NamedInstance {
    pub fn new(name: impl Into<String>, flowset: FlowSet) -> Self {
        NamedInstance {
            name: name.into(),
            flowset,
            witnesses: BTreeMap::new(),
            expected: BTreeMap::new(),
        }
    }

    pub fn with_witness(mut self, name: &str, routing: Routing, congestion: Rational) -> Self {
        self.witnesses.insert(
            name.to_string(),
            Witness {
                routing,
                congestion,
            },
        );
        self
    }

    pub fn with_expected(mut self, key: &str, value: Rational) -> Self {
        self.expected.insert(key.to_string(), value);
        self
    }

    pub fn witness(&self, name: &str) -> Option<&Routing> {
        self.witnesses.get(name).map(|w| &w.routing)
    }

    pub fn expected(&self, key: &str) -> Option<&Rational> {
        self.expected.get(key)
    }

    pub fn verify_witnesses(&self) -> Result<(), Box<WitnessError>> {
        for (name, w) in &self.witnesses {
            let report =
                congestion(&self.flowset, &w.routing).map_err(|source| WitnessError::Routing {
                    name: name.clone(),
                    source,
                })?;
            if *report.max_congestion() != w.congestion {
                return Err(Box::new(WitnessError::Mismatch {
                    name: name.clone(),
                    expected: w.congestion.clone(),
                    actual: report.max_congestion().clone(),
                }));
            }
        }
        Ok(())
    }
}

/// Flows together with the order in which an online router sees them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSequence {
    pub flowset: FlowSet,
    pub order: Vec<FlowId>,
}

impl FlowSequence {
    /// Flows arrive in id order.
    pub fn in_id_order(flowset: FlowSet) -> Self {
        let order = flowset.ids().collect();
        FlowSequence { flowset, order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The first `len` arrivals as a sequence of their own.
    pub fn prefix(&self, len: usize) -> FlowSequence {
        let ids = &self.order[..len];
        let flowset = self.flowset.subset(ids);
        FlowSequence::in_id_order(flowset)
    }
}
