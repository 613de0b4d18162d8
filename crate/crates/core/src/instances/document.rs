//! JSON instance documents.
//!
//! ```json
//! { "n": 2, "m": 3, "description": "optional",
//!   "agents": [
//!     { "class": "additive", "weights": ["1/1", "2/1", "0/1"] },
//!     { "class": "oxs", "slots": ["a"], "edges": [[0, "a", "3/2"]] } ] }
//! ```
//!
//! Rationals are `"p/q"` strings, goods are 0-based, tables are indexed by
//! subset bitmask with bit `t` standing for good `t`. Unknown fields are
//! rejected, and loading runs the same validation as construction.

use serde::{Deserialize, Serialize};

use crate::bundle::GoodId;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::valuation::{OxsEdge, OxsGraph, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub agents: Vec<AgentDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case", deny_unknown_fields)]
pub enum AgentDocument {
    Additive {
        weights: Vec<String>,
    },
    BudgetAdditive {
        weights: Vec<String>,
        cap: String,
    },
    UnitDemand {
        weights: Vec<String>,
    },
    Oxs {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slots: Option<Vec<String>>,
        edges: Vec<(usize, String, String)>,
    },
    Table {
        table: Vec<String>,
    },
}

fn render(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn parse_all(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|s| parse_rational(s)).collect()
}

impl AgentDocument {
    pub fn from_valuation(v: &Valuation) -> AgentDocument {
        match v {
            Valuation::Additive { weights } => AgentDocument::Additive {
                weights: render(weights),
            },
            Valuation::BudgetAdditive { weights, cap } => AgentDocument::BudgetAdditive {
                weights: render(weights),
                cap: format_rational(cap),
            },
            Valuation::UnitDemand { weights } => AgentDocument::UnitDemand {
                weights: render(weights),
            },
            Valuation::Oxs(graph) => AgentDocument::Oxs {
                slots: Some(graph.slots().to_vec()),
                edges: graph
                    .edges()
                    .iter()
                    .map(|e| {
                        (
                            e.good.0,
                            graph.slots()[e.slot].clone(),
                            format_rational(&e.weight),
                        )
                    })
                    .collect(),
            },
            Valuation::Table(t) => AgentDocument::Table {
                table: render(t.values()),
            },
        }
    }

    pub fn to_valuation(&self, goods: usize) -> Result<Valuation> {
        let sized = |weights: Vec<Rational>| {
            if weights.len() == goods {
                Ok(weights)
            } else {
                Err(Error::Document(format!(
                    "{} weights for {goods} goods",
                    weights.len()
                )))
            }
        };
        match self {
            AgentDocument::Additive { weights } => Valuation::additive(sized(parse_all(weights)?)?),
            AgentDocument::BudgetAdditive { weights, cap } => {
                Valuation::budget_additive(sized(parse_all(weights)?)?, parse_rational(cap)?)
            }
            AgentDocument::UnitDemand { weights } => {
                Valuation::unit_demand(sized(parse_all(weights)?)?)
            }
            AgentDocument::Oxs { slots, edges } => {
                let mut labels = slots.clone().unwrap_or_default();
                let mut parsed = Vec::with_capacity(edges.len());
                for (good, label, weight) in edges {
                    let slot = match labels.iter().position(|l| l == label) {
                        Some(p) => p,
                        None if slots.is_none() => {
                            labels.push(label.clone());
                            labels.len() - 1
                        }
                        None => {
                            return Err(Error::Document(format!(
                                "edge uses undeclared slot {label:?}"
                            )))
                        }
                    };
                    parsed.push(OxsEdge {
                        good: GoodId(*good),
                        slot,
                        weight: parse_rational(weight)?,
                    });
                }
                Ok(Valuation::oxs(OxsGraph::new(goods, labels, parsed)?))
            }
            AgentDocument::Table { table } => Valuation::table(goods, parse_all(table)?),
        }
    }
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance, description: Option<String>) -> InstanceDocument {
        InstanceDocument {
            n: inst.agents(),
            m: inst.goods(),
            description,
            agents: inst
                .valuations()
                .iter()
                .map(AgentDocument::from_valuation)
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.agents.len() != self.n {
            return Err(Error::Document(format!(
                "n is {} but {} agents are listed",
                self.n,
                self.agents.len()
            )));
        }
        let valuations = self
            .agents
            .iter()
            .map(|a| a.to_valuation(self.m))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(valuations)
    }
}

/// Pretty-printed JSON for `inst`.
pub fn save(inst: &Instance, description: Option<&str>) -> String {
    let doc = InstanceDocument::from_instance(inst, description.map(str::to_string));
    serde_json::to_string_pretty(&doc).expect("documents always serialize")
}

/// Parses and validates a JSON document.
pub fn load(text: &str) -> Result<Instance> {
    load_document(text)?.to_instance()
}

pub fn load_document(text: &str) -> Result<InstanceDocument> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}
