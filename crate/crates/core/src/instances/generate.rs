//! Seeded random instances of each valuation class.
//!
//! The distributions are conventions of this crate: integer weights drawn
//! uniformly from `0..=max_weight`, OXS graphs with independent edges of
//! probability 1/2, and submodular tables from weighted coverage.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bundle::{Bundle, GoodId};
use crate::classes::{is_additive, is_cancelable, is_submodular};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{int, Rational};
use crate::valuation::{OxsEdge, OxsGraph, Valuation, MAX_TABLE_GOODS};

/// Rejection attempts per agent before giving up.
pub const MAX_ATTEMPTS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorClass {
    Additive,
    BudgetAdditive,
    UnitDemand,
    Oxs,
    SubmodularTable,
}

impl GeneratorClass {
    pub const ALL: [GeneratorClass; 5] = [
        GeneratorClass::Additive,
        GeneratorClass::BudgetAdditive,
        GeneratorClass::UnitDemand,
        GeneratorClass::Oxs,
        GeneratorClass::SubmodularTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorClass::Additive => "additive",
            GeneratorClass::BudgetAdditive => "budget_additive",
            GeneratorClass::UnitDemand => "unit_demand",
            GeneratorClass::Oxs => "oxs",
            GeneratorClass::SubmodularTable => "submodular_table",
        }
    }

    pub fn is_cancelable(self) -> bool {
        matches!(
            self,
            GeneratorClass::Additive | GeneratorClass::BudgetAdditive | GeneratorClass::UnitDemand
        )
    }
}

impl fmt::Display for GeneratorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInstance(format!("unknown generator class {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub class: GeneratorClass,
    pub agents: usize,
    pub goods: usize,
    /// Weights are drawn from `0..=max_weight`.
    pub max_weight: u32,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(class: GeneratorClass, agents: usize, goods: usize, seed: u64) -> Self {
        GeneratorSpec {
            class,
            agents,
            goods,
            max_weight: 10,
            seed,
        }
    }
}

/// A certified random instance; the same spec always gives the same instance.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    if spec.agents == 0 {
        return Err(Error::InvalidInstance(
            "an instance needs at least one agent".into(),
        ));
    }
    if spec.goods == 0 || spec.goods > MAX_TABLE_GOODS {
        return Err(Error::SizeGuard {
            check: "generation",
            goods: spec.goods,
            max: MAX_TABLE_GOODS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut valuations = Vec::with_capacity(spec.agents);
    for _ in 0..spec.agents {
        valuations.push(certified_valuation(spec, &mut rng)?);
    }
    Instance::new(valuations)
}

fn certified_valuation(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<Valuation> {
    for _ in 0..MAX_ATTEMPTS {
        let v = random_valuation(spec.class, spec.goods, spec.max_weight, rng)?;
        if certify(spec.class, &v)? {
            return Ok(v);
        }
    }
    Err(Error::Certification {
        class: spec.class.name().into(),
        attempts: MAX_ATTEMPTS,
    })
}

fn certify(class: GeneratorClass, v: &Valuation) -> Result<bool> {
    Ok(match class {
        GeneratorClass::Additive => is_additive(v)?,
        GeneratorClass::BudgetAdditive | GeneratorClass::UnitDemand => {
            is_cancelable(v)?.holds() && is_submodular(v)?.holds()
        }
        GeneratorClass::Oxs | GeneratorClass::SubmodularTable => is_submodular(v)?.holds(),
    })
}

/// One uncertified draw of the class's distribution.
pub fn random_valuation<R: Rng>(
    class: GeneratorClass,
    goods: usize,
    max_weight: u32,
    rng: &mut R,
) -> Result<Valuation> {
    let mut weights = || -> Vec<Rational> {
        (0..goods)
            .map(|_| int(rng.gen_range(0..=max_weight) as i64))
            .collect()
    };
    match class {
        GeneratorClass::Additive => Valuation::additive(weights()),
        GeneratorClass::UnitDemand => Valuation::unit_demand(weights()),
        GeneratorClass::BudgetAdditive => {
            let w = weights();
            let total: i64 = w
                .iter()
                .map(|x| x.to_integer().try_into().unwrap_or(0i64))
                .sum();
            let cap = int(rng.gen_range(1..=total.max(1)));
            Valuation::budget_additive(w, cap)
        }
        GeneratorClass::Oxs => {
            let slots = rng.gen_range(1..=goods);
            let mut edges = Vec::new();
            for good in 0..goods {
                for slot in 0..slots {
                    if rng.gen_bool(0.5) {
                        edges.push(OxsEdge {
                            good: GoodId(good),
                            slot,
                            weight: int(rng.gen_range(1..=max_weight.max(1)) as i64),
                        });
                    }
                }
            }
            let labels = (1..=slots).map(|k| format!("s{k}")).collect();
            Ok(Valuation::oxs(OxsGraph::new(goods, labels, edges)?))
        }
        GeneratorClass::SubmodularTable => {
            let elements = goods + 2;
            let element_weights: Vec<i64> = (0..elements)
                .map(|_| rng.gen_range(1..=max_weight.max(1)) as i64)
                .collect();
            let covers: Vec<u64> = (0..goods)
                .map(|_| {
                    (0..elements)
                        .filter(|_| rng.gen_bool(0.5))
                        .fold(0u64, |acc, e| acc | 1 << e)
                })
                .collect();
            let values = (0..1u64 << goods)
                .map(|bits| {
                    let covered = Bundle::from_bits(bits)
                        .iter()
                        .fold(0u64, |acc, g| acc | covers[g.0]);
                    int((0..elements)
                        .filter(|e| covered & (1 << e) != 0)
                        .map(|e| element_weights[e])
                        .sum())
                })
                .collect();
            Valuation::table(goods, values)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let spec = GeneratorSpec::new(GeneratorClass::Additive, 2, 4, 7);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec { seed: 8, ..spec };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn every_class_certifies() {
        for class in GeneratorClass::ALL {
            let inst = generate(&GeneratorSpec::new(class, 3, 5, 11)).unwrap();
            assert_eq!(inst.agents(), 3);
            assert_eq!(inst.goods(), 5);
            for v in inst.valuations() {
                assert!(is_submodular(v).unwrap().holds(), "{class}");
            }
        }
    }

    #[test]
    fn class_names_round_trip() {
        for class in GeneratorClass::ALL {
            assert_eq!(class.name().parse::<GeneratorClass>().unwrap(), class);
        }
        assert!("xos".parse::<GeneratorClass>().is_err());
    }

    #[test]
    fn guards() {
        assert!(generate(&GeneratorSpec::new(GeneratorClass::Oxs, 2, 21, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(GeneratorClass::Oxs, 0, 3, 0)).is_err());
    }
}
