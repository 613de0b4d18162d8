use crate::classes::is_monotone;
use crate::error::{Error, Result};
use crate::valuation::Valuation;

/// Agents `0..n`, goods `0..m`, and one valuation per agent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    goods: usize,
    valuations: Vec<Valuation>,
}

impl Instance {
    /// Table valuations are checked for monotonicity here; the closed-form
    /// classes are monotone by construction.
    pub fn new(valuations: Vec<Valuation>) -> Result<Self> {
        let Some(first) = valuations.first() else {
            return Err(Error::InvalidInstance(
                "an instance needs at least one agent".into(),
            ));
        };
        let goods = first.goods();
        for (agent, v) in valuations.iter().enumerate() {
            if v.goods() != goods {
                return Err(Error::InvalidInstance(format!(
                    "agent {} values {} goods, agent 1 values {}",
                    agent + 1,
                    v.goods(),
                    goods
                )));
            }
            if matches!(v, Valuation::Table(_)) && !is_monotone(v)?.holds() {
                return Err(Error::NotMonotone { agent });
            }
        }
        Ok(Instance { goods, valuations })
    }

    pub fn agents(&self) -> usize {
        self.valuations.len()
    }

    pub fn goods(&self) -> usize {
        self.goods
    }

    pub fn valuation(&self, agent: usize) -> &Valuation {
        &self.valuations[agent]
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agents() {
            return Err(Error::AgentOutOfRange {
                agent,
                agents: self.agents(),
            });
        }
        Ok(())
    }

    /// Appends `extra` zero-marginal goods to every valuation.
    pub fn with_dummies(&self, extra: usize) -> Result<Instance> {
        let valuations = self
            .valuations
            .iter()
            .map(|v| v.with_dummies(extra))
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            goods: self.goods + extra,
            valuations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn rejects_mismatched_good_counts() {
        let a = Valuation::additive(vec![int(1), int(2)]).unwrap();
        let b = Valuation::additive(vec![int(1)]).unwrap();
        assert!(Instance::new(vec![a, b]).is_err());
        assert!(Instance::new(vec![]).is_err());
    }

    #[test]
    fn rejects_non_monotone_tables() {
        let t = Valuation::table(2, vec![int(0), int(2), int(0), int(1)]).unwrap();
        assert_eq!(Instance::new(vec![t]), Err(Error::NotMonotone { agent: 0 }));
    }
}
