//! Envy-freeness factors of an allocation under the true valuations.
//!
//! Factors are exact and uncapped, so they may exceed 1. A pair whose
//! denominator is zero is `Unbounded`; a pair with an empty bundle on the
//! envied side imposes no EF1 constraint at all.

use crate::bundle::{Bundle, GoodId};
use crate::error::Result;
use crate::instance::Instance;
use crate::mechanism::Allocation;
use crate::rational::{Factor, Rational};

/// EF1 ratio of agent `owner` towards agent `other`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRatio {
    pub owner: usize,
    pub other: usize,
    pub ratio: Factor,
    /// The good whose removal minimizes `v_owner(A_other - g)`.
    pub removed: GoodId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairnessReport {
    /// Every ordered pair `(i, j)` with `i != j` and `A_j` non-empty.
    pub pair_ratios: Vec<PairRatio>,
    pub ef1_factor: Factor,
    pub ef_factor: Factor,
    /// The first pair attaining `ef1_factor`, if it is bounded.
    pub worst_pair: Option<PairRatio>,
}

impl FairnessReport {
    pub fn pair(&self, owner: usize, other: usize) -> Option<&PairRatio> {
        self.pair_ratios
            .iter()
            .find(|p| p.owner == owner && p.other == other)
    }
}

/// EF and EF1 factors of `alloc`, which must partition the instance's goods.
pub fn fairness_report(inst: &Instance, alloc: &Allocation) -> Result<FairnessReport> {
    alloc.check_partition(inst.goods())?;
    let n = inst.agents();
    let mut pair_ratios = Vec::new();
    let mut ef = Factor::Unbounded;
    for i in 0..n {
        let v = inst.valuation(i);
        let own = v.eval(alloc.bundle(i));
        for j in (0..n).filter(|&j| j != i) {
            let other = alloc.bundle(j);
            ef = ef.min(Factor::ratio(&own, &v.eval(other)));
            if let Some((removed, rest)) = min_after_removal(inst, i, other) {
                pair_ratios.push(PairRatio {
                    owner: i,
                    other: j,
                    ratio: Factor::ratio(&own, &rest),
                    removed,
                });
            }
        }
    }
    let worst_pair = pair_ratios
        .iter()
        .filter(|p| !p.ratio.is_unbounded())
        .min_by(|a, b| a.ratio.cmp(&b.ratio))
        .cloned();
    let ef1_factor = worst_pair
        .as_ref()
        .map_or(Factor::Unbounded, |p| p.ratio.clone());
    Ok(FairnessReport {
        pair_ratios,
        ef1_factor,
        ef_factor: ef,
        worst_pair,
    })
}

/// Largest `α` with `v_i(A_i) >= α v_i(A_j)` for all `i != j`.
pub fn ef_factor(inst: &Instance, alloc: &Allocation) -> Result<Factor> {
    Ok(fairness_report(inst, alloc)?.ef_factor)
}

/// Largest `α` for which `alloc` is `α`-EF1.
pub fn ef1_factor(inst: &Instance, alloc: &Allocation) -> Result<Factor> {
    Ok(fairness_report(inst, alloc)?.ef1_factor)
}

/// Whether every EF1 ratio of `agent` is at least `alpha`.
pub fn ef1_from_perspective(
    inst: &Instance,
    alloc: &Allocation,
    agent: usize,
    alpha: &Rational,
) -> Result<bool> {
    alloc.check_partition(inst.goods())?;
    inst.check_agent(agent)?;
    let own = inst.valuation(agent).eval(alloc.bundle(agent));
    Ok((0..inst.agents())
        .filter(|&j| j != agent)
        .filter_map(|j| min_after_removal(inst, agent, alloc.bundle(j)))
        .all(|(_, rest)| Factor::ratio(&own, &rest).at_least(alpha)))
}

fn min_after_removal(inst: &Instance, agent: usize, other: Bundle) -> Option<(GoodId, Rational)> {
    let v = inst.valuation(agent);
    let mut best: Option<(GoodId, Rational)> = None;
    for g in other.iter() {
        let rest = v.eval(other.without(g));
        if best.as_ref().is_none_or(|(_, b)| rest < *b) {
            best = Some((g, rest));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::bundle;
    use crate::rational::{int, rat};
    use crate::valuation::Valuation;

    fn additive(rows: &[&[i64]]) -> Instance {
        Instance::new(
            rows.iter()
                .map(|w| Valuation::additive(w.iter().map(|&x| int(x)).collect()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_agent_is_unbounded() {
        let inst = additive(&[&[1, 2]]);
        let r = fairness_report(&inst, &Allocation::new(vec![bundle(&[0, 1])])).unwrap();
        assert!(r.ef1_factor.is_unbounded());
        assert!(r.ef_factor.is_unbounded());
        assert!(r.pair_ratios.is_empty());
    }

    #[test]
    fn symmetric_split_is_envy_free() {
        let inst = additive(&[&[1, 1, 1, 1], &[1, 1, 1, 1]]);
        let alloc = Allocation::new(vec![bundle(&[0, 1]), bundle(&[2, 3])]);
        let r = fairness_report(&inst, &alloc).unwrap();
        assert_eq!(r.ef_factor, Factor::Bounded(int(1)));
        assert_eq!(r.ef1_factor, Factor::Bounded(int(2)));
    }

    #[test]
    fn ratios_and_worst_pair() {
        let inst = additive(&[&[3, 1, 1, 1], &[3, 1, 1, 1]]);
        let alloc = Allocation::new(vec![bundle(&[0]), bundle(&[1, 2, 3])]);
        let r = fairness_report(&inst, &alloc).unwrap();
        assert!(r.pair(1, 0).unwrap().ratio.is_unbounded());
        let worst = r.worst_pair.clone().unwrap();
        assert_eq!((worst.owner, worst.other, worst.removed), (0, 1, GoodId(1)));
        assert_eq!(r.ef1_factor, Factor::Bounded(rat(3, 2)));
        assert_eq!(r.ef_factor, Factor::Bounded(int(1)));
        assert!(ef1_from_perspective(&inst, &alloc, 0, &rat(3, 2)).unwrap());
        assert!(!ef1_from_perspective(&inst, &alloc, 0, &rat(8, 5)).unwrap());
        assert!(ef1_from_perspective(&inst, &alloc, 1, &int(100)).unwrap());
    }

    #[test]
    fn empty_bundles_are_unconstrained() {
        let inst = additive(&[&[1, 1], &[1, 1]]);
        let alloc = Allocation::new(vec![bundle(&[0, 1]), Bundle::EMPTY]);
        let r = fairness_report(&inst, &alloc).unwrap();
        assert_eq!(r.pair_ratios.len(), 1);
        assert_eq!(r.ef_factor, Factor::Bounded(int(0)));
    }

    #[test]
    fn rejects_non_partitions() {
        let inst = additive(&[&[1, 1], &[1, 1]]);
        let alloc = Allocation::new(vec![bundle(&[0]), Bundle::EMPTY]);
        assert!(fairness_report(&inst, &alloc).is_err());
    }
}
