//! Exhaustive class certificates for valuations: monotone, submodular,
//! cancelable, subadditive and additive.
//!
//! Every check enumerates subsets, so each carries a size guard. Failing
//! checks return the lexicographically first witness (smallest first set
//! bitmask, then second set, then good).

use num_traits::Zero;

use crate::bundle::{Bundle, GoodId};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valuation::Valuation;

pub const MONOTONE_MAX_GOODS: usize = 20;
pub const SUBMODULAR_MAX_GOODS: usize = 20;
pub const CANCELABLE_MAX_GOODS: usize = 16;
pub const SUBADDITIVE_MAX_GOODS: usize = 12;
pub const MARGINAL_SUM_MAX_GOODS: usize = 12;
pub const ADDITIVE_MAX_GOODS: usize = 20;

/// Result of a class check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// `value(set + good) < value(set)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub set: Bundle,
    pub good: GoodId,
}

/// `smaller ⊆ larger`, `good ∉ larger`, and the marginal of `good` grows
/// from `smaller` to `larger`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodularityWitness {
    pub smaller: Bundle,
    pub larger: Bundle,
    pub good: GoodId,
}

/// `v(first + good) > v(second + good)` while `v(first) <= v(second)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancelabilityWitness {
    pub first: Bundle,
    pub second: Bundle,
    pub good: GoodId,
}

/// `v(first ∪ second) > v(first) + v(second)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubadditivityWitness {
    pub first: Bundle,
    pub second: Bundle,
}

fn guard(check: &'static str, v: &Valuation, max: usize) -> Result<usize> {
    let goods = v.goods();
    if goods > max {
        return Err(Error::SizeGuard { check, goods, max });
    }
    Ok(goods)
}

fn goods_outside(set: u64, goods: usize) -> impl Iterator<Item = usize> {
    (0..goods).filter(move |g| set & (1u64 << g) == 0)
}

pub fn is_monotone(v: &Valuation) -> Result<Verdict<MonotonicityWitness>> {
    let goods = guard("monotonicity check", v, MONOTONE_MAX_GOODS)?;
    let table = v.tabulate()?;
    for set in 0..1u64 << goods {
        for g in goods_outside(set, goods) {
            if table[(set | 1 << g) as usize] < table[set as usize] {
                return Ok(Verdict::Fails(MonotonicityWitness {
                    set: Bundle::from_bits(set),
                    good: GoodId(g),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Diminishing marginals: `v(g|S) >= v(g|T)` for all `S ⊆ T`, `g ∉ T`.
///
/// The verdict comes from the local form (one extra good at a time), which
/// is equivalent; only failing inputs pay for the full pairwise scan that
/// produces the lexicographically first witness.
pub fn is_submodular(v: &Valuation) -> Result<Verdict<SubmodularityWitness>> {
    let goods = guard("submodularity check", v, SUBMODULAR_MAX_GOODS)?;
    let table = v.tabulate()?;
    let val = |bits: u64| &table[bits as usize];
    let marginal = |g: usize, set: u64| val(set | 1 << g) - val(set);

    let mut locally_fine = true;
    'local: for set in 0..1u64 << goods {
        for g in goods_outside(set, goods) {
            let base = marginal(g, set);
            for h in goods_outside(set | 1 << g, goods) {
                if marginal(g, set | 1 << h) > base {
                    locally_fine = false;
                    break 'local;
                }
            }
        }
    }
    if locally_fine {
        return Ok(Verdict::Holds);
    }

    let full = (1u64 << goods) - 1;
    for smaller in 0..=full {
        // Supersets of `smaller` in ascending order: `smaller | extra` for
        // ascending submasks `extra` of the complement.
        let complement = full & !smaller;
        let mut extra = 0u64;
        loop {
            let larger = smaller | extra;
            for g in goods_outside(larger, goods) {
                if marginal(g, smaller) < marginal(g, larger) {
                    return Ok(Verdict::Fails(SubmodularityWitness {
                        smaller: Bundle::from_bits(smaller),
                        larger: Bundle::from_bits(larger),
                        good: GoodId(g),
                    }));
                }
            }
            extra = extra.wrapping_sub(complement) & complement;
            if extra == 0 {
                break;
            }
        }
    }
    unreachable!("a local violation is also a pairwise violation")
}

/// The set-inequality characterization of monotone submodular functions:
/// `v(T) <= v(S) + Σ_{g ∈ T∖S} v(g|S)` for all `S, T`.
pub fn satisfies_marginal_sum_bound(v: &Valuation) -> Result<bool> {
    let goods = guard("marginal-sum check", v, MARGINAL_SUM_MAX_GOODS)?;
    let table = v.tabulate()?;
    let full = 1u64 << goods;
    for s in 0..full {
        let marginals: Vec<Rational> = (0..goods)
            .map(|g| &table[(s | 1 << g) as usize] - &table[s as usize])
            .collect();
        for t in 0..full {
            let bound = Bundle::from_bits(t & !s)
                .iter()
                .fold(table[s as usize].clone(), |acc, g| acc + &marginals[g.0]);
            if table[t as usize] > bound {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `v(S+g) > v(T+g)` implies `v(S) > v(T)` for all `S, T` and `g ∉ S ∪ T`.
pub fn is_cancelable(v: &Valuation) -> Result<Verdict<CancelabilityWitness>> {
    let goods = guard("cancelability check", v, CANCELABLE_MAX_GOODS)?;
    let table = v.tabulate()?;
    if (0..goods).all(|g| preserves_order(&table, goods, g)) {
        return Ok(Verdict::Holds);
    }
    let full = 1u64 << goods;
    for first in 0..full {
        for second in 0..full {
            if table[first as usize] > table[second as usize] {
                continue;
            }
            for g in goods_outside(first | second, goods) {
                if table[(first | 1 << g) as usize] > table[(second | 1 << g) as usize] {
                    return Ok(Verdict::Fails(CancelabilityWitness {
                        first: Bundle::from_bits(first),
                        second: Bundle::from_bits(second),
                        good: GoodId(g),
                    }));
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Whether `v(S) <= v(T)` implies `v(S+g) <= v(T+g)` over sets without `g`.
/// Sorting by `v(S)` reduces this to comparing adjacent value classes.
fn preserves_order(table: &[Rational], goods: usize, g: usize) -> bool {
    let bit = 1usize << g;
    let mut sets: Vec<usize> = (0..1usize << goods).filter(|s| s & bit == 0).collect();
    sets.sort_by(|&a, &b| {
        table[a]
            .cmp(&table[b])
            .then(table[a | bit].cmp(&table[b | bit]))
    });
    let mut previous_max: Option<&Rational> = None;
    let mut start = 0;
    while start < sets.len() {
        let mut end = start;
        while end < sets.len() && table[sets[end]] == table[sets[start]] {
            end += 1;
        }
        let low = &table[sets[start] | bit];
        let high = &table[sets[end - 1] | bit];
        if low != high || previous_max.is_some_and(|p| p > low) {
            return false;
        }
        previous_max = Some(high);
        start = end;
    }
    true
}

/// `v(S ∪ T) <= v(S) + v(T)` over all ordered pairs, overlapping included.
pub fn is_subadditive(v: &Valuation) -> Result<Verdict<SubadditivityWitness>> {
    let goods = guard("subadditivity check", v, SUBADDITIVE_MAX_GOODS)?;
    let table = v.tabulate()?;
    let full = 1u64 << goods;
    for first in 0..full {
        for second in 0..full {
            let joint = &table[(first | second) as usize];
            if *joint > &table[first as usize] + &table[second as usize] {
                return Ok(Verdict::Fails(SubadditivityWitness {
                    first: Bundle::from_bits(first),
                    second: Bundle::from_bits(second),
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Every bundle is worth the sum of its singletons.
pub fn is_additive(v: &Valuation) -> Result<bool> {
    let goods = guard("additivity check", v, ADDITIVE_MAX_GOODS)?;
    if matches!(v, Valuation::Additive { .. }) {
        return Ok(true);
    }
    let table = v.tabulate()?;
    let singles: Vec<&Rational> = (0..goods).map(|g| &table[1usize << g]).collect();
    Ok((0..1u64 << goods).all(|bits| {
        let sum = Bundle::from_bits(bits)
            .iter()
            .fold(Rational::zero(), |acc, g| acc + singles[g.0]);
        table[bits as usize] == sum
    }))
}
