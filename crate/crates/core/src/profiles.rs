//! Constructive rankings: truthful rankings, the bluff profile, the renaming
//! of a deviating bundle, and the greedy response.
//!
//! Greedy choices break ties toward the smallest good index; the bluff
//! construction first prefers the larger singleton value.

use crate::bundle::{Bundle, GoodId};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::mechanism::{Profile, Ranking};
use crate::rational::Rational;
use crate::valuation::Valuation;
use num_traits::Zero;

/// Goods by descending singleton value, ties by ascending index.
pub fn truthful_ranking(v: &Valuation) -> Ranking {
    let singles = v.singleton_values();
    let mut order: Vec<GoodId> = (0..v.goods()).map(GoodId).collect();
    order.sort_by(|a, b| singles[b.0].cmp(&singles[a.0]));
    Ranking::new(order).expect("sorted indices form a permutation")
}

/// Every agent reports its truthful ranking.
pub fn truthful_profile(inst: &Instance) -> Profile {
    Profile::new(inst.valuations().iter().map(truthful_ranking).collect())
        .expect("rankings share the instance's goods")
}

/// The greedy renaming of goods that defines the bluff profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BluffOrder {
    /// `h_1, ..., h_m`.
    pub order: Ranking,
    /// `(agent, round)` that selected each position of `order`.
    pub pickers: Vec<(usize, usize)>,
    /// Bundle accumulated by each agent during the construction.
    pub bundles: Vec<Bundle>,
}

impl BluffOrder {
    /// Goods selected by `agent`, in selection order.
    pub fn picks(&self, agent: usize) -> Vec<GoodId> {
        self.order
            .order()
            .iter()
            .zip(&self.pickers)
            .filter(|(_, (a, _))| *a == agent)
            .map(|(g, _)| *g)
            .collect()
    }
}

/// Agents take turns in index order; each picks the available good of
/// largest marginal value with respect to what it already holds.
///
/// Equal marginals go to the good with the larger singleton value, then to
/// the lower index. For cancelable valuations the most valuable singleton
/// always has the largest marginal, so this makes the construction coincide
/// with a run on the truthful profile even when marginals tie at zero.
pub fn bluff_order(inst: &Instance) -> BluffOrder {
    let n = inst.agents();
    let m = inst.goods();
    let singletons: Vec<Vec<Rational>> = inst
        .valuations()
        .iter()
        .map(|v| v.singleton_values())
        .collect();
    let mut available = Bundle::full(m);
    let mut bundles = vec![Bundle::EMPTY; n];
    let mut order = Vec::with_capacity(m);
    let mut pickers = Vec::with_capacity(m);
    for step in 0..m {
        let agent = step % n;
        let good = argmax_marginal(
            inst.valuation(agent),
            available,
            bundles[agent],
            Some(&singletons[agent]),
        )
        .expect("a good remains at every step");
        available.remove(good);
        bundles[agent].insert(good);
        order.push(good);
        pickers.push((agent, step / n + 1));
    }
    BluffOrder {
        order: Ranking::new(order).expect("each good is picked once"),
        pickers,
        bundles,
    }
}

/// `n` copies of the bluff order.
pub fn bluff_profile(inst: &Instance) -> Profile {
    Profile::uniform(bluff_order(inst).order, inst.agents())
}

/// Orders `y` against the ordered bundle `x`: for `j = |y|` down to 1, slot
/// `j` receives the remaining good of smallest marginal value with respect to
/// `{x_1, ..., x_{j-1}}`. Among tied goods the largest index takes the later
/// slot, so tied goods end up in ascending order.
pub fn deviation_renaming(x: &[GoodId], y: Bundle, v: &Valuation) -> Result<Vec<GoodId>> {
    if y.len() > x.len() + 1 {
        return Err(Error::InvalidInstance(format!(
            "cannot rename {} goods against a bundle of {}",
            y.len(),
            x.len()
        )));
    }
    if y.upper_bound() > v.goods() || x.iter().any(|g| g.0 >= v.goods()) {
        return Err(Error::GoodOutOfRange {
            index: y
                .upper_bound()
                .max(x.iter().map(|g| g.0 + 1).max().unwrap_or(0))
                - 1,
            goods: v.goods(),
        });
    }
    let mut remaining = y;
    let mut renamed = vec![GoodId(0); y.len()];
    for j in (1..=y.len()).rev() {
        let base: Bundle = x[..j - 1].iter().collect();
        let mut best: Option<(GoodId, Rational)> = None;
        for g in remaining.iter() {
            let gain = v.eval_marginal(g, base);
            if best.as_ref().is_none_or(|(_, b)| gain <= *b) {
                best = Some((g, gain));
            }
        }
        let (g, _) = best.expect("remaining is non-empty");
        remaining.remove(g);
        renamed[j - 1] = g;
    }
    Ok(renamed)
}

/// Agent `agent` picks greedily by marginal value while everyone else
/// follows `profile`. The result lists the greedy picks first and then the
/// remaining goods in ascending order, so replaying the mechanism with it
/// reproduces the same picks.
pub fn greedy_response(inst: &Instance, agent: usize, profile: &Profile) -> Result<Ranking> {
    inst.check_agent(agent)?;
    profile.check_against(inst)?;
    let n = inst.agents();
    let m = inst.goods();
    let v = inst.valuation(agent);
    let mut available = Bundle::full(m);
    let mut held = Bundle::EMPTY;
    let mut picks = Vec::new();
    for step in 0..m {
        let picker = step % n;
        let good = if picker == agent {
            let g = argmax_marginal(v, available, held, None).expect("a good remains");
            held.insert(g);
            picks.push(g);
            g
        } else {
            profile
                .ranking(picker)
                .top(available)
                .expect("a good remains")
        };
        available.remove(good);
    }
    Ranking::with_prefix(&picks, m)
}

/// Largest marginal, ties to the larger `singletons` entry when given, then
/// to the lowest index.
fn argmax_marginal(
    v: &Valuation,
    available: Bundle,
    held: Bundle,
    singletons: Option<&[Rational]>,
) -> Option<GoodId> {
    let zero = Rational::zero();
    let secondary = |g: GoodId| singletons.map_or(&zero, |s| &s[g.0]);
    let mut best: Option<(GoodId, Rational)> = None;
    for g in available.iter() {
        let gain = v.eval_marginal(g, held);
        let better = match &best {
            None => true,
            Some((b, top)) => gain > *top || (gain == *top && secondary(g) > secondary(*b)),
        };
        if better {
            best = Some((g, gain));
        }
    }
    best.map(|(g, _)| g)
}
