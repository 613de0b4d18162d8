//! The Round-Robin mechanism over reported rankings, with step traces.
//!
//! Agents pick in index order every round; each takes the first still
//! available good of its reported ranking. Rankings are strict total orders,
//! so no tie-breaking happens inside the mechanism.

use std::fmt;

use crate::bundle::{Bundle, GoodId};
use crate::error::{Error, Result};
use crate::instance::Instance;

/// A strict preference order over all goods, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Vec<GoodId>);

impl Ranking {
    /// Fails unless `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<GoodId>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for g in &order {
            if g.0 >= order.len() {
                return Err(Error::MalformedRanking(format!(
                    "{g} out of range for {} goods",
                    order.len()
                )));
            }
            if std::mem::replace(&mut seen[g.0], true) {
                return Err(Error::MalformedRanking(format!("{g} listed twice")));
            }
        }
        if order.is_empty() {
            return Err(Error::MalformedRanking("empty ranking".into()));
        }
        Ok(Ranking(order))
    }

    pub fn from_indices(order: &[usize]) -> Result<Self> {
        Ranking::new(order.iter().map(|&g| GoodId(g)).collect())
    }

    /// `0, 1, ..., goods - 1`.
    pub fn identity(goods: usize) -> Self {
        Ranking((0..goods).map(GoodId).collect())
    }

    /// `prefix` first, then the remaining goods in ascending index order.
    pub fn with_prefix(prefix: &[GoodId], goods: usize) -> Result<Self> {
        let listed: Bundle = prefix.iter().collect();
        let mut order = prefix.to_vec();
        order.extend(Bundle::full(goods).difference(listed).iter());
        Ranking::new(order)
    }

    pub fn goods(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> &[GoodId] {
        &self.0
    }

    /// Most preferred good in `available`.
    pub fn top(&self, available: Bundle) -> Option<GoodId> {
        self.0.iter().copied().find(|&g| available.contains(g))
    }

    /// Extends to `goods` goods by appending the missing indices in order.
    pub fn extended(&self, goods: usize) -> Ranking {
        let mut order = self.0.clone();
        order.extend((self.0.len()..goods).map(GoodId));
        Ranking(order)
    }

    /// Drops goods at or above `goods`.
    pub fn restricted(&self, goods: usize) -> Ranking {
        Ranking(self.0.iter().copied().filter(|g| g.0 < goods).collect())
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ">")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// One ranking per agent; agent order is picking priority.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<Ranking>);

impl Profile {
    pub fn new(rankings: Vec<Ranking>) -> Result<Self> {
        let Some(first) = rankings.first() else {
            return Err(Error::MalformedProfile("profile without rankings".into()));
        };
        if let Some((i, r)) = rankings
            .iter()
            .enumerate()
            .find(|(_, r)| r.goods() != first.goods())
        {
            return Err(Error::MalformedProfile(format!(
                "ranking of agent {} covers {} goods, expected {}",
                i + 1,
                r.goods(),
                first.goods()
            )));
        }
        Ok(Profile(rankings))
    }

    /// The same ranking for every agent.
    pub fn uniform(ranking: Ranking, agents: usize) -> Self {
        Profile(vec![ranking; agents])
    }

    pub fn agents(&self) -> usize {
        self.0.len()
    }

    pub fn goods(&self) -> usize {
        self.0[0].goods()
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.0
    }

    pub fn ranking(&self, agent: usize) -> &Ranking {
        &self.0[agent]
    }

    /// Unilateral deviation of `agent` to `ranking`.
    #[must_use]
    pub fn with_ranking(&self, agent: usize, ranking: Ranking) -> Profile {
        let mut rankings = self.0.clone();
        rankings[agent] = ranking;
        Profile(rankings)
    }

    pub(crate) fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.agents() != inst.agents() {
            return Err(Error::MalformedProfile(format!(
                "{} rankings for {} agents",
                self.agents(),
                inst.agents()
            )));
        }
        if self.goods() != inst.goods() {
            return Err(Error::MalformedProfile(format!(
                "rankings cover {} goods, instance has {}",
                self.goods(),
                inst.goods()
            )));
        }
        Ok(())
    }
}

/// One bundle per agent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation {
    bundles: Vec<Bundle>,
}

impl Allocation {
    pub fn new(bundles: Vec<Bundle>) -> Self {
        Allocation { bundles }
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> Bundle {
        self.bundles[agent]
    }

    pub fn agents(&self) -> usize {
        self.bundles.len()
    }

    /// Bundles must be pairwise disjoint and cover exactly `0..goods`.
    pub fn check_partition(&self, goods: usize) -> Result<()> {
        let mut seen = Bundle::EMPTY;
        for (agent, b) in self.bundles.iter().enumerate() {
            if !b.is_disjoint(seen) {
                return Err(Error::NotPartition(format!(
                    "bundle of agent {} overlaps earlier bundles on {}",
                    agent + 1,
                    b.intersection(seen)
                )));
            }
            seen = seen.union(*b);
        }
        if seen != Bundle::full(goods) {
            return Err(Error::NotPartition(format!(
                "bundles cover {seen}, expected all {goods} goods"
            )));
        }
        Ok(())
    }

    /// Drops every good at or above `goods` (padding dummies).
    #[must_use]
    pub fn restricted(&self, goods: usize) -> Allocation {
        let keep = Bundle::full(goods);
        Allocation {
            bundles: self.bundles.iter().map(|b| b.intersection(keep)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    /// 1-based round.
    pub round: usize,
    pub agent: usize,
    pub good: GoodId,
}

/// Every allocation step in execution order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    agents: usize,
    steps: Vec<Step>,
}

impl Trace {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn rounds(&self) -> usize {
        self.steps.len().div_ceil(self.agents)
    }

    /// Goods allocated before `agent`'s turn in round `completed_rounds + 1`,
    /// i.e. in the first `completed_rounds * n + agent` steps.
    pub fn prefix(&self, agent: usize, completed_rounds: usize) -> Bundle {
        let end = (completed_rounds * self.agents + agent).min(self.steps.len());
        self.steps[..end].iter().map(|s| s.good).collect()
    }

    /// Goods picked by `agent`, in pick order.
    pub fn picks(&self, agent: usize) -> Vec<GoodId> {
        self.steps
            .iter()
            .filter(|s| s.agent == agent)
            .map(|s| s.good)
            .collect()
    }

    /// The order in which all goods were allocated.
    pub fn order(&self) -> Vec<GoodId> {
        self.steps.iter().map(|s| s.good).collect()
    }
}

/// Pads with at most `n - 1` zero-marginal goods so that `n` divides `m`.
/// Returns the padded instance and the number of dummies added.
pub fn pad_to_multiple(inst: &Instance) -> Result<(Instance, usize)> {
    let n = inst.agents();
    let rem = inst.goods() % n;
    let extra = if rem == 0 { 0 } else { n - rem };
    Ok((inst.with_dummies(extra)?, extra))
}

/// Runs the mechanism on `profile`. Works for any `m`; the last round is
/// partial when `n` does not divide `m`.
pub fn round_robin(inst: &Instance, profile: &Profile) -> Result<(Allocation, Trace)> {
    profile.check_against(inst)?;
    Ok(run(profile.rankings()))
}

pub(crate) fn run(rankings: &[Ranking]) -> (Allocation, Trace) {
    let agents = rankings.len();
    let goods = rankings[0].goods();
    let mut cursor = vec![0usize; agents];
    let mut available = Bundle::full(goods);
    let mut bundles = vec![Bundle::EMPTY; agents];
    let mut steps = Vec::with_capacity(goods);
    for step in 0..goods {
        let agent = step % agents;
        let order = rankings[agent].order();
        while !available.contains(order[cursor[agent]]) {
            cursor[agent] += 1;
        }
        let good = order[cursor[agent]];
        available.remove(good);
        bundles[agent].insert(good);
        steps.push(Step {
            round: step / agents + 1,
            agent,
            good,
        });
    }
    (Allocation { bundles }, Trace { agents, steps })
}

/// A counting bound between two runs that differ only in one agent's report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingViolation {
    pub round: usize,
    pub agent: Option<usize>,
    pub count: usize,
    pub limit: usize,
}

/// With `base` the original run and `deviated` the run where only `deviator`
/// changed its ranking, checks `|S'_{r-1} ∖ S_{r-1}| <= r - 1` for every
/// round `r`, where `S` and `S'` are the goods allocated before the
/// deviator's `r`-th turn in each run.
pub fn check_prefix_divergence(
    base: &Trace,
    deviated: &Trace,
    deviator: usize,
) -> Result<(), CountingViolation> {
    for r in 1..=deviated.rounds() {
        let count = deviated
            .prefix(deviator, r - 1)
            .difference(base.prefix(deviator, r - 1))
            .len();
        if count > r - 1 {
            return Err(CountingViolation {
                round: r,
                agent: None,
                count,
                limit: r - 1,
            });
        }
    }
    Ok(())
}

/// Checks `|A_j ∩ (S'_{r-1} ∖ S'_0)| <= 2(r - 1)` for every agent `j` and
/// round `r`, with `A` the base allocation and `S'` the deviated run's
/// prefixes before the deviator's turns.
pub fn check_bundle_spread(
    base: &Allocation,
    deviated: &Trace,
    deviator: usize,
) -> Result<(), CountingViolation> {
    let first = deviated.prefix(deviator, 0);
    for r in 1..=deviated.rounds() {
        let window = deviated.prefix(deviator, r - 1).difference(first);
        for (j, bundle) in base.bundles().iter().enumerate() {
            let count = bundle.intersection(window).len();
            if count > 2 * (r - 1) {
                return Err(CountingViolation {
                    round: r,
                    agent: Some(j),
                    count,
                    limit: 2 * (r - 1),
                });
            }
        }
    }
    Ok(())
}
