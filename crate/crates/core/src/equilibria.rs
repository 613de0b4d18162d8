//! Exact best responses, approximate-equilibrium factors, profile-space
//! scans and the fairness bounds that hold at approximate equilibria.

use std::collections::HashMap;
use std::ops::Range;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bundle::{Bundle, GoodId};
use crate::classes::{is_additive, is_cancelable, is_subadditive, is_submodular};
use crate::error::{Error, Result};
use crate::fairness::{fairness_report, FairnessReport};
use crate::instance::Instance;
use crate::mechanism::{run, Allocation, Profile, Ranking};
use crate::rational::{Factor, Rational};
use crate::valuation::Valuation;

/// Largest number of goods accepted by [`best_response`].
pub const BEST_RESPONSE_MAX_GOODS: usize = 14;
/// Largest number of profiles an exhaustive scan may visit.
pub const EXHAUSTIVE_SCAN_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponse {
    pub ranking: Ranking,
    pub bundle: Bundle,
    pub value: Rational,
    /// Distinct search states expanded.
    pub explored_states: usize,
}

struct PickSearch<'a> {
    rankings: &'a [Ranking],
    valuation: &'a Valuation,
    agent: usize,
    goods: usize,
    memo: HashMap<(u64, u64), (Rational, Vec<GoodId>)>,
}

impl PickSearch<'_> {
    /// Lets everyone else pick from `step` on until it is the searching
    /// agent's turn. Returns the remaining goods and that turn, if any.
    fn others_until_turn(&self, mut available: Bundle, mut step: usize) -> (Bundle, Option<usize>) {
        let agents = self.rankings.len();
        while step < self.goods {
            let picker = step % agents;
            if picker == self.agent {
                return (available, Some(step));
            }
            let g = self.rankings[picker]
                .top(available)
                .expect("a good remains at every step");
            available.remove(g);
            step += 1;
        }
        (available, None)
    }

    /// Best value reachable from the agent's turn at `step`, with the
    /// lexicographically least pick sequence attaining it.
    fn best_from(
        &mut self,
        available: Bundle,
        held: Bundle,
        step: usize,
    ) -> (Rational, Vec<GoodId>) {
        if let Some(hit) = self.memo.get(&(available.bits(), held.bits())) {
            return hit.clone();
        }
        let mut best: Option<(Rational, Vec<GoodId>)> = None;
        for g in available.iter() {
            let bundle = held.with(g);
            let (rest, next) = self.others_until_turn(available.without(g), step + 1);
            let (value, mut tail) = match next {
                Some(turn) => self.best_from(rest, bundle, turn),
                None => (self.valuation.eval(bundle), Vec::new()),
            };
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                tail.insert(0, g);
                best = Some((value, tail));
            }
        }
        let best = best.expect("the agent's turn comes with an available good");
        self.memo
            .insert((available.bits(), held.bits()), best.clone());
        best
    }
}

/// Exact best response of `agent` against the other rankings of `profile`.
///
/// Searches the agent's pick sequences instead of its `m!` rankings: other
/// agents' picks are replayed from their fixed rankings, and any pick
/// sequence is realized by the ranking that lists it first. Ties go to the
/// lexicographically least pick sequence.
pub fn best_response(inst: &Instance, agent: usize, profile: &Profile) -> Result<BestResponse> {
    inst.check_agent(agent)?;
    profile.check_against(inst)?;
    let goods = inst.goods();
    if goods > BEST_RESPONSE_MAX_GOODS {
        return Err(Error::SizeGuard {
            check: "best response",
            goods,
            max: BEST_RESPONSE_MAX_GOODS,
        });
    }
    let mut search = PickSearch {
        rankings: profile.rankings(),
        valuation: inst.valuation(agent),
        agent,
        goods,
        memo: HashMap::new(),
    };
    let (available, first) = search.others_until_turn(Bundle::full(goods), 0);
    let (value, picks) = match first {
        Some(turn) => search.best_from(available, Bundle::EMPTY, turn),
        None => (Rational::zero(), Vec::new()),
    };
    Ok(BestResponse {
        ranking: Ranking::with_prefix(&picks, goods)?,
        bundle: picks.iter().collect(),
        value,
        explored_states: search.memo.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentEquilibrium {
    pub current: Rational,
    pub best: BestResponse,
    /// `current / best.value`; unbounded when the best value is zero.
    pub ratio: Factor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub allocation: Allocation,
    pub per_agent: Vec<AgentEquilibrium>,
    /// Minimum ratio over agents, unbounded ratios counting as 1.
    pub pne_factor: Rational,
}

/// Largest `α` for which `profile` is an `α`-approximate pure equilibrium.
pub fn pne_factor(inst: &Instance, profile: &Profile) -> Result<EquilibriumReport> {
    profile.check_against(inst)?;
    let (allocation, _) = run(profile.rankings());
    let mut per_agent = Vec::with_capacity(inst.agents());
    for agent in 0..inst.agents() {
        let current = inst.valuation(agent).eval(allocation.bundle(agent));
        let best = best_response(inst, agent, profile)?;
        let ratio = Factor::ratio(&current, &best.value);
        per_agent.push(AgentEquilibrium {
            current,
            best,
            ratio,
        });
    }
    let pne_factor = per_agent
        .iter()
        .map(|a| a.ratio.capped(&Rational::one()))
        .min()
        .expect("at least one agent");
    Ok(EquilibriumReport {
        allocation,
        per_agent,
        pne_factor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every profile, in lexicographic order of (agent 1's ranking, agent
    /// 2's ranking, ...), rankings in lexicographic order.
    Exhaustive,
    /// `count` profiles, each ranking drawn uniformly. Profile `k` uses
    /// stream `k` of a ChaCha8 generator seeded with `seed`.
    Sampled { count: usize, seed: u64 },
}

/// The profiles visited by a scan, addressable by index.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    agents: usize,
    goods: usize,
    mode: ScanMode,
    permutations: Vec<Ranking>,
}

impl ProfileSpace {
    pub fn new(agents: usize, goods: usize, mode: ScanMode) -> Result<Self> {
        let permutations = match mode {
            ScanMode::Exhaustive => {
                let per_agent = (1..=goods as u128).fold(1u128, |acc, k| acc.saturating_mul(k));
                let profiles = (0..agents).fold(1u128, |acc, _| acc.saturating_mul(per_agent));
                if profiles > EXHAUSTIVE_SCAN_LIMIT {
                    return Err(Error::ScanGuard {
                        profiles,
                        limit: EXHAUSTIVE_SCAN_LIMIT,
                    });
                }
                permutations(goods)
            }
            ScanMode::Sampled { .. } => Vec::new(),
        };
        Ok(ProfileSpace {
            agents,
            goods,
            mode,
            permutations,
        })
    }

    pub fn len(&self) -> usize {
        match self.mode {
            ScanMode::Exhaustive => self.permutations.len().pow(self.agents as u32),
            ScanMode::Sampled { count, .. } => count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn profile(&self, index: usize) -> Profile {
        let rankings = match self.mode {
            ScanMode::Exhaustive => {
                let base = self.permutations.len();
                let mut digits = vec![0; self.agents];
                let mut rest = index;
                for d in digits.iter_mut().rev() {
                    *d = rest % base;
                    rest /= base;
                }
                digits
                    .into_iter()
                    .map(|d| self.permutations[d].clone())
                    .collect()
            }
            ScanMode::Sampled { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                (0..self.agents)
                    .map(|_| {
                        let mut order: Vec<GoodId> = (0..self.goods).map(GoodId).collect();
                        order.shuffle(&mut rng);
                        Ranking::new(order).expect("a shuffle is a permutation")
                    })
                    .collect()
            }
        };
        Profile::new(rankings).expect("rankings share the goods")
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.len()).map(|k| self.profile(k))
    }
}

/// All rankings of `goods` goods in lexicographic order.
fn permutations(goods: usize) -> Vec<Ranking> {
    let mut current: Vec<usize> = (0..goods).collect();
    let mut out = Vec::new();
    loop {
        out.push(Ranking::from_indices(&current).expect("a permutation"));
        let Some(pivot) = (1..goods).rev().find(|&k| current[k - 1] < current[k]) else {
            return out;
        };
        let swap = (pivot..goods)
            .rev()
            .find(|&k| current[k] > current[pivot - 1])
            .expect("the suffix has a larger element");
        current.swap(pivot - 1, swap);
        current[pivot..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub index: usize,
    pub profile: Profile,
    pub equilibrium: EquilibriumReport,
    pub fairness: FairnessReport,
}

fn scan_entry(inst: &Instance, space: &ProfileSpace, index: usize) -> Result<ScanEntry> {
    let profile = space.profile(index);
    let equilibrium = pne_factor(inst, &profile)?;
    let fairness = fairness_report(inst, &equilibrium.allocation)?;
    Ok(ScanEntry {
        index,
        profile,
        equilibrium,
        fairness,
    })
}

/// Lazily evaluates every profile of the scan, in order.
pub fn profile_space_scan(
    inst: &Instance,
    mode: ScanMode,
) -> Result<impl Iterator<Item = Result<ScanEntry>> + '_> {
    let space = ProfileSpace::new(inst.agents(), inst.goods(), mode)?;
    Ok((0..space.len()).map(move |k| scan_entry(inst, &space, k)))
}

/// [`profile_space_scan`] evaluated on the current rayon pool; entries keep
/// scan order.
pub fn profile_space_scan_parallel(inst: &Instance, mode: ScanMode) -> Result<Vec<ScanEntry>> {
    let space = ProfileSpace::new(inst.agents(), inst.goods(), mode)?;
    scan_range(inst, &space, 0..space.len())
}

/// Evaluates the profiles of `space` with indices in `range` in parallel,
/// returned in index order.
pub fn scan_range(
    inst: &Instance,
    space: &ProfileSpace,
    range: Range<usize>,
) -> Result<Vec<ScanEntry>> {
    range
        .into_par_iter()
        .map(|k| scan_entry(inst, space, k))
        .collect()
}

/// The valuation classes every agent of an instance belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceClasses {
    pub additive: bool,
    pub submodular: bool,
    pub cancelable: bool,
    pub subadditive: bool,
}

/// Certifies the classes of every agent by exhaustive checks.
pub fn certify_instance(inst: &Instance) -> Result<InstanceClasses> {
    let mut classes = InstanceClasses {
        additive: true,
        submodular: true,
        cancelable: true,
        subadditive: true,
    };
    for v in inst.valuations() {
        classes.additive &= is_additive(v)?;
        classes.submodular &= is_submodular(v)?.holds();
        classes.cancelable &= is_cancelable(v)?.holds();
        classes.subadditive &= is_subadditive(v)?.holds();
    }
    Ok(classes)
}

/// EF1 guarantees of `α`-approximate equilibria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FairnessBound {
    /// Two additive agents: `α / (2 - α)`.
    TwoAdditive,
    /// Two submodular agents: `α / 2`.
    TwoSubmodular,
    /// Subadditive cancelable agents: `α / 2`.
    SubadditiveCancelable,
    /// Submodular agents: `α / 3`.
    Submodular,
}

impl FairnessBound {
    /// The strongest bound for `agents` agents of the given classes.
    pub fn select(agents: usize, classes: InstanceClasses) -> Option<FairnessBound> {
        if agents < 2 {
            return None;
        }
        if agents == 2 && classes.additive {
            Some(FairnessBound::TwoAdditive)
        } else if agents == 2 && classes.submodular {
            Some(FairnessBound::TwoSubmodular)
        } else if classes.subadditive && classes.cancelable {
            Some(FairnessBound::SubadditiveCancelable)
        } else if classes.submodular {
            Some(FairnessBound::Submodular)
        } else {
            None
        }
    }

    pub fn apply(self, alpha: &Rational) -> Rational {
        match self {
            FairnessBound::TwoAdditive => alpha / (Rational::from_integer(2.into()) - alpha),
            FairnessBound::TwoSubmodular | FairnessBound::SubadditiveCancelable => {
                alpha / Rational::from_integer(2.into())
            }
            FairnessBound::Submodular => alpha / Rational::from_integer(3.into()),
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            FairnessBound::TwoAdditive => "α/(2−α)",
            FairnessBound::TwoSubmodular | FairnessBound::SubadditiveCancelable => "α/2",
            FairnessBound::Submodular => "α/3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub alpha: Rational,
    pub ef1: Factor,
    pub kind: FairnessBound,
    pub bound: Rational,
    pub holds: bool,
}

/// Certifies an instance once and checks profiles against its bound.
#[derive(Clone, Debug)]
pub struct BoundVerifier<'a> {
    inst: &'a Instance,
    kind: FairnessBound,
}

impl<'a> BoundVerifier<'a> {
    pub fn new(inst: &'a Instance) -> Result<Self> {
        let classes = certify_instance(inst)?;
        let kind = FairnessBound::select(inst.agents(), classes).ok_or(Error::NoApplicableBound)?;
        Ok(BoundVerifier { inst, kind })
    }

    pub fn kind(&self) -> FairnessBound {
        self.kind
    }

    pub fn check(&self, profile: &Profile) -> Result<BoundCheck> {
        let eq = pne_factor(self.inst, profile)?;
        let fairness = fairness_report(self.inst, &eq.allocation)?;
        Ok(self.judge(&eq, &fairness))
    }

    /// The bound verdict for already computed reports.
    pub fn judge(&self, eq: &EquilibriumReport, fairness: &FairnessReport) -> BoundCheck {
        let bound = self.kind.apply(&eq.pne_factor);
        BoundCheck {
            alpha: eq.pne_factor.clone(),
            ef1: fairness.ef1_factor.clone(),
            kind: self.kind,
            holds: fairness.ef1_factor.at_least(&bound),
            bound,
        }
    }
}

/// Certifies `inst`, then checks the strongest applicable bound on `profile`.
pub fn verify_fairness_bound(inst: &Instance, profile: &Profile) -> Result<BoundCheck> {
    BoundVerifier::new(inst)?.check(profile)
}
