//! The four explicit constructions, with their parameter constraints, their
//! scenario profiles and the closed-form values those scenarios must produce.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::bundle::{bundle, Bundle};
use crate::equilibria::{
    certify_instance, pne_factor, profile_space_scan, EquilibriumReport, FairnessBound, ScanMode,
};
use crate::error::{Error, Result};
use crate::fairness::{fairness_report, FairnessReport};
use crate::instance::Instance;
use crate::mechanism::{pad_to_multiple, Allocation, Profile, Ranking};
use crate::profiles::{bluff_profile, truthful_ranking};
use crate::rational::{format_rational, int, rat, Factor, Rational};
use crate::valuation::{OxsGraph, Valuation};

/// A parameterized construction.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Fixture {
    /// Two submodular agents, four goods, no exact equilibrium.
    NoPne,
    /// An additive agent against an OXS agent where the bluff profile is
    /// only about a 1/2-approximate equilibrium. Requires
    /// `1 > eps[2] > eps[1] > eps[0] > 0`.
    BluffTightness { eps: [Rational; 3] },
    /// Two additive agents whose approximate equilibrium meets the
    /// `α/(2−α)` EF1 bound almost exactly. Requires `0 < delta < 1/2` and
    /// `beta > 1/6 + delta`.
    AdditiveTightness { delta: Rational, beta: Rational },
    /// Three additive agents and one OXS agent whose approximate equilibrium
    /// is not `(α/2 + ε)`-EF1. Requires `1 > eps[0] > ... > eps[5] > 0` and
    /// `beta > (1 + eps[3]) / 2`.
    OxsLowerBound { eps: [Rational; 6], beta: Rational },
}

/// Canonical fixture names, in declaration order.
pub const FIXTURE_NAMES: [&str; 4] = [
    "no-pne",
    "bluff-tightness",
    "additive-tightness",
    "oxs-lower-bound",
];

impl Fixture {
    /// The fixture with its default parameters. Accepts the canonical names
    /// and the aliases `prop3_no_pne`, `thm4_tightness`, `thm9_tightness`
    /// and `prop10_oxs`.
    pub fn named(name: &str) -> Result<Fixture> {
        match name {
            "no-pne" | "prop3_no_pne" | "prop3" => Ok(Fixture::NoPne),
            "bluff-tightness" | "thm4_tightness" | "thm4" => Ok(Fixture::BluffTightness {
                eps: [rat(1, 100), rat(2, 100), rat(3, 100)],
            }),
            "additive-tightness" | "thm9_tightness" | "thm9" => Ok(Fixture::AdditiveTightness {
                delta: rat(1, 1000),
                beta: rat(1, 2),
            }),
            "oxs-lower-bound" | "prop10_oxs" | "prop10" => Ok(Fixture::OxsLowerBound {
                eps: [6, 5, 4, 3, 2, 1].map(|k| rat(k, 6000)),
                beta: rat(3, 5),
            }),
            other => Err(Error::InvalidInstance(format!(
                "unknown fixture {other:?}; expected one of {}",
                FIXTURE_NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Fixture::NoPne => FIXTURE_NAMES[0],
            Fixture::BluffTightness { .. } => FIXTURE_NAMES[1],
            Fixture::AdditiveTightness { .. } => FIXTURE_NAMES[2],
            Fixture::OxsLowerBound { .. } => FIXTURE_NAMES[3],
        }
    }

    /// Overrides one parameter: `eps1`..`eps6`, `delta` or `beta`.
    pub fn with_param(mut self, key: &str, value: Rational) -> Result<Fixture> {
        let name = self.name();
        let eps_index = key
            .strip_prefix("eps")
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .map(|k| k - 1);
        let slot = match (&mut self, key, eps_index) {
            (Fixture::BluffTightness { eps }, _, Some(k)) if k < 3 => &mut eps[k],
            (Fixture::OxsLowerBound { eps, .. }, _, Some(k)) if k < 6 => &mut eps[k],
            (Fixture::AdditiveTightness { delta, .. }, "delta", _) => delta,
            (Fixture::AdditiveTightness { beta, .. }, "beta", _)
            | (Fixture::OxsLowerBound { beta, .. }, "beta", _) => beta,
            _ => {
                return Err(Error::InvalidInstance(format!(
                    "fixture {name} has no parameter {key:?}"
                )))
            }
        };
        *slot = value;
        Ok(self)
    }

    /// Fails with the first violated parameter inequality.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::FixtureConstraint(what.to_string()));
        match self {
            Fixture::NoPne => Ok(()),
            Fixture::BluffTightness { eps } => {
                if !eps[0].is_positive() {
                    return fail("ε1 > 0");
                }
                if eps[1] <= eps[0] {
                    return fail("ε2 > ε1");
                }
                if eps[2] <= eps[1] {
                    return fail("ε3 > ε2");
                }
                if eps[2] >= Rational::one() {
                    return fail("1 > ε3");
                }
                Ok(())
            }
            Fixture::AdditiveTightness { delta, beta } => {
                if !delta.is_positive() {
                    return fail("δ > 0");
                }
                if *delta >= rat(1, 2) {
                    return fail("1/2 > δ");
                }
                if *beta <= rat(1, 6) + delta {
                    return fail("β > 1/6 + δ");
                }
                Ok(())
            }
            Fixture::OxsLowerBound { eps, beta } => {
                if eps[0] >= Rational::one() {
                    return fail("1 > ε1");
                }
                for k in 1..6 {
                    if eps[k] >= eps[k - 1] {
                        return Err(Error::FixtureConstraint(format!("ε{} > ε{}", k, k + 1)));
                    }
                }
                if !eps[5].is_positive() {
                    return fail("ε6 > 0");
                }
                if *beta <= (int(1) + &eps[3]) / int(2) {
                    return fail("β > (1 + ε4)/2");
                }
                Ok(())
            }
        }
    }

    pub fn description(&self) -> String {
        match self {
            Fixture::NoPne => "two submodular table agents over four goods; every profile leaves one agent at 3 \
                               while a deviation reaches 4"
                .into(),
            Fixture::BluffTightness { eps } => format!(
                "additive agent 1 (2, 1, 1−ε1, 1−ε2, 1−ε3) against an OXS agent 2; agent 1's value for g4 is \
                 1−ε2 (the construction lists g2 twice); ε = ({}, {}, {})",
                format_rational(&eps[0]),
                format_rational(&eps[1]),
                format_rational(&eps[2])
            ),
            Fixture::AdditiveTightness { delta, beta } => format!(
                "two additive agents, agent 2 scaled by β; δ = {}, β = {}",
                format_rational(delta),
                format_rational(beta)
            ),
            Fixture::OxsLowerBound { eps, beta } => format!(
                "three additive agents and one OXS agent over nine goods; ε = ({}), β = {}",
                eps.iter().map(format_rational).collect::<Vec<_>>().join(", "),
                format_rational(beta)
            ),
        }
    }

    /// The instance, unpadded.
    pub fn build(&self) -> Result<Instance> {
        self.check()?;
        match self {
            Fixture::NoPne => no_pne(),
            Fixture::BluffTightness { eps } => bluff_tightness(eps),
            Fixture::AdditiveTightness { delta, beta } => additive_tightness(delta, beta),
            Fixture::OxsLowerBound { eps, beta } => oxs_lower_bound(eps, beta),
        }
    }

    /// The profile the construction studies, over the padded instance.
    /// `None` for [`Fixture::NoPne`], whose claim is about every profile.
    pub fn scenario(&self, padded: &Instance) -> Option<Profile> {
        let goods = padded.goods();
        let fixed = |order: &[usize]| {
            Ranking::from_indices(order)
                .expect("a permutation of the real goods")
                .extended(goods)
        };
        match self {
            Fixture::NoPne => None,
            Fixture::BluffTightness { .. } => Some(bluff_profile(padded)),
            Fixture::AdditiveTightness { .. } => Some(
                Profile::new(vec![
                    truthful_ranking(padded.valuation(0)),
                    fixed(&[4, 3, 0, 1, 2]),
                ])
                .expect("same goods"),
            ),
            Fixture::OxsLowerBound { .. } => {
                let mut rankings: Vec<Ranking> = (0..3)
                    .map(|i| truthful_ranking(padded.valuation(i)))
                    .collect();
                rankings.push(fixed(&[2, 5, 7, 0, 1, 3, 4, 6, 8]));
                Some(Profile::new(rankings).expect("same goods"))
            }
        }
    }
}

fn table_from_pairs(pairs: [i64; 6]) -> Result<Valuation> {
    // Pair order: 12, 13, 14, 23, 24, 34.
    let pair_bits = [0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100];
    let values = (0..16u32)
        .map(|bits| match bits.count_ones() {
            0 => int(0),
            1 => int(2),
            2 => int(pairs[pair_bits.iter().position(|&b| b == bits).expect("a pair")]),
            _ => int(4),
        })
        .collect();
    Valuation::table(4, values)
}

fn no_pne() -> Result<Instance> {
    Instance::new(vec![
        table_from_pairs([3, 3, 4, 4, 3, 3])?,
        table_from_pairs([4, 4, 3, 3, 4, 4])?,
    ])
}

fn bluff_tightness(eps: &[Rational; 3]) -> Result<Instance> {
    let one = || Rational::one();
    let agent1 = Valuation::additive(vec![
        int(2),
        one(),
        one() - &eps[0],
        one() - &eps[1],
        one() - &eps[2],
    ])?;
    let agent2 = OxsGraph::from_labeled_edges(
        5,
        [
            (0, "a", int(2)),
            (1, "b", one()),
            (2, "c", one() - &eps[0]),
            (3, "b", one() - &eps[1]),
            (4, "b", one() - &eps[2]),
        ],
    )?;
    Instance::new(vec![agent1, Valuation::oxs(agent2)])
}

fn additive_tightness(delta: &Rational, beta: &Rational) -> Result<Instance> {
    let half = rat(1, 2);
    let agent1 = Valuation::additive(vec![
        int(6),
        int(3) + delta,
        int(3),
        &half + delta,
        half.clone(),
    ])?;
    let agent2 = Valuation::additive(vec![
        int(6) * beta,
        int(3) * beta + delta,
        int(3) * beta,
        &half + delta,
        half,
    ])?;
    Instance::new(vec![agent1, agent2])
}

fn oxs_lower_bound(eps: &[Rational; 6], beta: &Rational) -> Result<Instance> {
    let e = |k: usize| eps[k - 1].clone();
    let additive = |w: Vec<Rational>| Valuation::additive(w);
    let agent1 = additive(vec![
        int(5),
        e(5),
        e(6),
        int(1),
        int(2),
        e(1),
        e(2),
        e(3),
        e(4),
    ])?;
    let agent2 = additive(vec![
        e(5),
        int(5),
        e(6),
        int(1),
        e(1),
        e(2),
        int(2),
        e(3),
        e(4),
    ])?;
    let agent3 = additive(vec![
        e(5),
        e(6),
        int(5),
        e(1),
        e(2),
        int(2),
        e(3),
        e(4),
        int(1),
    ])?;
    let b = |k: i64| int(k) * beta;
    let agent4 = OxsGraph::from_labeled_edges(
        9,
        [
            (0, "n1", b(5)),
            (1, "n2", b(4)),
            (2, "n3", b(3)),
            (3, "n4", b(2)),
            (4, "n5", b(2) - e(4)),
            (5, "n4", int(1)),
            (6, "n5", int(1) - e(3)),
            (7, "n6", e(1)),
            (8, "n7", e(2)),
        ],
    )?;
    Instance::new(vec![agent1, agent2, agent3, Valuation::oxs(agent4)])
}

/// One compared quantity of a reproduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn equal(
        quantity: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            quantity: quantity.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    fn holds(quantity: impl Into<String>, relation: String, pass: bool) -> Check {
        Check {
            quantity: quantity.into(),
            expected: "true".into(),
            actual: format!("{pass} ({relation})"),
            pass,
        }
    }
}

/// What running a fixture's scenario produced.
#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub instance: Instance,
    pub padded: Instance,
    pub profile: Profile,
    pub equilibrium: EquilibriumReport,
    /// The allocation without padding goods.
    pub allocation: Allocation,
    pub fairness: FairnessReport,
    pub bound: Option<(FairnessBound, Rational)>,
}

/// Runs `profile` (over `padded`) and scores it against `instance`.
pub fn run_scenario(
    instance: &Instance,
    padded: &Instance,
    profile: Profile,
) -> Result<ScenarioRun> {
    let equilibrium = pne_factor(padded, &profile)?;
    let allocation = equilibrium.allocation.restricted(instance.goods());
    let fairness = fairness_report(instance, &allocation)?;
    let bound = match FairnessBound::select(instance.agents(), certify_instance(instance)?) {
        Some(kind) => {
            let value = kind.apply(&equilibrium.pne_factor);
            Some((kind, value))
        }
        None => None,
    };
    Ok(ScenarioRun {
        instance: instance.clone(),
        padded: padded.clone(),
        profile,
        equilibrium,
        allocation,
        fairness,
        bound,
    })
}

#[derive(Clone, Debug)]
pub struct Reproduction {
    pub fixture: Fixture,
    pub run: Option<ScenarioRun>,
    pub profiles_scanned: usize,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn allocation_text(bundles: &[Bundle]) -> String {
    bundles
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn pair_ratio(run: &ScenarioRun, owner: usize, other: usize) -> Factor {
    run.fairness
        .pair(owner, other)
        .map_or(Factor::Unbounded, |p| p.ratio.clone())
}

/// Builds the fixture, runs its scenario and compares every quantity with
/// its closed form in the fixture parameters.
pub fn reproduce(fixture: &Fixture) -> Result<Reproduction> {
    let instance = fixture.build()?;
    let (padded, _) = pad_to_multiple(&instance)?;
    let Some(profile) = fixture.scenario(&padded) else {
        return reproduce_no_pne(fixture, &instance);
    };
    let run = run_scenario(&instance, &padded, profile)?;
    let one = Rational::one();
    let alpha = run.equilibrium.pne_factor.clone();
    let mut checks = Vec::new();
    let rational = |r: Rational| format_rational(&r);
    match fixture {
        Fixture::BluffTightness { eps } => {
            let agent2 = &run.equilibrium.per_agent[1];
            checks.push(Check::equal(
                "allocation",
                allocation_text(&[bundle(&[0, 2, 4]), bundle(&[1, 3])]),
                allocation_text(run.allocation.bundles()),
            ));
            checks.push(Check::equal(
                "agent 2 best-response value",
                rational(int(2) - &eps[0] - &eps[1]),
                rational(agent2.best.value.clone()),
            ));
            checks.push(Check::equal(
                "agent 2 best-response bundle",
                bundle(&[2, 3]),
                agent2.best.bundle.intersection(Bundle::full(5)),
            ));
            checks.push(Check::equal(
                "pne factor",
                rational(&one / (int(2) - &eps[0] - &eps[1])),
                rational(alpha),
            ));
            checks.push(Check::equal(
                "agent 2 EF1 ratio towards agent 1",
                rational(&one / (int(2) - &eps[0] - &eps[2])),
                pair_ratio(&run, 1, 0),
            ));
        }
        Fixture::AdditiveTightness { delta, beta } => {
            let agent2 = &run.equilibrium.per_agent[1];
            let expected_alpha = (&one + delta) / (int(3) * beta + rat(1, 2) + int(2) * delta);
            let expected_ratio = (&one + delta) / (int(6) * beta + delta);
            checks.push(Check::equal(
                "allocation",
                allocation_text(&[bundle(&[0, 1, 2]), bundle(&[3, 4])]),
                allocation_text(run.allocation.bundles()),
            ));
            checks.push(Check::equal(
                "agent 2 best-response value",
                rational(int(3) * beta + rat(1, 2) + int(2) * delta),
                rational(agent2.best.value.clone()),
            ));
            checks.push(Check::equal(
                "agent 2 best-response bundle",
                bundle(&[1, 3]),
                agent2.best.bundle.intersection(Bundle::full(5)),
            ));
            checks.push(Check::equal(
                "pne factor",
                rational(expected_alpha.clone()),
                rational(alpha.clone()),
            ));
            checks.push(Check::equal(
                "agent 2 EF1 ratio towards agent 1",
                rational(expected_ratio.clone()),
                pair_ratio(&run, 1, 0),
            ));
            checks.push(Check::equal(
                "EF1 factor",
                rational(expected_ratio.clone()),
                &run.fairness.ef1_factor,
            ));
            let bound = &expected_alpha / (int(2) - &expected_alpha);
            checks.push(Check::equal(
                "bound",
                format!(
                    "{} {}",
                    FairnessBound::TwoAdditive.formula(),
                    rational(bound.clone())
                ),
                run.bound.as_ref().map_or("none".into(), |(k, b)| {
                    format!("{} {}", k.formula(), rational(b.clone()))
                }),
            ));
            let ef1 = run.fairness.ef1_factor.clone();
            checks.push(Check::holds(
                "EF1 factor meets the bound",
                format!("{ef1} >= {}", rational(bound.clone())),
                ef1.at_least(&bound),
            ));
            let slack = &bound + rat(1, 100);
            checks.push(Check::holds(
                "EF1 factor below bound + 1/100",
                format!("{ef1} < {}", rational(slack.clone())),
                !ef1.at_least(&slack),
            ));
        }
        Fixture::OxsLowerBound { eps, beta } => {
            let agent4 = &run.equilibrium.per_agent[3];
            let expected_alpha = (&one + &eps[0]) / (int(2) * beta + &eps[0]);
            let expected_ratio = (&one + &eps[0]) / (int(4) * beta - &eps[3]);
            checks.push(Check::equal(
                "allocation",
                allocation_text(&[
                    bundle(&[0, 3, 4]),
                    bundle(&[1, 6]),
                    bundle(&[2, 8]),
                    bundle(&[5, 7]),
                ]),
                allocation_text(run.allocation.bundles()),
            ));
            checks.push(Check::equal(
                "agent 4 best-response value",
                rational(int(2) * beta + &eps[0]),
                rational(agent4.best.value.clone()),
            ));
            checks.push(Check::equal(
                "pne factor",
                rational(expected_alpha),
                rational(alpha.clone()),
            ));
            let ratio = pair_ratio(&run, 3, 0);
            checks.push(Check::equal(
                "agent 4 EF1 ratio towards agent 1",
                rational(expected_ratio),
                &ratio,
            ));
            checks.push(Check::equal(
                "bound",
                FairnessBound::Submodular.formula(),
                run.bound.as_ref().map_or("none", |(k, _)| k.formula()),
            ));
            let third = &alpha / int(3);
            checks.push(Check::holds(
                "ratio meets α/3",
                format!("{ratio} >= {}", rational(third.clone())),
                ratio.at_least(&third),
            ));
            let half = &alpha / int(2) + rat(1, 100);
            checks.push(Check::holds(
                "ratio below α/2 + 1/100",
                format!("{ratio} < {}", rational(half.clone())),
                !ratio.at_least(&half),
            ));
        }
        Fixture::NoPne => unreachable!("handled above"),
    }
    Ok(Reproduction {
        fixture: fixture.clone(),
        run: Some(run),
        profiles_scanned: 0,
        checks,
    })
}

fn reproduce_no_pne(fixture: &Fixture, instance: &Instance) -> Result<Reproduction> {
    let mut best = Rational::zero();
    let mut count = 0;
    for entry in profile_space_scan(instance, ScanMode::Exhaustive)? {
        let entry = entry?;
        best = best.max(entry.equilibrium.pne_factor);
        count += 1;
    }
    let checks = vec![
        Check::equal("profiles scanned", 576, count),
        Check::equal(
            "max pne factor",
            format_rational(&rat(3, 4)),
            format_rational(&best),
        ),
    ];
    Ok(Reproduction {
        fixture: fixture.clone(),
        run: None,
        profiles_scanned: count,
        checks,
    })
}
