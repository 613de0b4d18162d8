mod common;

use std::collections::BTreeSet;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rrfair::instances::generate::GeneratorClass;
use rrfair::{
    best_response, bluff_order, bluff_profile, deviation_renaming, ef1_from_perspective,
    fairness_report, greedy_response, is_cancelable, is_subadditive, is_submodular, pne_factor,
    rat, round_robin, truthful_profile, Bundle, GoodId, Instance, Profile, Ranking, Rational,
};

fn class_strategy(classes: &'static [GeneratorClass]) -> impl Strategy<Value = GeneratorClass> {
    (0..classes.len()).prop_map(move |k| classes[k])
}

/// A padded generated instance plus a random profile over it.
fn scenario(
    classes: &'static [GeneratorClass],
    max_goods: usize,
) -> impl Strategy<Value = (Case, Profile)> {
    (
        class_strategy(classes),
        1usize..=3,
        1..=max_goods,
        any::<u64>(),
    )
        .prop_map(|(class, n, m, seed)| {
            let c = case(class, n, m, seed);
            let profile =
                random_profile(&mut rng(seed ^ 0x5eed), c.padded.agents(), c.padded.goods());
            (c, profile)
        })
}

fn marginal(inst: &Instance, agent: usize, good: GoodId, held: &[GoodId]) -> Rational {
    let held: Bundle = held.iter().collect();
    inst.valuation(agent).marginal(good, held).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_robin_matches_the_definition((c, profile) in scenario(&GeneratorClass::ALL, 12)) {
        let (alloc, trace) = round_robin(&c.padded, &profile).unwrap();
        alloc.check_partition(c.padded.goods()).unwrap();
        let naive = naive_round_robin(&orders(&profile));
        for (agent, goods) in naive.iter().enumerate() {
            prop_assert_eq!(alloc.bundle(agent), to_bundle(goods));
            let picks: Vec<usize> = trace.picks(agent).iter().map(|g| g.0).collect();
            prop_assert_eq!(&picks, goods);
        }
    }

    #[test]
    fn agents_pick_in_fixed_rotation((c, profile) in scenario(&GeneratorClass::ALL, 12)) {
        let n = c.padded.agents();
        let (_, trace) = round_robin(&c.padded, &profile).unwrap();
        prop_assert_eq!(trace.steps().len(), c.padded.goods());
        let mut taken = Bundle::EMPTY;
        for (t, step) in trace.steps().iter().enumerate() {
            prop_assert_eq!(step.agent, t % n);
            prop_assert_eq!(step.round, t / n + 1);
            // Every pick is the picker's favourite among what is left.
            let available = Bundle::full(c.padded.goods()).difference(taken);
            prop_assert_eq!(profile.ranking(step.agent).top(available), Some(step.good));
            taken.insert(step.good);
        }
    }

    #[test]
    fn bluff_run_reproduces_the_construction((c, _) in scenario(&GeneratorClass::ALL, 12)) {
        let order = bluff_order(&c.padded);
        let (alloc, trace) = round_robin(&c.padded, &bluff_profile(&c.padded)).unwrap();
        prop_assert_eq!(alloc.bundles(), &order.bundles[..]);
        prop_assert_eq!(trace.order(), order.order.order().to_vec());
        for (j, &(agent, round)) in order.pickers.iter().enumerate() {
            prop_assert_eq!(agent, j % c.padded.agents());
            prop_assert_eq!(round, j / c.padded.agents() + 1);
        }
    }

    #[test]
    fn cancelable_bluff_and_truthful_runs_coincide(
        class in class_strategy(&CANCELABLE),
        n in 1usize..=3,
        m in 1usize..=9,
        seed in any::<u64>(),
    ) {
        let c = case(class, n, m, seed);
        let (bluff, _) = round_robin(&c.padded, &bluff_profile(&c.padded)).unwrap();
        let (truthful, _) = round_robin(&c.padded, &truthful_profile(&c.padded)).unwrap();
        prop_assert_eq!(bluff, truthful);
    }

    #[test]
    fn renaming_permutes_the_deviation_bundle(
        (c, profile) in scenario(&GeneratorClass::ALL, 9),
        shrink in any::<bool>(),
    ) {
        let agent = 0;
        let (base, trace) = round_robin(&c.padded, &profile).unwrap();
        let x = trace.picks(agent);
        let mut y = base.bundle((agent + 1) % c.padded.agents());
        if shrink && !y.is_empty() {
            y.remove(y.iter().next().unwrap());
        }
        if y.len() <= x.len() + 1 {
            let renamed = deviation_renaming(&x, y, c.padded.valuation(agent)).unwrap();
            prop_assert_eq!(renamed.len(), y.len());
            prop_assert_eq!(renamed.iter().collect::<Bundle>(), y);
        }
    }

    #[test]
    fn best_response_is_reproducible_and_replayable((c, profile) in scenario(&GeneratorClass::ALL, 8)) {
        let eq = pne_factor(&c.padded, &profile).unwrap();
        prop_assert!(eq.pne_factor >= Rational::zero() && eq.pne_factor <= rat(1, 1));
        for agent in 0..c.padded.agents() {
            let br = best_response(&c.padded, agent, &profile).unwrap();
            prop_assert_eq!(&br, &best_response(&c.padded, agent, &profile).unwrap());
            let (alloc, _) = round_robin(&c.padded, &profile.with_ranking(agent, br.ranking.clone())).unwrap();
            prop_assert_eq!(alloc.bundle(agent), br.bundle);
            prop_assert_eq!(c.padded.valuation(agent).value(br.bundle).unwrap(), br.value.clone());
            prop_assert!(br.value >= eq.per_agent[agent].current);
        }
    }

    #[test]
    fn greedy_response_replays_its_picks((c, profile) in scenario(&SUBMODULAR, 9)) {
        for agent in 0..c.padded.agents() {
            let ranking = greedy_response(&c.padded, agent, &profile).unwrap();
            let (alloc, trace) = round_robin(&c.padded, &profile.with_ranking(agent, ranking.clone())).unwrap();
            let picks = trace.picks(agent);
            prop_assert_eq!(&ranking.order()[..picks.len()], &picks[..]);
            // Each pick has the largest marginal among goods still available.
            let mut taken = Bundle::EMPTY;
            for step in trace.steps() {
                if step.agent == agent {
                    let held: Vec<GoodId> = trace.picks(agent).into_iter().take_while(|&g| g != step.good).collect();
                    let chosen = marginal(&c.padded, agent, step.good, &held);
                    for g in Bundle::full(c.padded.goods()).difference(taken) {
                        prop_assert!(marginal(&c.padded, agent, g, &held) <= chosen);
                    }
                }
                taken.insert(step.good);
            }
            let alloc = alloc.restricted(c.instance.goods());
            prop_assert!(ef1_from_perspective(&c.instance, &alloc, agent, &rat(1, 2)).unwrap());
        }
    }

    #[test]
    fn ef1_perspective_is_downward_closed(
        (c, profile) in scenario(&GeneratorClass::ALL, 9),
        num in 0i64..=40,
        den in 1i64..=20,
    ) {
        let (alloc, _) = round_robin(&c.padded, &profile).unwrap();
        let alloc = alloc.restricted(c.instance.goods());
        let alpha = rat(num, den);
        for agent in 0..c.instance.agents() {
            if ef1_from_perspective(&c.instance, &alloc, agent, &alpha).unwrap() {
                for lower in [Rational::zero(), &alpha / rat(2, 1), &alpha * rat(9, 10)] {
                    prop_assert!(ef1_from_perspective(&c.instance, &alloc, agent, &lower).unwrap());
                }
            }
        }
        prop_assert!((0..c.instance.agents())
            .all(|a| ef1_from_perspective(&c.instance, &alloc, a, &Rational::zero()).unwrap()));
    }

    #[test]
    fn envy_freeness_implies_ef1((c, profile) in scenario(&GeneratorClass::ALL, 9)) {
        let (alloc, _) = round_robin(&c.padded, &profile).unwrap();
        let report = fairness_report(&c.instance, &alloc.restricted(c.instance.goods())).unwrap();
        prop_assert!(report.ef1_factor >= report.ef_factor);
        let min = report.pair_ratios.iter().map(|p| p.ratio.clone()).min();
        prop_assert_eq!(min.unwrap_or(rrfair::Factor::Unbounded), report.ef1_factor);
    }

    #[test]
    fn generated_classes_are_certified(class in class_strategy(&GeneratorClass::ALL), m in 1usize..=8, seed in any::<u64>()) {
        let c = case(class, 2, m, seed);
        for v in c.instance.valuations() {
            prop_assert!(is_submodular(v).unwrap().holds());
            prop_assert!(is_subadditive(v).unwrap().holds());
            if class.is_cancelable() {
                prop_assert!(is_cancelable(v).unwrap().holds());
            }
        }
    }
}

/// Every bundle agent `agent` can reach by changing its own ranking.
fn reachable_bundles(inst: &Instance, agent: usize, profile: &Profile) -> BTreeSet<u64> {
    let mut rankings = orders(profile);
    all_permutations(inst.goods())
        .into_iter()
        .map(|p| {
            rankings[agent] = p;
            to_bundle(&naive_round_robin(&rankings)[agent]).bits()
        })
        .collect()
}

#[test]
fn bluff_picks_dominate_renamed_deviations() {
    let mut checked = 0;
    for (k, c) in submodular_cases(40, 30_000).iter().enumerate() {
        if c.padded.goods() > 8 {
            continue;
        }
        let order = bluff_order(&c.padded);
        let profile = bluff_profile(&c.padded);
        for agent in 0..c.padded.agents() {
            let x = order.picks(agent);
            for bits in reachable_bundles(&c.padded, agent, &profile) {
                let y = deviation_renaming(&x, Bundle::from_bits(bits), c.padded.valuation(agent))
                    .unwrap();
                for j in 0..x.len() {
                    let mx = marginal(&c.padded, agent, x[j], &x[..j]);
                    let my = marginal(&c.padded, agent, y[j], &x[..j]);
                    assert!(mx >= my, "case {k} agent {agent} position {j}: {mx} < {my}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} deviations checked");
}

#[test]
fn best_response_matches_brute_force_on_small_instances() {
    for (k, c) in mixed_cases(30, 6, 40_000).iter().enumerate() {
        let profile = random_profile(&mut rng(k as u64), c.padded.agents(), c.padded.goods());
        if c.padded.goods() > 6 {
            continue;
        }
        for agent in 0..c.padded.agents() {
            let br = best_response(&c.padded, agent, &profile).unwrap();
            assert_eq!(
                br.value,
                brute_force_best_value(&c.padded, agent, &profile),
                "case {k} agent {agent}"
            );
        }
    }
}

#[test]
fn oxs_value_matches_matching_enumeration() {
    for seed in 0..40 {
        let (graph, edges) = random_oxs(seed, 8);
        let v = rrfair::Valuation::oxs(graph);
        for bits in 0..1u64 << v.goods() {
            let b = Bundle::from_bits(bits);
            assert_eq!(
                v.value(b).unwrap(),
                brute_force_matching(&edges, b),
                "graph {seed} bundle {b}"
            );
        }
    }
}

#[test]
fn ranking_rejects_non_permutations() {
    assert!(Ranking::from_indices(&[0, 0, 1]).is_err());
    assert!(Ranking::from_indices(&[0, 2]).is_err());
    assert!(Ranking::from_indices(&[1, 0, 2]).is_ok());
}

#[test]
fn padding_leaves_equilibrium_factors_unchanged() {
    let mut compared = 0;
    for (k, c) in mixed_cases(120, 8, 77_000).iter().enumerate() {
        if c.padded.goods() == c.instance.goods() || c.padded.goods() > 9 {
            continue;
        }
        let profile = random_profile(&mut rng(k as u64), c.instance.agents(), c.instance.goods());
        let extended = Profile::new(
            profile
                .rankings()
                .iter()
                .map(|r| r.extended(c.padded.goods()))
                .collect(),
        )
        .unwrap();
        let plain = pne_factor(&c.instance, &profile).unwrap();
        let padded = pne_factor(&c.padded, &extended).unwrap();
        assert_eq!(plain.pne_factor, padded.pne_factor, "{:?}", c.spec);
        for (a, b) in plain.per_agent.iter().zip(&padded.per_agent) {
            assert_eq!(a.best.value, b.best.value, "{:?}", c.spec);
        }
        compared += 1;
    }
    assert!(compared >= 30, "only {compared} padded cases");
}
