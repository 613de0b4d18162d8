//! Small worked examples with hand-derived values, kept as regressions.

use rrfair::equilibria::ProfileSpace;
use rrfair::instances::fixtures::Fixture;
use rrfair::{
    best_response, bluff_order, bluff_profile, bundle, deviation_renaming, ef1_from_perspective,
    ef_factor, fairness_report, greedy_response, int, is_cancelable, is_monotone, is_submodular,
    pad_to_multiple, pne_factor, profile_space_scan, rat, round_robin, truthful_profile,
    truthful_ranking, verify_fairness_bound, Bundle, Factor, FairnessBound, GoodId, Instance,
    Profile, Ranking, Rational, ScanMode, Valuation,
};

fn eps3() -> [Rational; 3] {
    [rat(1, 100), rat(2, 100), rat(3, 100)]
}

fn bluff_tightness() -> Instance {
    Fixture::named("bluff-tightness").unwrap().build().unwrap()
}

fn additive_tightness() -> Instance {
    Fixture::named("additive-tightness")
        .unwrap()
        .build()
        .unwrap()
}

fn oxs_lower_bound() -> Instance {
    Fixture::named("oxs-lower-bound").unwrap().build().unwrap()
}

fn no_pne() -> Instance {
    Fixture::NoPne.build().unwrap()
}

fn padded(inst: &Instance) -> Instance {
    pad_to_multiple(inst).unwrap().0
}

fn ranking(order: &[usize], goods: usize) -> Ranking {
    Ranking::from_indices(order).unwrap().extended(goods)
}

fn additive(rows: &[&[i64]]) -> Instance {
    Instance::new(
        rows.iter()
            .map(|w| Valuation::additive(w.iter().map(|&x| int(x)).collect()).unwrap())
            .collect(),
    )
    .unwrap()
}

/// The oxs-lower-bound scenario: three truthful agents and a fixed fourth.
fn oxs_scenario(inst: &Instance) -> Profile {
    let mut rankings: Vec<Ranking> = (0..3)
        .map(|i| truthful_ranking(inst.valuation(i)))
        .collect();
    rankings.push(ranking(&[2, 5, 7, 0, 1, 3, 4, 6, 8], inst.goods()));
    Profile::new(rankings).unwrap()
}

fn additive_scenario(inst: &Instance) -> Profile {
    Profile::new(vec![
        truthful_ranking(inst.valuation(0)),
        ranking(&[4, 3, 0, 1, 2], inst.goods()),
    ])
    .unwrap()
}

#[test]
fn values_of_fixture_bundles() {
    assert_eq!(
        bluff_tightness()
            .valuation(1)
            .value(bundle(&[0, 1]))
            .unwrap(),
        int(3)
    );
    let prop10 = oxs_lower_bound();
    assert_eq!(
        prop10.valuation(3).value(bundle(&[5, 7])).unwrap(),
        int(1) + rat(1, 1000)
    );
    let prop3 = no_pne();
    assert_eq!(prop3.valuation(0).value(bundle(&[1, 2])).unwrap(), int(4));
    for v in prop3.valuations() {
        assert_eq!(v.value(Bundle::EMPTY).unwrap(), int(0));
    }
}

#[test]
fn marginals() {
    let v1 = no_pne().valuation(0).clone();
    assert_eq!(v1.marginal(GoodId(1), bundle(&[0])).unwrap(), int(1));
    assert_eq!(v1.marginal(GoodId(1), bundle(&[1, 3])).unwrap(), int(0));
    let add = Valuation::additive(vec![int(4), int(7), int(1)]).unwrap();
    assert_eq!(add.marginal(GoodId(1), bundle(&[0, 2])).unwrap(), int(7));
}

#[test]
fn class_verdicts_on_the_no_pne_fixture() {
    let v1 = no_pne().valuation(0).clone();
    assert!(is_monotone(&v1).unwrap().holds());
    assert!(is_submodular(&v1).unwrap().holds());
    let verdict = is_cancelable(&v1).unwrap();
    let w = verdict.witness().expect("not cancelable");
    assert_eq!(
        (w.first, w.second, w.good),
        (bundle(&[0]), bundle(&[1]), GoodId(3))
    );
    assert!(v1.value(w.first.with(w.good)).unwrap() > v1.value(w.second.with(w.good)).unwrap());
}

#[test]
fn padding_sizes() {
    assert_eq!(pad_to_multiple(&oxs_lower_bound()).unwrap().0.goods(), 12);
    assert_eq!(pad_to_multiple(&oxs_lower_bound()).unwrap().1, 3);
    assert_eq!(pad_to_multiple(&no_pne()).unwrap().1, 0);
    let (single, extra) = pad_to_multiple(&additive(&[&[1], &[2], &[3]])).unwrap();
    assert_eq!((single.goods(), extra), (3, 2));
}

#[test]
fn round_robin_outcomes() {
    let inst = padded(&bluff_tightness());
    let same = Profile::uniform(Ranking::identity(inst.goods()), 2);
    let (alloc, _) = round_robin(&inst, &same).unwrap();
    assert_eq!(
        alloc.restricted(5).bundles(),
        &[bundle(&[0, 2, 4]), bundle(&[1, 3])]
    );

    let inst = padded(&additive_tightness());
    let (alloc, _) = round_robin(&inst, &additive_scenario(&inst)).unwrap();
    assert_eq!(
        alloc.restricted(5).bundles(),
        &[bundle(&[0, 1, 2]), bundle(&[3, 4])]
    );

    let inst = padded(&oxs_lower_bound());
    let (alloc, _) = round_robin(&inst, &oxs_scenario(&inst)).unwrap();
    assert_eq!(
        alloc.restricted(9).bundles(),
        &[
            bundle(&[0, 3, 4]),
            bundle(&[1, 6]),
            bundle(&[2, 8]),
            bundle(&[5, 7])
        ]
    );
}

#[test]
fn truthful_rankings() {
    let identity = Ranking::identity(5);
    assert_eq!(
        truthful_ranking(additive_tightness().valuation(0)),
        identity
    );
    assert_eq!(truthful_ranking(bluff_tightness().valuation(1)), identity);
    let flat = Valuation::unit_demand(vec![int(2); 4]).unwrap();
    assert_eq!(truthful_ranking(&flat), Ranking::identity(4));
}

#[test]
fn bluff_orders() {
    for inst in [bluff_tightness(), additive_tightness()] {
        let order = bluff_order(&padded(&inst));
        assert_eq!(&order.order.order()[..5], Ranking::identity(5).order());
    }
    let single = additive(&[&[2, 9, 4, 7]]);
    assert_eq!(
        bluff_order(&single).order,
        Ranking::from_indices(&[1, 3, 2, 0]).unwrap()
    );
    let inst = padded(&bluff_tightness());
    let profile = bluff_profile(&inst);
    assert_eq!(profile.ranking(0), profile.ranking(1));
    let (alloc, _) = round_robin(&inst, &profile).unwrap();
    assert_eq!(
        alloc.restricted(5).bundles(),
        &[bundle(&[0, 2, 4]), bundle(&[1, 3])]
    );
}

#[test]
fn deviation_renamings() {
    let add = Valuation::additive(vec![int(5), int(1), int(3), int(0)]).unwrap();
    let x = [GoodId(3), GoodId(1), GoodId(0)];
    assert_eq!(
        deviation_renaming(&x, bundle(&[0, 1, 2]), &add).unwrap(),
        vec![GoodId(0), GoodId(2), GoodId(1)]
    );
    assert_eq!(
        deviation_renaming(&x, bundle(&[2]), &add).unwrap(),
        vec![GoodId(2)]
    );

    let v1 = no_pne().valuation(0).clone();
    assert_eq!(
        deviation_renaming(&[GoodId(0), GoodId(3)], bundle(&[1, 2]), &v1).unwrap(),
        vec![GoodId(1), GoodId(2)]
    );
}

#[test]
fn greedy_responses() {
    let inst = padded(&bluff_tightness());
    let others = truthful_profile(&inst);
    let ranking = greedy_response(&inst, 1, &others).unwrap();
    assert_eq!(&ranking.order()[..2], &[GoodId(1), GoodId(3)]);
    let (alloc, _) = round_robin(&inst, &others.with_ranking(1, ranking)).unwrap();
    assert_eq!(inst.valuation(1).value(alloc.bundle(1)).unwrap(), int(1));

    let inst = additive(&[&[1, 8, 3, 6], &[4, 2, 9, 5]]);
    let others = Profile::uniform(Ranking::from_indices(&[1, 0, 3, 2]).unwrap(), 2);
    let ranking = greedy_response(&inst, 1, &others).unwrap();
    assert_eq!(&ranking.order()[..2], &[GoodId(2), GoodId(3)]);

    let single = additive(&[&[3, 5, 1]]);
    let ranking = greedy_response(&single, 0, &truthful_profile(&single)).unwrap();
    assert_eq!(ranking, truthful_ranking(single.valuation(0)));
}

#[test]
fn envy_ratios() {
    let [e1, e2, e3] = eps3();
    let inst = bluff_tightness();
    let alloc = rrfair::Allocation::new(vec![bundle(&[0, 2, 4]), bundle(&[1, 3])]);
    let v1 = inst.valuation(0);
    assert_eq!(v1.value(alloc.bundle(0)).unwrap(), int(4) - &e1 - &e3);
    assert_eq!(v1.value(alloc.bundle(1)).unwrap(), int(2) - &e2);
    let report = fairness_report(&inst, &alloc).unwrap();
    assert_eq!(
        report.pair(1, 0).unwrap().ratio,
        Factor::Bounded(rat(25, 49))
    );
    assert_eq!(report.pair(1, 0).unwrap().removed, GoodId(0));
    // 25/49 sits just above 1/2 + 1/100, so the threshold is 25/49 itself.
    assert!(ef1_from_perspective(&inst, &alloc, 1, &(rat(1, 2) + rat(1, 100))).unwrap());
    assert!(ef1_from_perspective(&inst, &alloc, 1, &rat(25, 49)).unwrap());
    assert!(!ef1_from_perspective(&inst, &alloc, 1, &(rat(25, 49) + rat(1, 10_000))).unwrap());
    assert!(ef1_from_perspective(&inst, &alloc, 1, &int(0)).unwrap());

    let single = additive(&[&[1, 2]]);
    let whole = rrfair::Allocation::new(vec![bundle(&[0, 1])]);
    assert_eq!(ef_factor(&single, &whole).unwrap(), Factor::Unbounded);

    let twins = additive(&[&[2, 1, 1, 2], &[2, 1, 1, 2]]);
    let halves = rrfair::Allocation::new(vec![bundle(&[0, 1]), bundle(&[2, 3])]);
    assert_eq!(ef_factor(&twins, &halves).unwrap(), Factor::Bounded(int(1)));

    let singles = rrfair::Allocation::new(vec![bundle(&[0, 1]), bundle(&[2]), bundle(&[3])]);
    let three = additive(&[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]);
    let report = fairness_report(&three, &singles).unwrap();
    assert!(report.pair(0, 1).unwrap().ratio.is_unbounded());
    assert!(report.pair(0, 2).unwrap().ratio.is_unbounded());

    let inst = oxs_lower_bound();
    let alloc = rrfair::Allocation::new(vec![
        bundle(&[0, 3, 4]),
        bundle(&[1, 6]),
        bundle(&[2, 8]),
        bundle(&[5, 7]),
    ]);
    let (eps1, eps4, beta) = (rat(1, 1000), rat(1, 2000), rat(3, 5));
    let expected = (int(1) + eps1) / (int(4) * beta - eps4);
    assert_eq!(
        fairness_report(&inst, &alloc)
            .unwrap()
            .pair(3, 0)
            .unwrap()
            .ratio,
        Factor::Bounded(expected)
    );
}

#[test]
fn exact_best_responses() {
    let [e1, e2, _] = eps3();
    let inst = padded(&bluff_tightness());
    let br = best_response(&inst, 1, &truthful_profile(&inst)).unwrap();
    assert_eq!(br.value, int(2) - e1 - e2);
    assert_eq!(br.bundle.intersection(Bundle::full(5)), bundle(&[2, 3]));

    let (delta, beta) = (rat(1, 1000), rat(1, 2));
    let inst = padded(&additive_tightness());
    let br = best_response(&inst, 1, &additive_scenario(&inst)).unwrap();
    assert_eq!(br.value, int(3) * &beta + rat(1, 2) + int(2) * &delta);
    assert_eq!(br.bundle.intersection(Bundle::full(5)), bundle(&[1, 3]));

    let inst = padded(&oxs_lower_bound());
    let br = best_response(&inst, 3, &oxs_scenario(&inst)).unwrap();
    assert_eq!(br.value, int(2) * rat(3, 5) + rat(1, 1000));
}

#[test]
fn equilibrium_factors() {
    let inst = padded(&bluff_tightness());
    assert_eq!(
        pne_factor(&inst, &bluff_profile(&inst)).unwrap().pne_factor,
        rat(100, 197)
    );

    let inst = padded(&oxs_lower_bound());
    let (eps1, beta) = (rat(1, 1000), rat(3, 5));
    let expected = (int(1) + &eps1) / (int(2) * beta + eps1);
    assert_eq!(expected, rat(1001, 1201));
    assert_eq!(
        pne_factor(&inst, &oxs_scenario(&inst)).unwrap().pne_factor,
        expected
    );

    let cancelable = padded(&additive(&[&[5, 1, 3, 2, 2], &[0, 4, 4, 1, 3]]));
    assert_eq!(
        pne_factor(&cancelable, &bluff_profile(&cancelable))
            .unwrap()
            .pne_factor,
        int(1)
    );
}

#[test]
fn scans() {
    let max = profile_space_scan(&no_pne(), ScanMode::Exhaustive)
        .unwrap()
        .map(|e| e.unwrap().equilibrium.pne_factor)
        .max()
        .unwrap();
    assert_eq!(max, rat(3, 4));

    let single = additive(&[&[1, 3, 2]]);
    for entry in profile_space_scan(&single, ScanMode::Exhaustive).unwrap() {
        assert_eq!(entry.unwrap().equilibrium.pne_factor, int(1));
    }
    assert_eq!(
        ProfileSpace::new(1, 3, ScanMode::Exhaustive).unwrap().len(),
        6
    );
}

#[test]
fn fairness_bounds() {
    let inst = additive_tightness();
    let (padded_inst, _) = pad_to_multiple(&inst).unwrap();
    let check = verify_fairness_bound(&padded_inst, &additive_scenario(&padded_inst)).unwrap();
    assert_eq!(check.kind, FairnessBound::TwoAdditive);
    assert_eq!(check.alpha, rat(1, 2));
    assert_eq!(check.ef1, Factor::Bounded(rat(1001, 3001)));
    assert_eq!(check.bound, rat(1001, 3003));
    assert!(check.holds);

    let inst = additive(&[&[5, 1, 3, 2], &[0, 4, 4, 1]]);
    let check = verify_fairness_bound(&inst, &bluff_profile(&inst)).unwrap();
    assert_eq!((check.alpha.clone(), check.bound.clone()), (int(1), int(1)));
    assert!(check.ef1.at_least(&int(1)));
}
