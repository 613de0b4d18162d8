//! Independent oracles and seeded workloads shared by the integration tests.
//!
//! Nothing here calls the library's mechanism, search or matching code; the
//! oracles are written from the definitions and kept deliberately naive.

#![allow(dead_code)]

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rrfair::instances::generate::{generate, GeneratorClass, GeneratorSpec};
use rrfair::valuation::OxsEdge;
use rrfair::{
    pad_to_multiple, rat, Bundle, GoodId, Instance, OxsGraph, Profile, Ranking, Rational, Valuation,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Round-Robin straight from the definition: on each step the picker scans
/// its whole ranking for the first good nobody holds yet.
pub fn naive_round_robin(rankings: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rankings.len();
    let m = rankings[0].len();
    let mut taken = vec![false; m];
    let mut bundles = vec![Vec::new(); n];
    for step in 0..m {
        let agent = step % n;
        let good = *rankings[agent]
            .iter()
            .find(|&&g| !taken[g])
            .expect("goods remain");
        taken[good] = true;
        bundles[agent].push(good);
    }
    bundles
}

pub fn to_bundle(goods: &[usize]) -> Bundle {
    goods.iter().map(|&g| GoodId(g)).collect()
}

pub fn orders(profile: &Profile) -> Vec<Vec<usize>> {
    profile
        .rankings()
        .iter()
        .map(|r| r.order().iter().map(|g| g.0).collect())
        .collect()
}

/// Every permutation of `0..m`, by recursive insertion.
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for smaller in all_permutations(m - 1) {
        for pos in 0..=smaller.len() {
            let mut p = smaller.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out
}

/// Maximum of `v_agent` over all `m!` replacements of the agent's ranking.
pub fn brute_force_best_value(inst: &Instance, agent: usize, profile: &Profile) -> Rational {
    let mut rankings = orders(profile);
    let v = inst.valuation(agent);
    let mut best: Option<Rational> = None;
    for candidate in all_permutations(inst.goods()) {
        rankings[agent] = candidate;
        let bundles = naive_round_robin(&rankings);
        let value = v.value(to_bundle(&bundles[agent])).unwrap();
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    best.unwrap()
}

/// OXS value by enumerating every edge subset that forms a matching inside
/// `bundle`.
pub fn brute_force_matching(goods_edges: &[(usize, usize, Rational)], bundle: Bundle) -> Rational {
    let e = goods_edges.len();
    let mut best = Rational::zero();
    for mask in 0u32..1 << e {
        let chosen: Vec<&(usize, usize, Rational)> = (0..e)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| &goods_edges[k])
            .collect();
        let mut left = std::collections::HashSet::new();
        let mut right = std::collections::HashSet::new();
        let valid = chosen
            .iter()
            .all(|(g, s, _)| bundle.contains(GoodId(*g)) && left.insert(*g) && right.insert(*s));
        if valid {
            let w = chosen
                .iter()
                .fold(Rational::zero(), |acc, (_, _, w)| acc + w);
            if w > best {
                best = w;
            }
        }
    }
    best
}

/// A random OXS graph with at most `max_edges` edges and rational weights.
pub fn random_oxs(seed: u64, max_edges: usize) -> (OxsGraph, Vec<(usize, usize, Rational)>) {
    let mut r = rng(seed);
    let goods = r.gen_range(1..=5);
    let slots = r.gen_range(1..=4);
    let edges: Vec<(usize, usize, Rational)> = (0..r.gen_range(0..=max_edges))
        .map(|_| {
            (
                r.gen_range(0..goods),
                r.gen_range(0..slots),
                rat(r.gen_range(0..=12), r.gen_range(1..=4)),
            )
        })
        .collect();
    let graph = OxsGraph::new(
        goods,
        (0..slots).map(|s| format!("s{s}")).collect(),
        edges
            .iter()
            .map(|(g, s, w)| OxsEdge {
                good: GoodId(*g),
                slot: *s,
                weight: w.clone(),
            })
            .collect(),
    )
    .unwrap();
    (graph, edges)
}

pub fn random_ranking(r: &mut ChaCha8Rng, goods: usize) -> Ranking {
    let mut order: Vec<GoodId> = (0..goods).map(GoodId).collect();
    order.shuffle(r);
    Ranking::new(order).unwrap()
}

pub fn random_profile(r: &mut ChaCha8Rng, agents: usize, goods: usize) -> Profile {
    Profile::new((0..agents).map(|_| random_ranking(r, goods)).collect()).unwrap()
}

pub const CANCELABLE: [GeneratorClass; 3] = [
    GeneratorClass::Additive,
    GeneratorClass::BudgetAdditive,
    GeneratorClass::UnitDemand,
];
pub const SUBMODULAR: [GeneratorClass; 2] = [GeneratorClass::Oxs, GeneratorClass::SubmodularTable];

/// A generated instance together with its padded copy.
#[derive(Clone, Debug)]
pub struct Case {
    pub spec: GeneratorSpec,
    pub instance: Instance,
    pub padded: Instance,
}

pub fn case(class: GeneratorClass, agents: usize, goods: usize, seed: u64) -> Case {
    let spec = GeneratorSpec::new(class, agents, goods, seed);
    let instance = generate(&spec).unwrap();
    let (padded, _) = pad_to_multiple(&instance).unwrap();
    Case {
        spec,
        instance,
        padded,
    }
}

/// Cancelable instances: classes in rotation, `n ∈ {2, 3}`, `2 <= m <= 9`.
pub fn cancelable_cases(count: usize, base_seed: u64) -> Vec<Case> {
    (0..count)
        .map(|k| {
            case(
                CANCELABLE[k % 3],
                2 + (k / 3) % 2,
                2 + (k * 7) % 8,
                base_seed + k as u64,
            )
        })
        .collect()
}

/// Submodular instances (OXS and coverage tables), `n ∈ {2, 3}`, `2 <= m <= 8`.
pub fn submodular_cases(count: usize, base_seed: u64) -> Vec<Case> {
    (0..count)
        .map(|k| {
            case(
                SUBMODULAR[k % 2],
                2 + (k / 2) % 2,
                2 + (k * 5) % 7,
                base_seed + k as u64,
            )
        })
        .collect()
}

/// All five classes, `n ∈ {1, 2, 3}`, `1 <= m <= max_goods`.
pub fn mixed_cases(count: usize, max_goods: usize, base_seed: u64) -> Vec<Case> {
    (0..count)
        .map(|k| {
            case(
                GeneratorClass::ALL[k % 5],
                1 + (k / 5) % 3,
                1 + (k * 3) % max_goods,
                base_seed + k as u64,
            )
        })
        .collect()
}

pub fn value(v: &Valuation, goods: &[usize]) -> Rational {
    v.value(to_bundle(goods)).unwrap()
}
