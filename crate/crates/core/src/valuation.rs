//! Set-function oracles over goods, all in exact rational arithmetic.

use num_traits::Zero;

use crate::bundle::{Bundle, GoodId, MAX_GOODS};
use crate::error::{Error, Result};
use crate::rational::{format_rational, is_nonnegative, Rational};

/// Largest good count a dense [`Table`] may hold.
pub const MAX_TABLE_GOODS: usize = 20;

/// A weighted edge of an OXS graph: good on the left, slot on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OxsEdge {
    pub good: GoodId,
    pub slot: usize,
    pub weight: Rational,
}

/// Bipartite graph between goods and abstract slots. The value of a bundle is
/// the weight of a maximum-weight matching that only uses goods in the bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OxsGraph {
    goods: usize,
    slots: Vec<String>,
    edges: Vec<OxsEdge>,
}

impl OxsGraph {
    pub fn new(goods: usize, slots: Vec<String>, edges: Vec<OxsEdge>) -> Result<Self> {
        check_good_count(goods)?;
        for e in &edges {
            if e.good.0 >= goods {
                return Err(Error::GoodOutOfRange {
                    index: e.good.0,
                    goods,
                });
            }
            if e.slot >= slots.len() {
                return Err(Error::InvalidValuation(format!(
                    "edge references slot {} but only {} slots exist",
                    e.slot,
                    slots.len()
                )));
            }
            if !is_nonnegative(&e.weight) {
                return Err(Error::InvalidValuation(format!(
                    "negative edge weight {}",
                    format_rational(&e.weight)
                )));
            }
        }
        Ok(OxsGraph {
            goods,
            slots,
            edges,
        })
    }

    /// Builds a graph from `(good, slot label, weight)` triples, creating
    /// slots in order of first appearance.
    pub fn from_labeled_edges<S: Into<String>>(
        goods: usize,
        edges: impl IntoIterator<Item = (usize, S, Rational)>,
    ) -> Result<Self> {
        let mut slots: Vec<String> = Vec::new();
        let mut out = Vec::new();
        for (good, label, weight) in edges {
            let label = label.into();
            let slot = match slots.iter().position(|s| *s == label) {
                Some(p) => p,
                None => {
                    slots.push(label);
                    slots.len() - 1
                }
            };
            out.push(OxsEdge {
                good: GoodId(good),
                slot,
                weight,
            });
        }
        OxsGraph::new(goods, slots, out)
    }

    pub fn goods(&self) -> usize {
        self.goods
    }

    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    pub fn edges(&self) -> &[OxsEdge] {
        &self.edges
    }

    /// Maximum-weight matching value restricted to goods in `bundle`.
    pub fn matching_value(&self, bundle: Bundle) -> Rational {
        let edges: Vec<(usize, usize, &Rational)> = self
            .edges
            .iter()
            .filter(|e| bundle.contains(e.good) && !e.weight.is_zero())
            .map(|e| (e.good.0, e.slot, &e.weight))
            .collect();
        max_weight_matching(self.goods, self.slots.len(), &edges)
    }
}

/// Maximum-weight bipartite matching by successive maximum-gain augmenting
/// paths. Each round runs Bellman-Ford over the residual graph (unmatched
/// edges add their weight, matched edges subtract it) from every free left
/// vertex, then augments along the best path ending at a free right vertex.
/// The loop stops once no path has positive gain.
fn max_weight_matching(left: usize, right: usize, edges: &[(usize, usize, &Rational)]) -> Rational {
    let mut matched = vec![false; edges.len()];
    let mut left_mate: Vec<Option<usize>> = vec![None; left];
    let mut right_mate: Vec<Option<usize>> = vec![None; right];

    loop {
        let mut dist_left: Vec<Option<Rational>> = vec![None; left];
        let mut dist_right: Vec<Option<Rational>> = vec![None; right];
        let mut via_right: Vec<Option<usize>> = vec![None; right];
        let mut via_left: Vec<Option<usize>> = vec![None; left];
        for &(l, _, _) in edges {
            if left_mate[l].is_none() {
                dist_left[l] = Some(Rational::zero());
            }
        }

        for _ in 0..=(left + right) {
            let mut changed = false;
            for (e, &(l, r, w)) in edges.iter().enumerate() {
                if matched[e] {
                    if let Some(d) = &dist_right[r] {
                        let cand = d - w;
                        if dist_left[l].as_ref().is_none_or(|cur| cand > *cur) {
                            dist_left[l] = Some(cand);
                            via_left[l] = Some(e);
                            changed = true;
                        }
                    }
                } else if let Some(d) = &dist_left[l] {
                    let cand = d + w;
                    if dist_right[r].as_ref().is_none_or(|cur| cand > *cur) {
                        dist_right[r] = Some(cand);
                        via_right[r] = Some(e);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }

        let mut best: Option<(usize, &Rational)> = None;
        for r in 0..right {
            if right_mate[r].is_some() {
                continue;
            }
            if let Some(d) = &dist_right[r] {
                if d.is_zero() || d < &Rational::zero() {
                    continue;
                }
                if best.is_none_or(|(_, b)| d > b) {
                    best = Some((r, d));
                }
            }
        }
        let Some((end, _)) = best else { break };

        let mut r = end;
        loop {
            let e = via_right[r].expect("reached right vertex has a predecessor");
            matched[e] = true;
            let l = edges[e].0;
            match via_left[l] {
                Some(back) if left_mate[l].is_some() => {
                    matched[back] = false;
                    r = edges[back].1;
                }
                _ => break,
            }
        }

        left_mate.iter_mut().for_each(|m| *m = None);
        right_mate.iter_mut().for_each(|m| *m = None);
        for (e, &(l, r, _)) in edges.iter().enumerate() {
            if matched[e] {
                left_mate[l] = Some(e);
                right_mate[r] = Some(e);
            }
        }
    }

    edges
        .iter()
        .zip(&matched)
        .filter(|(_, &m)| m)
        .fold(Rational::zero(), |acc, ((_, _, w), _)| acc + *w)
}

/// Dense table of values indexed by subset bitmask (bit `t` is good `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    goods: usize,
    values: Vec<Rational>,
}

impl Table {
    /// Requires `2^goods` entries and a zero value on the empty bundle.
    /// Monotonicity is not checked here; see [`crate::classes::is_monotone`].
    pub fn new(goods: usize, values: Vec<Rational>) -> Result<Self> {
        if goods == 0 || goods > MAX_TABLE_GOODS {
            return Err(Error::SizeGuard {
                check: "table valuation",
                goods,
                max: MAX_TABLE_GOODS,
            });
        }
        if values.len() != 1usize << goods {
            return Err(Error::InvalidValuation(format!(
                "table over {goods} goods needs {} entries, got {}",
                1usize << goods,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::NotNormalized(format_rational(&values[0])));
        }
        if let Some(v) = values.iter().find(|v| !is_nonnegative(v)) {
            return Err(Error::InvalidValuation(format!(
                "negative table entry {}",
                format_rational(v)
            )));
        }
        Ok(Table { goods, values })
    }

    pub fn goods(&self) -> usize {
        self.goods
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// A normalized valuation over `m` goods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Additive {
        weights: Vec<Rational>,
    },
    /// `min(cap, sum of weights)`.
    BudgetAdditive {
        weights: Vec<Rational>,
        cap: Rational,
    },
    /// Maximum single weight in the bundle.
    UnitDemand {
        weights: Vec<Rational>,
    },
    Oxs(OxsGraph),
    Table(Table),
}

fn check_good_count(goods: usize) -> Result<()> {
    if goods == 0 {
        return Err(Error::InvalidValuation("valuation over zero goods".into()));
    }
    if goods > MAX_GOODS {
        return Err(Error::TooManyGoods {
            goods,
            max: MAX_GOODS,
        });
    }
    Ok(())
}

fn check_weights(weights: &[Rational]) -> Result<()> {
    check_good_count(weights.len())?;
    match weights.iter().find(|w| !is_nonnegative(w)) {
        Some(w) => Err(Error::InvalidValuation(format!(
            "negative weight {}",
            format_rational(w)
        ))),
        None => Ok(()),
    }
}

impl Valuation {
    pub fn additive(weights: Vec<Rational>) -> Result<Self> {
        check_weights(&weights)?;
        Ok(Valuation::Additive { weights })
    }

    pub fn budget_additive(weights: Vec<Rational>, cap: Rational) -> Result<Self> {
        check_weights(&weights)?;
        if !is_nonnegative(&cap) {
            return Err(Error::InvalidValuation("negative budget cap".into()));
        }
        Ok(Valuation::BudgetAdditive { weights, cap })
    }

    pub fn unit_demand(weights: Vec<Rational>) -> Result<Self> {
        check_weights(&weights)?;
        Ok(Valuation::UnitDemand { weights })
    }

    pub fn oxs(graph: OxsGraph) -> Self {
        Valuation::Oxs(graph)
    }

    pub fn table(goods: usize, values: Vec<Rational>) -> Result<Self> {
        Ok(Valuation::Table(Table::new(goods, values)?))
    }

    pub fn goods(&self) -> usize {
        match self {
            Valuation::Additive { weights }
            | Valuation::BudgetAdditive { weights, .. }
            | Valuation::UnitDemand { weights } => weights.len(),
            Valuation::Oxs(g) => g.goods,
            Valuation::Table(t) => t.goods,
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Valuation::Additive { .. } => "additive",
            Valuation::BudgetAdditive { .. } => "budget_additive",
            Valuation::UnitDemand { .. } => "unit_demand",
            Valuation::Oxs(_) => "oxs",
            Valuation::Table(_) => "table",
        }
    }

    fn check_bundle(&self, bundle: Bundle) -> Result<()> {
        let goods = self.goods();
        if bundle.upper_bound() > goods {
            return Err(Error::GoodOutOfRange {
                index: bundle.upper_bound() - 1,
                goods,
            });
        }
        Ok(())
    }

    fn check_good(&self, good: GoodId) -> Result<()> {
        if good.0 >= self.goods() {
            return Err(Error::GoodOutOfRange {
                index: good.0,
                goods: self.goods(),
            });
        }
        Ok(())
    }

    /// Exact value of `bundle`.
    pub fn value(&self, bundle: Bundle) -> Result<Rational> {
        self.check_bundle(bundle)?;
        Ok(self.eval(bundle))
    }

    /// `value(bundle + good) - value(bundle)`.
    pub fn marginal(&self, good: GoodId, bundle: Bundle) -> Result<Rational> {
        self.check_good(good)?;
        self.check_bundle(bundle)?;
        Ok(self.eval_marginal(good, bundle))
    }

    /// Value without range checks; callers guarantee `bundle` fits.
    pub(crate) fn eval(&self, bundle: Bundle) -> Rational {
        match self {
            Valuation::Additive { weights } => bundle
                .iter()
                .fold(Rational::zero(), |acc, g| acc + &weights[g.0]),
            Valuation::BudgetAdditive { weights, cap } => {
                let sum = bundle
                    .iter()
                    .fold(Rational::zero(), |acc, g| acc + &weights[g.0]);
                if &sum > cap {
                    cap.clone()
                } else {
                    sum
                }
            }
            Valuation::UnitDemand { weights } => bundle
                .iter()
                .map(|g| &weights[g.0])
                .max()
                .cloned()
                .unwrap_or_else(Rational::zero),
            Valuation::Oxs(graph) => graph.matching_value(bundle),
            Valuation::Table(t) => t.values[bundle.bits() as usize].clone(),
        }
    }

    pub(crate) fn eval_marginal(&self, good: GoodId, bundle: Bundle) -> Rational {
        if bundle.contains(good) {
            return Rational::zero();
        }
        match self {
            Valuation::Additive { weights } => weights[good.0].clone(),
            _ => self.eval(bundle.with(good)) - self.eval(bundle),
        }
    }

    /// Value of each singleton, indexed by good.
    pub fn singleton_values(&self) -> Vec<Rational> {
        (0..self.goods())
            .map(|g| self.eval(Bundle::singleton(GoodId(g))))
            .collect()
    }

    /// Every subset value, indexed by bitmask. Guarded by [`MAX_TABLE_GOODS`].
    pub fn tabulate(&self) -> Result<Vec<Rational>> {
        let goods = self.goods();
        if goods > MAX_TABLE_GOODS {
            return Err(Error::SizeGuard {
                check: "tabulation",
                goods,
                max: MAX_TABLE_GOODS,
            });
        }
        if let Valuation::Table(t) = self {
            return Ok(t.values.clone());
        }
        Ok((0..1u64 << goods)
            .map(|bits| self.eval(Bundle::from_bits(bits)))
            .collect())
    }

    /// The same valuation over `goods + extra` goods, where the new goods
    /// have zero marginal value with respect to every bundle.
    pub fn with_dummies(&self, extra: usize) -> Result<Valuation> {
        if extra == 0 {
            return Ok(self.clone());
        }
        let goods = self.goods() + extra;
        check_good_count(goods)?;
        let pad = |w: &Vec<Rational>| {
            let mut w = w.clone();
            w.resize(goods, Rational::zero());
            w
        };
        Ok(match self {
            Valuation::Additive { weights } => Valuation::Additive {
                weights: pad(weights),
            },
            Valuation::BudgetAdditive { weights, cap } => Valuation::BudgetAdditive {
                weights: pad(weights),
                cap: cap.clone(),
            },
            Valuation::UnitDemand { weights } => Valuation::UnitDemand {
                weights: pad(weights),
            },
            Valuation::Oxs(g) => Valuation::Oxs(OxsGraph {
                goods,
                slots: g.slots.clone(),
                edges: g.edges.clone(),
            }),
            Valuation::Table(t) => {
                if goods > MAX_TABLE_GOODS {
                    return Err(Error::SizeGuard {
                        check: "table padding",
                        goods,
                        max: MAX_TABLE_GOODS,
                    });
                }
                let mask = (1usize << t.goods) - 1;
                let values = (0..1usize << goods)
                    .map(|bits| t.values[bits & mask].clone())
                    .collect();
                Valuation::Table(Table { goods, values })
            }
        })
    }
}
