//! Counterexample instances, each with the properties it is known to exhibit.
//!
//! Every fixture carries its own list of expectations and can verify them by
//! exhaustive search, so a regression in any checker shows up as a failing
//! fixture.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::enumerate::allocation_classes;
use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::model::{Allocation, Instance};
use crate::notion::Notion;
use crate::picking::{check_wef_prefix_condition, check_wprop_prefix_condition, divisor_sequence, DivisorFunction};
use crate::rational::{floor_int, format_rational, int, ratio};
use crate::shares::{share, shares_of, ShareKind};
use crate::welfare::{mwnw_optima, weg_optima};
use crate::Rational;

/// Identical items for every agent, with the given weights.
fn identical(weights: Vec<Rational>, m: usize) -> Result<Instance> {
    Instance::identical(weights, m)
}

fn nonnegative(name: &str, v: &Rational) -> Result<()> {
    if v.is_negative() {
        return Err(Error::ParameterViolation(format!("{name} must be nonnegative, got {v}")));
    }
    Ok(())
}

/// An identical-items instance in which no allocation is both WPROP(x, y) and
/// WPROP(x', y'). Requires `x' + y < 1` or `x + y' < 1`.
pub fn incompatibility_instance(x: &Rational, xp: &Rational, y: &Rational, yp: &Rational) -> Result<Instance> {
    for (name, v) in [("x", x), ("x'", xp), ("y", y), ("y'", yp)] {
        nonnegative(name, v)?;
    }
    let one = Rational::one();
    if xp + y >= one {
        if x + yp < one {
            return incompatibility_instance(xp, x, yp, y);
        }
        return Err(Error::ParameterViolation(format!(
            "needs x'+y < 1 or x+y' < 1, got x={x}, y={y}, x'={xp}, y'={yp}"
        )));
    }
    // Smallest n with 1 - y - (y' + x'n)/(n-1) > 0.
    let slack = |n: usize| {
        let nq = int(n as i64);
        &one - y - (yp + xp * &nq) / (&nq - &one)
    };
    let mut n = 2;
    while !slack(n).is_positive() {
        n += 1;
    }
    let nq = int(n as i64);
    let rhs = slack(n);
    let c = &nq * x + &one - &nq * xp;
    let c_pos = if c.is_positive() { c } else { Rational::zero() };
    let mut eps = std::cmp::min(&rhs / (c_pos + &one), ratio(1, 2 * n as i64));
    loop {
        // Smallest integer m with eps m - eps n x - y > 0.
        let lower = &nq * x + y / &eps;
        let m = floor_int(&lower) + BigInt::one();
        let mq = Rational::from_integer(m.clone());
        let big = (&one - (&nq - &one) * &eps) * (&mq - &nq * xp) - yp;
        if big > &mq - &nq + &one {
            let m: usize = m.try_into().map_err(|_| Error::ParameterViolation("item count overflow".into()))?;
            let mut weights = vec![eps.clone(); n - 1];
            weights.push(&one - (&nq - &one) * &eps);
            return identical(weights, m);
        }
        eps /= int(2);
    }
}

/// An identical-items instance in which every maximum weighted Nash welfare
/// allocation fails WPROP(x, 1 - x).
pub fn mwnw_violates_wprop_instance(x: &Rational) -> Result<Instance> {
    crate::rational::check_unit("x", x)?;
    let one = Rational::one();
    if x < &one {
        let bound = (int(2) - x) / (&one - x);
        let w1 = Rational::from_integer(floor_int(&bound)) + &one;
        let n = floor_int(&w1) + BigInt::from(2);
        let n: usize = n.try_into().expect("small agent count");
        let nq = int(n as i64);
        let rest = (&nq - &w1) / (&nq - &one);
        let mut weights = vec![w1];
        weights.extend(std::iter::repeat_n(rest, n - 1));
        return identical(weights, n);
    }
    // Weights (1, k) with k + 4 items: grow k until every optimum leaves the
    // light agent a single item.
    for k in 1..=64usize {
        let weights = vec![int(1), int(k as i64)];
        let opt = crate::welfare::max_weighted_nash_counts(&weights, k + 4);
        if opt.all.iter().all(|c| c.counts()[0] == 1) {
            return identical(weights, k + 4);
        }
    }
    unreachable!("k = 6 already works")
}

/// `n` agents, `2n - 1` items, weights `(eps, ..., eps, 1 - (n-1) eps)`. No
/// allocation gives every agent more than roughly `1/n` of their NMMS.
pub fn nmms_upper_bound_instance(n: usize, eps: &Rational) -> Result<Instance> {
    if n < 2 {
        return Err(Error::ParameterViolation(format!("needs n >= 2, got {n}")));
    }
    if !eps.is_positive() || eps >= &ratio(1, n as i64) {
        return Err(Error::ParameterViolation(format!("needs 0 < eps < 1/{n}, got {eps}")));
    }
    let big = Rational::one() - int(n as i64 - 1) * eps;
    let mut weights = vec![eps.clone(); n - 1];
    weights.push(big.clone());
    let m = 2 * n - 1;
    let light: Vec<Rational> = (0..m)
        .map(|j| match j {
            j if j + 1 < n => eps.clone(),
            j if j + 1 == n => big.clone(),
            _ => Rational::zero(),
        })
        .collect();
    let heavy: Vec<Rational> = (0..m)
        .map(|j| if j < n { &big / int(n as i64) } else { eps.clone() })
        .collect();
    let mut rows = vec![light; n - 1];
    rows.push(heavy);
    Instance::new(weights, rows)
}

/// `(1 + (n-1)^2 eps) / (n (1 - (n-1) eps)^2)`, the best NMMS fraction the
/// heavy agent can be guaranteed in [`nmms_upper_bound_instance`].
pub fn nmms_upper_bound(n: usize, eps: &Rational) -> Rational {
    let k = int(n as i64 - 1);
    let big = Rational::one() - &k * eps;
    (Rational::one() + &k * &k * eps) / (int(n as i64) * &big * &big)
}

/// `n` identical valuations: `n - 1` items of value 1 and one of value `y`.
/// Agent 0 is light enough that the returned allocation, which gives them
/// nothing, is WEF(0, y), although their NMMS is positive.
pub fn wefxy_no_nmms(n: usize, y: &Rational) -> Result<(Instance, Allocation)> {
    if n < 2 {
        return Err(Error::ParameterViolation(format!("needs n >= 2, got {n}")));
    }
    if !y.is_positive() || y > &Rational::one() {
        return Err(Error::ParameterViolation(format!("needs 0 < y <= 1, got {y}")));
    }
    let k = int(n as i64 - 1);
    let w = Rational::one() / ((Rational::one() + y.recip()) * &k + Rational::one());
    let rest = (Rational::one() - &w) / &k;
    let mut weights = vec![w];
    weights.extend(std::iter::repeat_n(rest, n - 1));
    let mut row = vec![int(1); n - 1];
    row.push(y.clone());
    let inst = Instance::shared(weights, row)?;
    let mut bundles = vec![vec![], vec![0, n - 1]];
    bundles.extend((2..n).map(|j| vec![j - 1]));
    let a = Allocation::from_bundles(bundles, n)?;
    Ok((inst, a))
}

/// A rational strictly above `sqrt(v)`.
fn sqrt_above(v: &Rational) -> Rational {
    let scale = BigInt::from(1000);
    let (p, q) = (v.numer(), v.denom());
    let root = (p * q * &scale * &scale).sqrt() + BigInt::one();
    Rational::new(root, q * &scale)
}

/// `n` agents and `n` items. Agents `0..n-1` each value only their own item;
/// the last agent values item `j` at `w_j`. The returned allocation is
/// WEF(x, 1 - x) yet leaves the last agent, whose WMMS is positive, with
/// nothing. Requires `x < 1`.
pub fn wef_no_wmms(n: usize, x: &Rational) -> Result<(Instance, Allocation)> {
    if n < 2 {
        return Err(Error::ParameterViolation(format!("needs n >= 2, got {n}")));
    }
    if x.is_negative() || x >= &Rational::one() {
        return Err(Error::ParameterViolation(format!("needs 0 <= x < 1, got {x}")));
    }
    let s = sqrt_above(&((int(5) - x) / (Rational::one() - x)));
    let gamma = (Rational::one() + s) / int(2) + ratio(1, 10);
    // Weights decrease by one down to gamma, then 1 for the last agent.
    let mut weights: Vec<Rational> = (0..n - 1).map(|i| &gamma + int((n - 2 - i) as i64)).collect();
    weights.push(int(1));
    let mut rows: Vec<Vec<Rational>> = (0..n - 1)
        .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect();
    rows.push(weights.clone());
    let inst = Instance::new(weights, rows)?;
    let mut bundles: Vec<Vec<usize>> = (0..n - 2).map(|i| vec![i]).collect();
    bundles.push(vec![n - 2, n - 1]);
    bundles.push(vec![]);
    let a = Allocation::from_bundles(bundles, n)?;
    Ok((inst, a))
}

/// `n >= 3` agents and `n` items, `w_0 = 1 - 1/k`. Giving item `i` to agent
/// `i` is NMMS-fair, but agent 0 gets less than `1/(k-1)` of their WMMS.
pub fn nmms_no_wmms(n: usize, k: usize) -> Result<(Instance, Allocation)> {
    if n < 3 || k < 3 {
        return Err(Error::ParameterViolation(format!("needs n >= 3 and k >= 3, got n={n}, k={k}")));
    }
    let r = ratio(1, k as i64);
    let t = &r / int((n * (n + 1)) as i64);
    let w1 = Rational::one() - &r;
    let w2 = &r - int(n as i64 - 2) * &t;
    let mut weights = vec![w1.clone(), w2.clone()];
    weights.extend(std::iter::repeat_n(t, n - 2));
    let mut first = vec![w2, w1];
    first.extend(weights[2..].iter().cloned());
    let mut rows = vec![first];
    rows.extend((1..n).map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()));
    let inst = Instance::new(weights, rows)?;
    let a = Allocation::from_bundles((0..n).map(|i| vec![i]).collect(), n)?;
    Ok((inst, a))
}

/// Two agents with weights `(w, 1 - w)` and utilities `(2 eps, 1 + 1/w,
/// 1 + 1/w)` and `(0, 1, 1)`. For small `w` the unique MWNW allocation leaves
/// agent 0 with only the first item.
pub fn mwnw_no_shares(eps: &Rational, w: &Rational) -> Result<Instance> {
    if !eps.is_positive() || eps >= &ratio(1, 2) {
        return Err(Error::ParameterViolation(format!("needs 0 < eps < 1/2, got {eps}")));
    }
    if !w.is_positive() || w >= &Rational::one() {
        return Err(Error::ParameterViolation(format!("needs 0 < w < 1, got {w}")));
    }
    let big = Rational::one() + w.recip();
    Instance::new(
        vec![w.clone(), Rational::one() - w],
        vec![vec![int(2) * eps, big.clone(), big], vec![int(0), int(1), int(1)]],
    )
}

/// Which optimal allocations a rule selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Mwnw,
    Weg,
}

impl Rule {
    fn optima(self, inst: &Instance, limits: &SearchLimits) -> Result<Vec<Allocation>> {
        Ok(match self {
            Rule::Mwnw => mwnw_optima(inst, limits)?.all,
            Rule::Weg => weg_optima(inst, limits)?.all,
        })
    }
}

/// Prefix condition of a picking sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrefixCondition {
    Wef,
    Wprop,
}

/// A property a fixture must exhibit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expectation {
    /// The notion's verdict on a specific allocation.
    Verdict {
        allocation: Allocation,
        notion: Notion,
        satisfied: bool,
    },
    /// An exact share value.
    ShareValue {
        agent: usize,
        share: ShareKind,
        #[serde(with = "crate::rational::serde_str")]
        value: Rational,
    },
    /// Identical items: exactly these count vectors satisfy every notion.
    SatisfyingCounts { notions: Vec<Notion>, counts: Vec<Vec<usize>> },
    NoneSatisfiesAll { notions: Vec<Notion> },
    SomeSatisfiesAll { notions: Vec<Notion> },
    AllSatisfy { notion: Notion },
    /// Identical items: the rule's optimal count vectors, in order.
    OptimalCounts { rule: Rule, counts: Vec<Vec<usize>> },
    OptimalAllocations { rule: Rule, allocations: Vec<Allocation> },
    /// The notion's verdict on every optimum of the rule.
    EveryOptimum { rule: Rule, notion: Notion, satisfied: bool },
    /// In every optimum, `u_agent < fraction * share_agent`.
    OptimumBelowShare {
        rule: Rule,
        agent: usize,
        share: ShareKind,
        #[serde(with = "crate::rational::serde_str")]
        fraction: Rational,
    },
    /// `max_A min_i u_i(A_i) / share_i` over agents with a positive share is at
    /// most `at_most`.
    BestShareFraction {
        share: ShareKind,
        #[serde(with = "crate::rational::serde_str")]
        at_most: Rational,
    },
    /// Verdict of a divisor method's sequence for the instance's weights and
    /// item count.
    DivisorPrefix {
        method: String,
        condition: PrefixCondition,
        #[serde(with = "crate::rational::serde_str")]
        x: Rational,
        satisfied: bool,
    },
}

fn list(notions: &[Notion]) -> String {
    notions.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" + ")
}

fn counts_list(counts: &[Vec<usize>]) -> String {
    counts.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(", ")
}

fn pass(b: bool) -> &'static str {
    if b {
        "passes"
    } else {
        "fails"
    }
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Mwnw => "MWNW",
        Rule::Weg => "WEG",
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Verdict {
                allocation,
                notion,
                satisfied,
            } => write!(f, "{:?} {} {notion}", allocation.bundles(), pass(*satisfied)),
            Expectation::ShareValue { agent, share, value } => {
                write!(f, "{}_{agent} = {}", share.name(), format_rational(value))
            }
            Expectation::SatisfyingCounts { notions, counts } => {
                write!(f, "exactly [{}] satisfy {}", counts_list(counts), list(notions))
            }
            Expectation::NoneSatisfiesAll { notions } => write!(f, "no allocation satisfies {}", list(notions)),
            Expectation::SomeSatisfiesAll { notions } => write!(f, "some allocation satisfies {}", list(notions)),
            Expectation::AllSatisfy { notion } => write!(f, "every allocation satisfies {notion}"),
            Expectation::OptimalCounts { rule, counts } => {
                write!(f, "{} optima are [{}]", rule_name(*rule), counts_list(counts))
            }
            Expectation::OptimalAllocations { rule, allocations } => {
                let shown: Vec<String> = allocations.iter().map(|a| format!("{:?}", a.bundles())).collect();
                write!(f, "{} optima are [{}]", rule_name(*rule), shown.join(", "))
            }
            Expectation::EveryOptimum {
                rule,
                notion,
                satisfied,
            } => write!(f, "every {} optimum {} {notion}", rule_name(*rule), pass(*satisfied)),
            Expectation::OptimumBelowShare {
                rule,
                agent,
                share,
                fraction,
            } => write!(
                f,
                "every {} optimum gives agent {agent} less than {} of {}",
                rule_name(*rule),
                format_rational(fraction),
                share.name()
            ),
            Expectation::BestShareFraction { share, at_most } => {
                write!(f, "best {} fraction is at most {}", share.name(), format_rational(at_most))
            }
            Expectation::DivisorPrefix {
                method,
                condition,
                x,
                satisfied,
            } => {
                let c = match condition {
                    PrefixCondition::Wef => "WEF",
                    PrefixCondition::Wprop => "WPROP",
                };
                write!(f, "{method} sequence {} the {c} prefix condition at x = {}", pass(*satisfied), format_rational(x))
            }
        }
    }
}

/// Allocations satisfying all notions, up to relabeling of identical items.
fn satisfying(inst: &Instance, notions: &[Notion], limits: &SearchLimits) -> Result<Vec<Allocation>> {
    let prepared = notions.iter().map(|n| n.prepare(inst, limits)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for a in allocation_classes(inst, limits)? {
        let mut ok = true;
        for p in &prepared {
            if !p.holds(&a)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(a);
        }
    }
    Ok(out)
}

fn counts_of(allocs: &[Allocation]) -> Vec<Vec<usize>> {
    allocs.iter().map(|a| a.counts()).collect()
}

impl Expectation {
    /// Whether the instance exhibits the property.
    pub fn holds(&self, inst: &Instance, limits: &SearchLimits) -> Result<bool> {
        Ok(match self {
            Expectation::Verdict {
                allocation,
                notion,
                satisfied,
            } => notion.holds(inst, allocation, limits)? == *satisfied,
            Expectation::ShareValue { agent, share: kind, value } => &share(inst, *agent, *kind, limits)? == value,
            Expectation::SatisfyingCounts { notions, counts } => {
                if !inst.is_identical_items() {
                    return Err(Error::NotIdenticalItems);
                }
                &counts_of(&satisfying(inst, notions, limits)?) == counts
            }
            Expectation::NoneSatisfiesAll { notions } => satisfying(inst, notions, limits)?.is_empty(),
            Expectation::SomeSatisfiesAll { notions } => !satisfying(inst, notions, limits)?.is_empty(),
            Expectation::AllSatisfy { notion } => {
                let p = notion.prepare(inst, limits)?;
                for a in allocation_classes(inst, limits)? {
                    if !p.holds(&a)? {
                        return Ok(false);
                    }
                }
                true
            }
            Expectation::OptimalCounts { rule, counts } => {
                if !inst.is_identical_items() {
                    return Err(Error::NotIdenticalItems);
                }
                &counts_of(&rule.optima(inst, limits)?) == counts
            }
            Expectation::OptimalAllocations { rule, allocations } => &rule.optima(inst, limits)? == allocations,
            Expectation::EveryOptimum {
                rule,
                notion,
                satisfied,
            } => {
                let p = notion.prepare(inst, limits)?;
                for a in rule.optima(inst, limits)? {
                    if p.holds(&a)? != *satisfied {
                        return Ok(false);
                    }
                }
                true
            }
            Expectation::OptimumBelowShare {
                rule,
                agent,
                share: kind,
                fraction,
            } => {
                let s = share(inst, *agent, *kind, limits)?;
                let bound = fraction * s;
                rule.optima(inst, limits)?.iter().all(|a| inst.value(*agent, a.bundle(*agent)) < bound)
            }
            Expectation::BestShareFraction { share: kind, at_most } => {
                let shares = shares_of(inst, *kind, limits)?;
                let mut best: Option<Rational> = None;
                for a in allocation_classes(inst, limits)? {
                    let worst = (0..inst.n())
                        .filter(|&i| shares[i].is_positive())
                        .map(|i| inst.value(i, a.bundle(i)) / &shares[i])
                        .min();
                    if let Some(w) = worst {
                        if best.as_ref().is_none_or(|b| &w > b) {
                            best = Some(w);
                        }
                    }
                }
                best.is_some_and(|b| &b <= at_most)
            }
            Expectation::DivisorPrefix {
                method,
                condition,
                x,
                satisfied,
            } => {
                let seq = divisor_sequence(inst, &DivisorFunction::named(method)?)?;
                let v = match condition {
                    PrefixCondition::Wef => check_wef_prefix_condition(&seq, inst.weights(), x)?,
                    PrefixCondition::Wprop => check_wprop_prefix_condition(&seq, inst.weights(), x)?,
                };
                v.satisfied == *satisfied
            }
        })
    }
}

/// An instance with the properties it must exhibit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedFixture {
    pub id: String,
    pub description: String,
    pub instance: Instance,
    pub expected: Vec<Expectation>,
}

/// Outcome of one expectation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectationOutcome {
    pub expectation: String,
    pub holds: bool,
}

impl NamedFixture {
    /// Checks every expectation.
    pub fn verify(&self, limits: &SearchLimits) -> Result<Vec<ExpectationOutcome>> {
        self.expected
            .iter()
            .map(|e| {
                Ok(ExpectationOutcome {
                    expectation: e.to_string(),
                    holds: e.holds(&self.instance, limits)?,
                })
            })
            .collect()
    }

    /// True when every expectation holds.
    pub fn verified(&self, limits: &SearchLimits) -> Result<bool> {
        Ok(self.verify(limits)?.iter().all(|o| o.holds))
    }
}

fn fixture(id: &str, description: &str, instance: Instance, expected: Vec<Expectation>) -> NamedFixture {
    NamedFixture {
        id: id.to_string(),
        description: description.to_string(),
        instance,
        expected,
    }
}

fn counts(inst: &Instance, c: &[usize]) -> Allocation {
    let mut bundles = Vec::with_capacity(c.len());
    let mut next = 0;
    for &k in c {
        bundles.push((next..next + k).collect());
        next += k;
    }
    Allocation::from_bundles(bundles, inst.m()).expect("counts sum to m")
}

fn verdict(allocation: Allocation, notion: Notion, satisfied: bool) -> Expectation {
    Expectation::Verdict {
        allocation,
        notion,
        satisfied,
    }
}

fn share_value(agent: usize, share: ShareKind, value: Rational) -> Expectation {
    Expectation::ShareValue { agent, share, value }
}

fn nums(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn sh(kind: ShareKind, alpha: Rational) -> Notion {
    Notion::share(kind, alpha)
}

/// The built-in fixtures.
pub fn catalogue() -> Vec<NamedFixture> {
    let tiny = ratio(1, 1000);
    let half = ratio(1, 2);
    let mut out = Vec::new();

    {
        let inst = Instance::shared(vec![ratio(2, 5), ratio(3, 5)], nums(&[40, 60])).expect("valid");
        let all_to_1 = Allocation::from_bundles(vec![vec![], vec![0, 1]], 2).expect("valid");
        out.push(fixture(
            "aps-vs-cardinal",
            "values (40, 60), weights (2/5, 3/5): an APS-fair allocation can give agent 0 nothing",
            inst,
            vec![
                share_value(0, ShareKind::Mms, int(40)),
                share_value(0, ShareKind::Nmms, int(32)),
                share_value(0, ShareKind::Wmms, int(40)),
                share_value(0, ShareKind::Aps, int(0)),
                verdict(all_to_1.clone(), sh(ShareKind::Aps, int(1)), true),
                verdict(all_to_1.clone(), sh(ShareKind::Nmms, tiny.clone()), false),
                verdict(all_to_1, sh(ShareKind::Wmms, tiny.clone()), false),
            ],
        ));
    }
    {
        let inst = Instance::shared(vec![ratio(1, 5), ratio(1, 5), ratio(3, 5)], nums(&[40, 60])).expect("valid");
        out.push(fixture(
            "ordinal-vs-cardinal",
            "values (40, 60), weights (1/5, 1/5, 3/5): every allocation is WMMS- and NMMS-fair, yet OMMS_2 = 40",
            inst,
            vec![
                Expectation::AllSatisfy {
                    notion: sh(ShareKind::Wmms, int(1)),
                },
                Expectation::AllSatisfy {
                    notion: sh(ShareKind::Nmms, int(1)),
                },
                share_value(2, ShareKind::Omms, int(40)),
                Expectation::SomeSatisfiesAll {
                    notions: vec![sh(ShareKind::Omms, int(1))],
                },
            ],
        ));
    }
    {
        let y = half.clone();
        let (inst, a) = wefxy_no_nmms(3, &y).expect("valid");
        out.push(fixture(
            "wefxy-no-nmms",
            "values (1, 1, 1/2), weights (1/7, 3/7, 3/7): a WEF(0, 1/2) allocation leaves agent 0 with nothing",
            inst,
            vec![
                verdict(a.clone(), Notion::wef(int(0), y), true),
                verdict(a.clone(), Notion::Wwef1, true),
                verdict(a.clone(), Notion::wprop(int(1), int(0)), true),
                verdict(a, sh(ShareKind::Nmms, tiny.clone()), false),
            ],
        ));
    }
    {
        let (inst, a) = wef_no_wmms(3, &half).expect("valid");
        out.push(fixture(
            "wef-no-wmms",
            "x = 1/2: a WEF(1/2, 1/2) allocation leaves agent 2, whose WMMS is 1, with nothing",
            inst,
            vec![
                verdict(a.clone(), Notion::wef(half.clone(), half.clone()), true),
                share_value(2, ShareKind::Wmms, int(1)),
                verdict(a, sh(ShareKind::Wmms, tiny.clone()), false),
            ],
        ));
    }
    {
        let k = 10;
        let (inst, a) = nmms_no_wmms(3, k).expect("valid");
        out.push(fixture(
            "nmms-no-wmms",
            "n = 3, w_0 = 9/10: an NMMS-fair allocation gives agent 0 less than 1/9 of their WMMS",
            inst,
            vec![
                verdict(a.clone(), sh(ShareKind::Nmms, int(1)), true),
                verdict(a, sh(ShareKind::Wmms, ratio(1, k as i64 - 1)), false),
            ],
        ));
    }
    {
        let eps = ratio(1, 100);
        let inst = mwnw_no_shares(&eps, &ratio(1, 11)).expect("valid");
        let unique = Allocation::from_bundles(vec![vec![0], vec![1, 2]], 3).expect("valid");
        out.push(fixture(
            "mwnw-no-shares",
            "eps = 1/100, w = 1/11: the unique MWNW allocation gives agent 0 only the 2 eps item",
            inst,
            vec![
                Expectation::OptimalAllocations {
                    rule: Rule::Mwnw,
                    allocations: vec![unique],
                },
                Expectation::OptimumBelowShare {
                    rule: Rule::Mwnw,
                    agent: 0,
                    share: ShareKind::Nmms,
                    fraction: eps.clone(),
                },
                Expectation::OptimumBelowShare {
                    rule: Rule::Mwnw,
                    agent: 0,
                    share: ShareKind::Wmms,
                    fraction: int(4) * &eps,
                },
            ],
        ));
    }
    {
        let inst = identical(nums(&[4, 1, 1]), 3).expect("valid");
        let even = counts(&inst, &[1, 1, 1]);
        let all = counts(&inst, &[3, 0, 0]);
        let weg_pick = counts(&inst, &[2, 1, 0]);
        out.push(fixture(
            "quota-identical-411",
            "three identical items, weights (4, 1, 1), quotas (2, 1/2, 1/2)",
            inst,
            vec![
                Expectation::SatisfyingCounts {
                    notions: vec![Notion::wef(int(1), int(0))],
                    counts: vec![vec![1, 1, 1]],
                },
                Expectation::SatisfyingCounts {
                    notions: vec![Notion::wef(int(0), int(1))],
                    counts: vec![vec![3, 0, 0]],
                },
                Expectation::SatisfyingCounts {
                    notions: vec![sh(ShareKind::Wmms, int(1))],
                    counts: vec![vec![1, 1, 1]],
                },
                Expectation::SatisfyingCounts {
                    notions: vec![sh(ShareKind::Nmms, tiny.clone())],
                    counts: vec![vec![1, 1, 1]],
                },
                Expectation::NoneSatisfiesAll {
                    notions: vec![sh(ShareKind::Nmms, int(1))],
                },
                Expectation::OptimalCounts {
                    rule: Rule::Mwnw,
                    counts: vec![vec![1, 1, 1]],
                },
                Expectation::OptimalCounts {
                    rule: Rule::Weg,
                    counts: vec![vec![2, 1, 0], vec![2, 0, 1]],
                },
                verdict(even.clone(), Notion::LowerQuota, false),
                verdict(even, Notion::UpperQuota, true),
                verdict(all.clone(), Notion::UpperQuota, false),
                verdict(all.clone(), sh(ShareKind::Omms, int(1)), true),
                verdict(all, sh(ShareKind::Aps, int(1)), true),
                verdict(weg_pick, Notion::Quota, true),
            ],
        ));
    }
    {
        let n = 4;
        let mut w = vec![int(2)];
        w.extend(std::iter::repeat_n(ratio(n - 2, n - 1), n as usize - 1));
        let inst = identical(w, n as usize).expect("valid");
        out.push(fixture(
            "wmms-quota",
            "n = m = 4, weights (2, 2/3, 2/3, 2/3): WMMS-fair allocations exist, none meets lower quota",
            inst,
            vec![
                Expectation::SomeSatisfiesAll {
                    notions: vec![sh(ShareKind::Wmms, int(1))],
                },
                Expectation::NoneSatisfiesAll {
                    notions: vec![sh(ShareKind::Wmms, tiny.clone()), Notion::LowerQuota],
                },
            ],
        ));
    }
    {
        let n = 3;
        let mut w = vec![int(n + 1)];
        w.extend(std::iter::repeat_n(ratio(n - 2, n - 1), n as usize - 1));
        let inst = identical(w, 2 * n as usize - 1).expect("valid");
        out.push(fixture(
            "nmms-quota",
            "n = 3, five identical items, weights (4, 1/2, 1/2): NMMS-fair allocations exist, none meets lower quota",
            inst,
            vec![
                Expectation::SomeSatisfiesAll {
                    notions: vec![sh(ShareKind::Nmms, int(1))],
                },
                Expectation::NoneSatisfiesAll {
                    notions: vec![sh(ShareKind::Nmms, tiny.clone()), Notion::LowerQuota],
                },
            ],
        ));
    }
    {
        let inst = identical(nums(&[6, 1, 1, 1]), 12).expect("valid");
        out.push(fixture(
            "mwnw-upper-quota",
            "twelve identical items, weights (6, 1, 1, 1): MWNW gives agent 0 nine items, above the upper quota 8",
            inst,
            vec![
                Expectation::OptimalCounts {
                    rule: Rule::Mwnw,
                    counts: vec![vec![9, 1, 1, 1]],
                },
                Expectation::EveryOptimum {
                    rule: Rule::Mwnw,
                    notion: Notion::UpperQuota,
                    satisfied: false,
                },
            ],
        ));
    }
    {
        let inst = incompatibility_instance(&int(1), &int(0), &int(0), &int(1)).expect("valid");
        out.push(fixture(
            "wprop-incompatible",
            "weights (1/10, 1/10, 4/5), four identical items: WPROP(1, 0) and WPROP(0, 1) never hold together",
            inst,
            vec![
                Expectation::NoneSatisfiesAll {
                    notions: vec![Notion::wprop(int(1), int(0)), Notion::wprop(int(0), int(1))],
                },
                Expectation::SomeSatisfiesAll {
                    notions: vec![Notion::wprop(int(1), int(0))],
                },
                Expectation::SomeSatisfiesAll {
                    notions: vec![Notion::wprop(int(0), int(1))],
                },
            ],
        ));
    }
    for (label, x) in [("0", int(0)), ("1/2", ratio(1, 2)), ("1", int(1))] {
        let inst = mwnw_violates_wprop_instance(&x).expect("valid");
        let y = Rational::one() - &x;
        out.push(fixture(
            &format!("mwnw-no-wprop-{}", label.replace('/', "-")),
            &format!("x = {label}: every MWNW allocation fails WPROP(x, 1 - x)"),
            inst,
            vec![Expectation::EveryOptimum {
                rule: Rule::Mwnw,
                notion: Notion::wprop(x, y),
                satisfied: false,
            }],
        ));
    }
    {
        let eps = ratio(1, 100);
        let inst = nmms_upper_bound_instance(2, &eps).expect("valid");
        out.push(fixture(
            "nmms-upper-bound",
            "n = 2, eps = 1/100: no allocation gives everyone much more than half of their NMMS",
            inst,
            vec![Expectation::BestShareFraction {
                share: ShareKind::Nmms,
                at_most: nmms_upper_bound(2, &eps),
            }],
        ));
    }
    {
        let mut w = vec![int(2)];
        w.extend(std::iter::repeat_n(ratio(3, 4), 4));
        let inst = identical(w, 5).expect("valid");
        out.push(fixture(
            "wef-no-lower-quota",
            "n = m = 5, weights (2, 3/4, 3/4, 3/4, 3/4): no WEF(1/2, 1/2) allocation meets lower quota",
            inst,
            vec![
                Expectation::SomeSatisfiesAll {
                    notions: vec![Notion::wef(half.clone(), half.clone())],
                },
                Expectation::NoneSatisfiesAll {
                    notions: vec![Notion::wef(half.clone(), half.clone()), Notion::LowerQuota],
                },
            ],
        ));
    }
    {
        let mut w = vec![int(3)];
        w.extend(std::iter::repeat_n(ratio(1, 3), 3));
        let inst = identical(w, 4).expect("valid");
        out.push(fixture(
            "wef-no-upper-quota",
            "n = m = 4, weights (3, 1/3, 1/3, 1/3): no WEF(1/2, 1/2) allocation meets upper quota",
            inst,
            vec![
                Expectation::SomeSatisfiesAll {
                    notions: vec![Notion::wef(half.clone(), half.clone())],
                },
                Expectation::NoneSatisfiesAll {
                    notions: vec![Notion::wef(half.clone(), half.clone()), Notion::UpperQuota],
                },
            ],
        ));
    }
    {
        let inst = identical(nums(&[1, 1]), 2).expect("valid");
        let both = counts(&inst, &[0, 2]);
        let mut expected = Vec::new();
        for x in [int(0), half.clone(), int(1)] {
            let y = Rational::one() - &x;
            expected.push(verdict(both.clone(), Notion::wprop(x, y), true));
        }
        expected.push(verdict(both.clone(), Notion::LowerQuota, false));
        expected.push(verdict(both, Notion::UpperQuota, false));
        out.push(fixture(
            "wprop-no-quota",
            "two identical items, equal weights: giving both to one agent is WPROP(x, 1 - x) but breaks both quotas",
            inst,
            expected,
        ));
    }
    {
        let inst = identical(nums(&[1, 1, 1]), 2).expect("valid");
        let both = counts(&inst, &[2, 0, 0]);
        let mut expected: Vec<Expectation> = [ShareKind::Wmms, ShareKind::Nmms, ShareKind::Omms, ShareKind::Aps]
            .into_iter()
            .map(|k| verdict(both.clone(), sh(k, int(1)), true))
            .collect();
        expected.push(verdict(both, Notion::UpperQuota, false));
        out.push(fixture(
            "share-no-upper-quota",
            "three agents, two identical items, equal weights: every share is 0, so one agent may take both",
            inst,
            expected,
        ));
    }
    {
        let inst = identical(nums(&[5, 1, 1]), 3).expect("valid");
        out.push(fixture(
            "adams-wprop-prefix",
            "weights (5, 1, 1), three items: the Adams sequence breaks the WPROP prefix condition at x = 0",
            inst,
            vec![Expectation::DivisorPrefix {
                method: "adams".into(),
                condition: PrefixCondition::Wprop,
                x: int(0),
                satisfied: false,
            }],
        ));
    }
    {
        let inst = identical(nums(&[1, 4, 4]), 4).expect("valid");
        out.push(fixture(
            "jefferson-wprop-prefix",
            "weights (1, 4, 4), four items: the Jefferson sequence breaks the WPROP prefix condition at x = 1",
            inst,
            vec![Expectation::DivisorPrefix {
                method: "jefferson".into(),
                condition: PrefixCondition::Wprop,
                x: int(1),
                satisfied: false,
            }],
        ));
    }
    out
}

/// Looks a catalogue fixture up by id.
pub fn fixture_by_id(id: &str) -> Result<NamedFixture> {
    catalogue()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFixture(id.to_string()))
}
