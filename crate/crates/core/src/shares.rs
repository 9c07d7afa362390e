//! Share thresholds: maximin share (ℓ-out-of-d), normalized, weighted and
//! ordinal maximin shares, and the AnyPrice share.
//!
//! Utilities are scaled to integers per agent before searching. Searches run
//! on `i128` when the magnitudes leave ample headroom and on `BigInt`
//! otherwise.

use std::ops::{Add, AddAssign, Mul, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fairness::check_shape;
use crate::limits::SearchLimits;
use crate::lp::{maximize, LpStatus};
use crate::model::{Allocation, Instance};
use crate::rational::{floor_int, to_integers};
use crate::verdict::{Subject, Verdict, Witness};
use crate::Rational;

trait Scalar:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>
{
}

const SMALL: u32 = 60;

fn fits(values: &[BigInt]) -> bool {
    values.iter().all(|v| v.bits() <= u64::from(SMALL))
}

fn narrow(values: &[BigInt]) -> Vec<i128> {
    values.iter().map(|v| i128::try_from(v).expect("checked width")).collect()
}

/// Positive items of `agent`, by value descending then index ascending, with
/// their integer-scaled values and the scale.
fn scaled_items(inst: &Instance, agent: usize) -> (Vec<usize>, Vec<BigInt>, BigInt) {
    let (ints, scale) = to_integers(inst.row(agent));
    let mut items: Vec<usize> = (0..inst.m()).filter(|&g| ints[g].is_positive()).collect();
    items.sort_by(|&a, &b| ints[b].cmp(&ints[a]).then(a.cmp(&b)));
    let vals = items.iter().map(|&g| ints[g].clone()).collect();
    (items, vals, scale)
}

fn suffix_sums<T: Scalar>(vals: &[T]) -> Vec<T> {
    let mut s = vec![T::zero(); vals.len() + 1];
    for k in (0..vals.len()).rev() {
        s[k] = s[k + 1].clone() + vals[k].clone();
    }
    s
}

fn l_smallest<T: Scalar>(slots: &[T], l: usize) -> T {
    let mut v = slots.to_vec();
    v.sort();
    v.into_iter().take(l).fold(T::zero(), |a, b| a + b)
}

struct MmsSearch<'a, T> {
    vals: &'a [T],
    suffix: Vec<T>,
    l: usize,
    cap: T,
    slots: Vec<T>,
    assign: Vec<usize>,
    best: T,
    best_assign: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<T: Scalar> MmsSearch<'_, T> {
    fn dfs(&mut self, k: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded {
                kind: "mms",
                budget: self.budget,
            });
        }
        if k == self.vals.len() {
            let v = l_smallest(&self.slots, self.l);
            if v > self.best {
                self.best = v;
                self.best_assign.clone_from(&self.assign);
            }
            return Ok(self.best == self.cap);
        }
        let bound = (l_smallest(&self.slots, self.l) + self.suffix[k].clone()).min(self.cap.clone());
        if bound <= self.best {
            return Ok(false);
        }
        let mut order: Vec<usize> = (0..self.slots.len()).collect();
        order.sort_by(|&a, &b| self.slots[a].cmp(&self.slots[b]).then(a.cmp(&b)));
        order.dedup_by(|b, a| self.slots[*a] == self.slots[*b]);
        for s in order {
            self.slots[s] += &self.vals[k];
            self.assign[k] = s;
            let done = self.dfs(k + 1)?;
            self.slots[s] -= &self.vals[k];
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Best value and slot assignment of the ℓ-out-of-d search over `vals`
/// (descending). `cap` bounds every partition's value.
fn mms_search<T: Scalar>(vals: &[T], l: usize, d: usize, cap: T, budget: u64) -> Result<(T, Vec<usize>)> {
    let mut slots = vec![T::zero(); d];
    let mut greedy = Vec::with_capacity(vals.len());
    for v in vals {
        let s = (0..d).min_by(|&a, &b| slots[a].cmp(&slots[b]).then(a.cmp(&b))).expect("d >= 1");
        slots[s] += v;
        greedy.push(s);
    }
    let best = l_smallest(&slots, l);
    if best == cap {
        return Ok((best, greedy));
    }
    let mut search = MmsSearch {
        vals,
        suffix: suffix_sums(vals),
        l,
        cap,
        slots: vec![T::zero(); d],
        assign: vec![0; vals.len()],
        best,
        best_assign: greedy,
        nodes: 0,
        budget,
    };
    search.dfs(0)?;
    Ok((search.best, search.best_assign))
}

fn bundles_from(d: usize, m: usize, items: &[usize], assign: &[usize]) -> Vec<Vec<usize>> {
    let mut bundles = vec![Vec::new(); d];
    let mut placed = vec![false; m];
    for (k, &g) in items.iter().enumerate() {
        bundles[assign[k]].push(g);
        placed[g] = true;
    }
    bundles[0].extend((0..m).filter(|&g| !placed[g]));
    for b in &mut bundles {
        b.sort_unstable();
    }
    bundles
}

/// ℓ-out-of-d maximin share with a witness d-partition.
pub fn mms_partition(inst: &Instance, agent: usize, l: usize, d: usize, limits: &SearchLimits) -> Result<(Rational, Vec<Vec<usize>>)> {
    inst.check_agent(agent)?;
    if l == 0 || l > d {
        return Err(Error::ParameterViolation(format!("need 1 <= l <= d, got l={l}, d={d}")));
    }
    let (items, vals, scale) = scaled_items(inst, agent);
    let total: BigInt = vals.iter().sum();
    let cap = &total * BigInt::from(l) / BigInt::from(d);
    let (best, assign) = if fits(&vals) && total.bits() <= u64::from(SMALL) {
        let (b, a) = mms_search(&narrow(&vals), l, d, i128::try_from(&cap).expect("small"), limits.partition_budget)?;
        (BigInt::from(b), a)
    } else {
        mms_search(&vals, l, d, cap, limits.partition_budget)?
    };
    let value = Rational::new(best, scale);
    Ok((value, bundles_from(d, inst.m(), &items, &assign)))
}

/// `MMS_i^{l-out-of-d}`: the best d-partition's sum of its ℓ least valuable
/// bundles.
pub fn mms(inst: &Instance, agent: usize, l: usize, d: usize) -> Result<Rational> {
    mms_with(inst, agent, l, d, &SearchLimits::default())
}

pub fn mms_with(inst: &Instance, agent: usize, l: usize, d: usize, limits: &SearchLimits) -> Result<Rational> {
    mms_partition(inst, agent, l, d, limits).map(|(v, _)| v)
}

/// `(w_i / w_N) n MMS_i`.
pub fn nmms(inst: &Instance, agent: usize) -> Result<Rational> {
    nmms_with(inst, agent, &SearchLimits::default())
}

pub fn nmms_with(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<Rational> {
    let base = mms_with(inst, agent, 1, inst.n(), limits)?;
    Ok(inst.relative_weight(agent) * Rational::from_integer(inst.n().into()) * base)
}

struct WmmsSearch<'a, T> {
    vals: &'a [T],
    suffix: Vec<T>,
    p: Vec<T>,
    cap: (T, T),
    slots: Vec<T>,
    assign: Vec<usize>,
    best: (T, T),
    best_assign: Vec<usize>,
    nodes: u64,
    budget: u64,
}

fn ratio_lt<T: Scalar>(a: (&T, &T), b: (&T, &T)) -> bool {
    a.0.clone() * b.1.clone() < b.0.clone() * a.1.clone()
}

fn min_ratio<T: Scalar>(slots: &[T], p: &[T], extra: &T) -> (T, T) {
    let mut best = (slots[0].clone() + extra.clone(), p[0].clone());
    for j in 1..slots.len() {
        let cand = (slots[j].clone() + extra.clone(), p[j].clone());
        if ratio_lt((&cand.0, &cand.1), (&best.0, &best.1)) {
            best = cand;
        }
    }
    best
}

impl<T: Scalar> WmmsSearch<'_, T> {
    fn dfs(&mut self, k: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded {
                kind: "wmms",
                budget: self.budget,
            });
        }
        if k == self.vals.len() {
            let v = min_ratio(&self.slots, &self.p, &T::zero());
            if ratio_lt((&self.best.0, &self.best.1), (&v.0, &v.1)) {
                self.best = v;
                self.best_assign.clone_from(&self.assign);
            }
            return Ok(!ratio_lt((&self.best.0, &self.best.1), (&self.cap.0, &self.cap.1)));
        }
        let bound = min_ratio(&self.slots, &self.p, &self.suffix[k]);
        if !ratio_lt((&self.best.0, &self.best.1), (&bound.0, &bound.1))
            || !ratio_lt((&self.best.0, &self.best.1), (&self.cap.0, &self.cap.1))
        {
            return Ok(false);
        }
        let mut order: Vec<usize> = (0..self.slots.len()).collect();
        order.sort_by(|&a, &b| {
            let (sa, sb) = (&self.slots, &self.p);
            (sa[a].clone() * sb[b].clone()).cmp(&(sa[b].clone() * sb[a].clone())).then(a.cmp(&b))
        });
        let mut tried: Vec<usize> = Vec::new();
        for s in order {
            if tried.iter().any(|&t| self.p[t] == self.p[s] && self.slots[t] == self.slots[s]) {
                continue;
            }
            tried.push(s);
            self.slots[s] += &self.vals[k];
            self.assign[k] = s;
            let done = self.dfs(k + 1)?;
            self.slots[s] -= &self.vals[k];
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn wmms_search<T: Scalar>(vals: &[T], p: Vec<T>, budget: u64) -> Result<((T, T), Vec<usize>)> {
    let n = p.len();
    let mut slots = vec![T::zero(); n];
    let mut greedy = Vec::with_capacity(vals.len());
    for v in vals {
        let s = (0..n)
            .min_by(|&a, &b| (slots[a].clone() * p[b].clone()).cmp(&(slots[b].clone() * p[a].clone())).then(a.cmp(&b)))
            .expect("n >= 2");
        slots[s] += v;
        greedy.push(s);
    }
    let best = min_ratio(&slots, &p, &T::zero());
    let total = vals.iter().fold(T::zero(), |a, b| a + b.clone());
    let psum = p.iter().fold(T::zero(), |a, b| a + b.clone());
    let mut search = WmmsSearch {
        vals,
        suffix: suffix_sums(vals),
        cap: (total, psum),
        slots: vec![T::zero(); n],
        assign: vec![0; vals.len()],
        best,
        best_assign: greedy,
        nodes: 0,
        budget,
        p,
    };
    if ratio_lt((&search.best.0, &search.best.1), (&search.cap.0, &search.cap.1)) {
        search.dfs(0)?;
    }
    Ok((search.best, search.best_assign))
}

/// Weighted maximin share with a witness partition (bundle `j` is the one
/// measured against weight `w_j`).
pub fn wmms_partition(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<(Rational, Vec<Vec<usize>>)> {
    inst.check_agent(agent)?;
    let n = inst.n();
    let (items, vals, scale) = scaled_items(inst, agent);
    if items.len() < n {
        // some labeled bundle is worthless
        let assign: Vec<usize> = (0..items.len()).collect();
        return Ok((Rational::zero(), bundles_from(n, inst.m(), &items, &assign)));
    }
    let (p, denom) = to_integers(inst.weights());
    let total: BigInt = vals.iter().sum();
    let psum: BigInt = p.iter().sum();
    let ((v, q), assign) = if total.bits() + psum.bits() <= 2 * u64::from(SMALL) - 8 && fits(&vals) && fits(&p) {
        let ((v, q), a) = wmms_search(&narrow(&vals), narrow(&p), limits.partition_budget)?;
        ((BigInt::from(v), BigInt::from(q)), a)
    } else {
        wmms_search(&vals, p, limits.partition_budget)?
    };
    let value = inst.weight(agent) * Rational::new(v * denom, q * scale);
    Ok((value, bundles_from(n, inst.m(), &items, &assign)))
}

/// `w_i max_Z min_j u_i(Z_j) / w_j` over labeled n-partitions.
pub fn wmms(inst: &Instance, agent: usize) -> Result<Rational> {
    wmms_with(inst, agent, &SearchLimits::default())
}

pub fn wmms_with(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<Rational> {
    wmms_partition(inst, agent, limits).map(|(v, _)| v)
}

/// Ordinal maximin share: the best ℓ-out-of-d share with `ℓ/d <= w_i/w_N`,
/// `d <= m`. For each `d` only the largest admissible `ℓ` matters.
pub fn omms(inst: &Instance, agent: usize) -> Result<Rational> {
    omms_with(inst, agent, &SearchLimits::default())
}

pub fn omms_with(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<Rational> {
    inst.check_agent(agent)?;
    let rho = inst.relative_weight(agent);
    let mut best = Rational::zero();
    for d in 1..=inst.m() {
        let l = floor_int(&(&rho * Rational::from_integer(d.into())));
        let l = usize::try_from(l).expect("l <= d");
        if l >= 1 {
            best = best.max(mms_with(inst, agent, l.min(d), d, limits)?);
        }
    }
    Ok(best)
}

/// A weighted bundle collection certifying an AnyPrice share: bundle weights
/// sum to `w_N` and every item carries at most `w_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleWeight {
    pub bundle: Vec<usize>,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

fn subset_sums(vals: &[BigInt]) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); 1 << vals.len()];
    for mask in 1usize..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = &sums[mask & (mask - 1)] + &vals[low];
    }
    sums
}

/// Maximum total bundle weight (relative to an item capacity of one) over
/// the inclusion-minimal bundles worth at least `z`; `None` if `target`
/// cannot be reached. Columns are generated on demand: each round prices
/// every minimal bundle with the current row duals and adds the cheapest one
/// while its price is below one.
fn aps_collection(sums: &[BigInt], k: usize, z: &BigInt, target: &Rational) -> Option<Vec<(usize, Rational)>> {
    let minimal: Vec<usize> = (1..sums.len())
        .filter(|&mask| &sums[mask] >= z && (0..k).all(|b| mask & (1 << b) == 0 || &sums[mask ^ (1 << b)] < z))
        .collect();
    if minimal.is_empty() {
        return None;
    }
    let one = Rational::one();
    let rhs = vec![one.clone(); k];
    let mut columns: Vec<usize> = Vec::new();
    let mut prices = vec![Rational::zero(); k];
    loop {
        let cost = |mask: usize| -> Rational { (0..k).filter(|b| mask & (1 << b) != 0).map(|b| &prices[b]).sum() };
        let (entering, price) = minimal
            .iter()
            .map(|&mask| (mask, cost(mask)))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("nonempty");
        if price >= one {
            return None;
        }
        columns.push(entering);
        let c = vec![one.clone(); columns.len()];
        let a: Vec<Vec<Rational>> = (0..k)
            .map(|b| columns.iter().map(|&mask| if mask & (1 << b) != 0 { one.clone() } else { Rational::zero() }).collect())
            .collect();
        let out = maximize(&c, &a, &rhs, Some(target));
        match out.status {
            LpStatus::TargetReached => {
                return Some(
                    columns
                        .into_iter()
                        .zip(out.solution)
                        .filter(|(_, l)| l.is_positive())
                        .collect(),
                )
            }
            LpStatus::Optimal => prices = out.duals,
            LpStatus::Unbounded => unreachable!("bundles are nonempty, so item capacities bound the objective"),
        }
    }
}

/// AnyPrice share with a certifying weighted bundle collection.
pub fn aps_certificate(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<(Rational, Vec<BundleWeight>)> {
    inst.check_agent(agent)?;
    if inst.m() > limits.aps_item_cap {
        return Err(Error::TooManyItems {
            kind: "aps",
            m: inst.m(),
            cap: limits.aps_item_cap,
        });
    }
    let (items, vals, scale) = scaled_items(inst, agent);
    let k = items.len();
    let trivial = vec![BundleWeight {
        bundle: vec![],
        weight: inst.total_weight().clone(),
    }];
    if k == 0 {
        return Ok((Rational::zero(), trivial));
    }
    let sums = subset_sums(&vals);
    // APS never exceeds the proportional share.
    let prop = floor_int(&(inst.relative_weight(agent) * inst.total_value(agent) * Rational::from_integer(scale.clone())));
    let mut cands: Vec<BigInt> = sums.iter().filter(|s| s.is_positive() && **s <= prop).cloned().collect();
    cands.sort();
    cands.dedup();
    let target = inst.total_weight() / inst.weight(agent);

    // cands[..lo] feasible, cands[hi..] infeasible
    let (mut lo, mut hi) = (0usize, cands.len());
    let mut best: Option<(usize, Vec<(usize, Rational)>)> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match aps_collection(&sums, k, &cands[mid], &target) {
            Some(coll) => {
                best = Some((mid, coll));
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    let Some((idx, coll)) = best else {
        return Ok((Rational::zero(), trivial));
    };
    let total: Rational = coll.iter().map(|(_, l)| l).sum();
    let factor = inst.total_weight() / total;
    let cert = coll
        .into_iter()
        .map(|(mask, l)| {
            let mut bundle: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| items[b]).collect();
            bundle.sort_unstable();
            BundleWeight {
                bundle,
                weight: l * &factor,
            }
        })
        .collect();
    Ok((Rational::new(cands[idx].clone(), scale), cert))
}

/// AnyPrice share: the largest `z` such that bundles worth at least `z`
/// can be weighted to total `w_N` with every item carrying at most `w_i`.
pub fn aps(inst: &Instance, agent: usize) -> Result<Rational> {
    aps_with(inst, agent, &SearchLimits::default())
}

pub fn aps_with(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<Rational> {
    aps_certificate(inst, agent, limits).map(|(v, _)| v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShareKind {
    Mms,
    Nmms,
    Wmms,
    Omms,
    Aps,
}

impl ShareKind {
    pub const ALL: [ShareKind; 5] = [ShareKind::Mms, ShareKind::Nmms, ShareKind::Wmms, ShareKind::Omms, ShareKind::Aps];

    pub fn name(self) -> &'static str {
        match self {
            ShareKind::Mms => "mms",
            ShareKind::Nmms => "nmms",
            ShareKind::Wmms => "wmms",
            ShareKind::Omms => "omms",
            ShareKind::Aps => "aps",
        }
    }
}

impl std::str::FromStr for ShareKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ShareKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown share kind `{s}`")))
    }
}

/// One share of one agent.
pub fn share(inst: &Instance, agent: usize, kind: ShareKind, limits: &SearchLimits) -> Result<Rational> {
    match kind {
        ShareKind::Mms => mms_with(inst, agent, 1, inst.n(), limits),
        ShareKind::Nmms => nmms_with(inst, agent, limits),
        ShareKind::Wmms => wmms_with(inst, agent, limits),
        ShareKind::Omms => omms_with(inst, agent, limits),
        ShareKind::Aps => aps_with(inst, agent, limits),
    }
}

/// The share of every agent.
pub fn shares_of(inst: &Instance, kind: ShareKind, limits: &SearchLimits) -> Result<Vec<Rational>> {
    (0..inst.n()).map(|i| share(inst, i, kind, limits)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgentShares {
    pub agent: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub mms: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub nmms: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub wmms: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub omms: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub aps: Rational,
    pub mms_partition: Vec<Vec<usize>>,
    pub wmms_partition: Vec<Vec<usize>>,
    pub aps_bundles: Vec<BundleWeight>,
}

impl AgentShares {
    pub fn get(&self, kind: ShareKind) -> &Rational {
        match kind {
            ShareKind::Mms => &self.mms,
            ShareKind::Nmms => &self.nmms,
            ShareKind::Wmms => &self.wmms,
            ShareKind::Omms => &self.omms,
            ShareKind::Aps => &self.aps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShareReport {
    pub agents: Vec<AgentShares>,
}

pub fn agent_shares(inst: &Instance, agent: usize, limits: &SearchLimits) -> Result<AgentShares> {
    let (mms, mms_partition) = mms_partition(inst, agent, 1, inst.n(), limits)?;
    let nmms = inst.relative_weight(agent) * Rational::from_integer(inst.n().into()) * &mms;
    let (wmms, wmms_partition) = wmms_partition(inst, agent, limits)?;
    let omms = omms_with(inst, agent, limits)?;
    let (aps, aps_bundles) = aps_certificate(inst, agent, limits)?;
    Ok(AgentShares {
        agent,
        mms,
        nmms,
        wmms,
        omms,
        aps,
        mms_partition,
        wmms_partition,
        aps_bundles,
    })
}

pub fn share_report(inst: &Instance, limits: &SearchLimits) -> Result<ShareReport> {
    let agents = (0..inst.n()).map(|i| agent_shares(inst, i, limits)).collect::<Result<_>>()?;
    Ok(ShareReport { agents })
}

/// `u_i(A_i) >= alpha share_i` for every agent, given precomputed shares.
pub fn share_verdict(inst: &Instance, a: &Allocation, kind: ShareKind, shares: &[Rational], alpha: &Rational) -> Verdict {
    let witnesses = (0..inst.n())
        .map(|i| {
            let margin = inst.value(i, a.bundle(i)) - alpha * &shares[i];
            Witness::new(Subject::Agent { agent: i }, margin, a.bundle(i).to_vec())
        })
        .collect();
    Verdict::from_witnesses(format!("{}(alpha={alpha})", kind.name()), witnesses)
}

/// α-share fairness for the chosen share.
pub fn check_share_fairness(inst: &Instance, a: &Allocation, kind: ShareKind, alpha: &Rational) -> Result<Verdict> {
    check_share_fairness_with(inst, a, kind, alpha, &SearchLimits::default())
}

pub fn check_share_fairness_with(
    inst: &Instance,
    a: &Allocation,
    kind: ShareKind,
    alpha: &Rational,
    limits: &SearchLimits,
) -> Result<Verdict> {
    if alpha.is_negative() {
        return Err(Error::ParameterOutOfRange {
            name: "alpha",
            value: alpha.clone(),
        });
    }
    check_shape(inst, a)?;
    let shares = shares_of(inst, kind, limits)?;
    Ok(share_verdict(inst, a, kind, &shares, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn forty_sixty(weights: Vec<Rational>) -> Instance {
        Instance::shared(weights, vec![int(40), int(60)]).unwrap()
    }

    #[test]
    fn forty_sixty_two_agents() {
        let inst = forty_sixty(vec![ratio(2, 5), ratio(3, 5)]);
        assert_eq!(mms(&inst, 0, 1, 2).unwrap(), int(40));
        assert_eq!(nmms(&inst, 0).unwrap(), int(32));
        assert_eq!(wmms(&inst, 0).unwrap(), int(40));
        assert_eq!(aps(&inst, 0).unwrap(), int(0));
        assert!(aps(&inst, 1).unwrap() >= int(40));
    }

    #[test]
    fn forty_sixty_three_agents() {
        let inst = forty_sixty(vec![ratio(1, 5), ratio(1, 5), ratio(3, 5)]);
        assert_eq!(omms(&inst, 2).unwrap(), int(40));
        assert_eq!(nmms(&inst, 0).unwrap(), int(0));
        assert_eq!(wmms(&inst, 0).unwrap(), int(0));
    }

    #[test]
    fn trivial_mms_cases() {
        let inst = Instance::shared(vec![int(1); 3], vec![int(3), int(5)]).unwrap();
        assert_eq!(mms(&inst, 0, 1, 3).unwrap(), int(0));
        assert_eq!(mms(&inst, 0, 2, 2).unwrap(), int(8));
        assert!(mms(&inst, 0, 3, 2).is_err());
    }

    #[test]
    fn mms_known_values() {
        let inst = Instance::shared(vec![int(1); 3], [7, 6, 5, 4, 3, 2, 1].map(int).to_vec()).unwrap();
        assert_eq!(mms(&inst, 0, 1, 3).unwrap(), int(9));
        assert_eq!(mms(&inst, 0, 2, 3).unwrap(), int(18));
        let (v, part) = mms_partition(&inst, 0, 1, 3, &SearchLimits::default()).unwrap();
        assert!(part.iter().all(|b| inst.value(0, b) >= v));
        assert_eq!(part.iter().map(Vec::len).sum::<usize>(), 7);
    }

    #[test]
    fn equal_weights_agree() {
        let inst = Instance::new(
            vec![int(2); 3],
            vec![[5, 1, 4, 4, 2].map(int).to_vec(), [1, 1, 1, 0, 9].map(int).to_vec(), [3, 3, 3, 3, 3].map(int).to_vec()],
        )
        .unwrap();
        for i in 0..3 {
            let m = mms(&inst, i, 1, 3).unwrap();
            assert_eq!(nmms(&inst, i).unwrap(), m);
            assert_eq!(wmms(&inst, i).unwrap(), m);
            assert_eq!(omms(&inst, i).unwrap(), m);
            assert!(aps(&inst, i).unwrap() >= m);
        }
    }

    #[test]
    fn identical_items_aps_is_lower_quota() {
        let inst = Instance::identical(vec![int(4), int(1), int(2)], 5).unwrap();
        assert_eq!(aps(&inst, 0).unwrap(), int(2));
        assert_eq!(aps(&inst, 1).unwrap(), int(0));
        assert_eq!(aps(&inst, 2).unwrap(), int(1));
        assert_eq!(omms(&inst, 0).unwrap(), int(2));
    }

    #[test]
    fn aps_certificate_is_valid() {
        let inst = Instance::shared(vec![int(1), int(2), int(2)], [6, 5, 4, 3, 2, 1].map(int).to_vec()).unwrap();
        for i in 0..3 {
            let (z, cert) = aps_certificate(&inst, i, &SearchLimits::default()).unwrap();
            let total: Rational = cert.iter().map(|b| &b.weight).sum();
            assert_eq!(&total, inst.total_weight());
            for g in 0..inst.m() {
                let load: Rational = cert.iter().filter(|b| b.bundle.contains(&g)).map(|b| &b.weight).sum();
                assert!(&load <= inst.weight(i));
            }
            assert!(cert.iter().all(|b| inst.value(i, &b.bundle) >= z));
        }
    }

    #[test]
    fn aps_item_cap() {
        let inst = Instance::identical(vec![int(1), int(1)], 15).unwrap();
        assert!(matches!(aps(&inst, 0), Err(Error::TooManyItems { kind: "aps", m: 15, cap: 14 })));
    }

    #[test]
    fn partition_budget_is_enforced() {
        let inst = Instance::shared(vec![int(1); 4], (1..=14).map(|v| int(v * v + 1)).collect()).unwrap();
        let tight = SearchLimits {
            partition_budget: 10,
            ..SearchLimits::default()
        };
        assert!(matches!(mms_with(&inst, 0, 1, 4, &tight), Err(Error::SearchBudgetExceeded { kind: "mms", .. })));
    }

    #[test]
    fn wmms_uses_labeled_bundles() {
        // weights 1 and 3: best split gives the heavy slot three times the value
        let inst = Instance::shared(vec![int(1), int(3)], [3, 3, 3, 3].map(int).to_vec()).unwrap();
        assert_eq!(wmms(&inst, 0).unwrap(), int(3));
        assert_eq!(wmms(&inst, 1).unwrap(), int(9));
    }

    #[test]
    fn share_fairness_on_forty_sixty() {
        let inst = forty_sixty(vec![ratio(2, 5), ratio(3, 5)]);
        let a = Allocation::from_owners(2, &[1, 1]).unwrap();
        assert!(check_share_fairness(&inst, &a, ShareKind::Aps, &int(1)).unwrap().satisfied);
        let v = check_share_fairness(&inst, &a, ShareKind::Nmms, &ratio(1, 1000)).unwrap();
        assert_eq!(v.violating_agents(), vec![0]);
    }
}
