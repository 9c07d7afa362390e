//! Welfare-optimal allocations and constructive share algorithms.
//!
//! Optimum searches are exhaustive. Among tied optima the canonical one is the
//! allocation with the lexicographically smallest owner vector, which on
//! identical items is the lexicographically largest count vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::enumerate::{compositions, optimal_owners};
use crate::error::{Error, Result};
use crate::fairness::check_shape;
use crate::limits::SearchLimits;
use crate::model::{counts_to_allocation, Allocation, IdenticalCounts, Instance};
use crate::picking::{run_sequence, PickingSequence};
use crate::rational::{floor_int, to_integers};
use crate::shares::mms_with;
use crate::Rational;

/// Every optimal allocation, in enumeration order, and the canonical one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optima {
    pub canonical: Allocation,
    pub all: Vec<Allocation>,
}

/// Every optimal count vector (identical items), and the canonical one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOptima {
    pub canonical: IdenticalCounts,
    pub all: Vec<IdenticalCounts>,
}

fn to_optima(n: usize, owners: Vec<Vec<usize>>) -> Optima {
    let all: Vec<Allocation> = owners
        .iter()
        .map(|o| Allocation::from_owners(n, o).expect("owners in range"))
        .collect();
    Optima {
        canonical: all[0].clone(),
        all,
    }
}

/// Weighted Nash objective. Agents with positive utility are counted first;
/// among allocations with equally many, the product `prod u_i^{w_i}` over
/// those agents decides. Weights are written `w_i = p_i / D`; `product` holds
/// `prod u_i^{p_i}`, which orders allocations the same way.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NashObjective {
    pub positive_count: usize,
    pub product: Rational,
}

fn nash_exponents(weights: &[Rational]) -> Vec<usize> {
    let (p, _) = to_integers(weights);
    let g = p.iter().fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
    p.iter()
        .map(|v| usize::try_from(v / &g).expect("weight numerators fit in usize after clearing"))
        .collect()
}

fn nash_of(values: &[Rational], exps: &[usize]) -> NashObjective {
    let mut positive_count = 0;
    let mut product = Rational::one();
    for (u, &p) in values.iter().zip(exps) {
        if u.is_positive() {
            positive_count += 1;
            product *= num_traits::pow(u.clone(), p);
        }
    }
    NashObjective {
        positive_count,
        product,
    }
}

pub fn nash_objective(inst: &Instance, a: &Allocation) -> NashObjective {
    let values: Vec<Rational> = (0..inst.n()).map(|i| inst.value(i, a.bundle(i))).collect();
    nash_of(&values, &nash_exponents(inst.weights()))
}

/// Per-agent integer rows sharing one scale per agent.
struct ScaledRows {
    rows: Vec<Vec<BigInt>>,
    scales: Vec<BigInt>,
}

impl ScaledRows {
    fn new(inst: &Instance) -> Self {
        let (rows, scales) = (0..inst.n()).map(|i| to_integers(inst.row(i))).unzip();
        ScaledRows { rows, scales }
    }

    fn values(&self, owners: &[usize]) -> Vec<Rational> {
        let mut sums = vec![BigInt::zero(); self.rows.len()];
        for (g, &i) in owners.iter().enumerate() {
            sums[i] += &self.rows[i][g];
        }
        sums.into_iter()
            .zip(&self.scales)
            .map(|(s, d)| Rational::new(s, d.clone()))
            .collect()
    }
}

/// All maximum weighted Nash welfare allocations.
pub fn max_weighted_nash(inst: &Instance) -> Result<Optima> {
    max_weighted_nash_with(inst, &SearchLimits::default())
}

pub fn max_weighted_nash_with(inst: &Instance, limits: &SearchLimits) -> Result<Optima> {
    let rows = ScaledRows::new(inst);
    let exps = nash_exponents(inst.weights());
    let (_, owners) = optimal_owners(inst.n(), inst.m(), limits, |o| nash_of(&rows.values(o), &exps))?;
    Ok(to_optima(inst.n(), owners))
}

fn best_counts<K: Ord>(n: usize, m: usize, key: impl Fn(&[usize]) -> K) -> CountOptima {
    let mut best: Option<K> = None;
    let mut all = Vec::new();
    for c in compositions(n, m) {
        let k = key(&c);
        match &best {
            Some(b) if &k < b => {}
            Some(b) if &k == b => all.push(IdenticalCounts::new_unchecked(c)),
            _ => {
                best = Some(k);
                all.clear();
                all.push(IdenticalCounts::new_unchecked(c));
            }
        }
    }
    CountOptima {
        canonical: all[0].clone(),
        all,
    }
}

/// Maximum weighted Nash welfare over count vectors when all `m` items are
/// identical (utility one each).
pub fn max_weighted_nash_counts(weights: &[Rational], m: usize) -> CountOptima {
    let exps = nash_exponents(weights);
    best_counts(weights.len(), m, |c| {
        let values: Vec<Rational> = c.iter().map(|&a| Rational::from_integer(a.into())).collect();
        nash_of(&values, &exps)
    })
}

/// Sorted-ascending vector compared lexicographically; larger is better.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LeximinVector(#[serde(with = "crate::rational::serde_str::vec")] pub Vec<Rational>);

impl LeximinVector {
    pub fn new(mut values: Vec<Rational>) -> Self {
        values.sort();
        LeximinVector(values)
    }
}

fn weg_terms(values: &[Rational], totals: &[Rational], rel: &[Rational]) -> LeximinVector {
    LeximinVector::new(
        values
            .iter()
            .zip(totals)
            .zip(rel)
            .map(|((u, t), r)| if t.is_zero() { -r } else { u / t - r })
            .collect(),
    )
}

/// `u_i(A_i)/u_i(M) - w_i/w_N` per agent, sorted; an agent who values nothing
/// contributes `-w_i/w_N`.
pub fn leximin_vector(inst: &Instance, a: &Allocation) -> LeximinVector {
    let values: Vec<Rational> = (0..inst.n()).map(|i| inst.value(i, a.bundle(i))).collect();
    let totals: Vec<Rational> = (0..inst.n()).map(|i| inst.total_value(i)).collect();
    let rel: Vec<Rational> = (0..inst.n()).map(|i| inst.relative_weight(i)).collect();
    weg_terms(&values, &totals, &rel)
}

/// All weighted egalitarian allocations.
pub fn weg(inst: &Instance) -> Result<Optima> {
    weg_with(inst, &SearchLimits::default())
}

pub fn weg_with(inst: &Instance, limits: &SearchLimits) -> Result<Optima> {
    let rows = ScaledRows::new(inst);
    let totals: Vec<Rational> = (0..inst.n()).map(|i| inst.total_value(i)).collect();
    let rel: Vec<Rational> = (0..inst.n()).map(|i| inst.relative_weight(i)).collect();
    let (_, owners) = optimal_owners(inst.n(), inst.m(), limits, |o| weg_terms(&rows.values(o), &totals, &rel))?;
    Ok(to_optima(inst.n(), owners))
}

/// Leximin vector of `a_i - q_i`, the identical-items objective scaled by `m`.
pub fn quota_deviation(weights: &[Rational], counts: &[usize]) -> LeximinVector {
    let q = crate::fairness::quotas(weights, counts.iter().sum());
    LeximinVector::new(counts.iter().zip(q).map(|(&a, q)| Rational::from_integer(a.into()) - q).collect())
}

/// Weighted egalitarian count vectors by exhaustive search over compositions.
pub fn weg_counts(weights: &[Rational], m: usize) -> CountOptima {
    best_counts(weights.len(), m, |c| quota_deviation(weights, c))
}

/// A weighted egalitarian count vector without enumeration: floors of the
/// quotas, remaining items to the largest fractional parts (lowest index on
/// ties), then single-item transfers while they improve the leximin vector.
pub fn weg_identical(weights: &[Rational], m: usize) -> IdenticalCounts {
    let n = weights.len();
    let q = crate::fairness::quotas(weights, m);
    let mut counts: Vec<usize> = q
        .iter()
        .map(|v| usize::try_from(floor_int(v)).expect("quota fits"))
        .collect();
    let left = m - counts.iter().sum::<usize>();
    let mut by_frac: Vec<usize> = (0..n).collect();
    by_frac.sort_by(|&a, &b| q[b].fract().cmp(&q[a].fract()).then(a.cmp(&b)));
    for &i in by_frac.iter().take(left) {
        counts[i] += 1;
    }

    let mut current = quota_deviation(weights, &counts);
    loop {
        let mut improved = None;
        for from in 0..n {
            if counts[from] == 0 {
                continue;
            }
            for to in (0..n).filter(|&t| t != from) {
                counts[from] -= 1;
                counts[to] += 1;
                let cand = quota_deviation(weights, &counts);
                counts[to] -= 1;
                counts[from] += 1;
                if cand > current && improved.as_ref().is_none_or(|(_, _, b)| cand > *b) {
                    improved = Some((from, to, cand));
                }
            }
        }
        match improved {
            Some((from, to, cand)) => {
                counts[from] -= 1;
                counts[to] += 1;
                current = cand;
            }
            None => return IdenticalCounts::new_unchecked(counts),
        }
    }
}

/// Unweighted round robin with agents ordered by non-increasing weight (lower
/// index first on ties).
pub fn ordered_round_robin(inst: &Instance) -> Allocation {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by(|&a, &b| inst.weight(b).cmp(inst.weight(a)).then(a.cmp(&b)));
    let picks = order.iter().copied().cycle().take(inst.m()).collect();
    let seq = PickingSequence::new(picks, inst.n()).expect("agents in range");
    run_sequence(inst, &seq).expect("sequence length equals m")
}

/// Greedy allocation guaranteeing half of every agent's normalized maximin
/// share when no single item is worth more than that share to an agent
/// with a positive share. While some agent holds less than half its share,
/// the unallocated item and such agent with the largest `u_i(g) / MMS_i` are
/// matched (lowest agent, then lowest item, on ties). Leftover items go to
/// agent 0.
pub fn half_nmms_allocate(inst: &Instance) -> Result<Allocation> {
    half_nmms_allocate_with(inst, &SearchLimits::default())
}

pub fn half_nmms_allocate_with(inst: &Instance, limits: &SearchLimits) -> Result<Allocation> {
    let n = inst.n();
    let base: Vec<Rational> = (0..n).map(|i| mms_with(inst, i, 1, n, limits)).collect::<Result<_>>()?;
    let nmms: Vec<Rational> = (0..n)
        .map(|i| inst.relative_weight(i) * Rational::from_integer(n.into()) * &base[i])
        .collect();
    for i in (0..n).filter(|&i| nmms[i].is_positive()) {
        let all: Vec<usize> = (0..inst.m()).collect();
        if let Some(g) = inst.favorite(i, &all).filter(|&g| inst.utility(i, g) > &nmms[i]) {
            return Err(Error::PreconditionViolated {
                agent: i,
                item: g,
                value: inst.utility(i, g).clone(),
                share: nmms[i].clone(),
            });
        }
    }
    let half = |i: usize| &nmms[i] / Rational::from_integer(2.into());
    let mut owners: Vec<Option<usize>> = vec![None; inst.m()];
    let mut have = vec![Rational::zero(); n];
    loop {
        let mut best: Option<(Rational, usize, usize)> = None;
        for i in (0..n).filter(|&i| have[i] < half(i)) {
            for g in (0..inst.m()).filter(|&g| owners[g].is_none()) {
                let score = inst.utility(i, g) / &base[i];
                if best.as_ref().is_none_or(|(b, _, _)| score > *b) {
                    best = Some((score, i, g));
                }
            }
        }
        let Some((_, i, g)) = best else { break };
        owners[g] = Some(i);
        have[i] += inst.utility(i, g);
    }
    let owners: Vec<usize> = owners.into_iter().map(|o| o.unwrap_or(0)).collect();
    Allocation::from_owners(n, &owners)
}

/// Directed graph on agents for binary utilities (weights normalized to sum
/// to one): `i -> j` when `i` holds fewer than `w_i z_i` of its valued items
/// and `j` holds more than `w_j z_i` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotaGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl QuotaGraph {
    pub fn is_acyclic(&self) -> bool {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..self.n).map(|_| g.add_node(())).collect();
        for &(i, j) in &self.edges {
            g.add_edge(nodes[i], nodes[j], ());
        }
        !is_cyclic_directed(&g)
    }

    pub fn out_degree(&self, agent: usize) -> usize {
        self.edges.iter().filter(|(i, _)| *i == agent).count()
    }
}

pub fn weg_binary_quota_graph(inst: &Instance, a: &Allocation) -> Result<QuotaGraph> {
    if !inst.is_binary() {
        return Err(Error::NotBinary);
    }
    check_shape(inst, a)?;
    for i in 0..inst.n() {
        if let Some(&g) = a.bundle(i).iter().find(|&&g| inst.utility(i, g).is_zero()) {
            return Err(Error::NotWasteless { agent: i, item: g });
        }
    }
    let n = inst.n();
    let rel: Vec<Rational> = (0..n).map(|i| inst.relative_weight(i)).collect();
    let z: Vec<Rational> = (0..n).map(|i| inst.total_value(i)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        if inst.value(i, a.bundle(i)) >= &rel[i] * &z[i] {
            continue;
        }
        for j in (0..n).filter(|&j| j != i) {
            if inst.value(i, a.bundle(j)) > &rel[j] * &z[i] {
                edges.push((i, j));
            }
        }
    }
    Ok(QuotaGraph { n, edges })
}

/// Count vectors to allocations, for callers working on identical items.
pub fn count_optima_allocations(opt: &CountOptima) -> Vec<Allocation> {
    opt.all.iter().map(counts_to_allocation).collect()
}

/// Maximum weighted Nash welfare optima, searched over count vectors when the
/// items are identical.
pub fn mwnw_optima(inst: &Instance, limits: &SearchLimits) -> Result<Optima> {
    if inst.is_identical_items() {
        let opt = max_weighted_nash_counts(inst.weights(), inst.m());
        return Ok(counts_optima(&opt));
    }
    max_weighted_nash_with(inst, limits)
}

/// Weighted egalitarian optima, searched over count vectors when the items
/// are identical.
pub fn weg_optima(inst: &Instance, limits: &SearchLimits) -> Result<Optima> {
    if inst.is_identical_items() {
        let opt = weg_counts(inst.weights(), inst.m());
        return Ok(counts_optima(&opt));
    }
    weg_with(inst, limits)
}

fn counts_optima(opt: &CountOptima) -> Optima {
    Optima {
        canonical: counts_to_allocation(&opt.canonical),
        all: count_optima_allocations(opt),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::{check_oef1, check_quota};
    use crate::rational::{int, ratio};
    use crate::shares::{check_share_fairness, ShareKind};

    fn counts_of(opt: &CountOptima) -> Vec<Vec<usize>> {
        opt.all.iter().map(|c| c.counts().to_vec()).collect()
    }

    #[test]
    fn nash_6111() {
        let opt = max_weighted_nash_counts(&[int(6), int(1), int(1), int(1)], 12);
        assert!(opt.all.iter().all(|c| c.counts()[0] == 9));
        assert_eq!(opt.canonical.counts(), &[9, 1, 1, 1]);
        let nine = nash_of(&[int(9), int(1), int(1), int(1)], &[6, 1, 1, 1]);
        let eight = nash_of(&[int(8), int(2), int(1), int(1)], &[6, 1, 1, 1]);
        assert_eq!(nine.product, int(531_441));
        assert_eq!(eight.product, int(524_288));
    }

    #[test]
    fn nash_counts_match_allocations() {
        let w = vec![int(3), int(1), int(1), int(1), int(1)];
        let inst = Instance::identical(w.clone(), 5).unwrap();
        let full = max_weighted_nash(&inst).unwrap();
        assert!(full.all.iter().all(|a| a.counts() == vec![1, 1, 1, 1, 1]));
        assert_eq!(counts_of(&max_weighted_nash_counts(&w, 5)), vec![vec![1, 1, 1, 1, 1]]);
    }

    #[test]
    fn nash_prefers_more_positive_agents() {
        let inst = Instance::new(vec![int(1), int(1)], vec![vec![int(5), int(5)], vec![int(0), int(1)]]).unwrap();
        let opt = max_weighted_nash(&inst).unwrap();
        assert_eq!(opt.all.len(), 1);
        assert_eq!(opt.canonical.owners(), vec![0, 1]);
    }

    #[test]
    fn weg_examples() {
        let inst = Instance::identical(vec![int(2), int(1)], 1).unwrap();
        assert_eq!(weg(&inst).unwrap().canonical.owners(), vec![0]);
        let w411 = vec![int(4), int(1), int(1)];
        let opt = weg_counts(&w411, 3);
        assert_eq!(counts_of(&opt), vec![vec![2, 1, 0], vec![2, 0, 1]]);
        let full = weg(&Instance::identical(w411.clone(), 3).unwrap()).unwrap();
        assert_eq!(full.canonical.counts(), vec![2, 1, 0]);
        assert!(full.all.iter().all(|a| a.counts()[0] == 2));
        assert_eq!(weg_identical(&w411, 3).counts(), &[2, 1, 0]);
        assert_eq!(weg_identical(&[int(1), int(1)], 2).counts(), &[1, 1]);
        assert_eq!(weg_counts(&[int(1), int(1), int(1)], 2).all.len(), 3);
        assert_eq!(weg_counts(&vec![int(1); 3], 6).all.len(), 1);
    }

    #[test]
    fn weg_zero_value_agent_is_constant() {
        let inst = Instance::new(vec![int(1), int(1)], vec![vec![int(0), int(0)], vec![int(1), int(2)]]).unwrap();
        let opt = weg(&inst).unwrap();
        assert_eq!(opt.all.len(), 1);
        assert_eq!(opt.canonical.owners(), vec![1, 1]);
    }

    #[test]
    fn round_robin_example() {
        let inst = Instance::shared(vec![ratio(3, 5), ratio(2, 5)], vec![int(3), int(2), int(1)]).unwrap();
        let a = ordered_round_robin(&inst);
        assert_eq!(a.bundles(), &[vec![0, 2], vec![1]]);
        assert!(check_oef1(&inst, &a).unwrap().satisfied);
        let inst = Instance::shared(vec![ratio(2, 5), ratio(3, 5)], vec![int(3), int(2), int(1)]).unwrap();
        assert_eq!(ordered_round_robin(&inst).bundles(), &[vec![1], vec![0, 2]]);
    }

    #[test]
    fn half_nmms_examples() {
        let inst = Instance::identical(vec![int(1), int(1)], 4).unwrap();
        let a = half_nmms_allocate(&inst).unwrap();
        assert!(check_share_fairness(&inst, &a, ShareKind::Nmms, &ratio(1, 2)).unwrap().satisfied);
        assert!(a.counts().iter().all(|&c| c >= 1));
        let inst = Instance::shared(vec![ratio(2, 5), ratio(3, 5)], vec![int(40), int(60)]).unwrap();
        let r = half_nmms_allocate(&inst);
        assert!(matches!(r, Err(Error::PreconditionViolated { agent: 0, item: 1, .. })), "{r:?}");
        let zero = Instance::shared(vec![int(1), int(2)], vec![int(0); 3]).unwrap();
        assert_eq!(half_nmms_allocate(&zero).unwrap().counts(), vec![3, 0]);
    }

    #[test]
    fn quota_graph_examples() {
        let inst = Instance::identical(vec![int(1), int(1)], 4).unwrap();
        let even = Allocation::from_owners(2, &[0, 0, 1, 1]).unwrap();
        assert!(weg_binary_quota_graph(&inst, &even).unwrap().edges.is_empty());
        let skewed = Allocation::from_owners(2, &[0, 1, 1, 1]).unwrap();
        let g = weg_binary_quota_graph(&inst, &skewed).unwrap();
        assert_eq!(g.edges, vec![(0, 1)]);
        assert!(g.is_acyclic());
        assert_eq!(g.out_degree(0), 1);
        let waste = Instance::new(vec![int(1), int(1)], vec![vec![int(1), int(0)], vec![int(1), int(1)]]).unwrap();
        assert!(matches!(
            weg_binary_quota_graph(&waste, &Allocation::from_owners(2, &[0, 0]).unwrap()),
            Err(Error::NotWasteless { agent: 0, item: 1 })
        ));
        let frac = Instance::shared(vec![int(1), int(1)], vec![ratio(1, 2)]).unwrap();
        assert!(matches!(
            weg_binary_quota_graph(&frac, &Allocation::from_owners(2, &[0]).unwrap()),
            Err(Error::NotBinary)
        ));
    }

    #[test]
    fn weg_on_identical_meets_quotas() {
        let inst = Instance::identical(vec![ratio(7, 3), int(1), ratio(1, 2)], 6).unwrap();
        for a in weg(&inst).unwrap().all {
            assert!(check_quota(&inst, &a).unwrap().satisfied());
        }
    }
}
