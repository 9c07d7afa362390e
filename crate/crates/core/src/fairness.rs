//! Verifiers for weighted envy, proportionality, ordering and quota notions.
//!
//! The relaxations quantify over a removable or copyable item `B`. Every
//! condition is monotone in `u_i(B)`, so the verifiers always use the
//! evaluating agent's favorite eligible item and report it in the witness.

use num_traits::{One, Signed, Zero};
use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use crate::rational::{ceil_int, check_unit, floor_int};
use crate::verdict::{Subject, Verdict, Witness};
use crate::Rational;

pub(crate) fn check_shape(inst: &Instance, a: &Allocation) -> Result<()> {
    if a.n() != inst.n() || a.m() != inst.m() {
        return Err(Error::DimensionMismatch(format!(
            "allocation of {} items to {} agents does not fit an instance with {} agents and {} items",
            a.m(),
            a.n(),
            inst.n(),
            inst.m()
        )));
    }
    Ok(())
}

fn singleton(item: Option<usize>) -> Vec<usize> {
    item.into_iter().collect()
}

fn item_value(inst: &Instance, agent: usize, item: Option<usize>) -> Rational {
    item.map_or_else(Rational::zero, |g| inst.utility(agent, g).clone())
}

/// `max{0, u_i(A_j)/w_j - u_i(A_i)/w_i}`.
pub fn weighted_envy(inst: &Instance, a: &Allocation, i: usize, j: usize) -> Rational {
    let envy = inst.value(i, a.bundle(j)) / inst.weight(j) - inst.value(i, a.bundle(i)) / inst.weight(i);
    if envy.is_positive() {
        envy
    } else {
        Rational::zero()
    }
}

fn wef_margin(inst: &Instance, a: &Allocation, i: usize, j: usize, x: &Rational, y: &Rational) -> (Rational, Option<usize>) {
    let b = inst.favorite(i, a.bundle(j));
    let ub = item_value(inst, i, b);
    let own = inst.value(i, a.bundle(i));
    let other = inst.value(i, a.bundle(j));
    let margin = (own + y * &ub) / inst.weight(i) - (other - x * &ub) / inst.weight(j);
    (margin, b)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// WEF(x, y): for every pair there is `B` in `A_j` with `|B| <= 1` and
/// `(u_i(A_i) + y u_i(B)) / w_i >= (u_i(A_j) - x u_i(B)) / w_j`.
pub fn check_wef(inst: &Instance, a: &Allocation, x: &Rational, y: &Rational) -> Result<Verdict> {
    check_unit("x", x)?;
    check_unit("y", y)?;
    check_shape(inst, a)?;
    let witnesses = pairs(inst.n())
        .map(|(i, j)| {
            let (margin, b) = wef_margin(inst, a, i, j, x, y);
            Witness::new(Subject::Pair { agent: i, other: j }, margin, singleton(b))
        })
        .collect();
    Ok(Verdict::from_witnesses(format!("wef(x={x},y={y})"), witnesses))
}

/// WPROP(x, y): `u_i(A_i) >= (w_i/w_N) u_i(M) - ((w_i/w_N) n x + y) u_i(B)` for
/// some item `B` outside `A_i`.
pub fn check_wprop(inst: &Instance, a: &Allocation, x: &Rational, y: &Rational) -> Result<Verdict> {
    check_unit("x", x)?;
    check_unit("y", y)?;
    check_shape(inst, a)?;
    let n = Rational::from_integer(inst.n().into());
    let witnesses = (0..inst.n())
        .map(|i| {
            let outside = a.complement(i);
            let b = inst.favorite(i, &outside);
            let ub = item_value(inst, i, b);
            let rho = inst.relative_weight(i);
            let need = &rho * inst.total_value(i) - (&rho * &n * x + y) * ub;
            let margin = inst.value(i, a.bundle(i)) - need;
            Witness::new(Subject::Agent { agent: i }, margin, singleton(b))
        })
        .collect();
    Ok(Verdict::from_witnesses(format!("wprop(x={x},y={y})"), witnesses))
}

/// WPROP*(x, y): `(u_i(A_i) + y u_i(B)) / w_i >= (u_i(M) - x sum_j u_i(B_j)) / w_N`
/// with `B` outside `A_i` and one `B_j` from each other bundle. The witness
/// lists `B` first (if any), then the `B_j`.
pub fn check_wprop_star(inst: &Instance, a: &Allocation, x: &Rational, y: &Rational) -> Result<Verdict> {
    check_unit("x", x)?;
    check_unit("y", y)?;
    check_shape(inst, a)?;
    let witnesses = (0..inst.n())
        .map(|i| {
            let b = inst.favorite(i, &a.complement(i));
            let ub = item_value(inst, i, b);
            let mut items = singleton(b);
            let mut removed = Rational::zero();
            for j in (0..inst.n()).filter(|&j| j != i) {
                if let Some(g) = inst.favorite(i, a.bundle(j)) {
                    removed += inst.utility(i, g);
                    items.push(g);
                }
            }
            let left = (inst.value(i, a.bundle(i)) + y * ub) / inst.weight(i);
            let right = (inst.total_value(i) - x * removed) / inst.total_weight();
            Witness::new(Subject::Agent { agent: i }, left - right, items)
        })
        .collect();
    Ok(Verdict::from_witnesses(format!("wprop*(x={x},y={y})"), witnesses))
}

/// WWEF1: every pair satisfies WEF(1, 0) or WEF(0, 1). The margin is the
/// better of the two.
pub fn check_wwef1(inst: &Instance, a: &Allocation) -> Result<Verdict> {
    check_shape(inst, a)?;
    let (zero, one) = (Rational::zero(), Rational::one());
    let witnesses = pairs(inst.n())
        .map(|(i, j)| {
            let (remove, b) = wef_margin(inst, a, i, j, &one, &zero);
            let (copy, _) = wef_margin(inst, a, i, j, &zero, &one);
            Witness::new(Subject::Pair { agent: i, other: j }, remove.max(copy), singleton(b))
        })
        .collect();
    Ok(Verdict::from_witnesses("wwef1", witnesses))
}

/// Unweighted EF1 witnesses: `u_i(A_i) - u_i(A_j) + u_i(B)` per ordered pair.
pub fn ef1_witnesses(inst: &Instance, a: &Allocation) -> Vec<Witness> {
    pairs(inst.n())
        .map(|(i, j)| {
            let b = inst.favorite(i, a.bundle(j));
            let margin = inst.value(i, a.bundle(i)) - inst.value(i, a.bundle(j)) + item_value(inst, i, b);
            Witness::new(Subject::Pair { agent: i, other: j }, margin, singleton(b))
        })
        .collect()
}

fn envies(inst: &Instance, a: &Allocation, i: usize, j: usize) -> Option<Rational> {
    let margin = inst.value(i, a.bundle(i)) - inst.value(i, a.bundle(j));
    margin.is_negative().then_some(margin)
}

/// Weight classes, heaviest first; agents within a class ascending.
fn weight_tiers(inst: &Instance) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by(|&a, &b| inst.weight(b).cmp(inst.weight(a)).then(a.cmp(&b)));
    let mut tiers: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match tiers.last_mut() {
            Some(t) if inst.weight(t[0]) == inst.weight(i) => t.push(i),
            _ => tiers.push(vec![i]),
        }
    }
    tiers
}

fn tier_graph(inst: &Instance, a: &Allocation, tier: &[usize]) -> DiGraph<usize, Rational> {
    let mut g = DiGraph::new();
    let nodes: Vec<_> = tier.iter().map(|&i| g.add_node(i)).collect();
    for (p, &i) in tier.iter().enumerate() {
        for (q, &j) in tier.iter().enumerate() {
            if i != j {
                if let Some(margin) = envies(inst, a, i, j) {
                    // j must precede i
                    g.add_edge(nodes[q], nodes[p], margin);
                }
            }
        }
    }
    g
}

/// A renumbering by non-increasing weight in which nobody envies a later
/// agent, if one exists.
pub fn oef1_ordering(inst: &Instance, a: &Allocation) -> Option<Vec<usize>> {
    let mut order = Vec::with_capacity(inst.n());
    let tiers = weight_tiers(inst);
    for (k, tier) in tiers.iter().enumerate() {
        for &i in tier {
            for later in &tiers[k + 1..] {
                if later.iter().any(|&j| envies(inst, a, i, j).is_some()) {
                    return None;
                }
            }
        }
        let g = tier_graph(inst, a, tier);
        let sorted = toposort(&g, None).ok()?;
        order.extend(sorted.into_iter().map(|v| g[v]));
    }
    Some(order)
}

/// OEF1: unweighted EF1, plus an ordering by non-increasing weight in which no
/// agent envies a later one. Ordering violations are reported as pair
/// witnesses with the (negative) unweighted envy margin: envy from a heavier
/// agent toward a lighter one, and every envy edge inside a cycle among
/// equally weighted agents.
pub fn check_oef1(inst: &Instance, a: &Allocation) -> Result<Verdict> {
    check_shape(inst, a)?;
    let mut witnesses = ef1_witnesses(inst, a);
    let tiers = weight_tiers(inst);
    for (k, tier) in tiers.iter().enumerate() {
        for &i in tier {
            for &j in tiers[k + 1..].iter().flatten() {
                if let Some(margin) = envies(inst, a, i, j) {
                    witnesses.push(Witness::new(Subject::Pair { agent: i, other: j }, margin, vec![]));
                }
            }
        }
        let g = tier_graph(inst, a, tier);
        for scc in tarjan_scc(&g).into_iter().filter(|c| c.len() > 1) {
            let mut cyc: Vec<(usize, usize, Rational)> = g
                .edge_indices()
                .filter_map(|e| {
                    let (s, t) = g.edge_endpoints(e)?;
                    (scc.contains(&s) && scc.contains(&t)).then(|| (g[t], g[s], g[e].clone()))
                })
                .collect();
            cyc.sort_by_key(|&(i, j, _)| (i, j));
            for (i, j, margin) in cyc {
                witnesses.push(Witness::new(Subject::Pair { agent: i, other: j }, margin, vec![]));
            }
        }
    }
    Ok(Verdict::from_witnesses("oef1", witnesses))
}

/// Quotas and their satisfaction for identical items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotaReport {
    #[serde(with = "crate::rational::serde_str::vec")]
    pub quotas: Vec<Rational>,
    pub counts: Vec<usize>,
    pub lower_ok: Vec<bool>,
    pub upper_ok: Vec<bool>,
}

impl QuotaReport {
    pub fn lower_satisfied(&self) -> bool {
        self.lower_ok.iter().all(|&b| b)
    }

    pub fn upper_satisfied(&self) -> bool {
        self.upper_ok.iter().all(|&b| b)
    }

    pub fn satisfied(&self) -> bool {
        self.lower_satisfied() && self.upper_satisfied()
    }

    /// Lower and upper quota as a single verdict; margins are
    /// `a_i - floor(q_i)` and `ceil(q_i) - a_i`, one agent witness each.
    pub fn to_verdict(&self) -> Verdict {
        let mut w = Vec::new();
        for (i, q) in self.quotas.iter().enumerate() {
            let a = Rational::from_integer(self.counts[i].into());
            w.push(Witness::new(
                Subject::Agent { agent: i },
                &a - Rational::from_integer(floor_int(q)),
                vec![],
            ));
            w.push(Witness::new(
                Subject::Agent { agent: i },
                Rational::from_integer(ceil_int(q)) - a,
                vec![],
            ));
        }
        Verdict::from_witnesses("quota", w)
    }
}

/// `q_i = (w_i / w_N) m`.
pub fn quotas(weights: &[Rational], m: usize) -> Vec<Rational> {
    let total: Rational = weights.iter().sum();
    let m = Rational::from_integer(m.into());
    weights.iter().map(|w| w / &total * &m).collect()
}

/// Quota report for item counts directly.
pub fn quota_report_for_counts(weights: &[Rational], counts: &[usize]) -> QuotaReport {
    let q = quotas(weights, counts.iter().sum());
    let (lower_ok, upper_ok) = q
        .iter()
        .zip(counts)
        .map(|(q, &a)| {
            let a = num_bigint::BigInt::from(a);
            (a >= floor_int(q), a <= ceil_int(q))
        })
        .unzip();
    QuotaReport {
        quotas: q,
        counts: counts.to_vec(),
        lower_ok,
        upper_ok,
    }
}

/// Lower quota `a_i >= floor(q_i)` and upper quota `a_i <= ceil(q_i)`.
pub fn check_quota(inst: &Instance, a: &Allocation) -> Result<QuotaReport> {
    if !inst.is_identical_items() {
        return Err(Error::NotIdenticalItems);
    }
    check_shape(inst, a)?;
    Ok(quota_report_for_counts(inst.weights(), &a.counts()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{counts_to_allocation, IdenticalCounts};
    use crate::rational::{int, ratio};

    fn i411() -> Instance {
        Instance::identical(vec![int(4), int(1), int(1)], 3).unwrap()
    }

    fn counts(c: &[usize]) -> Allocation {
        counts_to_allocation(&IdenticalCounts::new(c.to_vec(), c.iter().sum()).unwrap())
    }

    #[test]
    fn weighted_envy_examples() {
        assert_eq!(weighted_envy(&i411(), &counts(&[1, 1, 1]), 0, 1), ratio(3, 4));
        assert_eq!(weighted_envy(&i411(), &counts(&[1, 1, 1]), 1, 0), int(0));
        let inst = Instance::shared(vec![ratio(2, 5), ratio(3, 5)], vec![int(40), int(60)]).unwrap();
        let a = Allocation::from_bundles(vec![vec![], vec![0, 1]], 2).unwrap();
        assert_eq!(weighted_envy(&inst, &a, 0, 1), ratio(500, 3));
    }

    #[test]
    fn wef_on_411() {
        let (zero, one) = (int(0), int(1));
        assert!(check_wef(&i411(), &counts(&[1, 1, 1]), &one, &zero).unwrap().satisfied);
        assert!(check_wef(&i411(), &counts(&[3, 0, 0]), &zero, &one).unwrap().satisfied);
        let v = check_wef(&i411(), &counts(&[1, 1, 1]), &zero, &one).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.violating_agents(), vec![0]);
    }

    #[test]
    fn wef_rejects_bad_parameters() {
        assert!(matches!(
            check_wef(&i411(), &counts(&[1, 1, 1]), &ratio(3, 2), &int(0)),
            Err(Error::ParameterOutOfRange { name: "x", .. })
        ));
    }

    #[test]
    fn wprop_on_incompatibility_instance() {
        let inst = Instance::identical(vec![ratio(1, 10), ratio(1, 10), ratio(4, 5)], 4).unwrap();
        let v = check_wprop(&inst, &counts(&[1, 1, 2]), &int(0), &int(1)).unwrap();
        assert_eq!(v.violating_agents(), vec![2]);
        let v = check_wprop(&inst, &counts(&[0, 1, 3]), &int(1), &int(0)).unwrap();
        assert_eq!(v.violating_agents(), vec![0]);
        let all = counts(&[0, 0, 4]);
        let v = check_wprop(&inst, &all, &int(0), &int(0)).unwrap();
        assert!(v.witnesses[2].margin >= int(0));
    }

    #[test]
    fn wprop_star_zero_is_proportionality() {
        let inst = Instance::new(
            vec![int(1), int(2)],
            vec![vec![int(3), int(1), int(2)], vec![int(1), int(1), int(4)]],
        )
        .unwrap();
        let a = Allocation::from_owners(2, &[0, 1, 1]).unwrap();
        let v = check_wprop_star(&inst, &a, &int(0), &int(0)).unwrap();
        assert_eq!(v.witnesses[0].margin, int(3) - ratio(6, 3));
        assert_eq!(v.witnesses[1].margin, ratio(5, 2) - ratio(6, 3));
    }

    #[test]
    fn oef1_heavier_must_not_envy_lighter() {
        let inst = Instance::shared(vec![int(3), int(1)], vec![int(1)]).unwrap();
        let heavy_has_it = Allocation::from_owners(2, &[0]).unwrap();
        assert!(check_oef1(&inst, &heavy_has_it).unwrap().satisfied);
        assert_eq!(oef1_ordering(&inst, &heavy_has_it), Some(vec![0, 1]));
        let light_has_it = Allocation::from_owners(2, &[1]).unwrap();
        let v = check_oef1(&inst, &light_has_it).unwrap();
        assert_eq!(v.violating_agents(), vec![0]);
        assert_eq!(oef1_ordering(&inst, &light_has_it), None);
    }

    #[test]
    fn oef1_equal_weight_cycle_fails() {
        let inst = Instance::new(
            vec![int(1), int(1)],
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap();
        let a = Allocation::from_owners(2, &[0, 1]).unwrap();
        let v = check_oef1(&inst, &a).unwrap();
        assert!(!v.satisfied);
        assert_eq!(v.violating_agents(), vec![0, 1]);
        assert_eq!(oef1_ordering(&inst, &a), None);
    }

    #[test]
    fn oef1_ef1_violation() {
        let inst = Instance::identical(vec![int(1), int(1)], 3).unwrap();
        let a = Allocation::from_owners(2, &[1, 1, 1]).unwrap();
        assert!(!check_oef1(&inst, &a).unwrap().satisfied);
    }

    #[test]
    fn quota_examples() {
        let r = check_quota(&i411(), &counts(&[1, 1, 1])).unwrap();
        assert_eq!(r.quotas, vec![int(2), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(r.lower_ok, vec![false, true, true]);
        assert!(r.upper_satisfied());
        let r = check_quota(&i411(), &counts(&[3, 0, 0])).unwrap();
        assert_eq!(r.upper_ok, vec![false, true, true]);
        assert!(r.lower_satisfied());
        assert!(check_quota(&i411(), &counts(&[2, 1, 0])).unwrap().satisfied());
        assert!(!r.to_verdict().satisfied);
        let inst = Instance::shared(vec![int(1), int(1)], vec![int(1), int(2)]).unwrap();
        assert_eq!(
            check_quota(&inst, &Allocation::from_owners(2, &[0, 1]).unwrap()),
            Err(Error::NotIdenticalItems)
        );
    }
}
