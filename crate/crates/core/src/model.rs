//! Instances, allocations and item-count vectors.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Agents with positive weights and nonnegative additive utilities over items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceData", into = "InstanceData")]
pub struct Instance {
    weights: Vec<Rational>,
    utilities: Vec<Vec<Rational>>,
    total_weight: Rational,
    items: usize,
}

/// Wire form of an instance: rationals as strings.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceData {
    #[serde(with = "crate::rational::serde_str::vec")]
    weights: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str::matrix")]
    utilities: Vec<Vec<Rational>>,
}

impl TryFrom<InstanceData> for Instance {
    type Error = Error;

    fn try_from(d: InstanceData) -> Result<Self> {
        Instance::new(d.weights, d.utilities)
    }
}

impl From<Instance> for InstanceData {
    fn from(inst: Instance) -> Self {
        InstanceData {
            weights: inst.weights,
            utilities: inst.utilities,
        }
    }
}

impl Instance {
    /// Validates weights and the `n x m` utility matrix.
    pub fn new(weights: Vec<Rational>, utilities: Vec<Vec<Rational>>) -> Result<Self> {
        let n = weights.len();
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        if utilities.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} weights but {} utility rows",
                utilities.len()
            )));
        }
        let items = utilities[0].len();
        for (agent, row) in utilities.iter().enumerate() {
            if row.len() != items {
                return Err(Error::DimensionMismatch(format!(
                    "row {agent} has {} entries, row 0 has {items}",
                    row.len()
                )));
            }
        }
        for (agent, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    agent,
                    value: w.clone(),
                });
            }
        }
        for (agent, row) in utilities.iter().enumerate() {
            for (item, u) in row.iter().enumerate() {
                if u.is_negative() {
                    return Err(Error::NegativeUtility {
                        agent,
                        item,
                        value: u.clone(),
                    });
                }
            }
        }
        let total_weight = weights.iter().sum();
        Ok(Instance {
            weights,
            utilities,
            total_weight,
            items,
        })
    }

    /// `m` identical items every agent values at one.
    pub fn identical(weights: Vec<Rational>, m: usize) -> Result<Self> {
        let n = weights.len();
        Instance::new(weights, vec![vec![Rational::one(); m]; n])
    }

    /// Every agent shares the utility vector `row`.
    pub fn shared(weights: Vec<Rational>, row: Vec<Rational>) -> Result<Self> {
        let n = weights.len();
        Instance::new(weights, vec![row; n])
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.items
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, agent: usize) -> &Rational {
        &self.weights[agent]
    }

    /// `w_N`, the sum of all weights.
    pub fn total_weight(&self) -> &Rational {
        &self.total_weight
    }

    /// `w_i / w_N`.
    pub fn relative_weight(&self, agent: usize) -> Rational {
        &self.weights[agent] / &self.total_weight
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn row(&self, agent: usize) -> &[Rational] {
        &self.utilities[agent]
    }

    pub fn utility(&self, agent: usize, item: usize) -> &Rational {
        &self.utilities[agent][item]
    }

    /// `u_i(S)`; panics on out-of-range indices. See [`bundle_utility`] for the
    /// checked form.
    pub fn value(&self, agent: usize, items: &[usize]) -> Rational {
        let row = &self.utilities[agent];
        items.iter().map(|&g| &row[g]).sum()
    }

    /// `u_i(M)`.
    pub fn total_value(&self, agent: usize) -> Rational {
        self.utilities[agent].iter().sum()
    }

    /// Every agent values every item at the same positive amount.
    pub fn is_identical_items(&self) -> bool {
        let Some(first) = self.utilities[0].first() else {
            return true;
        };
        first.is_positive() && self.utilities.iter().flatten().all(|u| u == first)
    }

    /// Every utility is zero or one.
    pub fn is_binary(&self) -> bool {
        self.utilities
            .iter()
            .flatten()
            .all(|u| u.is_zero() || u.is_one())
    }

    /// Item of maximum utility to `agent` among `items`, lowest index on ties.
    pub fn favorite<'a, I>(&self, agent: usize, items: I) -> Option<usize>
    where
        I: IntoIterator<Item = &'a usize>,
    {
        let row = &self.utilities[agent];
        let mut best: Option<usize> = None;
        for &g in items {
            best = match best {
                Some(b) if row[b] > row[g] || (row[b] == row[g] && b < g) => Some(b),
                _ => Some(g),
            };
        }
        best
    }

    pub(crate) fn check_agent(&self, agent: usize) -> Result<()> {
        if agent < self.n() {
            Ok(())
        } else {
            Err(Error::AgentOutOfRange { agent, n: self.n() })
        }
    }
}

/// Same as [`Instance::new`].
pub fn validate_instance(weights: Vec<Rational>, utilities: Vec<Vec<Rational>>) -> Result<Instance> {
    Instance::new(weights, utilities)
}

/// `u_i(S)` with index checking.
pub fn bundle_utility(inst: &Instance, agent: usize, items: &[usize]) -> Result<Rational> {
    inst.check_agent(agent)?;
    if let Some(&item) = items.iter().find(|&&g| g >= inst.m()) {
        return Err(Error::ItemOutOfRange { item, m: inst.m() });
    }
    Ok(inst.value(agent, items))
}

/// A complete partition of the items into one bundle per agent. Bundles hold
/// zero-based item indices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

impl Allocation {
    /// Builds the allocation where item `g` goes to `owners[g]`.
    pub fn from_owners(n: usize, owners: &[usize]) -> Result<Self> {
        let mut bundles = vec![Vec::new(); n];
        for (item, &agent) in owners.iter().enumerate() {
            if agent >= n {
                return Err(Error::AgentOutOfRange { agent, n });
            }
            bundles[agent].push(item);
        }
        Ok(Allocation { bundles })
    }

    /// Validates that `bundles` partition `0..m`.
    pub fn from_bundles(mut bundles: Vec<Vec<usize>>, m: usize) -> Result<Self> {
        let mut seen = vec![false; m];
        for (agent, bundle) in bundles.iter_mut().enumerate() {
            bundle.sort_unstable();
            for &item in bundle.iter() {
                if item >= m {
                    return Err(Error::ItemOutOfRange { item, m });
                }
                if seen[item] {
                    return Err(Error::NotPartition(format!(
                        "item {item} appears twice (again in bundle of agent {agent})"
                    )));
                }
                seen[item] = true;
            }
        }
        if let Some(item) = seen.iter().position(|s| !s) {
            return Err(Error::NotPartition(format!("item {item} is not allocated")));
        }
        Ok(Allocation { bundles })
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn m(&self) -> usize {
        self.bundles.iter().map(Vec::len).sum()
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    pub fn counts(&self) -> Vec<usize> {
        self.bundles.iter().map(Vec::len).collect()
    }

    /// Owner of each item; the lexicographic order of this vector is the
    /// canonical order used to pick representatives among tied optima.
    pub fn owners(&self) -> Vec<usize> {
        let mut owners = vec![0; self.m()];
        for (agent, bundle) in self.bundles.iter().enumerate() {
            for &g in bundle {
                owners[g] = agent;
            }
        }
        owners
    }

    /// Items outside the bundle of `agent`.
    pub fn complement(&self, agent: usize) -> Vec<usize> {
        let mut items: Vec<usize> = self
            .bundles
            .iter()
            .enumerate()
            .filter(|(a, _)| *a != agent)
            .flat_map(|(_, b)| b.iter().copied())
            .collect();
        items.sort_unstable();
        items
    }

    /// Checks that this allocation partitions the items of `inst`.
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.n() != inst.n() {
            return Err(Error::DimensionMismatch(format!(
                "allocation has {} bundles, instance has {} agents",
                self.n(),
                inst.n()
            )));
        }
        Allocation::from_bundles(self.bundles.clone(), inst.m()).map(|_| ())
    }
}

/// Number of items each agent receives when all items are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IdenticalCounts(Vec<usize>);

impl IdenticalCounts {
    pub fn new(counts: Vec<usize>, m: usize) -> Result<Self> {
        let sum: usize = counts.iter().sum();
        if sum != m {
            return Err(Error::CountSumMismatch { sum, m });
        }
        Ok(IdenticalCounts(counts))
    }

    pub(crate) fn new_unchecked(counts: Vec<usize>) -> Self {
        IdenticalCounts(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_allocation(&self) -> Allocation {
        counts_to_allocation(self)
    }
}

impl From<&Allocation> for IdenticalCounts {
    fn from(a: &Allocation) -> Self {
        IdenticalCounts(a.counts())
    }
}

/// Gives the first `c_1` items to agent 1, the next `c_2` to agent 2, and so on.
pub fn counts_to_allocation(counts: &IdenticalCounts) -> Allocation {
    let mut next = 0;
    let bundles = counts
        .0
        .iter()
        .map(|&c| {
            let bundle: Vec<usize> = (next..next + c).collect();
            next += c;
            bundle
        })
        .collect();
    Allocation { bundles }
}
