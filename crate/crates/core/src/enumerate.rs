//! Exhaustive enumeration of allocations and count vectors.
//!
//! Allocations are visited in lexicographic order of their owner vectors
//! (the owner of item 0 varies slowest). Every optimum search in the crate
//! walks this order, so "first optimum found" and "lexicographically smallest
//! owner vector" coincide regardless of the number of worker threads.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::SearchLimits;
use crate::model::{counts_to_allocation, Allocation, IdenticalCounts, Instance};

/// `n^m`.
pub fn allocation_count(n: usize, m: usize) -> BigUint {
    num_traits::pow(BigUint::from(n), m)
}

fn budgeted_count(n: usize, m: usize, budget: u64) -> Result<u64> {
    let required = allocation_count(n, m);
    match required.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded { required, budget }),
    }
}

/// Writes the owner vector of the allocation at position `index`.
pub fn decode_owners(mut index: u64, n: usize, owners: &mut [usize]) {
    for slot in owners.iter_mut().rev() {
        *slot = (index % n as u64) as usize;
        index /= n as u64;
    }
}

fn advance(owners: &mut [usize], n: usize) {
    for slot in owners.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return;
        }
        *slot = 0;
    }
}

/// Iterator over all owner vectors in `[n]^m`.
#[derive(Debug, Clone)]
pub struct OwnerVectors {
    n: usize,
    owners: Vec<usize>,
    remaining: u64,
}

impl OwnerVectors {
    pub fn new(n: usize, m: usize, budget: u64) -> Result<Self> {
        let total = budgeted_count(n, m, budget)?;
        Ok(OwnerVectors {
            n,
            owners: vec![0; m],
            remaining: total,
        })
    }

    fn range(n: usize, m: usize, start: u64, len: u64) -> Self {
        let mut owners = vec![0; m];
        decode_owners(start, n, &mut owners);
        OwnerVectors {
            n,
            owners,
            remaining: len,
        }
    }

    /// Calls `f` on each owner vector without allocating.
    pub fn for_each_ref(mut self, mut f: impl FnMut(&[usize])) {
        while self.remaining > 0 {
            f(&self.owners);
            self.remaining -= 1;
            if self.remaining > 0 {
                advance(&mut self.owners, self.n);
            }
        }
    }
}

impl Iterator for OwnerVectors {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.owners.clone();
        self.remaining -= 1;
        if self.remaining > 0 {
            advance(&mut self.owners, self.n);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Iterator over every complete allocation of an instance.
#[derive(Debug, Clone)]
pub struct Allocations {
    n: usize,
    inner: OwnerVectors,
}

impl Iterator for Allocations {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        let owners = self.inner.next()?;
        Some(Allocation::from_owners(self.n, &owners).expect("owners in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

/// All `n^m` allocations with the default budget.
pub fn enumerate_allocations(inst: &Instance) -> Result<Allocations> {
    enumerate_allocations_with(inst, &SearchLimits::default())
}

pub fn enumerate_allocations_with(inst: &Instance, limits: &SearchLimits) -> Result<Allocations> {
    Ok(Allocations {
        n: inst.n(),
        inner: OwnerVectors::new(inst.n(), inst.m(), limits.allocation_budget)?,
    })
}

/// Every allocation up to relabeling of identical items: one allocation per
/// count vector when the items are identical, all `n^m` otherwise.
pub fn allocation_classes(inst: &Instance, limits: &SearchLimits) -> Result<Box<dyn Iterator<Item = Allocation>>> {
    if inst.is_identical_items() {
        let m = inst.m();
        return Ok(Box::new(
            compositions(inst.n(), m)
                .into_iter()
                .map(move |c| counts_to_allocation(&IdenticalCounts::new_unchecked(c))),
        ));
    }
    Ok(Box::new(enumerate_allocations_with(inst, limits)?))
}

/// All vectors of `n` nonnegative integers summing to `m`, lexicographically
/// descending, so `(m, 0, .., 0)` comes first.
pub fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in (0..=left).rev() {
            cur.push(c);
            rec(n, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, m, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Best key over all owner vectors, and every owner vector attaining it in
/// enumeration order.
pub(crate) fn optimal_owners<K, F>(
    n: usize,
    m: usize,
    limits: &SearchLimits,
    key: F,
) -> Result<(K, Vec<Vec<usize>>)>
where
    K: Ord + Send,
    F: Fn(&[usize]) -> K + Sync,
{
    let total = budgeted_count(n, m, limits.allocation_budget)?;
    let scan = |start: u64, len: u64| {
        let mut best: Option<(K, Vec<Vec<usize>>)> = None;
        OwnerVectors::range(n, m, start, len).for_each_ref(|owners| {
            let k = key(owners);
            match &mut best {
                Some((b, all)) => match k.cmp(b) {
                    std::cmp::Ordering::Greater => {
                        *b = k;
                        all.clear();
                        all.push(owners.to_vec());
                    }
                    std::cmp::Ordering::Equal => all.push(owners.to_vec()),
                    std::cmp::Ordering::Less => {}
                },
                None => best = Some((k, vec![owners.to_vec()])),
            }
        });
        best
    };

    let jobs = limits.jobs.max(1);
    let parts: Vec<Option<(K, Vec<Vec<usize>>)>> = if jobs == 1 || total < 4096 {
        vec![scan(0, total)]
    } else {
        let chunks = (jobs as u64 * 8).min(total);
        let size = total.div_ceil(chunks);
        let ranges: Vec<(u64, u64)> = (0..chunks)
            .map(|c| (c * size, size.min(total.saturating_sub(c * size))))
            .filter(|&(_, len)| len > 0)
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| ranges.par_iter().map(|&(s, l)| scan(s, l)).collect())
    };

    let mut merged: Option<(K, Vec<Vec<usize>>)> = None;
    for part in parts.into_iter().flatten() {
        merged = match merged {
            None => Some(part),
            Some((bk, mut ball)) => match part.0.cmp(&bk) {
                std::cmp::Ordering::Greater => Some(part),
                std::cmp::Ordering::Equal => {
                    ball.extend(part.1);
                    Some((bk, ball))
                }
                std::cmp::Ordering::Less => Some((bk, ball)),
            },
        };
    }
    Ok(merged.expect("at least one allocation"))
}
