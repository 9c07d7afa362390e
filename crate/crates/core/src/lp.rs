//! Exact rational simplex for `max c.x` subject to `A x <= b`, `x >= 0`, `b >= 0`.
//!
//! With a nonnegative right-hand side the slack basis is feasible, so a single
//! phase suffices. Bland's rule guarantees termination.

use num_traits::{Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    /// Stopped early because the objective reached the requested target.
    TargetReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Objective value of the final basic solution (a lower bound on the
    /// optimum when unbounded).
    pub value: Rational,
    pub solution: Vec<Rational>,
    /// Row prices read off the final tableau; an optimal dual solution when
    /// the status is `Optimal`.
    pub duals: Vec<Rational>,
}

/// Maximizes `c.x` over `A x <= b, x >= 0`. Panics if `b` has a negative
/// entry or the dimensions disagree. With `target`, returns as soon as the
/// objective reaches it.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational], target: Option<&Rational>) -> LpOutcome {
    let rows = a.len();
    let vars = c.len();
    assert_eq!(b.len(), rows, "one right-hand side per row");
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand side must be nonnegative");
    let cols = vars + rows;

    // Row-major tableau; the last column is the right-hand side.
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            assert_eq!(row.len(), vars, "row {r} has the wrong length");
            let mut full = Vec::with_capacity(cols + 1);
            full.extend(row.iter().cloned());
            full.extend((0..rows).map(|s| if s == r { Rational::from_integer(1.into()) } else { Rational::zero() }));
            full.push(b[r].clone());
            full
        })
        .collect();
    let mut obj: Vec<Rational> = c.iter().map(|v| -v).chain(std::iter::repeat_n(Rational::zero(), rows + 1)).collect();
    let mut basis: Vec<usize> = (vars..cols).collect();

    let status = loop {
        if let Some(goal) = target {
            if &obj[cols] >= goal {
                break LpStatus::TargetReached;
            }
        }
        let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) else {
            break LpStatus::Optimal;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            break LpStatus::Unbounded;
        };
        pivot(&mut t, &mut obj, pr, enter);
        basis[pr] = enter;
    };

    let mut solution = vec![Rational::zero(); vars];
    for (r, &v) in basis.iter().enumerate() {
        if v < vars {
            solution[v] = t[r][cols].clone();
        }
    }
    LpOutcome {
        status,
        value: obj[cols].clone(),
        solution,
        duals: obj[vars..cols].to_vec(),
    }
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let prow = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r != pr && !row[pc].is_zero() {
            let f = row[pc].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (v, pv) in obj.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
