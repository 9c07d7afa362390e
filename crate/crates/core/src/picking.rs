//! Picking sequences: execution, weighted adaptive and divisor sequences, and
//! the prefix conditions that decide which guarantees a sequence offers.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance};
use crate::rational::{check_unit, ratio};
use crate::verdict::{Subject, Verdict, Witness};
use crate::Rational;

/// Agents in the order they pick.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PickingSequence(Vec<usize>);

impl PickingSequence {
    pub fn new(picks: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&agent) = picks.iter().find(|&&a| a >= n) {
            return Err(Error::AgentOutOfRange { agent, n });
        }
        Ok(PickingSequence(picks))
    }

    pub fn picks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of picks of each of `n` agents.
    pub fn counts(&self, n: usize) -> Vec<usize> {
        let mut t = vec![0; n];
        for &a in &self.0 {
            t[a] += 1;
        }
        t
    }
}

/// Each agent in turn takes a favorite remaining item; ties go to the lowest
/// item index.
pub fn run_sequence(inst: &Instance, seq: &PickingSequence) -> Result<Allocation> {
    if seq.len() != inst.m() {
        return Err(Error::LengthMismatch {
            expected: inst.m(),
            got: seq.len(),
        });
    }
    let mut owners = vec![usize::MAX; inst.m()];
    let mut remaining: Vec<usize> = (0..inst.m()).collect();
    for &agent in seq.picks() {
        inst.check_agent(agent)?;
        let pos = (0..remaining.len())
            .reduce(|b, k| {
                if inst.utility(agent, remaining[k]) > inst.utility(agent, remaining[b]) {
                    k
                } else {
                    b
                }
            })
            .expect("an item remains for every pick");
        owners[remaining.remove(pos)] = agent;
    }
    Allocation::from_owners(inst.n(), &owners)
}

/// `f` of a divisor method. Values must satisfy `t <= f(t) <= t + 1`.
#[derive(Clone)]
pub struct DivisorFunction {
    name: String,
    f: Arc<dyn Fn(usize) -> Rational + Send + Sync>,
}

impl fmt::Debug for DivisorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DivisorFunction").field("name", &self.name).finish()
    }
}

impl DivisorFunction {
    pub fn custom(name: impl Into<String>, f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        DivisorFunction {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// `f(t) = t + (1 - x)`.
    pub fn shifted(x: &Rational) -> Result<Self> {
        check_unit("x", x)?;
        let y = Rational::one() - x;
        Ok(Self::custom(format!("t+{y}"), move |t| Rational::from_integer(t.into()) + &y))
    }

    /// `f(t) = t`.
    pub fn adams() -> Self {
        Self::custom("adams", |t| Rational::from_integer(t.into()))
    }

    /// `f(t) = t + 1/2`.
    pub fn webster() -> Self {
        Self::custom("webster", |t| Rational::from_integer(t.into()) + ratio(1, 2))
    }

    /// `f(t) = t + 1`.
    pub fn jefferson() -> Self {
        Self::custom("jefferson", |t| Rational::from_integer((t + 1).into()))
    }

    /// `adams`, `webster` or `jefferson`.
    pub fn named(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "adams" => Ok(Self::adams()),
            "webster" => Ok(Self::webster()),
            "jefferson" => Ok(Self::jefferson()),
            other => Err(Error::Parse(format!("unknown divisor method `{other}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `f(t)`, checked against `[t, t + 1]`.
    pub fn eval(&self, t: usize) -> Result<Rational> {
        let value = (self.f)(t);
        let lo = Rational::from_integer(t.into());
        if value < lo || value > lo + Rational::one() {
            return Err(Error::DivisorRangeViolation { t, value });
        }
        Ok(value)
    }
}

/// Each pick goes to an agent minimizing `f(t_i) / w_i`; ties go to the
/// larger weight, then the lower index.
pub fn divisor_sequence(inst: &Instance, f: &DivisorFunction) -> Result<PickingSequence> {
    divisor_sequence_for(inst.weights(), inst.m(), f)
}

pub fn divisor_sequence_for(weights: &[Rational], m: usize, f: &DivisorFunction) -> Result<PickingSequence> {
    let n = weights.len();
    let mut t = vec![0usize; n];
    let mut key: Vec<Rational> = Vec::with_capacity(n);
    for w in weights {
        key.push(f.eval(0)? / w);
    }
    let mut picks = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best = 0;
        for i in 1..n {
            let better = key[i] < key[best] || (key[i] == key[best] && weights[i] > weights[best]);
            if better {
                best = i;
            }
        }
        picks.push(best);
        t[best] += 1;
        key[best] = f.eval(t[best])? / &weights[best];
    }
    Ok(PickingSequence(picks))
}

/// The sequence giving each pick to an agent minimizing `(t_i + 1 - x) / w_i`;
/// its output is WEF(x, 1-x) for every utility profile.
pub fn adaptive_wef_sequence(inst: &Instance, x: &Rational) -> Result<PickingSequence> {
    divisor_sequence(inst, &DivisorFunction::shifted(x)?)
}

pub fn adaptive_wef_sequence_for(weights: &[Rational], m: usize, x: &Rational) -> Result<PickingSequence> {
    divisor_sequence_for(weights, m, &DivisorFunction::shifted(x)?)
}

fn prefix_witnesses(
    seq: &PickingSequence,
    weights: &[Rational],
    x: &Rational,
    stop_at_first: bool,
    margins: impl Fn(usize, &[usize], &mut dyn FnMut(Subject, Rational)),
) -> Result<Vec<Witness>> {
    check_unit("x", x)?;
    let n = weights.len();
    let seq = PickingSequence::new(seq.0.clone(), n)?;
    let mut t = vec![0usize; n];
    let mut out = Vec::new();
    let mut tightest: Option<Witness> = None;
    for k in 0..=seq.len() {
        if k > 0 {
            t[seq.0[k - 1]] += 1;
        }
        let mut stop = false;
        margins(k, &t, &mut |subject, margin| {
            if stop {
                return;
            }
            let w = Witness::new(subject, margin, vec![]);
            if w.violated {
                out.push(w);
                stop = stop_at_first;
            } else if tightest.as_ref().is_none_or(|b| w.margin < b.margin) {
                tightest = Some(w);
            }
        });
        if stop {
            break;
        }
    }
    if out.is_empty() {
        out.extend(tightest);
    }
    Ok(out)
}

fn wef_prefix_margins<'a>(weights: &'a [Rational], x: &'a Rational) -> impl Fn(usize, &[usize], &mut dyn FnMut(Subject, Rational)) + 'a {
    let y = Rational::one() - x;
    move |k, t, emit| {
        for i in 0..t.len() {
            for j in 0..t.len() {
                if i == j {
                    continue;
                }
                let ti = Rational::from_integer(t[i].into());
                let tj = Rational::from_integer(t[j].into());
                let margin = ti + &y - &weights[i] / &weights[j] * (tj - x);
                emit(
                    Subject::Prefix {
                        length: k,
                        agent: i,
                        other: Some(j),
                    },
                    margin,
                );
            }
        }
    }
}

fn wprop_prefix_margins<'a>(weights: &'a [Rational], x: &'a Rational) -> impl Fn(usize, &[usize], &mut dyn FnMut(Subject, Rational)) + 'a {
    let y = Rational::one() - x;
    let total: Rational = weights.iter().sum();
    let nx = Rational::from_integer(weights.len().into()) * x;
    move |k, t, emit| {
        let kk = Rational::from_integer(k.into());
        for (i, w) in weights.iter().enumerate() {
            let ti = Rational::from_integer(t[i].into());
            let margin = ti + &y - w / &total * (&kk - &nx);
            emit(
                Subject::Prefix {
                    length: k,
                    agent: i,
                    other: None,
                },
                margin,
            );
        }
    }
}

/// Whether every output of `seq` is WEF(x, 1-x): for each prefix and ordered
/// pair, `t_i + (1 - x) >= (w_i / w_j)(t_j - x)`. On failure the witness is the
/// shortest violating prefix with the lowest pair; on success it is the
/// tightest inequality.
pub fn check_wef_prefix_condition(seq: &PickingSequence, weights: &[Rational], x: &Rational) -> Result<Verdict> {
    let w = prefix_witnesses(seq, weights, x, true, wef_prefix_margins(weights, x))?;
    Ok(Verdict::from_witnesses(format!("wef-prefix(x={x})"), w))
}

/// Every violated WEF prefix inequality.
pub fn wef_prefix_violations(seq: &PickingSequence, weights: &[Rational], x: &Rational) -> Result<Vec<Witness>> {
    let w = prefix_witnesses(seq, weights, x, false, wef_prefix_margins(weights, x))?;
    Ok(w.into_iter().filter(|w| w.violated).collect())
}

/// Whether every output of `seq` is WPROP(x, 1-x): for each prefix of length
/// `k` and agent, `t_i + (1 - x) >= (w_i / w_N)(k - n x)`.
pub fn check_wprop_prefix_condition(seq: &PickingSequence, weights: &[Rational], x: &Rational) -> Result<Verdict> {
    let w = prefix_witnesses(seq, weights, x, true, wprop_prefix_margins(weights, x))?;
    Ok(Verdict::from_witnesses(format!("wprop-prefix(x={x})"), w))
}

pub fn wprop_prefix_violations(seq: &PickingSequence, weights: &[Rational], x: &Rational) -> Result<Vec<Witness>> {
    let w = prefix_witnesses(seq, weights, x, false, wprop_prefix_margins(weights, x))?;
    Ok(w.into_iter().filter(|w| w.violated).collect())
}

/// Instance in which every agent values the first `k` of `m` items at one and
/// the rest at zero. Any sequence hands out the valuable items in its first
/// `k` turns, so the output reflects the counts of that prefix.
pub fn unit_prefix_instance(weights: &[Rational], m: usize, k: usize) -> Result<Instance> {
    let row: Vec<Rational> = (0..m)
        .map(|g| if g < k { Rational::one() } else { Rational::zero() })
        .collect();
    Instance::shared(weights.to_vec(), row)
}
