//! Pass/fail results with exact per-agent or per-pair margins.

use serde::Serialize;

use crate::Rational;

/// What a witness talks about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    Agent { agent: usize },
    /// `agent` evaluates `other`'s bundle.
    Pair { agent: usize, other: usize },
    /// A prefix of a picking sequence; `other` is absent for proportionality
    /// conditions.
    Prefix {
        length: usize,
        agent: usize,
        other: Option<usize>,
    },
}

/// One evaluated inequality. `margin` is the signed slack of the binding
/// inequality: nonnegative means satisfied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subject: Subject,
    #[serde(serialize_with = "crate::rational::serde_str::serialize")]
    pub margin: Rational,
    /// Items chosen for the relaxation (`B` or the `B_j`), if any.
    pub items: Vec<usize>,
    pub violated: bool,
}

impl Witness {
    pub fn new(subject: Subject, margin: Rational, items: Vec<usize>) -> Self {
        let violated = margin < Rational::from_integer(0.into());
        Witness {
            subject,
            margin,
            items,
            violated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub notion: String,
    pub satisfied: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    pub fn from_witnesses(notion: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        Verdict {
            notion: notion.into(),
            satisfied: witnesses.iter().all(|w| !w.violated),
            witnesses,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.violated)
    }

    pub fn first_violation(&self) -> Option<&Witness> {
        self.violations().next()
    }

    /// Agents appearing as the evaluating side of some violation.
    pub fn violating_agents(&self) -> Vec<usize> {
        let mut agents: Vec<usize> = self
            .violations()
            .map(|w| match w.subject {
                Subject::Agent { agent } | Subject::Pair { agent, .. } | Subject::Prefix { agent, .. } => agent,
            })
            .collect();
        agents.sort_unstable();
        agents.dedup();
        agents
    }
}
