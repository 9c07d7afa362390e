//! Fairness notions as values: parsed from text, evaluated on allocations.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fairness::{check_oef1, check_shape, check_quota, check_wef, check_wprop, check_wprop_star, check_wwef1};
use crate::limits::SearchLimits;
use crate::model::{Allocation, Instance};
use crate::rational::{format_rational, int, parse_rational};
use crate::shares::{share_verdict, shares_of, ShareKind};
use crate::verdict::Verdict;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Notion {
    Wef { x: Rational, y: Rational },
    Wprop { x: Rational, y: Rational },
    WpropStar { x: Rational, y: Rational },
    Wwef1,
    Oef1,
    /// Lower and upper quota together.
    Quota,
    LowerQuota,
    UpperQuota,
    Share { kind: ShareKind, alpha: Rational },
}

/// Parameters used when a notion is written without its own arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotionDefaults {
    pub x: Rational,
    pub y: Rational,
    pub alpha: Rational,
}

impl Default for NotionDefaults {
    fn default() -> Self {
        NotionDefaults {
            x: int(1),
            y: int(0),
            alpha: int(1),
        }
    }
}

impl Notion {
    pub fn wef(x: Rational, y: Rational) -> Self {
        Notion::Wef { x, y }
    }

    pub fn wprop(x: Rational, y: Rational) -> Self {
        Notion::Wprop { x, y }
    }

    pub fn wprop_star(x: Rational, y: Rational) -> Self {
        Notion::WpropStar { x, y }
    }

    pub fn share(kind: ShareKind, alpha: Rational) -> Self {
        Notion::Share { kind, alpha }
    }

    /// Parses `wef(1,0)`, `wprop(1/2, 1/2)`, `wprop*(1,0)`, `wwef1`, `oef1`,
    /// `quota`, `lower-quota`, `upper-quota`, `nmms(1/2)` and the like.
    /// Missing arguments come from `defaults`.
    pub fn parse_with(text: &str, defaults: &NotionDefaults) -> Result<Self> {
        let text = text.trim();
        let (name, args) = match text.find('(') {
            Some(open) => {
                let close = text
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in notion `{text}`")))?;
                let inner = &close[open + 1..];
                let args = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                (text[..open].trim().to_ascii_lowercase(), Some(args))
            }
            None => (text.to_ascii_lowercase(), None),
        };
        let pair = |args: Option<Vec<Rational>>| -> Result<(Rational, Rational)> {
            match args {
                None => Ok((defaults.x.clone(), defaults.y.clone())),
                Some(v) if v.len() == 2 => Ok((v[0].clone(), v[1].clone())),
                Some(v) => Err(Error::Parse(format!("`{name}` takes two arguments, got {}", v.len()))),
            }
        };
        let bare = |args: &Option<Vec<Rational>>| -> Result<()> {
            match args {
                None => Ok(()),
                Some(_) => Err(Error::Parse(format!("`{name}` takes no arguments"))),
            }
        };
        let notion = match name.as_str() {
            "wef" => {
                let (x, y) = pair(args)?;
                Notion::Wef { x, y }
            }
            "wprop" => {
                let (x, y) = pair(args)?;
                Notion::Wprop { x, y }
            }
            "wprop*" | "wpropstar" | "wprop-star" => {
                let (x, y) = pair(args)?;
                Notion::WpropStar { x, y }
            }
            "wwef1" => {
                bare(&args)?;
                Notion::Wwef1
            }
            "oef1" => {
                bare(&args)?;
                Notion::Oef1
            }
            "quota" => {
                bare(&args)?;
                Notion::Quota
            }
            "lower-quota" => {
                bare(&args)?;
                Notion::LowerQuota
            }
            "upper-quota" => {
                bare(&args)?;
                Notion::UpperQuota
            }
            other => {
                let kind: ShareKind = other.parse().map_err(|_| Error::Parse(format!("unknown notion `{other}`")))?;
                let alpha = match args {
                    None => defaults.alpha.clone(),
                    Some(v) if v.len() == 1 => v[0].clone(),
                    Some(v) => return Err(Error::Parse(format!("`{other}` takes one argument, got {}", v.len()))),
                };
                Notion::Share { kind, alpha }
            }
        };
        Ok(notion)
    }

    /// Precomputes whatever the notion needs from the instance alone (share
    /// values), for evaluating many allocations.
    pub fn prepare<'a>(&'a self, inst: &'a Instance, limits: &SearchLimits) -> Result<PreparedNotion<'a>> {
        let shares = match self {
            Notion::Share { kind, alpha } => {
                if alpha.is_negative() {
                    return Err(Error::ParameterOutOfRange {
                        name: "alpha",
                        value: alpha.clone(),
                    });
                }
                Some(shares_of(inst, *kind, limits)?)
            }
            _ => None,
        };
        Ok(PreparedNotion {
            notion: self,
            inst,
            shares,
        })
    }

    pub fn evaluate(&self, inst: &Instance, a: &Allocation, limits: &SearchLimits) -> Result<Verdict> {
        self.prepare(inst, limits)?.evaluate(a)
    }

    /// Pass/fail only.
    pub fn holds(&self, inst: &Instance, a: &Allocation, limits: &SearchLimits) -> Result<bool> {
        Ok(self.evaluate(inst, a, limits)?.satisfied)
    }
}

/// A notion bound to an instance.
#[derive(Debug, Clone)]
pub struct PreparedNotion<'a> {
    notion: &'a Notion,
    inst: &'a Instance,
    shares: Option<Vec<Rational>>,
}

impl PreparedNotion<'_> {
    pub fn evaluate(&self, a: &Allocation) -> Result<Verdict> {
        let inst = self.inst;
        let mut verdict = match self.notion {
            Notion::Wef { x, y } => check_wef(inst, a, x, y)?,
            Notion::Wprop { x, y } => check_wprop(inst, a, x, y)?,
            Notion::WpropStar { x, y } => check_wprop_star(inst, a, x, y)?,
            Notion::Wwef1 => check_wwef1(inst, a)?,
            Notion::Oef1 => check_oef1(inst, a)?,
            Notion::Quota | Notion::LowerQuota | Notion::UpperQuota => {
                let full = check_quota(inst, a)?.to_verdict();
                // Witnesses alternate lower, upper per agent.
                let keep: Box<dyn Fn(usize) -> bool> = match self.notion {
                    Notion::LowerQuota => Box::new(|k| k % 2 == 0),
                    Notion::UpperQuota => Box::new(|k| k % 2 == 1),
                    _ => Box::new(|_| true),
                };
                let witnesses = full.witnesses.into_iter().enumerate().filter(|(k, _)| keep(*k)).map(|(_, w)| w).collect();
                Verdict::from_witnesses("", witnesses)
            }
            Notion::Share { kind, alpha } => {
                check_shape(inst, a)?;
                share_verdict(inst, a, *kind, self.shares.as_deref().expect("prepared shares"), alpha)
            }
        };
        verdict.notion = self.notion.to_string();
        Ok(verdict)
    }

    pub fn holds(&self, a: &Allocation) -> Result<bool> {
        Ok(self.evaluate(a)?.satisfied)
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Notion::Wef { x, y } => write!(f, "wef({},{})", r(x), r(y)),
            Notion::Wprop { x, y } => write!(f, "wprop({},{})", r(x), r(y)),
            Notion::WpropStar { x, y } => write!(f, "wprop*({},{})", r(x), r(y)),
            Notion::Wwef1 => f.write_str("wwef1"),
            Notion::Oef1 => f.write_str("oef1"),
            Notion::Quota => f.write_str("quota"),
            Notion::LowerQuota => f.write_str("lower-quota"),
            Notion::UpperQuota => f.write_str("upper-quota"),
            Notion::Share { kind, alpha } => write!(f, "{}({})", kind.name(), r(alpha)),
        }
    }
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Notion::parse_with(s, &NotionDefaults::default())
    }
}

impl Serialize for Notion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
