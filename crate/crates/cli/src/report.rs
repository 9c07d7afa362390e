//! Run reports and their JSON and text renderings.

use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use wfair::fixtures::{ExpectationOutcome, NamedFixture};
use wfair::rational::{approx, format_rational};
use wfair::shares::ShareReport;
use wfair::{Allocation, Instance, Rational, Subject, Verdict};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "wfair::rational::serde_str::serialize")]
    pub total_weight: Rational,
    pub identical_items: bool,
    pub binary: bool,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        InstanceSummary {
            n: inst.n(),
            m: inst.m(),
            total_weight: inst.total_weight().clone(),
            identical_items: inst.is_identical_items(),
            binary: inst.is_binary(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub instance: InstanceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allocation: Option<Allocation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub utilities: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima: Option<Vec<Allocation>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shares: Option<ShareReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    pub elapsed_ms: u128,
}

mod opt_vec {
    use serde::Serializer;
    use wfair::Rational;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(|r| r.to_string())),
            None => s.serialize_none(),
        }
    }
}

/// Each agent's utility for their own bundle.
pub fn utilities(inst: &Instance, a: &Allocation) -> Vec<Rational> {
    (0..inst.n()).map(|i| inst.value(i, a.bundle(i))).collect()
}

/// `p/q`, followed by a marked decimal when not an integer.
fn show(r: &Rational) -> String {
    if r.is_integer() {
        format_rational(r)
    } else {
        format!("{} (~{:.4})", format_rational(r), approx(r))
    }
}

fn subject(s: &Subject) -> String {
    match s {
        Subject::Agent { agent } => format!("agent {agent}"),
        Subject::Pair { agent, other } => format!("agent {agent} toward {other}"),
        Subject::Prefix { length, agent, other } => match other {
            Some(o) => format!("prefix {length}, agent {agent} toward {o}"),
            None => format!("prefix {length}, agent {agent}"),
        },
    }
}

impl RunReport {
    pub fn new(command: &'static str, instance: InstanceSummary) -> Self {
        RunReport {
            command,
            instance,
            algorithm: None,
            sequence: None,
            allocation: None,
            counts: None,
            utilities: None,
            optima: None,
            verdicts: Vec::new(),
            shares: None,
            passed: None,
            elapsed_ms: 0,
        }
    }

    pub fn finish(&mut self, start: Instant) {
        self.elapsed_ms = start.elapsed().as_millis();
    }

    pub fn emit(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(self).expect("reports serialize")),
            Format::Text => print!("{}", self.text()),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let i = &self.instance;
        let mut kind = Vec::new();
        if i.identical_items {
            kind.push("identical items");
        }
        if i.binary {
            kind.push("binary");
        }
        out.push_str(&format!("instance: n = {}, m = {}, w_N = {}", i.n, i.m, show(&i.total_weight)));
        if !kind.is_empty() {
            out.push_str(&format!(" ({})", kind.join(", ")));
        }
        out.push('\n');
        if let Some(a) = &self.algorithm {
            out.push_str(&format!("algorithm: {a}\n"));
        }
        if let Some(s) = &self.sequence {
            let s: Vec<String> = s.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("sequence: {}\n", s.join(" ")));
        }
        if let Some(a) = &self.allocation {
            out.push_str("allocation:\n");
            for (agent, b) in a.bundles().iter().enumerate() {
                let u = self.utilities.as_ref().map(|u| format!(" utility {}", show(&u[agent]))).unwrap_or_default();
                out.push_str(&format!("  agent {agent}: {b:?}{u}\n"));
            }
        }
        if let Some(c) = &self.counts {
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("counts: {}\n", c.join(" ")));
        }
        if let Some(opt) = &self.optima {
            out.push_str(&format!("optima ({}):\n", opt.len()));
            for a in opt {
                out.push_str(&format!("  {:?}\n", a.bundles()));
            }
        }
        if let Some(sh) = &self.shares {
            out.push_str("shares:\n");
            for a in &sh.agents {
                out.push_str(&format!(
                    "  agent {}: mms {}, nmms {}, wmms {}, omms {}, aps {}\n",
                    a.agent,
                    show(&a.mms),
                    show(&a.nmms),
                    show(&a.wmms),
                    show(&a.omms),
                    show(&a.aps)
                ));
            }
        }
        for v in &self.verdicts {
            if v.satisfied {
                out.push_str(&format!("{}: PASS\n", v.notion));
            } else {
                let w = v.first_violation().expect("a failing verdict has a violation");
                out.push_str(&format!("{}: FAIL ({}, margin {})\n", v.notion, subject(&w.subject), show(&w.margin)));
            }
        }
        out
    }
}

#[derive(Serialize)]
struct FixtureEntry<'a> {
    id: &'a str,
    description: &'a str,
    n: usize,
    m: usize,
    expected: Vec<String>,
}

pub fn emit_fixture_list(cat: &[NamedFixture], format: Format) {
    match format {
        Format::Json => {
            let entries: Vec<FixtureEntry> = cat
                .iter()
                .map(|f| FixtureEntry {
                    id: &f.id,
                    description: &f.description,
                    n: f.instance.n(),
                    m: f.instance.m(),
                    expected: f.expected.iter().map(|e| e.to_string()).collect(),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&entries).expect("fixtures serialize"));
        }
        Format::Text => {
            for f in cat {
                println!("{:<24} {}", f.id, f.description);
            }
        }
    }
}

#[derive(Serialize)]
struct FixtureResult<'a> {
    id: &'a str,
    passed: bool,
    outcomes: &'a [ExpectationOutcome],
}

/// Prints verification results; true when everything holds.
pub fn emit_fixture_results(results: &[(String, Vec<ExpectationOutcome>)], format: Format) -> bool {
    let ok = results.iter().all(|(_, o)| o.iter().all(|e| e.holds));
    match format {
        Format::Json => {
            let entries: Vec<FixtureResult> = results
                .iter()
                .map(|(id, o)| FixtureResult {
                    id,
                    passed: o.iter().all(|e| e.holds),
                    outcomes: o,
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&entries).expect("results serialize"));
        }
        Format::Text => {
            for (id, outcomes) in results {
                for o in outcomes {
                    println!("{} {id}: {}", if o.holds { "PASS" } else { "FAIL" }, o.expectation);
                }
            }
        }
    }
    ok
}
