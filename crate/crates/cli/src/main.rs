//! `wfair`: allocate, verify, compute shares and emit fixtures from the shell.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wfair::fixtures::{catalogue, fixture_by_id};
use wfair::io::{allocation_to_json, instance_to_json, parse_allocation, parse_instance};
use wfair::notion::{Notion, NotionDefaults};
use wfair::picking::{adaptive_wef_sequence, divisor_sequence, run_sequence, DivisorFunction};
use wfair::rational::parse_rational;
use wfair::shares::{agent_shares, share_report, ShareReport};
use wfair::welfare::{half_nmms_allocate_with, mwnw_optima, ordered_round_robin, weg_optima};
use wfair::{Allocation, Instance, Rational, SearchLimits};

use report::{Format, InstanceSummary, RunReport};

const EXIT_VERDICT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "wfair", version, about = "Weighted fair division of indivisible items with exact arithmetic")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Maximum number of allocations an enumeration may visit.
    #[arg(long, global = true, env = "WFAIR_ALLOCATION_BUDGET")]
    allocation_budget: Option<u64>,

    /// Maximum number of nodes in a partition search.
    #[arg(long, global = true, env = "WFAIR_PARTITION_BUDGET")]
    partition_budget: Option<u64>,

    /// Largest item count accepted by the AnyPrice share solver.
    #[arg(long, global = true, env = "WFAIR_APS_CAP")]
    aps_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an allocation algorithm on an instance.
    Allocate(AllocateArgs),
    /// Check an allocation against fairness notions.
    Verify(VerifyArgs),
    /// Per-agent share table.
    Shares(SharesArgs),
    /// List, emit or verify the built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Shares plus verdicts for every notion on one allocation.
    Report(ReportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Algorithm {
    Picking,
    Divisor,
    Mwnw,
    Weg,
    RoundRobin,
    HalfNmms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Webster,
    Jefferson,
    Adams,
}

#[derive(Args, Debug)]
struct AllocateArgs {
    /// Instance JSON file.
    instance: PathBuf,
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Parameter of the adaptive picking sequence, in [0, 1].
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    x: Rational,
    /// Divisor method for `--algorithm divisor`.
    #[arg(long, value_enum, default_value_t = Method::Webster)]
    method: Method,
    /// Report every optimum for `mwnw` and `weg`, not only the canonical one.
    #[arg(long)]
    all_optima: bool,
    /// Write the allocation JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct NotionArgs {
    /// Notions to check, e.g. `wef(1,0)`, `wprop*`, `oef1`, `quota`, `nmms(1/2)`.
    /// Repeat the flag or separate with commas.
    #[arg(long = "notion", required = true)]
    notions: Vec<String>,
    /// Default x for notions written without arguments.
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    x: Rational,
    /// Default y for notions written without arguments.
    #[arg(long, value_parser = rational_arg, default_value = "0")]
    y: Rational,
    /// Default approximation factor for share notions.
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    alpha: Rational,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    instance: PathBuf,
    allocation: PathBuf,
    #[command(flatten)]
    notions: NotionArgs,
}

#[derive(Args, Debug)]
struct SharesArgs {
    instance: PathBuf,
    /// An agent index, or `all`.
    #[arg(long, default_value = "all")]
    agent: String,
}

#[derive(Subcommand, Debug)]
enum FixturesAction {
    /// Fixture ids with descriptions and expectations.
    List,
    /// Print a fixture's instance JSON.
    Emit {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every expectation of one fixture, or of all of them.
    Verify { id: Option<String> },
}

#[derive(Args, Debug)]
struct ReportArgs {
    instance: PathBuf,
    /// Allocation JSON file to evaluate.
    #[arg(long, conflicts_with = "algorithm")]
    allocation: Option<PathBuf>,
    /// Algorithm to run for the allocation to evaluate.
    #[arg(long, value_enum)]
    algorithm: Option<Algorithm>,
    /// Parameter of the adaptive picking sequence for `--algorithm picking`.
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    x: Rational,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Splits `wef(1,0),quota` at commas outside parentheses.
fn split_notions(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_notions(args: &NotionArgs) -> Result<Vec<Notion>> {
    let defaults = NotionDefaults {
        x: args.x.clone(),
        y: args.y.clone(),
        alpha: args.alpha.clone(),
    };
    let mut out = Vec::new();
    for raw in &args.notions {
        for text in split_notions(raw) {
            out.push(Notion::parse_with(&text, &defaults)?);
        }
    }
    if out.is_empty() {
        bail!("no notions given");
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = read(path)?;
    parse_instance(&text).with_context(|| format!("invalid instance {}", path.display()))
}

fn load_allocation(path: &Path, inst: &Instance) -> Result<Allocation> {
    let text = read(path)?;
    let a = parse_allocation(&text, inst.m()).with_context(|| format!("invalid allocation {}", path.display()))?;
    if a.n() != inst.n() {
        bail!(wfair::Error::DimensionMismatch(format!(
            "allocation has {} bundles, instance has {} agents",
            a.n(),
            inst.n()
        )));
    }
    Ok(a)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

impl Cli {
    fn limits(&self) -> SearchLimits {
        let mut l = SearchLimits::default().with_jobs(self.jobs);
        if let Some(b) = self.allocation_budget {
            l.allocation_budget = b;
        }
        if let Some(b) = self.partition_budget {
            l.partition_budget = b;
        }
        if let Some(c) = self.aps_cap {
            l.aps_item_cap = c;
        }
        l
    }
}

/// Result of running an algorithm.
struct Outcome {
    label: String,
    sequence: Option<Vec<usize>>,
    allocation: Allocation,
    optima: Option<Vec<Allocation>>,
}

fn run_algorithm(
    inst: &Instance,
    algorithm: Algorithm,
    x: &Rational,
    method: Method,
    all_optima: bool,
    limits: &SearchLimits,
) -> Result<Outcome> {
    let mut sequence = None;
    let mut optima = None;
    let (label, allocation) = match algorithm {
        Algorithm::Picking => {
            let seq = adaptive_wef_sequence(inst, x)?;
            let a = run_sequence(inst, &seq)?;
            sequence = Some(seq.picks().to_vec());
            (format!("picking (x = {x})"), a)
        }
        Algorithm::Divisor => {
            let name = match method {
                Method::Webster => "webster",
                Method::Jefferson => "jefferson",
                Method::Adams => "adams",
            };
            let seq = divisor_sequence(inst, &DivisorFunction::named(name)?)?;
            let a = run_sequence(inst, &seq)?;
            sequence = Some(seq.picks().to_vec());
            (format!("divisor ({name})"), a)
        }
        Algorithm::Mwnw | Algorithm::Weg => {
            let (name, opt) = if algorithm == Algorithm::Mwnw {
                ("mwnw", mwnw_optima(inst, limits)?)
            } else {
                ("weg", weg_optima(inst, limits)?)
            };
            if all_optima {
                optima = Some(opt.all);
            }
            (name.to_string(), opt.canonical)
        }
        Algorithm::RoundRobin => ("round-robin".to_string(), ordered_round_robin(inst)),
        Algorithm::HalfNmms => ("half-nmms".to_string(), half_nmms_allocate_with(inst, limits)?),
    };
    Ok(Outcome {
        label,
        sequence,
        allocation,
        optima,
    })
}

fn allocate(cli: &Cli, args: &AllocateArgs) -> Result<u8> {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let out = run_algorithm(&inst, args.algorithm, &args.x, args.method, args.all_optima, &cli.limits())?;
    if let Some(path) = &args.out {
        write(path, &format!("{}\n", allocation_to_json(&out.allocation)))?;
    }
    let mut report = RunReport::new("allocate", InstanceSummary::of(&inst));
    report.algorithm = Some(out.label);
    report.sequence = out.sequence;
    report.counts = Some(out.allocation.counts());
    report.utilities = Some(report::utilities(&inst, &out.allocation));
    report.allocation = Some(out.allocation);
    report.optima = out.optima;
    report.finish(start);
    report.emit(cli.format);
    Ok(0)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8> {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let a = load_allocation(&args.allocation, &inst)?;
    let notions = parse_notions(&args.notions)?;
    let limits = cli.limits();
    let mut report = RunReport::new("verify", InstanceSummary::of(&inst));
    for n in &notions {
        report.verdicts.push(n.evaluate(&inst, &a, &limits)?);
    }
    report.counts = Some(a.counts());
    report.utilities = Some(report::utilities(&inst, &a));
    report.allocation = Some(a);
    let passed = report.verdicts.iter().all(|v| v.satisfied);
    report.passed = Some(passed);
    report.finish(start);
    report.emit(cli.format);
    Ok(if passed { 0 } else { EXIT_VERDICT })
}

fn shares(cli: &Cli, args: &SharesArgs) -> Result<u8> {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let limits = cli.limits();
    let table = if args.agent == "all" {
        share_report(&inst, &limits)?
    } else {
        let agent: usize = args
            .agent
            .parse()
            .map_err(|_| wfair::Error::Parse(format!("`{}` is neither an agent index nor `all`", args.agent)))?;
        if agent >= inst.n() {
            bail!(wfair::Error::AgentOutOfRange { agent, n: inst.n() });
        }
        ShareReport {
            agents: vec![agent_shares(&inst, agent, &limits)?],
        }
    };
    let mut report = RunReport::new("shares", InstanceSummary::of(&inst));
    report.shares = Some(table);
    report.finish(start);
    report.emit(cli.format);
    Ok(0)
}

fn fixtures(cli: &Cli, action: &FixturesAction) -> Result<u8> {
    match action {
        FixturesAction::List => {
            let cat = catalogue();
            report::emit_fixture_list(&cat, cli.format);
            Ok(0)
        }
        FixturesAction::Emit { id, out } => {
            let f = fixture_by_id(id)?;
            let text = format!("{}\n", instance_to_json(&f.instance));
            match out {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        FixturesAction::Verify { id } => {
            let list = match id {
                Some(id) => vec![fixture_by_id(id)?],
                None => catalogue(),
            };
            let limits = cli.limits();
            let mut results = Vec::new();
            for f in &list {
                results.push((f.id.clone(), f.verify(&limits)?));
            }
            let ok = report::emit_fixture_results(&results, cli.format);
            Ok(if ok { 0 } else { EXIT_VERDICT })
        }
    }
}

/// Every notion the report evaluates; quotas only for identical items.
fn report_notions(inst: &Instance) -> Vec<Notion> {
    let mut v: Vec<Notion> = [
        "wef(1,0)",
        "wef(0,1)",
        "wef(1/2,1/2)",
        "wprop(1,0)",
        "wprop(0,1)",
        "wprop*(1,0)",
        "wwef1",
        "oef1",
        "mms(1)",
        "nmms(1)",
        "wmms(1)",
        "omms(1)",
        "aps(1)",
    ]
    .iter()
    .map(|s| s.parse().expect("built-in notion"))
    .collect();
    if inst.is_identical_items() {
        v.push(Notion::Quota);
    }
    v
}

fn full_report(cli: &Cli, args: &ReportArgs) -> Result<u8> {
    let start = Instant::now();
    let inst = load_instance(&args.instance)?;
    let limits = cli.limits();
    let mut report = RunReport::new("report", InstanceSummary::of(&inst));
    report.shares = Some(share_report(&inst, &limits)?);
    let allocation = match (&args.allocation, args.algorithm) {
        (Some(path), _) => Some(load_allocation(path, &inst)?),
        (None, Some(alg)) => {
            let out = run_algorithm(&inst, alg, &args.x, Method::Webster, false, &limits)?;
            report.algorithm = Some(out.label);
            report.sequence = out.sequence;
            Some(out.allocation)
        }
        (None, None) => None,
    };
    if let Some(a) = allocation {
        for n in report_notions(&inst) {
            report.verdicts.push(n.evaluate(&inst, &a, &limits)?);
        }
        report.counts = Some(a.counts());
        report.utilities = Some(report::utilities(&inst, &a));
        report.allocation = Some(a);
    }
    report.finish(start);
    report.emit(cli.format);
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Allocate(a) => allocate(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Shares(a) => shares(cli, a),
        Command::Fixtures { action } => fixtures(cli, action),
        Command::Report(a) => full_report(cli, a),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<wfair::Error>()) {
        Some(e) if e.is_budget() => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
