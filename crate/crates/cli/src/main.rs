use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use holo_core::experiments::config::{GroupSource, RunConfig, Strategy};
use holo_core::experiments::pipeline::{jc_report, load_group, prepare, run_jc, run_tgroup, summary};
use holo_core::experiments::repro::{check_reports, run_suite, ReproOptions, Suite};
use holo_core::group::aut::DEFAULT_AUT_MEMORY_CAP;
use holo_core::group::search::DEFAULT_SEARCH_BUDGET;
use holo_core::group::{ClassTwoPresentation, Preset, DEFAULT_ORDER_CAP};
use holo_core::HoloError;

/// Regular subgroups normal in the holomorph of a class-two p-group, and T(G).
#[derive(Parser)]
#[command(name = "holo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the group and print a structural summary.
    Build(GroupArgs),
    /// Enumerate J(G), the regular subgroups normal in Hol(G).
    Jc(GroupArgs),
    /// Enumerate H(G), the members of J(G) isomorphic to G.
    Hc(GroupArgs),
    /// Build T(G) and report its structure.
    Tgroup(GroupArgs),
    /// Run a reproduction suite (or `all`) against the expected-value manifest.
    Repro(ReproArgs),
}

#[derive(Args)]
struct Output {
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of a short text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GroupArgs {
    /// gp, hp, free or abelian.
    #[arg(long, conflicts_with = "presentation")]
    preset: Option<String>,
    /// Odd prime.
    #[arg(short = 'p')]
    prime: Option<u64>,
    /// Rank of the free class-two group.
    #[arg(short = 'n')]
    rank: Option<usize>,
    /// Invariant factors of the abelian preset, e.g. `3,9`.
    #[arg(long, value_delimiter = ',')]
    factors: Vec<u64>,
    /// JSON presentation file.
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// generic, delta or both.
    #[arg(long, default_value = "generic")]
    strategy: Strategy,
    /// Largest group order to build.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    cap: u64,
    /// Step budget for backtracking searches.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Directory for cached automorphism data.
    #[arg(long, env = "HOLO_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReproArgs {
    /// gp, hp, free, powers, big-delta-dim, abelian or all.
    suite: String,
    /// Add the p = 7 groups to the gp and powers grids.
    #[arg(long)]
    include_p7: bool,
    #[arg(long, env = "HOLO_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

impl GroupArgs {
    fn config(&self) -> anyhow::Result<RunConfig> {
        let source = match (&self.preset, &self.presentation) {
            (Some(name), None) => GroupSource::Preset(Preset::from_name(name, self.prime, self.rank, &self.factors)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                GroupSource::Presentation(ClassTwoPresentation::from_json(&text)?)
            }
            _ => return Err(HoloError::InvalidConfig("give exactly one of --preset and --presentation".into()).into()),
        };
        let cfg = RunConfig {
            source,
            strategy: self.strategy,
            order_cap: self.cap,
            budget: self.budget,
            aut_memory_cap: DEFAULT_AUT_MEMORY_CAP,
            cache_dir: self.cache.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(output: &Output, value: &Value, text: String) -> anyhow::Result<()> {
    let body = if output.json { serde_json::to_string_pretty(value)? + "\n" } else { text };
    match &output.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Build(args) => {
            let cfg = args.config()?;
            let g = load_group(&cfg)?;
            let s = summary(&cfg.label(), &g);
            let text = format!(
                "{}: order {}, exponent {}, |Z| = {}, |G'| = {}, {} generators\n",
                s.group, s.order, s.exponent, s.center_order, s.derived_order, s.minimal_generators
            );
            emit(&args.output, &serde_json::to_value(&s)?, text)
        }
        Command::Jc(args) => members(args, false),
        Command::Hc(args) => members(args, true),
        Command::Tgroup(args) => {
            let cfg = args.config()?;
            let prep = prepare(&cfg, cfg.strategy != Strategy::Delta)?;
            let jc = run_jc(&prep, cfg.strategy, cfg.budget)?;
            let (_, report) = run_tgroup(&prep, &jc)?;
            let text = format!(
                "T({}): order {}, abelian {}, cyclic {}, exponent {}, AGL(1,p) {}, \
                 {} involutions generating a subgroup of index {}\n",
                prep.label,
                report.order,
                report.abelian,
                report.cyclic,
                report.exponent,
                report.agl1p,
                report.involutions,
                report.inv_subgroup_index
            );
            emit(&args.output, &serde_json::to_value(&report)?, text)
        }
        Command::Repro(args) => {
            let suites: Vec<Suite> =
                if args.suite == "all" { Suite::ALL.to_vec() } else { vec![args.suite.parse()?] };
            let opts = ReproOptions { include_p7: args.include_p7, cache_dir: args.cache.clone() };
            let mut reports = Vec::new();
            for s in suites {
                reports.extend(run_suite(s, &opts)?);
            }
            let text: String = reports
                .iter()
                .map(|r| {
                    format!(
                        "{} {} {} {}: expected {}, computed {} ({} ms)\n",
                        if r.matched { "PASS" } else { "FAIL" },
                        r.suite,
                        r.group,
                        r.check,
                        r.expected,
                        r.computed,
                        r.wall_ms
                    )
                })
                .collect();
            emit(&args.output, &serde_json::to_value(&reports)?, text)?;
            check_reports(&reports)?;
            Ok(())
        }
    }
}

fn members(args: GroupArgs, only_hc: bool) -> anyhow::Result<()> {
    let cfg = args.config()?;
    let prep = prepare(&cfg, cfg.strategy != Strategy::Delta)?;
    let out = run_jc(&prep, cfg.strategy, cfg.budget)?;
    let jc_count = out.members.len();
    let report = jc_report(&prep, cfg.strategy, out, only_hc);
    let mut text = format!("{}: |J(G)| = {jc_count}, |H(G)| = {}\n", report.group, report.hc_count);
    if let Some(cmp) = &report.comparison {
        text += &format!(
            "generic and delta strategies agree on {} gamma functions ({} outside the correspondence)\n",
            cmp.delta_count,
            cmp.outside_correspondence.len()
        );
    }
    emit(&args.output, &serde_json::to_value(&report)?, text)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<HoloError>().map_or(1, HoloError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
