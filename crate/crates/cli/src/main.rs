//! Terminal front door: parse group specs, dispatch cohomology computations,
//! manage the resolution cache, and emit text or JSON.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cohoforge_core::cache;
use cohoforge_core::group::{FiniteGroup, GroupHom};
use cohoforge_core::ops;
use cohoforge_core::parser::{parse_group_spec, realize, GroupSpec, RealizeConfig, RealizeError};
use cohoforge_core::resolution::{Resolution, Strategy};
use cohoforge_scenarios as scenarios;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_REALIZE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cohoforge",
    about = "Mod-p cohomology of finite groups: dimensions, cup products, inflation, and the degree-one-generation classifier",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for scenario fan-out
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Resolution cache directory (falls back to $COHOFORGE_CACHE, then
    /// .cohoforge-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Disable the on-disk resolution cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Minimal,
    Greedy,
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology dimensions dim H^0..H^N of a group
    Dims {
        /// Group spec, e.g. "Q8", "C4", "A2(2;1)", "pres{g,h|g^4,h^4,g*h*g^-1*h^-3}"
        groupspec: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Dimensions, decomposable dimensions, and canonical degree-one identities
    Fingerprint {
        groupspec: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Inflate every degree-N class of the target along source ↠ target
    Inflate {
        /// Source group spec (the larger group)
        source: String,
        /// Target group spec (the quotient carrying the classes)
        target: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Generator map override, e.g. "g->g,h->h,g'->g^2"; defaults to
        /// name matching
        #[arg(long)]
        map: Option<String>,
    },
    /// The degree-one-generation verdict for a group at a prime
    Classify {
        groupspec: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Classifier-versus-ladder census over the built-in catalog
    Census {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
    },
    /// Reproduce a named scenario (cyclic-tower, metacyclic, quaternion,
    /// splitting, census, all)
    Repro {
        scenario: String,
        /// Include the opt-in order-729 tier
        #[arg(long)]
        extended: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = if cli.common.no_cache {
        None
    } else {
        Some(cache::cache_dir(cli.common.cache_dir.as_deref()))
    };
    scenarios::set_cache_dir(cache_dir.clone());
    let ctx = Ctx { format: cli.common.format, threads: cli.common.threads, cache_dir };
    match run(cli.command, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}

struct Ctx {
    format: Format,
    threads: Option<usize>,
    cache_dir: Option<PathBuf>,
}

struct CmdError {
    exit: u8,
    message: String,
}

impl CmdError {
    fn parse(message: impl Into<String>) -> Self {
        CmdError { exit: EXIT_PARSE, message: message.into() }
    }

    fn realize(message: impl Into<String>) -> Self {
        CmdError { exit: EXIT_REALIZE, message: message.into() }
    }

    fn budget(message: impl Into<String>) -> Self {
        CmdError { exit: EXIT_BUDGET, message: message.into() }
    }
}

impl From<RealizeError> for CmdError {
    fn from(e: RealizeError) -> Self {
        match e {
            RealizeError::OrderCapExceeded { .. } | RealizeError::CosetBoundExceeded(_) => {
                CmdError::budget(e.to_string())
            }
            other => CmdError::realize(other.to_string()),
        }
    }
}

impl From<cohoforge_core::resolution::ResolutionError> for CmdError {
    fn from(e: cohoforge_core::resolution::ResolutionError) -> Self {
        use cohoforge_core::resolution::ResolutionError::*;
        match e {
            BudgetExceeded { .. } => CmdError::budget(e.to_string()),
            TooShort { .. } | NotPrime(_) | MinimalRequiresPGroup { .. } => {
                CmdError::realize(e.to_string())
            }
            other => CmdError::realize(other.to_string()),
        }
    }
}

impl From<cohoforge_core::ops::OpError> for CmdError {
    fn from(e: cohoforge_core::ops::OpError) -> Self {
        CmdError::realize(e.to_string())
    }
}

fn parse_spec(text: &str) -> Result<GroupSpec, CmdError> {
    parse_group_spec(text).map_err(|e| CmdError::parse(e.to_string()))
}

fn realize_spec(spec: &GroupSpec) -> Result<Arc<FiniteGroup>, CmdError> {
    Ok(realize(spec, &RealizeConfig::default())?)
}

fn pick_strategy(group: &FiniteGroup, p: u32, arg: StrategyArg) -> Result<Strategy, CmdError> {
    let auto = scenarios::auto_strategy(group, p);
    match arg {
        StrategyArg::Auto => Ok(auto),
        StrategyArg::Greedy => Ok(Strategy::Greedy),
        StrategyArg::Minimal => {
            if auto == Strategy::Minimal {
                Ok(Strategy::Minimal)
            } else {
                Err(CmdError::realize(format!(
                    "minimal strategy requires a {}-group; use greedy",
                    p
                )))
            }
        }
    }
}

fn build(
    ctx: &Ctx,
    group: &Arc<FiniteGroup>,
    p: u32,
    length: usize,
    strategy: Strategy,
) -> Result<Resolution, CmdError> {
    match &ctx.cache_dir {
        Some(dir) => cache::build_cached(dir, group, p, length, strategy).map_err(|e| match e {
            cache::CacheError::Build(b) => b.into(),
            other => CmdError::realize(other.to_string()),
        }),
        None => Ok(Resolution::build(group, p, length, strategy)?),
    }
}

fn emit(ctx: &Ctx, text: String, value: Value) {
    match ctx.format {
        Format::Text => println!("{}", text.trim_end()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn run(command: Command, ctx: &Ctx) -> Result<ExitCode, CmdError> {
    match command {
        Command::Dims { groupspec, p, max_degree, strategy } => {
            let spec = parse_spec(&groupspec)?;
            let group = realize_spec(&spec)?;
            let strat = pick_strategy(&group, p, strategy)?;
            let res = build(ctx, &group, p, max_degree + 1, strat)?;
            let dims = res.cohomology_dims(max_degree)?;
            let text = format!(
                "dims H^*({}; F_{}) through degree {}: {:?}",
                group.label(),
                p,
                max_degree,
                dims
            );
            emit(
                ctx,
                text,
                json!({
                    "command": "dims",
                    "group": spec.print(),
                    "order": group.order(),
                    "p": p,
                    "max_degree": max_degree,
                    "strategy": strat.name(),
                    "dims": dims,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Fingerprint { groupspec, p, max_degree, strategy } => {
            let spec = parse_spec(&groupspec)?;
            let group = realize_spec(&spec)?;
            let strat = pick_strategy(&group, p, strategy)?;
            let res = build(ctx, &group, p, max_degree + 1, strat)?;
            let fp = ops::fingerprint(&res, Some(&spec), max_degree)?;
            let mut text = format!(
                "fingerprint of {} at p = {} through degree {}\n  dims:     {:?}\n  dec dims: {:?}\n",
                group.label(),
                p,
                max_degree,
                fp.dims,
                fp.dec_dims
            );
            for (desc, ok) in &fp.identities {
                text.push_str(&format!("  identity: {} [{}]\n", desc, if *ok { "ok" } else { "FAIL" }));
            }
            let all_ok = fp.identities.iter().all(|(_, ok)| *ok);
            emit(
                ctx,
                text,
                json!({
                    "command": "fingerprint",
                    "group": spec.print(),
                    "order": group.order(),
                    "p": p,
                    "max_degree": max_degree,
                    "dims": fp.dims,
                    "dec_dims": fp.dec_dims,
                    "identities": fp.identities
                        .iter()
                        .map(|(d, ok)| json!({"desc": d, "pass": ok}))
                        .collect::<Vec<_>>(),
                }),
            );
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
        Command::Inflate { source, target, degree, p, map } => {
            let source_spec = parse_spec(&source)?;
            let target_spec = parse_spec(&target)?;
            let source_group = realize_spec(&source_spec)?;
            let target_group = realize_spec(&target_spec)?;
            let phi = generator_map(&source_group, &target_group, map.as_deref())?;
            if !phi.is_surjective() {
                return Err(CmdError::realize(
                    "the generator map is not surjective onto the target".to_string(),
                ));
            }
            let strat_s = scenarios::auto_strategy(&source_group, p);
            let strat_t = scenarios::auto_strategy(&target_group, p);
            let res_source = build(ctx, &source_group, p, degree + 1, strat_s)?;
            let res_target = build(ctx, &target_group, p, degree + 1, strat_t)?;
            let ladder = ops::dec_ladder(&res_source, degree)?;
            let classes = res_target.cocycle_basis(degree)?;
            let mut rows = Vec::new();
            let mut text = format!(
                "inflation {} ↠ {} on H^{} ({} classes)\n",
                source_group.label(),
                target_group.label(),
                degree,
                classes.len()
            );
            for (i, class) in classes.iter().enumerate() {
                let inf = ops::inflation(&phi, class, &res_source, &res_target)?;
                let vanishes = inf.is_zero();
                let decomposable = ops::is_fully_decomposable(&res_source, &inf, &ladder)?;
                text.push_str(&format!(
                    "  class {}: vanishes={} decomposable={}\n",
                    i, vanishes, decomposable
                ));
                rows.push(json!({"class": i, "vanishes": vanishes, "decomposable": decomposable}));
            }
            emit(
                ctx,
                text,
                json!({
                    "command": "inflate",
                    "source": source_spec.print(),
                    "target": target_spec.print(),
                    "p": p,
                    "degree": degree,
                    "classes": rows,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { groupspec, p } => {
            let spec = parse_spec(&groupspec)?;
            let group = realize_spec(&spec)?;
            match group.degree_one_classifier(p) {
                Ok(verdict) => {
                    let witness_order = verdict.witness.as_ref().map(|w| w.order());
                    let text = format!(
                        "{} at p = {}: generated in degree one = {}{}",
                        group.label(),
                        p,
                        verdict.generated_in_degree_one,
                        witness_order
                            .map(|o| format!(" (normal complement of order {})", o))
                            .unwrap_or_default()
                    );
                    emit(
                        ctx,
                        text,
                        json!({
                            "command": "classify",
                            "group": spec.print(),
                            "p": p,
                            "status": "computed",
                            "generated_in_degree_one": verdict.generated_in_degree_one,
                            "witness_order": witness_order,
                        }),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(cohoforge_core::group::GroupError::PrimeDoesNotDivide(p, order)) => {
                    let text = format!(
                        "{} at p = {}: p does not divide |G| = {}; cohomology is concentrated in degree zero",
                        group.label(),
                        p,
                        order
                    );
                    emit(
                        ctx,
                        text,
                        json!({
                            "command": "classify",
                            "group": spec.print(),
                            "p": p,
                            "status": "concentrated-in-degree-zero",
                        }),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Err(CmdError::realize(e.to_string())),
            }
        }
        Command::Census { p, max_degree } => {
            let report = scenarios::scenario_census_with(p, max_degree, ctx.threads)
                .map_err(scenario_error)?;
            let pass = report.pass();
            emit(ctx, report.render_text(), report.to_json());
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
        Command::Repro { scenario, extended } => {
            let reports =
                scenarios::run_scenario(&scenario, extended, ctx.threads).map_err(scenario_error)?;
            let pass = reports.iter().all(|r| r.pass());
            match ctx.format {
                Format::Text => {
                    for r in &reports {
                        print!("{}", r.render_text());
                    }
                    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
                    let passed: usize = reports
                        .iter()
                        .map(|r| r.checks.iter().filter(|c| c.pass).count())
                        .sum();
                    println!("{}/{} checks pass", passed, total);
                }
                Format::Json => {
                    let value: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
                    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
                }
            }
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
    }
}

fn scenario_error(e: scenarios::ScenarioError) -> CmdError {
    use scenarios::ScenarioError::*;
    match e {
        Realize(err) => err.into(),
        Resolution(err) => err.into(),
        BadParams(m) => CmdError::parse(m),
        other => CmdError::realize(other.to_string()),
    }
}

/// Build the homomorphism for cmd-inflate: name matching by default, with an
/// explicit "g->word,h->word" override whose right-hand sides are words in
/// the target's generators.
fn generator_map(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    spec: Option<&str>,
) -> Result<GroupHom, CmdError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    match spec {
        None => {
            for (idx, name) in source.gen_names().iter().enumerate() {
                let Some(t) = target.generator_by_name(name) else {
                    return Err(CmdError::parse(format!(
                        "target has no generator named {:?}; use --map to give images",
                        name
                    )));
                };
                pairs.push((source.generators()[idx] as usize, t));
            }
        }
        Some(text) => {
            let target_names: Vec<String> = target.gen_names().to_vec();
            for entry in text.split(',') {
                let Some((lhs, rhs)) = entry.split_once("->") else {
                    return Err(CmdError::parse(format!(
                        "bad map entry {:?}; expected name->word",
                        entry
                    )));
                };
                let lhs = lhs.trim();
                let Some(src) = source.generator_by_name(lhs) else {
                    return Err(CmdError::parse(format!("unknown source generator {:?}", lhs)));
                };
                let word = cohoforge_core::parser::parse_word_str(rhs.trim(), &target_names)
                    .map_err(|e| CmdError::parse(e.to_string()))?;
                let mut image = 0usize;
                for (gen_idx, exp) in word {
                    let g = target.generators()[gen_idx] as usize;
                    image = target.mul(image, target.pow(g, exp));
                }
                pairs.push((src, image));
            }
        }
    }
    GroupHom::from_generator_images(source, target, &pairs)
        .map_err(|e| CmdError::realize(e.to_string()))
}
