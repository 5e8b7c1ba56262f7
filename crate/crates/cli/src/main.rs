//! `sigmacert`: search for, verify and query finite certificates of
//! Σ-invariant membership.
//!
//! Exit codes: 0 yes / accept, 2 maybe / reject, 1 invalid input or error.

mod config;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use sigmacert::cert::{cone_describe, cone_eval, verify_certificate, Certificate, Verdict};
use sigmacert::group::{format_rational, Character, Group, GroupSpec};
use sigmacert::rips::{enumerate_rep_simplices, Valuation};
use sigmacert::search::{ConnectingVector, Flavor, Outcome};
use sigmacert::sigma_hom::{run_algorithm1, suggest_connecting_vector};
use sigmacert::sigma_htpy::run_algorithm2;
use sigmacert::witness::Witness;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sigmacert", version, about = "Certified search for Σ-invariants of finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a certificate that χ lies in Σ^m.
    Sigma(SigmaArgs),
    /// Check a certificate against a group spec.
    Verify(VerifyArgs),
    /// Evaluate or describe the cone of characters a certificate covers.
    Cone(ConeArgs),
    /// List the ball of a given radius around the identity.
    Ball(BallArgs),
    /// List representative simplices (1, g₁, …, g_q) of the Rips complex.
    Rips(RipsArgs),
    /// Propose a connecting vector from truncated Rips homology.
    Suggest(SuggestArgs),
}

#[derive(Args)]
struct Shared {
    /// Group spec file (JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// TOML file with default settings; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct SigmaArgs {
    #[command(flatten)]
    shared: Shared,
    /// Character: `a=1,b=1/2`, positional `1,1/2`, JSON, or a file holding one of these.
    #[arg(long = "char")]
    character: Option<String>,
    /// Degree (htpy: 2, the default).
    #[arg(long)]
    m: Option<usize>,
    /// hom or htpy.
    #[arg(long)]
    flavor: Option<String>,
    /// Connecting vector `n0,n1,...`, or `suggest`.
    #[arg(long)]
    cv: Option<String>,
    /// Largest window radius tried when filling a simplex.
    #[arg(long)]
    max_radius: Option<usize>,
    /// Overall time limit in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    /// Time limit per simplex in seconds.
    #[arg(long)]
    step_time_limit: Option<u64>,
    /// Cap on search states per disk filling.
    #[arg(long)]
    max_disk_states: Option<usize>,
    /// Certificate output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest stage the connecting-vector heuristic may propose.
    #[arg(long)]
    k_max: Option<usize>,
    /// Ball radius used by the connecting-vector heuristic.
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    shared: Shared,
    /// Certificate file.
    cert: PathBuf,
}

#[derive(Args)]
struct ConeArgs {
    #[command(flatten)]
    shared: Shared,
    cert: PathBuf,
    /// Character to evaluate at (default: the certificate's own).
    #[arg(long = "char", conflicts_with = "describe")]
    character: Option<String>,
    /// Print the cone as a list of strict inequalities.
    #[arg(long)]
    describe: bool,
}

#[derive(Args)]
struct BallArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    radius: usize,
}

#[derive(Args)]
struct RipsArgs {
    #[command(flatten)]
    shared: Shared,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct SuggestArgs {
    #[command(flatten)]
    shared: Shared,
    /// Degree.
    #[arg(long)]
    m: Option<usize>,
    /// Largest stage the connecting-vector heuristic may propose.
    #[arg(long)]
    k_max: Option<usize>,
    /// Ball radius used by the connecting-vector heuristic.
    #[arg(long)]
    window: Option<usize>,
}

const YES: u8 = 0;
const NO_ANSWER: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Sigma(a) => cmd_sigma(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Cone(a) => cmd_cone(a),
        Command::Ball(a) => cmd_ball(a),
        Command::Rips(a) => cmd_rips(a),
        Command::Suggest(a) => cmd_suggest(a),
    }
}

fn resolve(shared: &Shared, flags: RunConfig) -> Result<RunConfig> {
    let base = match &shared.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let config = base.overlay(RunConfig {
        spec: shared.spec.clone(),
        jobs: shared.jobs,
        ..flags
    });
    if let Some(j) = config.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(config)
}

fn load_group(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading group spec {}", path.display()))?;
    let spec = GroupSpec::from_json(&text)
        .with_context(|| format!("parsing group spec {}", path.display()))?;
    Ok(Group::new(spec)?)
}

fn parse_character(group: &Group, text: &str) -> Result<Character> {
    let path = Path::new(text);
    let source = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        text.to_string()
    };
    Character::parse(group, source.trim()).with_context(|| format!("character {text:?}"))
}

fn default_k_max(m: usize) -> usize {
    (m + 1).max(3)
}

fn cmd_sigma(a: SigmaArgs) -> Result<u8> {
    let config = resolve(
        &a.shared,
        RunConfig {
            character: a.character,
            m: a.m,
            flavor: a.flavor,
            cv: a.cv,
            max_radius: a.max_radius,
            time_limit: a.time_limit,
            step_time_limit: a.step_time_limit,
            max_disk_states: a.max_disk_states,
            out: a.out,
            k_max: a.k_max,
            window: a.window,
            ..RunConfig::default()
        },
    )?;
    let group = load_group(config.spec_path()?)?;
    let Some(text) = &config.character else {
        bail!("no character given (use --char)");
    };
    let chi = parse_character(&group, text)?;
    let flavor = config.flavor()?;
    let m = config.degree(flavor)?;
    let cv = match config.connecting_vector(flavor, m)? {
        Some(cv) => cv,
        None => {
            let k_max = config.k_max.unwrap_or(default_k_max(m));
            let s = suggest_connecting_vector(&group, m, k_max, config.window.unwrap_or(4));
            let cv = ConnectingVector::new(s.entries, flavor);
            if !s.complete {
                println!(
                    "maybe: the heuristic found no connecting vector beyond {cv} up to stage {k_max}; pass --cv"
                );
                return Ok(NO_ANSWER);
            }
            eprintln!("using connecting vector {cv} [HEURISTIC]");
            cv
        }
    };
    let budget = config.budget();
    let outcome = match flavor {
        Flavor::Homological => run_algorithm1(&group, &cv, &chi, &budget)?.map(Witness::Hom),
        Flavor::Homotopical => run_algorithm2(&group, &cv, &chi, &budget)?.map(Witness::Htpy),
    };
    match outcome {
        Outcome::Yes(w) => {
            let text = Certificate::encode(&group, &w).to_canonical_json();
            match &config.out {
                Some(path) => std::fs::write(path, &text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            let invariant = match flavor {
                Flavor::Homological => format!("Σ^{m}(G;Z)"),
                Flavor::Homotopical => "Σ^2(G)".to_string(),
            };
            eprintln!(
                "yes: χ = {chi} lies in {invariant} (t = {}, n = {}, connecting vector {cv})",
                group.display(w.t()),
                w.n()
            );
            Ok(YES)
        }
        Outcome::Maybe(report) => {
            println!("{}", report.render(&group));
            Ok(NO_ANSWER)
        }
    }
}

fn read_certificate(path: &Path) -> Result<Certificate> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading certificate {}", path.display()))?;
    Certificate::from_json(&text).with_context(|| format!("parsing certificate {}", path.display()))
}

/// The decoded witness if the certificate verifies, otherwise the exit code.
fn verified(group: &Group, cert: &Certificate) -> Result<std::result::Result<Witness, u8>> {
    match verify_certificate(group, cert)? {
        Verdict::Accept => Ok(Ok(cert.decode(group).expect("accepted certificates decode"))),
        Verdict::Reject(r) => {
            eprintln!("reject: {r}");
            Ok(Err(NO_ANSWER))
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let config = resolve(&a.shared, RunConfig::default())?;
    let group = load_group(config.spec_path()?)?;
    let cert = read_certificate(&a.cert)?;
    Ok(match verified(&group, &cert)? {
        Ok(_) => {
            println!("accept");
            YES
        }
        Err(code) => code,
    })
}

fn cmd_cone(a: ConeArgs) -> Result<u8> {
    let config = resolve(&a.shared, RunConfig::default())?;
    let group = load_group(config.spec_path()?)?;
    let cert = read_certificate(&a.cert)?;
    let witness = match verified(&group, &cert)? {
        Ok(w) => w,
        Err(code) => return Ok(code),
    };
    if a.describe {
        print!("{}", cone_describe(&group, &witness));
        return Ok(YES);
    }
    let y = match &a.character {
        Some(text) => parse_character(&group, text)?,
        None => witness.chi().clone(),
    };
    match cone_eval(&group, &witness, &y) {
        Valuation::Infinite => println!("member, u_φ = +inf"),
        Valuation::Finite(u) => {
            let status = if u > num_rational::BigRational::from_integer(0.into()) {
                "member"
            } else {
                "non-member"
            };
            println!("{status}, u_φ = {}", format_rational(&u));
        }
    }
    Ok(YES)
}

fn cmd_ball(a: BallArgs) -> Result<u8> {
    let config = resolve(&a.shared, RunConfig::default())?;
    let group = load_group(config.spec_path()?)?;
    let ball = group.ball(a.radius);
    let mut out = std::io::stdout().lock();
    for g in &ball {
        writeln!(out, "{}", group.display(g))?;
    }
    eprintln!("{} elements in the ball of radius {}", ball.len(), a.radius);
    Ok(YES)
}

fn cmd_rips(a: RipsArgs) -> Result<u8> {
    let config = resolve(&a.shared, RunConfig::default())?;
    let group = load_group(config.spec_path()?)?;
    let reps = enumerate_rep_simplices(&group, a.q, a.k);
    let mut out = std::io::stdout().lock();
    for s in &reps {
        writeln!(out, "{}", s.display(&group))?;
    }
    eprintln!("{} representative {}-simplices at scale {}", reps.len(), a.q, a.k);
    Ok(YES)
}

fn cmd_suggest(a: SuggestArgs) -> Result<u8> {
    let config = resolve(
        &a.shared,
        RunConfig {
            m: a.m,
            k_max: a.k_max,
            window: a.window,
            ..RunConfig::default()
        },
    )?;
    let group = load_group(config.spec_path()?)?;
    let Some(m) = config.m else {
        bail!("no degree given (use --m)");
    };
    let k_max = config.k_max.unwrap_or(default_k_max(m));
    let s = suggest_connecting_vector(&group, m, k_max, config.window.unwrap_or(4));
    let cv = ConnectingVector::new(s.entries, Flavor::Homological);
    if s.complete {
        println!("{cv} [HEURISTIC]");
        Ok(YES)
    } else {
        println!("{cv} [HEURISTIC, incomplete up to stage {k_max}]");
        Ok(NO_ANSWER)
    }
}
