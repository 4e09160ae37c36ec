use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use redmod_core::harness::{run_report, search_counterexamples, InstanceSpec, RunConfig, RunReport, Target};
use redmod_core::torsion::{gamma, gln, is_at_reduced};
use redmod_core::{ClaimId, FiniteRing, PresentedModule, RModule, Status, DEFAULT_MAX_ELEMS};

const BUDGET_VAR: &str = "REDMOD_MAX_ELEMS";

#[derive(Parser)]
#[command(name = "redmod")]
#[command(about = "Audit torsion and reducedness claims over finite commutative rings")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Audit one claim on the ring or module in a spec file
    Check {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        claim: String,
        /// Scalar as an element literal, e.g. 2 or [[1,1]]
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also print a plain-text table
        #[arg(long)]
        table: bool,
    },
    /// Print Γ_a(M) and a^tΓ_a(M)
    Gamma {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
    },
    /// Audit claims over the default catalog
    Catalog {
        #[arg(long)]
        max_order: usize,
        /// Comma-separated claim ids, or "all"
        #[arg(long)]
        claims: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        table: bool,
    },
    /// List catalog instances where a claim fails
    Search {
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn max_elems() -> Result<usize> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{BUDGET_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_ELEMS),
    }
}

fn parse_claims(s: &str) -> Result<Vec<ClaimId>> {
    if s.trim() == "all" {
        return Ok(ClaimId::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(|c| c.parse::<ClaimId>().map_err(Into::into))
        .collect()
}

fn parse_literal(s: &str) -> Result<Value> {
    serde_json::from_str(s).with_context(|| format!("element literal {s:?} is not valid JSON"))
}

fn read_spec(path: &Path) -> Result<InstanceSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(InstanceSpec::from_json(&v)?)
}

fn emit(doc: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn table(report: &RunReport) -> String {
    let mut s = String::new();
    for e in &report.entries {
        let status = match e.status {
            Status::Holds => "holds",
            Status::Fails => "FAILS",
            Status::HypothesisNotMet => "n/a",
        };
        let mut inst = e.instance.ring.clone();
        if let Some(m) = &e.instance.module {
            inst += &format!(" | {m}");
        }
        if let Some(a) = &e.instance.a {
            inst += &format!(" | a={a}");
        }
        if let Some(w) = &e.instance.with {
            inst += &format!(" | {w}");
        }
        s += &format!("{:<28} {:<6} {inst}  {}\n", e.claim.as_str(), status, e.detail);
    }
    let sum = &report.summary;
    s += &format!(
        "holds {}  fails {}  hypothesis_not_met {}  skipped {}\n",
        sum.holds,
        sum.fails,
        sum.hypothesis_not_met,
        report.skipped.len()
    );
    s
}

fn finish(report: &RunReport, out: Option<&Path>, show_table: bool) -> Result<ExitCode> {
    emit(&serde_json::to_value(report)?, out)?;
    if show_table {
        if out.is_some() {
            print!("{}", table(report));
        } else {
            eprint!("{}", table(report));
        }
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = max_elems()?;
    match cli.command {
        Commands::Check {
            spec,
            claim,
            a,
            t,
            out,
            table,
        } => {
            let config = RunConfig {
                claims: vec![claim.parse()?],
                t,
                max_elems: budget,
                target: Target::Instance {
                    spec: read_spec(&spec)?,
                    a: a.as_deref().map(parse_literal).transpose()?,
                },
            };
            finish(&run_report(&config)?, out.as_deref(), table)
        }
        Commands::Catalog {
            max_order,
            claims,
            t,
            out,
            table,
        } => {
            let config = RunConfig {
                claims: parse_claims(&claims)?,
                t,
                max_elems: budget,
                target: Target::Catalog { max_order },
            };
            finish(&run_report(&config)?, out.as_deref(), table)
        }
        Commands::Search {
            claim,
            t,
            max_order,
            out,
        } => {
            let result = search_counterexamples(claim.parse()?, t, max_order, budget)?;
            emit(&serde_json::to_value(&result)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Commands::Gamma { spec, a, t } => {
            if t == 0 {
                bail!("t must be a positive integer");
            }
            let spec = read_spec(&spec)?;
            let ring = FiniteRing::with_budget(&spec.ring, budget)?;
            let m = match &spec.module {
                Some(p) => PresentedModule::from_presentation(&ring, p)?,
                None => PresentedModule::free(&ring, 1)?,
            };
            let a = ring.parse_literal(&parse_literal(&a)?)?;
            let torsion = gamma(&m, a);
            let g = gln(&m, a, t);
            let reduced = is_at_reduced(&m, a, t);
            let doc = json!({
                "ring": ring.label(),
                "module": m.label(),
                "a": ring.literal(a),
                "t": t,
                "gamma": torsion.submodule.literal(&m),
                "stabilization": torsion.stabilization,
                "gln": g.literal(&m),
                "at_reduced": reduced.reduced,
                "witness": reduced.witness.map(|(x, k)| json!({"m": m.literal(x), "k": k})),
            });
            emit(&doc, None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
