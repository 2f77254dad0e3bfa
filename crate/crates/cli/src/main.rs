use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::Value;

use so3five::obstruction::{Catalog, StructureVerdict, SurfaceInvariants};
use so3five_cli::{cmd_charpoly, cmd_check, cmd_upsilon, cmd_verify, RunReport, VerifyOptions};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "so3five", version, about = "Exact checks for the irreducible SO(3) action on R^5")]
struct Cli {
    /// Emit one JSON object instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite.
    Verify {
        /// Seed for the sampled rotations.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled rotations.
        #[arg(long, default_value_t = 25)]
        samples: usize,
        #[arg(long, hide = true)]
        corrupt_rho5: bool,
    },
    /// Characteristic polynomial of the curvature in rho3 or rho5.
    Charpoly {
        #[arg(long, value_parser = parse_dim)]
        dim: usize,
    },
    /// Existence of standard and irreducible structures on S x S^1.
    Check {
        /// Catalog name or connected sum such as "CP2#-CP2" (use `--` before names starting with '-').
        #[arg(conflicts_with_all = ["chi", "sigma"])]
        name: Option<String>,
        #[arg(long, requires = "sigma", allow_negative_numbers = true)]
        chi: Option<i64>,
        #[arg(long, requires = "chi", allow_negative_numbers = true)]
        sigma: Option<i64>,
        /// JSONL catalog to use instead of the built-in one.
        #[arg(long, env = "SO3FIVE_CATALOG")]
        catalog: Option<PathBuf>,
    },
    /// Print the nonzero components of Upsilon.
    Upsilon,
}

fn parse_dim(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(d @ (3 | 5)) => Ok(d),
        _ => Err(format!("expected 3 or 5, got '{s}'")),
    }
}

fn emit(json: bool, report: &RunReport, result: Option<Value>, text: Option<String>) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json(result)).expect("serializable"));
    } else {
        print!("{}", report.to_text());
        if let Some(t) = text {
            println!();
            print!("{t}");
        }
    }
    ExitCode::from(report.exit_code as u8)
}

fn verdict_text(v: &StructureVerdict) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = format!("surface {}  chi = {}  sigma = {}\n", v.surface.name, v.surface.euler, v.surface.signature);
    for r in &v.reasons {
        out.push_str(&format!("  {:<24} {:>6}  {}\n", r.criterion, r.value, if r.pass { "ok" } else { "obstructed" }));
    }
    out.push_str(&format!("standard structure on S x S^1:    {}\n", yes_no(v.standard_exists)));
    out.push_str(&format!("irreducible structure on S x S^1: {}\n", yes_no(v.irreducible_exists)));
    out
}

fn resolve_surface(
    name: Option<String>,
    chi: Option<i64>,
    sigma: Option<i64>,
    catalog: Option<PathBuf>,
) -> anyhow::Result<SurfaceInvariants> {
    if let (Some(chi), Some(sigma)) = (chi, sigma) {
        return Ok(SurfaceInvariants::new(format!("chi={chi},sigma={sigma}"), chi, sigma));
    }
    let name = name.context("give a surface name or both --chi and --sigma")?;
    let catalog = match catalog {
        Some(path) => Catalog::load(&path)?,
        None => Catalog::default(),
    };
    Ok(catalog.resolve(&name)?)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let json = cli.json;
    Ok(match cli.command {
        Command::Verify { seed, samples, corrupt_rho5 } => {
            let report = cmd_verify(&VerifyOptions { seed, samples, corrupt_rho5 });
            emit(json, &report, None, None)
        }
        Command::Charpoly { dim } => {
            let (report, doc) = cmd_charpoly(dim).map_err(anyhow::Error::msg)?;
            let text = format!(
                "det(lambda I + K) = {}\np1 form = {}\nratio to rho3 = {}\n",
                doc["char_poly"].as_str().unwrap_or_default(),
                doc["p1_form"].as_str().unwrap_or_default(),
                doc["ratio_to_base"]
            );
            emit(json, &report, Some(doc), Some(text))
        }
        Command::Check { name, chi, sigma, catalog } => {
            let surface = match resolve_surface(name, chi, sigma, catalog) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    return Ok(ExitCode::from(USAGE_ERROR));
                }
            };
            let (report, verdict) = cmd_check(&surface);
            let text = verdict_text(&verdict);
            emit(json, &report, Some(serde_json::to_value(&verdict)?), Some(text))
        }
        Command::Upsilon => {
            let (report, dump) = cmd_upsilon().map_err(anyhow::Error::msg)?;
            let text = dump.to_text();
            emit(json, &report, Some(serde_json::to_value(&dump)?), Some(text))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
