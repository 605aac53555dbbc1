use std::process::ExitCode;

use clap::{Parser, Subcommand};
use weblab::catalog::{self, catalog_verify_with};
use weblab::monodromy::{fmt_complex, web_monodromy};
use weblab::parse::{parse_form, parse_map, parse_ratfunc, parse_ratfunc_with, Vars};
use weblab::planemaps::{is_invariant_web, pullback};
use weblab::ueda::{symmetrize, ueda_endomorphism};
use weblab::webgeom::{discriminant_degree_check, tangency_divisor, WebOnP2};
use weblab::WebError;

#[derive(Parser)]
#[command(name = "weblab", version, about = "Exact computations with singular webs on the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of a form and its divisor
    Disc { form: String },
    /// Pull a form back by a map
    Pullback { map: String, form: String },
    /// Whether a map leaves the web of a form invariant
    Invariant { map: String, form: String },
    /// Degree of the web on the projective plane
    Degree {
        form: String,
        #[arg(long, env = "WEBLAB_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Tangency divisor of two foliations
    Tangency { first: String, second: String },
    /// Numerical monodromy of the web directions
    Monodromy {
        form: String,
        #[arg(long, env = "WEBLAB_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Rewrite a symmetric function in s = x + y, p = x*y
    Symmetrize { expr: String },
    /// Plane map induced by psi(z) on pairs, in coordinates (s, p)
    Ueda { psi: String },
    /// The catalog of worked examples
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print entry names and checks
    List,
    /// Run the checks of the named entries (all when none given)
    Verify {
        names: Vec<String>,
        #[arg(long, env = "WEBLAB_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Record wall-clock time per check
        #[arg(long)]
        timings: bool,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn run(command: Command) -> Result<Outcome, WebError> {
    match command {
        Command::Disc { form } => {
            let w = parse_form(&form)?;
            println!("discriminant: {}", w.discriminant()?);
            println!("divisor: {}", w.discriminant_divisor()?);
        }
        Command::Pullback { map, form } => {
            let pb = pullback(&parse_map(&map)?, &parse_form(&form)?)?;
            println!("primitive: {}", pb.primitive);
            println!("content: {}", pb.content);
            println!("denominator: {}", pb.denominator);
        }
        Command::Invariant { map, form } => match is_invariant_web(&parse_map(&map)?, &parse_form(&form)?)? {
            Some(c) => println!("invariant, c = {c}"),
            None => {
                println!("not invariant");
                return Ok(Outcome::Fail);
            }
        },
        Command::Degree { form, seed } => {
            let r = discriminant_degree_check(&WebOnP2::new(&parse_form(&form)?)?, seed)?;
            println!("degree: {}", r.degree);
            println!(
                "discriminant degree: {} (affine {}, at infinity {}), expected {}",
                r.computed, r.affine, r.at_infinity, r.predicted
            );
            if !r.pass {
                return Ok(Outcome::Fail);
            }
        }
        Command::Tangency { first, second } => {
            println!("{}", tangency_divisor(&parse_form(&first)?, &parse_form(&second)?)?);
        }
        Command::Monodromy { form, seed } => {
            let r = web_monodromy(&parse_form(&form)?, seed)?;
            println!("line: ({}, {}) + t*({}, {})", r.line[1], r.line[3], r.line[0], r.line[2]);
            println!("base point: {}", fmt_complex(r.base_point));
            println!("branch points: {}", r.branch_points.len());
            for (b, g) in r.branch_points.iter().zip(&r.generators) {
                println!("  {}  {g}", fmt_complex(*b));
            }
            let orbits: Vec<String> = r
                .orbits
                .iter()
                .map(|o| format!("{{{}}}", o.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                .collect();
            println!("orbits: {}", orbits.join(" "));
            println!("transitive: {}", r.transitive);
            println!("group order: {}", r.group_order.map_or("> 5040".into(), |o| o.to_string()));
            println!("loop at infinity consistent: {}", r.infinity_consistent);
            if !r.infinity_consistent {
                return Ok(Outcome::Fail);
            }
        }
        Command::Symmetrize { expr } => {
            println!("{}", symmetrize(&parse_ratfunc(&expr)?)?.display_with(("s", "p")));
        }
        Command::Ueda { psi } => {
            let psi = parse_ratfunc_with(&psi, Vars { first: "z", second: "w" })?;
            println!("{}", ueda_endomorphism(&psi)?.display_with(("s", "p")));
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in catalog::catalog() {
                let checks: Vec<&str> = e.checks.iter().map(|c| c.name).collect();
                println!("{:<20} {}", e.name, e.description);
                println!("{:<20} checks: {}", "", checks.join(", "));
            }
        }
        Command::Catalog { action: CatalogAction::Verify { names, seed, json, timings } } => {
            let names = if names.is_empty() { catalog::names() } else { names };
            let selection: Vec<&str> = names.iter().map(String::as_str).collect();
            let report = catalog_verify_with(&selection, seed, timings)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            if !report.all_pass() {
                return Ok(Outcome::Fail);
            }
        }
    }
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
