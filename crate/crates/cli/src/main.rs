//! `mirror-quadric`: command-line front end for the quadric mirror engine.

mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadric_mirror::cohomology::{Quadric, SchubertClass};
use quadric_mirror::critical;
use quadric_mirror::dmodule::DEFAULT_SEED;
use quadric_mirror::flat_sections::{self, Route};
use quadric_mirror::lg_zoo::{self, ModelName};
use quadric_mirror::quiver;

#[derive(Parser)]
#[command(name = "mirror-quadric", about = "Landau-Ginzburg mirrors of quadrics, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a superpotential.
    Superpotential {
        #[arg(long)]
        quadric: usize,
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of the hypergeometric flat section.
    Series {
        #[arg(long)]
        quadric: usize,
        #[arg(long)]
        order: usize,
        /// Class index, or `mid` for the second middle class.
        #[arg(long)]
        component: Option<String>,
        #[arg(long, value_enum, default_value = "closed")]
        route: RouteArg,
        #[arg(long)]
        csv: bool,
    },
    /// Closed-form critical points.
    Critical {
        #[arg(long)]
        quadric: usize,
        #[arg(long)]
        json: bool,
    },
    /// The superpotential quiver.
    Quiver {
        #[arg(long)]
        quadric: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Degree-k two-point invariant.
    Gw {
        #[arg(long)]
        quadric: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        quadric: usize,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Canonical,
    Givental,
    Prz,
    Lusztig,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Closed,
    Recursion,
    ConstantTerm,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Pullbacks,
    Cluster,
    Critical,
    Dmodule,
    Flatness,
    LieMatrix,
    All,
}

/// A usage-level failure (bad dimension, unknown component) or a failed check.
enum Failure {
    Usage(String),
    Check(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("MIRROR_QUADRIC_THREADS") {
        match t.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: MIRROR_QUADRIC_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            println!("FAIL {}", msg);
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Superpotential { quadric, model, json } => {
            let name = match model {
                ModelArg::Canonical => ModelName::Canonical,
                ModelArg::Givental => ModelName::Givental,
                ModelArg::Prz => ModelName::Przyjalkowski,
                ModelArg::Lusztig => ModelName::Lusztig,
            };
            let m = lg_zoo::model(name, quadric).map_err(usage)?;
            if json {
                println!("{}", m.to_json());
            } else {
                println!("model: {}", m.name.label());
                println!("variables: {}", m.variables.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));
                println!("W = {}", m.superpotential);
                for c in &m.constraints {
                    println!("0 = {}", c);
                }
            }
        }
        Command::Series { quadric, order, component, route, csv } => {
            series(quadric, order, component.as_deref(), route, csv)?;
        }
        Command::Critical { quadric, json } => {
            let report = critical::report_json(quadric).map_err(usage)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("N = {}, {} critical points", quadric, report["count"]);
                for pt in report["points"].as_array().into_iter().flatten() {
                    println!("{}: value {}", pt["label"].as_str().unwrap_or("?"), pt["value"].as_str().unwrap_or("?"));
                }
                if report["gradient_vanishes"] != serde_json::Value::Bool(true) {
                    return Err(Failure::Check("gradient does not vanish".into()));
                }
            }
        }
        Command::Quiver { quadric, dot } => {
            let qv = quiver::quadric_quiver(quadric).map_err(usage)?;
            if dot {
                print!("{}", qv.to_dot());
            } else {
                let w = quiver::superpotential_from_quiver(&qv).map_err(usage)?;
                println!("{} vertices, {} arrows", qv.vertex_count(), qv.arrows.len());
                println!("W = {}", w);
            }
        }
        Command::Gw { quadric, degree } => {
            let v = flat_sections::gw_invariant(quadric, degree).map_err(usage)?;
            println!("{}", v);
        }
        Command::Verify { quadric, suite, seed } => {
            Quadric::new(quadric).map_err(usage)?;
            println!("seed {}", seed);
            suites::run(quadric, suite, seed)?;
        }
    }
    Ok(())
}

fn series(n: usize, order: usize, component: Option<&str>, route: RouteArg, csv: bool) -> Result<(), Failure> {
    let qd = Quadric::new(n).map_err(usage)?;
    let classes = match component {
        None => qd.basis(),
        Some("mid") if qd.is_even() => vec![SchubertClass::MidPrime(qd.m() - 1)],
        Some(s) => {
            let l: usize = s.parse().map_err(|_| usage(format!("bad component {:?}", s)))?;
            let c = SchubertClass::Standard(l);
            if !qd.contains(c) {
                return Err(usage(format!("component {} out of range for N = {}", l, n)));
            }
            vec![c]
        }
    };
    let routes = match route {
        RouteArg::Closed => vec![Route::Closed],
        RouteArg::Recursion => vec![Route::Recursion],
        RouteArg::ConstantTerm => vec![Route::ConstantTerm],
        RouteArg::All => vec![Route::Closed, Route::Recursion, Route::ConstantTerm],
    };
    let rows = flat_sections::coefficient_table(n, order, &classes, &routes).map_err(usage)?;
    if csv {
        print!("{}", flat_sections::rows_to_csv(&rows));
        return Ok(());
    }
    let header: Vec<&str> = routes.iter().map(|r| r.label()).collect();
    println!("class\tk\thbar\t{}", header.join("\t"));
    let mut disagree = None;
    for chunk in rows.chunks(routes.len()) {
        let r0 = &chunk[0];
        let vals: Vec<String> = chunk.iter().map(|r| r.value.to_string()).collect();
        if chunk.iter().any(|r| r.value != r0.value) && disagree.is_none() {
            disagree = Some(format!("routes disagree at {} k={}", r0.class, r0.k));
        }
        println!("{}\t{}\t{}\t{}", r0.class, r0.k, r0.hbar_exponent, vals.join("\t"));
    }
    match disagree {
        Some(msg) => Err(Failure::Check(msg)),
        None => Ok(()),
    }
}
