//! Command-line front end over `spectra-core`.
//!
//! Plain output is one `key=value` line per fact. JSON schemas are documented
//! in the repository README. Exit codes: 0 success, 1 usage or computational
//! failure, 2 verification suite failure.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spectra_core::{
    classify_isospectral_squares, mu_sz, outer_class_count, primitive_prime_divisor, run_suite,
    spectrum_of, square_spectrum, suite_names, suzuki_params, twisted_square_spectrum, GroupSpec,
    Spectrum, SuiteReport, DEFAULT_ENUM_CAP,
};

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Element-order spectra of finite groups"
)]
struct Cli {
    /// Output format; dot applies only to prime-graph
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, spectrum, and coclique number of the Suzuki group Sz(2^alpha)
    Sz {
        #[arg(long)]
        alpha: u32,
    },
    /// Spectrum of the direct square Sz(q) x Sz(q)
    SzSquare {
        #[arg(long)]
        alpha: u32,
    },
    /// Groups isospectral to Sz(q) x Sz(q); with --p, the twisted variant
    /// for one prime divisor of alpha
    RecognizeSquare {
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Spectrum of the group described by a JSON file
    Spectrum {
        /// Path to a JSON group description
        #[arg(long)]
        group: PathBuf,
        /// Enumeration cap on the number of elements
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Four-prime nonsolvability witness for a spectrum
    Criterion {
        /// Comma-separated element orders, e.g. 20,28,35,52,65,91
        #[arg(long)]
        mu: String,
    },
    /// Prime graph of a spectrum
    PrimeGraph {
        #[arg(long)]
        mu: String,
    },
    /// Smallest primitive prime divisor of base^exp - 1
    Zsigmondy {
        #[arg(long)]
        base: u128,
        #[arg(long)]
        exp: u32,
    },
    /// Run one verification suite, or all of them
    Verify {
        /// Suite name, or "all"
        #[arg(long)]
        suite: String,
    },
}

#[derive(Serialize)]
struct SzOut {
    alpha: u32,
    q: u128,
    /// Decimal string: the order exceeds u128 for alpha >= 27.
    order: String,
    mu: Spectrum,
    t: usize,
}

#[derive(Serialize)]
struct SquareOut {
    alpha: u32,
    q: u128,
    mu: Spectrum,
}

#[derive(Serialize)]
struct TwistOut {
    alpha: u32,
    q: u128,
    p: u32,
    mu: Spectrum,
    isospectral: bool,
    outer_classes: usize,
    /// Representative twist parameters, one per isomorphism class.
    class_reps: Vec<u64>,
}

#[derive(Serialize)]
struct SpectrumOut {
    mu: Spectrum,
}

#[derive(Serialize)]
struct CriterionOut {
    witness: Option<[u128; 4]>,
    gm: Option<bool>,
}

#[derive(Serialize)]
struct GraphOut {
    vertices: Vec<u128>,
    edges: Vec<(u128, u128)>,
}

#[derive(Serialize)]
struct ZsigmondyOut {
    base: u128,
    exp: u32,
    prime: Option<u128>,
    exception: Option<&'static str>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    if cli.format == Format::Dot && !matches!(cli.command, Cmd::PrimeGraph { .. }) {
        eprintln!("error: --format dot is only valid for prime-graph");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let format = cli.format;
    match cli.command {
        Cmd::Sz { alpha } => {
            let par = suzuki_params(alpha)?;
            let mu = mu_sz(alpha)?;
            let (t, _) = mu.prime_graph()?.max_coclique()?;
            match format {
                Format::Plain => {
                    println!("q={}", par.q);
                    println!("order={}", par.order);
                    println!("mu=[{mu}]");
                    println!("t={t}");
                }
                _ => emit_json(&SzOut {
                    alpha,
                    q: par.q,
                    order: par.order.to_string(),
                    mu,
                    t,
                }),
            }
        }
        Cmd::SzSquare { alpha } => {
            let par = suzuki_params(alpha)?;
            let mu = square_spectrum(alpha)?;
            match format {
                Format::Plain => {
                    println!("q={}", par.q);
                    println!("mu=[{mu}]");
                }
                _ => emit_json(&SquareOut {
                    alpha,
                    q: par.q,
                    mu,
                }),
            }
        }
        Cmd::RecognizeSquare { alpha, p: Some(p) } => {
            let par = suzuki_params(alpha)?;
            let twist = twisted_square_spectrum(alpha, p)?;
            let (outer, reps) = outer_class_count(alpha, p)?;
            match format {
                Format::Plain => {
                    println!("q={}", par.q);
                    println!("p={p}");
                    println!("mu=[{}]", twist.spectrum);
                    println!("isospectral={}", twist.isospectral);
                    println!("outer_classes={outer}");
                    let reps = reps.iter().map(u64::to_string).collect::<Vec<_>>();
                    println!("class_reps=[{}]", reps.join(","));
                }
                _ => emit_json(&TwistOut {
                    alpha,
                    q: par.q,
                    p,
                    mu: twist.spectrum,
                    isospectral: twist.isospectral,
                    outer_classes: outer,
                    class_reps: reps,
                }),
            }
        }
        Cmd::RecognizeSquare { alpha, p: None } => {
            let classes = classify_isospectral_squares(alpha)?;
            match format {
                Format::Plain => {
                    println!("q={}", classes.q);
                    println!("count={}", classes.count);
                    for g in &classes.groups {
                        println!("{}=[{}]", g.label, g.mu);
                    }
                }
                _ => emit_json(&classes),
            }
        }
        Cmd::Spectrum { group, cap } => {
            let text = std::fs::read_to_string(&group)
                .with_context(|| format!("reading {}", group.display()))?;
            let spec: GroupSpec = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", group.display()))?;
            let mu = spectrum_of(&spec, cap.unwrap_or(DEFAULT_ENUM_CAP))?;
            match format {
                Format::Plain => println!("mu=[{mu}]"),
                _ => emit_json(&SpectrumOut { mu }),
            }
        }
        Cmd::Criterion { mu } => {
            let spectrum: Spectrum = mu.parse()?;
            let witness = spectrum.nonsolvability_criterion()?;
            match format {
                Format::Plain => match witness {
                    Some(w) => {
                        println!("witness={w}");
                        println!("gm={}", w.gm_condition());
                    }
                    None => println!("witness=none"),
                },
                _ => emit_json(&CriterionOut {
                    witness: witness.map(|w| w.primes()),
                    gm: witness.map(|w| w.gm_condition()),
                }),
            }
        }
        Cmd::PrimeGraph { mu } => {
            let spectrum: Spectrum = mu.parse()?;
            let graph = spectrum.prime_graph()?;
            match format {
                Format::Plain => {
                    let verts = graph
                        .vertices()
                        .iter()
                        .map(u128::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    let edges = graph
                        .edges()
                        .map(|(p, q)| format!("{p}-{q}"))
                        .collect::<Vec<_>>()
                        .join(",");
                    println!("vertices=[{verts}]");
                    println!("edges=[{edges}]");
                }
                Format::Json => emit_json(&GraphOut {
                    vertices: graph.vertices().to_vec(),
                    edges: graph.edges().collect(),
                }),
                Format::Dot => print!("{}", graph.dot()),
            }
        }
        Cmd::Zsigmondy { base, exp } => {
            let div = primitive_prime_divisor(base, exp)?;
            match format {
                Format::Plain => {
                    println!("base={base}");
                    println!("exp={exp}");
                    match div.prime() {
                        Some(r) => println!("prime={r}"),
                        None => println!("prime=none"),
                    }
                    println!("exception={}", div.label().unwrap_or("none"));
                }
                _ => emit_json(&ZsigmondyOut {
                    base,
                    exp,
                    prime: div.prime(),
                    exception: div.label(),
                }),
            }
        }
        Cmd::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" {
                suite_names().to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut reports = Vec::new();
            for name in names {
                reports.push(run_suite(name)?);
            }
            let ok = reports.iter().all(SuiteReport::pass);
            match format {
                Format::Plain => {
                    for report in &reports {
                        print!("{}", report.render_table());
                    }
                }
                _ => {
                    if suite == "all" {
                        emit_json(&reports);
                    } else {
                        emit_json(&reports[0]);
                    }
                }
            }
            if !ok {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("JSON encoding"));
}
