//! Command line front end: pair validation, normal forms, group operations,
//! exp/log, seeded check suites, and induction. Exit status 0 means every
//! requested check passed; mathematical failures exit 1, usage errors 2.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use shcp_core::checks::{
    lie_of_psi, omega_iso_check, quotient_lemma_check, relations_check, roundtrip_check,
    sample_odd, CheckReport,
};
use shcp_core::files::{
    lie_point_to_json, load_even_module, load_pair, load_word, parse_lie_point,
    parse_weil_descriptor, split_to_json, split_to_text,
};
use shcp_core::pair::SHCPair;
use shcp_core::repr::{build_induced_trivial, induce_from_even, validate_pair_module};
use shcp_core::rng::Rng;
use shcp_core::supergroup::{gp_exp, gp_inv, gp_log, gp_mul, normalize, SplitElement};
use shcp_core::weil::WeilAlgebra;

#[derive(Parser)]
#[command(name = "shcp", version, about = "Exact computations with super Harish-Chandra pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Relations,
    Roundtrip,
    Quotient,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a pair file against all axioms
    Validate {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Rewrite a word file into its split normal form
    Normalize {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Multiply two word files and print the normal form of the product
    Mul {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long = "word", action = clap::ArgAction::Append, required = true)]
        words: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Normal form of the inverse of a word file
    Inv {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Split form of exp(Z) for a point Z of n_g(A), given as `name:expr,…`
    Exp {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Logarithm of a word that lands in the Boseck kernel N_G(A)
    Log {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a seeded check suite; exit 0 iff everything passes
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        weil: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Seed; defaults to $SHCP_SEED, then 42
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build the induced module ⋀g₁ ⊗ M₀ (trivial M₀ when --module is absent)
    Induce {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn default_seed(cli: Option<u64>) -> u64 {
    cli.or_else(|| std::env::var("SHCP_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(42)
}

fn emit_split(s: &SplitElement, format: Format) {
    match format {
        Format::Text => print!("{}", split_to_text(s)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&split_to_json(s)).unwrap()),
    }
}

fn run_checks(
    suite: Suite,
    pair: &Arc<SHCPair>,
    algebra: &Arc<WeilAlgebra>,
    trials: u64,
    seed: u64,
) -> shcp_core::Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    let relations = matches!(suite, Suite::Relations | Suite::All);
    let roundtrip = matches!(suite, Suite::Roundtrip | Suite::All);
    let quotient = matches!(suite, Suite::Quotient | Suite::All);
    if relations {
        reports.push(relations_check(pair, algebra, trials, seed)?);
    }
    if roundtrip {
        reports.push(roundtrip_check(pair, algebra, trials, seed)?);
        let (_, report) = lie_of_psi(pair)?;
        reports.push(report);
        reports.push(omega_iso_check(pair, algebra, trials, seed)?);
    }
    if quotient {
        // 𝔞 generated by two seeded random odd elements, levels n = 1, 2
        let mut rng = Rng::new(seed ^ 0x5eed);
        let mut gens = Vec::new();
        while gens.len() < 2 {
            let g = sample_odd(algebra, &mut rng);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        for n in [1, 2] {
            reports.push(quotient_lemma_check(pair, algebra, &gens, n, trials, seed)?);
        }
    }
    Ok(reports)
}

fn run(cli: Cli) -> shcp_core::Result<bool> {
    match cli.cmd {
        Cmd::Validate { pair, format } => {
            // load_pair validates; re-run for the full per-axiom report
            match load_pair(&pair) {
                Ok(p) => {
                    let report = p.validate();
                    match format {
                        Format::Text => print!("{report}"),
                        Format::Json => {
                            println!("{}", serde_json::to_string_pretty(&report).unwrap())
                        }
                    }
                    Ok(report.passed())
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(false)
                }
            }
        }
        Cmd::Normalize { pair, weil, word, format } => {
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let w = load_word(&word)?.to_word(&pair, &algebra)?;
            emit_split(&normalize(&w)?, format);
            Ok(true)
        }
        Cmd::Mul { pair, weil, words, format } => {
            if words.len() != 2 {
                return Err(shcp_core::Error::Invalid(
                    "mul needs exactly two --word files".into(),
                ));
            }
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let a = normalize(&load_word(&words[0])?.to_word(&pair, &algebra)?)?;
            let b = normalize(&load_word(&words[1])?.to_word(&pair, &algebra)?)?;
            emit_split(&gp_mul(&a, &b)?, format);
            Ok(true)
        }
        Cmd::Inv { pair, weil, word, format } => {
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let s = normalize(&load_word(&word)?.to_word(&pair, &algebra)?)?;
            emit_split(&gp_inv(&s)?, format);
            Ok(true)
        }
        Cmd::Exp { pair, weil, point, format } => {
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let z = parse_lie_point(&point, &pair, &algebra)?;
            emit_split(&gp_exp(&pair, &algebra, &z)?, format);
            Ok(true)
        }
        Cmd::Log { pair, weil, word, format } => {
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let s = normalize(&load_word(&word)?.to_word(&pair, &algebra)?)?;
            let z = gp_log(&s)?;
            match format {
                Format::Text => println!("{z}"),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&lie_point_to_json(&z)).unwrap())
                }
            }
            Ok(true)
        }
        Cmd::Check { suite, pair, weil, trials, seed, format } => {
            let pair = load_pair(&pair)?;
            let algebra = parse_weil_descriptor(&weil)?;
            let seed = default_seed(seed);
            let reports = run_checks(suite, &pair, &algebra, trials, seed)?;
            let passed = reports.iter().all(|r| r.passed);
            match format {
                Format::Text => {
                    for r in &reports {
                        print!("{}", r.text());
                    }
                    println!("overall: {}", if passed { "PASS" } else { "FAIL" });
                }
                Format::Json => {
                    let v = serde_json::json!({
                        "schema_version": 1,
                        "passed": passed,
                        "reports": reports,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(passed)
        }
        Cmd::Induce { pair, module, format } => {
            let pair = load_pair(&pair)?;
            let induced = match module {
                None => build_induced_trivial(&pair)?,
                Some(path) => {
                    let m0 = load_even_module(&path, &pair)?;
                    induce_from_even(&pair, &m0)?
                }
            };
            let report = validate_pair_module(&pair, &induced.module);
            let lie = pair.lie();
            match format {
                Format::Text => {
                    println!(
                        "induced module of dimension {} (cyclic vector index {})",
                        induced.module.space.dim(),
                        induced.cyclic
                    );
                    for b in 0..lie.dim() {
                        println!("{}: {:?}", lie.name(b), induced.module.g_mats[b]);
                    }
                    for (k, m) in pair.kpoints().iter().zip(&induced.module.kpoint_mats) {
                        println!("{}: {:?}", k.name, m);
                    }
                    print!("{report}");
                }
                Format::Json => {
                    let mats: serde_json::Map<String, serde_json::Value> = (0..lie.dim())
                        .map(|b| {
                            (lie.name(b).to_string(), matrix_to_json(&induced.module.g_mats[b]))
                        })
                        .chain(pair.kpoints().iter().zip(&induced.module.kpoint_mats).map(
                            |(k, m)| (k.name.clone(), matrix_to_json(m)),
                        ))
                        .collect();
                    let v = serde_json::json!({
                        "schema_version": 1,
                        "dimension": induced.module.space.dim(),
                        "cyclic": induced.cyclic,
                        "matrices": mats,
                        "validation": report,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(report.passed())
        }
    }
}

fn matrix_to_json(m: &shcp_core::superlinear::SuperMatrix) -> serde_json::Value {
    let n = m.space().dim();
    serde_json::Value::Array(
        (0..n)
            .map(|i| {
                serde_json::Value::Array(
                    (0..n)
                        .map(|j| serde_json::Value::String(m.at(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
