//! Batch command-line surface over the regulus library. All heavy lifting
//! lives in the library; this binary parses flags, dispatches and prints.
//!
//! Exit codes: 0 success, 1 invalid input or a negative check, 2 budget
//! stop with partial results.

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulus::constructions::{self, DEFAULT_VERIFY_BUDGET};
use regulus::genpath::{generate, GenOptions};
use regulus::graph::{g6_decode, g6_encode, Graph};
use regulus::randmodel;
use regulus::regcheck::{membership_budgeted, Mode};
use regulus::search::{hill_search, Pool};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "regulus", version, about = "Ramsey-type numbers for regular induced subgraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally emit) the family members order by order.
    Generate {
        /// Forbidden regular subgraph order (k >= 3)
        k: usize,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        /// Largest order to generate
        #[arg(long)]
        nmax: usize,
        /// Write the graphs of order nmax to this file as graph6 lines
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Worker threads (default: REGULUS_WORKERS or 1)
        #[arg(long)]
        workers: Option<usize>,
        /// Disable the max-degree-last optimization
        #[arg(long)]
        no_maxdeg: bool,
        /// Disable the complement-closure optimization
        #[arg(long)]
        no_complement: bool,
        /// Force sequential, stream-stable output
        #[arg(long)]
        deterministic: bool,
        /// Stop after this many extension candidates, flagging partial rows
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Test graph6 lines for family membership: prints IN or OUT per line.
    Check {
        file: PathBuf,
        k: usize,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        /// Per-line oracle budget in visited subsets
        #[arg(long, default_value_t = 1e8)]
        budget: f64,
    },
    /// Build an explicit construction and print provenance plus graph6.
    Construct {
        /// Family: gp | special | qp | 4p | lex
        family: String,
        /// Family parameters (gp/special/4p: p; qp: q p; lex: r s)
        params: Vec<u64>,
        /// Verification budget in visited subsets
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET as f64)]
        verify_budget: f64,
        /// Skip the no-regular-subgraph verification
        #[arg(long)]
        no_verify: bool,
    },
    /// Sample heterogeneous random graphs and report how often an induced
    /// regular subgraph of order >= k appears.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.191)]
        alpha: f64,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-trial rows "trial,has_regular" to this file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate the probabilistic lower-bound machinery.
    Bound {
        #[arg(long, default_value_t = 0.191)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0001)]
        eps: f64,
        /// Also scan the log-ratio inequality on an N x N grid
        #[arg(long)]
        uv_steps: Option<usize>,
        /// Also Monte-Carlo check the cube moment bound at this k
        #[arg(long)]
        cube_k: Option<usize>,
        #[arg(long, default_value_t = 1.0)]
        cube_beta: f64,
        #[arg(long, default_value_t = 1_000_000)]
        cube_trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hill search for large family members from the one-vertex seed.
    Search {
        k: usize,
        #[arg(long, default_value = "exact")]
        mode: Mode,
        /// Candidate-evaluation budget
        #[arg(long, default_value_t = 1e5)]
        budget: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for pool.g6 and manifest.json
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2; flag problems are plain input errors here
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn env_workers() -> usize {
    std::env::var("REGULUS_WORKERS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Generate {
            k,
            mode,
            nmax,
            emit,
            workers,
            no_maxdeg,
            no_complement,
            deterministic,
            budget,
        } => {
            let opts = GenOptions {
                max_degree_last: !no_maxdeg,
                complement_closure: !no_complement,
                emit_level: emit.as_ref().map(|_| nmax as u32),
                workers: if deterministic { 1 } else { workers.unwrap_or_else(env_workers) },
                deterministic,
                node_budget: budget.map(|b| b as u64),
            };
            let mut writer = match &emit {
                Some(path) => Some(BufWriter::new(
                    File::create(path).map_err(|e| format!("cannot create {path:?}: {e}"))?,
                )),
                None => None,
            };
            let mut sink = |_level: u32, g: &Graph| {
                if let Some(w) = writer.as_mut() {
                    let _ = writeln!(w, "{}", g6_encode(g));
                }
            };
            let counts = generate(k, mode, nmax, &opts, Some(&mut sink))
                .map_err(|e| e.to_string())?;
            print!("{}", counts.to_tsv());
            Ok(if counts.all_complete() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Check { file, k, mode, budget } => {
            if k == 0 {
                return Err("k must be at least 1".into());
            }
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {file:?}: {e}"))?;
            let mut all_in = true;
            for (idx, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let g = g6_decode(line).map_err(|e| format!("line {}: {e}", idx + 1))?;
                let member = membership_budgeted(&g, k, mode, budget as u64)
                    .map_err(|e| format!("line {}: {e}", idx + 1))?;
                println!("{}", if member { "IN" } else { "OUT" });
                all_in &= member;
            }
            Ok(if all_in { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Construct { family, params, verify_budget, no_verify } => {
            let (graph, name, param_names, bound, target) = build_construction(&family, &params)?;
            let verified = match target {
                Some(k) if !no_verify => {
                    match constructions::verify_no_regular(&graph, k, verify_budget as u64) {
                        Ok(ok) => serde_json::Value::Bool(ok),
                        Err(constructions::ConstructError::Infeasible { .. }) => {
                            serde_json::Value::String("infeasible".into())
                        }
                        Err(e) => return Err(e.to_string()),
                    }
                }
                _ => serde_json::Value::String("skipped".into()),
            };
            let params_json: serde_json::Map<String, serde_json::Value> = param_names
                .iter()
                .zip(&params)
                .map(|(n, &v)| (n.to_string(), serde_json::Value::from(v)))
                .collect();
            let provenance = serde_json::json!({
                "family": name,
                "params": params_json,
                "order": graph.order(),
                "bound": bound,
                "verified": verified,
            });
            println!("# {provenance}");
            println!("{}", g6_encode(&graph));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { n, k, alpha, samples, seed, csv } => {
            let trials = randmodel::empirical_regular_trials(n, k, alpha, samples, seed)
                .map_err(|e| e.to_string())?;
            if let Some(path) = csv {
                let mut w = BufWriter::new(
                    File::create(&path).map_err(|e| format!("cannot create {path:?}: {e}"))?,
                );
                writeln!(w, "trial,has_regular").map_err(|e| e.to_string())?;
                for (t, hit) in trials.iter().enumerate() {
                    writeln!(w, "{t},{}", u8::from(*hit)).map_err(|e| e.to_string())?;
                }
            }
            let rate = trials.iter().filter(|&&b| b).count() as f64 / trials.len() as f64;
            println!("{rate}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { alpha, eps, uv_steps, cube_k, cube_beta, cube_trials, seed } => {
            let base = randmodel::bound_base(alpha, eps).map_err(|e| e.to_string())?;
            println!("{base}");
            if let Some(steps) = uv_steps {
                let v = randmodel::log_ratio_violation(alpha, steps).map_err(|e| e.to_string())?;
                println!("uv_max_violation\t{v}");
            }
            if let Some(k) = cube_k {
                let c = randmodel::mc_cube_moment_bound(k, alpha, cube_beta, cube_trials, seed)
                    .map_err(|e| e.to_string())?;
                println!("cube_estimate\t{}", c.estimate);
                println!("cube_bound\t{}", c.bound);
                println!("cube_stderr\t{}", c.stderr);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { k, mode, budget, seed, out } => {
            if k < 3 {
                return Err(format!("search requires k >= 3, got {k}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seeds = Pool::seed_k1(k, mode);
            let pool =
                hill_search(k, mode, seeds, budget as u64, &mut rng).map_err(|e| e.to_string())?;
            let manifest = pool.manifest(seed);
            let json = serde_json::to_string(&manifest).map_err(|e| e.to_string())?;
            println!("{json}");
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir).map_err(|e| format!("cannot create {dir:?}: {e}"))?;
                std::fs::write(dir.join("pool.g6"), pool.to_g6_lines())
                    .map_err(|e| e.to_string())?;
                std::fs::write(dir.join("manifest.json"), json).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

type Built = (Graph, &'static str, Vec<&'static str>, u64, Option<usize>);

fn build_construction(family: &str, params: &[u64]) -> Result<Built, String> {
    let need = |n: usize| -> Result<(), String> {
        if params.len() != n {
            Err(format!("family {family} takes {n} parameter(s), got {}", params.len()))
        } else {
            Ok(())
        }
    };
    match family {
        "gp" => {
            need(1)?;
            let p = params[0];
            let g = constructions::build_gp(p).map_err(|e| e.to_string())?;
            let bound = constructions::gp_bound(p).map_err(|e| e.to_string())?;
            Ok((g, "gp", vec!["p"], bound, Some(p as usize)))
        }
        "special" => {
            need(1)?;
            let p = params[0];
            let g = constructions::build_special(p).map_err(|e| e.to_string())?;
            let bound = constructions::special_bound(p).map_err(|e| e.to_string())?;
            Ok((g, "special", vec!["p"], bound, Some(p as usize)))
        }
        "qp" => {
            need(2)?;
            let (q, p) = (params[0], params[1]);
            let g = constructions::build_qp(q, p).map_err(|e| e.to_string())?;
            let bound = constructions::qp_bound(q, p).map_err(|e| e.to_string())?;
            Ok((g, "qp", vec!["q", "p"], bound, Some((q * p) as usize)))
        }
        "4p" => {
            need(1)?;
            let p = params[0];
            let g = constructions::build_4p(p).map_err(|e| e.to_string())?;
            let bound = constructions::fourp_bound(p).map_err(|e| e.to_string())?;
            Ok((g, "4p", vec!["p"], bound, Some(4 * p as usize)))
        }
        "lex" => {
            need(2)?;
            let (r, s) = (params[0] as usize, params[1] as usize);
            if r < 3 || s < 1 {
                return Err("lex needs cycle length >= 3 and clique size >= 1".into());
            }
            let g = Graph::cycle(r)
                .lex_product(&Graph::complete(s))
                .map_err(|e| e.to_string())?;
            Ok((g, "lex", vec!["r", "s"], 0, None))
        }
        other => Err(format!("unknown family {other:?}; use gp | special | qp | 4p | lex")),
    }
}
