//! qcat: scripted verification for quantum cluster algebras.
//!
//! Every command reads seeds, brackets and transformations from the JSON
//! file formats of qcat-core, prints deterministic output, and exits with
//! 0 on success, 1 on a mathematical failure (with a witness), and 2 on an
//! input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use qcat_core::decomp::{verify_decomposition, DecompositionReport};
use qcat_core::inner::{
    check_p_membership, classify_inner, generic_vector, pattern_solutions, GTransform,
    GTransformFile, MembershipViolation,
};
use qcat_core::poisson::{
    bracket_eval, check_compatible, verify_poisson_axioms, PoissonFile, PoissonSpec,
};
use qcat_core::seeds::enumerate_exchange_graph;
use qcat_core::{Seed, SeedFile, TorusElement};

#[derive(Parser)]
#[command(
    name = "qcat",
    about = "Exact computation in quantum cluster algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the compatible pair of a seed file and print D.
    Validate {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a mutation word (comma-separated 1-based directions) and print
    /// the resulting cluster variables.
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the exchange graph to a depth.
    Graph {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a Poisson bracket {a, b} in the torus of a seed.
    Bracket {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        poisson: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        json: bool,
    },
    /// Check log-canonicity of every cluster to a depth.
    CheckCompatible {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        poisson: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the membership check on a transformation and classify it.
    ClassifyInner {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Solve the generator pattern constraints of the seed's Lambda.
    SolvePatterns {
        #[arg(long)]
        seed: PathBuf,
        /// 1-based generator index; all generators when omitted.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Find the smallest generic exponent vector for the seed's Lambda.
    GenericVector {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Split the seed into indecomposable blocks and report the gluing data.
    Decompose {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force the Leibniz and Jacobi identities on a monomial window.
    VerifyAxioms {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        poisson: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Command outcome: stdout text plus the mathematical verdict.
enum Outcome {
    Pass(String),
    MathFail(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass(text)) => {
            print!("{}", text);
            ExitCode::SUCCESS
        }
        Ok(Outcome::MathFail(text)) => {
            print!("{}", text);
            ExitCode::from(1)
        }
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_seed(path: &Path) -> Result<Seed, String> {
    let text = read_file(path)?;
    let file: SeedFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    file.to_seed()
        .map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_poisson(path: &Path) -> Result<PoissonSpec, String> {
    let text = read_file(path)?;
    let file: PoissonFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    file.to_spec()
        .map_err(|e| format!("{}: {}", path.display(), e))
}

fn load_g(path: &Path) -> Result<GTransform, String> {
    let text = read_file(path)?;
    let file: GTransformFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    file.to_transform()
        .map_err(|e| format!("{}: {}", path.display(), e))
}

fn parse_word(word: &str) -> Result<Vec<usize>, String> {
    word.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad mutation word entry '{}': {}", part, e))
        })
        .collect()
}

fn seed_hash(seed: &Seed) -> String {
    let digest = Sha256::digest(seed.canonical_key().as_bytes());
    digest[..8].iter().map(|b| format!("{:02x}", b)).collect()
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Validate { seed, json } => {
            let text = read_file(&seed)?;
            let file: SeedFile =
                serde_json::from_str(&text).map_err(|e| format!("{}: {}", seed.display(), e))?;
            match file.to_seed() {
                Ok(s) => {
                    let d: Vec<String> = s.d().iter().map(|x| x.to_string()).collect();
                    if json {
                        let value = serde_json::json!({"compatible": true, "D": s.d()});
                        Ok(Outcome::Pass(pretty(&value)))
                    } else {
                        Ok(Outcome::Pass(format!("D = diag({})\n", d.join(","))))
                    }
                }
                Err(e) => {
                    if json {
                        let value =
                            serde_json::json!({"compatible": false, "error": e.to_string()});
                        Ok(Outcome::MathFail(pretty(&value)))
                    } else {
                        Ok(Outcome::MathFail(format!("not a quantum seed: {}\n", e)))
                    }
                }
            }
        }

        Command::Mutate { seed, word, json } => {
            let s = load_seed(&seed)?;
            let word = parse_word(&word)?;
            let mutated = s.mutate_word(&word).map_err(|e| e.to_string())?;
            if json {
                let value = serde_json::json!({
                    "word": word,
                    "B": mutated.exchange().rows(),
                    "Lambda": mutated.lambda().rows(),
                    "D": mutated.d(),
                    "vars": mutated.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                });
                Ok(Outcome::Pass(pretty(&value)))
            } else {
                let mut out = String::new();
                for (i, v) in mutated.vars().iter().enumerate() {
                    let _ = writeln!(out, "X{} = {}", i + 1, v);
                }
                Ok(Outcome::Pass(out))
            }
        }

        Command::Graph { seed, depth, json } => {
            let s = load_seed(&seed)?;
            let graph = enumerate_exchange_graph(&s, depth).map_err(|e| e.to_string())?;
            let variables = graph.distinct_cluster_variables();
            if json {
                let nodes: Vec<_> = graph
                    .nodes
                    .iter()
                    .map(|node| {
                        serde_json::json!({
                            "hash": seed_hash(&node.seed),
                            "depth": node.depth,
                            "history": node.seed.history(),
                            "B": node.seed.exchange().rows(),
                            "Lambda": node.seed.lambda().rows(),
                            "vars": node.seed.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let edges: Vec<_> = graph
                    .edge_multiplicities()
                    .into_iter()
                    .map(|((a, b), mult)| serde_json::json!({"a": a, "b": b, "multiplicity": mult}))
                    .collect();
                let half_edges: Vec<_> = graph
                    .half_edges
                    .iter()
                    .map(|&(u, k, v)| serde_json::json!([u, k, v]))
                    .collect();
                let value = serde_json::json!({
                    "nodes": nodes,
                    "edges": edges,
                    "half_edges": half_edges,
                    "distinct_variables": variables.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                });
                Ok(Outcome::Pass(pretty(&value)))
            } else {
                let mut out = String::new();
                let _ = writeln!(out, "nodes = {}", graph.node_count());
                let _ = writeln!(out, "edges = {}", graph.edge_count());
                let _ = writeln!(out, "distinct cluster variables = {}", variables.len());
                for v in &variables {
                    let _ = writeln!(out, "  {}", v);
                }
                Ok(Outcome::Pass(out))
            }
        }

        Command::Bracket {
            seed,
            poisson,
            g,
            a,
            b,
            json,
        } => {
            let s = load_seed(&seed)?;
            let spec = match (poisson, g) {
                (Some(p), None) => load_poisson(&p)?,
                (None, Some(path)) => PoissonSpec::InnerG(load_g(&path)?),
                _ => return Err("provide exactly one of --poisson or --g".into()),
            };
            let a = TorusElement::parse(&a, s.m()).map_err(|e| e.to_string())?;
            let b = TorusElement::parse(&b, s.m()).map_err(|e| e.to_string())?;
            let value = bracket_eval(&spec, &a, &b, s.ambient()).map_err(|e| e.to_string())?;
            if json {
                Ok(Outcome::Pass(pretty(
                    &serde_json::json!({"bracket": value.to_string()}),
                )))
            } else {
                Ok(Outcome::Pass(format!("{}\n", value)))
            }
        }

        Command::CheckCompatible {
            seed,
            poisson,
            depth,
            json,
        } => {
            let s = load_seed(&seed)?;
            let spec = load_poisson(&poisson)?;
            let report = check_compatible(&spec, &s, depth).map_err(|e| e.to_string())?;
            let value = serde_json::json!({
                "compatible_to_depth": report.depth,
                "clusters_checked": report.clusters_checked,
                "compatible": report.compatible,
                "note": "certificate is depth-bounded; deeper clusters were not inspected",
                "witness": report.witness.as_ref().map(|w| serde_json::json!({
                    "history": w.history,
                    "error": w.error.to_string(),
                })),
            });
            let text = if json {
                pretty(&value)
            } else if report.compatible {
                format!(
                    "compatible to depth {} ({} clusters checked; certificate is depth-bounded)\n",
                    report.depth, report.clusters_checked
                )
            } else {
                let w = report.witness.as_ref().unwrap();
                format!(
                    "NOT compatible: cluster at mutation word {:?} fails: {}\n",
                    w.history, w.error
                )
            };
            if report.compatible {
                Ok(Outcome::Pass(text))
            } else {
                Ok(Outcome::MathFail(text))
            }
        }

        Command::ClassifyInner { seed, g, json } => {
            let s = load_seed(&seed)?;
            let g = load_g(&g)?;
            let report = check_p_membership(&g, s.ambient()).map_err(|e| e.to_string())?;
            if let Some(violation) = &report.violation {
                let text = match violation {
                    MembershipViolation::Symmetry { x, y } => format!(
                        "not a bracket transformation: [g(x),y] != [x,g(y)] at x = X^{}, y = X^{}\n",
                        x, y
                    ),
                    MembershipViolation::Centrality { x, y } => format!(
                        "not a bracket transformation: centrality fails at x = X^{}, y = X^{}\n",
                        x, y
                    ),
                };
                return Ok(Outcome::MathFail(text));
            }
            match classify_inner(&g, s.ambient()) {
                Ok(c) => {
                    if json {
                        let value = serde_json::json!({
                            "k0": c.k0.to_string(),
                            "untested_pairs": report.untested.len(),
                            "remainders": c.remainders.iter()
                                .map(|(e, r)| serde_json::json!({"e": e, "value": r.to_string()}))
                                .collect::<Vec<_>>(),
                        });
                        Ok(Outcome::Pass(pretty(&value)))
                    } else {
                        let mut out = format!("k0 = {}\n", c.k0);
                        let _ = writeln!(
                            out,
                            "g - k0*id has central image on the window ({} remainder terms)",
                            c.remainders.len()
                        );
                        if !report.untested.is_empty() {
                            let _ = writeln!(
                                out,
                                "untested centrality pairs (escape the window): {}",
                                report.untested.len()
                            );
                        }
                        Ok(Outcome::Pass(out))
                    }
                }
                Err(e) => Ok(Outcome::MathFail(format!("not standard: {}\n", e))),
            }
        }

        Command::SolvePatterns { seed, index, json } => {
            let s = load_seed(&seed)?;
            let indices: Vec<usize> = match index {
                Some(h) => vec![h],
                None => (1..=s.m()).collect(),
            };
            let mut sets = Vec::new();
            for h in indices {
                sets.push(pattern_solutions(s.lambda(), h).map_err(|e| e.to_string())?);
            }
            if json {
                let value: Vec<_> = sets
                    .iter()
                    .map(|set| {
                        serde_json::json!({
                            "h": set.h,
                            "solutions": set.solutions.iter().map(|sol| serde_json::json!({
                                "pattern": sol.pattern,
                                "exponent": sol.exponent,
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                Ok(Outcome::Pass(pretty(&serde_json::Value::Array(value))))
            } else {
                let mut out = String::new();
                for set in &sets {
                    let _ = writeln!(out, "h = {}:", set.h);
                    for sol in &set.solutions {
                        let _ = writeln!(
                            out,
                            "  pattern {{{}}} -> a = {}",
                            sol.pattern
                                .iter()
                                .map(|p| p.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                            sol.exponent
                        );
                    }
                }
                Ok(Outcome::Pass(out))
            }
        }

        Command::GenericVector { seed, json } => {
            let s = load_seed(&seed)?;
            let v = generic_vector(s.lambda()).map_err(|e| e.to_string())?;
            if json {
                Ok(Outcome::Pass(pretty(&serde_json::json!({ "vector": v }))))
            } else {
                Ok(Outcome::Pass(format!("m0 = {}\n", v)))
            }
        }

        Command::Decompose { seed, json } => {
            let s = load_seed(&seed)?;
            let report = verify_decomposition(&s).map_err(|e| e.to_string())?;
            let ok = report.passed();
            let text = if json {
                pretty(&serde_json::to_value(&report).map_err(|e| e.to_string())?)
            } else {
                render_decomposition(&report)
            };
            if ok {
                Ok(Outcome::Pass(text))
            } else {
                Ok(Outcome::MathFail(text))
            }
        }

        Command::VerifyAxioms {
            seed,
            poisson,
            radius,
            json,
        } => {
            let s = load_seed(&seed)?;
            let spec = load_poisson(&poisson)?;
            let report =
                verify_poisson_axioms(&spec, s.ambient(), radius).map_err(|e| e.to_string())?;
            let value = serde_json::json!({
                "passed": report.passed(),
                "triples_checked": report.triples_checked,
                "triples_untested": report.triples_untested,
                "counterexample": report.counterexample.as_ref().map(|cx| serde_json::json!({
                    "kind": format!("{:?}", cx.kind),
                    "a": cx.a,
                    "b": cx.b,
                    "c": cx.c,
                })),
            });
            let text = if json {
                pretty(&value)
            } else if let Some(cx) = &report.counterexample {
                format!(
                    "FAIL: {:?} identity fails at a = X^{}, b = X^{}, c = X^{}\n",
                    cx.kind, cx.a, cx.b, cx.c
                )
            } else {
                format!(
                    "pass: Leibniz and Jacobi hold on {} window triples ({} untested)\n",
                    report.triples_checked, report.triples_untested
                )
            };
            if report.passed() {
                Ok(Outcome::Pass(text))
            } else {
                Ok(Outcome::MathFail(text))
            }
        }
    }
}

fn render_decomposition(report: &DecompositionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "blocks = {}", report.partition.blocks.len());
    for (r, block) in report.partition.blocks.iter().enumerate() {
        let cols: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
        let frozen: Vec<String> = report.partition.frozen_rows[r]
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        let _ = writeln!(
            out,
            "  block {}: columns {{{}}} frozen rows {{{}}} D = diag({})",
            r + 1,
            cols.join(","),
            frozen.join(","),
            report.block_d[r]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
    }
    if !report.partition.shared_frozen.is_empty() {
        let shared: Vec<String> = report
            .partition
            .shared_frozen
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        let _ = writeln!(
            out,
            "  warning: frozen rows {{{}}} touch several blocks and were duplicated",
            shared.join(",")
        );
    }
    for entry in &report.theta_bases {
        let _ = writeln!(
            out,
            "  gluing lattice for blocks ({},{}): dimension {}",
            entry.pair.0 + 1,
            entry.pair.1 + 1,
            entry.basis.len()
        );
    }
    if report.coefficient_free {
        let _ = writeln!(
            out,
            "coefficient-free: gluing trivial = {}",
            report.theta_trivial
        );
    }
    match &report.factorization_failure {
        None => {
            let _ = writeln!(out, "cross-block products factor through the tensor product");
        }
        Some((e, f)) => {
            let _ = writeln!(
                out,
                "FAIL: product of X^{} and X^{} does not factor",
                e, f
            );
        }
    }
    out
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON rendering cannot fail");
    text.push('\n');
    text
}
