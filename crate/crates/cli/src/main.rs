use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use extlab::family::{build, load_graph, load_matching};
use extlab::manifest::RunManifest;
use extlab::suite::{run_suite, Suite};
use extlab::{DEFAULT_BUDGET, EXIT_AFFIRM, EXIT_BUDGET, EXIT_REFUTE, EXIT_USAGE};
use extlab_core::constructive::{c4cn_witness, Bowtie};
use extlab_core::embedding::{bowtie_rotation_n2, k5_torus, planar_k4, RotationSystem};
use extlab_core::extendability::{
    classify_extendable_graphs, count_k_matchings, extendability_number_with, is_k_extendable_with,
    is_nk_graph_with, ExtendOptions, ExtendabilityReport, Verdict,
};
use extlab_core::generators::bowtie;
use extlab_core::matching::tutte_violator;
use extlab_core::surfaces::{euler_characteristic, mu, mu_nk, mu_prime, mu_prime_literal, Surface};
use extlab_core::Rational;

// Writes to stdout, ignoring a closed pipe (e.g. `extlab ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "extlab", version, about = "Matching extendability of graphs")]
struct Cli {
    /// Worker threads for enumerations.
    #[arg(long, global = true, env = "EXTLAB_JOBS", default_value_t = 1)]
    jobs: usize,

    /// Write a run manifest to this file.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph: path, cycle, complete, complete_bipartite, petersen, product, bowtie.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide k-extendability by exhaustive enumeration.
    Extendable {
        /// Graph JSON file or family spec such as bowtie:6:5.
        graph: String,
        k: usize,
        /// Write the non-extendable matching and its Tutte set here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Maximum number of matching-oracle calls.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Lift the budget.
        #[arg(long)]
        force: bool,
    },
    /// Largest k for which the graph is k-extendable.
    ExtNumber { graph: String },
    /// Whether deleting any n vertices leaves a k-extendable graph.
    Nk { graph: String, n: usize, k: usize },
    /// Connected k-extendable graphs of a given order, up to isomorphism.
    Classify { order: usize, k: usize },
    /// Table of mu, mu' and mu(n, .) over a range of Euler characteristics (TSV).
    Mu {
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        chi_max: i64,
        #[arg(long, default_value_t = -12, allow_negative_numbers = true)]
        chi_min: i64,
        #[arg(long, default_value_t = 3)]
        n_max: i64,
    },
    /// The 3-matching and Tutte-type set showing C4 x Cn is not 3-extendable.
    WitnessC4cn { n: usize },
    /// Extend a 3-matching of the bow-tie graph C6 ⋈ Pn by the case construction.
    BowtieExtend {
        n: usize,
        /// Matching JSON file or edges such as h_1-h_2,q_5-q_6,q'_8-q'_9.
        matching: String,
    },
    /// Check a rotation system against a surface.
    EmbedVerify {
        #[command(flatten)]
        source: RotationSource,
        /// Surface such as S0, S1, N2.
        surface: String,
    },
    /// Euler contributions of every vertex (TSV) and the control point.
    Contributions {
        #[command(flatten)]
        source: RotationSource,
        /// Evaluate in f64 instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Run the desk-scale verification suites.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Exhaustive 3-extendability probe of C_m ⋈ P_n (evidence only).
    Conjecture {
        m: usize,
        n: usize,
        /// Maximum number of matching-oracle calls.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Lift the budget.
        #[arg(long)]
        force: bool,
    },
}

#[derive(clap::Args)]
struct RotationSource {
    /// Built-in rotation system: bowtie-n2:<n>, k4, k5-torus.
    #[arg(long, conflicts_with_all = ["rotation", "graph"])]
    fixture: Option<String>,
    /// Rotation system JSON file.
    #[arg(long, requires = "graph")]
    rotation: Option<PathBuf>,
    /// Graph the rotation file refers to.
    #[arg(long)]
    graph: Option<String>,
}

impl RotationSource {
    fn load(&self) -> Result<RotationSystem> {
        if let Some(f) = &self.fixture {
            return match f.split_once(':') {
                Some(("bowtie-n2", n)) => {
                    Ok(bowtie_rotation_n2(n.parse().context("bowtie-n2 needs n")?)?)
                }
                None if f == "k4" => Ok(planar_k4()),
                None if f == "k5-torus" => Ok(k5_torus()),
                _ => bail!("unknown fixture '{f}'"),
            };
        }
        let (Some(path), Some(graph)) = (&self.rotation, &self.graph) else {
            bail!("give --fixture or --rotation with --graph");
        };
        let g = load_graph(graph)?;
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(RotationSystem::from_json(&g, &text)?)
    }
}

struct Outcome {
    code: i32,
    manifest: RunManifest,
}

fn emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn options(jobs: usize, budget: u64, force: bool) -> ExtendOptions {
    ExtendOptions {
        jobs,
        orbit_representatives: None,
        budget: (!force).then_some(budget),
    }
}

fn report_code(report: &ExtendabilityReport) -> i32 {
    match report.reason {
        Verdict::BudgetExhausted => EXIT_BUDGET,
        _ if report.verdict => EXIT_AFFIRM,
        _ => EXIT_REFUTE,
    }
}

fn record_report(manifest: &mut RunManifest, report: &ExtendabilityReport) {
    manifest
        .verdict("extendable", report.verdict)
        .verdict(
            "reason",
            serde_json::to_value(report.reason)
                .unwrap_or_default()
                .as_str()
                .unwrap_or(""),
        )
        .artifact("certificate", report.certificate_json().as_bytes())
        .time("enumeration", report.elapsed.as_secs_f64());
}

fn run(cli: &Cli) -> Result<Outcome> {
    let jobs = cli.jobs;
    match &cli.command {
        Command::Gen {
            family,
            params,
            format,
            output,
        } => {
            let g = build(family, params)?;
            let text = match format {
                Format::Json => g.to_json(),
                Format::Dot => g.to_dot(family),
            };
            emit(output, &text)?;
            let mut manifest = RunManifest::new("gen");
            manifest
                .param("family", family)
                .param("params", params.join(":"))
                .artifact("graph", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::Extendable {
            graph,
            k,
            witness,
            budget,
            force,
        } => {
            let g = load_graph(graph)?;
            let report = is_k_extendable_with(&g, *k, &options(jobs, *budget, *force))?;
            out!("{}", report.to_json());
            if let (Some(path), Some(w), Some(c)) =
                (witness, &report.witness, &report.witness_certificate)
            {
                let body = json!({ "matching": w, "tutte_set": c });
                std::fs::write(path, serde_json::to_string_pretty(&body)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut manifest = RunManifest::new("extendable");
            manifest.param("graph", graph).param("k", k);
            record_report(&mut manifest, &report);
            Ok(Outcome {
                code: report_code(&report),
                manifest,
            })
        }
        Command::ExtNumber { graph } => {
            let g = load_graph(graph)?;
            let value = extendability_number_with(&g, &ExtendOptions::with_jobs(jobs))?;
            out!("{value}");
            let mut manifest = RunManifest::new("ext-number");
            manifest
                .param("graph", graph)
                .verdict("extendability_number", value);
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::Nk { graph, n, k } => {
            let g = load_graph(graph)?;
            let report = is_nk_graph_with(&g, *n, *k, &ExtendOptions::with_jobs(jobs))?;
            let text = serde_json::to_string_pretty(&report)?;
            out!("{text}");
            let mut manifest = RunManifest::new("nk");
            manifest
                .param("graph", graph)
                .param("n", n)
                .param("k", k)
                .verdict("holds", report.holds);
            manifest.artifact("report", text.as_bytes());
            Ok(Outcome {
                code: if report.holds {
                    EXIT_AFFIRM
                } else {
                    EXIT_REFUTE
                },
                manifest,
            })
        }
        Command::Classify { order, k } => {
            let found = classify_extendable_graphs(*order, *k)?;
            let list: Vec<serde_json::Value> = found
                .iter()
                .map(|g| serde_json::from_str(&g.to_json()))
                .collect::<Result<_, _>>()?;
            let text = serde_json::to_string_pretty(&list)?;
            out!("{text}");
            let mut manifest = RunManifest::new("classify");
            manifest
                .param("order", order)
                .param("k", k)
                .verdict("classes", found.len());
            manifest.artifact("graphs", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::Mu {
            chi_max,
            chi_min,
            n_max,
        } => {
            if chi_max > &2 || chi_min > chi_max {
                bail!("need chi_min <= chi_max <= 2");
            }
            let mut text = String::from("chi\tsurface\tmu\tmu_prime\tmu_prime_closed_form");
            for n in 1..=*n_max {
                let _ = write!(text, "\tmu_{n}");
            }
            for chi in (*chi_min..=*chi_max).rev() {
                let s = Surface::with_characteristic(chi)?;
                let _ = write!(
                    text,
                    "\n{chi}\t{s}\t{}\t{}\t{}",
                    mu(&s)?,
                    mu_prime(&s)?,
                    mu_prime_literal(chi)
                );
                for n in 1..=*n_max {
                    let _ = write!(text, "\t{}", mu_nk(n, &s)?);
                }
            }
            out!("{text}");
            let mut manifest = RunManifest::new("mu");
            manifest
                .param("chi_min", chi_min)
                .param("chi_max", chi_max)
                .artifact("table", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::WitnessC4cn { n } => {
            let w = c4cn_witness(*n)?;
            let rest = w.graph.remove_vertices(&w.matching.vertices())?;
            let tutte = tutte_violator(&rest.graph)?.map(|t| {
                t.set
                    .iter()
                    .map(|v| rest.host_vertex(v))
                    .collect::<Vec<_>>()
            });
            let body = json!({
                "n": n,
                "matching": w.matching,
                "u": w.u.as_slice(),
                "isolated_vertices": w.isolated,
                "tutte_set_after_deletion": tutte,
            });
            let text = serde_json::to_string_pretty(&body)?;
            out!("{text}");
            let mut manifest = RunManifest::new("witness-c4cn");
            manifest
                .param("n", n)
                .verdict("has_extension", false)
                .artifact("witness", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::BowtieExtend { n, matching } => {
            let bt = Bowtie::new(*n)?;
            let m = load_matching(bt.graph(), matching)?;
            let plan = bt.bowtie_extend(&m)?;
            let text = serde_json::to_string_pretty(&plan)?;
            out!("{text}");
            let mut manifest = RunManifest::new("bowtie-extend");
            manifest
                .param("n", n)
                .param("matching", matching)
                .verdict("case", &plan.case_tag);
            manifest.artifact("plan", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::EmbedVerify { source, surface } => {
            let rs = source.load()?;
            let s = Surface::parse(surface)?;
            let ok = rs.verify_embedding(&s)?;
            let faces = rs.trace_faces();
            let body = json!({
                "surface": s.to_string(),
                "expected_euler_characteristic": euler_characteristic(&s)?,
                "euler_characteristic": rs.euler_characteristic(),
                "orientable": rs.is_orientable(),
                "faces": faces.len(),
                "face_sizes": faces.face_sizes,
                "verified": ok,
            });
            let text = serde_json::to_string_pretty(&body)?;
            out!("{text}");
            let mut manifest = RunManifest::new("embed-verify");
            manifest
                .param("surface", s)
                .verdict("verified", ok)
                .artifact("rotation", rs.to_json().as_bytes());
            Ok(Outcome {
                code: if ok { EXIT_AFFIRM } else { EXIT_REFUTE },
                manifest,
            })
        }
        Command::Contributions { source, float } => {
            let rs = source.load()?;
            let mut text = String::from("vertex\tname\tdegree\ttriangles\tphi");
            let g = rs.graph();
            let control = if *float {
                let rep = rs.euler_contributions::<f64>();
                for v in g.vertices() {
                    let _ = write!(
                        text,
                        "\n{v}\t{}\t{}\t{}\t{}",
                        g.vertex_name(v),
                        g.degree(v),
                        rep.triangles_at[v],
                        rep.phi[v]
                    );
                }
                (rep.control_point, rep.phi[rep.control_point].to_string())
            } else {
                let rep = rs.euler_contributions::<Rational>();
                for v in g.vertices() {
                    let _ = write!(
                        text,
                        "\n{v}\t{}\t{}\t{}\t{}",
                        g.vertex_name(v),
                        g.degree(v),
                        rep.triangles_at[v],
                        rep.phi[v]
                    );
                }
                let total: Rational = rep.phi.iter().sum();
                let _ = write!(text, "\n# sum\t{total}");
                (rep.control_point, rep.phi[rep.control_point].to_string())
            };
            let _ = write!(text, "\n# control point\t{}\t{}", control.0, control.1);
            out!("{text}");
            let mut manifest = RunManifest::new("contributions");
            manifest
                .verdict("control_point", control.0)
                .artifact("table", text.as_bytes());
            Ok(Outcome {
                code: EXIT_AFFIRM,
                manifest,
            })
        }
        Command::VerifyPaper { suite } => {
            let checks = run_suite(*suite, jobs);
            let mut manifest = RunManifest::new("verify-paper");
            manifest.param("suite", format!("{suite:?}").to_lowercase());
            let mut all = true;
            for c in &checks {
                all &= c.passed;
                let status = if c.passed { "PASS" } else { "FAIL" };
                out!(
                    "{status}  {}  ({:.2}s){}",
                    c.name,
                    c.seconds,
                    if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!("  {}", c.detail)
                    }
                );
                manifest.verdict(&c.name, c.passed).time(&c.name, c.seconds);
                if let Some(bytes) = &c.artifact {
                    manifest.artifact(&c.name, bytes);
                }
            }
            Ok(Outcome {
                code: if all { EXIT_AFFIRM } else { EXIT_REFUTE },
                manifest,
            })
        }
        Command::Conjecture {
            m,
            n,
            budget,
            force,
        } => {
            if *m < 6 || m % 2 == 1 || *n < 5 || n % 2 == 0 {
                bail!("the probe needs an even m >= 6 and an odd n >= 5");
            }
            let g = bowtie(*m, *n)?;
            let candidates = count_k_matchings(&g, 3);
            let report = is_k_extendable_with(&g, 3, &options(jobs, *budget, *force))?;
            let body = json!({
                "graph": format!("C_{m} ⋈ P_{n}"),
                "kind": "evidence",
                "note": "an exhaustive check of one graph; it supports the conjecture for this (m, n) only",
                "candidates": candidates,
                "report": serde_json::from_str::<serde_json::Value>(&report.to_json())?,
            });
            out!("{}", serde_json::to_string_pretty(&body)?);
            let mut manifest = RunManifest::new("conjecture");
            manifest.param("m", m).param("n", n);
            record_report(&mut manifest, &report);
            Ok(Outcome {
                code: report_code(&report),
                manifest,
            })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut outcome) => {
            if let Some(path) = &cli.manifest {
                outcome
                    .manifest
                    .param("jobs", cli.jobs)
                    .time("total", start.elapsed().as_secs_f64());
                if let Err(e) = std::fs::write(path, outcome.manifest.to_json()) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
