//! Batch front end over the library: ranks and covers, `(p,q)`-connectivity
//! verdicts, packings, certificate re-verification, robust orientations,
//! instance generation and the brute-force oracles.
//!
//! Exit codes are uniform across subcommands: 0 for a positive verdict,
//! 1 for a negative mathematical verdict (witness found, certificate
//! rejected, packing deficient, search exhausted), 2 for input or format
//! errors. Results go to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rigidpack_core::certificates;
use rigidpack_core::connectivity::{is_pq_connected_capped, ConnectivitySpec, PqVerdict};
use rigidpack_core::generators;
use rigidpack_core::graph::{EdgeSet, Graph};
use rigidpack_core::matroid_union::full_union_rank_target;
use rigidpack_core::oracles;
use rigidpack_core::orientation::{orient_pipeline, PipelineOutcome, SearchBudget};
use rigidpack_core::packing::{pack, pack_after_removal, PackOutcome};
use rigidpack_core::rigidity;

#[derive(Parser)]
#[command(
    name = "rigidpack",
    version,
    about = "rigidity ranks, (p,q)-connectivity, packings and robust orientations"
)]
struct Cli {
    /// Worker threads for internal parallelism (default: RIGIDPACK_THREADS
    /// or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rigidity rank, rigidity verdict and the rigid-component cover.
    Rank {
        graph: PathBuf,
        /// Also write the cover as a certificate file.
        #[arg(long)]
        emit_cover: Option<PathBuf>,
    },
    /// Decide (p,q)-connectivity; prints a witness on failure.
    Connectivity {
        graph: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Cap on |X|; below the full bound the positive verdict is
        /// one-sided (the deleted-set enumeration grows binomially).
        #[arg(long)]
        max_deleted: Option<usize>,
    },
    /// Pack k rigid bases plus l spanning trees; writes a packing or
    /// deficiency certificate.
    Pack {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        l: usize,
        /// Edge ids to delete before packing.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a certificate file with independent recomputation.
    Certify {
        graph: PathBuf,
        #[command(flatten)]
        kind: CertifyKind,
        /// Parameters for packing/witness/orientation certificates; packing
        /// and witness files carry their own values as a default.
        #[arg(short)]
        k: Option<usize>,
        #[arg(short)]
        l: Option<usize>,
        /// Edge ids that were removed before packing, for witnesses written
        /// by `pack --remove`.
        #[arg(long, value_delimiter = ',')]
        remove: Vec<usize>,
    },
    /// Search for an orientation with D - v k-arc-connected for all v.
    Orient {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget_flips: u64,
        #[arg(long, default_value_t = 120.0)]
        budget_seconds: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a graph in the edge-list format.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_attempts: usize,
        /// Circulant offsets.
        #[arg(long, value_delimiter = ',')]
        offsets: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force ground-truth engines, for debugging.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CertifyKind {
    /// Cover certificate (non-rigidity).
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Packing certificate.
    #[arg(long)]
    packing: Option<PathBuf>,
    /// Deficiency-witness certificate.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Orientation file (vertex-robust arc connectivity).
    #[arg(long)]
    orientation: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Circulant,
    Random,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive sparsity-count rank.
    Laman { graph: PathBuf },
    /// Randomized rigidity-matrix rank over the prime field.
    Matrix {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive union rank.
    Union {
        graph: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        l: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("RIGIDPACK_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(output: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn format_vertex_set(set: &std::collections::BTreeSet<usize>) -> String {
    let ids: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Rank { graph, emit_cover } => {
            let g = load_graph(&graph)?;
            let full = g.full_edge_set();
            let rank = rigidity::rigidity_rank(&g, &full);
            let max = if g.vertex_count() >= 2 {
                2 * g.vertex_count() - 3
            } else {
                0
            };
            let verdict = if !g.is_simple() || g.vertex_count() < 2 {
                "rigidity undefined for this input"
            } else if rank == max {
                "rigid"
            } else {
                "not rigid"
            };
            if full.is_empty() {
                println!("rank 0 of max {max}; {verdict}; components: none");
                return Ok(ExitCode::SUCCESS);
            }
            let cover = rigidity::rigid_components(&g, &full)
                .map_err(|e| anyhow!("computing components: {e}"))?;
            let shown: Vec<String> = cover.sets.iter().map(format_vertex_set).collect();
            println!(
                "rank {rank} of max {max}; {verdict}; components: {}",
                shown.join(",")
            );
            if let Some(path) = emit_cover {
                emit(Some(&path), &certificates::render_cover(&cover))?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Connectivity {
            graph,
            p,
            q,
            max_deleted,
        } => {
            let g = load_graph(&graph)?;
            let spec = ConnectivitySpec::new(p, q)?;
            match is_pq_connected_capped(&g, &spec, max_deleted.unwrap_or(usize::MAX)) {
                PqVerdict::Connected => {
                    println!("yes");
                    Ok(ExitCode::SUCCESS)
                }
                PqVerdict::Violated(w) => {
                    println!(
                        "no: X={} Y={} cut={} < {}",
                        format_vertex_set(&w.deleted_vertices),
                        format_vertex_set(&w.cut_side),
                        w.cut_value,
                        p - q * w.deleted_vertices.len()
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Pack {
            graph,
            k,
            l,
            remove,
            output,
        } => {
            let g = load_graph(&graph)?;
            let removed = EdgeSet::from_ids(&g, remove)?;
            let outcome = if removed.is_empty() {
                pack(&g, k, l)?
            } else {
                pack_after_removal(&g, k, l, &removed)?
            };
            match outcome {
                PackOutcome::Packed(p) => {
                    emit(output.as_deref(), &certificates::render_packing(&p))?;
                    Ok(ExitCode::SUCCESS)
                }
                PackOutcome::Deficient(w) => {
                    emit(output.as_deref(), &certificates::render_witness(&w, k, l))?;
                    eprintln!(
                        "deficient: union rank {} < {}",
                        w.achieved_rank,
                        full_union_rank_target(g.vertex_count(), k, l)
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Certify {
            graph,
            kind,
            k,
            l,
            remove,
        } => {
            let g = load_graph(&graph)?;
            let removed = EdgeSet::from_ids(&g, remove)?;
            certify(&g, kind, k, l, &removed)
        }

        Command::Orient {
            graph,
            k,
            seed,
            budget_flips,
            budget_seconds,
            output,
        } => {
            let g = load_graph(&graph)?;
            let budget = SearchBudget {
                max_flips: budget_flips,
                max_duration: Duration::from_secs_f64(budget_seconds),
                seed,
            };
            match orient_pipeline(&g, k, &budget)? {
                PipelineOutcome::Oriented(result) => {
                    emit(
                        output.as_deref(),
                        &certificates::render_orientation(&result.orientation),
                    )?;
                    eprintln!(
                        "oriented: core {} edges, seed {}, {} flips",
                        result.core.len(),
                        result.seed,
                        result.flips
                    );
                    Ok(ExitCode::SUCCESS)
                }
                PipelineOutcome::PackingDeficient(w) => {
                    eprintln!(
                        "failed at stage packing: union rank {} < {}",
                        w.achieved_rank,
                        full_union_rank_target(g.vertex_count(), 2 * k, 1)
                    );
                    Ok(ExitCode::from(1))
                }
                PipelineOutcome::SearchTimeout { flips, seconds } => {
                    eprintln!(
                        "failed at stage orientation-timeout: {flips} flips in {seconds:.1}s"
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }

        Command::Gen {
            family,
            n,
            p,
            q,
            seed,
            max_attempts,
            offsets,
            output,
        } => {
            let g = match family {
                Family::Complete => generators::complete(n)?,
                Family::Cycle => generators::cycle(n)?,
                Family::Circulant => {
                    if offsets.is_empty() {
                        return Err(anyhow!("--family circulant needs --offsets"));
                    }
                    generators::circulant(n, &offsets)?
                }
                Family::Random => {
                    let (p, q) = (
                        p.ok_or_else(|| anyhow!("--family random needs --p and --q"))?,
                        q.ok_or_else(|| anyhow!("--family random needs --p and --q"))?,
                    );
                    let spec = ConnectivitySpec::new(p, q)?;
                    generators::random_pq_connected(n, &spec, seed, max_attempts)?
                }
            };
            emit(output.as_deref(), &g.serialize())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Oracle { which } => {
            match which {
                OracleCommand::Laman { graph } => {
                    let g = load_graph(&graph)?;
                    println!(
                        "{}",
                        oracles::laman_rank_bruteforce(&g, &g.full_edge_set())?
                    );
                }
                OracleCommand::Matrix { graph, seed } => {
                    let g = load_graph(&graph)?;
                    println!(
                        "{}",
                        oracles::matrix_rank_rigidity(&g, &g.full_edge_set(), seed)
                    );
                }
                OracleCommand::Union { graph, k, l } => {
                    let g = load_graph(&graph)?;
                    println!("{}", oracles::union_rank_bruteforce(&g, k, l)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn certify(
    g: &Graph,
    kind: CertifyKind,
    k: Option<usize>,
    l: Option<usize>,
    removed: &EdgeSet,
) -> anyhow::Result<ExitCode> {
    let read = |path: &Path| -> anyhow::Result<String> {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    };

    if let Some(path) = kind.cover {
        let cover = certificates::parse_cover(&read(&path)?, g)?;
        let value = rigidity::cover_value(g, &cover).ok();
        let bound = 2 * g.vertex_count() - 3;
        return if certificates::verify_cover_certificate(g, &cover)? {
            println!(
                "valid non-rigidity certificate: value {} < {bound}",
                value.expect("valid cover has a value")
            );
            Ok(ExitCode::SUCCESS)
        } else {
            let mut msg = String::from("rejected: ");
            match value {
                Some(v) => write!(msg, "value {v} does not beat {bound}")?,
                None => write!(msg, "cover does not partition the edge set")?,
            }
            println!("{msg}");
            Ok(ExitCode::from(1))
        };
    }

    if let Some(path) = kind.packing {
        let (packing, file_k, file_l) = certificates::parse_packing(&read(&path)?, g)?;
        let (k, l) = (k.unwrap_or(file_k), l.unwrap_or(file_l));
        let (valid, clause) = certificates::verify_packing_certificate(g, &packing, k, l);
        return if valid {
            println!("valid packing: {k} rigid bases + {l} spanning trees");
            Ok(ExitCode::SUCCESS)
        } else {
            println!("rejected: {}", clause.expect("violated clause"));
            Ok(ExitCode::from(1))
        };
    }

    if let Some(path) = kind.witness {
        let (witness, file_k, file_l) = certificates::parse_witness(&read(&path)?, g)?;
        let (k, l) = (k.unwrap_or(file_k), l.unwrap_or(file_l));
        let ground = g.full_edge_set().difference(removed);
        return if certificates::verify_witness_certificate_on(g, &ground, &witness, k, l)? {
            println!(
                "valid deficiency witness: {k}*{} + {l}*{} + {} = {} < {}",
                witness.rigidity_rank_f,
                witness.circuit_rank_f,
                witness.outside,
                witness.achieved_rank,
                full_union_rank_target(g.vertex_count(), k, l)
            );
            Ok(ExitCode::SUCCESS)
        } else {
            println!("rejected: witness arithmetic or cover fails recomputation");
            Ok(ExitCode::from(1))
        };
    }

    if let Some(path) = kind.orientation {
        let orientation = certificates::parse_orientation(&read(&path)?, g)?;
        let k = k.ok_or_else(|| anyhow!("--orientation needs -k"))?;
        use rigidpack_core::connectivity::{is_vertex_robust_arc_connected, RobustArcConnectivity};
        return match is_vertex_robust_arc_connected(&orientation, k)? {
            RobustArcConnectivity::AtLeast => {
                println!("valid orientation: D - v is {k}-arc-connected for all v");
                Ok(ExitCode::SUCCESS)
            }
            RobustArcConnectivity::Deficient { removed, cut } => {
                println!(
                    "rejected: removing vertex {removed} leaves cut {} with out-degree < {k}",
                    format_vertex_set(&cut)
                );
                Ok(ExitCode::from(1))
            }
        };
    }

    Err(anyhow!("no certificate kind selected"))
}
