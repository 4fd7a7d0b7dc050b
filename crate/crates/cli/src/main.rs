use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use treepack_cli::commands::{
    cmd_blocks, cmd_cover, cmd_pack, cmd_reproduce, cmd_simulate, render_table, to_toml,
    trace_lines, BlocksMode, PackMode,
};
use treepack_cli::{load_graph, save_graph};
use treepack_core::constructions::{ChordSpec, FamilySpec};
use treepack_core::random::{planted_g3_graph, random_connected_graph, DEFAULT_SEED};
use treepack_core::{Graph, OracleBudget};

#[derive(Parser)]
#[command(
    name = "treepack",
    version,
    about = "Pack and cover perfect binary trees in graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Abort if enumeration yields more embeddings than this.
    #[arg(long, default_value_t = OracleBudget::default().max_embeddings)]
    budget_embeddings: u64,
    /// Abort if the exact search visits more nodes than this.
    #[arg(long, default_value_t = OracleBudget::default().max_nodes)]
    budget_nodes: u64,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_embeddings: self.budget_embeddings,
            max_nodes: self.budget_nodes,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    ChordedCycle,
    ErdosPosa,
    G3,
    HChain,
    Barbell,
    Random,
    PlantedG3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Heuristic,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BlocksArg {
    Reference,
    Simulated,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in the edge-list format.
    Generate {
        family: Family,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        h: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Chord as START,END,LENGTH; repeatable.
        #[arg(long = "chord", value_parser = parse_chord)]
        chords: Vec<ChordSpec>,
        #[arg(long, default_value_t = 4)]
        path_edges: usize,
        /// Order of a random graph.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Edges beyond the spanning tree (random) or the planted pieces.
        #[arg(long, default_value_t = 10)]
        extra: usize,
        #[arg(long, default_value_t = 4)]
        copies: usize,
        #[arg(long, default_value_t = 0)]
        filler: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pack disjoint copies of T_k.
    Pack {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Oracle)]
        mode: ModeArg,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find a minimum vertex set meeting every copy of T_k.
    Cover {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Block decomposition.
    Blocks {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = BlocksArg::Reference)]
        mode: BlocksArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the routing-table block detection and compare with the reference.
    Simulate {
        graph: PathBuf,
        /// Write per-round tables as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recompute every published value and write the comparison report.
    Reproduce {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Seed recorded in the report header.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also print a table to stderr.
        #[arg(long)]
        table: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_chord(s: &str) -> Result<ChordSpec, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, l] => Ok(ChordSpec::new(a, b, l)),
        _ => Err("expected START,END,LENGTH".into()),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<Graph> {
    let loaded = load_graph(path)?;
    for w in &loaded.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(loaded.graph)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            family,
            r,
            h,
            i,
            chords,
            path_edges,
            n,
            extra,
            copies,
            filler,
            seed,
            output,
        } => {
            let g = match family {
                Family::Path => FamilySpec::Path { r }.build()?,
                Family::Cycle => FamilySpec::Cycle { r }.build()?,
                Family::ChordedCycle => FamilySpec::ChordedCycle { r, chords }.build()?,
                Family::ErdosPosa => FamilySpec::ErdosPosa { r, h, i }.build()?,
                Family::G3 => FamilySpec::G3.build()?,
                Family::HChain => FamilySpec::HChain { r }.build()?,
                Family::Barbell => FamilySpec::Barbell { path_edges }.build()?,
                Family::Random => random_connected_graph(n, extra, seed),
                Family::PlantedG3 => planted_g3_graph(copies, filler, extra, seed),
            };
            match output {
                Some(p) => save_graph(&g, &p)?,
                None => print!("{}", treepack_cli::graph_file::format_graph(&g)),
            }
        }
        Command::Pack {
            graph,
            k,
            mode,
            budget,
            output,
        } => {
            let g = read(&graph)?;
            let mode = match mode {
                ModeArg::Heuristic => PackMode::Heuristic,
                ModeArg::Oracle => PackMode::Oracle,
            };
            let out = cmd_pack(&g, k, mode, &budget.budget())?;
            emit(&to_toml(&out)?, output.as_deref())?;
            if !out.valid {
                bail!("packing failed validation");
            }
        }
        Command::Cover {
            graph,
            k,
            budget,
            output,
        } => {
            let g = read(&graph)?;
            let out = cmd_cover(&g, k, &budget.budget())?;
            emit(&to_toml(&out)?, output.as_deref())?;
            if !out.valid || !out.weak_duality {
                bail!("cover failed validation");
            }
        }
        Command::Blocks {
            graph,
            mode,
            output,
        } => {
            let g = read(&graph)?;
            let mode = match mode {
                BlocksArg::Reference => BlocksMode::Reference,
                BlocksArg::Simulated => BlocksMode::Simulated,
            };
            emit(&to_toml(&cmd_blocks(&g, mode)?)?, output.as_deref())?;
        }
        Command::Simulate {
            graph,
            trace,
            output,
        } => {
            let g = read(&graph)?;
            let (out, records) = cmd_simulate(&g, trace.is_some())?;
            if let Some(p) = trace {
                std::fs::write(&p, trace_lines(&records)?)
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            emit(&to_toml(&out)?, output.as_deref())?;
        }
        Command::Reproduce {
            budget,
            seed,
            table,
            output,
        } => {
            let report = cmd_reproduce(&budget.budget(), seed);
            emit(&to_toml(&report)?, output.as_deref())?;
            if table {
                eprint!("{}", render_table(&report));
            }
            if !report.all_hard_passed() {
                eprintln!("hard failures: {}", report.totals.hard_failures);
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
