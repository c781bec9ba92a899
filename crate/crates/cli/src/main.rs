//! `shi`: satisfiability, instance checking and concept consistency for SHI
//! knowledge bases.
//!
//! Exit status: 0 for SAT/true, 1 for UNSAT/false, 2 for usage, input and
//! parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use shi_core::{
    bounded_model_search, build_tableau, check_concept_consistency, check_instance, check_model, export_dot,
    extract_model, parse_concept, parse_kb, parse_source, EngineOptions, KnowledgeBase, Strategy, Verdict,
};

#[derive(Parser)]
#[command(name = "shi", version, about = "Tableau reasoner for SHI knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a knowledge base is satisfiable.
    Sat {
        file: PathBuf,
        /// Write the tableau as a Graphviz graph.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Print a model read off the tableau when satisfiable.
        #[arg(long)]
        model: bool,
        /// Also search for a model with at most K elements by enumeration.
        #[arg(long, value_name = "K")]
        oracle: Option<usize>,
        /// Print node, state and rule-application counts.
        #[arg(long)]
        stats: bool,
        #[arg(long, value_enum, default_value_t = StrategyArg::Dfs)]
        strategy: StrategyArg,
    },
    /// Decide whether an individual is an instance of a concept.
    Instance { file: PathBuf, individual: String, concept: String },
    /// Decide whether a concept is satisfiable w.r.t. the file's role axioms
    /// and TBox; its ABox is ignored.
    Consistent { file: PathBuf, concept: String },
}

#[derive(Copy, Clone, ValueEnum)]
enum StrategyArg {
    Dfs,
    Fifo,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Dfs => Strategy::Dfs,
            StrategyArg::Fifo => Strategy::Fifo,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<KnowledgeBase> {
    parse_kb(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn print_stats(v: &Verdict) {
    println!("nodes: {}", v.stats.nodes);
    println!("states: {}", v.stats.states);
    println!("edges: {}", v.stats.edges);
    println!("expansions: {}", v.stats.expansions);
    for (tag, count) in v.stats.rule_applications() {
        if count > 0 {
            println!("rule {}: {count}", tag.name());
        }
    }
}

fn sat(
    file: &Path,
    dot: Option<&Path>,
    model: bool,
    oracle: Option<usize>,
    stats: bool,
    strategy: Strategy,
) -> Result<bool> {
    let kb = load(file)?;
    let v = build_tableau(&kb, &EngineOptions { strategy, trace: false });
    println!("{}", if v.satisfiable { "SAT" } else { "UNSAT" });
    if stats {
        print_stats(&v);
    }
    if let Some(path) = dot {
        fs::write(path, export_dot(&kb, &v.graph)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if model && v.satisfiable {
        let m = extract_model(&kb, &v.graph)?;
        if !check_model(&m, &kb) {
            bail!("the extracted interpretation is not a model");
        }
        print!("{}", m.render(&kb));
    }
    if let Some(k) = oracle {
        match bounded_model_search(&kb, k)? {
            Some(m) => {
                println!("oracle: model of size {}", m.domain);
                if !v.satisfiable {
                    eprintln!("warning: the oracle found a model of an unsatisfiable knowledge base");
                }
            }
            None => println!("oracle: no model of size at most {k}"),
        }
    }
    Ok(v.satisfiable)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Sat { file, dot, model, oracle, stats, strategy } => {
            sat(&file, dot.as_deref(), model, oracle, stats, strategy.into())
        }
        Command::Instance { file, individual, concept } => {
            let kb = load(&file)?;
            let c = parse_concept(&concept).context("in the concept argument")?;
            let yes = check_instance(&kb, &individual, &c)?;
            println!("{yes}");
            Ok(yes)
        }
        Command::Consistent { file, concept } => {
            let src = parse_source(&read(&file)?).with_context(|| format!("in {}", file.display()))?;
            let c = parse_concept(&concept).context("in the concept argument")?;
            let yes = check_concept_consistency(&src.role_axioms, &src.tbox, &c)?;
            println!("{yes}");
            Ok(yes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
