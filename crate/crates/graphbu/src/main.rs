use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use graphbu::cli::{self, Format, GraphArgs, VerifyArgs};
use graphbu::complex::CellKind;
use graphbu::verify::SuiteConfig;

/// Two-strand graph braid groups and the Borsuk-Ulam property for maps
/// between finite graphs.
#[derive(Parser)]
#[command(name = "graphbu", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the configuration complexes of a graph and report the
    /// gradient-field census.
    Model {
        /// Graph file.
        graph: PathBuf,
        /// Root vertex label (must have degree 1 in the spanning tree).
        #[arg(long)]
        root: Option<u32>,
        /// Spanning tree override, as `a-b,c-d,...` vertex labels.
        #[arg(long)]
        tree: Option<String>,
        /// Dump the canonical cell list of one complex instead.
        #[arg(long, value_parser = ["ordered", "unordered"])]
        dump_cells: Option<String>,
        #[arg(long, default_value = "human")]
        format: String,
    },
    /// Apply a braid morphism (iota, theta, p1, conj_sigma) to a word.
    Map {
        graph: PathBuf,
        /// One of: iota, theta, p1, conj_sigma.
        morphism: String,
        /// Word in the generator syntax, e.g. `((1,3),2)^-1*{2,(1,3)}`.
        word: String,
        #[arg(long)]
        root: Option<u32>,
        #[arg(long)]
        tree: Option<String>,
    },
    /// Decide the Borsuk-Ulam property for a homotopy class and emit a
    /// certificate. Exit code 0: holds; 10: fails with witness.
    Decide {
        /// Source graph file with `tau` involution lines.
        #[arg(long)]
        gamma: PathBuf,
        /// Target graph file.
        #[arg(long)]
        target: PathBuf,
        /// Class file: one z-word per line, `2m+1` lines.
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        root: Option<u32>,
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, default_value = "human")]
        format: String,
    },
    /// Run the oracle-equivalence suite over a graph directory or the
    /// built-in corpus. Exit code 0: all pass; 3: failures.
    Verify {
        /// Directory of `.graph` files (with optional `.golden` census
        /// files); defaults to the built-in corpus.
        dir: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of seeded random graphs to add.
        #[arg(long)]
        random: Option<usize>,
        /// Fuzzed witness constructions per branch.
        #[arg(long)]
        fuzz: Option<usize>,
        #[arg(long)]
        max_word_len: Option<usize>,
        #[arg(long, default_value = "human")]
        format: String,
    },
}

fn run() -> graphbu::Result<u8> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Model {
            graph,
            root,
            tree,
            dump_cells,
            format,
        } => {
            let args = GraphArgs {
                path: graph,
                root,
                tree: tree.as_deref().map(cli::parse_tree_flag).transpose()?,
            };
            let dump = match dump_cells.as_deref() {
                Some("ordered") => Some(CellKind::Ordered),
                Some("unordered") => Some(CellKind::Unordered),
                _ => None,
            };
            let out = cli::cmd_model(&args, dump, format.parse::<Format>()?)?;
            print!("{out}");
            Ok(0)
        }
        Cmd::Map {
            graph,
            morphism,
            word,
            root,
            tree,
        } => {
            let args = GraphArgs {
                path: graph,
                root,
                tree: tree.as_deref().map(cli::parse_tree_flag).transpose()?,
            };
            let out = cli::cmd_map(&args, &morphism, &word)?;
            print!("{out}");
            Ok(0)
        }
        Cmd::Decide {
            gamma,
            target,
            class,
            root,
            tree,
            format,
        } => {
            let args = GraphArgs {
                path: target,
                root,
                tree: tree.as_deref().map(cli::parse_tree_flag).transpose()?,
            };
            let (out, fails) = cli::cmd_decide(&gamma, &args, &class, format.parse::<Format>()?)?;
            print!("{out}");
            Ok(if fails { 10 } else { 0 })
        }
        Cmd::Verify {
            dir,
            seed,
            random,
            fuzz,
            max_word_len,
            format,
        } => {
            let mut config = SuiteConfig::default();
            if let Some(s) = seed {
                config.seed = s;
            }
            config.random_graphs = random.unwrap_or(if dir.is_some() { 0 } else { 20 });
            if let Some(f) = fuzz {
                config.fuzz_classes_per_branch = f;
            }
            if let Some(l) = max_word_len {
                config.max_word_len = l;
            }
            let _ = format.parse::<Format>()?;
            let (out, pass) = cli::cmd_verify(&VerifyArgs { dir, config })?;
            print!("{out}");
            Ok(if pass { 0 } else { 3 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
