mod commands;
mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const SCHEMAS: &str = "\
JSON schemas (every result is one line of JSON with keys in a fixed order):

  Graph      {\"n\": int, \"directed\": bool, \"edges\": [[u, v], ...], \"colours\": {\"0\": \"c\", ...}}
             Vertices are 0..n-1. Undirected edges are listed once. \"colours\" is optional
             and must cover every vertex when present.
  Matrix     [[x, ...], ...] square, rows first; entries are integers or \"p/q\" strings.
  MWA        {\"states\": int, \"alphabet\": [letter, ...], \"transitions\": {letter: matrix},
              \"initial\": [x, ...], \"final\": [x, ...]}
  MTA        {\"states\": int, \"alphabet\": [symbol, ...], \"arity\": {symbol: int},
              \"transitions\": {symbol: matrix with states^arity rows}, \"final\": [x, ...]}
  Class      {\"kind\": \"word\"|\"tree\", \"k\": int, \"directed\": bool, \"states\": [name, ...],
              \"initial\": name, \"accepting\": [name, ...], \"step\": {state: {letter: state}},
              \"glue_step\": {state: {state: state}} (tree classes), \"small_members\": [graph, ...]}
             Letters are \"A{i}{j}\" and \"J{i}\" with 1-based labels.
  Circuit    {\"gates\": [{\"label\": \"0\"|\"1\"|\"+\"|\"×\", \"children\": [i, j]}, ...], \"output\": k}
             Leaves have no \"children\".
  Gadgets    {\"p\": graph, \"q\": graph, \"v\": graph, \"colours\": {colour: graph}}
             Tips are vertex 0 of each graph.

Verdicts:
  decide     {\"indistinguishable\": bool, \"witness\": graph|null, \"hom_counts\": [str, str]|null,
              \"witness_source\": str|null}
  eq         {\"equivalent\": bool, \"witness\": str|null, \"values\": [str, str]|null,
              \"method\": \"basis\"|\"rank\"|\"closure\"|\"randomised\", \"trials\": int (randomised only)}

Exit codes: 0 = indistinguishable / equivalent / success, 1 = distinguished / inequivalent,
2 = error (message on stderr).

Graph arguments accept a file path or a name: K<n>, C<n>, P<n> (n vertices), S<m> (star K_1,m),
DC<n> (directed cycle), Kneser<r>,<s>.";

#[derive(Parser, Debug)]
#[command(name = "homind", version, about = "Homomorphism indistinguishability, automata equivalence and gadget reductions")]
#[command(after_long_help = SCHEMAS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide homomorphism indistinguishability of two graphs over a class
    #[command(after_long_help = SCHEMAS)]
    Decide(DecideArgs),
    /// Test two multiplicity automata for equivalence
    #[command(after_long_help = SCHEMAS)]
    Eq(EqArgs),
    /// Count homomorphisms F → G by brute force
    #[command(after_long_help = SCHEMAS)]
    Oracle(OracleArgs),
    /// Generate fixture graphs
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Run a reduction
    #[command(subcommand)]
    Reduce(ReduceCommand),
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    /// Builtin class (directed-cycles, cycles, cycles-and-paths, pathwidth-le(w), treewidth-le(w))
    /// or a path to a class automaton JSON file
    #[arg(long)]
    pub class: String,
    pub g: String,
    pub h: String,
    #[arg(long, value_enum, default_value_t = DecideMethod::Automaton)]
    pub method: DecideMethod,
    /// Refuse inputs with more vertices than this
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_vertices: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecideMethod {
    /// Class automaton product and exact equivalence
    Automaton,
    /// Walk and trace counts (cycle classes only)
    Fast,
}

#[derive(Args, Debug)]
pub struct EqArgs {
    /// Inputs are word automata
    #[arg(long, conflicts_with = "mta", required_unless_present = "mta")]
    pub mwa: bool,
    /// Inputs are tree automata
    #[arg(long)]
    pub mta: bool,
    pub a: PathBuf,
    pub b: PathBuf,
    /// basis or rank for word automata; closure or randomised for tree automata
    #[arg(long, value_enum)]
    pub method: Option<EqMethod>,
    /// Random terms tried by the randomised method
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Seed for the randomised method (required there)
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqMethod {
    Basis,
    Rank,
    Closure,
    Randomised,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub f: String,
    pub g: String,
    /// Pin a vertex of F to a vertex of G, as f:g (repeatable)
    #[arg(long = "pin", value_parser = input::parse_pin)]
    pub pins: Vec<(usize, usize)>,
    /// Refuse inputs with more vertices than this
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_vertices: u64,
}

#[derive(Subcommand, Debug)]
pub enum GadgetCommand {
    /// CFI graph of a connected base graph; parity 1 twists vertex 0
    Cfi {
        #[arg(long)]
        base: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        parity: u8,
    },
    /// Normalised circuit for a value, with its graphs G(C) and Ĝ(C)
    Circuit {
        #[arg(long)]
        value: num_bigint::BigUint,
        /// Minimum output height; the actual height is reported
        #[arg(long, default_value_t = 0)]
        height: usize,
    },
    /// The pattern graph F_h, with the T vertex unless --no-hat
    Fh {
        #[arg(long)]
        height: usize,
        /// Member of the relaxed family (leaves at different depths)
        #[arg(long)]
        relaxed: bool,
        #[arg(long)]
        no_hat: bool,
    },
    /// A named graph (see the name forms below)
    #[command(after_long_help = SCHEMAS)]
    Graph { name: String },
    /// Default decolouring gadgets for a comma-separated palette
    Params {
        #[arg(long, value_delimiter = ',', default_value = "*")]
        colours: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReduceCommand {
    /// Non-negative 3n×3n pair (D, E) with χ_D = χ_E iff χ_A = χ_B
    Posdet { a: PathBuf, b: PathBuf },
    /// VCP instance (A, q) to a non-negative pair; q = λ^n + Σ c_i λ^i
    Vcp {
        a: PathBuf,
        /// c_0,…,c_{n-1}, comma-separated integers or p/q
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        coeffs: Vec<String>,
    },
    /// Weighted digraph (non-negative integer matrix) to a simple digraph and gadget period b
    Weighted { a: PathBuf },
    /// Cycles-and-paths instance to a cycles instance
    Cp2c { g: String, h: String },
    /// Cycles instance to a cycles-and-paths instance
    C2cp { g: String, h: String },
    /// Coloured digraph to an undirected uncoloured graph
    Decolour {
        g: String,
        /// Gadget parameter JSON; defaults to the builtin family for the input's palette
        #[arg(long)]
        params: Option<PathBuf>,
        /// Also emit a path decomposition of the output
        #[arg(long)]
        decomposition: bool,
    },
    /// Normalise a circuit and build G(C) and Ĝ(C)
    Circuit {
        c: PathBuf,
        #[arg(long, default_value_t = 0)]
        min_height: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok((out, code)) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(io::stdout().lock(), "{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
