use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commcrit::words::WordKind;
use commcrit::DEFAULT_CAP;
use commcrit_cli::{
    builtin_descriptors, describe_builtin, run, write_descriptor, CliError, Command, KRange,
    RunOptions, Selection, Tag,
};

#[derive(Parser)]
#[command(name = "commcrit", version, about = "Coprime-order nilpotency criteria on finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Condition on word values against nilpotency of G^(k) or γ_k(G).
    Theorem(RunArgs),
    /// Sylow intersections with G^(i) generated by δ_i-values.
    Focal(RunArgs),
    /// All lemma checks over generated instances.
    Lemmas(RunArgs),
    /// Commutator-closed generating sets from a Sylow basis.
    Xclo(RunArgs),
    /// The δ-condition on insoluble groups (default: insoluble builtins).
    Probe(RunArgs),
    /// Derived, lower central and lower Fitting series.
    Series(RunArgs),
    /// List builtin groups.
    List,
    /// Print the descriptor of a builtin group.
    Export { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Delta,
    Gamma,
}

#[derive(Args)]
struct RunArgs {
    /// Depth or inclusive range, e.g. `2` or `1..3`.
    #[arg(long, default_value = "1..3")]
    k: String,
    #[arg(long, value_enum, default_value = "delta")]
    kind: KindArg,
    /// Largest group order enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only groups with this tag (soluble, insoluble, nilpotent, abelian).
    #[arg(long)]
    filter: Option<String>,
    /// Builtin group id; repeatable.
    #[arg(long = "group")]
    groups: Vec<String>,
    /// Group descriptor file; repeatable.
    #[arg(long = "file")]
    files: Vec<PathBuf>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Count inadmissible lemma instances as failures.
    #[arg(long)]
    strict: bool,
    /// Random closed generating sets per group for `xclo`.
    #[arg(long, default_value_t = 50)]
    closed_set_trials: usize,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn execute(cmd: Command, args: RunArgs) -> Result<i32, CliError> {
    let selection = Selection {
        ids: args.groups,
        files: args.files,
        tag: args.filter.as_deref().map(str::parse::<Tag>).transpose()?,
    };
    let opts = RunOptions {
        k: args.k.parse::<KRange>()?,
        kind: match args.kind {
            KindArg::Delta => WordKind::Delta,
            KindArg::Gamma => WordKind::Gamma,
        },
        cap: args.cap,
        seed: args.seed,
        strict: args.strict,
        closed_set_trials: args.closed_set_trials,
        jobs: args.jobs,
    };
    let report = run(cmd, &selection, &opts)?;
    match args.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json()).map_err(|e| CliError::Io {
                path: p.to_path_buf(),
                message: e.to_string(),
            })?;
            print!("{}", report.render_text());
        }
        None => print!("{}", report.render_text()),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Theorem(a) => execute(Command::Theorem, a),
        Cmd::Focal(a) => execute(Command::Focal, a),
        Cmd::Lemmas(a) => execute(Command::Lemmas, a),
        Cmd::Xclo(a) => execute(Command::Xclo, a),
        Cmd::Probe(a) => execute(Command::Probe, a),
        Cmd::Series(a) => execute(Command::Series, a),
        Cmd::List => {
            for d in builtin_descriptors() {
                println!("{:<8} degree {:<4} order {}", d.id, d.degree, d.expected_order.unwrap_or(0));
            }
            Ok(0)
        }
        Cmd::Export { id } => describe_builtin(&id).map(|d| {
            print!("{}", write_descriptor(&d));
            0
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
