use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use pcfilter_core::cli::{self, Command, Options};
use pcfilter_core::fspec;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Validate,
    Boundary,
    Close,
    Lie,
    Inert,
    Refresh,
    Faithful,
    Bijection,
    Hasse,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Validate => Command::Validate,
            Cmd::Boundary => Command::Boundary,
            Cmd::Close => Command::Close,
            Cmd::Lie => Command::Lie,
            Cmd::Inert => Command::Inert,
            Cmd::Refresh => Command::Refresh,
            Cmd::Faithful => Command::Faithful,
            Cmd::Bijection => Command::Bijection,
            Cmd::Hasse => Command::Hasse,
        }
    }
}

/// Filters of finite polycyclic groups over pre-ordered commutative monoids.
#[derive(Parser, Debug)]
#[command(name = "pcfilter", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Filter-spec file.
    file: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the lattice in DOT format here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Enumeration cap.
    #[arg(long)]
    cap: Option<usize>,
    /// Seed for sampled basis checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop closure after this many commutator rounds.
    #[arg(long)]
    class_hint: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {}", args.file.display(), e);
            return ExitCode::from(2);
        }
    };
    let doc = match fspec::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}: {}", args.file.display(), e);
            return ExitCode::from(2);
        }
    };
    let cmd: Command = args.command.into();
    let opts = Options { cap: args.cap, seed: args.seed, class_hint: args.class_hint };
    let out = cli::run(cmd, &doc, &opts);
    let write = |path: &Option<PathBuf>, text: &str, to_stdout: bool| -> bool {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| eprintln!("error: {}: {}", p.display(), e)).is_ok(),
            None => {
                if to_stdout {
                    print!("{}", text);
                }
                true
            }
        }
    };
    let dot_to_stdout = matches!(cmd, Command::Hasse) && args.dot.is_none();
    let mut ok = write(&args.report, &out.report, !dot_to_stdout);
    if let Some(d) = &out.dot {
        ok &= write(&args.dot, d, dot_to_stdout);
    }
    if !ok {
        return ExitCode::from(2);
    }
    ExitCode::from(out.code as u8)
}
