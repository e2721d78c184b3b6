//! `envrad` — envelopes, closures and weakly radicals of submodules of free
//! modules over Q[x1..xm], driven by a session file of named definitions.
//!
//! Results go to stdout as reduced canonical bases, one generator per line;
//! diagnostics go to stderr.  Exit codes: 0 success, 1 usage or parse
//! failure, 2 violated precondition or invalid certificate, 3 oracle miss,
//! 4 iteration limit.

use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand, ValueEnum};
use envrad_cli::commands::{self, Command, OpKind, RunOutcome};
use envrad_cli::session::Session;
use envrad_core::{EnvelopeConfig, VerificationConfig, DEFAULT_MAX_ITER};

#[derive(Parser)]
#[command(
    name = "envrad",
    version,
    about = "Envelopes, closures and weakly radicals of submodules over Q[x1..xm]"
)]
struct Cli {
    /// Session file defining the ring, the free module and all named objects.
    session: PathBuf,

    /// Extra session file whose fixtures are added to the decomposition
    /// oracle; its ring and rank must match the main session.
    #[arg(long, value_name = "FILE", global = true)]
    oracle: Option<PathBuf>,

    /// Iteration bound for envelope fixed points; overrides ENVRAD_MAX_ITER.
    #[arg(long, value_name = "N", global = true)]
    max_iter: Option<usize>,

    /// Exponent bound when verifying p^k M is contained in Q.
    #[arg(long, value_name = "K", global = true)]
    kmax: Option<u32>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a decomposition certificate and print the full report.
    Verify { decomp: String },
    /// Compute the envelope of a certified decomposition's target.
    Env {
        decomp: String,
        /// List the input, the radical term and every summand on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Iterate the envelope of a module to its fixed point.
    Ue { module: String },
    /// Weakly p-closure: the envelope fixed point of N + pM.
    Wcl {
        module: String,
        /// Prime to close against.
        #[arg(short)]
        p: String,
    },
    /// Weakly radical: meet of weakly closures over the minimal primes of
    /// the annihilator.
    Wrad {
        module: String,
        /// Explicit primes (comma separated) instead of computed ones.
        #[arg(short, value_delimiter = ',')]
        p: Vec<String>,
    },
    /// p-closure read off a certificate: meet of the components inside p.
    Cl {
        decomp: String,
        /// Prime to close against.
        #[arg(short)]
        p: String,
    },
    /// Module algebra: sum, intersect, colon, sat, ann, prod.
    Op {
        kind: OpArg,
        /// Names of the operands, in the order the operation reads them.
        args: Vec<String>,
    },
    /// Search for (a, b, m) with a*b*m in N but a*m and b*m outside.
    Weakcheck {
        module: String,
        /// Degree bound for the enumerated terms.
        #[arg(long)]
        bound: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Sum,
    Intersect,
    Colon,
    Sat,
    Ann,
    Prod,
}

impl From<OpArg> for OpKind {
    fn from(op: OpArg) -> OpKind {
        match op {
            OpArg::Sum => OpKind::Sum,
            OpArg::Intersect => OpKind::Intersect,
            OpArg::Colon => OpKind::Colon,
            OpArg::Sat => OpKind::Sat,
            OpArg::Ann => OpKind::Ann,
            OpArg::Prod => OpKind::Prod,
        }
    }
}

fn load_session(path: &Path) -> Session {
    let src = match std::fs::read_to_string(path) {
        Ok(src) => src,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            exit(1);
        }
    };
    match Session::parse(&src) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            exit(1);
        }
    }
}

/// --max-iter beats ENVRAD_MAX_ITER beats the built-in default.
fn resolve_max_iter(flag: Option<usize>) -> usize {
    if let Some(n) = flag {
        return n;
    }
    match std::env::var("ENVRAD_MAX_ITER") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => n,
            _ => {
                eprintln!("error: ENVRAD_MAX_ITER must be a positive integer, got `{raw}`");
                exit(1);
            }
        },
        Err(_) => DEFAULT_MAX_ITER,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                exit(0);
            }
            let _ = e.print();
            exit(1);
        }
    };

    let session = load_session(&cli.session);
    let extra = cli.oracle.as_deref().map(|path| {
        let extra = load_session(path);
        if extra.ring().var_names() != session.ring().var_names()
            || extra.module().rank() != session.module().rank()
        {
            eprintln!("error: {}: ring or rank differs from the session", path.display());
            exit(1);
        }
        extra
    });

    let mut verification = VerificationConfig::default();
    if let Some(k) = cli.kmax {
        verification.k_max = k;
    }
    let config = EnvelopeConfig {
        verification,
        max_iter: resolve_max_iter(cli.max_iter),
        ..EnvelopeConfig::default()
    };

    let command = match cli.command {
        Cmd::Verify { decomp } => Command::Verify { decomp },
        Cmd::Env { decomp, trace } => Command::Env { decomp, trace },
        Cmd::Ue { module } => Command::Ue { module },
        Cmd::Wcl { module, p } => Command::Wcl { module, prime: p },
        Cmd::Wrad { module, p } => Command::Wrad { module, primes: p },
        Cmd::Cl { decomp, p } => Command::Cl { decomp, prime: p },
        Cmd::Op { kind, args } => Command::Op { kind: kind.into(), args },
        Cmd::Weakcheck { module, bound } => Command::Weakcheck { module, bound },
    };

    let RunOutcome { stdout, stderr, exit: code } =
        commands::run(&session, extra.as_ref(), &command, &config);
    print!("{stdout}");
    eprint!("{stderr}");
    exit(code);
}
