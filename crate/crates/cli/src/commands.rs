//! Command execution over a parsed session.
//!
//! Every command resolves its named arguments, runs the corresponding core
//! computation and returns a [`RunOutcome`]: canonical results on stdout,
//! diagnostics on stderr, and a process exit code.  Separating this from
//! `main` keeps the whole surface testable without spawning the binary.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 violated precondition
//! or invalid certificate, 3 decomposition oracle miss, 4 iteration limit.

use envrad_core::{
    annihilator, closure, colon_ideal, envelope, find_weak_counterexample, ideal_module_product,
    intersect, iterate_envelope, saturate, sum, weakly_closure, weakly_radical, EnvelopeConfig,
    EnvelopeTrace, Error, Ideal, Submodule,
};

use crate::session::{DecompositionView, Session};

/// A resolved invocation, independent of how the arguments were spelled.
#[derive(Debug, Clone)]
pub enum Command {
    /// Print the certificate checklist for a named decomposition.
    Verify { decomp: String },
    /// Envelope of a certified decomposition's target.
    Env { decomp: String, trace: bool },
    /// Iterated envelope of a module up to its fixed point.
    Ue { module: String },
    /// Weakly p-closure of a module.
    Wcl { module: String, prime: String },
    /// Weakly radical of a module; explicit primes override the automatic
    /// minimal-prime computation.
    Wrad { module: String, primes: Vec<String> },
    /// p-closure read off a certified decomposition.
    Cl { decomp: String, prime: String },
    /// Module algebra on named objects.
    Op { kind: OpKind, args: Vec<String> },
    /// Search for a weakly-prime violation by term enumeration.
    Weakcheck { module: String, bound: u32 },
}

/// The binary operations exposed through `op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Sum,
    Intersect,
    Colon,
    Sat,
    Ann,
    Prod,
}

impl OpKind {
    fn name(self) -> &'static str {
        match self {
            OpKind::Sum => "sum",
            OpKind::Intersect => "intersect",
            OpKind::Colon => "colon",
            OpKind::Sat => "sat",
            OpKind::Ann => "ann",
            OpKind::Prod => "prod",
        }
    }
}

/// What a command produced: the exact stdout and stderr text plus the exit
/// code the process should terminate with.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

fn ok(stdout: String, stderr: String) -> RunOutcome {
    RunOutcome { stdout, stderr, exit: 0 }
}

fn usage_error(msg: String) -> RunOutcome {
    RunOutcome { stdout: String::new(), stderr: format!("error: {msg}\n"), exit: 1 }
}

fn unknown(kind: &str, name: &str) -> RunOutcome {
    usage_error(format!("unknown {kind} `{name}`"))
}

fn core_error(e: &Error) -> RunOutcome {
    let exit = match e {
        Error::OracleMiss { .. } => 3,
        Error::IterationLimit(_) => 4,
        _ => 2,
    };
    RunOutcome { stdout: String::new(), stderr: format!("error: {e}\n"), exit }
}

/// Canonical submodule rendering: the reduced basis, one generator per line.
fn submodule_lines(sub: &Submodule) -> String {
    format!("{sub}\n")
}

fn ideal_lines(ideal: &Ideal) -> String {
    format!("{ideal}\n")
}

/// Executes one command against a session.  `extra` contributes additional
/// oracle fixtures (the `--oracle` file); `config` carries the verification
/// and iteration bounds.
pub fn run(
    session: &Session,
    extra: Option<&Session>,
    cmd: &Command,
    config: &EnvelopeConfig,
) -> RunOutcome {
    match cmd {
        Command::Verify { decomp } => {
            let Some(view) = session.decomposition(decomp) else {
                return unknown("decomposition", decomp);
            };
            let report = view.decomposition.verify(&config.verification);
            let exit = if report.is_valid() { 0 } else { 2 };
            RunOutcome { stdout: format!("{report}\n"), stderr: String::new(), exit }
        }

        Command::Env { decomp, trace } => {
            let Some(view) = session.decomposition(decomp) else {
                return unknown("decomposition", decomp);
            };
            match envelope(&view.decomposition, config) {
                Ok(t) => {
                    let stderr = if *trace { render_trace(&t, &view, decomp) } else { String::new() };
                    ok(submodule_lines(&t.result), stderr)
                }
                Err(e) => core_error(&e),
            }
        }

        Command::Ue { module } => {
            let Some(n) = session.submodule(module) else {
                return unknown("module", module);
            };
            let oracle = match session.build_oracle(extra, &config.verification) {
                Ok(o) => o,
                Err(e) => return core_error(&e),
            };
            match iterate_envelope(n, &oracle, config) {
                Ok(run) => ok(
                    submodule_lines(&run.fixed_point),
                    format!("fixed point after {} envelope applications\n", run.steps),
                ),
                Err(e) => core_error(&e),
            }
        }

        Command::Wcl { module, prime } => {
            let Some(n) = session.submodule(module) else {
                return unknown("module", module);
            };
            let Some(p) = session.prime(prime) else {
                return unknown("prime", prime);
            };
            let oracle = match session.build_oracle(extra, &config.verification) {
                Ok(o) => o,
                Err(e) => return core_error(&e),
            };
            match weakly_closure(n, p, &oracle, config) {
                Ok(sub) => ok(submodule_lines(&sub), String::new()),
                Err(e) => core_error(&e),
            }
        }

        Command::Wrad { module, primes } => {
            let Some(n) = session.submodule(module) else {
                return unknown("module", module);
            };
            let mut resolved: Vec<Ideal> = Vec::with_capacity(primes.len());
            for name in primes {
                let Some(p) = session.prime(name) else {
                    return unknown("prime", name);
                };
                resolved.push(p.clone());
            }
            let oracle = match session.build_oracle(extra, &config.verification) {
                Ok(o) => o,
                Err(e) => return core_error(&e),
            };
            let explicit = if resolved.is_empty() { None } else { Some(resolved.as_slice()) };
            match weakly_radical(n, explicit, &oracle, config) {
                Ok(sub) => ok(submodule_lines(&sub), String::new()),
                Err(e) => core_error(&e),
            }
        }

        Command::Cl { decomp, prime } => {
            let Some(view) = session.decomposition(decomp) else {
                return unknown("decomposition", decomp);
            };
            let Some(p) = session.prime(prime) else {
                return unknown("prime", prime);
            };
            match closure(&view.decomposition, p, &config.verification) {
                Ok(res) => {
                    let kept: Vec<&str> =
                        res.kept.iter().map(|&i| view.component_names[i].as_str()).collect();
                    let note = if kept.is_empty() {
                        "kept: none\n".to_string()
                    } else {
                        format!("kept: {}\n", kept.join(", "))
                    };
                    ok(submodule_lines(&res.submodule), note)
                }
                Err(e) => core_error(&e),
            }
        }

        Command::Op { kind, args } => run_op(session, *kind, args),

        Command::Weakcheck { module, bound } => {
            let Some(n) = session.submodule(module) else {
                return unknown("module", module);
            };
            let verdict = find_weak_counterexample(n, *bound);
            match verdict.witness {
                Some((a, b, m)) => ok(format!("a={a} b={b} m={m}\n"), String::new()),
                None => ok(format!("no witness up to bound {bound}\n"), String::new()),
            }
        }
    }
}

fn run_op(session: &Session, kind: OpKind, args: &[String]) -> RunOutcome {
    let expected = match kind {
        OpKind::Sum | OpKind::Intersect => (2, "two module names"),
        OpKind::Colon | OpKind::Sat => (2, "a module name and a prime name"),
        OpKind::Ann => (1, "one module name"),
        OpKind::Prod => (2, "a prime name and a module name"),
    };
    if args.len() != expected.0 {
        return usage_error(format!("op {} expects {}", kind.name(), expected.1));
    }

    match kind {
        OpKind::Sum | OpKind::Intersect => {
            let Some(a) = session.submodule(&args[0]) else {
                return unknown("module", &args[0]);
            };
            let Some(b) = session.submodule(&args[1]) else {
                return unknown("module", &args[1]);
            };
            let result = if kind == OpKind::Sum { sum(a, b) } else { intersect(a, b) };
            ok(submodule_lines(&result), String::new())
        }
        OpKind::Colon | OpKind::Sat => {
            let Some(n) = session.submodule(&args[0]) else {
                return unknown("module", &args[0]);
            };
            let Some(p) = session.prime(&args[1]) else {
                return unknown("prime", &args[1]);
            };
            if kind == OpKind::Colon {
                match colon_ideal(n, p) {
                    Ok(sub) => ok(submodule_lines(&sub), String::new()),
                    Err(e) => core_error(&e),
                }
            } else {
                match saturate(n, p) {
                    Ok((sub, steps)) => ok(
                        submodule_lines(&sub),
                        format!("stabilized after {steps} colon applications\n"),
                    ),
                    Err(e) => core_error(&e),
                }
            }
        }
        OpKind::Ann => {
            let Some(n) = session.submodule(&args[0]) else {
                return unknown("module", &args[0]);
            };
            ok(ideal_lines(&annihilator(n)), String::new())
        }
        OpKind::Prod => {
            let Some(p) = session.prime(&args[0]) else {
                return unknown("prime", &args[0]);
            };
            let Some(n) = session.submodule(&args[1]) else {
                return unknown("module", &args[1]);
            };
            ok(submodule_lines(&ideal_module_product(p, n)), String::new())
        }
    }
}

/// Renders the envelope trace using the session's own names: the input, the
/// radical summand, then every proper-subset summand in enumeration order.
fn render_trace(trace: &EnvelopeTrace, view: &DecompositionView, target: &str) -> String {
    let mut out = String::new();
    push_block(&mut out, &format!("input {target}"), &trace.input);
    let all: Vec<usize> = (0..view.prime_names.len()).collect();
    push_block(
        &mut out,
        &format!("radical {}M", names_meet(&view.prime_names, &all)),
        &trace.radical_summand,
    );
    for s in &trace.summands {
        let header = format!(
            "summand {}{}",
            names_meet(&view.prime_names, &s.prime_indices),
            names_meet(&view.component_names, &s.component_indices)
        );
        push_block(&mut out, &header, &s.submodule);
    }
    out
}

fn names_meet(names: &[String], idx: &[usize]) -> String {
    if idx.len() == 1 {
        return names[idx[0]].clone();
    }
    let joined = idx.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" ∩ ");
    format!("({joined})")
}

fn push_block(out: &mut String, header: &str, sub: &Submodule) {
    out.push_str(header);
    out.push('\n');
    for line in sub.to_string().lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
}
