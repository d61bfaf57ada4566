use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

use crate::dsl::eval::{orbit_output, script_space, Evaluator, EXIT_ASSERT, EXIT_BINDING, EXIT_OK, EXIT_USAGE};
use crate::dsl::{evaluate, parse, parse_expr, EvalOptions, Script};
use crate::monoid::{enumerate_canonical, monoid_table, RewriteMode};
use crate::rational::format_point;
use crate::selftest::run_selftest;
use crate::separation::{separate, ConvexHRep, HRepJson, Separation};

pub const RNG_ENV: &str = "KURA_RNG";

#[derive(Parser, Debug)]
#[command(name = "kura", version, about = "Closure and complement operators on semilinear sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a script.
    Run {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: Option<u8>,
        #[arg(long, default_value_t = 0)]
        rng: u64,
    },
    /// Enumerate the orbit of a set expression under closure and complement.
    Orbit {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: Option<u8>,
        #[arg(long)]
        json: bool,
    },
    /// List canonical operator words.
    Monoid {
        #[arg(long)]
        mode: RewriteMode,
        #[arg(long, default_value_t = 9)]
        max_len: usize,
        /// Print the composition table.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Separate two convex sets given as constraint files.
    Separate {
        #[arg(long = "s")]
        s: PathBuf,
        #[arg(long = "t")]
        t: PathBuf,
    },
    /// Run the invariant suite on random inputs.
    Selftest {
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        rng: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Entry point with the environment override passed in explicitly.
pub fn run_cli_with_env<I, S>(args: I, env_rng: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let env_rng = match env_rng.map(|v| v.trim().parse::<u64>()) {
        None => None,
        Some(Ok(v)) => Some(v),
        Some(Err(_)) => {
            let _ = writeln!(err, "error: {RNG_ENV} must be an unsigned integer");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Run { file, json, dim, rng } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "error: cannot read {}: {e}", file.display());
                    return EXIT_USAGE;
                }
            };
            let script = match parse(&src) {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(err, "{}: {e}", file.display());
                    return EXIT_USAGE;
                }
            };
            let opts = EvalOptions { dim: dim.map(usize::from), rng: env_rng.unwrap_or(rng) };
            let report = evaluate(&script, &opts);
            let _ = if json {
                write!(out, "{}", report.to_json())
            } else {
                write!(out, "{}", report.to_text())
            };
            if let Some(e) = &report.summary.error {
                let _ = writeln!(err, "{}: {e}", file.display());
            }
            report.exit_code()
        }
        Command::Orbit { expr, dim, json } => {
            let e = match parse_expr(&expr) {
                Ok(e) => e,
                Err(x) => {
                    let _ = writeln!(err, "{x}");
                    return EXIT_USAGE;
                }
            };
            let opts = EvalOptions { dim: dim.map(usize::from), rng: 0 };
            let space = match opts.dim {
                Some(_) => script_space(&Script::default(), &opts),
                None => script_space(&Script::default(), &EvalOptions { dim: e.first_literal_dim(), rng: 0 }),
            };
            let seed = match Evaluator::new(space).eval(&e) {
                Ok(s) => s,
                Err(x) => {
                    let _ = writeln!(err, "{x}");
                    return EXIT_BINDING;
                }
            };
            let (value, text) = orbit_output(&seed);
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))
            } else {
                write!(out, "{text}")
            };
            EXIT_OK
        }
        Command::Monoid { mode, max_len, table, json } => {
            let words = match enumerate_canonical(mode, max_len) {
                Ok(w) => w,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            let t = table.then(|| monoid_table(mode));
            if json {
                let mut v = serde_json::json!({ "mode": mode, "count": words.len(), "words": words });
                if let Some(t) = &t {
                    v["table"] = t.to_json();
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                let _ = writeln!(out, "{} canonical words ({mode}):", words.len());
                for w in &words {
                    let _ = writeln!(out, "  {w}");
                }
                if let Some(t) = &t {
                    let _ = writeln!(out);
                    let _ = write!(out, "{t}");
                }
            }
            EXIT_OK
        }
        Command::Separate { s, t } => {
            let load = |p: &PathBuf| -> Result<ConvexHRep, String> {
                let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
                let json: HRepJson = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?;
                ConvexHRep::from_json(&json).map_err(|e| format!("{}: {e}", p.display()))
            };
            let (hs, ht) = match (load(&s), load(&t)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_USAGE;
                }
            };
            match separate(&hs, &ht) {
                Ok(r) => {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r.to_json()).expect("serializable"));
                    if let Separation::Intersects(p) = &r {
                        let _ = writeln!(err, "cor(S) meets T at {}", format_point(p));
                    }
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_ASSERT
                }
            }
        }
        Command::Selftest { seeds, rng, json } => {
            let summary = run_selftest(seeds, env_rng.unwrap_or(rng));
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("serializable"))
            } else {
                write!(out, "{}", summary.to_text())
            };
            if summary.passed() {
                EXIT_OK
            } else {
                EXIT_ASSERT
            }
        }
    }
}

/// Command-line entry point; `KURA_RNG` overrides `--rng`.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_cli_with_env(args, std::env::var(RNG_ENV).ok(), out, err)
}
