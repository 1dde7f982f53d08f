use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use freeboundary::cli::{self, Alphabet, CliError, ParamsArg, RunOptions};
use serde_json::Value;

/// Exact checks of free-boundary process identities and the quasi-open
/// lattice models.
#[derive(Parser)]
#[command(name = "fbcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity (or `all`) and print its report.
    Run {
        identity: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Write a series or distribution as JSON.
    Dump {
        #[arg(value_enum)]
        kind: DumpKind,
        /// Which series for `dump series`.
        #[arg(long, default_value = "z-infinity")]
        of: String,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Sample the quasi-open strip: one `S H V` line per outcome.
    Sample {
        #[command(flatten)]
        opts: Opts,
    },
    /// List the registered identities.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpKind {
    Zn,
    Series,
    Distribution,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Level n (for boson checks, the count or size bound).
    #[arg(long)]
    n: Option<u32>,
    /// Alphabet size, or explicit rationals `x1,x2,..` for numeric runs.
    #[arg(long)]
    alphabet: Option<Alphabet>,
    /// `a,b,c,d,q,t` as rationals `p/q` or `formal`.
    #[arg(long)]
    params: Option<ParamsArg>,
    /// q, t cap in half-units.
    #[arg(long)]
    qt_cap: Option<u32>,
    #[arg(long)]
    x_cap: Option<u32>,
    #[arg(long)]
    param_cap: Option<u32>,
    #[arg(long)]
    z_order: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    count: Option<usize>,
    /// Strip length for numeric distributions; adaptive when absent.
    #[arg(long)]
    l: Option<usize>,
    /// `json` (default for run and dump) or `text` (default for sample).
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl Opts {
    fn options(&self) -> RunOptions {
        RunOptions {
            n: self.n,
            alphabet: self.alphabet.clone(),
            params: self.params.clone(),
            qt_cap: self.qt_cap,
            x_cap: self.x_cap,
            param_cap: self.param_cap,
            z_order: self.z_order,
            n_max: self.n_max,
            seed: self.seed,
            count: self.count,
            l: self.l,
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => {
            let mut so = std::io::stdout().lock();
            match writeln!(so, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn execute(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::List => {
            emit(&cli::IDENTITIES.join("\n"), None)?;
            Ok(true)
        }
        Command::Run { identity, opts } => {
            let o = opts.options();
            let reports = if identity == "all" {
                cli::run_all(&o)
            } else {
                vec![(identity.clone(), cli::run(&identity, &o))]
            };
            let mut ok = true;
            let mut json = Vec::new();
            for (name, r) in reports {
                let rep = match r {
                    Ok(rep) => rep,
                    Err(e) if identity != "all" => return Err(e),
                    Err(e) => {
                        eprintln!("{name}: {e}");
                        ok = false;
                        continue;
                    }
                };
                ok &= rep.passed();
                match opts.format.unwrap_or(Format::Json) {
                    Format::Json => json.push(serde_json::to_value(&rep).expect("reports serialize")),
                    Format::Text => emit(&rep.to_string(), None)?,
                }
            }
            if let Format::Json = opts.format.unwrap_or(Format::Json) {
                let v = if identity == "all" { Value::Array(json) } else { json.pop().unwrap_or(Value::Null) };
                emit(&pretty(&v), None)?;
            }
            Ok(ok)
        }
        Command::Dump { kind, of, out, opts } => {
            let o = opts.options();
            let v = match kind {
                DumpKind::Zn => cli::dump_zn(&o)?,
                DumpKind::Series => cli::dump_series(&of, &o)?,
                DumpKind::Distribution => cli::dump_distribution(&o)?,
            };
            emit(&cli::layout(&v), out.as_ref())?;
            Ok(true)
        }
        Command::Sample { opts } => {
            let s = cli::sample(&opts.options())?;
            match opts.format.unwrap_or(Format::Text) {
                Format::Json => emit(&pretty(&s.to_json()), None)?,
                Format::Text => {
                    let mut text = s.lines().join("\n");
                    if !text.is_empty() {
                        text.push('\n');
                    }
                    text.push_str(&format!("# {}", s.summary()));
                    emit(&text, None)?;
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let parsed = Cli::parse();
    match execute(parsed.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fbcheck: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
