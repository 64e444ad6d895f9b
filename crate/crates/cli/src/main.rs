use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adhesive::report::{self, RunConfig};
use adhesive::sheaf::demo::Demo;
use adhesive::CatError;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "adhesive", version, about = "Bounded adhesivity checks for concrete finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Largest object size enumerated by exhaustive checks.
    #[arg(long, global = true, default_value_t = 3)]
    bound: usize,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Replay every witness in a witness or report file.
    #[arg(long, value_name = "WITNESS.json")]
    replay: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an instance as adhesive, rm-adhesive and q-adhesive at the bound.
    Classify {
        /// finset, fingraph, relset, acyclicrel, or a JSON file naming one.
        instance: String,
    },
    /// Run a scripted reproduction; exits 1 if the expected outcome is not observed.
    Reproduce {
        /// e-counterexample, relset-union, vk-biconditional, basic-lemma or factorization.
        name: String,
    },
    /// Sheaf checks on a site (demo4, demo5 or a file); every representable if no presheaf is given.
    Sheaf { site: String, presheaf: Option<PathBuf> },
    /// Double-pushout rewriting of a host graph; every match if the host file gives none.
    Dpo { rule: PathBuf, host: PathBuf },
    /// Restricted Yoneda checks on the bounded piece of an instance.
    Embed { instance: String },
}

enum Failure {
    Usage(String),
    Cat(CatError),
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        Failure::Cat(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cat(e) => match e {
                CatError::Parse(_)
                | CatError::Invalid(_)
                | CatError::InvalidSquare(_)
                | CatError::MissingKernelPair(_)
                | CatError::NotComposable(_)
                | CatError::EdgeMismatch => 2,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Cat(e) => e.to_string(),
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Cat(CatError::Parse(format!("{}: {e}", path.display()))))
}

fn instance(arg: &str) -> Result<adhesive::StructCat, Failure> {
    let v = match adhesive::Kind::from_name(arg) {
        Some(_) => Value::String(arg.to_string()),
        None => read_json(Path::new(arg))?,
    };
    Ok(report::instance_from_json(&v)?)
}

fn site_json(arg: &str) -> Result<Value, Failure> {
    match Demo::from_name(arg) {
        Some(d) => serde_json::from_str(d.shipped()).map_err(|e| Failure::Cat(e.into())),
        None => read_json(Path::new(arg)),
    }
}

/// The report and the exit code it implies.
fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let cfg = RunConfig { bound: cli.bound, seed: cli.seed, timing: cli.timing };
    cfg.validate()?;
    if let Some(path) = &cli.replay {
        let (ok, v) = report::replay_report(&read_json(path)?)?;
        return Ok((v, if ok { 0 } else { 1 }));
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Usage("a subcommand or --replay is required".into()));
    };
    match command {
        Command::Classify { instance: i } => Ok((report::classify_report(&instance(i)?, &cfg)?, 0)),
        Command::Reproduce { name } => {
            let (ok, v) = report::reproduce(name, &cfg)?;
            Ok((v, if ok { 0 } else { 1 }))
        }
        Command::Sheaf { site, presheaf } => {
            let site = report::site_from_json(&site_json(site)?)?;
            let psh = presheaf.as_deref().map(read_json).transpose()?;
            Ok((report::sheaf_report(&site, psh.as_ref(), &cfg)?, 0))
        }
        Command::Dpo { rule, host } => Ok((report::dpo_report(&read_json(rule)?, &read_json(host)?, &cfg)?, 0)),
        Command::Embed { instance: i } => Ok((report::embed_report(&instance(i)?, &cfg)?, 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, code)) => {
            let text = match cli.format {
                Format::Json => report::to_json_text(&v),
                Format::Text => report::to_text(&v),
            };
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
