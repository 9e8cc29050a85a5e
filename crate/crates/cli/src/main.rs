mod commands;
mod output;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tca_core::asymptotics::CheckError;
use tca_core::families::{parse_config, FamilyError, FamilySpec};
use tca_core::poly::ResourceLimits;
use tca_core::resolution::ResolutionError;
use tca_core::CharacterError;

/// Equivariant invariants of determinantal-type module families and
/// eventual-linearity checks over windows of ranks.
#[derive(Parser)]
#[command(name = "tca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur expansion of the family's character through --degree.
    Character(RunArgs),
    /// γ(n) over the rank window, with certification and closed forms.
    GammaTable(RunArgs),
    /// Graded Betti tables of the finite-rank instances.
    Betti(RunArgs),
    /// γ, pdim, depth and Krull dimension per rank, against closed forms.
    InvariantsTable(RunArgs),
    /// Strands read off Tor at rank --n-max and the pdim they predict below it.
    Strands(RunArgs),
    /// Eventual-linear fits of γ, pdim, depth and Krull dimension.
    Fit(RunArgs),
    /// Verdicts for every check; without a family, the built-in suite.
    Verify(RunArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Determinantal,
    Full,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Clone)]
pub struct RunArgs {
    /// Built-in family.
    #[arg(long, value_enum, conflicts_with = "config")]
    family: Option<Builtin>,
    /// JSON family file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// Number of rows killed by a linear family.
    #[arg(long)]
    c: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    /// Truncation degree of characters.
    #[arg(long)]
    pub degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = "TCA_MAX_BASIS", default_value_t = 50_000)]
    max_basis: usize,
    #[arg(long, env = "TCA_MAX_MONOMIALS", default_value_t = 500_000)]
    max_monomials: usize,
}

impl RunArgs {
    pub fn limits(&self) -> ResourceLimits {
        ResourceLimits { max_basis: self.max_basis, max_monomials: self.max_monomials }
    }

    pub fn has_family(&self) -> bool {
        self.family.is_some() || self.config.is_some()
    }

    pub fn spec(&self) -> Result<FamilySpec, Failure> {
        let spec = match (&self.config, self.family) {
            (Some(path), _) => {
                let src = fs::read_to_string(path)
                    .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
                parse_config(&src).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
            }
            (None, Some(b)) => {
                let d = self.d.ok_or_else(|| Failure::Config("--d is required".into()))?;
                let spec = match b {
                    Builtin::Determinantal => FamilySpec::Determinantal {
                        d,
                        r: self.r.ok_or_else(|| Failure::Config("--r is required for determinantal".into()))?,
                    },
                    Builtin::Full => FamilySpec::FullRing { d },
                    Builtin::Linear => FamilySpec::LinearQuotient {
                        d,
                        c: self.c.ok_or_else(|| Failure::Config("--c is required for linear".into()))?,
                    },
                };
                spec.validate().map_err(|e| Failure::Config(e.to_string()))?;
                spec
            }
            (None, None) => return Err(Failure::Config("one of --family or --config is required".into())),
        };
        Ok(spec)
    }

    pub fn range(&self) -> Result<(u32, u32), Failure> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Failure::Config(format!("bad rank window {}..{}", self.n_min, self.n_max)));
        }
        Ok((self.n_min, self.n_max))
    }
}

/// Process outcomes other than a clean run.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Resource(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Config(_) => 3,
            Failure::Resource(_) => 4,
        }
    }
}

impl From<ResolutionError> for Failure {
    fn from(e: ResolutionError) -> Self {
        let msg = e.to_string();
        match e {
            e if e.is_resource_limit() => Failure::Resource(msg),
            ResolutionError::Internal(_) | ResolutionError::LengthExceeded { .. } => Failure::Math(msg),
            _ => Failure::Config(msg),
        }
    }
}

impl From<CharacterError> for Failure {
    fn from(e: CharacterError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Resolution(e) => e.into(),
            e => Failure::Config(e.to_string()),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Family(e) => e.into(),
            e => Failure::Config(e.to_string()),
        }
    }
}

/// Exit codes of a completed run.
pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const INCONCLUSIVE: u8 = 2;
pub const RESOURCE: u8 = 4;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Character(a) => commands::character(a),
        Command::GammaTable(a) => commands::gamma_table(a),
        Command::Betti(a) => commands::betti(a),
        Command::InvariantsTable(a) => commands::invariants_table(a),
        Command::Strands(a) => commands::strands(a),
        Command::Fit(a) => commands::fit(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let (Failure::Config(m) | Failure::Resource(m) | Failure::Math(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
