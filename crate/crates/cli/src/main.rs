mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use refsev_core::{Error, Family, HTransversePolygon, Partition};

/// Refined Severi degrees of h-transverse polygons.
#[derive(Parser, Debug)]
#[command(name = "refsev", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Cap on basis vectors per DP state (overrides REFSEV_GUARD_MAX_STATES).
    #[arg(long, global = true)]
    max_states: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Eval {
    Poly,
    Y1,
    Ym1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fock,
    Floor,
    Wick,
    All,
}

#[derive(Args, Debug)]
pub struct PolygonArg {
    /// Preset ("p2:d=3", "sigma:m=1,c=0,d=2", "wps11m:m=2,d=1", "wps1mm:m=3,d=1")
    /// or raw data "dt=0;db=3;r=1^3;l=0^3".
    #[arg(long)]
    polygon: String,
}

impl PolygonArg {
    fn parse(&self) -> Result<HTransversePolygon, Error> {
        self.polygon.parse()
    }
}

#[derive(Args, Debug)]
pub struct Tangency {
    /// Multiplicity list: alpha_i is the number of parts equal to i.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    alpha: String,
    /// Multiplicity list; defaults to all remaining tangencies of order one.
    #[arg(long)]
    beta: Option<String>,
}

impl Tangency {
    fn parse(&self, p: &HTransversePolygon) -> Result<(Partition, Partition), Error> {
        let alpha: Partition = self.alpha.parse()?;
        let beta = match &self.beta {
            Some(b) => b.parse()?,
            None => Partition::ones((p.d_bottom() as u64).saturating_sub(alpha.size()) as u32),
        };
        Ok((alpha, beta))
    }
}

#[derive(Args, Debug)]
pub struct Range {
    /// "p2", "sigma:m=1", "wps11m:m=2", "wps1mm:m=3".
    #[arg(long)]
    family: String,
    /// Largest class, "d" or "c,d" for sigma.
    #[arg(long)]
    max_class: String,
    #[arg(long)]
    max_delta: u64,
}

impl Range {
    fn parse(&self) -> Result<(Family, Vec<u32>), Error> {
        let family: Family = self.family.parse()?;
        let class = self
            .max_class
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad class component {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if class.len() != family.class_rank() {
            return Err(Error::InvalidParameter(format!(
                "{family} classes have {} components, got {}",
                family.class_rank(),
                class.len()
            )));
        }
        Ok((family, class))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Refined Severi degree N^{Δ,δ}(y).
    Compute {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long, value_enum)]
        eval: Option<Eval>,
        #[arg(long, value_enum, default_value_t = Method::Fock)]
        method: Method,
    },
    /// Refined relative Severi degree N^{Δ,δ}(α,β)(y).
    Relative {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[command(flatten)]
        tangency: Tangency,
        #[arg(long, value_enum)]
        eval: Option<Eval>,
        #[arg(long, value_enum, default_value_t = Method::Fock)]
        method: Method,
    },
    /// Compares the Fock engine with the floor and/or Wick oracles.
    Crosscheck {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[command(flatten)]
        tangency: Tangency,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// One row per (class, δ) of a family.
    Table {
        #[command(flatten)]
        range: Range,
    },
    /// Irreducible refined Severi degrees from the formal logarithm.
    Irreducible {
        #[command(flatten)]
        range: Range,
    },
    /// Checks the generating-function identity of a family to given orders.
    GenfunCheck {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0)]
        s: u32,
    },
    /// Derived data of a polygon.
    PolygonInfo {
        #[command(flatten)]
        polygon: PolygonArg,
    },
    /// Writes an SVG of a floor diagram or one of its markings.
    Render {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        delta: i64,
        /// Position of the diagram in the enumeration order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Render this marking of the diagram instead of the diagram itself.
        #[arg(long)]
        marking: Option<usize>,
        #[arg(long)]
        out: std::path::PathBuf,
    },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Domain = 1,
    Mismatch = 2,
    Guard = 3,
}

impl From<&Error> for Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::GuardExceeded(_) => Status::Guard,
            _ => Status::Domain,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Domain as u8
            } else {
                0
            });
        }
    };
    if let Some(n) = cli.max_states {
        std::env::set_var("REFSEV_GUARD_MAX_STATES", n.to_string());
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Domain as u8);
        }
    }
    let status = commands::run(cli.command, cli.format);
    ExitCode::from(status as u8)
}
