//! Command-line front end. Every subcommand prints one JSON document (or CSV
//! for gradient series) on stdout.
//!
//! Exit codes: 0 on success, 1 for malformed invocations, 2 for domain
//! errors such as a missing conjecture flag or an exceeded cap.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::autos::{d_orbit, matrix_a, matrix_c, DEFAULT_ORBIT_CAP};
use crate::charspace::{in_sigma_m, kernel_finiteness, Character, SpherePoint, DEFAULT_M_MAX};
use crate::complexes::{bound_report, cells_for_subgroup_f, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::gradients::{
    chi_m_gradient_series, deficiency_gradient_series, rank_gradient_series, GradientSeries,
};
use crate::lattices::{enumerate_subgroups, hnf, ChainSpec, SubgroupLattice, DEFAULT_ENUMERATION_CAP};
use crate::plrep::evaluate_word;
use crate::words::{are_equal, multiply, normal_form, GroupWord};

/// Environment variable bounding `--max-index` for subgroup enumeration.
pub const MAX_INDEX_ENV: &str = "THOMPSON_SIGMA_MAX_INDEX";

#[derive(Parser, Debug)]
#[command(name = "thompson-sigma", version, about = "Exact computations in the groups F(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Arity {
    /// Family parameter n >= 2.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a word.
    Normalize {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Normal form of a product of two words.
    Mul {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Whether two words represent the same element.
    Eq {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Breakpoints of the piecewise-linear map of a word.
    EvalPl {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Membership of a character class in Sigma^m.
    Sigma {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        assume_sigma_m: bool,
    },
    /// Finiteness type of the subgroup generated by G' and lattice rows.
    ClassifyKernel {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long, default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
        #[arg(long)]
        assume_sigma_m: bool,
    },
    /// Matrix of phi (A) or mu (C) on characters.
    AutoMatrix {
        #[command(flatten)]
        arity: Arity,
        #[arg(long)]
        which: Which,
    },
    /// Orbit of a character class under the automorphisms.
    Orbit {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// All subgroups of index at most k, as HNF rows.
    Subgroups {
        #[command(flatten)]
        arity: Arity,
        #[arg(long)]
        max_index: u64,
    },
    /// Cell counts of a K(H,1) for a finite-index subgroup of F.
    Cells {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        m: usize,
    },
    /// Generator, deficiency and chi_m bounds for a finite-index subgroup.
    Bounds {
        #[command(flatten)]
        arity: Arity,
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        m: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d0_override: Option<u64>,
    },
    /// Gradient series along a chain of subgroups.
    Gradient {
        #[command(flatten)]
        arity: Arity,
        #[arg(long)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value = "scaling:2")]
        chain: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        d0_override: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Rg,
    Dg,
    Chi,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Output {
    Json(Value),
    Text(String),
}

fn word(n: usize, text: &str) -> Result<GroupWord> {
    GroupWord::parse(n, text)
}

fn lattice(n: usize, text: &str) -> Result<SubgroupLattice> {
    hnf(n, &SubgroupLattice::parse_rows(n, text)?)
}

fn character(n: usize, text: &str) -> Result<Character> {
    let chi = Character::parse(text)?;
    if chi.arity() != n {
        return Err(Error::ArityMismatch { left: n, right: chi.arity() });
    }
    Ok(chi)
}

fn max_index_cap() -> Result<u64> {
    match std::env::var(MAX_INDEX_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{MAX_INDEX_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_CAP),
    }
}

fn execute(cmd: Command) -> Result<Output> {
    let out = match cmd {
        Command::Normalize { arity, word: w } => json!(normal_form(&word(arity.n, &w)?)?.to_string()),
        Command::Mul { arity, left, right } => {
            let (l, r) = (normal_form(&word(arity.n, &left)?)?, normal_form(&word(arity.n, &right)?)?);
            json!(multiply(&l, &r)?.reduced().to_string())
        }
        Command::Eq { arity, left, right } => {
            json!({"equal": are_equal(&word(arity.n, &left)?, &word(arity.n, &right)?)?})
        }
        Command::EvalPl { arity, word: w } => evaluate_word(&word(arity.n, &w)?)?.to_json(),
        Command::Sigma { arity, chi, m, assume_sigma_m } => {
            json!({"inSigma": in_sigma_m(&character(arity.n, &chi)?, m, assume_sigma_m)?})
        }
        Command::ClassifyKernel { arity, lattice: rows, m_max, assume_sigma_m } => {
            let rows = SubgroupLattice::parse_rows(arity.n, &rows)?;
            kernel_finiteness(arity.n, &rows, m_max, assume_sigma_m)?.to_json()
        }
        Command::AutoMatrix { arity, which } => match which {
            Which::A => matrix_a(arity.n)?.to_json(),
            Which::C => matrix_c(arity.n)?.to_json(),
        },
        Command::Orbit { arity, chi, cap } => {
            let p = SpherePoint::new(&character(arity.n, &chi)?)?;
            let orbit = d_orbit(&p, cap)?;
            Value::Array(orbit.iter().map(|p| p.character().to_json()).collect())
        }
        Command::Subgroups { arity, max_index } => {
            let cap = max_index_cap()?;
            if max_index > cap {
                return Err(Error::ResourceCap(format!("max index {max_index} exceeds {MAX_INDEX_ENV}={cap}")));
            }
            let all = enumerate_subgroups(arity.n, max_index, DEFAULT_ENUMERATION_CAP)?;
            Value::Array(all.iter().map(SubgroupLattice::to_json).collect())
        }
        Command::Cells { arity, lattice: rows, m } => {
            let l = lattice(arity.n, &rows)?;
            let (cells, tag) = cells_for_subgroup_f(&l)?;
            let mut v = cells.to_json(m)?;
            v["case"] = json!(tag.as_str());
            v
        }
        Command::Bounds { arity, lattice: rows, m, d0_override } => {
            let mut report = bound_report(&lattice(arity.n, &rows)?, m)?;
            report.d_upper = report.d_upper.resolve(d0_override);
            report.to_json()
        }
        Command::Gradient { arity, kind, m, chain, steps, format, d0_override } => {
            let spec = ChainSpec::parse(&chain, steps)?;
            let series: GradientSeries = match kind {
                Kind::Rg => rank_gradient_series(&spec, arity.n, d0_override)?,
                Kind::Dg => deficiency_gradient_series(&spec, arity.n)?,
                Kind::Chi => chi_m_gradient_series(&spec, m, arity.n)?,
            };
            return Ok(match format {
                Format::Json => Output::Json(series.to_json()),
                Format::Csv => Output::Text(series.to_csv()),
            });
        }
    };
    Ok(Output::Json(out))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Ok(Output::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                1
            } else {
                2
            }
        }
    }
}
