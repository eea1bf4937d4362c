use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dsl::{ContextSpec, Naming};

#[derive(Debug, Parser)]
#[command(name = "jetvar", version, about = "Exact variational bicomplex, Weil and Gelfand-Fuks cohomology, anomaly polynomials")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Exit with code 4 when the verdict is negative (not variational, not
    /// equivalent, obstructed).
    #[arg(long, global = true)]
    pub check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler-Lagrange source form of a Lagrangian.
    El {
        file: PathBuf,
        #[command(flatten)]
        context: ContextArgs,
    },
    /// Helmholtz form of a source form (or of the Euler-Lagrange form of a Lagrangian).
    Helmholtz {
        file: PathBuf,
        #[command(flatten)]
        context: ContextArgs,
    },
    /// Whether two forms of degree n + k have the same functional.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        context: ContextArgs,
    },
    /// Relative cohomology of a (truncated) Weil algebra.
    Weil {
        /// gl<n>, so<n>, so3 or abelian<n>.
        #[arg(long)]
        algebra: String,
        /// trivial (or 0), full (or the algebra's own name), or so for so(n) in gl(n).
        #[arg(long, default_value = "trivial")]
        rel: String,
        #[arg(long, value_parser = parse_degrees, default_value = "0..6")]
        degrees: RangeInclusive<u32>,
        /// Drop symmetric words of polynomial degree above this.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Cohomology of WO_n.
    Wo {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_degrees, default_value = "0..6")]
        degrees: RangeInclusive<u32>,
    },
    /// Relative Gelfand-Fuks cohomology of formal vector fields, per weight.
    Gf {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GfRelative::Trivial)]
        rel: GfRelative,
        #[arg(long, value_parser = parse_degrees, default_value = "0..4")]
        degrees: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_weights, allow_hyphen_values = true, default_value = "0..0")]
        weights: RangeInclusive<i32>,
        /// Gauge algebra, e.g. abelian1 or so3.
        #[arg(long)]
        gauge: Option<String>,
    },
    /// Symbolic identity suites on the metric and connection models.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Gauge algebra for the connection suites.
        #[arg(long, default_value = "abelian1")]
        gauge: String,
        /// Parameter truncation for the cartan suite.
        #[arg(long, default_value_t = 3)]
        truncation: u32,
    },
    /// Gravitational anomaly polynomial P.
    Anomaly {
        #[arg(long)]
        n: u32,
        /// e.g. trivial:1, vector, dirac, trivial:2+dirac.
        #[arg(long)]
        rep: String,
    },
    /// Mixed anomaly polynomial Q and its bidegree components.
    Mixed {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        rep: String,
        /// Gauge group: u<N> or so<N>.
        #[arg(long, default_value = "u1")]
        group: String,
        /// Gauge representation, e.g. charge:1 or vector.
        #[arg(long)]
        gauge: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GfRelative {
    Trivial,
    So,
    Gl,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma15,
    Lemma20,
    Prop14,
    Cartan,
    Bianchi,
}

/// Jet context of DSL input; anything unset is inferred from the symbols.
#[derive(Clone, Debug, Default, Args)]
pub struct ContextArgs {
    /// Base dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of fields (generic naming).
    #[arg(long)]
    pub m: Option<usize>,
    /// generic, metric or connection:<dim>.
    #[arg(long, value_parser = parse_naming)]
    pub naming: Option<Naming>,
}

impl ContextArgs {
    pub fn spec(&self) -> ContextSpec {
        ContextSpec { n: self.n, m: self.m, naming: self.naming }
    }
}

fn parse_naming(s: &str) -> Result<Naming, String> {
    match s {
        "generic" => Ok(Naming::Generic),
        "metric" => Ok(Naming::Metric),
        _ => {
            let dim = s.strip_prefix("connection:").ok_or_else(|| format!("expected generic, metric or connection:<dim>, got `{s}`"))?;
            dim.parse().map(Naming::Connection).map_err(|_| format!("bad algebra dimension `{dim}`"))
        }
    }
}

fn split_range(s: &str) -> Result<(&str, &str), String> {
    s.split_once("..").ok_or_else(|| format!("expected an inclusive range `a..b`, got `{s}`"))
}

pub fn parse_degrees(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = split_range(s)?;
    let lo: u32 = a.trim().parse().map_err(|_| format!("bad degree `{a}`"))?;
    let hi: u32 = b.trim().parse().map_err(|_| format!("bad degree `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

pub fn parse_weights(s: &str) -> Result<RangeInclusive<i32>, String> {
    let (a, b) = split_range(s)?;
    let lo: i32 = a.trim().parse().map_err(|_| format!("bad weight `{a}`"))?;
    let hi: i32 = b.trim().parse().map_err(|_| format!("bad weight `{b}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}
