use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "apolar",
    version,
    about = "Inverse systems, Hilbert functions and Lefschetz properties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Ring variables in order, comma separated. Names x0, x1, x2 and u, v
    /// mark the two blocks of a Perazzo form.
    #[arg(long, global = true, default_value = "x0,x1,x2,u,v")]
    pub vars: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Coefficient bound for sampled forms.
    #[arg(long, global = true, default_value_t = apolar::DEFAULT_BOUND)]
    pub bound: u64,

    /// Worker threads for survey (default: logical cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Largest accepted degree (overrides the default guard).
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,

    /// Include matrices in the report.
    #[arg(long, global = true)]
    pub matrix: bool,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Polynomial, e.g. "x0*u^2 + x1*u*v + x2*v^2".
    pub expr: Option<String>,

    /// Read the polynomial from a UTF-8 file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert function of A_f (with the rank bounds for Perazzo forms).
    Hvector {
        #[command(flatten)]
        input: Input,
    },
    /// Basis of the annihilator in one degree.
    Ann {
        #[command(flatten)]
        input: Input,
        #[arg(long, short = 't')]
        degree: u32,
    },
    /// Weak Lefschetz property.
    Wlp {
        #[command(flatten)]
        input: Input,
    },
    /// Strong Lefschetz property (via higher Hessians).
    Slp {
        #[command(flatten)]
        input: Input,
    },
    /// Higher Hessian of a given order.
    Hessian {
        #[command(flatten)]
        input: Input,
        #[arg(long, short = 't')]
        order: u32,
    },
    /// Classification of a Perazzo form of degree at least 5.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Waring and border rank of a binary form.
    Waring {
        #[command(flatten)]
        input: Input,
        /// Also test membership in the r-th secant variety.
        #[arg(long)]
        secant: Option<usize>,
    },
    /// Algebraic relation among p0, p1, p2 of a Perazzo form.
    Relation {
        #[command(flatten)]
        input: Input,
        /// Largest relation degree to search (default: deg f - 1).
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Sample Perazzo forms and tabulate Hilbert functions and verdicts.
    Survey {
        /// Degree range, e.g. 5..9 or 6.
        #[arg(long, default_value = "4..8")]
        degrees: String,
        /// Random samples per degree.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Sample with g = 0.
        #[arg(long)]
        no_g: bool,
        /// Add the three normal forms with minimal Hilbert function for
        /// each degree from 5 on.
        #[arg(long)]
        normal_forms: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Hvector { .. } => "hvector",
            Command::Ann { .. } => "ann",
            Command::Wlp { .. } => "wlp",
            Command::Slp { .. } => "slp",
            Command::Hessian { .. } => "hessian",
            Command::Classify { .. } => "classify",
            Command::Waring { .. } => "waring",
            Command::Relation { .. } => "relation",
            Command::Survey { .. } => "survey",
        }
    }
}

/// `"5..9"`, `"5..=9"` or `"6"`, inclusive on both ends.
pub fn parse_degrees(text: &str) -> Option<(u32, u32)> {
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let lo: u32 = lo.trim().parse().ok()?;
    let hi: u32 = hi.trim().parse().ok()?;
    (lo <= hi).then_some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("5..9"), Some((5, 9)));
        assert_eq!(parse_degrees("5..=9"), Some((5, 9)));
        assert_eq!(parse_degrees(" 6 "), Some((6, 6)));
        assert_eq!(parse_degrees("9..5"), None);
        assert_eq!(parse_degrees("a..5"), None);
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
