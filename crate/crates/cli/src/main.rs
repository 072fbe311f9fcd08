use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cch_cli::commands::{self, Rendered};
use cch_cli::doc::{parse_rational, Document, Parameters};
use cch_cli::{CliError, Format};
use cch_core::building::Budgets;
use cch_core::chain::Variant;
use cch_core::orbit::Rational;

/// Conley-Zehnder gradings, dynamical classification, building enumeration
/// and cylindrical contact homology from combinatorial Reeb-orbit data.
#[derive(Parser)]
#[command(name = "cch", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Minus,
    Plus,
}

#[derive(Subcommand)]
enum Command {
    /// Index, grading, parity, goodness, action and class per orbit iterate.
    Cz {
        /// Input document (JSON).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Largest iterate per orbit.
        #[arg(long)]
        k_max: Option<u32>,
    },
    /// Dynamical convexity and separation with violation witnesses.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Largest iterate per orbit.
        #[arg(long)]
        k_max: Option<u32>,
        /// Only test separation below this action threshold, "P/Q".
        #[arg(long)]
        action_cap: Option<String>,
    },
    /// Admissible degenerations at a fixed total index.
    Buildings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Total Fredholm index of the buildings.
        #[arg(long)]
        target_index: Option<i64>,
        /// Unmatched negative ends at the bottom level (0 or 1).
        #[arg(long)]
        negative_ends: Option<u32>,
        /// Search budgets "levels,cover-degree,branch,components-per-level".
        #[arg(long)]
        budgets: Option<String>,
        /// Override the document's action cap, "P/Q".
        #[arg(long)]
        action_cap: Option<String>,
    },
    /// Chain groups, differential and homology ranks over a degree window.
    Homology {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Inclusive degree window "LO..HI".
        #[arg(long)]
        degrees: Option<String>,
        /// Override the document's action cap, "P/Q".
        #[arg(long)]
        action_cap: Option<String>,
        /// Which weighted differential to use.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// The fixed two-ellipsoid grading comparison table.
    Cobordism {
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
}

fn load(path: &PathBuf) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Document::parse(&text)
}

fn params(doc: &Document) -> Parameters {
    doc.parameters.clone().unwrap_or_default()
}

fn resolve_cap(flag: &Option<String>, from_doc: &Option<String>) -> Result<Option<Rational>, CliError> {
    match (flag, from_doc) {
        (Some(s), _) => parse_rational(s, "--action-cap").map(Some),
        (None, Some(s)) => parse_rational(s, "parameters.action_cap").map(Some),
        (None, None) => Ok(None),
    }
}

fn parse_degrees(s: &str, path: &str) -> Result<(i64, i64), CliError> {
    let err = || CliError::Input(format!("{path}: expected \"LO..HI\" (got `{s}`)"));
    let (lo, hi) = s.split_once("..").ok_or_else(err)?;
    Ok((lo.trim().parse().map_err(|_| err())?, hi.trim().parse().map_err(|_| err())?))
}

fn parse_budgets(s: &str, path: &str) -> Result<Budgets, CliError> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("{path}: expected four integers \"L,D,B,C\" (got `{s}`)")))?;
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "{path}: expected four integers \"L,D,B,C\" (got `{s}`)"
        )));
    }
    Ok(Budgets {
        max_levels: parts[0],
        max_cover_degree: parts[1],
        max_branch: parts[2],
        max_components_per_level: parts[3],
    })
}

const DEFAULT_BUDGETS: Budgets =
    Budgets { max_levels: 4, max_cover_degree: 6, max_branch: 4, max_components_per_level: 8 };

fn run(cli: Cli) -> Result<Rendered, CliError> {
    match cli.command {
        Command::Cz { input, format, k_max } => {
            let doc = load(&input)?;
            let p = params(&doc);
            let k_max = k_max.or(p.k_max).unwrap_or(10);
            commands::cmd_cz(&doc, k_max, fmt(format))
        }
        Command::Classify { input, format, k_max, action_cap } => {
            let doc = load(&input)?;
            let p = params(&doc);
            let k_max = k_max.or(p.k_max).unwrap_or(100);
            let cap = resolve_cap(&action_cap, &p.action_cap)?;
            commands::cmd_classify(&doc, k_max, cap.as_ref(), fmt(format))
        }
        Command::Buildings { input, format, target_index, negative_ends, budgets, action_cap } => {
            let doc = load(&input)?;
            let p = params(&doc);
            let target = target_index.or(p.target_index).unwrap_or(2);
            let ends = negative_ends.or(p.negative_ends).unwrap_or(1);
            let budgets = match (&budgets, &p.budgets) {
                (Some(s), _) => parse_budgets(s, "--budgets")?,
                (None, Some((l, d, b, c))) => Budgets {
                    max_levels: *l,
                    max_cover_degree: *d,
                    max_branch: *b,
                    max_components_per_level: *c,
                },
                (None, None) => DEFAULT_BUDGETS,
            };
            let cap = resolve_cap(&action_cap, &p.action_cap)?;
            commands::cmd_buildings(&doc, target, ends, budgets, cap.as_ref(), fmt(format))
        }
        Command::Homology { input, format, degrees, action_cap, variant } => {
            let doc = load(&input)?;
            let p = params(&doc);
            let degrees = match (&degrees, &p.degrees) {
                (Some(s), _) => parse_degrees(s, "--degrees")?,
                (None, Some(d)) => *d,
                (None, None) => (0, 40),
            };
            let cap = resolve_cap(&action_cap, &p.action_cap)?;
            let variant = match variant {
                Some(VariantArg::Plus) => Variant::Plus,
                Some(VariantArg::Minus) => Variant::Minus,
                None => match p.variant.as_deref() {
                    Some("plus") => Variant::Plus,
                    Some("minus") | None => Variant::Minus,
                    Some(other) => {
                        return Err(CliError::Input(format!(
                            "parameters.variant: expected \"minus\" or \"plus\" (got `{other}`)"
                        )))
                    }
                },
            };
            commands::cmd_homology(&doc, degrees, variant, cap.as_ref(), fmt(format))
        }
        Command::Cobordism { format } => commands::cmd_cobordism(fmt(format)),
    }
}

fn fmt(f: FormatArg) -> Format {
    match f {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(rendered) => {
            print!("{}", rendered.text);
            ExitCode::from(rendered.exit as u8)
        }
        Err(e) => {
            eprintln!("cch: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
