mod ops;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use ops::Report;

#[derive(Parser, Debug)]
#[command(
    name = "nakarep",
    version,
    about = "Exact computations with continuous Nakayama representations"
)]
struct Cli {
    /// Emit a JSON envelope instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    Line,
    Circle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a profile file for violations
    Validate { profile: PathBuf },
    /// Summarize a profile; with --at, evaluate K and kappa
    Info {
        profile: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Iterate K starting from a point
    Orbit {
        profile: PathBuf,
        #[arg(allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Separation points (one period on the circle)
    Seps { profile: PathBuf },
    /// Least separation point strictly right of c
    NextSep {
        profile: PathBuf,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Orthogonal components of a profile
    Components { profile: PathBuf },
    /// Component containing a compatible module
    Component { profile: PathBuf, interval: String },
    /// Push a profile forward along a homeomorphism
    Pushforward { profile: PathBuf, homeo: PathBuf },
    /// Check that a homeomorphism conjugates two profiles
    Conjugate {
        homeo: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// Carry a line profile to its standard domain
    Normalize { profile: PathBuf },
    /// Is the interval module compatible with the profile
    Compat { profile: PathBuf, interval: String },
    /// Indecomposable projective with top at t
    Projective {
        profile: PathBuf,
        #[arg(allow_hyphen_values = true)]
        t: String,
        /// Use an open left end
        #[arg(long)]
        open: bool,
    },
    /// Is the interval module projective
    IsProjective { profile: PathBuf, interval: String },
    /// Dimension of the Hom space from source to target
    Hom {
        space: SpaceArg,
        source: String,
        target: String,
    },
    /// Dimension of the endomorphism algebra
    End { space: SpaceArg, interval: String },
    /// Is the module a brick
    Brick { space: SpaceArg, interval: String },
    /// Image, kernel and cokernel of a scalar morphism
    Morphism {
        source: String,
        target: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        coeff: String,
    },
    /// Projective cover and first syzygy
    Cover { profile: PathBuf, interval: String },
    /// Minimal projective resolution
    Resolve {
        profile: PathBuf,
        interval: String,
        /// Number of covers to compute before giving up (default from NAKAREP_CAP)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Image of an interval module under a homeomorphism
    Transport { homeo: PathBuf, interval: String },
    /// Evaluate a map file at a point
    Eval {
        map: PathBuf,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Left limit of a map file at a point
    LeftLimit {
        map: PathBuf,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Composition f after g of two map files
    Compose { f: PathBuf, g: PathBuf },
    /// Inverse of a homeomorphism file
    Invert { homeo: PathBuf },
    /// Compare two map files as functions
    Equals { f: PathBuf, g: PathBuf },
    /// Left intersection of two intervals
    Intersect { u: String, v: String },
    /// Translate an interval by an integer
    Translate {
        interval: String,
        #[arg(allow_hyphen_values = true)]
        by: i64,
    },
    /// Does the first interval contain the second
    Contains { u: String, v: String },
    /// Canonical lift of a circle string
    Lift { interval: String },
    /// Check a Kupisch series
    SeriesCheck { series: String },
    /// Profile associated with a Kupisch series
    SeriesProfile { series: String },
    /// Embed a discrete module as a circle string
    Embed { series: String, module: String },
    /// Recover a discrete module from a grid-aligned string
    Extract { series: String, interval: String },
    /// Hom dimension between discrete modules
    Dhom {
        series: String,
        source: String,
        target: String,
    },
    /// Algebra dimension from its projectives
    Algdim { series: String },
    /// CSV samples of t, K(t), kappa(t)
    ExportPlot {
        profile: PathBuf,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(2..))]
        samples: u32,
        /// Fractional digits in the decimal columns
        #[arg(long, default_value_t = 6)]
        digits: usize,
        /// Left end of the sampled window (needed for unbounded domains)
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        /// Right end of the sampled window
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
    },
}

/// Subcommands and the library operation each one runs.
pub const DISPATCH: &[(&str, &str)] = &[
    ("validate", "validate_profile"),
    ("info", "kappa_at"),
    ("orbit", "orbit"),
    ("seps", "separation_points"),
    ("next-sep", "next_separation"),
    ("components", "components"),
    ("component", "component_of"),
    ("pushforward", "push_forward"),
    ("conjugate", "verify_conjugacy"),
    ("normalize", "normalize_profile"),
    ("compat", "is_compatible"),
    ("projective", "projective_at"),
    ("is-projective", "is_projective"),
    ("hom", "hom_dim"),
    ("end", "end_dim"),
    ("brick", "is_brick"),
    ("morphism", "morphism_analyze"),
    ("cover", "projective_cover"),
    ("resolve", "projective_resolution"),
    ("transport", "map_module"),
    ("eval", "eval"),
    ("left-limit", "left_limit"),
    ("compose", "compose"),
    ("invert", "invert"),
    ("equals", "equals"),
    ("intersect", "left_intersect"),
    ("translate", "translate"),
    ("contains", "contains"),
    ("lift", "canonical_lift"),
    ("series-check", "validate_series"),
    ("series-profile", "associated_kupisch"),
    ("embed", "embed_module"),
    ("extract", "extract_module"),
    ("dhom", "discrete_hom_dim"),
    ("algdim", "algebra_dim_check"),
    ("export-plot", "export_plot"),
];

/// Every operation the library offers to callers.
pub const LIBRARY_OPS: &[&str] = &[
    "eval",
    "left_limit",
    "compose",
    "invert",
    "equals",
    "left_intersect",
    "translate",
    "contains",
    "canonical_lift",
    "validate_profile",
    "kappa_at",
    "orbit",
    "separation_points",
    "next_separation",
    "components",
    "push_forward",
    "verify_conjugacy",
    "normalize_profile",
    "is_compatible",
    "projective_at",
    "is_projective",
    "hom_dim",
    "end_dim",
    "is_brick",
    "morphism_analyze",
    "projective_cover",
    "projective_resolution",
    "map_module",
    "component_of",
    "validate_series",
    "associated_kupisch",
    "embed_module",
    "extract_module",
    "discrete_hom_dim",
    "algebra_dim_check",
    "export_plot",
];

#[derive(Serialize)]
struct Envelope<'a> {
    status: &'a str,
    command: &'a str,
    payload: Value,
}

fn emit_json(status: &str, command: &str, payload: Value) {
    let env = Envelope {
        status,
        command,
        payload,
    };
    println!("{}", serde_json::to_string_pretty(&env).expect("serializable envelope"));
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let command = matches.subcommand_name().unwrap_or_default().to_string();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };

    match ops::run(cli.command) {
        Ok(Report { text, payload, code }) => {
            if cli.json {
                emit_json(if code == 0 { "ok" } else { "error" }, &command, payload);
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("nakarep {command}: {}", failure.message());
            if cli.json {
                emit_json("error", &command, failure.payload());
            }
            ExitCode::from(failure.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn dispatch_covers_every_library_operation_once() {
        let ops: Vec<&str> = DISPATCH.iter().map(|(_, op)| *op).collect();
        for op in LIBRARY_OPS {
            let n = ops.iter().filter(|o| *o == op).count();
            assert_eq!(n, 1, "{op} is reachable from {n} subcommands");
        }
        let known: BTreeSet<&str> = LIBRARY_OPS.iter().copied().collect();
        for op in &ops {
            assert!(known.contains(op), "{op} is not a library operation");
        }
    }

    #[test]
    fn dispatch_table_matches_subcommands() {
        let cmd = Cli::command();
        let names: BTreeSet<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
        let table: BTreeSet<String> = DISPATCH.iter().map(|(c, _)| c.to_string()).collect();
        assert_eq!(names, table);
        assert_eq!(DISPATCH.len(), table.len());
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
