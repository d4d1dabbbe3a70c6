//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failed, 2 parse error, 3 limit
//! exceeded, 4 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use qsg_core::algebra::{corner_data, dimension, dimension_oracle_with_cap, Which, DEFAULT_ORACLE_CAP};
use qsg_core::{
    admissible_special_sets, build_g_pair, build_sg_presentation, build_sp_pair, validate_skewed_gentle, Error,
    SkewedGentleTriple,
};

use crate::dot;
use crate::dsl::{self, DslError};
use crate::report::{self, InvariantReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

pub const CAP_VAR: &str = "QSG_ORACLE_CAP";

#[derive(Parser, Debug)]
#[command(name = "qsg", version, about = "Gentle and skewed-gentle bound quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the gentle and skewed-gentle conditions
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a derived quiver
    Construct {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cycles, singularity descriptors and global dimension flags
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also report dimensions, cross-checked against the oracle
        #[arg(long)]
        dims: bool,
    },
    /// Dimension of one of the three algebras
    Dim {
        file: PathBuf,
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Cross-check against the brute-force oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Corner data for removing one special vertex
    Reduce {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        json: bool,
    },
    /// Special sets that make the pair skewed-gentle
    Spset { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Target {
    Sp,
    Sg,
    G,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Algebra {
    Gentle,
    Sg,
    G,
}

impl From<Algebra> for Which {
    fn from(a: Algebra) -> Which {
        match a {
            Algebra::Gentle => Which::Gentle,
            Algebra::Sg => Which::Sg,
            Algebra::G => Which::G,
        }
    }
}

/// A failure with its exit code; the message goes to the error stream.
struct Failure {
    code: i32,
    message: String,
    /// Data already produced before the failure.
    output: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            output: String::new(),
        }
    }
}

fn core_failure(e: Error) -> Failure {
    let code = match e {
        Error::LimitExceeded { .. } => EXIT_LIMIT,
        Error::NotSpecial(_) | Error::UnknownVertex(_) => EXIT_USAGE,
        _ => EXIT_INVALID,
    };
    Failure::new(code, format!("error: {e}"))
}

fn load(path: &Path) -> Result<SkewedGentleTriple, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("error: cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::new(EXIT_PARSE, format!("{}: error: file is not valid UTF-8", path.display())))?;
    dsl::parse(&text).map_err(|e| {
        let kind = match e {
            DslError::Parse { .. } => "parse error",
            DslError::Integrity { .. } => "integrity error",
        };
        Failure::new(EXIT_PARSE, format!("{}:{}: {kind}: {}", path.display(), e.span(), strip_span(&e)))
    })
}

fn strip_span(e: &DslError) -> String {
    match e {
        DslError::Parse { message, .. } => message.clone(),
        DslError::Integrity { source, .. } => source.to_string(),
    }
}

fn oracle_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_USAGE, format!("error: {CAP_VAR} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn require_valid(t: &SkewedGentleTriple) -> Result<(), Failure> {
    let r = validate_skewed_gentle(t);
    if r.skewed_gentle {
        return Ok(());
    }
    let mut msg = format!("error: {} is not a skewed-gentle triple", t.name());
    for v in &r.violations {
        msg.push_str(&format!("\n  violation {}: {}", v.rule, v.items.join(" ")));
    }
    Err(Failure::new(EXIT_INVALID, msg))
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = report::to_json_string(v);
    s.push('\n');
    s
}

/// Output text plus exit code for a successfully dispatched command.
fn execute(cmd: Command) -> Result<(String, i32), Failure> {
    match cmd {
        Command::Validate { file, json } => {
            let t = load(&file)?;
            let r = validate_skewed_gentle(&t);
            let code = if r.skewed_gentle { EXIT_OK } else { EXIT_INVALID };
            let out = if json {
                json_line(&report::validation_json(t.name(), &r))
            } else {
                report::validation_text(t.name(), &r)
            };
            Ok((out, code))
        }
        Command::Construct { file, target, format } => {
            let t = load(&file)?;
            require_valid(&t)?;
            let out = match target {
                Target::Sp => {
                    let sp = build_sp_pair(&t).map_err(core_failure)?;
                    let name = format!("{}_sp", t.name());
                    let none = Default::default();
                    match format {
                        Format::Text => {
                            let as_triple = SkewedGentleTriple::new(name, sp, Vec::<String>::new()).map_err(core_failure)?;
                            format!("{}\n", dsl::serialize(&as_triple))
                        }
                        Format::Dot => dot::pair_to_dot(&name, &sp, t.special()),
                        Format::Json => json_line(&report::pair_json(&name, &sp, &none)),
                    }
                }
                Target::G => {
                    let g = build_g_pair(&t).map_err(core_failure)?;
                    let name = format!("{}_g", t.name());
                    let none = Default::default();
                    match format {
                        Format::Text => format!("{}\n", dsl::serialize(&g.to_triple(name))),
                        Format::Dot => dot::pair_to_dot(&name, &g.pair, t.special()),
                        Format::Json => json_line(&report::pair_json(&name, &g.pair, &none)),
                    }
                }
                Target::Sg => {
                    let p = build_sg_presentation(&t).map_err(core_failure)?;
                    let name = format!("{}_sg", t.name());
                    match format {
                        Format::Text => report::sg_text(&name, &p),
                        Format::Dot => dot::sg_to_dot(&name, &p),
                        Format::Json => json_line(&report::sg_json(&name, &p)),
                    }
                }
            };
            Ok((out, EXIT_OK))
        }
        Command::Invariants { file, json, dims } => {
            let t = load(&file)?;
            require_valid(&t)?;
            let mut r = InvariantReport::compute(&t).map_err(core_failure)?;
            if dims {
                r = r.with_dims(&t, oracle_cap()?).map_err(core_failure)?;
            }
            let out = if json { json_line(&r.to_json()) } else { r.to_text() };
            let capped = r.dims.as_ref().is_some_and(|d| d.sg_oracle.is_none());
            if capped {
                return Err(Failure {
                    code: EXIT_LIMIT,
                    message: "error: oracle path cap exceeded; sg dimension not cross-checked".into(),
                    output: out,
                });
            }
            Ok((out, EXIT_OK))
        }
        Command::Dim { file, algebra, oracle } => {
            let t = load(&file)?;
            require_valid(&t)?;
            let which = Which::from(algebra);
            let d = dimension(&t, which).map_err(core_failure)?;
            if !oracle {
                return Ok((format!("{d}\n"), EXIT_OK));
            }
            let o = dimension_oracle_with_cap(&t, which, oracle_cap()?).map_err(core_failure)?;
            if o != d {
                return Err(Failure::new(
                    EXIT_INVALID,
                    format!("error: {which} dimension {d} differs from oracle dimension {o}"),
                ));
            }
            Ok((format!("{d} (oracle {o})\n"), EXIT_OK))
        }
        Command::Reduce { file, vertex, json } => {
            let t = load(&file)?;
            require_valid(&t)?;
            let c = corner_data(&t, &vertex).map_err(core_failure)?;
            let out = if json { json_line(&report::corner_json(&c)) } else { report::corner_text(&c) };
            let code = if c.all_hold() { EXIT_OK } else { EXIT_INVALID };
            Ok((out, code))
        }
        Command::Spset { file } => {
            let t = load(&file)?;
            let sets = admissible_special_sets(t.pair()).map_err(core_failure)?;
            let mut out = String::new();
            for s in sets {
                out.push('{');
                out.push_str(&s.into_iter().collect::<Vec<_>>().join(", "));
                out.push_str("}\n");
            }
            Ok((out, EXIT_OK))
        }
    }
}

/// Runs one command. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = out.write_all(f.output.as_bytes());
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}
