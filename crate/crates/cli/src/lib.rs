//! Command line driver for `crsym`.
//!
//! [`run`] parses arguments, executes one subcommand and returns what would be
//! written to stdout and stderr together with the exit code, so the binary and
//! the tests share one code path.

pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crsym_core::{
    anchor_index, classify, equivalent, is_automorphism, is_weakly_spherical, model_of, normalize,
    parse_map, parse_surface, prepare, pushforward, special_normalize, ClassifyOptions, CrError,
    Hypersurface, WeightedSeries,
};
use thiserror::Error;

use report::{
    CertificateReport, ErrorReport, Invariants, MapCheckReport, MapReport, NormalFormReport,
    Provenance, Report, SeriesReport, SpecialReport, SymmetryReport,
};

/// Exit codes. Stable; documented in the README.
pub mod exit {
    pub const OK: i32 = 0;
    /// Malformed command line (clap's own code).
    pub const USAGE: i32 = 2;
    /// Input file could not be read.
    pub const IO: i32 = 3;
    /// Syntax error, negative exponent or non-real expression.
    pub const PARSE: i32 = 4;
    /// Not a prepared finite type defining function, or bad grading.
    pub const SURFACE: i32 = 5;
    /// Outside the supported scope: non-circular model, odd k, non-rational phase.
    pub const SCOPE: i32 = 6;
    /// A user supplied map violates the base point normalization.
    pub const MAP: i32 = 7;
    /// The truncation weight is too low for the requested computation.
    pub const TRUNCATION: i32 = 8;
    /// A solver invariant failed (rank defect, non-affine mu, inconsistent stabilizer).
    pub const SOLVER: i32 = 9;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CrError),
}

impl CliError {
    pub fn class(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => core_class(e).0,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(e) => core_class(e).1,
        }
    }
}

fn core_class(e: &CrError) -> (&'static str, i32) {
    use CrError::*;
    match e {
        Parse(_) => ("ParseError", exit::PARSE),
        NegativeExponent(..) => ("NegativeExponent", exit::PARSE),
        RealityViolation(_) => ("RealityViolation", exit::PARSE),
        InvalidGrading { .. } => ("InvalidGrading", exit::SURFACE),
        GradingMismatch(..) => ("GradingMismatch", exit::SURFACE),
        NotWeightFiltered => ("NotWeightFiltered", exit::SURFACE),
        NotPrepared(_) => ("NotPrepared", exit::SURFACE),
        NotFiniteType => ("NotFiniteType", exit::SURFACE),
        LeadingCoefficient => ("LeadingCoefficient", exit::SURFACE),
        NotCircular => ("NotCircular", exit::SCOPE),
        KappaUndefined => ("KappaUndefined", exit::SCOPE),
        NonRationalPhase(_) => ("NonRationalPhase", exit::SCOPE),
        OddType(_) => ("OddType", exit::SCOPE),
        OutOfScope(_) => ("OutOfScope", exit::SCOPE),
        MapNormalization(_) => ("MapNormalization", exit::MAP),
        SingularLinearPart => ("SingularLinearPart", exit::MAP),
        TruncationTooLow { .. } => ("TruncationTooLow", exit::TRUNCATION),
        ModelSurface => ("ModelSurface", exit::SOLVER),
        RankDefect { .. } => ("RankDefect", exit::SOLVER),
        NonAffine => ("NonAffine", exit::SOLVER),
        DegenerateMu => ("DegenerateMu", exit::SOLVER),
        StabilizerMismatch(_) => ("StabilizerMismatch", exit::SOLVER),
        NotNormalized => ("NotNormalized", exit::SOLVER),
        NotSpecialNormalized => ("NotSpecialNormalized", exit::SOLVER),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "crsym",
    version,
    about = "Exact normal forms, symmetries and equivalence of finite type hypersurfaces v = F(z, zb, u)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Defining function F in z, zb, u (repeat for equiv)
    #[arg(long = "surface", value_name = "EXPR")]
    pub surfaces: Vec<String>,
    /// Read a defining function from a file (repeat for equiv)
    #[arg(long = "file", value_name = "PATH")]
    pub files: Vec<PathBuf>,
    /// Truncation weight W (default 4k)
    #[arg(long, value_name = "INT")]
    pub truncation: Option<u32>,
    /// Declared type k, checked against the detected one
    #[arg(long, value_name = "INT")]
    pub k: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type, essential type, kappa, model and anchor of a prepared surface
    Analyze(Common),
    /// Normal form, normalizing map and the special choice of mu
    Normalize(Common),
    /// Diagonal stability group
    Classify {
        #[command(flatten)]
        common: Common,
        /// Treat a non-circular surface as already in normal coordinates
        #[arg(long)]
        assume_normal: bool,
    },
    /// Decide equivalence of two surfaces
    Equiv(Common),
    /// Push a surface forward by z* = f(z, w), w* = g(z, w)
    VerifyMap {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "EXPR")]
        f: String,
        #[arg(long, value_name = "EXPR")]
        g: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze(_) => "analyze",
            Command::Normalize(_) => "normalize",
            Command::Classify { .. } => "classify",
            Command::Equiv(_) => "equiv",
            Command::VerifyMap { .. } => "verify-map",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Analyze(c) | Command::Normalize(c) | Command::Equiv(c) => c,
            Command::Classify { common, .. } | Command::VerifyMap { common, .. } => common,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read_inputs(c: &Common, expected: usize) -> Result<Vec<String>, CliError> {
    let mut texts = c.surfaces.clone();
    for p in &c.files {
        let t = std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        })?;
        texts.push(t.trim().to_string());
    }
    if texts.len() != expected {
        return Err(CliError::Usage(format!(
            "expected {expected} surface(s) via --surface/--file, got {}",
            texts.len()
        )));
    }
    Ok(texts)
}

fn parse_one(text: &str, c: &Common) -> Result<WeightedSeries, CliError> {
    Ok(parse_surface(text, c.truncation, c.k)?.1)
}

fn analyze(s: &WeightedSeries, report: &mut Report) -> Result<Hypersurface, CliError> {
    let m = prepare(s)?.surface;
    let info = model_of(&m);
    let anchor = anchor_index(&m).ok();
    report.invariants = Some(Invariants::new(
        &info,
        &m.model(),
        m.is_model(),
        is_weakly_spherical(&m),
        anchor.as_ref(),
    ));
    Ok(m)
}

fn execute(cmd: &Command, report: &mut Report) -> Result<(), CliError> {
    let c = cmd.common();
    let n = if matches!(cmd, Command::Equiv(_)) {
        2
    } else {
        1
    };
    let texts = read_inputs(c, n)?;
    let series = texts
        .iter()
        .map(|t| parse_one(t, c))
        .collect::<Result<Vec<_>, _>>()?;
    report.inputs = series.iter().map(SeriesReport::new).collect();
    let trunc = series.iter().map(|s| s.trunc()).min().unwrap_or(0);
    report.provenance = Some(Provenance::new(trunc));
    let s = &series[0];
    match cmd {
        Command::Analyze(_) => {
            analyze(s, report)?;
        }
        Command::Normalize(_) => {
            let m = analyze(s, report)?;
            let r = normalize(&m)?;
            let special = match special_normalize(&r.nf) {
                Ok((_, note)) => SpecialReport {
                    mu: Some(note.mu.to_string()),
                    note: if note.theta_free {
                        "rotation angle free".into()
                    } else {
                        format!(
                            "rotations by multiples of 2pi/{}",
                            note.rotation_order.unwrap_or(1)
                        )
                    },
                },
                Err(CrError::ModelSurface) => SpecialReport {
                    mu: None,
                    note: "model surface; mu is part of the stability group".into(),
                },
                Err(CrError::TruncationTooLow { need, .. }) => SpecialReport {
                    mu: None,
                    note: format!("mu acts from weight {need}, beyond the truncation"),
                },
                Err(e) => return Err(e.into()),
            };
            report.normal_form = Some(NormalFormReport {
                surface: SeriesReport::new(r.nf.series()),
                map: MapReport::new(&r.map),
                special,
            });
        }
        Command::Classify { assume_normal, .. } => {
            analyze(s, report)?;
            let g = classify(
                s,
                ClassifyOptions {
                    assume_normal: *assume_normal,
                },
            )?;
            report.symmetry = Some(SymmetryReport::new(&g));
        }
        Command::Equiv(_) => {
            let cert = equivalent(&series[0], &series[1])?;
            report.certificate = Some(CertificateReport::from(&cert));
        }
        Command::VerifyMap { f, g, .. } => {
            let m = analyze(s, report)?;
            let map = parse_map(f, g, m.k(), m.trunc())?;
            let image = pushforward(&m, &map)?;
            report.map_check = Some(MapCheckReport {
                map: MapReport::new(&map),
                is_automorphism: is_automorphism(&m, &map)?,
                image: SeriesReport::new(image.series()),
            });
        }
    }
    Ok(())
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}

/// Runs one command line (including the program name) to completion.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let format = cli.command.common().format;
    let mut report = Report::new(cli.command.name());
    match execute(&cli.command, &mut report) {
        Ok(()) => Outcome {
            stdout: render(&report, format),
            stderr: String::new(),
            code: exit::OK,
        },
        Err(e) => {
            let code = e.exit_code();
            let message = e.to_string();
            let stderr = format!("error[{}]: {message}\n", e.class());
            report.error = Some(ErrorReport {
                class: e.class().into(),
                exit_code: code,
                message,
            });
            let stdout = if format == Format::Json {
                render(&report, format)
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr,
                code,
            }
        }
    }
}
