//! Reads JSON inputs, dispatches to `casson-core`, and renders reports.

pub mod commands;
pub mod input;
pub mod report;
pub mod sweep;

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use report::{InvariantReport, SweepTable, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONGRUENCE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Module(String),
}

impl CliError {
    pub fn module(e: impl Display) -> Self {
        CliError::Module(e.to_string())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Schema(_) => "schema",
            CliError::Module(_) => "module",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Schema(m) | CliError::Module(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Knot,
    Sphere,
    MappingTorus,
    Floer,
    Torus4,
    CircleBundle,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "casson",
    version,
    about = "Casson-type invariants of homology spheres, mapping tori and homology tori"
)]
pub struct Args {
    pub command: Command,
    /// JSON input file; stdin when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Family for `sweep`.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameters for `sweep`, e.g. `3,5,7` or `3:5,5:7` for torus knots.
    #[arg(long)]
    pub range: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Report(InvariantReport),
    Sweep(SweepTable),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        match self {
            Output::Report(r) => {
                if r.invariants.get("integral") == Some(&Value::Bool(false)) {
                    EXIT_INPUT
                } else if r.all_congruent() {
                    EXIT_OK
                } else {
                    EXIT_CONGRUENCE
                }
            }
            Output::Sweep(t) => {
                if t.summary.failed == 0 {
                    EXIT_OK
                } else {
                    EXIT_CONGRUENCE
                }
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Output::Report(r), Format::Human) => r.render_human(),
            (Output::Sweep(t), Format::Human) => t.render_human(),
            (Output::Report(r), Format::Json) => to_json(r),
            (Output::Sweep(t), Format::Json) => to_json(t),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Run one command on raw input bytes.
pub fn run_bytes(command: Command, bytes: &[u8]) -> Result<InvariantReport, CliError> {
    match command {
        Command::Knot => commands::knot(bytes),
        Command::Sphere => commands::sphere(bytes),
        Command::MappingTorus => commands::mapping_torus(bytes),
        Command::Floer => commands::floer(bytes),
        Command::Torus4 => commands::torus4(bytes),
        Command::CircleBundle => commands::circle_bundle(bytes),
        Command::Sweep => Err(CliError::Schema("sweep takes --family, not an input file".into())),
    }
}

pub fn run(args: &Args) -> Result<Output, CliError> {
    if args.command == Command::Sweep {
        let family = args.family.as_deref().ok_or_else(|| CliError::Schema("sweep needs --family".into()))?;
        return sweep::sweep(family, args.range.as_deref()).map(Output::Sweep);
    }
    if args.family.is_some() || args.range.is_some() {
        return Err(CliError::Schema("--family and --range apply to sweep only".into()));
    }
    let bytes = match &args.input {
        Some(p) => std::fs::read(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut buf = Vec::new();
            std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
            buf
        }
    };
    run_bytes(args.command, &bytes).map(Output::Report)
}

/// The error as printed in JSON mode.
pub fn render_error(e: &CliError, format: Format) -> String {
    match format {
        Format::Human => format!("error: {e}\n"),
        Format::Json => to_json(&serde_json::json!({ "error": { "kind": e.kind(), "message": e.message() } })),
    }
}
