//! The `malfatti` command line: `compute`, `verify` and `render`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage,
//! input or I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::closed_form::{FormulaMode, TripletVariant};
use crate::construct::Frame;
use crate::error::Error;
use crate::oracle::{self, VerifyOptions, MATCH_TOLERANCE};
use crate::report;
use crate::triangle::Triangle;
use crate::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "malfatti", version, about = "Radii, verification and figures for the 32 tangent-circle triplets of a triangle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print radii, centers and tangent points as JSON.
    Compute(Common),
    /// Check the closed forms against the numerical oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Relative radius tolerance for a match.
        #[arg(long, default_value_t = MATCH_TOLERANCE)]
        tolerance: f64,
    },
    /// Write one SVG figure per variant.
    Render {
        #[command(flatten)]
        common: Common,
        /// Output directory.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TriangleInput {
    /// Side lengths a b c.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true)]
    sides: Option<Vec<f64>>,
    /// Angles at A and B in degrees.
    #[arg(long, num_args = 2, value_names = ["A_DEG", "B_DEG"], allow_negative_numbers = true)]
    angles: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct Common {
    #[command(flatten)]
    input: TriangleInput,
    /// Length of side c when the triangle is given by angles.
    #[arg(long, allow_negative_numbers = true)]
    scale: Option<f64>,
    /// `all`, or a list of indices, labels and ranges such as `1..8,a5,c7`.
    #[arg(long, default_value = "all")]
    variants: String,
    /// Use the formulas exactly as published, without the two corrections.
    #[arg(long)]
    paper_verbatim: bool,
}

impl Common {
    fn triangle(&self) -> Result<Triangle, Error> {
        match (&self.input.sides, &self.input.angles) {
            (Some(s), _) => Triangle::from_sides(s[0], s[1], s[2]),
            (_, Some(a)) => Triangle::from_angles_deg(a[0], a[1], self.scale.unwrap_or(1.0)),
            _ => unreachable!("clap enforces one input form"),
        }
    }

    fn mode(&self) -> FormulaMode {
        if self.paper_verbatim {
            FormulaMode::PaperVerbatim
        } else {
            FormulaMode::Corrected
        }
    }

    fn request(&self) -> Result<(Triangle, Vec<TripletVariant>), String> {
        if self.input.sides.is_some() && self.scale.is_some() {
            return Err("--scale only applies to --angles".into());
        }
        let t = self.triangle().map_err(|e| e.to_string())?;
        let variants = TripletVariant::parse_selection(&self.variants).map_err(|e| e.to_string())?;
        Ok((t, variants))
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match cli.command {
        Command::Compute(common) => compute(&common, stdout, stderr),
        Command::Verify { common, tolerance } => verify(&common, tolerance, stdout, stderr),
        Command::Render { common, out } => render_cmd(&common, &out, stdout, stderr),
    }
}

fn usage_error(stderr: &mut dyn Write, message: impl std::fmt::Display) -> i32 {
    let _ = writeln!(stderr, "error: {message}");
    EXIT_USAGE
}

fn compute(common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (t, variants) = match common.request() {
        Ok(r) => r,
        Err(e) => return usage_error(stderr, e),
    };
    let doc = report::compute_document(&t, &variants, common.mode());
    match report::to_json(&doc) {
        Ok(json) => {
            let _ = stdout.write_all(json.as_bytes());
            EXIT_OK
        }
        Err(e) => usage_error(stderr, e),
    }
}

fn verify(common: &Common, tolerance: f64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (t, variants) = match common.request() {
        Ok(r) => r,
        Err(e) => return usage_error(stderr, e),
    };
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return usage_error(stderr, format!("tolerance must be positive, got {tolerance}"));
    }
    let opts = VerifyOptions {
        mode: common.mode(),
        tolerance,
        ..Default::default()
    };
    let reports = match oracle::verify_selected(&t, &variants, &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let doc = report::verify_document(&t, &reports, opts.mode, tolerance);
    match report::to_json(&doc) {
        Ok(json) => {
            let _ = stdout.write_all(json.as_bytes());
        }
        Err(e) => return usage_error(stderr, e),
    }
    let _ = writeln!(stderr, "{}", doc.summary.line());
    if doc.summary.fail == 0 {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn render_cmd(common: &Common, out: &std::path::Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (t, variants) = match common.request() {
        Ok(r) => r,
        Err(e) => return usage_error(stderr, e),
    };
    let configs = report::configurations(&t, &variants, common.mode());
    match render::write_figures(out, &Frame::canonical(&t), &configs, common.mode()) {
        Ok(paths) => {
            for p in paths {
                let _ = writeln!(stdout, "{}", p.display());
            }
            EXIT_OK
        }
        Err(e) => usage_error(stderr, format!("cannot write figures to {}: {e}", out.display())),
    }
}
