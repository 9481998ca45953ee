//! The `wforge` binary: construct, verify, compare, and export
//! polynomial minimal surfaces built from Weierstrass generating
//! pairs.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wforge_cli::commands::{
    cmd_compare, cmd_gen, cmd_verify, families_catalog, read_coeff_file, CompareSide, GenConfig,
    Subject, Tolerances,
};
use wforge_cli::input::{
    build_family, default_file_name, family_from_descriptor, parse_params, parse_poly, parse_range,
    parse_ratfunc, parse_resolution,
};
use wforge_cli::{EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use wforge_core::geometry::Region;

#[derive(Parser)]
#[command(
    name = "wforge",
    about = "Polynomial minimal surfaces from Weierstrass generating pairs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Human,
    Json,
}

#[derive(Args)]
struct SubjectArgs {
    /// Family kind: enneper, r11, r12, r3, xw, xw5
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated family parameters, e.g. "1,0,1,1" or "(1,2),0"
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    params: String,
    /// Degree n for the xw family
    #[arg(long)]
    n: Option<u32>,
    /// Omega for the xw family
    #[arg(long)]
    omega: Option<f64>,
    /// Explicit generating polynomial f, e.g. "poly[(0,0),(0,0),(1,0)]"
    #[arg(long)]
    f: Option<String>,
    /// Explicit generating function g: "poly[...]", "poly[...]/poly[...]", or "z"
    #[arg(long)]
    g: Option<String>,
    /// JSON family descriptor file: {"kind": "...", "params": {...}}
    #[arg(long)]
    descriptor: Option<PathBuf>,
}

impl SubjectArgs {
    fn subject(&self) -> Result<Subject> {
        if let Some(path) = &self.descriptor {
            if self.family.is_some() || self.f.is_some() || self.g.is_some() {
                bail!("--descriptor replaces --family and --f/--g");
            }
            let text = std::fs::read_to_string(path)?;
            return Ok(Subject::Family(family_from_descriptor(&text)?));
        }
        match (&self.family, &self.f, &self.g) {
            (Some(kind), None, None) => {
                let params = parse_params(&self.params)?;
                Ok(Subject::Family(build_family(
                    kind, &params, self.n, self.omega,
                )?))
            }
            (None, Some(f), Some(g)) => Ok(Subject::ExplicitPair {
                f: parse_poly(f)?,
                g: parse_ratfunc(g)?,
            }),
            (None, Some(_), None) | (None, None, Some(_)) => {
                bail!("an explicit pair needs both --f and --g")
            }
            (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                bail!("give either --family or an explicit --f/--g pair, not both")
            }
            (None, None, None) => bail!("nothing to do: give --family or --f/--g"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a surface and write mesh files
    Gen {
        #[command(flatten)]
        subject: SubjectArgs,
        /// Parameter range "lo,hi" or "ulo,uhi,vlo,vhi"
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        range: String,
        /// Grid resolution "n" or "nu,nv" (vertices per axis)
        #[arg(long, default_value = "41")]
        res: String,
        /// OBJ output path (default: <family>_<params>_<res>.obj)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a CSV with per-vertex curvature to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Skip the OBJ (e.g. CSV-only export)
        #[arg(long)]
        no_obj: bool,
    },
    /// Run the verification suite; exit 0 iff every check passes
    Verify {
        #[command(flatten)]
        subject: SubjectArgs,
        /// Verify raw coefficient vectors from a JSON file instead
        #[arg(long)]
        coeffs: Option<PathBuf>,
        /// Scan region
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        range: String,
        /// Scan grid per axis
        #[arg(long, default_value = "41")]
        grid: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
        /// Also write the JSON report here
        #[arg(long)]
        report_file: Option<PathBuf>,
    },
    /// Compare two degree-5 descriptors for coincidence
    Compare {
        /// Family kind of side A (or use --f-a/--g-a for an explicit pair)
        #[arg(long)]
        family_a: Option<String>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params_a: String,
        #[arg(long)]
        f_a: Option<String>,
        #[arg(long)]
        g_a: Option<String>,
        /// Family kind of side B (or use --f-b/--g-b for an explicit pair)
        #[arg(long)]
        family_b: Option<String>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        params_b: String,
        #[arg(long)]
        f_b: Option<String>,
        #[arg(long)]
        g_b: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
        format: ReportFormat,
    },
    /// List the family catalog
    Families,
}

fn subject_label(subject: &Subject) -> String {
    subject.describe()
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen {
            subject,
            range,
            res,
            out,
            csv,
            no_obj,
        } => {
            let subject = subject.subject()?;
            let region = parse_range(&range)?;
            let resolution = parse_resolution(&res)?;
            let obj_path = if no_obj {
                None
            } else {
                Some(out.unwrap_or_else(|| {
                    let name = match &subject {
                        Subject::Family(f) => default_file_name(f, resolution, "obj"),
                        _ => format!("pair_{}x{}.obj", resolution.0, resolution.1),
                    };
                    PathBuf::from(name)
                }))
            };
            let cfg = GenConfig {
                region,
                resolution,
                obj_path,
                csv_path: csv,
            };
            let summary = cmd_gen(&subject, &cfg)?;
            print!("{}", summary.human());
            Ok(EXIT_OK)
        }
        Command::Verify {
            subject,
            coeffs,
            range,
            grid,
            format,
            report_file,
        } => {
            let tol = Tolerances::from_env()?;
            let subject = match coeffs {
                Some(path) => Subject::Coeffs(Box::new(read_coeff_file(&path)?)),
                None => subject.subject()?,
            };
            let region: Region = parse_range(&range)?;
            let report = cmd_verify(&subject, region, grid, &tol)?;
            match format {
                ReportFormat::Human => print!("{}", report.human()),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            if let Some(path) = report_file {
                std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
            }
            if report.passed {
                Ok(EXIT_OK)
            } else {
                if let Some(check) = report.failing_check() {
                    eprintln!(
                        "verification failed: check '{}' did not pass for {}",
                        check.name,
                        subject_label(&subject)
                    );
                }
                Ok(EXIT_CHECK_FAILED)
            }
        }
        Command::Compare {
            family_a,
            params_a,
            f_a,
            g_a,
            family_b,
            params_b,
            f_b,
            g_b,
            format,
        } => {
            let side = |family: Option<String>,
                        params: String,
                        f: Option<String>,
                        g: Option<String>,
                        which: &str|
             -> Result<CompareSide> {
                match (family, f, g) {
                    (Some(kind), None, None) => Ok(CompareSide::Family(build_family(
                        &kind,
                        &parse_params(&params)?,
                        None,
                        None,
                    )?)),
                    (None, Some(f), Some(g)) => Ok(CompareSide::Pair {
                        f: parse_poly(&f)?,
                        g: parse_ratfunc(&g)?,
                    }),
                    _ => bail!(
                        "side {} needs either --family-{} or both --f-{} and --g-{}",
                        which,
                        which,
                        which,
                        which
                    ),
                }
            };
            let a = side(family_a, params_a, f_a, g_a, "a")?;
            let b = side(family_b, params_b, f_b, g_b, "b")?;
            let report = cmd_compare(&a, &b)?;
            match format {
                ReportFormat::Human => print!("{}", report.human()),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(EXIT_OK)
        }
        Command::Families => {
            print!("{}", families_catalog());
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
