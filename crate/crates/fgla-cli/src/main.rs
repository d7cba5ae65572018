//! Command line for the finiteness checker.
//!
//! Exit status: 0 = FINITE, 1 = INFINITE, 2 = error.  In batch mode the
//! worst status across the batch is returned.

use std::process::ExitCode;

use clap::Parser;

use fgla_cli::problem::{Format, ProblemError, ProblemSpec, E_SCHEMA};
use fgla_cli::{presets, run, run_batch, Mode, Report};

/// Decide finiteness of the maximal effective prolongation of a
/// fundamental graded Lie algebra with a prescribed structure algebra.
#[derive(Parser, Debug)]
#[command(name = "fgla", version, about)]
struct Cli {
    /// Problem file (JSON); see the README for the schema.
    file: Option<String>,

    /// Use a built-in example configuration instead of a file.
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,

    /// Override the dimension for presets that allow it.
    #[arg(long)]
    n: Option<usize>,

    /// Decide finiteness only (the default).
    #[arg(long, conflicts_with_all = ["oracle", "dims_only"])]
    check: bool,

    /// Also run the degreewise prolongation oracle.
    #[arg(long, conflicts_with = "dims_only")]
    oracle: bool,

    /// Only compute the oracle dimension table.
    #[arg(long)]
    dims_only: bool,

    /// Oracle depth (positive layers computed).
    #[arg(long)]
    pmax: Option<usize>,

    /// Output format.
    #[arg(long, value_parser = ["text", "machine"])]
    format: Option<String>,

    /// Run a JSON array of problems concurrently.
    #[arg(long, conflicts_with_all = ["file", "preset"])]
    batch: Option<String>,

    /// Disable the special-case shortcuts; the rank test still decides.
    #[arg(long)]
    no_shortcuts: bool,

    /// Always run the combined-rank route, even for lambda = gl.
    #[arg(long)]
    force_general: bool,

    /// List the built-in presets and exit.
    #[arg(long)]
    list_presets: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.list_presets {
        for name in presets::PRESET_NAMES {
            println!("{}", name);
        }
        return ExitCode::from(0);
    }
    match main_inner(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn main_inner(cli: &Cli) -> Result<u8, ProblemError> {
    let mode = if cli.dims_only {
        Mode::DimsOnly
    } else if cli.oracle {
        Mode::WithOracle
    } else {
        Mode::Check
    };

    if let Some(batch_path) = &cli.batch {
        let text = read_file(batch_path)?;
        let mut specs: Vec<ProblemSpec> = serde_json::from_str(&text).map_err(|e| {
            ProblemError { code: E_SCHEMA, message: format!("batch file: {}", e) }
        })?;
        for spec in &mut specs {
            apply_overrides(spec, cli);
        }
        let results = run_batch(&specs, mode);
        let machine = output_format(cli, specs.first()) == Format::Machine;
        let mut worst = 0u8;
        if machine {
            let rendered: Vec<serde_json::Value> = results
                .iter()
                .map(|r| match r {
                    Ok(rep) => serde_json::to_value(rep).unwrap(),
                    Err(e) => serde_json::json!({"error": e.message, "code": e.code}),
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rendered).unwrap());
        }
        for (i, r) in results.iter().enumerate() {
            match r {
                Ok(rep) => {
                    if !machine {
                        println!("--- problem {} ---", i);
                        print!("{}", rep.to_text());
                    }
                    worst = worst.max(exit_code(rep));
                }
                Err(e) => {
                    if !machine {
                        println!("--- problem {} ---", i);
                        println!("error: {}", e);
                    }
                    worst = 2;
                }
            }
        }
        return Ok(worst);
    }

    let mut spec = match (&cli.file, &cli.preset) {
        (Some(path), None) => ProblemSpec::parse(&read_file(path)?)?,
        (None, Some(name)) => presets::preset(name, cli.n)?,
        (None, None) => {
            return Err(ProblemError {
                code: E_SCHEMA,
                message: "give a problem file, --preset NAME, or --batch FILE \
                          (try --list-presets)"
                    .into(),
            });
        }
        (Some(_), Some(_)) => unreachable!("clap forbids file with --preset"),
    };
    apply_overrides(&mut spec, cli);

    let report = run(&spec, mode)?;
    match output_format(cli, Some(&spec)) {
        Format::Machine => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(exit_code(&report))
}

fn apply_overrides(spec: &mut ProblemSpec, cli: &Cli) {
    if let Some(pmax) = cli.pmax {
        spec.options.pmax = pmax;
    }
    if cli.no_shortcuts {
        spec.options.disable_shortcuts = true;
    }
    if cli.force_general {
        spec.options.force_general = true;
    }
}

fn output_format(cli: &Cli, spec: Option<&ProblemSpec>) -> Format {
    match cli.format.as_deref() {
        Some("machine") => Format::Machine,
        Some(_) => Format::Text,
        None => spec
            .and_then(|s| s.options.format)
            .unwrap_or(Format::Text),
    }
}

fn exit_code(report: &Report) -> u8 {
    if report.finite {
        0
    } else {
        1
    }
}

fn read_file(path: &str) -> Result<String, ProblemError> {
    std::fs::read_to_string(path).map_err(|e| ProblemError {
        code: E_SCHEMA,
        message: format!("{}: {}", path, e),
    })
}
