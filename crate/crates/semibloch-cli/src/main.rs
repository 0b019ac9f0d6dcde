//! Batch front door for the toolkit: parse signal/kernel documents, run the
//! classification pipeline, probe Bohr coefficients, scan periods, apply
//! convolution operators, and emit deterministic CSV series.
//!
//! Exit codes: 0 success, 1 validation/usage error, 2 diagnostic
//! disagreement between the exact and numeric classification paths.

use clap::{Args, Parser, Subcommand};
use semibloch::catalog;
use semibloch::classify::{classify, ClassifyOptions};
use semibloch::convolution::{
    finite_convolution, heat_evolve, infinite_convolution, summability_constant, KernelFamily,
};
use semibloch::emit;
use semibloch::error::Error;
use semibloch::periods::{epsilon_period_scan, ScanKind};
use semibloch::specdoc::{self, input_digest, parse_signal_spec, ParsedDocument};
use semibloch::spectrum::bohr_coefficient;
use semibloch::{Frequency, Signal, SymbolTable};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "semibloch", version, about = "Periodicity-class toolkit for almost-periodic signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Signal-spec JSON document.
    #[arg(long, conflicts_with = "catalog")]
    input: Option<PathBuf>,
    /// Built-in catalog entry name.
    #[arg(long)]
    catalog: Option<String>,
    /// Worker threads for scans and quadrature (results are identical for
    /// any count).
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the classification pipeline and print the report.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Certification level for witnesses and scans.
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        /// Scan window end (window is [0, W]).
        #[arg(long, default_value_t = 1e4)]
        window: f64,
        /// Stepanov exponent.
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        /// Bloch wave vector, e.g. "1/2" or "1/2*sqrt2".
        #[arg(long)]
        k: Option<String>,
        /// Report format.
        #[arg(long, default_value = "text", value_parser = ["text", "json"])]
        report: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate a Bohr coefficient P_r(f) over [0, T].
    Bohr {
        #[command(flatten)]
        input: InputArgs,
        /// Probe frequency r (decimal).
        #[arg(long)]
        r: f64,
        /// Averaging horizon T >= 1.
        #[arg(long, default_value_t = 1000.0)]
        t: f64,
    },
    /// Scan epsilon-periods / antiperiods / Bloch periods and emit CSV.
    Periods {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "period", value_parser = ["period", "antiperiod", "bloch"])]
        kind: String,
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(long, default_value_t = 100.0)]
        window: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a convolution operator (kernel from the document or flags).
    Convolve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "infinite", value_parser = ["infinite", "finite", "heat"])]
        mode: String,
        /// Evaluation time for single-point modes, diffusion time for heat.
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Emit a CSV trace over "start:end:step" instead of one value.
        #[arg(long)]
        trace: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List catalog entries, or check them against their expected verdicts.
    Catalog {
        /// Run the regression across all entries.
        #[arg(long)]
        run: bool,
        /// Show one entry as a signal-spec document.
        name: Option<String>,
    },
    /// Emit a CSV series for a signal over a range.
    Emit {
        #[command(flatten)]
        input: InputArgs,
        /// Range "start:end".
        #[arg(long, default_value = "0:10")]
        range: String,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct LoadedInput {
    parsed: ParsedDocument,
    document_text: String,
    workers: usize,
}

fn load_input(args: &InputArgs) -> anyhow::Result<LoadedInput> {
    let (document_text, parsed) = match (&args.input, &args.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let parsed = parse_signal_spec(&text)?;
            (text, parsed)
        }
        (None, Some(name)) => {
            let entry = catalog::get(name)?;
            let (signal, table) = entry.build()?;
            let doc = specdoc::to_document(&signal, &table, Some(entry.name));
            let text = specdoc::to_json(&doc);
            let parsed = ParsedDocument {
                id: entry.name.to_string(),
                signal,
                kernel: None,
                table,
            };
            (text, parsed)
        }
        _ => anyhow::bail!("exactly one of --input or --catalog is required"),
    };
    Ok(LoadedInput {
        parsed,
        document_text,
        workers: args.workers.max(1),
    })
}

fn parse_k(expr: &Option<String>, table: &SymbolTable) -> anyhow::Result<Option<Frequency>> {
    Ok(match expr {
        Some(e) => Some(Frequency::parse(e, table)?),
        None => None,
    })
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn kernel_of(parsed: &ParsedDocument) -> anyhow::Result<KernelFamily> {
    parsed.kernel.clone().ok_or_else(|| {
        anyhow::anyhow!("the document carries no kernel spec; add a top-level `kernel` field")
    })
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            input,
            epsilon,
            window,
            q,
            k,
            report,
            out,
        } => {
            let loaded = load_input(&input)?;
            let opts = ClassifyOptions {
                epsilon,
                window_end: window,
                q,
                k: parse_k(&k, &loaded.parsed.table)?,
                scan_step: None,
                workers: loaded.workers,
            };
            let digest = input_digest(
                &loaded.document_text,
                &format!(
                    "epsilon={epsilon};window={window};q={q};k={:?};workers={}",
                    k, loaded.workers
                ),
            );
            let report_data = classify(&loaded.parsed.signal, &opts, &loaded.parsed.id, &digest)?;
            let rendered = match report.as_str() {
                "json" => report_data.to_json(),
                _ => report_data.to_text(),
            };
            write_or_print(&out, &rendered)?;
        }
        Command::Bohr { input, r, t } => {
            let loaded = load_input(&input)?;
            let est = bohr_coefficient(&loaded.parsed.signal, r, t, loaded.workers)?;
            println!(
                "P_r estimate at r = {r}, T = {t}: {:+.12e} {:+.12e}i (error bound: {})",
                est.estimate.re,
                est.estimate.im,
                est.error_bound
                    .map(|b| format!("{b:.6e}"))
                    .unwrap_or_else(|| "unknown (non-exact representation)".into()),
            );
        }
        Command::Periods {
            input,
            kind,
            k,
            epsilon,
            window,
            step,
            out,
        } => {
            let loaded = load_input(&input)?;
            let scan_kind = match kind.as_str() {
                "antiperiod" => ScanKind::AntiPeriod,
                "bloch" => {
                    let k = parse_k(&k, &loaded.parsed.table)?
                        .ok_or_else(|| anyhow::anyhow!("--kind bloch requires --k"))?;
                    ScanKind::Bloch(k)
                }
                _ => ScanKind::Period,
            };
            let set = epsilon_period_scan(
                &loaded.parsed.signal,
                scan_kind,
                epsilon,
                window,
                step,
                loaded.workers,
            )?;
            eprintln!(
                "{} hits on [0, {window}], max gap {:.6}, relatively dense on window: {}{}",
                set.hits.len(),
                set.max_gap,
                set.relatively_dense,
                if set.certified { "" } else { " (grid-only estimate)" },
            );
            write_or_print(&out, &emit::period_set_csv(&set))?;
        }
        Command::Convolve {
            input,
            mode,
            t,
            trace,
            out,
        } => {
            let loaded = load_input(&input)?;
            match mode.as_str() {
                "heat" => {
                    let head = match &loaded.parsed.signal {
                        Signal::Trig(t) => t.clone(),
                        _ => anyhow::bail!("heat evolution needs an exact trig representation"),
                    };
                    let evolved = heat_evolve(&head, if t > 0.0 { t } else { 1.0 })?;
                    let doc = specdoc::to_document(
                        &Signal::Trig(evolved),
                        &loaded.parsed.table,
                        Some(&format!("{}-heat", loaded.parsed.id)),
                    );
                    write_or_print(&out, &specdoc::to_json(&doc))?;
                }
                m => {
                    let kernel = kernel_of(&loaded.parsed)?;
                    let finite = m == "finite";
                    if let Some(range) = trace {
                        let parts: Vec<&str> = range.split(':').collect();
                        anyhow::ensure!(parts.len() == 3, "--trace expects start:end:step");
                        let (a, b, h): (f64, f64, f64) =
                            (parts[0].parse()?, parts[1].parse()?, parts[2].parse()?);
                        let csv = emit::convolution_trace_csv(
                            &kernel,
                            &loaded.parsed.signal,
                            a,
                            b,
                            h,
                            finite,
                            loaded.workers,
                        )?;
                        write_or_print(&out, &csv)?;
                    } else {
                        let v = if finite {
                            finite_convolution(&kernel, &loaded.parsed.signal, t, loaded.workers)?
                        } else {
                            infinite_convolution(&kernel, &loaded.parsed.signal, t, loaded.workers)?
                        };
                        let m_const = summability_constant(&kernel)?;
                        println!(
                            "value at t = {t}: {:+.12e} {:+.12e}i (error bound {:.3e}, M = {:.9})",
                            v.value.re, v.value.im, v.error_bound, m_const.m
                        );
                    }
                }
            }
        }
        Command::Catalog { run, name } => {
            if let Some(name) = name {
                let entry = catalog::get(&name)?;
                let (signal, table) = entry.build()?;
                let doc = specdoc::to_document(&signal, &table, Some(entry.name));
                println!("{}", specdoc::to_json(&doc));
            } else if run {
                let mut failures = 0;
                for entry in catalog::entries() {
                    let (lines, _) = catalog::run_entry(&entry)?;
                    for line in lines {
                        let status = if line.ok { "PASS" } else { "FAIL" };
                        if !line.ok {
                            failures += 1;
                        }
                        println!(
                            "[{status}] {}::{} expected {}, got {}",
                            line.entry, line.class, line.expected, line.actual
                        );
                    }
                }
                anyhow::ensure!(failures == 0, "{failures} catalog expectation(s) failed");
            } else {
                for entry in catalog::entries() {
                    println!("{:<22} {}", entry.name, entry.description);
                }
            }
        }
        Command::Emit {
            input,
            range,
            step,
            out,
        } => {
            let loaded = load_input(&input)?;
            let parts: Vec<&str> = range.split(':').collect();
            anyhow::ensure!(parts.len() == 2, "--range expects start:end");
            let (a, b): (f64, f64) = (parts[0].parse()?, parts[1].parse()?);
            let csv = emit::signal_csv(&loaded.parsed.signal, a, b, step, loaded.workers)?;
            write_or_print(&out, &csv)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let disagreement = err
                .downcast_ref::<Error>()
                .map(|e| matches!(e, Error::Disagreement(_)))
                .unwrap_or(false);
            if disagreement {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
