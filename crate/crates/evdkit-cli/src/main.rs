//! `evdkit` command line: fitting, goodness of fit, simulation studies,
//! quantiles, tail classification, bootstrap QQ envelopes, and profile
//! log-likelihood curves for the extreme-value families in the core crate.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error,
//! 4 numerical failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

use evdkit::dataio::{load_embedded_wind, read_csv, seasonal_adjust, AdjustMethod};
use evdkit::estimate::{
    fit_gev_pwm, fit_mle, fit_tev_profile, profile_loglik_curve, FitConfig, FitMethod, FitResult,
};
use evdkit::gof::{ad2r, adr, aic, qq_envelope};
use evdkit::montecarlo::{
    alternate_generators, run_study, spec_label, standard_generators, StudyConfig,
};
use evdkit::optim::Bounds;
use evdkit::tails::rigby_classify;
use evdkit::{Error, Family, Spec};

#[derive(Parser)]
#[command(
    name = "evdkit",
    version,
    about = "Extreme-value distribution toolkit: nine Gumbel-type families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output form.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct DataArgs {
    /// Data source: `embedded` (the bundled monthly wind-speed maxima) or a
    /// CSV path with columns year,month,value.
    #[arg(long, default_value = "embedded")]
    data: String,
    /// Seasonal adjustment: `none` or `monthly_median`. Defaults to
    /// monthly_median for the embedded series and none for files.
    #[arg(long)]
    adjust: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Mle,
    Pwm,
    Profile,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one family to data and report estimates, standard errors, and
    /// the .999 return level.
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = Method::Mle)]
        method: Method,
        /// Per-parameter boxes as comma-separated lo:hi pairs.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Fit several families and tabulate -loglik, AIC, ADR, AD2R by AIC.
    Gof {
        #[command(flatten)]
        data: DataArgs,
        /// Families to fit (repeatable); defaults to all nine plus GEV-PWM.
        #[arg(long)]
        family: Vec<String>,
    },
    /// Run the simulation study and write its CSV/JSON artifacts.
    Simulate {
        /// Generator preset: table3, alternate, or all.
        #[arg(long, default_value = "table3")]
        preset: String,
        #[arg(long, default_value_t = 200)]
        replicates: usize,
        #[arg(long, default_value_t = 500)]
        sample_size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory for study_long.csv and study_summary.json.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Evaluate quantiles of a fully specified distribution.
    Quantile {
        #[arg(long)]
        family: String,
        /// Comma-separated parameter values.
        #[arg(long)]
        params: String,
        /// Probabilities (comma-separated, each in (0,1)).
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
    },
    /// Classify the right tail of a fully specified distribution.
    Tail {
        #[arg(long)]
        family: String,
        #[arg(long)]
        params: String,
    },
    /// Fit a family, then write a parametric-bootstrap QQ envelope CSV.
    Envelope {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t = Method::Mle)]
        method: Method,
        #[arg(long, default_value_t = 1000)]
        replicates: usize,
        #[arg(long, default_value_t = 0.9)]
        coverage: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Profile log-likelihood of one parameter over a grid.
    Profile {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        family: String,
        /// Index of the profiled parameter; defaults to the family's shape.
        #[arg(long)]
        param: Option<usize>,
        /// Grid as lo,hi,n; defaults to 41 points across the fit bounds.
        #[arg(long)]
        grid: Option<String>,
        /// Space the grid logarithmically (grid endpoints must be positive).
        #[arg(long, default_value_t = false)]
        log_grid: bool,
        /// Optional directory for a profile.csv artifact.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct CliReport {
    command: String,
    inputs: Value,
    results: Value,
    warnings: Vec<String>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::InvalidSpec(_) | Error::Domain(_) => 2,
            Error::NonConvergence(_) => 4,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("EVDKIT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            // ignore the error if a pool is already installed
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let format = cli.format;
    match dispatch(cli.command) {
        Ok((report, text)) => {
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Text => {
                    for w in &report.warnings {
                        eprintln!("warning: {w}");
                    }
                    println!("{text}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_family(name: &str) -> Result<Family, Failure> {
    name.parse::<Family>()
        .map_err(|e| Failure::config(e.to_string()))
}

fn parse_params(family: Family, text: &str) -> Result<Spec, Failure> {
    let values: Result<Vec<f64>, _> = text.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let values = values.map_err(|e| Failure::config(format!("bad --params value: {e}")))?;
    Ok(Spec::new(family, &values)?)
}

fn parse_bounds(family: Family, text: &str) -> Result<Bounds, Failure> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for pair in text.split(',') {
        let (l, h) = pair
            .split_once(':')
            .ok_or_else(|| Failure::config(format!("bad --bounds pair '{pair}', want lo:hi")))?;
        lo.push(
            l.trim()
                .parse::<f64>()
                .map_err(|e| Failure::config(format!("bad bound '{l}': {e}")))?,
        );
        hi.push(
            h.trim()
                .parse::<f64>()
                .map_err(|e| Failure::config(format!("bad bound '{h}': {e}")))?,
        );
    }
    if lo.len() != family.param_count() {
        return Err(Failure::config(format!(
            "{family} needs {} bound pairs, got {}",
            family.param_count(),
            lo.len()
        )));
    }
    Ok(Bounds::new(lo, hi)?)
}

/// Resolve a data source + adjustment into the analysis series.
fn load_data(args: &DataArgs, warnings: &mut Vec<String>) -> Result<(Vec<f64>, Value), Failure> {
    let embedded = args.data == "embedded";
    let series = if embedded {
        load_embedded_wind()
    } else {
        read_csv(std::path::Path::new(&args.data))?
    };
    let adjust = match &args.adjust {
        Some(text) => text
            .parse::<AdjustMethod>()
            .map_err(|e| Failure::config(e.to_string()))?,
        None if embedded => {
            warnings.push(
                "embedded series seasonally adjusted by monthly medians (a simple substitute \
                 for a full seasonal-trend decomposition); pass --adjust none for raw values"
                    .to_string(),
            );
            AdjustMethod::MonthlyMedian
        }
        None => AdjustMethod::None,
    };
    let values = seasonal_adjust(&series, adjust)?;
    let inputs = json!({
        "data": args.data,
        "adjust": match adjust {
            AdjustMethod::None => "none",
            AdjustMethod::MonthlyMedian => "monthly_median",
        },
        "n": values.len(),
    });
    Ok((values, inputs))
}

fn fit_with_method(
    data: &[f64],
    family: Family,
    method: Method,
    config: &FitConfig,
) -> Result<FitResult, Failure> {
    match method {
        Method::Mle => Ok(fit_mle(data, family, config)?),
        Method::Pwm => {
            if family != Family::Gev {
                return Err(Failure::config(
                    "--method pwm is only available for --family gev",
                ));
            }
            Ok(fit_gev_pwm(data)?)
        }
        Method::Profile => {
            if family != Family::Tev {
                return Err(Failure::config(
                    "--method profile is only available for --family tev",
                ));
            }
            Ok(fit_tev_profile(data, config)?)
        }
    }
}

fn method_label(m: Method) -> &'static str {
    match m {
        Method::Mle => "mle",
        Method::Pwm => "pwm",
        Method::Profile => "profile",
    }
}

fn dispatch(command: Command) -> Result<(CliReport, String), Failure> {
    match command {
        Command::Fit {
            data,
            family,
            method,
            bounds,
        } => cmd_fit(&data, &family, method, bounds.as_deref()),
        Command::Gof { data, family } => cmd_gof(&data, &family),
        Command::Simulate {
            preset,
            replicates,
            sample_size,
            seed,
            out,
        } => cmd_simulate(&preset, replicates, sample_size, seed, &out),
        Command::Quantile { family, params, p } => cmd_quantile(&family, &params, &p),
        Command::Tail { family, params } => cmd_tail(&family, &params),
        Command::Envelope {
            data,
            family,
            method,
            replicates,
            coverage,
            seed,
            out,
        } => cmd_envelope(&data, &family, method, replicates, coverage, seed, &out),
        Command::Profile {
            data,
            family,
            param,
            grid,
            log_grid,
            out,
        } => cmd_profile(&data, &family, param, grid.as_deref(), log_grid, out.as_deref()),
    }
}

fn fit_results_json(fit: &FitResult, data_len: usize) -> Result<Value, Failure> {
    let family = fit.spec.family();
    let names = family.param_names();
    let q999 = fit.spec.quantile(0.999)?;
    let params: Vec<Value> = names
        .iter()
        .zip(fit.spec.params())
        .zip(&fit.std_errors)
        .map(|((name, est), se)| json!({"name": name, "estimate": est, "std_error": se}))
        .collect();
    Ok(json!({
        "family": family.to_string(),
        "method": fit.method,
        "n": data_len,
        "params": params,
        "loglik": fit.loglik,
        "aic": aic(fit.loglik, names.len()),
        "return_level_999": q999,
        "converged": fit.converged,
        "bounds_active": fit.bounds_active,
    }))
}

fn fit_text(fit: &FitResult, data_len: usize) -> Result<String, Failure> {
    let family = fit.spec.family();
    let q999 = fit.spec.quantile(0.999)?;
    let mut out = format!("{family} fit ({}), n = {data_len}\n", method_name(fit.method));
    out.push_str(&format!(
        "{:<10} {:>14} {:>14}\n",
        "parameter", "estimate", "std error"
    ));
    for ((name, est), se) in family
        .param_names()
        .iter()
        .zip(fit.spec.params())
        .zip(&fit.std_errors)
    {
        let se_text = match se {
            Some(v) => format!("{v:>14.5}"),
            None => format!("{:>14}", "-"),
        };
        out.push_str(&format!("{name:<10} {est:>14.5} {se_text}\n"));
    }
    out.push_str(&format!(
        "loglik = {:.4}   AIC = {:.4}   .999 return level = {:.4}\n",
        fit.loglik,
        aic(fit.loglik, family.param_count()),
        q999
    ));
    if !fit.converged {
        out.push_str("note: optimizer did not report convergence\n");
    }
    Ok(out)
}

fn method_name(m: FitMethod) -> &'static str {
    match m {
        FitMethod::Mle => "maximum likelihood",
        FitMethod::Pwm => "probability-weighted moments",
        FitMethod::ProfileMle => "profile maximum likelihood",
    }
}

fn cmd_fit(
    data_args: &DataArgs,
    family: &str,
    method: Method,
    bounds: Option<&str>,
) -> Result<(CliReport, String), Failure> {
    let mut warnings = Vec::new();
    let family = parse_family(family)?;
    let (data, mut inputs) = load_data(data_args, &mut warnings)?;
    let mut config = FitConfig::default();
    if let Some(text) = bounds {
        config.bounds = Some(parse_bounds(family, text)?);
    }
    inputs["family"] = json!(family.to_string());
    inputs["method"] = json!(method_label(method));
    let fit = fit_with_method(&data, family, method, &config)?;
    let results = fit_results_json(&fit, data.len())?;
    let text = fit_text(&fit, data.len())?;
    Ok((
        CliReport {
            command: "fit".into(),
            inputs,
            results,
            warnings,
        },
        text,
    ))
}

fn cmd_gof(data_args: &DataArgs, families: &[String]) -> Result<(CliReport, String), Failure> {
    let mut warnings = Vec::new();
    let (data, mut inputs) = load_data(data_args, &mut warnings)?;
    let requested: Vec<Family> = if families.is_empty() {
        Family::ALL.to_vec()
    } else {
        families
            .iter()
            .map(|f| parse_family(f))
            .collect::<Result<_, _>>()?
    };
    inputs["families"] = json!(requested
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>());

    // one MLE row per family (profile likelihood for the multimodal TEV),
    // plus a PWM row whenever the GEV is requested
    let mut jobs: Vec<(String, Family, Method)> = Vec::new();
    for &family in &requested {
        let method = if family == Family::Tev {
            Method::Profile
        } else {
            Method::Mle
        };
        jobs.push((family.to_string(), family, method));
        if family == Family::Gev {
            jobs.push(("gev_pwm".into(), family, Method::Pwm));
        }
    }

    let config = FitConfig::default();
    let mut rows: Vec<(String, f64, f64, f64, f64)> = Vec::new();
    for (label, family, method) in jobs {
        let fitted = fit_with_method(&data, family, method, &config)
            .and_then(|fit| {
                let a = adr(&data, &fit.spec)?;
                let a2 = ad2r(&data, &fit.spec)?;
                Ok((fit.loglik, a, a2))
            });
        match fitted {
            Ok((loglik, a, a2)) => rows.push((
                label,
                -loglik,
                aic(loglik, family.param_count()),
                a,
                a2,
            )),
            Err(f) => warnings.push(format!("{label}: {}", f.message)),
        }
    }
    rows.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());

    let results = json!({
        "rows": rows.iter().map(|(label, nll, aic, adr, ad2r)| json!({
            "model": label,
            "neg_loglik": nll,
            "aic": aic,
            "adr": adr,
            "ad2r": ad2r,
        })).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "{:<10} {:>12} {:>12} {:>12} {:>12}\n",
        "model", "-loglik", "AIC", "ADR", "AD2R"
    );
    for (label, nll, aic, adr, ad2r) in &rows {
        text.push_str(&format!(
            "{label:<10} {nll:>12.4} {aic:>12.4} {adr:>12.4} {ad2r:>12.4}\n"
        ));
    }
    Ok((
        CliReport {
            command: "gof".into(),
            inputs,
            results,
            warnings,
        },
        text,
    ))
}

fn cmd_simulate(
    preset: &str,
    replicates: usize,
    sample_size: usize,
    seed: u64,
    out: &PathBuf,
) -> Result<(CliReport, String), Failure> {
    let generators = match preset {
        "table3" => standard_generators(),
        "alternate" => alternate_generators(),
        "all" => {
            let mut g = standard_generators();
            g.extend(alternate_generators());
            g
        }
        other => {
            return Err(Failure::config(format!(
                "unknown preset '{other}' (expected table3, alternate, or all)"
            )))
        }
    };
    let mut config = StudyConfig::desk(seed);
    config.generators = generators;
    config.n_replicates = replicates;
    config.n_per_sample = sample_size;
    let report = run_study(&config)?;

    std::fs::create_dir_all(out).map_err(Error::Io)?;
    let csv_path = out.join("study_long.csv");
    let json_path = out.join("study_summary.json");
    std::fs::write(&csv_path, report.to_long_csv()).map_err(Error::Io)?;
    let summary = report.summary_json();
    std::fs::write(&json_path, &summary).map_err(Error::Io)?;

    let inputs = json!({
        "preset": preset,
        "replicates": replicates,
        "sample_size": sample_size,
        "seed": seed,
        "out": out.display().to_string(),
    });
    let results = json!({
        "csv": csv_path.display().to_string(),
        "summary": json_path.display().to_string(),
        "cells": report.cells.len(),
    });

    let mut text = format!(
        "{:<26} {:<16} {:>8} {:>12} {:>12} {:>14}\n",
        "generator", "fitter", "failed", "median AIC", "median AD2R", "median q999 d"
    );
    for cell in &report.cells {
        let med = |name: &str| -> String {
            cell.summaries
                .iter()
                .find(|(n, _)| n == name)
                .and_then(|(_, s)| s.as_ref())
                .map(|s| format!("{:.4}", s.median))
                .unwrap_or_else(|| "-".into())
        };
        text.push_str(&format!(
            "{:<26} {:<16} {:>8} {:>12} {:>12} {:>14}\n",
            spec_label(&cell.generator),
            cell.fitter.label(),
            cell.failures,
            med("aic"),
            med("ad2r"),
            med("q999_discrepancy"),
        ));
    }
    text.push_str(&format!(
        "wrote {} and {}\n",
        csv_path.display(),
        json_path.display()
    ));
    Ok((
        CliReport {
            command: "simulate".into(),
            inputs,
            results,
            warnings: Vec::new(),
        },
        text,
    ))
}

fn cmd_quantile(family: &str, params: &str, ps: &[f64]) -> Result<(CliReport, String), Failure> {
    if ps.is_empty() {
        return Err(Failure::config("at least one --p value is required"));
    }
    let family = parse_family(family)?;
    let spec = parse_params(family, params)?;
    let mut rows = Vec::new();
    let mut text = format!("{:<12} {:>16}\n", "p", "quantile");
    for &p in ps {
        let q = spec.quantile(p)?;
        rows.push(json!({"p": p, "quantile": q}));
        text.push_str(&format!("{p:<12} {q:>16.6}\n"));
    }
    Ok((
        CliReport {
            command: "quantile".into(),
            inputs: json!({"family": family.to_string(), "params": spec.params()}),
            results: json!({"quantiles": rows}),
            warnings: Vec::new(),
        },
        text,
    ))
}

fn cmd_tail(family: &str, params: &str) -> Result<(CliReport, String), Failure> {
    let family = parse_family(family)?;
    let spec = parse_params(family, params)?;
    let classification = rigby_classify(&spec)?;
    let mut text = format!(
        "{family}: type {:?}, tail index {}\n",
        classification.rigby_type, classification.tail_index
    );
    for (name, value) in &classification.k_values {
        text.push_str(&format!("  {name} = {value}\n"));
    }
    text.push_str(&format!(
        "  vs same-scale Gumbel: {:?}\n",
        classification.heavier_than_gumbel
    ));
    if let Some(note) = &classification.note {
        text.push_str(&format!("  note: {note}\n"));
    }
    Ok((
        CliReport {
            command: "tail".into(),
            inputs: json!({"family": family.to_string(), "params": spec.params()}),
            results: serde_json::to_value(&classification).expect("classification serializes"),
            warnings: Vec::new(),
        },
        text,
    ))
}

fn cmd_envelope(
    data_args: &DataArgs,
    family: &str,
    method: Method,
    replicates: usize,
    coverage: f64,
    seed: u64,
    out: &PathBuf,
) -> Result<(CliReport, String), Failure> {
    let mut warnings = Vec::new();
    let family = parse_family(family)?;
    let (data, mut inputs) = load_data(data_args, &mut warnings)?;
    inputs["family"] = json!(family.to_string());
    inputs["replicates"] = json!(replicates);
    inputs["coverage"] = json!(coverage);
    inputs["seed"] = json!(seed);
    let fit = fit_with_method(&data, family, method, &FitConfig::default())?;
    let envelope = qq_envelope(&data, &fit.spec, replicates, coverage, seed)?;

    std::fs::create_dir_all(out).map_err(Error::Io)?;
    let path = out.join("envelope.csv");
    std::fs::write(&path, envelope.to_csv()).map_err(Error::Io)?;

    let inside = envelope
        .empirical_q
        .iter()
        .zip(&envelope.lower_band)
        .zip(&envelope.upper_band)
        .filter(|((e, lo), hi)| *lo <= *e && *e <= *hi)
        .count();
    let fraction = inside as f64 / envelope.p.len() as f64;
    let results = json!({
        "csv": path.display().to_string(),
        "points": envelope.p.len(),
        "fraction_inside_band": fraction,
        "fitted_params": fit.spec.params(),
    });
    let text = format!(
        "{family} envelope: {} points, {:.1}% inside the {:.0}% band\nwrote {}\n",
        envelope.p.len(),
        100.0 * fraction,
        100.0 * coverage,
        path.display()
    );
    Ok((
        CliReport {
            command: "envelope".into(),
            inputs,
            results,
            warnings,
        },
        text,
    ))
}

fn parse_grid(text: &str, log_grid: bool) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::config("--grid must be lo,hi,n"));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| Failure::config(format!("bad grid lo: {e}")))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| Failure::config(format!("bad grid hi: {e}")))?;
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|e| Failure::config(format!("bad grid n: {e}")))?;
    if !(hi > lo) || n < 2 {
        return Err(Failure::config("--grid needs lo < hi and n >= 2"));
    }
    if log_grid && lo <= 0.0 {
        return Err(Failure::config("--log-grid needs positive endpoints"));
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if log_grid {
                (lo.ln() + (hi.ln() - lo.ln()) * step(i)).exp()
            } else {
                lo + (hi - lo) * step(i)
            }
        })
        .collect())
}

fn cmd_profile(
    data_args: &DataArgs,
    family: &str,
    param: Option<usize>,
    grid: Option<&str>,
    log_grid: bool,
    out: Option<&std::path::Path>,
) -> Result<(CliReport, String), Failure> {
    let mut warnings = Vec::new();
    let family = parse_family(family)?;
    let (data, mut inputs) = load_data(data_args, &mut warnings)?;
    // default to the family's first shape parameter (index 2); the
    // two-parameter Gumbel has no shape, so an index is required there
    let param = match param {
        Some(i) => i,
        None => {
            if family.param_count() < 3 {
                return Err(Failure::config(format!(
                    "{family} has no shape parameter; pass --param"
                )));
            }
            2
        }
    };
    let grid_values = match grid {
        Some(text) => parse_grid(text, log_grid)?,
        None => {
            let bounds = evdkit::estimate::default_bounds(family, &data)?;
            let lo = bounds.lo[param];
            let hi = bounds.hi[param];
            if log_grid && lo <= 0.0 {
                return Err(Failure::config(
                    "--log-grid needs an explicit positive --grid for this parameter",
                ));
            }
            parse_grid(&format!("{lo},{hi},41"), log_grid)?
        }
    };
    inputs["family"] = json!(family.to_string());
    inputs["param"] = json!(family.param_names()[param.min(family.param_count() - 1)]);
    let curve = profile_loglik_curve(&data, family, param, &grid_values)?;

    let mut csv = String::from("value,loglik\n");
    for point in &curve {
        match point.loglik {
            Some(l) => csv.push_str(&format!("{},{}\n", point.value, l)),
            None => csv.push_str(&format!("{},NA\n", point.value)),
        }
    }
    let mut artifact = None;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(Error::Io)?;
        let path = dir.join("profile.csv");
        std::fs::write(&path, &csv).map_err(Error::Io)?;
        artifact = Some(path.display().to_string());
    }
    let results = json!({
        "curve": curve,
        "csv": artifact,
    });
    let mut text = format!(
        "profile log-likelihood, {family} parameter {}\n{:<18} {:>16}\n",
        family.param_names()[param],
        "value",
        "loglik"
    );
    for point in &curve {
        match point.loglik {
            Some(l) => text.push_str(&format!("{:<18.6} {l:>16.4}\n", point.value)),
            None => text.push_str(&format!("{:<18.6} {:>16}\n", point.value, "NA")),
        }
    }
    Ok((
        CliReport {
            command: "profile".into(),
            inputs,
            results,
            warnings,
        },
        text,
    ))
}
