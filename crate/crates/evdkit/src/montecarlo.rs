//! Simulation study harness: draw replicates from a set of generator
//! distributions, fit a set of competitors to each, and aggregate the
//! AIC / ADR / AD2R / .999-quantile-discrepancy distributions per
//! (generator, fitter) cell. Replicates use derived seeds, so results are
//! independent of execution order and the harness parallelizes freely.

use crate::dist::{Family, Spec};
use crate::error::{Error, Result};
use crate::estimate::{fit_gev_pwm, fit_mle, fit_tev_profile, FitConfig, FitMethod, FitResult};
use crate::gof::{ad2r, adr, aic, q999_discrepancy};
use crate::seeding::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

/// One competitor: a family and the estimation method to use for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fitter {
    pub family: Family,
    pub method: FitMethod,
}

impl Fitter {
    pub fn mle(family: Family) -> Fitter {
        Fitter {
            family,
            method: FitMethod::Mle,
        }
    }

    /// Stable label used in the CSV/JSON outputs, e.g. `gev_pwm`.
    pub fn label(&self) -> String {
        let m = match self.method {
            FitMethod::Mle => "mle",
            FitMethod::Pwm => "pwm",
            FitMethod::ProfileMle => "profile_mle",
        };
        format!("{}_{m}", self.family)
    }
}

/// The standard generator configurations for the study.
pub fn standard_generators() -> Vec<Spec> {
    vec![
        Spec::new(Family::Ev, &[0.0, 1.0]).unwrap(),
        Spec::new(Family::Gev, &[0.0, 1.0, 0.1]).unwrap(),
        Spec::new(Family::EGu, &[0.0, 1.0, 0.7]).unwrap(),
        Spec::new(Family::Tev, &[0.0, 1.0, -0.99]).unwrap(),
        Spec::new(Family::EGa, &[0.0, 1.0, 0.7]).unwrap(),
        Spec::new(Family::GGu, &[0.0, 1.0, 0.7]).unwrap(),
        Spec::new(Family::Gliv, &[0.0, 1.0, 0.65, 15.0]).unwrap(),
        Spec::new(Family::Tcev, &[0.0, 1.0, 10.0, 5.0, 0.0016]).unwrap(),
    ]
}

/// Alternate generator configurations (second parameter choices).
pub fn alternate_generators() -> Vec<Spec> {
    vec![
        Spec::new(Family::EGu, &[0.0, 1.0, 0.6]).unwrap(),
        Spec::new(Family::EGa, &[0.0, 1.0, 0.6]).unwrap(),
        Spec::new(Family::Gliv, &[0.0, 1.0, 0.55, 10.0]).unwrap(),
        Spec::new(Family::Tcev, &[0.0, 1.0, 10.0, 5.0, 0.0125]).unwrap(),
    ]
}

/// Default competitor set: maximum likelihood for every family except
/// GTIEV3 (whose right tail is indistinguishable from the Gumbel's, so it
/// adds nothing to the comparison and can be enabled explicitly), plus the
/// probability-weighted-moments GEV fit.
pub fn default_fitters() -> Vec<Fitter> {
    vec![
        Fitter::mle(Family::Ev),
        Fitter::mle(Family::Gev),
        Fitter {
            family: Family::Gev,
            method: FitMethod::Pwm,
        },
        Fitter::mle(Family::EGu),
        Fitter::mle(Family::Tev),
        Fitter::mle(Family::EGa),
        Fitter::mle(Family::GGu),
        Fitter::mle(Family::Gliv),
        Fitter::mle(Family::Tcev),
    ]
}

/// Study layout and budget.
#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub generators: Vec<Spec>,
    pub fitters: Vec<Fitter>,
    pub n_per_sample: usize,
    pub n_replicates: usize,
    pub seed: u64,
    pub fit_config: FitConfig,
}

impl StudyConfig {
    /// Desk-scale default: the standard generators and fitters at
    /// 200 replicates of size 500.
    pub fn desk(seed: u64) -> StudyConfig {
        StudyConfig {
            generators: standard_generators(),
            fitters: default_fitters(),
            n_per_sample: 500,
            n_replicates: 200,
            seed,
            fit_config: FitConfig::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.generators.is_empty() || self.fitters.is_empty() {
            return Err(Error::InvalidSpec(
                "study needs at least one generator and one fitter".into(),
            ));
        }
        if self.n_per_sample < 20 {
            return Err(Error::InvalidSpec(format!(
                "n_per_sample must be at least 20, got {}",
                self.n_per_sample
            )));
        }
        if self.n_replicates < 10 {
            return Err(Error::InvalidSpec(format!(
                "n_replicates must be at least 10, got {}",
                self.n_replicates
            )));
        }
        for f in &self.fitters {
            match f.method {
                FitMethod::Pwm if f.family != Family::Gev => {
                    return Err(Error::InvalidSpec(
                        "probability-weighted moments is only available for the GEV".into(),
                    ));
                }
                FitMethod::ProfileMle if f.family != Family::Tev => {
                    return Err(Error::InvalidSpec(
                        "the profile-likelihood fit is only available for the TEV".into(),
                    ));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Metrics of one successful fit within a replicate.
#[derive(Debug, Clone, Serialize)]
pub struct ReplicateMetrics {
    pub params: Vec<f64>,
    pub loglik: f64,
    pub aic: f64,
    pub adr: f64,
    pub ad2r: f64,
    /// Relative discrepancy of the fitted .999 quantile against the
    /// generator's.
    pub q999_discrepancy: f64,
    pub converged: bool,
}

/// One replicate's outcome in a cell: either metrics or a failure message.
#[derive(Debug, Clone, Serialize)]
pub struct ReplicateRecord {
    pub replicate: usize,
    pub metrics: Option<ReplicateMetrics>,
    pub error: Option<String>,
}

/// Minimum, quartiles, and maximum of a metric across a cell's successful
/// replicates (linear interpolation between order statistics).
#[derive(Debug, Clone, Serialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub n: usize,
}

fn five_number(values: &[f64]) -> Option<FiveNumber> {
    let mut v: Vec<f64> = values.iter().cloned().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let q = |p: f64| -> f64 {
        let h = p * (v.len() - 1) as f64;
        let i = h.floor() as usize;
        let frac = h - i as f64;
        if i + 1 < v.len() {
            v[i] + frac * (v[i + 1] - v[i])
        } else {
            v[i]
        }
    };
    Some(FiveNumber {
        min: v[0],
        q1: q(0.25),
        median: q(0.5),
        q3: q(0.75),
        max: v[v.len() - 1],
        n: v.len(),
    })
}

const METRIC_NAMES: [&str; 5] = ["loglik", "aic", "adr", "ad2r", "q999_discrepancy"];

fn metric_value(m: &ReplicateMetrics, name: &str) -> f64 {
    match name {
        "loglik" => m.loglik,
        "aic" => m.aic,
        "adr" => m.adr,
        "ad2r" => m.ad2r,
        "q999_discrepancy" => m.q999_discrepancy,
        _ => unreachable!(),
    }
}

/// All replicate outcomes for one (generator, fitter) pair.
#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub generator: Spec,
    pub fitter: Fitter,
    pub replicates: Vec<ReplicateRecord>,
    pub failures: usize,
    /// Per-metric five-number summaries over the successful replicates,
    /// in a fixed metric order; `None` when every replicate failed.
    pub summaries: Vec<(String, Option<FiveNumber>)>,
}

/// Full study output.
#[derive(Debug, Clone, Serialize)]
pub struct StudyReport {
    pub n_per_sample: usize,
    pub n_replicates: usize,
    pub seed: u64,
    pub cells: Vec<Cell>,
}

impl StudyReport {
    /// Long-format CSV, one row per (generator, fitter, replicate, metric).
    /// Failed replicates emit `NA` values so nothing is silently dropped.
    pub fn to_long_csv(&self) -> String {
        let mut out = String::from("generator,fitter,replicate,metric,value\n");
        for cell in &self.cells {
            let g = spec_label(&cell.generator);
            let f = cell.fitter.label();
            for rec in &cell.replicates {
                for name in METRIC_NAMES {
                    let value = match &rec.metrics {
                        Some(m) => format!("{}", metric_value(m, name)),
                        None => "NA".to_string(),
                    };
                    out.push_str(&format!("{g},{f},{},{name},{value}\n", rec.replicate));
                }
            }
        }
        out
    }

    /// Compact JSON summary: per-cell failure counts and five-number
    /// summaries, without the per-replicate records.
    pub fn summary_json(&self) -> String {
        #[derive(Serialize)]
        struct CellSummary<'a> {
            generator: String,
            fitter: String,
            failures: usize,
            summaries: &'a Vec<(String, Option<FiveNumber>)>,
        }
        #[derive(Serialize)]
        struct Summary<'a> {
            n_per_sample: usize,
            n_replicates: usize,
            seed: u64,
            cells: Vec<CellSummary<'a>>,
        }
        let summary = Summary {
            n_per_sample: self.n_per_sample,
            n_replicates: self.n_replicates,
            seed: self.seed,
            cells: self
                .cells
                .iter()
                .map(|c| CellSummary {
                    generator: spec_label(&c.generator),
                    fitter: c.fitter.label(),
                    failures: c.failures,
                    summaries: &c.summaries,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail")
    }

    /// The cell for a (generator index, fitter index) pair.
    pub fn cell(&self, generator: usize, fitter: usize, n_fitters: usize) -> &Cell {
        &self.cells[generator * n_fitters + fitter]
    }
}

/// Human-readable generator label, e.g. `tcev(0,1,10,5,0.0016)`.
pub fn spec_label(spec: &Spec) -> String {
    let params: Vec<String> = spec.params().iter().map(|p| format!("{p}")).collect();
    format!("{}({})", spec.family(), params.join(","))
}

fn fit_once(data: &[f64], fitter: Fitter, config: &FitConfig) -> Result<FitResult> {
    match fitter.method {
        FitMethod::Mle => fit_mle(data, fitter.family, config),
        FitMethod::Pwm => fit_gev_pwm(data),
        FitMethod::ProfileMle => fit_tev_profile(data, config),
    }
}

fn run_replicate(
    data: &[f64],
    generator: &Spec,
    fitter: Fitter,
    config: &FitConfig,
    replicate: usize,
) -> ReplicateRecord {
    let outcome = fit_once(data, fitter, config).and_then(|fit| {
        Ok(ReplicateMetrics {
            params: fit.spec.params().to_vec(),
            loglik: fit.loglik,
            aic: aic(fit.loglik, fitter.family.param_count()),
            adr: adr(data, &fit.spec)?,
            ad2r: ad2r(data, &fit.spec)?,
            q999_discrepancy: q999_discrepancy(&fit.spec, generator)?,
            converged: fit.converged,
        })
    });
    match outcome {
        Ok(metrics) => ReplicateRecord {
            replicate,
            metrics: Some(metrics),
            error: None,
        },
        Err(e) => ReplicateRecord {
            replicate,
            metrics: None,
            error: Some(e.to_string()),
        },
    }
}

/// Run the study. Replicate `r` of generator `g` draws its sample with the
/// derived seed `(seed, g, r)`; each fitter in the row sees the same data.
pub fn run_study(config: &StudyConfig) -> Result<StudyReport> {
    config.validate()?;
    let n_gen = config.generators.len();
    let n_fit = config.fitters.len();
    let n_rep = config.n_replicates;

    // one work unit per (generator, replicate); rayon's ordered collect
    // keeps the output deterministic regardless of scheduling
    let rows: Vec<Vec<ReplicateRecord>> = (0..n_gen * n_rep)
        .into_par_iter()
        .map(|task| {
            let (g, r) = (task / n_rep, task % n_rep);
            let generator = &config.generators[g];
            let seed = derive_seed(config.seed, g as u64, r as u64);
            let data = generator.sample(config.n_per_sample, seed);
            config
                .fitters
                .iter()
                .map(|&f| run_replicate(&data, generator, f, &config.fit_config, r))
                .collect()
        })
        .collect();

    let mut cells = Vec::with_capacity(n_gen * n_fit);
    for g in 0..n_gen {
        for f in 0..n_fit {
            let replicates: Vec<ReplicateRecord> = (0..n_rep)
                .map(|r| rows[g * n_rep + r][f].clone())
                .collect();
            let failures = replicates.iter().filter(|r| r.metrics.is_none()).count();
            let summaries = METRIC_NAMES
                .iter()
                .map(|&name| {
                    let values: Vec<f64> = replicates
                        .iter()
                        .filter_map(|r| r.metrics.as_ref().map(|m| metric_value(m, name)))
                        .collect();
                    (name.to_string(), five_number(&values))
                })
                .collect();
            cells.push(Cell {
                generator: config.generators[g].clone(),
                fitter: config.fitters[f],
                replicates,
                failures,
                summaries,
            });
        }
    }
    Ok(StudyReport {
        n_per_sample: config.n_per_sample,
        n_replicates: n_rep,
        seed: config.seed,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> StudyConfig {
        StudyConfig {
            generators: vec![
                Spec::new(Family::Ev, &[0.0, 1.0]).unwrap(),
                Spec::new(Family::Gev, &[0.0, 1.0, 0.1]).unwrap(),
            ],
            fitters: vec![
                Fitter::mle(Family::Ev),
                Fitter::mle(Family::Gev),
                Fitter {
                    family: Family::Gev,
                    method: FitMethod::Pwm,
                },
            ],
            n_per_sample: 60,
            n_replicates: 10,
            seed: 42,
            fit_config: FitConfig::default(),
        }
    }

    #[test]
    fn deterministic_and_complete() {
        let config = small_config();
        let a = run_study(&config).unwrap();
        let b = run_study(&config).unwrap();
        assert_eq!(a.to_long_csv(), b.to_long_csv());
        assert_eq!(a.summary_json(), b.summary_json());
        assert_eq!(a.cells.len(), 6);
        for cell in &a.cells {
            assert_eq!(cell.replicates.len(), 10);
            assert_eq!(
                cell.failures,
                cell.replicates.iter().filter(|r| r.metrics.is_none()).count()
            );
        }
        // header + one row per (cell, replicate, metric)
        assert_eq!(a.to_long_csv().lines().count(), 1 + 6 * 10 * 5);
    }

    #[test]
    fn nesting_and_pwm_inequalities() {
        let report = run_study(&small_config()).unwrap();
        let n_fit = 3;
        for g in 0..2 {
            let ev = report.cell(g, 0, n_fit);
            let gev_mle = report.cell(g, 1, n_fit);
            let gev_pwm = report.cell(g, 2, n_fit);
            for r in 0..10 {
                let lev = ev.replicates[r].metrics.as_ref().unwrap().loglik;
                let lmle = gev_mle.replicates[r].metrics.as_ref().unwrap().loglik;
                let lpwm = gev_pwm.replicates[r].metrics.as_ref().unwrap().loglik;
                assert!(lmle >= lev - 1e-6, "nesting violated: {lmle} < {lev}");
                assert!(lmle >= lpwm - 1e-9, "MLE below PWM: {lmle} < {lpwm}");
            }
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = small_config();
        c.n_per_sample = 10;
        assert!(run_study(&c).is_err());
        let mut c = small_config();
        c.n_replicates = 5;
        assert!(run_study(&c).is_err());
        let mut c = small_config();
        c.fitters = vec![Fitter {
            family: Family::Ev,
            method: FitMethod::Pwm,
        }];
        assert!(run_study(&c).is_err());
        let mut c = small_config();
        c.generators.clear();
        assert!(run_study(&c).is_err());
    }

    #[test]
    fn large_sample_fit_recovers_the_generator_quantile() {
        let generator = Spec::new(Family::Gev, &[0.0, 1.0, 0.1]).unwrap();
        let data = generator.sample(100_000, 7);
        let fit = fit_mle(&data, Family::Gev, &FitConfig::default()).unwrap();
        let d = q999_discrepancy(&fit.spec, &generator).unwrap();
        assert!(d.abs() < 0.05, "large-n discrepancy {d}");
    }

    #[test]
    fn preset_lists() {
        assert_eq!(standard_generators().len(), 8);
        assert_eq!(alternate_generators().len(), 4);
        assert!(default_fitters()
            .iter()
            .all(|f| f.family != Family::Gtiev3));
        assert_eq!(
            spec_label(&Spec::new(Family::Tcev, &[0.0, 1.0, 10.0, 5.0, 0.0016]).unwrap()),
            "tcev(0,1,10,5,0.0016)"
        );
    }
}
