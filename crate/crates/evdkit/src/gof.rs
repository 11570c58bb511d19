//! Model-adequacy measures: AIC, the right-tail Anderson-Darling variants
//! ADR and AD2R, the .999-quantile discrepancy, and parametric-bootstrap
//! QQ envelopes.

use crate::dist::{Family, Spec};
use crate::error::{Error, Result};
use crate::seeding::derive_seed;
use rayon::prelude::*;
use serde::Serialize;

/// Probability-scale clamp applied to fitted cdf values so the log/ratio
/// terms stay finite and runs are bit-reproducible.
pub const Z_CLAMP: f64 = 1e-12;

/// Akaike information criterion, -2 loglik + 2k.
pub fn aic(loglik: f64, k: usize) -> f64 {
    -2.0 * loglik + 2.0 * k as f64
}

// Sorted, clamped probability transforms z_(i) = F(x_(i)).
fn sorted_z(data: &[f64], spec: &Spec) -> Result<Vec<f64>> {
    if data.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut z: Vec<f64> = data
        .iter()
        .map(|&x| spec.cdf(x).clamp(Z_CLAMP, 1.0 - Z_CLAMP))
        .collect();
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateData(
            "fitted cdf produced non-finite values".into(),
        ));
    }
    z.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(z)
}

/// Right-tail Anderson-Darling statistic
/// AD_R = n/2 - 2 sum z_(i) - (1/n) sum (2i-1) ln(1 - z_(n+1-i)).
pub fn adr(data: &[f64], spec: &Spec) -> Result<f64> {
    let z = sorted_z(data, spec)?;
    Ok(adr_from_z(&z))
}

/// AD_R evaluated directly on sorted probability transforms.
pub fn adr_from_z(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let s1: f64 = z.iter().sum();
    let s2: f64 = z
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &znp1mi)| (2.0 * (i as f64 + 1.0) - 1.0) * (1.0 - znp1mi).ln())
        .sum();
    n / 2.0 - 2.0 * s1 - s2 / n
}

/// Second-order right-tail statistic
/// AD2R = 2 sum ln(1 - z_(i)) + (1/n) sum (2i-1)/(1 - z_(n+1-i)).
pub fn ad2r(data: &[f64], spec: &Spec) -> Result<f64> {
    let z = sorted_z(data, spec)?;
    Ok(ad2r_from_z(&z))
}

/// AD2R evaluated directly on sorted probability transforms.
pub fn ad2r_from_z(z: &[f64]) -> f64 {
    let n = z.len() as f64;
    let s1: f64 = z.iter().map(|&v| (1.0 - v).ln()).sum();
    let s2: f64 = z
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &znp1mi)| (2.0 * (i as f64 + 1.0) - 1.0) / (1.0 - znp1mi))
        .sum();
    2.0 * s1 + s2 / n
}

/// Relative discrepancy of the fitted .999 quantile against a reference:
/// (q_fit - q_ref) / q_ref.
pub fn q999_discrepancy(fitted: &Spec, reference: &Spec) -> Result<f64> {
    let qf = fitted.quantile(0.999)?;
    let qr = reference.quantile(0.999)?;
    if qr == 0.0 {
        return Err(Error::Domain(
            "reference .999 quantile is zero; discrepancy undefined".into(),
        ));
    }
    Ok((qf - qr) / qr)
}

/// Per-family gof summary.
#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    pub family: Family,
    pub n: usize,
    pub aic: f64,
    pub adr: f64,
    pub ad2r: f64,
    /// `None` when no reference distribution is supplied.
    pub q999_discrepancy: Option<f64>,
}

/// Score a fitted spec on `data` (AIC needs the fit's log-likelihood).
pub fn gof_report(
    data: &[f64],
    spec: &Spec,
    loglik: f64,
    reference: Option<&Spec>,
) -> Result<GofReport> {
    Ok(GofReport {
        family: spec.family(),
        n: data.len(),
        aic: aic(loglik, spec.family().param_count()),
        adr: adr(data, spec)?,
        ad2r: ad2r(data, spec)?,
        q999_discrepancy: match reference {
            Some(r) => Some(q999_discrepancy(spec, r)?),
            None => None,
        },
    })
}

/// Pointwise parametric-bootstrap QQ envelope.
#[derive(Debug, Clone, Serialize)]
pub struct QqEnvelope {
    /// Plotting positions (i - 0.5)/n.
    pub p: Vec<f64>,
    pub theoretical_q: Vec<f64>,
    pub empirical_q: Vec<f64>,
    pub lower_band: Vec<f64>,
    pub upper_band: Vec<f64>,
    pub coverage: f64,
    pub replicates: usize,
}

impl QqEnvelope {
    /// CSV with columns index, p, theoretical_q, empirical_q, lower, upper.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,p,theoretical_q,empirical_q,lower,upper\n");
        for i in 0..self.p.len() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                i + 1,
                self.p[i],
                self.theoretical_q[i],
                self.empirical_q[i],
                self.lower_band[i],
                self.upper_band[i]
            ));
        }
        out
    }
}

/// Bootstrap QQ envelope: `replicates` samples of the data's size are drawn
/// from `spec` (per-replicate derived seeds, so results are independent of
/// scheduling) and the band is the pointwise coverage interval of their
/// sorted order statistics.
pub fn qq_envelope(
    data: &[f64],
    spec: &Spec,
    replicates: usize,
    coverage: f64,
    seed: u64,
) -> Result<QqEnvelope> {
    if replicates < 100 {
        return Err(Error::Domain(format!(
            "need at least 100 bootstrap replicates, got {replicates}"
        )));
    }
    if !(coverage > 0.0 && coverage < 1.0) {
        return Err(Error::Domain(format!(
            "coverage must be in (0,1), got {coverage}"
        )));
    }
    let n = data.len();
    if n == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let mut empirical_q = data.to_vec();
    empirical_q.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let p: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let theoretical_q: Vec<f64> = p
        .iter()
        .map(|&pi| spec.quantile(pi))
        .collect::<Result<_>>()?;

    // replicate-major matrix of sorted bootstrap samples
    let boot: Vec<Vec<f64>> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            let mut s = spec.sample(n, derive_seed(seed, 0, r as u64));
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            s
        })
        .collect();

    let lo_q = (1.0 - coverage) / 2.0;
    let hi_q = (1.0 + coverage) / 2.0;
    let mut lower_band = Vec::with_capacity(n);
    let mut upper_band = Vec::with_capacity(n);
    let mut col = vec![0.0; replicates];
    for i in 0..n {
        for (r, row) in boot.iter().enumerate() {
            col[r] = row[i];
        }
        col.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // nearest-rank order statistics keep the output bit-reproducible
        let idx = |q: f64| (((replicates - 1) as f64 * q).round() as usize).min(replicates - 1);
        lower_band.push(col[idx(lo_q)]);
        upper_band.push(col[idx(hi_q)]);
    }
    Ok(QqEnvelope {
        p,
        theoretical_q,
        empirical_q,
        lower_band,
        upper_band,
        coverage,
        replicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aic_reference_values() {
        assert!((aic(-1245.08, 2) - 2494.16).abs() < 1e-9);
        assert!((aic(0.0, 1) - 2.0).abs() < 1e-12);
        assert!((aic(-1242.59, 3) - 2491.18).abs() < 1e-9);
    }

    // Independent oracle: adaptive Simpson integration of the defining
    // integrals n * int (Fn(t) - t)^2 / (1-t)^k dt over t in (0,1), with
    // Fn the empirical cdf of the z-values.
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        s * h / 3.0
    }

    fn ad_integral(z: &[f64], k: i32) -> f64 {
        let n = z.len();
        let mut knots = vec![0.0];
        knots.extend_from_slice(z);
        knots.push(1.0);
        let mut total = 0.0;
        for seg in 0..=n {
            let (a, b) = (knots[seg], knots[seg + 1]);
            if b <= a {
                continue;
            }
            let fn_val = seg as f64 / n as f64;
            let f = |t: f64| (fn_val - t).powi(2) / (1.0 - t).powi(k);
            // keep away from the t = 1 singularity in the last segment
            let b_eff = if seg == n { b - 1e-9 } else { b };
            total += simpson(&f, a + 1e-15, b_eff, 2000);
            if seg == n && k == 2 {
                // integrand is exactly 1 on the clipped sliver
                total += b - b_eff;
            } else if seg == n && k == 1 {
                total += 0.0; // integrand -> 0 there
            }
        }
        n as f64 * total
    }

    #[test]
    fn ad_statistics_match_integral_definitions() {
        for &n in &[10usize, 50] {
            let z: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
            let adr_c = adr_from_z(&z);
            let ad2r_c = ad2r_from_z(&z);
            let adr_i = ad_integral(&z, 1);
            let ad2r_i = ad_integral(&z, 2);
            assert!((adr_c - adr_i).abs() < 1e-3, "n={n}: {adr_c} vs {adr_i}");
            assert!((ad2r_c - ad2r_i).abs() < 1e-3, "n={n}: {ad2r_c} vs {ad2r_i}");
        }
        // non-uniform z as well
        let z = vec![0.05, 0.2, 0.21, 0.5, 0.77, 0.91, 0.95, 0.97, 0.98, 0.995];
        assert!((adr_from_z(&z) - ad_integral(&z, 1)).abs() < 1e-3);
        assert!((ad2r_from_z(&z) - ad_integral(&z, 2)).abs() < 1e-3);
    }

    #[test]
    fn ad_depends_only_on_z_values() {
        // strictly increasing data transformations leave z fixed, so
        // feeding the same z through different (data, spec) routes agrees
        let spec = Spec::new(Family::Ev, &[0.0, 1.0]).unwrap();
        let z: Vec<f64> = (0..20).map(|i| (i as f64 + 0.5) / 20.0).collect();
        let data: Vec<f64> = z.iter().map(|&p| spec.quantile(p).unwrap()).collect();
        let spec2 = Spec::new(Family::Ev, &[5.0, 2.0]).unwrap();
        let data2: Vec<f64> = z.iter().map(|&p| spec2.quantile(p).unwrap()).collect();
        assert!((adr(&data, &spec).unwrap() - adr(&data2, &spec2).unwrap()).abs() < 1e-9);
        assert!((ad2r(&data, &spec).unwrap() - ad2r(&data2, &spec2).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn q999_examples() {
        let ev = Spec::new(Family::Ev, &[0.0, 1.0]).unwrap();
        let gev = Spec::new(Family::Gev, &[0.0, 1.0, 0.1]).unwrap();
        assert_eq!(q999_discrepancy(&ev, &ev).unwrap(), 0.0);
        let d = q999_discrepancy(&ev, &gev).unwrap();
        assert!((d + 0.3055).abs() < 0.005, "got {d}");
        let d = q999_discrepancy(&gev, &ev).unwrap();
        assert!((d - 0.4399).abs() < 0.005, "got {d}");
    }

    #[test]
    fn envelope_self_consistency() {
        let spec = Spec::new(Family::Ev, &[0.0, 1.0]).unwrap();
        let data = spec.sample(371, 19);
        let env = qq_envelope(&data, &spec, 1000, 0.90, 7).unwrap();
        let inside = (0..data.len())
            .filter(|&i| env.empirical_q[i] >= env.lower_band[i] && env.empirical_q[i] <= env.upper_band[i])
            .count();
        let frac = inside as f64 / data.len() as f64;
        assert!(frac >= 0.80, "only {frac} of points inside the 90% band");
        // bands are ordered and bracket the theoretical curve loosely
        for i in 0..data.len() {
            assert!(env.lower_band[i] <= env.upper_band[i]);
        }
    }

    #[test]
    fn envelope_extreme_coverage_contains_everything() {
        let spec = Spec::new(Family::Ev, &[0.0, 1.0]).unwrap();
        let data = spec.sample(100, 3);
        let env = qq_envelope(&data, &spec, 400, 0.999999, 99).unwrap();
        for i in 0..data.len() {
            assert!(env.empirical_q[i] >= env.lower_band[i] - 1e-12);
            assert!(env.empirical_q[i] <= env.upper_band[i] + 1e-12);
        }
    }

    #[test]
    fn envelope_is_deterministic() {
        let spec = Spec::new(Family::Gev, &[0.0, 1.0, 0.1]).unwrap();
        let data = spec.sample(50, 1);
        let a = qq_envelope(&data, &spec, 200, 0.9, 5).unwrap();
        let b = qq_envelope(&data, &spec, 200, 0.9, 5).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn envelope_validates_arguments() {
        let spec = Spec::new(Family::Ev, &[0.0, 1.0]).unwrap();
        let data = spec.sample(50, 1);
        assert!(qq_envelope(&data, &spec, 99, 0.9, 5).is_err());
        assert!(qq_envelope(&data, &spec, 200, 1.0, 5).is_err());
    }
}
