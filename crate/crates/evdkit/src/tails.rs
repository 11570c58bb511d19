//! Right-tail heaviness: the regular-variation tail index and the
//! classification of ln f(x) by its asymptotic decay shape, with the
//! second-order comparisons that discriminate among the families sharing
//! an exponential-rate tail.

use crate::dist::{Family, Spec};
use crate::error::{Error, Result};
use serde::Serialize;

/// Asymptotic shape of ln f(x) as x grows:
/// type I ~ -k2 (ln x)^k1, type II ~ -k4 x^k3, type III ~ -k6 e^{k5 x}.
/// The types are in decreasing order of tail heaviness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RigbyType {
    I,
    II,
    III,
}

/// Verdict against a Gumbel with the same scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GumbelVerdict {
    Heavier,
    EqualFirstOrder,
    Lighter,
}

/// Result of classifying one distribution's right tail.
#[derive(Debug, Clone, Serialize)]
pub struct TailClassification {
    /// Regular-variation tail index xi (0 for all non-Paretian tails).
    pub tail_index: f64,
    pub rigby_type: RigbyType,
    /// Labeled constants among k1..k6 for the type's asymptotic form.
    pub k_values: Vec<(String, f64)>,
    pub heavier_than_gumbel: GumbelVerdict,
    /// Diagnostic for cases the tabulated rules cannot resolve.
    pub note: Option<String>,
}

impl TailClassification {
    fn k(&self, name: &str) -> Option<f64> {
        self.k_values
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }
}

/// Outcome of a pairwise right-tail comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailComparison {
    AHeavier,
    BHeavier,
    TieUnresolved,
}

/// Regular-variation tail index: alpha for GEV with alpha > 0, otherwise 0
/// (every other family in scope has a rapidly varying right tail).
pub fn tail_index(spec: &Spec) -> f64 {
    match spec.family() {
        Family::Gev => {
            let a = spec.params()[2];
            if a > 0.0 {
                a
            } else {
                0.0
            }
        }
        _ => 0.0,
    }
}

/// Classify the right tail by the asymptotic form of ln f(x).
///
/// GEV with alpha < 0 has a bounded right tail and is outside the
/// classification's scope; that case is an error.
pub fn rigby_classify(spec: &Spec) -> Result<TailClassification> {
    let p = spec.params();
    let sigma = p[1];
    let k = |pairs: &[(&str, f64)]| -> Vec<(String, f64)> {
        pairs.iter().map(|&(n, v)| (n.to_string(), v)).collect()
    };
    let classification = match spec.family() {
        Family::Gev => {
            let a = p[2];
            if a > 0.0 {
                TailClassification {
                    tail_index: a,
                    rigby_type: RigbyType::I,
                    k_values: k(&[("k1", 1.0), ("k2", 1.0 + 1.0 / a)]),
                    heavier_than_gumbel: GumbelVerdict::Heavier,
                    note: None,
                }
            } else if a == 0.0 {
                TailClassification {
                    tail_index: 0.0,
                    rigby_type: RigbyType::II,
                    k_values: k(&[("k3", 1.0), ("k4", 1.0 / sigma)]),
                    heavier_than_gumbel: GumbelVerdict::EqualFirstOrder,
                    note: None,
                }
            } else {
                return Err(Error::Domain(
                    "GEV with negative shape has a bounded right tail; no classification".into(),
                ));
            }
        }
        Family::Ev => TailClassification {
            tail_index: 0.0,
            rigby_type: RigbyType::II,
            k_values: k(&[("k3", 1.0), ("k4", 1.0 / sigma)]),
            heavier_than_gumbel: GumbelVerdict::EqualFirstOrder,
            note: None,
        },
        Family::Tev => {
            let a = p[2];
            TailClassification {
                tail_index: 0.0,
                rigby_type: RigbyType::II,
                k_values: k(&[("k3", 1.0), ("k4", 1.0 / sigma)]),
                heavier_than_gumbel: if a < 0.0 {
                    GumbelVerdict::Heavier
                } else if a > 0.0 {
                    GumbelVerdict::Lighter
                } else {
                    GumbelVerdict::EqualFirstOrder
                },
                note: Some("second-order verdict; exponential rate matches the Gumbel".into()),
            }
        }
        Family::Gtiev3 => TailClassification {
            tail_index: 0.0,
            rigby_type: RigbyType::II,
            k_values: k(&[("k3", 1.0), ("k4", 1.0 / sigma)]),
            heavier_than_gumbel: GumbelVerdict::Lighter,
            note: Some("second-order verdict; exponential rate matches the Gumbel".into()),
        },
        Family::EGu | Family::EGa | Family::GGu => {
            let a = p[2];
            TailClassification {
                tail_index: 0.0,
                rigby_type: RigbyType::II,
                k_values: k(&[("k3", 1.0), ("k4", a / sigma)]),
                heavier_than_gumbel: shape_verdict(a),
                note: None,
            }
        }
        Family::Gliv => {
            let a = p[2];
            TailClassification {
                tail_index: 0.0,
                rigby_type: RigbyType::II,
                k_values: k(&[("k3", 1.0), ("k4", a / sigma)]),
                heavier_than_gumbel: shape_verdict(a),
                note: None,
            }
        }
        Family::Tcev => {
            let sigma1 = p[3];
            let smax = sigma.max(sigma1);
            let (verdict, note) = if sigma1 == sigma {
                (
                    GumbelVerdict::EqualFirstOrder,
                    Some("equal component scales; second-order comparison unresolved".into()),
                )
            } else {
                (GumbelVerdict::Heavier, None)
            };
            TailClassification {
                tail_index: 0.0,
                rigby_type: RigbyType::II,
                k_values: k(&[("k3", 1.0), ("k4", 1.0 / smax)]),
                heavier_than_gumbel: verdict,
                note,
            }
        }
    };
    Ok(classification)
}

fn shape_verdict(a: f64) -> GumbelVerdict {
    if a < 1.0 {
        GumbelVerdict::Heavier
    } else if a > 1.0 {
        GumbelVerdict::Lighter
    } else {
        GumbelVerdict::EqualFirstOrder
    }
}

/// Compare two classifications: lexicographic on (type, k-pair), with the
/// tabulated second-order verdicts as the fallback for exact ties.
pub fn compare_classifications(
    a: &TailClassification,
    b: &TailClassification,
) -> TailComparison {
    let rank = |t: RigbyType| match t {
        RigbyType::I => 0,
        RigbyType::II => 1,
        RigbyType::III => 2,
    };
    let (ra, rb) = (rank(a.rigby_type), rank(b.rigby_type));
    if ra != rb {
        return if ra < rb {
            TailComparison::AHeavier
        } else {
            TailComparison::BHeavier
        };
    }
    // within a type: decreasing the first constant gives a heavier tail;
    // for a fixed first constant, decreasing the second does
    let keys = match a.rigby_type {
        RigbyType::I => ("k1", "k2"),
        RigbyType::II => ("k3", "k4"),
        RigbyType::III => ("k5", "k6"),
    };
    for key in [keys.0, keys.1] {
        match (a.k(key), b.k(key)) {
            (Some(ka), Some(kb)) if ka != kb => {
                return if ka < kb {
                    TailComparison::AHeavier
                } else {
                    TailComparison::BHeavier
                };
            }
            _ => {}
        }
    }
    // exact tie in the asymptotic constants: second-order verdicts
    let score = |v: GumbelVerdict| match v {
        GumbelVerdict::Heavier => 1,
        GumbelVerdict::EqualFirstOrder => 0,
        GumbelVerdict::Lighter => -1,
    };
    let (sa, sb) = (score(a.heavier_than_gumbel), score(b.heavier_than_gumbel));
    match sa.cmp(&sb) {
        std::cmp::Ordering::Greater => TailComparison::AHeavier,
        std::cmp::Ordering::Less => TailComparison::BHeavier,
        std::cmp::Ordering::Equal => TailComparison::TieUnresolved,
    }
}

/// Compare the right tails of two distributions.
pub fn compare_right_tails(a: &Spec, b: &Spec) -> Result<TailComparison> {
    Ok(compare_classifications(
        &rigby_classify(a)?,
        &rigby_classify(b)?,
    ))
}
