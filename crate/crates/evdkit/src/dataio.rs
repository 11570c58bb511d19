//! Dataset handling: the embedded monthly peak-gust wind-speed series,
//! CSV ingestion, and a simple seasonal adjustment.

use crate::error::{Error, Result};
use std::path::Path;

/// A contiguous monthly series. Months are contiguous from the first
/// (year, month) onward; only a trailing gap (short final year) is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct MonthlySeries {
    pub year: Vec<i32>,
    pub month: Vec<u32>,
    pub value: Vec<f64>,
}

/// Seasonal-adjustment method for [`seasonal_adjust`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjustMethod {
    /// Return values unchanged.
    None,
    /// Subtract each calendar month's median deviation from the overall
    /// median, then re-center so the overall median is preserved.
    MonthlyMedian,
}

impl std::str::FromStr for AdjustMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(AdjustMethod::None),
            "monthly_median" | "monthly-median" => Ok(AdjustMethod::MonthlyMedian),
            other => Err(Error::InvalidSpec(format!(
                "unknown adjustment '{other}' (expected none|monthly_median)"
            ))),
        }
    }
}

// Maximum monthly peak gust wind speed (mph), West Palm Beach FL,
// January 1984 through November 2014, row per year, months in order.
const WIND_START_YEAR: i32 = 1984;
const WIND_MPH: [u16; 371] = [
    33, 40, 46, 41, 31, 37, 41, 56, 45, 31, 40, 35, // 1984
    33, 43, 36, 36, 48, 45, 51, 44, 38, 36, 40, 32, // 1985
    51, 37, 43, 33, 35, 44, 41, 41, 33, 45, 38, 43, // 1986
    62, 45, 51, 39, 35, 58, 48, 35, 43, 49, 43, 39, // 1987
    39, 40, 39, 45, 48, 43, 45, 36, 40, 36, 47, 35, // 1988
    40, 39, 44, 37, 36, 38, 37, 41, 38, 36, 36, 48, // 1989
    37, 40, 38, 37, 37, 38, 49, 66, 39, 45, 37, 35, // 1990
    39, 52, 66, 51, 39, 64, 59, 36, 36, 36, 41, 41, // 1991
    39, 45, 40, 37, 33, 66, 38, 59, 38, 41, 45, 35, // 1992
    43, 39, 74, 63, 37, 45, 52, 43, 44, 52, 36, 43, // 1993
    46, 40, 43, 29, 39, 53, 32, 41, 52, 31, 46, 48, // 1994
    49, 41, 32, 37, 29, 43, 40, 47, 45, 38, 28, 30, // 1995
    40, 36, 37, 38, 37, 33, 30, 34, 38, 45, 40, 31, // 1996
    39, 31, 31, 38, 32, 34, 45, 39, 31, 29, 39, 36, // 1997
    34, 55, 38, 37, 36, 34, 44, 32, 54, 30, 39, 30, // 1998
    41, 33, 36, 39, 33, 33, 30, 40, 44, 61, 34, 26, // 1999
    38, 26, 34, 36, 28, 36, 43, 35, 43, 37, 40, 35, // 2000
    36, 28, 41, 30, 31, 48, 43, 43, 49, 36, 38, 30, // 2001
    33, 35, 36, 45, 29, 43, 33, 39, 38, 29, 38, 41, // 2002
    31, 35, 40, 33, 51, 33, 40, 45, 32, 29, 35, 37, // 2003
    35, 30, 32, 39, 32, 39, 38, 39, 83, 30, 33, 39, // 2004
    33, 36, 39, 44, 31, 43, 44, 43, 41, 101, 37, 33, // 2005
    55, 43, 30, 32, 32, 46, 47, 43, 32, 31, 32, 41, // 2006
    37, 37, 44, 43, 33, 41, 49, 39, 40, 43, 36, 35, // 2007
    37, 44, 39, 47, 52, 39, 39, 48, 37, 35, 40, 33, // 2008
    38, 36, 36, 38, 40, 49, 54, 47, 37, 33, 39, 36, // 2009
    36, 62, 43, 32, 32, 58, 35, 35, 38, 32, 33, 46, // 2010
    40, 44, 51, 59, 33, 41, 36, 53, 45, 39, 32, 31, // 2011
    40, 35, 41, 38, 66, 49, 52, 61, 36, 52, 30, 37, // 2012
    31, 35, 45, 40, 40, 47, 38, 51, 37, 46, 39, 31, // 2013
    36, 36, 46, 44, 46, 58, 46, 50, 39, 44, 38, // 2014 (through November)
];

impl MonthlySeries {
    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }

    /// Check equal lengths, month range, and month contiguity.
    pub fn validate(&self) -> Result<()> {
        if self.year.len() != self.value.len() || self.month.len() != self.value.len() {
            return Err(Error::InvariantViolation(
                "year/month/value sequences differ in length".into(),
            ));
        }
        for (i, &m) in self.month.iter().enumerate() {
            if !(1..=12).contains(&m) {
                return Err(Error::InvariantViolation(format!(
                    "month out of range at row {}: {m}",
                    i + 1
                )));
            }
        }
        for i in 1..self.len() {
            let expected = if self.month[i - 1] == 12 {
                (self.year[i - 1] + 1, 1)
            } else {
                (self.year[i - 1], self.month[i - 1] + 1)
            };
            if (self.year[i], self.month[i]) != expected {
                return Err(Error::InvariantViolation(format!(
                    "months not contiguous at row {}: {}-{:02} follows {}-{:02}",
                    i + 1,
                    self.year[i],
                    self.month[i],
                    self.year[i - 1],
                    self.month[i - 1]
                )));
            }
        }
        Ok(())
    }

    /// Serialize as `year,month,value` CSV (the format [`read_csv`] accepts).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("year,month,value\n");
        for i in 0..self.len() {
            out.push_str(&format!("{},{},{}\n", self.year[i], self.month[i], self.value[i]));
        }
        out
    }
}

/// The embedded wind-speed series (371 observations).
pub fn load_embedded_wind() -> MonthlySeries {
    let mut year = Vec::with_capacity(WIND_MPH.len());
    let mut month = Vec::with_capacity(WIND_MPH.len());
    for i in 0..WIND_MPH.len() {
        year.push(WIND_START_YEAR + (i / 12) as i32);
        month.push((i % 12) as u32 + 1);
    }
    MonthlySeries {
        year,
        month,
        value: WIND_MPH.iter().map(|&v| v as f64).collect(),
    }
}

/// Read a `year,month,value` CSV file (header required, decimal point only).
pub fn read_csv(path: &Path) -> Result<MonthlySeries> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text)
}

/// Parse CSV text in the `year,month,value` format.
pub fn parse_csv(text: &str) -> Result<MonthlySeries> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        row: 1,
        col: "header".into(),
        msg: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["year", "month", "value"] {
        return Err(Error::Parse {
            row: 1,
            col: "header".into(),
            msg: format!("expected 'year,month,value', got '{header}'"),
        });
    }
    let mut series = MonthlySeries {
        year: Vec::new(),
        month: Vec::new(),
        value: Vec::new(),
    };
    for (idx, line) in lines {
        let row = idx + 1; // 1-based, counting the header as row 1
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                row,
                col: "row".into(),
                msg: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let parse = |col: &str, s: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::Parse {
                row,
                col: col.into(),
                msg: format!("not a number: '{s}'"),
            })
        };
        let y = parse("year", fields[0])?;
        let m = parse("month", fields[1])?;
        let v = parse("value", fields[2])?;
        if y.fract() != 0.0 || m.fract() != 0.0 {
            return Err(Error::Parse {
                row,
                col: "year/month".into(),
                msg: "year and month must be integers".into(),
            });
        }
        series.year.push(y as i32);
        series.month.push(m as u32);
        series.value.push(v);
    }
    series.validate()?;
    Ok(series)
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Remove the seasonal component. `MonthlyMedian` needs at least 24
/// observations; the overall median level is preserved exactly.
pub fn seasonal_adjust(series: &MonthlySeries, method: AdjustMethod) -> Result<Vec<f64>> {
    series.validate()?;
    match method {
        AdjustMethod::None => Ok(series.value.clone()),
        AdjustMethod::MonthlyMedian => {
            if series.len() < 24 {
                return Err(Error::InsufficientData {
                    needed: 24,
                    got: series.len(),
                });
            }
            let overall = median(&series.value);
            let mut by_month: [Vec<f64>; 12] = Default::default();
            for i in 0..series.len() {
                by_month[(series.month[i] - 1) as usize].push(series.value[i]);
            }
            let month_median: Vec<f64> = by_month
                .iter()
                .map(|v| if v.is_empty() { overall } else { median(v) })
                .collect();
            let mut adjusted: Vec<f64> = (0..series.len())
                .map(|i| {
                    series.value[i] - (month_median[(series.month[i] - 1) as usize] - overall)
                })
                .collect();
            // re-center so the median level is exactly preserved
            let shift = overall - median(&adjusted);
            for v in &mut adjusted {
                *v += shift;
            }
            Ok(adjusted)
        }
    }
}
