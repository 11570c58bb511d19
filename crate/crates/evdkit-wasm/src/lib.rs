//! Browser bindings for the core crate: density/distribution curves,
//! quantiles, and right-tail classification for the interactive demo page.
//! Every function returns a JSON string; failures come back as
//! `{"error": "..."}` so the page can surface them without exceptions.

use evdkit::tails::rigby_classify;
use evdkit::{Family, Spec};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn parse_spec(family: &str, params: &str) -> Result<Spec, String> {
    let family: Family = family.parse().map_err(|e: evdkit::Error| e.to_string())?;
    let values: Result<Vec<f64>, _> = params
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect();
    let values = values.map_err(|e| format!("bad parameter list: {e}"))?;
    Spec::new(family, &values).map_err(|e| e.to_string())
}

fn error_json(msg: String) -> String {
    json!({ "error": msg }).to_string()
}

/// Family names and parameter labels, for building the page's form.
#[wasm_bindgen]
pub fn families() -> String {
    let list: Vec<_> = Family::ALL
        .iter()
        .map(|f| json!({ "name": f.to_string(), "params": f.param_names() }))
        .collect();
    json!(list).to_string()
}

/// pdf and cdf sampled on `n` points over [x_min, x_max].
#[wasm_bindgen]
pub fn curve(family: &str, params: &str, x_min: f64, x_max: f64, n: usize) -> String {
    let spec = match parse_spec(family, params) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    if !(x_max > x_min) || !(2..=100_000).contains(&n) {
        return error_json("need x_min < x_max and 2 <= n <= 100000".into());
    }
    let mut xs = Vec::with_capacity(n);
    let mut pdf = Vec::with_capacity(n);
    let mut cdf = Vec::with_capacity(n);
    for i in 0..n {
        let x = x_min + (x_max - x_min) * i as f64 / (n - 1) as f64;
        xs.push(x);
        pdf.push(spec.pdf(x));
        cdf.push(spec.cdf(x));
    }
    json!({ "x": xs, "pdf": pdf, "cdf": cdf }).to_string()
}

/// Quantiles at a comma-separated probability list.
#[wasm_bindgen]
pub fn quantiles(family: &str, params: &str, ps: &str) -> String {
    let spec = match parse_spec(family, params) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    let mut rows = Vec::new();
    for token in ps.split(',') {
        let p: f64 = match token.trim().parse() {
            Ok(v) => v,
            Err(e) => return error_json(format!("bad probability '{token}': {e}")),
        };
        match spec.quantile(p) {
            Ok(q) => rows.push(json!({ "p": p, "quantile": q })),
            Err(e) => return error_json(e.to_string()),
        }
    }
    json!(rows).to_string()
}

/// Right-tail classification of the given distribution.
#[wasm_bindgen]
pub fn tail(family: &str, params: &str) -> String {
    let spec = match parse_spec(family, params) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    match rigby_classify(&spec) {
        Ok(c) => serde_json::to_string(&c).unwrap_or_else(|e| error_json(e.to_string())),
        Err(e) => error_json(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_is_json_with_matching_lengths() {
        let text = curve("gev", "0,1,0.1", -3.0, 10.0, 101);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["x"].as_array().unwrap().len(), 101);
        assert_eq!(v["pdf"].as_array().unwrap().len(), 101);
        assert_eq!(v["cdf"].as_array().unwrap().len(), 101);
    }

    #[test]
    fn quantile_and_tail_round_trip() {
        let q: serde_json::Value =
            serde_json::from_str(&quantiles("ev", "0,1", "0.5,0.999")).unwrap();
        assert!((q[1]["quantile"].as_f64().unwrap() - 6.90726).abs() < 1e-4);
        let t: serde_json::Value = serde_json::from_str(&tail("egu", "0,1,0.5")).unwrap();
        assert_eq!(t["rigby_type"], "II");
    }

    #[test]
    fn errors_are_reported_in_band() {
        let v: serde_json::Value = serde_json::from_str(&curve("nope", "0,1", 0.0, 1.0, 5)).unwrap();
        assert!(v["error"].as_str().unwrap().contains("nope"));
        let v: serde_json::Value = serde_json::from_str(&quantiles("ev", "0,1", "2")).unwrap();
        assert!(v["error"].is_string());
    }

    #[test]
    fn families_lists_all_nine() {
        let v: serde_json::Value = serde_json::from_str(&families()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 9);
    }
}
