//! Text and JSON encodings of a diagnostics report.
//!
//! Absent stability bounds are written as `none` in text and `null` in JSON.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::fmt::{fmt17, parse_f64};

use super::{Diagnostics, StabilityBounds};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Report {
    pub diagnostics: Diagnostics,
    pub stability: Option<StabilityBounds>,
}

impl Report {
    fn fields(&self) -> Vec<(&'static str, Option<f64>)> {
        let d = &self.diagnostics;
        let mut out = vec![
            ("alpha_P", Some(d.alpha_p)),
            ("alpha_D", Some(d.alpha_d)),
            ("beta_P", Some(d.beta_p)),
            ("beta_D", Some(d.beta_d)),
            ("gamma_P", Some(d.gamma_p)),
            ("gamma_D", Some(d.gamma_d)),
            ("sigma_min_Qbar", Some(d.sigma_min_qbar)),
            ("kappa_core", Some(d.kappa_core)),
            ("kappa_empirical", Some(d.kappa_empirical)),
            ("a_flat_inf", Some(d.a_flat_inf)),
        ];
        if let Some(s) = &self.stability {
            out.extend([
                ("delta_ub_beta", s.delta_ub_beta),
                ("delta_ub_sigma", s.delta_ub_sigma),
                ("delta_ub_alpha", s.delta_ub_alpha),
                ("delta_empirical", Some(s.delta_empirical)),
            ]);
        }
        out
    }

    /// One `name=value` line per field.
    pub fn to_text(&self) -> String {
        self.fields()
            .into_iter()
            .map(|(k, v)| format!("{k}={}\n", v.map_or("none".to_string(), fmt17)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .fields()
            .into_iter()
            .map(|(k, v)| {
                let val = match v {
                    Some(x) if x.is_finite() => fmt17(x),
                    _ => "null".to_string(),
                };
                format!("  \"{k}\": {val}")
            })
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let get = |k: &str| -> Result<Option<f64>> {
            match &v[k] {
                Value::Null => Ok(None),
                x => x.as_f64().map(Some).ok_or_else(|| Error::Parse(format!("`{k}` is not a number"))),
            }
        };
        // Non-finite diagnostics are written as null and read back as +inf.
        let req = |k: &str| -> Result<f64> { Ok(get(k)?.unwrap_or(f64::INFINITY)) };
        let diagnostics = Diagnostics {
            alpha_p: req("alpha_P")?,
            alpha_d: req("alpha_D")?,
            beta_p: req("beta_P")?,
            beta_d: req("beta_D")?,
            gamma_p: req("gamma_P")?,
            gamma_d: req("gamma_D")?,
            sigma_min_qbar: req("sigma_min_Qbar")?,
            kappa_core: req("kappa_core")?,
            kappa_empirical: req("kappa_empirical")?,
            a_flat_inf: req("a_flat_inf")?,
        };
        let stability = if v.get("delta_empirical").is_some() {
            Some(StabilityBounds {
                delta_ub_beta: get("delta_ub_beta")?,
                delta_ub_sigma: get("delta_ub_sigma")?,
                delta_ub_alpha: get("delta_ub_alpha")?,
                delta_empirical: req("delta_empirical")?,
            })
        } else {
            None
        };
        Ok(Self { diagnostics, stability })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut obj = serde_json::Map::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got `{line}`")))?;
            let value = match v.trim() {
                "none" => Value::Null,
                s => {
                    let x = parse_f64(s).ok_or_else(|| Error::Parse(format!("bad number `{s}`")))?;
                    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
                }
            };
            obj.insert(k.trim().to_string(), value);
        }
        Self::from_json(&Value::Object(obj).to_string())
    }
}
