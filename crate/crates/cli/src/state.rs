//! The JSON state file.
//!
//! ```json
//! { "a": [0, 0.64, 0], "b": [0, 0.64, 0], "t_diag": [0.3, 0.3, 0.3] }
//! ```
//!
//! `t_full` takes nine entries in row-major order instead of `t_diag`.
//! Coefficients may describe an unnormalized matrix with trace `r00`; they
//! are divided by `r00` only when `"normalize": true` is given.

use lorentz_sep_core::hs::HsParams;
use serde_json::{Map, Value};

const KEYS: [&str; 6] = ["a", "b", "t_diag", "t_full", "r00", "normalize"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("the state file must be a JSON object")]
    NotObject,
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("unknown field `{0}`")]
    Unknown(String),
    #[error("field `{field}`: {reason}")]
    Field { field: &'static str, reason: String },
}

fn field_err(field: &'static str, reason: impl Into<String>) -> InputError {
    InputError::Field {
        field,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Correlations {
    Diagonal([f64; 3]),
    Full([[f64; 3]; 3]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateFile {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: Correlations,
    /// Trace of the described matrix, 1 when absent.
    pub r00: Option<f64>,
    pub normalize: bool,
}

fn numbers<const N: usize>(obj: &Map<String, Value>, key: &'static str) -> Result<Option<[f64; N]>, InputError> {
    let Some(v) = obj.get(key) else {
        return Ok(None);
    };
    let items = v
        .as_array()
        .ok_or_else(|| field_err(key, format!("expected an array of {N} numbers")))?;
    if items.len() != N {
        return Err(field_err(key, format!("expected {N} numbers, found {}", items.len())));
    }
    let mut out = [0.0; N];
    for (i, item) in items.iter().enumerate() {
        out[i] = item
            .as_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| field_err(key, format!("entry {i} is not a finite number")))?;
    }
    Ok(Some(out))
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let value: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        let obj = value.as_object().ok_or(InputError::NotObject)?;
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(InputError::Unknown(k.clone()));
        }
        let a = numbers::<3>(obj, "a")?.ok_or(InputError::Missing("a"))?;
        let b = numbers::<3>(obj, "b")?.ok_or(InputError::Missing("b"))?;
        let t = match (numbers::<3>(obj, "t_diag")?, numbers::<9>(obj, "t_full")?) {
            (Some(d), None) => Correlations::Diagonal(d),
            (None, Some(f)) => Correlations::Full([
                [f[0], f[1], f[2]],
                [f[3], f[4], f[5]],
                [f[6], f[7], f[8]],
            ]),
            (Some(_), Some(_)) => return Err(field_err("t_full", "give either t_diag or t_full, not both")),
            (None, None) => return Err(InputError::Missing("t_diag")),
        };
        let r00 = match obj.get("r00") {
            None => None,
            Some(v) => Some(
                v.as_f64()
                    .filter(|x| x.is_finite() && *x > 0.0)
                    .ok_or_else(|| field_err("r00", "expected a positive number"))?,
            ),
        };
        let normalize = match obj.get("normalize") {
            None => false,
            Some(v) => v.as_bool().ok_or_else(|| field_err("normalize", "expected true or false"))?,
        };
        Ok(StateFile {
            a,
            b,
            t,
            r00,
            normalize,
        })
    }

    /// Unit-trace parameters.
    pub fn to_params(&self) -> Result<HsParams, InputError> {
        let scale = match self.r00 {
            Some(r) if r != 1.0 && !self.normalize => {
                return Err(field_err("r00", "trace must be 1 unless normalize is true"));
            }
            Some(r) => 1.0 / r,
            None => 1.0,
        };
        let t = match self.t {
            Correlations::Diagonal(d) => [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]],
            Correlations::Full(m) => m,
        };
        Ok(HsParams::new(
            self.a.map(|x| x * scale),
            self.b.map(|x| x * scale),
            t.map(|row| row.map(|x| x * scale)),
        ))
    }
}
