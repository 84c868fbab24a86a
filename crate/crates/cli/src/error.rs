use gaudin_core::{GaudinError, WeightConfig};
use serde_json::{json, Value};

use crate::verify::Counterexample;

#[derive(Debug)]
pub enum CliError {
    Math(GaudinError),
    Usage(String),
    Mismatch(Box<Counterexample>),
    Io(std::io::Error),
}

impl From<GaudinError> for CliError {
    fn from(e: GaudinError) -> Self {
        CliError::Math(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    /// 1 for a failed verification or I/O, 2 for bad input or a violated
    /// mathematical precondition, 3 for numeric failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(e) if e.is_numeric() => 3,
            CliError::Math(_) | CliError::Usage(_) => 2,
            CliError::Mismatch(_) | CliError::Io(_) => 1,
        }
    }

    pub fn body(&self) -> Value {
        let (kind, message, extra) = match self {
            CliError::Math(e) => {
                let extra = match e {
                    GaudinError::EmptyRange(cfg) => Some(json!({ "diagnosis": diagnosis(cfg) })),
                    _ => None,
                };
                (e.kind(), e.to_string(), extra)
            }
            CliError::Usage(m) => ("Usage", m.clone(), None),
            CliError::Mismatch(c) => ("MismatchFound", c.to_string(), Some(json!({ "counterexample": c }))),
            CliError::Io(e) => ("Io", e.to_string(), None),
        };
        let mut body = json!({ "schema": 1, "error": kind, "message": message });
        if let Some(Value::Object(extra)) = extra {
            body.as_object_mut().unwrap().extend(extra);
        }
        body
    }
}

/// Why the range of `r1` is empty, and which `r` would be admissible.
pub fn diagnosis(cfg: &WeightConfig) -> Value {
    let (m1, m2, m3, r) = (cfg.m1 as i64, cfg.m2 as i64, cfg.m3 as i64, cfg.r as i64);
    let lo = (r - m3).max(0);
    let hi = r.min(m1).min(m2).min(m1 + m2 - r);
    let good: Vec<u32> = (0..=cfg.m1 + cfg.m2 + cfg.m3)
        .filter(|&r| WeightConfig::new(cfg.m1, cfg.m2, cfg.m3, r).admissible_range().is_some())
        .collect();
    json!({
        "r1_lower": lo,
        "r1_upper": hi,
        "rule": "max(0, r - m3) <= r1 <= min(r, m1, m2, m1 + m2 - r)",
        "admissible_r": good.first().map(|lo| [*lo, *good.last().unwrap()]),
    })
}
