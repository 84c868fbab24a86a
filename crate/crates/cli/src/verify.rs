use std::fmt;

use gaudin_core::oracle::{oracle_data, singular_dimension_bruteforce};
use gaudin_core::{build_model, singular_dimension, trace_scalar, WeightConfig};
use gaudin_poly::{format_rational, Rational};
use serde::Serialize;

use crate::error::CliError;
use crate::{Ctx, Format};

pub const MAX_CAP: u32 = 12;

/// First disagreement found by the sweep.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub config: WeightConfig,
    /// `None` when the disagreement is not tied to one index.
    pub r1: Option<u32>,
    pub quantity: &'static str,
    pub closed_form: String,
    pub oracle: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} differs at {}", self.quantity, self.config)?;
        if let Some(r1) = self.r1 {
            write!(f, " r1={r1}")?;
        }
        write!(f, ": closed form {} vs oracle {}", self.closed_form, self.oracle)
    }
}

#[derive(Serialize)]
struct Report {
    cap: u32,
    configurations: usize,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
}

/// Admissible configurations with all `m_i <= cap`, smallest `m1 + m2 + m3`
/// first, then lexicographically, so the first failure is a minimal one.
pub fn sweep_order(cap: u32) -> Vec<WeightConfig> {
    let mut out = Vec::new();
    for total in 0..=3 * cap {
        for m1 in 0..=cap.min(total) {
            for m2 in 0..=cap.min(total - m1) {
                let m3 = total - m1 - m2;
                if m3 > cap {
                    continue;
                }
                for r in 0..=total {
                    let cfg = WeightConfig::new(m1, m2, m3, r);
                    if cfg.admissible_range().is_some() {
                        out.push(cfg);
                    }
                }
            }
        }
    }
    out
}

fn parse_corruption(s: &str) -> Result<(WeightConfig, u32), CliError> {
    let v: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse()).collect();
    match v.as_deref() {
        Ok(&[m1, m2, m3, r, r1]) => Ok((WeightConfig::new(m1, m2, m3, r), r1)),
        _ => Err(CliError::Usage(format!("expected m1,m2,m3,r,r1, got {s}"))),
    }
}

fn check(cfg: &WeightConfig, corrupt: Option<(WeightConfig, u32)>) -> Result<Option<Counterexample>, CliError> {
    let mut model = build_model(cfg)?;
    if let Some((bad, r1)) = corrupt {
        if bad == *cfg && (model.r1_min..model.r1_max).contains(&r1) {
            model.c2[(r1 - model.r1_min) as usize] += 1;
        }
    }
    let oracle = oracle_data(cfg)?;
    let seqs: [(&'static str, &[Rational], &[Rational]); 4] = [
        ("d", &model.d, &oracle.d),
        ("a", &model.a, &oracle.a),
        ("b", &model.b, &oracle.b),
        ("c2", &model.c2, &oracle.c2),
    ];
    for (quantity, ours, theirs) in seqs {
        if ours.len() != theirs.len() {
            return Ok(Some(Counterexample {
                config: *cfg,
                r1: None,
                quantity,
                closed_form: format!("{} entries", ours.len()),
                oracle: format!("{} entries", theirs.len()),
            }));
        }
        if let Some(k) = (0..ours.len()).find(|&k| ours[k] != theirs[k]) {
            return Ok(Some(Counterexample {
                config: *cfg,
                r1: Some(model.r1_min + k as u32),
                quantity,
                closed_form: format_rational(&ours[k]),
                oracle: format_rational(&theirs[k]),
            }));
        }
    }
    let s = trace_scalar(cfg);
    for k in 0..model.dim() {
        let sum = Rational::from(&model.d[k] + &model.a[k]) + &model.b[k];
        if sum != s {
            return Ok(Some(Counterexample {
                config: *cfg,
                r1: Some(model.r1_min + k as u32),
                quantity: "d+a+b",
                closed_form: format_rational(&sum),
                oracle: format_rational(&s),
            }));
        }
    }
    let ours = singular_dimension(cfg.m1, cfg.m2, cfg.m3, cfg.r);
    let theirs = singular_dimension_bruteforce(cfg.m1, cfg.m2, cfg.m3, cfg.mu());
    if ours != theirs {
        return Ok(Some(Counterexample {
            config: *cfg,
            r1: None,
            quantity: "dimension",
            closed_form: ours.to_string(),
            oracle: theirs.to_string(),
        }));
    }
    Ok(None)
}

pub fn run(ctx: &Ctx, cap: u32, corrupt: Option<&str>) -> Result<(), CliError> {
    if ctx.format.is_some_and(|f| f != Format::Json) {
        return Err(CliError::Usage("verify writes JSON only".into()));
    }
    if cap > MAX_CAP {
        return Err(CliError::Usage(format!("cap {cap} exceeds {MAX_CAP}")));
    }
    let corrupt = corrupt.map(parse_corruption).transpose()?;
    let configs = sweep_order(cap);
    for cfg in &configs {
        if let Some(bad) = check(cfg, corrupt)? {
            let report =
                Report { cap, configurations: configs.len(), status: "mismatch", counterexample: Some(bad.clone()) };
            crate::commands::emit_json(ctx, "verify", &report)?;
            return Err(CliError::Mismatch(Box::new(bad)));
        }
    }
    let report = Report { cap, configurations: configs.len(), status: "pass", counterexample: None };
    crate::commands::emit_json(ctx, "verify", &report)
}
