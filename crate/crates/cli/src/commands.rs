use std::io::Write;

use gaudin_core::branch::{asymptotic_limit_check, genus as genus_of, BranchPoint};
use gaudin_core::hamiltonian::SymTridiagonal;
use gaudin_core::monodromy::MonodromyOptions;
use gaudin_core::numeric::RootOptions;
use gaudin_core::{
    branch_points, build_model, char_poly, discriminant_u, hamiltonian_at, monodromy_group, simplicity_check,
    BranchSet, GaudinCurve, MonodromyReport, TridiagonalModel, WeightConfig, Which,
};
use gaudin_poly::{format_rational, parse_rational, BiPoly, Integer, Rational, UniPoly};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::CliError;
use crate::plot::{self, Series};
use crate::{Ctx, Format, Weights};

/// Every JSON artifact carries the schema version and the command name.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

impl Weights {
    pub fn config(self) -> WeightConfig {
        WeightConfig::new(self.m1, self.m2, self.m3, self.r)
    }
}

fn emit(ctx: &Ctx, text: &str) -> Result<(), CliError> {
    match &ctx.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn emit_json<T: Serialize>(ctx: &Ctx, command: &str, body: T) -> Result<(), CliError> {
    let env = Envelope { schema: 1, command, body };
    let mut text = serde_json::to_string_pretty(&env).expect("serializable");
    text.push('\n');
    emit(ctx, &text)
}

fn require(ctx: &Ctx, allowed: &[Format], default: Format) -> Result<Format, CliError> {
    let f = ctx.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command")))
    }
}

fn root_options(ctx: &Ctx) -> Result<RootOptions, CliError> {
    let opts = RootOptions {
        max_prec: ctx.max_precision,
        max_iter: ctx.max_iter,
        ..RootOptions::with_precision(ctx.precision)
    };
    if opts.max_prec < opts.start_prec {
        return Err(CliError::Usage(format!("--max-precision {} is below the starting precision", ctx.max_precision)));
    }
    Ok(opts)
}

fn monodromy_options(ctx: &Ctx) -> Result<MonodromyOptions, CliError> {
    // larger loops could cut the circles that other paths detour around
    if !(ctx.radius_factor > 0.0 && ctx.radius_factor <= 1.0 / 3.0) {
        return Err(CliError::Usage("--radius-factor must lie in (0, 1/3]".into()));
    }
    Ok(MonodromyOptions {
        max_prec: ctx.precision.max(512),
        radius_factor: ctx.radius_factor,
        ..MonodromyOptions::default()
    })
}

fn curve_of(w: Weights) -> Result<GaudinCurve, CliError> {
    Ok(char_poly(&build_model(&w.config())?))
}

fn branch_set(ctx: &Ctx, c: &GaudinCurve) -> Result<BranchSet, CliError> {
    Ok(branch_points(c, &discriminant_u(c)?, root_options(ctx)?)?)
}

/// Exact rational from `p/q`, an integer or a decimal such as `-0.25`.
fn parse_exact(s: &str) -> Result<Rational, CliError> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: Integer = digits.parse().map_err(|_| CliError::Usage(format!("not a number: {s}")))?;
        let den = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        return Ok(Rational::from((num, den)));
    }
    parse_rational(t).map_err(|_| CliError::Usage(format!("not a number: {s}")))
}

/// Complex number written `re` or `re,im`.
fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("expected `re` or `re,im`, got {s}"));
    let mut parts = s.split(',').map(|p| parse_exact(p).map(|q| q.to_f64()));
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = parts.next().transpose().map_err(|_| bad())?.unwrap_or(0.0);
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

pub fn dim(ctx: &Ctx, w: Weights) -> Result<(), CliError> {
    let cfg = w.config();
    let n = cfg.dimension();
    match ctx.format {
        None => emit(ctx, &format!("{n}\n")),
        Some(_) => {
            require(ctx, &[Format::Json], Format::Json)?;
            #[derive(Serialize)]
            struct Dim {
                config: WeightConfig,
                dimension: usize,
            }
            emit_json(ctx, "dim", Dim { config: cfg, dimension: n })
        }
    }
}

type Pair = [f64; 2];

#[derive(Serialize)]
struct NumericMatrix {
    diag: Vec<Pair>,
    off: Vec<Pair>,
}

impl From<SymTridiagonal<Complex64>> for NumericMatrix {
    fn from(m: SymTridiagonal<Complex64>) -> Self {
        let pairs = |v: &[Complex64]| v.iter().map(|z| [z.re, z.im]).collect();
        NumericMatrix { diag: pairs(&m.diag), off: pairs(&m.off) }
    }
}

#[derive(Serialize)]
struct Hamiltonians {
    u: Pair,
    h1: NumericMatrix,
    h2: NumericMatrix,
    h3: NumericMatrix,
}

pub fn model(ctx: &Ctx, w: Weights, u: Option<&str>) -> Result<(), CliError> {
    require(ctx, &[Format::Json], Format::Json)?;
    let m = build_model(&w.config())?;
    #[derive(Serialize)]
    struct Body {
        #[serde(flatten)]
        model: TridiagonalModel,
        dimension: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        hamiltonians: Option<Hamiltonians>,
    }
    let hamiltonians = match u {
        Some(s) => {
            let u = parse_complex(s)?;
            let at = |which| hamiltonian_at(&m, &u, which, 53).map(NumericMatrix::from);
            Some(Hamiltonians { u: [u.re, u.im], h1: at(Which::H1)?, h2: at(Which::H2)?, h3: at(Which::H3)? })
        }
        None => None,
    };
    emit_json(ctx, "model", Body { dimension: m.dim(), model: m, hamiltonians })
}

pub fn curve(ctx: &Ctx, w: Weights, u: Option<&str>) -> Result<(), CliError> {
    require(ctx, &[Format::Json], Format::Json)?;
    let c = curve_of(w)?;
    #[derive(Serialize)]
    struct Special {
        u: String,
        coefficients: UniPoly,
        polynomial: String,
    }
    #[derive(Serialize)]
    struct Body {
        config: WeightConfig,
        degree: usize,
        monomials: BiPoly,
        polynomial: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        specialization: Option<Special>,
    }
    let specialization = match u {
        Some(s) => {
            let u = parse_exact(s)?;
            let p = c.f.eval_u(&u);
            Some(Special { u: format_rational(&u), polynomial: p.to_text(), coefficients: p })
        }
        None => None,
    };
    emit_json(
        ctx,
        "curve",
        Body { config: c.cfg, degree: c.n, polynomial: c.f.to_text(), monomials: c.f, specialization },
    )
}

pub fn disc(ctx: &Ctx, w: Weights) -> Result<(), CliError> {
    require(ctx, &[Format::Json], Format::Json)?;
    let c = curve_of(w)?;
    let d = discriminant_u(&c)?;
    #[derive(Serialize)]
    struct Body {
        config: WeightConfig,
        degree: usize,
        leading: String,
        monic: UniPoly,
        polynomial: String,
    }
    emit_json(
        ctx,
        "disc",
        Body {
            config: c.cfg,
            degree: d.monic.degree().unwrap_or(0),
            leading: format_rational(&d.leading),
            polynomial: d.monic.to_text(),
            monic: d.monic,
        },
    )
}

#[derive(Serialize)]
struct BranchBody<'a> {
    config: WeightConfig,
    sheets: usize,
    count: usize,
    precision: u32,
    squarefree: bool,
    no_real_roots: bool,
    conjugation_defect: f64,
    points: &'a [BranchPoint],
}

fn branch_body<'a>(c: &GaudinCurve, set: &'a BranchSet) -> BranchBody<'a> {
    BranchBody {
        config: c.cfg,
        sheets: c.n,
        count: set.len(),
        precision: set.precision,
        squarefree: set.squarefree,
        no_real_roots: set.no_real_roots,
        conjugation_defect: set.conjugation_defect(),
        points: &set.points,
    }
}

pub fn branch(ctx: &Ctx, w: Weights) -> Result<(), CliError> {
    let format = require(ctx, &[Format::Json, Format::Csv], Format::Json)?;
    let c = curve_of(w)?;
    let set = branch_set(ctx, &c)?;
    match format {
        Format::Csv => emit(ctx, &set.to_csv()),
        _ => emit_json(ctx, "branch", branch_body(&c, &set)),
    }
}

pub fn genus(ctx: &Ctx, w: Weights) -> Result<(), CliError> {
    require(ctx, &[Format::Json], Format::Json)?;
    let c = curve_of(w)?;
    let set = branch_set(ctx, &c)?;
    let simple = simplicity_check(&c, &set.discriminant)?;
    let mono = monodromy_group(&c, &set, monodromy_options(ctx)?)?;
    let g = genus_of(&set, simple, &mono)?;
    #[derive(Serialize)]
    struct Body {
        config: WeightConfig,
        sheets: usize,
        branch_points: usize,
        squarefree: bool,
        no_real_roots: bool,
        simple: bool,
        transitive: bool,
        group_order: String,
        genus: u64,
    }
    emit_json(
        ctx,
        "genus",
        Body {
            config: c.cfg,
            sheets: c.n,
            branch_points: set.len(),
            squarefree: set.squarefree,
            no_real_roots: set.no_real_roots,
            simple,
            transitive: mono.transitive,
            group_order: mono.order.to_string(),
            genus: g,
        },
    )
}

pub fn monodromy(ctx: &Ctx, w: Weights) -> Result<(), CliError> {
    require(ctx, &[Format::Json], Format::Json)?;
    let c = curve_of(w)?;
    let set = branch_set(ctx, &c)?;
    let report = monodromy_group(&c, &set, monodromy_options(ctx)?)?;
    #[derive(Serialize)]
    struct Body {
        config: WeightConfig,
        #[serde(flatten)]
        report: MonodromyReport,
    }
    emit_json(ctx, "monodromy", Body { config: c.cfg, report })
}

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<u32>, CliError> {
    let v: Result<Vec<u32>, _> = s.split(',').map(|p| p.trim().parse::<u32>()).collect();
    match v {
        Ok(v) if v.len() == n => Ok(v),
        _ => Err(CliError::Usage(format!("expected {what}, got {s}"))),
    }
}

fn sidecar(series: &[(&WeightConfig, &BranchSet)]) -> String {
    let mut csv = String::from("series,re,im,error_radius\n");
    for (i, (_, set)) in series.iter().enumerate() {
        for p in &set.points {
            csv.push_str(&format!("{i},{:e},{:e},{:e}\n", p.re, p.im, p.error_radius));
        }
    }
    csv
}

pub fn ornament(ctx: &Ctx, w: Weights, overlay: Option<&str>) -> Result<(), CliError> {
    let format = require(ctx, &[Format::Svg, Format::Csv], Format::Svg)?;
    let main_cfg = w.config();
    let extra_cfg = match overlay {
        Some(s) => {
            let v = parse_list(s, 4, "m1,m2,m3,r")?;
            Some(WeightConfig::new(v[0], v[1], v[2], v[3]))
        }
        None => None,
    };
    let mut sets = Vec::new();
    for cfg in std::iter::once(main_cfg).chain(extra_cfg) {
        let c = char_poly(&build_model(&cfg)?);
        sets.push((cfg, branch_set(ctx, &c)?));
    }
    let pairs: Vec<(&WeightConfig, &BranchSet)> = sets.iter().map(|(c, s)| (c, s)).collect();
    let csv = sidecar(&pairs);
    if format == Format::Csv {
        return emit(ctx, &csv);
    }
    let series: Vec<Series> = sets
        .iter()
        .enumerate()
        .map(|(i, (cfg, set))| Series {
            label: format!("m = ({}, {}, {}), r = {}", cfg.m1, cfg.m2, cfg.m3, cfg.r),
            colour: if i == 0 { plot::RED } else { plot::BLUE },
            points: set.values(),
        })
        .collect();
    let title = series.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(" / ");
    emit(ctx, &plot::scatter(&format!("Branch points, {title}"), &series, &[]))?;
    if let Some(path) = &ctx.out {
        std::fs::write(path.with_extension("csv"), csv)?;
    }
    Ok(())
}

pub fn asymptote(ctx: &Ctx, w: Weights, scales: &[u32]) -> Result<(), CliError> {
    let format = require(ctx, &[Format::Json, Format::Svg], Format::Json)?;
    let report = asymptotic_limit_check([w.m1, w.m2, w.m3], w.r, scales, root_options(ctx)?)?;
    if format == Format::Json {
        return emit_json(ctx, "asymptote", &report);
    }
    let series: Vec<Series> = report
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| Series {
            label: format!("scale {}", row.scale),
            colour: plot::palette(i),
            points: row.branch_points.iter().map(|p| p.z()).collect(),
        })
        .collect();
    let marks = [report.limit_upper, report.limit_lower].map(|[re, im]| Complex64::new(re, im));
    let title = format!("M = ({}, {}, {}), r = {}", w.m1, w.m2, w.m3, w.r);
    emit(ctx, &plot::scatter(&title, &series, &marks))
}
