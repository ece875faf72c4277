//! Command-line front end: input file parsing, command dispatch and report
//! rendering.
//!
//! Input files are line based. Blank lines and `#` comments are ignored.
//!
//! ```text
//! surface T: a b a' b'
//! enhance T: a=2 b=2
//! circle c: 0 1 1 orientation: -
//! interval i: 1 0
//! point p
//! ```

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::exact::Qi;
use crate::majorana::{
    ground_states_with_cap, interval_bimodule_check, predicted_circle_parity, ChainSetup, MajoranaError,
    Orientation, DEFAULT_VERTEX_CAP,
};
use crate::pin1::{classify_circle, Circle, Component, Interval};
use crate::quadform::{arf, arf_brown_with_cap, Enhancement, QuadError, DEFAULT_DIM_CAP};
use crate::surface::{analyze, intersection_form, normalize, one_vertex_form, GluingScheme};
use crate::tqft::{
    consistency_report, evaluate_circle, evaluate_point, partition_function_with_cap, TheoryClass, TheoryRecord,
    TqftError, TqftRecord,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("invalid --theory value: {0}")]
    Theory(ParseError),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    CapExceeded(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
    #[error("self-test failed")]
    SelfTestFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Theory(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::CapExceeded(_) => 4,
            CliError::Io { .. } | CliError::Output(_) | CliError::SelfTestFailed => 1,
        }
    }
}

impl From<MajoranaError> for CliError {
    fn from(e: MajoranaError) -> Self {
        match e {
            MajoranaError::CapExceeded { .. } => CliError::CapExceeded(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        match e {
            QuadError::DimensionCap { .. } => CliError::CapExceeded(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<TqftError> for CliError {
    fn from(e: TqftError) -> Self {
        match e {
            TqftError::Quad(q) => q.into(),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "arf-brown", version, about = "Arf-Brown invariants, the Arf-Brown TQFT and the Majorana chain")]
pub struct Cli {
    /// Largest vertex count for Majorana spectra.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_CAP, value_parser = positive)]
    pub cap_n: usize,
    /// Largest form dimension for Gauss sums.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_CAP, value_parser = positive)]
    pub cap_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("cap must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic, orientability, normal form and intersection form.
    Surface { path: PathBuf },
    /// Arf-Brown invariant of enhanced surfaces.
    ArfBrown {
        path: PathBuf,
        /// Enhancement such as `a=1 b=3`, applied to every surface in the file.
        #[arg(long)]
        enhance: Option<String>,
    },
    /// Spectrum and ground states of the Majorana chain.
    Majorana { path: PathBuf },
    /// Evaluate a theory such as `ab=1 euler=2` on closed manifolds.
    Tqft {
        #[arg(long)]
        theory: String,
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Cross-module consistency checks.
    Selftest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSurface {
    pub name: String,
    pub scheme: GluingScheme,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub name: String,
    pub values: Vec<(String, i64)>,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedComponent {
    pub name: String,
    pub setup: ChainSetup,
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InputFile {
    pub surfaces: Vec<NamedSurface>,
    pub enhancements: Vec<Assignment>,
    pub components: Vec<NamedComponent>,
    pub points: Vec<String>,
}

impl InputFile {
    pub fn enhancement_for(&self, name: &str) -> Option<&Assignment> {
        self.enhancements.iter().find(|a| a.name == name)
    }
}

/// Byte offset of `part` inside `line` as a 1-based column.
fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

/// `label=value` tokens.
pub fn parse_assignments(text: &str, line_no: usize, line: &str) -> Result<Vec<(String, i64)>, ParseError> {
    text.split_whitespace()
        .map(|token| {
            let col = column_of(line, token);
            let (label, value) = token
                .split_once('=')
                .ok_or_else(|| ParseError::new(line_no, col, format!("expected label=value, found `{token}`")))?;
            let value = value
                .parse::<i64>()
                .map_err(|_| ParseError::new(line_no, col, format!("`{value}` is not an integer")))?;
            if label.is_empty() {
                return Err(ParseError::new(line_no, col, "empty label"));
            }
            Ok((label.to_string(), value))
        })
        .collect()
}

fn parse_bits(text: &str, line_no: usize, line: &str) -> Result<(Vec<u8>, Orientation), ParseError> {
    let mut bits = Vec::new();
    let mut orientation = Orientation::Positive;
    let mut tokens = text.split_whitespace().peekable();
    while let Some(token) = tokens.next() {
        let col = column_of(line, token);
        match token {
            "0" => bits.push(0),
            "1" => bits.push(1),
            "orientation:" => {
                let value = tokens
                    .next()
                    .ok_or_else(|| ParseError::new(line_no, col, "missing orientation value"))?;
                orientation = match value {
                    "+" => Orientation::Positive,
                    "-" => Orientation::Negative,
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            column_of(line, value),
                            format!("orientation must be + or -, found `{other}`"),
                        ))
                    }
                };
                if let Some(extra) = tokens.peek() {
                    return Err(ParseError::new(
                        line_no,
                        column_of(line, extra),
                        "unexpected text after orientation",
                    ));
                }
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("edge bits must be 0 or 1, found `{other}`"),
                ))
            }
        }
    }
    if bits.is_empty() {
        return Err(ParseError::new(line_no, line.chars().count() + 1, "a component needs at least one edge"));
    }
    Ok((bits, orientation))
}

pub fn parse_input(text: &str) -> Result<InputFile, ParseError> {
    let mut input = InputFile::default();
    let mut names: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let kind_col = column_of(raw, trimmed);
        let (kind, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        if kind == "point" {
            let name = rest.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(ParseError::new(line_no, kind_col, "expected `point <name>`"));
            }
            input.points.push(name.to_string());
            continue;
        }
        let Some((name, body)) = rest.split_once(':') else {
            return Err(ParseError::new(
                line_no,
                kind_col,
                format!("expected `{kind} <name>: ...`"),
            ));
        };
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(ParseError::new(line_no, column_of(raw, rest), "bad or missing name"));
        }
        let body_col = column_of(raw, body);
        if kind != "enhance" {
            if names.iter().any(|n| n == name) {
                return Err(ParseError::new(line_no, kind_col, format!("duplicate name `{name}`")));
            }
            names.push(name.to_string());
        }
        match kind {
            "surface" => {
                let scheme = GluingScheme::parse(body)
                    .map_err(|e| ParseError::new(line_no, body_col, e.to_string()))?;
                input.surfaces.push(NamedSurface {
                    name: name.to_string(),
                    scheme,
                    line: line_no,
                });
            }
            "enhance" => {
                let values = parse_assignments(body, line_no, raw)?;
                input.enhancements.push(Assignment {
                    name: name.to_string(),
                    values,
                    line: line_no,
                });
            }
            "circle" | "interval" => {
                let (bits, orientation) = parse_bits(body, line_no, raw)?;
                let component = if kind == "circle" {
                    Component::Circle(Circle::new(bits).expect("validated bits"))
                } else {
                    Component::Interval(Interval::new(bits).expect("validated bits"))
                };
                input.components.push(NamedComponent {
                    name: name.to_string(),
                    setup: ChainSetup::new(component, orientation),
                    line: line_no,
                });
            }
            other => {
                return Err(ParseError::new(line_no, kind_col, format!("unknown record kind `{other}`")));
            }
        }
    }
    Ok(input)
}

/// `ab=<int> [euler=<gaussian rational>]`.
pub fn parse_theory(text: &str) -> Result<TheoryClass, ParseError> {
    let mut ab: Option<i64> = None;
    let mut euler = Qi::one();
    for token in text.split_whitespace() {
        let col = column_of(text, token);
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| ParseError::new(1, col, format!("expected key=value, found `{token}`")))?;
        match key {
            "ab" => {
                ab = Some(
                    value
                        .parse()
                        .map_err(|_| ParseError::new(1, col, format!("`{value}` is not an integer")))?,
                )
            }
            "euler" => {
                euler = value.parse().map_err(|e| ParseError::new(1, col, format!("{e}")))?;
            }
            other => return Err(ParseError::new(1, col, format!("unknown key `{other}`"))),
        }
    }
    let ab = ab.ok_or_else(|| ParseError::new(1, 1, "missing ab=<power>"))?;
    TheoryClass::new(ab, euler).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

fn read_input(path: &Path) -> Result<InputFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_input(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn ratio(r: Rational64) -> [i64; 2] {
    [*r.numer(), *r.denom()]
}

#[derive(Debug, Serialize)]
struct SurfaceRecord {
    kind: &'static str,
    name: String,
    word: String,
    euler_char: i64,
    orientable: bool,
    betti1_mod2: usize,
    vertex_count: usize,
    normal_form: String,
    basis: Vec<String>,
    gram: Vec<Vec<u8>>,
}

#[derive(Debug, Serialize)]
struct ArfBrownRecord {
    kind: &'static str,
    name: String,
    values: Vec<(String, u8)>,
    exponent: u8,
    gauss_sum: [i64; 4],
    dim: usize,
    arf: Option<u8>,
}

#[derive(Debug, Serialize)]
struct SpectrumRecord {
    eigenvalue: [i64; 2],
    multiplicity: usize,
    even: usize,
    odd: usize,
}

#[derive(Debug, Serialize)]
struct IntervalRecord {
    c_w_commutes: bool,
    d_v_commutes: bool,
    relations_hold: bool,
    irreducible: bool,
    module: String,
    reference_module: String,
    reference_spectrum_matches: bool,
}

#[derive(Debug, Serialize)]
struct MajoranaRecord {
    kind: &'static str,
    name: String,
    component: &'static str,
    edge_bits: Vec<u8>,
    orientation: String,
    vertices: usize,
    circle_class: Option<String>,
    min_eigenvalue: [i64; 2],
    ground_dimension: usize,
    ground_parity: String,
    predicted_parity: Option<String>,
    consistent: bool,
    spectrum: Vec<SpectrumRecord>,
    interval: Option<IntervalRecord>,
}

struct Emitter<'a, W: Write> {
    out: &'a mut W,
    format: Format,
}

impl<W: Write> Emitter<'_, W> {
    fn emit<T: Serialize>(&mut self, record: &T, human: impl FnOnce() -> String) -> Result<(), CliError> {
        match self.format {
            Format::Structured => {
                let line = serde_json::to_string(record).expect("records serialize");
                writeln!(self.out, "{line}")?;
            }
            Format::Human => write!(self.out, "{}", human())?,
        }
        Ok(())
    }
}

fn gram_rows(form: &crate::surface::IntersectionForm) -> Vec<Vec<u8>> {
    (0..form.dim())
        .map(|i| (0..form.dim()).map(|j| u8::from(form.gram.get(i, j))).collect())
        .collect()
}

fn cmd_surface<W: Write>(path: &Path, em: &mut Emitter<'_, W>) -> Result<(), CliError> {
    let input = read_input(path)?;
    for s in &input.surfaces {
        let info = analyze(&s.scheme);
        let normal = normalize(&s.scheme);
        let form = intersection_form(&one_vertex_form(&s.scheme)).map_err(|e| CliError::Precondition(e.to_string()))?;
        let record = SurfaceRecord {
            kind: "surface",
            name: s.name.clone(),
            word: s.scheme.to_string(),
            euler_char: info.euler_char,
            orientable: info.orientable,
            betti1_mod2: info.betti1_mod2,
            vertex_count: info.vertex_count,
            normal_form: normal.to_string(),
            basis: form.basis_labels.clone(),
            gram: gram_rows(&form),
        };
        em.emit(&record, || {
            let mut h = String::new();
            let _ = writeln!(h, "surface {}: {}", record.name, record.word);
            let _ = writeln!(
                h,
                "  χ = {}, {}, b₁ = {}, vertices = {}",
                record.euler_char,
                if record.orientable { "orientable" } else { "non-orientable" },
                record.betti1_mod2,
                record.vertex_count
            );
            let _ = writeln!(h, "  normal form: {}", record.normal_form);
            let _ = writeln!(h, "  intersection form on ({}):", record.basis.join(", "));
            for row in &record.gram {
                let cells: Vec<String> = row.iter().map(u8::to_string).collect();
                let _ = writeln!(h, "    [{}]", cells.join(" "));
            }
            h
        })?;
    }
    Ok(())
}

fn enhancement_of(s: &NamedSurface, values: &[(String, i64)]) -> Result<Enhancement, CliError> {
    let form = intersection_form(&one_vertex_form(&s.scheme)).map_err(|e| CliError::Precondition(e.to_string()))?;
    Enhancement::from_assignments(form, values).map_err(|e| CliError::Precondition(format!("{}: {e}", s.name)))
}

/// The enhancement for `s`: the command-line one if given, else the
/// file's `enhance` line. The empty form needs no values.
fn find_enhancement(
    s: &NamedSurface,
    input: &InputFile,
    override_values: Option<&[(String, i64)]>,
) -> Result<Enhancement, CliError> {
    let values = match (override_values, input.enhancement_for(&s.name)) {
        (Some(v), _) => v.to_vec(),
        (None, Some(a)) => a.values.clone(),
        (None, None) => Vec::new(),
    };
    enhancement_of(s, &values)
}

fn cmd_arf_brown<W: Write>(
    path: &Path,
    enhance: Option<&str>,
    cap_dim: usize,
    em: &mut Emitter<'_, W>,
) -> Result<(), CliError> {
    let input = read_input(path)?;
    let override_values = match enhance {
        Some(text) => Some(parse_assignments(text, 1, text).map_err(|source| CliError::Parse {
            path: PathBuf::from("--enhance"),
            source,
        })?),
        None => None,
    };
    for s in &input.surfaces {
        let q = find_enhancement(s, &input, override_values.as_deref())?;
        let ab = arf_brown_with_cap(&q, cap_dim)?;
        let arf_value = if q.is_even() { Some(arf(&q)?.value()) } else { None };
        let record = ArfBrownRecord {
            kind: "arf_brown",
            name: s.name.clone(),
            values: q
                .form()
                .basis_labels
                .iter()
                .cloned()
                .zip(q.values().iter().map(|v| v.value()))
                .collect(),
            exponent: ab.exponent.exponent(),
            gauss_sum: ab.gauss_sum.coefficients(),
            dim: ab.dim,
            arf: arf_value,
        };
        em.emit(&record, || {
            let mut h = String::new();
            let vals: Vec<String> = record.values.iter().map(|(l, v)| format!("{l}={v}")).collect();
            let _ = writeln!(h, "surface {} with q: {}", record.name, vals.join(" "));
            let _ = writeln!(h, "  Gauss sum S = {}", ab.gauss_sum);
            let _ = writeln!(
                h,
                "  Arf-Brown = {} = {} (exponent {})",
                ab.exponent,
                ab.exponent.surd(),
                record.exponent
            );
            if let Some(a) = record.arf {
                let _ = writeln!(h, "  Arf = {a}");
            }
            h
        })?;
    }
    Ok(())
}

fn cmd_majorana<W: Write>(path: &Path, cap_n: usize, em: &mut Emitter<'_, W>) -> Result<(), CliError> {
    let input = read_input(path)?;
    for c in &input.components {
        let setup = &c.setup;
        let report = ground_states_with_cap(setup, cap_n)?;
        let (component, circle_class, predicted, interval) = match &setup.component {
            Component::Circle(circle) => {
                let class = classify_circle(circle);
                ("circle", Some(class.to_string()), Some(predicted_circle_parity(circle.m())), None)
            }
            Component::Interval(_) => {
                let r = interval_bimodule_check(setup, cap_n)?;
                let rec = IntervalRecord {
                    c_w_commutes: r.c_w_commutes,
                    d_v_commutes: r.d_v_commutes,
                    relations_hold: r.relations_hold,
                    irreducible: r.irreducible,
                    module: r.module.to_string(),
                    reference_module: r.reference_module.to_string(),
                    reference_spectrum_matches: r.reference_spectrum_matches,
                };
                ("interval", None, None, Some((rec, r.passes())))
            }
        };
        let consistent = match (&predicted, &interval) {
            (Some(p), _) => report.ground_dimension == 1 && report.ground_parity == *p,
            (None, Some((_, passes))) => *passes,
            (None, None) => false,
        };
        let record = MajoranaRecord {
            kind: "majorana",
            name: c.name.clone(),
            component,
            edge_bits: setup.edge_bits().to_vec(),
            orientation: setup.orientation.to_string(),
            vertices: setup.vertex_count(),
            circle_class,
            min_eigenvalue: ratio(report.min_eigenvalue),
            ground_dimension: report.ground_dimension,
            ground_parity: report.ground_parity.to_string(),
            predicted_parity: predicted.map(|p| p.to_string()),
            consistent,
            spectrum: report
                .spectrum
                .iter()
                .map(|s| SpectrumRecord {
                    eigenvalue: ratio(s.eigenvalue),
                    multiplicity: s.multiplicity,
                    even: s.even,
                    odd: s.odd,
                })
                .collect(),
            interval: interval.map(|(r, _)| r),
        };
        em.emit(&record, || {
            let mut h = String::new();
            let bits: Vec<String> = record.edge_bits.iter().map(u8::to_string).collect();
            let _ = writeln!(
                h,
                "{} {}: {} (orientation {}, {} vertices)",
                record.component,
                record.name,
                bits.join(" "),
                record.orientation,
                record.vertices
            );
            if let Some(class) = &record.circle_class {
                let _ = writeln!(h, "  pin⁻ class: {class}");
            }
            let spectrum: Vec<String> = report
                .spectrum
                .iter()
                .map(|s| format!("{}×{}", s.eigenvalue, s.multiplicity))
                .collect();
            let _ = writeln!(h, "  spectrum of H: {}", spectrum.join(", "));
            let _ = writeln!(
                h,
                "  ground states: eigenvalue {}, dimension {}, parity {}",
                report.min_eigenvalue, record.ground_dimension, record.ground_parity
            );
            if let Some(p) = &record.predicted_parity {
                let _ = writeln!(h, "  predicted parity {p}: {}", if consistent { "agrees" } else { "DISAGREES" });
            }
            if let Some(i) = &record.interval {
                let _ = writeln!(
                    h,
                    "  boundary Majoranas commute with H: {}, restricted action irreducible: {}",
                    i.c_w_commutes && i.d_v_commutes,
                    i.irreducible
                );
                let _ = writeln!(
                    h,
                    "  ground space as boundary module: {} (reference route: {})",
                    i.module, i.reference_module
                );
            }
            h
        })?;
    }
    Ok(())
}

fn tqft_human(record: &TqftRecord) -> String {
    format!("{} {}: {}\n", record.object_kind, record.name, record.value)
}

fn cmd_tqft<W: Write>(
    theory: &str,
    paths: &[PathBuf],
    cap_dim: usize,
    em: &mut Emitter<'_, W>,
) -> Result<(), CliError> {
    let t = parse_theory(theory).map_err(CliError::Theory)?;
    let theory_record = TheoryRecord::from(&t);
    let mut all_surfaces = Vec::new();
    for path in paths {
        let input = read_input(path)?;
        for name in &input.points {
            let record = TqftRecord {
                object_kind: "point".into(),
                name: name.clone(),
                theory: theory_record.clone(),
                value: evaluate_point(&t),
            };
            em.emit(&record, || tqft_human(&record))?;
        }
        for c in &input.components {
            let Component::Circle(circle) = &c.setup.component else {
                return Err(CliError::Precondition(format!(
                    "{}: the theory is evaluated on closed manifolds only",
                    c.name
                )));
            };
            let record = TqftRecord {
                object_kind: "circle".into(),
                name: c.name.clone(),
                theory: theory_record.clone(),
                value: evaluate_circle(&t, classify_circle(circle)),
            };
            em.emit(&record, || tqft_human(&record))?;
        }
        for s in &input.surfaces {
            let q = find_enhancement(s, &input, None)?;
            let pair = (s.scheme.clone(), q);
            let record = TqftRecord {
                object_kind: "surface".into(),
                name: s.name.clone(),
                theory: theory_record.clone(),
                value: partition_function_with_cap(&t, std::slice::from_ref(&pair), cap_dim)?,
            };
            em.emit(&record, || tqft_human(&record))?;
            all_surfaces.push(pair);
        }
    }
    if !all_surfaces.is_empty() {
        let record = TqftRecord {
            object_kind: "disjoint_union".into(),
            name: format!("{} surfaces", all_surfaces.len()),
            theory: theory_record,
            value: partition_function_with_cap(&t, &all_surfaces, cap_dim)?,
        };
        em.emit(&record, || tqft_human(&record))?;
    }
    Ok(())
}

fn cmd_selftest<W: Write>(em: &mut Emitter<'_, W>) -> Result<(), CliError> {
    let report = consistency_report();
    for check in &report.checks {
        em.emit(check, || {
            format!(
                "[{}] {}: {}\n",
                if check.passed { "pass" } else { "FAIL" },
                check.name,
                check.detail
            )
        })?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::SelfTestFailed)
    }
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    let mut em = Emitter {
        out,
        format: cli.format,
    };
    match &cli.command {
        Command::Surface { path } => cmd_surface(path, &mut em),
        Command::ArfBrown { path, enhance } => cmd_arf_brown(path, enhance.as_deref(), cli.cap_dim, &mut em),
        Command::Majorana { path } => cmd_majorana(path, cli.cap_n, &mut em),
        Command::Tqft { theory, paths } => cmd_tqft(theory, paths, cli.cap_dim, &mut em),
        Command::Selftest => cmd_selftest(&mut em),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
