//! The declarative input format.
//!
//! Spec files are TOML documents restricted to the schema below; unknown keys
//! are rejected. `docs/spec_format.md` in this crate has the grammar and
//! `docs/spec.schema.json` the machine-readable schema.
//!
//! ```toml
//! schema_version = 1
//!
//! [link]
//! meridian_count = 2
//! factors = [{ kind = "trefoil" }]
//!
//! [[curves]]
//! name = "L1"
//! class = [1, 0]
//!
//! [ambient]
//! kind = "interior"
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::floer::{Ambient, FiberSumRecord, PageWindow};
use crate::linalg::IntMatrix;
use crate::maslov::{parity_check, BoundaryDirection, FramedDisc, ParityCertificate};
use crate::monodromy::{FiberedLinkSpec, LinkFactor, MonodromyMap, TwistSign, DEFAULT_BOUND};
use crate::novikov::{parse_rational, FiltrationParam};
use crate::surface::{CurveClass, SurfaceModel};

pub const SPEC_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{} (line {line}): {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{} validation error(s):\n{}", .0.len(), render_issues(.0))]
    Validation(Vec<ValidationIssue>),
}

fn render_issues(issues: &[ValidationIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  {i}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl SpecError {
    pub fn issues(&self) -> &[ValidationIssue] {
        match self {
            SpecError::Validation(v) => v,
            SpecError::Parse { .. } => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCurve {
    pub name: String,
    pub class: CurveClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaslovData {
    pub fiber_disc: FramedDisc,
    pub circle_disc: FramedDisc,
    pub c1_even: bool,
    pub c1_justification: Option<String>,
}

impl MaslovData {
    pub fn certificate(&self) -> ParityCertificate {
        parity_check(&self.fiber_disc, &self.circle_disc, self.c1_even)
            .expect("disc boundaries are fixed by the file layout")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecOptions {
    pub lambda_star: FiltrationParam,
    pub bound: u64,
    pub window: PageWindow,
}

impl Default for SpecOptions {
    fn default() -> Self {
        Self {
            lambda_star: FiltrationParam::default(),
            bound: DEFAULT_BOUND,
            window: PageWindow::default(),
        }
    }
}

/// A validated spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub schema_version: u32,
    pub link: FiberedLinkSpec,
    pub curves: Vec<NamedCurve>,
    pub ambient: Ambient,
    pub maslov: Option<MaslovData>,
    pub options: SpecOptions,
    pub warnings: Vec<String>,
}

impl SpecFile {
    pub fn surface(&self) -> SurfaceModel {
        self.link.surface().expect("validated genus >= 1")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    schema_version: Spanned<u32>,
    link: RawLink,
    curves: Vec<Spanned<RawCurve>>,
    ambient: Spanned<RawAmbient>,
    maslov: Option<Spanned<RawMaslov>>,
    options: Option<Spanned<RawOptions>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    meridian_count: Spanned<i64>,
    factors: Spanned<Vec<Spanned<RawFactor>>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawFactor {
    Trefoil {},
    TorusKnot {
        n: i64,
    },
    Hopf {
        sign: i64,
        twist_curve: Option<Vec<i64>>,
        genus: Option<i64>,
    },
    Matrix {
        rows: Vec<Vec<i64>>,
    },
    TwistWord {
        genus: i64,
        twists: Vec<RawTwist>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwist {
    curve: Vec<i64>,
    sign: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    name: String,
    class: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawAmbient {
    Interior {},
    FiberSum { records: Vec<RawRecord> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    summand: String,
    complement_simply_connected: bool,
    fiber_square_zero_symplectic_torus: bool,
    meridian_disjoint_from_curves: bool,
    vanishing_cycle_identification: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaslov {
    c1_even: bool,
    c1_justification: Option<String>,
    fiber_disc: RawDisc,
    circle_disc: RawDisc,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDisc {
    caps: Vec<i64>,
    defect: i64,
    #[serde(default)]
    boundary_degenerate: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    lambda_star: Option<RawRational>,
    bound: Option<i64>,
    window: Option<[i64; 2]>,
}

struct LineIndex<'a> {
    text: &'a str,
}

impl LineIndex<'_> {
    /// 1-based (line, column) of a byte offset.
    fn position(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(offset, |nl| offset - nl - 1) + 1;
        (line, column)
    }

    fn line(&self, span: Range<usize>) -> Option<usize> {
        Some(self.position(span.start).0)
    }
}

struct Issues<'a> {
    index: LineIndex<'a>,
    list: Vec<ValidationIssue>,
}

impl Issues<'_> {
    fn push(
        &mut self,
        path: impl Into<String>,
        span: Option<Range<usize>>,
        message: impl Into<String>,
    ) {
        let line = span.and_then(|s| self.index.line(s));
        self.list.push(ValidationIssue {
            path: path.into(),
            line,
            message: message.into(),
        });
    }
}

/// Parses and validates a spec file. Syntax errors are reported as
/// [`SpecError::Parse`]; everything else, including unknown keys and wrong
/// types, as [`SpecError::Validation`] with field paths.
pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let index = LineIndex { text };
    if text.trim().is_empty() {
        return Err(SpecError::Parse {
            line: 1,
            column: 1,
            message: "empty document".into(),
        });
    }
    let de = toml::de::Deserializer::parse(text).map_err(|e| {
        let (line, column) = index.position(e.span().map_or(0, |s| s.start));
        SpecError::Parse {
            line,
            column,
            message: e.message().to_owned(),
        }
    })?;
    let raw: RawSpec = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e
            .path()
            .to_string()
            .replace(".$__serde_spanned_private_value", "");
        let line = e.inner().span().map(|s| index.position(s.start).0);
        SpecError::Validation(vec![ValidationIssue {
            path: if path == "." { "(root)".into() } else { path },
            line,
            message: e.inner().message().to_owned(),
        }])
    })?;
    validate(
        raw,
        Issues {
            index,
            list: Vec::new(),
        },
    )
}

fn validate(raw: RawSpec, mut issues: Issues<'_>) -> Result<SpecFile, SpecError> {
    let mut warnings = Vec::new();

    if *raw.schema_version.get_ref() != SPEC_SCHEMA_VERSION {
        issues.push(
            "schema_version",
            Some(raw.schema_version.span()),
            format!(
                "unsupported version {} (expected {SPEC_SCHEMA_VERSION})",
                raw.schema_version.get_ref()
            ),
        );
    }

    // link
    let meridian_count = *raw.link.meridian_count.get_ref();
    if meridian_count < 1 {
        issues.push(
            "link.meridian_count",
            Some(raw.link.meridian_count.span()),
            "a link has at least one component, hence at least one meridian",
        );
    }
    let factors_span = raw.link.factors.span();
    let mut factors = Vec::new();
    for (i, f) in raw.link.factors.into_inner().into_iter().enumerate() {
        let span = f.span();
        let path = format!("link.factors[{i}]");
        match convert_factor(f.into_inner(), &mut warnings, &path) {
            Ok(factor) => factors.push(factor),
            Err(msg) => issues.push(path, Some(span), msg),
        }
    }
    if factors.is_empty()
        && issues
            .list
            .iter()
            .all(|i| !i.path.starts_with("link.factors"))
    {
        issues.push(
            "link.factors",
            Some(factors_span),
            "no factors: the fiber must have genus >= 1 (nontrivially fibered link)",
        );
    }
    let link = FiberedLinkSpec::new(factors, meridian_count.max(0) as usize);
    let genus = link.fiber_genus();
    let surface = SurfaceModel::standard(genus).ok();

    // curves
    if raw.curves.is_empty() {
        issues.push("curves", None, "at least one curve is required");
    }
    let mut names = BTreeSet::new();
    let mut curves = Vec::new();
    for (i, c) in raw.curves.into_iter().enumerate() {
        let span = c.span();
        let c = c.into_inner();
        if c.name.trim().is_empty() {
            issues.push(
                format!("curves[{i}].name"),
                Some(span.clone()),
                "name must be non-empty",
            );
        } else if !names.insert(c.name.clone()) {
            issues.push(
                format!("curves[{i}].name"),
                Some(span.clone()),
                format!("duplicate name {:?}", c.name),
            );
        }
        let Some(surface) = surface else { continue };
        match surface.loop_class(c.class) {
            Ok(class) => curves.push(NamedCurve {
                name: c.name,
                class,
            }),
            Err(e) => issues.push(format!("curves[{i}].class"), Some(span), e.to_string()),
        }
    }

    // ambient
    let ambient_span = raw.ambient.span();
    let ambient = match raw.ambient.into_inner() {
        RawAmbient::Interior {} => Ambient::InteriorOnly,
        RawAmbient::FiberSum { records } => {
            if records.len() != link.meridian_count {
                issues.push(
                    "ambient.records",
                    Some(ambient_span),
                    format!(
                        "{} record(s) given but the link has {} meridian(s); one record per meridian",
                        records.len(),
                        link.meridian_count
                    ),
                );
            }
            Ambient::FiberSum(
                records
                    .into_iter()
                    .map(|r| FiberSumRecord {
                        summand: r.summand,
                        complement_simply_connected: r.complement_simply_connected,
                        fiber_square_zero_symplectic_torus: r.fiber_square_zero_symplectic_torus,
                        meridian_disjoint_from_curves: r.meridian_disjoint_from_curves,
                        vanishing_cycle_identification: r.vanishing_cycle_identification,
                    })
                    .collect(),
            )
        }
    };

    // maslov
    let maslov = raw.maslov.and_then(|m| {
        let span = m.span();
        let m = m.into_inner();
        let fiber = convert_disc(m.fiber_disc, BoundaryDirection::Fiber);
        let circle = convert_disc(m.circle_disc, BoundaryDirection::Circle);
        match (fiber, circle) {
            (Ok(fiber_disc), Ok(circle_disc)) => Some(MaslovData {
                fiber_disc,
                circle_disc,
                c1_even: m.c1_even,
                c1_justification: m.c1_justification,
            }),
            (f, c) => {
                for (name, r) in [("fiber_disc", f), ("circle_disc", c)] {
                    if let Err(msg) = r {
                        issues.push(format!("maslov.{name}"), Some(span.clone()), msg);
                    }
                }
                None
            }
        }
    });
    if maslov.is_some() && !ambient.is_fiber_sum() {
        warnings
            .push("maslov data is only used for the fiber-sum ambient and is ignored here".into());
    }

    // options
    let mut options = SpecOptions::default();
    if let Some(o) = raw.options {
        let span = o.span();
        let o = o.into_inner();
        if let Some(ls) = o.lambda_star {
            let parsed = match ls {
                RawRational::Int(i) => FiltrationParam::from_ratio(i, 1).ok(),
                RawRational::Text(s) => {
                    parse_rational(&s).and_then(|r| FiltrationParam::new(r).ok())
                }
            };
            match parsed {
                Some(p) => options.lambda_star = p,
                None => issues.push(
                    "options.lambda_star",
                    Some(span.clone()),
                    "must be a positive rational such as \"1\", \"1/2\" or \"0.25\"",
                ),
            }
        }
        if let Some(b) = o.bound {
            if b < 1 {
                issues.push("options.bound", Some(span.clone()), "must be at least 1");
            } else {
                options.bound = b as u64;
            }
        }
        if let Some([pmax, qmax]) = o.window {
            match PageWindow::new(pmax, qmax) {
                Ok(w) => options.window = w,
                Err(_) => issues.push("options.window", Some(span), "need pmax >= 1 and qmax >= 0"),
            }
        }
    }

    if !issues.list.is_empty() {
        return Err(SpecError::Validation(issues.list));
    }
    Ok(SpecFile {
        schema_version: SPEC_SCHEMA_VERSION,
        link,
        curves,
        ambient,
        maslov,
        options,
        warnings,
    })
}

const GENUS_HINT: &str = "the fiber must be nontrivially fibered (genus >= 1)";

fn sign_of(v: i64) -> Result<TwistSign, String> {
    TwistSign::from_value(v).ok_or_else(|| format!("sign must be 1 or -1 (got {v})"))
}

fn convert_factor(
    raw: RawFactor,
    warnings: &mut Vec<String>,
    path: &str,
) -> Result<LinkFactor, String> {
    let factor = match raw {
        RawFactor::Trefoil {} => LinkFactor::Trefoil,
        RawFactor::TorusKnot { n } => {
            if n < 1 {
                return Err(format!(
                    "torus knot T(2, 2n+1) with n = {n} has genus {}: {GENUS_HINT}",
                    n.max(0)
                ));
            }
            LinkFactor::TorusKnot2 { n: n as usize }
        }
        RawFactor::Hopf {
            sign,
            twist_curve,
            genus,
        } => {
            let sign = sign_of(sign)?;
            let twist_curve = match (twist_curve, genus) {
                (Some(c), g) => {
                    if g.is_some_and(|g| 2 * g != c.len() as i64) {
                        return Err("genus disagrees with the length of twist_curve".into());
                    }
                    c
                }
                (None, g) => {
                    let g = g.unwrap_or(1);
                    warnings.push(format!(
                        "{path}: no twist_curve given; using the zero class, so this factor acts trivially on homology"
                    ));
                    vec![0; 2 * g.max(0) as usize]
                }
            };
            if twist_curve.is_empty() {
                return Err(format!("hopf factor has genus 0: {GENUS_HINT}"));
            }
            if twist_curve.len() % 2 != 0 {
                return Err(format!("twist_curve has odd length {}", twist_curve.len()));
            }
            let twist_curve = CurveClass::from_vec_unchecked(twist_curve);
            match sign {
                TwistSign::Positive => LinkFactor::HopfPositive { twist_curve },
                TwistSign::Negative => LinkFactor::HopfNegative { twist_curve },
            }
        }
        RawFactor::Matrix { rows } => {
            let matrix = IntMatrix::from_rows(rows).map_err(|e| e.to_string())?;
            if matrix.rows() == 0 {
                return Err(format!("empty matrix has genus 0: {GENUS_HINT}"));
            }
            MonodromyMap::from_square_matrix(matrix.clone()).map_err(|e| e.to_string())?;
            LinkFactor::ExplicitMatrix { matrix }
        }
        RawFactor::TwistWord { genus, twists } => {
            if genus < 1 {
                return Err(format!(
                    "twist word on a genus {genus} surface: {GENUS_HINT}"
                ));
            }
            let genus = genus as usize;
            let mut word = Vec::with_capacity(twists.len());
            for (j, t) in twists.into_iter().enumerate() {
                if t.curve.len() != 2 * genus {
                    return Err(format!(
                        "twists[{j}].curve has length {}, expected {}",
                        t.curve.len(),
                        2 * genus
                    ));
                }
                word.push((
                    CurveClass::from_vec_unchecked(t.curve),
                    sign_of(t.sign).map_err(|e| format!("twists[{j}]: {e}"))?,
                ));
            }
            LinkFactor::TwistWord {
                genus,
                twists: word,
            }
        }
    };
    factor.monodromy().map_err(|e| e.to_string())?;
    Ok(factor)
}

fn convert_disc(raw: RawDisc, boundary: BoundaryDirection) -> Result<FramedDisc, String> {
    if raw.boundary_degenerate {
        if !raw.caps.is_empty() {
            return Err("a boundary-degenerate disc has no caps".into());
        }
        return Ok(FramedDisc::degenerate(raw.defect, boundary));
    }
    FramedDisc::new(raw.caps, raw.defect, boundary).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
schema_version = 1
[link]
meridian_count = 2
factors = [{ kind = "trefoil" }]
[[curves]]
name = "L1"
class = [1, 0]
[ambient]
kind = "interior"
"#;

    #[test]
    fn minimal_spec() {
        let spec = parse_spec(MINIMAL).unwrap();
        assert_eq!(spec.link.fiber_genus(), 1);
        assert_eq!(spec.curves.len(), 1);
        assert_eq!(spec.ambient, Ambient::InteriorOnly);
        assert_eq!(spec.options, SpecOptions::default());
    }

    #[test]
    fn empty_is_parse_error() {
        assert!(matches!(parse_spec(""), Err(SpecError::Parse { .. })));
        assert!(matches!(parse_spec("  \n"), Err(SpecError::Parse { .. })));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_spec("schema_version = 1\n[link\n").unwrap_err();
        match err {
            SpecError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected_with_path() {
        let text = MINIMAL.replace("kind = \"trefoil\"", "kind = \"trefoil\", extra = 1");
        let err = parse_spec(&text).unwrap_err();
        let issue = &err.issues()[0];
        assert_eq!(issue.path, "link.factors[0]");
        assert!(issue.message.contains("unknown field"), "{issue}");
        assert_eq!(issue.line, Some(5));
    }

    #[test]
    fn genus_zero_factor_rejected() {
        let text = MINIMAL.replace("kind = \"trefoil\"", "kind = \"torus_knot\", n = 0");
        let err = parse_spec(&text).unwrap_err();
        let issue = &err.issues()[0];
        assert_eq!(issue.path, "link.factors[0]");
        assert!(issue.message.contains("genus >= 1"), "{issue}");
    }

    #[test]
    fn bad_curves_reported_together() {
        let text = format!("{MINIMAL}\n[[curves]]\nname = \"L1\"\nclass = [2, 4]\n");
        let err = parse_spec(&text).unwrap_err();
        let paths: Vec<&str> = err.issues().iter().map(|i| i.path.as_str()).collect();
        assert_eq!(paths, ["curves[1].name", "curves[1].class"]);
    }

    #[test]
    fn record_count_checked() {
        let text = MINIMAL.replace(
            "kind = \"interior\"",
            "kind = \"fiber_sum\"\nrecords = [{ summand = \"E(1)\", complement_simply_connected = true, \
             fiber_square_zero_symplectic_torus = true, meridian_disjoint_from_curves = true, \
             vanishing_cycle_identification = true }]",
        );
        let err = parse_spec(&text).unwrap_err();
        assert_eq!(err.issues()[0].path, "ambient.records");
    }

    #[test]
    fn options_parse() {
        let text =
            format!("{MINIMAL}\n[options]\nlambda_star = \"3/2\"\nbound = 12\nwindow = [4, 2]\n");
        let spec = parse_spec(&text).unwrap();
        assert_eq!(
            spec.options.lambda_star,
            FiltrationParam::from_ratio(3, 2).unwrap()
        );
        assert_eq!(spec.options.bound, 12);
        assert_eq!(spec.options.window, PageWindow::new(4, 2).unwrap());

        let bad = format!("{MINIMAL}\n[options]\nlambda_star = \"-1\"\n");
        assert_eq!(
            parse_spec(&bad).unwrap_err().issues()[0].path,
            "options.lambda_star"
        );
    }

    #[test]
    fn hopf_default_warns() {
        let text = MINIMAL
            .replace(
                "factors = [{ kind = \"trefoil\" }]",
                "factors = [{ kind = \"trefoil\" }, { kind = \"hopf\", sign = 1 }]",
            )
            .replace("class = [1, 0]", "class = [1, 0, 0, 0]");
        let spec = parse_spec(&text).unwrap();
        assert_eq!(spec.link.fiber_genus(), 2);
        assert_eq!(spec.warnings.len(), 1);
    }

    #[test]
    fn non_symplectic_matrix_rejected() {
        let text = MINIMAL.replace(
            "kind = \"trefoil\"",
            "kind = \"matrix\", rows = [[2, 0], [0, 1]]",
        );
        let err = parse_spec(&text).unwrap_err();
        assert!(err.issues()[0].message.contains("intersection form"));
    }
}
