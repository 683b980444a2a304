//! Job descriptions (input files and command-line flags), their validation,
//! and canonical text/JSON rendering of results.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coeffring::{format_rational, ClassPoly};
use crate::error::{Error, Result};
use crate::expr::parse_class;
use crate::geometry::{BaseMode, FlagGeometry, StrictPartition, Twist};
use crate::oracle::stepwise_for;
use crate::pushforward::{pushforward_with, InputDegree, PushforwardOptions, PushforwardResult};
use crate::tpoly::TPoly;

/// Geometry block of a job file; every field optional so drafts can be layered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDraft {
    pub family: Option<String>,
    pub n: Option<usize>,
    pub rank: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub mu: Option<Vec<u32>>,
    pub twist: Option<String>,
    pub base: Option<String>,
}

/// A possibly incomplete job, as read from a file or assembled from flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDraft {
    #[serde(default)]
    pub geometry: GeometryDraft,
    pub f: Option<String>,
    pub halve: Option<bool>,
    pub cutoff: Option<u32>,
    pub format: Option<String>,
}

fn overlay<T>(dst: &mut Option<T>, src: Option<T>) {
    if src.is_some() {
        *dst = src;
    }
}

impl JobDraft {
    /// Reads a job file; `.json` files are JSON, everything else TOML.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if is_json {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    /// Fields set in `other` replace those of `self`.
    pub fn overlay(&mut self, other: JobDraft) {
        let g = other.geometry;
        overlay(&mut self.geometry.family, g.family);
        overlay(&mut self.geometry.n, g.n);
        overlay(&mut self.geometry.rank, g.rank);
        overlay(&mut self.geometry.dims, g.dims);
        overlay(&mut self.geometry.mu, g.mu);
        overlay(&mut self.geometry.twist, g.twist);
        overlay(&mut self.geometry.base, g.base);
        overlay(&mut self.f, other.f);
        overlay(&mut self.halve, other.halve);
        overlay(&mut self.cutoff, other.cutoff);
        overlay(&mut self.format, other.format);
    }

    pub fn finish(self) -> Result<JobSpec> {
        let geometry = build_geometry(&self.geometry)?;
        let f_text = self.f.ok_or_else(|| Error::MissingField("f".into()))?;
        let f = parse_class(&f_text, geometry.d())?;
        let format = match self.format.as_deref() {
            None | Some("text") => OutputFormat::Text,
            Some("structured") | Some("json") => OutputFormat::Structured,
            Some(other) => {
                return Err(invalid("format", format!("`{other}` is not one of text, structured")))
            }
        };
        let halve = self.halve.unwrap_or(false);
        if halve && !geometry.is_halvable() {
            return Err(Error::NotHalvable(geometry.to_string()));
        }
        Ok(JobSpec { geometry, f_text, f, halve, cutoff: self.cutoff, format })
    }
}

fn invalid(field: &str, reason: impl Into<String>) -> Error {
    Error::InvalidField { field: field.to_string(), reason: reason.into() }
}

fn required<T: Clone>(value: &Option<T>, field: &str) -> Result<T> {
    value.clone().ok_or_else(|| Error::MissingField(format!("geometry.{field}")))
}

fn forbid<T>(value: &Option<T>, field: &str, family: &str) -> Result<()> {
    match value {
        Some(_) => Err(invalid(&format!("geometry.{field}"), format!("not used by family {family}"))),
        None => Ok(()),
    }
}

fn parse_twist(value: &Option<String>) -> Result<Twist> {
    match value.as_deref() {
        None | Some("formal") => Ok(Twist::Formal),
        Some("zero") => Ok(Twist::Zero),
        Some(other) => Err(invalid("geometry.twist", format!("`{other}` is not one of formal, zero"))),
    }
}

fn parse_base(value: &Option<String>) -> Result<BaseMode> {
    match value.as_deref() {
        None | Some("formal") => Ok(BaseMode::Formal),
        Some("trivial") => Ok(BaseMode::Trivial),
        Some(other) => {
            Err(invalid("geometry.base", format!("`{other}` is not one of formal, trivial")))
        }
    }
}

fn build_geometry(g: &GeometryDraft) -> Result<FlagGeometry> {
    let family = required(&g.family, "family")?;
    let base = parse_base(&g.base)?;
    let mu = |g: &GeometryDraft| -> Result<StrictPartition> {
        StrictPartition::new(required(&g.mu, "mu")?)
    };
    let geometry = match family.as_str() {
        "A" => {
            forbid(&g.mu, "mu", "A")?;
            forbid(&g.rank, "rank", "A")?;
            if parse_twist(&g.twist)? == Twist::Formal && g.twist.is_some() {
                return Err(invalid("geometry.twist", "type A has no twisting line bundle"));
            }
            FlagGeometry::a_flag(required(&g.n, "n")?, required(&g.dims, "dims")?)?
        }
        "C" => {
            forbid(&g.mu, "mu", "C")?;
            forbid(&g.rank, "rank", "C")?;
            FlagGeometry::c_flag(required(&g.n, "n")?, required(&g.dims, "dims")?, parse_twist(&g.twist)?)?
        }
        "BD" => {
            forbid(&g.mu, "mu", "BD")?;
            forbid(&g.n, "n", "BD")?;
            FlagGeometry::bd_flag(
                required(&g.rank, "rank")?,
                required(&g.dims, "dims")?,
                parse_twist(&g.twist)?,
            )?
        }
        "KL_A" => {
            forbid(&g.dims, "dims", "KL_A")?;
            forbid(&g.rank, "rank", "KL_A")?;
            if parse_twist(&g.twist)? == Twist::Formal && g.twist.is_some() {
                return Err(invalid("geometry.twist", "type KL_A has no twisting line bundle"));
            }
            FlagGeometry::kl_a(required(&g.n, "n")?, mu(g)?)?
        }
        "KL_C" => {
            forbid(&g.dims, "dims", "KL_C")?;
            forbid(&g.rank, "rank", "KL_C")?;
            FlagGeometry::kl_c(required(&g.n, "n")?, mu(g)?, parse_twist(&g.twist)?)?
        }
        other => {
            return Err(invalid(
                "geometry.family",
                format!("`{other}` is not one of A, C, BD, KL_A, KL_C"),
            ))
        }
    };
    Ok(geometry.with_base(base))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

/// A validated job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub geometry: FlagGeometry,
    pub f_text: String,
    pub f: TPoly,
    pub halve: bool,
    pub cutoff: Option<u32>,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn options(&self) -> PushforwardOptions {
        PushforwardOptions { halve: self.halve, cutoff: self.cutoff, ..Default::default() }
    }

    pub fn compute(&self) -> Result<PushforwardResult> {
        pushforward_with(&self.f, &self.geometry, &self.options())
    }

    /// The stepwise value, for the families that have one.
    pub fn stepwise(&self) -> Result<PushforwardResult> {
        let value = stepwise_for(&self.f, &self.geometry, &self.options())?;
        Ok(PushforwardResult {
            value,
            fiber_dim: self.geometry.fiber_dim(),
            input_degree: InputDegree::of(&self.f),
            halved: self.halve,
        })
    }

    pub fn check(&self) -> Result<CheckReport> {
        let closed = self.compute()?;
        let oracle = self.stepwise()?;
        let difference = &closed.value - &oracle.value;
        Ok(CheckReport { closed, oracle, difference })
    }
}

pub fn run_job(spec: &JobSpec) -> Result<String> {
    Ok(render_result(&spec.compute()?, spec.format))
}

pub fn run_oracle(spec: &JobSpec) -> Result<String> {
    Ok(render_result(&spec.stepwise()?, spec.format))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub closed: PushforwardResult,
    pub oracle: PushforwardResult,
    pub difference: ClassPoly,
}

impl CheckReport {
    /// Number of terms where the two routes disagree.
    pub fn diffs(&self) -> usize {
        self.difference.len()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => {
                let mut out = String::new();
                out.push_str("closed:\n");
                push_terms(&mut out, &self.closed.value);
                out.push_str("oracle:\n");
                push_terms(&mut out, &self.oracle.value);
                out.push_str(&format!("diffs: {}\n", self.diffs()));
                out
            }
            OutputFormat::Structured => {
                let doc = StructuredCheck {
                    closed: structured_terms(&self.closed.value),
                    oracle: structured_terms(&self.oracle.value),
                    difference: structured_terms(&self.difference),
                    diffs: self.diffs(),
                };
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            }
        }
    }
}

#[derive(Serialize)]
struct StructuredSymbol<'a> {
    bundle: &'a str,
    kind: &'static str,
    index: u32,
}

#[derive(Serialize)]
struct StructuredTerm<'a> {
    coeff: String,
    monomial: Vec<StructuredSymbol<'a>>,
}

#[derive(Serialize)]
struct StructuredResult<'a> {
    value: Vec<StructuredTerm<'a>>,
    fiber_dim: i64,
    degree: serde_json::Value,
    halved: bool,
}

#[derive(Serialize)]
struct StructuredCheck<'a> {
    closed: Vec<StructuredTerm<'a>>,
    oracle: Vec<StructuredTerm<'a>>,
    difference: Vec<StructuredTerm<'a>>,
    diffs: usize,
}

fn structured_terms(value: &ClassPoly) -> Vec<StructuredTerm<'_>> {
    value
        .terms()
        .map(|(mono, coeff)| StructuredTerm {
            coeff: format_rational(coeff),
            monomial: mono
                .symbols()
                .map(|s| StructuredSymbol { bundle: s.bundle(), kind: s.kind().as_str(), index: s.index() })
                .collect(),
        })
        .collect()
}

fn degree_value(d: InputDegree) -> serde_json::Value {
    match d {
        InputDegree::Homogeneous(q) => q.into(),
        InputDegree::Inhomogeneous => "inhomogeneous".into(),
        InputDegree::Zero => "zero".into(),
    }
}

fn degree_text(d: InputDegree) -> String {
    match d {
        InputDegree::Homogeneous(q) => q.to_string(),
        InputDegree::Inhomogeneous => "inhomogeneous".into(),
        InputDegree::Zero => "zero".into(),
    }
}

/// One term per line in canonical order; `0` for the zero class.
fn push_terms(out: &mut String, value: &ClassPoly) {
    if value.is_zero() {
        out.push_str("0\n");
        return;
    }
    for (mono, coeff) in value.terms() {
        let line = if mono.is_unit() {
            format_rational(coeff)
        } else if coeff == &num_traits::One::one() {
            mono.to_string()
        } else if coeff == &-<crate::coeffring::Rational as num_traits::One>::one() {
            format!("-{mono}")
        } else {
            format!("{}*{}", format_rational(coeff), mono)
        };
        out.push_str(&line);
        out.push('\n');
    }
}

pub fn render_result(r: &PushforwardResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "fiber_dim: {}\ndegree: {}\nhalved: {}\nvalue:\n",
                r.fiber_dim,
                degree_text(r.input_degree),
                r.halved
            );
            push_terms(&mut out, &r.value);
            out
        }
        OutputFormat::Structured => {
            let doc = StructuredResult {
                value: structured_terms(&r.value),
                fiber_dim: r.fiber_dim,
                degree: degree_value(r.input_degree),
                halved: r.halved,
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draft(toml_text: &str) -> JobDraft {
        JobDraft::from_toml(toml_text).unwrap()
    }

    #[test]
    fn grassmannian_job() {
        let spec = draft(
            r#"
            f = "(x1+x2)^4"
            [geometry]
            family = "A"
            n = 4
            dims = [2]
            base = "trivial"
            "#,
        )
        .finish()
        .unwrap();
        let out = run_job(&spec).unwrap();
        assert_eq!(out, "fiber_dim: 4\ndegree: 4\nhalved: false\nvalue:\n2\n");
    }

    #[test]
    fn lagrangian_job_json() {
        let spec = JobDraft::from_json(
            r#"{"geometry": {"family": "C", "n": 2, "dims": [2], "twist": "zero", "base": "trivial"},
                "f": "schur[1](x)^3", "format": "structured", "cutoff": null}"#,
        )
        .unwrap()
        .finish()
        .unwrap();
        let out = run_job(&spec).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value"][0]["coeff"], "2");
        assert_eq!(v["value"][0]["monomial"].as_array().unwrap().len(), 0);
        assert_eq!(v["fiber_dim"], 3);
        assert_eq!(v["degree"], 3);
        assert_eq!(v["halved"], false);
    }

    #[test]
    fn kl_job_matches_oracle() {
        let spec = draft(
            r#"
            f = "x1^2"
            [geometry]
            family = "KL_A"
            n = 4
            mu = [3, 1]
            "#,
        )
        .finish()
        .unwrap();
        let report = spec.check().unwrap();
        assert_eq!(report.diffs(), 0);
        assert!(!report.closed.value.is_zero());
        for (mono, _) in report.closed.value.terms() {
            for s in mono.symbols() {
                assert!(s.bundle() == "E_3" || s.bundle() == "E_1");
            }
        }
        assert!(report.render(OutputFormat::Text).ends_with("diffs: 0\n"));
    }

    #[test]
    fn structured_monomials_repeat_symbols() {
        // `format` sits at the top level, not in geometry
        let misplaced = "f = \"x1\"\n[geometry]\nfamily = \"A\"\nn = 2\ndims = [1]\nformat = \"text\"";
        assert_eq!(JobDraft::from_toml(misplaced).unwrap_err().code(), "E_INPUT");
        let spec = draft(
            r#"
            f = "x1^4"
            format = "structured"
            [geometry]
            family = "A"
            n = 2
            dims = [1]
            "#,
        )
        .finish()
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&run_job(&spec).unwrap()).unwrap();
        // [t^1](t^4 s_{1/t}(E)) = s_3(E)
        assert_eq!(v["value"][0]["monomial"][0]["index"], 3);
        assert_eq!(v["value"][0]["monomial"][0]["kind"], "segre");
    }

    #[test]
    fn overlay_prefers_later_fields() {
        let mut base = draft(
            r#"
            f = "x1"
            [geometry]
            family = "A"
            n = 3
            dims = [1]
            "#,
        );
        let mut inline = JobDraft::default();
        inline.geometry.n = Some(2);
        inline.f = Some("x1^3".into());
        base.overlay(inline);
        let spec = base.finish().unwrap();
        assert_eq!(spec.geometry.n(), 2);
        assert_eq!(spec.f_text, "x1^3");
    }

    #[test]
    fn validation_errors_have_codes() {
        let code = |t: &str| draft(t).finish().unwrap_err().code();
        assert_eq!(code("[geometry]\nfamily = \"A\"\nn = 4\ndims = [2]"), "E_MISSING_FIELD");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"Q\""), "E_INVALID_FIELD");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"A\"\ndims = [2]"), "E_MISSING_FIELD");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"A\"\nn = 4\ndims = [5]"), "E_DIMS");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"KL_C\"\nn = 2\nmu = [4, 1]"), "E_INADMISSIBLE");
        assert_eq!(code("f = \"1\"\nhalve = true\n[geometry]\nfamily = \"BD\"\nrank = 5\ndims = [2]"), "E_NOT_HALVABLE");
        assert_eq!(code("f = \"x3\"\n[geometry]\nfamily = \"A\"\nn = 4\ndims = [2]"), "E_VARIABLE");
        assert_eq!(code("f = \"(x1\"\n[geometry]\nfamily = \"A\"\nn = 4\ndims = [2]"), "E_PARSE");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"A\"\nn = 4\ndims = [2]\ntwist = \"formal\""), "E_INVALID_FIELD");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"BD\"\nn = 2\ndims = [1]"), "E_INVALID_FIELD");
        assert_eq!(code("f = \"1\"\n[geometry]\nfamily = \"KL_A\"\nn = 4\nmu = [1, 3]"), "E_NOT_STRICT");
        assert_eq!(JobDraft::from_toml("bogus = 1").unwrap_err().code(), "E_INPUT");
    }

    #[test]
    fn oracle_unsupported_for_isotropic() {
        let spec = draft("f = \"x1\"\n[geometry]\nfamily = \"C\"\nn = 1\ndims = [1]").finish().unwrap();
        assert_eq!(run_oracle(&spec).unwrap_err().code(), "E_ORACLE_UNSUPPORTED");
    }

    #[test]
    fn output_is_deterministic() {
        let text = "f = \"schur[2,1](x)*s[2](E) + x1^5*c1(L)\"\n[geometry]\nfamily = \"C\"\nn = 3\ndims = [1, 2]";
        let a = run_job(&draft(text).finish().unwrap()).unwrap();
        let b = run_job(&draft(text).finish().unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("degree: inhomogeneous"));
    }
}
