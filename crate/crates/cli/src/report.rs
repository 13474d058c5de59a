//! JSON report schemas. Field order is fixed for diffability.

use serde::Serialize;
use weingarten_core::{GlobalKind, ResidualReport, SignReport, SignVerdict, TypeKind};

#[derive(Debug, Serialize)]
pub struct ParamsJson {
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Serialize)]
pub struct GridJson {
    #[serde(rename = "R")]
    pub radius: f64,
    pub n: usize,
}

#[derive(Debug, Serialize)]
pub struct ResidualJson {
    pub max_abs: f64,
    pub rms: f64,
}

impl From<&ResidualReport> for ResidualJson {
    fn from(r: &ResidualReport) -> Self {
        ResidualJson { max_abs: r.max_abs, rms: r.rms }
    }
}

pub fn kind_str(kind: TypeKind) -> &'static str {
    match kind {
        TypeKind::Elliptic => "elliptic",
        TypeKind::Parabolic => "parabolic",
        TypeKind::Hyperbolic => "hyperbolic",
    }
}

pub fn global_kind_str(kind: GlobalKind) -> &'static str {
    match kind {
        GlobalKind::Elliptic => "elliptic",
        GlobalKind::Parabolic => "parabolic",
        GlobalKind::Hyperbolic => "hyperbolic",
        GlobalKind::Mixed => "mixed",
    }
}

pub fn verdict_str(v: SignVerdict) -> &'static str {
    match v {
        SignVerdict::Negative => "negative",
        SignVerdict::Positive => "positive",
        SignVerdict::Zero => "zero",
        SignVerdict::Mixed => "mixed",
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub params: ParamsJson,
    pub phi: String,
    pub kind: String,
    pub discriminant: DiscriminantJson,
    pub at_axis: AxisClassJson,
}

#[derive(Debug, Serialize)]
pub struct DiscriminantJson {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Serialize)]
pub struct AxisClassJson {
    pub kind: String,
    pub discriminant: f64,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub params: ParamsJson,
    pub phi: String,
    pub branch: String,
    pub classification: String,
    pub grid: GridJson,
    pub iterations: usize,
    pub residual: ResidualJson,
    pub initial_curvature: f64,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct SignJson {
    pub verdict: String,
    pub min_u: f64,
    pub max_u: f64,
}

impl From<&SignReport> for SignJson {
    fn from(s: &SignReport) -> Self {
        SignJson { verdict: verdict_str(s.verdict).into(), min_u: s.min_u, max_u: s.max_u }
    }
}

#[derive(Debug, Serialize)]
pub struct DirichletReport {
    pub params: ParamsJson,
    pub phi: String,
    pub branch: String,
    pub grid: GridJson,
    pub sign: SignJson,
    pub residual: ResidualJson,
    pub boundary_value: f64,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub params: ParamsJson,
    pub phi: String,
    pub nodes: usize,
    pub ode_residual: ResidualJson,
    pub weingarten_residual: ResidualJson,
}

#[derive(Debug, Serialize)]
pub struct DomainJson {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Serialize)]
pub struct ParabolicReport {
    pub normalized: NormalizedJson,
    pub k: f64,
    pub m: f64,
    pub sign: String,
    pub arc_class: String,
    pub domain: Option<DomainJson>,
    pub residual: Option<ResidualJson>,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct NormalizedJson {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Serialize)]
pub struct CylinderReport {
    pub normalized: NormalizedJson,
    pub r0: f64,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    pub relation_lhs: f64,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub b: f64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_max_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial_curvature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}
