//! Elliptic / parabolic / hyperbolic classification by the sign of
//! `a^2 + b*phi(nu)`, the discriminant of the second-order coefficients.

use crate::error::{Error, Result};
use crate::phi::Phi;

/// Default parabolic tolerance, applied relative to `max(1, a^2)`.
pub const CLASS_TOL: f64 = 1e-12;

/// Coefficients of the relation `2aH + bK = phi(nu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeingartenParams {
    pub a: f64,
    pub b: f64,
}

impl WeingartenParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite coefficients a={a}, b={b}")));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::DegenerateParams);
        }
        Ok(WeingartenParams { a, b })
    }

    /// Parabolic tolerance band scaled to these coefficients.
    pub fn class_tol(&self) -> f64 {
        CLASS_TOL * (self.a * self.a).max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Pointwise classification at a single value of the angle function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub kind: TypeKind,
    pub discriminant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
    Mixed,
}

/// Classification over the whole angle interval, by dense sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalClassification {
    pub kind: GlobalKind,
    pub min_discriminant: f64,
    pub max_discriminant: f64,
}

/// `a^2 + b*phi(nu)`.
pub fn discriminant(params: &WeingartenParams, phi: &Phi, nu: f64) -> Result<f64> {
    Ok(params.a * params.a + params.b * phi.eval(nu)?)
}

/// Classifies the equation at a single `nu`; `|D| <= tol_class` maps to parabolic.
pub fn classify_at(
    params: &WeingartenParams,
    phi: &Phi,
    nu: f64,
    tol_class: f64,
) -> Result<Classification> {
    if tol_class <= 0.0 {
        return Err(Error::InvalidInput(format!("tol_class must be positive, got {tol_class}")));
    }
    let d = discriminant(params, phi, nu)?;
    let kind = if d.abs() <= tol_class {
        TypeKind::Parabolic
    } else if d > 0.0 {
        TypeKind::Elliptic
    } else {
        TypeKind::Hyperbolic
    };
    Ok(Classification { kind, discriminant: d })
}

/// Samples the discriminant at `n_samples` uniform points of `[-1, 1]`.
///
/// Elliptic and hyperbolic verdicts require a strict uniform sign beyond the
/// tolerance band; parabolic requires every sample inside the band; anything
/// else is mixed.
pub fn classify_global(
    params: &WeingartenParams,
    phi: &Phi,
    n_samples: usize,
) -> Result<GlobalClassification> {
    if n_samples < 2 {
        return Err(Error::InvalidInput(format!("n_samples must be >= 2, got {n_samples}")));
    }
    let tol = params.class_tol();
    let mut min_d = f64::INFINITY;
    let mut max_d = f64::NEG_INFINITY;
    let (mut all_pos, mut all_neg, mut all_zero) = (true, true, true);
    for j in 0..n_samples {
        let nu = -1.0 + 2.0 * j as f64 / (n_samples - 1) as f64;
        let d = discriminant(params, phi, nu.clamp(-1.0, 1.0))?;
        min_d = min_d.min(d);
        max_d = max_d.max(d);
        all_pos &= d > tol;
        all_neg &= d < -tol;
        all_zero &= d.abs() <= tol;
    }
    let kind = if all_pos {
        GlobalKind::Elliptic
    } else if all_neg {
        GlobalKind::Hyperbolic
    } else if all_zero {
        GlobalKind::Parabolic
    } else {
        GlobalKind::Mixed
    };
    Ok(GlobalClassification { kind, min_discriminant: min_d, max_discriminant: max_d })
}
