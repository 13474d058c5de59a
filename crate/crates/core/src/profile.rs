//! Sampled radial profiles and residual statistics.

use crate::classify::WeingartenParams;
use crate::error::{Error, Result};
use crate::phi::Phi;

/// Root choice for the axis curvature `u''(0)`, the two solutions of
/// `2a*x + b*x^2 = phi(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// How a profile was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Picard iteration of the integrated fixed-point operator.
    FixedPoint,
    /// Explicit Runge-Kutta continuation of an existing profile.
    Continued,
    /// Exact closed form (parabolic circles, test oracles).
    ClosedForm,
}

/// A sampled radial profile `(r, u, u')` with provenance metadata.
///
/// `ddu` optionally carries exact second derivatives for closed-form
/// profiles; verification routines fall back to finite differences of `du`
/// when it is absent.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    pub r: Vec<f64>,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    pub ddu: Option<Vec<f64>>,
    pub params: WeingartenParams,
    pub phi: Phi,
    pub branch: Branch,
    pub provenance: Provenance,
}

impl RadialSolution {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// Checks the structural invariants: equal lengths, strictly increasing
    /// radii, finite slopes, and the axis data for fixed-point profiles.
    pub fn validate(&self) -> Result<()> {
        let n = self.r.len();
        if n < 2 {
            return Err(Error::DegenerateProfile);
        }
        if self.u.len() != n || self.du.len() != n {
            return Err(Error::InvalidInput("profile sequences have unequal lengths".into()));
        }
        if let Some(ddu) = &self.ddu {
            if ddu.len() != n {
                return Err(Error::InvalidInput("ddu length mismatch".into()));
            }
        }
        for i in 1..n {
            if !(self.r[i] > self.r[i - 1]) {
                return Err(Error::InvalidInput(format!("radii not strictly increasing at node {i}")));
            }
        }
        if self.du.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidInput("non-finite slope in profile".into()));
        }
        if self.provenance == Provenance::FixedPoint {
            if self.r[0] != 0.0 || self.u[0] != 0.0 || self.du[0] != 0.0 {
                return Err(Error::InvalidInput("fixed-point profile must carry u(0) = u'(0) = 0".into()));
            }
        }
        Ok(())
    }
}

/// Pointwise and aggregate residuals of an equation over a profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub rms: f64,
    /// Signed residual per node; entries listed in `skipped_nodes` are 0.
    pub per_node: Vec<f64>,
    pub skipped_nodes: Vec<usize>,
}

impl ResidualReport {
    /// Builds the aggregate statistics from per-node values; skipped entries
    /// are forced to 0 and excluded from the statistics.
    pub fn from_values(mut per_node: Vec<f64>, skipped_nodes: Vec<usize>) -> Self {
        for &i in &skipped_nodes {
            per_node[i] = 0.0;
        }
        let counted = per_node.len() - skipped_nodes.len();
        let mut max_abs: f64 = 0.0;
        let mut sum_sq = 0.0;
        for (i, v) in per_node.iter().enumerate() {
            if skipped_nodes.contains(&i) {
                continue;
            }
            max_abs = max_abs.max(v.abs());
            sum_sq += v * v;
        }
        let rms = if counted > 0 { (sum_sq / counted as f64).sqrt() } else { 0.0 };
        ResidualReport { max_abs, rms, per_node, skipped_nodes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::WeingartenParams;

    fn dummy(provenance: Provenance) -> RadialSolution {
        RadialSolution {
            r: vec![0.0, 0.5, 1.0],
            u: vec![0.0, 0.1, 0.3],
            du: vec![0.0, 0.3, 0.5],
            ddu: None,
            params: WeingartenParams::new(1.0, 1.0).unwrap(),
            phi: Phi::constant(3.0),
            branch: Branch::Plus,
            provenance,
        }
    }

    #[test]
    fn validate_accepts_well_formed() {
        dummy(Provenance::FixedPoint).validate().unwrap();
    }

    #[test]
    fn validate_rejects_nonmonotone_radii() {
        let mut s = dummy(Provenance::ClosedForm);
        s.r[2] = 0.25;
        assert!(s.validate().is_err());
    }

    #[test]
    fn validate_rejects_bad_axis_data() {
        let mut s = dummy(Provenance::FixedPoint);
        s.u[0] = 0.1;
        assert!(s.validate().is_err());
    }

    #[test]
    fn report_statistics() {
        let rep = ResidualReport::from_values(vec![1.0, -2.0, 0.5, 9.0], vec![3]);
        assert_eq!(rep.max_abs, 2.0);
        assert!(rep.max_abs >= rep.rms && rep.rms > 0.0);
        assert_eq!(rep.per_node[3], 0.0);
    }
}
