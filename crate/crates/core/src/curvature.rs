//! Principal curvatures of revolved graph profiles and the Weingarten
//! relation residual.

use crate::classify::WeingartenParams;
use crate::error::{Error, Result};
use crate::phi::Phi;
use crate::profile::{RadialSolution, ResidualReport};

/// Curvature data of one profile node, for the upward graph orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureSample {
    pub r: f64,
    /// Meridian principal curvature `u''/(1+u'^2)^{3/2}`.
    pub kappa1: f64,
    /// Parallel principal curvature `u'/(r*sqrt(1+u'^2))`.
    pub kappa2: f64,
    pub mean: f64,
    pub gauss: f64,
    /// Angle function `1/sqrt(1+u'^2)`, the vertical normal component.
    pub nu: f64,
}

fn second_derivatives(sol: &RadialSolution) -> Vec<f64> {
    if let Some(ddu) = &sol.ddu {
        return ddu.clone();
    }
    let (r, du) = (&sol.r, &sol.du);
    let n = r.len();
    let mut out = vec![0.0; n];
    for i in 1..n - 1 {
        let hl = r[i] - r[i - 1];
        let hr = r[i + 1] - r[i];
        out[i] = (hl * hl * du[i + 1] + (hr * hr - hl * hl) * du[i] - hr * hr * du[i - 1])
            / (hl * hr * (hl + hr));
    }
    // One-sided second-order stencils at the two ends.
    let h0 = r[1] - r[0];
    let h1 = r[2] - r[1];
    out[0] = (-(2.0 * h0 + h1) * du[0] / (h0 * (h0 + h1)))
        + ((h0 + h1) * du[1] / (h0 * h1))
        - (h0 * du[2] / (h1 * (h0 + h1)));
    let hm = r[n - 1] - r[n - 2];
    let hp = r[n - 2] - r[n - 3];
    out[n - 1] = ((2.0 * hm + hp) * du[n - 1] / (hm * (hm + hp)))
        - ((hm + hp) * du[n - 2] / (hm * hp))
        + (hm * du[n - 3] / (hp * (hm + hp)));
    out
}

/// Per-node curvature samples; the axis node uses the limits
/// `kappa1 = kappa2 = u''(0)`.
pub fn principal_curvatures(sol: &RadialSolution) -> Result<Vec<CurvatureSample>> {
    let n = sol.len();
    if n < 3 {
        return Err(Error::TooFewNodes(n));
    }
    let ddu = second_derivatives(sol);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (r, du) = (sol.r[i], sol.du[i]);
        let w2 = 1.0 + du * du;
        let (kappa1, kappa2) = if r == 0.0 {
            (ddu[i], ddu[i])
        } else {
            (ddu[i] / w2.powf(1.5), du / (r * w2.sqrt()))
        };
        out.push(CurvatureSample {
            r,
            kappa1,
            kappa2,
            mean: 0.5 * (kappa1 + kappa2),
            gauss: kappa1 * kappa2,
            nu: 1.0 / w2.sqrt(),
        });
    }
    Ok(out)
}

/// Per-node signed residual `2a*H + b*K - phi(nu)` of the Weingarten relation.
pub fn weingarten_residual(
    params: &WeingartenParams,
    phi: &Phi,
    sol: &RadialSolution,
) -> Result<ResidualReport> {
    let samples = principal_curvatures(sol)?;
    let mut per_node = Vec::with_capacity(samples.len());
    for s in &samples {
        let value = 2.0 * params.a * s.mean + params.b * s.gauss - phi.eval(s.nu.clamp(-1.0, 1.0))?;
        per_node.push(value);
    }
    Ok(ResidualReport::from_values(per_node, Vec::new()))
}
