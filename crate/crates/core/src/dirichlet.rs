//! Radial Dirichlet solutions on a disk with zero boundary data, the
//! constant-sign check, and the 2D functional residual verification.

use crate::classify::WeingartenParams;
use crate::continuation::{continue_ode, ContinuationStatus};
use crate::error::{Error, Result};
use crate::numerics::max_abs;
use crate::phi::Phi;
use crate::picard::{fixed_point_solve, SolverConfig};
use crate::profile::{Branch, RadialSolution, ResidualReport};
use crate::spline::CubicSpline;

/// How many times the fixed-point radius is halved before giving up.
pub const MAX_SHRINKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVerdict {
    Negative,
    Positive,
    Zero,
    Mixed,
}

/// Verdict on the sign of a Dirichlet solution over the interior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignReport {
    pub verdict: SignVerdict,
    pub min_u: f64,
    pub max_u: f64,
}

fn sign_tol(u: &[f64]) -> f64 {
    1e-9 * max_abs(u).max(1.0)
}

/// Solves the zero-boundary Dirichlet problem on the disk of radius `R`.
///
/// The IVP solution is computed on `[0, R]`; when the Picard iteration does
/// not converge at `R` the radius is halved (up to [`MAX_SHRINKS`] times) and
/// the profile extended back to `R` by explicit continuation. The boundary
/// value is then subtracted: vertical translates solve the same equation, so
/// the shifted profile still satisfies it and vanishes at `r = R`.
pub fn solve_dirichlet_disk(
    params: &WeingartenParams,
    phi: &Phi,
    branch: Branch,
    radius: f64,
    config: &SolverConfig,
) -> Result<RadialSolution> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("disk radius must be positive, got {radius}")));
    }
    let mut cfg = *config;
    cfg.radius = radius;

    let mut solved = None;
    let mut last_err = None;
    for shrink in 0..=MAX_SHRINKS {
        match fixed_point_solve(params, phi, branch, &cfg) {
            Ok(run) => {
                solved = Some(run.solution);
                break;
            }
            Err(e @ Error::NonConvergence { .. }) | Err(e @ Error::SlopeBlowup { .. }) => {
                last_err = Some(e);
                if shrink == MAX_SHRINKS {
                    break;
                }
                cfg.radius *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    let mut sol = match solved {
        Some(s) => s,
        None => return Err(last_err.unwrap()),
    };

    if cfg.radius < radius {
        let step = cfg.radius / cfg.n as f64;
        let cont = continue_ode(&sol, radius, step, cfg.slope_cap)?;
        match cont.status {
            ContinuationStatus::ReachedTarget => sol = cont.solution,
            ContinuationStatus::StoppedVertical => {
                return Err(Error::StoppedVertical { r: *cont.solution.r.last().unwrap() });
            }
        }
    }

    let boundary = *sol.u.last().unwrap();
    for v in sol.u.iter_mut() {
        *v -= boundary;
    }
    Ok(sol)
}

/// Classifies the sign of a Dirichlet solution over its interior nodes.
pub fn sign_report(sol: &RadialSolution) -> Result<SignReport> {
    let n = sol.len();
    if n < 3 {
        return Err(Error::TooFewNodes(n));
    }
    let tol = sign_tol(&sol.u);
    let boundary = *sol.u.last().unwrap();
    if boundary.abs() > tol {
        return Err(Error::NotDirichlet(boundary));
    }
    let interior = &sol.u[..n - 1];
    let min_u = interior.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_u = interior.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let has_pos = max_u > tol;
    let has_neg = min_u < -tol;
    let verdict = match (has_pos, has_neg) {
        (true, true) => SignVerdict::Mixed,
        (true, false) => SignVerdict::Positive,
        (false, true) => SignVerdict::Negative,
        (false, false) => SignVerdict::Zero,
    };
    Ok(SignReport { verdict, min_u, max_u })
}

/// One residual sample of the 2D functional at a Cartesian point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalSample {
    pub x: f64,
    pub y: f64,
    pub residual: f64,
}

/// Evaluates the full 2D functional
/// `F = a*((1+p^2)s - 2pqt + (1+q^2)r)/W^3 + b*(rs - t^2)/W^4 - phi(1/W)`,
/// `W = sqrt(1+p^2+q^2)`, over a Cartesian grid of the disk of radius
/// `R - 2h`, with derivatives from centered 5-point stencils of the revolved
/// interpolant `U(x, y) = u(sqrt(x^2+y^2))` (cubic spline in `r`, clamped to
/// the profile's end slopes).
pub fn functional_residual_samples(
    params: &WeingartenParams,
    phi: &Phi,
    sol: &RadialSolution,
    grid_n: usize,
    h: f64,
) -> Result<Vec<FunctionalSample>> {
    let n = sol.len();
    if n < 3 {
        return Err(Error::TooFewNodes(n));
    }
    let radius = *sol.r.last().unwrap();
    if !(h > 0.0) || h >= radius / 8.0 {
        return Err(Error::GridTooCoarse { h, radius });
    }
    if grid_n < 2 {
        return Err(Error::InvalidInput(format!("grid_n must be >= 2, got {grid_n}")));
    }

    let spline = CubicSpline::clamped(&sol.r, &sol.u, sol.du[0], *sol.du.last().unwrap());
    let eval = |x: f64, y: f64| spline.eval((x * x + y * y).sqrt());

    // Mirror-symmetric coordinates so symmetric grid points share radii bitwise.
    let limit = radius - 2.0 * h;
    let mut coords = vec![0.0; grid_n];
    for i in 0..grid_n / 2 {
        let c = -limit + 2.0 * limit * i as f64 / (grid_n - 1) as f64;
        coords[i] = c;
        coords[grid_n - 1 - i] = -c;
    }

    let limit_sq = limit * limit;
    let mut out = Vec::new();
    for &x in &coords {
        for &y in &coords {
            if x * x + y * y > limit_sq {
                continue;
            }
            let u_e = eval(x + h, y);
            let u_w = eval(x - h, y);
            let u_n = eval(x, y + h);
            let u_s = eval(x, y - h);
            let u_c = eval(x, y);
            let p = (u_e - u_w) / (2.0 * h);
            let q = (u_n - u_s) / (2.0 * h);
            let uxx = (u_e - 2.0 * u_c + u_w) / (h * h);
            let uyy = (u_n - 2.0 * u_c + u_s) / (h * h);
            let uxy = (eval(x + h, y + h) - eval(x + h, y - h) - eval(x - h, y + h)
                + eval(x - h, y - h))
                / (4.0 * h * h);
            let w2 = 1.0 + p * p + q * q;
            let w = w2.sqrt();
            let quasilinear = ((1.0 + p * p) * uyy - 2.0 * p * q * uxy + (1.0 + q * q) * uxx)
                / (w2 * w);
            let monge_ampere = (uxx * uyy - uxy * uxy) / (w2 * w2);
            let residual =
                params.a * quasilinear + params.b * monge_ampere - phi.eval((1.0 / w).clamp(-1.0, 1.0))?;
            out.push(FunctionalSample { x, y, residual });
        }
    }
    Ok(out)
}

/// Aggregate residual statistics of [`functional_residual_samples`].
pub fn functional_residual_2d(
    params: &WeingartenParams,
    phi: &Phi,
    sol: &RadialSolution,
    grid_n: usize,
    h: f64,
) -> Result<ResidualReport> {
    let samples = functional_residual_samples(params, phi, sol, grid_n, h)?;
    let per_node = samples.iter().map(|s| s.residual).collect();
    Ok(ResidualReport::from_values(per_node, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Provenance;

    fn config(n: usize) -> SolverConfig {
        SolverConfig::new(1.0, n).with_tol(1e-12)
    }

    #[test]
    fn shifted_sphere_cap_is_negative() {
        // a = 1, b = 0, phi = 1: sphere of radius 2; shifted cap is
        // u(r) = sqrt(4 - R^2) - sqrt(4 - r^2) < 0 on the interior.
        let params = WeingartenParams::new(1.0, 0.0).unwrap();
        let phi = Phi::constant(1.0);
        let sol = solve_dirichlet_disk(&params, &phi, Branch::Plus, 0.5, &config(512)).unwrap();
        assert_eq!(*sol.u.last().unwrap(), 0.0);
        let shift = (4.0f64 - 0.25).sqrt();
        let err = sol
            .r
            .iter()
            .zip(&sol.u)
            .map(|(&r, &u)| (u - (shift - (4.0 - r * r).sqrt())).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-6, "max error {err}");
        assert_eq!(sign_report(&sol).unwrap().verdict, SignVerdict::Negative);
    }

    #[test]
    fn zero_solution_is_zero() {
        let params = WeingartenParams::new(1.0, 1.0).unwrap();
        let phi = Phi::constant(0.0);
        let sol = solve_dirichlet_disk(&params, &phi, Branch::Plus, 0.4, &config(64)).unwrap();
        assert!(sol.u.iter().all(|&v| v == 0.0));
        assert_eq!(sign_report(&sol).unwrap().verdict, SignVerdict::Zero);
    }

    #[test]
    fn unit_sphere_cap_dirichlet() {
        let params = WeingartenParams::new(1.0, 1.0).unwrap();
        let phi = Phi::constant(3.0);
        let sol = solve_dirichlet_disk(&params, &phi, Branch::Plus, 0.5, &config(512)).unwrap();
        let shift = (1.0f64 - 0.25).sqrt();
        let err = sol
            .r
            .iter()
            .zip(&sol.u)
            .map(|(&r, &u)| (u - (shift - (1.0 - r * r).sqrt())).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-6, "max error {err}");
    }

    #[test]
    fn hand_built_mixed_profile() {
        let n = 16usize;
        let r: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        // Positive at R/2, negative at R/4, zero at the boundary.
        let u: Vec<f64> = r.iter().map(|&x| (2.0 * std::f64::consts::PI * x).sin() * (1.0 - x) * -0.1).collect();
        let sol = RadialSolution {
            du: vec![0.0; n + 1],
            ddu: None,
            u,
            r,
            params: WeingartenParams::new(1.0, 0.0).unwrap(),
            phi: Phi::constant(0.0),
            branch: Branch::Plus,
            provenance: Provenance::ClosedForm,
        };
        assert_eq!(sign_report(&sol).unwrap().verdict, SignVerdict::Mixed);
    }

    #[test]
    fn sign_report_rejects_nonzero_boundary() {
        let n = 8usize;
        let r: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let u = vec![1.0; n + 1];
        let sol = RadialSolution {
            du: vec![0.0; n + 1],
            ddu: None,
            u,
            r,
            params: WeingartenParams::new(1.0, 0.0).unwrap(),
            phi: Phi::constant(0.0),
            branch: Branch::Plus,
            provenance: Provenance::ClosedForm,
        };
        assert!(matches!(sign_report(&sol), Err(Error::NotDirichlet(_))));
    }

    #[test]
    fn functional_residual_zero_profile() {
        let n = 64usize;
        let r: Vec<f64> = (0..=n).map(|i| 0.5 * i as f64 / n as f64).collect();
        let sol = RadialSolution {
            u: vec![0.0; n + 1],
            du: vec![0.0; n + 1],
            ddu: None,
            r,
            params: WeingartenParams::new(1.0, 0.0).unwrap(),
            phi: Phi::constant(0.0),
            branch: Branch::Plus,
            provenance: Provenance::ClosedForm,
        };
        let rep = functional_residual_2d(&sol.params, &sol.phi, &sol, 16, 1e-3).unwrap();
        assert_eq!(rep.max_abs, 0.0);
    }

    #[test]
    fn functional_residual_detects_wrong_parameters() {
        let params = WeingartenParams::new(1.0, 1.0).unwrap();
        let phi = Phi::constant(3.0);
        let sol = solve_dirichlet_disk(&params, &phi, Branch::Plus, 0.5, &config(512)).unwrap();
        // Against phi = 2 the functional evaluates to about 3 - 2 = 1.
        let wrong = Phi::constant(2.0);
        let rep = functional_residual_2d(&params, &wrong, &sol, 32, 1e-3).unwrap();
        assert!(rep.max_abs >= 0.9, "max_abs {}", rep.max_abs);
        assert!(rep.rms >= 0.9);
    }

    #[test]
    fn grid_too_coarse() {
        let params = WeingartenParams::new(1.0, 1.0).unwrap();
        let phi = Phi::constant(3.0);
        let sol = solve_dirichlet_disk(&params, &phi, Branch::Plus, 0.5, &config(64)).unwrap();
        assert!(matches!(
            functional_residual_2d(&params, &phi, &sol, 16, 0.2),
            Err(Error::GridTooCoarse { .. })
        ));
    }
}
