//! Picard iteration of the integrated fixed-point operator for the singular
//! radial initial value problem.
//!
//! Multiplying the radial equation by `r` and integrating from the axis gives
//! the identity
//!
//! ```text
//! r*f(u') + (b/(2a))*f(u')^2 = I(r),   I(r) = Int_0^r t*g(u'(t)) dt,
//! ```
//!
//! with `f(y) = y/sqrt(1+y^2)` and `g(y) = phi(1/sqrt(1+y^2))/a`. One sweep of
//! the operator evaluates `I` by cumulative trapezoid quadrature, solves the
//! quadratic for `X = f(u')` nodewise, and maps back through `f^{-1}`.

use crate::classify::{classify_at, WeingartenParams, TypeKind};
use crate::error::{Error, Result};
use crate::numerics::{cumtrapz, max_abs_diff, Lcg64};
use crate::phi::Phi;
use crate::profile::{Branch, Provenance, RadialSolution};

/// Grid, tolerance and iteration controls for the fixed-point solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Radius of the solve interval.
    pub radius: f64,
    /// Number of grid intervals.
    pub n: usize,
    /// Convergence tolerance on `||u||_inf + ||u'||_inf` of successive iterates.
    pub tol: f64,
    /// Picard iteration cap.
    pub max_iter: usize,
    /// Maximum admissible `|u'|`.
    pub slope_cap: f64,
}

impl SolverConfig {
    pub fn new(radius: f64, n: usize) -> Self {
        SolverConfig { radius, n, tol: 1e-10, max_iter: 200, slope_cap: 1e8 }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0) {
            return Err(Error::InvalidInput(format!("radius must be positive, got {}", self.radius)));
        }
        if self.n < 8 {
            return Err(Error::InvalidInput(format!("n must be >= 8, got {}", self.n)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::InvalidInput("max_iter must be >= 1".into()));
        }
        if !(self.slope_cap > 0.0) {
            return Err(Error::InvalidInput("slope_cap must be positive".into()));
        }
        Ok(())
    }
}

/// A converged fixed-point solve together with the iteration count.
#[derive(Debug, Clone)]
pub struct FixedPointRun {
    pub solution: RadialSolution,
    pub iterations: usize,
}

/// The axis curvature `u''(0)`: root of `2a*x + b*x^2 = phi(1)` selected by
/// the branch, `(-a + s*sqrt(a^2 + b*phi(1)))/b` with `s = +1` for `Plus`.
///
/// `b = 0` collapses to the limiting linear root `phi(1)/(2a)` for either
/// branch. A negative discriminant is the hyperbolic obstruction: no radial
/// solution meets the axis orthogonally.
pub fn initial_curvature(params: &WeingartenParams, phi: &Phi, branch: Branch) -> Result<f64> {
    let (a, b) = (params.a, params.b);
    if a == 0.0 && b == 0.0 {
        return Err(Error::DegenerateParams);
    }
    let phi1 = phi.eval(1.0)?;
    if b == 0.0 {
        return Ok(phi1 / (2.0 * a));
    }
    let disc = a * a + b * phi1;
    if disc < 0.0 {
        return Err(Error::NoSolution { discriminant: disc });
    }
    Ok((-a + branch.sign() * disc.sqrt()) / b)
}

fn check_elliptic_at_axis(params: &WeingartenParams, phi: &Phi) -> Result<f64> {
    let c = classify_at(params, phi, 1.0, params.class_tol())?;
    match c.kind {
        TypeKind::Elliptic => Ok(c.discriminant),
        TypeKind::Hyperbolic => Err(Error::NoSolution { discriminant: c.discriminant }),
        TypeKind::Parabolic => Err(Error::NotElliptic { discriminant: c.discriminant }),
    }
}

/// One sweep of the fixed-point operator: maps a derivative grid `du` to the
/// next iterate `T(u)'` on the same radii.
pub fn apply_fixed_point(
    params: &WeingartenParams,
    phi: &Phi,
    branch: Branch,
    r_grid: &[f64],
    du_grid: &[f64],
) -> Result<Vec<f64>> {
    let (a, b) = (params.a, params.b);
    if a == 0.0 {
        return Err(Error::InvalidInput(
            "the integrated fixed-point operator requires a != 0".into(),
        ));
    }
    debug_assert_eq!(r_grid.len(), du_grid.len());

    let mut integrand = Vec::with_capacity(r_grid.len());
    for (&r, &du) in r_grid.iter().zip(du_grid) {
        let nu = 1.0 / (1.0 + du * du).sqrt();
        integrand.push(r * phi.eval(nu)? / a);
    }
    let integral = cumtrapz(r_grid, &integrand);

    // Root sign of the quadratic in X = f(u'); the factor sign(a) keeps the
    // selected root consistent with (-a + s*sqrt(D))/b for negative a.
    let root_sign = branch.sign() * a.signum();

    let mut out = Vec::with_capacity(r_grid.len());
    for (&r, &integral_r) in r_grid.iter().zip(&integral) {
        let x = if b == 0.0 {
            // Degenerate linear solve X = I(r)/r; the axis limit is
            // c0*r with c0 = phi(1)/(2a), which vanishes at r = 0.
            if r == 0.0 { 0.0 } else { integral_r / r }
        } else {
            let radicand = r * r + (2.0 * b / a) * integral_r;
            if radicand < 0.0 {
                return Err(Error::RadicandNegative { r });
            }
            (a / b) * (-r + root_sign * radicand.sqrt())
        };
        if x.abs() >= 1.0 {
            return Err(Error::SlopeBlowup { r });
        }
        out.push(x / (1.0 - x * x).sqrt());
    }
    Ok(out)
}

/// Solves the singular radial IVP on `[0, R]` by Picard iteration from the
/// zero profile. Requires the equation to be elliptic at the axis.
pub fn fixed_point_solve(
    params: &WeingartenParams,
    phi: &Phi,
    branch: Branch,
    config: &SolverConfig,
) -> Result<FixedPointRun> {
    config.validate()?;
    check_elliptic_at_axis(params, phi)?;

    let n = config.n;
    let r_grid: Vec<f64> = (0..=n).map(|i| config.radius * i as f64 / n as f64).collect();
    let mut du = vec![0.0; n + 1];
    let mut u = vec![0.0; n + 1];

    for iteration in 1..=config.max_iter {
        let du_next = apply_fixed_point(params, phi, branch, &r_grid, &du)?;
        if let Some(i) = du_next.iter().position(|d| d.abs() > config.slope_cap) {
            return Err(Error::SlopeBlowup { r: r_grid[i] });
        }
        let u_next = cumtrapz(&r_grid, &du_next);
        let delta = max_abs_diff(&u_next, &u) + max_abs_diff(&du_next, &du);
        u = u_next;
        du = du_next;
        if delta <= config.tol {
            let solution = RadialSolution {
                r: r_grid,
                u,
                du,
                ddu: None,
                params: *params,
                phi: phi.clone(),
                branch,
                provenance: Provenance::FixedPoint,
            };
            return Ok(FixedPointRun { solution, iterations: iteration });
        }
        if iteration == config.max_iter {
            return Err(Error::NonConvergence { iterations: iteration, delta });
        }
    }
    unreachable!("loop returns on convergence or on the final iteration");
}

/// Empirical contraction factor of the fixed-point operator.
///
/// Draws `trials` pairs of random derivative grids in the ball
/// `||u||_inf + ||u'||_inf <= CONTRACTION_BALL_RADIUS` (random walks from the
/// seeded [`Lcg64`], rescaled to the ball) and returns the largest observed
/// ratio `||Tu - Tv|| / ||u - v||` in that norm.
pub fn estimate_contraction(
    params: &WeingartenParams,
    phi: &Phi,
    branch: Branch,
    radius: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials < 2 {
        return Err(Error::InvalidInput(format!("trials must be >= 2, got {trials}")));
    }
    if !(radius > 0.0) || n < 2 {
        return Err(Error::InvalidInput("radius must be positive and n >= 2".into()));
    }
    check_elliptic_at_axis(params, phi)?;

    let r_grid: Vec<f64> = (0..=n).map(|i| radius * i as f64 / n as f64).collect();
    let mut rng = Lcg64::new(seed);
    let draw = |rng: &mut Lcg64| -> Vec<f64> {
        // Random walk with u'(0) = 0, rescaled into the probe ball.
        let mut du = Vec::with_capacity(n + 1);
        let mut w = 0.0;
        du.push(0.0);
        for _ in 0..n {
            w += rng.uniform(-1.0, 1.0);
            du.push(w);
        }
        let u = cumtrapz(&r_grid, &du);
        let norm = crate::numerics::max_abs(&u) + crate::numerics::max_abs(&du);
        let scale = if norm > 0.0 { CONTRACTION_BALL_RADIUS * rng.uniform(0.2, 1.0) / norm } else { 0.0 };
        du.iter().map(|d| d * scale).collect()
    };

    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let du_u = draw(&mut rng);
        let du_v = draw(&mut rng);
        let u_u = cumtrapz(&r_grid, &du_u);
        let u_v = cumtrapz(&r_grid, &du_v);
        let denom = max_abs_diff(&u_u, &u_v) + max_abs_diff(&du_u, &du_v);
        if denom == 0.0 {
            continue;
        }
        let t_u = apply_fixed_point(params, phi, branch, &r_grid, &du_u)?;
        let t_v = apply_fixed_point(params, phi, branch, &r_grid, &du_v)?;
        let iu = cumtrapz(&r_grid, &t_u);
        let iv = cumtrapz(&r_grid, &t_v);
        let numer = max_abs_diff(&iu, &iv) + max_abs_diff(&t_u, &t_v);
        worst = worst.max(numer / denom);
    }
    Ok(worst)
}

/// Radius of the `C^1` ball the contraction probe samples from.
pub const CONTRACTION_BALL_RADIUS: f64 = 0.05;
