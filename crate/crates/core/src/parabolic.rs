//! Closed-form solutions and taxonomy for the parabolic case `2aH - K = a^2`.
//!
//! Every parabolic radial solution is an arc of a circle of radius `1/a` in
//! the profile half-plane, `u(r) = +/-(1/a)*sqrt(1 - (ar+k)^2) + m`, plus the
//! vertical line `r = 1/a` whose revolution is a circular cylinder.

use crate::classify::{WeingartenParams, CLASS_TOL};
use crate::error::{Error, Result};
use crate::phi::Phi;
use crate::profile::{Branch, Provenance, RadialSolution, ResidualReport};

/// Relative inset from the domain endpoints, where the closed form has
/// vertical slope.
pub const EDGE_INSET: f64 = 1e-6;

/// Absolute inset (times `a`) from an axis endpoint the arc meets at an
/// angle (`lo = 0` with `k != 0`). The revolved surface has a cone point
/// there and `kappa2 ~ k/r` blows up, so samples too close to the axis make
/// the residual evaluation ill-conditioned; this floor keeps
/// `kappa2 <= O(1e5)/a` at the first node.
pub const AXIS_CONE_INSET: f64 = 5e-6;

/// Sign of the square root in the closed form: `Plus` is the upper arc,
/// `Minus` the lower (convex) arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcSign {
    Plus,
    Minus,
}

impl ArcSign {
    pub fn value(self) -> f64 {
        match self {
            ArcSign::Plus => 1.0,
            ArcSign::Minus => -1.0,
        }
    }
}

/// A closed-form parabolic solution `u(r) = sign*(1/a)*sqrt(1-(ar+k)^2) + m`
/// on the `r`-interval where `|ar+k| < 1` and `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleSolution {
    pub a: f64,
    pub k: f64,
    pub m: f64,
    pub sign: ArcSign,
}

impl CircleSolution {
    pub fn new(a: f64, k: f64, m: f64, sign: ArcSign) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::InvalidInput(format!("circle coefficient a must be positive, got {a}")));
        }
        if k >= 1.0 {
            return Err(Error::EmptyDomain { k });
        }
        Ok(CircleSolution { a, k, m, sign })
    }

    /// Center of the profile circle in the `(r, z)` half-plane.
    pub fn center(&self) -> (f64, f64) {
        (-self.k / self.a, self.m)
    }

    pub fn radius(&self) -> f64 {
        1.0 / self.a
    }

    /// Valid open `r`-domain `{r > 0 : |ar + k| < 1}`.
    pub fn domain(&self) -> (f64, f64) {
        let lo = ((-1.0 - self.k) / self.a).max(0.0);
        let hi = (1.0 - self.k) / self.a;
        (lo, hi)
    }
}

/// The arc taxonomy by the shift parameter `k` (cylinder lines arise by
/// construction, not from a `k` value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcClass {
    MinorArc,
    HalfCircle,
    MajorArc,
    TangentCircle,
    TorusCircle,
    CylinderLine,
    Empty,
}

/// Brings a parabolic triple `(a0, b0, c)` with `a0^2 + b0*c = 0` to the
/// normal form `b = -1`, `c = a^2`, `a > 0` (orientation flip absorbed).
pub fn normalize_parabolic(a0: f64, b0: f64, c0_rhs: f64) -> Result<(f64, f64, f64)> {
    if b0 == 0.0 {
        return Err(Error::ZeroB);
    }
    let disc = a0 * a0 + b0 * c0_rhs;
    let tol = CLASS_TOL * (a0 * a0).max(1.0);
    if disc.abs() > tol {
        return Err(Error::NotParabolic(disc));
    }
    let a = (a0 / b0).abs();
    Ok((a, -1.0, a * a))
}

/// Classifies the arc of the closed form by `k`; ties at the `k = 0`, `-1`
/// and `1` boundaries resolve exactly within the class tolerance.
pub fn classify_arc(a: f64, k: f64) -> Result<ArcClass> {
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
    }
    let tol = CLASS_TOL;
    Ok(if k >= 1.0 - tol {
        // A sliver of domain shorter than the edge inset is treated as empty.
        if k >= 1.0 || (1.0 - k) / a < EDGE_INSET {
            ArcClass::Empty
        } else {
            ArcClass::MinorArc
        }
    } else if k > tol {
        ArcClass::MinorArc
    } else if k >= -tol {
        ArcClass::HalfCircle
    } else if k > -1.0 + tol {
        ArcClass::MajorArc
    } else if k >= -1.0 - tol {
        ArcClass::TangentCircle
    } else {
        ArcClass::TorusCircle
    })
}

/// Samples the closed form as a graph profile with exact derivatives.
///
/// The endpoints are inset by `EDGE_INSET` times the domain length because
/// the slope blows up where `|ar + k| = 1`.
pub fn circle_profile(csol: &CircleSolution, n: usize) -> Result<RadialSolution> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    if csol.k >= 1.0 {
        return Err(Error::EmptyDomain { k: csol.k });
    }
    let (lo, hi) = csol.domain();
    let inset = EDGE_INSET * (hi - lo);
    let lo_inset = if lo == 0.0 && csol.k != 0.0 {
        inset.max(AXIS_CONE_INSET * csol.a)
    } else {
        inset
    };
    let (lo, hi) = (lo + lo_inset, hi - inset);
    if !(lo < hi) {
        return Err(Error::EmptyDomain { k: csol.k });
    }
    let s = csol.sign.value();
    let a = csol.a;

    let mut r = Vec::with_capacity(n + 1);
    let mut u = Vec::with_capacity(n + 1);
    let mut du = Vec::with_capacity(n + 1);
    let mut ddu = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ri = lo + (hi - lo) * i as f64 / n as f64;
        let w = a * ri + csol.k;
        let omw2 = 1.0 - w * w;
        let root = omw2.sqrt();
        r.push(ri);
        u.push(s * root / a + csol.m);
        du.push(-s * w / root);
        ddu.push(-s * a / (omw2 * root));
    }

    let params = WeingartenParams::new(a, -1.0)?;
    Ok(RadialSolution {
        r,
        u,
        du,
        ddu: Some(ddu),
        params,
        phi: Phi::constant(a * a),
        branch: match csol.sign {
            ArcSign::Plus => Branch::Plus,
            ArcSign::Minus => Branch::Minus,
        },
        provenance: Provenance::ClosedForm,
    })
}

/// Residual of the parabolic ODE over a sampled circle profile, evaluated
/// with the closed-form derivatives.
///
/// Upper (`Plus`) arcs satisfy the relation with the opposite surface
/// orientation: the normal pointing toward the circle center. The residual is
/// therefore evaluated on the orientation-normalized curvatures, which for
/// `Plus` arcs flips the sign of both principal curvatures.
pub fn profile_residual(csol: &CircleSolution, sol: &RadialSolution) -> Result<ResidualReport> {
    let n = sol.len();
    if n < 3 {
        return Err(Error::TooFewNodes(n));
    }
    let ddu = sol
        .ddu
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("circle profile is missing exact derivatives".into()))?;
    let a = csol.a;
    let orient = -csol.sign.value();

    let mut per_node = Vec::with_capacity(n);
    for i in 0..n {
        let (r, du_i, ddu_i) = (sol.r[i], sol.du[i], ddu[i]);
        let w2 = 1.0 + du_i * du_i;
        let kappa1 = orient * ddu_i / (w2 * w2.sqrt());
        let kappa2 = orient * du_i / (r * w2.sqrt());
        // Factored grouping of a*(k1+k2) - k1*k2 - a^2: the (a - kappa1)
        // factor vanishes identically on the circle family, which keeps the
        // evaluation stable where kappa2 blows up near an axis endpoint.
        per_node.push((a - kappa1) * (kappa2 - a));
    }
    Ok(ResidualReport::from_values(per_node, Vec::new()))
}

/// A profile polyline in the `(r, z)` half-plane that need not be a graph
/// over `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePolyline {
    pub points: Vec<(f64, f64)>,
    /// Closed polylines wrap around (full circles); open ones do not.
    pub closed: bool,
}

/// The vertical-line profile `r = 1/a`, whose revolution is the circular
/// cylinder with `H = a/2` and `K = 0`; the relation evaluates to
/// `2a*H - K = a^2` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderProfile {
    pub r0: f64,
    pub mean_curvature: f64,
    pub gauss_curvature: f64,
    pub polyline: ProfilePolyline,
}

pub fn cylinder_profile(a: f64, height: f64, n: usize) -> Result<CylinderProfile> {
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
    }
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    let r0 = 1.0 / a;
    let points = (0..n)
        .map(|i| (r0, height * i as f64 / (n - 1) as f64))
        .collect();
    Ok(CylinderProfile {
        r0,
        mean_curvature: 0.5 / r0,
        gauss_curvature: 0.0,
        polyline: ProfilePolyline { points, closed: false },
    })
}

/// Stitches the full arc family of `(a, k, m)` into a single polyline:
/// a closed circle for `k <= -1`, otherwise the open arc between its two
/// axis points, traversed upper half first.
pub fn stitch_arcs(a: f64, k: f64, m: f64, n: usize) -> Result<ProfilePolyline> {
    if !(a > 0.0) {
        return Err(Error::InvalidInput(format!("a must be positive, got {a}")));
    }
    if k >= 1.0 {
        return Err(Error::EmptyDomain { k });
    }
    let n = n.max(4);
    let (cr, cz) = (-k / a, m);
    let radius = 1.0 / a;
    if k < -1.0 {
        // Full circle strictly inside r > 0: closed torus profile.
        let points = (0..n)
            .map(|i| {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                (cr + radius * theta.cos(), cz + radius * theta.sin())
            })
            .collect();
        return Ok(ProfilePolyline { points, closed: true });
    }
    // Arc with endpoints on the axis: r >= 0 means cos(theta) >= k.
    let theta0 = k.clamp(-1.0, 1.0).acos();
    let points = (0..=n)
        .map(|i| {
            let theta = -theta0 + 2.0 * theta0 * i as f64 / n as f64;
            let r = (cr + radius * theta.cos()).max(0.0);
            (r, cz + radius * theta.sin())
        })
        .collect();
    Ok(ProfilePolyline { points, closed: false })
}

/// Checks the cylinder's curvature data against the parabolic relation.
pub fn cylinder_relation_lhs(a: f64, profile: &CylinderProfile) -> f64 {
    2.0 * a * profile.mean_curvature - profile.gauss_curvature
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residual::axis_residual;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_parabolic(1.0, -1.0, 1.0).unwrap(), (1.0, -1.0, 1.0));
        assert_eq!(normalize_parabolic(2.0, -4.0, 1.0).unwrap(), (0.5, -1.0, 0.25));
        assert!(matches!(normalize_parabolic(1.0, 1.0, 1.0), Err(Error::NotParabolic(_))));
        assert!(matches!(normalize_parabolic(1.0, 0.0, 1.0), Err(Error::ZeroB)));
    }

    #[test]
    fn normalized_triple_is_exactly_parabolic() {
        let (a, b, c) = normalize_parabolic(2.0, -4.0, 1.0).unwrap();
        assert_eq!(a * a + b * c, 0.0);
    }

    #[test]
    fn arc_taxonomy() {
        assert_eq!(classify_arc(1.0, 0.5).unwrap(), ArcClass::MinorArc);
        assert_eq!(classify_arc(1.0, 0.0).unwrap(), ArcClass::HalfCircle);
        assert_eq!(classify_arc(1.0, -0.5).unwrap(), ArcClass::MajorArc);
        assert_eq!(classify_arc(1.0, -1.0).unwrap(), ArcClass::TangentCircle);
        assert_eq!(classify_arc(1.0, -2.0).unwrap(), ArcClass::TorusCircle);
        assert_eq!(classify_arc(1.0, 1.5).unwrap(), ArcClass::Empty);
    }

    #[test]
    fn half_circle_profile_matches_closed_form() {
        // a = 1, k = 0, m = 1, lower arc: u = 1 - sqrt(1 - r^2).
        let csol = CircleSolution::new(1.0, 0.0, 1.0, ArcSign::Minus).unwrap();
        let sol = circle_profile(&csol, 64).unwrap();
        for (&r, &u) in sol.r.iter().zip(&sol.u) {
            assert!((u - (1.0 - (1.0 - r * r).sqrt())).abs() < 1e-12);
        }
        let rep = profile_residual(&csol, &sol).unwrap();
        assert!(rep.max_abs <= 1e-9, "max_abs {}", rep.max_abs);
    }

    #[test]
    fn tangent_circle_domain() {
        let csol = CircleSolution::new(1.0, -1.0, 0.0, ArcSign::Plus).unwrap();
        let (lo, hi) = csol.domain();
        assert_eq!(lo, 0.0);
        assert_eq!(hi, 2.0);
        let sol = circle_profile(&csol, 32).unwrap();
        let rep = profile_residual(&csol, &sol).unwrap();
        assert!(rep.max_abs <= 1e-9, "max_abs {}", rep.max_abs);
    }

    #[test]
    fn torus_arc_domain() {
        // |2r - 3| < 1 gives r in (1, 2), radius 1/2.
        let csol = CircleSolution::new(2.0, -3.0, 0.0, ArcSign::Plus).unwrap();
        let (lo, hi) = csol.domain();
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 2.0);
        assert_eq!(csol.radius(), 0.5);
    }

    #[test]
    fn points_lie_on_the_circle() {
        let csol = CircleSolution::new(2.0, -0.7, 0.3, ArcSign::Minus).unwrap();
        let sol = circle_profile(&csol, 128).unwrap();
        let (cr, cz) = csol.center();
        for (&r, &u) in sol.r.iter().zip(&sol.u) {
            let d = ((r - cr).powi(2) + (u - cz).powi(2)).sqrt();
            assert!((d - csol.radius()).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_domain_rejected() {
        assert!(matches!(CircleSolution::new(1.0, 1.5, 0.0, ArcSign::Plus), Err(Error::EmptyDomain { .. })));
    }

    #[test]
    fn axis_compatible_member() {
        // k = 0, Minus, m = 1/a passes through (0, 0) with u'(0) = 0 in the
        // closed form; the sampled profile starts just off the axis.
        let csol = CircleSolution::new(2.0, 0.0, 0.5, ArcSign::Minus).unwrap();
        let sol = circle_profile(&csol, 256).unwrap();
        assert!(sol.u[0].abs() < 1e-5);
        assert!(sol.du[0].abs() < 1e-4);
        // And its axis curvature is the Plus root of 2a*x - x^2 = a^2, x = a.
        assert!((axis_residual(&sol.params, &sol.phi, csol.a).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn cylinder_examples() {
        let c = cylinder_profile(1.0, 1.0, 8).unwrap();
        assert_eq!(c.r0, 1.0);
        assert_eq!(c.mean_curvature, 0.5);
        assert_eq!(c.gauss_curvature, 0.0);
        assert_eq!(cylinder_relation_lhs(1.0, &c), 1.0);

        let c = cylinder_profile(2.0, 1.0, 8).unwrap();
        assert_eq!(c.r0, 0.5);
        assert_eq!(cylinder_relation_lhs(2.0, &c), 4.0);

        // Degenerate height still reports curvature data.
        let c = cylinder_profile(1.0, 0.0, 2).unwrap();
        assert_eq!(c.polyline.points.len(), 2);
        assert_eq!(c.mean_curvature, 0.5);
    }

    #[test]
    fn stitched_tangent_circle_touches_axis() {
        let p = stitch_arcs(1.0, -1.0, 0.0, 128).unwrap();
        assert!(!p.closed);
        let min_r = p.points.iter().map(|&(r, _)| r).fold(f64::INFINITY, f64::min);
        assert!(min_r.abs() < 1e-12);
        // Both endpoints coincide on the axis at the height m = 0.
        let first = p.points.first().unwrap();
        let last = p.points.last().unwrap();
        assert!(first.0.abs() < 1e-12 && last.0.abs() < 1e-12);
        assert!((first.1 - last.1).abs() < 1e-12);
    }

    #[test]
    fn stitched_torus_is_closed() {
        let p = stitch_arcs(1.0, -2.0, 0.0, 64).unwrap();
        assert!(p.closed);
        assert!(p.points.iter().all(|&(r, _)| r > 0.0));
    }
}
