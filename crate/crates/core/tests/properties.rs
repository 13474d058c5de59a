//! Property-based invariants of the classification, axis-curvature,
//! parabolic and residual machinery.

use proptest::prelude::*;

use weingarten_core::{
    circle_profile, classify_arc, classify_at, classify_global, discriminant, initial_curvature,
    ode_residual, revolve_to_mesh, ArcClass, ArcSign, Branch, CircleSolution, Error, GlobalKind,
    Phi, Provenance, RadialSolution, TypeKind, WeingartenParams,
};

fn params(a: f64, b: f64) -> WeingartenParams {
    WeingartenParams::new(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The pointwise classification is exactly the sign trichotomy of the
    /// discriminant against the tolerance band.
    #[test]
    fn classification_matches_discriminant_sign(
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
        nu in -1.0f64..1.0,
    ) {
        prop_assume!(a != 0.0 || b != 0.0);
        let p = params(a, b);
        let phi = Phi::constant(c);
        let tol = p.class_tol();
        let d = discriminant(&p, &phi, nu).unwrap();
        let got = classify_at(&p, &phi, nu, tol).unwrap();
        let want = if d.abs() <= tol {
            TypeKind::Parabolic
        } else if d > 0.0 {
            TypeKind::Elliptic
        } else {
            TypeKind::Hyperbolic
        };
        prop_assert_eq!(got.kind, want);
        prop_assert_eq!(got.discriminant, d);
    }

    /// For constant phi the discriminant is the exact float `a*a + b*c`,
    /// independent of nu.
    #[test]
    fn constant_phi_discriminant_is_nu_independent(
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
        nu1 in -1.0f64..1.0,
        nu2 in -1.0f64..1.0,
    ) {
        prop_assume!(a != 0.0 || b != 0.0);
        let p = params(a, b);
        let phi = Phi::constant(c);
        let d1 = discriminant(&p, &phi, nu1).unwrap();
        let d2 = discriminant(&p, &phi, nu2).unwrap();
        prop_assert_eq!(d1.to_bits(), d2.to_bits());
        prop_assert_eq!(d1, a * a + b * c);
    }

    /// The normalized parabolic family (a, -1, a^2) classifies parabolic at
    /// every sample.
    #[test]
    fn normalized_parabolic_is_globally_parabolic(a in 0.05f64..5.0) {
        let p = params(a, -1.0);
        let phi = Phi::constant(a * a);
        let g = classify_global(&p, &phi, 101).unwrap();
        prop_assert_eq!(g.kind, GlobalKind::Parabolic);
    }

    /// Negative axis discriminant always rejects with NoSolution.
    #[test]
    fn hyperbolic_axis_always_rejects(
        a in -2.0f64..2.0,
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
    ) {
        prop_assume!(b != 0.0);
        prop_assume!(a * a + b * c < -1e-6);
        let p = params(a, b);
        let phi = Phi::constant(c);
        let rejected = matches!(
            initial_curvature(&p, &phi, Branch::Plus),
            Err(Error::NoSolution { .. })
        );
        prop_assert!(rejected);
    }

    /// The two branch roots of 2a*x + b*x^2 = phi(1) sum to -2a/b and both
    /// satisfy the quadratic.
    #[test]
    fn branch_roots_are_quadratic_roots(
        a in -2.0f64..2.0,
        b in -3.0f64..3.0,
        c in -3.0f64..3.0,
    ) {
        prop_assume!(b.abs() > 1e-3);
        prop_assume!(a * a + b * c > 1e-6);
        prop_assume!(a != 0.0);
        let p = params(a, b);
        let phi = Phi::constant(c);
        let plus = initial_curvature(&p, &phi, Branch::Plus).unwrap();
        let minus = initial_curvature(&p, &phi, Branch::Minus).unwrap();
        let scale = 1.0 + plus.abs().max(minus.abs());
        prop_assert!((plus + minus + 2.0 * a / b).abs() <= 1e-9 * scale * (1.0 + (a / b).abs()));
        for x in [plus, minus] {
            prop_assert!((2.0 * a * x + b * x * x - c).abs() <= 1e-9 * scale * scale);
        }
    }

    /// Every sampled circle-profile point lies on the circle of radius 1/a.
    #[test]
    fn circle_profile_radius_invariance(
        a in 0.1f64..5.0,
        k in -3.0f64..0.95,
        m in -1.0f64..1.0,
        upper in any::<bool>(),
    ) {
        let sign = if upper { ArcSign::Plus } else { ArcSign::Minus };
        let csol = CircleSolution::new(a, k, m, sign).unwrap();
        let sol = circle_profile(&csol, 64).unwrap();
        let (cr, cz) = csol.center();
        for (&r, &u) in sol.r.iter().zip(&sol.u) {
            let d = ((r - cr).powi(2) + (u - cz).powi(2)).sqrt();
            prop_assert!((d - csol.radius()).abs() <= 1e-12);
        }
    }

    /// classify_arc is total on finite k and the classes tile the k-line in
    /// the documented order.
    #[test]
    fn arc_classes_tile_the_shift_line(a in 0.1f64..5.0, k in -5.0f64..5.0) {
        let got = classify_arc(a, k).unwrap();
        let tol = 1e-12;
        let want = if k >= 1.0 - tol {
            // Near-sliver domains may degrade to Empty; both are admissible
            // in the boundary band.
            prop_assert!(matches!(got, ArcClass::Empty | ArcClass::MinorArc));
            return Ok(());
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
        };
        prop_assert_eq!(got, want);
    }

    /// Vertical translation of a profile leaves the differenced ODE residual
    /// bitwise unchanged.
    #[test]
    fn residual_is_translation_equivariant(
        c0 in 0.05f64..0.8,
        shift in -10.0f64..10.0,
    ) {
        let n = 64usize;
        let r: Vec<f64> = (0..=n).map(|i| 0.5 * i as f64 / n as f64).collect();
        let du: Vec<f64> = r.iter().map(|&x| c0 * x / (1.0 - (c0 * x).powi(2)).sqrt()).collect();
        let u: Vec<f64> = r.iter().map(|&x| (1.0 - (c0 * x).powi(2)).sqrt() / -c0).collect();
        let p = params(1.0, 0.0);
        let phi = Phi::constant(2.0 * c0);
        let base = RadialSolution {
            r,
            u,
            du,
            ddu: None,
            params: p,
            phi: phi.clone(),
            branch: Branch::Plus,
            provenance: Provenance::ClosedForm,
        };
        let mut moved = base.clone();
        for v in moved.u.iter_mut() {
            *v += shift;
        }
        let res_base = ode_residual(&p, &phi, &base).unwrap().per_node;
        let res_moved = ode_residual(&p, &phi, &moved).unwrap().per_node;
        prop_assert_eq!(res_base.len(), res_moved.len());
        for (x, y) in res_base.iter().zip(&res_moved) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    /// Revolved graph profiles have disk topology when they start on the
    /// axis and annulus topology when they do not.
    #[test]
    fn revolved_graph_euler_characteristic(
        start_on_axis in any::<bool>(),
        n_theta in 8usize..24,
    ) {
        let n = 12usize;
        let r0 = if start_on_axis { 0.0 } else { 0.25 };
        let r: Vec<f64> = (0..=n).map(|i| r0 + (1.0 - r0) * i as f64 / n as f64).collect();
        let u: Vec<f64> = r.iter().map(|&x| 0.1 * x * x).collect();
        let sol = RadialSolution {
            du: vec![0.0; n + 1],
            ddu: None,
            u,
            r,
            params: params(1.0, 0.0),
            phi: Phi::constant(0.0),
            branch: Branch::Plus,
            provenance: Provenance::ClosedForm,
        };
        let mesh = revolve_to_mesh(&sol, n_theta).unwrap();
        let expected = if start_on_axis { 1 } else { 0 };
        prop_assert_eq!(mesh.euler_characteristic(), expected);
    }

    /// The phi grammar round-trips through Display and FromStr with value
    /// equality on the whole angle interval.
    #[test]
    fn phi_grammar_round_trip(coeffs in proptest::collection::vec(-5.0f64..5.0, 1..5)) {
        let phi = Phi::polynomial(coeffs);
        let reparsed: Phi = phi.to_string().parse().unwrap();
        for j in 0..=20 {
            let nu = -1.0 + 2.0 * j as f64 / 20.0;
            prop_assert_eq!(
                phi.eval(nu).unwrap().to_bits(),
                reparsed.eval(nu).unwrap().to_bits()
            );
        }
    }
}
