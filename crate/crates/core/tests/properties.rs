use lorentz3::classify;
use lorentz3::geodesic::{self, Controls, GeodesicState};
use lorentz3::geometry::{curvature, oracle, Chart, Grid, PlaneWaveChart, RosenChart, V};
use lorentz3::lie::{self, Derivation, HeisAutomorphism, IsotropyChoice};
use lorentz3::metric;
use lorentz3::rational::{self, frac, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Q> {
    rat().prop_filter("non-zero", |v| !v.is_zero())
}

fn derivation() -> impl Strategy<Value = Derivation> {
    (rat(), rat(), rat(), rat(), rat(), rat())
        .prop_map(|(a, b, c, d, z1, z2)| Derivation::from_block([[a, b], [c, d]], [z1, z2]))
}

fn automorphism() -> impl Strategy<Value = HeisAutomorphism> {
    let generator = prop_oneof![
        (nonzero_rat(), nonzero_rat()).prop_map(|(a, b)| HeisAutomorphism::diagonal(a, b).unwrap()),
        (rat(), rat()).prop_map(|(a, b)| HeisAutomorphism::inner(a, b)),
        rat().prop_map(HeisAutomorphism::shear),
        Just(HeisAutomorphism::swap()),
        (nonzero_rat(), rat()).prop_map(|(a, b)| HeisAutomorphism::similarity(a, b).unwrap()),
    ];
    prop::collection::vec(generator, 1..4).prop_map(|gs| gs.iter().skip(1).fold(gs[0].clone(), |acc, g| acc.compose(g)))
}

fn isotropy() -> impl Strategy<Value = IsotropyChoice> {
    (rat(), rat(), rat())
        .prop_filter("non-central", |(_, a, b)| !(a.is_zero() && b.is_zero()))
        .prop_map(|(g, a, b)| IsotropyChoice::new(g, a, b).unwrap())
}

proptest! {
    #[test]
    fn extensions_satisfy_jacobi(a in derivation()) {
        prop_assert!(lie::jacobi_residual(&lie::extend_algebra(&a)).is_zero());
    }

    #[test]
    fn spectrum_scales(a in derivation(), l in nonzero_rat()) {
        let s = lie::spectrum_on_quotient(&a);
        let t = lie::spectrum_on_quotient(&a.scaled(&l));
        prop_assert_eq!(t.trace, &s.trace * &l);
        prop_assert_eq!(t.det, &s.det * &l * &l);
        prop_assert_eq!(t.kind, s.kind);
    }

    #[test]
    fn normal_form_is_invariant(a in derivation(), l in nonzero_rat(), phi in automorphism()) {
        prop_assume!(!a.is_unimodular() && !a.has_scalar_quotient());
        let nf = lie::normalize_to_canonical(&a).unwrap();
        let again = lie::normalize_to_canonical(&nf.canonical).unwrap();
        prop_assert_eq!(&again.canonical, &nf.canonical);
        prop_assert_eq!(&lie::normalize_to_canonical(&a.scaled(&l)).unwrap().canonical, &nf.canonical);
        prop_assert_eq!(&lie::normalize_to_canonical(&phi.conjugate(&a)).unwrap().canonical, &nf.canonical);
    }

    #[test]
    fn classification_is_invariant(a in derivation(), l in nonzero_rat(), phi in automorphism()) {
        let c = classify::classify(&a);
        let b = classify::invariant_b(&a);
        prop_assert_eq!(&classify::classify(&a.scaled(&l)), &c);
        prop_assert_eq!(&classify::classify(&phi.conjugate(&a)), &c);
        prop_assert_eq!(&classify::invariant_b(&a.scaled(&l)), &b);
        prop_assert_eq!(&classify::invariant_b(&phi.conjugate(&a)), &b);
    }

    #[test]
    fn rosen_invariant(n in -40i64..=40, d in 1i64..=12) {
        let alpha = frac(n, d);
        prop_assume!(alpha != frac(1, 2));
        let b = classify::invariant_b(&Derivation::rosen(alpha.clone())).unwrap();
        prop_assert_eq!(b, &alpha * &alpha - &alpha);
    }

    #[test]
    fn admissibility_and_metric(a in derivation(), w in isotropy()) {
        let (m, _) = metric::ad_on_quotient(&a, &w);
        let admits = metric::admits_metric(&a, &w);
        prop_assert_eq!(admits, metric::nilpotency_order(&m) == Some(3));
        prop_assert_eq!(admits, metric::eigenvector_criterion(&a, &w));
        if admits {
            let g = metric::build_invariant_metric(&a, &w).unwrap();
            prop_assert!(g.signature().is_lorentz());
            prop_assert_eq!(g.signature().negative, 1);
            prop_assert!(g.skew_residual().is_zero());
        } else {
            prop_assert!(metric::build_invariant_metric(&a, &w).is_err());
        }
    }

    #[test]
    fn metric_scales_with_alpha(a in derivation(), w in isotropy(), l in nonzero_rat()) {
        prop_assume!(metric::admits_metric(&a, &w));
        let g1 = metric::build_invariant_metric_with(&a, &w, Q::one(), Q::zero()).unwrap();
        let gl = metric::build_invariant_metric_with(&a, &w, l.clone(), Q::zero()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&gl.gram[i][j], &(&g1.gram[i][j] * &l));
            }
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(a in derivation(), b in derivation(), c in derivation()) {
        let iso = |x: &Derivation, y: &Derivation| classify::groups_isomorphic(x, y).ok();
        prop_assume!(iso(&a, &b).is_some() && iso(&b, &c).is_some() && iso(&a, &c).is_some());
        prop_assert_eq!(iso(&a, &a), Some(true));
        prop_assert_eq!(iso(&a, &b), iso(&b, &a));
        if iso(&a, &b) == Some(true) && iso(&b, &c) == Some(true) {
            prop_assert_eq!(iso(&a, &c), Some(true));
        }
    }

    #[test]
    fn isomorphic_to_scaled_and_conjugated(a in derivation(), l in nonzero_rat(), phi in automorphism()) {
        prop_assume!(classify::classify(&a).is_ok());
        prop_assert!(classify::groups_isomorphic(&a, &a.scaled(&l)).unwrap());
        prop_assert!(classify::groups_isomorphic(&a, &phi.conjugate(&a)).unwrap());
    }

    #[test]
    fn rational_text_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
        let v = frac(n, d);
        prop_assert_eq!(rational::parse_exact(&rational::to_string(&v)).unwrap(), v);
    }

    #[test]
    fn grid_text_roundtrip(n in 1usize..6, m in 1usize..6, k in 1usize..6, lo in 0.1f64..1.0) {
        let g = Grid::new([n, m, k], [lo, -1.0, -2.0], [lo + 1.0, 1.0, 2.0]);
        let parsed: Grid = g.to_string().parse().unwrap();
        prop_assert_eq!(parsed.points(), g.points());
    }
}

fn charts() -> impl Strategy<Value = Box<dyn Chart>> {
    prop_oneof![
        (-2.0f64..3.0).prop_map(|b| Box::new(PlaneWaveChart::power_law(b)) as Box<dyn Chart>),
        (-2.0f64..2.0).prop_map(|h| Box::new(PlaneWaveChart::constant(h)) as Box<dyn Chart>),
        (-2.0f64..3.0).prop_map(|a| Box::new(RosenChart::power(a)) as Box<dyn Chart>),
        (0.1f64..2.0).prop_map(|k| Box::new(RosenChart::exponential(k)) as Box<dyn Chart>),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plane_wave_curvature_identities(chart in charts(), u in 0.3f64..2.5, v in -2.0f64..2.0, x in -2.0f64..2.0) {
        let p = [u, v, x];
        let r = chart.riemann(&p).unwrap();
        prop_assert!(curvature::symmetry_residual(&r) <= 1e-9);
        prop_assert!(curvature::scalar_curvature(chart.as_ref(), &p).unwrap().abs() <= 1e-9);
        let gamma = chart.christoffels(&p).unwrap();
        let numeric = oracle::christoffels(chart.as_ref(), &p).unwrap();
        for m in 0..3 {
            for k in 0..3 {
                prop_assert_eq!(gamma[m][k][V], 0.0);
                prop_assert!(numeric[m][k][V].abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn vertical_geodesics_are_affine_in_u(b in -1.0f64..3.0, u0 in 0.5f64..2.0, ud in 0.2f64..2.0, vd in -1.0f64..1.0) {
        let chart = PlaneWaveChart::power_law(b);
        let init = GeodesicState::new([u0, 0.3, 0.0], [ud, vd, 0.0]);
        let controls = Controls { output_step: Some(0.25), ..Controls::default() };
        let r = geodesic::integrate_geodesic(&chart, &init, 3.0, &controls).unwrap();
        for s in &r.samples {
            prop_assert!((s.state.position[0] - (u0 + ud * s.t)).abs() <= 1e-10);
        }
        prop_assert!(r.norm_drift <= 1e-8);
    }

    #[test]
    fn boost_equivariance(b in -0.5f64..3.0, s in -1.0f64..1.0, x0 in -0.5f64..0.5, xd in -0.5f64..0.5) {
        let chart = PlaneWaveChart::power_law(b);
        let init = GeodesicState::new([1.0, 0.2, x0], [1.0, -0.3, xd]);
        let controls = Controls { output_step: Some(0.5), ..Controls::default() };
        let direct = geodesic::integrate_geodesic(&chart, &init, 2.0, &controls).unwrap();
        let boosted_init = geodesic::boost_state(s, &init);
        let boosted = geodesic::integrate_geodesic(&chart, &boosted_init, 2.0, &Controls::default()).unwrap();
        let end = geodesic::boost_state(s, &direct.last().state);
        let got = boosted.last().state;
        for k in 0..3 {
            prop_assert!((got.position[k] - end.position[k]).abs() <= 1e-8 * end.position[k].abs().max(1.0));
        }
    }
}
