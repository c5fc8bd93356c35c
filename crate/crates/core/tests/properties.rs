use proptest::prelude::*;

use njac::equisingularity::{
    curve_fingerprint, pair_fingerprint, transform_pair, AutomorphismGerm,
};
use njac::local::{finiteness_check, intersection_multiplicity, intersection_multiplicity_puiseux};
use njac::newton::reconstruct_from_support;
use njac::{ExtNat, NewtonDiagram, Poly, Rational};

/// Sparse polynomials vanishing at the origin, total degree at most 4.
fn germ() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=4, 0u32..=4), -3i64..=3), 1..5).prop_filter_map(
        "zero or unit",
        |terms| {
            let p = Poly::from_terms(
                terms
                    .into_iter()
                    .filter(|((i, j), _)| i + j >= 1 && i + j <= 4)
                    .map(|((i, j), c)| ((i, j), Rational::from_integer(c.into()))),
            );
            (!p.is_zero()).then_some(p)
        },
    )
}

fn diagram_points() -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0u64..8, 0u64..8), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn intersection_is_symmetric(f in germ(), g in germ()) {
        let a = intersection_multiplicity(&f, &g).unwrap();
        prop_assert_eq!(a, intersection_multiplicity(&g, &f).unwrap());
    }

    #[test]
    fn intersection_is_additive(f in germ(), g in germ(), h in germ()) {
        prop_assume!(finiteness_check(&f, &g) && finiteness_check(&f, &h));
        let gh = &g * &h;
        let sum = intersection_multiplicity(&f, &g).unwrap() + intersection_multiplicity(&f, &h).unwrap();
        prop_assert_eq!(intersection_multiplicity(&f, &gh).unwrap(), sum);
    }

    #[test]
    fn modular_and_branch_routes_agree(f in germ(), g in germ()) {
        prop_assume!(finiteness_check(&f, &g));
        let a = intersection_multiplicity(&f, &g).unwrap();
        prop_assert_eq!(intersection_multiplicity_puiseux(&f, &g).unwrap(), a);
    }

    #[test]
    fn diagram_of_product_is_minkowski_sum(f in germ(), g in germ()) {
        let (df, dg) = (NewtonDiagram::of_poly(&f).unwrap(), NewtonDiagram::of_poly(&g).unwrap());
        prop_assert_eq!(NewtonDiagram::of_poly(&(&f * &g)).unwrap(), df.minkowski_sum(&dg));
    }

    #[test]
    fn support_is_additive(a in diagram_points(), b in diagram_points(), m in 1u64..9, n in 1u64..9) {
        let (da, db) = (NewtonDiagram::of_points(a).unwrap(), NewtonDiagram::of_points(b).unwrap());
        prop_assert_eq!(da.minkowski_sum(&db).support(m, n), da.support(m, n) + db.support(m, n));
    }

    #[test]
    fn support_reconstructs_the_diagram(pts in diagram_points()) {
        let d = NewtonDiagram::of_points(pts).unwrap();
        let back = reconstruct_from_support(|m, n| Ok(d.support(m, n)), d.width(), d.height()).unwrap();
        prop_assert_eq!(back, d.clone());
        prop_assert_eq!(d.transpose().transpose(), d.clone());
        prop_assert_eq!(NewtonDiagram::sum_elementary(&d.elementary_decomposition()), d);
    }

    #[test]
    fn fingerprints_ignore_coordinate_order(f in germ(), g in germ()) {
        prop_assume!(finiteness_check(&f, &g));
        let swap = AutomorphismGerm::swap();
        let one = Poly::one();
        let (fs, gs) = transform_pair(&f, &g, &swap, &one, &one).unwrap();
        prop_assert_eq!(pair_fingerprint(&f, &g).unwrap(), pair_fingerprint(&fs, &gs).unwrap());
        let fg = &f * &g;
        prop_assert_eq!(curve_fingerprint(&fg).unwrap(), curve_fingerprint(&(&g * &f)).unwrap());
    }
}

#[test]
fn infinite_intersection_with_common_factor() {
    let f = njac::parse_polynomial("x*(y-x^2)").unwrap();
    let g = njac::parse_polynomial("x*(y+x)").unwrap();
    assert_eq!(intersection_multiplicity(&f, &g).unwrap(), ExtNat::Infinite);
}
