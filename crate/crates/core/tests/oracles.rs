//! Values checked against closed formulas computed here, independently of
//! the library's algorithms.

use njac::jacobian::{njac, MapGerm, Method};
use njac::local::{generic_pencil_milnor, intersection_multiplicity, milnor_number};
use njac::{parse_polynomial, ExtNat, NewtonDiagram, Poly};

fn p(s: &str) -> Poly {
    parse_polynomial(s).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Twice the area under the staircase through `(0,b)`, `(c,d)`, `(a,0)`.
fn twice_area(a: u64, b: u64, c: u64, d: u64) -> u64 {
    // trapezoids between consecutive vertices
    c * (b + d) + (a - c) * d
}

#[test]
fn kouchnirenko_for_trinomials() {
    // x^a + y^b + x^c y^d with (c,d) strictly below the segment: two
    // binomial edges, hence Newton non-degenerate, μ = 2V - a - b + 1.
    for a in 2..=7u64 {
        for b in 2..=7u64 {
            for c in 1..a {
                for d in 1..b {
                    if c * b + d * a >= a * b {
                        continue;
                    }
                    let h = p(&format!("x^{a}+y^{b}+x^{c}*y^{d}"));
                    let want = twice_area(a, b, c, d) + 1 - a - b;
                    assert_eq!(milnor_number(&h).unwrap(), ExtNat::Finite(want), "{h}");
                }
            }
        }
    }
}

#[test]
fn quasi_homogeneous_milnor_numbers() {
    for a in 2..=8u64 {
        for b in 2..=8u64 {
            let h = p(&format!("x^{a}-y^{b}"));
            assert_eq!(
                milnor_number(&h).unwrap(),
                ExtNat::Finite((a - 1) * (b - 1))
            );
        }
    }
}

#[test]
fn monomial_curve_intersections() {
    // y^p = x^q (coprime) is parametrized by (t^p, t^q); a monomial x^r y^s
    // has order p r + q s along it.
    for (pp, q) in [(2u64, 3u64), (3, 4), (2, 5), (3, 5), (4, 5)] {
        let f = p(&format!("y^{pp}-x^{q}"));
        for (r, s) in [(1u64, 0u64), (0, 1), (1, 1), (2, 1), (0, 3)] {
            let g = p(&format!("x^{r}*y^{s}"));
            assert_eq!(
                intersection_multiplicity(&f, &g).unwrap(),
                ExtNat::Finite(pp * r + q * s)
            );
        }
        let pair = p(&format!("y^{q}-x^{pp}"));
        // (t^p, t^q) on y^q - x^p: t^(q q) - t^(p p), order p p since p < q
        assert_eq!(
            intersection_multiplicity(&f, &pair).unwrap(),
            ExtNat::Finite(pp * pp)
        );
    }
}

#[test]
fn pencil_of_monomial_pairs() {
    // x^n - t y^m with coprime n, m is quasi-homogeneous: μ = (n-1)(m-1).
    for n in 1..=7u32 {
        for m in 1..=7u32 {
            if gcd(n as u64, m as u64) != 1 {
                continue;
            }
            let want = ((n - 1) * (m - 1)) as u64;
            assert_eq!(
                generic_pencil_milnor(&p("x"), &p("y"), n, m).unwrap(),
                ExtNat::Finite(want)
            );
        }
    }
}

#[test]
fn njac_of_folds_and_cusps_against_direct_images() {
    // (u, v^k): jacobian k v^(k-1), whose direct image is y^(k-1).
    for k in 2..=5u32 {
        let germ = MapGerm::new(p("x"), p(&format!("y^{k}"))).unwrap();
        let d = njac(&germ, Method::Branches).unwrap();
        assert_eq!(
            d,
            NewtonDiagram::from_vertices(vec![(0, k as u64 - 1)]).unwrap(),
            "k = {k}"
        );
    }
    // Whitney cusp (u, v^3 + u v): discriminant 4 x^3 + 27 y^2.
    let germ = MapGerm::new(p("x"), p("y^3+x*y")).unwrap();
    let image = NewtonDiagram::of_poly(&p("4*x^3+27*y^2")).unwrap();
    assert_eq!(njac(&germ, Method::Both).unwrap(), image);
}
