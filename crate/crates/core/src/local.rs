//! Intersection multiplicities, Milnor numbers and pencil Milnor numbers at
//! the origin.
//!
//! The working engine reduces modulo large primes after a random linear
//! change of coordinates; a value is accepted once two independent samples
//! reach the same minimum. Exact rational routes are kept as cross-checks.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::modp::{local_order, primes, Field, ModBi};
use crate::algebra::rational::int;
use crate::algebra::squarefree::gcd;
use crate::algebra::{ExtNat, Poly, UniPoly};
use crate::error::{Error, Result};
use crate::puiseux::{expand, Precision};

const SEED: u64 = 0x6e6a_6163;
const MAX_SAMPLES: usize = 5;
const MAX_IRREGULAR: usize = 40;

fn random_change(rng: &mut ChaCha8Rng) -> [i64; 4] {
    loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        if m[0] * m[3] - m[1] * m[2] != 0 {
            return m;
        }
    }
}

/// Smallest value seen twice among modular samples.
fn consensus(mut sample: impl FnMut(&mut ChaCha8Rng, Field) -> Option<ExtNat>) -> Result<ExtNat> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut values: Vec<ExtNat> = Vec::new();
    let mut irregular = 0;
    for p in primes() {
        match sample(&mut rng, Field::new(p)) {
            None => {
                irregular += 1;
                if irregular > MAX_IRREGULAR {
                    return Err(Error::NonGenericFailure(
                        "no regular coordinates found".into(),
                    ));
                }
            }
            Some(v) => {
                values.push(v);
                let min = *values.iter().min().unwrap();
                if values.iter().filter(|&&w| w == min).count() >= 2 {
                    return Ok(min);
                }
                if values.len() >= MAX_SAMPLES {
                    return Err(Error::Disagreement {
                        attempts: MAX_SAMPLES as _,
                    });
                }
            }
        }
    }
    unreachable!()
}

fn modular_pair(f: &Poly, g: &Poly) -> Result<ExtNat> {
    consensus(|rng, field| {
        let m = random_change(rng);
        let a = ModBi::reduce(f, field)?.linear_change(m);
        let b = ModBi::reduce(g, field)?.linear_change(m);
        local_order(&a, &b)
    })
}

/// Intersection multiplicity `i₀(f, g)` at the origin.
pub fn intersection_multiplicity(f: &Poly, g: &Poly) -> Result<ExtNat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(ExtNat::Finite(0));
    }
    let v = modular_pair(f, g)?;
    if v.is_finite() {
        return Ok(v);
    }
    let h = gcd(f, g);
    if h.vanishes_at_origin() {
        return Ok(ExtNat::Infinite);
    }
    let (f1, g1) = (f.div_exact(&h).unwrap(), g.div_exact(&h).unwrap());
    match modular_pair(&f1, &g1)? {
        ExtNat::Infinite => Err(Error::NonGenericFailure(
            "resultant vanishes modulo every sampled prime".into(),
        )),
        v => Ok(v),
    }
}

/// Milnor number `μ₀(h) = i₀(∂h/∂x, ∂h/∂y)`.
pub fn milnor_number(h: &Poly) -> Result<ExtNat> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !h.vanishes_at_origin() {
        return Err(Error::NotVanishingAtOrigin);
    }
    let (hx, hy) = (h.derivative_x(), h.derivative_y());
    if hx.is_zero() || hy.is_zero() {
        // h depends on one variable only
        let other = if hx.is_zero() { &hy } else { &hx };
        return Ok(if other.vanishes_at_origin() {
            ExtNat::Infinite
        } else {
            ExtNat::Finite(0)
        });
    }
    if !hx.vanishes_at_origin() || !hy.vanishes_at_origin() {
        return Ok(ExtNat::Finite(0));
    }
    let v = consensus(|rng, field| {
        let m = random_change(rng);
        let a = ModBi::reduce(h, field)?.linear_change(m);
        local_order(&a.derivative_x(), &a.derivative_y())
    })?;
    if v.is_finite() || gcd(&hx, &hy).vanishes_at_origin() {
        return Ok(v);
    }
    intersection_multiplicity(&hx, &hy)
}

/// Milnor number of `fⁿ − t gᵐ` for generic `t`: the common value of
/// samples at random `t` modulo random primes.
pub fn generic_pencil_milnor(f: &Poly, g: &Poly, n: u32, m: u32) -> Result<ExtNat> {
    pencil_milnor(f, g, n, m, usize::MAX)
}

/// As [`generic_pencil_milnor`], given a bound expected to hold for the
/// answer. Pencil members are then cut to their `(bound + 1)`-jet, which
/// leaves the Milnor number unchanged whenever it is at most `bound`; a
/// larger result is recomputed without truncation.
pub fn generic_pencil_milnor_bounded(
    f: &Poly,
    g: &Poly,
    n: u32,
    m: u32,
    bound: u64,
) -> Result<ExtNat> {
    let v = pencil_milnor(f, g, n, m, (bound as usize).saturating_add(1))?;
    match v {
        ExtNat::Finite(k) if k <= bound => Ok(v),
        _ => generic_pencil_milnor(f, g, n, m),
    }
}

fn pencil_milnor(f: &Poly, g: &Poly, n: u32, m: u32, deg: usize) -> Result<ExtNat> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("exponents must be positive".into()));
    }
    if n.gcd(&m) != 1 {
        return Err(Error::NotCoprime { n, m });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    consensus(|rng, field| {
        let t = rng.gen_range(1..field.p);
        let mc = random_change(rng);
        let fp = ModBi::reduce(f, field)?.linear_change(mc);
        let gp = ModBi::reduce(g, field)?.linear_change(mc);
        let h = fp.pow_jet(n, deg).sub(&gp.pow_jet(m, deg).scale(t));
        if h.coeff(0, 0) != 0 {
            return Some(ExtNat::Finite(0));
        }
        let (hx, hy) = (h.derivative_x(), h.derivative_y());
        if hx.coeff(0, 0) != 0 || hy.coeff(0, 0) != 0 {
            return Some(ExtNat::Finite(0));
        }
        if hx.is_zero() || hy.is_zero() {
            return Some(ExtNat::Infinite);
        }
        local_order(&hx, &hy)
    })
}

/// Whether `f` and `g` vanish at the origin without a common component
/// through it.
pub fn finiteness_check(f: &Poly, g: &Poly) -> bool {
    !f.is_zero()
        && !g.is_zero()
        && f.vanishes_at_origin()
        && g.vanishes_at_origin()
        && !gcd(f, g).vanishes_at_origin()
}

fn strip(u: &UniPoly<crate::Rational>) -> UniPoly<crate::Rational> {
    let k = u
        .coeffs()
        .iter()
        .position(|c| !num_traits::Zero::is_zero(c))
        .unwrap_or(0);
    UniPoly::new(u.coeffs()[k..].to_vec())
}

fn regular_over_q(a: &Poly) -> bool {
    let d = a.total_degree().unwrap_or(0);
    a.degree_y() == Some(d) && !num_traits::Zero::is_zero(&a.coeff(0, d))
}

/// `i₀(f, g)` as the order at `x = 0` of an exact resultant over ℚ, after
/// a deterministic linear change putting the pair in regular position.
pub fn intersection_multiplicity_resultant(f: &Poly, g: &Poly) -> Result<ExtNat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(ExtNat::Finite(0));
    }
    let h = gcd(f, g);
    if h.vanishes_at_origin() {
        return Ok(ExtNat::Infinite);
    }
    let (f, g) = (&f.div_exact(&h).unwrap(), &g.div_exact(&h).unwrap());
    for k in 1..=12i64 {
        for l in [k, -k, 2 * k + 1] {
            let m = [int(1), int(k), int(l), int(1)];
            let Ok(a) = f.apply_linear(&m[0], &m[1], &m[2], &m[3]) else {
                continue;
            };
            let b = g.apply_linear(&m[0], &m[1], &m[2], &m[3])?;
            if !regular_over_q(&a) || !regular_over_q(&b) {
                continue;
            }
            let (a0, b0) = (a.restrict_x0(), b.restrict_x0());
            if a0.coeffs().is_empty() || b0.coeffs().is_empty() {
                continue;
            }
            if num_traits::Zero::is_zero(&strip(&a0).resultant(&strip(&b0))) {
                continue;
            }
            return Ok(a.resultant_y(&b)?.order());
        }
    }
    Err(Error::NonGenericFailure(
        "no regular linear change found".into(),
    ))
}

/// `i₀(f, g)` as the sum over branches of `f` of the order of `g`.
pub fn intersection_multiplicity_puiseux(f: &Poly, g: &Poly) -> Result<ExtNat> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(ExtNat::Finite(0));
    }
    let set = expand(f, std::slice::from_ref(g), Precision::default())?;
    Ok(set
        .branches
        .iter()
        .map(|b| b.orders[0].scale(b.conjugates() as u64 * b.multiplicity as u64))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;

    fn p(s: &str) -> Poly {
        parse_polynomial(s).unwrap()
    }

    fn fin(n: u64) -> ExtNat {
        ExtNat::Finite(n)
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_multiplicity(&p("x"), &p("y")).unwrap(), fin(1));
        assert_eq!(
            intersection_multiplicity(&p("y^2-x^3"), &p("y")).unwrap(),
            fin(3)
        );
        assert_eq!(
            intersection_multiplicity(&p("y^2-x^3"), &p("y^2-x^3")).unwrap(),
            ExtNat::Infinite
        );
        assert_eq!(
            intersection_multiplicity(&p("1+x"), &p("y")).unwrap(),
            fin(0)
        );
        assert_eq!(
            intersection_multiplicity(&Poly::zero(), &p("y")),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(
            intersection_multiplicity(&p("x*(1+y)"), &p("x*(y-x^2)")).unwrap(),
            ExtNat::Infinite
        );
        assert_eq!(
            intersection_multiplicity(&p("x*(1+y)"), &p("(1+y)*(y-x^2)")).unwrap(),
            fin(1)
        );
    }

    #[test]
    fn three_routes_agree() {
        let pairs = [
            ("y^2-x^3", "y"),
            ("y^2-x^3", "x"),
            ("y^3-x^7+x^5*y", "y^2-x^5"),
            ("x*y*(x+y)", "y-x^2"),
            ("(y^2-x^3)*(y-x)", "y^2-x^3+x^4"),
        ];
        for (f, g) in pairs {
            let (f, g) = (p(f), p(g));
            let a = intersection_multiplicity(&f, &g).unwrap();
            assert_eq!(intersection_multiplicity_resultant(&f, &g).unwrap(), a);
            assert_eq!(intersection_multiplicity_puiseux(&f, &g).unwrap(), a);
            assert_eq!(intersection_multiplicity_puiseux(&g, &f).unwrap(), a);
        }
        let (f, g) = (p("(y-x^2)*(y+x^2)"), p("y-x^2"));
        assert_eq!(
            intersection_multiplicity_resultant(&f, &g).unwrap(),
            ExtNat::Infinite
        );
        let (f, g) = (p("(1+x)*(y^2-x^3)"), p("(1+x)*y"));
        assert_eq!(intersection_multiplicity_resultant(&f, &g).unwrap(), fin(3));
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor_number(&p("y^2-x^3")).unwrap(), fin(2));
        assert_eq!(milnor_number(&p("x+y^2")).unwrap(), fin(0));
        assert_eq!(milnor_number(&p("x^3-5*y^2")).unwrap(), fin(2));
        assert_eq!(milnor_number(&p("(y^2-x^3)^2")).unwrap(), ExtNat::Infinite);
        assert_eq!(milnor_number(&p("y^2")).unwrap(), ExtNat::Infinite);
        assert_eq!(milnor_number(&p("x*y*(x-y)")).unwrap(), fin(4));
    }

    #[test]
    fn pencils() {
        let (x, y) = (p("x"), p("y"));
        assert_eq!(generic_pencil_milnor(&x, &y, 3, 2).unwrap(), fin(2));
        assert_eq!(
            generic_pencil_milnor(&p("y^2-x^3"), &x, 1, 1).unwrap(),
            fin(0)
        );
        assert_eq!(
            generic_pencil_milnor(&p("y^2-x^3"), &y, 1, 1).unwrap(),
            fin(0)
        );
        assert_eq!(
            generic_pencil_milnor(&x, &y, 2, 4),
            Err(Error::NotCoprime { n: 2, m: 4 })
        );
        let (f, g) = (p("y^2-x^3+x*y^3"), p("x+y^2"));
        for (n, m) in [(1, 2), (3, 2), (2, 5)] {
            let full = generic_pencil_milnor(&f, &g, n, m).unwrap();
            assert_eq!(
                generic_pencil_milnor_bounded(&f, &g, n, m, 40).unwrap(),
                full
            );
            assert_eq!(
                generic_pencil_milnor_bounded(&f, &g, n, m, 1).unwrap(),
                full
            );
        }
    }

    #[test]
    fn finiteness() {
        assert!(finiteness_check(&p("y^2-x^3"), &p("x")));
        assert!(!finiteness_check(&p("x*y"), &p("x")));
        assert!(!finiteness_check(&p("x"), &p("x+x^2")));
    }
}
