//! Bivariate gcd and squarefree decomposition over ℚ.

use super::bivariate::Poly;
use super::modp::{gcd_y_regular, surely_squarefree};
use super::rational::{int, Rational};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Smallest `|k|` (trying 0, 1, -1, 2, ...) for which `x -> x + k y` makes
/// every input `y`-regular.
fn regularizing_shear(polys: &[&Poly]) -> i64 {
    let tops: Vec<Poly> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.homogeneous_part(p.total_degree().unwrap()))
        .collect();
    (0..)
        .flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
        .find(|&k| tops.iter().all(|t| !t.eval(&int(k), &int(1)).is_zero()))
        .unwrap()
}

fn shear(p: &Poly, k: i64) -> Poly {
    if k == 0 {
        return p.clone();
    }
    p.apply_linear(&int(1), &int(k), &int(0), &int(1)).unwrap()
}

/// Normalized gcd; `gcd(0, 0)` is zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let k = regularizing_shear(&[a]);
    let g = gcd_y_regular(&shear(a, k), &shear(b, k));
    shear(&g, -k).normalize()
}

/// `f = c · Π factorᵏ` with pairwise coprime squarefree factors, each
/// normalized, sorted by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let k = regularizing_shear(&[f]);
    let g = shear(f, k);
    if surely_squarefree(&g) {
        return Ok(vec![(f.normalize(), 1)]);
    }
    let mut out = Vec::new();
    let gy = g.derivative_y();
    let c = gcd_y_regular(&g, &gy);
    let mut w = g.div_exact(&c).expect("gcd divides");
    let mut y = gy.div_exact(&c).expect("gcd divides");
    let mut z = &y - &w.derivative_y();
    let mut i = 1;
    while !w.is_constant() {
        let h = if z.is_zero() {
            w.clone()
        } else {
            gcd_y_regular(&w, &z)
        };
        if !h.is_constant() {
            out.push((shear(&h, -k).normalize(), i));
        }
        w = w.div_exact(&h).expect("gcd divides");
        y = z.div_exact(&h).expect("gcd divides");
        z = &y - &w.derivative_y();
        i += 1;
    }
    Ok(out)
}

/// Product of the distinct factors.
pub fn squarefree_part(f: &Poly) -> Result<Poly> {
    Ok(squarefree_decomposition(f)?
        .iter()
        .fold(Poly::one(), |acc, (p, _)| &acc * p))
}

pub fn is_squarefree(f: &Poly) -> Result<bool> {
    Ok(squarefree_decomposition(f)?.iter().all(|&(_, k)| k == 1))
}

/// Rational `c` with `f = c · Π factorᵏ`.
pub fn leading_ratio(f: &Poly, factors: &[(Poly, u32)]) -> Rational {
    let prod = factors
        .iter()
        .fold(Poly::one(), |acc, (p, k)| &acc * &p.pow(*k));
    let (&e, c) = f.terms().next().expect("nonzero");
    c / prod.coeff(e.0, e.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        crate::algebra::parse::parse_polynomial(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            squarefree_decomposition(&p("(y^2-x^3)^2")).unwrap(),
            vec![(p("y^2-x^3"), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&p("x*y")).unwrap(),
            vec![(p("x*y"), 1)]
        );
        assert_eq!(
            squarefree_decomposition(&p("x^2*(y-x)")).unwrap(),
            vec![(p("y-x"), 1), (p("x"), 2)]
        );
        assert_eq!(
            squarefree_decomposition(&Poly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn reconstructs_input() {
        for s in [
            "3*(y^2-x^3)^2*(y+x)^3*x",
            "-1/2*x^4*y^2",
            "(x+y^2)*(x-y^2)^2*(y-1)",
        ] {
            let f = p(s);
            let dec = squarefree_decomposition(&f).unwrap();
            let c = leading_ratio(&f, &dec);
            let prod = dec
                .iter()
                .fold(Poly::one(), |acc, (q, k)| &acc * &q.pow(*k));
            assert_eq!(prod.scale(&c), f, "{s}");
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("x*y"), &p("x")), p("x"));
        assert_eq!(gcd(&p("x"), &p("x+x^2")), p("x"));
        assert_eq!(gcd(&p("y^2-x^3"), &p("y")), Poly::one());
        assert_eq!(gcd(&p("(y-x)*(y^2-x^3)"), &p("(y-x)^2*(y+1)")), p("y-x"));
    }
}
