use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use super::ring::Ring;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Sparse polynomial in `x`, `y` with coefficients in `C`.
///
/// Keys are exponent pairs `(i, j)` for `x^i y^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

/// Rational bivariate polynomial, the representation of germs.
pub type Poly = BiPoly<Rational>;

impl<C: Ring> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = ((u32, u32), C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub(crate) fn add_term(&mut self, e: (u32, u32), c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.plus(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Lowest total degree of a term (the multiplicity at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).min()
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        BiPoly::from_terms(self.terms.iter().map(|(&e, c)| (e, f(c))))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.times(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c.times(&C::from_i64(i as i64)))),
        )
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, j), _)| j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c.times(&C::from_i64(j as i64)))),
        )
    }

    /// Terms of total degree at most `k`.
    pub fn jet(&self, k: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j <= k)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == k)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn swap_xy(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Multiply by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + a, j + b), c.clone()))
                .collect(),
        }
    }

    /// Largest `(a, b)` with `x^a y^b` dividing the polynomial.
    pub fn monomial_content(&self) -> (u32, u32) {
        let a = self.terms.keys().map(|&(i, _)| i).min().unwrap_or(0);
        let b = self.terms.keys().map(|&(_, j)| j).min().unwrap_or(0);
        (a, b)
    }

    /// Divide by `x^a y^b`; the caller guarantees divisibility.
    pub fn unshift(&self, a: u32, b: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i - a, j - b), c.clone()))
                .collect(),
        }
    }

    /// `f(p(x,y), q(x,y))`.
    pub fn compose(&self, p: &Self, q: &Self) -> Self {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let mut ppow = vec![Self::one()];
        for k in 0..dx {
            let next = &ppow[k] * p;
            ppow.push(next);
        }
        let mut qpow = vec![Self::one()];
        for k in 0..dy {
            let next = &qpow[k] * q;
            qpow.push(next);
        }
        // Horner in x over each y-row keeps products small.
        let mut rows: BTreeMap<u32, Self> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let row = rows.entry(j).or_insert_with(Self::zero);
            *row = &*row + &ppow[i as usize].scale(c);
        }
        let mut out = Self::zero();
        for (j, row) in rows {
            out = &out + &(&row * &qpow[j as usize]);
        }
        out
    }

    /// `f(m11 x + m12 y, m21 x + m22 y)`.
    pub fn apply_linear(&self, m11: &C, m12: &C, m21: &C, m22: &C) -> Result<Self> {
        if m11.times(m22).minus(&m12.times(m21)).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let p = Self::from_terms([((1, 0), m11.clone()), ((0, 1), m12.clone())]);
        let q = Self::from_terms([((1, 0), m21.clone()), ((0, 1), m22.clone())]);
        Ok(self.compose(&p, &q))
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        let mut acc = C::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc.plus(&c.times(&x.pow(i)).times(&y.pow(j)));
        }
        acc
    }

    /// `f(0, y)` as a univariate polynomial in `y`.
    pub fn restrict_x0(&self) -> UniPoly<C> {
        let mut coeffs = vec![C::zero(); self.degree_y().unwrap_or(0) as usize + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                coeffs[j as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// `f(x, 0)` as a univariate polynomial in `x`.
    pub fn restrict_y0(&self) -> UniPoly<C> {
        self.swap_xy().restrict_x0()
    }

    /// View as a polynomial in `y` with coefficients in `C[x]`.
    pub fn to_y_poly(&self) -> UniPoly<UniPoly<C>> {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<C>> = vec![Vec::new(); dy];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, C::zero());
            }
            row[i as usize] = c.clone();
        }
        UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn from_y_poly(p: &UniPoly<UniPoly<C>>) -> Self {
        let mut out = Self::zero();
        for (j, row) in p.coeffs().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c);
            }
        }
        out
    }

    pub fn from_x_poly(p: &UniPoly<C>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Exact quotient over the coefficient field, or `None` if not divisible.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, b) = other.monomial_content();
        let (sa, sb) = self.monomial_content();
        if sa < a || sb < b {
            return None;
        }
        let num = self.unshift(a, b);
        let den = other.unshift(a, b);
        let q = num.to_y_poly().div_exact(&den.to_y_poly())?;
        Some(Self::from_y_poly(&q))
    }
}

impl<C: Ring> Ring for BiPoly<C> {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn one() -> Self {
        BiPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c);
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, &c.negate());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<(u32, u32), C> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                let prod = c1.times(c2);
                acc.entry((i1 + i2, j1 + j2))
                    .and_modify(|v| *v = v.plus(&prod))
                    .or_insert(prod);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
    fn negate(&self) -> Self {
        self.map(|c| c.negate())
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div_exact(other)
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }
}

impl<C: Ring> Add for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn add(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        self.plus(rhs)
    }
}

impl<C: Ring> Sub for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn sub(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        self.minus(rhs)
    }
}

impl<C: Ring> Mul for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn mul(self, rhs: &BiPoly<C>) -> BiPoly<C> {
        self.times(rhs)
    }
}

impl<C: Ring> Neg for &BiPoly<C> {
    type Output = BiPoly<C>;
    fn neg(self) -> BiPoly<C> {
        self.negate()
    }
}

impl<C: Ring> Add for BiPoly<C> {
    type Output = BiPoly<C>;
    fn add(self, rhs: BiPoly<C>) -> BiPoly<C> {
        self.plus(&rhs)
    }
}

impl<C: Ring> Sub for BiPoly<C> {
    type Output = BiPoly<C>;
    fn sub(self, rhs: BiPoly<C>) -> BiPoly<C> {
        self.minus(&rhs)
    }
}

impl<C: Ring> Mul for BiPoly<C> {
    type Output = BiPoly<C>;
    fn mul(self, rhs: BiPoly<C>) -> BiPoly<C> {
        self.times(&rhs)
    }
}

impl Poly {
    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_i64(n))
    }

    /// Integer polynomial proportional to `self` with coprime coefficients,
    /// together with the factor `c` such that `self = c * result`.
    pub fn integer_primitive(&self) -> (Rational, BiPoly<BigInt>) {
        if self.is_zero() {
            return (<Rational as One>::one(), BiPoly::zero());
        }
        let den = self
            .terms
            .values()
            .fold(<BigInt as One>::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<((u32, u32), BigInt)> = self
            .terms
            .iter()
            .map(|(&e, c)| (e, c.numer() * (&den / c.denom())))
            .collect();
        let g = ints
            .iter()
            .fold(<BigInt as Zero>::zero(), |acc, (_, c)| acc.gcd(c));
        let ip = BiPoly::from_terms(ints.into_iter().map(|(e, c)| (e, c / &g)));
        (Rational::new(g, den), ip)
    }

    pub fn from_integer_poly(p: &BiPoly<BigInt>) -> Self {
        p.map(|c| Rational::from_integer(c.clone()))
    }

    /// Canonical associate: integer coefficients with gcd 1 and positive
    /// leading coefficient in (y-degree, x-degree) order.
    pub fn normalize(&self) -> Self {
        let (_, ip) = self.integer_primitive();
        let lead = ip
            .terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(_, c)| c.is_negative());
        let p = Self::from_integer_poly(&ip);
        if lead == Some(true) {
            -&p
        } else {
            p
        }
    }

    /// Sylvester resultant with respect to `y`, as a polynomial in `x`.
    pub fn resultant_y(&self, other: &Self) -> Result<UniPoly<Rational>> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (ca, a) = self.integer_primitive();
        let (cb, b) = other.integer_primitive();
        let da = self.degree_y().unwrap_or(0) as i32;
        let db = other.degree_y().unwrap_or(0) as i32;
        let r = a.to_y_poly().resultant(&b.to_y_poly());
        let scale = pow_rational(&ca, db) * pow_rational(&cb, da);
        Ok(r.map(|c| Rational::from_integer(c.clone()) * &scale))
    }
}

fn pow_rational(q: &Rational, e: i32) -> Rational {
    num_traits::Pow::pow(q, e)
}

fn write_monomial(out: &mut String, i: u32, j: u32) {
    let mut first = true;
    for (v, e) in [("x", i), ("y", j)] {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(v);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Terms in graded lexicographic order by `(i + j, i)`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, i));
        let mut out = String::new();
        for (k, &(i, j)) in keys.iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let unit = One::is_one(&mag);
            if i == 0 && j == 0 {
                out.push_str(&format_rational(&mag));
                continue;
            }
            if !unit {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
            write_monomial(&mut out, i, j);
        }
        f.write_str(&out)
    }
}

impl<C: Ring> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(s: &str) -> Poly {
        crate::algebra::parse::parse_polynomial(s).unwrap()
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(p("y^2-x^3").to_string(), "y^2-x^3");
        assert_eq!(
            p("3*x^4*y+y^5+2*x*y^3-x^3*y^2").to_string(),
            "2*x*y^3+y^5-x^3*y^2+3*x^4*y"
        );
        assert_eq!(p("-1/2*x+7").to_string(), "7-1/2*x");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn linear_change_examples() {
        let one = int(1);
        let zero = int(0);
        assert_eq!(
            p("x").apply_linear(&zero, &one, &one, &zero).unwrap(),
            p("y")
        );
        assert_eq!(
            p("y^2-x^3").apply_linear(&one, &zero, &zero, &one).unwrap(),
            p("y^2-x^3")
        );
        assert_eq!(
            p("y^2").apply_linear(&one, &zero, &one, &one).unwrap(),
            p("(x+y)^2")
        );
        assert_eq!(
            p("x").apply_linear(&one, &one, &one, &one),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn resultant_examples() {
        let r = p("y^2-x^3").resultant_y(&p("y")).unwrap();
        assert_eq!(r.order(), crate::algebra::ExtNat::Finite(3));
        assert_eq!(r.coeffs().len(), 4);
        assert_eq!(
            p("y^3+x").resultant_y(&p("1")).unwrap(),
            UniPoly::constant(int(1))
        );
        let r = p("y-x").resultant_y(&p("y+x")).unwrap();
        assert!(
            r == UniPoly::new(vec![int(0), int(2)]) || r == UniPoly::new(vec![int(0), int(-2)])
        );
        assert_eq!(
            Poly::zero().resultant_y(&p("y")),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn exact_division() {
        let a = p("(y-x)^2*(y^2-x^3)");
        assert_eq!(a.div_exact(&p("y-x")), Some(p("(y-x)*(y^2-x^3)")));
        assert_eq!(p("x*y^2").div_exact(&p("x*y")), Some(p("y")));
        assert_eq!(a.div_exact(&p("y+x")), None);
    }
}
