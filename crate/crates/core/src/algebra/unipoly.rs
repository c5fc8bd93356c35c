use std::fmt;

use super::extnat::ExtNat;
use super::ring::{GcdRing, Ring};

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of degree `k`.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in which
/// case `coeffs` is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Self::new(Vec::new());
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// already excluded zero.
    pub(crate) fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.times(&R::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.times(at).plus(c))
    }

    /// Index of the lowest nonzero coefficient; ∞ for the zero polynomial.
    pub fn order(&self) -> ExtNat {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => ExtNat::Finite(k as u64),
            None => ExtNat::Infinite,
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "pseudo-division by zero");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut steps = self.deg() - db + 1;
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1;
            let lr = r[k].clone();
            for c in r.iter_mut() {
                *c = c.times(&lb);
            }
            for (t, bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + t;
                r[idx] = r[idx].minus(&lr.times(bc));
            }
            steps -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let r = Self::new(r);
        if steps > 0 {
            r.scale(&lb.pow(steps as u32))
        } else {
            r
        }
    }

    /// Exact quotient, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let db = b.deg();
        if self.deg() < db {
            return None;
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(); self.deg() - db + 1];
        while r.len() > db {
            let k = r.len() - 1;
            if r[k].is_zero() {
                r.pop();
                continue;
            }
            let c = r[k].exact_div(&lb)?;
            for (t, bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + t;
                r[idx] = r[idx].minus(&c.times(bc));
            }
            q[k - db] = c;
            r.pop();
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Resultant by the subresultant remainder sequence.
    pub fn resultant(&self, other: &Self) -> R {
        if self.is_zero() || other.is_zero() {
            return R::zero();
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut sign_negative = false;
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign_negative = true;
            }
        }
        if b.deg() == 0 {
            let r = b.lc().pow(a.deg() as u32);
            return if sign_negative { r.negate() } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = a.deg() - b.deg();
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                sign_negative = !sign_negative;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return R::zero();
            }
            let divisor = g.times(&h.pow(delta as u32));
            a = b;
            b = UniPoly::new(
                r.coeffs
                    .iter()
                    .map(|c| {
                        c.exact_div(&divisor)
                            .expect("subresultant division is exact")
                    })
                    .collect(),
            );
            g = a.lc();
            if delta > 0 {
                h = g
                    .pow(delta as u32)
                    .exact_div(&h.pow(delta as u32 - 1))
                    .expect("subresultant h update is exact");
            }
            if b.deg() == 0 {
                let da = a.deg() as u32;
                let num = b.lc().pow(da);
                let res = if da == 0 {
                    num
                } else {
                    num.exact_div(&h.pow(da - 1))
                        .expect("final subresultant division is exact")
                };
                return if sign_negative { res.negate() } else { res };
            }
        }
    }
}

impl<R: GcdRing + UnitPart> UniPoly<R> {
    /// Gcd of the coefficients.
    pub fn content(&self) -> R {
        self.coeffs.iter().fold(R::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.map(|a| a.exact_div(&c).expect("content divides coefficients"))
    }

    /// Gcd via the primitive remainder sequence, normalized by the unit of
    /// the leading coefficient.
    pub fn poly_gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c).normalized()
    }

    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let u = self.lc().unit_part();
        self.map(|a| a.exact_div(&u).expect("unit divides"))
    }
}

/// Unit part used to pick canonical associates.
pub trait UnitPart: Ring {
    fn unit_part(&self) -> Self;
}

impl UnitPart for num_bigint::BigInt {
    fn unit_part(&self) -> Self {
        if num_traits::Signed::is_negative(self) {
            Self::from_i64(-1)
        } else {
            Self::one()
        }
    }
}

impl UnitPart for super::rational::Rational {
    fn unit_part(&self) -> Self {
        if Ring::is_zero(self) {
            Self::one()
        } else {
            self.clone()
        }
    }
}

impl<R: UnitPart + GcdRing> UnitPart for UniPoly<R> {
    fn unit_part(&self) -> Self {
        UniPoly::constant(self.lc().unit_part())
    }
}

impl<R: Ring> Ring for UniPoly<R> {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        UniPoly {
            coeffs: vec![R::one()],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coeff(k).plus(&other.coeff(k)))
                .collect(),
        )
    }
    fn minus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| self.coeff(k).minus(&other.coeff(k)))
                .collect(),
        )
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::new(out)
    }
    fn negate(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.negate()).collect())
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div_exact(other)
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
}

impl<R: GcdRing + UnitPart> GcdRing for UniPoly<R> {
    fn gcd(&self, other: &Self) -> Self {
        self.poly_gcd(other)
    }
}

impl<R: Ring + fmt::Debug> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zp(c: &[i64]) -> UniPoly<BigInt> {
        UniPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Sylvester determinant by cofactor expansion.
    fn sylvester_det(a: &[i64], b: &[i64]) -> i128 {
        let (m, n) = (a.len() - 1, b.len() - 1);
        let size = m + n;
        let mut mat = vec![vec![0i128; size]; size];
        for r in 0..n {
            for (k, &c) in a.iter().rev().enumerate() {
                mat[r][r + k] = c as i128;
            }
        }
        for r in 0..m {
            for (k, &c) in b.iter().rev().enumerate() {
                mat[n + r][r + k] = c as i128;
            }
        }
        fn det(m: &[Vec<i128>]) -> i128 {
            if m.len() == 1 {
                return m[0][0];
            }
            let mut acc = 0;
            for col in 0..m.len() {
                if m[0][col] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != col)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if col % 2 == 0 { 1 } else { -1 };
                acc += s * m[0][col] * det(&minor);
            }
            acc
        }
        det(&mat)
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[1, 2, 3], &[4, 5]),
            (&[-1, 0, 0, 2], &[3, 1, 1]),
            (&[2, -3, 0, 1, 5], &[0, 1, -2, 7]),
            (&[1, 1], &[1, -1]),
            (&[6, 0, 1], &[0, 0, 0, 1]),
        ];
        for (a, b) in cases {
            let expect = sylvester_det(a, b);
            let got = zp(a).resultant(&zp(b));
            assert_eq!(got, BigInt::from(expect), "{a:?} {b:?}");
        }
    }

    #[test]
    fn resultant_with_constant() {
        assert_eq!(zp(&[1, 2, 3]).resultant(&zp(&[5])), BigInt::from(25));
        assert_eq!(zp(&[0, 1]).resultant(&zp(&[1])), BigInt::from(1));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = zp(&[-1, 0, 1]); // y^2 - 1
        let b = zp(&[1, 2, 1]); // (y+1)^2
        assert_eq!(a.poly_gcd(&b), zp(&[1, 1]));
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[-1, 1])));
        assert_eq!(a.div_exact(&zp(&[2, 1])), None);
    }

    #[test]
    fn order_of_zero_is_infinite() {
        assert_eq!(zp(&[]).order(), ExtNat::Infinite);
        assert_eq!(zp(&[0, 0, 0, 1, 0, 1]).order(), ExtNat::Finite(3));
    }
}
