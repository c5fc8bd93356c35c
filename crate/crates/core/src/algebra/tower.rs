//! Towers of simple algebraic extensions of ℚ with dynamic evaluation.
//!
//! Each level adjoins a root of a monic squarefree polynomial over the
//! previous level. The moduli need not be irreducible: when an element turns
//! out to be a nonzero zero divisor, the operation fails with [`Split`],
//! carrying a proper monic factor of the offending modulus, and the caller
//! recomputes with the modulus split in two.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};

/// A proper factor of the modulus at `level` (1-based) was discovered.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub level: usize,
    /// Monic, coefficients in the tower below `level`.
    pub factor: Vec<Elem>,
}

pub type TResult<T> = std::result::Result<T, Split>;

#[derive(Debug)]
pub struct Level {
    /// Caller-assigned identifier, unique within one computation.
    pub id: u64,
    /// Monic modulus over the previous level, constant term first.
    pub modulus: Vec<Elem>,
    degree: usize,
    dim: usize,
}

/// Element of a tower: coordinates in the power basis, flattened so that
/// the coordinate of `α_k^i` times a lower basis element `b` sits at
/// `i * dim(k-1) + index(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub Vec<Rational>);

#[derive(Debug, Clone, Default)]
pub struct Tower {
    levels: Vec<Arc<Level>>,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.0[1..].iter().all(|c| c.is_zero()).then(|| &self.0[0])
    }
}

impl Tower {
    pub fn base() -> Tower {
        Tower { levels: Vec::new() }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn dim(&self) -> usize {
        self.levels.last().map_or(1, |l| l.dim)
    }

    fn dim_at(&self, k: usize) -> usize {
        if k == 0 {
            1
        } else {
            self.levels[k - 1].dim
        }
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k - 1]
    }

    pub fn level_ids(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.id).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.degree).collect()
    }

    /// The tower made of the first `k` levels.
    pub fn prefix(&self, k: usize) -> Tower {
        Tower {
            levels: self.levels[..k].to_vec(),
        }
    }

    /// Adjoin a root of `modulus` (monic, squarefree, degree ≥ 2, over `self`).
    pub fn adjoin(&self, id: u64, modulus: Vec<Elem>) -> Tower {
        let degree = modulus.len() - 1;
        debug_assert!(degree >= 1);
        let dim = self.dim() * degree;
        let mut levels = self.levels.clone();
        levels.push(Arc::new(Level {
            id,
            modulus,
            degree,
            dim,
        }));
        Tower { levels }
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![Rational::zero(); self.dim()])
    }

    pub fn one(&self) -> Elem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> Elem {
        let mut v = vec![Rational::zero(); self.dim()];
        v[0] = q;
        Elem(v)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_rational(Rational::from_integer(n.into()))
    }

    /// The adjoined root of level `k`, as an element of the full tower.
    pub fn generator(&self, k: usize) -> Elem {
        let mut v = vec![Rational::zero(); self.dim()];
        v[self.dim_at(k - 1)] = Rational::one();
        Elem(v)
    }

    /// Embed an element of a prefix tower.
    pub fn lift(&self, e: &Elem) -> Elem {
        let mut v = e.0.clone();
        v.resize(self.dim(), Rational::zero());
        Elem(v)
    }

    /// Restrict to the first `dim` coordinates; valid when the element lies
    /// in the prefix tower of that dimension.
    pub fn project(e: &Elem, dim: usize) -> Elem {
        Elem(e.0[..dim].to_vec())
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Elem, q: &Rational) -> Elem {
        Elem(a.0.iter().map(|x| x * q).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(self.mul_at(self.depth(), &a.0, &b.0))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn mul_at(&self, k: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if k == 0 {
            return vec![&a[0] * &b[0]];
        }
        let lvl = &self.levels[k - 1];
        let (d, low) = (lvl.degree, self.dim_at(k - 1));
        let chunk =
            |v: &'_ [Rational], i: usize| -> Vec<Rational> { v[i * low..(i + 1) * low].to_vec() };
        let nz = |v: &[Rational]| v.iter().any(|c| !c.is_zero());
        let mut prod: Vec<Vec<Rational>> = vec![vec![Rational::zero(); low]; 2 * d - 1];
        for i in 0..d {
            let ai = chunk(a, i);
            if !nz(&ai) {
                continue;
            }
            for j in 0..d {
                let bj = chunk(b, j);
                if !nz(&bj) {
                    continue;
                }
                let c = self.mul_at(k - 1, &ai, &bj);
                for (t, v) in c.into_iter().enumerate() {
                    prod[i + j][t] += v;
                }
            }
        }
        for t in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[t]);
            if !nz(&c) {
                continue;
            }
            for s in 0..d {
                let m = &lvl.modulus[s].0;
                if !nz(m) {
                    continue;
                }
                let sub = self.mul_at(k - 1, &c, m);
                for (idx, v) in sub.into_iter().enumerate() {
                    prod[t - d + s][idx] -= v;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    /// Inverse, or a splitting of some modulus when `a` is a zero divisor.
    /// Panics on the zero element.
    pub fn inv(&self, a: &Elem) -> TResult<Elem> {
        assert!(!a.is_zero(), "inverse of zero in an algebraic tower");
        Ok(Elem(self.inv_at(self.depth(), &a.0)?))
    }

    fn inv_at(&self, k: usize, a: &[Rational]) -> TResult<Vec<Rational>> {
        if k == 0 {
            return Ok(vec![a[0].recip()]);
        }
        let lower = self.prefix(k - 1);
        let lvl = &self.levels[k - 1];
        let low = lower.dim();
        let apoly: Vec<Elem> = a.chunks(low).map(|c| Elem(c.to_vec())).collect();
        // Extended Euclid over the lower tower: s * a ≡ g (mod modulus).
        let (g, s) = lower.poly_gcdex(&apoly, &lvl.modulus)?;
        if g.len() > 1 {
            return Err(Split {
                level: k,
                factor: g,
            });
        }
        // g is the constant 1 (monic of degree 0).
        let mut out = vec![Rational::zero(); lvl.dim];
        let s = lower.poly_rem(&s, &lvl.modulus)?;
        for (i, c) in s.iter().enumerate() {
            out[i * low..(i + 1) * low].clone_from_slice(&c.0);
        }
        Ok(out)
    }

    /// `Ok(true)` for units, `Ok(false)` for zero.
    pub fn is_unit(&self, a: &Elem) -> TResult<bool> {
        if a.is_zero() {
            return Ok(false);
        }
        self.inv(a).map(|_| true)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> TResult<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    // Univariate polynomials over the tower, constant term first.

    pub fn poly_trim(&self, mut p: Vec<Elem>) -> Vec<Elem> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    /// Trim, then make sure the leading coefficient is a unit.
    fn poly_settle(&self, p: Vec<Elem>) -> TResult<Vec<Elem>> {
        let p = self.poly_trim(p);
        if let Some(l) = p.last() {
            self.inv(l)?;
        }
        Ok(p)
    }

    pub fn poly_monic(&self, p: &[Elem]) -> TResult<Vec<Elem>> {
        let p = self.poly_settle(p.to_vec())?;
        match p.last() {
            None => Ok(p),
            Some(l) => {
                let inv = self.inv(l)?;
                Ok(p.iter().map(|c| self.mul(c, &inv)).collect())
            }
        }
    }

    pub fn poly_add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.poly_trim(
            (0..n)
                .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let n = a.len().max(b.len());
        let z = self.zero();
        self.poly_trim(
            (0..n)
                .map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn poly_mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
        }
        self.poly_trim(out)
    }

    pub fn poly_derivative(&self, a: &[Elem]) -> Vec<Elem> {
        self.poly_trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, &Rational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    pub fn poly_eval(&self, a: &[Elem], x: &Elem) -> Elem {
        a.iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    pub fn poly_divrem(&self, a: &[Elem], b: &[Elem]) -> TResult<(Vec<Elem>, Vec<Elem>)> {
        let b = self.poly_settle(b.to_vec())?;
        assert!(!b.is_empty(), "polynomial division by zero");
        let db = b.len() - 1;
        let inv = self.inv(b.last().unwrap())?;
        let mut r = self.poly_trim(a.to_vec());
        if r.len() <= db {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let c = self.mul(&r[k], &inv);
            if !c.is_zero() {
                for (t, bc) in b.iter().enumerate() {
                    let idx = k - db + t;
                    r[idx] = self.sub(&r[idx], &self.mul(&c, bc));
                }
            }
            q[k - db] = c;
            r.pop();
        }
        Ok((self.poly_trim(q), self.poly_trim(r)))
    }

    pub fn poly_rem(&self, a: &[Elem], b: &[Elem]) -> TResult<Vec<Elem>> {
        Ok(self.poly_divrem(a, b)?.1)
    }

    /// Exact quotient by a divisor.
    pub fn poly_div(&self, a: &[Elem], b: &[Elem]) -> TResult<Vec<Elem>> {
        let (q, r) = self.poly_divrem(a, b)?;
        debug_assert!(r.is_empty(), "inexact polynomial division in tower");
        Ok(q)
    }

    /// Monic gcd `g` and `s` with `s a ≡ g (mod b)`.
    pub fn poly_gcdex(&self, a: &[Elem], b: &[Elem]) -> TResult<(Vec<Elem>, Vec<Elem>)> {
        let mut r0 = self.poly_settle(b.to_vec())?;
        let mut r1 = self.poly_settle(a.to_vec())?;
        let mut s0: Vec<Elem> = Vec::new();
        let mut s1: Vec<Elem> = vec![self.one()];
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1)?;
            let r = self.poly_settle(r)?;
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let inv = self.inv(r0.last().expect("gcd of zero polynomials"))?;
        let g = r0.iter().map(|c| self.mul(c, &inv)).collect();
        let s = s0.iter().map(|c| self.mul(c, &inv)).collect();
        Ok((g, self.poly_trim(s)))
    }

    pub fn poly_gcd(&self, a: &[Elem], b: &[Elem]) -> TResult<Vec<Elem>> {
        let a = self.poly_settle(a.to_vec())?;
        let b = self.poly_settle(b.to_vec())?;
        if a.is_empty() {
            return self.poly_monic(&b);
        }
        if b.is_empty() {
            return self.poly_monic(&a);
        }
        Ok(self.poly_gcdex(&a, &b)?.0)
    }

    /// Yun's squarefree decomposition of a polynomial with unit leading
    /// coefficient: monic factors with their multiplicities.
    pub fn poly_squarefree(&self, f: &[Elem]) -> TResult<Vec<(Vec<Elem>, usize)>> {
        let f = self.poly_monic(f)?;
        let mut out = Vec::new();
        if f.len() <= 1 {
            return Ok(out);
        }
        let df = self.poly_derivative(&f);
        let c = self.poly_gcd(&f, &df)?;
        let mut w = self.poly_div(&f, &c)?;
        let mut y = self.poly_div(&df, &c)?;
        let mut z = self.poly_sub(&y, &self.poly_derivative(&w));
        let mut i = 1;
        while w.len() > 1 {
            let g = if z.is_empty() {
                self.poly_monic(&w)?
            } else {
                self.poly_gcd(&w, &z)?
            };
            if g.len() > 1 {
                out.push((g.clone(), i));
            }
            w = self.poly_div(&w, &g)?;
            y = self.poly_div(&z, &g)?;
            z = self.poly_sub(&y, &self.poly_derivative(&w));
            i += 1;
        }
        Ok(out)
    }

    pub fn format_elem(&self, e: &Elem) -> String {
        let mut parts = Vec::new();
        let names: Vec<String> = (1..=self.depth()).map(|k| format!("a{k}")).collect();
        for (idx, c) in e.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // Decode the mixed-radix index into exponents of a1..ak.
            let mut rest = idx;
            let mut mono = Vec::new();
            for (k, lvl) in self.levels.iter().enumerate() {
                let ex = rest % lvl.degree;
                rest /= lvl.degree;
                if ex == 1 {
                    mono.push(names[k].clone());
                } else if ex > 1 {
                    mono.push(format!("{}^{}", names[k], ex));
                }
            }
            let cs = format_rational(c);
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{}*{}", cs, mono.join("*")),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            format!("({})", parts.join("+").replace("+-", "-"))
        }
    }

    /// Minimal polynomials of the levels, e.g. `a1^2-2`, `a2^3-a1`.
    pub fn describe(&self) -> Vec<String> {
        (1..=self.depth())
            .map(|k| {
                let lower = self.prefix(k - 1);
                let m = &self.levels[k - 1].modulus;
                let var = format!("a{k}");
                let mut terms = Vec::new();
                for (i, c) in m.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = lower.format_elem(c);
                    let mono = match i {
                        0 => String::new(),
                        1 => var.clone(),
                        _ => format!("{var}^{i}"),
                    };
                    terms.push(match (mono.is_empty(), cs.as_str()) {
                        (true, _) => cs,
                        (false, "1") => mono,
                        (false, "-1") => format!("-{mono}"),
                        _ => format!("{cs}*{mono}"),
                    });
                }
                terms.join("+").replace("+-", "-")
            })
            .collect()
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.describe().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn q(t: &Tower, n: i64) -> Elem {
        t.from_i64(n)
    }

    #[test]
    fn sqrt2_arithmetic() {
        let base = Tower::base();
        let t = base.adjoin(1, vec![q(&base, -2), q(&base, 0), q(&base, 1)]);
        let a = t.generator(1);
        assert_eq!(t.mul(&a, &a), q(&t, 2));
        // (1 + a)^{-1} = a - 1
        let x = t.add(&q(&t, 1), &a);
        let inv = t.inv(&x).unwrap();
        assert_eq!(inv, t.sub(&a, &q(&t, 1)));
        assert_eq!(t.describe(), vec!["a1^2-2"]);
        assert_eq!(t.format_elem(&t.scale(&a, &rat(-1, 2))), "-1/2*a1");
    }

    #[test]
    fn two_level_tower() {
        // a1^2 = 2, a2^2 = a1: a2 is a fourth root of 2.
        let base = Tower::base();
        let t1 = base.adjoin(1, vec![q(&base, -2), q(&base, 0), q(&base, 1)]);
        let t2 = t1.adjoin(2, vec![t1.neg(&t1.generator(1)), t1.zero(), t1.one()]);
        let b = t2.generator(2);
        assert_eq!(t2.pow(&b, 4), q(&t2, 2));
        assert_eq!(t2.dim(), 4);
        let inv = t2.inv(&b).unwrap();
        assert_eq!(t2.mul(&inv, &b), t2.one());
        assert_eq!(t2.lift(&t1.generator(1)), t2.pow(&b, 2));
    }

    #[test]
    fn zero_divisor_splits_modulus() {
        // a^2 - 1 is reducible: a - 1 is a zero divisor.
        let base = Tower::base();
        let t = base.adjoin(1, vec![q(&base, -1), q(&base, 0), q(&base, 1)]);
        let z = t.sub(&t.generator(1), &q(&t, 1));
        let err = t.inv(&z).unwrap_err();
        assert_eq!(err.level, 1);
        assert_eq!(err.factor.len(), 2);
        assert_eq!(err.factor[0].as_rational(), Some(&int(-1)));
    }

    #[test]
    fn squarefree_over_extension() {
        // (T - a)^2 (T + 1) over Q(sqrt 2).
        let base = Tower::base();
        let t = base.adjoin(1, vec![q(&base, -2), q(&base, 0), q(&base, 1)]);
        let a = t.generator(1);
        let lin = vec![t.neg(&a), t.one()];
        let f = t.poly_mul(&t.poly_mul(&lin, &lin), &[q(&t, 1), q(&t, 1)]);
        let dec = t.poly_squarefree(&f).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (vec![q(&t, 1), q(&t, 1)], 1));
        assert_eq!(dec[1], (lin, 2));
    }
}
