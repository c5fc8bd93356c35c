//! Bivariate polynomials and truncated power series over an algebraic tower.

use std::collections::BTreeMap;

use crate::algebra::tower::{Elem, TResult, Tower};
use crate::algebra::{Poly, Rational};

/// Sparse polynomial in `X`, `Y` with tower coefficients.
#[derive(Debug, Clone)]
pub struct TPoly {
    pub terms: BTreeMap<(u64, u64), Elem>,
}

impl TPoly {
    pub fn from_poly(tower: &Tower, p: &Poly) -> TPoly {
        TPoly {
            terms: p
                .terms()
                .map(|(&(i, j), c)| ((i as u64, j as u64), tower.from_rational(c.clone())))
                .collect(),
        }
    }

    pub fn lift(&self, tower: &Tower) -> TPoly {
        TPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, tower.lift(c)))
                .collect(),
        }
    }

    /// Exponents of coefficients that are not identically zero.
    pub fn support(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&e, _)| e)
    }

    pub fn coeff(&self, tower: &Tower, i: u64, j: u64) -> Elem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| tower.zero())
    }

    pub fn degree_y(&self) -> u64 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn derivative_y(&self, tower: &Tower) -> TPoly {
        TPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, j), c)| j > 0 && !c.is_zero())
                .map(|(&(i, j), c)| {
                    (
                        (i, j - 1),
                        tower.scale(c, &Rational::from_integer((j as i64).into())),
                    )
                })
                .collect(),
        }
    }

    /// `F(c1 X^q, X^m (c2 + Y)) / X^l`, with the division exact.
    pub fn substitute(&self, tower: &Tower, c1: &Elem, q: u64, c2: &Elem, m: u64, l: u64) -> TPoly {
        let dy = self.degree_y() as usize;
        // Binomial rows (c2 + Y)^j.
        let mut c2pow = vec![tower.one()];
        for k in 0..dy {
            c2pow.push(tower.mul(&c2pow[k], c2));
        }
        let mut binom = vec![vec![1u64]];
        for j in 1..=dy {
            let prev = &binom[j - 1];
            let mut row = vec![1u64; j + 1];
            for t in 1..j {
                row[t] = prev[t - 1] + prev[t];
            }
            binom.push(row);
        }
        let mut c1pow: BTreeMap<u64, Elem> = BTreeMap::new();
        let mut out: BTreeMap<(u64, u64), Elem> = BTreeMap::new();
        for (&(i, j), a) in &self.terms {
            if a.is_zero() {
                continue;
            }
            let p = c1pow.entry(i).or_insert_with(|| tower.pow(c1, i)).clone();
            let base = tower.mul(a, &p);
            let xexp = q * i + m * j - l;
            for t in 0..=j as usize {
                let coef = tower.mul(&base, &c2pow[j as usize - t]);
                let coef = tower.scale(&coef, &Rational::from_integer(binom[j as usize][t].into()));
                let slot = out.entry((xexp, t as u64)).or_insert_with(|| tower.zero());
                *slot = tower.add(slot, &coef);
            }
        }
        out.retain(|_, c| !c.is_zero());
        TPoly { terms: out }
    }

    /// Rows `c_j(X)` truncated below `X^t`, as dense series.
    pub fn rows(&self, tower: &Tower, t: usize) -> Vec<Vec<Elem>> {
        let dy = self.degree_y() as usize;
        let mut rows = vec![vec![tower.zero(); t]; dy + 1];
        for (&(i, j), c) in &self.terms {
            if (i as usize) < t {
                rows[j as usize][i as usize] = c.clone();
            }
        }
        rows
    }
}

pub fn series_mul(tower: &Tower, a: &[Elem], b: &[Elem], t: usize) -> Vec<Elem> {
    let mut out = vec![tower.zero(); t];
    for (i, x) in a.iter().enumerate().take(t) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(t - i) {
            if !y.is_zero() {
                out[i + j] = tower.add(&out[i + j], &tower.mul(x, y));
            }
        }
    }
    out
}

/// Inverse of a series with unit constant term, modulo `X^t`.
pub fn series_inv(tower: &Tower, a: &[Elem], t: usize) -> TResult<Vec<Elem>> {
    let c0 = tower.inv(&a[0])?;
    let mut out = vec![tower.zero(); t];
    out[0] = c0.clone();
    for k in 1..t {
        let mut acc = tower.zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() && !out[k - i].is_zero() {
                acc = tower.add(&acc, &tower.mul(&a[i], &out[k - i]));
            }
        }
        out[k] = tower.neg(&tower.mul(&acc, &c0));
    }
    Ok(out)
}

/// `Σ_j rows[j] · y^j` modulo `X^t` by Horner's rule.
pub fn horner(tower: &Tower, rows: &[Vec<Elem>], y: &[Elem], t: usize) -> Vec<Elem> {
    let mut acc = vec![tower.zero(); t];
    for row in rows.iter().rev() {
        acc = series_mul(tower, &acc, y, t);
        for (k, c) in row.iter().enumerate().take(t) {
            if !c.is_zero() {
                acc[k] = tower.add(&acc[k], c);
            }
        }
    }
    acc
}

/// Power series root `Y(X)` with `Y(0) = 0` of `F(X, Y)`, modulo `X^t`,
/// for `F(0,0) = 0` and `F_Y(0,0)` a unit.
pub fn newton_root(tower: &Tower, f: &TPoly, t: usize) -> TResult<Vec<Elem>> {
    let fy = f.derivative_y(tower);
    let rows_f = f.rows(tower, t);
    let rows_fy = fy.rows(tower, t);
    let mut y = vec![tower.zero(); t];
    let mut prec = 1;
    while prec < t {
        prec = (2 * prec).min(t);
        let r = horner(tower, &rows_f[..], &y[..prec], prec);
        let trunc_rows: Vec<Vec<Elem>> = rows_fy.iter().map(|row| row[..prec].to_vec()).collect();
        let d = horner(tower, &trunc_rows, &y[..prec], prec);
        let dinv = series_inv(tower, &d, prec)?;
        let step = series_mul(tower, &r, &dinv, prec);
        for k in 0..prec {
            y[k] = tower.sub(&y[k], &step[k]);
        }
    }
    Ok(y)
}

/// Index of the first nonzero coefficient, provided it is a unit; `None`
/// when all coefficients vanish.
pub fn series_order(tower: &Tower, s: &[Elem]) -> TResult<Option<usize>> {
    for (k, c) in s.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        tower.inv(c)?;
        return Ok(Some(k));
    }
    Ok(None)
}
