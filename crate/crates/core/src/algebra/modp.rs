//! Arithmetic modulo word-size primes: resultant orders by evaluation and
//! interpolation, and images of bivariate gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bivariate::Poly;
use super::extnat::ExtNat;
use super::rational::Rational;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let f = Field::new(n);
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Two-adic order available in every prime from [`primes`].
pub const TWO_ADICITY: u32 = 24;

/// Primes `c·2^24 + 1` below `2^62`, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut c = ((1u64 << 62) - 1) >> TWO_ADICITY;
    std::iter::from_fn(move || loop {
        let n = (c << TWO_ADICITY) + 1;
        c -= 1;
        if is_prime(n) {
            return Some(n);
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero modulo {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        r % self.p
    }

    pub fn from_bigint(self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Image of a rational, or `None` if `p` divides the denominator.
    pub fn from_rational(self, q: &Rational) -> Option<u64> {
        let d = self.from_bigint(q.denom());
        (d != 0).then(|| self.mul(self.from_bigint(q.numer()), self.inv(d)))
    }

    /// A primitive `2^k`-th root of unity, if `2^k` divides `p - 1`.
    pub fn root_of_unity(self, k: u32) -> Option<u64> {
        let s = (self.p - 1).trailing_zeros();
        if k > s {
            return None;
        }
        let odd = (self.p - 1) >> s;
        (2..)
            .map(|a| self.pow(a, odd))
            .find(|&w| self.pow(w, 1 << (s - 1)) != 1)
            .map(|w| self.pow(w, 1 << (s - k)))
    }

    /// In-place transform `a_i ↦ Σ_j a_j ω^(ij)` for `ω` of order `a.len()`.
    pub fn ntt(self, a: &mut [u64], omega: u64) {
        let n = a.len();
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let w = self.pow(omega, (n / len) as u64);
            for start in (0..n).step_by(len) {
                let mut t = 1u64;
                for k in 0..len / 2 {
                    let u = a[start + k];
                    let v = self.mul(a[start + k + len / 2], t);
                    a[start + k] = self.add(u, v);
                    a[start + k + len / 2] = self.sub(u, v);
                    t = self.mul(t, w);
                }
            }
            len <<= 1;
        }
    }

    pub fn symmetric(self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }
}

/// Dense univariate polynomials mod p, low degree first, no trailing zeros.
pub mod upoly {
    use super::Field;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn eval(f: Field, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn rem(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = f.inv(b[db]);
        while r.len() > db {
            let k = r.len() - 1;
            let c = f.mul(r[k], inv);
            if c != 0 {
                for (t, &bc) in b.iter().enumerate() {
                    let idx = k - db + t;
                    r[idx] = f.sub(r[idx], f.mul(c, bc));
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn div(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        if r.len() <= db {
            return Vec::new();
        }
        let inv = f.inv(b[db]);
        let mut q = vec![0; r.len() - db];
        while r.len() > db {
            let k = r.len() - 1;
            let c = f.mul(r[k], inv);
            if c != 0 {
                for (t, &bc) in b.iter().enumerate() {
                    let idx = k - db + t;
                    r[idx] = f.sub(r[idx], f.mul(c, bc));
                }
            }
            q[k - db] = c;
            r.pop();
        }
        trim(q)
    }

    pub fn monic(f: Field, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = f.inv(l);
                a.iter().map(|&c| f.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(f: Field, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        monic(f, &a)
    }

    /// Resultant of two polynomials of the given formal degrees.
    pub fn resultant(f: Field, a: &[u64], b: &[u64]) -> u64 {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let mut acc = 1u64;
        loop {
            let (da, db) = (a.len() - 1, b.len() - 1);
            if db == 0 {
                return f.mul(acc, f.pow(b[0], da as u64));
            }
            if da == 0 {
                return f.mul(acc, f.pow(a[0], db as u64));
            }
            if da < db {
                if da % 2 == 1 && db % 2 == 1 {
                    acc = f.neg(acc);
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = rem(f, &a, &b);
            if r.is_empty() {
                return 0;
            }
            let dr = r.len() - 1;
            // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
            if da % 2 == 1 && db % 2 == 1 {
                acc = f.neg(acc);
            }
            acc = f.mul(acc, f.pow(b[db], (da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// Coefficients of the polynomial of degree < n through `(xs[k], ys[k])`.
    pub fn interpolate(f: Field, xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let n = xs.len();
        let mut dd = ys.to_vec();
        let consecutive = xs.windows(2).all(|w| w[1] == w[0] + 1);
        for level in 1..n {
            let level_inv = if consecutive {
                f.inv(level as u64 % f.p)
            } else {
                0
            };
            for k in (level..n).rev() {
                let num = f.sub(dd[k], dd[k - 1]);
                let inv = if consecutive {
                    level_inv
                } else {
                    f.inv(f.sub(xs[k], xs[k - level]))
                };
                dd[k] = f.mul(num, inv);
            }
        }
        // Horner on the Newton form.
        let mut out = vec![0u64; n];
        for (len, k) in (0..n).rev().enumerate() {
            // out <- out * (x - xs[k]) + dd[k]
            let shift = xs[k];
            let mut next = vec![0u64; len + 1];
            for t in 0..len {
                next[t + 1] = f.add(next[t + 1], out[t]);
                next[t] = f.sub(next[t], f.mul(out[t], shift));
            }
            next[0] = f.add(next[0], dd[k]);
            out[..=len].copy_from_slice(&next);
        }
        trim(out)
    }
}

/// Dense bivariate polynomial mod p, `rows[j][i]` the coefficient of `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModBi {
    pub field: Field,
    pub rows: Vec<Vec<u64>>,
}

impl ModBi {
    pub fn reduce(poly: &Poly, field: Field) -> Option<Self> {
        let dy = poly.degree_y().map_or(0, |d| d as usize + 1);
        let mut rows = vec![Vec::new(); dy];
        for (&(i, j), c) in poly.terms() {
            let row: &mut Vec<u64> = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, 0);
            }
            row[i as usize] = field.from_rational(c)?;
        }
        let mut out = ModBi { field, rows };
        out.normalize();
        Some(out)
    }

    fn normalize(&mut self) {
        for row in self.rows.iter_mut() {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_empty())
            .map(|(j, r)| j + r.len() - 1)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_y(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.rows
            .get(j)
            .and_then(|r| r.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Polynomial in `y` obtained by fixing `x`.
    pub fn at_x(&self, x: u64) -> Vec<u64> {
        upoly::trim(
            self.rows
                .iter()
                .map(|r| upoly::eval(self.field, r, x))
                .collect(),
        )
    }

    /// `f(0, y)`.
    pub fn x0(&self) -> Vec<u64> {
        upoly::trim(
            self.rows
                .iter()
                .map(|r| r.first().copied().unwrap_or(0))
                .collect(),
        )
    }

    /// `f(m11 x + m12 y, m21 x + m22 y)`.
    pub fn linear_change(&self, m: [i64; 4]) -> ModBi {
        let f = self.field;
        let [m11, m12, m21, m22] = m.map(|v| f.from_i64(v));
        let d = self.total_degree();
        // powers[k][t]: coefficient of x^(k-t) y^t in L^k.
        let lin_powers = |a: u64, b: u64| {
            let mut pw: Vec<Vec<u64>> = vec![vec![1]];
            for k in 0..d {
                let prev = &pw[k];
                let mut next = vec![0u64; k + 2];
                for (t, &c) in prev.iter().enumerate() {
                    next[t] = f.add(next[t], f.mul(c, a));
                    next[t + 1] = f.add(next[t + 1], f.mul(c, b));
                }
                pw.push(next);
            }
            pw
        };
        let p1 = lin_powers(m11, m12);
        let p2 = lin_powers(m21, m22);
        let mut out = vec![vec![0u64; d + 1]; d + 1];
        for (j, row) in self.rows.iter().enumerate() {
            for (i, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (a, b) = (&p1[i], &p2[j]);
                for (s, &ca) in a.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    let cca = f.mul(c, ca);
                    for (t, &cb) in b.iter().enumerate() {
                        // y-exponent s + t, x-exponent (i - s) + (j - t)
                        let yj = s + t;
                        let xi = i + j - yj;
                        out[yj][xi] = f.add(out[yj][xi], f.mul(cca, cb));
                    }
                }
            }
        }
        let mut res = ModBi {
            field: f,
            rows: out,
        };
        res.normalize();
        res
    }

    pub fn derivative_y(&self) -> ModBi {
        let f = self.field;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, r)| r.iter().map(|&c| f.mul(c, j as u64 % f.p)).collect())
            .collect();
        let mut res = ModBi { field: f, rows };
        res.normalize();
        res
    }

    /// True when the `y`-degree equals the total degree, so the leading
    /// coefficient in `y` is a nonzero constant.
    pub fn y_regular(&self) -> bool {
        !self.is_zero()
            && self.rows.len() == self.total_degree() + 1
            && self.rows[self.degree_y()][0] != 0
    }
}

fn strip_low_zeros(v: &[u64]) -> Vec<u64> {
    let k = v.iter().position(|&c| c != 0).unwrap_or(v.len());
    v[k..].to_vec()
}

/// Order at `x = 0` of `Res_y(a, b)` for a pair already in regular position.
///
/// Regular position: both `y`-regular and `a(0,y)`, `b(0,y)` nonzero without
/// common roots besides `y = 0`. Returns `None` when the pair is not regular.
/// The value bounds the true intersection multiplicity at the origin from
/// above, and equals it unless `p` divides the lowest resultant coefficient.
pub fn resultant_order(a: &ModBi, b: &ModBi) -> Option<ExtNat> {
    let f = a.field;
    if !a.y_regular() || !b.y_regular() {
        return None;
    }
    let (a0, b0) = (a.x0(), b.x0());
    if a0.is_empty() || b0.is_empty() {
        return None;
    }
    if upoly::resultant(f, &strip_low_zeros(&a0), &strip_low_zeros(&b0)) == 0 {
        return None;
    }
    let d = a.total_degree() * b.total_degree();
    let xs: Vec<u64> = (1..=d as u64 + 1).collect();
    let ys: Vec<u64> = xs
        .iter()
        .map(|&x| upoly::resultant(f, &a.at_x(x), &b.at_x(x)))
        .collect();
    let coeffs = upoly::interpolate(f, &xs, &ys);
    Some(match coeffs.iter().position(|&c| c != 0) {
        Some(k) => ExtNat::Finite(k as u64),
        None => ExtNat::Infinite,
    })
}

/// Image mod p of the monic (in `y`) gcd of a `y`-regular `a` and any `b`.
/// Returns `None` for an unlucky prime.
fn gcd_image(a: &ModBi, b: &ModBi) -> Option<Vec<Vec<u64>>> {
    let f = a.field;
    let bound = a.total_degree();
    let mut xs = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    let mut deg = usize::MAX;
    let mut x = 1u64;
    while xs.len() < bound + 1 {
        let g = upoly::gcd(f, &a.at_x(x), &b.at_x(x));
        let dg = g.len() - 1;
        if dg < deg {
            deg = dg;
            xs.clear();
            images.clear();
        }
        if dg == deg {
            xs.push(x);
            images.push(g);
        }
        x += 1;
        if x > 4 * bound as u64 + 64 {
            return None;
        }
    }
    if deg == 0 {
        return Some(vec![vec![1]]);
    }
    let mut rows = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        let ys: Vec<u64> = images.iter().map(|g| g[k]).collect();
        rows.push(upoly::interpolate(f, &xs, &ys));
    }
    Some(rows)
}

fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    if !(r1.gcd(&s1)).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Gcd of a `y`-regular rational polynomial `a` and a nonzero `b`, monic in `y`.
///
/// Images modulo successive primes are combined by the Chinese remainder
/// theorem; each rational reconstruction is accepted only after exact
/// division of both inputs.
pub fn gcd_y_regular(a: &Poly, b: &Poly) -> Poly {
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    let mut deg = usize::MAX;
    for p in primes().take(200) {
        let field = Field::new(p);
        let (Some(ma), Some(mb)) = (ModBi::reduce(a, field), ModBi::reduce(b, field)) else {
            continue;
        };
        if !ma.y_regular()
            || mb.is_zero()
            || ma.total_degree() as u32 != a.total_degree().unwrap_or(0)
        {
            continue;
        }
        let Some(img) = gcd_image(&ma, &mb) else {
            continue;
        };
        let dg = img.len() - 1;
        if dg == 0 {
            return Poly::one();
        }
        if dg > deg {
            continue;
        }
        if dg < deg {
            deg = dg;
            modulus = BigInt::one();
            acc = img.iter().map(|r| vec![BigInt::zero(); r.len()]).collect();
        }
        // CRT step.
        let pb = BigInt::from(p);
        let inv = BigInt::from(field.inv(field.from_bigint(&modulus)));
        for (k, row) in img.iter().enumerate() {
            if acc[k].len() < row.len() {
                acc[k].resize(row.len(), BigInt::zero());
            }
            for i in 0..acc[k].len() {
                let r = BigInt::from(row.get(i).copied().unwrap_or(0));
                let old = &acc[k][i];
                let t = ((r - old) * &inv).mod_floor(&pb);
                acc[k][i] = old + &modulus * t;
            }
        }
        modulus *= &pb;
        let mut cand = Poly::zero();
        let mut ok = true;
        'rows: for (k, row) in acc.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                match rational_reconstruction(c, &modulus) {
                    Some(q) => cand = &cand + &Poly::monomial(q, i as u32, k as u32),
                    None => {
                        ok = false;
                        break 'rows;
                    }
                }
            }
        }
        if ok && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
            return cand;
        }
    }
    panic!("modular gcd did not stabilise within 200 primes");
}

impl ModBi {
    pub fn from_rows(field: Field, rows: Vec<Vec<u64>>) -> Self {
        let mut out = ModBi { field, rows };
        out.normalize();
        out
    }

    pub fn constant(field: Field, c: u64) -> Self {
        ModBi::from_rows(field, vec![vec![c]])
    }

    pub fn derivative_x(&self) -> ModBi {
        let f = self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, &c)| f.mul(c, i as u64 % f.p))
                    .collect()
            })
            .collect();
        ModBi::from_rows(f, rows)
    }

    pub fn scale(&self, c: u64) -> ModBi {
        let f = self.field;
        ModBi::from_rows(
            f,
            self.rows
                .iter()
                .map(|r| r.iter().map(|&a| f.mul(a, c)).collect())
                .collect(),
        )
    }

    pub fn sub(&self, other: &ModBi) -> ModBi {
        let f = self.field;
        let n = self.rows.len().max(other.rows.len());
        let mut rows = vec![Vec::new(); n];
        for (j, row) in rows.iter_mut().enumerate() {
            let a = self.rows.get(j).map_or(&[][..], |r| &r[..]);
            let b = other.rows.get(j).map_or(&[][..], |r| &r[..]);
            *row = (0..a.len().max(b.len()))
                .map(|i| {
                    f.sub(
                        a.get(i).copied().unwrap_or(0),
                        b.get(i).copied().unwrap_or(0),
                    )
                })
                .collect();
        }
        ModBi::from_rows(f, rows)
    }

    pub fn mul(&self, other: &ModBi) -> ModBi {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return ModBi::from_rows(f, Vec::new());
        }
        let wa = self.rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let wb = other.rows.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut rows = vec![vec![0u64; wa + wb]; self.rows.len() + other.rows.len() - 1];
        for (ja, ra) in self.rows.iter().enumerate() {
            for (jb, rb) in other.rows.iter().enumerate() {
                let out = &mut rows[ja + jb];
                for (ia, &ca) in ra.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    for (ib, &cb) in rb.iter().enumerate() {
                        out[ia + ib] = f.add(out[ia + ib], f.mul(ca, cb));
                    }
                }
            }
        }
        ModBi::from_rows(f, rows)
    }

    pub fn pow(&self, e: u32) -> ModBi {
        self.pow_jet(e, usize::MAX)
    }

    /// Terms of total degree at most `deg`.
    pub fn jet(&self, deg: usize) -> ModBi {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(j, r)| {
                if j > deg {
                    Vec::new()
                } else {
                    r[..r.len().min(deg - j + 1)].to_vec()
                }
            })
            .collect();
        ModBi::from_rows(self.field, rows)
    }

    pub fn mul_jet(&self, other: &ModBi, deg: usize) -> ModBi {
        if deg == usize::MAX {
            return self.mul(other);
        }
        let f = self.field;
        let mut rows = vec![vec![0u64; deg + 1]; deg + 1];
        for (ja, ra) in self.rows.iter().enumerate().take(deg + 1) {
            for (jb, rb) in other.rows.iter().enumerate().take(deg + 1 - ja) {
                let out = &mut rows[ja + jb];
                let room = deg - ja - jb;
                for (ia, &ca) in ra.iter().enumerate().take(room + 1) {
                    if ca == 0 {
                        continue;
                    }
                    for (ib, &cb) in rb.iter().enumerate().take(room - ia + 1) {
                        out[ia + ib] = f.add(out[ia + ib], f.mul(ca, cb));
                    }
                }
            }
        }
        ModBi::from_rows(f, rows)
    }

    /// `self^e` modulo terms of total degree above `deg`.
    pub fn pow_jet(&self, mut e: u32, deg: usize) -> ModBi {
        let mut base = if deg == usize::MAX {
            self.clone()
        } else {
            self.jet(deg)
        };
        let mut acc = ModBi::constant(self.field, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_jet(&base, deg);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_jet(&base, deg);
            }
        }
        acc
    }

    /// Coefficient of `x^k` as a polynomial in `y` of formal length `len`.
    fn x_coeff(&self, k: usize, len: usize) -> Vec<u64> {
        (0..len).map(|j| self.coeff(k, j)).collect()
    }
}

/// Distinguished polynomial `y^d + Σ_{k≥1} w_k(y) x^k` of the Weierstrass
/// factorization of `a` over `F_p[[x]]`, as `w_1..w_{prec-1}`, where `d` is
/// the order of `a(0, y)`.
fn weierstrass(a: &ModBi, d: usize, prec: usize) -> Vec<Vec<u64>> {
    let f = a.field;
    let len = a.degree_y() + 1;
    let a0 = a.x_coeff(0, len);
    let u0: Vec<u64> = a0[d..].to_vec();
    // s = 1/u0 mod y^d
    let inv0 = f.inv(u0[0]);
    let mut s = vec![0u64; d];
    for k in 0..d {
        let mut acc = if k == 0 { 1 } else { 0 };
        for i in 1..=k.min(u0.len() - 1) {
            acc = f.sub(acc, f.mul(u0[i], s[k - i]));
        }
        s[k] = f.mul(acc, inv0);
    }
    let mut w: Vec<Vec<u64>> = vec![Vec::new()];
    let mut u: Vec<Vec<u64>> = vec![u0.clone()];
    for k in 1..prec {
        let mut e = a.x_coeff(k, len);
        for i in 1..k {
            let (wi, uj) = (&w[i], &u[k - i]);
            for (p, &cw) in wi.iter().enumerate() {
                if cw == 0 {
                    continue;
                }
                for (q, &cu) in uj.iter().enumerate() {
                    e[p + q] = f.sub(e[p + q], f.mul(cw, cu));
                }
            }
        }
        let mut wk = vec![0u64; d];
        for (p, &ce) in e.iter().enumerate().take(d) {
            if ce == 0 {
                continue;
            }
            for q in 0..d - p {
                wk[p + q] = f.add(wk[p + q], f.mul(ce, s[q]));
            }
        }
        for (p, &cw) in wk.iter().enumerate() {
            if cw == 0 {
                continue;
            }
            for (q, &cu) in u0.iter().enumerate() {
                e[p + q] = f.sub(e[p + q], f.mul(cw, cu));
            }
        }
        debug_assert!(e[..d].iter().all(|&c| c == 0));
        u.push(e[d..].to_vec());
        w.push(wk);
    }
    w
}

/// `y^d + Σ w_k(y) x^k` at a point `x`.
fn eval_distinguished(f: Field, w: &[Vec<u64>], d: usize, x: u64) -> Vec<u64> {
    let mut out = vec![0u64; d + 1];
    out[d] = 1;
    let mut xp = 1u64;
    for wk in w.iter().skip(1) {
        xp = f.mul(xp, x);
        for (j, &c) in wk.iter().enumerate() {
            if c != 0 {
                out[j] = f.add(out[j], f.mul(c, xp));
            }
        }
    }
    out
}

/// Values of `y^d + Σ_k w_k(y) x^k` at `x = ω^i`, as polynomials in `y`.
fn transform_distinguished(
    f: Field,
    w: &[Vec<u64>],
    d: usize,
    len: usize,
    omega: u64,
) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; d + 1]; len];
    for j in 0..d {
        let mut col = vec![0u64; len];
        for (k, wk) in w.iter().enumerate() {
            col[k] = wk.get(j).copied().unwrap_or(0);
        }
        f.ntt(&mut col, omega);
        for (row, &c) in out.iter_mut().zip(&col) {
            row[j] = c;
        }
    }
    for row in out.iter_mut() {
        row[d] = 1;
    }
    out
}

/// Coefficients of `Res_y` of two distinguished polynomials, whose degree in
/// `x` is below `len`.
fn resultant_by_transform(
    f: Field,
    wa: &[Vec<u64>],
    da: usize,
    wb: &[Vec<u64>],
    db: usize,
    len: usize,
    omega: u64,
) -> Vec<u64> {
    let va = transform_distinguished(f, wa, da, len, omega);
    let vb = transform_distinguished(f, wb, db, len, omega);
    let mut ys: Vec<u64> = va
        .iter()
        .zip(&vb)
        .map(|(a, b)| upoly::resultant(f, a, b))
        .collect();
    f.ntt(&mut ys, f.inv(omega));
    let scale = f.inv(len as u64 % f.p);
    ys.iter().map(|&c| f.mul(c, scale)).collect()
}

/// Intersection multiplicity at the origin of the reductions of two germs,
/// from the resultant of their Weierstrass polynomials truncated in `x`.
///
/// Returns `None` when `x` divides either input. The value bounds the
/// intersection multiplicity of the rational lifts from above.
pub fn local_order(a: &ModBi, b: &ModBi) -> Option<ExtNat> {
    let f = a.field;
    let (a0, b0) = (a.x0(), b.x0());
    if a0.is_empty() || b0.is_empty() {
        return None;
    }
    let da = a0.iter().position(|&c| c != 0).unwrap();
    let db = b0.iter().position(|&c| c != 0).unwrap();
    if da == 0 || db == 0 {
        return Some(ExtNat::Finite(0));
    }
    let bound = a.total_degree() * b.total_degree();
    let mut prec = 16usize.max(da * db + 1);
    loop {
        let wa = weierstrass(a, da, prec);
        let wb = weierstrass(b, db, prec);
        let n = (da + db) * (prec - 1) + 1;
        let r = match f.root_of_unity(n.next_power_of_two().trailing_zeros()) {
            Some(omega) => {
                resultant_by_transform(f, &wa, da, &wb, db, n.next_power_of_two(), omega)
            }
            None => {
                let xs: Vec<u64> = (1..=n as u64).collect();
                let ys: Vec<u64> = xs
                    .iter()
                    .map(|&x| {
                        upoly::resultant(
                            f,
                            &eval_distinguished(f, &wa, da, x),
                            &eval_distinguished(f, &wb, db, x),
                        )
                    })
                    .collect();
                upoly::interpolate(f, &xs, &ys)
            }
        };
        if let Some(k) = r.iter().take(prec).position(|&c| c != 0) {
            return Some(ExtNat::Finite(k as u64));
        }
        if prec > bound {
            return Some(ExtNat::Infinite);
        }
        prec *= 2;
    }
}

/// Cheap squarefreeness test for a `y`-regular polynomial: the discriminant
/// modulo a prime is nonzero. `false` means "possibly not squarefree".
pub fn surely_squarefree(a: &Poly) -> bool {
    for p in primes().take(3) {
        let field = Field::new(p);
        let Some(ma) = ModBi::reduce(a, field) else {
            continue;
        };
        if !ma.y_regular() || ma.total_degree() as u32 != a.total_degree().unwrap_or(0) {
            continue;
        }
        if ma.degree_y() == 0 {
            return true;
        }
        let da = ma.derivative_y();
        let d = ma.total_degree() * da.total_degree().max(1);
        // Evaluate the discriminant at a few points; nonzero anywhere proves it.
        for x in 1..=(d as u64 + 1).min(64) {
            let r = upoly::resultant(field, &ma.at_x(x), &da.at_x(x));
            if r != 0 {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        crate::algebra::parse::parse_polynomial(s).unwrap()
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = primes().take(3).collect();
        assert!(ps.iter().all(|&q| is_prime(q) && q < (1 << 62)));
        assert!(is_prime((1 << 61) - 1));
        assert!(ps.iter().all(|&q| (q - 1) % (1 << TWO_ADICITY) == 0));
        assert!(!is_prime(1 << 40));
    }

    #[test]
    fn modular_resultant_matches_integer_one() {
        let f = Field::new(primes().next().unwrap());
        let a = [3u64, 0, 1, 2];
        let b = [5u64, 7];
        // Integer resultant from the subresultant route.
        let za = crate::algebra::UniPoly::new(a.iter().map(|&c| BigInt::from(c)).collect());
        let zb = crate::algebra::UniPoly::new(b.iter().map(|&c| BigInt::from(c)).collect());
        let expect = f.from_bigint(&za.resultant(&zb));
        assert_eq!(upoly::resultant(f, &a, &b), expect);
        assert_eq!(upoly::resultant(f, &b, &a), f.neg(expect));
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let f = Field::new(1_000_000_007);
        let poly = [0u64, 0, 5, 3, 0, 9];
        let xs: Vec<u64> = (1..=6).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| upoly::eval(f, &poly, x)).collect();
        assert_eq!(upoly::interpolate(f, &xs, &ys), poly.to_vec());
    }

    #[test]
    fn transform_inverts() {
        let f = Field::new(primes().next().unwrap());
        let w = f.root_of_unity(3).unwrap();
        assert_eq!(f.pow(w, 8), 1);
        assert_ne!(f.pow(w, 4), 1);
        let poly = [4u64, 0, 7, 1, 0, 0, 0, 0];
        let mut a = poly;
        f.ntt(&mut a, w);
        assert_eq!(a[3], upoly::eval(f, &poly, f.pow(w, 3)));
        f.ntt(&mut a, f.inv(w));
        let scale = f.inv(8);
        assert_eq!(a.map(|c| f.mul(c, scale)), poly);
    }

    #[test]
    fn cusp_meets_line_with_order_three() {
        let f = Field::new(primes().next().unwrap());
        let a = ModBi::reduce(&p("y^2-x^3"), f)
            .unwrap()
            .linear_change([1, 2, 3, 1]);
        let b = ModBi::reduce(&p("y"), f)
            .unwrap()
            .linear_change([1, 2, 3, 1]);
        assert_eq!(resultant_order(&a, &b), Some(ExtNat::Finite(3)));
        assert_eq!(local_order(&a, &b), Some(ExtNat::Finite(3)));
    }

    #[test]
    fn local_order_ignores_points_away_from_origin() {
        let f = Field::new(primes().next().unwrap());
        let m = [2, 1, -1, 3];
        let red = |s: &str| ModBi::reduce(&p(s), f).unwrap().linear_change(m);
        // Also meet at (1, 1) and elsewhere.
        assert_eq!(
            local_order(&red("y^2-x^3"), &red("y-x")),
            Some(ExtNat::Finite(2))
        );
        assert_eq!(
            local_order(&red("(y^2-x^3)*(1+x)"), &red("y^2-x^3")),
            Some(ExtNat::Infinite)
        );
        let a = red("y^3-x^7+x^5*y");
        assert_eq!(
            local_order(&a.derivative_x(), &a.derivative_y()),
            Some(ExtNat::Finite(12))
        );
        assert_eq!(
            red("x+y").pow(3),
            red("x+y").mul(&red("x+y")).mul(&red("x+y"))
        );
    }

    #[test]
    fn modular_gcd() {
        let g = p("y^3+x*y-3*x^2+1/2");
        let a = &g * &p("y^3-x+7");
        let b = &g * &p("y-x-2");
        assert_eq!(gcd_y_regular(&a, &b), g);
        assert_eq!(gcd_y_regular(&p("y^3-x^2+1"), &p("y+x")), Poly::one());
    }

    #[test]
    fn rational_reconstruction_small() {
        let m = BigInt::from(1_000_000_007u64);
        let u = (BigInt::from(-3) * BigInt::from(Field::new(1_000_000_007).inv(7))).mod_floor(&m);
        assert_eq!(
            rational_reconstruction(&u, &m),
            Some(Rational::new((-3).into(), 7.into()))
        );
    }
}
