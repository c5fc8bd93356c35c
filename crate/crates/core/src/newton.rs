//! Newton diagrams, their Minkowski semigroup and support functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{ExtNat, Poly, Rational};
use crate::error::{Error, Result};

/// Lower-left boundary of `conv(∪ (p + ℝ²₊))`, stored as its vertex chain.
///
/// `i` strictly increases and `j` strictly decreases along the chain; the
/// diagram continues with a vertical ray above the first vertex and a
/// horizontal ray right of the last one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct NewtonDiagram {
    vertices: Vec<(u64, u64)>,
}

#[derive(Deserialize)]
struct RawDiagram {
    vertices: Vec<(u64, u64)>,
}

impl TryFrom<RawDiagram> for NewtonDiagram {
    type Error = Error;
    fn try_from(raw: RawDiagram) -> Result<Self> {
        NewtonDiagram::from_vertices(raw.vertices)
    }
}

/// `Teis{a}{b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elementary {
    pub a: ExtNat,
    pub b: ExtNat,
}

/// `a/b` with `∞/b = ∞` and `a/∞ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Inclination {
    Finite(Rational),
    Infinite,
}

impl Inclination {
    pub fn of(a: ExtNat, b: ExtNat) -> Inclination {
        match (a, b) {
            (ExtNat::Infinite, _) => Inclination::Infinite,
            (_, ExtNat::Infinite) => Inclination::Finite(Rational::from_integer(0.into())),
            (ExtNat::Finite(a), ExtNat::Finite(b)) => {
                if b == 0 {
                    Inclination::Infinite
                } else {
                    Inclination::Finite(Rational::new(a.into(), b.into()))
                }
            }
        }
    }
}

impl fmt::Display for Inclination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inclination::Finite(q) => f.write_str(&crate::algebra::rational::format_rational(q)),
            Inclination::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Inclination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Elementary {
    pub fn new(a: ExtNat, b: ExtNat) -> Result<Self> {
        let zero = ExtNat::Finite(0);
        if (a == ExtNat::Infinite && b == ExtNat::Infinite) || (a == zero && b == zero) {
            return Err(Error::InvalidArgument(format!(
                "Teis{{{a}}}{{{b}}} is not an elementary diagram"
            )));
        }
        Ok(Elementary { a, b })
    }

    pub fn inclination(&self) -> Inclination {
        Inclination::of(self.a, self.b)
    }

    pub fn diagram(&self) -> NewtonDiagram {
        let vertices = match (self.a, self.b) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) if a > 0 && b > 0 => vec![(0, b), (a, 0)],
            (ExtNat::Finite(a), ExtNat::Finite(0)) => vec![(a, 0)],
            (ExtNat::Finite(0), ExtNat::Finite(b)) => vec![(0, b)],
            (ExtNat::Infinite, ExtNat::Finite(b)) => vec![(0, b)],
            (ExtNat::Finite(a), ExtNat::Infinite) => vec![(a, 0)],
            _ => vec![(0, 0)],
        };
        NewtonDiagram { vertices }
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Teis{{{}}}{{{}}}", self.a, self.b)
    }
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

impl NewtonDiagram {
    /// The diagram of a unit, `[(0,0)]`.
    pub fn unit() -> Self {
        NewtonDiagram {
            vertices: vec![(0, 0)],
        }
    }

    /// Validate a vertex chain.
    pub fn from_vertices(vertices: Vec<(u64, u64)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument(
                "a diagram needs at least one vertex".into(),
            ));
        }
        for w in vertices.windows(2) {
            if !(w[0].0 < w[1].0 && w[0].1 > w[1].1) {
                return Err(Error::InvalidArgument(format!(
                    "vertices {:?} and {:?} are out of order",
                    w[0], w[1]
                )));
            }
        }
        for w in vertices.windows(3) {
            if cross(w[0], w[1], w[2]) <= 0 {
                return Err(Error::InvalidArgument(format!(
                    "vertex {:?} is not a strict corner",
                    w[1]
                )));
            }
        }
        Ok(NewtonDiagram { vertices })
    }

    /// Diagram generated by a nonempty point set.
    pub fn of_points(points: impl IntoIterator<Item = (u64, u64)>) -> Option<Self> {
        let mut best: BTreeMap<u64, u64> = BTreeMap::new();
        for (i, j) in points {
            best.entry(i).and_modify(|b| *b = (*b).min(j)).or_insert(j);
        }
        let mut staircase: Vec<(u64, u64)> = Vec::new();
        for (i, j) in best {
            if staircase.last().is_none_or(|&(_, lj)| j < lj) {
                staircase.push((i, j));
            }
        }
        if staircase.is_empty() {
            return None;
        }
        let mut hull: Vec<(u64, u64)> = Vec::new();
        for p in staircase {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        Some(NewtonDiagram { vertices: hull })
    }

    /// Newton diagram of a nonzero polynomial.
    pub fn of_poly(f: &Poly) -> Result<Self> {
        Self::of_points(f.support().map(|(i, j)| (i as u64, j as u64))).ok_or(Error::ZeroPolynomial)
    }

    pub fn vertices(&self) -> &[(u64, u64)] {
        &self.vertices
    }

    pub fn is_unit(&self) -> bool {
        self.vertices == [(0, 0)]
    }

    /// `i` of the last vertex.
    pub fn width(&self) -> u64 {
        self.vertices.last().unwrap().0
    }

    /// `j` of the first vertex.
    pub fn height(&self) -> u64 {
        self.vertices[0].1
    }

    pub fn touches_both_axes(&self) -> bool {
        self.vertices[0].0 == 0 && self.vertices.last().unwrap().1 == 0
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let pts = self.vertices.iter().flat_map(|&(i1, j1)| {
            other
                .vertices
                .iter()
                .map(move |&(i2, j2)| (i1 + i2, j1 + j2))
        });
        Self::of_points(pts).unwrap()
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a NewtonDiagram>) -> Self {
        items
            .into_iter()
            .fold(Self::unit(), |acc, d| acc.minkowski_sum(d))
    }

    pub fn sum_elementary(items: &[Elementary]) -> Self {
        items
            .iter()
            .fold(Self::unit(), |acc, e| acc.minkowski_sum(&e.diagram()))
    }

    /// One `Teis{Δi}{Δj}` per boundary edge, plus the axis offsets.
    pub fn elementary_decomposition(&self) -> Vec<Elementary> {
        let mut out = Vec::new();
        let (i0, _) = self.vertices[0];
        if i0 > 0 {
            out.push(Elementary {
                a: ExtNat::Finite(i0),
                b: ExtNat::Infinite,
            });
        }
        for w in self.vertices.windows(2) {
            out.push(Elementary {
                a: ExtNat::Finite(w[1].0 - w[0].0),
                b: ExtNat::Finite(w[0].1 - w[1].1),
            });
        }
        let (_, jl) = *self.vertices.last().unwrap();
        if jl > 0 {
            out.push(Elementary {
                a: ExtNat::Infinite,
                b: ExtNat::Finite(jl),
            });
        }
        out
    }

    pub fn inclinations(&self) -> BTreeSet<Inclination> {
        self.elementary_decomposition()
            .iter()
            .map(Elementary::inclination)
            .collect()
    }

    /// `min(m i + n j)` over the diagram.
    pub fn support(&self, m: u64, n: u64) -> u64 {
        self.vertices
            .iter()
            .map(|&(i, j)| m * i + n * j)
            .min()
            .unwrap()
    }

    pub fn transpose(&self) -> Self {
        NewtonDiagram {
            vertices: self.vertices.iter().rev().map(|&(i, j)| (j, i)).collect(),
        }
    }

    pub fn contains(&self, p: (u64, u64)) -> bool {
        let first = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        if p.0 < first.0 || p.1 < last.1 {
            return false;
        }
        self.vertices.windows(2).all(|w| {
            let (di, dj) = ((w[1].0 - w[0].0) as i128, (w[0].1 - w[1].1) as i128);
            dj * (p.0 as i128 - w[0].0 as i128) + di * (p.1 as i128 - w[0].1 as i128) >= 0
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }
}

impl fmt::Display for NewtonDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Reconstruct a diagram from its support function.
///
/// Every vertex of the target must lie in `[0, width] × [0, height]`. The
/// oracle is called with `(m, n)`, `gcd(m, n) = 1`, and must return
/// `min(m i + n j)` over the target.
pub fn reconstruct_from_support<F>(mut oracle: F, width: u64, height: u64) -> Result<NewtonDiagram>
where
    F: FnMut(u64, u64) -> Result<u64>,
{
    let mut cache: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut query = |m: u64, n: u64, cache: &mut BTreeMap<(u64, u64), u64>| -> Result<u64> {
        if let Some(&v) = cache.get(&(m, n)) {
            return Ok(v);
        }
        let v = oracle(m, n)?;
        cache.insert((m, n), v);
        Ok(v)
    };

    let k = height + 1;
    let l_first = query(k, 1, &mut cache)?;
    let first = (l_first / k, l_first % k);
    let k2 = width + 1;
    let l_last = query(1, k2, &mut cache)?;
    let last = (l_last % k2, l_last / k2);
    if first.0 > width || last.1 > height || first.0 > last.0 || first.1 < last.1 {
        return Err(Error::InconsistentOracle(format!(
            "endpoints {first:?} and {last:?} do not fit the box {width}x{height}"
        )));
    }

    let mut out: Vec<(u64, u64)> = Vec::new();
    // Each frame holds adjacent Stern-Brocot normals a = (ma, na), b = (mb, nb)
    // with their support values.
    let mut stack = vec![((1u64, 0u64), first.0, (0u64, 1u64), last.1)];
    while let Some((a, la, b, lb)) = stack.pop() {
        let c = (a.0 + b.0, a.1 + b.1);
        let single = if c.0 > height || c.1 > width {
            true
        } else {
            let lc = query(c.0, c.1, &mut cache)?;
            match lc.cmp(&(la + lb)) {
                std::cmp::Ordering::Equal => true,
                std::cmp::Ordering::Greater => {
                    stack.push((c, lc, b, lb));
                    stack.push((a, la, c, lc));
                    false
                }
                std::cmp::Ordering::Less => {
                    return Err(Error::InconsistentOracle(format!(
                        "l{c:?} = {lc} is below l{a:?} + l{b:?} = {}",
                        la + lb
                    )))
                }
            }
        };
        if single {
            // Solve a·X = la, b·X = lb; det(a, b) = -1 for Stern-Brocot neighbours.
            let (ma, na) = (a.0 as i128, a.1 as i128);
            let (mb, nb) = (b.0 as i128, b.1 as i128);
            let det = ma * nb - na * mb;
            let xi = (la as i128 * nb - lb as i128 * na) / det;
            let xj = (ma * lb as i128 - mb * la as i128) / det;
            if xi < 0 || xj < 0 {
                return Err(Error::InconsistentOracle(format!(
                    "negative vertex ({xi},{xj})"
                )));
            }
            let x = (xi as u64, xj as u64);
            if out.last() != Some(&x) {
                out.push(x);
            }
        }
    }
    let diagram = NewtonDiagram::from_vertices(out.clone()).map_err(|e| {
        Error::InconsistentOracle(format!("vertices {out:?} do not form a diagram: {e}"))
    })?;
    if diagram.vertices[0] != first || *diagram.vertices.last().unwrap() != last {
        return Err(Error::InconsistentOracle(
            "reconstructed endpoints differ from queried ones".into(),
        ));
    }
    for (&(m, n), &v) in &cache {
        if diagram.support(m, n) != v {
            return Err(Error::InconsistentOracle(format!(
                "reconstructed diagram gives {} at ({m},{n}), oracle gave {v}",
                diagram.support(m, n)
            )));
        }
    }
    Ok(diagram)
}

/// Primitive vectors `(m, n)` with `1 ≤ m, n ≤ bound`.
pub fn primitive_vectors(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in 1..=bound {
        for n in 1..=bound {
            if m.gcd(&n) == 1 {
                out.push((m, n));
            }
        }
    }
    out
}

/// Character-grid picture: `o` vertices, `#` points of the diagram, `.` outside.
pub fn render_ascii(d: &NewtonDiagram, dots: &[(u64, u64)]) -> String {
    let max_i = d.width().max(dots.iter().map(|p| p.0).max().unwrap_or(0)) + 1;
    let max_j = d.height().max(dots.iter().map(|p| p.1).max().unwrap_or(0)) + 1;
    let mut s = String::new();
    for j in (0..=max_j).rev() {
        s.push_str(&format!("{j:>3} "));
        for i in 0..=max_i {
            let c = if d.vertices.contains(&(i, j)) {
                'o'
            } else if dots.contains(&(i, j)) {
                '*'
            } else if d.contains((i, j)) {
                '#'
            } else {
                '.'
            };
            s.push(c);
            s.push(' ');
        }
        s.push('\n');
    }
    s.push_str("    ");
    for i in 0..=max_i {
        s.push_str(&format!("{:<2}", i % 10));
    }
    s.push('\n');
    s
}

/// SVG picture with axes, the shaded diagram, its boundary and optional
/// support dots.
pub fn render_svg(d: &NewtonDiagram, dots: &[(u64, u64)]) -> String {
    let max_i = d.width().max(dots.iter().map(|p| p.0).max().unwrap_or(0)) + 2;
    let max_j = d.height().max(dots.iter().map(|p| p.1).max().unwrap_or(0)) + 2;
    let unit = (480 / max_i.max(max_j)).clamp(4, 40) as f64;
    let pad = 30.0;
    let w = max_i as f64 * unit + 2.0 * pad;
    let h = max_j as f64 * unit + 2.0 * pad;
    let px = |i: f64| pad + i * unit;
    let py = |j: f64| h - pad - j * unit;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    // Shaded region.
    let (fi, fj) = d.vertices[0];
    let (li, lj) = *d.vertices.last().unwrap();
    let mut poly = vec![(fi as f64, max_j as f64)];
    poly.extend(d.vertices.iter().map(|&(i, j)| (i as f64, j as f64)));
    poly.push((max_i as f64, lj as f64));
    poly.push((max_i as f64, max_j as f64));
    let pts: Vec<String> = poly
        .iter()
        .map(|&(i, j)| format!("{},{}", px(i), py(j)))
        .collect();
    s.push_str(&format!(
        "  <polygon points=\"{}\" fill=\"#dde6f3\" stroke=\"none\"/>\n",
        pts.join(" ")
    ));
    // Grid and axes.
    for i in 0..=max_i {
        s.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#eee\"/>\n",
            py(0.0),
            py(max_j as f64),
            x = px(i as f64)
        ));
    }
    for j in 0..=max_j {
        s.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#eee\"/>\n",
            px(0.0),
            px(max_i as f64),
            y = py(j as f64)
        ));
    }
    s.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(0.0),
        py(0.0),
        px(max_i as f64),
        py(0.0)
    ));
    s.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(0.0),
        py(0.0),
        px(0.0),
        py(max_j as f64)
    ));
    // Boundary with rays.
    let mut line = vec![(fi as f64, max_j as f64)];
    line.extend(d.vertices.iter().map(|&(i, j)| (i as f64, j as f64)));
    line.push((max_i as f64, lj as f64));
    let pts: Vec<String> = line
        .iter()
        .map(|&(i, j)| format!("{},{}", px(i), py(j)))
        .collect();
    s.push_str(&format!(
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n",
        pts.join(" ")
    ));
    for &(i, j) in dots {
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
            px(i as f64),
            py(j as f64)
        ));
    }
    for &(i, j) in &d.vertices {
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f4e8c\"/>\n",
            px(i as f64),
            py(j as f64)
        ));
    }
    let _ = (li, fj);
    s.push_str("</svg>\n");
    s
}
