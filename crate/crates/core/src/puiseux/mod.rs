//! Rational Newton–Puiseux expansion of plane curve germs at the origin.
//!
//! Conjugate branches are grouped into one [`PuiseuxBranch`] whose
//! coefficients live in a tower of algebraic extensions of ℚ; the number of
//! conjugates is the dimension of that tower.

mod series;

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::squarefree::{gcd, squarefree_decomposition};
use crate::algebra::tower::{Elem, Split, Tower};
use crate::algebra::{ExtNat, Poly, Rational};
use crate::error::{Error, Result};
use crate::newton::NewtonDiagram;
use series::{horner, newton_root, series_order, TPoly};

/// Truncation policy for power series tails, in powers of the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start: usize,
    pub cap: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start: 16,
            cap: 512,
        }
    }
}

/// Multiplicity and characteristic exponents `β_i / m₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub multiplicity: u64,
    pub exponents: Vec<Rational>,
}

impl Characteristic {
    pub fn to_json(&self) -> Value {
        json!({
            "multiplicity": self.multiplicity,
            "exponents": self.exponents.iter().map(crate::algebra::rational::format_rational).collect::<Vec<_>>(),
        })
    }
}

enum Fail {
    Split(Split),
    Err(Error),
}

impl From<Split> for Fail {
    fn from(s: Split) -> Self {
        Fail::Split(s)
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Err(e)
    }
}

type PResult<T> = std::result::Result<T, Fail>;

#[derive(Debug, Clone)]
struct Step {
    child: u64,
    /// x-exponent of the term fixed by this step, `None` for a finite tail.
    exponent: Option<Rational>,
    level: Option<u64>,
}

/// `x = γ s^e`, `y = head(s) + δ s^n Y(s)` with `Y` the root of `tail`, or
/// `y = head(s)` exactly when `tail` is absent.
#[derive(Debug, Clone)]
struct Leaf {
    tower: Tower,
    gamma: Elem,
    e: u64,
    head: Vec<(u64, Elem)>,
    delta: Elem,
    n: u64,
    tail: Option<TPoly>,
    path: Vec<Step>,
    orders: Vec<ExtNat>,
}

impl Leaf {
    fn y_series(&self, t: usize) -> std::result::Result<Vec<Elem>, Split> {
        let tw = &self.tower;
        let mut y = vec![tw.zero(); t];
        for (k, c) in &self.head {
            if (*k as usize) < t {
                y[*k as usize] = c.clone();
            }
        }
        if let Some(f1) = &self.tail {
            let n = self.n as usize;
            if n < t {
                let yy = newton_root(tw, f1, t - n)?;
                for (k, c) in yy.iter().enumerate() {
                    if !c.is_zero() {
                        y[n + k] = tw.add(&y[n + k], &tw.mul(&self.delta, c));
                    }
                }
            }
        }
        Ok(y)
    }

    /// `h(γ s^e, y(s))` modulo `s^t`.
    fn eval(&self, h: &Poly, y: &[Elem], t: usize) -> Vec<Elem> {
        let tw = &self.tower;
        let dy = h.degree_y().unwrap_or(0) as usize;
        let mut rows = vec![vec![tw.zero(); t]; dy + 1];
        let mut gpow: Vec<Elem> = vec![tw.one()];
        for (&(i, j), c) in h.terms() {
            let k = i as u64 * self.e;
            if k as usize >= t {
                continue;
            }
            while gpow.len() <= i as usize {
                let next = tw.mul(gpow.last().unwrap(), &self.gamma);
                gpow.push(next);
            }
            rows[j as usize][k as usize] = tw.scale(&gpow[i as usize], c);
        }
        horner(tw, &rows, y, t)
    }

    fn exact_len(&self, h: &Poly) -> usize {
        let dp = self.head.last().map_or(0, |(k, _)| *k);
        h.terms()
            .map(|(&(i, j), _)| i as u64 * self.e + j as u64 * dp)
            .max()
            .unwrap_or(0) as usize
            + 1
    }

    /// Order of `h` along the branch; `cofactor`, when given, vanishes on
    /// every branch of the curve not contained in `h = 0`.
    fn order(&self, h: &Poly, cofactor: Option<&Poly>, prec: Precision) -> PResult<ExtNat> {
        let tw = &self.tower;
        if self.tail.is_none() {
            let t = self.exact_len(h);
            let y = self.y_series(t)?;
            return Ok(match series_order(tw, &self.eval(h, &y, t))? {
                Some(k) => ExtNat::Finite(k as u64),
                None => ExtNat::Infinite,
            });
        }
        let mut t = prec.start.max(1);
        loop {
            let y = self.y_series(t)?;
            if let Some(k) = series_order(tw, &self.eval(h, &y, t))? {
                return Ok(ExtNat::Finite(k as u64));
            }
            if let Some(c) = cofactor {
                if series_order(tw, &self.eval(c, &y, t))?.is_some() {
                    return Ok(ExtNat::Infinite);
                }
            }
            if t >= prec.cap {
                return Err(Fail::Err(Error::PrecisionExhausted { cap: prec.cap }));
            }
            t = (2 * t).min(prec.cap);
        }
    }

    /// Parameter exponents where the gcd with `e` drops.
    fn x_characteristic(&self) -> Vec<u64> {
        let mut g = self.e;
        let mut out = Vec::new();
        for (k, _) in &self.head {
            if g == 1 {
                break;
            }
            if k % g != 0 {
                out.push(*k);
                g = g.gcd(k);
            }
        }
        debug_assert_eq!(g, 1);
        out
    }
}

struct ProbeData {
    poly: Poly,
    cofactor: Option<Poly>,
}

struct Ctx<'a> {
    probes: &'a [ProbeData],
    prec: Precision,
    next: u64,
}

impl Ctx<'_> {
    fn id(&mut self) -> u64 {
        self.next += 1;
        self.next
    }

    fn finish(&self, mut leaf: Leaf) -> PResult<Leaf> {
        for p in self.probes {
            let o = leaf.order(&p.poly, p.cofactor.as_ref(), self.prec)?;
            leaf.orders.push(o);
        }
        Ok(leaf)
    }
}

struct Node {
    tower: Tower,
    f: TPoly,
    gamma: Elem,
    e: u64,
    head: Vec<(u64, Elem)>,
    delta: Elem,
    n: u64,
    path: Vec<Step>,
}

fn bezout(q: u64, m: u64) -> (u64, u64) {
    let u = (1..=m).find(|u| (u * q) % m == 1 % m).unwrap();
    (u, (u * q - 1) / m)
}

fn expand_node(ctx: &mut Ctx, node: &Node) -> PResult<Vec<Leaf>> {
    let tw = &node.tower;
    let diagram = NewtonDiagram::of_points(node.f.support()).ok_or(Error::ZeroPolynomial)?;
    let verts = diagram.vertices().to_vec();
    for &(i, j) in &verts {
        tw.inv(&node.f.coeff(tw, i, j))?;
    }
    let mut leaves = Vec::new();
    let (_, jl) = *verts.last().unwrap();
    assert!(jl <= 1, "expanded curve is not reduced");
    if jl == 1 {
        let mut path = node.path.clone();
        path.push(Step {
            child: ctx.id(),
            exponent: None,
            level: None,
        });
        let leaf = Leaf {
            tower: tw.clone(),
            gamma: node.gamma.clone(),
            e: node.e,
            head: node.head.clone(),
            delta: node.delta.clone(),
            n: node.n,
            tail: None,
            path,
            orders: Vec::new(),
        };
        leaves.push(ctx.finish(leaf)?);
    }
    for w in verts.windows(2) {
        let ((i1, j1), (i2, j2)) = (w[0], w[1]);
        let (di, dj) = (i2 - i1, j1 - j2);
        let g = di.gcd(&dj);
        let (q, m) = (dj / g, di / g);
        let l = q * i1 + m * j1;
        let phi: Vec<Elem> = (0..=g)
            .map(|k| node.f.coeff(tw, i2 - k * m, j2 + k * q))
            .collect();
        let alpha = Rational::new((q * node.n + m).into(), (q * node.e).into());
        let mut work: Vec<(Vec<Elem>, usize)> = tw.poly_squarefree(&phi)?;
        work.reverse();
        while let Some((psi, k)) = work.pop() {
            let child = ctx.id();
            let (ctower, xi, level) = if psi.len() == 2 {
                (tw.clone(), tw.neg(&psi[0]), None)
            } else {
                let id = ctx.id();
                let ct = tw.adjoin(id, psi.clone());
                let xi = ct.generator(ct.depth());
                (ct, xi, Some(id))
            };
            let step = Step {
                child,
                exponent: Some(alpha.clone()),
                level,
            };
            match descend(ctx, node, &ctower, &xi, q, m, l, k, step) {
                Ok(mut found) => leaves.append(&mut found),
                Err(Fail::Split(s)) if level.is_some() && s.level == ctower.depth() => {
                    let other = tw.poly_div(&psi, &s.factor)?;
                    work.push((other, k));
                    work.push((s.factor, k));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(leaves)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    ctx: &mut Ctx,
    node: &Node,
    tw: &Tower,
    xi: &Elem,
    q: u64,
    m: u64,
    l: u64,
    k: usize,
    step: Step,
) -> PResult<Vec<Leaf>> {
    let (u, v) = bezout(q, m);
    let xv = tw.pow(xi, v);
    let xu = tw.pow(xi, u);
    let delta = tw.lift(&node.delta);
    let mut head: Vec<(u64, Elem)> = node
        .head
        .iter()
        .map(|(k, c)| (k * q, tw.mul(&tw.lift(c), &tw.pow(&xv, *k))))
        .collect();
    let delta_next = tw.mul(&delta, &tw.pow(&xv, node.n));
    head.push((q * node.n + m, tw.mul(&delta_next, &xu)));
    let f1 = node.f.lift(tw).substitute(tw, &xv, q, &xu, m, l);
    let mut path = node.path.clone();
    path.push(step);
    let child = Node {
        tower: tw.clone(),
        f: f1,
        gamma: tw.mul(&tw.lift(&node.gamma), &tw.pow(&xv, node.e)),
        e: q * node.e,
        head,
        delta: delta_next,
        n: q * node.n + m,
        path,
    };
    if k > 1 {
        return expand_node(ctx, &child);
    }
    let leaf = Leaf {
        tower: child.tower,
        gamma: child.gamma,
        e: child.e,
        head: child.head,
        delta: child.delta,
        n: child.n,
        tail: Some(child.f),
        path: child.path,
        orders: Vec::new(),
    };
    Ok(vec![ctx.finish(leaf)?])
}

#[derive(Debug)]
struct Source {
    /// The expanded reduced curve, without the factor `x`.
    curve: Poly,
    prec: Precision,
}

#[derive(Debug, Clone)]
enum Kind {
    Axis,
    Expansion(Box<Leaf>),
}

/// A conjugacy class of branches of a curve germ at the origin.
#[derive(Debug, Clone)]
pub struct PuiseuxBranch {
    kind: Kind,
    /// Multiplicity of the irreducible component in the input.
    pub multiplicity: u32,
    /// Index of the squarefree factor of the input containing the branch.
    pub factor: usize,
    /// Orders of the probe polynomials along the branch.
    pub orders: Vec<ExtNat>,
    pub characteristic: Characteristic,
    source: Arc<Source>,
}

/// One branch of a conjugacy class: root indices per tower level.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Member {
    pub branch: usize,
    pub roots: Vec<usize>,
}

/// All branches of a curve germ at the origin.
#[derive(Debug, Clone)]
pub struct BranchSet {
    pub branches: Vec<PuiseuxBranch>,
    /// Squarefree factors of the input vanishing at the origin.
    pub factors: Vec<(Poly, u32)>,
}

fn fmt_coeff(s: &str) -> String {
    if s[1..].contains(['+', '-']) || (s.contains('/') && s.contains('a')) {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn fmt_term(tw: &Tower, c: &Elem, k: u64) -> String {
    let s = tw.format_elem(c);
    let mono = match k {
        0 => String::new(),
        1 => "s".to_string(),
        _ => format!("s^{k}"),
    };
    if mono.is_empty() {
        return fmt_coeff(&s);
    }
    match s.as_str() {
        "1" => mono,
        "-1" => format!("-{mono}"),
        _ => format!("{}*{mono}", fmt_coeff(&s)),
    }
}

fn fmt_sum(parts: &[String]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl PuiseuxBranch {
    pub fn is_axis(&self) -> bool {
        matches!(self.kind, Kind::Axis)
    }

    /// Exponent `e` in `x = γ s^e`.
    pub fn ramification(&self) -> u64 {
        match &self.kind {
            Kind::Axis => 1,
            Kind::Expansion(l) => l.e,
        }
    }

    /// Number of conjugate branches represented.
    pub fn conjugates(&self) -> usize {
        match &self.kind {
            Kind::Axis => 1,
            Kind::Expansion(l) => l.tower.dim(),
        }
    }

    pub fn tower(&self) -> Tower {
        match &self.kind {
            Kind::Axis => Tower::base(),
            Kind::Expansion(l) => l.tower.clone(),
        }
    }

    /// Whether `y` is a polynomial in `s` (then `terms` is exact).
    pub fn is_finite(&self) -> bool {
        match &self.kind {
            Kind::Axis => true,
            Kind::Expansion(l) => l.tail.is_none(),
        }
    }

    /// Nonzero terms `(k, c)` of `y(s)` below `s^t`.
    pub fn y_terms(&self, t: usize) -> Result<Vec<(u64, Elem)>> {
        match &self.kind {
            Kind::Axis => Ok(if t > 1 {
                vec![(1, Elem(vec![Rational::from_integer(1.into())]))]
            } else {
                vec![]
            }),
            Kind::Expansion(l) => {
                let y = l.y_series(t).map_err(|_| split_error())?;
                Ok(y.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k as u64, c))
                    .collect())
            }
        }
    }

    /// `(x, y)` as strings, truncated below `s^t`.
    pub fn parametrization(&self, t: usize) -> Result<(String, String)> {
        match &self.kind {
            Kind::Axis => Ok(("0".into(), "s".into())),
            Kind::Expansion(l) => {
                let x = fmt_term(&l.tower, &l.gamma, l.e);
                let parts: Vec<String> = self
                    .y_terms(t)?
                    .iter()
                    .map(|(k, c)| fmt_term(&l.tower, c, *k))
                    .collect();
                let mut y = fmt_sum(&parts);
                if l.tail.is_some() {
                    y.push_str(&format!(" + O(s^{t})"));
                }
                Ok((x, y))
            }
        }
    }

    pub fn to_json(&self, t: usize) -> Result<Value> {
        let (x, y) = self.parametrization(t)?;
        Ok(json!({
            "x": x,
            "y": y,
            "ramification": self.ramification(),
            "conjugates": self.conjugates(),
            "field": self.tower().describe(),
            "multiplicity": self.multiplicity,
            "characteristic": self.characteristic.to_json(),
        }))
    }
}

fn split_error() -> Error {
    Error::NonGenericFailure("branch class splits; expand with the polynomial as a probe".into())
}

fn characteristic_of(leaf: &Leaf) -> Characteristic {
    let xc = leaf.x_characteristic();
    let ord_y = leaf.head.first().map(|(k, _)| *k);
    let n = leaf.e;
    match ord_y {
        Some(k0) if k0 < n => {
            let b1 = xc[0];
            let mut ex: Vec<u64> = Vec::new();
            if !n.is_multiple_of(b1) {
                ex.push(n);
            }
            ex.extend(xc[1..].iter().map(|b| b + n - b1));
            Characteristic {
                multiplicity: b1,
                exponents: ex
                    .into_iter()
                    .map(|b| Rational::new(b.into(), b1.into()))
                    .collect(),
            }
        }
        _ => Characteristic {
            multiplicity: n,
            exponents: xc
                .into_iter()
                .map(|b| Rational::new(b.into(), n.into()))
                .collect(),
        },
    }
}

fn smooth() -> Characteristic {
    Characteristic {
        multiplicity: 1,
        exponents: Vec::new(),
    }
}

/// Expand the branches of `f = 0` at the origin, recording the order of
/// each probe along each branch.
pub fn expand(f: &Poly, probes: &[Poly], prec: Precision) -> Result<BranchSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(Error::NotVanishingAtOrigin);
    }
    let factors: Vec<(Poly, u32)> = squarefree_decomposition(f)?
        .into_iter()
        .filter(|(h, _)| h.vanishes_at_origin())
        .collect();
    let x = Poly::x();
    let mut curve = factors.iter().fold(Poly::one(), |acc, (h, _)| &acc * h);
    let axis_factor = factors
        .iter()
        .position(|(h, _)| h.restrict_x0().order() == ExtNat::Infinite);
    if axis_factor.is_some() {
        curve = curve.div_exact(&x).expect("x divides");
    }
    let mut data: Vec<ProbeData> = probes
        .iter()
        .map(|h| {
            let g = gcd(&curve, h);
            let cofactor =
                (!g.is_constant() && g.vanishes_at_origin()).then(|| curve.div_exact(&g).unwrap());
            ProbeData {
                poly: h.clone(),
                cofactor,
            }
        })
        .collect();
    // Probes telling which factor contains a branch.
    let labels: Vec<Option<usize>> = if factors.len() > 1 {
        factors
            .iter()
            .map(|(h, _)| {
                let h = if Some(h) == axis_factor.map(|a| &factors[a].0) {
                    h.div_exact(&x).unwrap()
                } else {
                    h.clone()
                };
                if !h.vanishes_at_origin() {
                    return None;
                }
                let cofactor = Some(curve.div_exact(&h).unwrap());
                data.push(ProbeData { poly: h, cofactor });
                Some(data.len() - 1)
            })
            .collect()
    } else {
        vec![None; factors.len()]
    };
    let source = Arc::new(Source {
        curve: curve.clone(),
        prec,
    });
    let mut branches = Vec::new();
    if let Some(a) = axis_factor {
        let orders = probes.iter().map(|h| h.restrict_x0().order()).collect();
        branches.push(PuiseuxBranch {
            kind: Kind::Axis,
            multiplicity: factors[a].1,
            factor: a,
            orders,
            characteristic: smooth(),
            source: source.clone(),
        });
    }
    if curve.vanishes_at_origin() {
        let tw = Tower::base();
        let root = Node {
            f: TPoly::from_poly(&tw, &curve),
            gamma: tw.one(),
            e: 1,
            head: Vec::new(),
            delta: tw.one(),
            n: 0,
            path: Vec::new(),
            tower: tw,
        };
        let mut ctx = Ctx {
            probes: &data,
            prec,
            next: 0,
        };
        let leaves = match expand_node(&mut ctx, &root) {
            Ok(l) => l,
            Err(Fail::Err(e)) => return Err(e),
            Err(Fail::Split(_)) => unreachable!("no levels above the base field"),
        };
        for leaf in leaves {
            let factor = if factors.len() == 1 {
                0
            } else {
                (0..factors.len())
                    .find(|&k| labels[k].is_some_and(|p| leaf.orders[p] == ExtNat::Infinite))
                    .expect("branch lies on some factor")
            };
            branches.push(PuiseuxBranch {
                multiplicity: factors[factor].1,
                factor,
                orders: leaf.orders[..probes.len()].to_vec(),
                characteristic: characteristic_of(&leaf),
                kind: Kind::Expansion(Box::new(leaf)),
                source: source.clone(),
            });
        }
    }
    Ok(BranchSet { branches, factors })
}

/// Branches of `f = 0` at the origin.
pub fn branches_at_origin(f: &Poly, prec: Precision) -> Result<Vec<PuiseuxBranch>> {
    Ok(expand(f, &[], prec)?.branches)
}

/// Order of `h` along one (any) member of the class `b`.
pub fn order_along_branch(h: &Poly, b: &PuiseuxBranch) -> Result<ExtNat> {
    match &b.kind {
        Kind::Axis => Ok(h.restrict_x0().order()),
        Kind::Expansion(leaf) => {
            let curve = &b.source.curve;
            let g = gcd(curve, h);
            let cofactor =
                (!g.is_constant() && g.vanishes_at_origin()).then(|| curve.div_exact(&g).unwrap());
            match leaf.order(h, cofactor.as_ref(), b.source.prec) {
                Ok(o) => Ok(o),
                Err(Fail::Err(e)) => Err(e),
                Err(Fail::Split(_)) => Err(split_error()),
            }
        }
    }
}

/// Intersection multiplicity of two members with contact exponent `c`
/// (in powers of `x`), from the characteristic of `b`.
fn halphen(ea: u64, b: &Leaf, c: &Option<Rational>) -> ExtNat {
    let Some(c) = c else { return ExtNat::Infinite };
    let mut g = b.e;
    let mut total = Rational::zero();
    for beta in b.x_characteristic() {
        let next = g.gcd(&beta);
        let bx = Rational::new(beta.into(), b.e.into());
        total += Rational::from_integer((g - next).into()) * bx.min(c.clone());
        g = next;
    }
    total += c.clone();
    total *= Rational::from_integer(ea.into());
    assert!(total.is_integer(), "intersection multiplicity is integral");
    ExtNat::Finite(total.to_integer().to_u64().unwrap())
}

fn contact(a: &Leaf, ra: &[usize], b: &Leaf, rb: &[usize]) -> Option<Rational> {
    let ids_a = a.tower.level_ids();
    let ids_b = b.tower.level_ids();
    for (sa, sb) in a.path.iter().zip(&b.path) {
        if sa.child != sb.child {
            return match (&sa.exponent, &sb.exponent) {
                (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
                (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                (None, None) => unreachable!("one finite tail per node"),
            };
        }
        if let Some(id) = sa.level {
            let ia = ids_a.iter().position(|&l| l == id).unwrap();
            let ib = ids_b.iter().position(|&l| l == id).unwrap();
            if ra[ia] != rb[ib] {
                return sa.exponent.clone();
            }
        }
    }
    None
}

impl BranchSet {
    pub fn members(&self) -> Vec<Member> {
        let mut out = Vec::new();
        for (i, b) in self.branches.iter().enumerate() {
            let degrees = b.tower().degrees();
            let total: usize = degrees.iter().product();
            for mut idx in 0..total {
                let mut roots = vec![0usize; degrees.len()];
                for k in (0..degrees.len()).rev() {
                    roots[k] = idx % degrees[k];
                    idx /= degrees[k];
                }
                out.push(Member { branch: i, roots });
            }
        }
        out
    }

    /// Intersection multiplicity of two single branches.
    pub fn member_intersection(&self, a: &Member, b: &Member) -> ExtNat {
        let ba = &self.branches[a.branch];
        let bb = &self.branches[b.branch];
        match (&ba.kind, &bb.kind) {
            (Kind::Axis, Kind::Axis) => ExtNat::Infinite,
            (Kind::Axis, Kind::Expansion(l)) | (Kind::Expansion(l), Kind::Axis) => {
                ExtNat::Finite(l.e)
            }
            (Kind::Expansion(la), Kind::Expansion(lb)) => {
                halphen(la.e, lb, &contact(la, &a.roots, lb, &b.roots))
            }
        }
    }

    /// Intersection multiplicity of two conjugacy classes.
    pub fn intersection(&self, i: usize, j: usize) -> ExtNat {
        let members = self.members();
        let mut total = ExtNat::Finite(0);
        for a in members.iter().filter(|m| m.branch == i) {
            for b in members.iter().filter(|m| m.branch == j) {
                total = total + self.member_intersection(a, b);
            }
        }
        total
    }
}

/// Intersection multiplicity of two branch classes of the same expansion.
pub fn branch_pair_intersection(
    set: &BranchSet,
    b1: &PuiseuxBranch,
    b2: &PuiseuxBranch,
) -> Result<ExtNat> {
    let find = |b: &PuiseuxBranch| {
        set.branches.iter().position(|c| {
            Arc::ptr_eq(&c.source, &b.source)
                && match (&c.kind, &b.kind) {
                    (Kind::Axis, Kind::Axis) => true,
                    (Kind::Expansion(x), Kind::Expansion(y)) => {
                        x.path.last().map(|s| s.child) == y.path.last().map(|s| s.child)
                    }
                    _ => false,
                }
        })
    };
    match (find(b1), find(b2)) {
        (Some(i), Some(j)) => Ok(set.intersection(i, j)),
        _ => Err(Error::ForeignBranches),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::rational::rat;

    fn p(s: &str) -> Poly {
        parse_polynomial(s).unwrap()
    }

    fn fin(n: u64) -> ExtNat {
        ExtNat::Finite(n)
    }

    #[test]
    fn cusp() {
        let b = branches_at_origin(&p("y^2-x^3"), Precision::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].ramification(), 2);
        assert_eq!(b[0].conjugates(), 1);
        let (x, y) = b[0].parametrization(8).unwrap();
        assert_eq!(x, "s^2");
        assert_eq!(y, "s^3 + O(s^8)");
        assert_eq!(
            b[0].characteristic,
            Characteristic {
                multiplicity: 2,
                exponents: vec![rat(3, 2)]
            }
        );
    }

    #[test]
    fn node_and_double_cusp() {
        let b = branches_at_origin(&p("x*y"), Precision::default()).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].is_axis());
        let b = branches_at_origin(&p("(y^2-x^3)^2"), Precision::default()).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].multiplicity, 2);
    }

    #[test]
    fn orders() {
        let cusp = p("y^2-x^3");
        let set = expand(
            &p("y*x*(y^2-x^3)"),
            std::slice::from_ref(&cusp),
            Precision::default(),
        )
        .unwrap();
        let got: Vec<ExtNat> = set.branches.iter().map(|b| b.orders[0]).collect();
        assert_eq!(got, vec![fin(2), fin(3), ExtNat::Infinite]);
        for b in &set.branches {
            assert_eq!(order_along_branch(&cusp, b).unwrap(), b.orders[0]);
        }
        let b = branches_at_origin(&p("y^3-x^7"), Precision::default()).unwrap();
        assert_eq!(order_along_branch(&p("x"), &b[0]).unwrap(), fin(3));
        assert_eq!(b[0].characteristic.exponents, vec![rat(7, 3)]);
    }

    #[test]
    fn intersections() {
        let set = expand(&p("y*x*(y^2-x^3)"), &[], Precision::default()).unwrap();
        let [axis, line, cusp] = [&set.branches[0], &set.branches[1], &set.branches[2]];
        assert_eq!(branch_pair_intersection(&set, cusp, line).unwrap(), fin(3));
        assert_eq!(branch_pair_intersection(&set, cusp, axis).unwrap(), fin(2));
        assert_eq!(
            branch_pair_intersection(&set, cusp, cusp).unwrap(),
            ExtNat::Infinite
        );
        let other = branches_at_origin(&p("y"), Precision::default()).unwrap();
        assert_eq!(
            branch_pair_intersection(&set, cusp, &other[0]),
            Err(Error::ForeignBranches)
        );
    }

    #[test]
    fn conjugates_split_on_probe() {
        // y^2 - x^2 gives one class with two conjugates; y - x separates them.
        let f = p("y^2-x^2");
        let set = expand(&f, &[], Precision::default()).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].conjugates(), 2);
        assert_eq!(set.intersection(0, 0), ExtNat::Infinite);
        let m = set.members();
        assert_eq!(set.member_intersection(&m[0], &m[1]), fin(1));
        let set = expand(&f, &[p("y-x")], Precision::default()).unwrap();
        let mut got: Vec<ExtNat> = set.branches.iter().map(|b| b.orders[0]).collect();
        got.sort();
        assert_eq!(got, vec![fin(1), ExtNat::Infinite]);
    }

    #[test]
    fn tangent_to_vertical_axis() {
        let b = branches_at_origin(&p("x^2-y^3"), Precision::default()).unwrap();
        assert_eq!(
            b[0].characteristic,
            Characteristic {
                multiplicity: 2,
                exponents: vec![rat(3, 2)]
            }
        );
        let b = branches_at_origin(&p("x-y^2"), Precision::default()).unwrap();
        assert_eq!(b[0].characteristic, smooth());
    }

    #[test]
    fn intersection_matches_members_sum() {
        // Two cusps with contact 3/2 share one class over Q[a]/(a^2-3a+2).
        let set = expand(&p("(y^2-x^3)*(y^2-2*x^3)"), &[], Precision::default()).unwrap();
        assert_eq!(set.branches.len(), 1);
        assert_eq!(set.branches[0].conjugates(), 2);
        let m = set.members();
        assert_eq!(set.member_intersection(&m[0], &m[1]), fin(6));
    }
}
