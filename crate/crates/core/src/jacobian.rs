//! Jacobian Newton diagrams of finite map germs `(f, g): (ℂ², 0) → (ℂ², 0)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::algebra::squarefree::is_squarefree;
use crate::algebra::{ExtNat, Poly};
use crate::error::{Error, Result};
use crate::local::{
    finiteness_check, generic_pencil_milnor, generic_pencil_milnor_bounded,
    intersection_multiplicity,
};
use crate::newton::{reconstruct_from_support, Elementary, Inclination, NewtonDiagram};
use crate::puiseux::{expand, Precision, PuiseuxBranch};

/// A finite map germ given by two polynomials vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    f: Poly,
    g: Poly,
}

impl MapGerm {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !finiteness_check(&f, &g) {
            return Err(Error::NotFinite);
        }
        Ok(MapGerm { f, g })
    }

    pub fn parse(f: &str, g: &str) -> Result<Self> {
        MapGerm::new(Poly::from_str(f)?, Poly::from_str(g)?)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// The germ `(g, f)`.
    pub fn swapped(&self) -> MapGerm {
        MapGerm {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }
}

/// Which computation of the jacobian Newton diagram to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Branches,
    Support,
    Both,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "branches" => Ok(Method::Branches),
            "support" => Ok(Method::Support),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Branches => "branches",
            Method::Support => "support",
            Method::Both => "both",
        })
    }
}

/// `∂f/∂x ∂g/∂y − ∂f/∂y ∂g/∂x`.
pub fn jacobian(germ: &MapGerm) -> Result<Poly> {
    let j = &(&germ.f.derivative_x() * &germ.g.derivative_y())
        - &(&germ.f.derivative_y() * &germ.g.derivative_x());
    if j.is_zero() {
        return Err(Error::DegenerateJacobian);
    }
    Ok(j)
}

/// A conjugacy class of branches of the jacobian curve with the orders of
/// `g` (`a`) and `f` (`b`) along it.
#[derive(Debug, Clone)]
pub struct BranchContribution {
    pub branch: PuiseuxBranch,
    pub a: ExtNat,
    pub b: ExtNat,
    /// Multiplicity of the component of the jacobian.
    pub multiplicity: u32,
}

impl BranchContribution {
    /// Number of times `Teis{a}{b}` enters the diagram.
    pub fn count(&self) -> u64 {
        self.multiplicity as u64 * self.branch.conjugates() as u64
    }

    pub fn elementary(&self) -> Result<Elementary> {
        Elementary::new(self.a, self.b)
    }

    pub fn to_json(&self) -> Result<Value> {
        Ok(json!({
            "branch": self.branch.to_json(8)?,
            "a": self.a,
            "b": self.b,
            "multiplicity": self.multiplicity,
            "conjugates": self.branch.conjugates(),
        }))
    }
}

fn totals(list: &[BranchContribution]) -> (ExtNat, ExtNat) {
    let a = list.iter().map(|c| c.a.scale(c.count())).sum();
    let b = list.iter().map(|c| c.b.scale(c.count())).sum();
    (a, b)
}

/// Branches of the jacobian curve with their orders, certified by the
/// totals `Σ b = i₀(f, jac)` and `Σ a = i₀(g, jac)`.
pub fn branch_contributions(germ: &MapGerm) -> Result<Vec<BranchContribution>> {
    let j = jacobian(germ)?;
    if !j.vanishes_at_origin() {
        return Ok(Vec::new());
    }
    let want = (
        intersection_multiplicity(&germ.g, &j)?,
        intersection_multiplicity(&germ.f, &j)?,
    );
    let mut prec = Precision::default();
    let mut last = None;
    for _ in 0..2 {
        let set = match expand(&j, &[germ.g.clone(), germ.f.clone()], prec) {
            Ok(s) => s,
            Err(Error::PrecisionExhausted { .. }) => {
                prec.cap *= 4;
                continue;
            }
            Err(e) => return Err(e),
        };
        let list: Vec<BranchContribution> = set
            .branches
            .into_iter()
            .map(|b| BranchContribution {
                a: b.orders[0],
                b: b.orders[1],
                multiplicity: b.multiplicity,
                branch: b,
            })
            .collect();
        let got = totals(&list);
        if got == want {
            return Ok(list);
        }
        last = Some(got);
        prec.cap *= 4;
    }
    Err(match last {
        Some(got) => Error::CertificateMismatch(format!(
            "branch totals (a, b) = ({}, {}) but i₀(g, jac) = {}, i₀(f, jac) = {}",
            got.0, got.1, want.0, want.1
        )),
        None => Error::PrecisionExhausted { cap: prec.cap },
    })
}

/// Minkowski sum of `Teis{a}{b}` over the jacobian branches.
pub fn njac_branches(germ: &MapGerm) -> Result<NewtonDiagram> {
    let mut parts = Vec::new();
    for c in branch_contributions(germ)? {
        let e = c.elementary()?;
        parts.extend(std::iter::repeat_n(e, c.count() as usize));
    }
    Ok(NewtonDiagram::sum_elementary(&parts))
}

fn require_reduced(germ: &MapGerm) -> Result<()> {
    if !is_squarefree(&germ.f)? {
        return Err(Error::NonReducedInput("f"));
    }
    if !is_squarefree(&germ.g)? {
        return Err(Error::NonReducedInput("g"));
    }
    Ok(())
}

/// Value at `(m, n)` of the support function of the jacobian Newton
/// diagram, from the generic Milnor number of `fⁿ − t gᵐ`.
pub fn support_oracle(germ: &MapGerm, i0: u64, m: u64, n: u64) -> Result<u64> {
    let mu = generic_pencil_milnor(&germ.f, &germ.g, n as u32, m as u32)?;
    support_from_milnor(mu, i0, m, n)
}

fn shift(i0: u64, m: u64, n: u64) -> i128 {
    i0 as i128 * ((m as i128 - 1) * (n as i128 - 1) - 1) + 1
}

/// As [`support_oracle`] for a diagram known to fit in `width × height`,
/// which bounds the Milnor number and lets the pencil be truncated.
fn support_oracle_within(
    germ: &MapGerm,
    i0: u64,
    m: u64,
    n: u64,
    width: u64,
    height: u64,
) -> Result<u64> {
    let bound = ((m * width).min(n * height) as i128 + shift(i0, m, n)).max(0) as u64;
    let mu = generic_pencil_milnor_bounded(&germ.f, &germ.g, n as u32, m as u32, bound)?;
    support_from_milnor(mu, i0, m, n)
}

fn support_from_milnor(mu: ExtNat, i0: u64, m: u64, n: u64) -> Result<u64> {
    let ExtNat::Finite(mu) = mu else {
        return Err(Error::InconsistentOracle(format!(
            "infinite Milnor number at ({m},{n})"
        )));
    };
    let value = mu as i128 - shift(i0, m, n);
    u64::try_from(value).map_err(|_| {
        Error::InconsistentOracle(format!("negative support value {value} at ({m},{n})"))
    })
}

/// The diagram reconstructed from Milnor numbers of the pencils
/// `fⁿ − t gᵐ`; requires reduced `f` and `g`.
pub fn njac_support(germ: &MapGerm) -> Result<NewtonDiagram> {
    require_reduced(germ)?;
    let j = jacobian(germ)?;
    if !j.vanishes_at_origin() {
        return Ok(NewtonDiagram::unit());
    }
    let width = intersection_multiplicity(&germ.g, &j)?;
    let height = intersection_multiplicity(&germ.f, &j)?;
    let (ExtNat::Finite(width), ExtNat::Finite(height)) = (width, height) else {
        return Err(Error::InconsistentOracle(
            "jacobian shares a component with f or g".into(),
        ));
    };
    let ExtNat::Finite(i0) = intersection_multiplicity(&germ.f, &germ.g)? else {
        return Err(Error::NotFinite);
    };
    reconstruct_from_support(
        |m, n| support_oracle_within(germ, i0, m, n, width, height),
        width,
        height,
    )
}

pub fn njac(germ: &MapGerm, method: Method) -> Result<NewtonDiagram> {
    match method {
        Method::Branches => njac_branches(germ),
        Method::Support => njac_support(germ),
        Method::Both => {
            let branches = njac_branches(germ)?;
            let support = njac_support(germ)?;
            if branches != support {
                return Err(Error::RouteMismatch {
                    branches: Box::new(branches),
                    support: Box::new(support),
                });
            }
            Ok(branches)
        }
    }
}

/// Set of `i₀(g, h) / i₀(f, h)` over jacobian branches `h`.
pub fn jacobian_quotients(germ: &MapGerm) -> Result<Vec<Inclination>> {
    let mut out: Vec<Inclination> = branch_contributions(germ)?
        .iter()
        .map(|c| Inclination::of(c.a, c.b))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Branches grouped by jacobian quotient, with summed orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HironakaGroup {
    pub quotient: Inclination,
    pub a: ExtNat,
    pub b: ExtNat,
}

impl HironakaGroup {
    pub fn to_json(&self) -> Value {
        json!({ "quotient": self.quotient, "a": self.a, "b": self.b })
    }
}

pub fn hironaka_data(germ: &MapGerm) -> Result<Vec<HironakaGroup>> {
    let mut groups: BTreeMap<Inclination, (ExtNat, ExtNat)> = BTreeMap::new();
    for c in branch_contributions(germ)? {
        let k = c.count();
        let entry = groups
            .entry(Inclination::of(c.a, c.b))
            .or_insert((ExtNat::Finite(0), ExtNat::Finite(0)));
        entry.0 = entry.0 + c.a.scale(k);
        entry.1 = entry.1 + c.b.scale(k);
    }
    Ok(groups
        .into_iter()
        .map(|(quotient, (a, b))| HironakaGroup { quotient, a, b })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_polynomial;
    use crate::algebra::rational::rat;

    fn germ(f: &str, g: &str) -> MapGerm {
        MapGerm::parse(f, g).unwrap()
    }

    fn diagram(v: &[(u64, u64)]) -> NewtonDiagram {
        NewtonDiagram::from_vertices(v.to_vec()).unwrap()
    }

    fn fin(n: u64) -> ExtNat {
        ExtNat::Finite(n)
    }

    #[test]
    fn jacobians() {
        assert_eq!(
            jacobian(&germ("v^2-u^3", "u")).unwrap(),
            parse_polynomial("-2*y").unwrap()
        );
        assert_eq!(jacobian(&germ("u", "v")).unwrap(), Poly::one());
        assert_eq!(
            jacobian(&germ("v^2-u^3", "v")).unwrap(),
            parse_polynomial("-3*x^2").unwrap()
        );
        assert_eq!(MapGerm::parse("x*y", "x"), Err(Error::NotFinite));
    }

    #[test]
    fn contributions() {
        let c = branch_contributions(&germ("v^2-u^3", "u")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].a, c[0].b, c[0].multiplicity), (fin(1), fin(3), 1));
        assert!(branch_contributions(&germ("u", "v")).unwrap().is_empty());
        let c = branch_contributions(&germ("v^2-u^3", "v")).unwrap();
        assert_eq!((c[0].a, c[0].b, c[0].multiplicity), (fin(1), fin(2), 2));
    }

    #[test]
    fn both_routes_on_small_germs() {
        type Case = (&'static str, &'static str, &'static [(u64, u64)]);
        let cases: [Case; 3] = [
            ("v^2-u^3", "u", &[(0, 3), (1, 0)]),
            ("u", "v", &[(0, 0)]),
            ("v^2-u^3", "v", &[(0, 4), (2, 0)]),
        ];
        for (f, g, want) in cases {
            assert_eq!(
                njac(&germ(f, g), Method::Both).unwrap(),
                diagram(want),
                "({f}, {g})"
            );
        }
    }

    #[test]
    fn support_values() {
        let g = germ("v^2-u^3", "u");
        assert_eq!(support_oracle(&g, 2, 1, 1).unwrap(), 1);
        let g = germ("v^2-u^3", "v");
        assert_eq!(support_oracle(&g, 3, 1, 1).unwrap(), 2);
        let g = germ("u", "v");
        for (m, n) in [(1, 1), (2, 3), (5, 2)] {
            assert_eq!(support_oracle(&g, 1, m, n).unwrap(), 0);
        }
    }

    #[test]
    fn quotients_and_groups() {
        let g = germ("v^2-u^3", "u");
        assert_eq!(
            jacobian_quotients(&g).unwrap(),
            vec![Inclination::Finite(rat(1, 3))]
        );
        assert_eq!(
            hironaka_data(&germ("v^2-u^3", "v")).unwrap(),
            vec![HironakaGroup {
                quotient: Inclination::Finite(rat(1, 2)),
                a: fin(2),
                b: fin(4)
            }]
        );
        assert!(hironaka_data(&germ("u", "v")).unwrap().is_empty());
    }

    #[test]
    fn non_reduced_inputs_use_branches_only() {
        let g = germ("(y-x^2)^2", "x");
        assert_eq!(njac_support(&g), Err(Error::NonReducedInput("f")));
        // jac = -2(y - x^2) lies inside f = 0: Teis{1}{inf}
        assert_eq!(njac_branches(&g).unwrap(), diagram(&[(1, 0)]));
    }
}
