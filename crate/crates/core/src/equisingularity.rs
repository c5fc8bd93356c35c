//! Equisingularity fingerprints of curve pairs, equisingular-by-construction
//! transformations, and invariance harnesses.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra::rational::{format_rational, rat};
use crate::algebra::squarefree::gcd;
use crate::algebra::{ExtNat, Poly};
use crate::error::{Error, Result};
use crate::jacobian::{njac, MapGerm, Method};
use crate::newton::NewtonDiagram;
use crate::puiseux::{expand, Characteristic, Precision};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    F,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRecord {
    pub label: Option<Label>,
    pub multiplicity: u32,
    pub characteristic: Characteristic,
}

impl BranchRecord {
    fn key(&self) -> (Option<Label>, u32, u64, &[crate::Rational]) {
        (
            self.label,
            self.multiplicity,
            self.characteristic.multiplicity,
            &self.characteristic.exponents,
        )
    }
}

impl PartialOrd for BranchRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BranchRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Branch records with their pairwise intersection multiplicities, in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFingerprint {
    pub branches: Vec<BranchRecord>,
    pub contacts: Vec<Vec<ExtNat>>,
}

const MAX_PERMUTATIONS: usize = 1 << 16;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &v)| v)
            .collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

impl PairFingerprint {
    /// Sort records, then pick the lexicographically least contact matrix
    /// over reorderings of equal records.
    pub fn canonical(branches: Vec<BranchRecord>, contacts: Vec<Vec<ExtNat>>) -> Self {
        let n = branches.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| branches[a].cmp(&branches[b]));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match classes.last_mut() {
                Some(c) if branches[c[0]] == branches[i] => c.push(i),
                _ => classes.push(vec![i]),
            }
        }
        let options: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
        let total: usize = options
            .iter()
            .map(|o| o.len())
            .fold(1usize, |a, b| a.saturating_mul(b));
        assert!(
            total <= MAX_PERMUTATIONS,
            "too many equal branch records to canonicalize"
        );
        let mut best: Option<(Vec<ExtNat>, Vec<usize>)> = None;
        let mut idx = vec![0usize; options.len()];
        loop {
            let perm: Vec<usize> = idx
                .iter()
                .enumerate()
                .flat_map(|(c, &k)| options[c][k].iter().copied())
                .collect();
            let flat: Vec<ExtNat> = perm
                .iter()
                .flat_map(|&i| perm.iter().map(move |&j| (i, j)))
                .map(|(i, j)| contacts[i][j])
                .collect();
            if best.as_ref().is_none_or(|(b, _)| flat < *b) {
                best = Some((flat, perm));
            }
            let mut c = options.len();
            loop {
                if c == 0 {
                    break;
                }
                c -= 1;
                idx[c] += 1;
                if idx[c] < options[c].len() {
                    break;
                }
                idx[c] = 0;
                if c == 0 {
                    c = usize::MAX;
                    break;
                }
            }
            if c == usize::MAX || options.is_empty() {
                break;
            }
        }
        let perm = best.map(|(_, p)| p).unwrap_or_default();
        PairFingerprint {
            branches: perm.iter().map(|&i| branches[i].clone()).collect(),
            contacts: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| contacts[i][j]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "branches": self.branches.iter().map(|b| json!({
                "label": b.label.map(|l| match l { Label::F => "F", Label::G => "G" }),
                "multiplicity": b.multiplicity,
                "characteristic": b.characteristic.to_json(),
            })).collect::<Vec<_>>(),
            "contacts": self.contacts,
        })
    }

    pub fn canonical_bytes(&self) -> String {
        self.to_json().to_string()
    }

    /// SHA-256 of the canonical JSON, in hex.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical_bytes().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Per-branch records and member contacts of `h = 0`, with labels chosen
/// by `label(factor index)`.
fn fingerprint_of(
    h: &Poly,
    probes: &[Poly],
    label: impl Fn(&[ExtNat]) -> Option<Label>,
) -> Result<PairFingerprint> {
    let set = expand(h, probes, Precision::default())?;
    let members = set.members();
    let records: Vec<BranchRecord> = members
        .iter()
        .map(|m| {
            let b = &set.branches[m.branch];
            BranchRecord {
                label: label(&b.orders),
                multiplicity: b.multiplicity,
                characteristic: b.characteristic.clone(),
            }
        })
        .collect();
    let contacts: Vec<Vec<ExtNat>> = members
        .iter()
        .map(|a| {
            members
                .iter()
                .map(|b| set.member_intersection(a, b))
                .collect()
        })
        .collect();
    Ok(PairFingerprint::canonical(records, contacts))
}

pub fn pair_fingerprint(f: &Poly, g: &Poly) -> Result<PairFingerprint> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Err(Error::NotVanishingAtOrigin);
    }
    if gcd(f, g).vanishes_at_origin() {
        return Err(Error::CommonComponent);
    }
    fingerprint_of(&(f * g), &[f.clone(), g.clone()], |o| {
        Some(if o[0] == ExtNat::Infinite {
            Label::F
        } else {
            Label::G
        })
    })
}

pub fn curve_fingerprint(h: &Poly) -> Result<PairFingerprint> {
    fingerprint_of(h, &[], |_| None)
}

/// Polynomial automorphism germ `(x, y) ↦ (φ₁, φ₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGerm {
    pub phi1: Poly,
    pub phi2: Poly,
    pub degree_bound: u32,
}

impl AutomorphismGerm {
    pub fn identity() -> Self {
        AutomorphismGerm {
            phi1: Poly::x(),
            phi2: Poly::y(),
            degree_bound: 1,
        }
    }

    pub fn swap() -> Self {
        AutomorphismGerm {
            phi1: Poly::y(),
            phi2: Poly::x(),
            degree_bound: 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "x": self.phi1.to_string(), "y": self.phi2.to_string(), "degree_bound": self.degree_bound })
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> crate::Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-3..=3);
    }
    rat(p, rng.gen_range(1..=3))
}

fn automorphism_from(rng: &mut ChaCha8Rng, degree_bound: u32) -> AutomorphismGerm {
    let m: [i64; 4] = loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-5..=5));
        if m[0] * m[3] - m[1] * m[2] != 0 {
            break m;
        }
    };
    let mut comps = [
        Poly::from_terms([((1, 0), rat(m[0], 1)), ((0, 1), rat(m[1], 1))]),
        Poly::from_terms([((1, 0), rat(m[2], 1)), ((0, 1), rat(m[3], 1))]),
    ];
    for comp in comps.iter_mut() {
        for d in 2..=degree_bound {
            for i in 0..=d {
                if rng.gen_ratio(1, 3) {
                    let c = small_rational(rng);
                    *comp = &*comp + &Poly::monomial(c, i, d - i);
                }
            }
        }
    }
    let [phi1, phi2] = comps;
    AutomorphismGerm {
        phi1,
        phi2,
        degree_bound,
    }
}

/// Deterministic in `seed`: invertible linear part with entries in
/// `-5..=5` and sparse higher terms with small rational coefficients.
pub fn random_automorphism(seed: u64, degree_bound: u32) -> AutomorphismGerm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    automorphism_from(&mut rng, degree_bound.max(1))
}

fn random_unit(rng: &mut ChaCha8Rng) -> Poly {
    let c0 = rat(
        rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 },
        1,
    );
    Poly::from_terms([
        ((0, 0), c0),
        ((1, 0), rat(rng.gen_range(-2..=2), 1)),
        ((0, 1), rat(rng.gen_range(-2..=2), 1)),
    ])
}

/// `(unit_f · f∘φ, unit_g · g∘φ)`.
pub fn transform_pair(
    f: &Poly,
    g: &Poly,
    aut: &AutomorphismGerm,
    unit_f: &Poly,
    unit_g: &Poly,
) -> Result<(Poly, Poly)> {
    if num_traits::Zero::is_zero(&unit_f.constant_term())
        || num_traits::Zero::is_zero(&unit_g.constant_term())
    {
        return Err(Error::InvalidArgument(
            "units need a nonzero constant term".into(),
        ));
    }
    let f1 = unit_f * &f.compose(&aut.phi1, &aut.phi2);
    let g1 = unit_g * &g.compose(&aut.phi1, &aut.phi2);
    Ok((f1, g1))
}

const PENCIL_DRAWS: usize = 7;
const PENCIL_AGREEMENT: usize = 3;

/// Fingerprint of `f − t₀ g` agreed on by three of at most seven random
/// rational `t₀`.
pub fn generic_pencil_fingerprint(f: &Poly, g: &Poly, seed: u64) -> Result<PairFingerprint> {
    if !crate::local::finiteness_check(f, g) {
        return Err(Error::NotFinite);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<(PairFingerprint, usize)> = Vec::new();
    for _ in 0..PENCIL_DRAWS {
        let mut p = 0;
        while p == 0 {
            p = rng.gen_range(-60..=60);
        }
        let t = rat(p, rng.gen_range(1..=17));
        let h = f - &g.scale(&t);
        let fp = curve_fingerprint(&h)?;
        match seen.iter_mut().find(|(q, _)| *q == fp) {
            Some((_, k)) => {
                *k += 1;
                if *k >= PENCIL_AGREEMENT {
                    return Ok(fp);
                }
            }
            None => seen.push((fp, 1)),
        }
    }
    Err(Error::NoConsensus(
        seen.iter()
            .map(|(q, k)| format!("{}x{k}", q.hash()))
            .collect::<Vec<_>>()
            .join(", "),
    ))
}

#[derive(Debug, Clone)]
pub struct Trial {
    pub automorphism: AutomorphismGerm,
    pub units: (Poly, Poly),
    pub outcome: std::result::Result<(NewtonDiagram, String), Error>,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub njac: NewtonDiagram,
    pub fingerprint_hash: String,
    pub trials: Vec<Trial>,
}

impl InvarianceReport {
    pub fn all_match(&self) -> bool {
        self.trials.iter().all(|t| t.matches)
    }

    pub fn to_json(&self) -> Value {
        let trials: Vec<Value> = self
            .trials
            .iter()
            .map(|t| {
                let mut v = json!({
                    "automorphism": t.automorphism.to_json(),
                    "units": [t.units.0.to_string(), t.units.1.to_string()],
                    "match": t.matches,
                });
                match &t.outcome {
                    Ok((d, h)) => {
                        v["njac"] = serde_json::to_value(d).unwrap();
                        v["fingerprint_hash"] = json!(h);
                    }
                    Err(e) => v["error"] = json!(e.to_string()),
                }
                v
            })
            .collect();
        json!({
            "njac": self.njac,
            "fingerprint_hash": self.fingerprint_hash,
            "trials": trials,
            "all_match": self.all_match(),
        })
    }
}

/// The `index`-th random automorphism and pair of units drawn from `seed`.
pub fn random_transform(
    seed: u64,
    index: u64,
    degree_bound: u32,
) -> (AutomorphismGerm, (Poly, Poly)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    let aut = automorphism_from(&mut rng, degree_bound.max(1));
    let units = (random_unit(&mut rng), random_unit(&mut rng));
    (aut, units)
}

/// Random equisingular transforms of `(f, g)` must keep the jacobian Newton
/// diagram (both routes) and the pair fingerprint.
pub fn verify_njac_invariance(
    f: &Poly,
    g: &Poly,
    trials: u32,
    degree_bound: u32,
    seed: u64,
) -> Result<InvarianceReport> {
    verify_with(f, g, trials, degree_bound, seed, Method::Both)
}

pub fn verify_with(
    f: &Poly,
    g: &Poly,
    trials: u32,
    degree_bound: u32,
    seed: u64,
    method: Method,
) -> Result<InvarianceReport> {
    let base = MapGerm::new(f.clone(), g.clone())?;
    let diagram = njac(&base, method)?;
    let hash = pair_fingerprint(f, g)?.hash();
    let mut out = Vec::new();
    for k in 0..trials as u64 {
        let (aut, units) = random_transform(seed, k, degree_bound);
        let outcome = (|| {
            let (f1, g1) = transform_pair(f, g, &aut, &units.0, &units.1)?;
            let d = njac(&MapGerm::new(f1.clone(), g1.clone())?, method)?;
            Ok((d, pair_fingerprint(&f1, &g1)?.hash()))
        })();
        let matches = matches!(&outcome, Ok((d, h)) if *d == diagram && *h == hash);
        out.push(Trial {
            automorphism: aut,
            units,
            outcome,
            matches,
        });
    }
    Ok(InvarianceReport {
        njac: diagram,
        fingerprint_hash: hash,
        trials: out,
    })
}

/// Characteristic as the classical sequence `(m₀; β₁, …)` in integers.
pub fn characteristic_sequence(c: &Characteristic) -> Vec<u64> {
    let m = c.multiplicity;
    std::iter::once(m)
        .chain(c.exponents.iter().map(|e| {
            let v = e * crate::Rational::from_integer(m.into());
            num_traits::ToPrimitive::to_u64(&v.to_integer()).unwrap()
        }))
        .collect()
}

pub fn describe_characteristic(c: &Characteristic) -> String {
    let ex: Vec<String> = c.exponents.iter().map(format_rational).collect();
    format!("m0={} [{}]", c.multiplicity, ex.join(", "))
}

/// Count of branch records by label.
pub fn label_counts(fp: &PairFingerprint) -> BTreeMap<Option<Label>, usize> {
    let mut out = BTreeMap::new();
    for b in &fp.branches {
        *out.entry(b.label).or_insert(0) += 1;
    }
    out
}
