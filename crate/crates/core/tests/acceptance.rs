//! Acceptance suite: one pass/fail line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use njac::corpus::{builtin, moduli_family, CorpusEntry};
use njac::equisingularity::{
    generic_pencil_fingerprint, pair_fingerprint, random_transform, transform_pair,
    verify_njac_invariance,
};
use njac::jacobian::{
    branch_contributions, hironaka_data, jacobian_quotients, njac, njac_branches, njac_support,
    MapGerm, Method,
};
use njac::local::{
    generic_pencil_milnor, generic_pencil_milnor_bounded, intersection_multiplicity,
    intersection_multiplicity_puiseux, intersection_multiplicity_resultant, milnor_number,
};
use njac::newton::primitive_vectors;
use njac::puiseux::{branches_at_origin, Precision};
use njac::{parse_polynomial, Elementary, ExtNat, Inclination, NewtonDiagram, Poly, Rational};

type Outcome = Result<(), String>;

const SEED: u64 = 20_240_601;
const TRIALS: u32 = 5;
const DEGREE: u32 = 3;

fn p(s: &str) -> Poly {
    parse_polynomial(s).unwrap()
}

fn fin(n: u64) -> ExtNat {
    ExtNat::Finite(n)
}

fn diagram(v: &[(u64, u64)]) -> NewtonDiagram {
    NewtonDiagram::from_vertices(v.to_vec()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn finite(v: ExtNat) -> u64 {
    match v {
        ExtNat::Finite(k) => k,
        ExtNat::Infinite => panic!("unexpected infinite value"),
    }
}

fn name(e: &CorpusEntry) -> String {
    format!("({} ; {})", e.source.0, e.source.1)
}

fn everything() -> Vec<CorpusEntry> {
    builtin().into_iter().chain(moduli_family()).collect()
}

fn criterion_1() -> Outcome {
    let d = NewtonDiagram::of_poly(&p("y^5+2*x*y^3-x^3*y^2+3*x^4*y")).map_err(|e| e.to_string())?;
    ensure(d == diagram(&[(0, 5), (1, 3), (4, 1)]), || {
        format!("vertices {d}")
    })?;
    let got: BTreeSet<Elementary> = d.elementary_decomposition().into_iter().collect();
    let want: BTreeSet<Elementary> = [
        (fin(1), fin(2)),
        (fin(3), fin(2)),
        (ExtNat::Infinite, fin(1)),
    ]
    .into_iter()
    .map(|(a, b)| Elementary::new(a, b).unwrap())
    .collect();
    ensure(got == want, || format!("decomposition {got:?}"))?;
    let half = |n: i64| Inclination::Finite(Rational::new(n.into(), 2.into()));
    let want: BTreeSet<Inclination> = [half(1), half(3), Inclination::Infinite]
        .into_iter()
        .collect();
    ensure(d.inclinations() == want, || {
        format!("inclinations {:?}", d.inclinations())
    })?;
    ensure(
        NewtonDiagram::sum_elementary(&d.elementary_decomposition()) == d,
        || "sum of summands".into(),
    )
}

fn criterion_2() -> Outcome {
    let (x, y) = (p("x"), p("y"));
    for n in 1..=6u32 {
        for m in 1..=6u32 {
            if num_integer::gcd(n, m) != 1 {
                continue;
            }
            let mu = generic_pencil_milnor(&x, &y, n, m).map_err(|e| e.to_string())?;
            let want = fin(((m - 1) * (n - 1)) as u64);
            ensure(mu == want, || format!("(n,m)=({n},{m}): {mu} != {want}"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    // Images of the direct-image curves x + y^3 and (x - y^2)^2.
    let cases = [("y^2-x^3", "x", "x+y^3"), ("y^2-x^3", "y", "(x-y^2)^2")];
    for (f, g, image) in cases {
        let germ = MapGerm::parse(f, g).unwrap();
        let want = NewtonDiagram::of_poly(&p(image)).unwrap();
        let a = njac_branches(&germ).map_err(|e| e.to_string())?;
        let b = njac_support(&germ).map_err(|e| e.to_string())?;
        let both = njac(&germ, Method::Both).map_err(|e| e.to_string())?;
        ensure(a == want && b == want && both == want, || {
            format!("({f},{g}): {a} / {b} vs {want}")
        })?;
    }
    ensure(
        NewtonDiagram::of_poly(&p("x+y^3")).unwrap() == diagram(&[(0, 3), (1, 0)])
            && NewtonDiagram::of_poly(&p("(x-y^2)^2")).unwrap() == diagram(&[(0, 4), (2, 0)]),
        || "image diagrams".into(),
    )
}

fn criterion_4() -> Outcome {
    let corpus = builtin();
    ensure(corpus.len() >= 20, || {
        format!("corpus has {} entries", corpus.len())
    })?;
    for e in &corpus {
        let (f, g) = (e.germ.f(), e.germ.g());
        ensure(
            f.total_degree() <= Some(6) && g.total_degree() <= Some(6),
            || format!("{} too large", name(e)),
        )?;
        let a = njac_branches(&e.germ).map_err(|err| format!("{}: {err}", name(e)))?;
        let b = njac_support(&e.germ).map_err(|err| format!("{}: {err}", name(e)))?;
        ensure(a == b, || format!("{}: branches {a}, support {b}", name(e)))?;
        let i0 = finite(intersection_multiplicity(f, g).unwrap()) as i128;
        for (m, n) in primitive_vectors(8) {
            // The bound only truncates pencil members; larger answers are recomputed in full.
            let bound = (m * a.width()).min(n * a.height()) + (i0 as u64) * m * n + 1;
            let mu = finite(generic_pencil_milnor_bounded(f, g, n as u32, m as u32, bound).unwrap())
                as i128;
            let rhs = mu - i0 * ((m as i128 - 1) * (n as i128 - 1) - 1) - 1;
            ensure(a.support(m, n) as i128 == rhs, || {
                format!(
                    "{} at ({m},{n}): support {} vs {rhs}",
                    name(e),
                    a.support(m, n)
                )
            })?;
        }
    }
    Ok(())
}

fn criterion_5(reports: &mut Vec<String>) -> Outcome {
    for e in everything() {
        let r = verify_njac_invariance(e.germ.f(), e.germ.g(), TRIALS, DEGREE, SEED)
            .map_err(|err| format!("{}: {err}", name(&e)))?;
        reports.push(r.to_json().to_string());
        ensure(r.trials.len() == TRIALS as usize && r.all_match(), || {
            format!("{}: {}", name(&e), r.to_json())
        })?;
    }
    let family = moduli_family();
    let diagrams: Vec<NewtonDiagram> = family
        .iter()
        .map(|e| njac(&e.germ, Method::Both).unwrap())
        .collect();
    let hashes: Vec<String> = family
        .iter()
        .map(|e| pair_fingerprint(e.germ.f(), e.germ.g()).unwrap().hash())
        .collect();
    ensure(hashes.iter().all(|h| *h == hashes[0]), || {
        "moduli family fingerprints differ".into()
    })?;
    ensure(diagrams.iter().all(|d| *d == diagrams[0]), || {
        format!("moduli family diagrams {diagrams:?}")
    })
}

fn criterion_6() -> Outcome {
    for e in builtin() {
        let (f, g) = (e.germ.f(), e.germ.g());
        let base =
            generic_pencil_fingerprint(f, g, SEED).map_err(|err| format!("{}: {err}", name(&e)))?;
        for k in 0..TRIALS as u64 {
            let (aut, (uf, ug)) = random_transform(SEED, k, DEGREE);
            let (f1, g1) = transform_pair(f, g, &aut, &uf, &ug).unwrap();
            let fp = generic_pencil_fingerprint(&f1, &g1, SEED)
                .map_err(|err| format!("{}: {err}", name(&e)))?;
            ensure(fp == base, || {
                format!(
                    "{} transform {k}: {} vs {}",
                    name(&e),
                    fp.to_json(),
                    base.to_json()
                )
            })?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for e in everything() {
        let d = njac(&e.germ, Method::Both).map_err(|err| format!("{}: {err}", name(&e)))?;
        let q: BTreeSet<Inclination> = jacobian_quotients(&e.germ).unwrap().into_iter().collect();
        ensure(d.inclinations() == q, || {
            format!(
                "{}: inclinations {:?} vs quotients {q:?}",
                name(&e),
                d.inclinations()
            )
        })?;
        let teis: Vec<Elementary> = hironaka_data(&e.germ)
            .unwrap()
            .iter()
            .map(|h| Elementary::new(h.a, h.b).unwrap())
            .collect();
        let sum = NewtonDiagram::sum_elementary(&teis);
        ensure(sum == d, || {
            format!("{}: hironaka sum {sum} vs {d}", name(&e))
        })?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let entries = everything();
    let mut curves: Vec<Poly> = Vec::new();
    for e in &entries {
        for c in [e.germ.f(), e.germ.g()] {
            if !curves.contains(c) {
                curves.push(c.clone());
            }
        }
    }
    for (k, a) in curves.iter().enumerate() {
        for b in &curves[k + 1..] {
            let r = intersection_multiplicity_resultant(a, b).map_err(|e| e.to_string())?;
            let s = intersection_multiplicity_puiseux(a, b).map_err(|e| e.to_string())?;
            let t = intersection_multiplicity_puiseux(b, a).map_err(|e| e.to_string())?;
            let m = intersection_multiplicity(a, b).map_err(|e| e.to_string())?;
            ensure(r == s && s == t && t == m, || {
                format!("i0({a}, {b}): {r} {s} {t} {m}")
            })?;
        }
    }
    ensure(milnor_number(&p("y^2-x^3")).unwrap() == fin(2), || {
        "milnor of the cusp".into()
    })?;
    for e in &entries {
        let (f, g) = (e.germ.f(), e.germ.g());
        let d = njac(&e.germ, Method::Both).unwrap();
        let i0 = finite(intersection_multiplicity(f, g).unwrap());
        let (mf, mg) = (
            finite(milnor_number(f).unwrap()),
            finite(milnor_number(g).unwrap()),
        );
        ensure(
            d.height() + 1 == mf + i0 && d.width() + 1 == mg + i0,
            || format!("{}: {d} vs mu(f)={mf} mu(g)={mg} i0={i0}", name(e)),
        )?;
    }
    Ok(())
}

fn transcript(entries: &[CorpusEntry]) -> Vec<String> {
    let mut out = Vec::new();
    for e in entries {
        let (f, g) = (e.germ.f(), e.germ.g());
        out.push(njac(&e.germ, Method::Both).unwrap().to_json());
        let contributions: Vec<_> = branch_contributions(&e.germ)
            .unwrap()
            .iter()
            .map(|c| c.to_json().unwrap())
            .collect();
        out.push(serde_json::to_string(&contributions).unwrap());
        let hironaka: Vec<_> = hironaka_data(&e.germ)
            .unwrap()
            .iter()
            .map(|h| h.to_json())
            .collect();
        out.push(serde_json::to_string(&hironaka).unwrap());
        out.push(pair_fingerprint(f, g).unwrap().canonical_bytes());
        out.push(
            generic_pencil_fingerprint(f, g, SEED)
                .unwrap()
                .canonical_bytes(),
        );
        let branches: Vec<_> = branches_at_origin(f, Precision::default())
            .unwrap()
            .iter()
            .map(|b| b.to_json(8).unwrap())
            .collect();
        out.push(serde_json::to_string(&branches).unwrap());
    }
    out
}

fn criterion_9(reports: &[String]) -> Outcome {
    let entries = everything();
    let first = transcript(&entries);
    let second = transcript(&entries);
    ensure(first == second, || "transcripts differ between runs".into())?;
    ensure(!reports.is_empty(), || {
        "no verification reports recorded".into()
    })?;
    for (e, old) in entries.iter().zip(reports) {
        let again = verify_njac_invariance(e.germ.f(), e.germ.g(), TRIALS, DEGREE, SEED)
            .unwrap()
            .to_json()
            .to_string();
        ensure(*old == again, || {
            format!("{}: verification report differs", name(e))
        })?;
    }
    Ok(())
}

fn run(label: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            println!("PASS {label} ({secs:.1}s)");
            true
        }
        Err(msg) => {
            println!("FAIL {label} ({secs:.1}s): {msg}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let results = [
        run(
            "1 example diagram, decomposition and inclinations",
            criterion_1,
        ),
        run("2 pencil Milnor numbers of (x, y)", criterion_2),
        run("3 worked germs by both routes", criterion_3),
        run(
            "4 route equivalence and support values on the corpus",
            criterion_4,
        ),
        run(
            "5 jacobian diagram invariance under equisingular transforms",
            || criterion_5(&mut reports),
        ),
        run("6 generic pencil fingerprint invariance", criterion_6),
        run("7 quotients and Hironaka sums", criterion_7),
        run(
            "8 intersection multiplicities by three routes and classical totals",
            criterion_8,
        ),
        run("9 byte-identical JSON across repeated runs", || {
            criterion_9(&reports)
        }),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
