//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every operation returns a JSON string; failures come back as
//! `{"error": ..., "detail": ...}` so the page never has to catch.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use njac::jacobian::{
    hironaka_data, jacobian, jacobian_quotients, njac as njac_of, MapGerm, Method,
};
use njac::local::{intersection_multiplicity, milnor_number};
use njac::newton::render_svg;
use njac::{parse_polynomial, Error, NewtonDiagram};

fn failure(e: Error) -> Value {
    json!({ "error": e.kind(), "detail": e.to_string() })
}

fn finish(r: Result<Value, Error>) -> String {
    r.unwrap_or_else(failure).to_string()
}

/// Newton diagram of `h` with its decomposition and an SVG picture.
pub fn diagram_report(h: &str) -> String {
    finish((|| {
        let p = parse_polynomial(h)?;
        let d = NewtonDiagram::of_poly(&p)?;
        let dots: Vec<(u64, u64)> = p.support().map(|(i, j)| (i as u64, j as u64)).collect();
        Ok(json!({
            "vertices": d.vertices(),
            "decomposition": d.elementary_decomposition().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "inclinations": d.inclinations(),
            "svg": render_svg(&d, &dots),
        }))
    })())
}

/// Jacobian Newton diagram of `(f, g)` by the chosen route, with the
/// jacobian, its quotients and Hironaka data.
pub fn njac_report(f: &str, g: &str, method: &str) -> String {
    finish((|| {
        let method: Method = method.parse()?;
        let germ = MapGerm::new(parse_polynomial(f)?, parse_polynomial(g)?)?;
        let d = njac_of(&germ, method)?;
        Ok(json!({
            "vertices": d.vertices(),
            "jacobian": jacobian(&germ)?.to_string(),
            "quotients": jacobian_quotients(&germ)?,
            "hironaka": hironaka_data(&germ)?.iter().map(|h| h.to_json()).collect::<Vec<_>>(),
            "svg": render_svg(&d, &[]),
        }))
    })())
}

/// Intersection multiplicity of `f`, `g` and both Milnor numbers.
pub fn invariants_report(f: &str, g: &str) -> String {
    finish((|| {
        let (f, g) = (parse_polynomial(f)?, parse_polynomial(g)?);
        let milnor = |h: &njac::Poly| milnor_number(h).map(|v| json!(v)).unwrap_or_else(failure);
        Ok(json!({
            "intersection_multiplicity": intersection_multiplicity(&f, &g)?,
            "milnor_f": milnor(&f),
            "milnor_g": milnor(&g),
        }))
    })())
}

#[wasm_bindgen]
pub fn diagram(h: &str) -> String {
    diagram_report(h)
}

#[wasm_bindgen]
pub fn njac(f: &str, g: &str, method: &str) -> String {
    njac_report(f, g, method)
}

#[wasm_bindgen]
pub fn invariants(f: &str, g: &str) -> String {
    invariants_report(f, g)
}
