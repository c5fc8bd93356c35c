use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use njac::corpus::parse_corpus;
use njac::equisingularity::{
    curve_fingerprint, generic_pencil_fingerprint, pair_fingerprint, verify_with, PairFingerprint,
};
use njac::jacobian::{
    hironaka_data, jacobian, jacobian_quotients, njac as njac_of, MapGerm, Method,
};
use njac::local::{intersection_multiplicity, milnor_number};
use njac::newton::{render_ascii, render_svg};
use njac::puiseux::{branches_at_origin, Precision};
use njac::{parse_polynomial, Error, NewtonDiagram, Poly};

const DEFAULT_SEED: u64 = 7;
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "njac",
    version,
    about = "Jacobian Newton diagrams of plane map germs"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Branches,
    Support,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Branches => Method::Branches,
            MethodArg::Support => Method::Support,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Newton diagram of a polynomial.
    Diagram { h: String },
    /// Intersection multiplicity at the origin.
    Imult { f: String, g: String },
    /// Milnor number at the origin.
    Milnor { h: String },
    /// Puiseux branches at the origin.
    Puiseux {
        h: String,
        /// Number of series terms shown per branch.
        #[arg(long, default_value_t = 8)]
        terms: usize,
        /// Truncation cap for the expansion.
        #[arg(long, default_value_t = 512)]
        cap: usize,
    },
    /// Jacobian determinant of the map germ.
    Jacobian { f: String, g: String },
    /// Jacobian Newton diagram.
    Njac {
        f: String,
        g: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Jacobian quotients.
    Quotients { f: String, g: String },
    /// Branch orders grouped by jacobian quotient.
    Hironaka { f: String, g: String },
    /// Equisingularity fingerprint of a curve or a pair of curves.
    Fingerprint { f: String, g: Option<String> },
    /// Fingerprint of the generic member of the pencil f - t g.
    Pencil {
        f: String,
        g: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Jacobian Newton diagram invariance under random equisingular transforms.
    Verify {
        f: String,
        g: String,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Both routes on every `f ; g` line of a corpus file.
    Corpus { file: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn poly(s: &str) -> Result<Poly, Failure> {
    parse_polynomial(s).map_err(|e| Failure::Usage(format!("cannot parse `{s}`: {e}")))
}

fn germ(f: &str, g: &str) -> Result<MapGerm, Failure> {
    Ok(MapGerm::new(poly(f)?, poly(g)?)?)
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "detail": e.to_string() })
}

fn diagram_json(d: &NewtonDiagram) -> Value {
    serde_json::to_value(d).unwrap()
}

fn render_diagram(format: Format, d: &NewtonDiagram, dots: &[(u64, u64)], extra: Value) -> String {
    match format {
        Format::Json => {
            let mut v = diagram_json(d);
            if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
                map.extend(more);
            }
            v.to_string()
        }
        Format::Ascii => render_ascii(d, dots),
        Format::Svg => render_svg(d, dots),
    }
}

/// Non-diagram results: JSON, or its compact text form for `ascii`.
fn render_value(format: Format, v: Value) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(v.to_string()),
        Format::Ascii => Ok(serde_json::to_string_pretty(&v).unwrap()),
        Format::Svg => Err(Failure::Usage(
            "svg output is only available for diagrams".into(),
        )),
    }
}

fn fingerprint_json(fp: &PairFingerprint) -> Value {
    json!({ "fingerprint": fp.to_json(), "hash": fp.hash() })
}

fn corpus_report(format: Format, file: &PathBuf) -> Result<Output, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let entries = parse_corpus(&text)?;
    let mut rows = Vec::new();
    let mut mismatch = false;
    let mut failed = false;
    for e in &entries {
        let mut row = json!({ "line": e.line, "f": e.source.0, "g": e.source.1 });
        match njac_of(&e.germ, Method::Both) {
            Ok(d) => row["njac"] = diagram_json(&d),
            Err(err) => {
                mismatch |= matches!(err, Error::RouteMismatch { .. });
                failed = true;
                row["error"] = error_json(&err);
            }
        }
        rows.push(row);
    }
    let code = if mismatch {
        2
    } else if failed {
        1
    } else {
        0
    };
    Ok(Output {
        text: render_value(format, json!({ "entries": rows }))?,
        code,
    })
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.format;
    let text = match &cli.command {
        Command::Diagram { h } => {
            let p = poly(h)?;
            let d = NewtonDiagram::of_poly(&p)?;
            let dots: Vec<(u64, u64)> = p.support().map(|(i, j)| (i as u64, j as u64)).collect();
            let extra = json!({
                "decomposition": d.elementary_decomposition().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "inclinations": d.inclinations(),
            });
            render_diagram(format, &d, &dots, extra)
        }
        Command::Imult { f, g } => {
            let v = intersection_multiplicity(&poly(f)?, &poly(g)?)?;
            render_value(format, json!({ "intersection_multiplicity": v }))?
        }
        Command::Milnor { h } => {
            let v = milnor_number(&poly(h)?)?;
            render_value(format, json!({ "milnor_number": v }))?
        }
        Command::Puiseux { h, terms, cap } => {
            let prec = Precision {
                cap: *cap,
                ..Precision::default()
            };
            let branches = branches_at_origin(&poly(h)?, prec)?;
            let list = branches
                .iter()
                .map(|b| b.to_json(*terms))
                .collect::<Result<Vec<_>, _>>()?;
            render_value(format, json!({ "branches": list }))?
        }
        Command::Jacobian { f, g } => {
            let j = jacobian(&germ(f, g)?)?;
            render_value(format, json!({ "jacobian": j.to_string() }))?
        }
        Command::Njac { f, g, method } => {
            let d = njac_of(&germ(f, g)?, (*method).into())?;
            render_diagram(format, &d, &[], json!({}))
        }
        Command::Quotients { f, g } => {
            let q = jacobian_quotients(&germ(f, g)?)?;
            render_value(format, json!({ "quotients": q }))?
        }
        Command::Hironaka { f, g } => {
            let groups = hironaka_data(&germ(f, g)?)?;
            render_value(
                format,
                json!({ "groups": groups.iter().map(|h| h.to_json()).collect::<Vec<_>>() }),
            )?
        }
        Command::Fingerprint { f, g } => {
            let fp = match g {
                Some(g) => pair_fingerprint(&poly(f)?, &poly(g)?)?,
                None => curve_fingerprint(&poly(f)?)?,
            };
            render_value(format, fingerprint_json(&fp))?
        }
        Command::Pencil { f, g, seed } => {
            let fp = generic_pencil_fingerprint(&poly(f)?, &poly(g)?, *seed)?;
            render_value(format, fingerprint_json(&fp))?
        }
        Command::Verify {
            f,
            g,
            trials,
            degree,
            seed,
            method,
        } => {
            let report = verify_with(
                &poly(f)?,
                &poly(g)?,
                *trials,
                *degree,
                *seed,
                (*method).into(),
            )?;
            let code = if report.all_match() { 0 } else { 2 };
            return Ok(Output {
                text: render_value(format, report.to_json())?,
                code,
            });
        }
        Command::Corpus { file } => return corpus_report(format, file),
    };
    Ok(Output::ok(text))
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("njac: cannot write output: {e}");
                return ExitCode::from(USAGE);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("njac: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Domain(e)) => {
            let code = if matches!(e, Error::RouteMismatch { .. }) {
                2
            } else {
                1
            };
            let _ = emit(&cli, &error_json(&e).to_string());
            ExitCode::from(code)
        }
    }
}
