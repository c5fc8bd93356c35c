//! Line-oriented corpus files of `f ; g` pairs.

use crate::algebra::parse::parse_polynomial;
use crate::error::{Error, Result};
use crate::jacobian::MapGerm;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub line: usize,
    pub source: (String, String),
    pub germ: MapGerm,
}

/// Blank lines and `#` comments are skipped; every other line holds
/// `f ; g`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |message: String| Error::Corpus { line, message };
        let (f, g) = body
            .split_once(';')
            .ok_or_else(|| err("expected `f ; g`".into()))?;
        if g.contains(';') {
            return Err(err("more than one `;`".into()));
        }
        let (f, g) = (f.trim(), g.trim());
        let fp = parse_polynomial(f).map_err(|e| err(e.to_string()))?;
        let gp = parse_polynomial(g).map_err(|e| err(e.to_string()))?;
        let germ = MapGerm::new(fp, gp).map_err(|e| err(e.to_string()))?;
        out.push(CorpusEntry {
            line,
            source: (f.to_string(), g.to_string()),
            germ,
        });
    }
    Ok(out)
}

pub const GERMS: &str = include_str!("../corpus/germs.txt");
pub const MODULI: &str = include_str!("../corpus/moduli.txt");

pub fn builtin() -> Vec<CorpusEntry> {
    parse_corpus(GERMS).expect("shipped corpus parses")
}

pub fn moduli_family() -> Vec<CorpusEntry> {
    parse_corpus(MODULI).expect("shipped corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lines_and_comments() {
        let c = parse_corpus("# head\n\nx ; y  # tail\ny^2-x^3;x\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].line, 4);
        assert_eq!(c[1].source.0, "y^2-x^3");
        assert!(matches!(
            parse_corpus("x y"),
            Err(Error::Corpus { line: 1, .. })
        ));
        assert!(matches!(parse_corpus("x ; x"), Err(Error::Corpus { .. })));
        assert!(builtin().len() >= 20);
        assert_eq!(moduli_family().len(), 4);
    }
}
