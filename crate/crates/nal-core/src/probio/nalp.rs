//! The native NALP problem text format.
//!
//! ```text
//! NALP 1
//! CONES k
//! NN n | SOC n | PSD p      (k lines)
//! DIMS m nvec
//! A nnz
//! row col value             (nnz lines, 0-based)
//! B m
//! <m values>
//! C nvec
//! <nvec values>
//! END
//! ```
//!
//! UTF-8, line oriented, `#` starts a comment. PSD coordinates use the
//! scaled lower-triangle order (column-major, off-diagonals already
//! multiplied by √2 in the file). Values round-trip exactly: the writer
//! emits shortest round-trip decimals.

use std::fmt::Write as _;

use super::{ProbError, Problem};
use crate::cones::{BlockKind, ConeDesc, Element};
use crate::linalg::LinearMap;

struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

struct Tokens<'a> {
    items: Vec<Token<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn lex(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            for piece in line.split_whitespace() {
                let offset = piece.as_ptr() as usize - line.as_ptr() as usize;
                items.push(Token {
                    text: piece,
                    line: ln + 1,
                    col: offset + 1,
                });
            }
            last_line = ln + 1;
        }
        Tokens {
            items,
            pos: 0,
            last_line,
        }
    }

    fn error(&self, line: usize, col: usize, msg: impl Into<String>) -> ProbError {
        ProbError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self, expected: &str) -> Result<&Token<'a>, ProbError> {
        if self.pos < self.items.len() {
            let tok = &self.items[self.pos];
            self.pos += 1;
            Ok(tok)
        } else {
            Err(ProbError::Parse {
                line: self.last_line,
                col: 1,
                msg: format!("unexpected end of file, expected {expected}"),
            })
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ProbError> {
        let tok = self.next(word)?;
        if tok.text != word {
            let (line, col, text) = (tok.line, tok.col, tok.text.to_string());
            return Err(self.error(line, col, format!("expected `{word}`, found `{text}`")));
        }
        Ok(())
    }

    fn usize(&mut self, what: &str) -> Result<usize, ProbError> {
        let tok = self.next(what)?;
        let (line, col, text) = (tok.line, tok.col, tok.text.to_string());
        text.parse::<usize>()
            .map_err(|_| self.error(line, col, format!("expected {what} (integer), found `{text}`")))
    }

    fn f64(&mut self, what: &str) -> Result<f64, ProbError> {
        let tok = self.next(what)?;
        let (line, col, text) = (tok.line, tok.col, tok.text.to_string());
        text.parse::<f64>()
            .map_err(|_| self.error(line, col, format!("expected {what} (number), found `{text}`")))
    }
}

/// Parse a NALP document into a problem.
pub fn parse_nalp(text: &str) -> Result<Problem, ProbError> {
    let mut t = Tokens::lex(text);
    t.expect_keyword("NALP")?;
    let version = t.usize("format version")?;
    if version != 1 {
        return Err(ProbError::UnsupportedFeature(format!(
            "NALP version {version}"
        )));
    }

    t.expect_keyword("CONES")?;
    let nblocks = t.usize("cone block count")?;
    let mut blocks = Vec::with_capacity(nblocks);
    for _ in 0..nblocks {
        let tok = t.next("cone kind (NN/SOC/PSD)")?;
        let (line, col, kind) = (tok.line, tok.col, tok.text.to_string());
        let dim = t.usize("cone dimension")?;
        let block = match kind.as_str() {
            "NN" => BlockKind::Orthant(dim),
            "SOC" => {
                if dim < 2 {
                    return Err(t.error(line, col, "SOC n ≥ 2"));
                }
                BlockKind::SecondOrder(dim)
            }
            "PSD" => BlockKind::Psd(dim),
            other => {
                return Err(t.error(
                    line,
                    col,
                    format!("expected cone kind NN, SOC, or PSD, found `{other}`"),
                ))
            }
        };
        if dim == 0 {
            return Err(t.error(line, col, "cone dimension must be ≥ 1"));
        }
        blocks.push(block);
    }
    let cone = ConeDesc::new(blocks).map_err(|e| ProbError::Inconsistent(e.to_string()))?;

    t.expect_keyword("DIMS")?;
    let m = t.usize("row count m")?;
    let nvec = t.usize("coordinate length nvec")?;
    if nvec != cone.vec_len() {
        return Err(ProbError::Inconsistent(format!(
            "DIMS declares nvec = {nvec} but the cone blocks sum to {}",
            cone.vec_len()
        )));
    }

    t.expect_keyword("A")?;
    let nnz = t.usize("nonzero count")?;
    let mut trips = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        let row = t.usize("row index")?;
        let col = t.usize("column index")?;
        let val = t.f64("entry value")?;
        trips.push((row, col, val));
    }
    let a = LinearMap::from_triplets(m, nvec, &trips)
        .map_err(|e| ProbError::Inconsistent(e.to_string()))?;

    t.expect_keyword("B")?;
    let bn = t.usize("rhs length")?;
    if bn != m {
        return Err(ProbError::Inconsistent(format!(
            "B declares {bn} values but DIMS has m = {m}"
        )));
    }
    let mut b = Vec::with_capacity(m);
    for _ in 0..m {
        b.push(t.f64("rhs value")?);
    }

    t.expect_keyword("C")?;
    let cn = t.usize("cost length")?;
    if cn != nvec {
        return Err(ProbError::Inconsistent(format!(
            "C declares {cn} values but DIMS has nvec = {nvec}"
        )));
    }
    let mut c = Vec::with_capacity(nvec);
    for _ in 0..nvec {
        c.push(t.f64("cost value")?);
    }

    t.expect_keyword("END")?;

    Problem::new("nalp", cone, a, b, Element::from_vec(c))
}

/// Serialize a problem as a NALP document. `parse_nalp(write_nalp(p))`
/// reproduces `p` field by field.
pub fn write_nalp(problem: &Problem) -> String {
    let mut out = String::new();
    out.push_str("NALP 1\n");
    let _ = writeln!(out, "CONES {}", problem.cone.blocks().len());
    for b in problem.cone.blocks() {
        match *b {
            BlockKind::Orthant(n) => {
                let _ = writeln!(out, "NN {n}");
            }
            BlockKind::SecondOrder(n) => {
                let _ = writeln!(out, "SOC {n}");
            }
            BlockKind::Psd(p) => {
                let _ = writeln!(out, "PSD {p}");
            }
        }
    }
    let _ = writeln!(out, "DIMS {} {}", problem.rows(), problem.cone.vec_len());
    let _ = writeln!(out, "A {}", problem.a.nnz());
    for (r, c, v) in problem.a.triplets() {
        let _ = writeln!(out, "{r} {c} {v}");
    }
    let _ = writeln!(out, "B {}", problem.rows());
    for v in &problem.b {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(out, "C {}", problem.cone.vec_len());
    for v in problem.c.as_slice() {
        let _ = writeln!(out, "{v}");
    }
    out.push_str("END\n");
    out
}
