//! The `.tri` text format.
//!
//! ```text
//! # figure-eight knot complement
//! tetrahedra 2
//! gluing 0 0 -> 1 1302
//! shape 0 0.5 0.8660254037844386
//! ```
//!
//! `gluing t f -> u p` glues face `f` of tetrahedron `t` to face `p(f)` of
//! `u`, sending vertex `k` to `p(k)`. Either direction of a gluing may be
//! listed, or both if they agree. Shapes are optional but, when present,
//! must cover every tetrahedron.

use std::fmt::Write as _;

use cusptri_core::{Gluing, Perm4, ShapeAssignment, Triangulation, TriangulationError};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {source}")]
    Gluing { line: usize, source: TriangulationError },
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("shapes given for {given} of {tet_count} tetrahedra")]
    PartialShapes { given: usize, tet_count: usize },
    #[error("line {line}: {message}")]
    Shape { line: usize, message: String },
}

/// A parsed file: a closed triangulation and optional shapes.
#[derive(Clone, Debug, PartialEq)]
pub struct TriFile {
    pub triangulation: Triangulation,
    pub shapes: Option<ShapeAssignment>,
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    next: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    items.push((s, &text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            items.push((s, &text[s..]));
        }
        Tokens { line, items, next: 0 }
    }

    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, column: column + 1, message: message.into() }
    }

    fn end_column(&self) -> usize {
        self.items.last().map_or(0, |(c, t)| c + t.len())
    }

    fn word(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        let item = self.items.get(self.next).copied().ok_or_else(|| self.error(self.end_column(), format!("expected {what}")))?;
        self.next += 1;
        Ok(item)
    }

    fn parse<T: std::str::FromStr>(&mut self, what: &str) -> Result<(usize, T), ParseError> {
        let (column, text) = self.word(what)?;
        text.parse().map(|v| (column, v)).map_err(|_| self.error(column, format!("expected {what}, found `{text}`")))
    }

    fn expect(&mut self, literal: &str) -> Result<(), ParseError> {
        let (column, text) = self.word(&format!("`{literal}`"))?;
        if text == literal {
            Ok(())
        } else {
            Err(self.error(column, format!("expected `{literal}`, found `{text}`")))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.items.get(self.next) {
            Some(&(column, text)) => Err(self.error(column, format!("unexpected `{text}`"))),
            None => Ok(()),
        }
    }
}

pub fn parse_triangulation(text: &str) -> Result<TriFile, ParseError> {
    let mut tet_count: Option<usize> = None;
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    let mut shapes: Vec<Option<Complex64>> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Tokens::new(line, content);
        if tokens.items.is_empty() {
            continue;
        }
        let (column, keyword) = tokens.word("a statement")?;
        match keyword {
            "tetrahedra" => {
                if tet_count.is_some() {
                    return Err(tokens.error(column, "`tetrahedra` given twice"));
                }
                let (c, n): (usize, usize) = tokens.parse("a tetrahedron count")?;
                if n == 0 {
                    return Err(tokens.error(c, "a triangulation needs at least one tetrahedron"));
                }
                tokens.finish()?;
                tet_count = Some(n);
                gluings = vec![[None; 4]; n];
                shapes = vec![None; n];
            }
            "gluing" | "shape" => {
                let n = tet_count.ok_or_else(|| tokens.error(column, "`tetrahedra` must come first"))?;
                let (c, tet): (usize, usize) = tokens.parse("a tetrahedron index")?;
                if tet >= n {
                    return Err(tokens.error(c, format!("tetrahedron {tet} out of range")));
                }
                if keyword == "shape" {
                    let (_, re): (usize, f64) = tokens.parse("a real part")?;
                    let (_, im): (usize, f64) = tokens.parse("an imaginary part")?;
                    tokens.finish()?;
                    if !(im > 0.0 && re.is_finite() && im.is_finite()) {
                        return Err(ParseError::Shape { line, message: format!("shape {re} + {im}i is not in the upper half plane") });
                    }
                    if shapes[tet].replace(Complex64::new(re, im)).is_some() {
                        return Err(tokens.error(column, format!("shape of tetrahedron {tet} given twice")));
                    }
                    continue;
                }
                let (c, face): (usize, usize) = tokens.parse("a face index")?;
                if face > 3 {
                    return Err(tokens.error(c, "face index must be 0..3"));
                }
                tokens.expect("->")?;
                let (c, target): (usize, usize) = tokens.parse("a tetrahedron index")?;
                if target >= n {
                    return Err(tokens.error(c, format!("tetrahedron {target} out of range")));
                }
                let (c, text) = tokens.word("a permutation")?;
                let perm: Perm4 = text.parse().map_err(|e| tokens.error(c, format!("bad permutation `{text}`: {e}")))?;
                tokens.finish()?;
                let here = Gluing::new(target, perm);
                let back = Gluing::new(tet, perm.inverse());
                let there = perm.apply(face);
                if target == tet && there == face && perm.is_identity() {
                    return Err(ParseError::Gluing { line, source: TriangulationError::SelfIdentityGluing { tet, face } });
                }
                let clash = |slot: Option<Gluing>, want: Gluing| slot.is_some_and(|g| g != want);
                if clash(gluings[tet][face], here) {
                    return Err(ParseError::Gluing { line, source: TriangulationError::InvolutionViolation { tet, face } });
                }
                if clash(gluings[target][there], back) {
                    return Err(ParseError::Gluing {
                        line,
                        source: TriangulationError::InvolutionViolation { tet: target, face: there },
                    });
                }
                gluings[tet][face] = Some(here);
                gluings[target][there] = Some(back);
            }
            other => return Err(tokens.error(column, format!("unknown statement `{other}`"))),
        }
    }
    let n = tet_count.ok_or(ParseError::Triangulation(TriangulationError::Empty))?;
    let triangulation = Triangulation::new(gluings)?;
    triangulation.require_closed()?;
    let given = shapes.iter().filter(|s| s.is_some()).count();
    let shapes = match given {
        0 => None,
        g if g == n => {
            let values: Vec<Complex64> = shapes.into_iter().map(|s| s.expect("all present")).collect();
            Some(ShapeAssignment::new(values).expect("checked per line"))
        }
        _ => return Err(ParseError::PartialShapes { given, tet_count: n }),
    };
    Ok(TriFile { triangulation, shapes })
}

/// Writes each gluing once, from its lexicographically smaller side.
pub fn serialize(tri: &Triangulation, shapes: Option<&ShapeAssignment>) -> String {
    let mut out = String::new();
    writeln!(out, "tetrahedra {}", tri.tet_count()).expect("string write");
    for tet in 0..tri.tet_count() {
        for face in 0..4 {
            if let Some(g) = tri.gluing(tet, face) {
                if (tet, face) <= (g.tet, g.perm.apply(face)) {
                    writeln!(out, "gluing {tet} {face} -> {} {}", g.tet, g.perm).expect("string write");
                }
            }
        }
    }
    if let Some(shapes) = shapes {
        for (tet, z) in shapes.shapes().iter().enumerate() {
            writeln!(out, "shape {tet} {:?} {:?}", z.re, z.im).expect("string write");
        }
    }
    out
}
