//! Line-oriented text formats for k-graphs and quotient graphs, and DOT export.
//!
//! ```text
//! kgraph k=2
//! vertex u
//! edge e color=1 range=u source=u
//! square e d = a f
//! ```
//!
//! ```text
//! qgraph torsion=2 free=0
//! subgroup 2
//! vertex v
//! morphism e degree=(1;) range=v source=v
//! compose e e = v
//! ```
//!
//! Colors are 1-based in text. Morphism degrees are coordinates in the Smith
//! basis of the subgroup, listed as `subgroup` rows; without rows the subgroup
//! is generated by `dᵢ·eᵢ` for the header's torsion orders. `#` starts a
//! comment.

mod dot;

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::kgraph::Skeleton;
use crate::lattice::{GDegree, QElem};
use crate::transforms::{Arrow, QGraph};

pub use dot::{kgraph_dot, qgraph_dot};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed graph file, not yet validated.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum GraphFile {
    KGraph(Skeleton),
    QGraph(QGraph),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    fn end(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.chars().count())
    }

    fn token(&self, i: usize, what: &str) -> Result<&Token<'a>, ParseError> {
        self.tokens.get(i).ok_or_else(|| self.error(self.end(), format!("expected {what}")))
    }

    /// `key=value` fields after position `from`, each required exactly once.
    fn fields(&self, from: usize, keys: &[&str]) -> Result<Vec<(&'a str, usize)>, ParseError> {
        let mut found: Vec<Option<(&str, usize)>> = vec![None; keys.len()];
        for t in &self.tokens[from.min(self.tokens.len())..] {
            let Some((key, value)) = t.text.split_once('=') else {
                return Err(self.error(t.column, format!("expected key=value, found `{}`", t.text)));
            };
            let Some(slot) = keys.iter().position(|k| *k == key) else {
                return Err(self.error(t.column, format!("unknown field `{key}`")));
            };
            if found[slot].is_some() {
                return Err(self.error(t.column, format!("field `{key}` given twice")));
            }
            found[slot] = Some((value, t.column + key.len() + 1));
        }
        keys.iter()
            .zip(found)
            .map(|(k, f)| f.ok_or_else(|| self.error(self.end(), format!("missing field `{k}`"))))
            .collect()
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.get(n) {
            Some(t) => Err(self.error(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, (byte, ch)) in content.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, pos)),
                (true, Some((b, p))) => {
                    tokens.push(Token { text: &content[b..byte], column: p + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, p)) = start {
            tokens.push(Token { text: &content[b..], column: p + 1 });
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn parse_int<T: std::str::FromStr>(line: &Line, text: &str, column: usize, what: &str) -> Result<T, ParseError> {
    text.parse().map_err(|_| line.error(column, format!("expected {what}, found `{text}`")))
}

fn parse_list(line: &Line, text: &str, column: usize) -> Result<Vec<i64>, ParseError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|x| parse_int(line, x.trim(), column, "an integer")).collect()
}

/// Reads either format, dispatching on the header line.
pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let ls = lines(text);
    let Some(first) = ls.first() else {
        return Err(ParseError { line: 1, column: 1, message: "empty file".into() });
    };
    match first.tokens[0].text {
        "kgraph" => parse_kgraph_lines(&ls).map(GraphFile::KGraph),
        "qgraph" => parse_qgraph_lines(&ls).map(GraphFile::QGraph),
        other => Err(first.error(1, format!("expected `kgraph` or `qgraph`, found `{other}`"))),
    }
}

pub fn parse_kgraph(text: &str) -> Result<Skeleton, ParseError> {
    parse_kgraph_lines(&lines(text))
}

pub fn parse_qgraph(text: &str) -> Result<QGraph, ParseError> {
    parse_qgraph_lines(&lines(text))
}

fn header<'a>(ls: &'a [Line<'a>], word: &str) -> Result<&'a Line<'a>, ParseError> {
    let Some(first) = ls.first() else {
        return Err(ParseError { line: 1, column: 1, message: "empty file".into() });
    };
    if first.tokens[0].text != word {
        return Err(first.error(1, format!("expected `{word}` header")));
    }
    Ok(first)
}

fn parse_kgraph_lines(ls: &[Line]) -> Result<Skeleton, ParseError> {
    let head = header(ls, "kgraph")?;
    let [(k, col)] = head.fields(1, &["k"])?[..] else { unreachable!() };
    let k: usize = parse_int(head, k, col, "a rank")?;
    let mut s = Skeleton::new(k);
    let mut vertices = HashMap::new();
    let mut edges = HashMap::new();
    for line in &ls[1..] {
        let t0 = &line.tokens[0];
        match t0.text {
            "vertex" => {
                let name = line.token(1, "a vertex name")?;
                line.expect_len(2)?;
                if vertices.contains_key(name.text) {
                    return Err(line.error(name.column, format!("duplicate vertex `{}`", name.text)));
                }
                vertices.insert(name.text, s.add_vertex(name.text));
            }
            "edge" => {
                let name = line.token(1, "an edge name")?;
                if edges.contains_key(name.text) {
                    return Err(line.error(name.column, format!("duplicate edge `{}`", name.text)));
                }
                let f = line.fields(2, &["color", "range", "source"])?;
                let color: usize = parse_int(line, f[0].0, f[0].1, "a color")?;
                if color == 0 {
                    return Err(line.error(f[0].1, "colors start at 1"));
                }
                let vertex = |(text, col): (&str, usize)| {
                    vertices.get(text).copied().ok_or_else(|| line.error(col, format!("unknown vertex `{text}`")))
                };
                let (range, source) = (vertex(f[1])?, vertex(f[2])?);
                edges.insert(name.text, s.add_edge(name.text, color - 1, range, source));
            }
            "square" => {
                let mut ids = Vec::new();
                for i in [1, 2, 4, 5] {
                    let t = line.token(i, "an edge name")?;
                    ids.push(
                        *edges.get(t.text).ok_or_else(|| line.error(t.column, format!("unknown edge `{}`", t.text)))?,
                    );
                }
                let eq = line.token(3, "`=`")?;
                if eq.text != "=" {
                    return Err(line.error(eq.column, format!("expected `=`, found `{}`", eq.text)));
                }
                line.expect_len(6)?;
                s.add_square(ids[0], ids[1], ids[2], ids[3]);
            }
            other => return Err(line.error(t0.column, format!("unknown directive `{other}`"))),
        }
    }
    Ok(s)
}

fn parse_degree(line: &Line, text: &str, column: usize) -> Result<QElem, ParseError> {
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| line.error(column, format!("expected (t;z), found `{text}`")))?;
    let (t, z) = inner.split_once(';').ok_or_else(|| line.error(column, format!("expected (t;z), found `{text}`")))?;
    Ok(QElem { torsion: parse_list(line, t, column)?, free: parse_list(line, z, column)? })
}

fn parse_qgraph_lines(ls: &[Line]) -> Result<QGraph, ParseError> {
    let head = header(ls, "qgraph")?;
    let f = head.fields(1, &["torsion", "free"])?;
    let torsion = parse_list(head, f[0].0, f[0].1)?;
    if let Some(&d) = torsion.iter().find(|&&d| d < 1) {
        return Err(head.error(f[0].1, format!("torsion order {d} is not positive")));
    }
    let free: usize = parse_int(head, f[1].0, f[1].1, "a rank")?;
    let k = torsion.len() + free;
    let mut rows = Vec::new();
    for line in ls[1..].iter().filter(|l| l.tokens[0].text == "subgroup") {
        let row = line.tokens[1..]
            .iter()
            .map(|t| parse_int(line, t.text, t.column, "an integer"))
            .collect::<Result<Vec<i64>, _>>()?;
        if row.len() != k {
            return Err(line.error(1, format!("subgroup row has {} entries, expected {k}", row.len())));
        }
        rows.push(GDegree(row));
    }
    if rows.is_empty() {
        rows = torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut r = vec![0; k];
                r[i] = d;
                GDegree(r)
            })
            .collect();
    }
    let mut gamma = QGraph::over(k, &rows);
    if gamma.quotient().torsion() != torsion || gamma.quotient().free_rank() != free {
        return Err(head.error(
            1,
            format!("header does not match the subgroup, whose quotient is {}", gamma.quotient().describe()),
        ));
    }
    let mut names: HashMap<&str, Arrow> = HashMap::new();
    for line in &ls[1..] {
        let t0 = &line.tokens[0];
        match t0.text {
            "subgroup" => {}
            "vertex" => {
                let name = line.token(1, "a vertex name")?;
                line.expect_len(2)?;
                if names.contains_key(name.text) {
                    return Err(line.error(name.column, format!("duplicate name `{}`", name.text)));
                }
                names.insert(name.text, Arrow::Vertex(gamma.add_vertex(name.text)));
            }
            "morphism" => {
                let name = line.token(1, "a morphism name")?;
                if names.contains_key(name.text) {
                    return Err(line.error(name.column, format!("duplicate name `{}`", name.text)));
                }
                let f = line.fields(2, &["degree", "range", "source"])?;
                let degree = parse_degree(line, f[0].0, f[0].1)?;
                let vertex = |(text, col): (&str, usize)| match names.get(text) {
                    Some(&Arrow::Vertex(v)) => Ok(v),
                    _ => Err(line.error(col, format!("unknown vertex `{text}`"))),
                };
                let (range, source) = (vertex(f[1])?, vertex(f[2])?);
                let m = gamma.add_morphism(name.text, degree, range, source);
                names.insert(name.text, Arrow::Morphism(m));
            }
            "compose" => {
                let mut arrows = Vec::new();
                for i in [1, 2, 4] {
                    let t = line.token(i, "a name")?;
                    arrows.push(
                        *names.get(t.text).ok_or_else(|| line.error(t.column, format!("unknown name `{}`", t.text)))?,
                    );
                }
                let eq = line.token(3, "`=`")?;
                if eq.text != "=" {
                    return Err(line.error(eq.column, format!("expected `=`, found `{}`", eq.text)));
                }
                line.expect_len(5)?;
                let (Arrow::Morphism(a), Arrow::Morphism(b)) = (arrows[0], arrows[1]) else {
                    return Err(line.error(t0.column, "only morphisms are composed explicitly"));
                };
                gamma.set_composition(a, b, arrows[2]).map_err(|e| line.error(t0.column, e.to_string()))?;
            }
            other => return Err(line.error(t0.column, format!("unknown directive `{other}`"))),
        }
    }
    Ok(gamma)
}

pub fn print_kgraph(s: &Skeleton) -> String {
    let mut out = format!("kgraph k={}\n", s.rank());
    for v in s.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    let vs = s.vertices();
    for e in s.edges() {
        writeln!(out, "edge {} color={} range={} source={}", e.name, e.color + 1, vs[e.range], vs[e.source]).unwrap();
    }
    let es = s.edges();
    for q in s.squares() {
        writeln!(out, "square {} {} = {} {}", es[q.a].name, es[q.b].name, es[q.b_prime].name, es[q.a_prime].name)
            .unwrap();
    }
    out
}

pub fn print_qgraph(gamma: &QGraph) -> String {
    let qm = gamma.quotient();
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let mut out = format!("qgraph torsion={} free={}\n", join(qm.torsion()), qm.free_rank());
    for row in qm.subgroup().generators() {
        let entries: Vec<String> = row.0.iter().map(i64::to_string).collect();
        writeln!(out, "subgroup {}", entries.join(" ")).unwrap();
    }
    for name in &gamma.restricted {
        writeln!(out, "# left out: {name}").unwrap();
    }
    for v in gamma.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    let vs = gamma.vertices();
    for m in gamma.morphisms() {
        writeln!(out, "morphism {} degree={} range={} source={}", m.name, m.degree, vs[m.range], vs[m.source]).unwrap();
    }
    for (a, b, c) in gamma.compositions() {
        let (a, b) = (Arrow::Morphism(a), Arrow::Morphism(b));
        writeln!(out, "compose {} {} = {}", gamma.name(a), gamma.name(b), gamma.name(c)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests;
