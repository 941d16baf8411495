//! Line-oriented interchange formats.
//!
//! * hypergraph: `hg <|P|> <|Q|> <|R|> <p> <q> <r>` then `e1 <v..>` / `e2 <v..>`
//!   lines (`x1 <v..>` marks a dummy padding edge);
//! * conflicts: `c <edge..>` and `d <edge..>` lines;
//! * matchings: `m1 <edge>` and `m2 <edge>` lines.
//!
//! Hypergraphs may also be stored as JSON (`{"shape": .., "edges": [..]}`);
//! `parse_hypergraph_any` accepts either form.
//!
//! Blank lines and `#` comments are ignored everywhere.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeClass, EdgeId, Hypergraph, HypergraphBuilder, Matching, Shape};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn parse_ids(line: usize, tokens: &[&str]) -> Result<Vec<u32>> {
    tokens.iter().map(|t| t.parse::<u32>().map_err(|_| Error::Parse { line, msg: format!("expected a non-negative integer, found {t:?}") })).collect()
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let s = h.shape();
    let mut out = format!("hg {} {} {} {} {} {}\n", s.n_p, s.n_q, s.n_r, s.p, s.q, s.r);
    for e in 0..h.n_edges() as EdgeId {
        let tag = match (h.class(e), h.is_dummy(e)) {
            (EdgeClass::H1, false) => "e1",
            (EdgeClass::H1, true) => "x1",
            (EdgeClass::H2, _) => "e2",
        };
        out.push_str(tag);
        for v in h.edge(e) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `hg` header".into() })?;
    if header[0] != "hg" || header.len() != 7 {
        return Err(Error::Parse { line: hl, msg: "header must be `hg <|P|> <|Q|> <|R|> <p> <q> <r>`".into() });
    }
    let v = parse_ids(hl, &header[1..])?;
    let shape = Shape { n_p: v[0], n_q: v[1], n_r: v[2], p: v[3], q: v[4], r: v[5] };
    let mut b = HypergraphBuilder::new(shape);
    for (ln, toks) in lines {
        let ids = parse_ids(ln, &toks[1..])?;
        let res = match toks[0] {
            "e1" => b.add_edge(EdgeClass::H1, &ids),
            "e2" => b.add_edge(EdgeClass::H2, &ids),
            "x1" => b.add_dummy_edge(&ids),
            other => return Err(Error::Parse { line: ln, msg: format!("unknown record {other:?}") }),
        };
        res.map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?;
    }
    b.build().map_err(|e| Error::Parse { line: hl, msg: e.to_string() })
}

/// Raw conflict lists as read from a file, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConflicts {
    pub c: Vec<Vec<EdgeId>>,
    pub d: Vec<Vec<EdgeId>>,
    pub comments: Vec<String>,
}

pub fn write_conflicts<'a>(c: impl IntoIterator<Item = &'a [EdgeId]>, d: impl IntoIterator<Item = &'a [EdgeId]>, comments: &[String]) -> String {
    let mut out = String::new();
    for line in comments {
        let _ = writeln!(out, "# {line}");
    }
    for (tag, fam) in [("c", c.into_iter().collect::<Vec<_>>()), ("d", d.into_iter().collect())] {
        for conflict in fam {
            out.push_str(tag);
            for e in conflict {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_conflicts(text: &str) -> Result<RawConflicts> {
    let mut raw = RawConflicts::default();
    for line in text.lines() {
        if let Some(c) = line.trim().strip_prefix('#') {
            raw.comments.push(c.trim().to_string());
        }
    }
    for (ln, toks) in content_lines(text) {
        let ids = parse_ids(ln, &toks[1..])?;
        match toks[0] {
            "c" => raw.c.push(ids),
            "d" => raw.d.push(ids),
            other => return Err(Error::Parse { line: ln, msg: format!("unknown record {other:?}") }),
        }
    }
    Ok(raw)
}

pub fn write_matching(m: &Matching) -> String {
    let mut out = String::new();
    for e in &m.m1 {
        let _ = writeln!(out, "m1 {e}");
    }
    for e in &m.m2 {
        let _ = writeln!(out, "m2 {e}");
    }
    out
}

pub fn parse_matching(text: &str, h: &Hypergraph) -> Result<Matching> {
    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    for (ln, toks) in content_lines(text) {
        if toks.len() != 2 {
            return Err(Error::Parse { line: ln, msg: "expected `m1 <edge>` or `m2 <edge>`".into() });
        }
        let id = parse_ids(ln, &toks[1..])?[0];
        if id as usize >= h.n_edges() {
            return Err(Error::Parse { line: ln, msg: format!("edge {id} out of range") });
        }
        match toks[0] {
            "m1" => m1.push(id),
            "m2" => m2.push(id),
            other => return Err(Error::Parse { line: ln, msg: format!("unknown record {other:?}") }),
        }
    }
    Ok(Matching::new(h, m1, m2))
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    class: EdgeClass,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    dummy: bool,
    vertices: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    shape: Shape,
    edges: Vec<EdgeJson>,
}

pub fn write_hypergraph_json(h: &Hypergraph) -> Result<String> {
    let doc = HypergraphJson {
        shape: h.shape(),
        edges: (0..h.n_edges() as EdgeId).map(|e| EdgeJson { class: h.class(e), dummy: h.is_dummy(e), vertices: h.edge(e).to_vec() }).collect(),
    };
    let mut out = serde_json::to_string(&doc)?;
    out.push('\n');
    Ok(out)
}

pub fn parse_hypergraph_json(text: &str) -> Result<Hypergraph> {
    let doc: HypergraphJson = serde_json::from_str(text)?;
    let mut b = HypergraphBuilder::new(doc.shape);
    for (i, e) in doc.edges.iter().enumerate() {
        let res = match (e.class, e.dummy) {
            (EdgeClass::H1, true) => b.add_dummy_edge(&e.vertices),
            (EdgeClass::H2, true) => return Err(Error::input(format!("edge #{i}: H2 edges cannot be dummies"))),
            (class, false) => b.add_edge(class, &e.vertices),
        };
        res.map_err(|err| Error::input(format!("edge #{i}: {err}")))?;
    }
    b.build()
}

/// Text or JSON, decided by the first non-blank character.
pub fn parse_hypergraph_any(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('{') {
        parse_hypergraph_json(text)
    } else {
        parse_hypergraph(text)
    }
}
