//! Line-oriented text format for weighted graphs.
//!
//! ```text
//! # comment
//! vertex u
//! vertex v
//! edge e : v -> u weight 2
//! edge f : v -> u
//! ```
//!
//! Identifiers start with a letter or underscore and continue with
//! alphanumerics or underscores. The weight defaults to 1.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Vertex { name: String },
    Edge { name: String, source: String, range: String, weight: u32 },
}

/// Declarations in file order together with their 1-based line numbers.
/// Equality ignores the line numbers.
#[derive(Clone, Debug, Default)]
pub struct GraphDocument {
    pub declarations: Vec<Declaration>,
    pub lines: Vec<usize>,
}

impl PartialEq for GraphDocument {
    fn eq(&self, other: &Self) -> bool {
        self.declarations == other.declarations
    }
}

impl Eq for GraphDocument {}

impl GraphDocument {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let mut declarations: Vec<Declaration> =
            g.vertex_names().iter().map(|n| Declaration::Vertex { name: n.clone() }).collect();
        declarations.extend(g.edges().iter().map(|e| Declaration::Edge {
            name: e.name.clone(),
            source: g.vertex_name(e.source).to_string(),
            range: g.vertex_name(e.range).to_string(),
            weight: e.weight,
        }));
        let lines = (1..=declarations.len()).collect();
        GraphDocument { declarations, lines }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let line = |i: usize| self.lines.get(i).copied().unwrap_or(i + 1);
        let mut vertices = HashSet::new();
        let mut edges = HashSet::new();
        let mut b = GraphBuilder::new();
        for (i, d) in self.declarations.iter().enumerate() {
            match d {
                Declaration::Vertex { name } => {
                    if !vertices.insert(name.as_str()) {
                        return Err(Error::Parse(format!("duplicate vertex '{name}'"), line(i)));
                    }
                    b.vertex(name.clone());
                }
                Declaration::Edge { name, source, range, weight } => {
                    if !edges.insert(name.as_str()) {
                        return Err(Error::Parse(format!("duplicate edge '{name}'"), line(i)));
                    }
                    for end in [source, range] {
                        if !vertices.contains(end.as_str()) {
                            return Err(Error::Parse(format!("unknown vertex '{end}'"), line(i)));
                        }
                    }
                    b.edge(name.clone(), source.clone(), range.clone(), *weight as i64);
                }
            }
        }
        b.build().map_err(|e| match e {
            Error::EmptyVertexSet => Error::Parse("no vertices declared".into(), 0),
            other => other,
        })
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    Int(&'a str),
    Colon,
    Arrow,
}

fn tokenize(line: &str, number: usize) -> Result<Vec<Token<'_>>> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            break;
        } else if c == b':' {
            out.push(Token::Colon);
            i += 1;
        } else if line[i..].starts_with("->") {
            out.push(Token::Arrow);
            i += 2;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token::Ident(&line[start..i]));
        } else if c.is_ascii_digit() || c == b'-' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Int(&line[start..i]));
        } else {
            let ch = line[i..].chars().next().unwrap_or('?');
            return Err(Error::Parse(format!("unexpected character '{ch}'"), number));
        }
    }
    Ok(out)
}

fn parse_line(tokens: &[Token<'_>], number: usize) -> Result<Declaration> {
    let syntax = |what: &str| Error::Parse(format!("syntax error: {what}"), number);
    match tokens {
        [Token::Ident("vertex"), Token::Ident(name)] => Ok(Declaration::Vertex { name: name.to_string() }),
        [Token::Ident("vertex"), ..] => Err(syntax("expected 'vertex NAME'")),
        [Token::Ident("edge"), Token::Ident(name), Token::Colon, Token::Ident(s), Token::Arrow, Token::Ident(r), rest @ ..] => {
            let weight = match rest {
                [] => 1,
                [Token::Ident("weight"), Token::Int(w)] => {
                    let w: i64 = w.parse().map_err(|_| syntax("weight is not an integer"))?;
                    if w < 1 || w > u32::MAX as i64 {
                        return Err(Error::Parse(
                            format!("edge '{name}' has weight {w}; weights must be at least 1"),
                            number,
                        ));
                    }
                    w as u32
                }
                _ => return Err(syntax("expected 'weight INT' after the edge")),
            };
            Ok(Declaration::Edge {
                name: name.to_string(),
                source: s.to_string(),
                range: r.to_string(),
                weight,
            })
        }
        [Token::Ident("edge"), ..] => Err(syntax("expected 'edge NAME : SOURCE -> RANGE [weight INT]'")),
        _ => Err(syntax("expected 'vertex' or 'edge'")),
    }
}

pub fn parse_document(text: &str) -> Result<GraphDocument> {
    let mut doc = GraphDocument::default();
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize(line, i + 1)?;
        if tokens.is_empty() {
            continue;
        }
        doc.declarations.push(parse_line(&tokens, i + 1)?);
        doc.lines.push(i + 1);
    }
    Ok(doc)
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    parse_document(text)?.to_graph()
}

pub fn render_document(doc: &GraphDocument) -> String {
    let mut out = String::new();
    for d in &doc.declarations {
        match d {
            Declaration::Vertex { name } => writeln!(out, "vertex {name}"),
            Declaration::Edge { name, source, range, weight: 1 } => {
                writeln!(out, "edge {name} : {source} -> {range}")
            }
            Declaration::Edge { name, source, range, weight } => {
                writeln!(out, "edge {name} : {source} -> {range} weight {weight}")
            }
        }
        .expect("writing to a string");
    }
    out
}

pub fn render_graph(g: &WeightedGraph) -> String {
    render_document(&GraphDocument::from_graph(g))
}
