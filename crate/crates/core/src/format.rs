//! Line-oriented text formats.
//!
//! Edge list: first line `n`, then one `u v` line per edge. Haircomb: first
//! line `haircomb s`, second line the `s` leg lengths. Blank lines and lines
//! starting with `#` are ignored in both.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Tree};
use crate::profile::HomometricPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("document is empty")]
    Empty,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("found {found} edges, a tree on {n} vertices has {}", n - 1)]
    EdgeCount { found: usize, n: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("haircomb declares {declared} legs but lists {found}")]
    LegCount { declared: usize, found: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_number(line: usize, token: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| err(line, ParseErrorKind::Malformed(format!("expected a nonnegative integer, got {token:?}"))))
}

struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
    header_line: usize,
    last_line: usize,
}

fn parse_edge_list(text: &str, tree_only: bool) -> Result<EdgeList, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(err(1, ParseErrorKind::Empty))?;
    let mut tokens = header.split_whitespace();
    let n = parse_number(header_line, tokens.next().unwrap_or_default())?;
    if tokens.next().is_some() {
        return Err(err(header_line, ParseErrorKind::Malformed("header must hold only the vertex count".into())));
    }
    if n == 0 {
        return Err(err(header_line, ParseErrorKind::Malformed("vertex count must be at least 1".into())));
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(line, ParseErrorKind::Malformed(format!("expected \"u v\", got {content:?}"))));
        }
        let u = parse_number(line, tokens[0])?;
        let v = parse_number(line, tokens[1])?;
        for w in [u, v] {
            if w >= n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: w, n }));
            }
        }
        if u == v {
            return Err(err(line, ParseErrorKind::SelfLoop(u)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(line, ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
        }
        if tree_only && edges.len() + 1 == n {
            return Err(err(line, ParseErrorKind::EdgeCount { found: edges.len() + 1, n }));
        }
        edges.push((u, v));
    }
    Ok(EdgeList {
        n,
        edges,
        header_line,
        last_line,
    })
}

/// Parses an edge-list document as a general simple graph.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let list = parse_edge_list(text, false)?;
    Graph::from_edges(list.n, &list.edges)
        .map_err(|e| err(list.last_line, ParseErrorKind::Malformed(e.to_string())))
}

/// Parses an edge-list document that must describe a tree.
pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let list = parse_edge_list(text, true)?;
    if list.edges.len() + 1 != list.n {
        return Err(err(
            list.last_line,
            ParseErrorKind::EdgeCount {
                found: list.edges.len(),
                n: list.n,
            },
        ));
    }
    let g = Graph::from_edges(list.n, &list.edges)
        .map_err(|e| err(list.last_line, ParseErrorKind::Malformed(e.to_string())))?;
    if !g.is_connected() {
        return Err(err(list.header_line, ParseErrorKind::NotConnected));
    }
    Ok(Tree::try_from(g).expect("connected with n - 1 edges"))
}

/// Parses the haircomb document into its leg lengths.
pub fn parse_haircomb_lengths(text: &str) -> Result<Vec<usize>, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(err(1, ParseErrorKind::Empty))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "haircomb" {
        return Err(err(header_line, ParseErrorKind::Malformed("expected \"haircomb s\"".into())));
    }
    let s = parse_number(header_line, tokens[1])?;
    if s == 0 {
        return Err(err(header_line, ParseErrorKind::Malformed("spine length must be at least 1".into())));
    }
    let (line, body) = lines
        .next()
        .ok_or(err(header_line, ParseErrorKind::LegCount { declared: s, found: 0 }))?;
    let lengths = body
        .split_whitespace()
        .map(|t| parse_number(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if lengths.len() != s {
        return Err(err(line, ParseErrorKind::LegCount { declared: s, found: lengths.len() }));
    }
    if lengths.contains(&0) {
        return Err(err(line, ParseErrorKind::Malformed("leg lengths must be at least 1".into())));
    }
    if let Some((extra, _)) = lines.next() {
        return Err(err(extra, ParseErrorKind::Malformed("unexpected content after leg lengths".into())));
    }
    Ok(lengths)
}

/// A tree-bearing document in either accepted format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeDocument {
    EdgeList(Tree),
    Haircomb(Vec<usize>),
}

pub fn parse_tree_document(text: &str) -> Result<TreeDocument, ParseError> {
    let is_haircomb = content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.split_whitespace().next() == Some("haircomb"));
    if is_haircomb {
        parse_haircomb_lengths(text).map(TreeDocument::Haircomb)
    } else {
        parse_tree(text).map(TreeDocument::EdgeList)
    }
}

/// Writes a graph as an edge list, edges ascending.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_haircomb(lengths: &[usize]) -> String {
    format!("haircomb {}\n{}\n", lengths.len(), join(lengths, " "))
}

fn join(ids: &[usize], sep: &str) -> String {
    ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

/// Textual form of a pair: sorted vertex lists plus the profile digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub size: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub profile_sha: String,
}

impl From<&HomometricPair> for PairRecord {
    fn from(pair: &HomometricPair) -> Self {
        PairRecord {
            size: pair.size(),
            a: pair.a().to_vec(),
            b: pair.b().to_vec(),
            profile_sha: pair.profile().digest(),
        }
    }
}

impl PairRecord {
    pub fn to_text(&self) -> String {
        format!(
            "size={}\nA: {}\nB: {}\nprofile_sha: {}\n",
            self.size,
            join(&self.a, " "),
            join(&self.b, " "),
            self.profile_sha
        )
    }

    pub fn to_porcelain(&self) -> String {
        format!(
            "size={} A={} B={} profile_sha={}",
            self.size,
            join(&self.a, ","),
            join(&self.b, ","),
            self.profile_sha
        )
    }

    /// Parses either the multi-line or the single-line form. Unknown keys are
    /// skipped so that annotated command output parses too.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut fields: Vec<(usize, String, String)> = Vec::new();
        for (line, content) in content_lines(text) {
            if let Some((key, value)) = content.split_once(':') {
                fields.push((line, key.trim().to_string(), value.trim().to_string()));
                continue;
            }
            for token in content.split_whitespace() {
                let (key, value) = token
                    .split_once('=')
                    .ok_or(err(line, ParseErrorKind::Malformed(format!("expected key=value, got {token:?}"))))?;
                fields.push((line, key.to_string(), value.to_string()));
            }
        }
        let find = |key: &str| fields.iter().find(|(_, k, _)| k == key);
        let ids = |line: usize, value: &str| -> Result<Vec<usize>, ParseError> {
            value
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_number(line, t))
                .collect()
        };
        let missing = |key: &str| err(0, ParseErrorKind::Malformed(format!("missing field {key}")));
        let (line, _, size) = find("size").ok_or_else(|| missing("size"))?;
        let size = parse_number(*line, size)?;
        let (line, _, a) = find("A").ok_or_else(|| missing("A"))?;
        let a = ids(*line, a)?;
        let (line, _, b) = find("B").ok_or_else(|| missing("B"))?;
        let b = ids(*line, b)?;
        let (_, _, sha) = find("profile_sha").ok_or_else(|| missing("profile_sha"))?;
        if a.len() != size || b.len() != size {
            return Err(err(*line, ParseErrorKind::Malformed(format!("size={size} but sets have {} and {} ids", a.len(), b.len()))));
        }
        Ok(PairRecord {
            size,
            a,
            b,
            profile_sha: sha.clone(),
        })
    }
}

impl fmt::Display for PairRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
