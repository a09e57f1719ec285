//! Text formats: whitespace edge lists, a GML subset, community files and
//! LFR benchmark output.
//!
//! External vertex names are remapped to dense ids in order of first
//! appearance; the mapping is returned as an [`IdMap`].

use std::collections::HashMap;
use std::io::Write;

use noisenet_core::{CommunityAssignment, Graph, IngestReport};

use crate::error::{Error, Result};

/// Dense id to external name mapping, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdMap {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id of `name`, assigning the next free id when it is new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> Option<&str> {
        self.names.get(id).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Mapping restricted to `vertices`, renumbered in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> IdMap {
        let mut out = IdMap::new();
        for &v in vertices {
            out.intern(&self.names[v]);
        }
        out
    }
}

/// A parsed network.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: Graph,
    pub ids: IdMap,
    pub report: IngestReport,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses "u v" lines. Duplicate and reversed edges collapse and self-loops
/// are dropped; both are counted in the report. A vertex that only occurs in
/// a self-loop is kept as an isolated vertex.
pub fn load_edge_list(text: &str) -> Result<Loaded> {
    let mut ids = IdMap::new();
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected 2 vertex tokens, found {}", tokens.len()),
            ));
        }
        let u = ids.intern(tokens[0]);
        let v = ids.intern(tokens[1]);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::Format("edge list contains no edges".into()));
    }
    let (graph, report) = Graph::build(ids.len(), edges)?;
    Ok(Loaded { graph, ids, report })
}

/// Writes one "u v" line per edge, using external names when `ids` is given.
pub fn write_edge_list<W: Write>(
    graph: &Graph,
    ids: Option<&IdMap>,
    out: &mut W,
) -> std::io::Result<()> {
    for &(u, v) in graph.edges() {
        match ids {
            Some(map) => writeln!(
                out,
                "{} {}",
                map.name(u).unwrap_or_default(),
                map.name(v).unwrap_or_default()
            )?,
            None => writeln!(out, "{u} {v}")?,
        }
    }
    Ok(())
}

/// Parses "vertex community" lines against the names in `ids`.
///
/// Every vertex must appear exactly once and community ids must be integers.
pub fn load_communities(text: &str, ids: &IdMap) -> Result<CommunityAssignment> {
    let mut labels: Vec<Option<i64>> = vec![None; ids.len()];
    for (line, tokens) in content_lines(text) {
        if tokens.len() != 2 {
            return Err(Error::parse(
                line,
                format!(
                    "expected \"vertex community\", found {} tokens",
                    tokens.len()
                ),
            ));
        }
        let v = ids
            .get(tokens[0])
            .ok_or_else(|| Error::parse(line, format!("unknown vertex {}", tokens[0])))?;
        let label = tokens[1].parse::<i64>().map_err(|_| {
            Error::parse(
                line,
                format!("community id {:?} is not an integer", tokens[1]),
            )
        })?;
        if labels[v].replace(label).is_some() {
            return Err(Error::parse(
                line,
                format!("vertex {} is listed twice", tokens[0]),
            ));
        }
    }
    finish_labels(labels, |v| ids.name(v).unwrap_or_default().to_string())
}

fn finish_labels(
    labels: Vec<Option<i64>>,
    name: impl Fn(usize) -> String,
) -> Result<CommunityAssignment> {
    let mut dense = Vec::with_capacity(labels.len());
    for (v, label) in labels.into_iter().enumerate() {
        match label {
            Some(l) => dense.push(l),
            None => {
                return Err(Error::Format(format!(
                    "vertex {} has no community",
                    name(v)
                )))
            }
        }
    }
    Ok(CommunityAssignment::from_labels(&dense)?)
}

fn lfr_vertex(token: &str, line: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(Error::parse(
            line,
            format!("{token:?} is not a 1-based vertex id"),
        )),
    }
}

/// Reads LFR benchmark output: a 1-indexed "u v" network file, where each
/// edge may be listed in both directions, and a "vertex community" file.
///
/// The vertex count is the largest id seen in either file; every vertex
/// must have exactly one community.
pub fn load_lfr(network: &str, communities: &str) -> Result<(Graph, CommunityAssignment)> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (line, tokens) in content_lines(network) {
        if tokens.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected 2 vertex ids, found {}", tokens.len()),
            ));
        }
        let u = lfr_vertex(tokens[0], line)?;
        let v = lfr_vertex(tokens[1], line)?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::Format("network file contains no edges".into()));
    }
    let mut labels: Vec<Option<i64>> = vec![None; n];
    for (line, tokens) in content_lines(communities) {
        if tokens.len() != 2 {
            return Err(Error::parse(
                line,
                "expected \"vertex community\" (overlapping covers are not supported)",
            ));
        }
        let v = lfr_vertex(tokens[0], line)?;
        let label = tokens[1].parse::<i64>().map_err(|_| {
            Error::parse(
                line,
                format!("community id {:?} is not an integer", tokens[1]),
            )
        })?;
        if v >= labels.len() {
            labels.resize(v + 1, None);
        }
        if labels[v].replace(label).is_some() {
            return Err(Error::parse(
                line,
                format!("vertex {} is listed twice", v + 1),
            ));
        }
    }
    let n = labels.len();
    let (graph, _) = Graph::build(n, edges)?;
    let assignment = finish_labels(labels, |v| (v + 1).to_string())?;
    Ok((graph, assignment))
}

/// Writes `graph` and `assignment` in LFR conventions (1-indexed, each edge once).
pub fn write_lfr<W: Write, C: Write>(
    graph: &Graph,
    assignment: &CommunityAssignment,
    network: &mut W,
    communities: &mut C,
) -> std::io::Result<()> {
    for &(u, v) in graph.edges() {
        writeln!(network, "{}\t{}", u + 1, v + 1)?;
    }
    for (v, label) in assignment.vertex_labels().iter().enumerate() {
        writeln!(communities, "{}\t{}", v + 1, label)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Word(&'a str),
    Text(&'a str),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let mut out = Vec::new();
    let mut line = 1;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\n' => {
                line += 1;
                i += 1;
            }
            b if b.is_ascii_whitespace() => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'[' => {
                out.push((line, Token::Open));
                i += 1;
            }
            b']' => {
                out.push((line, Token::Close));
                i += 1;
            }
            b'"' => {
                let start = line;
                let from = i + 1;
                i = from;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(Error::parse(start, "unterminated string"));
                }
                out.push((start, Token::Text(&text[from..i])));
                i += 1;
            }
            _ => {
                let from = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'[' | b']' | b'"')
                {
                    i += 1;
                }
                out.push((line, Token::Word(&text[from..i])));
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Value<'a> {
    Scalar(&'a str),
    List(Vec<(usize, &'a str, Value<'a>)>),
}

struct GmlParser<'a> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
}

impl<'a> GmlParser<'a> {
    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.0)
    }

    /// Parses `key value` pairs until a closing bracket (nested) or the end (top level).
    fn list(&mut self, nested: bool) -> Result<Vec<(usize, &'a str, Value<'a>)>> {
        let mut items = Vec::new();
        loop {
            let Some(&(line, ref token)) = self.tokens.get(self.pos) else {
                if nested {
                    return Err(Error::parse(self.last_line(), "missing ']'"));
                }
                return Ok(items);
            };
            self.pos += 1;
            let key = match *token {
                Token::Close if nested => return Ok(items),
                Token::Word(w) => w,
                _ => return Err(Error::parse(line, "expected a key")),
            };
            let value = match self.tokens.get(self.pos) {
                Some(&(_, Token::Open)) => {
                    self.pos += 1;
                    Value::List(self.list(true)?)
                }
                Some(&(_, Token::Word(w) | Token::Text(w))) => {
                    self.pos += 1;
                    Value::Scalar(w)
                }
                _ => return Err(Error::parse(line, format!("key {key:?} has no value"))),
            };
            items.push((line, key, value));
        }
    }
}

fn scalar<'a>(block: &[(usize, &str, Value<'a>)], key: &str) -> Option<&'a str> {
    block.iter().find_map(|(_, k, v)| match v {
        Value::Scalar(s) if *k == key => Some(*s),
        _ => None,
    })
}

/// Reads the node/edge blocks of a GML graph. Only the keys `id`, `source`,
/// `target` and `value` are interpreted; everything else is skipped.
///
/// Vertices are numbered in node order. When every node has an integer
/// `value`, the values become the community assignment.
pub fn load_gml(text: &str) -> Result<(Loaded, Option<CommunityAssignment>)> {
    let mut parser = GmlParser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let top = parser.list(false)?;
    let graph_block = top
        .iter()
        .find_map(|(_, k, v)| match v {
            Value::List(items) if *k == "graph" => Some(items),
            _ => None,
        })
        .ok_or_else(|| Error::Format("GML input has no graph block".into()))?;

    let mut ids = IdMap::new();
    let mut values: Vec<Option<i64>> = Vec::new();
    let mut edges = Vec::new();
    for (line, key, value) in graph_block {
        let Value::List(block) = value else { continue };
        match *key {
            "node" => {
                let id =
                    scalar(block, "id").ok_or_else(|| Error::parse(*line, "node without id"))?;
                if ids.get(id).is_some() {
                    return Err(Error::parse(*line, format!("duplicate node id {id}")));
                }
                ids.intern(id);
                values.push(scalar(block, "value").and_then(|v| v.parse().ok()));
            }
            "edge" => {
                let source = scalar(block, "source")
                    .ok_or_else(|| Error::parse(*line, "edge without source"))?;
                let target = scalar(block, "target")
                    .ok_or_else(|| Error::parse(*line, "edge without target"))?;
                edges.push((*line, source, target));
            }
            _ => {}
        }
    }
    let mut dense = Vec::with_capacity(edges.len());
    for (line, source, target) in edges {
        let endpoint = |name: &str| {
            ids.get(name)
                .ok_or_else(|| Error::parse(line, format!("edge endpoint {name} is not a node")))
        };
        dense.push((endpoint(source)?, endpoint(target)?));
    }
    let (graph, report) = Graph::build(ids.len(), dense)?;
    let assignment = match values.iter().copied().collect::<Option<Vec<i64>>>() {
        Some(labels) if !labels.is_empty() => Some(CommunityAssignment::from_labels(&labels)?),
        _ => None,
    };
    Ok((Loaded { graph, ids, report }, assignment))
}
