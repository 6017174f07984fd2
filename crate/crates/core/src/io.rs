//! Text formats.
//!
//! Hypergraph files hold one hyperedge per line as whitespace-separated node
//! tokens. Core files hold one token per line. In both, blank lines and lines
//! starting with `#` are skipped. Tokens are numbered in order of first
//! appearance in the hypergraph file.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{HittingSet, Hypergraph, NodeId};

/// Bidirectional map between file tokens and dense node indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelMap {
    /// Labels `"0"`, `"1"`, ... for `n` nodes.
    pub fn numeric(n: usize) -> Self {
        let mut map = Self::default();
        for v in 0..n {
            map.intern(&v.to_string());
        }
        map
    }

    fn intern(&mut self, token: &str) -> NodeId {
        if let Some(&v) = self.index.get(token) {
            return v;
        }
        let v = self.labels.len();
        self.labels.push(token.to_owned());
        self.index.insert(token.to_owned(), v);
        v
    }

    pub fn get(&self, token: &str) -> Option<NodeId> {
        self.index.get(token).copied()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses hyperedge-list text.
pub fn parse_hypergraph(text: &str) -> Result<(Hypergraph, LabelMap)> {
    let mut labels = LabelMap::default();
    let mut edges: Vec<Vec<NodeId>> = Vec::new();
    for (line, content) in content_lines(text) {
        let mut members: Vec<NodeId> = content.split_whitespace().map(|t| labels.intern(t)).collect();
        members.sort_unstable();
        members.dedup();
        if members.len() < 2 {
            return Err(Error::LineEdgeTooSmall { line, size: members.len() });
        }
        edges.push(members);
    }
    if edges.is_empty() {
        log::warn!("no hyperedges found; using an empty hypergraph");
    }
    let graph = Hypergraph::new(labels.len(), &edges)?;
    Ok((graph, labels))
}

fn read_text(path: &Path) -> Result<String> {
    let mut text = String::new();
    fs::File::open(path)
        .and_then(|f| BufReader::new(f).read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    Ok(text)
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<(Hypergraph, LabelMap)> {
    let path = path.as_ref();
    parse_hypergraph(&read_text(path)?)
}

/// Core tokens resolved against `labels`, plus the tokens that did not
/// resolve.
pub fn parse_core(text: &str, labels: &LabelMap) -> Result<(HittingSet, Vec<String>)> {
    let mut core = HittingSet::with_capacity(labels.len());
    let mut unknown = Vec::new();
    for (line, content) in content_lines(text) {
        for token in content.split_whitespace() {
            match labels.get(token) {
                Some(v) => {
                    core.insert(v);
                }
                None => {
                    log::warn!("line {line}: core token {token:?} does not occur in the hypergraph; ignored");
                    unknown.push(token.to_owned());
                }
            }
        }
    }
    if core.is_empty() {
        return Err(Error::EmptyCore);
    }
    Ok((core, unknown))
}

pub fn read_core(path: impl AsRef<Path>, labels: &LabelMap) -> Result<(HittingSet, Vec<String>)> {
    let path = path.as_ref();
    parse_core(&read_text(path)?, labels)
}

fn create(path: &Path) -> Result<BufWriter<fs::File>> {
    fs::File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

pub fn format_hypergraph(g: &Hypergraph, labels: &LabelMap, out: &mut impl Write) -> std::io::Result<()> {
    for e in g.edges() {
        let line: Vec<&str> = e.iter().map(|&v| labels.label(v)).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Writes one hyperedge per line. Nodes in no edge cannot be represented
/// and are lost.
pub fn write_hypergraph(path: impl AsRef<Path>, g: &Hypergraph, labels: &LabelMap) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    format_hypergraph(g, labels, &mut out).and_then(|()| out.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_core(path: impl AsRef<Path>, core: &HittingSet, labels: &LabelMap) -> Result<()> {
    let path = path.as_ref();
    let mut out = create(path)?;
    core.iter()
        .try_for_each(|v| writeln!(out, "{}", labels.label(v)))
        .and_then(|()| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// Reads lines from any reader, for callers that stream from stdin.
pub fn read_hypergraph_from(reader: impl Read) -> Result<(Hypergraph, LabelMap)> {
    let mut text = String::new();
    for line in BufReader::new(reader).lines() {
        let line = line.map_err(|e| Error::io("<stream>", e))?;
        text.push_str(&line);
        text.push('\n');
    }
    parse_hypergraph(&text)
}
