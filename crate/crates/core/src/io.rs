//! Network, partition and probability-vector file formats.
//!
//! Networks come as JSON
//! (`{"nodes": 3, "edges": [{"tail": 0, "head": 1}, ..], "source": 0, "terminal": 2}`)
//! or as a small DOT subset:
//!
//! ```text
//! digraph relay {
//!     graph [source=s, terminal=t];
//!     s -> v;
//!     v -> t; v -> t;   // parallel links are separate edges
//! }
//! ```
//!
//! In DOT, edges are numbered in statement order. If every node id is a
//! non-negative integer the ids are used as node indices directly;
//! otherwise nodes are numbered in order of first appearance. Attribute
//! lists on nodes and edges are accepted and ignored. `nodes=<count>` may be
//! given as a graph attribute to declare trailing isolated nodes.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::correlated::CorrelationPartition;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::ring::{parse_rational, rational_to_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

impl Format {
    /// Guess from a file extension; anything but `.dot`/`.gv` is JSON.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dot") | Some("gv") => Format::Dot,
            _ => Format::Json,
        }
    }
}

pub fn parse_network(text: &str, format: Format) -> Result<Network> {
    match format {
        Format::Json => parse_network_json(text),
        Format::Dot => parse_network_dot(text),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    tail: usize,
    head: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkJson {
    nodes: usize,
    edges: Vec<EdgeJson>,
    source: usize,
    terminal: usize,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

pub fn parse_network_json(text: &str) -> Result<Network> {
    let file: NetworkJson = serde_json::from_str(text).map_err(json_error)?;
    let edges = file.edges.iter().map(|e| (e.tail, e.head)).collect();
    Network::new(file.nodes, edges, file.source, file.terminal)
}

pub fn network_to_json(net: &Network) -> String {
    let file = NetworkJson {
        nodes: net.node_count(),
        edges: net
            .edges()
            .iter()
            .map(|&(tail, head)| EdgeJson { tail, head })
            .collect(),
        source: net.source(),
        terminal: net.terminal(),
    };
    serde_json::to_string_pretty(&file).expect("network serializes")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Arrow,
    Undirected,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    let err = |line, message: String| Err(Error::Parse { line, message });
    while let Some(c) = chars.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '/' if chars.peek() == Some(&'/') => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '/' if chars.peek() == Some(&'*') => {
                chars.next();
                let start = line;
                let mut prev = ' ';
                loop {
                    match chars.next() {
                        Some('/') if prev == '*' => break,
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            prev = c;
                        }
                        None => return err(start, "unterminated comment".into()),
                    }
                }
            }
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                out.push((Tok::Arrow, line));
            }
            '-' if chars.peek() == Some(&'-') => {
                chars.next();
                out.push((Tok::Undirected, line));
            }
            '{' => out.push((Tok::LBrace, line)),
            '}' => out.push((Tok::RBrace, line)),
            '[' => out.push((Tok::LBracket, line)),
            ']' => out.push((Tok::RBracket, line)),
            '=' => out.push((Tok::Eq, line)),
            ';' => out.push((Tok::Semi, line)),
            ',' => out.push((Tok::Comma, line)),
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(c) => s.push(c),
                            None => return err(start, "unterminated string".into()),
                        },
                        Some(c) => {
                            if c == '\n' {
                                line += 1;
                            }
                            s.push(c);
                        }
                        None => return err(start, "unterminated string".into()),
                    }
                }
                out.push((Tok::Id(s), start));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' => {
                let mut s = String::from(c);
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '.' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Id(s), line));
            }
            other => return err(line, format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

struct DotParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |&(_, l)| l)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line(),
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn id(&mut self, what: &str) -> Result<(String, usize)> {
        let line = self.line();
        match self.peek() {
            Some(Tok::Id(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, line))
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn attr_list(&mut self) -> Result<Vec<(String, String, usize)>> {
        let mut attrs = Vec::new();
        while self.eat(&Tok::LBracket) {
            while !self.eat(&Tok::RBracket) {
                let (key, line) = self.id("attribute name")?;
                self.expect(Tok::Eq, "'=' after attribute name")?;
                let (value, _) = self.id("attribute value")?;
                attrs.push((key, value, line));
                if !self.eat(&Tok::Comma) {
                    self.eat(&Tok::Semi);
                }
            }
        }
        Ok(attrs)
    }
}

#[derive(Default)]
struct DotGraph {
    node_ids: Vec<(String, usize)>,
    edges: Vec<((String, usize), (String, usize))>,
    source: Option<(String, usize)>,
    terminal: Option<(String, usize)>,
    nodes: Option<(String, usize)>,
}

impl DotGraph {
    fn graph_attr(&mut self, key: String, value: String, line: usize) {
        match key.as_str() {
            "source" => self.source = Some((value, line)),
            "terminal" => self.terminal = Some((value, line)),
            "nodes" => self.nodes = Some((value, line)),
            _ => {}
        }
    }
}

pub fn parse_network_dot(text: &str) -> Result<Network> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let mut p = DotParser { toks, pos: 0, last_line };
    let mut g = DotGraph::default();

    if p.peek() == Some(&Tok::Id("strict".into())) {
        p.pos += 1;
    }
    match p.id("'digraph'")? {
        (kw, _) if kw == "digraph" => {}
        (kw, _) if kw == "graph" => return p.error("undirected graphs are not supported"),
        _ => return p.error("expected 'digraph'"),
    }
    if let Some(Tok::Id(_)) = p.peek() {
        p.pos += 1;
    }
    p.expect(Tok::LBrace, "'{'")?;
    loop {
        match p.peek() {
            None => return p.error("missing closing '}'"),
            Some(Tok::RBrace) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Semi) => {
                p.pos += 1;
                continue;
            }
            _ => {}
        }
        let first = p.id("statement")?;
        match (first.0.as_str(), p.peek()) {
            ("graph", Some(Tok::LBracket)) => {
                for (k, v, line) in p.attr_list()? {
                    g.graph_attr(k, v, line);
                }
            }
            ("node" | "edge", Some(Tok::LBracket)) => {
                p.attr_list()?;
            }
            (_, Some(Tok::Eq)) => {
                p.pos += 1;
                let (value, _) = p.id("attribute value")?;
                g.graph_attr(first.0, value, first.1);
            }
            (_, Some(Tok::Arrow)) => {
                let mut tail = first;
                g.node_ids.push(tail.clone());
                while p.eat(&Tok::Arrow) {
                    let head = p.id("edge head")?;
                    g.node_ids.push(head.clone());
                    g.edges.push((tail, head.clone()));
                    tail = head;
                }
                p.attr_list()?;
            }
            (_, Some(Tok::Undirected)) => return p.error("undirected edge '--' is not supported"),
            _ => {
                g.node_ids.push(first);
                p.attr_list()?;
            }
        }
        if !p.eat(&Tok::Semi) && !matches!(p.peek(), Some(Tok::RBrace) | Some(Tok::Id(_))) {
            return p.error("expected ';' after statement");
        }
    }
    if p.peek().is_some() {
        return p.error("unexpected content after closing '}'");
    }
    build_dot_network(g, last_line)
}

fn build_dot_network(g: DotGraph, last_line: usize) -> Result<Network> {
    let missing = |what: &str| Error::Parse {
        line: last_line,
        message: format!("missing graph attribute '{what}'"),
    };
    let source = g.source.clone().ok_or_else(|| missing("source"))?;
    let terminal = g.terminal.clone().ok_or_else(|| missing("terminal"))?;

    let numeric = g
        .node_ids
        .iter()
        .chain([&source, &terminal])
        .all(|(s, _)| s.parse::<usize>().is_ok());
    let mut names: Vec<String> = Vec::new();
    let mut index = |name: &str| -> usize {
        if numeric {
            return name.parse().expect("checked numeric");
        }
        match names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                names.push(name.to_string());
                names.len() - 1
            }
        }
    };
    for (id, _) in &g.node_ids {
        index(id);
    }
    let edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|((t, _), (h, _))| (index(t), index(h)))
        .collect();
    let s = index(&source.0);
    let t = index(&terminal.0);

    let mut node_count = if numeric {
        g.node_ids
            .iter()
            .map(|(id, _)| id.parse::<usize>().expect("checked numeric") + 1)
            .chain([s + 1, t + 1])
            .max()
            .unwrap_or(0)
    } else {
        names.len()
    };
    if let Some((text, line)) = &g.nodes {
        let declared: usize = text.parse().map_err(|_| Error::Parse {
            line: *line,
            message: format!("'nodes' must be a non-negative integer, got {text:?}"),
        })?;
        if declared < node_count {
            return Err(Error::Parse {
                line: *line,
                message: format!("'nodes' is {declared} but {node_count} nodes are referenced"),
            });
        }
        node_count = declared;
    }
    Network::new(node_count, edges, s, t)
}

/// Contents of a partition file: `{"rho": <number or "a/b">, "blocks": [[..], ..]}`.
/// `rho` may be omitted when it is supplied elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSpec {
    pub rho: Option<BigRational>,
    pub blocks: Vec<Vec<usize>>,
}

impl PartitionSpec {
    pub fn partition(&self, edge_count: usize) -> Result<CorrelationPartition> {
        CorrelationPartition::new(edge_count, &self.blocks)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionJson {
    #[serde(default)]
    rho: Option<serde_json::Value>,
    blocks: Vec<Vec<usize>>,
}

/// Exact value of a JSON number or rational string.
fn exact_value(value: &serde_json::Value) -> Option<BigRational> {
    match value {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => parse_rational(&n.to_string())
            .or_else(|| n.as_f64().and_then(BigRational::from_float)),
        _ => None,
    }
}

/// A correlation coefficient in `[0, 1]`, given as a decimal or `a/b`.
pub fn parse_rho(text: &str) -> Result<BigRational> {
    let rho = parse_rational(text)
        .or_else(|| text.trim().parse::<f64>().ok().and_then(BigRational::from_float))
        .ok_or_else(|| Error::InvalidRho(text.to_string()))?;
    check_rho(rho)
}

fn check_rho(rho: BigRational) -> Result<BigRational> {
    if rho < BigRational::zero() || rho > BigRational::one() {
        Err(Error::InvalidRho(rho.to_string()))
    } else {
        Ok(rho)
    }
}

pub fn parse_partition(text: &str) -> Result<PartitionSpec> {
    let file: PartitionJson = serde_json::from_str(text).map_err(json_error)?;
    let rho = match &file.rho {
        None => None,
        Some(v) => Some(check_rho(
            exact_value(v).ok_or_else(|| Error::InvalidRho(v.to_string()))?,
        )?),
    };
    Ok(PartitionSpec {
        rho,
        blocks: file.blocks,
    })
}

/// A JSON array of per-link values, each a number or a rational string.
pub fn parse_link_values(text: &str) -> Result<Vec<f64>> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text).map_err(json_error)?;
    values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            v.as_f64()
                .or_else(|| v.as_str().and_then(parse_rational).map(|r| rational_to_f64(&r)))
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    message: format!("entry {j} is not a number: {v}"),
                })
        })
        .collect()
}
