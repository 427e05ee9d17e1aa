//! Line-oriented text format and its JSON mirror. Vertices are 1-based in both.
//!
//! ```text
//! # a triangle with one twisted edge
//! vertices 3
//! edge 1 2 m=3 w=-1
//! edge 2 3
//! edge 3 1 m=inf w=zeta(4)
//! ```
//!
//! `m` defaults to 3 and `w` to 1. Each edge line gives f((s_i, s_j)); the
//! reverse weight is the inverse unless the header `weights directed` is
//! present, in which case every orientation must be listed explicitly.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{CoxeterGraph, EdgeLabel, WeightFunction, WeightedGraph};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// JSON form of a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub directed_weights: bool,
    #[serde(default)]
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEntry {
    pub i: usize,
    pub j: usize,
    #[serde(default = "default_label")]
    pub m: EdgeLabel,
    #[serde(default = "Cyclotomic::one")]
    pub w: Cyclotomic,
}

fn default_label() -> EdgeLabel {
    EdgeLabel::Finite(3)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl GraphFile {
    pub fn parse_text(src: &str) -> Result<Self> {
        let mut vertices = None;
        let mut directed = false;
        let mut edges = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("vertices") => {
                    if vertices.is_some() {
                        return Err(parse_err(lineno, "duplicate vertices header"));
                    }
                    let n = tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(lineno, "expected `vertices N`"))?;
                    if tokens.next().is_some() {
                        return Err(parse_err(lineno, "trailing tokens after vertex count"));
                    }
                    vertices = Some(n);
                }
                Some("weights") => match (tokens.next(), tokens.next()) {
                    (Some("directed"), None) => directed = true,
                    (Some("reciprocal"), None) => directed = false,
                    _ => {
                        return Err(parse_err(
                            lineno,
                            "expected `weights directed` or `weights reciprocal`",
                        ))
                    }
                },
                Some("edge") => {
                    if vertices.is_none() {
                        return Err(parse_err(lineno, "edge before `vertices` header"));
                    }
                    let mut vertex = |name: &str| {
                        tokens
                            .next()
                            .and_then(|t| t.parse::<usize>().ok())
                            .ok_or_else(|| parse_err(lineno, format!("expected vertex {name}")))
                    };
                    let i = vertex("i")?;
                    let j = vertex("j")?;
                    let mut m = default_label();
                    let mut w = Cyclotomic::one();
                    // The weight literal may contain spaces, so everything after `w=` belongs to it.
                    let rest: Vec<&str> = tokens.collect();
                    let mut k = 0;
                    while k < rest.len() {
                        let tok = rest[k];
                        if let Some(v) = tok.strip_prefix("m=") {
                            m = v.parse().map_err(|e: String| parse_err(lineno, e))?;
                        } else if let Some(v) = tok.strip_prefix("w=") {
                            let mut lit = v.to_string();
                            while k + 1 < rest.len() && !rest[k + 1].starts_with("m=") {
                                k += 1;
                                lit.push(' ');
                                lit.push_str(rest[k]);
                            }
                            w = lit
                                .parse()
                                .map_err(|e: Error| parse_err(lineno, e.to_string()))?;
                        } else {
                            return Err(parse_err(lineno, format!("unexpected token {tok:?}")));
                        }
                        k += 1;
                    }
                    edges.push((lineno, EdgeEntry { i, j, m, w }));
                }
                Some(other) => {
                    return Err(parse_err(lineno, format!("unknown directive {other:?}")))
                }
                None => {}
            }
        }
        let vertices = vertices.ok_or_else(|| parse_err(0, "missing `vertices N` header"))?;
        let file = GraphFile {
            vertices,
            directed_weights: directed,
            edges: edges.iter().map(|(_, e)| e.clone()).collect(),
        };
        // Re-run the structural checks so errors point at the offending line.
        let lines: Vec<usize> = edges.iter().map(|(l, _)| *l).collect();
        file.build_with_lines(&lines)?;
        Ok(file)
    }

    pub fn parse_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| parse_err(e.line(), e.to_string()))
    }

    /// Accepts either format, deciding by the first non-blank character.
    pub fn parse_any(src: &str) -> Result<Self> {
        if src.trim_start().starts_with('{') {
            Self::parse_json(src)
        } else {
            Self::parse_text(src)
        }
    }

    pub fn build(&self) -> Result<WeightedGraph> {
        self.build_with_lines(&[])
    }

    fn build_with_lines(&self, lines: &[usize]) -> Result<WeightedGraph> {
        let n = self.vertices;
        let mut graph = CoxeterGraph::new(n);
        let mut weights = WeightFunction::new();
        for (k, e) in self.edges.iter().enumerate() {
            let line = lines.get(k).copied().unwrap_or(k + 1);
            let err = |m: String| parse_err(line, m);
            if e.i == 0 || e.j == 0 || e.i > n || e.j > n {
                return Err(err(format!("vertex out of range 1..={n}")));
            }
            if e.i == e.j {
                return Err(err("loops are not allowed".into()));
            }
            let (i, j) = (e.i - 1, e.j - 1);
            if let EdgeLabel::Finite(m) = e.m {
                if m < 3 {
                    return Err(err(format!("label m={m} must be at least 3 or inf")));
                }
            }
            match graph.label(i, j) {
                Some(prev) if prev != e.m => {
                    return Err(err(format!(
                        "conflicting labels {prev} and {} on edge {{{}, {}}}",
                        e.m, e.i, e.j
                    )))
                }
                Some(_) if !self.directed_weights => {
                    return Err(err(format!("edge {{{}, {}}} listed twice", e.i, e.j)))
                }
                _ => {}
            }
            if self.directed_weights && weights.get(i, j).is_some() {
                return Err(err(format!("weight on ({}, {}) given twice", e.i, e.j)));
            }
            graph.add_edge(i, j, e.m).map_err(|x| err(x.to_string()))?;
            if self.directed_weights {
                weights.set(i, j, e.w.clone());
            } else {
                weights
                    .set_reciprocal(i, j, e.w.clone())
                    .map_err(|_| err("weight must be nonzero".into()))?;
            }
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// Reciprocal-mode description of a weighted graph, one line per edge `i < j`.
    pub fn from_weighted(g: &WeightedGraph) -> Self {
        let edges = g
            .graph
            .edges()
            .map(|(i, j, m)| EdgeEntry {
                i: i + 1,
                j: j + 1,
                m,
                w: g.weights.get(i, j).cloned().unwrap_or_else(Cyclotomic::one),
            })
            .collect();
        GraphFile {
            vertices: g.vertex_count(),
            directed_weights: false,
            edges,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertices);
        if self.directed_weights {
            s.push_str("weights directed\n");
        }
        for e in &self.edges {
            let _ = writeln!(s, "edge {} {} m={} w={}", e.i, e.j, e.m, e.w);
        }
        s
    }
}

impl WeightedGraph {
    /// Parses text or JSON graph files.
    pub fn parse(src: &str) -> Result<Self> {
        GraphFile::parse_any(src)?.build()
    }

    pub fn to_text(&self) -> String {
        GraphFile::from_weighted(self).to_text()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from_weighted(self))
            .expect("graph file serializes")
    }
}
