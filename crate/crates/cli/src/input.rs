//! Resolving graph arguments: a path, `-` for stdin, or `preset:NAME`.

use std::io::Read;

use weighted_coxeter::presets::{preset, presets};
use weighted_coxeter::{Cyclotomic, WeightedGraph};

use crate::commands::Failure;

/// A graph together with the start position its source suggests, if any.
pub struct Loaded {
    pub graph: WeightedGraph,
    pub start: Option<Vec<Cyclotomic>>,
}

pub fn read_source(arg: &str) -> Result<(String, Option<Vec<Cyclotomic>>), Failure> {
    if let Some(name) = arg.strip_prefix("preset:") {
        let p = preset(name).ok_or_else(|| {
            let names: Vec<_> = presets().iter().map(|p| p.name).collect();
            Failure::Validation(format!(
                "unknown preset {name:?}; available: {}",
                names.join(", ")
            ))
        })?;
        return Ok((p.source.to_string(), p.start_position()));
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Internal(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| Failure::Internal(format!("reading {arg}: {e}")))?
    };
    Ok((text, None))
}

pub fn load(arg: &str) -> Result<Loaded, Failure> {
    let (src, start) = read_source(arg)?;
    let graph =
        WeightedGraph::parse(&src).map_err(|e| Failure::Validation(format!("{arg}: {e}")))?;
    Ok(Loaded { graph, start })
}

/// Parses a comma- or whitespace-separated list of scalar literals.
pub fn parse_position(s: &str) -> Result<Vec<Cyclotomic>, Failure> {
    let parts: Vec<&str> = if s.contains(',') {
        s.split(',').collect()
    } else {
        s.split_whitespace().collect()
    };
    parts
        .into_iter()
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| Failure::Validation(format!("{e}"))))
        .collect()
}
