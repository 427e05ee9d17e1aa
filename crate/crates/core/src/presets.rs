//! Named example graphs.

use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::Result;
use crate::graph::WeightedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    /// Graph file in the text format.
    pub source: &'static str,
    /// Start position, when the unit position is not the natural one.
    pub start: Option<&'static [i64]>,
}

impl Preset {
    pub fn graph(&self) -> Result<WeightedGraph> {
        WeightedGraph::parse(self.source)
    }

    pub fn start_position(&self) -> Option<Vec<Cyclotomic>> {
        self.start
            .map(|s| s.iter().map(|&x| Cyclotomic::from_integer(x)).collect())
    }
}

const PRESETS: &[Preset] = &[
    Preset {
        name: "a2",
        description: "A2: two vertices joined by a simple edge; the group is S3",
        source: "vertices 2\nedge 1 2\n",
        start: None,
    },
    Preset {
        name: "s4-chain",
        description: "A3 chain with weights a = b = 1, the standard representation of S4",
        source: "vertices 3\nedge 1 2 w=1\nedge 2 3 w=1\n",
        start: None,
    },
    Preset {
        name: "six-vertex-signed",
        description: "balanced signed graph on six vertices with potentials (1, -1, 1, -1, -1, -1)",
        source: "vertices 6\nedge 1 2 w=-1\nedge 2 3 w=-1\nedge 2 4 w=1\nedge 3 5 w=-1\nedge 4 5 w=1\nedge 5 6 w=1\n",
        start: None,
    },
    Preset {
        name: "four-cycle-signed",
        description: "4-cycle with one negative edge; unbalanced, so the representation is not faithful",
        source: "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 1 w=-1\n",
        start: None,
    },
    Preset {
        name: "four-cycle-affine",
        description: "4-cycle with cycle weight 2 of infinite order; faithful, affine type A3",
        source: "vertices 4\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 1 w=2\n",
        start: None,
    },
    Preset {
        name: "imo-pentagon",
        description: "pentagon with k = 1 on every edge, started from (-1, 2, 2, 2, 2)",
        source: "vertices 5\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 1\n",
        start: Some(&[-1, 2, 2, 2, 2]),
    },
];

pub fn presets() -> &'static [Preset] {
    PRESETS
}

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse() {
        for p in presets() {
            let g = p.graph().unwrap();
            assert!(g.validate().is_empty(), "{}", p.name);
            if let Some(s) = p.start {
                assert_eq!(s.len(), g.vertex_count());
            }
        }
        assert!(preset("a2").is_some());
        assert!(preset("nope").is_none());
    }
}
