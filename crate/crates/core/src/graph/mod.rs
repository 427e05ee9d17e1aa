//! Coxeter graphs with legal weight functions on their directed edges.

mod io;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::serde_util::one_based_vec;

pub use io::GraphFile;

/// The Coxeter label m_ij of an edge. Absent edges mean m_ij = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Finite(u32),
    Infinite,
}

impl EdgeLabel {
    pub fn is_infinite(self) -> bool {
        self == EdgeLabel::Infinite
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Finite(m) => write!(f, "{m}"),
            EdgeLabel::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for EdgeLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(EdgeLabel::Infinite),
            t => t
                .parse::<u32>()
                .map(EdgeLabel::Finite)
                .map_err(|_| format!("bad label {t:?}")),
        }
    }
}

impl Serialize for EdgeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EdgeLabel::Finite(m) => s.serialize_u32(*m),
            EdgeLabel::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for EdgeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(m) => Ok(EdgeLabel::Finite(m)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// A Coxeter graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterGraph {
    n: usize,
    labels: BTreeMap<(usize, usize), EdgeLabel>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl CoxeterGraph {
    pub fn new(n: usize) -> Self {
        CoxeterGraph {
            n,
            labels: BTreeMap::new(),
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    /// Adds the edge {i, j}. A label of 2 means "no edge" and is ignored.
    pub fn add_edge(&mut self, i: usize, j: usize, label: EdgeLabel) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::NotAdjacent(i, j));
        }
        match label {
            EdgeLabel::Finite(m) if m < 2 => return Err(Error::InvalidLabel(m)),
            EdgeLabel::Finite(2) => return Ok(()),
            _ => {}
        }
        self.labels.insert((i.min(j), i.max(j)), label);
        self.adjacency[i].insert(j);
        self.adjacency[j].insert(i);
        Ok(())
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize, EdgeLabel)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(i, j, m) in edges {
            g.add_edge(i, j, m)?;
        }
        Ok(g)
    }

    /// Path s_0 – s_1 – … – s_{n-1} with all labels 3.
    pub fn chain(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, EdgeLabel::Finite(3))).collect();
        Self::with_edges(n, &edges).expect("valid chain")
    }

    /// Cycle s_0 – s_1 – … – s_{n-1} – s_0 with all labels 3.
    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i, EdgeLabel::Finite(3))).collect();
        if n >= 3 {
            edges.push((n - 1, 0, EdgeLabel::Finite(3)));
        }
        Self::with_edges(n, &edges).expect("valid cycle")
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    /// Edges as `(i, j, label)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeLabel)> + '_ {
        self.labels.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn label(&self, i: usize, j: usize) -> Option<EdgeLabel> {
        self.labels.get(&(i.min(j), i.max(j))).copied()
    }

    /// m_ij including the implicit 2 for non-adjacent pairs.
    pub fn coxeter_m(&self, i: usize, j: usize) -> EdgeLabel {
        self.label(i, j).unwrap_or(EdgeLabel::Finite(2))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adjacency[i].contains(&j)
    }

    pub fn is_simply_laced(&self) -> bool {
        self.labels.values().all(|&m| m == EdgeLabel::Finite(3))
    }

    pub fn component_count(&self) -> usize {
        let forest = SpanningForest::build(self);
        forest.origins.len()
    }

    /// The cyclic vertex order when the graph is a single cycle on ≥ 3 vertices,
    /// starting at vertex 0 and stepping to its smaller neighbour.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.n < 3 || self.edge_count() != self.n || (0..self.n).any(|v| self.degree(v) != 2) {
            return None;
        }
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = self.neighbors(0).next()?;
        while cur != 0 {
            order.push(cur);
            let next = self.neighbors(cur).find(|&u| u != prev)?;
            prev = cur;
            cur = next;
        }
        (order.len() == self.n).then_some(order)
    }

    /// All simple cycles (length ≥ 3), each starting at its smallest vertex,
    /// sorted by length then lexicographically. Stops after `cap` cycles.
    pub fn simple_cycles(&self, cap: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n];
        'starts: for s in 0..self.n {
            path.clear();
            path.push(s);
            on_path[s] = true;
            let mut stack: Vec<Vec<usize>> = vec![self.neighbors(s).filter(|&u| u > s).collect()];
            while let Some(frontier) = stack.last_mut() {
                match frontier.pop() {
                    Some(u) => {
                        if self.is_adjacent(u, s) && path.len() >= 2 && path[1] < u {
                            let mut c = path.clone();
                            c.push(u);
                            out.push(c);
                            if out.len() >= cap {
                                on_path.iter_mut().for_each(|x| *x = false);
                                break 'starts;
                            }
                        }
                        if !on_path[u] {
                            on_path[u] = true;
                            path.push(u);
                            stack.push(
                                self.neighbors(u)
                                    .filter(|&w| w > s && !on_path[w])
                                    .collect(),
                            );
                        }
                    }
                    None => {
                        stack.pop();
                        if let Some(v) = path.pop() {
                            on_path[v] = false;
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Breadth-first spanning forest rooted at the lowest vertex of each component.
struct SpanningForest {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    /// Vertices in visiting order.
    order: Vec<usize>,
    origins: Vec<usize>,
}

impl SpanningForest {
    fn build(g: &CoxeterGraph) -> Self {
        let mut parent = vec![None; g.n];
        let mut depth = vec![0; g.n];
        let mut seen = vec![false; g.n];
        let mut order = Vec::with_capacity(g.n);
        let mut origins = Vec::new();
        for root in 0..g.n {
            if seen[root] {
                continue;
            }
            origins.push(root);
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for u in g.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = Some(v);
                        depth[u] = depth[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        SpanningForest {
            parent,
            depth,
            order,
            origins,
        }
    }

    fn is_tree_edge(&self, i: usize, j: usize) -> bool {
        self.parent[i] == Some(j) || self.parent[j] == Some(i)
    }

    /// Closed path LCA → … → i → j → … → LCA (the LCA is not repeated).
    fn fundamental_cycle(&self, i: usize, j: usize) -> Vec<usize> {
        let (mut a, mut b) = (i, j);
        let mut up_i = vec![a];
        let mut up_j = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].expect("deeper vertex has a parent");
            up_i.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].expect("deeper vertex has a parent");
            up_j.push(b);
        }
        while a != b {
            a = self.parent[a].expect("same component");
            b = self.parent[b].expect("same component");
            up_i.push(a);
            up_j.push(b);
        }
        // up_i: i .. lca, up_j: j .. lca
        up_j.pop();
        let mut cycle: Vec<usize> = up_i.into_iter().rev().collect();
        cycle.extend(up_j);
        cycle
    }
}

/// One fundamental cycle per non-tree edge of the breadth-first spanning forest.
pub fn fundamental_cycles(graph: &CoxeterGraph) -> Vec<Vec<usize>> {
    let forest = SpanningForest::build(graph);
    graph
        .edges()
        .filter(|&(i, j, _)| !forest.is_tree_edge(i, j))
        .map(|(i, j, _)| forest.fundamental_cycle(i, j))
        .collect()
}

/// A function on directed edges, f((s_i, s_j)).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightFunction {
    weights: BTreeMap<(usize, usize), Cyclotomic>,
}

impl WeightFunction {
    pub fn new() -> Self {
        Self::default()
    }

    /// Weight 1 on every directed edge.
    pub fn unit(graph: &CoxeterGraph) -> Self {
        let mut f = Self::new();
        for (i, j, _) in graph.edges() {
            f.set(i, j, Cyclotomic::one());
            f.set(j, i, Cyclotomic::one());
        }
        f
    }

    /// Sets f(i, j) = w and f(j, i) = w⁻¹.
    pub fn set_reciprocal(&mut self, i: usize, j: usize, w: Cyclotomic) -> Result<()> {
        let inv = w.inverse()?;
        self.set(i, j, w);
        self.set(j, i, inv);
        Ok(())
    }

    /// Builds a legal function from one weight per edge, oriented `(i, j)`.
    pub fn reciprocal(
        forward: impl IntoIterator<Item = (usize, usize, Cyclotomic)>,
    ) -> Result<Self> {
        let mut f = Self::new();
        for (i, j, w) in forward {
            f.set_reciprocal(i, j, w)?;
        }
        Ok(f)
    }

    /// Sets a single orientation without touching the reverse one.
    pub fn set(&mut self, i: usize, j: usize, w: Cyclotomic) {
        self.weights.insert((i, j), w);
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Cyclotomic> {
        self.weights.get(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Cyclotomic)> {
        self.weights.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        let minus_one = Cyclotomic::from_integer(-1);
        self.weights.values().all(|w| w.is_one() || *w == minus_one)
    }

    pub fn all_roots_of_unity(&self) -> bool {
        self.weights
            .values()
            .all(|w| matches!(w.order(), Ok(crate::cyclotomic::Order::Finite(_))))
    }

    fn weight(&self, i: usize, j: usize) -> Result<&Cyclotomic> {
        self.get(i, j).ok_or(Error::NotAdjacent(i, j))
    }
}

/// A reason a weight function is not legal for a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Weight given on a pair that is not an edge.
    NotAnEdge {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        from: usize,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        to: usize,
    },
    /// Neither orientation of the edge carries a weight.
    MissingEdge {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        from: usize,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        to: usize,
    },
    /// `(from, to)` is weighted but `(to, from)` is not.
    UndefinedReverse {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        from: usize,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        to: usize,
    },
    ZeroWeight {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        from: usize,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        to: usize,
    },
    /// f(from, to) · f(to, from) ≠ 1.
    NotReciprocal {
        #[serde(serialize_with = "crate::serde_util::one_based")]
        from: usize,
        #[serde(serialize_with = "crate::serde_util::one_based")]
        to: usize,
        product: Cyclotomic,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnEdge { from, to } => {
                write!(
                    f,
                    "weight on ({}, {}) but s{} and s{} are not adjacent",
                    from + 1,
                    to + 1,
                    from + 1,
                    to + 1
                )
            }
            Violation::MissingEdge { from, to } => {
                write!(f, "edge {{{}, {}}} has no weight", from + 1, to + 1)
            }
            Violation::UndefinedReverse { from, to } => {
                write!(f, "undefined reverse edge ({}, {})", to + 1, from + 1)
            }
            Violation::ZeroWeight { from, to } => {
                write!(f, "zero weight on ({}, {})", from + 1, to + 1)
            }
            Violation::NotReciprocal { from, to, product } => write!(
                f,
                "f({a},{b})·f({b},{a}) = {product} ≠ 1 at edge {{{a}, {b}}}",
                a = from + 1,
                b = to + 1
            ),
        }
    }
}

/// Lists every way `f` fails to be a legal weight function on `graph`.
pub fn validate_legal(graph: &CoxeterGraph, f: &WeightFunction) -> Vec<Violation> {
    let mut out = Vec::new();
    for ((i, j), w) in f.iter() {
        if !graph.is_adjacent(i, j) {
            out.push(Violation::NotAnEdge { from: i, to: j });
        } else if w.is_zero() {
            out.push(Violation::ZeroWeight { from: i, to: j });
        }
    }
    for (i, j, _) in graph.edges() {
        match (f.get(i, j), f.get(j, i)) {
            (None, None) => out.push(Violation::MissingEdge { from: i, to: j }),
            (Some(_), None) => out.push(Violation::UndefinedReverse { from: i, to: j }),
            (None, Some(_)) => out.push(Violation::UndefinedReverse { from: j, to: i }),
            (Some(a), Some(b)) => {
                let product = a * b;
                if !product.is_one() && !a.is_zero() && !b.is_zero() {
                    out.push(Violation::NotReciprocal {
                        from: i,
                        to: j,
                        product,
                    });
                }
            }
        }
    }
    out
}

fn ensure_legal(graph: &CoxeterGraph, f: &WeightFunction) -> Result<()> {
    let v = validate_legal(graph, f);
    if v.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
        Err(Error::IllegalWeights(msgs.join("; ")))
    }
}

/// Product of f along consecutive vertices of `path`.
pub fn path_weight(f: &WeightFunction, path: &[usize]) -> Result<Cyclotomic> {
    path.windows(2)
        .try_fold(Cyclotomic::one(), |acc, w| Ok(&acc * f.weight(w[0], w[1])?))
}

/// Weight of the closed path `cycle[0] → … → cycle[k-1] → cycle[0]`.
pub fn cycle_weight(f: &WeightFunction, cycle: &[usize]) -> Result<Cyclotomic> {
    let w = path_weight(f, cycle)?;
    match (cycle.last(), cycle.first()) {
        (Some(&last), Some(&first)) if cycle.len() > 1 => Ok(&w * f.weight(last, first)?),
        _ => Ok(w),
    }
}

/// Certificate for (un)balancedness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BalanceCertificate {
    /// f(i, j) = potentials[j] / potentials[i] on every directed edge;
    /// each origin has potential 1.
    Balanced {
        potentials: Vec<Cyclotomic>,
        #[serde(serialize_with = "one_based_vec")]
        origins: Vec<usize>,
    },
    /// The closed path `cycle` (implicitly closed) has weight ≠ 1.
    Unbalanced {
        #[serde(serialize_with = "one_based_vec")]
        cycle: Vec<usize>,
        weight: Cyclotomic,
    },
}

impl BalanceCertificate {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceCertificate::Balanced { .. })
    }

    pub fn potentials(&self) -> Option<&[Cyclotomic]> {
        match self {
            BalanceCertificate::Balanced { potentials, .. } => Some(potentials),
            BalanceCertificate::Unbalanced { .. } => None,
        }
    }

    /// Re-checks the certificate against the graph independently of how it was built.
    pub fn verify(&self, graph: &CoxeterGraph, f: &WeightFunction) -> Result<()> {
        let fail = |m: String| Err(Error::VerificationFailed(m));
        match self {
            BalanceCertificate::Balanced {
                potentials,
                origins,
            } => {
                if potentials.len() != graph.vertex_count() {
                    return fail("wrong number of potentials".into());
                }
                for &o in origins {
                    if !potentials.get(o).is_some_and(Cyclotomic::is_one) {
                        return fail(format!("origin s{} does not have potential 1", o + 1));
                    }
                }
                if origins.len() != graph.component_count() {
                    return fail("one origin per component expected".into());
                }
                for (i, j, _) in graph.edges() {
                    for (a, b) in [(i, j), (j, i)] {
                        let w = f.weight(a, b)?;
                        if (w * &potentials[a]) != potentials[b] {
                            return fail(format!(
                                "edge ({}, {}) is not a potential ratio",
                                a + 1,
                                b + 1
                            ));
                        }
                    }
                }
                Ok(())
            }
            BalanceCertificate::Unbalanced { cycle, weight } => {
                let distinct: BTreeSet<_> = cycle.iter().collect();
                if cycle.len() < 3 || distinct.len() != cycle.len() {
                    return fail("witness is not a simple cycle".into());
                }
                let w = cycle_weight(f, cycle)?;
                if &w != weight || w.is_one() {
                    return fail(format!("cycle weight is {w}"));
                }
                Ok(())
            }
        }
    }
}

/// Breadth-first potentials from the lowest vertex of each component; the
/// first failing non-tree edge yields its fundamental cycle.
pub fn check_balanced(graph: &CoxeterGraph, f: &WeightFunction) -> Result<BalanceCertificate> {
    ensure_legal(graph, f)?;
    let forest = SpanningForest::build(graph);
    let mut potentials = vec![Cyclotomic::one(); graph.vertex_count()];
    for &v in &forest.order {
        if let Some(p) = forest.parent[v] {
            potentials[v] = &potentials[p] * f.weight(p, v)?;
        }
    }
    for (i, j, _) in graph.edges() {
        if forest.is_tree_edge(i, j) {
            continue;
        }
        if (f.weight(i, j)? * &potentials[i]) != potentials[j] {
            let cycle = forest.fundamental_cycle(i, j);
            let weight = cycle_weight(f, &cycle)?;
            return Ok(BalanceCertificate::Unbalanced { cycle, weight });
        }
    }
    Ok(BalanceCertificate::Balanced {
        potentials,
        origins: forest.origins,
    })
}

/// Result of moving all the weight of a cycle onto its closing edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GatheredCycle {
    /// Cyclic vertex order s_1, …, s_n.
    pub order: Vec<usize>,
    /// Weight 1 on (s_k, s_{k+1}), a_1⋯a_n on (s_n, s_1).
    pub gathered: WeightFunction,
    /// Diagonal of J, indexed by vertex: J[s_k] = a_1⋯a_{k-1}.
    pub diagonal: Vec<Cyclotomic>,
    /// a_1⋯a_n.
    pub total: Cyclotomic,
}

/// Gathers the weights of a single cycle onto the edge (s_n, s_1).
/// J · ω_i^(f) · J⁻¹ = ω_i^(h) for the returned h and diagonal J.
pub fn gather_cycle(graph: &CoxeterGraph, f: &WeightFunction) -> Result<GatheredCycle> {
    let order = graph.cycle_order().ok_or(Error::NotACycle)?;
    ensure_legal(graph, f)?;
    let n = order.len();
    let mut diagonal = vec![Cyclotomic::one(); graph.vertex_count()];
    let mut acc = Cyclotomic::one();
    for k in 1..n {
        acc = &acc * f.weight(order[k - 1], order[k])?;
        diagonal[order[k]] = acc.clone();
    }
    let total = &acc * f.weight(order[n - 1], order[0])?;
    let mut gathered = WeightFunction::new();
    for k in 1..n {
        gathered.set_reciprocal(order[k - 1], order[k], Cyclotomic::one())?;
    }
    gathered.set_reciprocal(order[n - 1], order[0], total.clone())?;
    Ok(GatheredCycle {
        order,
        gathered,
        diagonal,
        total,
    })
}

/// A Coxeter graph together with a weight function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: CoxeterGraph,
    pub weights: WeightFunction,
}

impl WeightedGraph {
    pub fn new(graph: CoxeterGraph, weights: WeightFunction) -> Self {
        WeightedGraph { graph, weights }
    }

    pub fn unweighted(graph: CoxeterGraph) -> Self {
        let weights = WeightFunction::unit(&graph);
        WeightedGraph { graph, weights }
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_legal(&self.graph, &self.weights)
    }

    pub fn check_balanced(&self) -> Result<BalanceCertificate> {
        check_balanced(&self.graph, &self.weights)
    }
}
