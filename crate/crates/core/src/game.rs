//! Classical and generalized numbers games.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use crate::cyclotomic::{exact_vec, Cyclotomic, Sign};
use crate::error::{Error, Result};
use crate::georep::{check_edge_product, k_coefficients, EdgeCoefficients};
use crate::graph::{check_balanced, CoxeterGraph, WeightFunction};
use crate::serde_util::one_based;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveClass {
    Positive,
    Negative,
    PseudoPositive,
    PseudoNegative,
    /// The fired value is zero.
    Zero,
    /// The gauge-corrected value is not real.
    Nonreal,
}

impl MoveClass {
    /// Positive or pseudo-positive.
    pub fn is_forward(self) -> bool {
        matches!(self, MoveClass::Positive | MoveClass::PseudoPositive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GameMode {
    Classical,
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    #[serde(serialize_with = "one_based")]
    pub vertex: usize,
    pub class: MoveClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayRecord {
    #[serde(serialize_with = "exact_vec")]
    pub start: Vec<Cyclotomic>,
    pub moves: Vec<Move>,
    #[serde(serialize_with = "positions")]
    pub positions: Vec<Vec<Cyclotomic>>,
}

fn positions<S: serde::Serializer>(
    v: &[Vec<Cyclotomic>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a [Cyclotomic]);
    impl Serialize for Row<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            exact_vec(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&Row(p))?;
    }
    seq.end()
}

impl PlayRecord {
    pub fn final_position(&self) -> &[Cyclotomic] {
        self.positions.last().unwrap_or(&self.start)
    }

    pub fn word(&self) -> Vec<usize> {
        self.moves.iter().map(|m| m.vertex).collect()
    }

    pub fn is_positive_sequence(&self) -> bool {
        self.moves.iter().all(|m| m.class == MoveClass::Positive)
    }

    pub fn is_pseudo_positive_sequence(&self) -> bool {
        self.moves
            .iter()
            .all(|m| m.class == MoveClass::PseudoPositive)
    }

    /// Every move positive, or pseudo-positive in a generalized game.
    pub fn is_forward_sequence(&self) -> bool {
        self.moves.iter().all(|m| m.class.is_forward())
    }
}

/// A numbers game on a graph with fixed edge weights k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumbersGame {
    n: usize,
    /// out[v] lists (u, k_{v,u}): firing v adds k_{v,u}·p_v at u.
    out: Vec<Vec<(usize, Cyclotomic)>>,
    /// Diagonal of the gauge J; None for the classical game.
    gauge: Option<Vec<Cyclotomic>>,
}

impl NumbersGame {
    /// Game with explicit weights k and an optional gauge diagonal.
    pub fn new(
        n: usize,
        k: &BTreeMap<(usize, usize), Cyclotomic>,
        gauge: Option<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        for (&(v, u), w) in k {
            if v >= n || u >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v.max(u),
                    n,
                });
            }
            out[v].push((u, w.clone()));
        }
        if let Some(g) = &gauge {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: g.len(),
                });
            }
            if let Some(i) = g.iter().position(Cyclotomic::is_zero) {
                return Err(Error::ZeroPotential(i));
            }
        }
        Ok(NumbersGame { n, out, gauge })
    }

    pub fn classical(graph: &CoxeterGraph, ell: &EdgeCoefficients) -> Result<Self> {
        let k = k_coefficients(graph, &WeightFunction::unit(graph), ell)?;
        Self::new(graph.vertex_count(), &k, None)
    }

    /// Generalized game of a balanced weighted graph, k = f·ℓ, gauge J = diag(wt)⁻¹.
    pub fn generalized(
        graph: &CoxeterGraph,
        f: &WeightFunction,
        ell: &EdgeCoefficients,
    ) -> Result<Self> {
        let cert = check_balanced(graph, f)?;
        let pots = cert
            .potentials()
            .ok_or_else(|| Error::GameUnavailable("the weighted graph is not balanced".into()))?;
        let gauge = pots
            .iter()
            .map(Cyclotomic::inverse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            graph.vertex_count(),
            &k_coefficients(graph, f, ell)?,
            Some(gauge),
        )
    }

    /// Game from raw weights k; refuses weights that fail any of the three
    /// conditions. Classical when the decomposition has f ≡ 1.
    pub fn from_k(graph: &CoxeterGraph, k: &BTreeMap<(usize, usize), Cyclotomic>) -> Result<Self> {
        let report = validate_generalized_weights(graph, k);
        let Some(dec) = report.decomposition else {
            let msgs: Vec<String> = report
                .violations
                .iter()
                .map(|v| v.message.clone())
                .collect();
            return Err(Error::GameUnavailable(msgs.join("; ")));
        };
        let gauge = if dec.potentials.iter().all(Cyclotomic::is_one) {
            None
        } else {
            Some(
                dec.potentials
                    .iter()
                    .map(Cyclotomic::inverse)
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        Self::new(graph.vertex_count(), k, gauge)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> GameMode {
        if self.gauge.is_some() {
            GameMode::Generalized
        } else {
            GameMode::Classical
        }
    }

    pub fn gauge(&self) -> Option<&[Cyclotomic]> {
        self.gauge.as_deref()
    }

    /// J·p (p itself in the classical game).
    pub fn gauge_image(&self, p: &[Cyclotomic]) -> Vec<Cyclotomic> {
        match &self.gauge {
            Some(g) => g.iter().zip(p).map(|(a, b)| a * b).collect(),
            None => p.to_vec(),
        }
    }

    /// The start whose gauge image is the unit position 1.
    pub fn unit_start(&self) -> Vec<Cyclotomic> {
        match &self.gauge {
            Some(g) => g
                .iter()
                .map(|x| x.inverse().expect("gauge entries are nonzero"))
                .collect(),
            None => vec![Cyclotomic::one(); self.n],
        }
    }

    fn check(&self, p: &[Cyclotomic], v: usize) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Negates p_v and adds k_{v,u}·p_v at each neighbour u.
    pub fn fire(&self, p: &[Cyclotomic], v: usize) -> Result<Vec<Cyclotomic>> {
        self.check(p, v)?;
        let mut q = p.to_vec();
        let x = p[v].clone();
        q[v] = -&x;
        if !x.is_zero() {
            for (u, k) in &self.out[v] {
                q[*u] = &q[*u] + &(k * &x);
            }
        }
        Ok(q)
    }

    pub fn move_class(&self, p: &[Cyclotomic], v: usize) -> Result<MoveClass> {
        self.check(p, v)?;
        let x = match &self.gauge {
            Some(g) => &g[v] * &p[v],
            None => p[v].clone(),
        };
        if x.is_zero() {
            return Ok(MoveClass::Zero);
        }
        if !x.is_real() {
            return Ok(MoveClass::Nonreal);
        }
        let positive = x.sign()? == Sign::Positive;
        Ok(match (self.gauge.is_some(), positive) {
            (false, true) => MoveClass::Positive,
            (false, false) => MoveClass::Negative,
            (true, true) => MoveClass::PseudoPositive,
            (true, false) => MoveClass::PseudoNegative,
        })
    }

    pub fn play(&self, start: &[Cyclotomic], word: &[usize]) -> Result<PlayRecord> {
        let mut p = start.to_vec();
        let mut moves = Vec::with_capacity(word.len());
        let mut positions = Vec::with_capacity(word.len());
        for &v in word {
            let class = self.move_class(&p, v)?;
            p = self.fire(&p, v)?;
            moves.push(Move { vertex: v, class });
            positions.push(p.clone());
        }
        Ok(PlayRecord {
            start: start.to_vec(),
            moves,
            positions,
        })
    }

    /// True iff the play from the unit start is (pseudo-)positive throughout.
    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        Ok(self.play(&self.unit_start(), word)?.is_forward_sequence())
    }

    /// Vertices whose gauge-corrected coordinate is negative after playing `word`.
    pub fn descent_set(&self, word: &[usize]) -> Result<Vec<usize>> {
        let rec = self.play(&self.unit_start(), word)?;
        self.negative_coordinates(rec.final_position())
    }

    pub fn negative_coordinates(&self, p: &[Cyclotomic]) -> Result<Vec<usize>> {
        let img = self.gauge_image(p);
        let mut out = Vec::new();
        for (v, x) in img.iter().enumerate() {
            if x.is_real() && !x.is_zero() && x.sign()? == Sign::Negative {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Breadth-first closure of `start` under firing, stopping at `max_count` positions.
    pub fn reachable_positions(&self, start: &[Cyclotomic], max_count: usize) -> Result<Reachable> {
        self.check(start, 0)
            .or_else(|e| if self.n == 0 { Ok(()) } else { Err(e) })?;
        let mut seen: HashSet<Vec<Cyclotomic>> = HashSet::from([start.to_vec()]);
        let mut order = vec![start.to_vec()];
        let mut queue = VecDeque::from([start.to_vec()]);
        while let Some(p) = queue.pop_front() {
            for v in 0..self.n {
                let q = self.fire(&p, v)?;
                if seen.contains(&q) {
                    continue;
                }
                if order.len() >= max_count {
                    return Ok(Reachable {
                        positions: order,
                        exhausted: true,
                    });
                }
                seen.insert(q.clone());
                order.push(q.clone());
                queue.push_back(q);
            }
        }
        Ok(Reachable {
            positions: order,
            exhausted: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachable {
    pub positions: Vec<Vec<Cyclotomic>>,
    /// The budget ran out before the closure finished.
    pub exhausted: bool,
}

/// Which of the three generalized-game conditions failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionViolation {
    pub condition: u8,
    pub message: String,
}

/// k = f·ℓ with f legal and balanced, ℓ positive real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub f: WeightFunction,
    pub ell: EdgeCoefficients,
    pub potentials: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightsReport {
    pub violations: Vec<ConditionViolation>,
    pub decomposition: Option<Decomposition>,
}

impl WeightsReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn positive_real(x: &Cyclotomic) -> bool {
    x.is_real() && !x.is_zero() && x.sign().ok() == Some(Sign::Positive)
}

/// Checks the three conditions on game weights k and, when they hold,
/// returns a decomposition k = f·ℓ.
///
/// (1) k_ij·k_ji = 4cos²(π/m_ij), or ≥ 4 for m = ∞. (2) k_ij = f_ij·ℓ_ij
/// with f legal and ℓ positive real. (3) f has product 1 around every cycle.
/// On a breadth-first spanning forest f is fixed up to positive reals; each
/// non-tree edge then forces f, and condition (3) fails exactly when the
/// forced ℓ is not a positive real.
pub fn validate_generalized_weights(
    graph: &CoxeterGraph,
    k: &BTreeMap<(usize, usize), Cyclotomic>,
) -> WeightsReport {
    let mut violations = Vec::new();
    fn push(v: &mut Vec<ConditionViolation>, condition: u8, message: String) {
        v.push(ConditionViolation { condition, message });
    }
    let name = |i: usize, j: usize| format!("({}, {})", i + 1, j + 1);

    for (&(i, j), v) in k {
        if !graph.is_adjacent(i, j) && !v.is_zero() {
            push(
                &mut violations,
                1,
                format!(
                    "k{} is nonzero but s{} and s{} commute",
                    name(i, j),
                    i + 1,
                    j + 1
                ),
            );
        }
    }
    for (i, j, m) in graph.edges() {
        let (Some(a), Some(b)) = (k.get(&(i, j)), k.get(&(j, i))) else {
            push(
                &mut violations,
                1,
                format!(
                    "edge {{{}, {}}} lacks a weight in one orientation",
                    i + 1,
                    j + 1
                ),
            );
            continue;
        };
        let product = a * b;
        if !check_edge_product(m, &product).unwrap_or(false) {
            push(
                &mut violations,
                1,
                format!(
                    "k{}·k{} = {product} does not match m = {m}",
                    name(i, j),
                    name(j, i)
                ),
            );
        }
        if a.is_zero() || b.is_zero() || !positive_real(&product) {
            push(
                &mut violations,
                2,
                format!(
                    "k{} and k{} admit no split into a legal f and positive ℓ",
                    name(i, j),
                    name(j, i)
                ),
            );
        }
    }
    if !violations.is_empty() {
        return WeightsReport {
            violations,
            decomposition: None,
        };
    }

    // Spanning forest in breadth-first order from the lowest vertex of each component.
    let n = graph.vertex_count();
    let mut f = WeightFunction::new();
    let mut ell = BTreeMap::new();
    let mut pots = vec![Cyclotomic::one(); n];
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for u in graph.neighbors(v) {
                if seen[u] {
                    continue;
                }
                seen[u] = true;
                parent[u] = Some(v);
                let kvu = &k[&(v, u)];
                let fvu = if positive_real(kvu) {
                    Cyclotomic::one()
                } else if positive_real(&-kvu) {
                    Cyclotomic::from_integer(-1)
                } else {
                    kvu.clone()
                };
                split_edge(&mut f, &mut ell, k, v, u, fvu);
                pots[u] = &pots[v] * f.get(v, u).expect("just set");
                queue.push_back(u);
            }
        }
    }
    for (i, j, _) in graph.edges() {
        if parent[i] == Some(j) || parent[j] == Some(i) {
            continue;
        }
        let fij = pots[j]
            .checked_div(&pots[i])
            .expect("potentials are nonzero");
        let lij = k[&(i, j)].checked_div(&fij).expect("f is nonzero");
        if !positive_real(&lij) {
            push(
                &mut violations,
                3,
                format!(
                    "the cycle closed by edge {{{}, {}}} has k-product that is not a positive real",
                    i + 1,
                    j + 1
                ),
            );
            continue;
        }
        split_edge(&mut f, &mut ell, k, i, j, fij);
    }
    if !violations.is_empty() {
        return WeightsReport {
            violations,
            decomposition: None,
        };
    }
    let ell = EdgeCoefficients::from_map(graph, ell)
        .expect("split coefficients are positive and satisfy condition (1)");
    WeightsReport {
        violations,
        decomposition: Some(Decomposition {
            f,
            ell,
            potentials: pots,
        }),
    }
}

/// Sets f(i,j) = fij, f(j,i) = fij⁻¹ and the matching ℓ in both orientations.
fn split_edge(
    f: &mut WeightFunction,
    ell: &mut BTreeMap<(usize, usize), Cyclotomic>,
    k: &BTreeMap<(usize, usize), Cyclotomic>,
    i: usize,
    j: usize,
    fij: Cyclotomic,
) {
    ell.insert((i, j), k[&(i, j)].checked_div(&fij).expect("f is nonzero"));
    ell.insert((j, i), &k[&(j, i)] * &fij);
    f.set_reciprocal(i, j, fij).expect("f is nonzero");
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImoRun {
    pub record: PlayRecord,
    pub terminated: bool,
    pub steps: usize,
}

/// Pentagon game: while some value is negative, fire the lowest-index
/// negative vertex (k = 1 on every edge).
pub fn imo_pentagon_run(start: &[i64; 5], max_steps: usize) -> Result<ImoRun> {
    let g = CoxeterGraph::cycle(5);
    let game = NumbersGame::classical(&g, &EdgeCoefficients::symmetric(&g))?;
    let mut p: Vec<Cyclotomic> = start.iter().map(|&x| Cyclotomic::from_integer(x)).collect();
    let mut record = PlayRecord {
        start: p.clone(),
        moves: Vec::new(),
        positions: Vec::new(),
    };
    loop {
        let Some(v) = game.negative_coordinates(&p)?.first().copied() else {
            let steps = record.moves.len();
            return Ok(ImoRun {
                record,
                terminated: true,
                steps,
            });
        };
        if record.moves.len() >= max_steps {
            return Ok(ImoRun {
                record,
                terminated: false,
                steps: max_steps,
            });
        }
        record.moves.push(Move {
            vertex: v,
            class: MoveClass::Negative,
        });
        p = game.fire(&p, v)?;
        record.positions.push(p.clone());
    }
}
