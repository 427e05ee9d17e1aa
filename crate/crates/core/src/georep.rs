//! Standard and generalized geometric representations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::{Cyclotomic, Sign};
use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, EdgeLabel, WeightFunction};
use crate::matrix::RepMatrix;

/// Positive real coefficients ℓ_ij on directed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCoefficients {
    map: BTreeMap<(usize, usize), Cyclotomic>,
}

/// ℓ_ij = ℓ_ji = 2cos(π/m), or 2 when m = ∞.
fn symmetric_value(m: EdgeLabel) -> Cyclotomic {
    match m {
        EdgeLabel::Finite(m) => Cyclotomic::two_cos(m).expect("label ≥ 2"),
        EdgeLabel::Infinite => Cyclotomic::from_integer(2),
    }
}

/// Checks ℓ_ij·ℓ_ji against 4cos²(π/m), or ≥ 4 for m = ∞.
pub(crate) fn check_edge_product(m: EdgeLabel, product: &Cyclotomic) -> Result<bool> {
    match m {
        EdgeLabel::Finite(m) => {
            let t = Cyclotomic::two_cos(m)?;
            Ok(product == &(&t * &t))
        }
        EdgeLabel::Infinite => {
            if !product.is_real() {
                return Ok(false);
            }
            Ok(product.sign()? != Sign::Negative
                && (product - &Cyclotomic::from_integer(4)).sign()? != Sign::Negative)
        }
    }
}

impl EdgeCoefficients {
    pub fn symmetric(graph: &CoxeterGraph) -> Self {
        let mut map = BTreeMap::new();
        for (i, j, m) in graph.edges() {
            let v = symmetric_value(m);
            map.insert((i, j), v.clone());
            map.insert((j, i), v);
        }
        EdgeCoefficients { map }
    }

    /// Integer coefficients: (2, 1) for m = 4, (3, 1) for m = 6, (2, 2) for
    /// m = ∞, the larger value on the orientation from the smaller index.
    /// Other labels keep the symmetric value.
    pub fn asymmetric_integers(graph: &CoxeterGraph) -> Self {
        let mut map = BTreeMap::new();
        for (i, j, m) in graph.edges() {
            let (fwd, back) = match m {
                EdgeLabel::Finite(4) => (2.into(), 1.into()),
                EdgeLabel::Finite(6) => (3.into(), 1.into()),
                EdgeLabel::Infinite => (2.into(), 2.into()),
                EdgeLabel::Finite(3) => (1.into(), 1.into()),
                m => (symmetric_value(m), symmetric_value(m)),
            };
            map.insert((i, j), fwd);
            map.insert((j, i), back);
        }
        EdgeCoefficients { map }
    }

    pub fn from_map(
        graph: &CoxeterGraph,
        map: BTreeMap<(usize, usize), Cyclotomic>,
    ) -> Result<Self> {
        let ell = EdgeCoefficients { map };
        ell.validate(graph)?;
        Ok(ell)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Cyclotomic> {
        self.map.get(&(i, j))
    }

    pub fn validate(&self, graph: &CoxeterGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCoefficients(msg));
        for &(i, j) in self.map.keys() {
            if !graph.is_adjacent(i, j) {
                return bad(format!("coefficient on non-edge ({}, {})", i + 1, j + 1));
            }
        }
        for (i, j, m) in graph.edges() {
            let (Some(a), Some(b)) = (self.get(i, j), self.get(j, i)) else {
                return bad(format!("edge {{{}, {}}} lacks a coefficient", i + 1, j + 1));
            };
            for (x, y, v) in [(i, j, a), (j, i, b)] {
                if !v.is_real() || v.sign()? != Sign::Positive {
                    return bad(format!(
                        "ℓ({}, {}) = {v} is not a positive real",
                        x + 1,
                        y + 1
                    ));
                }
            }
            if !check_edge_product(m, &(a * b))? {
                return bad(format!(
                    "ℓ({a1},{b1})·ℓ({b1},{a1}) does not match m = {m}",
                    a1 = i + 1,
                    b1 = j + 1
                ));
            }
        }
        Ok(())
    }
}

/// Generator matrices, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GeneratorSet {
    gens: Vec<RepMatrix>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<RepMatrix>) -> Self {
        GeneratorSet { gens }
    }

    /// σ-style generators from k-coefficients: identity except row i, which
    /// has −1 on the diagonal and k_ij at each neighbour j.
    pub fn from_k(n: usize, k: &BTreeMap<(usize, usize), Cyclotomic>) -> Self {
        let mut gens: Vec<RepMatrix> = (0..n)
            .map(|i| {
                let mut g = RepMatrix::identity(n);
                g.set(i, i, Cyclotomic::from_integer(-1));
                g
            })
            .collect();
        for (&(i, j), v) in k {
            gens[i].set(i, j, v.clone());
        }
        GeneratorSet { gens }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&RepMatrix> {
        self.gens.get(i)
    }

    pub fn as_slice(&self) -> &[RepMatrix] {
        &self.gens
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RepMatrix> {
        self.gens.iter()
    }
}

impl std::ops::Index<usize> for GeneratorSet {
    type Output = RepMatrix;
    fn index(&self, i: usize) -> &RepMatrix {
        &self.gens[i]
    }
}

pub fn standard_generators(graph: &CoxeterGraph, ell: &EdgeCoefficients) -> GeneratorSet {
    let k = graph
        .edges()
        .flat_map(|(i, j, _)| [(i, j), (j, i)])
        .filter_map(|(i, j)| ell.get(i, j).map(|v| ((i, j), v.clone())))
        .collect();
    GeneratorSet::from_k(graph.vertex_count(), &k)
}

/// k_ij = f((s_i, s_j))·ℓ_ij on every directed edge.
pub fn k_coefficients(
    graph: &CoxeterGraph,
    f: &WeightFunction,
    ell: &EdgeCoefficients,
) -> Result<BTreeMap<(usize, usize), Cyclotomic>> {
    let mut k = BTreeMap::new();
    for (i, j, _) in graph.edges() {
        for (a, b) in [(i, j), (j, i)] {
            let w = f.get(a, b).ok_or(Error::NotAdjacent(a, b))?;
            let l = ell.get(a, b).ok_or_else(|| {
                Error::InvalidCoefficients(format!("missing ℓ({}, {})", a + 1, b + 1))
            })?;
            k.insert((a, b), w * l);
        }
    }
    Ok(k)
}

pub fn generalized_generators(
    graph: &CoxeterGraph,
    f: &WeightFunction,
    ell: &EdgeCoefficients,
) -> Result<GeneratorSet> {
    Ok(GeneratorSet::from_k(
        graph.vertex_count(),
        &k_coefficients(graph, f, ell)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub i: usize,
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub j: usize,
    pub m: EdgeLabel,
    /// The exponent that failed: the order for finite m, or the first k with
    /// (g_i g_j)^k = I for m = ∞.
    pub exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks g_i² = I, (g_i g_j)^m = I for finite m_ij (including m = 2 for
/// non-adjacent pairs) and (g_i g_j)^k ≠ I for k ≤ `infinite_bound` when m = ∞.
pub fn verify_coxeter_relations(
    gens: &GeneratorSet,
    graph: &CoxeterGraph,
    infinite_bound: u64,
) -> RelationReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    let n = gens.len();
    for i in 0..n {
        checked += 1;
        if !(&gens[i] * &gens[i]).is_identity() {
            failures.push(RelationFailure {
                i,
                j: i,
                m: EdgeLabel::Finite(1),
                exponent: 2,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            checked += 1;
            let p = &gens[i] * &gens[j];
            match graph.coxeter_m(i, j) {
                EdgeLabel::Finite(m) => {
                    if !p.pow(m as u64).is_identity() {
                        failures.push(RelationFailure {
                            i,
                            j,
                            m: EdgeLabel::Finite(m),
                            exponent: m as u64,
                        });
                    }
                }
                EdgeLabel::Infinite => {
                    let mut acc = p.clone();
                    for k in 1..=infinite_bound {
                        if acc.is_identity() {
                            failures.push(RelationFailure {
                                i,
                                j,
                                m: EdgeLabel::Infinite,
                                exponent: k,
                            });
                            break;
                        }
                        acc = &acc * &p;
                    }
                }
            }
        }
    }
    RelationReport { checked, failures }
}

/// Product g_{w_1} ⋯ g_{w_k}; the empty word gives the identity.
pub fn evaluate_word(gens: &GeneratorSet, word: &[usize]) -> Result<RepMatrix> {
    let n = gens.as_slice().first().map_or(0, RepMatrix::size);
    word.iter().try_fold(RepMatrix::identity(n), |acc, &v| {
        let g = gens.get(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            n: gens.len(),
        })?;
        Ok(&acc * g)
    })
}

/// Equality of two words in the Coxeter group, decided in the (faithful)
/// standard representation.
pub fn words_equal_in_group(graph: &CoxeterGraph, w1: &[usize], w2: &[usize]) -> Result<bool> {
    let gens = standard_generators(graph, &EdgeCoefficients::symmetric(graph));
    Ok(evaluate_word(&gens, w1)? == evaluate_word(&gens, w2)?)
}

/// J = diag(wt)⁻¹ for potentials wt with f(i, j) = wt(j)/wt(i); then
/// J σ_i J⁻¹ = ω_i.
pub fn gauge_from_potentials(potentials: &[Cyclotomic]) -> Result<RepMatrix> {
    let diag = potentials
        .iter()
        .enumerate()
        .map(|(i, w)| w.inverse().map_err(|_| Error::ZeroPotential(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepMatrix::diagonal(&diag))
}

/// J·g·J⁻¹ for every generator.
pub fn gauge_conjugate(j: &RepMatrix, gens: &GeneratorSet) -> Result<GeneratorSet> {
    let jinv = j.inverse()?;
    if gens.iter().any(|g| g.size() != j.size()) {
        return Err(Error::DimensionMismatch {
            expected: j.size(),
            actual: gens.as_slice().first().map_or(0, RepMatrix::size),
        });
    }
    Ok(GeneratorSet::new(
        gens.iter().map(|g| &(j * g) * &jinv).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{check_balanced, WeightedGraph};

    fn c(s: &str) -> Cyclotomic {
        s.parse().unwrap()
    }

    fn six_vertex() -> WeightedGraph {
        WeightedGraph::parse(
            "vertices 6\nedge 1 2 w=-1\nedge 2 3 w=-1\nedge 2 4\nedge 3 5 w=-1\nedge 4 5\nedge 5 6\n",
        )
        .unwrap()
    }

    #[test]
    fn sigma_rows() {
        let g = CoxeterGraph::chain(3);
        let s = standard_generators(&g, &EdgeCoefficients::symmetric(&g));
        assert_eq!(s[1].row(1), &[c("1"), c("-1"), c("1")]);
        assert_eq!(s[0].row(1), &[c("0"), c("1"), c("0")]);
        let single = CoxeterGraph::new(1);
        let s = standard_generators(&single, &EdgeCoefficients::symmetric(&single));
        assert_eq!(s[0], RepMatrix::from_literals(&[&["-1"]]).unwrap());
    }

    #[test]
    fn asymmetric_b2() {
        let g = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Finite(4))]).unwrap();
        let ell = EdgeCoefficients::asymmetric_integers(&g);
        ell.validate(&g).unwrap();
        let s = standard_generators(&g, &ell);
        assert_eq!(s[0].get(0, 1), &c("2"));
        assert_eq!(s[1].get(1, 0), &c("1"));
        assert!(verify_coxeter_relations(&s, &g, 20).passed());
        let g6 = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Finite(6))]).unwrap();
        let s = standard_generators(&g6, &EdgeCoefficients::asymmetric_integers(&g6));
        assert!(verify_coxeter_relations(&s, &g6, 20).passed());
    }

    #[test]
    fn coefficient_validation() {
        let g = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Finite(4))]).unwrap();
        let bad = BTreeMap::from([((0, 1), c("2")), ((1, 0), c("2"))]);
        assert!(EdgeCoefficients::from_map(&g, bad).is_err());
        let neg = BTreeMap::from([((0, 1), c("-2")), ((1, 0), c("-1"))]);
        assert!(EdgeCoefficients::from_map(&g, neg).is_err());
        let gi = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Infinite)]).unwrap();
        let ok = BTreeMap::from([((0, 1), c("3")), ((1, 0), c("3/2"))]);
        assert!(EdgeCoefficients::from_map(&gi, ok).is_ok());
        let small = BTreeMap::from([((0, 1), c("3")), ((1, 0), c("1"))]);
        assert!(EdgeCoefficients::from_map(&gi, small).is_err());
    }

    #[test]
    fn s4_chain_omega() {
        let g = CoxeterGraph::chain(3);
        let (a, b) = (c("zeta(5)"), c("-3/2"));
        let f = WeightFunction::reciprocal([(0, 1, a.clone()), (1, 2, b.clone())]).unwrap();
        let ell = EdgeCoefficients::symmetric(&g);
        let w = generalized_generators(&g, &f, &ell).unwrap();
        assert_eq!(w[1].row(1), &[a.inverse().unwrap(), c("-1"), b.clone()]);
        assert!(verify_coxeter_relations(&w, &g, 20).passed());

        // Potentials (1, a, ab); the gauge is their inverse.
        let pots = vec![c("1"), a.clone(), &a * &b];
        let j = gauge_from_potentials(&pots).unwrap();
        let sigma = standard_generators(&g, &ell);
        assert_eq!(gauge_conjugate(&j, &sigma).unwrap(), w);
    }

    #[test]
    fn unit_weights_give_sigma() {
        let g = CoxeterGraph::cycle(4);
        let ell = EdgeCoefficients::symmetric(&g);
        assert_eq!(
            generalized_generators(&g, &WeightFunction::unit(&g), &ell).unwrap(),
            standard_generators(&g, &ell)
        );
    }

    #[test]
    fn six_vertex_gauge() {
        let wg = six_vertex();
        let ell = EdgeCoefficients::symmetric(&wg.graph);
        let w = generalized_generators(&wg.graph, &wg.weights, &ell).unwrap();
        assert_eq!(
            w[1].row(1),
            &[c("-1"), c("-1"), c("-1"), c("1"), c("0"), c("0")]
        );
        let cert = check_balanced(&wg.graph, &wg.weights).unwrap();
        let j = gauge_from_potentials(cert.potentials().unwrap()).unwrap();
        assert_eq!(
            j,
            RepMatrix::diagonal(&[1, -1, 1, -1, -1, -1].map(Cyclotomic::from_integer))
        );
        let sigma = standard_generators(&wg.graph, &ell);
        assert_eq!(j.conjugate(&sigma[1]).unwrap(), w[1]);
        assert_eq!(gauge_conjugate(&j, &sigma).unwrap(), w);
        assert!(verify_coxeter_relations(&w, &wg.graph, 20).passed());
    }

    #[test]
    fn relations_and_failures() {
        let g = CoxeterGraph::chain(2);
        let s = standard_generators(&g, &EdgeCoefficients::symmetric(&g));
        assert!((&s[0] * &s[1]).pow(3).is_identity());
        // A2 generators do not satisfy (σ1σ2)^4 = I.
        let wrong = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Finite(4))]).unwrap();
        let r = verify_coxeter_relations(&s, &wrong, 20);
        assert_eq!(r.failures.len(), 1);
        let inf = CoxeterGraph::with_edges(2, &[(0, 1, EdgeLabel::Infinite)]).unwrap();
        let s = standard_generators(&inf, &EdgeCoefficients::symmetric(&inf));
        assert!(verify_coxeter_relations(&s, &inf, 20).passed());
        let r = verify_coxeter_relations(&s, &CoxeterGraph::chain(2), 20);
        assert!(!r.passed());
    }

    #[test]
    fn words() {
        let g = CoxeterGraph::chain(2);
        let s = standard_generators(&g, &EdgeCoefficients::symmetric(&g));
        assert!(evaluate_word(&s, &[]).unwrap().is_identity());
        assert!(evaluate_word(&s, &[1, 1]).unwrap().is_identity());
        assert!(words_equal_in_group(&g, &[0, 1, 0], &[1, 0, 1]).unwrap());
        assert!(!words_equal_in_group(&g, &[0], &[1]).unwrap());
        assert!(evaluate_word(&s, &[2]).is_err());
        let commuting = CoxeterGraph::new(2);
        assert!(words_equal_in_group(&commuting, &[0, 1, 0, 1], &[]).unwrap());
    }

    #[test]
    fn zero_potential_rejected() {
        assert_eq!(
            gauge_from_potentials(&[c("1"), c("0")]),
            Err(Error::ZeroPotential(1))
        );
        assert!(gauge_from_potentials(&[c("1"), c("1")])
            .unwrap()
            .is_identity());
    }
}
