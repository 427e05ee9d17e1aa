//! Faithfulness verdicts with re-checkable certificates.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::cyclotomic::{Cyclotomic, Order};
use crate::error::{Error, Result};
use crate::georep::{
    gauge_conjugate, gauge_from_potentials, generalized_generators, standard_generators,
    EdgeCoefficients, GeneratorSet,
};
use crate::graph::{
    check_balanced, cycle_weight, fundamental_cycles, BalanceCertificate, CoxeterGraph, EdgeLabel,
    WeightFunction,
};
use crate::matrix::RepMatrix;
use crate::serde_util::one_based_vec;

/// Default bound on exponents when probing products of fundamental cycles.
pub const DEFAULT_PROBE_BOUND: i64 = 6;
/// At most this many simple cycles are examined.
const SIMPLE_CYCLE_CAP: usize = 10_000;

/// m^{n−1}·n!.
pub fn quotient_order(n: u32, m: u64) -> Result<u128> {
    let overflow = || Error::Overflow("quotient order");
    let mut acc: u128 = 1;
    for k in 2..=n as u128 {
        acc = acc.checked_mul(k).ok_or_else(overflow)?;
    }
    for _ in 1..n {
        acc = acc.checked_mul(m as u128).ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// The monomial images t_1, …, t_{n−1}, A of a cycle whose weight a sits on
/// (s_n, s_1), together with the conjugating matrix J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialWitness {
    pub n: usize,
    pub a: Cyclotomic,
    #[serde(rename = "J")]
    pub j: RepMatrix,
    pub t: Vec<RepMatrix>,
    #[serde(rename = "A")]
    pub big_a: RepMatrix,
    /// ω_1, …, ω_n of the gathered cycle.
    pub omega: Vec<RepMatrix>,
}

impl MonomialWitness {
    /// t_1, …, t_{n−1}, A in generator order.
    pub fn generators(&self) -> GeneratorSet {
        let mut g = self.t.clone();
        g.push(self.big_a.clone());
        GeneratorSet::new(g)
    }

    pub fn verify(&self) -> Result<()> {
        let conj = gauge_conjugate(&self.j, &GeneratorSet::new(self.omega.clone()))?;
        if conj != self.generators() {
            return Err(Error::VerificationFailed(
                "J ω_i J⁻¹ does not match the monomial generators".into(),
            ));
        }
        Ok(())
    }
}

/// ω_1, …, ω_n of the n-cycle with weight 1 on (s_i, s_{i+1}) and a on (s_n, s_1).
fn gathered_omega(n: usize, a: &Cyclotomic) -> Result<GeneratorSet> {
    let g = CoxeterGraph::cycle(n);
    let mut f = WeightFunction::reciprocal((1..n).map(|i| (i - 1, i, Cyclotomic::one())))?;
    f.set_reciprocal(n - 1, 0, a.clone())?;
    generalized_generators(&g, &f, &EdgeCoefficients::symmetric(&g))
}

/// t_1, …, t_{n−1} and A without the conjugating matrix. Works for a = 1,
/// where J is singular.
pub fn monomial_generators(n: usize, a: &Cyclotomic) -> Result<GeneratorSet> {
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    let ainv = a.inverse()?;
    let mut gens = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut t = RepMatrix::zeros(n);
        for r in 0..n {
            let c = if r == i {
                i + 1
            } else if r == i + 1 {
                i
            } else {
                r
            };
            t.set(r, c, Cyclotomic::one());
        }
        gens.push(t);
    }
    let mut big_a = RepMatrix::identity(n);
    big_a.set(0, 0, Cyclotomic::zero());
    big_a.set(n - 1, n - 1, Cyclotomic::zero());
    big_a.set(0, n - 1, ainv);
    big_a.set(n - 1, 0, a.clone());
    gens.push(big_a);
    Ok(GeneratorSet::new(gens))
}

/// Builds J (1 on the diagonal, −1 below it, −a⁻¹ in the corner) and checks
/// J ω_i J⁻¹ = t_i, J ω_n J⁻¹ = A before returning. J is singular for a = 1.
pub fn monomial_witness(n: usize, a: &Cyclotomic) -> Result<MonomialWitness> {
    let mut gens = monomial_generators(n, a)?.as_slice().to_vec();
    let big_a = gens.pop().expect("n ≥ 3");
    let mut j = RepMatrix::identity(n);
    for i in 0..n - 1 {
        j.set(i + 1, i, Cyclotomic::from_integer(-1));
    }
    j.set(0, n - 1, -a.inverse()?);
    j.inverse()?;
    let w = MonomialWitness {
        n,
        a: a.clone(),
        j,
        t: gens,
        big_a,
        omega: gathered_omega(n, a)?.as_slice().to_vec(),
    };
    w.verify()?;
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbedCycle {
    #[serde(serialize_with = "one_based_vec")]
    pub cycle: Vec<usize>,
    pub weight: Cyclotomic,
    #[serde(serialize_with = "order_str")]
    pub order: Order,
}

/// A finite-order weight that does not yield a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hint {
    pub description: String,
    pub weight: Cyclotomic,
    #[serde(serialize_with = "order_str")]
    pub order: Order,
}

fn order_str<S: serde::Serializer>(o: &Order, s: S) -> std::result::Result<S::Ok, S::Error> {
    match o {
        Order::Finite(m) => s.serialize_u64(*m),
        Order::Infinite => s.serialize_str("inf"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    FaithfulBalanced {
        certificate: BalanceCertificate,
        /// J with J σ_i J⁻¹ = ω_i.
        gauge: RepMatrix,
    },
    NotFaithful {
        /// An induced, simply-laced cycle s_1 → … → s_c.
        #[serde(serialize_with = "one_based_vec")]
        cycle: Vec<usize>,
        a: Cyclotomic,
        m: u64,
        quotient_order: u128,
        /// Diagonal gathering the cycle's weight onto (s_c, s_1), by cycle position.
        gather: Vec<Cyclotomic>,
        witness: MonomialWitness,
    },
    FaithfulAffineCycle {
        n: usize,
        a: Cyclotomic,
    },
    Unknown {
        probed_cycles: Vec<ProbedCycle>,
        hints: Vec<Hint>,
        reason: String,
    },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::FaithfulBalanced { .. } => "faithful_balanced",
            Verdict::NotFaithful { .. } => "not_faithful",
            Verdict::FaithfulAffineCycle { .. } => "faithful_affine_cycle",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_faithful(&self) -> Option<bool> {
        match self {
            Verdict::FaithfulBalanced { .. } | Verdict::FaithfulAffineCycle { .. } => Some(true),
            Verdict::NotFaithful { .. } => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }

    /// Re-derives every claim of the certificate from the graph.
    pub fn recheck(&self, graph: &CoxeterGraph, f: &WeightFunction) -> Result<()> {
        let fail = |m: String| Err(Error::VerificationFailed(m));
        match self {
            Verdict::FaithfulBalanced { certificate, gauge } => {
                if !certificate.is_balanced() {
                    return fail("certificate is not a balance certificate".into());
                }
                certificate.verify(graph, f)?;
                check_gauge(graph, f, gauge)
            }
            Verdict::NotFaithful {
                cycle,
                a,
                m,
                quotient_order: q,
                gather,
                witness,
            } => {
                if !is_induced_simply_laced(graph, cycle) {
                    return fail("cycle is not an induced simply-laced cycle".into());
                }
                if &cycle_weight(f, cycle)? != a {
                    return fail("cycle weight differs from a".into());
                }
                if a.order()? != Order::Finite(*m) || *m < 2 {
                    return fail(format!("a does not have order {m}"));
                }
                if *q != quotient_order(cycle.len() as u32, *m)? {
                    return fail("wrong quotient order".into());
                }
                if witness.n != cycle.len() || &witness.a != a {
                    return fail("witness does not match the cycle".into());
                }
                witness.verify()?;
                // Restricted generators, gathered, then conjugated into monomial form.
                let restricted = restrict_to_cycle(graph, f, cycle)?;
                let total = &witness.j * &RepMatrix::diagonal(gather);
                if gauge_conjugate(&total, &restricted)? != witness.generators() {
                    return fail("J·D does not conjugate the cycle's generators to t_i, A".into());
                }
                Ok(())
            }
            Verdict::FaithfulAffineCycle { n, a } => {
                let order = graph.cycle_order().ok_or(Error::NotACycle)?;
                if order.len() != *n || !graph.is_simply_laced() {
                    return fail("graph is not a simply-laced n-cycle".into());
                }
                if &cycle_weight(f, &order)? != a || a.order()? != Order::Infinite {
                    return fail("cycle weight is not the stated element of infinite order".into());
                }
                Ok(())
            }
            Verdict::Unknown { .. } => Ok(()),
        }
    }
}

fn check_gauge(graph: &CoxeterGraph, f: &WeightFunction, gauge: &RepMatrix) -> Result<()> {
    let ell = EdgeCoefficients::symmetric(graph);
    let sigma = standard_generators(graph, &ell);
    let omega = generalized_generators(graph, f, &ell)?;
    if gauge_conjugate(gauge, &sigma)? != omega {
        return Err(Error::VerificationFailed("J σ_i J⁻¹ ≠ ω_i".into()));
    }
    Ok(())
}

fn is_induced_simply_laced(graph: &CoxeterGraph, cycle: &[usize]) -> bool {
    let c = cycle.len();
    if c < 3
        || cycle.iter().collect::<HashSet<_>>().len() != c
        || cycle.iter().any(|&v| v >= graph.vertex_count())
    {
        return false;
    }
    for x in 0..c {
        for y in x + 1..c {
            let consecutive = y == x + 1 || (x == 0 && y == c - 1);
            match graph.label(cycle[x], cycle[y]) {
                Some(EdgeLabel::Finite(3)) if consecutive => {}
                None if !consecutive => {}
                _ => return false,
            }
        }
    }
    true
}

/// Generators of the parabolic subgroup on `cycle`, restricted to the
/// coordinates of the cycle (in cycle order).
fn restrict_to_cycle(
    graph: &CoxeterGraph,
    f: &WeightFunction,
    cycle: &[usize],
) -> Result<GeneratorSet> {
    let omega = generalized_generators(graph, f, &EdgeCoefficients::symmetric(graph))?;
    let c = cycle.len();
    let gens = cycle
        .iter()
        .map(|&v| {
            let mut m = RepMatrix::zeros(c);
            for (x, &r) in cycle.iter().enumerate() {
                for (y, &col) in cycle.iter().enumerate() {
                    m.set(x, y, omega[v].get(r, col).clone());
                }
            }
            m
        })
        .collect();
    Ok(GeneratorSet::new(gens))
}

/// Rotates to start at the smallest vertex, heading to its smaller cycle neighbour.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let c = cycle.len();
    let start = (0..c).min_by_key(|&i| cycle[i]).unwrap_or(0);
    let next = cycle[(start + 1) % c];
    let prev = cycle[(start + c - 1) % c];
    if next < prev {
        (0..c).map(|k| cycle[(start + k) % c]).collect()
    } else {
        (0..c).map(|k| cycle[(start + c - k) % c]).collect()
    }
}

fn not_faithful(f: &WeightFunction, cycle: Vec<usize>, a: Cyclotomic, m: u64) -> Result<Verdict> {
    let c = cycle.len();
    let mut gather = vec![Cyclotomic::one(); c];
    for k in 1..c {
        gather[k] = &gather[k - 1]
            * f.get(cycle[k - 1], cycle[k])
                .ok_or(Error::NotAdjacent(cycle[k - 1], cycle[k]))?;
    }
    Ok(Verdict::NotFaithful {
        quotient_order: quotient_order(c as u32, m)?,
        witness: monomial_witness(c, &a)?,
        cycle,
        a,
        m,
        gather,
    })
}

/// Decides faithfulness where a certificate is available.
///
/// Balanced graphs are faithful. An induced simply-laced cycle whose weight
/// has finite order m > 1 makes the representation non-faithful. A single
/// simply-laced cycle of infinite-order weight is faithful. Everything else,
/// including finite-order products of fundamental cycles found by the
/// bounded probe, is reported as unknown.
pub fn classify(graph: &CoxeterGraph, f: &WeightFunction, probe_bound: i64) -> Result<Verdict> {
    let cert = check_balanced(graph, f)?;
    if let Some(pots) = cert.potentials() {
        let gauge = gauge_from_potentials(pots)?;
        check_gauge(graph, f, &gauge)?;
        let verdict = Verdict::FaithfulBalanced {
            certificate: cert,
            gauge,
        };
        verdict.recheck(graph, f)?;
        return Ok(verdict);
    }

    let fundamentals: Vec<Vec<usize>> = fundamental_cycles(graph)
        .iter()
        .map(|c| canonical_cycle(c))
        .collect();
    let mut candidates = fundamentals.clone();
    let mut seen: HashSet<Vec<usize>> = candidates.iter().cloned().collect();
    for c in graph.simple_cycles(SIMPLE_CYCLE_CAP) {
        let c = canonical_cycle(&c);
        if seen.insert(c.clone()) {
            candidates.push(c);
        }
    }

    let mut probed = Vec::new();
    let mut hints = Vec::new();
    for cycle in candidates {
        let weight = cycle_weight(f, &cycle)?;
        let order = weight.order()?;
        if let Order::Finite(m) = order {
            if m > 1 {
                if is_induced_simply_laced(graph, &cycle) {
                    let verdict = not_faithful(f, cycle, weight, m)?;
                    verdict.recheck(graph, f)?;
                    return Ok(verdict);
                }
                let labels: Vec<String> = cycle.iter().map(|v| (v + 1).to_string()).collect();
                hints.push(Hint {
                    description: format!(
                        "cycle ({}) has a chord or a label other than 3",
                        labels.join(" ")
                    ),
                    weight: weight.clone(),
                    order,
                });
            }
        }
        probed.push(ProbedCycle {
            cycle,
            weight,
            order,
        });
    }

    let fundamental_weights: Vec<Cyclotomic> = probed
        .iter()
        .take(fundamentals.len())
        .map(|p| p.weight.clone())
        .collect();
    hints.extend(probe_products(&fundamental_weights, probe_bound)?);

    if let Some(order) = graph.cycle_order() {
        let a = cycle_weight(f, &order)?;
        if a.order()? == Order::Infinite && graph.is_simply_laced() {
            let verdict = Verdict::FaithfulAffineCycle { n: order.len(), a };
            verdict.recheck(graph, f)?;
            return Ok(verdict);
        }
    }

    let reason = if !hints.is_empty() {
        "finite-order weights found only on chorded or non-simply-laced cycles, or on products of cycles"
    } else {
        "no cycle weight of finite order greater than one"
    };
    Ok(Verdict::Unknown {
        probed_cycles: probed,
        hints,
        reason: reason.into(),
    })
}

/// Products ∏ w_i^{e_i} with |e_i| ≤ bound and at most three nonzero e_i,
/// involving at least two cycles, of finite order > 1.
fn probe_products(weights: &[Cyclotomic], bound: i64) -> Result<Vec<Hint>> {
    let mut hints = Vec::new();
    let k = weights.len();
    let exps: Vec<i64> = (-bound..=bound).filter(|&e| e != 0).collect();
    let mut powers: Vec<Vec<Cyclotomic>> = Vec::with_capacity(k);
    for w in weights {
        powers.push(exps.iter().map(|&e| w.pow(e)).collect::<Result<_>>()?);
    }
    let mut report = |idx: &[(usize, usize)], value: Cyclotomic| -> Result<()> {
        if let Order::Finite(m) = value.order()? {
            if m > 1 {
                let terms: Vec<String> = idx
                    .iter()
                    .map(|&(c, e)| format!("c{}^{}", c + 1, exps[e]))
                    .collect();
                hints.push(Hint {
                    description: format!(
                        "product {} of fundamental cycle weights",
                        terms.join("·")
                    ),
                    weight: value,
                    order: Order::Finite(m),
                });
            }
        }
        Ok(())
    };
    for a in 0..k {
        for b in a + 1..k {
            for (ea, pa) in powers[a].iter().enumerate() {
                for (eb, pb) in powers[b].iter().enumerate() {
                    let ab = pa * pb;
                    report(&[(a, ea), (b, eb)], ab.clone())?;
                    for (c, pcs) in powers.iter().enumerate().skip(b + 1) {
                        for (ec, pc) in pcs.iter().enumerate() {
                            report(&[(a, ea), (b, eb), (c, ec)], &ab * pc)?;
                        }
                    }
                }
            }
        }
    }
    Ok(hints)
}

impl fmt::Display for Verdict {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = |c: &[usize]| {
            c.iter()
                .map(|v| format!("s{}", v + 1))
                .collect::<Vec<_>>()
                .join(" → ")
        };
        match self {
            Verdict::FaithfulBalanced { certificate, gauge } => {
                writeln!(out, "faithful: the weighted graph is balanced")?;
                if let Some(p) = certificate.potentials() {
                    let p: Vec<String> = p.iter().map(ToString::to_string).collect();
                    writeln!(out, "potentials: ({})", p.join(", "))?;
                }
                write!(out, "gauge J with J σ_i J⁻¹ = ω_i:\n{gauge}")
            }
            Verdict::NotFaithful {
                cycle,
                a,
                m,
                quotient_order,
                ..
            } => {
                writeln!(out, "not faithful: cycle {} has weight a = {a} of order {m}", labels(cycle))?;
                write!(out, "the cycle's parabolic subgroup maps onto a finite monomial group of order {quotient_order}")
            }
            Verdict::FaithfulAffineCycle { n, a } => write!(
                out,
                "faithful: single {n}-cycle with weight a = {a} of infinite order; the image is the affine group of type A{}",
                n - 1
            ),
            Verdict::Unknown {
                probed_cycles,
                hints,
                reason,
            } => {
                write!(out, "unknown: {reason} ({} cycles probed)", probed_cycles.len())?;
                for h in hints {
                    write!(out, "\n  hint: {} = {} has order {}", h.description, h.weight, h.order)?;
                }
                Ok(())
            }
        }
    }
}
