use std::collections::HashSet;

use serde::Serialize;

use super::{bfs, witness_monomials, MonomialMatrix};
use crate::cyclotomic::{Cyclotomic, Order};
use crate::error::{Error, Result};
use crate::georep::{standard_generators, EdgeCoefficients};
use crate::graph::CoxeterGraph;
use crate::matrix::RepMatrix;

/// A bijection θ of Z with θ(i + n) = θ(i) + n, stored as its window
/// θ(1), …, θ(n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Validates Σθ(i) = n(n+1)/2 and that the window hits every residue mod n.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let p = AffinePermutation { window };
        if p.is_valid() {
            Ok(p)
        } else {
            Err(Error::InvalidWindow(p.window))
        }
    }

    pub fn identity(n: usize) -> Self {
        AffinePermutation {
            window: (1..=n as i64).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let n = self.window.len() as i64;
        if n == 0 {
            return true;
        }
        let residues: HashSet<i64> = self.window.iter().map(|x| x.rem_euclid(n)).collect();
        residues.len() == self.window.len() && self.window.iter().sum::<i64>() == n * (n + 1) / 2
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn size(&self) -> usize {
        self.window.len()
    }

    /// θ(i) for any integer i.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + (i - 1 - r)
    }

    /// From a monomial matrix with a of infinite order: row i carrying
    /// a^{k_i} in column p(i) gives θ(p(i)) = i − n·k_i.
    pub fn from_monomial(m: &MonomialMatrix) -> Result<Self> {
        if let Some(k) = m.modulus() {
            return Err(Error::FiniteOrder(k));
        }
        let s = m.exponent_sum();
        if s != 0 {
            return Err(Error::NonzeroExponentSum(s));
        }
        let n = m.size() as i64;
        let mut window = vec![0; m.size()];
        for (i, (&p, &k)) in m.permutation().iter().zip(m.exponents()).enumerate() {
            window[p] = i as i64 + 1 - n * k;
        }
        Self::new(window)
    }
}

/// x ∘ y.
pub fn affine_compose(x: &AffinePermutation, y: &AffinePermutation) -> AffinePermutation {
    assert_eq!(x.size(), y.size(), "affine permutation size mismatch");
    let out = AffinePermutation {
        window: y.window.iter().map(|&v| x.apply(v)).collect(),
    };
    debug_assert!(out.is_valid());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Triple {
    matrix: RepMatrix,
    mono: MonomialMatrix,
    affine: AffinePermutation,
    standard: RepMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineIsoReport {
    pub n: usize,
    pub a: Cyclotomic,
    pub length_bound: usize,
    /// Distinct elements per word length in the witness group.
    pub growth: Vec<usize>,
    /// Growth of the affine Coxeter group from its own standard representation.
    pub oracle_growth: Vec<usize>,
    pub elements: usize,
    pub distinct_matrices: usize,
    pub distinct_affine: usize,
    pub distinct_standard: usize,
    pub problems: Vec<String>,
}

impl AffineIsoReport {
    pub fn agrees(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Compares the witness matrices {t_i, A}, their affine permutations and the
/// standard representation of the n-cycle on every word of length ≤ `length_bound`.
pub fn verify_affine_iso(n: usize, a: &Cyclotomic, length_bound: usize) -> Result<AffineIsoReport> {
    if n < 3 {
        return Err(Error::CycleTooShort(n));
    }
    if let Order::Finite(m) = a.order()? {
        return Err(Error::FiniteOrder(m));
    }
    let cycle = CoxeterGraph::cycle(n);
    let sigma = standard_generators(&cycle, &EdgeCoefficients::symmetric(&cycle));
    let gens = witness_monomials(n, Order::Infinite)
        .into_iter()
        .zip(sigma.iter())
        .map(|(mono, s)| {
            Ok(Triple {
                matrix: mono.to_matrix(a)?,
                affine: AffinePermutation::from_monomial(&mono)?,
                mono,
                standard: s.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let identity = Triple {
        matrix: RepMatrix::identity(n),
        mono: MonomialMatrix::identity(n, None),
        affine: AffinePermutation::identity(n),
        standard: RepMatrix::identity(n),
    };
    let mul = |x: &Triple, y: &Triple| Triple {
        matrix: &x.matrix * &y.matrix,
        mono: x.mono.compose(&y.mono),
        affine: affine_compose(&x.affine, &y.affine),
        standard: &x.standard * &y.standard,
    };
    let ball = bfs(identity, &gens, mul, usize::MAX, Some(length_bound));
    let oracle = bfs(
        RepMatrix::identity(n),
        sigma.as_slice(),
        |x, y| x * y,
        usize::MAX,
        Some(length_bound),
    );

    let mut problems = Vec::new();
    for t in &ball.elements {
        if !t.affine.is_valid() {
            problems.push(format!("invalid window {:?}", t.affine.window()));
        }
        if t.mono.to_matrix(a)? != t.matrix {
            problems.push(format!("monomial {} disagrees with its matrix", t.mono));
        }
        if AffinePermutation::from_monomial(&t.mono)? != t.affine {
            problems.push(format!("affine image of {} is not a homomorphism", t.mono));
        }
    }
    let distinct_matrices = ball
        .elements
        .iter()
        .map(|t| &t.matrix)
        .collect::<HashSet<_>>()
        .len();
    let distinct_affine = ball
        .elements
        .iter()
        .map(|t| &t.affine)
        .collect::<HashSet<_>>()
        .len();
    let distinct_standard = ball
        .elements
        .iter()
        .map(|t| &t.standard)
        .collect::<HashSet<_>>()
        .len();
    let elements = ball.elements.len();
    for (name, d) in [
        ("matrix", distinct_matrices),
        ("affine", distinct_affine),
        ("standard", distinct_standard),
    ] {
        if d != elements {
            problems.push(format!(
                "{name} model identifies words that other models separate"
            ));
        }
    }
    if ball.growth != oracle.growth {
        problems.push(format!(
            "growth {:?} differs from oracle {:?}",
            ball.growth, oracle.growth
        ));
    }
    Ok(AffineIsoReport {
        n,
        a: a.clone(),
        length_bound,
        growth: ball.growth,
        oracle_growth: oracle.growth,
        elements,
        distinct_matrices,
        distinct_affine,
        distinct_standard,
        problems,
    })
}
