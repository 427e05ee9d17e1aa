//! Breadth-first enumeration of finitely generated groups.

mod affine;
mod monomial;

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::georep::GeneratorSet;
use crate::matrix::RepMatrix;

pub use affine::{affine_compose, verify_affine_iso, AffineIsoReport, AffinePermutation};
pub use monomial::{witness_monomials, MonomialMatrix};

/// Elements reached by a breadth-first closure, in discovery order.
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    pub elements: Vec<T>,
    /// Word length of each element, parallel to `elements`.
    pub lengths: Vec<usize>,
    /// True when the closure finished inside the limits.
    pub closed: bool,
    /// Number of elements of each word length.
    pub growth: Vec<usize>,
}

impl<T> Enumeration<T> {
    pub fn order(&self) -> Option<usize> {
        self.closed.then_some(self.elements.len())
    }

    pub fn report(&self) -> EnumerationReport {
        EnumerationReport {
            closed: self.closed,
            order: self.order(),
            elements: self.elements.len(),
            growth: self.growth.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub closed: bool,
    pub order: Option<usize>,
    pub elements: usize,
    pub growth: Vec<usize>,
}

/// Closure of `identity` under right multiplication by `gens`.
///
/// Stops with `closed = false` once `max_elements` distinct elements are
/// known and a new one appears. With `max_length`, only words up to that
/// length are explored and `closed` reports whether the ball stopped growing.
pub fn bfs<T, F>(
    identity: T,
    gens: &[T],
    mul: F,
    max_elements: usize,
    max_length: Option<usize>,
) -> Enumeration<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    index.insert(identity.clone(), 0);
    let mut elements = vec![identity];
    let mut lengths = vec![0];
    let mut growth = vec![1];
    let mut frontier = vec![0usize];
    let mut closed = true;
    let mut len = 0;
    'layers: while !frontier.is_empty() {
        if max_length.is_some_and(|l| len >= l) {
            // Exploring one more layer tells whether the ball is the whole group.
            closed = frontier.iter().all(|&e| {
                gens.iter()
                    .all(|g| index.contains_key(&mul(&elements[e], g)))
            });
            break;
        }
        len += 1;
        let mut next = Vec::new();
        for &e in &frontier {
            for g in gens {
                let x = mul(&elements[e], g);
                if index.contains_key(&x) {
                    continue;
                }
                if elements.len() >= max_elements {
                    closed = false;
                    break 'layers;
                }
                index.insert(x.clone(), elements.len());
                next.push(elements.len());
                elements.push(x);
                lengths.push(len);
            }
        }
        if !next.is_empty() {
            growth.push(next.len());
        }
        frontier = next;
    }
    if !closed {
        let counted: usize = growth.iter().sum();
        if counted < elements.len() {
            growth.push(elements.len() - counted);
        }
    }
    Enumeration {
        elements,
        lengths,
        closed,
        growth,
    }
}

/// Closure of the matrix group generated by `gens`, keyed by exact entries.
pub fn bfs_enumerate(gens: &GeneratorSet, max_elements: usize) -> Enumeration<RepMatrix> {
    let n = gens.as_slice().first().map_or(0, RepMatrix::size);
    bfs(
        RepMatrix::identity(n),
        gens.as_slice(),
        |a, b| a * b,
        max_elements,
        None,
    )
}
