#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use weighted_coxeter::{CoxeterGraph, Cyclotomic, EdgeLabel, WeightFunction};

pub fn c(s: &str) -> Cyclotomic {
    s.parse().unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&x| Cyclotomic::from_integer(x)).collect()
}

/// Weight pool for random legal functions.
pub fn weight_pool() -> Vec<Cyclotomic> {
    ["1", "-1", "zeta(3)", "-zeta(3)", "zeta(4)", "2", "1/2"]
        .iter()
        .map(|s| c(s))
        .collect()
}

/// A random connected graph on `n` vertices: a random spanning tree plus `extra` edges.
pub fn random_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    extra: usize,
    labels: &[EdgeLabel],
) -> CoxeterGraph {
    let mut g = CoxeterGraph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v, *labels.choose(rng).unwrap()).unwrap();
    }
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 100 {
        tries += 1;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j && !g.is_adjacent(i, j) {
            g.add_edge(i, j, *labels.choose(rng).unwrap()).unwrap();
            added += 1;
        }
    }
    g
}

pub fn random_weights<R: Rng>(
    rng: &mut R,
    g: &CoxeterGraph,
    pool: &[Cyclotomic],
) -> WeightFunction {
    WeightFunction::reciprocal(
        g.edges()
            .map(|(i, j, _)| (i, j, pool.choose(rng).unwrap().clone())),
    )
    .unwrap()
}

/// Balanced weights f(i, j) = wt(j)/wt(i) from random nonzero potentials.
pub fn balanced_weights<R: Rng>(
    rng: &mut R,
    g: &CoxeterGraph,
    pool: &[Cyclotomic],
) -> WeightFunction {
    let wt: Vec<Cyclotomic> = (0..g.vertex_count())
        .map(|_| pool.choose(rng).unwrap().clone())
        .collect();
    WeightFunction::reciprocal(
        g.edges()
            .map(|(i, j, _)| (i, j, wt[j].checked_div(&wt[i]).unwrap())),
    )
    .unwrap()
}

/// All words of length exactly `len` over `0..n`.
pub fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |v| {
                    let mut w = w.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    out
}
