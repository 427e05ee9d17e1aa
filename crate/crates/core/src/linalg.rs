//! Dense Gauss-Jordan elimination over an exact field.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) trait FieldElem: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Caller guarantees `self` is nonzero.
    fn recip(&self) -> Self;
}

impl FieldElem for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }
}

/// Inverts a square matrix given as rows. Returns `None` when singular.
pub(crate) fn invert<T: FieldElem>(rows: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = rows.len();
    let mut a: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `a * x = b` for square `a`.
pub(crate) fn solve<T: FieldElem>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let inv = invert(a)?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
            })
            .collect(),
    )
}

/// Picks row indices forming a maximal linearly independent set, greedily in order.
pub(crate) fn independent_rows<T: FieldElem>(rows: &[Vec<T>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x = x.mul(&inv);
            }
            basis.push((pc, v));
            picked.push(idx);
        }
    }
    picked
}
