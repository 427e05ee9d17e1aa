//! Square matrices over [`Cyclotomic`].

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::linalg;

/// An `n × n` matrix, row-major. Equality is exact and entrywise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepMatrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl RepMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Cyclotomic::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Cyclotomic::one();
        }
        RepMatrix { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        RepMatrix {
            n,
            entries: vec![Cyclotomic::zero(); n * n],
        }
    }

    pub fn diagonal(diag: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(RepMatrix { n, entries })
    }

    /// Parses rows of scalar literals.
    pub fn from_literals(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_diagonal() {
            let diag = (0..self.n)
                .map(|i| self.get(i, i).inverse().map_err(|_| Error::SingularMatrix))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::diagonal(&diag));
        }
        let inv = linalg::invert(&self.rows()).ok_or(Error::SingularMatrix)?;
        Self::from_rows(inv)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &RepMatrix) -> Result<Self> {
        Ok(&(self * other) * &self.inverse()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        result
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    /// Rows of exact literals, the JSON export format.
    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl<'a> Mul<&'a RepMatrix> for &'a RepMatrix {
    type Output = RepMatrix;

    fn mul(self, rhs: &RepMatrix) -> RepMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RepMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl Mul for RepMatrix {
    type Output = RepMatrix;
    fn mul(self, rhs: RepMatrix) -> RepMatrix {
        &self * &rhs
    }
}

/// Aligned grid of exact literals.
impl fmt::Display for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_literal_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RepMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMatrix{:?}", self.to_literal_rows())
    }
}

impl Serialize for RepMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_literal_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        RepMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
