use std::fmt;

use crate::cyclotomic::{Cyclotomic, Order};
use crate::error::{Error, Result};
use crate::matrix::RepMatrix;

/// A monomial matrix over powers of a fixed scalar a: row i holds
/// a^exps[i] in column perm[i].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    exps: Vec<i64>,
    /// Order of a when finite; exponents are then kept in `0..m`.
    modulus: Option<u64>,
}

/// Largest |k| tried when recognising an entry as a^k for a of infinite order.
const POWER_SEARCH: i64 = 1024;

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, exps: Vec<i64>, modulus: Option<u64>) -> Result<Self> {
        let n = perm.len();
        if exps.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: exps.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NonMonomial);
            }
        }
        if modulus == Some(0) {
            return Err(Error::FiniteOrder(0));
        }
        let mut m = MonomialMatrix {
            perm,
            exps,
            modulus,
        };
        m.reduce();
        Ok(m)
    }

    pub fn identity(n: usize, modulus: Option<u64>) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            exps: vec![0; n],
            modulus,
        }
    }

    /// Swaps coordinates i and i + 1.
    pub fn transposition(n: usize, i: usize, modulus: Option<u64>) -> Self {
        let mut m = Self::identity(n, modulus);
        m.perm.swap(i, i + 1);
        m
    }

    fn reduce(&mut self) {
        if let Some(m) = self.modulus {
            for e in &mut self.exps {
                *e = e.rem_euclid(m as i64);
            }
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Exponent of a in the determinant, up to the sign of the permutation.
    pub fn exponent_sum(&self) -> i64 {
        let s: i64 = self.exps.iter().sum();
        match self.modulus {
            Some(m) => s.rem_euclid(m as i64),
            None => s,
        }
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.size(), rhs.size(), "monomial size mismatch");
        assert_eq!(self.modulus, rhs.modulus, "monomial modulus mismatch");
        let perm = self.perm.iter().map(|&p| rhs.perm[p]).collect();
        let exps = self
            .exps
            .iter()
            .zip(&self.perm)
            .map(|(&e, &p)| e + rhs.exps[p])
            .collect();
        let mut m = MonomialMatrix {
            perm,
            exps,
            modulus: self.modulus,
        };
        m.reduce();
        m
    }

    pub fn inverse(&self) -> Self {
        let n = self.size();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = -self.exps[i];
        }
        let mut m = MonomialMatrix {
            perm,
            exps,
            modulus: self.modulus,
        };
        m.reduce();
        m
    }

    pub fn to_matrix(&self, a: &Cyclotomic) -> Result<RepMatrix> {
        let mut out = RepMatrix::zeros(self.size());
        for (i, (&p, &e)) in self.perm.iter().zip(&self.exps).enumerate() {
            out.set(i, p, a.pow(e)?);
        }
        Ok(out)
    }

    /// Recognises a monomial matrix whose entries are powers of `a`.
    pub fn from_matrix(m: &RepMatrix, a: &Cyclotomic) -> Result<Self> {
        let n = m.size();
        let modulus = a.order()?.finite();
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut perm = Vec::with_capacity(n);
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| !m.get(i, j).is_zero()).collect();
            let [j] = nz[..] else {
                return Err(Error::NonMonomial);
            };
            perm.push(j);
            exps.push(power_of(m.get(i, j), a, modulus)?);
        }
        Self::new(perm, exps, modulus)
    }
}

fn power_of(x: &Cyclotomic, a: &Cyclotomic, modulus: Option<u64>) -> Result<i64> {
    let not_power = || Error::NotAPower(x.to_string());
    match modulus {
        Some(m) => {
            let mut acc = Cyclotomic::one();
            for k in 0..m as i64 {
                if &acc == x {
                    return Ok(k);
                }
                acc = &acc * a;
            }
            Err(not_power())
        }
        None => {
            if x.is_one() {
                return Ok(0);
            }
            let inv = a.inverse()?;
            let (mut up, mut down) = (a.clone(), inv.clone());
            for k in 1..=POWER_SEARCH {
                if &up == x {
                    return Ok(k);
                }
                if &down == x {
                    return Ok(-k);
                }
                up = &up * a;
                down = &down * &inv;
            }
            Err(not_power())
        }
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.exps)
            .map(|(p, e)| format!("{}:a^{}", p + 1, e))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// t_1, …, t_{n−1} and A in monomial form: t_i swaps i and i + 1; A has
/// a⁻¹ at (1, n) and a at (n, 1).
pub fn witness_monomials(n: usize, order: Order) -> Vec<MonomialMatrix> {
    let modulus = order.finite();
    let mut gens: Vec<MonomialMatrix> = (0..n - 1)
        .map(|i| MonomialMatrix::transposition(n, i, modulus))
        .collect();
    let mut a = MonomialMatrix::identity(n, modulus);
    a.perm.swap(0, n - 1);
    a.exps[0] = -1;
    a.exps[n - 1] = 1;
    a.reduce();
    gens.push(a);
    gens
}
