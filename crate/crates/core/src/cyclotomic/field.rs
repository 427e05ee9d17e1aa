//! Per-conductor tables: cyclotomic polynomials and sub-field descent maps.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg;

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub(crate) fn prime_factors(n: u32) -> Vec<u32> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn cache<K: std::hash::Hash + Eq, V>() -> Mutex<HashMap<K, V>> {
    Mutex::new(HashMap::new())
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static POLYS: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let polys = POLYS.get_or_init(cache);
    if let Some(p) = polys.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d, d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        let d = d as u32;
        if d == n {
            continue;
        }
        let den = cyclotomic_poly(d);
        num = exact_div_monic(&num, &den);
    }
    let p = Arc::new(num);
    polys.lock().unwrap().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a dense polynomial (lowest degree first) modulo Phi_n, in place,
/// and truncates it to `phi(n)` coefficients.
pub(crate) fn reduce_mod_phi(poly: &mut Vec<BigRational>, n: u32) {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    for d in (deg..poly.len()).rev() {
        if poly[d].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[d], BigRational::zero());
        for (i, &k) in phi.iter().enumerate().take(deg) {
            if k != 0 {
                let t = &c * BigRational::from_integer(BigInt::from(k));
                poly[d - deg + i] -= t;
            }
        }
    }
    poly.resize(deg, BigRational::zero());
}

/// Coordinates of zeta_n^k in the power basis of Q(zeta_n).
pub(crate) fn zeta_power(n: u32, k: i64) -> Vec<BigRational> {
    let e = k.mod_floor(&(n as i64)) as usize;
    let mut poly = vec![BigRational::zero(); e.max(euler_phi(n)) + 1];
    poly[e] = BigRational::from_integer(BigInt::from(1));
    reduce_mod_phi(&mut poly, n);
    poly
}

/// Re-expresses coordinates over Q(zeta_from) in the basis of Q(zeta_to), `from | to`.
pub(crate) fn embed(coeffs: &[BigRational], from: u32, to: u32) -> Vec<BigRational> {
    if from == to {
        return coeffs.to_vec();
    }
    let step = (to / from) as usize;
    let top = (coeffs.len().saturating_sub(1)) * step;
    let mut poly = vec![BigRational::zero(); top.max(euler_phi(to)) + 1];
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            poly[i * step] = c.clone();
        }
    }
    reduce_mod_phi(&mut poly, to);
    poly
}

/// Data for testing membership of Q(zeta_n) elements in the subfield Q(zeta_m).
struct Descent {
    /// Column j: zeta_m^j written in the basis of Q(zeta_n).
    columns: Vec<Vec<BigRational>>,
    pivot_rows: Vec<usize>,
    /// Inverse of the square sub-matrix on `pivot_rows`.
    inverse: Vec<Vec<BigRational>>,
}

type DescentCache = Mutex<HashMap<(u32, u32), Arc<Descent>>>;

fn descent_data(n: u32, m: u32) -> Arc<Descent> {
    static DESCENTS: OnceLock<DescentCache> = OnceLock::new();
    let table = DESCENTS.get_or_init(cache);
    if let Some(d) = table.lock().unwrap().get(&(n, m)) {
        return d.clone();
    }
    let phi_m = euler_phi(m);
    let columns: Vec<Vec<BigRational>> = (0..phi_m)
        .map(|j| {
            let mut e = vec![BigRational::zero(); phi_m];
            e[j] = BigRational::from_integer(BigInt::from(1));
            embed(&e, m, n)
        })
        .collect();
    let phi_n = euler_phi(n);
    let rows: Vec<Vec<BigRational>> = (0..phi_n)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let pivot_rows = linalg::independent_rows(&rows);
    let square: Vec<Vec<BigRational>> = pivot_rows.iter().map(|&r| rows[r].clone()).collect();
    let inverse = linalg::invert(&square).expect("embedding of a subfield is injective");
    let d = Arc::new(Descent {
        columns,
        pivot_rows,
        inverse,
    });
    table.lock().unwrap().insert((n, m), d.clone());
    d
}

/// If the element with coordinates `coeffs` over Q(zeta_n) lies in Q(zeta_m),
/// returns its coordinates there.
pub(crate) fn descend(coeffs: &[BigRational], n: u32, m: u32) -> Option<Vec<BigRational>> {
    let d = descent_data(n, m);
    let b: Vec<BigRational> = d
        .inverse
        .iter()
        .map(|row| {
            row.iter()
                .zip(&d.pivot_rows)
                .filter(|(x, &r)| !x.is_zero() && !coeffs[r].is_zero())
                .fold(BigRational::zero(), |acc, (x, &r)| acc + x * &coeffs[r])
        })
        .collect();
    // Check the full embedding reproduces every coordinate.
    for (r, c) in coeffs.iter().enumerate() {
        let v = d
            .columns
            .iter()
            .zip(&b)
            .filter(|(col, bj)| !col[r].is_zero() && !bj.is_zero())
            .fold(BigRational::zero(), |acc, (col, bj)| acc + &col[r] * bj);
        if &v != c {
            return None;
        }
    }
    Some(b)
}
