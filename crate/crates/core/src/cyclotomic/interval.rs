//! Rigorous enclosures of cos(2πk/n) with directed-rounding fixed point.
//!
//! A fixed-point value `v` at precision `p` stands for `v / 2^p`. Every
//! enclosure `(lo, hi)` satisfies `lo / 2^p <= x <= hi / 2^p`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Enclosure of arctan(1/x) for integer x >= 2.
fn atan_inv(x: u32, prec: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << prec;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut u_lo = div_floor(&one, &x);
    let mut u_hi = div_ceil(&one, &x);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let d = BigInt::from(2 * j + 1);
        let t_lo = div_floor(&u_lo, &d);
        let t_hi = div_ceil(&u_hi, &d);
        if t_hi <= BigInt::one() {
            // Alternating tail is bounded by the first omitted term.
            lo -= &t_hi;
            hi += &t_hi;
            return (lo, hi);
        }
        if j.is_multiple_of(2) {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        u_lo = div_floor(&u_lo, &x2);
        u_hi = div_ceil(&u_hi, &x2);
        j += 1;
    }
}

/// Enclosure of π via Machin's formula, cached per precision.
pub(crate) fn pi(prec: u32) -> (BigInt, BigInt) {
    static PI: OnceLock<Mutex<HashMap<u32, (BigInt, BigInt)>>> = OnceLock::new();
    let table = PI.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = table.lock().unwrap().get(&prec) {
        return v.clone();
    }
    let (a_lo, a_hi) = atan_inv(5, prec);
    let (b_lo, b_hi) = atan_inv(239, prec);
    let lo = (a_lo << 4u32) - (b_hi << 2u32);
    let hi = (a_hi << 4u32) - (b_lo << 2u32);
    table.lock().unwrap().insert(prec, (lo.clone(), hi.clone()));
    (lo, hi)
}

/// Enclosure of cos(t) for a fixed-point point value 0 <= t <= 4.
fn cos_point(t: &BigInt, prec: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << prec;
    let t2 = t * t;
    let t2_lo = div_floor(&t2, &scale);
    let t2_hi = div_ceil(&t2, &scale);
    let mut c_lo = scale.clone();
    let mut c_hi = scale.clone();
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        if j > 0 && c_hi <= BigInt::one() {
            // Lagrange remainder: |R| <= t^(2j) / (2j)!, enclosed by c_hi.
            lo -= &c_hi;
            hi += &c_hi;
            return (lo, hi);
        }
        if j.is_multiple_of(2) {
            lo += &c_lo;
            hi += &c_hi;
        } else {
            lo -= &c_hi;
            hi -= &c_lo;
        }
        j += 1;
        let d = BigInt::from((2 * j - 1) * (2 * j)) * &scale;
        c_lo = div_floor(&(&c_lo * &t2_lo), &d);
        c_hi = div_ceil(&(&c_hi * &t2_hi), &d);
    }
}

/// Enclosure of cos(2πk/n).
pub(crate) fn cos_two_pi(k: i64, n: u32, prec: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << prec;
    let n64 = n as i64;
    let mut k = k.mod_floor(&n64);
    if 2 * k > n64 {
        k = n64 - k;
    }
    if k == 0 {
        return (scale.clone(), scale);
    }
    if 2 * k == n64 {
        return (-&scale, -scale);
    }
    if 4 * k == n64 {
        return (BigInt::zero(), BigInt::zero());
    }
    let (pi_lo, pi_hi) = pi(prec);
    let num = BigInt::from(2 * k);
    let den = BigInt::from(n);
    let theta_lo = div_floor(&(&pi_lo * &num), &den);
    let theta_hi = div_ceil(&(&pi_hi * &num), &den);
    // cos decreases on [0, π].
    let lo = if theta_hi >= pi_lo {
        -scale.clone()
    } else {
        cos_point(&theta_hi, prec).0
    };
    let hi = if !theta_lo.is_positive() {
        scale
    } else {
        cos_point(&theta_lo, prec).1
    };
    (lo, hi)
}
