//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`Cyclotomic`] stores its coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}` after reduction modulo the N-th cyclotomic
//! polynomial. Every value is kept at its minimal conductor, so two values
//! are equal iff their conductors and coordinate vectors are identical and
//! `Eq`/`Hash` are structural.

mod field;
mod interval;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

pub(crate) use field::divisors;

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Multiplicative order of a nonzero element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root of unity ζ_n = e^{2πi/n}.
    pub fn zeta(n: u32) -> Result<Self> {
        Self::zeta_pow(n, 1)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroConductor);
        }
        Ok(Self::raw(n, field::zeta_power(n, k)))
    }

    /// `scale · Σ poly[k] ζ_conductor^k`; the polynomial may have any degree.
    pub fn from_poly(conductor: u32, poly: &[BigInt], scale: BigRational) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (k, c) in poly.iter().enumerate() {
            dense[k % conductor as usize] += BigRational::from_integer(c.clone());
        }
        field::reduce_mod_phi(&mut dense, conductor);
        for c in dense.iter_mut() {
            *c *= &scale;
        }
        Ok(Self::raw(conductor, dense))
    }

    /// 2cos(π/m) = ζ_{2m} + ζ_{2m}^{-1}.
    pub fn two_cos(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidLabel(m));
        }
        Ok(&Self::zeta_pow(2 * m, 1)? + &Self::zeta_pow(2 * m, -1)?)
    }

    /// Builds from coordinates at conductor `n` and brings the value to its
    /// minimal conductor.
    fn raw(n: u32, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), field::euler_phi(n));
        Cyclotomic {
            conductor: n,
            coeffs,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        'outer: loop {
            if self.conductor == 1 {
                return self;
            }
            if self.coeffs[1..].iter().all(Zero::is_zero) {
                let q = self.coeffs.swap_remove(0);
                return Self::from_rational(q);
            }
            for p in field::prime_factors(self.conductor) {
                let m = self.conductor / p;
                if let Some(c) = field::descend(&self.coeffs, self.conductor, m) {
                    self.conductor = m;
                    self.coeffs = c;
                    continue 'outer;
                }
            }
            return self;
        }
    }

    /// The minimal N with this value in Q(ζ_N).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates at [`Self::conductor`].
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coordinates in the power basis of Q(ζ_n). `None` unless the conductor divides `n`.
    pub fn coefficients_at(&self, n: u32) -> Option<Vec<BigRational>> {
        if n == 0 || !n.is_multiple_of(self.conductor) {
            return None;
        }
        Some(field::embed(&self.coeffs, self.conductor, n))
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Complex conjugate (the automorphism ζ ↦ ζ^{-1}).
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.conductor as usize;
        let mut dense = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[(n - i) % n] += c;
        }
        field::reduce_mod_phi(&mut dense, self.conductor);
        Self::raw(self.conductor, dense)
    }

    pub fn is_real(&self) -> bool {
        self.is_rational() || self.conj() == *self
    }

    fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    fn multiply(&self, rhs: &Self) -> Self {
        if let Some(q) = rhs.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return rhs.scale(&q);
        }
        let n = lcm(self.conductor, rhs.conductor);
        let a = field::embed(&self.coeffs, self.conductor, n);
        let b = field::embed(&rhs.coeffs, rhs.conductor, n);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        field::reduce_mod_phi(&mut prod, n);
        Self::raw(n, prod)
    }

    fn addition(&self, rhs: &Self, negate: bool) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            let v = if negate {
                &self.coeffs[0] - &rhs.coeffs[0]
            } else {
                &self.coeffs[0] + &rhs.coeffs[0]
            };
            return Self::from_rational(v);
        }
        let n = lcm(self.conductor, rhs.conductor);
        let mut a = field::embed(&self.coeffs, self.conductor, n);
        let b = field::embed(&rhs.coeffs, rhs.conductor, n);
        for (x, y) in a.iter_mut().zip(b) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
        Self::raw(n, a)
    }

    /// Multiplicative inverse, by solving `x · y = 1` in the power basis.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let n = self.conductor;
        let phi = self.coeffs.len();
        // Column j holds the coordinates of x · ζ^j.
        let columns: Vec<Vec<BigRational>> = (0..phi)
            .map(|j| {
                let mut poly = vec![BigRational::zero(); phi + j];
                for (i, c) in self.coeffs.iter().enumerate() {
                    poly[i + j] = c.clone();
                }
                field::reduce_mod_phi(&mut poly, n);
                poly
            })
            .collect();
        let rows: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let mut rhs = vec![BigRational::zero(); phi];
        rhs[0] = BigRational::one();
        let y = linalg::solve(&rows, &rhs).ok_or(Error::DivisionByZero)?;
        Ok(Self::raw(n, y))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut result = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }

    /// Smallest d ≥ 1 with x^d = 1, or [`Order::Infinite`].
    ///
    /// Roots of unity in Q(ζ_N) have order dividing lcm(2, N).
    pub fn order(&self) -> Result<Order> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let bound = lcm(2, self.conductor) as u64;
        if !self.pow(bound as i64)?.is_one() {
            return Ok(Order::Infinite);
        }
        for d in divisors(bound) {
            if self.pow(d as i64)?.is_one() {
                return Ok(Order::Finite(d));
            }
        }
        unreachable!("x^bound = 1 so some divisor works")
    }

    /// Exact sign of a real value under ζ_N ↦ e^{2πi/N}.
    ///
    /// Refines rigorous enclosures of cos(2πk/N), starting at 64 fractional
    /// bits and doubling, until the enclosure of the value excludes zero.
    pub fn sign(&self) -> Result<Sign> {
        if let Some(q) = self.to_rational() {
            return Ok(match q.numer().sign() {
                num_bigint::Sign::Minus => Sign::Negative,
                num_bigint::Sign::NoSign => Sign::Zero,
                num_bigint::Sign::Plus => Sign::Positive,
            });
        }
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        let mut prec = 64u32;
        loop {
            let scale = BigRational::from_integer(BigInt::one() << prec);
            let mut lo = BigRational::zero();
            let mut hi = BigRational::zero();
            for (k, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (cl, ch) = interval::cos_two_pi(k as i64, self.conductor, prec);
                let cl = BigRational::from_integer(cl) / &scale;
                let ch = BigRational::from_integer(ch) / &scale;
                if c.is_positive() {
                    lo += c * &cl;
                    hi += c * &ch;
                } else {
                    lo += c * &ch;
                    hi += c * &cl;
                }
            }
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            prec *= 2;
        }
    }

    /// Floating-point approximation `(re, im)`, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (k, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                let t = 2.0 * std::f64::consts::PI * k as f64 / n;
                (re + c * t.cos(), im + c * t.sin())
            })
    }

    /// Decimal approximation with 6 places, `a` or `a+bi`.
    pub fn decimal(&self) -> String {
        let (re, im) = self.to_complex_f64();
        let clean = |v: f64| if v.abs() < 5e-7 { 0.0 } else { v };
        let (re, im) = (clean(re), clean(im));
        if im == 0.0 {
            format!("{re:.6}")
        } else if re == 0.0 {
            format!("{im:.6}i")
        } else if im < 0.0 {
            format!("{re:.6}-{:.6}i", -im)
        } else {
            format!("{re:.6}+{im:.6}i")
        }
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.addition(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.addition(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.multiply(rhs)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on division by zero; see [`Cyclotomic::checked_div`].
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Cyclotomic {
    fn product<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::one(), |a, b| a * b)
    }
}

impl linalg::FieldElem for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
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
        self.inverse().expect("pivot is nonzero")
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical literal: a sum of `c*zeta(N)^k` terms that parses back exactly.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.coeffs[0]));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let base = match k {
                0 => String::new(),
                1 => format!("zeta({})", self.conductor),
                _ => format!("zeta({})^{}", self.conductor, k),
            };
            if k == 0 {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&base)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), base)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts a literal string or a JSON integer.
impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Self::from_integer(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Serializes a value as `{"exact": literal, "decimal": approximation}`.
#[derive(Debug, Clone, Copy)]
pub struct Exact<'a>(pub &'a Cyclotomic);

impl Serialize for Exact<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Exact", 2)?;
        st.serialize_field("exact", &self.0.to_string())?;
        st.serialize_field("decimal", &self.0.decimal())?;
        st.end()
    }
}

/// Serializes a slice of values with [`Exact`].
pub fn exact_vec<S: Serializer>(v: &[Cyclotomic], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Exact))
}
