//! Truncated power series with exact rational coefficients, plus the
//! generating-function solvers built on them.
//!
//! The Witt/PBW pair relates the graded dimensions of a graded Lie algebra `L`
//! to the Hilbert series of its universal enveloping algebra:
//!
//! ```text
//! H_{UL}(t) = Π_{k odd} (1 + t^k)^{L_k} / Π_{k even} (1 - t^k)^{L_k}
//! ```
//!
//! For a free graded Lie algebra on `V` the enveloping algebra is the tensor
//! algebra, whose Hilbert series is `1 / (1 - P_V(t))`; [`witt_decompose`]
//! solves that identity for the `L_k` one degree at a time.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{rat, Rational};

/// A power series known up to and including `t^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coefficients: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of truncation order `order`, padding with zeros or
    /// dropping coefficients above `t^order`.
    pub fn new(mut coefficients: Vec<Rational>, order: usize) -> Self {
        coefficients.resize(order + 1, Rational::zero());
        TruncatedSeries { coefficients }
    }

    pub fn from_integers(coefficients: &[i64], order: usize) -> Self {
        Self::new(coefficients.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `t^k`; zero above the truncation order.
    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coefficients.clone(), order)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coefficients[0];
        if c0.is_zero() {
            return Err(Error::domain("cannot invert a series with zero constant term"));
        }
        let n = self.order();
        let inv_c0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv_c0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let a = &self.coefficients[i];
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            out.push(-(acc * &inv_c0));
        }
        Ok(TruncatedSeries { coefficients: out })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if any coefficient is fractional.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coefficients
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        TruncatedSeries {
            coefficients: (0..=n)
                .map(|k| f(&self.coefficients[k], &other.coefficients[k]))
                .collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coefficients: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}·")?,
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// Graded dimensions split by parity of the degree.
///
/// Odd-degree classes are exterior in an enveloping algebra, even-degree
/// classes polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedDims {
    odd: BTreeMap<u32, BigUint>,
    even: BTreeMap<u32, BigUint>,
    order: u32,
}

impl GradedDims {
    pub fn new(order: u32) -> Self {
        GradedDims { odd: BTreeMap::new(), even: BTreeMap::new(), order }
    }

    /// Builds dims from `(degree, count)` pairs; repeated degrees accumulate.
    pub fn from_counts(order: u32, counts: &[(u32, u64)]) -> Result<Self> {
        let mut dims = Self::new(order);
        for &(degree, count) in counts {
            dims.add(degree, BigUint::from(count))?;
        }
        Ok(dims)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Adds `count` classes in `degree`. Degrees above the truncation order
    /// are dropped.
    pub fn add(&mut self, degree: u32, count: BigUint) -> Result<()> {
        if degree == 0 {
            return Err(Error::domain("graded dimensions must live in degrees >= 1"));
        }
        if degree > self.order || count.is_zero() {
            return Ok(());
        }
        let bucket = if degree % 2 == 1 { &mut self.odd } else { &mut self.even };
        *bucket.entry(degree).or_default() += count;
        Ok(())
    }

    pub fn get(&self, degree: u32) -> BigUint {
        let bucket = if degree % 2 == 1 { &self.odd } else { &self.even };
        bucket.get(&degree).cloned().unwrap_or_default()
    }

    pub fn odd(&self) -> &BTreeMap<u32, BigUint> {
        &self.odd
    }

    pub fn even(&self) -> &BTreeMap<u32, BigUint> {
        &self.even
    }

    /// Nonzero `(degree, count)` pairs in increasing degree.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> + '_ {
        let mut all: Vec<(u32, &BigUint)> =
            self.odd.iter().chain(self.even.iter()).map(|(&d, c)| (d, c)).collect();
        all.sort_by_key(|&(d, _)| d);
        all.into_iter()
    }

    /// The Poincaré series `Σ dim_k t^k`, truncated at the order.
    pub fn poincare_series(&self) -> TruncatedSeries {
        let n = self.order as usize;
        let mut coefficients = vec![Rational::zero(); n + 1];
        for (d, c) in self.iter() {
            coefficients[d as usize] = Rational::from_integer(BigInt::from(c.clone()));
        }
        TruncatedSeries::new(coefficients, n)
    }
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::domain("mobius is undefined at 0"));
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
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

/// Power sums `S_1..S_{d_max}` of the inverse roots of the polynomial `Q`,
/// `Q(t) = Π (1 - α_i t)`, through Newton's identities:
///
/// ```text
/// S_d = -d·q_d - Σ_{i=1}^{d-1} q_i S_{d-i}
/// ```
///
/// Coefficients of `Q` above its truncation order are taken to be zero.
pub fn power_sums(poly: &TruncatedSeries, d_max: usize) -> Result<Vec<Rational>> {
    if !poly.coefficient(0).is_one() {
        return Err(Error::domain("power_sums needs a polynomial with constant term 1"));
    }
    if d_max == 0 {
        return Err(Error::domain("power_sums needs d_max >= 1"));
    }
    let mut sums: Vec<Rational> = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let mut s = -(poly.coefficient(d) * rat(d as i64));
        for i in 1..d {
            let q = poly.coefficient(i);
            if !q.is_zero() {
                s -= q * &sums[d - i - 1];
            }
        }
        sums.push(s);
    }
    Ok(sums)
}

/// `(1 + t^k)^m` for odd `k`, `(1 - t^k)^{-m}` for even `k`, truncated at `order`.
fn pbw_factor(k: u32, m: &BigUint, order: usize) -> TruncatedSeries {
    let k = k as usize;
    let m = BigInt::from(m.clone());
    let mut coefficients = vec![Rational::zero(); order + 1];
    let mut binom = BigInt::one();
    let mut j = 0usize;
    while j * k <= order {
        if k % 2 == 1 && binom.is_zero() {
            break;
        }
        coefficients[j * k] = Rational::from_integer(binom.clone());
        let jb = BigInt::from(j);
        binom = if k % 2 == 1 {
            // C(m, j+1) = C(m, j)·(m-j)/(j+1)
            binom * (&m - &jb) / (jb + 1)
        } else {
            // C(m+j, j+1) = C(m+j-1, j)·(m+j)/(j+1)
            binom * (&m + &jb) / (jb + 1)
        };
        j += 1;
    }
    TruncatedSeries::new(coefficients, order)
}

/// Dimensions of the free graded Lie algebra on `generators`, degrees `1..=order`.
pub fn witt_decompose(generators: &GradedDims, order: u32) -> Result<GradedDims> {
    if generators.get(0) != BigUint::zero() {
        return Err(Error::domain("generator in degree 0"));
    }
    let n = order as usize;
    let mut pv = generators.poincare_series().truncate(n);
    pv = -&pv;
    let one = TruncatedSeries::one(n);
    let target = (&one + &pv).invert()?;
    let mut running = TruncatedSeries::one(n);
    let mut out = GradedDims::new(order);
    for k in 1..=order {
        let diff = target.coefficient(k as usize) - running.coefficient(k as usize);
        if !diff.is_integer() || diff.is_negative() {
            return Err(Error::internal(format!("non-integral Witt dimension {diff} in degree {k}")));
        }
        let count = diff.to_integer().to_biguint().unwrap_or_default();
        if count.is_zero() {
            continue;
        }
        running = &running * &pbw_factor(k, &count, n);
        out.add(k, count)?;
    }
    Ok(out)
}

/// Hilbert series of the universal enveloping algebra of a graded Lie
/// algebra with the given dimensions.
pub fn pbw_hilbert(lie_dims: &GradedDims, order: u32) -> TruncatedSeries {
    let n = order as usize;
    lie_dims
        .iter()
        .filter(|&(k, _)| k <= order)
        .fold(TruncatedSeries::one(n), |acc, (k, m)| &acc * &pbw_factor(k, m, n))
}

/// Converts a rational that must be a non-negative integer.
pub(crate) fn to_count(value: &Rational, what: &str) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::internal(format!("{what} evaluated to {value}, not a non-negative integer")));
    }
    Ok(value.to_integer().to_biguint().unwrap_or_default())
}

pub fn count_to_u64(count: &BigUint) -> u64 {
    count.to_u64().unwrap_or(u64::MAX)
}
