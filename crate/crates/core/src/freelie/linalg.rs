//! Exact sparse row reduction over the integers.
//!
//! Rows are kept primitive (content 1) and reduced fraction-free, which over
//! `ℤ` computes the same rank as over `ℚ`. A checked `i128` pass runs first;
//! any overflow restarts the whole reduction with `BigInt` coefficients.

use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub(crate) type SparseRow<S> = Vec<(u32, S)>;

trait Scalar: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a·x - b·y`, `None` on overflow.
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        *self / *d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
}

struct Overflow;

struct Echelon<S> {
    pivot_of: HashMap<u32, usize>,
    rows: Vec<SparseRow<S>>,
}

impl<S: Scalar> Echelon<S> {
    fn new() -> Self {
        Echelon { pivot_of: HashMap::new(), rows: Vec::new() }
    }

    /// Reduces `row` against the stored pivots; stores it and returns true if
    /// it is independent of them.
    fn insert(&mut self, mut row: SparseRow<S>) -> Result<bool, Overflow> {
        loop {
            let Some((lead_col, lead)) = row.first().cloned() else {
                return Ok(false);
            };
            let Some(&p) = self.pivot_of.get(&lead_col) else {
                make_primitive(&mut row);
                self.pivot_of.insert(lead_col, self.rows.len());
                self.rows.push(row);
                return Ok(true);
            };
            let pivot = &self.rows[p];
            let plead = &pivot[0].1;
            let g = plead.gcd(&lead);
            let a = plead.div_exact(&g);
            let b = lead.div_exact(&g);
            row = eliminate(&row, &a, pivot, &b)?;
            make_primitive(&mut row);
        }
    }
}

/// `a·row - b·pivot`, merging sorted sparse rows.
fn eliminate<S: Scalar>(row: &[(u32, S)], a: &S, pivot: &[(u32, S)], b: &S) -> Result<SparseRow<S>, Overflow> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    let zero = S::zero();
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        let (col, value) = if ci < cj {
            let v = S::combine(a, &row[i].1, b, &zero).ok_or(Overflow)?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = S::combine(a, &zero, b, &pivot[j].1).ok_or(Overflow)?;
            j += 1;
            (cj, v)
        } else {
            let v = S::combine(a, &row[i].1, b, &pivot[j].1).ok_or(Overflow)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    Ok(out)
}

fn make_primitive<S: Scalar>(row: &mut SparseRow<S>) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = g.neg();
    }
    if g.is_unit() && !g.is_negative() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = v.div_exact(&g);
    }
}

fn run<S: Scalar>(rows: impl Iterator<Item = SparseRow<S>>) -> Result<Vec<usize>, Overflow> {
    let mut echelon = Echelon::new();
    let mut independent = Vec::new();
    for (i, row) in rows.enumerate() {
        if echelon.insert(row)? {
            independent.push(i);
        }
    }
    Ok(independent)
}

/// Indices of a maximal set of rows independent over `ℚ`, chosen greedily in
/// input order. Rows must be sorted by column with no repeated columns.
pub(crate) fn independent_rows(rows: &[SparseRow<BigInt>]) -> Vec<usize> {
    let small: Option<Vec<SparseRow<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i128().map(|v| (*c, v))).collect())
        .collect();
    if let Some(small) = small {
        if let Ok(found) = run(small.into_iter()) {
            return found;
        }
    }
    match run(rows.iter().cloned()) {
        Ok(found) => found,
        Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
    }
}

pub(crate) fn rank(rows: &[SparseRow<BigInt>]) -> usize {
    independent_rows(rows).len()
}

/// Scales rational entries to a primitive integer row.
pub(crate) fn integer_row(entries: impl IntoIterator<Item = (u32, Rational)>) -> SparseRow<BigInt> {
    let mut entries: Vec<(u32, Rational)> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    entries.sort_by_key(|e| e.0);
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    entries
        .into_iter()
        .map(|(c, v)| (c, (v * Rational::from_integer(lcm.clone())).to_integer()))
        .collect()
}
