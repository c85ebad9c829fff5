//! Rational homotopy ranks of simply connected four-manifolds.
//!
//! A simply connected four-manifold is, up to homotopy, a wedge of `b₂`
//! two-spheres with one four-cell attached. Its Quillen model is
//! `𝕃(v_1, …, v_{b₂}, w)` with `|v_i| = 1`, `|w| = 3`, `dv_i = 0` and `dw` the
//! attaching cycle, and `rk π_{n+1}(M) = dim H_n` of that model.
//!
//! Three independent routes are provided: homology of the model
//! ([`ranks_lie`]), the closed Möbius-sum formula ([`ranks_closed`]) and the
//! low-degree polynomials ([`ranks_low_degree`]). [`ranks_suspension_babenko`]
//! handles suspensions and [`loop_hilbert`] the Pontrjagin ring of `ΩM`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freelie::{bracket, Budget, GenIndex, Generator, LieElement, LieEngine, LieModel, MAX_GENERATORS};
use crate::series::{divisors, mobius, pbw_hilbert, power_sums, to_count, GradedDims, TruncatedSeries};
use crate::{rat, Rational};

/// A diagonalised intersection form: `b2_plus` entries `+1`, `b2_minus` entries `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntersectionForm {
    pub b2_plus: u32,
    pub b2_minus: u32,
}

impl IntersectionForm {
    pub fn new(b2_plus: u32, b2_minus: u32) -> Self {
        IntersectionForm { b2_plus, b2_minus }
    }

    /// The form of rank `b2` and signature `signature`.
    pub fn from_signature(b2: u32, signature: i64) -> Result<Self> {
        let b2i = b2 as i64;
        if signature.abs() > b2i || (b2i + signature) % 2 != 0 {
            return Err(Error::domain(format!("no diagonal form has rank {b2} and signature {signature}")));
        }
        let plus = ((b2i + signature) / 2) as u32;
        Ok(IntersectionForm { b2_plus: plus, b2_minus: b2 - plus })
    }

    pub fn b2(&self) -> u32 {
        self.b2_plus + self.b2_minus
    }

    pub fn signature(&self) -> i64 {
        self.b2_plus as i64 - self.b2_minus as i64
    }

    /// All diagonal forms of rank `b2`, most positive first.
    pub fn splits(b2: u32) -> impl Iterator<Item = IntersectionForm> {
        (0..=b2).rev().map(move |p| IntersectionForm::new(p, b2 - p))
    }
}

impl fmt::Display for IntersectionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.b2_plus, self.b2_minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankMethod {
    LieModel,
    Closed,
    LowDegree,
}

impl RankMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RankMethod::LieModel => "lie-model",
            RankMethod::Closed => "closed",
            RankMethod::LowDegree => "low-degree",
        }
    }
}

/// `rk π_k(M) ⊗ ℚ` for `2 ≤ k ≤ max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub ranks: BTreeMap<u32, BigUint>,
    pub max_degree: u32,
    pub method: RankMethod,
}

impl RankTable {
    pub fn get(&self, k: u32) -> Option<&BigUint> {
        self.ranks.get(&k)
    }

    /// True when both tables hold the same values on their common degrees.
    pub fn agrees_with(&self, other: &RankTable) -> bool {
        self.ranks
            .iter()
            .all(|(k, r)| other.ranks.get(k).is_none_or(|s| s == r))
    }
}

/// Limits for the Lie-model route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourfoldBudget {
    pub words: Budget,
    /// Highest homology degree of the model that will be computed.
    pub max_homology_degree: u32,
}

impl Default for FourfoldBudget {
    fn default() -> Self {
        FourfoldBudget { words: Budget::default(), max_homology_degree: 8 }
    }
}

/// `z = Σ_{i ≤ b⁺} [v_i, v_i] - Σ_{i > b⁺} [v_i, v_i]` in `𝕃(v_1, …, v_{b₂})`.
///
/// Generator `v_i` has index `i - 1`, matching [`fourfold_model`].
pub fn attaching_cycle(form: IntersectionForm) -> LieElement {
    let mut z = LieElement::zero(2);
    for i in 0..form.b2() {
        let v = LieElement::generator(i as GenIndex, 1);
        let sign = if i < form.b2_plus { rat(1) } else { rat(-1) };
        z = z.add_scaled(&bracket(&v, &v), &sign);
    }
    z
}

/// The model `𝕃(v_1, …, v_{b₂}, w)` with `dv_i = 0` and `dw = z`.
pub fn fourfold_model(form: IntersectionForm) -> Result<LieModel> {
    let b2 = form.b2() as usize;
    if b2 + 1 > MAX_GENERATORS {
        return Err(Error::domain(format!("b2 = {b2} exceeds the supported generator count")));
    }
    let mut gens: Vec<Generator> = (1..=b2).map(|i| Generator::new(format!("v{i}"), 1)).collect();
    gens.push(Generator::new("w", 3));
    let z = attaching_cycle(form);
    let d = if z.is_zero() { Vec::new() } else { alloc::vec![(b2 as GenIndex, z)] };
    LieModel::new(gens, d)
}

/// Ranks via homology of the Lie model, with the default budget.
pub fn ranks_lie(form: IntersectionForm, max_k: u32) -> Result<RankTable> {
    ranks_lie_with_budget(form, max_k, FourfoldBudget::default())
}

pub fn ranks_lie_with_budget(form: IntersectionForm, max_k: u32, budget: FourfoldBudget) -> Result<RankTable> {
    if max_k < 2 {
        return Err(Error::domain("rank tables start at k = 2"));
    }
    if max_k - 1 > budget.max_homology_degree {
        return Err(Error::DegreeCap { degree: max_k - 1, cap: budget.max_homology_degree });
    }
    let model = fourfold_model(form)?;
    let mut engine = LieEngine::with_budget(&model, budget.words);
    let mut ranks = BTreeMap::new();
    for k in 2..=max_k {
        let h = engine.homology_dim(k - 1)?;
        ranks.insert(k, BigUint::from(h));
    }
    if ranks[&2] != BigUint::from(form.b2()) {
        return Err(Error::internal(format!("model gives rk π₂ = {} for b₂ = {}", ranks[&2], form.b2())));
    }
    Ok(RankTable { ranks, max_degree: max_k, method: RankMethod::LieModel })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// `rk π_{n+1}(M)` from the closed Möbius-sum formula
///
/// ```text
/// Σ_{d|n} (-1)^{n+n/d} (μ(d)/d) Σ_{a+2b=n/d} (-1)^b C(a+b, b) b₂^a / (a+b)
/// ```
///
/// Only defined here for `b₂ ≥ 2`; smaller ranks go through [`ranks_lie`].
pub fn ranks_closed(b2: u32, n: u32) -> Result<BigUint> {
    if b2 < 2 {
        return Err(Error::domain(format!(
            "closed formula is gated to b2 >= 2 (got {b2}); use the Lie-model route"
        )));
    }
    if n == 0 {
        return Err(Error::domain("closed formula needs n >= 1"));
    }
    let base = BigInt::from(b2);
    let mut total = Rational::zero();
    for d in divisors(n as u64) {
        let mu = mobius(d)?;
        if mu == 0 {
            continue;
        }
        let m = n as u64 / d;
        let mut inner = Rational::zero();
        for b in 0..=m / 2 {
            let a = m - 2 * b;
            let mut term = Rational::new(binomial(a + b, b) * base.pow(a as u32), BigInt::from(a + b));
            if b % 2 == 1 {
                term = -term;
            }
            inner += term;
        }
        let mut outer = Rational::new(BigInt::from(mu), BigInt::from(d)) * inner;
        if (n as u64 + m) % 2 == 1 {
            outer = -outer;
        }
        total += outer;
    }
    to_count(&total, "closed rank formula")
}

/// Rank table `2 ≤ k ≤ max_k` from [`ranks_closed`].
pub fn closed_table(b2: u32, max_k: u32) -> Result<RankTable> {
    if max_k < 2 {
        return Err(Error::domain("rank tables start at k = 2"));
    }
    let ranks = (2..=max_k)
        .map(|k| ranks_closed(b2, k - 1).map(|r| (k, r)))
        .collect::<Result<_>>()?;
    Ok(RankTable { ranks, max_degree: max_k, method: RankMethod::Closed })
}

/// `(rk π₂, rk π₃, rk π₄) = (b₂, b₂(b₂+1)/2 - 1, b₂(b₂²-4)/3)` for `b₂ ≥ 2`.
pub fn ranks_low_degree(b2: u32) -> Result<[u128; 3]> {
    if b2 < 2 {
        return Err(Error::domain(format!(
            "low-degree formulas are gated to b2 >= 2 (got {b2}); use the Lie-model route"
        )));
    }
    let b = b2 as u128;
    Ok([b, b * (b + 1) / 2 - 1, b * (b * b - 4) / 3])
}

/// The low-degree values as a table over `2 ≤ k ≤ min(max_k, 4)`.
pub fn low_degree_table(b2: u32, max_k: u32) -> Result<RankTable> {
    let values = ranks_low_degree(b2)?;
    let top = max_k.min(4);
    let ranks = (2..=top).map(|k| (k, BigUint::from(values[(k - 2) as usize]))).collect();
    Ok(RankTable { ranks, max_degree: top, method: RankMethod::LowDegree })
}

/// Ranks `rk π_{j+1}(ΣX)` for `1 ≤ j ≤ max_j` from the Poincaré polynomial
/// `P` of `X`:
///
/// ```text
/// rk π_{j+1}(ΣX) = ((-1)^j / j) Σ_{d|j} (-1)^d μ(j/d) S_d
/// ```
///
/// where `S_d` is the `d`-th power sum of the inverse roots of `2 - P`.
pub fn ranks_suspension_babenko(poincare: &TruncatedSeries, max_j: u32) -> Result<BTreeMap<u32, BigUint>> {
    if !poincare.coefficient(0).is_one() {
        return Err(Error::domain("Poincaré polynomial must have constant term 1"));
    }
    if poincare.coefficients().iter().any(|c| !c.is_integer() || c.is_negative()) {
        return Err(Error::domain("Poincaré polynomial must have non-negative integer coefficients"));
    }
    if max_j == 0 {
        return Err(Error::domain("max_j must be at least 1"));
    }
    let two_minus_p = &TruncatedSeries::from_integers(&[2], poincare.order()) - poincare;
    let sums = power_sums(&two_minus_p, max_j as usize)?;
    let mut out = BTreeMap::new();
    for j in 1..=max_j {
        let mut acc = Rational::zero();
        for d in divisors(j as u64) {
            let mu = mobius(j as u64 / d)?;
            if mu == 0 {
                continue;
            }
            let mut term = &sums[d as usize - 1] * rat(mu as i64);
            if d % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        let mut value = acc / rat(j as i64);
        if j % 2 == 1 {
            value = -value;
        }
        out.insert(j, to_count(&value, "suspension rank formula")?);
    }
    Ok(out)
}

/// Hilbert series of `H_*(ΩM; ℚ)` through `t^order`, as the enveloping
/// algebra of the homotopy Lie algebra `L_k = π_{k+1}(M) ⊗ ℚ`.
pub fn loop_hilbert(form: IntersectionForm, order: u32) -> Result<TruncatedSeries> {
    loop_hilbert_with_budget(form, order, FourfoldBudget::default())
}

pub fn loop_hilbert_with_budget(form: IntersectionForm, order: u32, budget: FourfoldBudget) -> Result<TruncatedSeries> {
    if order == 0 {
        return Ok(TruncatedSeries::one(0));
    }
    let table = ranks_lie_with_budget(form, order + 1, budget)?;
    let mut dims = GradedDims::new(order);
    for (&k, r) in &table.ranks {
        dims.add(k - 1, r.clone())?;
    }
    Ok(pbw_hilbert(&dims, order))
}
