//! Rational cohomology and loop-space homology rings of gauge groups and
//! spaces of connections over a simply connected four-manifold.
//!
//! Everything is driven by the rational homotopy ranks of the structure
//! group, which are read off its exponents: `rk π_{2m+1}(G) = #{i : m_i = m}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A compact simple simply connected Lie group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleGroup {
    SU(u32),
    Spin(u32),
    Sp(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl SimpleGroup {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            SimpleGroup::SU(n) => n >= 2,
            SimpleGroup::Spin(n) => n >= 5,
            SimpleGroup::Sp(n) => n >= 1,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("{self} is not a supported group")))
        }
    }

    /// Exponents `m_i`, with multiplicity.
    pub fn exponents(&self) -> Result<Vec<u32>> {
        self.validate()?;
        Ok(match *self {
            SimpleGroup::SU(n) => (1..n).collect(),
            SimpleGroup::Sp(n) => (1..=n).map(|i| 2 * i - 1).collect(),
            SimpleGroup::Spin(m) if m % 2 == 1 => (1..=(m - 1) / 2).map(|i| 2 * i - 1).collect(),
            SimpleGroup::Spin(m) => {
                let n = m / 2;
                let mut e: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            SimpleGroup::G2 => vec![1, 5],
            SimpleGroup::F4 => vec![1, 5, 7, 11],
            SimpleGroup::E6 => vec![1, 4, 5, 7, 8, 11],
            SimpleGroup::E7 => vec![1, 5, 7, 9, 11, 13, 17],
            SimpleGroup::E8 => vec![1, 7, 11, 13, 17, 19, 23, 29],
        })
    }

    pub fn rank(&self) -> Result<u32> {
        Ok(self.exponents()?.len() as u32)
    }

    /// `SU(2)` and `Sp(1)` are the same group.
    pub fn is_su2(&self) -> bool {
        matches!(self, SimpleGroup::SU(2) | SimpleGroup::Sp(1))
    }

    /// Every valid group with rank at most `max_rank`.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<SimpleGroup> {
        let mut out = Vec::new();
        out.extend((2..=max_rank + 1).map(SimpleGroup::SU));
        out.extend((1..=max_rank).map(SimpleGroup::Sp));
        out.extend((5..=2 * max_rank + 1).map(SimpleGroup::Spin));
        out.extend([SimpleGroup::G2, SimpleGroup::F4, SimpleGroup::E6, SimpleGroup::E7, SimpleGroup::E8]);
        out.retain(|g| g.rank().is_ok_and(|r| r <= max_rank));
        out
    }
}

impl fmt::Display for SimpleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleGroup::SU(n) => write!(f, "SU({n})"),
            SimpleGroup::Spin(n) => write!(f, "Spin({n})"),
            SimpleGroup::Sp(n) => write!(f, "Sp({n})"),
            SimpleGroup::G2 => f.write_str("G2"),
            SimpleGroup::F4 => f.write_str("F4"),
            SimpleGroup::E6 => f.write_str("E6"),
            SimpleGroup::E7 => f.write_str("E7"),
            SimpleGroup::E8 => f.write_str("E8"),
        }
    }
}

impl FromStr for SimpleGroup {
    type Err = Error;

    /// Accepts `SU3`, `SU(3)`, `Spin7`, `Sp2`, `G2`, `F4`, `E6`, `E7`, `E8`
    /// (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        let bad = || Error::domain(format!("unknown group name '{s}'"));
        let parse_n = |rest: &str| rest.parse::<u32>().map_err(|_| bad());
        let group = match compact.as_str() {
            "g2" => SimpleGroup::G2,
            "f4" => SimpleGroup::F4,
            "e6" => SimpleGroup::E6,
            "e7" => SimpleGroup::E7,
            "e8" => SimpleGroup::E8,
            other => {
                if let Some(rest) = other.strip_prefix("spin") {
                    SimpleGroup::Spin(parse_n(rest)?)
                } else if let Some(rest) = other.strip_prefix("su") {
                    SimpleGroup::SU(parse_n(rest)?)
                } else if let Some(rest) = other.strip_prefix("sp") {
                    SimpleGroup::Sp(parse_n(rest)?)
                } else {
                    return Err(bad());
                }
            }
        };
        group.validate()?;
        Ok(group)
    }
}

/// `rk π_j(G) ⊗ ℚ`: the number of exponents `m` with `j = 2m + 1`.
///
/// This is 0 or 1 except for `Spin(4k)`, where `π_{4k-1}` has rank 2.
pub fn pi_rank(group: SimpleGroup, j: i64) -> Result<u32> {
    let exponents = group.exponents()?;
    if j < 3 || j % 2 == 0 {
        return Ok(0);
    }
    let m = ((j - 1) / 2) as u32;
    Ok(exponents.iter().filter(|&&e| e == m).count() as u32)
}

/// Checks the exponent tables against the known `SU(2)` and `SU(3)` ranks.
pub fn self_check() -> Result<()> {
    let su3 = SimpleGroup::SU(3);
    let su2 = SimpleGroup::SU(2);
    let expected = [(su3, 3, 1), (su3, 5, 1), (su3, 7, 0), (su3, 4, 0), (su2, 3, 1), (su2, 4, 0), (su2, 5, 0)];
    for (g, j, r) in expected {
        if pi_rank(g, j)? != r {
            return Err(Error::internal(format!("exponent table: rk π_{j}({g}) should be {r}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// The principal bundle data a query depends on. Parities are only consulted
/// for `SU(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleContext {
    pub group: SimpleGroup,
    pub b2: u32,
    pub form_parity: Option<Parity>,
    pub c2_parity: Option<Parity>,
}

impl BundleContext {
    pub fn new(group: SimpleGroup, b2: u32) -> Self {
        BundleContext { group, b2, form_parity: None, c2_parity: None }
    }

    pub fn with_form(mut self, parity: Parity) -> Self {
        self.form_parity = Some(parity);
        self
    }

    pub fn with_c2(mut self, parity: Parity) -> Self {
        self.c2_parity = Some(parity);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// Identity component of the gauge group.
    GaugeGroup,
    /// Connections modulo gauge transformations fixing a fibre.
    BTilde,
    /// Irreducible connections modulo the gauge group mod its centre.
    BStar,
    LoopBTilde,
    LoopBStar,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::GaugeGroup => "gauge-group",
            Space::BTilde => "btilde",
            Space::BStar => "bstar",
            Space::LoopBTilde => "loop-btilde",
            Space::LoopBStar => "loop-bstar",
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Space::LoopBTilde | Space::LoopBStar)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "gauge-group" => Space::GaugeGroup,
            "btilde" => Space::BTilde,
            "bstar" => Space::BStar,
            "loop-btilde" => Space::LoopBTilde,
            "loop-bstar" => Space::LoopBStar,
            _ => return Err(Error::domain(format!("unknown space '{s}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Exterior,
    Polynomial,
}

impl RingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RingKind::Exterior => "exterior",
            RingKind::Polynomial => "polynomial",
        }
    }
}

/// A free graded-commutative algebra: exterior on odd generators or
/// polynomial on even ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub kind: RingKind,
    /// degree → number of generators (only nonzero counts are stored)
    pub generators: BTreeMap<u32, u64>,
    pub space: Space,
}

impl RingPresentation {
    pub fn total(&self) -> u64 {
        self.generators.values().sum()
    }

    pub fn count(&self, degree: u32) -> u64 {
        self.generators.get(&degree).copied().unwrap_or(0)
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            RingKind::Exterior => "Λ",
            RingKind::Polynomial => "ℚ",
        };
        let parts: Vec<String> = self.generators.iter().map(|(d, c)| format!("{c}×deg {d}")).collect();
        write!(f, "{sym}[{}]", parts.join(", "))
    }
}

fn collect(kind: RingKind, space: Space, max_degree: u32, count: impl Fn(i64) -> Result<u64>) -> Result<RingPresentation> {
    let mut generators = BTreeMap::new();
    for j in 1..=max_degree {
        let c = count(j as i64)?;
        if c > 0 {
            generators.insert(j, c);
        }
    }
    Ok(RingPresentation { kind, generators, space })
}

/// Generator counts of `H^*(𝒢ᵉ)`, `H^*(ℬ̃)` or `H^*(ℬ*)` in degrees `≤ max_degree`.
pub fn cohomology_presentation(ctx: &BundleContext, space: Space, max_degree: u32) -> Result<RingPresentation> {
    let g = ctx.group;
    let b2 = ctx.b2 as u64;
    let r = |j: i64| pi_rank(g, j).map(u64::from);
    match space {
        Space::GaugeGroup => collect(RingKind::Exterior, space, max_degree, |j| {
            Ok(b2 * r(j + 2)? + r(j)? + r(j + 4)?)
        }),
        Space::BTilde => collect(RingKind::Polynomial, space, max_degree, |j| Ok(b2 * r(j + 1)? + r(j + 3)?)),
        Space::BStar => collect(RingKind::Polynomial, space, max_degree, |j| {
            Ok(b2 * r(j + 1)? + r(j - 3)? + r(j + 3)?)
        }),
        _ => Err(Error::domain(format!("{space} is a loop space; use loop_presentation"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pi1 {
    Trivial,
    Z2,
    Unknown,
}

impl Connectivity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Connectivity::Yes => "yes",
            Connectivity::No => "no",
            Connectivity::Unknown => "unknown",
        }
    }
}

impl Pi1 {
    pub fn as_str(&self) -> &'static str {
        match self {
            Pi1::Trivial => "0",
            Pi1::Z2 => "Z2",
            Pi1::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub gauge_group_connected: Connectivity,
    pub pi1_btilde: Pi1,
    pub pi1_bstar: Pi1,
    pub notes: Vec<String>,
}

/// Connectedness of the gauge group and `π₁` of `ℬ̃`, `ℬ*`, as far as they
/// are determined by the bundle data.
pub fn simply_connected_status(ctx: &BundleContext) -> ConnectivityReport {
    let known = ConnectivityReport {
        gauge_group_connected: Connectivity::Yes,
        pi1_btilde: Pi1::Trivial,
        pi1_bstar: Pi1::Trivial,
        notes: Vec::new(),
    };
    match ctx.group {
        SimpleGroup::SU(n) if n >= 3 => known,
        SimpleGroup::Spin(n) if n >= 6 => known,
        g if g.is_su2() => match (ctx.form_parity, ctx.c2_parity) {
            (Some(Parity::Odd), _) => known,
            (Some(Parity::Even), c2) => ConnectivityReport {
                gauge_group_connected: Connectivity::No,
                pi1_btilde: Pi1::Z2,
                pi1_bstar: match c2 {
                    Some(Parity::Odd) => Pi1::Trivial,
                    Some(Parity::Even) => Pi1::Z2,
                    None => Pi1::Unknown,
                },
                notes: match c2 {
                    None => vec![String::from(
                        "for an even form, π₁(ℬ*) depends on the parity of c₂(P); it was not given",
                    )],
                    Some(_) => Vec::new(),
                },
            },
            (None, _) => ConnectivityReport {
                gauge_group_connected: Connectivity::Unknown,
                pi1_btilde: Pi1::Unknown,
                pi1_bstar: Pi1::Unknown,
                notes: vec![String::from(
                    "for SU(2), π₀ of the gauge group depends on the parity of the intersection form; it was not given",
                )],
            },
        },
        g => ConnectivityReport {
            gauge_group_connected: Connectivity::Unknown,
            pi1_btilde: Pi1::Unknown,
            pi1_bstar: Pi1::Unknown,
            notes: vec![format!("connectivity of the {g} gauge group is not determined here")],
        },
    }
}

/// Pontrjagin rings `H_*(Ωℬ̃)` or `H_*(Ωℬ*)` in degrees `≤ max_degree`.
///
/// Refuses when the base is known not to be simply connected, unless
/// `assume_simply_connected` is set.
pub fn loop_presentation(
    ctx: &BundleContext,
    space: Space,
    max_degree: u32,
    assume_simply_connected: bool,
) -> Result<RingPresentation> {
    let status = simply_connected_status(ctx);
    let pi1 = match space {
        Space::LoopBTilde => status.pi1_btilde,
        Space::LoopBStar => status.pi1_bstar,
        _ => return Err(Error::domain(format!("{space} is not a loop space; use cohomology_presentation"))),
    };
    if pi1 == Pi1::Z2 && !assume_simply_connected {
        let base = if space == Space::LoopBTilde { "ℬ̃" } else { "ℬ*" };
        let mut diagnosis = format!("π₁({base}) = ℤ₂ for {} over an even intersection form", ctx.group);
        if space == Space::LoopBStar {
            diagnosis.push_str(" with c₂(P) even");
        }
        return Err(Error::NotSimplyConnected { space: base.to_string(), diagnosis });
    }
    let g = ctx.group;
    let b2 = ctx.b2 as u64;
    let r = |j: i64| pi_rank(g, j).map(u64::from);
    match space {
        Space::LoopBTilde => collect(RingKind::Exterior, space, max_degree, |j| Ok(b2 * r(j + 2)? + r(j + 4)?)),
        _ => collect(RingKind::Exterior, space, max_degree, |j| Ok(b2 * r(j + 2)? + r(j)? + r(j + 4)?)),
    }
}

/// One loop degree `j` compared with cohomology degree `j + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeComparison {
    pub loop_degree: u32,
    pub loop_count: u64,
    pub shifted_cohomology_count: u64,
}

impl DegreeComparison {
    pub fn agrees(&self) -> bool {
        self.loop_count == self.shifted_cohomology_count
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceConsistency {
    pub space: Space,
    pub comparisons: Vec<DegreeComparison>,
}

impl SpaceConsistency {
    pub fn mismatches(&self) -> Vec<u32> {
        self.comparisons.iter().filter(|c| !c.agrees()).map(|c| c.loop_degree).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub btilde: SpaceConsistency,
    pub bstar: SpaceConsistency,
}

/// Compares the loop-space counts in degree `j ≤ max_degree` with the
/// cohomology counts in degree `j + 1`, for `ℬ̃` and `ℬ*`. Disagreements are
/// data, not errors.
pub fn consistency_report(ctx: &BundleContext, max_degree: u32) -> Result<ConsistencyReport> {
    let compare = |loop_space: Space, base: Space| -> Result<SpaceConsistency> {
        let looped = loop_presentation(ctx, loop_space, max_degree, true)?;
        let cohom = cohomology_presentation(ctx, base, max_degree + 1)?;
        let comparisons = (1..=max_degree)
            .map(|j| DegreeComparison {
                loop_degree: j,
                loop_count: looped.count(j),
                shifted_cohomology_count: cohom.count(j + 1),
            })
            .collect();
        Ok(SpaceConsistency { space: base, comparisons })
    };
    Ok(ConsistencyReport {
        btilde: compare(Space::LoopBTilde, Space::BTilde)?,
        bstar: compare(Space::LoopBStar, Space::BStar)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su3_ranks() {
        let g = SimpleGroup::SU(3);
        assert_eq!(pi_rank(g, 3).unwrap(), 1);
        assert_eq!(pi_rank(g, 5).unwrap(), 1);
        assert_eq!(pi_rank(g, 7).unwrap(), 0);
        assert_eq!(pi_rank(SimpleGroup::SU(2), 4).unwrap(), 0);
    }

    #[test]
    fn spin8_has_a_double_exponent() {
        assert_eq!(pi_rank(SimpleGroup::Spin(8), 7).unwrap(), 2);
        assert_eq!(SimpleGroup::Spin(8).rank().unwrap(), 4);
    }

    #[test]
    fn invalid_groups() {
        assert!(SimpleGroup::SU(1).validate().is_err());
        assert!(SimpleGroup::Spin(4).validate().is_err());
        assert!(SimpleGroup::Sp(0).validate().is_err());
        assert!(pi_rank(SimpleGroup::Spin(3), 3).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("SU3".parse::<SimpleGroup>().unwrap(), SimpleGroup::SU(3));
        assert_eq!("Spin(7)".parse::<SimpleGroup>().unwrap(), SimpleGroup::Spin(7));
        assert_eq!("sp2".parse::<SimpleGroup>().unwrap(), SimpleGroup::Sp(2));
        assert_eq!("E8".parse::<SimpleGroup>().unwrap(), SimpleGroup::E8);
        assert!("SO3".parse::<SimpleGroup>().is_err());
        assert!("SU1".parse::<SimpleGroup>().is_err());
    }

    #[test]
    fn self_check_passes() {
        self_check().unwrap();
    }

    #[test]
    fn su2_gauge_group_cohomology() {
        for b2 in [0, 1, 4] {
            let p = cohomology_presentation(&BundleContext::new(SimpleGroup::SU(2), b2), Space::GaugeGroup, 5).unwrap();
            assert_eq!(p.count(1), b2 as u64);
            assert_eq!(p.count(3), 1);
            assert_eq!(p.total(), b2 as u64 + 1);
        }
    }

    #[test]
    fn su3_btilde_cohomology() {
        let b2 = 3;
        let p = cohomology_presentation(&BundleContext::new(SimpleGroup::SU(3), b2), Space::BTilde, 6).unwrap();
        assert_eq!(p.generators, BTreeMap::from([(2, 4), (4, 3)]));
        assert_eq!(p.total(), (b2 as u64 + 1) * 2 - 1);
    }

    #[test]
    fn su2_even_form_c2_even_refuses() {
        let ctx = BundleContext::new(SimpleGroup::SU(2), 2).with_form(Parity::Even).with_c2(Parity::Even);
        let err = loop_presentation(&ctx, Space::LoopBStar, 8, false).unwrap_err();
        assert!(matches!(err, Error::NotSimplyConnected { .. }));
        assert!(loop_presentation(&ctx, Space::LoopBStar, 8, true).is_ok());
    }

    #[test]
    fn sp1_behaves_as_su2() {
        let ctx = BundleContext::new(SimpleGroup::Sp(1), 2).with_form(Parity::Even);
        assert_eq!(simply_connected_status(&ctx).pi1_btilde, Pi1::Z2);
    }

    #[test]
    fn unspecified_c2_is_unknown() {
        let ctx = BundleContext::new(SimpleGroup::SU(2), 2).with_form(Parity::Even);
        let status = simply_connected_status(&ctx);
        assert_eq!(status.pi1_bstar, Pi1::Unknown);
        assert!(!status.notes.is_empty());
    }

    #[test]
    fn su3_consistency() {
        let r = consistency_report(&BundleContext::new(SimpleGroup::SU(3), 2), 8).unwrap();
        assert!(r.btilde.mismatches().is_empty());
        assert_eq!(r.bstar.mismatches(), vec![3, 7]);
    }
}
