//! Free graded Lie algebras over the rationals, realised inside the tensor
//! algebra.
//!
//! Elements are linear combinations of tensor words. The bracket is the
//! graded commutator `[x, y] = x⊗y - (-1)^{|x||y|} y⊗x` and differentials act
//! as derivations of degree -1. Degreewise bases and homology ranks live in
//! [`LieEngine`].

mod basis;
mod linalg;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::Rational;

pub use basis::{homology_dim, lie_basis, Budget, LieEngine};

/// Index of a generator inside its model.
pub type GenIndex = u8;

/// Largest number of generators a model may carry.
pub const MAX_GENERATORS: usize = GenIndex::MAX as usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// A tensor word, stored as generator indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub SmallVec<[GenIndex; 16]>);

impl Word {
    pub fn letter(g: GenIndex) -> Self {
        Word(SmallVec::from_slice(&[g]))
    }

    pub fn letters(&self) -> &[GenIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }
}

/// A homogeneous element of the tensor algebra, kept in canonical form
/// (no zero coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement {
    degree: u32,
    terms: BTreeMap<Word, Rational>,
}

impl LieElement {
    pub fn zero(degree: u32) -> Self {
        LieElement { degree, terms: BTreeMap::new() }
    }

    /// The generator `index` of the given degree, as a one-letter word.
    pub fn generator(index: GenIndex, degree: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::letter(index), Rational::one());
        LieElement { degree, terms }
    }

    /// Builds an element from explicit terms; zero coefficients are dropped.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = LieElement::zero(degree);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Word, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self + factor·other`; degrees must agree unless one side is zero.
    pub fn add_scaled(&self, other: &LieElement, factor: &Rational) -> LieElement {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c * factor);
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> LieElement {
        LieElement::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c * factor)))
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word: String = w
                .letters()
                .iter()
                .map(|g| format!("g{g}"))
                .collect::<Vec<_>>()
                .join("⊗");
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{c}·{word}")?,
                (0, true) => write!(f, "-{}·{word}", -c)?,
                (_, false) => write!(f, " + {c}·{word}")?,
                (_, true) => write!(f, " - {}·{word}", -c)?,
            }
        }
        Ok(())
    }
}

fn koszul_sign(a: u32, b: u32) -> bool {
    // true means the transposition picks up a minus sign
    (a % 2 == 1) && (b % 2 == 1)
}

/// Graded commutator `x⊗y - (-1)^{|x||y|} y⊗x`.
pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let degree = x.degree + y.degree;
    let mut out = LieElement::zero(degree);
    // (-1)^{|x||y|} = -1 turns the commutator into an anticommutator
    let swap = if koszul_sign(x.degree, y.degree) { Rational::one() } else { -Rational::one() };
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            let c = ca * cb;
            out.add_term(b.concat(a), &c * &swap);
            out.add_term(a.concat(b), c);
        }
    }
    out
}

/// A chain Lie algebra `(𝕃_V, d)` given by generators and the differential on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModel {
    generators: Vec<Generator>,
    differential: Vec<Option<LieElement>>,
}

impl LieModel {
    /// Builds a model. `differential` lists `(generator index, d(generator))`;
    /// unlisted generators are cycles.
    pub fn new(generators: Vec<Generator>, differential: Vec<(GenIndex, LieElement)>) -> Result<Self> {
        if generators.len() > MAX_GENERATORS {
            return Err(Error::domain(format!("at most {MAX_GENERATORS} generators are supported")));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::domain(format!("generator {} has degree 0", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::domain(format!("duplicate generator name {}", g.name)));
            }
        }
        let mut d: Vec<Option<LieElement>> = alloc::vec![None; generators.len()];
        for (idx, value) in differential {
            let g = generators
                .get(idx as usize)
                .ok_or_else(|| Error::domain(format!("differential on unknown generator index {idx}")))?;
            if value.is_zero() {
                continue;
            }
            if value.degree + 1 != g.degree {
                return Err(Error::domain(format!(
                    "d({}) has degree {}, expected {}",
                    g.name,
                    value.degree,
                    g.degree - 1
                )));
            }
            for w in value.terms.keys() {
                let word_degree = word_degree(&generators, w)?;
                if word_degree != value.degree {
                    return Err(Error::domain(format!("d({}) is not homogeneous", g.name)));
                }
            }
            d[idx as usize] = Some(value);
        }
        Ok(LieModel { generators, differential: d })
    }

    /// The free Lie algebra on `generators` with zero differential.
    pub fn free(generators: Vec<Generator>) -> Result<Self> {
        Self::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// `d` of generator `index`, `None` for cycles.
    pub fn generator_differential(&self, index: GenIndex) -> Option<&LieElement> {
        self.differential.get(index as usize).and_then(|d| d.as_ref())
    }

    pub fn index_of(&self, name: &str) -> Option<GenIndex> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as GenIndex)
    }

    /// The generator `index` as an element.
    pub fn element(&self, index: GenIndex) -> LieElement {
        LieElement::generator(index, self.generators[index as usize].degree)
    }

    pub fn word_degree(&self, word: &Word) -> Result<u32> {
        word_degree(&self.generators, word)
    }

    /// Renders an element with generator names instead of indices.
    pub fn render(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in x.terms.iter().enumerate() {
            let word: Vec<&str> = w
                .letters()
                .iter()
                .map(|&g| self.generators.get(g as usize).map_or("?", |g| g.name.as_str()))
                .collect();
            let word = word.join("⊗");
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{mag}·{word}"));
            }
        }
        out
    }
}

fn word_degree(generators: &[Generator], word: &Word) -> Result<u32> {
    word.letters().iter().try_fold(0u32, |acc, &g| {
        generators
            .get(g as usize)
            .map(|gen| acc + gen.degree)
            .ok_or_else(|| Error::domain(format!("word contains unknown generator index {g}")))
    })
}

/// Applies the model's differential, extended to words by the graded Leibniz
/// rule `d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db`.
pub fn differential(model: &LieModel, x: &LieElement) -> Result<LieElement> {
    if x.degree == 0 {
        return Err(Error::domain("differential needs an element of degree >= 1"));
    }
    let mut out = LieElement::zero(x.degree - 1);
    for (word, c) in &x.terms {
        let mut prefix_degree = 0u32;
        for (pos, &g) in word.letters().iter().enumerate() {
            let gen = model
                .generators
                .get(g as usize)
                .ok_or_else(|| Error::domain(format!("word contains unknown generator index {g}")))?;
            if let Some(dg) = &model.differential[g as usize] {
                let coefficient = if prefix_degree % 2 == 1 { -c.clone() } else { c.clone() };
                for (inner, ci) in &dg.terms {
                    let mut letters: SmallVec<[GenIndex; 16]> = SmallVec::new();
                    letters.extend_from_slice(&word.0[..pos]);
                    letters.extend_from_slice(&inner.0);
                    letters.extend_from_slice(&word.0[pos + 1..]);
                    out.add_term(Word(letters), &coefficient * ci);
                }
            }
            prefix_degree += gen.degree;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn cp2() -> LieModel {
        let gens = alloc::vec![Generator::new("v", 1), Generator::new("w", 3)];
        let v = LieElement::generator(0, 1);
        LieModel::new(gens, alloc::vec![(1, bracket(&v, &v))]).unwrap()
    }

    fn word(letters: &[GenIndex]) -> Word {
        Word(SmallVec::from_slice(letters))
    }

    #[test]
    fn odd_self_bracket_doubles() {
        let v = LieElement::generator(0, 1);
        let vv = bracket(&v, &v);
        assert_eq!(vv.len(), 1);
        assert_eq!(vv.coefficient(&word(&[0, 0])), rat(2));
    }

    #[test]
    fn odd_pair_is_anticommutator() {
        let u = LieElement::generator(0, 1);
        let v = LieElement::generator(1, 1);
        let uv = bracket(&u, &v);
        assert_eq!(uv.coefficient(&word(&[0, 1])), rat(1));
        assert_eq!(uv.coefficient(&word(&[1, 0])), rat(1));
        assert_eq!(uv.len(), 2);
    }

    #[test]
    fn even_self_bracket_vanishes() {
        let x = LieElement::generator(0, 2);
        assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn jacobi_on_odd_cube() {
        let v = LieElement::generator(0, 1);
        assert!(bracket(&v, &bracket(&v, &v)).is_zero());
    }

    #[test]
    fn differential_on_generators() {
        let m = cp2();
        let v = m.element(0);
        let w = m.element(1);
        assert_eq!(differential(&m, &w).unwrap(), bracket(&v, &v));
        assert!(differential(&m, &v).unwrap().is_zero());
    }

    #[test]
    fn d_squared_on_ww() {
        let m = cp2();
        let w = m.element(1);
        let ww = bracket(&w, &w);
        let d1 = differential(&m, &ww).unwrap();
        let dw = differential(&m, &w).unwrap();
        let expected = bracket(&dw, &w).add_scaled(&bracket(&w, &dw), &rat(-1));
        assert_eq!(d1, expected);
        assert!(differential(&m, &d1).unwrap().is_zero());
    }

    #[test]
    fn unknown_generator_is_domain_error() {
        let m = cp2();
        let bogus = LieElement::generator(7, 1);
        assert!(matches!(differential(&m, &bogus), Err(Error::Domain(_))));
    }

    #[test]
    fn model_rejects_wrong_degree() {
        let gens = alloc::vec![Generator::new("v", 1), Generator::new("w", 3)];
        let v = LieElement::generator(0, 1);
        assert!(LieModel::new(gens, alloc::vec![(1, v)]).is_err());
    }

    #[test]
    fn render_uses_names() {
        let m = cp2();
        let v = m.element(0);
        assert_eq!(m.render(&bracket(&v, &v)), "2·v⊗v");
    }
}
