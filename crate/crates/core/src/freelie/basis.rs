//! Degreewise bases of `𝕃_V` and homology of `(𝕃_V, d)`.
//!
//! A free graded Lie algebra is multigraded by letter content, so bases are
//! computed one multidegree block at a time. The block for content `m` is
//! spanned by `[g, x]` with `g` a generator and `x` running over the basis of
//! block `m - e_g` (left-normed brackets, built recursively); an exact
//! integer row reduction picks a maximal independent subset. Every full
//! degree is then checked against the Witt dimension formula.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use smallvec::SmallVec;

use super::linalg::{independent_rows, integer_row, rank, SparseRow};
use super::{bracket, differential, LieElement, LieModel, Word};
use crate::error::{Error, Result};
use crate::series::{witt_decompose, GradedDims};

type Multidegree = SmallVec<[u8; 16]>;

/// Resource limits for degreewise computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest number of tensor words allowed in any degree that is touched.
    pub max_words: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_words: 2_000_000 }
    }
}

/// Caches block bases and differential ranks for one model.
pub struct LieEngine<'m> {
    model: &'m LieModel,
    budget: Budget,
    blocks: HashMap<Multidegree, Vec<LieElement>>,
    degree_dims: BTreeMap<u32, usize>,
    differential_ranks: BTreeMap<u32, usize>,
    witt: Option<GradedDims>,
}

impl<'m> LieEngine<'m> {
    pub fn new(model: &'m LieModel) -> Self {
        Self::with_budget(model, Budget::default())
    }

    pub fn with_budget(model: &'m LieModel, budget: Budget) -> Self {
        LieEngine {
            model,
            budget,
            blocks: HashMap::new(),
            degree_dims: BTreeMap::new(),
            differential_ranks: BTreeMap::new(),
            witt: None,
        }
    }

    pub fn model(&self) -> &LieModel {
        self.model
    }

    /// Number of tensor words of degree `n`.
    pub fn word_count(&self, n: u32) -> u64 {
        let mut counts = vec![0u64; n as usize + 1];
        counts[0] = 1;
        for k in 1..=n as usize {
            let mut c = 0u64;
            for g in self.model.generators() {
                let d = g.degree as usize;
                if d <= k {
                    c = c.saturating_add(counts[k - d]);
                }
            }
            counts[k] = c;
        }
        counts[n as usize]
    }

    fn check_budget(&self, n: u32) -> Result<()> {
        let words = self.word_count(n);
        if words > self.budget.max_words {
            return Err(Error::Budget { degree: n, words, limit: self.budget.max_words });
        }
        Ok(())
    }

    /// Dimension of `(𝕃_V)_n` predicted by the Witt formula.
    pub fn witt_dim(&mut self, n: u32) -> Result<BigUint> {
        let stale = self.witt.as_ref().is_none_or(|w| w.order() < n);
        if stale {
            let mut gens = GradedDims::new(n);
            for g in self.model.generators() {
                gens.add(g.degree, BigUint::from(1u8))?;
            }
            self.witt = Some(witt_decompose(&gens, n)?);
        }
        Ok(self.witt.as_ref().map(|w| w.get(n)).unwrap_or_default())
    }

    fn multidegrees(&self, n: u32) -> Vec<Multidegree> {
        fn go(degrees: &[u32], i: usize, remaining: u32, current: &mut Multidegree, out: &mut Vec<Multidegree>) {
            if i == degrees.len() {
                if remaining == 0 {
                    out.push(current.clone());
                }
                return;
            }
            let mut k = 0u32;
            while k * degrees[i] <= remaining && k <= u8::MAX as u32 {
                current.push(k as u8);
                go(degrees, i + 1, remaining - k * degrees[i], current, out);
                current.pop();
                k += 1;
            }
        }
        let degrees: Vec<u32> = self.model.generators().iter().map(|g| g.degree).collect();
        let mut out = Vec::new();
        go(&degrees, 0, n, &mut SmallVec::new(), &mut out);
        out
    }

    fn ensure_block(&mut self, md: &Multidegree) {
        if self.blocks.contains_key(md) {
            return;
        }
        let letters: u32 = md.iter().map(|&c| c as u32).sum();
        if letters == 0 {
            self.blocks.insert(md.clone(), Vec::new());
            return;
        }
        if letters == 1 {
            let g = md.iter().position(|&c| c == 1).expect("one letter") as u8;
            self.blocks.insert(md.clone(), vec![self.model.element(g)]);
            return;
        }
        let mut candidates: Vec<LieElement> = Vec::new();
        for g in 0..md.len() {
            if md[g] == 0 {
                continue;
            }
            let mut sub = md.clone();
            sub[g] -= 1;
            self.ensure_block(&sub);
            let gen = self.model.element(g as u8);
            for x in &self.blocks[&sub] {
                let y = bracket(&gen, x);
                if !y.is_zero() {
                    candidates.push(y);
                }
            }
        }
        let mut columns: HashMap<Word, u32> = HashMap::new();
        let rows: Vec<SparseRow<_>> = candidates
            .iter()
            .map(|c| {
                integer_row(c.terms().iter().map(|(w, v)| {
                    let next = columns.len() as u32;
                    (*columns.entry(w.clone()).or_insert(next), v.clone())
                }))
            })
            .collect();
        let chosen = independent_rows(&rows);
        let mut keep = vec![false; candidates.len()];
        for i in chosen {
            keep[i] = true;
        }
        let basis: Vec<LieElement> =
            candidates.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
        self.blocks.insert(md.clone(), basis);
    }

    /// Builds every block of degree `n` and checks the total against Witt.
    /// Returns `dim (𝕃_V)_n`.
    pub fn dim(&mut self, n: u32) -> Result<usize> {
        if n == 0 {
            return Err(Error::domain("lie_basis needs degree >= 1"));
        }
        if let Some(&d) = self.degree_dims.get(&n) {
            return Ok(d);
        }
        self.check_budget(n)?;
        let mut total = 0usize;
        for md in self.multidegrees(n) {
            self.ensure_block(&md);
            total += self.blocks[&md].len();
        }
        let witt = self.witt_dim(n)?;
        if witt.to_usize() != Some(total) {
            return Err(Error::DimensionMismatch { degree: n, basis: total as u64, witt: format!("{witt}") });
        }
        self.degree_dims.insert(n, total);
        Ok(total)
    }

    /// A basis of `(𝕃_V)_n`, ordered by multidegree block.
    pub fn basis(&mut self, n: u32) -> Result<Vec<LieElement>> {
        self.dim(n)?;
        Ok(self
            .multidegrees(n)
            .iter()
            .flat_map(|md| self.blocks[md].iter().cloned())
            .collect())
    }

    /// Rank of `d: (𝕃_V)_n → (𝕃_V)_{n-1}`.
    pub fn differential_rank(&mut self, n: u32) -> Result<usize> {
        if let Some(&r) = self.differential_ranks.get(&n) {
            return Ok(r);
        }
        if n <= 1 {
            self.dim(n.max(1))?;
            self.differential_ranks.insert(n, 0);
            return Ok(0);
        }
        self.dim(n)?;
        let mut images: Vec<LieElement> = Vec::new();
        for md in self.multidegrees(n) {
            for x in &self.blocks[&md] {
                let dx = differential(self.model, x)?;
                if !dx.is_zero() {
                    images.push(dx);
                }
            }
        }
        let r = image_rank(&images);
        self.differential_ranks.insert(n, r);
        Ok(r)
    }

    /// `dim H_n(𝕃_V, d)`.
    pub fn homology_dim(&mut self, n: u32) -> Result<usize> {
        if n == 0 {
            return Err(Error::domain("homology_dim needs degree >= 1"));
        }
        self.check_budget(n + 1)?;
        let dim = self.dim(n)?;
        let out = self.differential_rank(n)?;
        let into = self.differential_rank(n + 1)?;
        dim.checked_sub(out + into)
            .ok_or_else(|| Error::internal(format!("negative homology in degree {n}")))
    }
}

/// Rank of a family of elements in word coordinates. Elements that share no
/// word are reduced separately.
fn image_rank(images: &[LieElement]) -> usize {
    let mut columns: HashMap<&Word, u32> = HashMap::new();
    for x in images {
        for w in x.terms().keys() {
            let next = columns.len() as u32;
            columns.entry(w).or_insert(next);
        }
    }
    let mut parent: Vec<u32> = (0..columns.len() as u32).collect();
    fn find(parent: &mut [u32], mut i: u32) -> u32 {
        while parent[i as usize] != i {
            parent[i as usize] = parent[parent[i as usize] as usize];
            i = parent[i as usize];
        }
        i
    }
    for x in images {
        let mut cols = x.terms().keys().map(|w| columns[w]);
        if let Some(first) = cols.next() {
            let root = find(&mut parent, first);
            for c in cols {
                let r = find(&mut parent, c);
                parent[r as usize] = root;
            }
        }
    }
    let mut components: HashMap<u32, Vec<SparseRow<_>>> = HashMap::new();
    for x in images {
        let row = integer_row(x.terms().iter().map(|(w, v)| (columns[w], v.clone())));
        let root = find(&mut parent, row[0].0);
        components.entry(root).or_default().push(row);
    }
    components.values().map(|rows| rank(rows)).sum()
}

/// A basis of `(𝕃_V)_n` for the model's generators.
pub fn lie_basis(model: &LieModel, n: u32) -> Result<Vec<LieElement>> {
    LieEngine::new(model).basis(n)
}

/// `dim H_n(𝕃_V, d)` for the model.
pub fn homology_dim(model: &LieModel, n: u32) -> Result<usize> {
    LieEngine::new(model).homology_dim(n)
}
