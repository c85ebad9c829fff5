//! Brute-force oracles that share no code path with the engine.
//!
//! Free Lie algebras are rebuilt here from every bracket tree, the
//! differential is applied tree-wise, and ranks come from a dense
//! fraction-free elimination written for this file.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rathom_core::fourfold::{ranks_lie, IntersectionForm};
use rathom_core::freelie::{lie_basis, Generator, LieModel};
use rathom_core::series::{power_sums, witt_decompose, GradedDims, TruncatedSeries};
use rathom_core::Rational;

type Poly = BTreeMap<Vec<u8>, i128>;

#[derive(Clone)]
enum Tree {
    Leaf(u8),
    Node(Box<Tree>, Box<Tree>),
}

struct Oracle {
    degrees: Vec<u32>,
    /// generator index -> d(generator) as a list of (coefficient, tree)
    d: BTreeMap<u8, Vec<(i128, Tree)>>,
}

impl Oracle {
    fn degree(&self, t: &Tree) -> u32 {
        match t {
            Tree::Leaf(g) => self.degrees[*g as usize],
            Tree::Node(a, b) => self.degree(a) + self.degree(b),
        }
    }

    fn expand(&self, t: &Tree) -> Poly {
        match t {
            Tree::Leaf(g) => Poly::from([(vec![*g], 1)]),
            Tree::Node(a, b) => {
                let (da, db) = (self.degree(a), self.degree(b));
                let (pa, pb) = (self.expand(a), self.expand(b));
                let sign = if da % 2 == 1 && db % 2 == 1 { -1 } else { 1 };
                let mut out = Poly::new();
                for (wa, ca) in &pa {
                    for (wb, cb) in &pb {
                        let ab = [wa.as_slice(), wb.as_slice()].concat();
                        let ba = [wb.as_slice(), wa.as_slice()].concat();
                        *out.entry(ab).or_default() += ca * cb;
                        *out.entry(ba).or_default() -= sign * ca * cb;
                    }
                }
                out.retain(|_, c| *c != 0);
                out
            }
        }
    }

    /// d on a bracket tree: `d[a,b] = [da,b] + (-1)^{|a|}[a,db]`.
    fn d_tree(&self, t: &Tree) -> Vec<(i128, Tree)> {
        match t {
            Tree::Leaf(g) => self.d.get(g).cloned().unwrap_or_default(),
            Tree::Node(a, b) => {
                let sign = if self.degree(a) % 2 == 1 { -1 } else { 1 };
                let mut out: Vec<(i128, Tree)> = self
                    .d_tree(a)
                    .into_iter()
                    .map(|(c, da)| (c, Tree::Node(Box::new(da), b.clone())))
                    .collect();
                out.extend(
                    self.d_tree(b)
                        .into_iter()
                        .map(|(c, db)| (sign * c, Tree::Node(a.clone(), Box::new(db)))),
                );
                out
            }
        }
    }

    fn d_expanded(&self, t: &Tree) -> Poly {
        let mut out = Poly::new();
        for (c, tree) in self.d_tree(t) {
            for (w, v) in self.expand(&tree) {
                *out.entry(w).or_default() += c * v;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Every bracket tree of total degree `n`.
    fn trees(&self, n: u32) -> Vec<Tree> {
        let mut by_degree: Vec<Vec<Tree>> = vec![Vec::new(); n as usize + 1];
        for k in 1..=n as usize {
            let mut here: Vec<Tree> = (0..self.degrees.len() as u8)
                .filter(|&g| self.degrees[g as usize] as usize == k)
                .map(Tree::Leaf)
                .collect();
            for i in 1..k {
                for a in &by_degree[i] {
                    for b in &by_degree[k - i] {
                        here.push(Tree::Node(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
            }
            by_degree[k] = here;
        }
        by_degree.swap_remove(n as usize)
    }
}

/// Rank of integer vectors by dense fraction-free elimination.
fn dense_rank(vectors: &[Poly]) -> usize {
    let mut cols: BTreeMap<&Vec<u8>, usize> = BTreeMap::new();
    for v in vectors {
        for w in v.keys() {
            let next = cols.len();
            cols.entry(w).or_insert(next);
        }
    }
    let mut m: Vec<Vec<i128>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0i128; cols.len()];
            for (w, c) in v {
                row[cols[w]] = *c;
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            if m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                let pivot = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot) {
                    *x = a * *x - b * p;
                }
                let g = m[r].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn free_oracle(degrees: &[u32]) -> Oracle {
    Oracle { degrees: degrees.to_vec(), d: BTreeMap::new() }
}

fn lie_dim(o: &Oracle, n: u32) -> usize {
    let polys: Vec<Poly> = o.trees(n).iter().map(|t| o.expand(t)).collect();
    dense_rank(&polys)
}

fn homology(o: &Oracle, n: u32) -> usize {
    let trees_n = o.trees(n);
    let dim = dense_rank(&trees_n.iter().map(|t| o.expand(t)).collect::<Vec<_>>());
    let rank_out = dense_rank(&trees_n.iter().map(|t| o.d_expanded(t)).collect::<Vec<_>>());
    let rank_in = dense_rank(&o.trees(n + 1).iter().map(|t| o.d_expanded(t)).collect::<Vec<_>>());
    dim - rank_out - rank_in
}

fn engine_dims(degrees: &[u32], n: u32) -> usize {
    let gens = degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("g{i}"), d)).collect();
    lie_basis(&LieModel::free(gens).unwrap(), n).unwrap().len()
}

fn witt_dims(degrees: &[u32], n: u32) -> usize {
    let mut gens = GradedDims::new(n);
    for &d in degrees {
        gens.add(d, BigUint::from(1u8)).unwrap();
    }
    let l = witt_decompose(&gens, n).unwrap().get(n);
    usize::try_from(l).unwrap()
}

#[test]
fn free_lie_dimensions_match_brute_force() {
    let cases: &[(&[u32], u32)] = &[(&[1], 5), (&[1, 1], 4), (&[3], 9), (&[2], 6), (&[1, 3], 6), (&[1, 2], 5)];
    for &(degrees, top) in cases {
        let o = free_oracle(degrees);
        for n in 1..=top {
            let brute = lie_dim(&o, n);
            assert_eq!(engine_dims(degrees, n), brute, "engine, gens {degrees:?}, degree {n}");
            assert_eq!(witt_dims(degrees, n), brute, "Witt, gens {degrees:?}, degree {n}");
        }
    }
}

#[test]
fn frozen_small_dimensions() {
    // one odd generator: L_1 = 1, L_2 = 1 ([v,v]), nothing above
    let o = free_oracle(&[1]);
    assert_eq!((1..=4).map(|n| lie_dim(&o, n)).collect::<Vec<_>>(), vec![1, 1, 0, 0]);
    // two odd generators in degree 2: [v1,v1], [v1,v2], [v2,v2]
    assert_eq!(lie_dim(&free_oracle(&[1, 1]), 2), 3);
}

fn fourfold_oracle(plus: u32, minus: u32) -> Oracle {
    let b2 = plus + minus;
    let mut degrees = vec![1; b2 as usize];
    degrees.push(3);
    let z = (0..b2 as u8)
        .map(|i| {
            let c = if (i as u32) < plus { 1 } else { -1 };
            (c, Tree::Node(Box::new(Tree::Leaf(i)), Box::new(Tree::Leaf(i))))
        })
        .collect();
    Oracle { degrees, d: BTreeMap::from([(b2 as u8, z)]) }
}

#[test]
fn model_homology_matches_brute_force() {
    for (plus, minus, top) in [(0u32, 0u32, 7u32), (1, 0, 5), (1, 1, 4), (2, 0, 4)] {
        let o = fourfold_oracle(plus, minus);
        let table = ranks_lie(IntersectionForm::new(plus, minus), top + 1).unwrap();
        for n in 1..=top {
            let brute = homology(&o, n);
            assert_eq!(table.ranks[&(n + 1)], BigUint::from(brute), "({plus},{minus}) H_{n}");
        }
    }
}

#[test]
fn frozen_elliptic_homology() {
    // S^4: H_3 and H_6 of 𝕃(w); CP^2: H_1 and H_4
    let s4 = fourfold_oracle(0, 0);
    assert_eq!((1..=7).map(|n| homology(&s4, n)).collect::<Vec<_>>(), vec![0, 0, 1, 0, 0, 1, 0]);
    let cp2 = fourfold_oracle(1, 0);
    assert_eq!((1..=5).map(|n| homology(&cp2, n)).collect::<Vec<_>>(), vec![1, 0, 0, 1, 0]);
}

/// Real roots of `x^3 - 3x^2 + 1` by bisection; these are the inverse roots
/// of `1 - 3t + t^3`.
fn cubic_roots() -> [f64; 3] {
    let f = |x: f64| x * x * x - 3.0 * x * x + 1.0;
    let bisect = |mut lo: f64, mut hi: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(lo) < 0.0) == (f(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    [bisect(-1.0, 0.0), bisect(0.0, 1.0), bisect(2.0, 3.0)]
}

#[test]
fn power_sums_of_cubic() {
    let roots = cubic_roots();
    let numeric: Vec<f64> = (1..=4).map(|d| roots.iter().map(|r| r.powi(d)).sum()).collect();
    let frozen = [3i64, 9, 24, 69];
    for (n, f) in numeric.iter().zip(frozen) {
        assert!((n - f as f64).abs() < 1e-9, "{n} vs {f}");
    }
    let q = TruncatedSeries::from_integers(&[1, -3, 0, 1], 3);
    let exact = power_sums(&q, 4).unwrap();
    let expected: Vec<Rational> = frozen.iter().map(|&v| Rational::from_integer(v.into())).collect();
    assert_eq!(exact, expected);
}
