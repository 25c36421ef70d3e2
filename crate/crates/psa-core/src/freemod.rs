//! Free H-modules `H ⊗ R`: vectors, coordinates on filtration pieces, and
//! H-linear maps determined on generators.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::hopf::{add_into, monomials, HElement, Hopf, MultiIndex};
use crate::linalg::SparseVec;
use crate::rational::{fmt_q, Q};

/// `Σ ∂^(I) ⊗ u_r` with rational coefficients, keyed by `(I, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    n: usize,
    rank: usize,
    terms: BTreeMap<(MultiIndex, usize), Q>,
}

impl ModuleVector {
    pub fn zero(n: usize, rank: usize) -> Self {
        ModuleVector { n, rank, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, rank: usize, i: MultiIndex, r: usize) -> Self {
        let mut v = Self::zero(n, rank);
        v.add_term(i, r, Q::one());
        v
    }

    /// `1 ⊗ u_r`
    pub fn gen(n: usize, rank: usize, r: usize) -> Self {
        Self::basis(n, rank, MultiIndex::zero(n), r)
    }

    /// `h ⊗ u_r`
    pub fn from_h(h: &HElement, rank: usize, r: usize) -> Self {
        let mut v = Self::zero(h.n(), rank);
        for (i, c) in h.iter() {
            v.add_term(i.clone(), r, c.clone());
        }
        v
    }

    /// `1 ⊗ u` for a coordinate vector `u ∈ R`.
    pub fn constant(n: usize, u: &[Q]) -> Self {
        let mut v = Self::zero(n, u.len());
        for (r, c) in u.iter().enumerate() {
            v.add_term(MultiIndex::zero(n), r, c.clone());
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, usize), &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: &MultiIndex, r: usize) -> Q {
        self.terms.get(&(i.clone(), r)).cloned().unwrap_or_else(Q::zero)
    }

    /// The R-vector `v_I`.
    pub fn coefficient(&self, i: &MultiIndex) -> Vec<Q> {
        (0..self.rank).map(|r| self.coeff(i, r)).collect()
    }

    /// Coefficient of `u_r` as an element of H.
    pub fn component(&self, r: usize) -> HElement {
        HElement::from_terms(self.n, self.terms.iter().filter(|((_, s), _)| *s == r).map(|((i, _), c)| (i.clone(), c.clone())))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, _)| i.deg()).max()
    }

    pub fn add_term(&mut self, i: MultiIndex, r: usize, c: Q) {
        add_into(&mut self.terms, (i, r), c);
    }

    pub fn add_scaled(&mut self, c: &Q, other: &ModuleVector) {
        for ((i, r), x) in &other.terms {
            self.add_term(i.clone(), *r, c * x);
        }
    }

    pub fn plus(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn minus(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> ModuleVector {
        let mut out = ModuleVector::zero(self.n, self.rank);
        out.add_scaled(c, self);
        out
    }

    /// Left multiplication `h · v`.
    pub fn h_mul(&self, hopf: &Hopf, h: &HElement) -> ModuleVector {
        let mut out = ModuleVector::zero(self.n, self.rank);
        for (k, c) in h.iter() {
            for ((i, r), x) in &self.terms {
                let cx = c * x;
                for (t, d) in hopf.mul_mono(k, i).iter() {
                    out.add_term(t.clone(), *r, &cx * d);
                }
            }
        }
        out
    }

    /// `∂^(K) · v`
    pub fn mono_mul(&self, hopf: &Hopf, k: &MultiIndex) -> ModuleVector {
        let mut out = ModuleVector::zero(self.n, self.rank);
        for ((i, r), x) in &self.terms {
            for (t, d) in hopf.mul_mono(k, i).iter() {
                out.add_term(t.clone(), *r, x * d);
            }
        }
        out
    }

    /// Applies a matrix to every coefficient `v_I`, changing the rank.
    pub fn map_coefficients(&self, m: &crate::matrix::Mat) -> ModuleVector {
        let rank = m.len();
        let mut out = ModuleVector::zero(self.n, rank);
        for ((i, r), x) in &self.terms {
            for (s, row) in m.iter().enumerate() {
                if !row[*r].is_zero() {
                    out.add_term(i.clone(), s, x * &row[*r]);
                }
            }
        }
        out
    }

    /// Part of filtration degree at most `p`.
    pub fn truncate(&self, p: usize) -> ModuleVector {
        ModuleVector {
            n: self.n,
            rank: self.rank,
            terms: self.terms.iter().filter(|((i, _), _)| i.deg() <= p).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|((i, r), c)| json!([i.0, r, fmt_q(c)])).collect())
    }
}

/// Coordinates on `fil^p (H ⊗ R)`, ordered by `(I, r)` with `I` graded-lex.
#[derive(Clone, Debug)]
pub struct FilBasis {
    pub n: usize,
    pub rank: usize,
    pub p: usize,
    keys: Vec<(MultiIndex, usize)>,
    pos: HashMap<(MultiIndex, usize), usize>,
}

impl FilBasis {
    pub fn new(n: usize, rank: usize, p: usize) -> Self {
        let keys: Vec<(MultiIndex, usize)> =
            monomials(n, p).into_iter().flat_map(|i| (0..rank).map(move |r| (i.clone(), r))).collect();
        let pos = keys.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        FilBasis { n, rank, p, keys, pos }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[(MultiIndex, usize)] {
        &self.keys
    }

    pub fn index(&self, i: &MultiIndex, r: usize) -> Option<usize> {
        self.pos.get(&(i.clone(), r)).copied()
    }

    /// Number of coordinates of degree below `d`.
    pub fn count_below(&self, d: usize) -> usize {
        self.keys.iter().filter(|(i, _)| i.deg() < d).count()
    }

    pub fn vector(&self, col: usize) -> ModuleVector {
        let (i, r) = &self.keys[col];
        ModuleVector::basis(self.n, self.rank, i.clone(), *r)
    }

    /// Coordinates; `None` if `v` leaves `fil^p`.
    pub fn coords(&self, v: &ModuleVector) -> Option<SparseVec> {
        let mut pairs = Vec::new();
        for ((i, r), c) in v.iter() {
            pairs.push((self.index(i, *r)?, c.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }

    pub fn from_coords(&self, s: &SparseVec) -> ModuleVector {
        let mut v = ModuleVector::zero(self.n, self.rank);
        for (c, x) in s.iter() {
            let (i, r) = &self.keys[*c];
            v.add_term(i.clone(), *r, x.clone());
        }
        v
    }
}

/// H-linear map `H ⊗ R → H ⊗ R'` given by the images of `1 ⊗ u_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HLinearMap {
    pub src_rank: usize,
    pub dst_rank: usize,
    pub images: Vec<ModuleVector>,
}

impl HLinearMap {
    pub fn new(images: Vec<ModuleVector>, dst_rank: usize) -> Self {
        HLinearMap { src_rank: images.len(), dst_rank, images }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        HLinearMap::new((0..rank).map(|r| ModuleVector::gen(n, rank, r)).collect(), rank)
    }

    pub fn apply(&self, hopf: &Hopf, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero(v.n(), self.dst_rank);
        for ((i, r), c) in v.iter() {
            out.add_scaled(c, &self.images[*r].mono_mul(hopf, i));
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, hopf: &Hopf, other: &HLinearMap) -> HLinearMap {
        HLinearMap::new(other.images.iter().map(|v| self.apply(hopf, v)).collect(), self.dst_rank)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.is_zero())
    }
}
