//! Elements of `(H⊗H) ⊗_H V` and `H^{⊗3} ⊗_H V` for free V, in normal forms,
//! together with pseudoactions given on generators and the composition maps
//! behind the module and Jacobi axioms.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::freemod::ModuleVector;
use crate::hopf::{add_into, HElement, Hopf, MultiIndex};
use crate::rational::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orient {
    /// `Σ (∂^(I) ⊗ 1) ⊗_H v_I`
    Left,
    /// `Σ (1 ⊗ ∂^(I)) ⊗_H v_I`
    Right,
}

type Key = (MultiIndex, MultiIndex, usize);

/// Terms `(I, K, r) ↦ c` stand for `c · (∂^(I)⊗1 or 1⊗∂^(I)) ⊗_H (∂^(K) ⊗ u_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoValue {
    n: usize,
    rank: usize,
    orient: Orient,
    terms: BTreeMap<Key, Q>,
}

impl PseudoValue {
    pub fn zero(n: usize, rank: usize, orient: Orient) -> Self {
        PseudoValue { n, rank, orient, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orient(&self) -> Orient {
        self.orient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.terms.iter()
    }

    /// Adds `c · (slot ∂^(I)) ⊗_H (∂^(K) ⊗ u_r)` in the current orientation.
    pub fn add_normal(&mut self, i: MultiIndex, k: MultiIndex, r: usize, c: Q) {
        add_into(&mut self.terms, (i, k, r), c);
    }

    /// Adds `c · (∂^(I) ⊗ 1) ⊗_H v` (orientation `Left`) or `(1 ⊗ ∂^(I))` (`Right`).
    pub fn add_normal_vector(&mut self, i: &MultiIndex, v: &ModuleVector, c: &Q) {
        for ((k, r), x) in v.iter() {
            self.add_normal(i.clone(), k.clone(), *r, c * x);
        }
    }

    /// Adds `c · (∂^(F) ⊗ ∂^(G)) ⊗_H (∂^(K) ⊗ u_r)`, renormalizing.
    pub fn push_raw(&mut self, hopf: &Hopf, f: &MultiIndex, g: &MultiIndex, k: &MultiIndex, r: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        // Left:  (f⊗g)⊗v = Σ (f S(g_1) ⊗ 1) ⊗ g_2 v
        // Right: (f⊗g)⊗v = Σ (1 ⊗ g S(f_1)) ⊗ f_2 v
        let (outer, moved) = match self.orient {
            Orient::Left => (f, g),
            Orient::Right => (g, f),
        };
        for (m1, m2) in moved.splits() {
            let sm = hopf.antipode_mono(&m1);
            let inner = hopf.mul_mono(&m2, k);
            for (s, a) in sm.iter() {
                for (o, b) in hopf.mul_mono(outer, s).iter() {
                    let cab = c * a * b;
                    for (t, d) in inner.iter() {
                        self.add_normal(o.clone(), t.clone(), r, &cab * d);
                    }
                }
            }
        }
    }

    /// Adds `c · (f ⊗ g) ⊗_H v` for arbitrary `f, g ∈ H`.
    pub fn push_raw_h(&mut self, hopf: &Hopf, f: &HElement, g: &HElement, v: &ModuleVector, c: &Q) {
        for (fi, a) in f.iter() {
            for (gi, b) in g.iter() {
                for ((k, r), x) in v.iter() {
                    self.push_raw(hopf, fi, gi, k, *r, &(c * a * b * x));
                }
            }
        }
    }

    pub fn convert(&self, hopf: &Hopf, orient: Orient) -> PseudoValue {
        if orient == self.orient {
            return self.clone();
        }
        let mut out = PseudoValue::zero(self.n, self.rank, orient);
        let z = MultiIndex::zero(self.n);
        for ((i, k, r), c) in &self.terms {
            match self.orient {
                Orient::Left => out.push_raw(hopf, i, &z, k, *r, c),
                Orient::Right => out.push_raw(hopf, &z, i, k, *r, c),
            }
        }
        out
    }

    pub fn to_left(&self, hopf: &Hopf) -> PseudoValue {
        self.convert(hopf, Orient::Left)
    }

    pub fn to_right(&self, hopf: &Hopf) -> PseudoValue {
        self.convert(hopf, Orient::Right)
    }

    /// `(σ ⊗_H id)`: swaps the two tensor slots. The stored data is
    /// unchanged, only its reading flips; renormalize with `convert`.
    pub fn flip(&self) -> PseudoValue {
        PseudoValue {
            n: self.n,
            rank: self.rank,
            orient: match self.orient {
                Orient::Left => Orient::Right,
                Orient::Right => Orient::Left,
            },
            terms: self.terms.clone(),
        }
    }

    pub fn add_scaled(&mut self, hopf: &Hopf, c: &Q, other: &PseudoValue) {
        let other = other.convert(hopf, self.orient);
        for (key, x) in other.terms {
            add_into(&mut self.terms, key, c * x);
        }
    }

    pub fn scaled(&self, c: &Q) -> PseudoValue {
        let mut out = PseudoValue::zero(self.n, self.rank, self.orient);
        for (key, x) in &self.terms {
            add_into(&mut out.terms, key.clone(), c * x);
        }
        out
    }

    pub fn same_element(&self, hopf: &Hopf, other: &PseudoValue) -> bool {
        self.to_left(hopf).terms == other.to_left(hopf).terms
    }

    /// Outer indices present, ascending.
    pub fn outer_indices(&self) -> Vec<MultiIndex> {
        let set: std::collections::BTreeSet<MultiIndex> = self.terms.keys().map(|(i, _, _)| i.clone()).collect();
        set.into_iter().collect()
    }

    /// The module vector `v_I` in the current orientation.
    pub fn coefficient(&self, i: &MultiIndex) -> ModuleVector {
        let mut v = ModuleVector::zero(self.n, self.rank);
        for ((j, k, r), c) in &self.terms {
            if j == i {
                v.add_term(k.clone(), *r, c.clone());
            }
        }
        v
    }

    pub fn coefficients(&self) -> BTreeMap<MultiIndex, ModuleVector> {
        let mut out: BTreeMap<MultiIndex, ModuleVector> = BTreeMap::new();
        for ((j, k, r), c) in &self.terms {
            out.entry(j.clone())
                .or_insert_with(|| ModuleVector::zero(self.n, self.rank))
                .add_term(k.clone(), *r, c.clone());
        }
        out
    }

    /// Largest outer degree, `None` for zero.
    pub fn outer_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, _, _)| i.deg()).max()
    }

    /// Multiplies the H⊗H part by `∂^(F) ⊗ ∂^(G)` on the left. Needs `Left` input.
    pub fn mul_outer(&self, hopf: &Hopf, f: &MultiIndex, g: &MultiIndex) -> PseudoValue {
        let src = self.to_left(hopf);
        let mut out = PseudoValue::zero(self.n, self.rank, Orient::Left);
        for ((i, k, r), c) in &src.terms {
            for (p, d) in hopf.mul_mono(f, i).iter() {
                out.push_raw(hopf, p, g, k, *r, &(c * d));
            }
        }
        out
    }

    /// `((id⊗id) ⊗_H β)` for an H-linear `β` acting on coefficients.
    pub fn map_coefficients(&self, hopf: &Hopf, beta: &crate::freemod::HLinearMap) -> PseudoValue {
        let mut out = PseudoValue::zero(self.n, beta.dst_rank, self.orient);
        for (i, v) in self.coefficients() {
            out.add_normal_vector(&i, &beta.apply(hopf, &v), &Q::one());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orientation": match self.orient { Orient::Left => "left", Orient::Right => "right" },
            "terms": self.terms.iter().map(|((i, k, r), c)| json!([i.0, k.0, r, fmt_q(c)])).collect::<Vec<_>>(),
        })
    }
}

type Key3 = (MultiIndex, MultiIndex, MultiIndex, usize);

/// `Σ (∂^(A) ⊗ ∂^(B) ⊗ 1) ⊗_H (∂^(K) ⊗ u_r)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoValue3 {
    n: usize,
    rank: usize,
    terms: BTreeMap<Key3, Q>,
}

impl PseudoValue3 {
    pub fn zero(n: usize, rank: usize) -> Self {
        PseudoValue3 { n, rank, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn add_normal(&mut self, a: MultiIndex, b: MultiIndex, k: MultiIndex, r: usize, c: Q) {
        add_into(&mut self.terms, (a, b, k, r), c);
    }

    /// Adds `c · (∂^(F) ⊗ ∂^(G) ⊗ ∂^(E)) ⊗_H (∂^(K) ⊗ u_r)`, renormalizing by
    /// `(f⊗g⊗h) ⊗ v = Σ (f S(h_1) ⊗ g S(h_2) ⊗ 1) ⊗ h_3 v`.
    #[allow(clippy::too_many_arguments)]
    pub fn push_raw(&mut self, hopf: &Hopf, f: &MultiIndex, g: &MultiIndex, e: &MultiIndex, k: &MultiIndex, r: usize, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (e1, e2, e3) in e.splits3() {
            let fs = {
                let mut m = BTreeMap::new();
                for (s, a) in hopf.antipode_mono(&e1).iter() {
                    for (o, b) in hopf.mul_mono(f, s).iter() {
                        add_into(&mut m, o.clone(), a * b);
                    }
                }
                m
            };
            let gs = {
                let mut m = BTreeMap::new();
                for (s, a) in hopf.antipode_mono(&e2).iter() {
                    for (o, b) in hopf.mul_mono(g, s).iter() {
                        add_into(&mut m, o.clone(), a * b);
                    }
                }
                m
            };
            let inner = hopf.mul_mono(&e3, k);
            for (a, x) in &fs {
                for (b, y) in &gs {
                    let cxy = c * x * y;
                    for (t, z) in inner.iter() {
                        self.add_normal(a.clone(), b.clone(), t.clone(), r, &cxy * z);
                    }
                }
            }
        }
    }

    /// `(σ ⊗ id) ⊗_H id`
    pub fn swap12(&self) -> PseudoValue3 {
        let mut out = PseudoValue3::zero(self.n, self.rank);
        for ((a, b, k, r), c) in &self.terms {
            out.add_normal(b.clone(), a.clone(), k.clone(), *r, c.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Q, other: &PseudoValue3) {
        for (key, x) in &other.terms {
            add_into(&mut self.terms, key.clone(), c * x);
        }
    }
}

/// A pseudoaction of a Lie pseudoalgebra L, free on `gens` generators `g_i`,
/// on a free module `H ⊗ R`: `entries[i][k] = g_i * (1 ⊗ u_k)` in left-normal form.
/// The adjoint table of L is the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub n: usize,
    pub gens: usize,
    pub rank: usize,
    pub entries: Vec<Vec<PseudoValue>>,
}

impl ActionTable {
    pub fn new(n: usize, gens: usize, rank: usize, entries: Vec<Vec<PseudoValue>>) -> Self {
        ActionTable { n, gens, rank, entries }
    }

    pub fn entry(&self, i: usize, k: usize) -> &PseudoValue {
        &self.entries[i][k]
    }

    /// `a * v` by H-bilinear extension.
    pub fn act(&self, hopf: &Hopf, a: &ModuleVector, v: &ModuleVector) -> PseudoValue {
        let mut out = PseudoValue::zero(self.n, self.rank, Orient::Left);
        for ((f, i), x) in a.iter() {
            for ((g, k), y) in v.iter() {
                let xy = x * y;
                for ((ii, kk, r), c) in self.entries[*i][*k].iter() {
                    let xyc = &xy * c;
                    for (p, d) in hopf.mul_mono(f, ii).iter() {
                        out.push_raw(hopf, p, g, kk, *r, &(&xyc * d));
                    }
                }
            }
        }
        out
    }

    /// `g_i * v`
    pub fn act_gen(&self, hopf: &Hopf, i: usize, v: &ModuleVector) -> PseudoValue {
        self.act(hopf, &ModuleVector::gen(self.n, self.gens, i), v)
    }
}

/// `(Σ (∂^(I)⊗1) ⊗_H ∂^(K) g_m) * v` for `v = 1 ⊗ u_k`, with `*` given by `table`.
pub fn compose_left(hopf: &Hopf, ab: &PseudoValue, table: &ActionTable, k: usize) -> PseudoValue3 {
    let ab = ab.to_left(hopf);
    let mut out = PseudoValue3::zero(table.n, table.rank);
    for ((i, kk, m), c) in ab.iter() {
        for (k1, k2) in kk.splits() {
            for (p, d) in hopf.mul_mono(i, &k1).iter() {
                let cd = c * d;
                // (∂^(P) ⊗ ∂^(K2)) ⊗_H g_m, then (h⊗1)(Δ⊗id) on g_m * u_k
                for ((j, l, r), e) in table.entries[*m][k].iter() {
                    for (j1, j2) in j.splits() {
                        let a = hopf.mul_mono(p, &j1);
                        let b = hopf.mul_mono(&k2, &j2);
                        for (aa, x) in a.iter() {
                            for (bb, y) in b.iter() {
                                out.add_normal(aa.clone(), bb.clone(), l.clone(), *r, &cd * e * x * y);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `g_a * (Σ (∂^(J)⊗1) ⊗_H ∂^(L) u_r)` with `*` given by `table`.
pub fn compose_right(hopf: &Hopf, a: usize, bv: &PseudoValue, table: &ActionTable) -> PseudoValue3 {
    let bv = bv.to_left(hopf);
    let mut out = PseudoValue3::zero(table.n, table.rank);
    for ((j, l, r), c) in bv.iter() {
        for (l1, l2) in l.splits() {
            for (p, d) in hopf.mul_mono(j, &l1).iter() {
                let cd = c * d;
                // (1 ⊗ ∂^(P) ⊗ ∂^(L2)) (id⊗Δ) applied to g_a * u_r
                for ((m, qq, s), e) in table.entries[a][*r].iter() {
                    out.push_raw(hopf, m, p, &l2, qq, *s, &(&cd * e));
                }
            }
        }
    }
    out
}

/// Defect of `[g_i * g_j] * u_k = g_i * (g_j * u_k) - (σ⊗id)(g_j * (g_i * u_k))`.
pub fn axiom_defect(hopf: &Hopf, bracket: &ActionTable, action: &ActionTable, i: usize, j: usize, k: usize) -> PseudoValue3 {
    let u = ModuleVector::gen(action.n, action.rank, k);
    let lhs = compose_left(hopf, bracket.entry(i, j), action, k);
    let r1 = compose_right(hopf, i, &action.act_gen(hopf, j, &u), action);
    let r2 = compose_right(hopf, j, &action.act_gen(hopf, i, &u), action).swap12();
    let mut d = lhs;
    d.add_scaled(&-Q::one(), &r1);
    d.add_scaled(&Q::one(), &r2);
    d
}

/// Defect of `[g_j * g_i] = -(σ ⊗_H id)[g_i * g_j]`.
pub fn skew_defect(hopf: &Hopf, bracket: &ActionTable, i: usize, j: usize) -> PseudoValue {
    let mut d = bracket.entry(j, i).clone();
    d.add_scaled(hopf, &Q::one(), &bracket.entry(i, j).flip());
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::presets;
    use crate::rational::q;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn primitive_to_right() {
        // (∂⊗1)⊗v = (1⊗(-∂))⊗v + (1⊗1)⊗∂v
        let hopf = Hopf::new(presets::abelian(1));
        let mut p = PseudoValue::zero(1, 1, Orient::Left);
        p.add_normal(mi(&[1]), mi(&[0]), 0, q(1));
        let r = p.to_right(&hopf);
        let mut expected = PseudoValue::zero(1, 1, Orient::Right);
        expected.add_normal(mi(&[1]), mi(&[0]), 0, q(-1));
        expected.add_normal(mi(&[0]), mi(&[1]), 0, q(1));
        assert_eq!(r, expected);
        assert_eq!(r.to_left(&hopf), p);
    }

    #[test]
    fn round_trip_and_flip_on_sl2() {
        let hopf = Hopf::new(presets::sl2());
        let mut p = PseudoValue::zero(3, 2, Orient::Left);
        p.add_normal(mi(&[1, 0, 1]), mi(&[0, 1, 0]), 1, q(3));
        p.add_normal(mi(&[0, 2, 0]), mi(&[0, 0, 0]), 0, q(-2));
        p.add_normal(mi(&[0, 0, 0]), mi(&[1, 0, 0]), 0, q(5));
        assert_eq!(p.to_right(&hopf).to_left(&hopf), p);
        assert_eq!(p.flip().to_left(&hopf).flip().to_left(&hopf), p);
    }

    #[test]
    fn flip_of_left_generator() {
        let hopf = Hopf::new(presets::abelian(2));
        let mut p = PseudoValue::zero(2, 1, Orient::Left);
        p.add_normal(mi(&[1, 0]), mi(&[0, 0]), 0, q(1));
        let f = p.flip();
        assert_eq!(f.orient(), Orient::Right);
        assert_eq!(f.coefficient(&mi(&[1, 0])), ModuleVector::gen(2, 1, 0));
        assert!(!f.same_element(&hopf, &p));
    }
}
