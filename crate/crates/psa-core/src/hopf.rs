//! The enveloping algebra H = U(d) in the divided-power PBW basis
//! `∂^(I) = ∂_1^{i_1}⋯∂_N^{i_N} / i_1!⋯i_N!`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liecore::LieData;
use crate::matrix::{self, Mat};
use crate::rational::{factorial, fmt_q, parse_q, q, Q};

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(pub Vec<u32>);

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        MultiIndex(v)
    }

    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut v = self.0.clone();
        v[i] = v[i].checked_sub(1)?;
        Some(MultiIndex(v))
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&x| x > 0)
    }

    /// `I!`
    pub fn factorial(&self) -> Q {
        self.0.iter().map(|&x| factorial(x)).product()
    }

    /// All `(J, K)` with `J + K = I`.
    pub fn splits(&self) -> Vec<(MultiIndex, MultiIndex)> {
        self.sub_indices()
            .into_iter()
            .map(|j| {
                let k = self.checked_sub(&j).unwrap();
                (j, k)
            })
            .collect()
    }

    /// All `(A, B, C)` with `A + B + C = I`.
    pub fn splits3(&self) -> Vec<(MultiIndex, MultiIndex, MultiIndex)> {
        let mut out = Vec::new();
        for (a, rest) in self.splits() {
            for (b, c) in rest.splits() {
                out.push((a.clone(), b, c));
            }
        }
        out
    }

    /// All `J ≤ I` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &top in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (top as usize + 1));
            for prefix in &out {
                for v in 0..=top {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

/// All multi-indices of length `n` and degree at most `p`, in index order.
pub fn monomials(n: usize, p: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for d in 0..=p {
        out.extend(monomials_of_degree(n, d));
    }
    out
}

pub fn monomials_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() == n - 1 {
            cur.push(left as u32);
            out.push(MultiIndex(cur.clone()));
            cur.pop();
            return;
        }
        for v in (0..=left).rev() {
            cur.push(v as u32);
            rec(n, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Finite combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HElement {
    n: usize,
    terms: BTreeMap<MultiIndex, Q>,
}

impl HElement {
    pub fn zero(n: usize) -> Self {
        HElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::mono(MultiIndex::zero(n), Q::one())
    }

    pub fn mono(i: MultiIndex, c: Q) -> Self {
        let n = i.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(i, c);
        }
        HElement { n, terms }
    }

    /// The basis element `∂_i`.
    pub fn gen(n: usize, i: usize) -> Self {
        Self::mono(MultiIndex::unit(n, i), Q::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut h = Self::zero(n);
        for (i, c) in terms {
            h.add_term(i, c);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Q> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: &MultiIndex) -> Q {
        self.terms.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Filtration degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|i| i.deg()).max()
    }

    pub fn add_term(&mut self, i: MultiIndex, c: Q) {
        add_into(&mut self.terms, i, c);
    }

    pub fn add_scaled(&mut self, c: &Q, other: &HElement) {
        for (i, x) in &other.terms {
            self.add_term(i.clone(), c * x);
        }
    }

    pub fn plus(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn minus(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> HElement {
        let mut out = HElement::zero(self.n);
        out.add_scaled(c, self);
        out
    }

    pub fn counit(&self) -> Q {
        self.coeff(&MultiIndex::zero(self.n))
    }

    /// Part of degree exactly `d`.
    pub fn homogeneous(&self, d: usize) -> HElement {
        HElement {
            n: self.n,
            terms: self.terms.iter().filter(|(i, _)| i.deg() == d).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(i, c)| json!([i.0, fmt_q(c)])).collect())
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("HElement must be an array".into()))?;
        let mut h = HElement::zero(n);
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse("term must be [I, \"p/q\"]".into()))?;
            let idx: Vec<u32> = serde_json::from_value(pair[0].clone()).map_err(|e| Error::Parse(e.to_string()))?;
            if idx.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: idx.len() });
            }
            let c = parse_q(pair[1].as_str().ok_or_else(|| Error::Parse("coefficient must be a string".into()))?)?;
            h.add_term(MultiIndex(idx), c);
        }
        Ok(h)
    }
}

/// Elements of H⊗H as coefficient maps on pairs of monomials.
pub type HH = BTreeMap<(MultiIndex, MultiIndex), Q>;

pub fn hh_add(acc: &mut HH, key: (MultiIndex, MultiIndex), c: Q) {
    add_into(acc, key, c);
}

/// Adds `c` at `key`, dropping the entry if it cancels.
pub fn add_into<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

type Terms = Arc<Vec<(MultiIndex, Q)>>;

/// Arithmetic context for U(d); the monomial product memo lives here.
pub struct Hopf {
    lie: LieData,
    gen_memo: Mutex<HashMap<(usize, MultiIndex), Terms>>,
    mono_memo: Mutex<HashMap<(MultiIndex, MultiIndex), Terms>>,
    anti_memo: Mutex<HashMap<MultiIndex, Terms>>,
}

impl fmt::Debug for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hopf({})", self.lie.name)
    }
}

fn collect_terms(m: BTreeMap<MultiIndex, Q>) -> Terms {
    Arc::new(m.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn acc(m: &mut BTreeMap<MultiIndex, Q>, i: MultiIndex, c: Q) {
    *m.entry(i).or_insert_with(Q::zero) += c;
}

impl Hopf {
    pub fn new(lie: LieData) -> Self {
        Hopf {
            lie,
            gen_memo: Mutex::new(HashMap::new()),
            mono_memo: Mutex::new(HashMap::new()),
            anti_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn lie(&self) -> &LieData {
        &self.lie
    }

    pub fn n(&self) -> usize {
        self.lie.dim()
    }

    /// `∂_k · ∂^(J)`
    fn gen_mul(&self, k: usize, j: &MultiIndex) -> Terms {
        if let Some(t) = self.gen_memo.lock().unwrap().get(&(k, j.clone())) {
            return t.clone();
        }
        let mut out = BTreeMap::new();
        match j.first_nonzero() {
            Some(m) if m < k => {
                // ∂^(J) = ∂_m ∂^(J - e_m) / j_m, then commute ∂_k past ∂_m
                let jm = j.minus_unit(m).unwrap();
                let inv = Q::one() / q(j.0[m] as i64);
                for (t, c) in self.gen_mul(k, &jm).iter() {
                    for (u, d) in self.gen_mul(m, t).iter() {
                        acc(&mut out, u.clone(), &inv * c * d);
                    }
                }
                for l in 0..self.n() {
                    let ckm = self.lie.c(k, m, l);
                    if ckm.is_zero() {
                        continue;
                    }
                    for (u, d) in self.gen_mul(l, &jm).iter() {
                        acc(&mut out, u.clone(), &inv * ckm * d);
                    }
                }
            }
            _ => {
                out.insert(j.plus_unit(k), q(j.0[k] as i64 + 1));
            }
        }
        let t = collect_terms(out);
        self.gen_memo.lock().unwrap().insert((k, j.clone()), t.clone());
        t
    }

    /// `∂^(I) · ∂^(J)` straightened into the PBW basis.
    pub fn mul_mono(&self, i: &MultiIndex, j: &MultiIndex) -> Terms {
        let l = match i.first_nonzero() {
            None => return Arc::new(vec![(j.clone(), Q::one())]),
            Some(l) => l,
        };
        if j.is_zero() {
            return Arc::new(vec![(i.clone(), Q::one())]);
        }
        if let Some(t) = self.mono_memo.lock().unwrap().get(&(i.clone(), j.clone())) {
            return t.clone();
        }
        let il = i.minus_unit(l).unwrap();
        let inv = Q::one() / q(i.0[l] as i64);
        let mut out = BTreeMap::new();
        for (t, c) in self.mul_mono(&il, j).iter() {
            for (u, d) in self.gen_mul(l, t).iter() {
                acc(&mut out, u.clone(), &inv * c * d);
            }
        }
        let t = collect_terms(out);
        self.mono_memo.lock().unwrap().insert((i.clone(), j.clone()), t.clone());
        t
    }

    pub fn mul(&self, a: &HElement, b: &HElement) -> HElement {
        let mut out = BTreeMap::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let xy = x * y;
                for (k, c) in self.mul_mono(i, j).iter() {
                    acc(&mut out, k.clone(), &xy * c);
                }
            }
        }
        HElement::from_terms(self.n(), out)
    }

    pub fn mono_product(&self, i: &MultiIndex, j: &MultiIndex) -> HElement {
        HElement::from_terms(self.n(), self.mul_mono(i, j).iter().cloned())
    }

    /// `S(∂^(I)) = (-1)^{|I|} ∂_N^{(i_N)} ⋯ ∂_1^{(i_1)}`
    pub fn antipode_mono(&self, i: &MultiIndex) -> Terms {
        if let Some(t) = self.anti_memo.lock().unwrap().get(i) {
            return t.clone();
        }
        let n = self.n();
        let mut cur = HElement::one(n);
        for k in (0..n).rev() {
            if i.0[k] == 0 {
                continue;
            }
            let mut p = MultiIndex::zero(n);
            p.0[k] = i.0[k];
            cur = self.mul(&cur, &HElement::mono(p, Q::one()));
        }
        if i.deg() % 2 == 1 {
            cur = cur.scaled(&-Q::one());
        }
        let t: Terms = Arc::new(cur.terms.into_iter().collect());
        self.anti_memo.lock().unwrap().insert(i.clone(), t.clone());
        t
    }

    pub fn antipode(&self, h: &HElement) -> HElement {
        let mut out = BTreeMap::new();
        for (i, x) in h.iter() {
            for (k, c) in self.antipode_mono(i).iter() {
                acc(&mut out, k.clone(), x * c);
            }
        }
        HElement::from_terms(self.n(), out)
    }

    /// `Δ(∂^(I)) = Σ_{J+K=I} ∂^(J) ⊗ ∂^(K)`
    pub fn coproduct(&self, h: &HElement) -> HH {
        let mut out = HH::new();
        for (i, x) in h.iter() {
            for (j, k) in i.splits() {
                hh_add(&mut out, (j, k), x.clone());
            }
        }
        out
    }

    pub fn counit(&self, h: &HElement) -> Q {
        h.counit()
    }

    /// Product in H⊗H.
    pub fn mul_hh(&self, a: &HH, b: &HH) -> HH {
        let mut out = HH::new();
        for ((a1, a2), x) in a {
            for ((b1, b2), y) in b {
                let xy = x * y;
                let p1 = self.mul_mono(a1, b1);
                let p2 = self.mul_mono(a2, b2);
                for (u, c) in p1.iter() {
                    for (v, d) in p2.iter() {
                        hh_add(&mut out, (u.clone(), v.clone()), &xy * c * d);
                    }
                }
            }
        }
        out
    }
}

/// Matrix of `∂^(I)` on a d-module given by one matrix per generator.
pub fn rep_of_mono(mats: &[Mat], dim: usize, i: &MultiIndex) -> Mat {
    let mut m = matrix::identity(dim);
    for (k, &e) in i.0.iter().enumerate() {
        for _ in 0..e {
            m = matrix::mul(&m, &mats[k]);
        }
    }
    let f = i.factorial();
    if f != Q::one() {
        m = matrix::scale(&m, &(Q::one() / f));
    }
    m
}

pub fn rep_of(mats: &[Mat], dim: usize, h: &HElement) -> Mat {
    let mut m = matrix::zeros(dim, dim);
    for (i, c) in h.iter() {
        matrix::axpy(&mut m, c, &rep_of_mono(mats, dim, i));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::presets;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn divided_power_square() {
        let h = Hopf::new(presets::abelian(1));
        let p = h.mono_product(&mi(&[1]), &mi(&[1]));
        assert_eq!(p, HElement::mono(mi(&[2]), q(2)));
    }

    #[test]
    fn sl2_straightening() {
        // order (e, h, f): f·e = e·f - h
        let h = Hopf::new(presets::sl2());
        let fe = h.mono_product(&mi(&[0, 0, 1]), &mi(&[1, 0, 0]));
        let expected = HElement::from_terms(3, [(mi(&[1, 0, 1]), q(1)), (mi(&[0, 1, 0]), q(-1))]);
        assert_eq!(fe, expected);
        // S(e·f) = f·e
        let ef = h.mono_product(&mi(&[1, 0, 0]), &mi(&[0, 0, 1]));
        assert_eq!(h.antipode(&ef), expected);
    }

    #[test]
    fn unit_and_antipode_of_generator() {
        let h = Hopf::new(presets::heis3());
        let x = HElement::from_terms(3, [(mi(&[1, 2, 0]), q(3)), (mi(&[0, 0, 1]), q(-1))]);
        assert_eq!(h.mul(&HElement::one(3), &x), x);
        assert_eq!(h.mul(&x, &HElement::one(3)), x);
        assert_eq!(h.antipode(&HElement::gen(3, 1)), HElement::gen(3, 1).scaled(&q(-1)));
        assert_eq!(h.counit(&x), q(0));
        assert_eq!(h.counit(&HElement::one(3)), q(1));
    }

    #[test]
    fn coproduct_examples() {
        let h = Hopf::new(presets::abelian(1));
        let d = h.coproduct(&HElement::mono(mi(&[2]), q(1)));
        assert_eq!(d.len(), 3);
        assert_eq!(d[&(mi(&[1]), mi(&[1]))], q(1));
        let one = h.coproduct(&HElement::one(1));
        assert_eq!(one.len(), 1);
        assert_eq!(one[&(mi(&[0]), mi(&[0]))], q(1));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(2, 3).len(), 10);
        let m = monomials(2, 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(m[0], mi(&[0, 0]));
    }

    #[test]
    fn json_round_trip() {
        let x = HElement::from_terms(2, [(mi(&[1, 2]), crate::rational::qf(3, 4)), (mi(&[0, 0]), q(-1))]);
        assert_eq!(HElement::from_json(2, &x.to_json()).unwrap(), x);
    }
}
