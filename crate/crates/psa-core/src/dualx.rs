//! Truncations of the dual X = H* with basis `x_I`, `⟨x_I, ∂^(J)⟩ = δ_I^J`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{add_into, monomials, HElement, Hopf, MultiIndex};
use crate::rational::{fmt_q, Q};

/// `Σ c_I x_I` known modulo `fil_D X`, i.e. exact for `|I| ≤ validity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XElement {
    n: usize,
    coeffs: BTreeMap<MultiIndex, Q>,
    validity: usize,
}

impl XElement {
    pub fn zero(n: usize, validity: usize) -> Self {
        XElement { n, coeffs: BTreeMap::new(), validity }
    }

    /// The unit `1_X = x_0` (the counit).
    pub fn one(n: usize, validity: usize) -> Self {
        Self::mono(MultiIndex::zero(n), Q::one(), validity)
    }

    pub fn mono(i: MultiIndex, c: Q, validity: usize) -> Self {
        let mut x = Self::zero(i.len(), validity);
        if i.deg() <= validity {
            add_into(&mut x.coeffs, i, c);
        }
        x
    }

    /// Coordinate function `x^i`.
    pub fn coord(n: usize, i: usize, validity: usize) -> Self {
        Self::mono(MultiIndex::unit(n, i), Q::one(), validity)
    }

    pub fn from_terms(n: usize, validity: usize, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut x = Self::zero(n, validity);
        for (i, c) in terms {
            x.add_term(i, c);
        }
        x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn validity(&self) -> usize {
        self.validity
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, i: &MultiIndex) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, i: MultiIndex, c: Q) {
        if i.deg() <= self.validity {
            add_into(&mut self.coeffs, i, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Filtration order: the least `|I|` present, minus one (so `x^i` has
    /// order 0 and `1_X` has order -1). `None` for zero.
    pub fn order(&self) -> Option<i64> {
        self.coeffs.keys().map(|i| i.deg() as i64 - 1).min()
    }

    /// Drops everything above degree `d` and lowers validity to `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let v = d.min(self.validity);
        XElement {
            n: self.n,
            coeffs: self.coeffs.iter().filter(|(i, _)| i.deg() <= v).map(|(i, c)| (i.clone(), c.clone())).collect(),
            validity: v,
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &XElement) {
        let v = self.validity.min(other.validity);
        if v < self.validity {
            *self = self.truncate(v);
        }
        for (i, x) in &other.coeffs {
            self.add_term(i.clone(), c * x);
        }
    }

    pub fn plus(&self, other: &XElement) -> XElement {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn minus(&self, other: &XElement) -> XElement {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> XElement {
        let mut out = XElement::zero(self.n, self.validity);
        out.add_scaled(c, self);
        out
    }

    /// Equality modulo the common validity.
    pub fn eq_within(&self, other: &XElement) -> bool {
        let v = self.validity.min(other.validity);
        self.truncate(v).coeffs == other.truncate(v).coeffs
    }

    /// True when zero modulo its validity.
    pub fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.coeffs.iter().map(|(i, c)| json!([i.0, fmt_q(c)])).collect::<Vec<_>>(),
            "validity": self.validity,
        })
    }
}

pub fn pair(x: &XElement, h: &HElement) -> Result<Q> {
    if let Some(d) = h.degree() {
        if d > x.validity {
            return Err(Error::TruncationExceeded { needed: d, validity: x.validity });
        }
    }
    Ok(h.iter().map(|(i, c)| c * x.coeff(i)).sum())
}

/// `x_J x_K = x_{J+K}`
pub fn x_mul(x: &XElement, y: &XElement) -> XElement {
    let v = x.validity.min(y.validity);
    let mut out = XElement::zero(x.n, v);
    for (i, a) in &x.coeffs {
        if i.deg() > v {
            continue;
        }
        for (j, b) in &y.coeffs {
            if i.deg() + j.deg() <= v {
                out.add_term(i.add(j), a * b);
            }
        }
    }
    out
}

fn check_margin(x: &XElement, h: &HElement) -> Result<usize> {
    let d = h.degree().unwrap_or(0);
    x.validity
        .checked_sub(d)
        .ok_or(Error::TruncationExceeded { needed: d, validity: x.validity })
}

/// `⟨hx, f⟩ = ⟨x, S(h) f⟩`
pub fn h_act_left(hopf: &Hopf, h: &HElement, x: &XElement) -> Result<XElement> {
    let v = check_margin(x, h)?;
    let s = hopf.antipode(h);
    let mut out = XElement::zero(x.n, v);
    for j in monomials(x.n, v) {
        let mut val = Q::zero();
        for (k, c) in s.iter() {
            for (t, d) in hopf.mul_mono(k, &j).iter() {
                let xt = x.coeff(t);
                if !xt.is_zero() {
                    val += c * d * xt;
                }
            }
        }
        out.add_term(j, val);
    }
    Ok(out)
}

/// `⟨xh, f⟩ = ⟨x, f S(h)⟩`
pub fn h_act_right(hopf: &Hopf, x: &XElement, h: &HElement) -> Result<XElement> {
    let v = check_margin(x, h)?;
    let s = hopf.antipode(h);
    let mut out = XElement::zero(x.n, v);
    for j in monomials(x.n, v) {
        let mut val = Q::zero();
        for (k, c) in s.iter() {
            for (t, d) in hopf.mul_mono(&j, k).iter() {
                let xt = x.coeff(t);
                if !xt.is_zero() {
                    val += c * d * xt;
                }
            }
        }
        out.add_term(j, val);
    }
    Ok(out)
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
    fn pairing_examples() {
        let x1 = XElement::coord(2, 0, 6);
        assert_eq!(pair(&x1, &HElement::gen(2, 0)).unwrap(), q(1));
        assert_eq!(pair(&x1, &HElement::gen(2, 1)).unwrap(), q(0));
        let h = Hopf::new(presets::abelian(2));
        let sq = x_mul(&x1, &x1);
        assert_eq!(sq, XElement::mono(mi(&[2, 0]), q(1), 6));
        let d1d1 = h.mul(&HElement::gen(2, 0), &HElement::gen(2, 0));
        assert_eq!(pair(&sq, &d1d1).unwrap(), q(2));
        let big = HElement::mono(mi(&[7, 0]), q(1));
        assert!(matches!(pair(&x1, &big), Err(Error::TruncationExceeded { .. })));
    }

    #[test]
    fn products() {
        let x1 = XElement::coord(2, 0, 6);
        let x2 = XElement::coord(2, 1, 6);
        assert_eq!(x_mul(&x1, &x2), XElement::mono(mi(&[1, 1]), q(1), 6));
        assert_eq!(x_mul(&XElement::one(2, 6), &x2), x2);
        assert_eq!(x_mul(&x_mul(&x1, &x1), &x1), XElement::mono(mi(&[3, 0]), q(1), 6));
    }

    #[test]
    fn abelian_derivative() {
        let h = Hopf::new(presets::abelian(2));
        let x = XElement::mono(mi(&[2, 0]), q(1), 6);
        let y = h_act_left(&h, &HElement::gen(2, 0), &x).unwrap();
        // x_(2,0) = (x^1)^2 and ∂_1 acts as -d/dt^1
        assert_eq!(y, XElement::mono(mi(&[1, 0]), q(-2), 5));
    }

    #[test]
    fn solv2_left_action_mod_fil1() {
        // ∂_2 x^2 ≡ -1 + x^1 mod fil_1 X
        let h = Hopf::new(presets::solv2());
        let y = h_act_left(&h, &HElement::gen(2, 1), &XElement::coord(2, 1, 6)).unwrap().truncate(1);
        assert_eq!(y, XElement::from_terms(2, 1, [(mi(&[0, 0]), q(-1)), (mi(&[1, 0]), q(1))]));
    }

    #[test]
    fn orders() {
        assert_eq!(XElement::one(2, 4).order(), Some(-1));
        assert_eq!(XElement::coord(2, 1, 4).order(), Some(0));
        assert_eq!(XElement::zero(2, 4).order(), None);
    }
}
