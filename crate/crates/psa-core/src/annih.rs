//! The annihilation algebra `W = X ⊗ d` at finite truncation, its action on
//! modules, the Euler element, the map γ and the embedding of S.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::dualx::{h_act_left, h_act_right, pair, x_mul, XElement};
use crate::error::{Error, Result};
use crate::freemod::ModuleVector;
use crate::hopf::{monomials, HElement, Hopf, MultiIndex};
use crate::liecore::TraceForm;
use crate::linalg::{solve, SparseVec};
use crate::matrix::{self, Mat};
use crate::pseudoalg::WElement;
use crate::rational::Q;
use crate::twosided::{ActionTable, Orient, PseudoValue};

/// `Σ_a y_a ⊗ ∂_a` with each `y_a` truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnElement {
    pub comps: Vec<XElement>,
}

impl AnnElement {
    pub fn zero(n: usize, validity: usize) -> Self {
        AnnElement { comps: vec![XElement::zero(n, validity); n] }
    }

    /// `c · x_I ⊗ ∂_a`
    pub fn mono(i: &MultiIndex, a: usize, c: Q, validity: usize) -> Self {
        let mut out = Self::zero(i.len(), validity);
        out.comps[a] = XElement::mono(i.clone(), c, validity);
        out
    }

    /// `x ⊗ ∂_a`
    pub fn from_x(x: &XElement, a: usize) -> Self {
        let mut out = Self::zero(x.n(), x.validity());
        out.comps[a] = x.clone();
        out
    }

    pub fn n(&self) -> usize {
        self.comps.len()
    }

    pub fn validity(&self) -> usize {
        self.comps.iter().map(|x| x.validity()).min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|x| x.is_zero())
    }

    /// Filtration order `p` with `A ∈ W_p`; `None` for zero.
    pub fn order(&self) -> Option<i64> {
        self.comps.iter().filter_map(|x| x.order()).min()
    }

    pub fn in_w(&self, p: i64) -> bool {
        self.order().map_or(true, |o| o >= p)
    }

    pub fn truncate(&self, d: usize) -> Self {
        AnnElement { comps: self.comps.iter().map(|x| x.truncate(d)).collect() }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &AnnElement) {
        let v = self.validity().min(other.validity());
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            *a = a.truncate(v);
            a.add_scaled(c, b);
        }
    }

    pub fn plus(&self, other: &AnnElement) -> AnnElement {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), other);
        out
    }

    pub fn minus(&self, other: &AnnElement) -> AnnElement {
        let mut out = self.clone();
        out.add_scaled(&-Q::one(), other);
        out
    }

    pub fn scaled(&self, c: &Q) -> AnnElement {
        AnnElement { comps: self.comps.iter().map(|x| x.scaled(c)).collect() }
    }

    pub fn eq_within(&self, other: &AnnElement) -> bool {
        let v = self.validity().min(other.validity());
        self.truncate(v) == other.truncate(v)
    }

    /// Nonzero coefficients `(a, I, c)` of `x_I ⊗ ∂_a`.
    pub fn support(&self) -> Vec<(usize, MultiIndex, Q)> {
        let mut out = Vec::new();
        for (a, x) in self.comps.iter().enumerate() {
            for (i, c) in x.iter() {
                out.push((a, i.clone(), c.clone()));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "validity": self.validity(),
            "components": self.comps.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn right_gen(hopf: &Hopf, x: &XElement, a: usize) -> Result<XElement> {
    h_act_right(hopf, x, &HElement::gen(x.n(), a))
}

/// `[x⊗a, y⊗b] = xy⊗[a,b] - x(ya)⊗b + (xb)y⊗a`
pub fn ann_bracket(hopf: &Hopf, a: &AnnElement, b: &AnnElement) -> Result<AnnElement> {
    let n = hopf.n();
    let v = a.validity().min(b.validity()).checked_sub(1).ok_or(Error::TruncationExceeded { needed: 1, validity: 0 })?;
    let mut out = AnnElement::zero(n, v);
    for (i, x) in a.comps.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let xb: Vec<XElement> = (0..n).map(|j| right_gen(hopf, x, j)).collect::<Result<_>>()?;
        for (j, y) in b.comps.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let xy = x_mul(x, y);
            for (k, c) in hopf.lie().bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out.comps[k].add_scaled(c, &xy);
                }
            }
            let ya = right_gen(hopf, y, i)?;
            out.comps[j].add_scaled(&-Q::one(), &x_mul(x, &ya));
            out.comps[i].add_scaled(&Q::one(), &x_mul(&xb[j], y));
        }
    }
    Ok(out.truncate(v))
}

/// Class of `A ∈ W_0` in `W_0/W_1 ≅ gl(d)`: `x^j ⊗ ∂_i ↦ -e_i^j`.
pub fn gr_iso_gl(a: &AnnElement) -> Result<Mat> {
    let n = a.n();
    if !a.in_w(0) {
        return Err(Error::NotInW0);
    }
    let mut m = matrix::zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = -a.comps[i].coeff(&MultiIndex::unit(n, j));
        }
    }
    Ok(m)
}

/// Action on X: `(x ⊗ a) y = -x (y a)`.
pub fn ann_act_x(hopf: &Hopf, a: &AnnElement, y: &XElement) -> Result<XElement> {
    let n = hopf.n();
    let mut out = XElement::zero(n, a.validity().min(y.validity().saturating_sub(1)));
    for (i, x) in a.comps.iter().enumerate() {
        if !x.is_zero() {
            out.add_scaled(&-Q::one(), &x_mul(x, &right_gen(hopf, y, i)?));
        }
    }
    Ok(out)
}

/// Left action of `∂ = Σ c_i ∂_i` on coefficients, the d-part of the extended algebra.
pub fn d_act(hopf: &Hopf, d: &[Q], a: &AnnElement) -> Result<AnnElement> {
    let n = hopf.n();
    let h = HElement::from_terms(n, d.iter().enumerate().map(|(i, c)| (MultiIndex::unit(n, i), c.clone())));
    let comps = a.comps.iter().map(|x| h_act_left(hopf, &h, x)).collect::<Result<_>>()?;
    Ok(AnnElement { comps })
}

/// Element `∂ + A` of the extended annihilation algebra `d ⋉ W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElement {
    pub d: Vec<Q>,
    pub w: AnnElement,
}

pub fn ext_bracket(hopf: &Hopf, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
    let mut w = ann_bracket(hopf, &a.w, &b.w)?;
    w.add_scaled(&Q::one(), &d_act(hopf, &a.d, &b.w)?);
    w.add_scaled(&-Q::one(), &d_act(hopf, &b.d, &a.w)?);
    Ok(ExtElement { d: hopf.lie().bracket(&a.d, &b.d), w })
}

/// Monomials `x_J ⊗ ∂_m` with `lo ≤ |J| ≤ hi`: a spanning set of `W_{lo-1}` modulo `W_hi`.
pub fn w_spanning_set(n: usize, lo: usize, hi: usize, validity: usize) -> Vec<AnnElement> {
    monomials(n, hi)
        .into_iter()
        .filter(|j| j.deg() >= lo)
        .flat_map(|j| (0..n).map(move |m| AnnElement::mono(&j, m, Q::one(), validity)))
        .collect()
}

/// Unknowns `x_I ⊗ ∂_a`, `|I| ≤ p`, ordered by `(|I|, I, a)`.
fn unknowns(n: usize, p: usize) -> Vec<(MultiIndex, usize)> {
    monomials(n, p).into_iter().flat_map(|i| (0..n).map(move |a| (i.clone(), a))).collect()
}

fn from_solution(n: usize, unk: &[(MultiIndex, usize)], s: &SparseVec, validity: usize) -> AnnElement {
    let mut out = AnnElement::zero(n, validity);
    for (c, x) in s.iter() {
        let (i, a) = &unk[*c];
        out.comps[*a].add_term(i.clone(), x.clone());
    }
    out
}

/// The element of `W_0` acting on X as the Euler derivation `x_I ↦ |I| x_I`,
/// i.e. fixing every coordinate `x^i`. Exact modulo `W_{D-1}`.
pub fn euler_element(hopf: &Hopf, d: usize) -> Result<AnnElement> {
    let n = hopf.n();
    if d < 2 {
        return Err(Error::SolveFailed(format!("truncation {d} is below 2")));
    }
    let v = d - 1;
    let unk = unknowns(n, v);
    let eqs = monomials(n, v);
    // A · x^i = -Σ_a A_a (x^i ∂_a); precompute x^i ∂_a
    let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n * eqs.len()];
    let mut rhs = vec![Q::zero(); n * eqs.len()];
    let eq_pos = |i: usize, k: &MultiIndex| i * eqs.len() + eqs.iter().position(|e| e == k).unwrap();
    for i in 0..n {
        let xi = XElement::coord(n, i, d);
        rhs[eq_pos(i, &MultiIndex::unit(n, i))] = Q::one();
        let r: Vec<XElement> = (0..n).map(|a| right_gen(hopf, &xi, a)).collect::<Result<_>>()?;
        for (col, (ii, a)) in unk.iter().enumerate() {
            let term = x_mul(&XElement::mono(ii.clone(), -Q::one(), v), &r[*a]);
            for (k, c) in term.iter() {
                rows[eq_pos(i, k)].push((col, c.clone()));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
    let s = solve(&rows, &rhs, unk.len()).ok_or_else(|| Error::SolveFailed("Euler system inconsistent".into()))?;
    Ok(from_solution(n, &unk, &s, v))
}

/// `γ(∂_i) ∈ W` with `[γ(∂_i), A] = ∂_i · A`, solved on the generating set
/// `x_J ⊗ ∂_m`, `|J| ≤ 2`. Exact modulo `W_{D-1}`.
pub fn gamma_solve(hopf: &Hopf, i: usize, d: usize) -> Result<AnnElement> {
    let n = hopf.n();
    if d < 3 {
        return Err(Error::SolveFailed(format!("truncation {d} is below 3")));
    }
    let v = d - 1;
    let unk = unknowns(n, v);
    let gens = w_spanning_set(n, 0, 2, d);
    let out_monos = monomials(n, d - 2);
    let block = n * out_monos.len();
    let idx = |a: usize, k: &MultiIndex| a * out_monos.len() + out_monos.iter().position(|e| e == k).unwrap();
    let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); gens.len() * block];
    let mut rhs = vec![Q::zero(); gens.len() * block];
    let mut di = vec![Q::zero(); n];
    di[i] = Q::one();
    for (s, g) in gens.iter().enumerate() {
        let target = d_act(hopf, &di, g)?.truncate(d - 2);
        for (a, k, c) in target.support() {
            rhs[s * block + idx(a, &k)] = c;
        }
        for (col, (ii, a)) in unk.iter().enumerate() {
            let br = ann_bracket(hopf, &AnnElement::mono(ii, *a, Q::one(), v), g)?.truncate(d - 2);
            for (b, k, c) in br.support() {
                rows[s * block + idx(b, &k)].push((col, c));
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_pairs).collect();
    let s = solve(&rows, &rhs, unk.len()).ok_or_else(|| Error::SolveFailed(format!("γ system for ∂_{} inconsistent", i + 1)))?;
    Ok(from_solution(n, &unk, &s, v))
}

/// `γ(∂_i) + 1⊗∂_i`, which must lie in `W_0` with class `ad ∂_i`.
pub fn gamma_shifted(hopf: &Hopf, i: usize, d: usize) -> Result<AnnElement> {
    let g = gamma_solve(hopf, i, d)?;
    let n = hopf.n();
    Ok(g.plus(&AnnElement::mono(&MultiIndex::zero(n), i, Q::one(), g.validity())))
}

/// Action of W on a module through its pseudoaction table:
/// `(x ⊗ a) · v = Σ_I ⟨x, S(∂^(I))⟩ v_I` where `(1⊗a) * v = Σ (∂^(I)⊗1) ⊗_H v_I`.
pub fn ann_action(hopf: &Hopf, table: &ActionTable, a: &AnnElement, v: &ModuleVector) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero(hopf.n(), table.rank);
    for (g, x) in a.comps.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let p = table.act_gen(hopf, g, v);
        for (i, vi) in p.coefficients() {
            let s = hopf.antipode(&HElement::mono(i, Q::one()));
            let c = pair(x, &s)?;
            if !c.is_zero() {
                out.add_scaled(&c, &vi);
            }
        }
    }
    Ok(out)
}

/// `x ⊗_H w` for `w = Σ h_b ⊗ ∂_b`: `Σ x h_b ⊗ ∂_b`.
pub fn x_tensor_w(hopf: &Hopf, x: &XElement, w: &WElement) -> Result<AnnElement> {
    let n = hopf.n();
    let comps = (0..n).map(|b| h_act_right(hopf, x, &w.component(b))).collect::<Result<Vec<_>>>()?;
    let v = comps.iter().map(|c| c.validity()).min().unwrap_or(0);
    Ok(AnnElement { comps: comps.into_iter().map(|c| c.truncate(v)).collect() })
}

/// `a * v = Σ_{|I| ≤ depth} (S(∂^(I)) ⊗ 1) ⊗_H ((x_I ⊗_H a) · v)`.
pub fn reconstruct_pseudoaction(
    hopf: &Hopf,
    table: &ActionTable,
    a: &WElement,
    v: &ModuleVector,
    depth: usize,
) -> Result<PseudoValue> {
    let n = hopf.n();
    let extra = a.degree().unwrap_or(0);
    let mut out = PseudoValue::zero(n, table.rank, Orient::Left);
    for i in monomials(n, depth) {
        let x = XElement::mono(i.clone(), Q::one(), depth + extra);
        let val = ann_action(hopf, table, &x_tensor_w(hopf, &x, a)?, v)?;
        if val.is_zero() {
            continue;
        }
        let s = hopf.antipode(&HElement::mono(i, Q::one()));
        out.push_raw_h(hopf, &s, &HElement::one(n), &val, &Q::one());
    }
    Ok(out)
}

/// `ι(x ⊗_H s)`
pub fn s_iota(hopf: &Hopf, x: &XElement, s: &WElement) -> Result<AnnElement> {
    x_tensor_w(hopf, x, s)
}

/// `Div^χ(Σ y_i ⊗ ∂_i) = Σ y_i (∂_i + χ(∂_i))`
pub fn ann_div(hopf: &Hopf, a: &AnnElement, chi: &TraceForm) -> Result<XElement> {
    let n = hopf.n();
    let mut out = XElement::zero(n, a.validity().saturating_sub(1));
    for (i, y) in a.comps.iter().enumerate() {
        let bar = HElement::gen(n, i).plus(&HElement::one(n).scaled(&chi.0[i]));
        out.add_scaled(&Q::one(), &h_act_right(hopf, y, &bar)?);
    }
    Ok(out)
}
