//! Constant-coefficient forms, the pseudo de Rham complex and its twists.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freemod::{FilBasis, HLinearMap, ModuleVector};
use crate::hopf::{monomials, rep_of, HElement, Hopf, MultiIndex};
use crate::liecore::{omega_rep, sort_with_sign, wedge_basis, DRep, LieData};
use crate::linalg::{Echelon, SparseVec};
use crate::matrix::{self, Mat};
use crate::modules::{build_tensor_w, intertwines, w_acting, ModuleSpec};
use crate::pseudoalg::{AxiomReport, WElement};
use crate::rational::{q, Q};
use crate::twosided::{Orient, PseudoValue};

/// An element of `Ωⁿ = Λⁿ d*` in the lexicographic wedge basis; the
/// coefficient of `x^T` is the value on `∂_{t_1} ∧ ⋯ ∧ ∂_{t_n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub dim: usize,
    pub degree: usize,
    pub coeffs: Vec<Q>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form { dim, degree, coeffs: vec![Q::zero(); wedge_basis(dim, degree).len()] }
    }

    /// `x^{t_1} ∧ ⋯ ∧ x^{t_n}` for an index list in any order.
    pub fn mono(dim: usize, idx: &[usize]) -> Self {
        let mut f = Form::zero(dim, idx.len());
        if let Some((sorted, sign)) = sort_with_sign(idx) {
            let pos = wedge_basis(dim, idx.len()).iter().position(|t| *t == sorted).unwrap();
            f.coeffs[pos] = q(sign);
        }
        f
    }

    /// `α(∂_{a_1} ∧ ⋯ ∧ ∂_{a_n})`
    pub fn eval(&self, args: &[usize]) -> Q {
        match sort_with_sign(args) {
            None => Q::zero(),
            Some((sorted, sign)) => {
                let pos = wedge_basis(self.dim, self.degree).iter().position(|t| *t == sorted).unwrap();
                &self.coeffs[pos] * q(sign)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

fn form_from_fn(dim: usize, degree: usize, f: impl Fn(&[usize]) -> Q) -> Form {
    Form { dim, degree, coeffs: wedge_basis(dim, degree).iter().map(|t| f(t)).collect() }
}

/// `(d₀α)(a_1,…,a_{n+1}) = Σ_{i<j} (−1)^{i+j} α([a_i,a_j], a_1,…,â_i,…,â_j,…)`.
pub fn d0(lie: &LieData, a: &Form) -> Result<Form> {
    let dim = lie.dim();
    if a.degree >= dim {
        return Err(Error::DegreeOutOfRange { degree: a.degree + 1, max: dim });
    }
    Ok(form_from_fn(dim, a.degree + 1, |t| {
        let mut s = Q::zero();
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, x)| *x).collect();
                let sign = if (i + j) % 2 == 0 { Q::one() } else { -Q::one() };
                for (k, c) in lie.bracket_basis(t[i], t[j]).iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![k];
                    args.extend(&rest);
                    s += &sign * c * a.eval(&args);
                }
            }
        }
        s
    }))
}

/// `(ι_{∂_i}α)(a_1,…) = α(∂_i, a_1,…)`.
pub fn iota(i: usize, a: &Form) -> Result<Form> {
    if a.degree == 0 {
        return Err(Error::DegreeOutOfRange { degree: 0, max: a.dim });
    }
    Ok(form_from_fn(a.dim, a.degree - 1, |t| {
        let mut args = vec![i];
        args.extend(t);
        a.eval(&args)
    }))
}

/// `x^k ∧ α`
pub fn wedge_coord(k: usize, a: &Form) -> Form {
    let mut out = Form::zero(a.dim, a.degree + 1);
    if a.degree >= a.dim {
        return out;
    }
    for (t, c) in wedge_basis(a.dim, a.degree).iter().zip(&a.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut idx = vec![k];
        idx.extend(t);
        let m = Form::mono(a.dim, &idx);
        for (o, x) in out.coeffs.iter_mut().zip(&m.coeffs) {
            *o += c * x;
        }
    }
    out
}

/// `(ad ∂_i)·α`, the coadjoint action through `gl d`.
pub fn coadjoint(lie: &LieData, i: usize, a: &Form) -> Result<Form> {
    let rep = omega_rep(lie.dim(), a.degree)?;
    Ok(Form { dim: a.dim, degree: a.degree, coeffs: matrix::apply(&rep.ad_of(lie, i), &a.coeffs) })
}

fn basis_forms(dim: usize, degree: usize) -> Vec<Form> {
    wedge_basis(dim, degree).iter().map(|t| Form::mono(dim, t)).collect()
}

/// `T(Π, Ωⁿ)` with generator index `p · dim Ωⁿ + t`.
pub fn twisted_forms(hopf: &Hopf, pi: &DRep, n: usize) -> Result<ModuleSpec> {
    let mut m = build_tensor_w(hopf, pi, &omega_rep(hopf.n(), n)?)?;
    m.name = format!("T(Π,Ω^{n})");
    Ok(m)
}

fn push_form(v: &mut ModuleVector, h: &MultiIndex, p: usize, f: &Form, c: &Q) {
    let w = f.coeffs.len();
    for (t, x) in f.coeffs.iter().enumerate() {
        if !x.is_zero() {
            v.add_term(h.clone(), p * w + t, c * x);
        }
    }
}

/// `d_Π: T(Π,Ωⁿ) → T(Π,Ω^{n+1})`,
/// `1⊗u⊗α ↦ 1⊗u⊗d₀α − Σ_k ∂_k⊗u⊗x^k∧α + Σ_k 1⊗∂_k u⊗x^k∧α`.
pub fn pseudo_d(hopf: &Hopf, pi: &DRep, n: usize) -> Result<HLinearMap> {
    let dim = hopf.n();
    if n >= dim {
        return Err(Error::DegreeOutOfRange { degree: n + 1, max: dim });
    }
    let src = basis_forms(dim, n);
    let dst_w = wedge_basis(dim, n + 1).len();
    let m = pi.dim;
    let z = MultiIndex::zero(dim);
    let mut images = Vec::with_capacity(m * src.len());
    for p in 0..m {
        for a in &src {
            let mut v = ModuleVector::zero(dim, m * dst_w);
            push_form(&mut v, &z, p, &d0(hopf.lie(), a)?, &Q::one());
            for k in 0..dim {
                let wk = wedge_coord(k, a);
                push_form(&mut v, &MultiIndex::unit(dim, k), p, &wk, &-Q::one());
                for (pp, line) in pi.mats[k].iter().enumerate() {
                    if !line[p].is_zero() {
                        push_form(&mut v, &z, pp, &wk, &line[p]);
                    }
                }
            }
            images.push(v);
        }
    }
    Ok(HLinearMap::new(images, m * dst_w))
}

/// `1⊗u⊗α ↦ 1⊗u⊗ι_{∂_i}α`, extended H-linearly.
pub fn iota_map(dim: usize, pi_dim: usize, n: usize, i: usize) -> Result<HLinearMap> {
    let src = basis_forms(dim, n);
    let dst_w = wedge_basis(dim, n - 1).len();
    let z = MultiIndex::zero(dim);
    let mut images = Vec::new();
    for p in 0..pi_dim {
        for a in &src {
            let mut v = ModuleVector::zero(dim, pi_dim * dst_w);
            push_form(&mut v, &z, p, &iota(i, a)?, &Q::one());
            images.push(v);
        }
    }
    Ok(HLinearMap::new(images, pi_dim * dst_w))
}

/// `d_Π ∘ d_Π = 0` on all generators, hence everywhere.
pub fn check_d_squared(hopf: &Hopf, pi: &DRep) -> Result<AxiomReport> {
    let dim = hopf.n();
    let mut rep = AxiomReport::default();
    for n in 0..dim.saturating_sub(1) {
        let dd = pseudo_d(hopf, pi, n + 1)?.compose(hopf, &pseudo_d(hopf, pi, n)?);
        rep.checked += dd.images.len();
        for (k, img) in dd.images.iter().enumerate() {
            if !img.is_zero() {
                rep.failures.push(format!("d∘d ≠ 0 on generator {} of degree {n}", k + 1));
            }
        }
    }
    Ok(rep)
}

/// `d_Π(1⊗u⊗ι_{∂_i}α) = Σ_k ∂_k⊗u⊗e_i^k α − Σ_k 1⊗∂_k u⊗e_i^k α
///   − Σ_{j, k<l} c_{kl}^j 1⊗u⊗e_j^l(e_i^k α) − Σ_{k<l} c_{kl}^k 1⊗u⊗e_i^l α`.
pub fn check_ldw(hopf: &Hopf, pi: &DRep) -> Result<AxiomReport> {
    ldw_report(hopf, pi, false)
}

/// The same identity with the quadratic term read as `e_i^k(e_j^l α)`.
pub fn check_ldw_literal(hopf: &Hopf, pi: &DRep) -> Result<AxiomReport> {
    ldw_report(hopf, pi, true)
}

fn ldw_report(hopf: &Hopf, pi: &DRep, literal_order: bool) -> Result<AxiomReport> {
    let dim = hopf.n();
    let lie = hopf.lie();
    let m = pi.dim;
    let z = MultiIndex::zero(dim);
    let mut rep = AxiomReport::default();
    for n in 1..=dim {
        let gl = omega_rep(dim, n)?;
        let w = wedge_basis(dim, n).len();
        let d = pseudo_d(hopf, pi, n - 1)?;
        for i in 0..dim {
            let io = iota_map(dim, m, n, i)?;
            let lhs = d.compose(hopf, &io);
            for p in 0..m {
                for (t, a) in basis_forms(dim, n).iter().enumerate() {
                    rep.checked += 1;
                    let act = |e: &Mat, f: &[Q]| matrix::apply(e, f);
                    let mut rhs = ModuleVector::zero(dim, m * w);
                    for k in 0..dim {
                        let eka = Form { dim, degree: n, coeffs: act(gl.e(i, k), &a.coeffs) };
                        push_form(&mut rhs, &MultiIndex::unit(dim, k), p, &eka, &Q::one());
                        for (pp, line) in pi.mats[k].iter().enumerate() {
                            if !line[p].is_zero() {
                                push_form(&mut rhs, &z, pp, &eka, &-line[p].clone());
                            }
                        }
                    }
                    for k in 0..dim {
                        for l in k + 1..dim {
                            for j in 0..dim {
                                let c = lie.c(k, l, j);
                                if c.is_zero() {
                                    continue;
                                }
                                let f = if literal_order {
                                    act(gl.e(i, k), &act(gl.e(j, l), &a.coeffs))
                                } else {
                                    act(gl.e(j, l), &act(gl.e(i, k), &a.coeffs))
                                };
                                push_form(&mut rhs, &z, p, &Form { dim, degree: n, coeffs: f }, &-c.clone());
                            }
                            let c = lie.c(k, l, k);
                            if !c.is_zero() {
                                let f = act(gl.e(i, l), &a.coeffs);
                                push_form(&mut rhs, &z, p, &Form { dim, degree: n, coeffs: f }, &-c.clone());
                            }
                        }
                    }
                    if lhs.images[p * w + t] != rhs {
                        rep.failures.push(format!("differential identity fails for i = {}, degree {n}, generator {}", i + 1, p * w + t + 1));
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `w * γ` on `Ωⁿ(d)` built from contraction and `d`:
/// `w*γ = ((id⊗id)⊗d)(w *_ι γ) + w *_ι dγ`, `(f⊗a) *_ι (g⊗α) = (f⊗g)⊗ι_aα`.
pub fn star_action(hopf: &Hopf, w: &WElement, n: usize, gamma: &ModuleVector) -> Result<PseudoValue> {
    let dim = hopf.n();
    let triv = DRep::trivial(hopf.lie(), 1);
    let rank = wedge_basis(dim, n).len();
    let mut out = PseudoValue::zero(dim, rank, Orient::Left);
    let contract = |src_n: usize, a: usize, v: &ModuleVector| -> Result<ModuleVector> {
        if src_n == 0 {
            return Ok(ModuleVector::zero(dim, 1));
        }
        Ok(iota_map(dim, 1, src_n, a)?.apply(hopf, v))
    };
    let dg = if n < dim { Some(pseudo_d(hopf, &triv, n)?.apply(hopf, gamma)) } else { None };
    let d_lower = if n >= 1 { Some(pseudo_d(hopf, &triv, n - 1)?) } else { None };
    for ((f, a), c) in w.iter() {
        let fh = HElement::mono(f.clone(), c.clone());
        for ((g, t), x) in gamma.iter() {
            if let Some(d) = &d_lower {
                let inner = d.apply(hopf, &contract(n, *a, &ModuleVector::gen(dim, rank, *t))?);
                out.push_raw_h(hopf, &fh, &HElement::mono(g.clone(), x.clone()), &inner, &Q::one());
            }
        }
        if let Some(dg) = &dg {
            for ((g, t), x) in dg.iter() {
                let inner = contract(n + 1, *a, &ModuleVector::gen(dim, wedge_basis(dim, n + 1).len(), *t))?;
                out.push_raw_h(hopf, &fh, &HElement::mono(g.clone(), x.clone()), &inner, &Q::one());
            }
        }
    }
    Ok(out)
}

/// The Cartan-built action agrees with the tensor-module table on every
/// generator pair, for all `n`.
pub fn check_star_action(hopf: &Hopf) -> Result<AxiomReport> {
    let dim = hopf.n();
    let mut rep = AxiomReport::default();
    let triv = DRep::trivial(hopf.lie(), 1);
    for n in 0..=dim {
        let t = twisted_forms(hopf, &triv, n)?;
        for a in 0..dim {
            for k in 0..t.rank() {
                rep.checked += 1;
                let lhs = star_action(hopf, &crate::pseudoalg::w_gen(dim, a), n, &t.gen(k))?;
                if !lhs.same_element(hopf, t.table.entry(a, k)) {
                    rep.failures.push(format!("star action differs from tensor table at ∂_{}, degree {n}, generator {}", a + 1, k + 1));
                }
            }
        }
    }
    Ok(rep)
}

/// `d_Π` is a homomorphism of W(d)-modules in every degree.
pub fn check_d_intertwines(hopf: &Hopf, pi: &DRep) -> Result<AxiomReport> {
    let dim = hopf.n();
    let mut rep = AxiomReport::default();
    let acting = w_acting(dim);
    for n in 0..dim {
        rep.checked += 1;
        let src = twisted_forms(hopf, pi, n)?;
        let dst = twisted_forms(hopf, pi, n + 1)?;
        if !intertwines(hopf, &acting, &src, &dst, &pseudo_d(hopf, pi, n)?) {
            rep.failures.push(format!("d is not a homomorphism in degree {n}"));
        }
    }
    Ok(rep)
}

/// `F(h⊗u) = h_(1) ⊗ S(h_(2))u`
pub fn f_map(hopf: &Hopf, pi: &DRep, v: &ModuleVector) -> ModuleVector {
    twist_coeffs(hopf, pi, v, true)
}

/// `F⁻¹(h⊗u) = h_(1) ⊗ h_(2)u`
pub fn f_inverse(hopf: &Hopf, pi: &DRep, v: &ModuleVector) -> ModuleVector {
    twist_coeffs(hopf, pi, v, false)
}

fn twist_coeffs(hopf: &Hopf, pi: &DRep, v: &ModuleVector, antipode: bool) -> ModuleVector {
    let mut out = ModuleVector::zero(v.n(), pi.dim);
    for ((i, p), c) in v.iter() {
        for (i1, i2) in i.splits() {
            let h = HElement::mono(i2, Q::one());
            let h = if antipode { hopf.antipode(&h) } else { h };
            let m = rep_of(&pi.mats, pi.dim, &h);
            for (pp, line) in m.iter().enumerate() {
                if !line[*p].is_zero() {
                    out.add_term(i1.clone(), pp, c * &line[*p]);
                }
            }
        }
    }
    out
}

/// `F` carries `a·(h⊗u) = −ha⊗u` to `a·(h⊗u) = −ha⊗u + h⊗au`, checked on
/// every basis vector of `fil^pmax (H⊗Π)`, together with `F⁻¹F = id`.
pub fn check_f_conjugacy(hopf: &Hopf, pi: &DRep, pmax: usize) -> AxiomReport {
    let dim = hopf.n();
    let mut rep = AxiomReport::default();
    let fil = FilBasis::new(dim, pi.dim, pmax);
    for col in 0..fil.len() {
        let b = fil.vector(col);
        rep.checked += 1;
        if f_inverse(hopf, pi, &f_map(hopf, pi, &b)) != b {
            rep.failures.push(format!("F is not inverted on {:?}", fil.keys()[col]));
        }
        for a in 0..dim {
            rep.checked += 1;
            let lhs = f_map(hopf, pi, &right_mul(hopf, &b, a).scaled(&-Q::one()));
            let fb = f_map(hopf, pi, &b);
            let rhs = right_mul(hopf, &fb, a).scaled(&-Q::one()).plus(&fb.map_coefficients(&pi.mats[a]));
            if lhs != rhs {
                rep.failures.push(format!("F does not intertwine ∂_{} on {:?}", a + 1, fil.keys()[col]));
            }
        }
    }
    rep
}

fn right_mul(hopf: &Hopf, v: &ModuleVector, a: usize) -> ModuleVector {
    let n = v.n();
    let mut out = ModuleVector::zero(n, v.rank());
    for ((i, r), c) in v.iter() {
        for (t, d) in hopf.mul_mono(i, &MultiIndex::unit(n, a)).iter() {
            out.add_term(t.clone(), *r, c * d);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessEntry {
    pub degree: usize,
    pub fil: usize,
    pub ker_dim: usize,
    pub image_dim: usize,
    pub fil_dim: usize,
    pub expected: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub pi_dim: usize,
    pub entries: Vec<ExactnessEntry>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// `dim` and `rank` of `d_Π` restricted to `fil^p T(Π,Ωⁿ)`.
fn restricted_rank(hopf: &Hopf, d: &HLinearMap, n_src_rank: usize, p: usize) -> (usize, usize) {
    let dim = hopf.n();
    let src = FilBasis::new(dim, n_src_rank, p);
    let dst = FilBasis::new(dim, d.dst_rank, p + 1);
    let mut e = Echelon::new();
    for col in 0..src.len() {
        let img = d.apply(hopf, &src.vector(col));
        e.insert(dst.coords(&img).expect("d raises filtration degree by one"));
    }
    (src.len(), e.rank())
}

/// Filtration-local exactness of the twisted complex for `p ≤ pstar`.
pub fn exactness_report(hopf: &Hopf, pi: &DRep, pstar: usize) -> Result<ExactnessReport> {
    let dim = hopf.n();
    let m = pi.dim;
    let ranks_of = |n: usize| m * wedge_basis(dim, n).len();
    // rank[n][p] = rank of d_Π on fil^p T^n (n < N)
    let mut rank = vec![vec![0usize; pstar + 1]; dim];
    for (n, row) in rank.iter_mut().enumerate() {
        let d = pseudo_d(hopf, pi, n)?;
        for (p, slot) in row.iter_mut().enumerate() {
            *slot = restricted_rank(hopf, &d, ranks_of(n), p).1;
        }
    }
    let mut entries = Vec::new();
    for n in 0..=dim {
        for p in 0..=pstar {
            let fil_dim = monomials(dim, p).len() * ranks_of(n);
            let ker = if n < dim { fil_dim - rank[n][p] } else { fil_dim };
            let image = if n == 0 || p == 0 { 0 } else { rank[n - 1][p - 1] };
            let (expected, passed) = if n == 0 {
                ("ker = 0".to_string(), ker == 0)
            } else if n < dim {
                ("ker ∩ fil^p = d(fil^{p-1})".to_string(), ker == image)
            } else if p == 0 {
                ("no image in fil^0".to_string(), image == 0)
            } else {
                (format!("cokernel = {m}"), fil_dim - image == m)
            };
            entries.push(ExactnessEntry { degree: n, fil: p, ker_dim: ker, image_dim: image, fil_dim, expected, passed });
        }
    }
    Ok(ExactnessReport { pi_dim: m, entries })
}

/// `d_Π(fil⁰ T(Π,Ω^{n-1}))`: images of the generators.
pub fn d_of_generators(hopf: &Hopf, pi: &DRep, n: usize) -> Result<Vec<ModuleVector>> {
    Ok(pseudo_d(hopf, pi, n - 1)?.images)
}

/// Coordinates of a random element of `fil^p` for `d∘d` spot checks.
pub fn random_element(dim: usize, rank: usize, p: usize, seed: u64) -> ModuleVector {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let fil = FilBasis::new(dim, rank, p);
    let mut v = ModuleVector::zero(dim, rank);
    for col in 0..fil.len() {
        if rng.gen_bool(0.5) {
            v.add_scaled(&q(rng.gen_range(-4i64..=4)), &fil.vector(col));
        }
    }
    v
}

/// Rank of a family of vectors inside `fil^p`.
pub fn span_rank(vs: &[ModuleVector], p: usize) -> usize {
    let Some(first) = vs.first() else { return 0 };
    let fil = FilBasis::new(first.n(), first.rank(), p);
    let rows: Vec<SparseVec> = vs.iter().filter_map(|v| fil.coords(v)).collect();
    crate::linalg::rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::presets;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn d0_examples() {
        let ab = presets::abelian(3);
        for n in 0..3 {
            for a in basis_forms(3, n) {
                assert!(d0(&ab, &a).unwrap().is_zero());
            }
        }
        let sl2 = presets::sl2();
        let dh = d0(&sl2, &Form::mono(3, &[1])).unwrap();
        assert_eq!(dh.eval(&[0, 2]), q(-1));
        assert_eq!(iota(0, &Form::mono(2, &[0, 1])).unwrap(), Form::mono(2, &[1]));
        assert!(matches!(iota(0, &Form::zero(2, 0)), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn d0_squares_to_zero_and_cartan() {
        for lie in presets::all() {
            let n = lie.dim();
            for deg in 0..n {
                for a in basis_forms(n, deg) {
                    let da = d0(&lie, &a).unwrap();
                    if deg + 1 < n {
                        assert!(d0(&lie, &da).unwrap().is_zero(), "{}", lie.name);
                    }
                    if deg >= 1 {
                        for i in 0..n {
                            let lhs = coadjoint(&lie, i, &a).unwrap();
                            let mut rhs = d0(&lie, &iota(i, &a).unwrap()).unwrap();
                            let other = iota(i, &da).unwrap();
                            for (x, y) in rhs.coeffs.iter_mut().zip(&other.coeffs) {
                                *x += y;
                            }
                            assert_eq!(lhs, rhs, "{} i={i}", lie.name);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d_of_one_abelian2() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let d = pseudo_d(&h, &DRep::trivial(&lie, 1), 0).unwrap();
        let mut expect = ModuleVector::zero(2, 2);
        expect.add_term(mi(&[1, 0]), 0, -Q::one());
        expect.add_term(mi(&[0, 1]), 1, -Q::one());
        assert_eq!(d.images[0], expect);
    }

    #[test]
    fn d_squared_on_random_elements() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            let triv = DRep::trivial(&lie, 1);
            let d0m = pseudo_d(&h, &triv, 0).unwrap();
            if lie.dim() >= 2 {
                let d1m = pseudo_d(&h, &triv, 1).unwrap();
                let g = random_element(lie.dim(), 1, 4, 11);
                assert!(d1m.apply(&h, &d0m.apply(&h, &g)).is_zero(), "{}", lie.name);
            }
            assert!(check_d_squared(&h, &DRep::adjoint(&lie)).unwrap().passed());
        }
    }

    #[test]
    fn ldw_identities() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            for pi in [DRep::trivial(&lie, 1), DRep::adjoint(&lie)] {
                let r = check_ldw(&h, &pi).unwrap();
                assert!(r.passed(), "{} {:?}", lie.name, r.failures);
            }
        }
    }

    #[test]
    fn literal_operator_order_fails_off_abelian() {
        let lie = presets::heis3();
        let h = Hopf::new(lie.clone());
        assert!(!check_ldw_literal(&h, &DRep::trivial(&lie, 1)).unwrap().passed());
        let ab = presets::abelian(3);
        let h = Hopf::new(ab.clone());
        assert!(check_ldw_literal(&h, &DRep::trivial(&ab, 1)).unwrap().passed());
    }

    #[test]
    fn star_action_matches_table() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            let r = check_star_action(&h).unwrap();
            assert!(r.passed(), "{} {:?}", lie.name, r.failures);
        }
    }

    #[test]
    fn d_is_homomorphism() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            assert!(check_d_intertwines(&h, &DRep::trivial(&lie, 1)).unwrap().passed(), "{}", lie.name);
            let nil = DRep::nil2(&lie);
            if nil.validate(&lie).is_ok() {
                assert!(check_d_intertwines(&h, &nil).unwrap().passed(), "{}", lie.name);
            }
        }
    }

    #[test]
    fn f_conjugacy() {
        for lie in [presets::solv2(), presets::heis3()] {
            let h = Hopf::new(lie.clone());
            let r = check_f_conjugacy(&h, &DRep::adjoint(&lie), 3);
            assert!(r.passed(), "{} {:?}", lie.name, r.failures);
        }
    }

    #[test]
    fn exactness_abelian2() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let r = exactness_report(&h, &DRep::trivial(&lie, 1), 4).unwrap();
        assert!(r.passed(), "{:?}", r.entries.iter().filter(|e| !e.passed).collect::<Vec<_>>());
    }

    #[test]
    fn exactness_solv2_character() {
        let lie = presets::solv2();
        let h = Hopf::new(lie.clone());
        let r = exactness_report(&h, &DRep::character(&lie.tr_ad()), 3).unwrap();
        assert!(r.passed(), "{:?}", r.entries.iter().filter(|e| !e.passed).collect::<Vec<_>>());
    }
}
