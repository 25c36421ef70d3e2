//! Free H-modules with W(d) and S(d,χ) pseudoactions: tensor modules, V(R),
//! duals, twists, singular vectors, submodule closure and intertwiners.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::annih::{ann_action, s_iota, w_spanning_set, AnnElement};
use crate::dualx::{pair, XElement};
use crate::error::{Error, Result};
use crate::freemod::{FilBasis, HLinearMap, ModuleVector};
use crate::hopf::{monomials, rep_of, HElement, Hopf, MultiIndex};
use crate::liecore::{omega_rep, DRep, GlRep, TraceForm};
use crate::linalg::{intersect_with_tail, nullspace, solve, Echelon, SparseVec};
use crate::matrix::{self, Mat};
use crate::pseudoalg::{check_module, s_generators, w_gen, w_table, AxiomReport, WElement};
use crate::rational::{fmt_q, q, Q};
use crate::twosided::{ActionTable, Orient, PseudoValue};

/// A free module `H ⊗ R` with a W(d)-pseudoaction on the generators `1 ⊗ u_k`.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    pub name: String,
    pub table: ActionTable,
    pub rho_d: Option<Vec<Mat>>,
    pub rho_gl: Option<GlRep>,
}

impl ModuleSpec {
    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn rank(&self) -> usize {
        self.table.rank
    }

    pub fn gen(&self, k: usize) -> ModuleVector {
        ModuleVector::gen(self.n(), self.rank(), k)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "rank": self.rank(),
            "table": self.table.entries.iter().map(|row| row.iter().map(|p| p.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

fn mats_json(ms: &[Mat]) -> Value {
    Value::Array(ms.iter().map(|m| json!(m.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())).collect())
}

/// Basis vectors of a module as JSON coefficient lists.
pub fn basis_json(vs: &[ModuleVector]) -> Value {
    Value::Array(vs.iter().map(|v| v.to_json()).collect())
}

/// Action table of the tensor module on `H ⊗ R` for a `(d ⊕ gl d)`-module R:
/// `(1⊗∂_i)*(1⊗w) = (1⊗1)⊗(ad ∂_i)w + Σ_j (∂_j⊗1)⊗e_i^j w − (1⊗∂_i)⊗w + (1⊗1)⊗∂_i w`.
pub fn tensor_table(hopf: &Hopf, rho_d: &[Mat], rho_gl: &GlRep) -> ActionTable {
    let n = hopf.n();
    let dim = rho_gl.dim;
    let z = MultiIndex::zero(n);
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let inner = matrix::add(&rho_gl.ad_of(hopf.lie(), i), &rho_d[i]);
        let row = (0..dim)
            .map(|k| {
                let mut p = PseudoValue::zero(n, dim, Orient::Left);
                for (r, line) in inner.iter().enumerate() {
                    p.add_normal(z.clone(), z.clone(), r, line[k].clone());
                }
                for j in 0..n {
                    let e = rho_gl.e(i, j);
                    for (r, line) in e.iter().enumerate() {
                        p.add_normal(MultiIndex::unit(n, j), z.clone(), r, line[k].clone());
                    }
                }
                p.push_raw(hopf, &z, &MultiIndex::unit(n, i), &z, k, &-Q::one());
                p
            })
            .collect();
        entries.push(row);
    }
    ActionTable::new(n, n, dim, entries)
}

/// `R = Π ⊗ U` as a `(d ⊕ gl d)`-module, index `p · dim U + u`.
pub fn product_rep(pi: &DRep, u: &GlRep) -> (Vec<Mat>, GlRep) {
    let ip = matrix::identity(pi.dim);
    let iu = matrix::identity(u.dim);
    let rd = pi.mats.iter().map(|m| matrix::kron(m, &iu)).collect();
    let rg = GlRep {
        dim: pi.dim * u.dim,
        n: u.n,
        mats: u.mats.iter().map(|m| matrix::kron(&ip, m)).collect(),
        id_scalar: u.id_scalar.clone(),
    };
    (rd, rg)
}

fn check_pair(hopf: &Hopf, pi: &DRep, u: &GlRep) -> Result<()> {
    pi.validate(hopf.lie())?;
    u.validate()?;
    if u.n != hopf.n() {
        return Err(Error::RepInvalid(format!("gl rep is for N = {}, algebra has N = {}", u.n, hopf.n())));
    }
    Ok(())
}

/// Tensor module `T(Π, U)`.
pub fn build_tensor_w(hopf: &Hopf, pi: &DRep, u: &GlRep) -> Result<ModuleSpec> {
    check_pair(hopf, pi, u)?;
    let (rd, rg) = product_rep(pi, u);
    Ok(ModuleSpec { name: "T(Π,U)".into(), table: tensor_table(hopf, &rd, &rg), rho_d: Some(rd), rho_gl: Some(rg) })
}

/// `V(Π ⊠ U) = T(Π ⊗ k_{tr ad}, U ⊗ k_{-tr})`.
pub fn build_vr(hopf: &Hopf, pi: &DRep, u: &GlRep) -> Result<ModuleSpec> {
    check_pair(hopf, pi, u)?;
    let mut m = build_tensor_w(hopf, &pi.twist_by(&hopf.lie().tr_ad()), &u.shift_trace(&-Q::one()))?;
    m.name = "V(R)".into();
    Ok(m)
}

/// `V(R)` written directly in terms of R:
/// `Σ_j (∂_j⊗1)⊗e_i^j u − (1⊗1)⊗∂_i u + (1⊗1)⊗(∂_i + ad ∂_i)u`, where the middle
/// `∂_i` acts on H and the last on R.
pub fn vr_direct_table(hopf: &Hopf, rho_d: &[Mat], rho_gl: &GlRep) -> ActionTable {
    let n = hopf.n();
    let dim = rho_gl.dim;
    let z = MultiIndex::zero(n);
    let entries = (0..n)
        .map(|i| {
            let inner = matrix::add(&rho_d[i], &rho_gl.ad_of(hopf.lie(), i));
            (0..dim)
                .map(|k| {
                    let mut p = PseudoValue::zero(n, dim, Orient::Left);
                    for j in 0..n {
                        for (r, line) in rho_gl.e(i, j).iter().enumerate() {
                            p.add_normal(MultiIndex::unit(n, j), z.clone(), r, line[k].clone());
                        }
                    }
                    p.add_normal(z.clone(), MultiIndex::unit(n, i), k, -Q::one());
                    for (r, line) in inner.iter().enumerate() {
                        p.add_normal(z.clone(), z.clone(), r, line[k].clone());
                    }
                    p
                })
                .collect()
        })
        .collect();
    ActionTable::new(n, n, dim, entries)
}

/// `f ⊗ g` pieces of a table entry: `(∂^(I)⊗1)⊗(∂^(K)⊗u) = Σ (∂^(I)∂^(K1) ⊗ ∂^(K2))⊗(1⊗u)`.
fn raw_pieces(hopf: &Hopf, p: &PseudoValue) -> Vec<(HElement, MultiIndex, usize, Q)> {
    let p = p.to_left(hopf);
    let mut out = Vec::new();
    for ((i, k, r), c) in p.iter() {
        for (k1, k2) in k.splits() {
            out.push((hopf.mono_product(i, &k1), k2, *r, c.clone()));
        }
    }
    out
}

/// Dual module `D(V) = H ⊗ V₀*` with
/// `a*(1⊗ψ_k) = −Σ_j (f_jk S(g_jk(1)) ⊗ S(g_jk(2)))⊗(1⊗ψ_j)`.
pub fn build_dual(hopf: &Hopf, v: &ModuleSpec) -> ModuleSpec {
    let n = v.n();
    let s = v.rank();
    let mut entries = vec![vec![PseudoValue::zero(n, s, Orient::Left); s]; v.table.gens];
    for (a, row) in entries.iter_mut().enumerate() {
        for j in 0..s {
            for (f, g, k, c) in raw_pieces(hopf, v.table.entry(a, j)) {
                for (g1, g2) in g.splits() {
                    let left = hopf.mul(&f, &hopf.antipode(&HElement::mono(g1, Q::one())));
                    let right = hopf.antipode(&HElement::mono(g2, Q::one()));
                    row[k].push_raw_h(hopf, &left, &right, &ModuleVector::gen(n, s, j), &-c.clone());
                }
            }
        }
    }
    ModuleSpec { name: format!("D({})", v.name), table: ActionTable::new(n, v.table.gens, s, entries), rho_d: None, rho_gl: None }
}

/// Twist `T_Π(V) = H ⊗ Π ⊗ V₀`, generator index `p · rank V + i`, with
/// `a*(1⊗u⊗v_i) = Σ_j (f ⊗ g_(1))⊗(1 ⊗ S(g_(2))u ⊗ v_j)`.
pub fn build_twist(hopf: &Hopf, pi: &DRep, v: &ModuleSpec) -> ModuleSpec {
    let n = v.n();
    let s = v.rank();
    let m = pi.dim;
    let z = MultiIndex::zero(n);
    let mut entries = vec![vec![PseudoValue::zero(n, m * s, Orient::Left); m * s]; v.table.gens];
    for (a, row) in entries.iter_mut().enumerate() {
        for i in 0..s {
            for (f, g, k, c) in raw_pieces(hopf, v.table.entry(a, i)) {
                for (g1, g2) in g.splits() {
                    let rs = rep_of(&pi.mats, m, &hopf.antipode(&HElement::mono(g2, Q::one())));
                    for p in 0..m {
                        for (pp, line) in rs.iter().enumerate() {
                            if line[p].is_zero() {
                                continue;
                            }
                            for (fi, fc) in f.iter() {
                                row[p * s + i].push_raw(hopf, fi, &g1, &z, pp * s + k, &(&c * fc * &line[p]));
                            }
                        }
                    }
                }
            }
        }
    }
    let rho = match (&v.rho_d, &v.rho_gl) {
        (Some(rd), Some(rg)) => {
            let ip = matrix::identity(m);
            let is = matrix::identity(s);
            let rd2 = (0..n).map(|i| matrix::add(&matrix::kron(&pi.mats[i], &is), &matrix::kron(&ip, &rd[i]))).collect();
            let rg2 = GlRep { dim: m * s, n, mats: rg.mats.iter().map(|e| matrix::kron(&ip, e)).collect(), id_scalar: rg.id_scalar.clone() };
            (Some(rd2), Some(rg2))
        }
        _ => (None, None),
    };
    ModuleSpec {
        name: format!("T_Π({})", v.name),
        table: ActionTable::new(n, v.table.gens, m * s, entries),
        rho_d: rho.0,
        rho_gl: rho.1,
    }
}

/// `D(β): D(V′) → D(V)` for `β: V → V′`, `β(1⊗v_j) = Σ_k h_jk ⊗ v′_k`:
/// `1⊗ψ′_k ↦ Σ_j S(h_jk) ⊗ ψ_j`.
pub fn dual_map(hopf: &Hopf, beta: &HLinearMap) -> HLinearMap {
    let n = beta.images.first().map(|v| v.n()).unwrap_or(0);
    let mut images = vec![ModuleVector::zero(n, beta.src_rank); beta.dst_rank];
    for (j, img) in beta.images.iter().enumerate() {
        for (k, out) in images.iter_mut().enumerate() {
            let h = hopf.antipode(&img.component(k));
            out.add_scaled(&Q::one(), &ModuleVector::from_h(&h, beta.src_rank, j));
        }
    }
    HLinearMap::new(images, beta.src_rank)
}

/// `T_Π(β)(1⊗u⊗v_i) = Σ_j h_ij(1) ⊗ S(h_ij(2))u ⊗ v′_j`.
pub fn twist_map(hopf: &Hopf, pi: &DRep, beta: &HLinearMap) -> HLinearMap {
    let m = pi.dim;
    let (s, t) = (beta.src_rank, beta.dst_rank);
    let n = beta.images.first().map(|v| v.n()).unwrap_or(0);
    let mut images = vec![ModuleVector::zero(n, m * t); m * s];
    for (i, img) in beta.images.iter().enumerate() {
        for ((kk, j), c) in img.iter() {
            for (k1, k2) in kk.splits() {
                let rs = rep_of(&pi.mats, m, &hopf.antipode(&HElement::mono(k2, Q::one())));
                for p in 0..m {
                    for (pp, line) in rs.iter().enumerate() {
                        if !line[p].is_zero() {
                            images[p * s + i].add_term(k1.clone(), pp * t + j, c * &line[p]);
                        }
                    }
                }
            }
        }
    }
    HLinearMap::new(images, m * t)
}

/// Module axiom for W(d) on every `(∂_i, ∂_j, generator)` triple.
pub fn check_module_axiom(hopf: &Hopf, v: &ModuleSpec) -> AxiomReport {
    check_module(hopf, &w_table(hopf), &v.table)
}

/// The W(d) generators `1 ⊗ ∂_i`.
pub fn w_acting(n: usize) -> Vec<WElement> {
    (0..n).map(|i| w_gen(n, i)).collect()
}

/// The S(d,χ) generators `s_ab`.
pub fn s_acting(hopf: &Hopf, chi: &TraceForm) -> Result<Vec<WElement>> {
    Ok(s_generators(hopf, chi)?.into_iter().map(|s| s.w).collect())
}

/// Whether `β` intertwines the actions of `acting` on the generators of `src`.
pub fn intertwines(hopf: &Hopf, acting: &[WElement], src: &ModuleSpec, dst: &ModuleSpec, beta: &HLinearMap) -> bool {
    acting.iter().all(|a| {
        (0..src.rank()).all(|k| {
            let lhs = src.table.act(hopf, a, &src.gen(k)).map_coefficients(hopf, beta);
            let rhs = dst.table.act(hopf, a, &beta.images[k]);
            lhs.same_element(hopf, &rhs)
        })
    })
}

/// `s(∂_l, u) = Σ_j ∂_j ⊗ e_l^j u`.
pub fn s_of(n: usize, l: usize, u: &[Q], rg: &GlRep) -> ModuleVector {
    let mut out = ModuleVector::zero(n, rg.dim);
    for j in 0..n {
        let w = matrix::apply(rg.e(l, j), u);
        for (r, c) in w.into_iter().enumerate() {
            out.add_term(MultiIndex::unit(n, j), r, c);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum R0Verdict {
    Full,
    Zero,
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct R0Report {
    pub dim: usize,
    pub r0_dim: usize,
    pub verdict: R0Verdict,
    /// `Some(n)` if the rep literally equals the `Ωⁿ` matrices.
    pub omega_degree: Option<usize>,
    /// Whether the verdict agrees with "R₀ = R iff U ≅ Ωⁿ".
    pub consistent: bool,
}

/// Joint kernel of `(e_i^j + δ_i^j) e_l^k + (e_i^k + δ_i^k) e_l^j` over all indices.
pub fn r0_test(u: &GlRep) -> R0Report {
    let n = u.n;
    let dim = u.dim;
    let id = matrix::identity(dim);
    let shifted = |i: usize, j: usize| if i == j { matrix::add(u.e(i, j), &id) } else { u.e(i, j).clone() };
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let m = matrix::add(&matrix::mul(&shifted(i, j), u.e(l, k)), &matrix::mul(&shifted(i, k), u.e(l, j)));
                    rows.extend(m.iter().map(|r| SparseVec::from_dense(r)));
                }
            }
        }
    }
    let r0_dim = nullspace(&rows, dim).len();
    let verdict = if r0_dim == dim {
        R0Verdict::Full
    } else if r0_dim == 0 {
        R0Verdict::Zero
    } else {
        R0Verdict::Partial
    };
    let omega_degree = (0..=n).find(|&k| omega_rep(n, k).map(|o| o.mats == u.mats).unwrap_or(false));
    let consistent = match verdict {
        R0Verdict::Full => omega_degree.is_some() || dim == 0,
        R0Verdict::Zero => omega_degree.is_none(),
        R0Verdict::Partial => false,
    };
    R0Report { dim, r0_dim, verdict, omega_degree, consistent }
}

/// A singular-vector space together with its cross-check.
#[derive(Clone, Debug)]
pub struct SingSpace {
    pub fil: usize,
    pub basis: Vec<ModuleVector>,
    /// Dimension found by the annihilation-algebra system.
    pub ann_dim: usize,
    /// Both systems give the same subspace.
    pub agree: bool,
}

impl SingSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({"fil": self.fil, "dim": self.dim(), "ann_dim": self.ann_dim, "agree": self.agree, "basis": basis_json(&self.basis)})
    }
}

/// Nullspace of a linear system given column by column on `fil^p`.
fn column_nullspace<K: Ord + Clone>(
    fil: &FilBasis,
    mut eqs: impl FnMut(&ModuleVector) -> Result<Vec<(K, Q)>>,
) -> Result<Vec<SparseVec>> {
    let mut by_key: BTreeMap<K, Vec<(usize, Q)>> = BTreeMap::new();
    for col in 0..fil.len() {
        for (key, c) in eqs(&fil.vector(col))? {
            if !c.is_zero() {
                by_key.entry(key).or_default().push((col, c));
            }
        }
    }
    let rows: Vec<SparseVec> = by_key.into_values().map(SparseVec::from_pairs).collect();
    Ok(nullspace(&rows, fil.len()))
}

type CoefKey = (usize, MultiIndex, MultiIndex, usize);

fn right_high_coefficients(hopf: &Hopf, table: &ActionTable, acting: &[WElement], v: &ModuleVector, min: usize) -> Vec<(CoefKey, Q)> {
    let mut out = Vec::new();
    for (s, a) in acting.iter().enumerate() {
        let p = table.act(hopf, a, v).to_right(hopf);
        for ((k, l, r), c) in p.iter() {
            if k.deg() >= min {
                out.push(((s, k.clone(), l.clone(), *r), c.clone()));
            }
        }
    }
    out
}

fn ann_equations(hopf: &Hopf, table: &ActionTable, elems: &[AnnElement], v: &ModuleVector) -> Result<Vec<((usize, MultiIndex, usize), Q)>> {
    // (1⊗∂_g) * v = Σ (∂^(I)⊗1)⊗v_I, stored with S(∂^(I)) for the pairing
    let pieces: Vec<Vec<(HElement, ModuleVector)>> = (0..table.gens)
        .map(|g| {
            table
                .act_gen(hopf, g, v)
                .coefficients()
                .into_iter()
                .map(|(i, vi)| (hopf.antipode(&HElement::mono(i, Q::one())), vi))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (s, a) in elems.iter().enumerate() {
        let mut img = ModuleVector::zero(v.n(), table.rank);
        for (g, x) in a.comps.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (sh, vi) in &pieces[g] {
                let c = pair(x, sh)?;
                if !c.is_zero() {
                    img.add_scaled(&c, vi);
                }
            }
        }
        for ((l, r), c) in img.iter() {
            out.push(((s, l.clone(), *r), c.clone()));
        }
    }
    Ok(out)
}

/// Whether two lists of coordinate vectors span the same space.
pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ea = Echelon::from_rows(a.iter());
    let eb = Echelon::from_rows(b.iter());
    ea.rows() == eb.rows()
}

fn sing_from_systems(fil: &FilBasis, main: Vec<SparseVec>, oracle: Vec<SparseVec>) -> SingSpace {
    let agree = same_span(&main, &oracle);
    SingSpace { fil: fil.p, basis: main.iter().map(|s| fil.from_coords(s)).collect(), ann_dim: oracle.len(), agree }
}

/// Singular vectors of a W(d)-module in `fil^p`: right-normal coefficients of
/// `(1⊗∂_i)*v` at `|K| ≥ 2` vanish. Cross-checked against `W_1 · v = 0`.
pub fn sing_solve_w(hopf: &Hopf, v: &ModuleSpec, p: usize) -> Result<SingSpace> {
    let n = v.n();
    let fil = FilBasis::new(n, v.rank(), p);
    let acting = w_acting(n);
    let main = column_nullspace(&fil, |b| Ok(right_high_coefficients(hopf, &v.table, &acting, b, 2)))?;
    let elems = w_spanning_set(n, 2, p + 1, p + 3);
    let oracle = column_nullspace(&fil, |b| ann_equations(hopf, &v.table, &elems, b))?;
    Ok(sing_from_systems(&fil, main, oracle))
}

/// The elements `ι(x_J ⊗_H s_ab)`, `lo ≤ |J| ≤ hi`.
pub fn s_spanning_set(hopf: &Hopf, chi: &TraceForm, lo: usize, hi: usize) -> Result<Vec<AnnElement>> {
    let n = hopf.n();
    let mut out = Vec::new();
    for s in s_acting(hopf, chi)? {
        for j in monomials(n, hi).into_iter().filter(|j| j.deg() >= lo) {
            out.push(s_iota(hopf, &XElement::mono(j, Q::one(), hi + 3), &s)?);
        }
    }
    Ok(out)
}

/// Singular vectors of the S(d,χ)-restriction in `fil^p`: right-normal
/// coefficients of `s_ab*v` at `|K| ≥ 3` vanish. Cross-checked against `S_1 · v = 0`.
pub fn sing_solve_s(hopf: &Hopf, v: &ModuleSpec, chi: &TraceForm, p: usize) -> Result<SingSpace> {
    let n = v.n();
    let acting = s_acting(hopf, chi)?;
    let fil = FilBasis::new(n, v.rank(), p);
    let main = column_nullspace(&fil, |b| Ok(right_high_coefficients(hopf, &v.table, &acting, b, 3)))?;
    let elems = s_spanning_set(hopf, chi, 3, p + 2)?;
    let oracle = column_nullspace(&fil, |b| ann_equations(hopf, &v.table, &elems, b))?;
    Ok(sing_from_systems(&fil, main, oracle))
}

/// Coordinates of `target` in the span of `basis`, all inside `fil`.
pub fn coords_in(fil: &FilBasis, basis: &[ModuleVector], target: &ModuleVector) -> Option<Vec<Q>> {
    let cols: Vec<SparseVec> = basis.iter().map(|b| fil.coords(b)).collect::<Option<_>>()?;
    let t = fil.coords(target)?;
    let mut rows: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    for (j, c) in cols.iter().enumerate() {
        for (r, x) in c.iter() {
            rows.entry(*r).or_default().push((j, x.clone()));
        }
    }
    for (r, _) in t.iter() {
        rows.entry(*r).or_default();
    }
    let keys: Vec<usize> = rows.keys().copied().collect();
    let a: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
    let rhs: Vec<Q> = keys.iter().map(|r| t.get(*r)).collect();
    let s = solve(&a, &rhs, basis.len())?;
    let x: Vec<Q> = (0..basis.len()).map(|j| s.get(j)).collect();
    let mut back = ModuleVector::zero(target.n(), target.rank());
    for (j, b) in basis.iter().enumerate() {
        back.add_scaled(&x[j], b);
    }
    (back == *target).then_some(x)
}

fn matrix_on(fil: &FilBasis, basis: &[ModuleVector], images: &[ModuleVector]) -> Result<Mat> {
    let cols = images
        .iter()
        .map(|w| coords_in(fil, basis, w).ok_or_else(|| Error::SolveFailed("image leaves the singular space".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(matrix::transpose(&cols))
}

/// `ρ_sing(e_i^j) v = −(x^j ⊗ ∂_i) · v` on a basis of singular vectors,
/// keyed `i · N + j`.
pub fn rho_sing_gl(hopf: &Hopf, v: &ModuleSpec, sing: &SingSpace) -> Result<Vec<Mat>> {
    let n = v.n();
    let fil = FilBasis::new(n, v.rank(), sing.fil);
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let a = AnnElement::mono(&MultiIndex::unit(n, j), i, -Q::one(), sing.fil + 3);
            let imgs = sing.basis.iter().map(|b| ann_action(hopf, &v.table, &a, b)).collect::<Result<Vec<_>>>()?;
            out.push(matrix_on(&fil, &sing.basis, &imgs)?);
        }
    }
    Ok(out)
}

/// `ρ_sing(∂_i) v = ∂_i v − γ(∂_i) · v` with `gammas[i] = γ(∂_i)`.
pub fn rho_sing_d(hopf: &Hopf, v: &ModuleSpec, sing: &SingSpace, gammas: &[AnnElement]) -> Result<Vec<Mat>> {
    let n = v.n();
    let fil = FilBasis::new(n, v.rank(), sing.fil + 1);
    gammas
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let imgs = sing
                .basis
                .iter()
                .map(|b| Ok(b.mono_mul(hopf, &MultiIndex::unit(n, i)).minus(&ann_action(hopf, &v.table, g, b)?)))
                .collect::<Result<Vec<_>>>()?;
            matrix_on(&fil, &sing.basis, &imgs)
        })
        .collect()
}

/// `M ∩ fil^B` for the submodule generated by some vectors.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub bound: usize,
    pub basis: Vec<ModuleVector>,
    /// `dim (M ∩ fil^k)` for `k = 0..=bound`.
    pub fil_dims: Vec<usize>,
    pub fil_total: usize,
    /// `dim coef M`.
    pub coef_dim: usize,
    /// Closure under H and coefficient extraction, checked on `M ∩ fil^{B-1}`.
    pub closed: bool,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.dim() < self.fil_total
    }

    pub fn coords(&self) -> Vec<SparseVec> {
        let fil = FilBasis::new(self.basis.first().map(|v| v.n()).unwrap_or(0), self.basis.first().map(|v| v.rank()).unwrap_or(0), self.bound);
        self.basis.iter().filter_map(|v| fil.coords(v)).collect()
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.bound == other.bound && self.fil_dims == other.fil_dims && same_span(&self.coords(), &other.coords())
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        let n = v.n();
        let fil = FilBasis::new(n, v.rank(), self.bound);
        match fil.coords(v) {
            Some(c) => Echelon::from_rows(self.coords().iter()).contains(&c),
            None => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"bound": self.bound, "dim": self.dim(), "fil_dims": self.fil_dims, "coef_dim": self.coef_dim, "closed": self.closed, "proper": self.is_proper()})
    }
}

/// Coordinates with high-degree keys first, so that echelon rows whose leading
/// entry lies in the tail are exactly the low-degree vectors.
struct Window {
    fil: FilBasis,
}

impl Window {
    fn coords(&self, v: &ModuleVector) -> Option<SparseVec> {
        let len = self.fil.len();
        self.fil.coords(v).map(|s| SparseVec::from_pairs(s.iter().map(|(c, x)| (len - 1 - c, x.clone()))))
    }

    fn vector(&self, s: &SparseVec) -> ModuleVector {
        let len = self.fil.len();
        self.fil.from_coords(&SparseVec::from_pairs(s.iter().map(|(c, x)| (len - 1 - c, x.clone()))))
    }

    fn low_part(&self, e: &Echelon, d: usize) -> Vec<ModuleVector> {
        let first = self.fil.len() - self.fil.count_below(d + 1);
        intersect_with_tail(e, first).iter().map(|s| self.vector(s)).collect()
    }
}

fn generated_images(hopf: &Hopf, v: &ModuleSpec, acting: &[WElement], w: &ModuleVector) -> Vec<ModuleVector> {
    let n = v.n();
    let mut out: Vec<ModuleVector> = (0..n).map(|k| w.mono_mul(hopf, &MultiIndex::unit(n, k))).collect();
    for a in acting {
        out.extend(v.table.act(hopf, a, w).coefficients().into_values());
    }
    out
}

/// The submodule generated by `gens` under H and coefficient extraction of
/// `a * w` for `a ∈ acting`, computed in `fil^{B+2}` and reported on `fil^B`.
pub fn submodule_closure(hopf: &Hopf, v: &ModuleSpec, acting: &[WElement], gens: &[ModuleVector], bound: usize) -> Submodule {
    let n = v.n();
    let win = Window { fil: FilBasis::new(n, v.rank(), bound + 2) };
    let mut e = Echelon::new();
    let mut queue: Vec<ModuleVector> = Vec::new();
    for g in gens {
        if let Some(c) = win.coords(g) {
            if e.insert(c).is_some() {
                queue.push(g.clone());
            }
        }
    }
    while let Some(w) = queue.pop() {
        for img in generated_images(hopf, v, acting, &w) {
            if let Some(c) = win.coords(&img) {
                if e.insert(c).is_some() {
                    queue.push(img);
                }
            }
        }
    }
    let basis = win.low_part(&e, bound);
    let fil_dims: Vec<usize> = (0..=bound).map(|k| win.low_part(&e, k).len()).collect();
    let mut coef = Echelon::new();
    for b in &basis {
        for ((i, _), _) in b.iter() {
            coef.insert(SparseVec::from_dense(&b.coefficient(i)));
        }
    }
    let closed = bound == 0
        || win.low_part(&e, bound - 1).iter().all(|w| {
            generated_images(hopf, v, acting, w).iter().all(|img| win.coords(img).map(|c| e.contains(&c)).unwrap_or(false))
        });
    Submodule { bound, basis, fil_dims, fil_total: FilBasis::new(n, v.rank(), bound).len(), coef_dim: coef.rank(), closed }
}

/// Eigenspaces of `ρ_sing(Id)` read off the filtration blocks of a singular space.
pub fn id_eigenspaces(hopf: &Hopf, v: &ModuleSpec, sing: &SingSpace) -> Result<Vec<(Q, Vec<ModuleVector>)>> {
    let n = v.n();
    let dim = sing.dim();
    if dim == 0 {
        return Ok(Vec::new());
    }
    let gl = rho_sing_gl(hopf, v, sing)?;
    let mut id = matrix::zeros(dim, dim);
    for i in 0..n {
        id = matrix::add(&id, &gl[i * n + i]);
    }
    // the nullspace basis is filtration-adapted: sing ∩ fil^k is spanned by its vectors of degree ≤ k
    let mut lambdas: Vec<Q> = Vec::new();
    for k in 0..=sing.fil {
        let block: Vec<usize> = (0..dim).filter(|&b| sing.basis[b].degree().unwrap_or(0) == k).collect();
        if block.is_empty() {
            continue;
        }
        let tr: Q = block.iter().map(|&b| id[b][b].clone()).sum();
        let lam = tr / q(block.len() as i64);
        if !lambdas.contains(&lam) {
            lambdas.push(lam);
        }
    }
    let mut out = Vec::new();
    for lam in lambdas {
        let shifted = matrix::sub(&id, &matrix::scale(&matrix::identity(dim), &lam));
        let rows: Vec<SparseVec> = shifted.iter().map(|r| SparseVec::from_dense(r)).collect();
        let ker = nullspace(&rows, dim);
        let vs = ker
            .iter()
            .map(|k| {
                let mut w = ModuleVector::zero(n, v.rank());
                for (c, x) in k.iter() {
                    w.add_scaled(x, &sing.basis[*c]);
                }
                w
            })
            .collect();
        out.push((lam, vs));
    }
    Ok(out)
}

/// Distinct nontrivial proper submodules generated by solver-derived seeds:
/// each singular basis vector and each `ρ_sing(Id)`-eigenspace.
pub fn find_submodules(hopf: &Hopf, v: &ModuleSpec, acting: &[WElement], sing: &SingSpace, bound: usize) -> Result<Vec<Submodule>> {
    let mut seeds: Vec<Vec<ModuleVector>> = sing.basis.iter().map(|b| vec![b.clone()]).collect();
    if acting.len() == v.n() {
        for (_, vs) in id_eigenspaces(hopf, v, sing)? {
            seeds.push(vs);
        }
    }
    let mut found: Vec<Submodule> = Vec::new();
    for s in seeds {
        let m = submodule_closure(hopf, v, acting, &s, bound);
        if m.is_zero() || !m.is_proper() {
            continue;
        }
        if !found.iter().any(|f| f.same_as(&m)) {
            found.push(m);
        }
    }
    Ok(found)
}

/// Basis of module maps `src → dst` with generator images in `fil^p`,
/// solving `((id⊗id)⊗β)(a*u_k) = a*β(u_k)` for `a ∈ acting`.
pub fn solve_intertwiner(hopf: &Hopf, acting: &[WElement], src: &ModuleSpec, dst: &ModuleSpec, p: usize) -> Vec<HLinearMap> {
    let n = src.n();
    let fil = FilBasis::new(n, dst.rank(), p);
    let s = src.rank();
    let acts: Vec<Vec<PseudoValue>> =
        acting.iter().map(|a| (0..s).map(|k| src.table.act(hopf, a, &src.gen(k)).to_left(hopf)).collect()).collect();
    let mut rows: BTreeMap<(usize, usize, MultiIndex, MultiIndex, usize), Vec<(usize, Q)>> = BTreeMap::new();
    for r in 0..s {
        for col in 0..fil.len() {
            let unknown = r * fil.len() + col;
            let b = fil.vector(col);
            for (ai, a) in acting.iter().enumerate() {
                let dst_act = dst.table.act(hopf, a, &b).to_left(hopf);
                for k in 0..s {
                    let mut val = PseudoValue::zero(n, dst.rank(), Orient::Left);
                    for ((i, kk, rr), c) in acts[ai][k].iter() {
                        if *rr == r {
                            val.add_normal_vector(i, &b.mono_mul(hopf, kk), c);
                        }
                    }
                    if k == r {
                        val.add_scaled(hopf, &-Q::one(), &dst_act);
                    }
                    for ((i, kk, rr), c) in val.iter() {
                        if !c.is_zero() {
                            rows.entry((ai, k, i.clone(), kk.clone(), *rr)).or_default().push((unknown, c.clone()));
                        }
                    }
                }
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_pairs).collect();
    nullspace(&rows, s * fil.len())
        .into_iter()
        .map(|sol| {
            let mut images = vec![ModuleVector::zero(n, dst.rank()); s];
            for (u, x) in sol.iter() {
                images[u / fil.len()].add_scaled(x, &fil.vector(u % fil.len()));
            }
            HLinearMap::new(images, dst.rank())
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityCheck {
    pub no_invariant_coordinate_subspace: bool,
    pub random_vectors_cyclic: bool,
}

impl IrreducibilityCheck {
    pub fn passed(&self) -> bool {
        self.no_invariant_coordinate_subspace && self.random_vectors_cyclic
    }
}

/// Spot check of irreducibility for the algebra generated by `mats`.
pub fn spot_check_irreducible(mats: &[Mat], dim: usize, seed: u64) -> IrreducibilityCheck {
    let mut no_coord = true;
    if dim <= 12 {
        for mask in 1u32..(1u32 << dim) - 1 {
            let inside = |r: usize| mask & (1 << r) != 0;
            let invariant = mats.iter().all(|m| (0..dim).all(|c| !inside(c) || (0..dim).all(|r| inside(r) || m[r][c].is_zero())));
            if invariant {
                no_coord = false;
                break;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cyclic = true;
    for _ in 0..3 {
        let v: Vec<Q> = (0..dim).map(|_| q(rng.gen_range(-5i64..=5))).collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut e = Echelon::new();
        let mut layer = vec![v];
        for depth in 0..=3 {
            let mut next = Vec::new();
            for w in &layer {
                e.insert(SparseVec::from_dense(w));
                if depth < 3 {
                    next.extend(mats.iter().map(|m| matrix::apply(m, w)));
                }
            }
            layer = next;
        }
        if e.rank() < dim {
            cyclic = false;
        }
    }
    IrreducibilityCheck { no_invariant_coordinate_subspace: no_coord, random_vectors_cyclic: cyclic }
}

/// Acting matrices of a `(d ⊕ gl d)`-module for the spot check.
pub fn acting_matrices(rho_d: &[Mat], rho_gl: &GlRep) -> Vec<Mat> {
    rho_d.iter().chain(rho_gl.mats.iter()).cloned().collect()
}

/// Filtration checks with the annihilation action on `fil^pmax`:
/// `W_{-1}` raises degree by at most one, `W_0` preserves it, `W_1` lowers it.
pub fn filtration_check(hopf: &Hopf, v: &ModuleSpec, pmax: usize) -> Result<AxiomReport> {
    let n = v.n();
    let mut rep = AxiomReport::default();
    let fil = FilBasis::new(n, v.rank(), pmax);
    let valid = pmax + 4;
    let sets = [
        (w_spanning_set(n, 0, 0, valid), 1i64),
        (w_spanning_set(n, 1, pmax + 2, valid), 0),
        (w_spanning_set(n, 2, pmax + 2, valid), -1),
    ];
    for col in 0..fil.len() {
        let b = fil.vector(col);
        let deg = b.degree().unwrap_or(0) as i64;
        for (set, shift) in &sets {
            for a in set {
                rep.checked += 1;
                let img = ann_action(hopf, &v.table, a, &b)?;
                let ok = match img.degree() {
                    None => true,
                    Some(d) => (d as i64) <= deg + shift,
                };
                if !ok {
                    rep.failures.push(format!("filtration shift {shift} violated on {:?}", fil.keys()[col]));
                }
            }
        }
    }
    Ok(rep)
}

/// `e_i^j` acting on the symbol `∂^(I)` as a derivation of the symmetric algebra.
fn symbol_action(n: usize, i: usize, j: usize, idx: &MultiIndex) -> Option<(MultiIndex, Q)> {
    let lowered = idx.minus_unit(j)?;
    let raised = lowered.plus_unit(i);
    let c = q(raised.0[i] as i64);
    let _ = n;
    Some((raised, c))
}

/// Graded check on `V(R)`: the class of `−(x^j⊗∂_i)·(∂^(I)⊗u)` in `gr^p`
/// equals `(e_i^j ∂^(I))⊗u + ∂^(I)⊗ρ_R(e_i^j)u` for `|I| = p ≤ pmax`.
pub fn graded_gl_check(hopf: &Hopf, v: &ModuleSpec, r_gl: &GlRep, pmax: usize) -> Result<AxiomReport> {
    let n = v.n();
    let mut rep = AxiomReport::default();
    let fil = FilBasis::new(n, v.rank(), pmax);
    for col in 0..fil.len() {
        let (idx, u) = fil.keys()[col].clone();
        let p = idx.deg();
        let b = fil.vector(col);
        for i in 0..n {
            for j in 0..n {
                rep.checked += 1;
                let a = AnnElement::mono(&MultiIndex::unit(n, j), i, -Q::one(), pmax + 4);
                let img = ann_action(hopf, &v.table, &a, &b)?;
                let mut top = ModuleVector::zero(n, v.rank());
                for ((k, r), c) in img.iter() {
                    if k.deg() >= p {
                        top.add_term(k.clone(), *r, c.clone());
                    }
                }
                let mut expect = ModuleVector::zero(n, v.rank());
                if let Some((k, c)) = symbol_action(n, i, j, &idx) {
                    expect.add_term(k, u, c);
                }
                for (r, line) in r_gl.e(i, j).iter().enumerate() {
                    expect.add_term(idx.clone(), r, line[u].clone());
                }
                if top != expect {
                    rep.failures.push(format!("graded action of e_{}^{} on {:?}", i + 1, j + 1, fil.keys()[col]));
                }
            }
        }
    }
    Ok(rep)
}

/// `T_S(Π, U)`: the W(d)-tensor module restricted to S(d,χ).
pub fn build_tensor_s(hopf: &Hopf, pi: &DRep, u: &GlRep) -> Result<ModuleSpec> {
    let mut m = build_tensor_w(hopf, pi, u)?;
    m.name = "T_S(Π,U)".into();
    Ok(m)
}

/// `V_S(Π ⊠ U) ≅ T_S(Π ⊗ k_{χ + c(χ − tr ad)/N}, U_c)` where `U_c` is `U` with
/// Id acting as `c`. Requires a declared Id-scalar on `U`.
pub fn build_vs(hopf: &Hopf, pi: &DRep, u: &GlRep, chi: &TraceForm, c: &Q) -> Result<ModuleSpec> {
    let n = hopf.n();
    let nq = q(n as i64);
    let s = u.id_scalar.clone().ok_or_else(|| Error::RepInvalid("U needs an Id scalar".into()))?;
    let tr = hopf.lie().tr_ad();
    let shift = chi.add(&chi.add(&tr.scale(&-Q::one())).scale(&(c / &nq)));
    let uc = u.shift_trace(&((c - s) / nq));
    let mut m = build_tensor_w(hopf, &pi.twist_by(&shift), &uc)?;
    m.name = "V_S(Π,U)".into();
    Ok(m)
}

/// Whether the S-actions of two modules on the same generators agree.
pub fn same_s_action(hopf: &Hopf, chi: &TraceForm, a: &ModuleSpec, b: &ModuleSpec) -> Result<bool> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    for s in s_acting(hopf, chi)? {
        for k in 0..a.rank() {
            if !a.table.act(hopf, &s, &a.gen(k)).same_element(hopf, &b.table.act(hopf, &s, &b.gen(k))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A random H-linear map with images of degree at most `p`.
pub fn random_map(n: usize, src: usize, dst: usize, p: usize, seed: u64) -> HLinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fil = FilBasis::new(n, dst, p);
    let images = (0..src)
        .map(|_| {
            let mut v = ModuleVector::zero(n, dst);
            for col in 0..fil.len() {
                if rng.gen_bool(0.4) {
                    v.add_scaled(&q(rng.gen_range(-3i64..=3)), &fil.vector(col));
                }
            }
            v
        })
        .collect();
    HLinearMap::new(images, dst)
}

pub fn rep_json(rho_d: &[Mat], rho_gl: &GlRep) -> Value {
    json!({"d": mats_json(rho_d), "gl": mats_json(&rho_gl.mats)})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annih::gamma_solve;
    use crate::liecore::presets;
    use crate::rational::qf;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn trivial_tensor_is_h_module() {
        let h = Hopf::new(presets::abelian(2));
        let lie = h.lie().clone();
        let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &GlRep::trivial(2, 1)).unwrap();
        let hm = crate::pseudoalg::h_module_table(&h);
        for i in 0..2 {
            assert!(t.table.entry(i, 0).same_element(&h, hm.entry(i, 0)));
        }
        assert!(check_module_axiom(&h, &t).passed());
    }

    #[test]
    fn solv2_twisted_h() {
        // (1⊗1)⊗(1⊗a u) − (1⊗a)⊗(1⊗u) with ∂_1 ↦ α
        let h = Hopf::new(presets::solv2());
        let lie = h.lie().clone();
        let alpha = qf(3, 2);
        let pi = DRep { dim: 1, mats: vec![vec![vec![alpha.clone()]], vec![vec![Q::zero()]]] };
        let t = build_tensor_w(&h, &pi, &GlRep::trivial(2, 1)).unwrap();
        let z = mi(&[0, 0]);
        let mut expect = PseudoValue::zero(2, 1, Orient::Left);
        expect.add_normal(z.clone(), z.clone(), 0, alpha);
        expect.push_raw(&h, &z, &mi(&[1, 0]), &z, 0, &-Q::one());
        assert!(t.table.entry(0, 0).same_element(&h, &expect));
        assert!(check_module_axiom(&h, &t).passed());
        let _ = lie;
    }

    #[test]
    fn tensor_axioms_on_presets() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            let n = lie.dim();
            let pis = [DRep::trivial(&lie, 1), DRep::adjoint(&lie), DRep::character(&lie.tr_ad())];
            for pi in &pis {
                for u in [GlRep::trivial(n, 1), GlRep::standard(n)] {
                    let t = build_tensor_w(&h, pi, &u).unwrap();
                    let r = check_module_axiom(&h, &t);
                    assert!(r.passed(), "{} {:?}", lie.name, r.failures);
                }
            }
        }
    }

    #[test]
    fn corrupted_table_fails_axiom() {
        let h = Hopf::new(presets::abelian(2));
        let lie = h.lie().clone();
        let mut t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &omega_rep(2, 1).unwrap()).unwrap();
        t.table.entries[0][0].add_normal(mi(&[1, 0]), mi(&[0, 0]), 1, Q::one());
        assert!(!check_module_axiom(&h, &t).passed());
    }

    #[test]
    fn vr_shift_matches_direct_formula() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            let n = lie.dim();
            let pi = DRep::adjoint(&lie);
            let u = GlRep::standard(n);
            let vr = build_vr(&h, &pi, &u).unwrap();
            let (rd, rg) = product_rep(&pi, &u);
            assert_eq!(vr.table, vr_direct_table(&h, &rd, &rg), "{}", lie.name);
        }
    }

    #[test]
    fn twist_of_trivial_tensor_is_tensor() {
        let lie = presets::solv2();
        let h = Hopf::new(lie.clone());
        let u = omega_rep(2, 1).unwrap();
        let pi = DRep::adjoint(&lie);
        let base = build_tensor_w(&h, &DRep::trivial(&lie, 1), &u).unwrap();
        let tw = build_twist(&h, &pi, &base);
        let direct = build_tensor_w(&h, &pi, &u).unwrap();
        for i in 0..2 {
            for k in 0..direct.rank() {
                assert!(tw.table.entry(i, k).same_element(&h, direct.table.entry(i, k)));
            }
        }
    }

    #[test]
    fn dual_is_module_and_functorial() {
        let lie = presets::solv2();
        let h = Hopf::new(lie.clone());
        let v = build_tensor_w(&h, &DRep::adjoint(&lie), &GlRep::trivial(2, 1)).unwrap();
        let d = build_dual(&h, &v);
        assert!(check_module_axiom(&h, &d).passed());
        let b1 = random_map(2, 2, 2, 2, 1);
        let b2 = random_map(2, 2, 2, 2, 2);
        let lhs = dual_map(&h, &b1.compose(&h, &b2));
        let rhs = dual_map(&h, &b2).compose(&h, &dual_map(&h, &b1));
        assert_eq!(lhs, rhs);
        let pi = DRep::adjoint(&lie);
        let lhs = twist_map(&h, &pi, &b1.compose(&h, &b2));
        let rhs = twist_map(&h, &pi, &b1).compose(&h, &twist_map(&h, &pi, &b2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_of_examples() {
        let u = omega_rep(2, 1).unwrap();
        let s = s_of(2, 0, &[Q::one(), Q::zero()], &u);
        let mut expect = ModuleVector::zero(2, 2);
        expect.add_term(mi(&[1, 0]), 0, -Q::one());
        expect.add_term(mi(&[0, 1]), 1, -Q::one());
        assert_eq!(s, expect);
        assert!(s_of(2, 0, &[Q::one(), Q::zero()], &u).minus(&s_of(2, 1, &[Q::zero(), Q::one()], &u)).is_zero());
        assert!(s_of(2, 1, &[Q::one(), Q::zero()], &u).is_zero());
        assert!(s_of(2, 1, &[Q::one()], &GlRep::trivial(2, 1)).is_zero());
    }

    #[test]
    fn r0_examples() {
        for n in 1..=3 {
            let r = r0_test(&omega_rep(n, 1).unwrap());
            assert_eq!(r.verdict, R0Verdict::Full);
            assert!(r.consistent);
        }
        let r = r0_test(&GlRep::sl_adjoint(2));
        assert_eq!(r.verdict, R0Verdict::Zero);
        assert!(r.consistent);
        assert_eq!(r0_test(&GlRep::trivial(2, 1)).verdict, R0Verdict::Full);
        assert_eq!(r0_test(&GlRep::sym2_dual(2)).verdict, R0Verdict::Zero);
    }

    #[test]
    fn sing_trivial_coefficients_is_fil0() {
        for lie in presets::all() {
            let h = Hopf::new(lie.clone());
            let n = lie.dim();
            let pi = DRep::adjoint(&lie);
            let t = build_tensor_w(&h, &pi, &GlRep::trivial(n, 1)).unwrap();
            let s = sing_solve_w(&h, &t, 2).unwrap();
            assert!(s.agree, "{}", lie.name);
            assert_eq!(s.dim(), n);
            assert!(s.basis.iter().all(|b| b.degree() == Some(0)));
        }
    }

    #[test]
    fn sing_omega1_abelian2() {
        let h = Hopf::new(presets::abelian(2));
        let lie = h.lie().clone();
        let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &omega_rep(2, 1).unwrap()).unwrap();
        let s = sing_solve_w(&h, &t, 2).unwrap();
        assert!(s.agree);
        assert_eq!(s.dim(), 3);
        let mut extra = ModuleVector::zero(2, 2);
        extra.add_term(mi(&[1, 0]), 0, Q::one());
        extra.add_term(mi(&[0, 1]), 1, Q::one());
        let fil = FilBasis::new(2, 2, 2);
        assert!(coords_in(&fil, &s.basis, &extra).is_some());
    }

    #[test]
    fn sing_character_module_n1() {
        let h = Hopf::new(presets::abelian(1));
        let lie = h.lie().clone();
        for c in [q(2), qf(1, 3), q(-3)] {
            let u = GlRep::trace_character(1, c);
            let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &u).unwrap();
            let s = sing_solve_w(&h, &t, 2).unwrap();
            assert!(s.agree);
            assert_eq!(s.dim(), 1);
        }
    }

    #[test]
    fn rho_sing_on_vr_generators() {
        let lie = presets::solv2();
        let h = Hopf::new(lie.clone());
        let pi = DRep::adjoint(&lie);
        let u = GlRep::standard(2);
        let vr = build_vr(&h, &pi, &u).unwrap();
        let s = sing_solve_w(&h, &vr, 0).unwrap();
        assert_eq!(s.dim(), 4);
        let (rd, rg) = product_rep(&pi, &u);
        let gl = rho_sing_gl(&h, &vr, &s).unwrap();
        let gammas: Vec<AnnElement> = (0..2).map(|i| gamma_solve(&h, i, 5).unwrap()).collect();
        let dm = rho_sing_d(&h, &vr, &s, &gammas).unwrap();
        // the solver basis at fil 0 is the generator basis
        for idx in 0..4 {
            assert_eq!(gl[idx], rg.mats[idx]);
        }
        for i in 0..2 {
            assert_eq!(dm[i], rd[i]);
        }
    }

    #[test]
    fn closure_of_fil0_is_everything() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &GlRep::sym2_dual(2)).unwrap();
        let gens: Vec<ModuleVector> = (0..t.rank()).map(|k| t.gen(k)).collect();
        let m = submodule_closure(&h, &t, &w_acting(2), &gens, 2);
        assert!(!m.is_proper());
        assert!(m.closed);
        assert!(submodule_closure(&h, &t, &w_acting(2), &[], 2).is_zero());
    }

    #[test]
    fn omega1_has_one_proper_submodule() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &omega_rep(2, 1).unwrap()).unwrap();
        let s = sing_solve_w(&h, &t, 2).unwrap();
        let subs = find_submodules(&h, &t, &w_acting(2), &s, 2).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].fil_dims[0], 0);
        assert!(subs[0].closed);
    }

    #[test]
    fn hom_omega0_to_omega1_is_d() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let t0 = build_tensor_w(&h, &DRep::trivial(&lie, 1), &omega_rep(2, 0).unwrap()).unwrap();
        let t1 = build_tensor_w(&h, &DRep::trivial(&lie, 1), &omega_rep(2, 1).unwrap()).unwrap();
        let maps = solve_intertwiner(&h, &w_acting(2), &t0, &t1, 2);
        assert_eq!(maps.len(), 1);
        let img = &maps[0].images[0];
        assert_eq!(img.coeff(&mi(&[1, 0]), 0), img.coeff(&mi(&[0, 1]), 1));
        assert!(!img.coeff(&mi(&[1, 0]), 0).is_zero());
        assert!(intertwines(&h, &w_acting(2), &t0, &t1, &maps[0]));
    }

    #[test]
    fn schur_for_sym2() {
        let lie = presets::abelian(2);
        let h = Hopf::new(lie.clone());
        let t = build_tensor_w(&h, &DRep::trivial(&lie, 1), &GlRep::sym2_dual(2)).unwrap();
        assert_eq!(solve_intertwiner(&h, &w_acting(2), &t, &t, 3).len(), 1);
    }

    #[test]
    fn spot_checks() {
        let u = GlRep::standard(2);
        assert!(spot_check_irreducible(&u.mats, 2, 7).passed());
        let t = GlRep::trivial(2, 2);
        assert!(!spot_check_irreducible(&t.mats, 2, 7).passed());
    }

    #[test]
    fn filtration_and_graded_action() {
        let lie = presets::solv2();
        let h = Hopf::new(lie.clone());
        let pi = DRep::character(&lie.tr_ad());
        let u = GlRep::standard(2);
        let vr = build_vr(&h, &pi, &u).unwrap();
        let r = filtration_check(&h, &vr, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let (_, rg) = product_rep(&pi, &u);
        let g = graded_gl_check(&h, &vr, &rg, 2).unwrap();
        assert!(g.passed(), "{:?}", g.failures);
    }
}
