//! Classification reports for tensor modules over W(d) and S(d,χ).

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::derham::{pseudo_d, twisted_forms};
use crate::error::{Error, Result};
use crate::freemod::{FilBasis, HLinearMap, ModuleVector};
use crate::hopf::{Hopf, MultiIndex};
use crate::liecore::{omega_rep, DRep, GlRep, TraceForm};
use crate::linalg::{Echelon, SparseVec};
use crate::matrix::Mat;
use crate::modules::{
    acting_matrices, build_tensor_s, build_tensor_w, build_vs, find_submodules, id_eigenspaces, product_rep, r0_test, s_acting,
    same_s_action, same_span, sing_solve_s, sing_solve_w, solve_intertwiner, spot_check_irreducible, submodule_closure, w_acting,
    ModuleSpec, R0Report, R0Verdict, SingSpace, Submodule,
};
use crate::rational::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    W,
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    IrreducibleTensor,
    ReducibleUniqueSubmodule,
    TopDegree,
    NestedSubmodules,
    Undetermined,
}

impl Verdict {
    pub fn summary(&self) -> &'static str {
        match self {
            Verdict::IrreducibleTensor => "irreducible",
            Verdict::ReducibleUniqueSubmodule => "reducible; unique submodule = image of d",
            Verdict::TopDegree => "top degree; image of d is a proper submodule of finite codimension",
            Verdict::NestedSubmodules => "reducible; two nested submodules",
            Verdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub mode: Mode,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub evidence: Value,
}

impl ClassifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "mode": self.mode,
            "verdict": self.verdict,
            "summary": self.verdict.summary(),
            "passed": self.passed(),
            "checks": self.checks,
            "evidence": self.evidence,
        })
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool) -> bool {
        self.0.push(Check { name: name.into(), passed });
        passed
    }
}

fn coords_all(fil: &FilBasis, vs: &[ModuleVector]) -> Option<Vec<SparseVec>> {
    vs.iter().map(|v| fil.coords(v)).collect()
}

/// Whether the singular space equals the span of `expected`.
pub fn sing_equals_span(sing: &SingSpace, n: usize, rank: usize, expected: &[ModuleVector]) -> bool {
    let fil = FilBasis::new(n, rank, sing.fil);
    match (coords_all(&fil, &sing.basis), coords_all(&fil, expected)) {
        (Some(a), Some(b)) => same_span(&a, &b),
        _ => false,
    }
}

/// `dim(sing ∩ M)` computed inside `fil^{M.bound}`.
pub fn sing_in_submodule(sing: &SingSpace, m: &Submodule, n: usize, rank: usize) -> Option<usize> {
    let fil = FilBasis::new(n, rank, m.bound.max(sing.fil));
    let s = coords_all(&fil, &sing.basis)?;
    let mc = coords_all(&fil, &m.basis)?;
    let sum = Echelon::from_rows(s.iter().chain(mc.iter())).rank();
    Some(s.len() + mc.len() - sum)
}

fn span_dim(n: usize, rank: usize, p: usize, vs: &[ModuleVector]) -> usize {
    let fil = FilBasis::new(n, rank, p);
    Echelon::from_rows(vs.iter().filter_map(|v| fil.coords(v)).collect::<Vec<_>>().iter()).rank()
}

pub fn fil0_basis(n: usize, rank: usize) -> Vec<ModuleVector> {
    (0..rank).map(|k| ModuleVector::gen(n, rank, k)).collect()
}

fn degree_blocks(sing: &SingSpace) -> Vec<usize> {
    (0..=sing.fil).map(|k| sing.basis.iter().filter(|b| b.degree().unwrap_or(0) == k).count()).collect()
}

fn sing_fingerprint(hopf: &Hopf, v: &ModuleSpec, sing: &SingSpace, with_id: bool) -> Result<Value> {
    let mut fp = json!({"dim": sing.dim(), "degree_blocks": degree_blocks(sing)});
    if with_id {
        let eig: Vec<Value> = id_eigenspaces(hopf, v, sing)?.iter().map(|(l, vs)| json!({"id": fmt_q(l), "dim": vs.len()})).collect();
        fp["id_eigenvalues"] = Value::Array(eig);
    }
    Ok(fp)
}

/// The Ωⁿ degree of `u` if its matrices are literally those of `Ωⁿ`.
fn omega_degree(u: &GlRep) -> Option<usize> {
    (0..=u.n).find(|&k| omega_rep(u.n, k).map(|o| o.mats == u.mats).unwrap_or(false))
}

fn irreducibility(pi: &DRep, u: &GlRep) -> Value {
    let (rho_d, rho_gl) = product_rep(pi, u);
    let spot = spot_check_irreducible(&acting_matrices(&rho_d, &rho_gl), rho_gl.dim, 7);
    json!({"passed": spot.passed(), "detail": spot})
}

fn d_images(hopf: &Hopf, pi: &DRep, n: usize) -> Result<Vec<ModuleVector>> {
    Ok(pseudo_d(hopf, pi, n - 1)?.images)
}

/// W(d)-classification of `T(Π, U)` with singular vectors solved in `fil^p`.
pub fn classify_w(hopf: &Hopf, pi: &DRep, u: &GlRep, p: usize) -> Result<ClassifyReport> {
    let big_n = hopf.n();
    let v = build_tensor_w(hopf, pi, u)?;
    let rank = v.rank();
    let mut ck = Checks(Vec::new());
    let r0: R0Report = r0_test(u);
    let irr = irreducibility(pi, u);
    ck.add("input representation passes the irreducibility spot check", irr["passed"] == json!(true));
    ck.add("R0 verdict consistent with the Omega criterion", r0.consistent);
    let sing = sing_solve_w(hopf, &v, p)?;
    ck.add("singular vectors agree with the annihilation-algebra system", sing.agree);
    let fil0 = fil0_basis(big_n, rank);
    let fil_one = FilBasis::new(big_n, rank, 1);
    ck.add("fil^0 is singular", sing_in_span(&sing, &fil0, big_n, rank));
    ck.add("singular vectors lie in fil^1", sing.basis.iter().all(|b| fil_one.coords(b).is_some()));
    let mut evidence = json!({
        "module": v.name,
        "rank": rank,
        "r0": r0,
        "irreducibility": irr,
        "sing": sing.to_json(),
        "fingerprint": sing_fingerprint(hopf, &v, &sing, true)?,
    });
    let verdict = match omega_degree(u) {
        Some(0) => {
            ck.add("sing T(Pi, Omega^0) = fil^0", sing_equals_span(&sing, big_n, rank, &fil0));
            Verdict::IrreducibleTensor
        }
        Some(n) => {
            let gens = d_images(hopf, pi, n)?;
            let bound = p.max(2);
            let image = submodule_closure(hopf, &v, &w_acting(big_n), &gens, bound);
            ck.add("image of d is nonzero and proper", !image.is_zero() && image.is_proper());
            ck.add("image of d meets fil^0 trivially", image.fil_dims[0] == 0);
            ck.add("image of d is closed", image.closed);
            let mut expected = fil0.clone();
            expected.extend(gens.iter().cloned());
            ck.add("sing = fil^0 + d(fil^0 T^(n-1))", sing_equals_span(&sing, big_n, rank, &expected));
            let gens_dim = span_dim(big_n, rank, sing.fil, &gens);
            let inside = sing_in_submodule(&sing, &image, big_n, rank);
            ck.add("sing of the image = d(fil^0 T^(n-1))", inside == Some(gens_dim) && gens.iter().all(|g| image.contains(g)));
            evidence["image_of_d"] = image.to_json();
            evidence["image_sing_dim"] = json!(inside);
            let found = find_submodules(hopf, &v, &w_acting(big_n), &sing, bound)?;
            evidence["submodules_found"] = json!(found.iter().map(|m| m.to_json()).collect::<Vec<_>>());
            for m in &found {
                ck.add("found submodule meets fil^0 trivially", m.fil_dims[0] == 0);
            }
            if n < big_n {
                ck.add("exactly one nontrivial proper submodule, equal to the image of d", found.len() == 1 && found[0].same_as(&image));
                Verdict::ReducibleUniqueSubmodule
            } else {
                Verdict::TopDegree
            }
        }
        None => {
            if r0.verdict == R0Verdict::Full {
                Verdict::Undetermined
            } else {
                let irreducible = ck.add("sing = fil^0", sing_equals_span(&sing, big_n, rank, &fil0));
                if irreducible {
                    Verdict::IrreducibleTensor
                } else {
                    Verdict::Undetermined
                }
            }
        }
    };
    Ok(ClassifyReport { mode: Mode::W, verdict, checks: ck.0, evidence })
}

/// Whether every vector of `vs` is singular.
pub fn sing_in_span(sing: &SingSpace, vs: &[ModuleVector], n: usize, rank: usize) -> bool {
    let fil = FilBasis::new(n, rank, sing.fil);
    let e = match coords_all(&fil, &sing.basis) {
        Some(c) => Echelon::from_rows(c.iter()),
        None => return false,
    };
    vs.iter().all(|v| fil.coords(v).map(|c| e.contains(&c)).unwrap_or(false))
}

/// Constant part of the generator images of an H-linear map, as a matrix.
pub fn constant_part(map: &HLinearMap) -> Mat {
    let n = map.images.first().map(|v| v.n()).unwrap_or(0);
    let z = MultiIndex::zero(n);
    let cols: Vec<Vec<Q>> = map.images.iter().map(|v| v.coefficient(&z)).collect();
    (0..map.dst_rank).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

fn invertible(m: &Mat) -> bool {
    let rows = m.len();
    rows > 0 && m.iter().all(|r| r.len() == rows) && Echelon::from_rows(m.iter().map(|r| SparseVec::from_dense(r)).collect::<Vec<_>>().iter()).rank() == rows
}

/// `Π' = Π ⊗ k_{tr ad − χ}`.
pub fn pi_prime(hopf: &Hopf, pi: &DRep, chi: &TraceForm) -> DRep {
    pi.twist_by(&hopf.lie().tr_ad().add(&chi.scale(&-Q::one())))
}

/// The S(d,χ)-isomorphism `ψ: T_S(Π',Ω^N) → T_S(Π,Ω^0)`, found among the
/// intertwiners with generator images in `fil^1`: the first basis map (or the
/// sum of all) whose constant part is invertible.
pub fn solve_psi(hopf: &Hopf, pi: &DRep, chi: &TraceForm) -> Result<Option<HLinearMap>> {
    let big_n = hopf.n();
    let src = twisted_forms(hopf, &pi_prime(hopf, pi, chi), big_n)?;
    let dst = twisted_forms(hopf, pi, 0)?;
    let sols = solve_intertwiner(hopf, &s_acting(hopf, chi)?, &src, &dst, 1);
    if let Some(m) = sols.iter().find(|m| invertible(&constant_part(m))) {
        return Ok(Some(m.clone()));
    }
    if sols.is_empty() {
        return Ok(None);
    }
    let mut sum = sols[0].clone();
    for m in &sols[1..] {
        for (a, b) in sum.images.iter_mut().zip(&m.images) {
            *a = a.plus(b);
        }
    }
    Ok(if invertible(&constant_part(&sum)) { Some(sum) } else { None })
}

/// S(d,χ)-classification of `T_S(Π, U)` with singular vectors solved in `fil^p`.
pub fn classify_s(hopf: &Hopf, pi: &DRep, u: &GlRep, chi: &TraceForm, p: usize) -> Result<ClassifyReport> {
    let big_n = hopf.n();
    if big_n < 3 {
        return Err(Error::DimensionTooSmall(big_n));
    }
    chi.validate(hopf.lie())?;
    let v = build_tensor_s(hopf, pi, u)?;
    let rank = v.rank();
    let acting = s_acting(hopf, chi)?;
    let mut ck = Checks(Vec::new());
    let irr = irreducibility(pi, u);
    ck.add("input representation passes the irreducibility spot check", irr["passed"] == json!(true));
    let sing = sing_solve_s(hopf, &v, chi, p)?;
    ck.add("singular vectors agree with the annihilation-algebra system", sing.agree);
    let fil0 = fil0_basis(big_n, rank);
    ck.add("fil^0 is singular", sing_in_span(&sing, &fil0, big_n, rank));
    let fil_two = FilBasis::new(big_n, rank, 2);
    ck.add("singular vectors lie in fil^2", sing.basis.iter().all(|b| fil_two.coords(b).is_some()));
    let mut evidence = json!({
        "module": v.name,
        "rank": rank,
        "chi": chi.0.iter().map(fmt_q).collect::<Vec<_>>(),
        "irreducibility": irr,
        "sing": sing.to_json(),
        "fingerprint": sing_fingerprint(hopf, &v, &sing, false)?,
    });
    if *chi == hopf.lie().tr_ad() && u.id_scalar.is_some() {
        let a = build_vs(hopf, pi, u, chi, &Q::zero())?;
        let b = build_vs(hopf, pi, u, chi, &Q::one())?;
        let same = same_s_action(hopf, chi, &a, &b)?;
        ck.add("restricted action independent of c", same);
        evidence["c_independent"] = json!(same);
    }
    let omega = omega_degree(u);
    let needs_psi = matches!(omega, Some(0) | Some(1));
    let psi_part = if needs_psi {
        let psi = solve_psi(hopf, pi, chi)?;
        ck.add("psi exists and is invertible on generators", psi.is_some());
        match psi {
            Some(psi) => {
                evidence["psi_constant_part"] = json!(constant_part(&psi).iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>());
                let d_prime = pseudo_d(hopf, &pi_prime(hopf, pi, chi), big_n - 1)?;
                Some(psi.compose(hopf, &d_prime))
            }
            None => None,
        }
    } else {
        None
    };
    let verdict = match omega {
        Some(0) => {
            if let Some(pd) = &psi_part {
                let mut expected = fil0.clone();
                expected.extend(pd.images.iter().cloned());
                ck.add("sing = fil^0 + psi d'(fil^0 T'^(N-1))", sing_equals_span(&sing, big_n, rank, &expected));
            }
            Verdict::TopDegree
        }
        Some(1) => {
            let d = pseudo_d(hopf, pi, 0)?;
            let gens_d = d.images.clone();
            let mut expected = fil0.clone();
            expected.extend(gens_d.iter().cloned());
            let bound = 2;
            let outer = submodule_closure(hopf, &v, &acting, &gens_d, bound);
            evidence["outer_submodule"] = outer.to_json();
            ck.add("closure of d(fil^0 T^0) is nonzero and proper", !outer.is_zero() && outer.is_proper() && outer.closed);
            if let Some(pd) = &psi_part {
                let gens_inner = d.compose(hopf, pd).images;
                expected.extend(gens_inner.iter().cloned());
                let inner = submodule_closure(hopf, &v, &acting, &gens_inner, bound);
                evidence["inner_submodule"] = inner.to_json();
                ck.add("closure of d psi d'(fil^0) is nonzero and closed", !inner.is_zero() && inner.closed);
                ck.add("inner submodule strictly inside the outer one", inner.basis.iter().all(|b| outer.contains(b)) && inner.dim() < outer.dim());
                let found = find_submodules(hopf, &v, &acting, &sing, bound)?;
                evidence["submodules_found"] = json!(found.iter().map(|m| m.to_json()).collect::<Vec<_>>());
                ck.add(
                    "seed search finds exactly the two nested submodules",
                    found.len() == 2 && found.iter().any(|m| m.same_as(&outer)) && found.iter().any(|m| m.same_as(&inner)),
                );
            }
            ck.add("sing = fil^0 + d(fil^0 T^0) + d psi d'(fil^0 T'^(N-1))", sing_equals_span(&sing, big_n, rank, &expected));
            Verdict::NestedSubmodules
        }
        Some(n) => {
            let gens = d_images(hopf, pi, n)?;
            let mut expected = fil0.clone();
            expected.extend(gens.iter().cloned());
            ck.add("sing = fil^0 + d(fil^0 T^(n-1))", sing_equals_span(&sing, big_n, rank, &expected));
            let image = submodule_closure(hopf, &v, &acting, &gens, 2);
            ck.add("image of d is nonzero, proper and closed", !image.is_zero() && image.is_proper() && image.closed);
            evidence["image_of_d"] = image.to_json();
            if n < big_n {
                Verdict::ReducibleUniqueSubmodule
            } else {
                Verdict::TopDegree
            }
        }
        None => {
            if sing_equals_span(&sing, big_n, rank, &fil0) {
                Verdict::IrreducibleTensor
            } else {
                Verdict::Undetermined
            }
        }
    };
    Ok(ClassifyReport { mode: Mode::S, verdict, checks: ck.0, evidence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::presets;

    #[test]
    fn w_sym2_is_irreducible() {
        let hopf = Hopf::new(presets::abelian(2));
        let pi = DRep::trivial(hopf.lie(), 1);
        let r = classify_w(&hopf, &pi, &GlRep::sym2_dual(2), 2).unwrap();
        assert_eq!(r.verdict, Verdict::IrreducibleTensor);
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.evidence["sing"]["dim"], json!(3));
    }

    #[test]
    fn w_omega1_has_unique_submodule() {
        let hopf = Hopf::new(presets::abelian(2));
        let pi = DRep::trivial(hopf.lie(), 1);
        let r = classify_w(&hopf, &pi, &omega_rep(2, 1).unwrap(), 2).unwrap();
        assert_eq!(r.verdict.summary(), "reducible; unique submodule = image of d");
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn w_top_degree_and_omega0() {
        let hopf = Hopf::new(presets::solv2());
        let pi = DRep::trivial(hopf.lie(), 1);
        let top = classify_w(&hopf, &pi, &omega_rep(2, 2).unwrap(), 2).unwrap();
        assert_eq!(top.verdict, Verdict::TopDegree);
        assert!(top.passed(), "{:?}", top.checks);
        let zero = classify_w(&hopf, &pi, &omega_rep(2, 0).unwrap(), 2).unwrap();
        assert_eq!(zero.verdict, Verdict::IrreducibleTensor);
        assert!(zero.passed(), "{:?}", zero.checks);
    }

    #[test]
    fn s_psi_is_invertible() {
        let hopf = Hopf::new(presets::abelian(3));
        let pi = DRep::trivial(hopf.lie(), 1);
        let psi = solve_psi(&hopf, &pi, &TraceForm::zero(3)).unwrap().expect("psi");
        assert!(invertible(&constant_part(&psi)));
    }

    #[test]
    fn s_omega1_has_nested_submodules() {
        let hopf = Hopf::new(presets::abelian(3));
        let pi = DRep::trivial(hopf.lie(), 1);
        let r = classify_s(&hopf, &pi, &omega_rep(3, 1).unwrap(), &TraceForm::zero(3), 3).unwrap();
        assert_eq!(r.verdict, Verdict::NestedSubmodules);
        assert_eq!(r.evidence["sing"]["dim"], json!(7));
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn s_needs_three_dimensions() {
        let hopf = Hopf::new(presets::abelian(2));
        let pi = DRep::trivial(hopf.lie(), 1);
        assert!(classify_s(&hopf, &pi, &omega_rep(2, 1).unwrap(), &TraceForm::zero(2), 3).is_err());
    }

    #[test]
    fn s_singular_dimensions_on_abelian3_and_heis3() {
        for lie in [presets::abelian(3), presets::heis3()] {
            let hopf = Hopf::new(lie);
            let pi = DRep::trivial(hopf.lie(), 1);
            let chi = TraceForm::zero(3);
            for (n, dim, verdict) in [(0, 4, Verdict::TopDegree), (2, 6, Verdict::ReducibleUniqueSubmodule), (3, 4, Verdict::TopDegree)] {
                let r = classify_s(&hopf, &pi, &omega_rep(3, n).unwrap(), &chi, 3).unwrap();
                assert_eq!(r.verdict, verdict, "n = {n}");
                assert_eq!(r.evidence["sing"]["dim"], json!(dim), "n = {n}");
                assert!(r.passed(), "n = {n}: {:?}", r.checks);
            }
        }
    }
}
