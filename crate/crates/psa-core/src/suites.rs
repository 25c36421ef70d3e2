//! Invariant suites over one Lie algebra: Hopf axioms, the dual X, the
//! pseudoalgebra axioms, S(d,χ) closure, and annihilation-algebra identities.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::annih::{ann_bracket, euler_element, gamma_shifted, gr_iso_gl, reconstruct_pseudoaction, ann_act_x, AnnElement};
use crate::derham::{check_d_intertwines, check_d_squared, check_f_conjugacy, check_ldw, check_ldw_literal, check_star_action, exactness_report, ExactnessReport};
use crate::dualx::{h_act_left, h_act_right, x_mul, XElement};
use crate::error::Result;
use crate::hopf::{hh_add, monomials, HElement, Hopf, MultiIndex, HH};
use crate::liecore::{omega_rep, presets, DRep, TraceForm};
use crate::matrix;
use crate::modules::build_tensor_w;
use crate::pseudoalg::{check_jacobi, check_module, check_s_closure, check_skew, cur_table, h_module_table, w_gen, w_table, AxiomReport};
use crate::rational::Q;
use crate::twosided::{Orient, PseudoValue};

/// One named check of a suite. A `known_deviation` check compares against a
/// printed formula that contradicts the surrounding definitions; its failure is
/// reported but does not fail the run.
#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub known_deviation: bool,
}

impl NamedCheck {
    pub fn new(name: &str, rep: AxiomReport) -> Self {
        NamedCheck { name: name.into(), checked: rep.checked, failures: rep.failures, known_deviation: false }
    }

    pub fn deviation(name: &str, rep: AxiomReport) -> Self {
        NamedCheck { known_deviation: true, ..Self::new(name, rep) }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Passed, or failed only as a recorded deviation.
    pub fn acceptable(&self) -> bool {
        self.passed() || self.known_deviation
    }

    pub fn to_json(&self) -> Value {
        let shown: Vec<&String> = self.failures.iter().take(10).collect();
        json!({
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "known_deviation": self.known_deviation,
            "failure_count": self.failures.len(),
            "failures": shown,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checks: Vec<NamedCheck>,
}

impl SuiteReport {
    pub fn push(&mut self, c: NamedCheck) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.acceptable())
    }

    pub fn strictly_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(|c| c.to_json()).collect())
    }
}

fn expect(rep: &mut AxiomReport, ok: bool, what: impl FnOnce() -> String) {
    rep.checked += 1;
    if !ok {
        rep.failures.push(what());
    }
}

fn mono(i: &MultiIndex) -> HElement {
    HElement::mono(i.clone(), Q::one())
}

type HHH = BTreeMap<(MultiIndex, MultiIndex, MultiIndex), Q>;

fn add3(m: &mut HHH, k: (MultiIndex, MultiIndex, MultiIndex), c: Q) {
    crate::hopf::add_into(m, k, c);
}

fn delta_left(hopf: &Hopf, h: &HElement) -> HHH {
    let mut out = HHH::new();
    for ((a, b), c) in hopf.coproduct(h) {
        for ((a1, a2), c2) in hopf.coproduct(&mono(&a)) {
            add3(&mut out, (a1, a2, b.clone()), &c * &c2);
        }
    }
    out
}

fn delta_right(hopf: &Hopf, h: &HElement) -> HHH {
    let mut out = HHH::new();
    for ((a, b), c) in hopf.coproduct(h) {
        for ((b1, b2), c2) in hopf.coproduct(&mono(&b)) {
            add3(&mut out, (a.clone(), b1, b2), &c * &c2);
        }
    }
    out
}

/// `m(S⊗id)` or `m(id⊗S)` on the first two legs of `(Δ⊗id)Δh`.
fn contract_first_two(hopf: &Hopf, t: &HHH, antipode_first: bool) -> HH {
    let mut out = HH::new();
    for ((a, b, c), x) in t {
        let (l, r) = if antipode_first { (hopf.antipode(&mono(a)), mono(b)) } else { (mono(a), hopf.antipode(&mono(b))) };
        for (k, y) in hopf.mul(&l, &r).iter() {
            hh_add(&mut out, (k.clone(), c.clone()), x * y);
        }
    }
    out
}

/// Associativity, coassociativity, `Δ(fg) = Δ(f)Δ(g)`, the antipode and counit
/// axioms, and `h_(-1)h_(2) ⊗ h_(3) = 1⊗h = h_(1)h_(-2) ⊗ h_(3)` on monomials of total degree ≤ `deg`.
pub fn hopf_suite(hopf: &Hopf, deg: usize) -> SuiteReport {
    let n = hopf.n();
    let monos = monomials(n, deg);
    let mut assoc = AxiomReport::default();
    let mut deprod = AxiomReport::default();
    for i in &monos {
        for j in monos.iter().filter(|j| i.deg() + j.deg() <= deg) {
            let ij = hopf.mono_product(i, j);
            for k in monos.iter().filter(|k| i.deg() + j.deg() + k.deg() <= deg) {
                let l = hopf.mul(&ij, &mono(k));
                let r = hopf.mul(&mono(i), &hopf.mono_product(j, k));
                expect(&mut assoc, l == r, || format!("({i}{j}){k}"));
            }
            let lhs = hopf.coproduct(&ij);
            let rhs = hopf.mul_hh(&hopf.coproduct(&mono(i)), &hopf.coproduct(&mono(j)));
            expect(&mut deprod, lhs == rhs, || format!("Δ({i}·{j})"));
        }
    }
    let mut coassoc = AxiomReport::default();
    let mut antip = AxiomReport::default();
    let mut counit = AxiomReport::default();
    let mut cou2 = AxiomReport::default();
    let z = MultiIndex::zero(n);
    for i in &monos {
        let h = mono(i);
        let left = delta_left(hopf, &h);
        expect(&mut coassoc, left == delta_right(hopf, &h), || format!("coassociativity at {i}"));
        let eps = HElement::one(n).scaled(&hopf.counit(&h));
        let dh = hopf.coproduct(&h);
        let mut s_left = HElement::zero(n);
        let mut s_right = HElement::zero(n);
        let mut e_left = HElement::zero(n);
        let mut e_right = HElement::zero(n);
        for ((a, b), c) in &dh {
            s_left.add_scaled(c, &hopf.mul(&hopf.antipode(&mono(a)), &mono(b)));
            s_right.add_scaled(c, &hopf.mul(&mono(a), &hopf.antipode(&mono(b))));
            e_left.add_scaled(&(c * hopf.counit(&mono(a))), &mono(b));
            e_right.add_scaled(&(c * hopf.counit(&mono(b))), &mono(a));
        }
        expect(&mut antip, s_left == eps && s_right == eps, || format!("antipode at {i}"));
        expect(&mut counit, e_left == h && e_right == h, || format!("counit at {i}"));
        let mut one_h = HH::new();
        hh_add(&mut one_h, (z.clone(), i.clone()), Q::one());
        let ok = contract_first_two(hopf, &left, true) == one_h && contract_first_two(hopf, &left, false) == one_h;
        expect(&mut cou2, ok, || format!("h_(-1)h_(2)⊗h_(3) at {i}"));
    }
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("associativity", assoc));
    s.push(NamedCheck::new("coassociativity", coassoc));
    s.push(NamedCheck::new("coproduct is multiplicative", deprod));
    s.push(NamedCheck::new("antipode axiom", antip));
    s.push(NamedCheck::new("counit axiom", counit));
    s.push(NamedCheck::new("antipode-counit relation on three legs", cou2));
    s
}

/// Left and right actions of `∂_i` on `x^j` modulo `fil_1 X`, the Leibniz rule
/// `h(xy) = (h_(1)x)(h_(2)y)` and the bimodule law `f(xg) = (fx)g`, within validity `d`.
pub fn dual_suite(hopf: &Hopf, d: usize) -> Result<SuiteReport> {
    let n = hopf.n();
    let lie = hopf.lie();
    let mut lr = AxiomReport::default();
    for i in 0..n {
        let di = HElement::gen(n, i);
        for j in 0..n {
            let xj = XElement::coord(n, j, d);
            let delta = if i == j { -Q::one() } else { Q::zero() };
            let mut left = XElement::from_terms(n, 1, [(MultiIndex::zero(n), delta.clone())]);
            let mut right = left.clone();
            for k in 0..n {
                let c = lie.c(i, k, j);
                if k < i {
                    left.add_term(MultiIndex::unit(n, k), -c.clone());
                }
                if k > i {
                    right.add_term(MultiIndex::unit(n, k), c.clone());
                }
            }
            let l = h_act_left(hopf, &di, &xj)?.truncate(1);
            let r = h_act_right(hopf, &xj, &di)?.truncate(1);
            expect(&mut lr, l.eq_within(&left), || format!("∂_{} x^{}", i + 1, j + 1));
            expect(&mut lr, r.eq_within(&right), || format!("x^{} ∂_{}", j + 1, i + 1));
        }
    }
    let small = monomials(n, 2);
    let xs: Vec<XElement> = small.iter().map(|k| XElement::mono(k.clone(), Q::one(), d)).collect();
    let mut leibniz = AxiomReport::default();
    for h in &small {
        let hh = mono(h);
        let dh = hopf.coproduct(&hh);
        for (a, x) in xs.iter().enumerate() {
            for y in &xs[a..] {
                let lhs = h_act_left(hopf, &hh, &x_mul(x, y))?;
                let mut rhs = XElement::zero(n, lhs.validity());
                for ((p, q), c) in &dh {
                    rhs.add_scaled(c, &x_mul(&h_act_left(hopf, &mono(p), x)?, &h_act_left(hopf, &mono(q), y)?));
                }
                expect(&mut leibniz, lhs.eq_within(&rhs), || format!("Leibniz h = {h}"));
            }
        }
    }
    let mut bimod = AxiomReport::default();
    for f in &small {
        for g in &small {
            for x in &xs {
                let lhs = h_act_left(hopf, &mono(f), &h_act_right(hopf, x, &mono(g))?)?;
                let rhs = h_act_right(hopf, &h_act_left(hopf, &mono(f), x)?, &mono(g))?;
                expect(&mut bimod, lhs.eq_within(&rhs), || format!("bimodule f = {f}, g = {g}"));
            }
        }
    }
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("actions of d on X modulo fil_1", lr));
    s.push(NamedCheck::new("Leibniz rule on X", leibniz));
    s.push(NamedCheck::new("X is an H-bimodule", bimod));
    Ok(s)
}

fn virasoro_check(hopf1: &Hopf) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let ell = w_gen(1, 0).scaled(&-Q::one());
    let br = w_table(hopf1).act(hopf1, &ell, &ell);
    let z = MultiIndex::zero(1);
    let d = MultiIndex::unit(1, 0);
    let mut rhs = PseudoValue::zero(1, 1, Orient::Left);
    rhs.push_raw(hopf1, &z, &d, &z, 0, &-Q::one());
    rhs.push_raw(hopf1, &d, &z, &z, 0, &Q::one());
    expect(&mut rep, br.same_element(hopf1, &rhs), || "[ℓ*ℓ] ≠ (1⊗∂ - ∂⊗1)⊗ℓ".into());
    rep
}

/// Skew-symmetry and Jacobi for W(d) and Cur sl2 over H, the module axiom for
/// W(d) acting on H, and the one-dimensional Virasoro specialization.
pub fn pseudo_suite(hopf: &Hopf) -> SuiteReport {
    let t = w_table(hopf);
    let cur = cur_table(hopf, &presets::sl2());
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("W(d) skew-symmetry", check_skew(hopf, &t)));
    s.push(NamedCheck::new("W(d) Jacobi identity", check_jacobi(hopf, &t)));
    s.push(NamedCheck::new("W(d) acts on H", check_module(hopf, &t, &h_module_table(hopf))));
    s.push(NamedCheck::new("Cur sl2 skew-symmetry", check_skew(hopf, &cur)));
    s.push(NamedCheck::new("Cur sl2 Jacobi identity", check_jacobi(hopf, &cur)));
    s.push(NamedCheck::new("Virasoro specialization", virasoro_check(&Hopf::new(presets::abelian(1)))));
    s
}

/// `Div^χ(s_ab) = 0` and zero divergence of bracket coefficients, for `χ = 0` and `χ = tr ad`.
pub fn s_suite(hopf: &Hopf, deg: usize) -> Result<SuiteReport> {
    let n = hopf.n();
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("S(d,0) closed under the bracket", check_s_closure(hopf, &TraceForm::zero(n), deg)?));
    s.push(NamedCheck::new("S(d,tr ad) closed under the bracket", check_s_closure(hopf, &hopf.lie().tr_ad(), deg)?));
    Ok(s)
}

fn commutator(a: &matrix::Mat, b: &matrix::Mat) -> matrix::Mat {
    matrix::sub(&matrix::mul(a, b), &matrix::mul(b, a))
}

/// Low-order brackets in W, the isomorphism `W_0/W_1 ≅ gl(d)`, the Euler
/// element, `γ(∂) + 1⊗∂ ∈ W_0` with class `ad ∂`, and reconstruction of
/// pseudoactions from the annihilation action, at truncation `d`.
pub fn annih_suite(hopf: &Hopf, d: usize) -> Result<SuiteReport> {
    let n = hopf.n();
    let z = MultiIndex::zero(n);
    let v = d;
    let x1 = |j: usize, i: usize| AnnElement::mono(&MultiIndex::unit(n, j), i, Q::one(), v);
    let mut low = AxiomReport::default();
    let mut hom = AxiomReport::default();
    for j in 0..n {
        for i in 0..n {
            let a = x1(j, i);
            for k in 0..n {
                let br = ann_bracket(hopf, &a, &AnnElement::mono(&z, k, Q::one(), v))?.truncate(0);
                let expected = if j == k { AnnElement::mono(&z, i, -Q::one(), v) } else { AnnElement::zero(n, v) };
                expect(&mut low, br.eq_within(&expected.truncate(0)), || format!("[x^{}⊗∂_{}, 1⊗∂_{}]", j + 1, i + 1, k + 1));
            }
            for l in 0..n {
                for k in 0..n {
                    let b = x1(l, k);
                    let br = ann_bracket(hopf, &a, &b)?;
                    let mut expected = AnnElement::zero(n, v);
                    if i == l {
                        expected.add_scaled(&Q::one(), &x1(j, k));
                    }
                    if j == k {
                        expected.add_scaled(&-Q::one(), &x1(l, i));
                    }
                    expect(&mut low, br.truncate(1).eq_within(&expected.truncate(1)), || {
                        format!("[x^{}⊗∂_{}, x^{}⊗∂_{}]", j + 1, i + 1, l + 1, k + 1)
                    });
                    let ok = gr_iso_gl(&br.truncate(1)).map(|m| m == commutator(&gr_iso_gl(&a).unwrap(), &gr_iso_gl(&b).unwrap()));
                    expect(&mut hom, ok.unwrap_or(false), || format!("gr of [x^{}⊗∂_{}, x^{}⊗∂_{}]", j + 1, i + 1, l + 1, k + 1));
                }
            }
        }
    }
    let e = euler_element(hopf, d)?;
    let mut euler_def = AxiomReport::default();
    for k in monomials(n, d - 2) {
        let y = ann_act_x(hopf, &e, &XElement::mono(k.clone(), Q::one(), d))?;
        let expected = XElement::mono(k.clone(), Q::from_integer((k.deg() as i64).into()), d);
        expect(&mut euler_def, y.eq_within(&expected), || format!("Euler element on x_{k}"));
    }
    let id = matrix::identity(n);
    let class = gr_iso_gl(&e.truncate(1))?;
    let mut euler_printed = AxiomReport::default();
    expect(&mut euler_printed, class == id, || {
        format!("class of the Euler element is {} · Id, printed formula gives Id", if class == matrix::scale(&id, &-Q::one()) { "-1" } else { "not a multiple of" })
    });
    let mut euler_class = AxiomReport::default();
    expect(&mut euler_class, class == matrix::scale(&id, &-Q::one()), || "class of the Euler element is not -Id".into());
    let mut gamma = AxiomReport::default();
    let ad = hopf.lie().ad();
    for (i, adi) in ad.iter().enumerate() {
        let g = gamma_shifted(hopf, i, d)?;
        expect(&mut gamma, g.in_w(0) && gr_iso_gl(&g)? == *adi, || format!("γ(∂_{}) + 1⊗∂_{}", i + 1, i + 1));
    }
    let mut recon = AxiomReport::default();
    let mut modules = vec![build_tensor_w(hopf, &DRep::trivial(hopf.lie(), 1), &omega_rep(n, 0)?)?, build_tensor_w(hopf, &DRep::trivial(hopf.lie(), 1), &omega_rep(n, 1)?)?];
    modules.push(build_tensor_w(hopf, &DRep::adjoint(hopf.lie()), &omega_rep(n, 0)?)?);
    for m in &modules {
        for i in 0..n {
            let a = w_gen(n, i);
            for k in 0..m.rank() {
                let g = m.gen(k);
                let direct = m.table.act(hopf, &a, &g);
                let depth = direct.outer_degree().unwrap_or(0) + 1;
                let rebuilt = reconstruct_pseudoaction(hopf, &m.table, &a, &g, depth)?;
                expect(&mut recon, rebuilt.same_element(hopf, &direct), || format!("{}: 1⊗∂_{} on generator {}", m.name, i + 1, k + 1));
            }
        }
    }
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("low-order brackets in W", low));
    s.push(NamedCheck::new("W_0/W_1 → gl(d) is a homomorphism", hom));
    s.push(NamedCheck::new("Euler element acts as the Euler derivation", euler_def));
    s.push(NamedCheck::new("Euler element has class -Id", euler_class));
    s.push(NamedCheck::deviation("Euler element matches the printed formula -Σ x^i⊗∂_i", euler_printed));
    s.push(NamedCheck::new("γ(∂) + 1⊗∂ lies in W_0 with class ad ∂", gamma));
    s.push(NamedCheck::new("pseudoaction reconstructed from the annihilation action", recon));
    Ok(s)
}

/// `d² = 0`, both operator orders of the contraction identity for `d_Π`, the
/// star action against the tensor table, `d_Π` as a homomorphism, the `F`
/// conjugacy on `fil^3`, and filtration-local exactness for `p ≤ pstar`.
pub fn derham_suite(hopf: &Hopf, pi: &DRep, pstar: usize) -> Result<(SuiteReport, ExactnessReport)> {
    let mut s = SuiteReport::default();
    s.push(NamedCheck::new("d∘d = 0", check_d_squared(hopf, pi)?));
    s.push(NamedCheck::new("d(1⊗ι_i α) identity, quadratic term e_j^l(e_i^k α)", check_ldw(hopf, pi)?));
    s.push(NamedCheck::deviation("d(1⊗ι_i α) identity, quadratic term read as e_i^k e_j^l α", check_ldw_literal(hopf, pi)?));
    s.push(NamedCheck::new("star action equals the tensor-module action", check_star_action(hopf)?));
    s.push(NamedCheck::new("d intertwines the W(d)-action", check_d_intertwines(hopf, pi)?));
    s.push(NamedCheck::new("F conjugates the twisted d-action to the plain one", check_f_conjugacy(hopf, pi, 3)));
    let ex = exactness_report(hopf, pi, pstar)?;
    let mut rep = AxiomReport::default();
    for e in &ex.entries {
        expect(&mut rep, e.passed, || format!("degree {} fil {}: {} (ker {}, image {}, fil {})", e.degree, e.fil, e.expected, e.ker_dim, e.image_dim, e.fil_dim));
    }
    s.push(NamedCheck::new("filtration-local exactness", rep));
    Ok((s, ex))
}

/// Everything above for one algebra; the S suite only when `dim d ≥ 3`.
pub fn verify_all(hopf: &Hopf, d: usize) -> Result<SuiteReport> {
    let mut s = hopf_suite(hopf, 4);
    s.extend(dual_suite(hopf, d)?);
    s.extend(pseudo_suite(hopf));
    if hopf.n() >= 3 {
        s.extend(s_suite(hopf, 1)?);
    }
    s.extend(annih_suite(hopf, d)?);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_suite_passes_on_presets() {
        for lie in presets::all() {
            let hopf = Hopf::new(lie);
            let r = hopf_suite(&hopf, 3);
            assert!(r.strictly_passed(), "{}: {:?}", hopf.lie().name, r.to_json());
        }
    }

    #[test]
    fn dual_suite_on_heis3() {
        let hopf = Hopf::new(presets::heis3());
        let r = dual_suite(&hopf, 6).unwrap();
        assert!(r.strictly_passed(), "{:?}", r.to_json());
    }

    #[test]
    fn annih_suite_flags_only_the_printed_euler_sign() {
        let hopf = Hopf::new(presets::solv2());
        let r = annih_suite(&hopf, 5).unwrap();
        assert!(r.passed(), "{:?}", r.to_json());
        let failing: Vec<&str> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        assert_eq!(failing, vec!["Euler element matches the printed formula -Σ x^i⊗∂_i"]);
    }

    #[test]
    fn derham_suite_on_abelian2() {
        let hopf = Hopf::new(presets::abelian(2));
        let (r, ex) = derham_suite(&hopf, &DRep::trivial(hopf.lie(), 1), 3).unwrap();
        assert!(r.strictly_passed(), "{:?}", r.to_json());
        assert!(ex.passed());
    }

    #[test]
    fn corrupted_algebra_breaks_jacobi() {
        let bad = presets::heis3().corrupted(1, 2, 1, Q::one());
        let hopf = Hopf::new(bad);
        assert!(!pseudo_suite(&hopf).strictly_passed());
    }
}
