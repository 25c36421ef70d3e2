//! The pseudoalgebras W(d), Cur g and S(d,χ), the divergence, and checkers
//! for skew-symmetry, Jacobi and module axioms on generators.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freemod::ModuleVector;
use crate::hopf::{monomials, HElement, Hopf, MultiIndex};
use crate::liecore::{LieData, TraceForm};
use crate::rational::Q;
use crate::twosided::{axiom_defect, skew_defect, ActionTable, Orient, PseudoValue};

/// Element of `W(d) = H ⊗ d`: a module vector of rank N.
pub type WElement = ModuleVector;

/// `(1⊗∂_i) * (1⊗∂_j) = (1⊗1)⊗(1⊗[∂_i,∂_j]) - (1⊗∂_i)⊗(1⊗∂_j) + (∂_j⊗1)⊗(1⊗∂_i)`
pub fn w_table(hopf: &Hopf) -> ActionTable {
    let n = hopf.n();
    let z = MultiIndex::zero(n);
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = PseudoValue::zero(n, n, Orient::Left);
                    for (k, c) in hopf.lie().bracket_basis(i, j).iter().enumerate() {
                        p.add_normal(z.clone(), z.clone(), k, c.clone());
                    }
                    p.push_raw(hopf, &z, &MultiIndex::unit(n, i), &z, j, &-Q::one());
                    p.add_normal(MultiIndex::unit(n, j), z.clone(), i, Q::one());
                    p
                })
                .collect()
        })
        .collect();
    ActionTable::new(n, n, n, entries)
}

pub fn w_bracket(hopf: &Hopf, u: &WElement, v: &WElement) -> PseudoValue {
    w_table(hopf).act(hopf, u, v)
}

/// Current pseudoalgebra `H ⊗ g`: `(1⊗a) * (1⊗b) = (1⊗1) ⊗_H (1⊗[a,b])`.
pub fn cur_table(hopf: &Hopf, g: &LieData) -> ActionTable {
    let n = hopf.n();
    let m = g.dim();
    let z = MultiIndex::zero(n);
    let entries = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let mut p = PseudoValue::zero(n, m, Orient::Left);
                    for (k, c) in g.bracket_basis(a, b).iter().enumerate() {
                        p.add_normal(z.clone(), z.clone(), k, c.clone());
                    }
                    p
                })
                .collect()
        })
        .collect();
    ActionTable::new(n, m, m, entries)
}

pub fn cur_bracket(hopf: &Hopf, g: &LieData, u: &ModuleVector, v: &ModuleVector) -> PseudoValue {
    cur_table(hopf, g).act(hopf, u, v)
}

/// W(d) acting on H by `(f⊗a) * g = -(f ⊗ g a) ⊗_H 1`.
pub fn h_module_table(hopf: &Hopf) -> ActionTable {
    let n = hopf.n();
    let z = MultiIndex::zero(n);
    let entries = (0..n)
        .map(|i| {
            let mut p = PseudoValue::zero(n, 1, Orient::Left);
            p.push_raw(hopf, &z, &MultiIndex::unit(n, i), &z, 0, &-Q::one());
            vec![p]
        })
        .collect();
    ActionTable::new(n, n, 1, entries)
}

/// `Div^χ(Σ h_i ⊗ ∂_i) = Σ h_i (∂_i + χ(∂_i))`
pub fn div_chi(hopf: &Hopf, w: &WElement, chi: &TraceForm) -> HElement {
    let n = hopf.n();
    let mut out = HElement::zero(n);
    for i in 0..n {
        let hi = w.component(i);
        if hi.is_zero() {
            continue;
        }
        let bar = HElement::gen(n, i).plus(&HElement::one(n).scaled(&chi.0[i]));
        out = out.plus(&hopf.mul(&hi, &bar));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGenerator {
    pub a: usize,
    pub b: usize,
    pub w: WElement,
}

/// `s_ab = (∂_a + χ(∂_a)) ⊗ ∂_b - (∂_b + χ(∂_b)) ⊗ ∂_a - 1 ⊗ [∂_a, ∂_b]`
pub fn s_generator(hopf: &Hopf, a: usize, b: usize, chi: &TraceForm) -> SGenerator {
    let n = hopf.n();
    let z = MultiIndex::zero(n);
    let mut w = WElement::zero(n, n);
    w.add_term(MultiIndex::unit(n, a), b, Q::one());
    w.add_term(z.clone(), b, chi.0[a].clone());
    w.add_term(MultiIndex::unit(n, b), a, -Q::one());
    w.add_term(z.clone(), a, -chi.0[b].clone());
    for (k, c) in hopf.lie().bracket_basis(a, b).iter().enumerate() {
        w.add_term(z.clone(), k, -c.clone());
    }
    SGenerator { a, b, w }
}

/// All `s_ab` with `a < b`; S-type work needs `N ≥ 3`.
pub fn s_generators(hopf: &Hopf, chi: &TraceForm) -> Result<Vec<SGenerator>> {
    let n = hopf.n();
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    chi.validate(hopf.lie())?;
    Ok((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| s_generator(hopf, a, b, chi)).collect())
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

pub fn check_skew(hopf: &Hopf, bracket: &ActionTable) -> AxiomReport {
    let mut rep = AxiomReport::default();
    for i in 0..bracket.gens {
        for j in i..bracket.gens {
            rep.checked += 1;
            let d = skew_defect(hopf, bracket, i, j);
            if !d.is_zero() {
                rep.failures.push(format!("skew ({}, {}): {} nonzero terms", i + 1, j + 1, d.iter().count()));
            }
        }
    }
    rep
}

/// Module axiom on all generator triples; with `action = bracket` this is Jacobi.
pub fn check_module(hopf: &Hopf, bracket: &ActionTable, action: &ActionTable) -> AxiomReport {
    let mut rep = AxiomReport::default();
    for i in 0..bracket.gens {
        for j in 0..bracket.gens {
            for k in 0..action.rank {
                rep.checked += 1;
                let d = axiom_defect(hopf, bracket, action, i, j, k);
                if !d.is_zero() {
                    rep.failures.push(format!("triple ({}, {}, {}): {} nonzero terms", i + 1, j + 1, k + 1, d.support_size()));
                }
            }
        }
    }
    rep
}

pub fn check_jacobi(hopf: &Hopf, bracket: &ActionTable) -> AxiomReport {
    check_module(hopf, bracket, bracket)
}

/// Brackets of `h s_ab` and `h' s_cd` for monomials `h, h'` of degree at most
/// `deg`; every left-normal coefficient must have zero divergence.
pub fn check_s_closure(hopf: &Hopf, chi: &TraceForm, deg: usize) -> Result<AxiomReport> {
    let gens = s_generators(hopf, chi)?;
    let table = w_table(hopf);
    let n = hopf.n();
    let mut rep = AxiomReport::default();
    for s in &gens {
        if !div_chi(hopf, &s.w, chi).is_zero() {
            rep.failures.push(format!("Div s_{}{} ≠ 0", s.a + 1, s.b + 1));
        }
    }
    let monos = monomials(n, deg);
    for s in &gens {
        for t in &gens {
            for h in &monos {
                for h2 in &monos {
                    let a = s.w.mono_mul(hopf, h);
                    let b = t.w.mono_mul(hopf, h2);
                    rep.checked += 1;
                    let br = table.act(hopf, &a, &b);
                    for (i, w) in br.coefficients() {
                        if !div_chi(hopf, &w, chi).is_zero() {
                            rep.failures.push(format!(
                                "[{} s_{}{} * {} s_{}{}] coefficient at {}",
                                h,
                                s.a + 1,
                                s.b + 1,
                                h2,
                                t.a + 1,
                                t.b + 1,
                                i
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Convenience: `1 ⊗ ∂_i` in W(d).
pub fn w_gen(n: usize, i: usize) -> WElement {
    WElement::gen(n, n, i)
}

pub fn is_zero_form(chi: &TraceForm) -> bool {
    chi.0.iter().all(|x| x.is_zero())
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
    fn virasoro_specialization() {
        // [(1⊗∂)*(1⊗∂)] = (∂⊗1 - 1⊗∂) ⊗_H (1⊗∂)
        let hopf = Hopf::new(presets::abelian(1));
        let br = w_bracket(&hopf, &w_gen(1, 0), &w_gen(1, 0));
        let mut expected = PseudoValue::zero(1, 1, Orient::Left);
        let z = mi(&[0]);
        let d = mi(&[1]);
        expected.push_raw(&hopf, &d, &z, &z, 0, &q(1));
        expected.push_raw(&hopf, &z, &d, &z, 0, &q(-1));
        assert!(br.same_element(&hopf, &expected));
        // with ℓ = -(1⊗∂): [ℓ*ℓ] = (1⊗∂ - ∂⊗1) ⊗_H ℓ
        let ell = w_gen(1, 0).scaled(&q(-1));
        let br2 = w_bracket(&hopf, &ell, &ell);
        let mut rhs = PseudoValue::zero(1, 1, Orient::Left);
        rhs.push_raw(&hopf, &z, &d, &z, 0, &q(-1));
        rhs.push_raw(&hopf, &d, &z, &z, 0, &q(1));
        assert!(br2.same_element(&hopf, &rhs));
    }

    #[test]
    fn abelian_pair_bracket() {
        // [(1⊗∂_1)*(1⊗∂_2)] = (∂_2⊗1)⊗(1⊗∂_1) - (1⊗∂_1)⊗(1⊗∂_2)
        let hopf = Hopf::new(presets::abelian(2));
        let br = w_bracket(&hopf, &w_gen(2, 0), &w_gen(2, 1));
        let z = mi(&[0, 0]);
        let mut expected = PseudoValue::zero(2, 2, Orient::Left);
        expected.push_raw(&hopf, &mi(&[0, 1]), &z, &z, 0, &q(1));
        expected.push_raw(&hopf, &z, &mi(&[1, 0]), &z, 1, &q(-1));
        assert!(br.same_element(&hopf, &expected));
    }

    #[test]
    fn current_brackets() {
        let sl2 = presets::sl2();
        let hopf = Hopf::new(sl2.clone());
        let e = ModuleVector::gen(3, 3, 0);
        let f = ModuleVector::gen(3, 3, 2);
        let br = cur_bracket(&hopf, &sl2, &e, &f);
        let mut expected = PseudoValue::zero(3, 3, Orient::Left);
        expected.add_normal(mi(&[0, 0, 0]), mi(&[0, 0, 0]), 1, q(1));
        assert_eq!(br, expected);
        assert!(cur_bracket(&hopf, &sl2, &e, &e).is_zero());
        // [(∂⊗e)*(1⊗f)] = (∂⊗1)⊗(1⊗h)
        let de = ModuleVector::basis(3, 3, mi(&[0, 1, 0]), 0);
        let br = cur_bracket(&hopf, &sl2, &de, &f);
        let mut expected = PseudoValue::zero(3, 3, Orient::Left);
        expected.add_normal(mi(&[0, 1, 0]), mi(&[0, 0, 0]), 1, q(1));
        assert_eq!(br, expected);
    }

    #[test]
    fn divergence_examples() {
        let hopf = Hopf::new(presets::solv2());
        let n = 2;
        assert_eq!(div_chi(&hopf, &w_gen(n, 0), &TraceForm::zero(n)), HElement::gen(n, 0));
        let tr = hopf.lie().tr_ad();
        assert_eq!(div_chi(&hopf, &w_gen(n, 0), &tr), HElement::gen(n, 0).plus(&HElement::one(n)));
    }

    #[test]
    fn s_generator_examples() {
        let hopf = Hopf::new(presets::abelian(3));
        let chi = TraceForm::zero(3);
        let s = s_generator(&hopf, 0, 1, &chi);
        let mut expected = WElement::zero(3, 3);
        expected.add_term(mi(&[1, 0, 0]), 1, q(1));
        expected.add_term(mi(&[0, 1, 0]), 0, q(-1));
        assert_eq!(s.w, expected);
        assert!(s_generator(&hopf, 1, 1, &chi).w.is_zero());
        let heis = Hopf::new(presets::heis3());
        let s13 = s_generator(&heis, 0, 2, &chi);
        let mut expected = WElement::zero(3, 3);
        expected.add_term(mi(&[1, 0, 0]), 2, q(1));
        expected.add_term(mi(&[0, 0, 1]), 0, q(-1));
        assert_eq!(s13.w, expected);
        let small = Hopf::new(presets::abelian(2));
        assert!(matches!(s_generators(&small, &TraceForm::zero(2)), Err(Error::DimensionTooSmall(2))));
    }

    #[test]
    fn w_axioms_on_solv2() {
        let hopf = Hopf::new(presets::solv2());
        let t = w_table(&hopf);
        assert!(check_skew(&hopf, &t).passed());
        assert!(check_jacobi(&hopf, &t).passed());
        assert!(check_module(&hopf, &t, &h_module_table(&hopf)).passed());
    }
}
