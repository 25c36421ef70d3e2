//! Acceptance criteria, one line each. Known deviations are printed but do not
//! fail the run; any other failure exits nonzero.

use std::process::ExitCode;
use std::time::Instant;

use psa_core::classify::{classify_s, classify_w, constant_part, fil0_basis, pi_prime, sing_equals_span, solve_psi, Verdict};
use psa_core::derham::{pseudo_d, twisted_forms};
use psa_core::freemod::FilBasis;
use psa_core::hopf::Hopf;
use psa_core::liecore::{omega_rep, presets, DRep, GlRep, LieData, TraceForm};
use psa_core::linalg::Echelon;
use psa_core::modules::{build_tensor_s, build_tensor_w, sing_solve_s, sing_solve_w, solve_intertwiner, w_acting};
use psa_core::rational::zero;
use psa_core::suites::{annih_suite, derham_suite, dual_suite, hopf_suite, pseudo_suite, s_suite, SuiteReport};
use psa_core::Result;

#[derive(Default)]
struct Outcome {
    checked: usize,
    failures: Vec<String>,
    deviations: Vec<String>,
}

impl Outcome {
    fn suite(&mut self, tag: &str, s: &SuiteReport) {
        for c in &s.checks {
            self.checked += c.checked.max(1);
            if c.passed() {
                continue;
            }
            let line = format!("{tag}: {} ({} failures)", c.name, c.failures.len());
            if c.known_deviation {
                self.deviations.push(line);
            } else {
                self.failures.push(line);
            }
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn run(&mut self, f: impl FnOnce(&mut Outcome) -> Result<()>) {
        if let Err(e) = f(self) {
            self.failures.push(format!("error: {e}"));
        }
    }
}

fn small_presets() -> Vec<LieData> {
    vec![presets::abelian(1), presets::abelian(2), presets::abelian(3), presets::heis3(), presets::sl2(), presets::solv2()]
}

fn two_dim_rep(lie: &LieData) -> DRep {
    let nil = DRep::nil2(lie);
    if nil.validate(lie).is_ok() {
        return nil;
    }
    if lie.dim() == 2 {
        return DRep::adjoint(lie);
    }
    DRep::trivial(lie, 2)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hopf_criterion(o: &mut Outcome) {
    for lie in small_presets() {
        let name = lie.name.clone();
        o.suite(&name, &hopf_suite(&Hopf::new(lie), 4));
    }
}

fn dual_criterion(o: &mut Outcome) {
    for lie in presets::all() {
        let name = lie.name.clone();
        match dual_suite(&Hopf::new(lie), 6) {
            Ok(s) => o.suite(&name, &s),
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
    }
}

fn pseudo_criterion(o: &mut Outcome) {
    for lie in presets::all() {
        let name = lie.name.clone();
        o.suite(&name, &pseudo_suite(&Hopf::new(lie)));
    }
}

fn s_criterion(o: &mut Outcome) {
    for lie in [presets::abelian(3), presets::heis3(), presets::sl2()] {
        let name = lie.name.clone();
        match s_suite(&Hopf::new(lie), 2) {
            Ok(s) => o.suite(&name, &s),
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
    }
}

fn annih_criterion(o: &mut Outcome) {
    for lie in presets::all() {
        let name = lie.name.clone();
        match annih_suite(&Hopf::new(lie), 6) {
            Ok(s) => o.suite(&name, &s),
            Err(e) => o.failures.push(format!("{name}: {e}")),
        }
    }
}

fn derham_criterion(o: &mut Outcome) {
    for lie in [presets::abelian(2), presets::abelian(3), presets::solv2(), presets::heis3()] {
        let hopf = Hopf::new(lie.clone());
        for pi in [DRep::trivial(&lie, 1), two_dim_rep(&lie)] {
            let tag = format!("{} dim Π {}", lie.name, pi.dim);
            match derham_suite(&hopf, &pi, 4) {
                Ok((s, ex)) => {
                    o.suite(&tag, &s);
                    let tops = ex.entries.iter().filter(|e| e.degree == lie.dim() && (1..=4).contains(&e.fil)).count();
                    o.expect(tops == 4, || format!("{tag}: {tops} top-degree entries for p in 1..=4"));
                }
                Err(e) => o.failures.push(format!("{tag}: {e}")),
            }
        }
    }
}

fn w_sing_criterion(o: &mut Outcome) {
    for lie in [presets::abelian(2), presets::solv2(), presets::abelian(3), presets::heis3()] {
        let big_n = lie.dim();
        let hopf = Hopf::new(lie.clone());
        for pi in [DRep::trivial(&lie, 1), two_dim_rep(&lie)] {
            let tag = format!("{} dim Π {}", lie.name, pi.dim);
            o.run(|o| {
                let v = build_tensor_w(&hopf, &pi, &GlRep::trivial(big_n, 1))?;
                let sing = sing_solve_w(&hopf, &v, 2)?;
                o.expect(sing.agree, || format!("{tag} Ω⁰: systems disagree"));
                o.expect(sing.dim() == pi.dim, || format!("{tag} Ω⁰: dim sing {} vs {}", sing.dim(), pi.dim));
                o.expect(sing_equals_span(&sing, big_n, v.rank(), &fil0_basis(big_n, v.rank())), || format!("{tag} Ω⁰: sing ≠ fil⁰"));
                Ok(())
            });
        }
        let pi = DRep::trivial(&lie, 1);
        for n in 1..=big_n {
            let tag = format!("{} Ω{n}", lie.name);
            o.run(|o| {
                let v = build_tensor_w(&hopf, &pi, &omega_rep(big_n, n)?)?;
                let sing = sing_solve_w(&hopf, &v, 2)?;
                let want = binom(big_n, n) + binom(big_n, n - 1);
                o.expect(sing.agree, || format!("{tag}: systems disagree"));
                o.expect(sing.dim() == want, || format!("{tag}: dim sing {} vs {want}", sing.dim()));
                Ok(())
            });
        }
        o.run(|o| {
            let v = build_tensor_w(&hopf, &pi, &GlRep::sym2_dual(big_n))?;
            let sing = sing_solve_w(&hopf, &v, 2)?;
            o.expect(sing.agree, || format!("{} sym2: systems disagree", lie.name));
            o.expect(sing_equals_span(&sing, big_n, v.rank(), &fil0_basis(big_n, v.rank())), || format!("{} sym2: sing ≠ fil⁰", lie.name));
            Ok(())
        });
    }
}

fn s_sing_criterion(o: &mut Outcome) {
    for lie in [presets::abelian(3), presets::heis3()] {
        let hopf = Hopf::new(lie.clone());
        let pi = DRep::trivial(&lie, 1);
        let chi = TraceForm::zero(3);
        for (n, want) in [(0, 4), (1, 7), (2, 6)] {
            let tag = format!("{} Ω{n}", lie.name);
            o.run(|o| {
                let v = build_tensor_s(&hopf, &pi, &omega_rep(3, n)?)?;
                let sing = sing_solve_s(&hopf, &v, &chi, 3)?;
                o.expect(sing.agree, || format!("{tag}: systems disagree"));
                o.expect(sing.dim() == want, || format!("{tag}: dim sing {} vs {want}", sing.dim()));
                if n == 0 {
                    let psi = solve_psi(&hopf, &pi, &chi)?;
                    o.expect(psi.is_some(), || format!("{tag}: no ψ"));
                    if let Some(psi) = psi {
                        let d_prime = pseudo_d(&hopf, &pi_prime(&hopf, &pi, &chi), 2)?;
                        let mut expected = fil0_basis(3, v.rank());
                        expected.extend(d_prime.images.iter().map(|g| psi.apply(&hopf, g)));
                        o.expect(sing_equals_span(&sing, 3, v.rank(), &expected), || format!("{tag}: sing ≠ fil⁰ + ψ d'(fil⁰ Ω²)"));
                    }
                }
                Ok(())
            });
        }
    }
}

fn submodule_criterion(o: &mut Outcome) {
    for lie in [presets::abelian(2), presets::solv2(), presets::abelian(3), presets::heis3()] {
        let big_n = lie.dim();
        let hopf = Hopf::new(lie.clone());
        let pi = DRep::trivial(&lie, 1);
        for n in 1..=big_n {
            let tag = format!("{} Ω{n}", lie.name);
            o.run(|o| {
                let r = classify_w(&hopf, &pi, &omega_rep(big_n, n)?, 2)?;
                let want = if n < big_n { Verdict::ReducibleUniqueSubmodule } else { Verdict::TopDegree };
                o.expect(r.verdict == want, || format!("{tag}: verdict {:?}", r.verdict));
                for c in r.checks.iter().filter(|c| !c.passed) {
                    o.failures.push(format!("{tag}: {}", c.name));
                }
                o.checked += r.checks.len();
                Ok(())
            });
        }
    }
    let lie = presets::abelian(3);
    let hopf = Hopf::new(lie.clone());
    o.run(|o| {
        let r = classify_s(&hopf, &DRep::trivial(&lie, 1), &omega_rep(3, 1)?, &TraceForm::zero(3), 3)?;
        o.expect(r.verdict == Verdict::NestedSubmodules, || format!("abelian3 S Ω1: verdict {:?}", r.verdict));
        for c in r.checks.iter().filter(|c| !c.passed) {
            o.failures.push(format!("abelian3 S Ω1: {}", c.name));
        }
        o.checked += r.checks.len();
        Ok(())
    });
}

fn intertwiner_criterion(o: &mut Outcome) {
    let lie = presets::abelian(2);
    let hopf = Hopf::new(lie.clone());
    let pi = DRep::trivial(&lie, 1);
    o.run(|o| {
        let src = twisted_forms(&hopf, &pi, 0)?;
        let dst = twisted_forms(&hopf, &pi, 1)?;
        let sols = solve_intertwiner(&hopf, &w_acting(2), &src, &dst, 2);
        o.expect(sols.len() == 1, || format!("Hom(Ω⁰, Ω¹) has dimension {}", sols.len()));
        let d = pseudo_d(&hopf, &pi, 0)?;
        let fil = FilBasis::new(2, dst.rank(), 2);
        let mut e = Echelon::new();
        for v in sols.iter().flat_map(|m| m.images.iter()).chain(d.images.iter()) {
            match fil.coords(v) {
                Some(c) => {
                    e.insert(c);
                }
                None => o.failures.push("intertwiner image outside fil^2".into()),
            }
        }
        o.expect(e.rank() == 1, || format!("solutions and d span rank {}", e.rank()));
        Ok(())
    });
    let lie = presets::abelian(3);
    let hopf = Hopf::new(lie.clone());
    o.run(|o| {
        let psi = solve_psi(&hopf, &DRep::trivial(&lie, 1), &TraceForm::zero(3))?;
        o.expect(psi.is_some(), || "no ψ with invertible constant part on abelian3".into());
        if let Some(m) = psi {
            let c = constant_part(&m);
            o.expect(c.len() == 1 && c[0].len() == 1 && c[0][0] != zero(), || "ψ constant part not invertible".into());
        }
        Ok(())
    });
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn(&mut Outcome))> = vec![
        ("Hopf axioms on PBW monomials of degree ≤ 4", hopf_criterion),
        ("dual space actions, Leibniz and bimodule laws", dual_criterion),
        ("pseudoalgebra skew-symmetry and Jacobi, Cur sl2, Virasoro", pseudo_criterion),
        ("S(d,χ) closure for χ = 0 and tr ad", s_criterion),
        ("annihilation algebra brackets, Euler element, γ, reconstruction", annih_criterion),
        ("pseudo de Rham complex identities and exactness", derham_criterion),
        ("W singular vectors", w_sing_criterion),
        ("S singular vectors", s_sing_criterion),
        ("submodule structure", submodule_criterion),
        ("intertwiners d and ψ", intertwiner_criterion),
    ];
    let mut unexpected = 0;
    for (k, (title, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        f(&mut o);
        let secs = start.elapsed().as_secs_f64();
        let status = match (o.failures.is_empty(), o.deviations.is_empty()) {
            (true, true) => "PASS",
            (true, false) => "FAIL (known deviation)",
            (false, _) => "FAIL",
        };
        println!("criterion {:>2}: {status}: {title} [{} checks, {secs:.1}s]", k + 1, o.checked);
        for d in &o.deviations {
            println!("    known deviation: {d}");
        }
        for f in o.failures.iter().take(10) {
            println!("    failure: {f}");
        }
        if !o.failures.is_empty() {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    }
}
