//! Lie algebras given by structure constants, trace forms, and explicit
//! representations of d and gl(d), including the exterior powers of d*.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, Mat};
use crate::rational::{q, Q};

/// Structure constants `[∂_i, ∂_j] = Σ_k c[i][j][k] ∂_k`, stored fully
/// antisymmetric after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieData {
    pub name: String,
    n: usize,
    c: Vec<Vec<Vec<Q>>>,
}

impl LieData {
    /// Builds from entries `(i, j, k, c)` meaning `c_ij^k = c`. Entries with
    /// `i > j` are accepted and must agree with the antisymmetric completion.
    pub fn from_entries(name: &str, n: usize, entries: &[(usize, usize, usize, Q)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        let mut c = vec![vec![vec![Q::zero(); n]; n]; n];
        let mut seen = vec![vec![vec![false; n]; n]; n];
        for (i, j, k, x) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::DimensionMismatch { expected: n, found: i.max(j).max(k) + 1 });
            }
            if i == j {
                if !x.is_zero() {
                    return Err(Error::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            let (a, b, s) = if i < j { (i, j, x.clone()) } else { (j, i, -x.clone()) };
            if seen[a][b][k] {
                if c[a][b][k] != s {
                    return Err(Error::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            seen[a][b][k] = true;
            c[a][b][k] = s.clone();
            c[b][a][k] = -s;
        }
        Ok(Self { name: name.to_string(), n, c })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let s = &u[i] * &v[j];
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|x| x.is_zero())
    }

    /// Entries with `i < j` and nonzero constant.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Q)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in 0..self.n {
                    if !self.c[i][j][k].is_zero() {
                        out.push((i, j, k, self.c[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    /// Same constants with one entry overwritten (both orderings), skipping
    /// validation. Used for negative controls.
    pub fn corrupted(&self, i: usize, j: usize, k: usize, x: Q) -> Self {
        let mut out = self.clone();
        out.c[i][j][k] = x.clone();
        out.c[j][i][k] = -x;
        out.name = format!("{}-corrupted", self.name);
        out
    }

    /// `(ad ∂_i)_{kj} = c_ij^k`
    pub fn ad(&self) -> Vec<Mat> {
        (0..self.n)
            .map(|i| {
                let mut m = matrix::zeros(self.n, self.n);
                for j in 0..self.n {
                    for k in 0..self.n {
                        m[k][j] = self.c[i][j][k].clone();
                    }
                }
                m
            })
            .collect()
    }

    /// `tr ad(∂_i) = Σ_k c_ik^k`
    pub fn tr_ad(&self) -> TraceForm {
        TraceForm((0..self.n).map(|i| (0..self.n).map(|k| self.c[i][k][k].clone()).sum()).collect())
    }
}

pub fn validate_lie(data: &LieData) -> Result<()> {
    let n = data.n;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if data.c[i][j][k] != -data.c[j][i][k].clone() {
                    return Err(Error::AntisymmetryViolation { i, j, k });
                }
            }
        }
    }
    let e = |i: usize| -> Vec<Q> { (0..n).map(|t| if t == i { Q::one() } else { Q::zero() }).collect() };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (e(i), e(j), e(k));
                let t1 = data.bracket(&data.bracket(&a, &b), &c);
                let t2 = data.bracket(&data.bracket(&b, &c), &a);
                let t3 = data.bracket(&data.bracket(&c, &a), &b);
                let defect: Vec<Q> = (0..n).map(|t| &t1[t] + &t2[t] + &t3[t]).collect();
                if defect.iter().any(|x| !x.is_zero()) {
                    return Err(Error::JacobiViolation { i, j, k, defect });
                }
            }
        }
    }
    Ok(())
}

pub mod presets {
    use super::*;

    pub fn abelian(n: usize) -> LieData {
        LieData::from_entries(&format!("abelian{n}"), n, &[]).unwrap()
    }

    /// `[∂_1, ∂_2] = ∂_3`
    pub fn heis3() -> LieData {
        LieData::from_entries("heis3", 3, &[(0, 1, 2, q(1))]).unwrap()
    }

    /// Basis order `(e, h, f)` with `[e,h] = -2e`, `[e,f] = h`, `[h,f] = -2f`.
    pub fn sl2() -> LieData {
        LieData::from_entries("sl2", 3, &[(0, 1, 0, q(-2)), (0, 2, 1, q(1)), (1, 2, 2, q(-2))]).unwrap()
    }

    /// `[∂_1, ∂_2] = ∂_2`
    pub fn solv2() -> LieData {
        LieData::from_entries("solv2", 2, &[(0, 1, 1, q(1))]).unwrap()
    }

    pub fn by_name(name: &str) -> Option<LieData> {
        match name {
            "heis3" => Some(heis3()),
            "sl2" => Some(sl2()),
            "solv2" => Some(solv2()),
            _ => {
                let n: usize = name.strip_prefix("abelian")?.parse().ok()?;
                (n > 0).then(|| abelian(n))
            }
        }
    }

    /// Every preset exercised by the suites.
    pub fn all() -> Vec<LieData> {
        vec![abelian(1), abelian(2), abelian(3), heis3(), sl2(), solv2()]
    }
}

/// Values `χ(∂_i)` of a linear form on d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceForm(pub Vec<Q>);

impl TraceForm {
    pub fn zero(n: usize) -> Self {
        TraceForm(vec![Q::zero(); n])
    }

    pub fn validate(&self, lie: &LieData) -> Result<()> {
        let n = lie.dim();
        if self.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.0.len() });
        }
        for i in 0..n {
            for j in i + 1..n {
                let s: Q = (0..n).map(|k| lie.c(i, j, k) * &self.0[k]).sum();
                if !s.is_zero() {
                    return Err(Error::TraceFormInvalid { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &TraceForm) -> TraceForm {
        TraceForm(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Q) -> TraceForm {
        TraceForm(self.0.iter().map(|a| a * c).collect())
    }
}

/// A representation of d: one matrix per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DRep {
    pub dim: usize,
    pub mats: Vec<Mat>,
}

impl DRep {
    pub fn trivial(lie: &LieData, dim: usize) -> Self {
        DRep { dim, mats: vec![matrix::zeros(dim, dim); lie.dim()] }
    }

    /// One-dimensional module `k_χ`.
    pub fn character(chi: &TraceForm) -> Self {
        DRep { dim: 1, mats: chi.0.iter().map(|x| vec![vec![x.clone()]]).collect() }
    }

    pub fn adjoint(lie: &LieData) -> Self {
        DRep { dim: lie.dim(), mats: lie.ad() }
    }

    /// `∂_1` acts by a nilpotent Jordan block, all others by zero.
    pub fn nil2(lie: &LieData) -> Self {
        let mut mats = vec![matrix::zeros(2, 2); lie.dim()];
        mats[0][0][1] = Q::one();
        DRep { dim: 2, mats }
    }

    /// `Π ⊗ k_χ`
    pub fn twist_by(&self, chi: &TraceForm) -> Self {
        let id = matrix::identity(self.dim);
        DRep {
            dim: self.dim,
            mats: self.mats.iter().zip(&chi.0).map(|(m, x)| matrix::add(m, &matrix::scale(&id, x))).collect(),
        }
    }

    pub fn validate(&self, lie: &LieData) -> Result<()> {
        let n = lie.dim();
        if self.mats.len() != n {
            return Err(Error::RepInvalid(format!("expected {n} matrices, found {}", self.mats.len())));
        }
        check_square(&self.mats, self.dim)?;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = matrix::commutator(&self.mats[i], &self.mats[j]);
                let mut rhs = matrix::zeros(self.dim, self.dim);
                for k in 0..n {
                    matrix::axpy(&mut rhs, lie.c(i, j, k), &self.mats[k]);
                }
                if lhs != rhs {
                    return Err(Error::RepInvalid(format!("[ρ(∂_{}), ρ(∂_{})] ≠ ρ([∂_{}, ∂_{}])", i + 1, j + 1, i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }
}

fn check_square(mats: &[Mat], dim: usize) -> Result<()> {
    for m in mats {
        if m.len() != dim || m.iter().any(|r| r.len() != dim) {
            return Err(Error::RepInvalid(format!("matrix is not {dim}x{dim}")));
        }
    }
    Ok(())
}

/// A representation of gl(d) keyed by `e_i^j` at index `i * N + j`, where
/// `e_i^j ∂_k = δ^j_k ∂_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlRep {
    pub dim: usize,
    pub n: usize,
    pub mats: Vec<Mat>,
    pub id_scalar: Option<Q>,
}

impl GlRep {
    pub fn e(&self, i: usize, j: usize) -> &Mat {
        &self.mats[i * self.n + j]
    }

    /// Matrix of `Σ_{k,l} c_ik^l e_l^k`, the image of `ad ∂_i`.
    pub fn ad_of(&self, lie: &LieData, i: usize) -> Mat {
        let mut m = matrix::zeros(self.dim, self.dim);
        for k in 0..self.n {
            for l in 0..self.n {
                matrix::axpy(&mut m, lie.c(i, k, l), self.e(l, k));
            }
        }
        m
    }

    pub fn id_matrix(&self) -> Mat {
        let mut m = matrix::zeros(self.dim, self.dim);
        for i in 0..self.n {
            m = matrix::add(&m, self.e(i, i));
        }
        m
    }

    /// Trivial module of dimension `dim`; Id acts as 0.
    pub fn trivial(n: usize, dim: usize) -> Self {
        GlRep { dim, n, mats: vec![matrix::zeros(dim, dim); n * n], id_scalar: Some(Q::zero()) }
    }

    /// One-dimensional `k_{t·tr}`: `e_i^j ↦ t δ_i^j`, so Id acts as `N t`.
    pub fn trace_character(n: usize, t: Q) -> Self {
        let mats = (0..n * n)
            .map(|idx| vec![vec![if idx / n == idx % n { t.clone() } else { Q::zero() }]])
            .collect();
        GlRep { dim: 1, n, mats, id_scalar: Some(q(n as i64) * t) }
    }

    /// Standard module d itself.
    pub fn standard(n: usize) -> Self {
        let mats = (0..n * n)
            .map(|idx| {
                let mut m = matrix::zeros(n, n);
                m[idx / n][idx % n] = Q::one();
                m
            })
            .collect();
        GlRep { dim: n, n, mats, id_scalar: Some(Q::one()) }
    }

    /// Symmetric square of d*, basis `x^a x^b` with `a ≤ b` in lexicographic order.
    pub fn sym2_dual(n: usize) -> Self {
        let basis: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let pos = |a: usize, b: usize| basis.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
        let dim = basis.len();
        let mut mats = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // e_i^j x^k = -δ^k_i x^j, extended as a derivation
                let mut m = matrix::zeros(dim, dim);
                for (col, &(a, b)) in basis.iter().enumerate() {
                    if a == i {
                        m[pos(j, b)][col] -= Q::one();
                    }
                    if b == i {
                        m[pos(a, j)][col] -= Q::one();
                    }
                }
                mats.push(m);
            }
        }
        GlRep { dim, n, mats, id_scalar: Some(q(-2)) }
    }

    /// Adjoint action of gl(d) on traceless matrices; Id acts as 0.
    /// Basis: `E_ab` for `a ≠ b` in row-major order, then `E_aa - E_{a+1,a+1}`.
    pub fn sl_adjoint(n: usize) -> Self {
        let mut basis: Vec<Mat> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut m = matrix::zeros(n, n);
                    m[a][b] = Q::one();
                    basis.push(m);
                }
            }
        }
        for a in 0..n - 1 {
            let mut m = matrix::zeros(n, n);
            m[a][a] = Q::one();
            m[a + 1][a + 1] = -Q::one();
            basis.push(m);
        }
        let dim = basis.len();
        // coordinates: off-diagonal entries read directly, diagonal by partial sums
        let coords = |x: &Mat| -> Vec<Q> {
            let mut v = Vec::with_capacity(dim);
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        v.push(x[a][b].clone());
                    }
                }
            }
            let mut run = Q::zero();
            for a in 0..n - 1 {
                run += &x[a][a];
                v.push(run.clone());
            }
            v
        };
        let std = GlRep::standard(n);
        let mats = (0..n * n)
            .map(|idx| {
                let e = &std.mats[idx];
                let cols: Vec<Vec<Q>> = basis.iter().map(|b| coords(&matrix::commutator(e, b))).collect();
                matrix::transpose(&cols)
            })
            .collect();
        GlRep { dim, n, mats, id_scalar: Some(Q::zero()) }
    }

    /// `U ⊗ k_{t·tr}`
    pub fn shift_trace(&self, t: &Q) -> Self {
        let id = matrix::identity(self.dim);
        let mats = (0..self.n * self.n)
            .map(|idx| {
                if idx / self.n == idx % self.n {
                    matrix::add(&self.mats[idx], &matrix::scale(&id, t))
                } else {
                    self.mats[idx].clone()
                }
            })
            .collect();
        GlRep {
            dim: self.dim,
            n: self.n,
            mats,
            id_scalar: self.id_scalar.as_ref().map(|c| c + q(self.n as i64) * t),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.mats.len() != n * n {
            return Err(Error::RepInvalid(format!("expected {} matrices, found {}", n * n, self.mats.len())));
        }
        check_square(&self.mats, self.dim)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs = matrix::commutator(self.e(i, j), self.e(k, l));
                        let mut rhs = matrix::zeros(self.dim, self.dim);
                        if j == k {
                            rhs = matrix::add(&rhs, self.e(i, l));
                        }
                        if l == i {
                            rhs = matrix::sub(&rhs, self.e(k, j));
                        }
                        if lhs != rhs {
                            return Err(Error::RepInvalid(format!(
                                "gl relation fails for e_{}^{}, e_{}^{}",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        if let Some(c) = &self.id_scalar {
            if self.id_matrix() != matrix::scale(&matrix::identity(self.dim), c) {
                return Err(Error::RepInvalid("Id does not act by the declared scalar".into()));
            }
        }
        Ok(())
    }
}

/// Increasing index sets of size `n` in `0..big_n`, lexicographic.
pub fn wedge_basis(big_n: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, big_n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in start..big_n {
            if big_n - s < left {
                break;
            }
            cur.push(s);
            rec(s + 1, big_n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= big_n {
        rec(0, big_n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Sorts an index tuple, returning the permutation sign, or `None` on repeats.
pub fn sort_with_sign(seq: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// gl(d) on `Ω^n = Λ^n d*` by `(A·α)(a_1,…,a_n) = -Σ_i α(a_1,…,A a_i,…,a_n)`.
pub fn omega_rep(big_n: usize, n: usize) -> Result<GlRep> {
    if n > big_n {
        return Err(Error::DegreeOutOfRange { degree: n, max: big_n });
    }
    let basis = wedge_basis(big_n, n);
    let dim = basis.len();
    let mut mats = Vec::with_capacity(big_n * big_n);
    for i in 0..big_n {
        for j in 0..big_n {
            let mut m = matrix::zeros(dim, dim);
            for (col, alpha) in basis.iter().enumerate() {
                for (row, t) in basis.iter().enumerate() {
                    // E_ij ∂_t = δ_jt ∂_i
                    let mut val = Q::zero();
                    for r in 0..n {
                        if t[r] != j {
                            continue;
                        }
                        let mut tup = t.clone();
                        tup[r] = i;
                        if let Some((sorted, sign)) = sort_with_sign(&tup) {
                            if sorted == *alpha {
                                val -= q(sign);
                            }
                        }
                    }
                    m[row][col] = val;
                }
            }
            mats.push(m);
        }
    }
    Ok(GlRep { dim, n: big_n, mats, id_scalar: Some(q(-(n as i64))) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn presets_validate() {
        for lie in presets::all() {
            validate_lie(&lie).unwrap();
            lie.tr_ad().validate(&lie).unwrap();
        }
    }

    #[test]
    fn broken_antisymmetry_is_rejected() {
        let r = LieData::from_entries("bad", 2, &[(0, 1, 0, q(1)), (1, 0, 0, q(1))]);
        assert!(matches!(r, Err(Error::AntisymmetryViolation { .. })));
    }

    #[test]
    fn jacobi_violation_is_named() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 is not a Lie algebra
        let bad = LieData::from_entries("bad", 3, &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (0, 2, 0, q(1))]).unwrap();
        assert!(matches!(validate_lie(&bad), Err(Error::JacobiViolation { i: 0, j: 1, k: 2, .. })));
    }

    #[test]
    fn trace_of_ad() {
        assert_eq!(presets::solv2().tr_ad().0, vec![q(1), q(0)]);
        assert!(presets::sl2().tr_ad().is_zero());
        assert!(presets::heis3().tr_ad().is_zero());
        assert!(presets::abelian(3).tr_ad().is_zero());
    }

    #[test]
    fn omega_one_diagonal() {
        let r = omega_rep(2, 1).unwrap();
        assert_eq!(r.e(0, 0), &vec![vec![q(-1), q(0)], vec![q(0), q(0)]]);
        // e_1^2 x^1 = -x^2
        assert_eq!(r.e(0, 1)[1][0], q(-1));
        assert!(omega_rep(2, 3).is_err());
    }

    #[test]
    fn gl_reps_validate() {
        for n in 1..=3 {
            for k in 0..=n {
                let r = omega_rep(n, k).unwrap();
                r.validate().unwrap();
                assert_eq!(r.id_scalar, Some(q(-(k as i64))));
            }
            GlRep::sym2_dual(n).validate().unwrap();
            GlRep::standard(n).validate().unwrap();
            GlRep::sl_adjoint(n).validate().unwrap();
            GlRep::trace_character(n, qf(1, 3)).validate().unwrap();
            omega_rep(n, 1).unwrap().shift_trace(&q(2)).validate().unwrap();
        }
    }

    #[test]
    fn d_reps_validate() {
        for lie in presets::all() {
            DRep::adjoint(&lie).validate(&lie).unwrap();
            DRep::character(&lie.tr_ad()).validate(&lie).unwrap();
        }
        let s = presets::solv2();
        DRep::nil2(&s).validate(&s).unwrap();
        let sl = presets::sl2();
        assert!(DRep::nil2(&sl).validate(&sl).is_err());
    }

    #[test]
    fn sort_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
        assert_eq!(wedge_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }
}
