//! Sparse exact linear algebra: reduced echelon bases, nullspaces, solves.
//!
//! Column order is the unknown order; pivots are always the leftmost
//! nonzero column, so callers control tie-breaking by how they number
//! unknowns.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut m: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, x) in pairs {
            *m.entry(c).or_insert_with(Q::zero) += x;
        }
        Self::from_map(m)
    }

    pub fn from_map(m: BTreeMap<usize, Q>) -> Self {
        Self {
            entries: m.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        Self {
            entries: vec![(col, Q::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Q)> {
        self.entries.iter()
    }

    pub fn get(&self, col: usize) -> Q {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(c, x)| (*c, x))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in self.entries.iter_mut() {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Q, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ca, _)), Some((cb, _))) => {
                    if ca < cb {
                        out.push(a.next().unwrap());
                    } else if cb < ca {
                        let (cb, xb) = b.next().unwrap();
                        out.push((*cb, c * xb));
                    } else {
                        let (ca, xa) = a.next().unwrap();
                        let (_, xb) = b.next().unwrap();
                        let s = xa + c * xb;
                        if !s.is_zero() {
                            out.push((ca, s));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (cb, xb) = b.next().unwrap();
                    out.push((*cb, c * xb));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn to_dense(&self, n: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); n];
        for (c, x) in &self.entries {
            v[*c] = x.clone();
        }
        v
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self {
            entries: self.entries.iter().filter(|(c, _)| keep(*c)).cloned().collect(),
        }
    }
}

/// Row space kept in reduced row echelon form.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rows<'a, I: IntoIterator<Item = &'a SparseVec>>(rows: I) -> Self {
        let mut e = Self::new();
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<(usize, Q)> = v
            .iter()
            .filter_map(|(c, x)| self.pivots.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            v.axpy(&-x, &self.rows[r]);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` to the span; returns its pivot column if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut v = self.reduce(v);
        let (p, lead) = match v.leading() {
            Some((p, x)) => (p, x.clone()),
            None => return None,
        };
        v.scale(&(Q::one() / lead));
        for row in self.rows.iter_mut() {
            let x = row.get(p);
            if !x.is_zero() {
                row.axpy(&-x, &v);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(v);
        Some(p)
    }

    pub fn pivot_cols(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Rows sorted by pivot column.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.pivots.values().map(|&r| self.rows[r].clone()).collect()
    }

    pub fn row_for_pivot(&self, p: usize) -> Option<&SparseVec> {
        self.pivots.get(&p).map(|&r| &self.rows[r])
    }
}

/// Canonical nullspace basis of `rows` (as equations in `ncols` unknowns):
/// one vector per free column, with 1 there and 0 on every other free column,
/// ordered by free column.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let e = Echelon::from_rows(rows.iter());
    nullspace_of_echelon(&e, ncols)
}

pub fn nullspace_of_echelon(e: &Echelon, ncols: usize) -> Vec<SparseVec> {
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains_key(c)).collect();
    // column f of the pivot rows, gathered once
    let mut by_free: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    for (&p, &r) in &e.pivots {
        for (c, x) in e.rows[r].iter() {
            if *c != p {
                by_free.entry(*c).or_default().push((p, -x.clone()));
            }
        }
    }
    free.into_iter()
        .map(|f| {
            let mut pairs = by_free.remove(&f).unwrap_or_default();
            pairs.push((f, Q::one()));
            SparseVec::from_pairs(pairs)
        })
        .collect()
}

pub fn rank(rows: &[SparseVec]) -> usize {
    Echelon::from_rows(rows.iter()).rank()
}

/// Solves `A x = b` where `rows[r]` is row r of A. Free unknowns are set to
/// zero, which gives the solution supported on the earliest possible columns.
pub fn solve(rows: &[SparseVec], rhs: &[Q], ncols: usize) -> Option<SparseVec> {
    assert_eq!(rows.len(), rhs.len());
    let mut e = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        if !b.is_zero() {
            aug.axpy(&Q::one(), &SparseVec::from_pairs([(ncols, b.clone())]));
        }
        e.insert(aug);
    }
    if e.pivots.contains_key(&ncols) {
        return None;
    }
    Some(SparseVec::from_pairs(
        e.pivots
            .iter()
            .map(|(&p, &r)| (p, e.rows[r].get(ncols))),
    ))
}

/// Basis of the intersection of a span with the coordinate subspace `keep`,
/// assuming the columns outside `keep` all precede the ones inside it.
pub fn intersect_with_tail(e: &Echelon, first_kept: usize) -> Vec<SparseVec> {
    e.rows()
        .into_iter()
        .filter(|r| r.leading().map(|(c, _)| c >= first_kept).unwrap_or(false))
        .collect()
}
