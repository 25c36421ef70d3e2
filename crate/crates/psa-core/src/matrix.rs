//! Small dense rational matrices used for representation data.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Mat = Vec<Vec<Q>>;

pub fn zeros(n: usize, m: usize) -> Mat {
    vec![vec![Q::zero(); m]; n]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    a
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut c = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    c[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    c
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &Mat, c: &Q) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// `a += c * b`
pub fn axpy(a: &mut Mat, c: &Q, b: &Mat) {
    if c.is_zero() {
        return;
    }
    for (r, s) in a.iter_mut().zip(b) {
        for (x, y) in r.iter_mut().zip(s) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    sub(&mul(a, b), &mul(b, a))
}

pub fn apply(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    (0..m).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect()
}

/// Kronecker product; index `(p, u)` of the result is `p * dim(b) + u`.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut c = zeros(n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    if !b[k][l].is_zero() {
                        c[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
    }
    c
}

pub fn trace(a: &Mat) -> Q {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}
