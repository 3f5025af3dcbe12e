//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{dot, primitive, Vector, Q};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], ncols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(vectors: &[Vector], ncols: usize) -> usize {
    rref(vectors, ncols).1.len()
}

/// Basis of {x : ⟨row, x⟩ = 0 for all rows}.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let (m, piv) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in m.iter().zip(&piv) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A basis of the span of the given vectors (a subset of them).
pub fn span_basis(vectors: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial, ncols) > basis.len() {
            basis.push(v.clone());
        }
    }
    basis
}

/// Coefficients c with Σ c_i basis_i = v, if v lies in the span.
pub fn coords_in_basis(basis: &[Vector], v: &[Q]) -> Option<Vector> {
    let k = basis.len();
    let n = v.len();
    // Solve the n×k system column-wise via the augmented transpose.
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r: Vector = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let (m, piv) = rref(&rows, k + 1);
    if piv.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (row, &pc) in m.iter().zip(&piv) {
        c[pc] = row[k].clone();
    }
    Some(c)
}

pub fn in_span(basis: &[Vector], v: &[Q]) -> bool {
    coords_in_basis(basis, v).is_some()
}

pub fn det(m: &[Vector]) -> Q {
    let n = m.len();
    let mut a: Vec<Vector> = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        let prow = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &piv;
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

/// Orthogonal projection of w onto span(basis), computed exactly through the
/// Gram matrix.
pub fn project(basis: &[Vector], w: &[Q]) -> Vector {
    let n = w.len();
    if basis.is_empty() {
        return vec![Q::zero(); n];
    }
    let k = basis.len();
    let rows: Vec<Vector> = (0..k)
        .map(|i| {
            let mut r: Vector = (0..k).map(|j| dot(&basis[i], &basis[j])).collect();
            r.push(dot(&basis[i], w));
            r
        })
        .collect();
    let (m, piv) = rref(&rows, k + 1);
    let mut c = vec![Q::zero(); k];
    for (row, &pc) in m.iter().zip(&piv) {
        if pc < k {
            c[pc] = row[k].clone();
        }
    }
    let mut out = vec![Q::zero(); n];
    for (ci, b) in c.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += ci * x;
        }
    }
    out
}

/// Gram determinant det(⟨b_i, b_j⟩).
pub fn gram_det(basis: &[Vector]) -> Q {
    let g: Vec<Vector> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    det(&g)
}

/// Basis of the lattice {x ∈ ℤⁿ : A x = 0} by unimodular column reduction.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = a.to_vec();
    // u[c] is column c of the unimodular transform
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut k = 0;
    for i in 0..a.len() {
        if k == n {
            break;
        }
        loop {
            let best = (k..n).filter(|&c| !a[i][c].is_zero()).min_by_key(|&c| a[i][c].abs());
            let Some(b) = best else { break };
            swap_cols(&mut a, &mut u, k, b);
            let mut done = true;
            for c in (k + 1)..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].div_floor(&a[i][k]);
                for row in a.iter_mut() {
                    let t = &row[k] * &f;
                    row[c] -= t;
                }
                let col_k = u[k].clone();
                for (x, y) in u[c].iter_mut().zip(&col_k) {
                    *x -= y * &f;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[i][k].is_zero() {
            k += 1;
        }
    }
    u.drain(k..).collect()
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    u.swap(i, j);
}

/// Integer basis of the saturated lattice span(vectors) ∩ ℤⁿ.
pub fn saturated_basis(vectors: &[Vector], n: usize) -> Vec<Vec<BigInt>> {
    let basis = span_basis(vectors, n);
    if basis.is_empty() {
        return Vec::new();
    }
    let perp: Vec<Vec<BigInt>> = nullspace(&basis, n).iter().map(|v| primitive(v)).collect();
    integer_kernel(&perp, n)
}
