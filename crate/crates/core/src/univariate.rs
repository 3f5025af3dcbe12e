//! Roots of univariate polynomials: complex roots with multiplicities and
//! p-adic root valuations from the Newton polygon.
//!
//! Coefficients are listed by increasing degree: `[c0, c1, …, cd]`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{input, Error, Result};
use crate::scalar::{to_f64, Q};

pub const MAX_ITERATIONS: usize = 200;
pub const CONVERGENCE_TOL: f64 = 1e-13;
pub const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RootList {
    pub roots: Vec<Complex64>,
    pub multiplicities: Vec<usize>,
    /// max over roots of |q(ξ)| / Σ|c_j||ξ|^j
    pub residual: f64,
}

impl RootList {
    pub fn degree(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Coefficients of lead·Π(z − ξ_i)^{ℓ_i}.
    pub fn expand(&self, lead: Complex64) -> Vec<Complex64> {
        let mut c = vec![lead];
        for (r, &m) in self.roots.iter().zip(&self.multiplicities) {
            for _ in 0..m {
                let mut next = vec![Complex64::zero(); c.len() + 1];
                for (j, a) in c.iter().enumerate() {
                    next[j + 1] += a;
                    next[j] -= a * r;
                }
                c = next;
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationList {
    pub valuations: Vec<Q>,
    pub multiplicities: Vec<usize>,
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn scaled_residual(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let denom = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    if denom == 0.0 {
        0.0
    } else {
        horner(c, z).norm() / denom
    }
}

/// max_j |c_j/c_d|^{1/(d−j)}, at least 1.
fn root_scale(c: &[Complex64]) -> f64 {
    let d = c.len() - 1;
    let lead = c[d].norm();
    (0..d).filter(|&j| c[j].norm() > 0.0).map(|j| (c[j].norm() / lead).powf(1.0 / (d - j) as f64)).fold(1.0, f64::max)
}

fn trim(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let last = coeffs.iter().rposition(|c| *c != Complex64::zero()).ok_or_else(|| Error::Input("zero polynomial".into()))?;
    if coeffs[..=last].iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return input("non-finite coefficient");
    }
    Ok(coeffs[..=last].to_vec())
}

/// Simultaneous Aberth-Ehrlich iteration for all roots of c (c[0] ≠ 0).
fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let radius = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut done = true;
        for k in 0..d {
            let (p, dp) = horner_with_derivative(c, z[k]);
            if p == Complex64::zero() {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() > CONVERGENCE_TOL * z[k].norm().max(f64::MIN_POSITIVE) {
                done = false;
            }
        }
        if done {
            return Ok(z);
        }
    }
    // Clustered roots converge only linearly; accept them if the backward
    // error is already small.
    if z.iter().all(|&x| scaled_residual(c, x) <= 1e-10) {
        Ok(z)
    } else {
        Err(Error::Numeric(format!("root iteration did not converge in {MAX_ITERATIONS} steps")))
    }
}

fn sort_key(z: Complex64, scale: f64) -> (i64, i64) {
    let grid = 1e-9 * scale;
    ((z.re / grid).round() as i64, (z.im / grid).round() as i64)
}

fn finish(poly: &[Complex64], mut pairs: Vec<(Complex64, usize)>, scale: f64) -> RootList {
    pairs.sort_by(|a, b| {
        sort_key(a.0, scale).cmp(&sort_key(b.0, scale)).then(a.0.re.total_cmp(&b.0.re)).then(a.0.im.total_cmp(&b.0.im))
    });
    let residual = pairs.iter().map(|(z, _)| scaled_residual(poly, *z)).fold(0.0, f64::max);
    let (roots, multiplicities) = pairs.into_iter().unzip();
    RootList { roots, multiplicities, residual }
}

/// All complex roots, with roots closer than `cluster_tol`·scale merged into
/// one root of higher multiplicity.
pub fn roots_with_tol(coeffs: &[Complex64], cluster_tol: f64) -> Result<RootList> {
    let poly = trim(coeffs)?;
    let zeros = poly.iter().position(|c| *c != Complex64::zero()).unwrap_or(0);
    let core = &poly[zeros..];
    let scale = root_scale(&poly);
    let approx = aberth(core)?;

    let n = approx.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (approx[i] - approx[j]).norm() <= cluster_tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut clusters: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match clusters.iter_mut().find(|c| c.0 == r) {
            Some(c) => {
                c.1 += approx[i];
                c.2 += 1;
            }
            None => clusters.push((r, approx[i], 1)),
        }
    }
    let mut pairs: Vec<(Complex64, usize)> = clusters.into_iter().map(|(_, s, m)| (s / m as f64, m)).collect();
    if zeros > 0 {
        pairs.push((Complex64::zero(), zeros));
    }
    Ok(finish(&poly, pairs, scale))
}

pub fn roots(coeffs: &[Complex64]) -> Result<RootList> {
    roots_with_tol(coeffs, CLUSTER_TOL)
}

fn qtrim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn qderiv(p: &[Q]) -> Vec<Q> {
    if p.len() <= 1 {
        return vec![Q::zero()];
    }
    qtrim(p.iter().enumerate().skip(1).map(|(j, c)| c * Q::from_integer(BigInt::from(j))).collect())
}

fn qdivrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if a.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let mut quot = vec![Q::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &r[k + db] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    r.truncate(db.max(1));
    (qtrim(quot), qtrim(r))
}

fn qmonic(p: Vec<Q>) -> Vec<Q> {
    let lead = p.last().cloned().unwrap_or_else(Q::one);
    p.into_iter().map(|c| c / &lead).collect()
}

fn qis_zero(p: &[Q]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn qgcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !qis_zero(&b) {
        let (_, r) = qdivrem(&a, &b);
        a = b;
        b = r;
    }
    qmonic(a)
}

fn qsub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let z = Q::zero();
    qtrim((0..n).map(|j| a.get(j).unwrap_or(&z) - b.get(j).unwrap_or(&z)).collect())
}

/// Yun's square-free decomposition: pairs (a_i, i) with f = c·Π a_i^i.
fn square_free(f: &[Q]) -> Vec<(Vec<Q>, usize)> {
    let mut out = Vec::new();
    let df = qderiv(f);
    let a0 = qgcd(f, &df);
    let mut b = qdivrem(f, &a0).0;
    let c = qdivrem(&df, &a0).0;
    let mut d = qsub(&c, &qderiv(&b));
    let mut i = 1;
    while b.len() > 1 {
        let a = qgcd(&b, &d);
        let nb = qdivrem(&b, &a).0;
        let c = qdivrem(&d, &a).0;
        d = qsub(&c, &qderiv(&nb));
        if a.len() > 1 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Roots of a rational polynomial. Multiplicities come from an exact
/// square-free decomposition, so the numeric part only sees simple roots.
pub fn roots_rational(coeffs: &[Q]) -> Result<RootList> {
    let p = qtrim(coeffs.to_vec());
    if qis_zero(&p) {
        return input("zero polynomial");
    }
    let cpx = |p: &[Q]| p.iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect::<Vec<_>>();
    let poly = cpx(&p);
    let scale = root_scale(&poly);
    let mut pairs = Vec::new();
    for (factor, mult) in square_free(&p) {
        let rl = roots_with_tol(&cpx(&factor), 0.0)?;
        pairs.extend(rl.roots.into_iter().map(|z| (z, mult)));
    }
    Ok(finish(&poly, pairs, scale))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (qt, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = qt;
        v += 1;
    }
}

/// v_p(x) for nonzero rational x.
pub fn valuation(x: &Q, p: u64) -> i64 {
    let pb = BigInt::from(p);
    int_valuation(x.numer(), &pb) - int_valuation(x.denom(), &pb)
}

/// p-adic valuations of the roots, read off the lower convex hull of the
/// points (j, v_p(c_j)). Valuations are strictly decreasing.
pub fn newton_polygon(coeffs: &[Q], p: u64) -> Result<ValuationList> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    let c = qtrim(coeffs.to_vec());
    if qis_zero(&c) {
        return input("zero polynomial");
    }
    if c[0].is_zero() {
        return input("constant coefficient must be nonzero");
    }
    let pts: Vec<(i64, i64)> =
        c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(j, a)| (j as i64, valuation(a, p))).collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a→pt
            if (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut valuations = Vec::new();
    let mut multiplicities = Vec::new();
    for w in hull.windows(2) {
        let len = w[1].0 - w[0].0;
        valuations.push(-Q::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(len)));
        multiplicities.push(len as usize);
    }
    Ok(ValuationList { valuations, multiplicities })
}
