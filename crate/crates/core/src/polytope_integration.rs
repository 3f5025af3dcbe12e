//! Integrals of f⁽ⁿ⁾(⟨u,x⟩) over polytopes through aggregate coefficients,
//! and exact closed forms on simplices.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::concave_calculus::Affine;
use crate::error::{input, Error, Result};
use crate::lattice_polytopes::{Aggregate, Polyhedron};
use crate::linalg;
use crate::logq::LogQ;
use crate::scalar::{binomial, dot, harmonic_range, is_zero_vec, qfact, sub, to_f64, Vector, Q};

/// The coefficients C_k(Δ,u,V) for every aggregate V of Δ in direction u.
#[derive(Clone, Debug)]
pub struct AggregateCoefficients {
    pub direction: Vector,
    pub ambient_dim: usize,
    /// Aggregates by increasing level, each with C_0 … C_dim(V).
    pub entries: Vec<(Aggregate, Vec<f64>)>,
}

impl AggregateCoefficients {
    /// Σ_V Σ_k C_k f⁽ᵏ⁾(⟨u,V⟩).
    pub fn apply(&self, f: &dyn Derivatives) -> Result<f64> {
        let mut total = 0.0;
        for (agg, cs) in &self.entries {
            let z = to_f64(&agg.level);
            for (k, c) in cs.iter().enumerate() {
                let d = f.derivative(k, z).ok_or_else(|| Error::Input(format!("derivative of order {k} not available")))?;
                if *c != 0.0 {
                    total += c * d;
                }
            }
        }
        Ok(total)
    }

    /// Σ_V Σ_k C_k ⟨u,V⟩^{n−k}/(n−k)!, which equals vol(Δ).
    pub fn volume_identity(&self) -> f64 {
        let n = self.ambient_dim;
        self.apply(&Builtin::Monomial { degree: n }).expect("monomials have all derivatives")
    }

    pub fn get(&self, level: &Q) -> Option<&[f64]> {
        self.entries.iter().find(|(a, _)| &a.level == level).map(|(_, c)| c.as_slice())
    }
}

struct Recursion<'a> {
    p: &'a Polyhedron,
    u: &'a [Q],
    memo: HashMap<usize, BTreeMap<Q, Vec<f64>>>,
}

impl Recursion<'_> {
    fn face(&mut self, fi: usize) -> BTreeMap<Q, Vec<f64>> {
        if let Some(m) = self.memo.get(&fi) {
            return m.clone();
        }
        let p = self.p;
        let face = &p.all_faces()[fi];
        let d = face.dim;
        let w = linalg::project(&face.basis, self.u);
        let mut out: BTreeMap<Q, Vec<f64>> = BTreeMap::new();
        if is_zero_vec(&w) {
            let mut c = vec![0.0; d + 1];
            c[d] = if d == 0 { 1.0 } else { p.face_euclidean_volume(fi) };
            out.insert(dot(self.u, &p.vertices()[face.vertices[0]]), c);
        } else {
            let w2 = to_f64(&dot(&w, &w));
            for g in p.subfacets(fi) {
                let gf = &p.all_faces()[g];
                let apex = *face.vertices.iter().find(|v| !gf.vertices.contains(v)).expect("facet is proper");
                let edge = sub(&p.vertices()[apex], &p.vertices()[gf.vertices[0]]);
                let normal = sub(&edge, &linalg::project(&gf.basis, &edge));
                let coef = -to_f64(&dot(&normal, &w)) / (to_f64(&dot(&normal, &normal)).sqrt() * w2);
                for (level, cs) in self.face(g) {
                    let e = out.entry(level).or_default();
                    if e.len() < cs.len() {
                        e.resize(cs.len(), 0.0);
                    }
                    for (a, c) in e.iter_mut().zip(&cs) {
                        *a += coef * c;
                    }
                }
            }
        }
        self.memo.insert(fi, out.clone());
        out
    }
}

/// C_k(Δ,u,V) by the facet recursion with unit inner normals and orthogonal
/// projections, in binary64.
pub fn coefficients(p: &Polyhedron, u: &[Q]) -> Result<AggregateCoefficients> {
    if !p.is_bounded() || !p.is_full_dim() {
        return input("coefficients need a full-dimensional polytope");
    }
    let aggs = p.aggregates(u)?;
    let mut rec = Recursion { p, u, memo: HashMap::new() };
    let top = rec.face(p.top_face());
    let entries = aggs
        .into_iter()
        .map(|a| {
            let mut cs = top.get(&a.level).cloned().unwrap_or_default();
            cs.resize(a.dim + 1, 0.0);
            (a, cs)
        })
        .collect();
    Ok(AggregateCoefficients { direction: u.to_vec(), ambient_dim: p.ambient_dim(), entries })
}

/// A function known through its derivatives f⁽ᵏ⁾.
pub trait Derivatives {
    /// f⁽ᵏ⁾(z), or None when that order is not provided.
    fn derivative(&self, k: usize, z: f64) -> Option<f64>;
}

impl<F: Fn(usize, f64) -> Option<f64>> Derivatives for F {
    fn derivative(&self, k: usize, z: f64) -> Option<f64> {
        self(k, z)
    }
}

/// Built-in function families.
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    /// f(z) = e^z
    Exp,
    /// f(z) = z^d / d!
    Monomial { degree: usize },
    /// f(z) = z^a
    Power { exponent: f64 },
    /// The family with f⁽ᵒʳᵈᵉʳ⁾(z) = (z−s)·log(z−s):
    /// f⁽ᵏ⁾(z) = (z−s)^{m}/m!·(log(z−s) − Σ_{j=2}^{m} 1/j), m = order − k + 1.
    ZLogZ { order: usize, shift: f64 },
}

impl Derivatives for Builtin {
    fn derivative(&self, k: usize, z: f64) -> Option<f64> {
        match *self {
            Builtin::Exp => Some(z.exp()),
            Builtin::Monomial { degree } => {
                if k > degree {
                    return Some(0.0);
                }
                let m = degree - k;
                Some(z.powi(m as i32) / (1..=m).map(|i| i as f64).product::<f64>())
            }
            Builtin::Power { exponent } => {
                let mut c = 1.0;
                for i in 0..k {
                    c *= exponent - i as f64;
                }
                Some(if c == 0.0 { 0.0 } else { c * z.powf(exponent - k as f64) })
            }
            Builtin::ZLogZ { order, shift } => {
                if k > order {
                    return None;
                }
                let m = order - k + 1;
                let t = z - shift;
                if t == 0.0 {
                    return Some(0.0);
                }
                let fact: f64 = (1..=m).map(|i| i as f64).product();
                let h: f64 = (2..=m).map(|j| 1.0 / j as f64).sum();
                Some(t.powi(m as i32) / fact * (t.ln() - h))
            }
        }
    }
}

/// Σ_V Σ_k C_k(Δ,u,V) f⁽ᵏ⁾(⟨u,V⟩) = ∫_Δ f⁽ⁿ⁾(⟨u,x⟩).
pub fn integrate_composed(p: &Polyhedron, u: &[Q], f: &dyn Derivatives) -> Result<f64> {
    coefficients(p, u)?.apply(f)
}

fn check_simplex(p: &Polyhedron) -> Result<()> {
    if !p.is_bounded() || !p.is_full_dim() || !p.is_simplex() {
        return input("a full-dimensional simplex is required");
    }
    Ok(())
}

/// Vertex coefficients n!·vol(Δ)/Π_{j≠i}⟨ν_i−ν_j,u⟩ of a simplex, by vertex index.
pub fn simplex_vertex_coefficients(p: &Polyhedron, u: &[Q]) -> Result<Vec<Q>> {
    check_simplex(p)?;
    let n = p.ambient_dim();
    let scale = qfact(n) * p.ambient_volume()?;
    let levels: Vec<Q> = p.vertices().iter().map(|v| dot(u, v)).collect();
    let mut out = Vec::new();
    for (i, li) in levels.iter().enumerate() {
        let mut den = Q::one();
        for (j, lj) in levels.iter().enumerate() {
            if i != j {
                let d = li - lj;
                if d.is_zero() {
                    return Err(Error::DegenerateDirection("two vertices share a level".into()));
                }
                den *= d;
            }
        }
        out.push(&scale / den);
    }
    Ok(out)
}

/// The same vertex coefficient from the facet normals through ν:
/// (−1)ⁿ·det(U)^{n−1} / Π_i det(U with column i replaced by u), with the
/// columns ordered so that det(U) > 0.
pub fn simplex_vertex_coefficient_det(p: &Polyhedron, u: &[Q], vertex: usize) -> Result<Q> {
    check_simplex(p)?;
    let n = p.ambient_dim();
    let v = &p.vertices()[vertex];
    let mut cols: Vec<Vector> = p.facets().iter().filter(|f| f.eval(v).is_zero()).map(|f| f.normal_q()).collect();
    let transpose = |c: &[Vector]| -> Vec<Vector> { (0..n).map(|r| c.iter().map(|col| col[r].clone()).collect()).collect() };
    let mut du = linalg::det(&transpose(&cols));
    let mut sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
    if du.is_negative() {
        if n >= 2 {
            cols.swap(0, 1);
            du = -du;
        } else {
            sign = -sign;
        }
    }
    let mut den = Q::one();
    for i in 0..n {
        let mut c = cols.clone();
        c[i] = u.to_vec();
        let d = linalg::det(&transpose(&c));
        if d.is_zero() {
            return Err(Error::DegenerateDirection("u is parallel to an edge direction".into()));
        }
        den *= d;
    }
    let mut num = Q::one();
    for _ in 1..n {
        num *= &du;
    }
    Ok(sign * num / den)
}

/// n!·vol(Δ)·Σ_i f(⟨u,ν_i⟩)/Π_{j≠i}⟨ν_i−ν_j,u⟩ in binary64.
pub fn brion_short(p: &Polyhedron, u: &[Q], f: &dyn Fn(f64) -> f64) -> Result<f64> {
    let cs = simplex_vertex_coefficients(p, u)?;
    Ok(p.vertices().iter().zip(&cs).map(|(v, c)| to_f64(c) * f(to_f64(&dot(u, v)))).sum())
}

/// Brion's short formula with exact rational values of f.
pub fn brion_short_exact(p: &Polyhedron, u: &[Q], f: &dyn Fn(&Q) -> Q) -> Result<Q> {
    let cs = simplex_vertex_coefficients(p, u)?;
    Ok(p.vertices().iter().zip(&cs).map(|(v, c)| c * f(&dot(u, v))).sum())
}

/// Complete homogeneous symmetric polynomials h_0 … h_s of xs.
fn complete_homogeneous(xs: &[Q], s: usize) -> Vec<Q> {
    let mut h = vec![Q::zero(); s + 1];
    h[0] = Q::one();
    for x in xs {
        for t in 1..=s {
            let prev = h[t - 1].clone();
            h[t] += x * prev;
        }
    }
    h
}

/// Exact C_k(Δ,u,V) of a simplex, as (level, dim V, [C_0 … C_dim V]).
pub fn simplex_coefficients(p: &Polyhedron, u: &[Q]) -> Result<Vec<(Q, usize, Vec<Q>)>> {
    check_simplex(p)?;
    let n = p.ambient_dim();
    let vol = p.ambient_volume()?;
    let levels: Vec<Q> = p.vertices().iter().map(|v| dot(u, v)).collect();
    let mut groups: BTreeMap<Q, usize> = BTreeMap::new();
    for l in &levels {
        *groups.entry(l.clone()).or_default() += 1;
    }
    let mut out = Vec::new();
    for (level, count) in groups {
        let d = count - 1;
        let inv: Vec<Q> = levels.iter().filter(|l| **l != level).map(|l| Q::one() / (&level - l)).collect();
        let base: Q = inv.iter().product();
        let h = complete_homogeneous(&inv, d);
        let cs = (0..=d)
            .map(|k| {
                let sign = if (d - k) % 2 == 0 { Q::one() } else { -Q::one() };
                sign * qfact(n) / qfact(k) * &vol * &base * &h[d - k]
            })
            .collect();
        out.push((level, d, cs));
    }
    Ok(out)
}

fn check_nonnegative(p: &Polyhedron, ell: &Affine) -> Result<Vec<Q>> {
    let vals: Vec<Q> = p.vertices().iter().map(|v| ell.eval(v)).collect();
    if vals.iter().any(|x| x.is_negative()) {
        return input("the affine form is negative somewhere on the simplex");
    }
    Ok(vals)
}

/// (1/vol Δ)·∫_Δ ℓ log ℓ for an affine ℓ ≥ 0 on a simplex Δ, exactly.
pub fn simplex_l_log_l(p: &Polyhedron, ell: &Affine) -> Result<LogQ> {
    check_simplex(p)?;
    let n = p.ambient_dim();
    let vals = check_nonnegative(p, ell)?;
    if is_zero_vec(&ell.slope) {
        return LogQ::xlogx(&ell.constant);
    }
    let mut groups: BTreeMap<Q, usize> = BTreeMap::new();
    for v in &vals {
        *groups.entry(v.clone()).or_default() += 1;
    }
    let mut total = LogQ::zero();
    for (lv, count) in groups {
        if lv.is_zero() {
            continue;
        }
        let m = n + 1 - count;
        let inv_t: Vec<Q> = vals.iter().filter(|x| **x != lv).map(|x| Q::one() / (x / &lv - Q::one())).collect();
        let base: Q = inv_t.iter().product();
        let h = complete_homogeneous(&inv_t, n - m);
        let sign = if m % 2 == 0 { Q::one() } else { -Q::one() };
        let xlx = LogQ::xlogx(&lv)?;
        for s in m..=n {
            let w = Q::from_integer(binomial(n, n - s)) * &sign * &base * &h[s - m] / Q::from_integer((s + 1).into());
            total += &((xlx.clone() - LogQ::from_q(&lv * harmonic_range(2, s + 1))) * &w);
        }
    }
    Ok(total)
}

/// The same mean of ℓ log ℓ through the exact simplex coefficients and the
/// primitives f⁽ᵏ⁾(z) = (z−λ)^{n−k+1}/(n−k+1)!·(log(z−λ) − Σ_{j=2}^{n−k+1} 1/j).
pub fn l_log_l_by_coefficients(p: &Polyhedron, ell: &Affine) -> Result<LogQ> {
    check_simplex(p)?;
    let n = p.ambient_dim();
    check_nonnegative(p, ell)?;
    let mut total = LogQ::zero();
    for (level, _, cs) in simplex_coefficients(p, &ell.slope)? {
        let t = &level + &ell.constant;
        for (k, c) in cs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let m = n - k + 1;
            // t^m/m!·(log t − H) = (t^{m−1}·t log t − t^m·H)/m!
            let mut tm1 = Q::one();
            for _ in 1..m {
                tm1 *= &t;
            }
            let tm = &tm1 * &t;
            let fk = (LogQ::xlogx(&t)? * &tm1 - LogQ::from_q(tm * harmonic_range(2, m))) * &(Q::one() / qfact(m));
            total += &(fk * c);
        }
    }
    Ok(total * &(Q::one() / p.ambient_volume()?))
}

/// ∫_{Δʳ} w_0^{α_0}⋯w_r^{α_r} (times log w_i when `log_index` is Some(i)),
/// where w_0 = 1 − w_1 − ⋯ − w_r.
pub fn simplex_monomial(alpha: &[usize], log_index: Option<usize>) -> Result<Q> {
    if alpha.is_empty() {
        return input("exponent tuple must be nonempty");
    }
    let r = alpha.len() - 1;
    let total: usize = alpha.iter().sum::<usize>() + r;
    let base = alpha.iter().map(|&a| qfact(a)).product::<Q>() / qfact(total);
    match log_index {
        None => Ok(base),
        Some(i) if i <= r => Ok(-base * harmonic_range(alpha[i] + 1, total)),
        Some(_) => input("log index out of range"),
    }
}
