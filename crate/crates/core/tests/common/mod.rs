#![allow(dead_code)]

use proptest::prelude::*;
use toric_core::concave_calculus::{Affine, ConcavePA};
use toric_core::scalar::{q, qf, Vector};
use toric_core::{Polyhedron, Q};

pub fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| q(x)).collect()
}

/// A small rational num/den with den in 1..=3.
pub fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| qf(a, b))
}

pub fn rational_vec(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(rational(), n)
}

/// Integer point sets in [-r, r]^n.
pub fn int_points(n: usize, count: std::ops::RangeInclusive<usize>, r: i64) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(-r..=r, n), count).prop_map(|pts| pts.iter().map(|p| ints(p)).collect())
}

/// Full-dimensional lattice polytopes in dimension n.
pub fn lattice_polytope(n: usize, extra: usize, r: i64) -> impl Strategy<Value = Polyhedron> {
    int_points(n, n + 1..=n + 1 + extra, r).prop_filter_map("not full-dimensional", |pts| {
        Polyhedron::hull(&pts, &[]).ok().filter(|p| p.is_full_dim())
    })
}

/// Full-dimensional rational polytopes in dimension n.
pub fn rational_polytope(n: usize, extra: usize) -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec(rational_vec(n), n + 1..=n + 1 + extra).prop_filter_map("not full-dimensional", |pts| {
        Polyhedron::hull(&pts, &[]).ok().filter(|p| p.is_full_dim())
    })
}

/// Full-dimensional simplices with integer vertices.
pub fn lattice_simplex(n: usize, r: i64) -> impl Strategy<Value = Polyhedron> {
    int_points(n, n + 1..=n + 1, r).prop_filter_map("degenerate", |pts| Polyhedron::hull(&pts, &[]).ok().filter(|p| p.is_full_dim()))
}

/// Concave PA functions on ℝⁿ with integer slopes whose hull is
/// full-dimensional, so that the stability set is a lattice polytope.
pub fn pa_on_space(n: usize, max_pieces: usize, r: i64) -> impl Strategy<Value = ConcavePA> {
    prop::collection::vec((prop::collection::vec(-r..=r, n), rational()), n + 1..=max_pieces).prop_filter_map("degenerate stability set", |pcs| {
        let affs: Vec<Affine> = pcs.iter().map(|(m, c)| Affine::new(ints(m), c.clone())).collect();
        let f = ConcavePA::on_space(affs).ok()?;
        f.stability_set().is_full_dim().then_some(f)
    })
}

/// Concave PA functions with a polytope domain; the dual is defined on ℝⁿ.
pub fn pa_on_polytope(n: usize, max_pieces: usize) -> impl Strategy<Value = ConcavePA> {
    (prop::collection::vec((rational_vec(n), rational()), 1..=max_pieces), lattice_polytope(n, 3, 3)).prop_filter_map("bad function", |(pcs, dom)| {
        let affs: Vec<Affine> = pcs.into_iter().map(|(m, c)| Affine::new(m, c)).collect();
        ConcavePA::new(affs, dom).ok()
    })
}

/// A convex combination of the given points with small positive weights.
pub fn combination(points: &[Vector], weights: &[u8]) -> Vector {
    let n = points[0].len();
    let ws: Vec<Q> = points.iter().enumerate().map(|(i, _)| q(weights.get(i).copied().unwrap_or(1) as i64 + 1)).collect();
    let total: Q = ws.iter().sum();
    let mut x = vec![q(0); n];
    for (p, w) in points.iter().zip(&ws) {
        for (a, b) in x.iter_mut().zip(p) {
            *a += b * w / &total;
        }
    }
    x
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
