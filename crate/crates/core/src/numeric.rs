//! Floating point helpers: Gauss-Legendre rules, simplex quadrature and
//! small dense solves.

use crate::lattice_polytopes::Polyhedron;
use crate::scalar::to_f64;

/// Gauss-Legendre nodes and weights on [0, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = 0.5 * (1.0 - z);
        w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Composite rule on [0,1] refined geometrically toward both endpoints,
/// suited to integrands with x·log x behaviour at the ends.
pub fn graded_rule(n: usize, levels: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(n);
    let mut breaks = vec![0.0];
    for l in (1..=levels).rev() {
        breaks.push(0.5f64.powi(l as i32 + 1));
    }
    breaks.push(0.5);
    let left: Vec<f64> = breaks.clone();
    for b in left.iter().rev().skip(1) {
        breaks.push(1.0 - b);
    }
    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for win in breaks.windows(2) {
        let (a, b) = (win[0], win[1]);
        for (x, w) in gx.iter().zip(&gw) {
            xs.push(a + (b - a) * x);
            ws.push((b - a) * w);
        }
    }
    (xs, ws)
}

/// ∫ over a k-simplex (vertices in ambient coordinates) of f, with total
/// measure `volume`, via the collapsed-coordinate map from the cube.
pub fn integrate_simplex(verts: &[Vec<f64>], volume: f64, rule: &(Vec<f64>, Vec<f64>), f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let k = verts.len() - 1;
    let n = verts[0].len();
    if k == 0 {
        return f(&verts[0]);
    }
    let (xs, ws) = rule;
    let m = xs.len();
    let mut idx = vec![0usize; k];
    let mut total = 0.0;
    let mut fact = 1.0;
    for i in 1..=k {
        fact *= i as f64;
    }
    let mut point = vec![0.0; n];
    loop {
        let mut rem = 1.0;
        let mut jac = 1.0;
        let mut w = 1.0;
        point.copy_from_slice(&verts[0]);
        for (d, &i) in idx.iter().enumerate() {
            let t = xs[i];
            let lam = rem * t;
            for (p, (a, b)) in point.iter_mut().zip(verts[d + 1].iter().zip(&verts[0])) {
                *p += lam * (a - b);
            }
            w *= ws[i];
            jac *= rem;
            rem *= 1.0 - t;
        }
        total += w * jac * f(&point);
        let mut d = 0;
        loop {
            if d == k {
                return total * fact * volume;
            }
            idx[d] += 1;
            if idx[d] < m {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// ∫_P f over a bounded full-dimensional polytope by triangulation.
pub fn integrate_polytope(p: &Polyhedron, rule: &(Vec<f64>, Vec<f64>), f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let tri = p.triangulate().expect("bounded polytope");
    let fv: Vec<Vec<f64>> = p.vertices().iter().map(|v| v.iter().map(to_f64).collect()).collect();
    let mut total = 0.0;
    for s in tri {
        let sp = Polyhedron::hull(&s.iter().map(|&i| p.vertices()[i].clone()).collect::<Vec<_>>(), &[]).expect("simplex");
        let vol = to_f64(&sp.volume().expect("bounded"));
        let verts: Vec<Vec<f64>> = s.iter().map(|&i| fv[i].clone()).collect();
        total += integrate_simplex(&verts, vol, rule, f);
    }
    total
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
pub fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(r, &bi)| {
        let mut r = r.clone();
        r.push(bi);
        r
    }).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))?;
        if m[p][c].abs() < 1e-300 {
            return None;
        }
        m.swap(p, c);
        for r in (c + 1)..n {
            let f = m[r][c] / m[c][c];
            for k in c..=n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for c in (0..n).rev() {
        let s: f64 = ((c + 1)..n).map(|k| m[c][k] * x[k]).sum();
        x[c] = (m[c][n] - s) / m[c][c];
    }
    Some(x)
}

/// x·log x with the continuous extension 0 at 0.
pub fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}
