//! Numeric Legendre-Fenchel duals of smooth strictly concave functions.

use crate::error::{Error, Result};
use crate::numeric::{solve, xlogx};

pub trait SmoothConcave {
    fn dim(&self) -> usize;
    fn value(&self, u: &[f64]) -> f64;
    fn gradient(&self, u: &[f64]) -> Vec<f64>;
    fn hessian(&self, u: &[f64]) -> Vec<Vec<f64>>;
}

/// f∨(x) = inf_u (⟨x,u⟩ − f(u)) by damped Newton iteration on u.
pub fn legendre_dual(f: &dyn SmoothConcave, x: &[f64]) -> Result<f64> {
    let n = f.dim();
    let phi = |u: &[f64]| x.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() - f.value(u);
    let mut u = vec![0.0; n];
    for _ in 0..200 {
        let g: Vec<f64> = x.iter().zip(f.gradient(&u)).map(|(a, b)| a - b).collect();
        if g.iter().map(|v| v.abs()).fold(0.0, f64::max) < 1e-15 {
            break;
        }
        let h: Vec<Vec<f64>> = f.hessian(&u).into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect();
        let step = solve(&h, &g).ok_or_else(|| Error::Numeric("singular Hessian".into()))?;
        let base = phi(&u);
        let mut t = 1.0;
        loop {
            let cand: Vec<f64> = u.iter().zip(&step).map(|(a, s)| a - t * s).collect();
            if phi(&cand) <= base + 1e-15 * base.abs().max(1.0) || t < 1e-12 {
                u = cand;
                break;
            }
            t *= 0.5;
        }
    }
    Ok(phi(&u))
}

/// f(u) = −½ log(1 + Σ e^{−2u_i}).
pub struct FubiniStudy {
    pub n: usize,
}

impl FubiniStudy {
    fn weights(&self, u: &[f64]) -> (Vec<f64>, f64) {
        let e: Vec<f64> = u.iter().map(|v| (-2.0 * v).exp()).collect();
        let s = 1.0 + e.iter().sum::<f64>();
        (e, s)
    }
}

impl SmoothConcave for FubiniStudy {
    fn dim(&self) -> usize {
        self.n
    }
    fn value(&self, u: &[f64]) -> f64 {
        -0.5 * self.weights(u).1.ln()
    }
    fn gradient(&self, u: &[f64]) -> Vec<f64> {
        let (e, s) = self.weights(u);
        e.iter().map(|v| v / s).collect()
    }
    fn hessian(&self, u: &[f64]) -> Vec<Vec<f64>> {
        let g = self.gradient(u);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| 2.0 * g[i] * g[j] - if i == j { 2.0 * g[i] } else { 0.0 }).collect())
            .collect()
    }
}

/// ε_n(x) = −Σ_{i=0}^{n} x_i log x_i with x_0 = 1 − Σ x_i.
pub fn entropy(x: &[f64]) -> f64 {
    let x0 = 1.0 - x.iter().sum::<f64>();
    -xlogx(x0) - x.iter().map(|&v| xlogx(v)).sum::<f64>()
}
