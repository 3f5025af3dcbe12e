//! Piecewise affine concave functions with rational slopes and binary64
//! constants, such as ψ(u) = min_i(⟨m_i,u⟩ − log|p_i|).
//!
//! The dual is the upper envelope of the lifted points (m_i, −c_i) over the
//! rational polytope conv(m_i). Its cells are exact rational polytopes; only
//! the affine function on each cell is a float.

use crate::dd::{double_description, DdNum};
use crate::error::{input, Error, Result};
use crate::lattice_polytopes::Polyhedron;
use crate::numeric::solve;
use crate::scalar::{to_f64, Vector, Q};

#[derive(Clone, Debug)]
pub struct FloatPA {
    dim: usize,
    pieces: Vec<(Vector, f64)>,
}

/// A top-dimensional cell of Π(ψ∨) with the affine function ψ∨ on it.
#[derive(Clone, Debug)]
pub struct RoofCell {
    pub cell: Polyhedron,
    /// Indices of the pieces whose lifted points lie on the cell.
    pub pieces: Vec<usize>,
    /// ψ∨(x) = ⟨slope, x⟩ + constant on the cell; the slope is a vertex of Π(ψ).
    pub slope: Vec<f64>,
    pub constant: f64,
}

impl FloatPA {
    pub fn new(pieces: Vec<(Vector, f64)>) -> Result<FloatPA> {
        let dim = pieces.first().map(|p| p.0.len()).ok_or_else(|| Error::Input("no pieces".into()))?;
        if pieces.iter().any(|p| p.0.len() != dim || !p.1.is_finite()) {
            return input("pieces must share a dimension and have finite constants");
        }
        Ok(FloatPA { dim, pieces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn pieces(&self) -> &[(Vector, f64)] {
        &self.pieces
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        self.pieces
            .iter()
            .map(|(m, c)| m.iter().zip(u).map(|(a, b)| to_f64(a) * b).sum::<f64>() + c)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn stability_set(&self) -> Polyhedron {
        let pts: Vec<Vector> = self.pieces.iter().map(|p| p.0.clone()).collect();
        Polyhedron::hull(&pts, &[]).expect("nonempty")
    }

    /// Cells of the regular subdivision of stab(ψ) induced by the heights −c_i.
    pub fn roof_cells(&self) -> Result<Vec<RoofCell>> {
        let n = self.dim;
        if !self.stability_set().is_full_dim() {
            return Err(Error::Unsupported("float duals need a full-dimensional stability set".into()));
        }
        let mut gens: Vec<Vec<f64>> = self
            .pieces
            .iter()
            .map(|(m, c)| {
                let mut g = vec![1.0];
                g.extend(m.iter().map(to_f64));
                g.push(-c);
                g
            })
            .collect();
        let mut down = vec![0.0; n + 2];
        down[n + 1] = -1.0;
        gens.push(down);
        for g in gens.iter_mut() {
            f64::normalize(g);
        }
        let polar = double_description::<f64>(n + 2, &[], &gens);
        let mut cells = Vec::new();
        for h in &polar.rays {
            if h[n + 1] >= -1e-12 {
                continue;
            }
            let members: Vec<usize> = (0..self.pieces.len()).filter(|&j| f64::dot_sign(h, &gens[j]).0 == 0).collect();
            let pts: Vec<Vector> = members.iter().map(|&j| self.pieces[j].0.clone()).collect();
            let cell = Polyhedron::hull(&pts, &[])?;
            if !cell.is_full_dim() {
                continue;
            }
            // refit the affine function through the member points
            let (slope, constant) = self.fit(&members)?;
            cells.push(RoofCell { cell, pieces: members, slope, constant });
        }
        Ok(cells)
    }

    /// Least-squares affine fit x ↦ ⟨s,x⟩ + b through (m_j, −c_j).
    fn fit(&self, members: &[usize]) -> Result<(Vec<f64>, f64)> {
        let n = self.dim;
        let rows: Vec<Vec<f64>> = members
            .iter()
            .map(|&j| {
                let mut r: Vec<f64> = self.pieces[j].0.iter().map(to_f64).collect();
                r.push(1.0);
                r
            })
            .collect();
        let rhs: Vec<f64> = members.iter().map(|&j| -self.pieces[j].1).collect();
        let ata: Vec<Vec<f64>> = (0..=n).map(|a| (0..=n).map(|b| rows.iter().map(|r| r[a] * r[b]).sum()).collect()).collect();
        let atb: Vec<f64> = (0..=n).map(|a| rows.iter().zip(&rhs).map(|(r, y)| r[a] * y).sum()).collect();
        let sol = solve(&ata, &atb).ok_or_else(|| Error::Numeric("singular cell fit".into()))?;
        Ok((sol[..n].to_vec(), sol[n]))
    }

    /// ψ∨ at a rational point of stab(ψ); None outside.
    pub fn dual_eval(&self, x: &[Q]) -> Result<Option<f64>> {
        let cells = self.roof_cells()?;
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        Ok(cells
            .iter()
            .filter(|c| c.cell.contains(x))
            .map(|c| c.slope.iter().zip(&xf).map(|(a, b)| a * b).sum::<f64>() + c.constant)
            .reduce(f64::min))
    }

    /// ∫_{stab ψ} ψ∨ dvol.
    pub fn integrate_dual(&self) -> Result<f64> {
        let mut total = 0.0;
        for c in self.roof_cells()? {
            for s in c.cell.triangulate()? {
                let verts: Vec<Vector> = s.iter().map(|&i| c.cell.vertices()[i].clone()).collect();
                let sv = to_f64(&Polyhedron::hull(&verts, &[])?.volume()?);
                let k = verts.len() as f64;
                let at_centroid: f64 = (0..self.dim)
                    .map(|d| c.slope[d] * verts.iter().map(|v| to_f64(&v[d])).sum::<f64>() / k)
                    .sum();
                total += sv * (at_centroid + c.constant);
            }
        }
        Ok(total)
    }

    /// Monge-Ampère measure: atoms at the cell slopes with the cell volumes.
    pub fn monge_ampere(&self) -> Result<Vec<(Vec<f64>, Q)>> {
        self.roof_cells()?.into_iter().map(|c| Ok((c.slope, c.cell.volume()?))).collect()
    }
}
