//! Monge-Ampère measures of piecewise affine concave functions, mixed
//! measures, mixed volumes and mixed integrals.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::concave_calculus::ConcavePA;
use crate::error::{input, Error, Result};
use crate::lattice_polytopes::Polyhedron;
use crate::scalar::{qfact, Vector, Q};

/// A finite atomic measure with rational masses. Atoms are sorted and
/// distinct; zero masses are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMeasure {
    atoms: Vec<Vector>,
    masses: Vec<Q>,
}

impl DiscreteMeasure {
    pub fn new(pairs: impl IntoIterator<Item = (Vector, Q)>) -> DiscreteMeasure {
        let mut acc: BTreeMap<Vector, Q> = BTreeMap::new();
        for (a, m) in pairs {
            *acc.entry(a).or_insert_with(Q::zero) += m;
        }
        let (atoms, masses) = acc.into_iter().filter(|(_, m)| !m.is_zero()).unzip();
        DiscreteMeasure { atoms, masses }
    }

    pub fn zero() -> DiscreteMeasure {
        DiscreteMeasure { atoms: Vec::new(), masses: Vec::new() }
    }

    pub fn atoms(&self) -> &[Vector] {
        &self.atoms
    }
    pub fn masses(&self) -> &[Q] {
        &self.masses
    }
    pub fn iter(&self) -> impl Iterator<Item = (&Vector, &Q)> {
        self.atoms.iter().zip(&self.masses)
    }

    pub fn total_mass(&self) -> Q {
        self.masses.iter().sum()
    }

    pub fn mass_at(&self, x: &[Q]) -> Q {
        self.atoms.iter().position(|a| a.as_slice() == x).map(|i| self.masses[i].clone()).unwrap_or_else(Q::zero)
    }

    /// self + c·other
    pub fn add_scaled(&self, other: &DiscreteMeasure, c: &Q) -> DiscreteMeasure {
        Self::new(self.iter().map(|(a, m)| (a.clone(), m.clone())).chain(other.iter().map(|(a, m)| (a.clone(), m * c))))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.masses.iter().all(|m| !m.is_negative())
    }
}

/// ℳ_M(f): the vertices of Π(f) weighted by the volumes of their dual cells.
pub fn monge_ampere(f: &ConcavePA) -> Result<DiscreteMeasure> {
    if !f.stability_set().is_bounded() {
        return Err(Error::Unsupported("Monge-Ampère measure needs a bounded stability set".into()));
    }
    let dp = f.dual_pair()?;
    let mut pairs = Vec::new();
    for i in dp.primal_vertices() {
        pairs.push((dp.primal[i].vertices()[0].clone(), dp.dual[i].ambient_volume()?));
    }
    Ok(DiscreteMeasure::new(pairs))
}

/// Nonempty subsets of 0..k as bitmasks, in increasing order, with sizes.
fn subsets(k: usize) -> impl Iterator<Item = (Vec<usize>, usize)> {
    (1u32..(1 << k)).map(move |mask| {
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let len = idx.len();
        (idx, len)
    })
}

fn sign(exp: usize) -> Q {
    if exp % 2 == 0 {
        Q::from_integer(1.into())
    } else {
        Q::from_integer((-1).into())
    }
}

/// ℳ_M(f_1,…,f_n) by inclusion-exclusion over sums of subsets.
pub fn mixed_monge_ampere(fs: &[ConcavePA]) -> Result<DiscreteMeasure> {
    let n = fs.first().map(|f| f.dim()).ok_or_else(|| Error::Input("no functions".into()))?;
    if fs.len() != n || fs.iter().any(|f| f.dim() != n) {
        return input("mixed Monge-Ampère measure takes n functions on an n-dimensional space");
    }
    let mut total = DiscreteMeasure::zero();
    for (idx, j) in subsets(n) {
        let mut g = fs[idx[0]].clone();
        for &i in &idx[1..] {
            g = g.add(&fs[i])?;
        }
        total = total.add_scaled(&monge_ampere(&g)?, &sign(n - j));
    }
    let inv = Q::from_integer(1.into()) / qfact(n);
    Ok(DiscreteMeasure::new(total.iter().map(|(a, m)| (a.clone(), m * &inv))))
}

/// MV_M(Q_1,…,Q_n) by inclusion-exclusion over Minkowski sums.
pub fn mixed_volume(qs: &[Polyhedron]) -> Result<Q> {
    let n = qs.first().map(|p| p.ambient_dim()).ok_or_else(|| Error::Input("no polytopes".into()))?;
    if qs.len() != n || qs.iter().any(|p| p.ambient_dim() != n) {
        return input("mixed volume takes n polytopes in dimension n");
    }
    let mut total = Q::zero();
    for (idx, j) in subsets(n) {
        let mut s = qs[idx[0]].clone();
        for &i in &idx[1..] {
            s = s.minkowski_sum(&qs[i])?;
        }
        total += sign(n - j) * s.ambient_volume()?;
    }
    Ok(total)
}

/// ∫ g over its (bounded) domain in the ambient lattice measure.
fn ambient_integral(g: &ConcavePA) -> Result<Q> {
    let dom = g.domain();
    if !dom.is_bounded() {
        return Err(Error::Unsupported("integral over an unbounded domain".into()));
    }
    if !dom.is_full_dim() {
        return Ok(Q::zero());
    }
    g.integrate(dom)
}

/// MI_M(g_0,…,g_n) by inclusion-exclusion over sup-convolutions.
pub fn mixed_integral(gs: &[ConcavePA]) -> Result<Q> {
    let n = gs.first().map(|g| g.dim()).ok_or_else(|| Error::Input("no functions".into()))?;
    if gs.len() != n + 1 || gs.iter().any(|g| g.dim() != n) {
        return input("mixed integral takes n+1 functions on an n-dimensional space");
    }
    if gs.iter().any(|g| !g.domain().is_bounded()) {
        return Err(Error::Unsupported("mixed integral needs compact domains".into()));
    }
    let mut total = Q::zero();
    for (idx, j) in subsets(n + 1) {
        let mut g = gs[idx[0]].clone();
        for &i in &idx[1..] {
            g = g.sup_convolution(&gs[i])?;
        }
        total += sign(n + 1 - j) * ambient_integral(&g)?;
    }
    Ok(total)
}

/// Left side minus right side of the identity
/// −n! ∫ f dℳ(f) = (n+1)! ∫_Δ f∨ + Σ_F ⟨v_F,F⟩ n! ∫_F f∨
/// for f with a full-dimensional lattice stability set Δ.
pub fn stokes_residual(f: &ConcavePA) -> Result<Q> {
    let n = f.dim();
    let delta = f.stability_set();
    if !delta.is_bounded() || !delta.is_full_dim() || !delta.is_lattice() {
        return input("the stability set must be a full-dimensional lattice polytope");
    }
    let nf = qfact(n);
    let ma = monge_ampere(f)?;
    let mut lhs = Q::zero();
    for (v, m) in ma.iter() {
        lhs -= f.eval(v).expect("f is finite everywhere") * m;
    }
    lhs *= &nf;
    let dual = f.dual()?;
    let mut rhs = qfact(n + 1) * dual.integrate(&delta)?;
    let facets: Vec<usize> = (0..delta.all_faces().len()).filter(|&i| delta.all_faces()[i].dim + 1 == n).collect();
    for fi in facets {
        let face = &delta.all_faces()[fi];
        let fac = &delta.facets()[face.tight[0]];
        let level = -fac.offset.clone();
        if level.is_zero() {
            continue;
        }
        rhs += level * &nf * dual.integrate(&delta.face_polyhedron(face))?;
    }
    Ok(lhs - rhs)
}
