//! Piecewise affine concave functions and Legendre-Fenchel duality.
//!
//! A function f = min_j(⟨m_j,·⟩ + c_j) on a polyhedral domain is stored with
//! the hull of its lifted generators (m_j, −c_j), (a_k, −α_k), which is the
//! hypograph of f∨. Duals, decompositions and pruning all read that hull.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{input, Error, Result};
use crate::lattice_polytopes::Polyhedron;
use crate::linalg;
use crate::scalar::{dot, is_zero_vec, sub, Vector, Q};

pub mod float;
pub mod smooth;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Affine {
    pub slope: Vector,
    pub constant: Q,
}

impl Affine {
    pub fn new(slope: Vector, constant: Q) -> Self {
        Affine { slope, constant }
    }
    pub fn eval(&self, u: &[Q]) -> Q {
        dot(&self.slope, u) + &self.constant
    }
}

#[derive(Clone, Debug)]
pub struct ConcavePA {
    dim: usize,
    pieces: Vec<Affine>,
    domain: Polyhedron,
    /// hypograph of the dual, in dimension dim + 1
    lifted: Polyhedron,
}

fn lift(x: &[Q], h: Q) -> Vector {
    let mut v = x.to_vec();
    v.push(h);
    v
}

fn vertical(n: usize) -> Vector {
    let mut v = vec![Q::zero(); n + 1];
    v[n] = -Q::from_integer(1.into());
    v
}

/// Lifted generators of a hypograph: points, rays, lines in dimension n + 1.
#[derive(Clone, Debug, Default)]
pub struct Lifted {
    pub points: Vec<Vector>,
    pub rays: Vec<Vector>,
    pub lines: Vec<Vector>,
}

impl ConcavePA {
    pub fn new(pieces: Vec<Affine>, domain: Polyhedron) -> Result<ConcavePA> {
        let n = domain.ambient_dim();
        if pieces.is_empty() {
            return input("a piecewise affine function needs at least one piece");
        }
        if pieces.iter().any(|p| p.slope.len() != n) {
            return input("piece slope dimension differs from the domain dimension");
        }
        let gens = Self::lifted_of(&pieces, &domain);
        let lifted = Self::hypograph_hull(n, &gens)?;
        let pieces = Self::prune(&pieces, &lifted);
        Ok(ConcavePA { dim: n, pieces, domain, lifted })
    }

    /// f on all of N_ℝ.
    pub fn on_space(pieces: Vec<Affine>) -> Result<ConcavePA> {
        let n = pieces.first().map(|p| p.slope.len()).unwrap_or(0);
        Self::new(pieces, Polyhedron::whole_space(n))
    }

    /// The support function Ψ_P(u) = min_{x ∈ P} ⟨u,x⟩ of a polytope.
    pub fn support_function(p: &Polyhedron) -> Result<ConcavePA> {
        if !p.is_bounded() {
            return input("support function of an unbounded polyhedron");
        }
        Self::on_space(p.vertices().iter().map(|v| Affine::new(v.clone(), Q::zero())).collect())
    }

    /// The indicator ι_P (zero on P).
    pub fn indicator(p: &Polyhedron) -> Result<ConcavePA> {
        Self::new(vec![Affine::new(vec![Q::zero(); p.ambient_dim()], Q::zero())], p.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn pieces(&self) -> &[Affine] {
        &self.pieces
    }
    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    fn lifted_of(pieces: &[Affine], domain: &Polyhedron) -> Lifted {
        Lifted {
            points: pieces.iter().map(|p| lift(&p.slope, -p.constant.clone())).collect(),
            rays: domain.facets().iter().map(|f| lift(&f.normal_q(), -f.offset.clone())).collect(),
            lines: domain.equations().iter().map(|f| lift(&f.normal_q(), -f.offset.clone())).collect(),
        }
    }

    /// Generators of the hypograph of f∨.
    pub fn lifted(&self) -> Lifted {
        Self::lifted_of(&self.pieces, &self.domain)
    }

    fn hypograph_hull(n: usize, g: &Lifted) -> Result<Polyhedron> {
        let mut rays = g.rays.clone();
        rays.push(vertical(n));
        Polyhedron::hull_with_lines(&g.points, &rays, &g.lines)
    }

    /// Keeps the pieces whose lifted point is a vertex; pieces that coincide
    /// on the domain are merged to the lexicographically smallest.
    fn prune(pieces: &[Affine], lifted: &Polyhedron) -> Vec<Affine> {
        let mut sorted = pieces.to_vec();
        sorted.sort();
        sorted.dedup();
        let lines = lifted.lines();
        let mut keep: BTreeMap<usize, Affine> = BTreeMap::new();
        for p in sorted {
            let pt = lift(&p.slope, -p.constant.clone());
            let hit = lifted.vertices().iter().position(|v| {
                let d = sub(&pt, v);
                is_zero_vec(&d) || (!lines.is_empty() && linalg::in_span(lines, &d))
            });
            if let Some(i) = hit {
                keep.entry(i).or_insert(p);
            }
        }
        let mut out: Vec<Affine> = keep.into_values().collect();
        out.sort();
        out
    }

    /// Builds the concave function whose hypograph is generated by the given
    /// lifted points, rays and lines (plus the downward vertical ray).
    pub fn from_hypograph(n: usize, g: &Lifted) -> Result<ConcavePA> {
        let hull = Self::hypograph_hull(n, g)?;
        Self::from_hypograph_hull(n, &hull)
    }

    fn from_hypograph_hull(n: usize, hull: &Polyhedron) -> Result<ConcavePA> {
        let mut pieces = Vec::new();
        let mut dom_ineqs = Vec::new();
        for f in hull.facets() {
            let a = f.normal_q();
            let ah = a[n].clone();
            if ah.is_negative() {
                let s = -ah;
                pieces.push(Affine::new(a[..n].iter().map(|x| x / &s).collect(), &f.offset / &s));
            } else if ah.is_zero() {
                dom_ineqs.push((a[..n].to_vec(), f.offset.clone()));
            } else {
                return Err(Error::Domain("hypograph contains an upward direction".into()));
            }
        }
        if pieces.is_empty() {
            return Err(Error::Domain("the function is +∞ (stability sets do not meet)".into()));
        }
        let mut dom_eqs = Vec::new();
        for e in hull.equations() {
            let a = e.normal_q();
            if !a[n].is_zero() {
                return Err(Error::Domain("hypograph is not vertical-closed".into()));
            }
            dom_eqs.push((a[..n].to_vec(), e.offset.clone()));
        }
        let domain = Polyhedron::from_h(n, &dom_ineqs, &dom_eqs)?;
        Self::new(pieces, domain)
    }

    /// f(u), or None for −∞ outside the domain.
    pub fn eval(&self, u: &[Q]) -> Option<Q> {
        if !self.domain.contains(u) {
            return None;
        }
        self.pieces.iter().map(|p| p.eval(u)).min()
    }

    /// The Legendre-Fenchel dual f∨(x) = inf_u(⟨x,u⟩ − f(u)).
    pub fn dual(&self) -> Result<ConcavePA> {
        Self::from_hypograph_hull(self.dim, &self.lifted)
    }

    /// stab(f) = cone(domain normals) + conv(slopes).
    pub fn stability_set(&self) -> Polyhedron {
        let n = self.dim;
        let pts: Vec<Vector> = self.lifted.vertices().iter().map(|v| v[..n].to_vec()).collect();
        let rays: Vec<Vector> = self.lifted.rays().iter().map(|r| r[..n].to_vec()).filter(|r| !is_zero_vec(r)).collect();
        let lines: Vec<Vector> = self.lifted.lines().iter().map(|l| l[..n].to_vec()).collect();
        Polyhedron::hull_with_lines(&pts, &rays, &lines).expect("projection of a nonempty hull")
    }

    /// Generators of the hypograph of f itself (the lifted data of f∨).
    pub fn hypograph_generators(&self) -> Result<Lifted> {
        Ok(self.dual()?.lifted())
    }

    /// Sup-convolution: the hypograph is the Minkowski sum of hypographs.
    pub fn sup_convolution(&self, g: &ConcavePA) -> Result<ConcavePA> {
        if self.dim != g.dim {
            return input("dimension mismatch in sup-convolution");
        }
        let a = self.hypograph_generators()?;
        let b = g.hypograph_generators()?;
        let mut points = Vec::new();
        for p in &a.points {
            for q in &b.points {
                points.push(crate::scalar::add(p, q));
            }
        }
        let g = Lifted {
            points,
            rays: a.rays.iter().chain(&b.rays).cloned().collect(),
            lines: a.lines.iter().chain(&b.lines).cloned().collect(),
        };
        Self::from_hypograph(self.dim, &g)
    }

    pub fn add(&self, g: &ConcavePA) -> Result<ConcavePA> {
        if self.dim != g.dim {
            return input("dimension mismatch in sum");
        }
        let domain = self.domain.intersect(&g.domain).map_err(|_| Error::Domain("domains are disjoint".into()))?;
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &g.pieces {
                pieces.push(Affine::new(crate::scalar::add(&p.slope, &q.slope), &p.constant + &q.constant));
            }
        }
        Self::new(pieces, domain)
    }

    pub fn scale(&self, lambda: &Q) -> Result<ConcavePA> {
        if !lambda.is_positive() {
            return input("scaling factor must be positive");
        }
        let pieces = self.pieces.iter().map(|p| Affine::new(crate::scalar::scale(&p.slope, lambda), &p.constant * lambda)).collect();
        Self::new(pieces, self.domain.clone())
    }

    /// f − ⟨x0, ·⟩ − c0 style shifts: adds the affine function (m, c).
    pub fn add_affine(&self, m: &[Q], c: &Q) -> Result<ConcavePA> {
        let pieces = self.pieces.iter().map(|p| Affine::new(crate::scalar::add(&p.slope, m), &p.constant + c)).collect();
        Self::new(pieces, self.domain.clone())
    }

    /// (A*f)(v) = f(Hv + u0). `h` has dim(f) rows and d columns.
    pub fn pullback(&self, h: &[Vector], u0: &[Q]) -> Result<ConcavePA> {
        let d = check_matrix(h, self.dim, u0)?;
        let ht = |m: &[Q]| -> Vector { (0..d).map(|j| h.iter().zip(m).fold(Q::zero(), |s, (row, mi)| s + &row[j] * mi)).collect() };
        let pieces: Vec<Affine> = self.pieces.iter().map(|p| Affine::new(ht(&p.slope), dot(&p.slope, u0) + &p.constant)).collect();
        let (ineqs, eqs) = self.domain.h_system();
        let map = |sys: Vec<(Vector, Q)>| -> Vec<(Vector, Q)> { sys.into_iter().map(|(a, al)| (ht(&a), dot(&a, u0) + al)).collect() };
        let domain = Polyhedron::from_h(d, &map(ineqs), &map(eqs)).map_err(|_| Error::Domain("domain misses the image of the map".into()))?;
        Self::new(pieces, domain)
    }

    /// A_*g(u) = max over the fiber A⁻¹(u). `h` has n rows and dim(g) columns.
    pub fn pushforward(&self, h: &[Vector], u0: &[Q]) -> Result<ConcavePA> {
        let n = h.len();
        if u0.len() != n || h.iter().any(|r| r.len() != self.dim) {
            return input("matrix shape does not match the function");
        }
        let g = self.hypograph_generators()?;
        let img = |v: &Vector, shift: bool| -> Vector {
            let mut out: Vector = h.iter().zip(u0).map(|(r, b)| if shift { dot(r, &v[..self.dim]) + b } else { dot(r, &v[..self.dim]) }).collect();
            out.push(v[self.dim].clone());
            out
        };
        let lifted = Lifted {
            points: g.points.iter().map(|p| img(p, true)).collect(),
            rays: g.rays.iter().map(|r| img(r, false)).collect(),
            lines: g.lines.iter().map(|l| img(l, false)).collect(),
        };
        Self::from_hypograph(n, &lifted)
    }

    /// rec f = min_j ⟨m_j,·⟩ on the recession cone of the domain.
    pub fn recession(&self) -> Result<ConcavePA> {
        let (ineqs, eqs) = self.domain.h_system();
        let strip = |s: Vec<(Vector, Q)>| -> Vec<(Vector, Q)> { s.into_iter().map(|(a, _)| (a, Q::zero())).collect() };
        let domain = Polyhedron::from_h(self.dim, &strip(ineqs), &strip(eqs))?;
        Self::new(self.pieces.iter().map(|p| Affine::new(p.slope.clone(), Q::zero())).collect(), domain)
    }

    /// ∂f(u): slopes of active pieces plus the normal cone of the domain.
    pub fn sup_differential(&self, u: &[Q]) -> Result<Polyhedron> {
        let Some(val) = self.eval(u) else {
            return Err(Error::Domain("point outside the domain".into()));
        };
        let slopes: Vec<Vector> = self.pieces.iter().filter(|p| p.eval(u) == val).map(|p| p.slope.clone()).collect();
        let rays: Vec<Vector> = self.domain.facets().iter().filter(|f| f.eval(u).is_zero()).map(|f| f.normal_q()).collect();
        let lines: Vec<Vector> = self.domain.equations().iter().map(|f| f.normal_q()).collect();
        Polyhedron::hull_with_lines(&slopes, &rays, &lines)
    }

    /// The paired decompositions Π(f) and Π(f∨).
    pub fn dual_pair(&self) -> Result<DualPair> {
        let n = self.dim;
        let lifted = &self.lifted;
        let faces = lifted.all_faces();
        let upper: Vec<bool> = lifted.facets().iter().map(|f| f.normal[n].is_negative()).collect();
        let dual_fn = self.dual()?;
        let (dom_ineqs, dom_eqs) = self.domain.h_system();
        let lifted_pts: Vec<Vector> = self.pieces.iter().map(|p| lift(&p.slope, -p.constant.clone())).collect();
        let lifted_rays: Vec<Vector> = dom_ineqs.iter().map(|(a, al)| lift(a, -al.clone())).collect();
        let proj_lines: Vec<Vector> = lifted.lines().iter().map(|l| l[..n].to_vec()).collect();
        let mut primal = Vec::new();
        let mut dual = Vec::new();
        for g in faces {
            if !g.tight.iter().any(|&k| upper[k]) {
                continue;
            }
            let tight: Vec<_> = g.tight.iter().map(|&k| &lifted.facets()[k]).collect();
            let in_g_pt = |p: &Vector| tight.iter().all(|f| f.eval(p).is_zero());
            let in_g_dir = |r: &Vector| tight.iter().all(|f| f.eval_dir(r).is_zero());
            let pts: Vec<Vector> = g.vertices.iter().map(|&i| lifted.vertices()[i][..n].to_vec()).collect();
            let rays: Vec<Vector> = g
                .rays
                .iter()
                .map(|&j| lifted.rays()[j][..n].to_vec())
                .filter(|r| !is_zero_vec(r))
                .collect();
            dual.push(Polyhedron::hull_with_lines(&pts, &rays, &proj_lines)?);
            let members: Vec<usize> = (0..self.pieces.len()).filter(|&j| in_g_pt(&lifted_pts[j])).collect();
            let j0 = &self.pieces[members[0]];
            let mut ineqs = Vec::new();
            let mut eqs = dom_eqs.clone();
            for (j, p) in self.pieces.iter().enumerate() {
                let form = (sub(&p.slope, &j0.slope), &p.constant - &j0.constant);
                if members.contains(&j) {
                    eqs.push(form);
                } else {
                    ineqs.push(form);
                }
            }
            for (k, c) in dom_ineqs.iter().enumerate() {
                if in_g_dir(&lifted_rays[k]) {
                    eqs.push(c.clone());
                } else {
                    ineqs.push(c.clone());
                }
            }
            primal.push(Polyhedron::from_h(n, &ineqs, &eqs)?);
        }
        let primal_values = primal.iter().map(|c| c.vertices().iter().map(|v| self.eval(v).expect("cell inside domain")).collect()).collect();
        let dual_values = dual.iter().map(|c| c.vertices().iter().map(|v| dual_fn.eval(v).expect("cell inside stab")).collect()).collect();
        Ok(DualPair { primal, dual, primal_values, dual_values, dual_function: dual_fn })
    }

    /// ∫_Q f over a bounded polyhedron Q ⊆ dom f, with the lattice measure of
    /// the affine hull of Q.
    pub fn integrate(&self, region: &Polyhedron) -> Result<Q> {
        if !region.is_bounded() {
            return input("integration region must be bounded");
        }
        if !region.is_subset_of(&self.domain) {
            return Err(Error::Domain("integration region not contained in the domain".into()));
        }
        let basis = region.direction_basis();
        let p0 = region.vertices()[0].clone();
        // pieces that agree on aff(Q) are merged
        let mut distinct: Vec<&Affine> = Vec::new();
        for p in &self.pieces {
            let same = |q: &&Affine| {
                basis.iter().all(|b| dot(&p.slope, b) == dot(&q.slope, b)) && p.eval(&p0) == q.eval(&p0)
            };
            if !distinct.iter().any(same) {
                distinct.push(p);
            }
        }
        if distinct.len() == 1 {
            return region.integrate_affine(&distinct[0].slope, &distinct[0].constant);
        }
        let (ineqs, eqs) = region.h_system();
        let target = region.dim();
        let mut total = Q::zero();
        for (j, p) in distinct.iter().enumerate() {
            let mut ii = ineqs.clone();
            for (i, q) in distinct.iter().enumerate() {
                if i != j {
                    ii.push((sub(&q.slope, &p.slope), &q.constant - &p.constant));
                }
            }
            let Ok(cell) = Polyhedron::from_h(region.ambient_dim(), &ii, &eqs) else { continue };
            if cell.dim() == target {
                total += cell.integrate_affine(&p.slope, &p.constant)?;
            }
        }
        Ok(total)
    }
}

fn check_matrix(h: &[Vector], rows: usize, u0: &[Q]) -> Result<usize> {
    if h.len() != rows || u0.len() != rows {
        return input("matrix shape does not match the function");
    }
    let d = h.first().map(|r| r.len()).unwrap_or(0);
    if h.iter().any(|r| r.len() != d) {
        return input("ragged matrix");
    }
    Ok(d)
}

#[derive(Clone, Debug)]
pub struct DualPair {
    /// Cells of Π(f).
    pub primal: Vec<Polyhedron>,
    /// Cells of Π(f∨); `dual[i]` is paired with `primal[i]`.
    pub dual: Vec<Polyhedron>,
    /// f at the vertices of each primal cell.
    pub primal_values: Vec<Vec<Q>>,
    /// f∨ at the vertices of each dual cell.
    pub dual_values: Vec<Vec<Q>>,
    pub dual_function: ConcavePA,
}

impl DualPair {
    /// Indices of the zero-dimensional primal cells.
    pub fn primal_vertices(&self) -> Vec<usize> {
        (0..self.primal.len()).filter(|&i| self.primal[i].dim() == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_polytopes::{standard_simplex, unit_cube};
    use crate::scalar::{q, qf, qv};

    fn pa1(pieces: &[(i64, Q)]) -> ConcavePA {
        ConcavePA::on_space(pieces.iter().map(|(m, c)| Affine::new(qv(&[*m]), c.clone())).collect()).unwrap()
    }

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::hull(&[qv(&[a]), qv(&[b])], &[]).unwrap()
    }

    #[test]
    fn evaluation() {
        let psi = ConcavePA::support_function(&standard_simplex(2)).unwrap();
        assert_eq!(psi.eval(&qv(&[1, 2])), Some(q(0)));
        assert_eq!(psi.eval(&qv(&[-1, 3])), Some(q(-1)));
        let iota = ConcavePA::indicator(&interval(0, 1)).unwrap();
        assert_eq!(iota.eval(&qv(&[2])), None);
    }

    #[test]
    fn duals() {
        let psi = ConcavePA::support_function(&standard_simplex(3)).unwrap();
        let d = psi.dual().unwrap();
        assert!(d.domain().same_set(&standard_simplex(3)));
        assert_eq!(d.pieces().len(), 1);
        assert!(is_zero_vec(&d.pieces()[0].slope) && d.pieces()[0].constant.is_zero());

        let f = pa1(&[(0, q(0)), (1, q(1))]);
        let d = f.dual().unwrap();
        assert!(d.domain().same_set(&interval(0, 1)));
        assert_eq!(d.eval(&[qf(1, 2)]), Some(qf(-1, 2)));
        assert_eq!(d.eval(&[q(1)]), Some(q(-1)));

        let g = pa1(&[(1, q(0)), (-1, q(1))]);
        let gd = g.dual().unwrap();
        assert_eq!(gd.eval(&[q(0)]), Some(qf(-1, 2)));
        assert!(gd.domain().same_set(&interval(-1, 1)));
    }

    #[test]
    fn sup_convolution_of_indicators() {
        let sq = unit_cube(2);
        let s2 = standard_simplex(2);
        let a = ConcavePA::indicator(&sq).unwrap();
        let b = ConcavePA::indicator(&s2).unwrap();
        let c = a.sup_convolution(&b).unwrap();
        assert!(c.domain().same_set(&sq.minkowski_sum(&s2).unwrap()));
        assert_eq!(c.pieces().len(), 1);
        let f = pa1(&[(0, q(0)), (1, q(0))]);
        let ff = f.sup_convolution(&f).unwrap();
        assert!(ff.dual().unwrap().domain().same_set(&interval(0, 1)));
        assert_eq!(ff.eval(&[q(-3)]), Some(q(-3)));
    }

    #[test]
    fn sums() {
        let a = pa1(&[(0, q(0)), (1, q(0))]);
        assert_eq!(a.add(&a).unwrap().eval(&[q(1)]), Some(q(0)));
        let b = pa1(&[(-1, q(0)), (0, q(0))]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.eval(&[q(2)]), Some(q(-2)));
        assert_eq!(s.pieces().len(), 2);
        let zero = pa1(&[(0, q(0))]);
        assert_eq!(a.add(&zero).unwrap().pieces(), a.pieces());
    }

    #[test]
    fn pullback_and_pushforward() {
        let psi = ConcavePA::support_function(&unit_cube(2)).unwrap();
        let pb = psi.pullback(&[qv(&[1]), qv(&[1])], &qv(&[0, 0])).unwrap();
        assert_eq!(pb.eval(&[q(-3)]), Some(q(-6)));
        assert_eq!(pb.eval(&[q(3)]), Some(q(0)));

        let iota = ConcavePA::indicator(&standard_simplex(2)).unwrap();
        let pf = iota.pushforward(&[qv(&[1, 0])], &qv(&[0])).unwrap();
        assert!(pf.domain().same_set(&interval(0, 1)));

        let g = ConcavePA::indicator(&unit_cube(2)).unwrap().add_affine(&qv(&[-1, 0]), &q(0)).unwrap();
        let h = g.pushforward(&[qv(&[1, 1])], &qv(&[0])).unwrap();
        assert!(h.domain().same_set(&interval(0, 2)));
        assert_eq!(h.eval(&[qf(1, 2)]), Some(q(0)));
        assert_eq!(h.eval(&[qf(3, 2)]), Some(qf(-1, 2)));
    }

    #[test]
    fn recession_and_differential() {
        let f = pa1(&[(0, q(0)), (1, q(1)), (2, q(5))]);
        let r = f.recession().unwrap();
        assert_eq!(r.pieces().iter().map(|p| p.constant.clone()).collect::<Vec<_>>(), vec![q(0), q(0)]);
        let g = pa1(&[(0, q(0)), (1, q(0))]);
        assert!(g.sup_differential(&[q(0)]).unwrap().same_set(&interval(0, 1)));
        assert!(g.sup_differential(&[q(1)]).unwrap().same_set(&interval(0, 0)));
        let psi = ConcavePA::support_function(&standard_simplex(2)).unwrap();
        assert!(psi.sup_differential(&qv(&[0, 0])).unwrap().same_set(&standard_simplex(2)));
    }

    #[test]
    fn dual_pair_of_tent() {
        let f = pa1(&[(1, q(0)), (-1, q(1))]);
        let dp = f.dual_pair().unwrap();
        assert_eq!(dp.primal.len(), 3);
        for (c, d) in dp.primal.iter().zip(&dp.dual) {
            assert_eq!(c.dim() + d.dim(), 1);
        }
        let v = dp.primal_vertices();
        assert_eq!(v.len(), 1);
        assert_eq!(dp.primal[v[0]].vertices()[0], vec![qf(1, 2)]);
        assert!(dp.dual[v[0]].same_set(&interval(-1, 1)));
    }

    #[test]
    fn integrals() {
        let f = pa1(&[(1, q(0)), (-1, q(1))]);
        let d = f.dual().unwrap();
        assert_eq!(d.integrate(&interval(-1, 1)).unwrap(), q(-1));
        assert_eq!(f.integrate(&interval(0, 1)).unwrap(), qf(1, 4));
    }
}
