//! Exact rational polyhedra: hulls, face lattices, lattice-normalized volumes,
//! Minkowski sums, support values and direction aggregates.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dd::{double_description, BitSet};
use crate::error::{input, Error, Result};
use crate::linalg;
use crate::scalar::{dot, int_to_q, is_zero_vec, primitive, qfact, sub, Vector, Q};

/// The inequality ⟨normal, x⟩ + offset ≥ 0 (or = 0 for equations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Q,
}

impl Facet {
    pub fn normal_q(&self) -> Vector {
        int_to_q(&self.normal)
    }
    pub fn eval(&self, x: &[Q]) -> Q {
        dot(&self.normal_q(), x) + &self.offset
    }
    pub fn eval_dir(&self, r: &[Q]) -> Q {
        dot(&self.normal_q(), r)
    }
}

/// A face given by index sets into the parent's vertices and rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
    pub dim: usize,
    /// Basis of the linear space parallel to the affine hull.
    pub basis: Vec<Vector>,
    /// Facets of the parent containing this face.
    pub tight: Vec<usize>,
}

#[derive(Debug, Clone)]
struct FaceLattice {
    faces: Vec<Face>,
}

#[derive(Debug)]
pub struct Polyhedron {
    ambient: usize,
    vertices: Vec<Vector>,
    rays: Vec<Vector>,
    lines: Vec<Vector>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
    lattice: OnceLock<FaceLattice>,
}

impl Clone for Polyhedron {
    fn clone(&self) -> Self {
        Polyhedron {
            ambient: self.ambient,
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
            lines: self.lines.clone(),
            facets: self.facets.clone(),
            equations: self.equations.clone(),
            lattice: OnceLock::new(),
        }
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other)
    }
}

fn homog_point(p: &[Q]) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(p.len() + 1);
    v.push(Q::one());
    v.extend_from_slice(p);
    primitive(&v)
}

fn homog_dir(r: &[Q]) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(r.len() + 1);
    v.push(Q::zero());
    v.extend_from_slice(r);
    primitive(&v)
}

fn homog_ineq(normal: &[Q], offset: &Q) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(normal.len() + 1);
    v.push(offset.clone());
    v.extend_from_slice(normal);
    primitive(&v)
}

/// Reduces v modulo the row space of an rref basis (zero in pivot columns).
fn reduce_mod(v: &[Q], rows: &[Vector], pivots: &[usize]) -> Vector {
    let mut out = v.to_vec();
    for (row, &pc) in rows.iter().zip(pivots) {
        if !out[pc].is_zero() {
            let f = out[pc].clone();
            for (o, x) in out.iter_mut().zip(row) {
                *o -= &f * x;
            }
        }
    }
    out
}

fn dims_agree(vs: &[Vector], n: usize) -> bool {
    vs.iter().all(|v| v.len() == n)
}

impl Polyhedron {
    /// Convex hull of points plus the cone over rays.
    pub fn hull(points: &[Vector], rays: &[Vector]) -> Result<Polyhedron> {
        Self::hull_with_lines(points, rays, &[])
    }

    pub fn hull_with_lines(points: &[Vector], rays: &[Vector], lines: &[Vector]) -> Result<Polyhedron> {
        if points.is_empty() {
            return input("hull needs at least one point");
        }
        let n = points[0].len();
        if !dims_agree(points, n) || !dims_agree(rays, n) || !dims_agree(lines, n) {
            return input("dimension mismatch in hull input");
        }
        let (facets, equations) = Self::facets_of_generators(n, points, rays, lines);
        Self::from_irredundant_h(n, facets, equations)
    }

    /// The polyhedron {x : ⟨a,x⟩ + α ≥ 0 for (a,α) in ineqs, = 0 for eqs}.
    pub fn from_h(n: usize, ineqs: &[(Vector, Q)], eqs: &[(Vector, Q)]) -> Result<Polyhedron> {
        if ineqs.iter().chain(eqs).any(|(a, _)| a.len() != n) {
            return input("dimension mismatch in inequality system");
        }
        let mut hi: Vec<Vec<BigInt>> = ineqs.iter().map(|(a, al)| homog_ineq(a, al)).collect();
        let mut far = vec![BigInt::zero(); n + 1];
        far[0] = BigInt::one();
        hi.push(far);
        let he: Vec<Vec<BigInt>> = eqs.iter().map(|(a, al)| homog_ineq(a, al)).collect();
        let g = double_description(n + 1, &he, &hi);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for r in &g.rays {
            if r[0].is_zero() {
                rays.push(int_to_q(&r[1..]));
            } else {
                let t = Q::from_integer(r[0].clone());
                points.push(r[1..].iter().map(|x| Q::from_integer(x.clone()) / &t).collect());
            }
        }
        if points.is_empty() {
            return Err(Error::Domain("empty polyhedron".into()));
        }
        let lines: Vec<Vector> = g.lines.iter().map(|l| int_to_q(&l[1..])).collect();
        Self::hull_with_lines(&points, &rays, &lines)
    }

    pub fn whole_space(n: usize) -> Polyhedron {
        let lines: Vec<Vector> = (0..n).map(|i| (0..n).map(|j| Q::from_integer(BigInt::from((i == j) as i32))).collect()).collect();
        Self::hull_with_lines(&[vec![Q::zero(); n]], &[], &lines).expect("whole space")
    }

    pub fn point(p: &[Q]) -> Polyhedron {
        Self::hull(&[p.to_vec()], &[]).expect("point")
    }

    fn facets_of_generators(n: usize, points: &[Vector], rays: &[Vector], lines: &[Vector]) -> (Vec<Facet>, Vec<Facet>) {
        let mut gens: Vec<Vec<BigInt>> = points.iter().map(|p| homog_point(p)).collect();
        gens.extend(rays.iter().filter(|r| !is_zero_vec(r)).map(|r| homog_dir(r)));
        let glines: Vec<Vec<BigInt>> = lines.iter().filter(|l| !is_zero_vec(l)).map(|l| homog_dir(l)).collect();
        let polar = double_description(n + 1, &glines, &gens);
        let eq_h: Vec<Vector> = polar.lines.iter().map(|e| int_to_q(e)).collect();
        // Canonical equations: rref of the homogeneous rows, x-part first.
        let eq_rows: Vec<Vector> = eq_h.iter().map(|e| {
            let mut v = e[1..].to_vec();
            v.push(e[0].clone());
            v
        }).collect();
        let (eq_rref, _) = linalg::rref(&eq_rows, n + 1);
        let equations: Vec<Facet> = eq_rref
            .iter()
            .map(|row| {
                let p = primitive(row);
                let mut normal = p[..n].to_vec();
                let mut offset = Q::from_integer(p[n].clone());
                let lead = normal.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one);
                if lead.is_negative() {
                    normal = normal.into_iter().map(|x| -x).collect();
                    offset = -offset;
                }
                Facet { normal, offset }
            })
            .collect();
        let eq_x: Vec<Vector> = equations.iter().map(|e| e.normal_q()).collect();
        let mut facets = BTreeSet::new();
        for h in &polar.rays {
            let hq = int_to_q(h);
            let (c, a) = (hq[0].clone(), hq[1..].to_vec());
            // remove the component along the equation normals
            let pa = linalg::project(&eq_x, &a);
            let a2 = sub(&a, &pa);
            if is_zero_vec(&a2) {
                continue;
            }
            // offset changes by the same combination of equation offsets
            let coeffs = linalg::coords_in_basis(&eq_x, &pa).unwrap_or_default();
            let mut c2 = c;
            for (k, e) in coeffs.iter().zip(&equations) {
                c2 -= k * &e.offset;
            }
            let prim = primitive(&a2);
            let ratio = Q::from_integer(prim.iter().zip(&a2).find(|(p, _)| !p.is_zero()).map(|(p, _)| p.clone()).unwrap())
                / a2.iter().find(|x| !x.is_zero()).unwrap();
            facets.insert(Facet { normal: prim, offset: c2 * ratio });
        }
        (facets.into_iter().collect(), equations)
    }

    fn from_irredundant_h(n: usize, facets: Vec<Facet>, equations: Vec<Facet>) -> Result<Polyhedron> {
        let mut hi: Vec<Vec<BigInt>> = facets.iter().map(|f| homog_ineq(&f.normal_q(), &f.offset)).collect();
        let mut far = vec![BigInt::zero(); n + 1];
        far[0] = BigInt::one();
        hi.push(far);
        let he: Vec<Vec<BigInt>> = equations.iter().map(|f| homog_ineq(&f.normal_q(), &f.offset)).collect();
        let g = double_description(n + 1, &he, &hi);
        let lines_raw: Vec<Vector> = g.lines.iter().map(|l| int_to_q(&l[1..])).collect();
        let (lrows, lpiv) = linalg::rref(&lines_raw, n);
        let mut vertices = BTreeSet::new();
        let mut rays = BTreeSet::new();
        for r in &g.rays {
            if r[0].is_zero() {
                let d = reduce_mod(&int_to_q(&r[1..]), &lrows, &lpiv);
                if !is_zero_vec(&d) {
                    rays.insert(int_to_q(&primitive(&d)));
                }
            } else {
                let t = Q::from_integer(r[0].clone());
                let p: Vector = r[1..].iter().map(|x| Q::from_integer(x.clone()) / &t).collect();
                vertices.insert(reduce_mod(&p, &lrows, &lpiv));
            }
        }
        if vertices.is_empty() {
            return Err(Error::Domain("empty polyhedron".into()));
        }
        Ok(Polyhedron {
            ambient: n,
            vertices: vertices.into_iter().collect(),
            rays: rays.into_iter().collect(),
            lines: lrows,
            facets,
            equations,
            lattice: OnceLock::new(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }
    pub fn lines(&self) -> &[Vector] {
        &self.lines
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }
    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }
    pub fn is_full_dim(&self) -> bool {
        self.equations.is_empty()
    }
    pub fn is_simplex(&self) -> bool {
        self.is_bounded() && self.vertices.len() == self.dim() + 1
    }
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| crate::scalar::is_integral(v))
    }

    /// Linear space parallel to the affine hull.
    pub fn direction_basis(&self) -> Vec<Vector> {
        let mut dirs: Vec<Vector> = self.vertices.iter().skip(1).map(|v| sub(v, &self.vertices[0])).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lines.iter().cloned());
        linalg::span_basis(&dirs, self.ambient)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.ambient
            && self.facets.iter().all(|f| !f.eval(x).is_negative())
            && self.equations.iter().all(|f| f.eval(x).is_zero())
    }

    pub fn contains_direction(&self, r: &[Q]) -> bool {
        self.facets.iter().all(|f| !f.eval_dir(r).is_negative()) && self.equations.iter().all(|f| f.eval_dir(r).is_zero())
    }

    /// self ⊆ other
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        self.ambient == other.ambient
            && self.vertices.iter().all(|v| other.contains(v))
            && self.rays.iter().all(|r| other.contains_direction(r))
            && self.lines.iter().all(|l| {
                other.contains_direction(l) && other.contains_direction(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    fn incidence(&self) -> Vec<BitSet> {
        let nv = self.vertices.len();
        self.facets
            .iter()
            .map(|f| {
                let mut s = BitSet::new(nv + self.rays.len());
                for (i, v) in self.vertices.iter().enumerate() {
                    if f.eval(v).is_zero() {
                        s.insert(i);
                    }
                }
                for (j, r) in self.rays.iter().enumerate() {
                    if f.eval_dir(r).is_zero() {
                        s.insert(nv + j);
                    }
                }
                s
            })
            .collect()
    }

    fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| self.compute_lattice())
    }

    fn compute_lattice(&self) -> FaceLattice {
        let nv = self.vertices.len();
        let total = nv + self.rays.len();
        let inc = self.incidence();
        let mut seen: HashMap<BitSet, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        let top = BitSet::full(total);
        seen.insert(top.clone(), ());
        queue.push_back(top);
        let mut sets = Vec::new();
        while let Some(x) = queue.pop_front() {
            for s in &inc {
                let y = x.intersect(s);
                if y == x || !y.iter().any(|i| i < nv) {
                    continue;
                }
                if seen.insert(y.clone(), ()).is_none() {
                    queue.push_back(y);
                }
            }
            sets.push(x);
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|x| {
                let vertices: Vec<usize> = x.iter().filter(|&i| i < nv).collect();
                let rays: Vec<usize> = x.iter().filter(|&i| i >= nv).map(|i| i - nv).collect();
                let tight: Vec<usize> = (0..inc.len()).filter(|&k| x.is_subset(&inc[k])).collect();
                let v0 = &self.vertices[vertices[0]];
                let mut dirs: Vec<Vector> = vertices[1..].iter().map(|&i| sub(&self.vertices[i], v0)).collect();
                dirs.extend(rays.iter().map(|&j| self.rays[j].clone()));
                dirs.extend(self.lines.iter().cloned());
                let basis = linalg::span_basis(&dirs, self.ambient);
                Face { dim: basis.len(), vertices, rays, basis, tight }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices, &a.rays).cmp(&(b.dim, &b.vertices, &b.rays)));
        FaceLattice { faces }
    }

    /// All faces (every dimension), sorted by dimension then index sets.
    pub fn all_faces(&self) -> &[Face] {
        &self.lattice().faces
    }

    pub fn faces(&self, d: usize) -> Result<Vec<&Face>> {
        if d > self.dim() {
            return input(format!("face dimension {d} exceeds polyhedron dimension {}", self.dim()));
        }
        Ok(self.all_faces().iter().filter(|f| f.dim == d).collect())
    }

    /// Index of the top face (the polyhedron itself) in `all_faces`.
    pub fn top_face(&self) -> usize {
        self.all_faces().len() - 1
    }

    /// The face as a polyhedron in its own right.
    pub fn face_polyhedron(&self, face: &Face) -> Polyhedron {
        let pts: Vec<Vector> = face.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        let rays: Vec<Vector> = face.rays.iter().map(|&j| self.rays[j].clone()).collect();
        Self::hull_with_lines(&pts, &rays, &self.lines).expect("face of a valid polyhedron")
    }

    /// Finds the face whose vertex set equals `vertices` (bounded faces).
    pub fn find_face(&self, vertex_points: &[Vector]) -> Option<&Face> {
        let mut idx: Vec<usize> = Vec::new();
        for p in vertex_points {
            idx.push(self.vertices.iter().position(|v| v == p)?);
        }
        idx.sort();
        idx.dedup();
        self.all_faces().iter().find(|f| f.vertices == idx && f.rays.is_empty())
    }

    /// Faces of codimension one inside face `fi`.
    pub fn subfacets(&self, fi: usize) -> Vec<usize> {
        let faces = self.all_faces();
        let f = &faces[fi];
        (0..faces.len())
            .filter(|&g| {
                let h = &faces[g];
                h.dim + 1 == f.dim && h.vertices.iter().all(|v| f.vertices.contains(v)) && h.rays.iter().all(|r| f.rays.contains(r))
            })
            .collect()
    }

    /// Fan triangulation of a bounded face: simplices as vertex index lists.
    pub fn triangulate_face(&self, fi: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        self.triangulate_rec(fi, &mut memo)
    }

    fn triangulate_rec(&self, fi: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&fi) {
            return t.clone();
        }
        let f = &self.all_faces()[fi];
        let out = if f.dim == 0 {
            vec![vec![f.vertices[0]]]
        } else {
            let apex = *f.vertices.iter().min_by(|&&a, &&b| self.vertices[a].cmp(&self.vertices[b])).unwrap();
            let mut out = Vec::new();
            for g in self.subfacets(fi) {
                if self.all_faces()[g].vertices.contains(&apex) {
                    continue;
                }
                for mut s in self.triangulate_rec(g, memo) {
                    s.push(apex);
                    out.push(s);
                }
            }
            out
        };
        memo.insert(fi, out.clone());
        out
    }

    pub fn triangulate(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_bounded() {
            return input("triangulation needs a bounded polytope");
        }
        Ok(self.triangulate_face(self.top_face()))
    }

    /// Lattice volume of a simplex whose affine hull has the saturated lattice `lat`.
    fn simplex_volume(&self, s: &[usize], lat: &[Vector]) -> Q {
        let k = s.len() - 1;
        if k == 0 {
            return Q::one();
        }
        let v0 = &self.vertices[s[0]];
        let cols: Vec<Vector> = s[1..]
            .iter()
            .map(|&i| linalg::coords_in_basis(lat, &sub(&self.vertices[i], v0)).expect("edge in lattice span"))
            .collect();
        linalg::det(&cols).abs() / qfact(k)
    }

    fn face_lattice_basis(&self, face: &Face) -> Vec<Vector> {
        linalg::saturated_basis(&face.basis, self.ambient).iter().map(|v| int_to_q(v)).collect()
    }

    /// Volume of a bounded face relative to the lattice of its affine hull.
    pub fn face_volume(&self, fi: usize) -> Q {
        let face = &self.all_faces()[fi];
        let lat = self.face_lattice_basis(face);
        self.triangulate_face(fi).iter().map(|s| self.simplex_volume(s, &lat)).sum()
    }

    /// Lattice-normalized volume relative to the affine hull.
    pub fn volume(&self) -> Result<Q> {
        if !self.is_bounded() {
            return input("volume of an unbounded polyhedron");
        }
        Ok(self.face_volume(self.top_face()))
    }

    /// n-dimensional volume in the ambient lattice: zero unless full-dimensional.
    pub fn ambient_volume(&self) -> Result<Q> {
        if !self.is_bounded() {
            return input("volume of an unbounded polyhedron");
        }
        if !self.is_full_dim() {
            return Ok(Q::zero());
        }
        self.volume()
    }

    /// Euclidean volume of a face in its affine hull.
    pub fn face_euclidean_volume(&self, fi: usize) -> f64 {
        let face = &self.all_faces()[fi];
        let lat = self.face_lattice_basis(face);
        let cov = crate::scalar::to_f64(&linalg::gram_det(&lat)).sqrt();
        crate::scalar::to_f64(&self.face_volume(fi)) * cov
    }

    /// ∫ (⟨m,x⟩ + c) over a bounded face, relative lattice measure. A vertex
    /// face gives the point evaluation.
    pub fn integrate_affine_face(&self, fi: usize, m: &[Q], c: &Q) -> Q {
        let face = &self.all_faces()[fi];
        let lat = self.face_lattice_basis(face);
        let mut total = Q::zero();
        for s in self.triangulate_face(fi) {
            let vol = self.simplex_volume(&s, &lat);
            let k = Q::from_integer(BigInt::from(s.len()));
            let mut centroid = vec![Q::zero(); self.ambient];
            for &i in &s {
                for (c0, x) in centroid.iter_mut().zip(&self.vertices[i]) {
                    *c0 += x;
                }
            }
            let val = dot(m, &centroid) / k + c;
            total += vol * val;
        }
        total
    }

    pub fn integrate_affine(&self, m: &[Q], c: &Q) -> Result<Q> {
        if !self.is_bounded() {
            return input("integration over an unbounded polyhedron");
        }
        if m.len() != self.ambient {
            return input("dimension mismatch in affine form");
        }
        Ok(self.integrate_affine_face(self.top_face(), m, c))
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.ambient != other.ambient {
            return input("dimension mismatch in Minkowski sum");
        }
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(crate::scalar::add(a, b));
            }
        }
        let rays: Vec<Vector> = self.rays.iter().chain(&other.rays).cloned().collect();
        let lines: Vec<Vector> = self.lines.iter().chain(&other.lines).cloned().collect();
        Self::hull_with_lines(&pts, &rays, &lines)
    }

    /// min over P of ⟨u,x⟩; None stands for −∞.
    pub fn support_value(&self, u: &[Q]) -> Option<Q> {
        if self.rays.iter().any(|r| dot(u, r).is_negative()) || self.lines.iter().any(|l| !dot(u, l).is_zero()) {
            return None;
        }
        self.vertices.iter().map(|v| dot(u, v)).min()
    }

    /// Faces on which u is constant, grouped by level.
    pub fn aggregates(&self, u: &[Q]) -> Result<Vec<Aggregate>> {
        if !self.is_bounded() || !self.is_full_dim() {
            return input("aggregates need a full-dimensional polytope");
        }
        if u.len() != self.ambient {
            return input("dimension mismatch in direction");
        }
        let mut groups: BTreeMap<Q, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.all_faces().iter().enumerate() {
            if f.basis.iter().all(|b| dot(u, b).is_zero()) {
                groups.entry(dot(u, &self.vertices[f.vertices[0]])).or_default().push(i);
            }
        }
        Ok(groups
            .into_iter()
            .map(|(level, faces)| {
                let verts: BTreeSet<usize> = faces.iter().flat_map(|&i| self.all_faces()[i].vertices.iter().copied()).collect();
                let verts: Vec<usize> = verts.into_iter().collect();
                let v0 = &self.vertices[verts[0]];
                let dirs: Vec<Vector> = verts[1..].iter().map(|&i| sub(&self.vertices[i], v0)).collect();
                let dim = linalg::rank(&dirs, self.ambient);
                Aggregate { level, faces, vertices: verts, dim }
            })
            .collect())
    }

    /// Image under x ↦ A x + b where A is given by rows.
    pub fn affine_image(&self, rows: &[Vector], b: &[Q]) -> Result<Polyhedron> {
        let img = |x: &[Q], shift: bool| -> Vector {
            rows.iter().zip(b).map(|(r, bi)| if shift { dot(r, x) + bi } else { dot(r, x) }).collect()
        };
        let pts: Vec<Vector> = self.vertices.iter().map(|v| img(v, true)).collect();
        let rays: Vec<Vector> = self.rays.iter().map(|r| img(r, false)).collect();
        let lines: Vec<Vector> = self.lines.iter().map(|l| img(l, false)).collect();
        Self::hull_with_lines(&pts, &rays, &lines)
    }

    /// Dilation x ↦ λx + t.
    pub fn dilate_translate(&self, lambda: &Q, t: &[Q]) -> Result<Polyhedron> {
        let n = self.ambient;
        let rows: Vec<Vector> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { lambda.clone() } else { Q::zero() }).collect())
            .collect();
        self.affine_image(&rows, t)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        let (mut ineqs, mut eqs) = self.h_system();
        let (i2, e2) = other.h_system();
        ineqs.extend(i2);
        eqs.extend(e2);
        Self::from_h(self.ambient, &ineqs, &eqs)
    }

    /// H-representation as rational (normal, offset) pairs.
    pub fn h_system(&self) -> (Vec<(Vector, Q)>, Vec<(Vector, Q)>) {
        (
            self.facets.iter().map(|f| (f.normal_q(), f.offset.clone())).collect(),
            self.equations.iter().map(|f| (f.normal_q(), f.offset.clone())).collect(),
        )
    }

    /// A rational point in the relative interior (average of generators).
    pub fn relative_interior_point(&self) -> Vector {
        let k = Q::from_integer(BigInt::from(self.vertices.len()));
        let mut p = vec![Q::zero(); self.ambient];
        for v in &self.vertices {
            for (a, x) in p.iter_mut().zip(v) {
                *a += x;
            }
        }
        for a in p.iter_mut() {
            *a /= &k;
        }
        for r in &self.rays {
            for (a, x) in p.iter_mut().zip(r) {
                *a += x;
            }
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub level: Q,
    /// Indices into `Polyhedron::all_faces`.
    pub faces: Vec<usize>,
    /// Vertex indices of the union.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// Standard simplex conv(0, e_1, …, e_n).
pub fn standard_simplex(n: usize) -> Polyhedron {
    let mut pts = vec![vec![Q::zero(); n]];
    for i in 0..n {
        let mut e = vec![Q::zero(); n];
        e[i] = Q::one();
        pts.push(e);
    }
    Polyhedron::hull(&pts, &[]).expect("simplex")
}

/// The cube [0,1]ⁿ.
pub fn unit_cube(n: usize) -> Polyhedron {
    let pts: Vec<Vector> = (0..1usize << n)
        .map(|m| (0..n).map(|i| Q::from_integer(BigInt::from((m >> i) & 1))).collect())
        .collect();
    Polyhedron::hull(&pts, &[]).expect("cube")
}
