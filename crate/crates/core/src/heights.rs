//! Degrees and heights: toric local, mixed, face, pullback and global
//! heights from roof functions, polytope metrics and entropy, toric curves,
//! the Veronese curves and toric projective bundles.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::concave_calculus::float::FloatPA;
use crate::concave_calculus::{Affine, ConcavePA};
use crate::error::{input, Error, Result};
use crate::lattice_polytopes::Polyhedron;
use crate::linalg;
use crate::logq::{factor, LogQ};
use crate::measures::mixed_integral;
use crate::numeric;
use crate::polytope_integration::{integrate_composed, simplex_l_log_l, Builtin};
use crate::scalar::{abs, dot, fmt_q, harmonic_range, int_to_q, q, qf, qfact, to_f64, Vector, Q};
use crate::univariate::{newton_polygon, roots_rational, valuation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlaceKind {
    Archimedean,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    pub id: String,
    pub kind: PlaceKind,
    pub weight: Q,
}

impl PlaceData {
    pub fn infinity() -> PlaceData {
        PlaceData { id: "inf".into(), kind: PlaceKind::Archimedean, weight: Q::one() }
    }

    pub fn prime(p: u64) -> Result<PlaceData> {
        if !crate::univariate::is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        Ok(PlaceData { id: p.to_string(), kind: PlaceKind::Prime(p), weight: Q::one() })
    }

    /// λ_K: 1 at the Archimedean place, log p at p.
    pub fn lambda(&self) -> LogQ {
        match self.kind {
            PlaceKind::Archimedean => LogQ::from_q(Q::one()),
            PlaceKind::Prime(p) => LogQ::log(&q(p as i64)).expect("p > 0"),
        }
    }
}

/// The roof function at one place.
#[derive(Clone, Debug)]
pub enum RoofFunction {
    /// λ_K·g for a piecewise affine concave g on Δ (g = ψ∨).
    PiecewiseAffine(ConcavePA),
    /// −Σ c_i ℓ_i log ℓ_i, with the ℓ_i ≥ 0 on Δ.
    Entropic { forms: Vec<Affine>, weights: Vec<Q> },
}

/// A polytope with one roof per place; places not listed carry the zero roof.
#[derive(Clone, Debug)]
pub struct AdelicToricMetric {
    polytope: Polyhedron,
    roofs: BTreeMap<String, (PlaceData, RoofFunction)>,
}

impl AdelicToricMetric {
    pub fn canonical(polytope: Polyhedron) -> Result<AdelicToricMetric> {
        full_dim_polytope(&polytope)?;
        Ok(AdelicToricMetric { polytope, roofs: BTreeMap::new() })
    }

    pub fn polytope(&self) -> &Polyhedron {
        &self.polytope
    }

    pub fn roofs(&self) -> impl Iterator<Item = &(PlaceData, RoofFunction)> {
        self.roofs.values()
    }

    pub fn set_roof(&mut self, place: PlaceData, roof: RoofFunction) -> Result<()> {
        if place.weight <= Q::zero() {
            return input("place weights must be positive");
        }
        match &roof {
            RoofFunction::PiecewiseAffine(g) => {
                if !g.domain().same_set(&self.polytope) {
                    return input("the roof must be defined on the polytope");
                }
            }
            RoofFunction::Entropic { forms, weights } => check_entropic(&self.polytope, forms, weights)?,
        }
        self.roofs.insert(place.id.clone(), (place, roof));
        Ok(())
    }
}

fn full_dim_polytope(p: &Polyhedron) -> Result<usize> {
    if !p.is_bounded() || !p.is_full_dim() {
        return input("a full-dimensional polytope is required");
    }
    Ok(p.ambient_dim())
}

/// n!·vol_M(Δ), with n = dim Δ and the lattice of its affine hull.
pub fn degree(p: &Polyhedron) -> Result<Q> {
    Ok(qfact(p.dim()) * p.volume()?)
}

/// ∫_Δ ψ∨ computed twice: directly from the dual, and as the sum over the
/// vertices v of Π(ψ) of ∫_{v*} (⟨x,v⟩ − ψ(v)).
pub fn local_height_paths(psi: &ConcavePA) -> Result<(Q, Q)> {
    let stab = psi.stability_set();
    full_dim_polytope(&stab)?;
    let direct = psi.dual()?.integrate(&stab)?;
    let dp = psi.dual_pair()?;
    let mut by_cells = Q::zero();
    for i in dp.primal_vertices() {
        let v = &dp.primal[i].vertices()[0];
        let value = psi.eval(v).ok_or_else(|| Error::Consistency("vertex outside the domain".into()))?;
        by_cells += dp.dual[i].integrate_affine(v, &-value)?;
    }
    Ok((direct, by_cells))
}

/// (n+1)!·λ·∫_Δ ψ∨ for Δ = stab(ψ).
pub fn local_height(psi: &ConcavePA, lambda: &LogQ) -> Result<LogQ> {
    let (a, b) = local_height_paths(psi)?;
    if a != b {
        return Err(Error::Consistency(format!("local height paths disagree: {} vs {}", fmt_q(&a), fmt_q(&b))));
    }
    Ok(lambda.clone() * &(qfact(psi.dim() + 1) * a))
}

/// The float counterpart of `local_height` for ψ with binary64 constants.
pub fn local_height_float(psi: &FloatPA, lambda: f64) -> Result<f64> {
    let n = psi.dim();
    let direct = psi.integrate_dual()?;
    let mut by_cells = 0.0;
    for c in psi.roof_cells()? {
        let vol = to_f64(&c.cell.volume()?);
        let mut first_moment = 0.0;
        for d in 0..n {
            let mut e = vec![Q::zero(); n];
            e[d] = Q::one();
            first_moment += c.slope[d] * to_f64(&c.cell.integrate_affine(&e, &Q::zero())?);
        }
        by_cells += first_moment - psi.eval(&c.slope) * vol;
    }
    if (direct - by_cells).abs() > 1e-10 * direct.abs().max(1.0) {
        return Err(Error::Consistency(format!("local height paths disagree: {direct} vs {by_cells}")));
    }
    Ok(to_f64(&qfact(n + 1)) * lambda * direct)
}

/// λ·MI_M(ψ_0∨, …, ψ_n∨).
pub fn mixed_local_height(psis: &[ConcavePA], lambda: &LogQ) -> Result<LogQ> {
    let duals = psis.iter().map(|p| p.dual()).collect::<Result<Vec<_>>>()?;
    Ok(lambda.clone() * &mixed_integral(&duals)?)
}

/// (dim F + 1)!·λ·∫_F ψ∨ in the lattice measure of F, for a face F of stab(ψ)
/// given by its vertices.
pub fn face_local_height(psi: &ConcavePA, face_vertices: &[Vector], lambda: &LogQ) -> Result<LogQ> {
    let stab = psi.stability_set();
    if !stab.is_bounded() {
        return input("the stability set must be bounded");
    }
    let face = stab.find_face(face_vertices).ok_or_else(|| Error::Input("not a face of the stability set".into()))?;
    let fp = stab.face_polyhedron(face);
    let integral = psi.dual()?.integrate(&fp)?;
    Ok(lambda.clone() * &(qfact(face.dim + 1) * integral))
}

/// Whether the columns of `h` (n rows, d columns) span a saturated rank-d
/// sublattice: the d×d minors are coprime.
fn is_saturated_injective(h: &[Vector]) -> bool {
    let n = h.len();
    let d = h.first().map(|r| r.len()).unwrap_or(0);
    if d > n || h.iter().flatten().any(|x| !x.is_integer()) {
        return false;
    }
    let mut g = BigInt::zero();
    let mut rows: Vec<usize> = (0..d).collect();
    loop {
        let m: Vec<Vector> = rows.iter().map(|&i| h[i].clone()).collect();
        g = g.gcd(&linalg::det(&m).to_integer());
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                return g.is_one();
            }
            k -= 1;
            if rows[k] < n - d + k {
                rows[k] += 1;
                for j in k + 1..d {
                    rows[j] = rows[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// (d+1)!·λ·∫ (A*ψ)∨ for the affine map A(u) = Hu + u₀ from ℝ^d.
pub fn pullback_height(psi: &ConcavePA, h: &[Vector], u0: &[Q], lambda: &LogQ) -> Result<LogQ> {
    if h.len() != psi.dim() || !is_saturated_injective(h) {
        return input("the linear part must be injective with saturated image");
    }
    local_height(&psi.pullback(h, u0)?, lambda)
}

fn roof_integral(p: &Polyhedron, roof: &RoofFunction) -> Result<LogQ> {
    match roof {
        RoofFunction::PiecewiseAffine(g) => Ok(LogQ::from_q(g.integrate(p)?)),
        RoofFunction::Entropic { forms, weights } => {
            let n = p.ambient_dim();
            Ok(exact_polytope_metric(p, forms, weights)? * &(Q::one() / qfact(n + 1)))
        }
    }
}

/// Σ_v n_v·(n+1)!·∫_Δ ϑ_v, summed in place-id order.
pub fn global_height(metric: &AdelicToricMetric) -> Result<LogQ> {
    let n = metric.polytope.ambient_dim();
    let mut total = LogQ::zero();
    for (place, roof) in metric.roofs.values() {
        let mut local = roof_integral(&metric.polytope, roof)? * &qfact(n + 1);
        if let RoofFunction::PiecewiseAffine(_) = roof {
            let lam = place.lambda();
            local = match lam.as_rational() {
                Some(l) => local * l,
                None => {
                    let c = local.as_rational().cloned().ok_or_else(|| Error::Unsupported("product of logarithms".into()))?;
                    lam * &c
                }
            };
        }
        total += &(local * &place.weight);
    }
    Ok(total)
}

fn check_entropic(p: &Polyhedron, forms: &[Affine], weights: &[Q]) -> Result<()> {
    let n = full_dim_polytope(p)?;
    if forms.is_empty() || forms.len() != weights.len() {
        return input("one positive weight per affine form is required");
    }
    if weights.iter().any(|c| !c.is_positive()) {
        return input("weights must be positive");
    }
    for f in forms {
        if f.slope.len() != n {
            return input("affine form has the wrong dimension");
        }
        if p.vertices().iter().any(|v| f.eval(v).is_negative()) {
            return input("an affine form is negative on the polytope");
        }
    }
    Ok(())
}

fn exact_polytope_metric(p: &Polyhedron, forms: &[Affine], weights: &[Q]) -> Result<LogQ> {
    let n = p.ambient_dim();
    let simplices: Vec<Polyhedron> = p
        .triangulate()?
        .iter()
        .map(|s| Polyhedron::hull(&s.iter().map(|&i| p.vertices()[i].clone()).collect::<Vec<_>>(), &[]))
        .collect::<Result<_>>()?;
    let mut total = LogQ::zero();
    for (ell, c) in forms.iter().zip(weights) {
        for s in &simplices {
            let vol = s.ambient_volume()?;
            total += &(simplex_l_log_l(s, ell)? * &(-(c * vol)));
        }
    }
    Ok(total * &qfact(n + 1))
}

/// The three evaluations of the height for the roof −Σ c_i ℓ_i log ℓ_i.
#[derive(Clone, Debug)]
pub struct PolytopeMetricHeight {
    /// Exact value from a triangulation and the simplex ℓ log ℓ formula.
    pub exact: LogQ,
    /// Through the aggregate coefficients C_k(Δ,u_i,V), in binary64.
    pub by_coefficients: f64,
    /// The simplex closed form, when Δ is a simplex cut out by the ℓ_i.
    pub simplex_form: Option<LogQ>,
}

fn simplex_closed_form(p: &Polyhedron, forms: &[Affine], weights: &[Q]) -> Result<Option<LogQ>> {
    let n = p.ambient_dim();
    if !p.is_simplex() || forms.len() != n + 1 {
        return Ok(None);
    }
    let mut opposite = Vec::new();
    for f in forms {
        let nonzero: Vec<usize> = (0..=n).filter(|&i| !f.eval(&p.vertices()[i]).is_zero()).collect();
        if nonzero.len() != 1 {
            return Ok(None);
        }
        opposite.push(nonzero[0]);
    }
    let mut seen = opposite.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != n + 1 {
        return Ok(None);
    }
    let h = harmonic_range(2, n + 1);
    let mut total = LogQ::zero();
    for ((f, c), &i) in forms.iter().zip(weights).zip(&opposite) {
        let l = f.eval(&p.vertices()[i]);
        total += &((LogQ::from_q(h.clone()) - LogQ::log(&l)?) * &(c * &l));
    }
    Ok(Some(total * &(qfact(n) * p.ambient_volume()?)))
}

pub fn polytope_metric_height(p: &Polyhedron, forms: &[Affine], weights: &[Q]) -> Result<PolytopeMetricHeight> {
    check_entropic(p, forms, weights)?;
    let n = p.ambient_dim();
    let exact = exact_polytope_metric(p, forms, weights)?;
    let mut by_coefficients = 0.0;
    for (f, c) in forms.iter().zip(weights) {
        let fam = Builtin::ZLogZ { order: n, shift: -to_f64(&f.constant) };
        by_coefficients -= to_f64(c) * integrate_composed(p, &f.slope, &fam)?;
    }
    by_coefficients *= to_f64(&qfact(n + 1));
    let simplex_form = simplex_closed_form(p, forms, weights)?;
    let e = exact.to_f64();
    if (e - by_coefficients).abs() > 1e-8 * e.abs().max(1.0) {
        return Err(Error::Consistency(format!("polytope metric height paths disagree: {e} vs {by_coefficients}")));
    }
    if simplex_form.as_ref().is_some_and(|s| *s != exact) {
        return Err(Error::Consistency("simplex closed form disagrees with the exact height".into()));
    }
    Ok(PolytopeMetricHeight { exact, by_coefficients, simplex_form })
}

/// The forms ℓ_F = ⟨u_F,x⟩ − λ_F of the facets of Γ, where u_F is the inner
/// normal of Euclidean length (n−1)!·vol_{n−1}(F) and λ_F = min_Γ ⟨u_F,·⟩.
pub fn entropy_facet_forms(gamma: &Polyhedron) -> Result<Vec<Affine>> {
    let n = full_dim_polytope(gamma)?;
    let faces = gamma.all_faces();
    let mut forms = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        if face.dim + 1 != n {
            continue;
        }
        let nu = int_to_q(&gamma.facets()[face.tight[0]].normal);
        let scale = qfact(n - 1) * gamma.face_volume(fi);
        let u: Vector = nu.iter().map(|x| x * &scale).collect();
        let lam = gamma.vertices().iter().map(|v| dot(&u, v)).min().expect("nonempty");
        forms.push(Affine::new(u, -lam));
    }
    Ok(forms)
}

/// The mean over Δ of the entropy of the facet-cone partition of Γ seen from x.
pub fn entropy_average(delta: &Polyhedron, gamma: &Polyhedron, c: &Q) -> Result<LogQ> {
    let n = full_dim_polytope(delta)?;
    if gamma.ambient_dim() != n || !delta.is_subset_of(gamma) {
        return input("Δ must be contained in Γ");
    }
    if !c.is_positive() {
        return input("the weight must be positive");
    }
    let forms = entropy_facet_forms(gamma)?;
    let weights = vec![c.clone(); forms.len()];
    let h = polytope_metric_height(delta, &forms, &weights)?.exact;
    let deg = degree(delta)?;
    let big_n = qfact(n) * gamma.ambient_volume()?;
    let sum_lambda: Q = forms.iter().map(|f| -f.constant.clone()).sum();
    let first = h * &(Q::one() / (c * q(n as i64 + 1) * deg));
    let second = LogQ::log(&big_n)? * &sum_lambda;
    Ok((first - second) * &(Q::one() / big_n))
}

/// Σ_{h=1}^{n} Σ_{j=1}^{h} 1/(2j).
pub fn fubini_study_height(n: usize) -> Q {
    (1..=n).map(|h| harmonic_range(1, h)).sum::<Q>() / q(2)
}

/// A height known as an exact part plus a binary64 remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveHeight {
    pub exact: LogQ,
    pub numeric: f64,
}

impl CurveHeight {
    pub fn value(&self) -> f64 {
        self.exact.to_f64() + self.numeric
    }
}

fn check_curve(m: &[u64], p: &[Q]) -> Result<()> {
    if m.is_empty() || m.len() != p.len() {
        return input("exponents and coefficients must be nonempty and of equal length");
    }
    if m[0] == 0 || m.windows(2).any(|w| w[0] >= w[1]) {
        return input("exponents must satisfy 0 < m_1 < … < m_r");
    }
    if m.iter().fold(0u64, |g, &x| g.gcd(&x)) != 1 {
        return input("exponents must be coprime");
    }
    if p.iter().any(|x| x.is_zero()) {
        return input("coefficients must be nonzero");
    }
    Ok(())
}

fn curve_polynomial(m: &[u64], coeffs: impl Iterator<Item = Q>) -> Vec<Q> {
    let mut c = vec![Q::zero(); *m.last().expect("nonempty") as usize + 1];
    c[0] = Q::one();
    for (&e, x) in m.iter().zip(coeffs) {
        c[e as usize] = x;
    }
    c
}

/// Local height of the closure of t ↦ (1 : p_1 t^{m_1} : … : p_r t^{m_r}),
/// Fubini-Study at the Archimedean place and canonical at primes.
pub fn curve_local_height(m: &[u64], p: &[Q], place: &PlaceData) -> Result<CurveHeight> {
    check_curve(m, p)?;
    let mr = q(*m.last().expect("nonempty") as i64);
    let pr = p.last().expect("nonempty");
    match place.kind {
        PlaceKind::Archimedean => {
            let poly = curve_polynomial(m, p.iter().map(|x| x * x));
            let rl = roots_rational(&poly)?;
            let mut exact = LogQ::log(&abs(pr))? * &mr;
            let sq: usize = rl.multiplicities.iter().map(|l| l * l).sum();
            exact += &LogQ::from_q(qf(sq as i64, 2));
            let mut s = Complex64::zero();
            for i in 0..rl.roots.len() {
                for j in i + 1..rl.roots.len() {
                    let (a, b) = (rl.roots[i], rl.roots[j]);
                    let w = (rl.multiplicities[i] * rl.multiplicities[j]) as f64;
                    s += w * (a + b) / (a - b) * ((-a).ln() - (-b).ln());
                }
            }
            s *= 0.5;
            if s.im.abs() > 1e-9 * s.re.abs().max(1.0) {
                return Err(Error::Numeric(format!("imaginary part {} does not vanish", s.im)));
            }
            Ok(CurveHeight { exact, numeric: s.re })
        }
        PlaceKind::Prime(v) => {
            let poly = curve_polynomial(m, p.iter().cloned());
            let vl = newton_polygon(&poly, v)?;
            let mut coef = -(q(valuation(pr, v)) * &mr);
            for i in 0..vl.valuations.len() {
                for j in i + 1..vl.valuations.len() {
                    let w = q((vl.multiplicities[i] * vl.multiplicities[j]) as i64);
                    coef += w * abs(&(&vl.valuations[i] - &vl.valuations[j]));
                }
            }
            Ok(CurveHeight { exact: place.lambda() * &coef, numeric: 0.0 })
        }
    }
}

/// Sum of the local heights over ∞ and the primes dividing some p_i.
pub fn curve_global_height(m: &[u64], p: &[Q]) -> Result<CurveHeight> {
    check_curve(m, p)?;
    let mut primes: Vec<u64> = Vec::new();
    for x in p {
        for part in [x.numer().abs(), x.denom().clone()] {
            for (f, _) in factor(part) {
                let f: u64 = f.try_into().map_err(|_| Error::Unsupported("prime factor beyond 64 bits".into()))?;
                primes.push(f);
            }
        }
    }
    primes.sort();
    primes.dedup();
    let mut total = curve_local_height(m, p, &PlaceData::infinity())?;
    for v in primes {
        let local = curve_local_height(m, p, &PlaceData::prime(v)?)?;
        total.exact += &local.exact;
        total.numeric += local.numeric;
    }
    Ok(total)
}

#[derive(Clone, Debug)]
pub struct VeroneseHeight {
    /// r/2
    pub rational_part: Q,
    /// Σ_{j=1}^{⌊r/2⌋} (1 − 2j/(r+1))·cot(πj/(r+1))
    pub pi_coefficient: f64,
    pub value: f64,
    /// "a + b*pi" when the coefficient is recognised in some ℚ(√d).
    pub symbolic: Option<String>,
}

/// (a + c√d)/q close to x, with small q and c; d = 1 means rational.
fn recognize_quadratic(x: f64) -> Option<(i64, i64, i64, i64)> {
    let tol = 1e-12 * x.abs().max(1.0);
    for den in 1..=60i64 {
        let a = (x * den as f64).round();
        if (a / den as f64 - x).abs() < tol {
            return Some((a as i64, 0, 1, den));
        }
    }
    for den in 1..=60i64 {
        for d in [2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
            let sd = (d as f64).sqrt();
            for c in (-400i64..=400).filter(|&c| c != 0) {
                let a = (x * den as f64 - c as f64 * sd).round();
                if ((a + c as f64 * sd) / den as f64 - x).abs() < tol {
                    return Some((a as i64, c, d, den));
                }
            }
        }
    }
    None
}

fn format_pi_term(a: i64, c: i64, d: i64, den: i64) -> String {
    let g = a.gcd(&c).gcd(&den);
    let (a, c, den) = (a / g, c / g, den / g);
    let over = if den == 1 { String::new() } else { format!("/{den}") };
    if c == 0 {
        return match a {
            1 => format!("pi{over}"),
            _ => format!("{a}*pi{over}"),
        };
    }
    let root = |c: i64| if c.abs() == 1 { format!("sqrt({d})") } else { format!("{}*sqrt({d})", c.abs()) };
    if a == 0 {
        let sign = if c < 0 { "-" } else { "" };
        return format!("{sign}{}*pi{over}", root(c));
    }
    let op = if c < 0 { "-" } else { "+" };
    format!("({a} {op} {})*pi{over}", root(c))
}

pub fn veronese_height(r: u64) -> Result<VeroneseHeight> {
    if r == 0 {
        return input("r must be at least 1");
    }
    let r1 = (r + 1) as f64;
    let coef: f64 = (1..=r / 2).map(|j| (1.0 - 2.0 * j as f64 / r1) / (PI * j as f64 / r1).tan()).sum();
    let rational_part = qf(r as i64, 2);
    let value = to_f64(&rational_part) + PI * coef;
    let symbolic = if coef == 0.0 {
        Some(fmt_q(&rational_part))
    } else {
        recognize_quadratic(coef).map(|(a, c, d, den)| format!("{} + {}", fmt_q(&rational_part), format_pi_term(a, c, d, den)))
    };
    Ok(VeroneseHeight { rational_part, pi_coefficient: coef, value, symbolic })
}

/// Degree and height of the projective bundle P(O(a_0)⊕…⊕O(a_r)) over ℙⁿ
/// with the Fubini-Study-induced metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleHeight {
    pub degree: Q,
    pub height: Q,
}

fn check_bundle(a: &[u64]) -> Result<()> {
    if a.is_empty() || a[0] < 1 || a.windows(2).any(|w| w[0] > w[1]) {
        return input("weights must satisfy 1 ≤ a_0 ≤ … ≤ a_r");
    }
    Ok(())
}

/// All i ∈ ℕ^{parts} with |i| = total.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial(a: &[u64], i: &[usize]) -> Q {
    Q::from_integer(a.iter().zip(i).map(|(&x, &e)| num_traits::pow(BigInt::from(x), e)).product())
}

/// A_{n,r}(i) = Σ_m (i_m + 1) Σ_{j=i_m+2}^{n+r+1} 1/(2j).
pub fn bundle_a_coefficient(n: usize, i: &[usize]) -> Q {
    let r = i.len() - 1;
    i.iter().map(|&im| q(im as i64 + 1) * harmonic_range(im + 2, n + r + 1) / q(2)).sum()
}

pub fn bundle_height(n: usize, a: &[u64]) -> Result<BundleHeight> {
    check_bundle(a)?;
    let parts = a.len();
    let degree = compositions(n, parts).iter().map(|i| monomial(a, i)).sum();
    let top: Q = compositions(n + 1, parts).iter().map(|i| monomial(a, i)).sum();
    let corr: Q = compositions(n, parts).iter().map(|i| monomial(a, i) * bundle_a_coefficient(n, i)).sum();
    Ok(BundleHeight { degree, height: top * fubini_study_height(n) + corr })
}

/// The polytope of the bundle in ℝⁿ × ℝʳ.
pub fn bundle_polytope(n: usize, a: &[u64]) -> Result<Polyhedron> {
    check_bundle(a)?;
    let r = a.len() - 1;
    let dim = n + r;
    let unit = |k: usize, s: i64| {
        let mut v = vec![Q::zero(); dim];
        v[k] = q(s);
        v
    };
    let mut pts = vec![vec![Q::zero(); dim]];
    for k in 0..n {
        pts.push(unit(k, a[0] as i64));
    }
    for l in 1..=r {
        pts.push(unit(n + l - 1, 1));
        for k in 0..n {
            let mut v = unit(n + l - 1, 1);
            v[k] = q(a[l] as i64);
            pts.push(v);
        }
    }
    Polyhedron::hull(&pts, &[])
}

fn eps(x: &[f64]) -> f64 {
    crate::concave_calculus::smooth::entropy(x)
}

/// ψ∞∨(x,y) = ½(ε_r(y) + L(y)·ε_n(x/L(y))), L(y) = a_0 + Σ (a_l − a_0) y_l.
pub fn bundle_roof(n: usize, a: &[u64], point: &[f64]) -> f64 {
    let (x, y) = point.split_at(n);
    let l = a[0] as f64 + y.iter().zip(&a[1..]).map(|(yl, &al)| (al as f64 - a[0] as f64) * yl).sum::<f64>();
    let xs: Vec<f64> = x.iter().map(|v| v / l).collect();
    0.5 * (eps(y) + l * eps(&xs))
}

/// The height from the two fibre integrals over Δʳ, by quadrature.
pub fn bundle_height_by_fibre_quadrature(n: usize, a: &[u64], points: usize) -> Result<f64> {
    check_bundle(a)?;
    let r = a.len() - 1;
    let l = |y: &[f64]| a[0] as f64 + y.iter().zip(&a[1..]).map(|(yl, &al)| (al as f64 - a[0] as f64) * yl).sum::<f64>();
    let (i1, i2) = if r == 0 {
        let l0 = a[0] as f64;
        (l0.powi(n as i32 + 1), 0.0)
    } else {
        let mut verts = vec![vec![0.0; r]];
        for k in 0..r {
            let mut v = vec![0.0; r];
            v[k] = 1.0;
            verts.push(v);
        }
        let vol = 1.0 / to_f64(&qfact(r));
        let rule = numeric::graded_rule(points, 12);
        let i1 = numeric::integrate_simplex(&verts, vol, &rule, &|y| l(y).powi(n as i32 + 1));
        let i2 = numeric::integrate_simplex(&verts, vol, &rule, &|y| l(y).powi(n as i32) * eps(y));
        (i1, i2)
    };
    let f = |k: usize| to_f64(&qfact(k));
    Ok(f(n + r + 1) / f(n + 1) * to_f64(&fubini_study_height(n)) * i1 + f(n + r + 1) / (2.0 * f(n)) * i2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_polytopes::{standard_simplex, unit_cube};
    use crate::scalar::qv;

    fn seg(a: i64, b: i64) -> Polyhedron {
        Polyhedron::hull(&[qv(&[a]), qv(&[b])], &[]).unwrap()
    }

    fn one() -> LogQ {
        LogQ::from_q(q(1))
    }

    fn simplex_facet_forms(n: usize) -> Vec<Affine> {
        let mut forms: Vec<Affine> = (0..n)
            .map(|i| {
                let mut s = vec![q(0); n];
                s[i] = q(1);
                Affine::new(s, q(0))
            })
            .collect();
        forms.push(Affine::new(vec![q(-1); n], q(1)));
        forms
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&standard_simplex(3)).unwrap(), q(1));
        let trap = Polyhedron::hull(&[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[2, 1])], &[]).unwrap();
        assert_eq!(degree(&trap).unwrap(), q(3));
        assert_eq!(degree(&seg(0, 5)).unwrap(), q(5));
    }

    #[test]
    fn local_heights() {
        let conic = ConcavePA::support_function(&standard_simplex(2)).unwrap();
        assert_eq!(local_height(&conic, &one()).unwrap(), LogQ::zero());
        let tent = ConcavePA::on_space(vec![Affine::new(qv(&[1]), q(0)), Affine::new(qv(&[-1]), q(1))]).unwrap();
        assert_eq!(local_height(&tent, &one()).unwrap(), LogQ::from_q(q(-2)));
        let (a, b) = local_height_paths(&tent).unwrap();
        assert_eq!(a, b);
        assert_eq!(mixed_local_height(&[tent.clone(), tent.clone()], &one()).unwrap(), LogQ::from_q(q(-2)));
    }

    #[test]
    fn float_local_height_matches_exact() {
        let f = FloatPA::new(vec![(qv(&[1]), 0.0), (qv(&[-1]), 1.0)]).unwrap();
        assert!((local_height_float(&f, 1.0).unwrap() + 2.0).abs() < 1e-13);
    }

    #[test]
    fn face_and_pullback_heights() {
        let tent = ConcavePA::on_space(vec![Affine::new(qv(&[1]), q(0)), Affine::new(qv(&[-1]), q(1))]).unwrap();
        // ψ∨ on [−1,1] is x/2 − 1/2, so at the vertex 1 it is 0
        assert_eq!(face_local_height(&tent, &[qv(&[1])], &one()).unwrap(), LogQ::zero());
        assert_eq!(face_local_height(&tent, &[qv(&[-1])], &one()).unwrap(), LogQ::from_q(q(-1)));
        assert_eq!(face_local_height(&tent, &[qv(&[-1]), qv(&[1])], &one()).unwrap(), local_height(&tent, &one()).unwrap());

        let sq = ConcavePA::support_function(&unit_cube(2)).unwrap();
        let h = vec![qv(&[1]), qv(&[1])];
        assert_eq!(pullback_height(&sq, &h, &qv(&[1, 0]), &one()).unwrap(), LogQ::from_q(q(-1)));
        assert_eq!(pullback_height(&sq, &h, &qv(&[0, 0]), &one()).unwrap(), LogQ::zero());
        let id = vec![qv(&[1, 0]), qv(&[0, 1])];
        assert_eq!(pullback_height(&sq, &id, &qv(&[0, 0]), &one()).unwrap(), LogQ::zero());
        assert!(pullback_height(&sq, &[qv(&[2]), qv(&[0])], &qv(&[0, 0]), &one()).is_err());
    }

    #[test]
    fn fubini_study_values() {
        let want = [q(0), qf(1, 2), qf(5, 4), qf(13, 6), qf(77, 24), qf(87, 20), qf(223, 40)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(&fubini_study_height(n), w);
        }
    }

    #[test]
    fn polytope_metric_heights() {
        let h = polytope_metric_height(&seg(0, 1), &[Affine::new(qv(&[1]), q(0))], &[q(1)]).unwrap();
        assert_eq!(h.exact, LogQ::from_q(qf(1, 2)));
        for n in 1..=3 {
            let forms = simplex_facet_forms(n);
            let h = polytope_metric_height(&standard_simplex(n), &forms, &vec![qf(1, 2); n + 1]).unwrap();
            assert_eq!(h.exact, LogQ::from_q(fubini_study_height(n)));
            assert_eq!(h.simplex_form, Some(h.exact.clone()));
            assert!((h.by_coefficients - to_f64(&fubini_study_height(n))).abs() < 1e-10);
        }
    }

    #[test]
    fn global_heights() {
        let mut m = AdelicToricMetric::canonical(standard_simplex(2)).unwrap();
        assert_eq!(global_height(&m).unwrap(), LogQ::zero());
        let fs = RoofFunction::Entropic { forms: simplex_facet_forms(2), weights: vec![qf(1, 2); 3] };
        m.set_roof(PlaceData::infinity(), fs).unwrap();
        assert_eq!(global_height(&m).unwrap(), LogQ::from_q(qf(5, 4)));
        let canon = ConcavePA::indicator(&standard_simplex(2)).unwrap();
        m.set_roof(PlaceData::prime(3).unwrap(), RoofFunction::PiecewiseAffine(canon)).unwrap();
        assert_eq!(global_height(&m).unwrap(), LogQ::from_q(qf(5, 4)));
    }

    #[test]
    fn entropy_averages() {
        for n in 1..=3 {
            let s = standard_simplex(n);
            assert_eq!(entropy_average(&s, &s, &qf(1, 2)).unwrap(), LogQ::from_q(harmonic_range(2, n + 1)));
        }
        // the weight cancels
        let sq = unit_cube(2);
        assert_eq!(entropy_average(&sq, &sq, &q(1)).unwrap(), entropy_average(&sq, &sq, &q(3)).unwrap());
    }

    #[test]
    fn curves() {
        let inf = PlaceData::infinity();
        assert!((curve_local_height(&[1], &[q(1)], &inf).unwrap().value() - 0.5).abs() < 1e-14);
        let c2 = curve_local_height(&[1, 2], &[q(1), q(1)], &inf).unwrap().value();
        assert!((c2 - (1.0 + PI / (3.0 * 3f64.sqrt()))).abs() < 1e-12);
        let at2 = curve_local_height(&[1], &[q(2)], &PlaceData::prime(2).unwrap()).unwrap();
        assert_eq!(at2.exact, -LogQ::log(&q(2)).unwrap());
        let g = curve_global_height(&[1], &[q(2)]).unwrap();
        assert_eq!(g.exact, LogQ::from_q(qf(1, 2)));
        assert_eq!(g.numeric, 0.0);
        let c3 = curve_global_height(&[1, 2, 3], &vec![q(1); 3]).unwrap().value();
        assert!((c3 - (1.5 + PI / 2.0)).abs() < 1e-12);
        assert!(curve_local_height(&[2, 4], &[q(1), q(1)], &inf).is_err());
    }

    #[test]
    fn nonarchimedean_curve_matches_roof_integral() {
        // ψ(u) = min(0, m_i u + v_p(p_i)) integrates to the same local height
        let (m, p, v) = ([1u64, 2, 3], [qf(1, 4), q(2), q(8)], 2u64);
        let place = PlaceData::prime(v).unwrap();
        let by_polygon = curve_local_height(&m, &p, &place).unwrap().exact;
        let mut pieces = vec![Affine::new(qv(&[0]), q(0))];
        for (mi, pi) in m.iter().zip(&p) {
            pieces.push(Affine::new(qv(&[*mi as i64]), q(valuation(pi, v))));
        }
        let psi = ConcavePA::on_space(pieces).unwrap();
        assert_eq!(local_height(&psi, &place.lambda()).unwrap(), by_polygon);
    }

    #[test]
    fn veronese() {
        let v = veronese_height(3).unwrap();
        assert_eq!(v.symbolic.as_deref(), Some("3/2 + pi/2"));
        assert_eq!(veronese_height(1).unwrap().symbolic.as_deref(), Some("1/2"));
        assert_eq!(veronese_height(7).unwrap().symbolic.as_deref(), Some("7/2 + (1 + sqrt(2))*pi"));
        assert_eq!(veronese_height(2).unwrap().symbolic.as_deref(), Some("1 + sqrt(3)*pi/9"));
        assert_eq!(veronese_height(5).unwrap().symbolic.as_deref(), Some("5/2 + 7*sqrt(3)*pi/9"));
        for r in 1..=8u64 {
            let m: Vec<u64> = (1..=r).collect();
            let c = curve_global_height(&m, &vec![q(1); r as usize]).unwrap().value();
            assert!((c - veronese_height(r).unwrap().value).abs() < 1e-10, "r={r}");
        }
    }

    #[test]
    fn bundles() {
        for b in 0..=6i64 {
            let h = bundle_height(1, &[1, b as u64 + 1]).unwrap();
            assert_eq!(h.height, qf(b * b, 2) + qf(9 * b, 4) + q(3));
        }
        assert_eq!(bundle_a_coefficient(1, &[1, 0]), qf(3, 4));
        assert_eq!(bundle_a_coefficient(1, &[1, 0, 0]), qf(5, 3));
        let h = bundle_height(1, &[1, 1, 1]).unwrap();
        assert_eq!((h.degree, h.height), (q(3), q(8)));
        let p = bundle_polytope(1, &[1, 2]).unwrap();
        assert_eq!(degree(&p).unwrap(), q(3));
        assert!((bundle_height_by_fibre_quadrature(1, &[1, 2], 8).unwrap() - 5.75).abs() < 1e-6);
        assert!(bundle_height(1, &[2, 1]).is_err());
    }
}
