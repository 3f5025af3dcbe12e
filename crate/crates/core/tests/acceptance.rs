//! Acceptance criteria 1-8. Prints one line per criterion and exits
//! nonzero when any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_core::concave_calculus::{Affine, ConcavePA};
use toric_core::heights::{
    bundle_height, bundle_height_by_fibre_quadrature, bundle_polytope, curve_global_height, entropy_average, fubini_study_height, global_height,
    local_height_paths, veronese_height, AdelicToricMetric,
};
use toric_core::lattice_polytopes::{standard_simplex, unit_cube};
use toric_core::logq::LogQ;
use toric_core::measures::{mixed_monge_ampere, mixed_volume, monge_ampere, stokes_residual};
use toric_core::numeric::{graded_rule, xlogx};
use toric_core::polytope_integration::{brion_short_exact, coefficients, simplex_coefficients, simplex_monomial, AggregateCoefficients};
use toric_core::scalar::{dot, harmonic_range, q, qf, qfact, to_f64, Vector};
use toric_core::univariate::{newton_polygon, valuation};
use toric_core::{Polyhedron, Q};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rational(rng: &mut ChaCha8Rng, r: i64) -> Q {
    qf(rng.gen_range(-r..=r), rng.gen_range(1..=3))
}

fn rational_vec(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vector {
    (0..n).map(|_| rational(rng, r)).collect()
}

fn int_vec(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vector {
    (0..n).map(|_| q(rng.gen_range(-r..=r))).collect()
}

fn nonzero_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let u = rational_vec(rng, n, 6);
        if u.iter().any(|x| !x.is_zero()) {
            return u;
        }
    }
}

fn rational_polytope(rng: &mut ChaCha8Rng, n: usize) -> Polyhedron {
    loop {
        let k = rng.gen_range(n + 1..=n + 4);
        let pts: Vec<Vector> = (0..k).map(|_| rational_vec(rng, n, 6)).collect();
        if let Ok(p) = Polyhedron::hull(&pts, &[]) {
            if p.is_full_dim() {
                return p;
            }
        }
    }
}

fn lattice_polytope(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Polyhedron {
    loop {
        let k = rng.gen_range(n + 1..=n + 3);
        let pts: Vec<Vector> = (0..k).map(|_| int_vec(rng, n, r)).collect();
        if let Ok(p) = Polyhedron::hull(&pts, &[]) {
            if p.is_full_dim() {
                return p;
            }
        }
    }
}

fn lattice_simplex(rng: &mut ChaCha8Rng, n: usize) -> Polyhedron {
    loop {
        let pts: Vec<Vector> = (0..=n).map(|_| int_vec(rng, n, 3)).collect();
        if let Ok(p) = Polyhedron::hull(&pts, &[]) {
            if p.is_full_dim() {
                return p;
            }
        }
    }
}

/// Concave PA on ℝⁿ with integer slopes spanning a full-dimensional hull.
fn pa_on_space(rng: &mut ChaCha8Rng, n: usize, r: i64) -> ConcavePA {
    loop {
        let k = rng.gen_range(n + 1..=n + 5);
        let pieces: Vec<Affine> = (0..k).map(|_| Affine::new(int_vec(rng, n, r), rational(rng, 4))).collect();
        if let Ok(f) = ConcavePA::on_space(pieces) {
            if f.stability_set().is_full_dim() {
                return f;
            }
        }
    }
}

/// Concave PA on a lattice polytope with rational slopes.
fn pa_on_polytope(rng: &mut ChaCha8Rng, n: usize) -> ConcavePA {
    loop {
        let dom = lattice_polytope(rng, n, 3);
        let k = rng.gen_range(1..=5);
        let pieces: Vec<Affine> = (0..k).map(|_| Affine::new(rational_vec(rng, n, 4), rational(rng, 4))).collect();
        if let Ok(f) = ConcavePA::new(pieces, dom) {
            return f;
        }
    }
}

fn point_in(rng: &mut ChaCha8Rng, p: &Polyhedron) -> Vector {
    let weights: Vec<Q> = p.vertices().iter().map(|_| q(rng.gen_range(0..=5))).collect();
    let total: Q = weights.iter().sum();
    if total.is_zero() {
        return p.vertices()[0].clone();
    }
    let mut x = vec![Q::zero(); p.ambient_dim()];
    for (v, w) in p.vertices().iter().zip(&weights) {
        for (a, b) in x.iter_mut().zip(v) {
            *a += b * w / &total;
        }
    }
    x
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn by_level(cs: &AggregateCoefficients, width: usize) -> std::collections::BTreeMap<Q, Vec<f64>> {
    let mut m = std::collections::BTreeMap::new();
    for (a, c) in &cs.entries {
        let e = m.entry(a.level.clone()).or_insert_with(|| vec![0.0; width]);
        for (k, x) in c.iter().enumerate() {
            e[k] += x;
        }
    }
    m
}

fn generic(p: &Polyhedron, u: &[Q]) -> bool {
    let mut vals: Vec<Q> = p.vertices().iter().map(|v| dot(u, v)).collect();
    vals.sort();
    vals.windows(2).all(|w| w[0] != w[1])
}

fn criterion_1() -> Check {
    let table = [qf(1, 2), qf(5, 4), qf(13, 6), qf(77, 24), qf(87, 20), qf(223, 40)];
    for (i, want) in table.iter().enumerate() {
        let n = i + 1;
        let harmonic = fubini_study_height(n);
        let mut by_log = Q::zero();
        for k in 0..=n {
            let mut alpha = vec![0usize; n + 1];
            alpha[k] = 1;
            by_log += qf(-1, 2) * simplex_monomial(&alpha, Some(k)).map_err(|e| e.to_string())?;
        }
        by_log *= qfact(n + 1);
        ensure(harmonic == by_log && harmonic == *want, || format!("n={n}: {harmonic} / {by_log} / {want}"))?;
    }
    Ok("n=1..6 exact, harmonic sum = simplex log-monomials = table".into())
}

fn criterion_2() -> Check {
    let mut worst = 0f64;
    for r in 1..=20u64 {
        let m: Vec<u64> = (1..=r).collect();
        let c = curve_global_height(&m, &vec![q(1); r as usize]).map_err(|e| e.to_string())?.value();
        let v = veronese_height(r).map_err(|e| e.to_string())?.value;
        worst = worst.max((c - v).abs());
        ensure((c - v).abs() <= 1e-9, || format!("r={r}: curve {c} vs closed form {v}"))?;
    }
    let pi = std::f64::consts::PI;
    let s3 = 3f64.sqrt();
    let table = [(1u64, 0.5), (2, 1.0 + pi / (3.0 * s3)), (3, 1.5 + pi / 2.0), (5, 2.5 + 7.0 * pi / (3.0 * s3)), (7, 3.5 + (1.0 + 2f64.sqrt()) * pi)];
    for (r, want) in table {
        let v = veronese_height(r).map_err(|e| e.to_string())?.value;
        ensure((v - want).abs() <= 1e-9, || format!("r={r}: {v} vs table {want}"))?;
    }
    Ok(format!("r<=20 curve vs closed form max diff {worst:.2e}; table r=1,2,3,5,7 within 1e-9"))
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Check {
    for b in 0..=6i64 {
        let h = bundle_height(1, &[1, b as u64 + 1]).map_err(|e| e.to_string())?.height;
        let want = qf(b * b, 2) + qf(9 * b, 4) + q(3);
        ensure(h == want, || format!("b={b}: {h} vs {want}"))?;
    }
    for _ in 0..20 {
        let n = rng.gen_range(1..=3usize);
        let r = rng.gen_range(0..=4 - n);
        let mut a: Vec<u64> = (0..=r).map(|_| rng.gen_range(1..=4)).collect();
        a.sort();
        let deg = bundle_height(n, &a).map_err(|e| e.to_string())?.degree;
        let vol = bundle_polytope(n, &a).and_then(|p| p.ambient_volume()).map_err(|e| e.to_string())?;
        ensure(deg == qfact(n + r) * &vol, || format!("n={n} a={a:?}: degree {deg} vs (n+r)!vol {}", qfact(n + r) * &vol))?;
    }
    let mut worst = 0f64;
    for (n, a) in [(1usize, vec![1u64, 3]), (1, vec![1, 2, 2]), (2, vec![2, 3])] {
        let exact = to_f64(&bundle_height(n, &a).map_err(|e| e.to_string())?.height);
        let quad = bundle_height_by_fibre_quadrature(n, &a, 12).map_err(|e| e.to_string())?;
        worst = worst.max(rel_err(quad, exact));
        ensure(rel_err(quad, exact) <= 1e-4, || format!("n={n} a={a:?}: {exact} vs quadrature {quad}"))?;
    }
    Ok(format!("Hirzebruch b=0..6 exact; 20 random degrees exact; quadrature max rel err {worst:.2e}"))
}

/// ∫_Δ ℓ^k over a simplex: vol·k!·n!/(k+n)!·h_k(ℓ(v_0),…,ℓ(v_n)).
fn simplex_power_integral(p: &Polyhedron, u: &[Q], k: usize) -> Q {
    let n = p.ambient_dim();
    let vals: Vec<Q> = p.vertices().iter().map(|v| dot(u, v)).collect();
    let mut h = vec![Q::zero(); k + 1];
    h[0] = Q::one();
    for x in &vals {
        for t in 1..=k {
            let prev = h[t - 1].clone();
            h[t] += x * prev;
        }
    }
    p.ambient_volume().unwrap() * qfact(k) * qfact(n) / qfact(k + n) * &h[k]
}

fn criterion_4(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let p = rational_polytope(rng, n);
        let u = nonzero_vec(rng, n);
        let vol = to_f64(&p.ambient_volume().map_err(|e| e.to_string())?);
        let got = coefficients(&p, &u).map_err(|e| e.to_string())?.volume_identity();
        worst = worst.max(rel_err(got, vol));
        ensure(rel_err(got, vol) <= 1e-10, || format!("volume identity {got} vs {vol}"))?;
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let p = lattice_simplex(rng, n);
        let u = loop {
            let u = nonzero_vec(rng, n);
            if generic(&p, &u) {
                break u;
            }
        };
        let deg = rng.gen_range(n..=6.max(n));
        let coeffs: Vec<Q> = (0..=deg).map(|_| rational(rng, 5)).collect();
        let brion = brion_short_exact(&p, &u, &|z: &Q| {
            let mut acc = Q::zero();
            for c in coeffs.iter().rev() {
                acc = acc * z + c;
            }
            acc
        })
        .map_err(|e| e.to_string())?;
        let mut symbolic = Q::zero();
        for (d, c) in coeffs.iter().enumerate().skip(n) {
            symbolic += c * qfact(d) / qfact(d - n) * simplex_power_integral(&p, &u, d - n);
        }
        ensure(brion == symbolic, || format!("brion {brion} vs symbolic {symbolic}"))?;
    }
    let mut worst_simplex = 0f64;
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let p = lattice_simplex(rng, n);
        let u = loop {
            let u = nonzero_vec(rng, n);
            if generic(&p, &u) {
                break u;
            }
        };
        let numeric = by_level(&coefficients(&p, &u).map_err(|e| e.to_string())?, n + 1);
        for (level, _, cs) in simplex_coefficients(&p, &u).map_err(|e| e.to_string())? {
            for (k, c) in cs.iter().enumerate() {
                let e = rel_err(numeric[&level][k], to_f64(c));
                worst_simplex = worst_simplex.max(e);
                ensure(e <= 1e-10, || format!("simplex coefficient at level {level}, k={k}: {} vs {c}", numeric[&level][k]))?;
            }
        }
    }
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let p = lattice_polytope(rng, n, 3);
        let u = nonzero_vec(rng, n);
        let lambda = qf(rng.gen_range(1..=7), rng.gen_range(1..=4));
        let scaled: Vector = u.iter().map(|x| x * &lambda).collect();
        let a = coefficients(&p, &u).map_err(|e| e.to_string())?;
        let b = coefficients(&p, &scaled).map_err(|e| e.to_string())?;
        ensure(a.entries.len() == b.entries.len(), || "aggregate counts differ under scaling".into())?;
        for ((va, ca), (vb, cb)) in a.entries.iter().zip(&b.entries) {
            ensure(&va.level * &lambda == vb.level, || "levels do not scale".into())?;
            for (k, (x, y)) in ca.iter().zip(cb).enumerate() {
                let want = to_f64(&lambda).powi(k as i32 - n as i32) * x;
                ensure((y - want).abs() <= 1e-10 * want.abs().max(1.0), || format!("homogeneity k={k}: {y} vs {want}"))?;
            }
        }
    }
    let mut splits = 0;
    while splits < 30 {
        let n = rng.gen_range(2..=3);
        let p = lattice_polytope(rng, n, 3);
        let a = int_vec(rng, n, 2);
        let u = nonzero_vec(rng, n);
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let b = dot(&a, &p.relative_interior_point());
        let neg: Vector = a.iter().map(|x| -x).collect();
        let half = |normal: Vector, offset: Q| Polyhedron::from_h(n, &[(normal, offset)], &[]).and_then(|h| p.intersect(&h));
        let (Ok(upper), Ok(lower)) = (half(a.clone(), -b.clone()), half(neg, b)) else { continue };
        if !upper.is_full_dim() || !lower.is_full_dim() {
            continue;
        }
        splits += 1;
        let whole = by_level(&coefficients(&p, &u).map_err(|e| e.to_string())?, n + 1);
        let mut parts = by_level(&coefficients(&upper, &u).map_err(|e| e.to_string())?, n + 1);
        for (level, row) in by_level(&coefficients(&lower, &u).map_err(|e| e.to_string())?, n + 1) {
            let e = parts.entry(level).or_insert_with(|| vec![0.0; n + 1]);
            for (x, y) in e.iter_mut().zip(row) {
                *x += y;
            }
        }
        let zero = vec![0.0; n + 1];
        for (level, row) in &parts {
            let want = whole.get(level).unwrap_or(&zero);
            let scale = row.iter().chain(want).fold(1.0f64, |m, x| m.max(x.abs()));
            for (x, y) in row.iter().zip(want) {
                ensure((x - y).abs() <= 1e-10 * scale, || format!("additivity at level {level}: {row:?} vs {want:?}"))?;
            }
        }
    }
    Ok(format!(
        "50 volume identities (max rel err {worst:.1e}); 50 Brion vs symbolic exact; simplex closed form max rel err {worst_simplex:.1e}; homogeneity and additivity within 1e-10"
    ))
}

fn criterion_5(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..50 {
        let n = rng.gen_range(1..=3);
        let f = if i % 2 == 0 { pa_on_space(rng, n, 3) } else { pa_on_polytope(rng, n) };
        let ff = f.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let x = if f.domain().is_bounded() { point_in(rng, f.domain()) } else { rational_vec(rng, n, 6) };
            ensure(ff.eval(&x) == f.eval(&x), || format!("f** != f at {x:?}"))?;
        }
    }
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let f = pa_on_space(rng, n, 2);
        let g = pa_on_space(rng, n, 2);
        let lhs = f.add(&g).and_then(|s| s.dual()).map_err(|e| e.to_string())?;
        let rhs = f.dual().and_then(|a| a.sup_convolution(&g.dual()?)).map_err(|e| e.to_string())?;
        ensure(lhs.domain().same_set(rhs.domain()), || "domains of (f+g)* and f* ⊞ g* differ".into())?;
        for _ in 0..30 {
            let x = point_in(rng, lhs.domain());
            ensure(lhs.eval(&x) == rhs.eval(&x), || format!("(f+g)* differs from f* ⊞ g* at {x:?}"))?;
        }
    }
    let mut cells = 0;
    let mut pairs = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let f = pa_on_space(rng, n, 3);
        let dp = f.dual_pair().map_err(|e| e.to_string())?;
        for i in 0..dp.primal.len() {
            cells += 1;
            ensure(dp.primal[i].dim() + dp.dual[i].dim() == n, || "cell dimensions do not sum to n".into())?;
            for j in 0..dp.primal.len() {
                if i != j && dp.primal[i].is_subset_of(&dp.primal[j]) {
                    ensure(dp.dual[j].is_subset_of(&dp.dual[i]), || "inclusion not reversed".into())?;
                }
            }
        }
        let d = f.dual().map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let u = rational_vec(rng, n, 4);
            let sub = f.sup_differential(&u).map_err(|e| e.to_string())?;
            let mut xs = vec![point_in(rng, &f.stability_set()), point_in(rng, &sub)];
            xs.extend(f.stability_set().vertices().iter().cloned());
            for x in xs {
                pairs += 1;
                let gap = f.eval(&u).unwrap() + d.eval(&x).unwrap() - dot(&x, &u);
                ensure(gap <= Q::zero(), || format!("Fenchel inequality fails at u={u:?} x={x:?}"))?;
                ensure(gap.is_zero() == sub.contains(&x), || format!("equality case mismatch at u={u:?} x={x:?}"))?;
            }
        }
    }
    Ok(format!("50 involutions x 100 points; 20 sum/sup-convolution checks; {cells} paired cells; {pairs} Fenchel pairs"))
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let f = pa_on_space(rng, n, 2);
        let m = monge_ampere(&f).map_err(|e| e.to_string())?;
        let vol = f.stability_set().ambient_volume().map_err(|e| e.to_string())?;
        ensure(m.total_mass() == vol, || format!("MA mass {} vs vol {vol}", m.total_mass()))?;
    }
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let p = lattice_polytope(rng, n, 3);
        let m = monge_ampere(&ConcavePA::support_function(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(m.atoms().len() == 1 && m.atoms()[0].iter().all(Zero::is_zero), || "support function measure is not at the origin".into())?;
        ensure(m.total_mass() == p.ambient_volume().unwrap(), || "support function mass differs from the volume".into())?;
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let f = pa_on_space(rng, n, 2);
        let res = stokes_residual(&f).map_err(|e| e.to_string())?;
        ensure(res.is_zero(), || format!("Stokes residual {res}"))?;
    }
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let p = lattice_polytope(rng, n, 2);
        let copies = vec![p.clone(); n];
        ensure(mixed_volume(&copies).unwrap() == qfact(n) * p.ambient_volume().unwrap(), || "MV(Q,...,Q) != n! vol(Q)".into())?;
    }
    for _ in 0..8 {
        let n = rng.gen_range(2..=3);
        let fs: Vec<ConcavePA> = (0..n).map(|_| pa_on_space(rng, n, 2)).collect();
        let mass = mixed_monge_ampere(&fs).map_err(|e| e.to_string())?.total_mass();
        let stabs: Vec<Polyhedron> = fs.iter().map(|f| f.stability_set()).collect();
        let mv = mixed_volume(&stabs).map_err(|e| e.to_string())?;
        ensure(mass == &mv / qfact(n), || format!("mixed MA mass {mass} vs MV/n! {}", &mv / qfact(n)))?;
    }
    Ok("MA mass = vol; support function = vol·δ0; 50 Stokes residuals zero; MV diagonal; mixed MA mass = MV/n!".into())
}

/// Brute-force average over the unit square of the entropy of the facet-cone
/// partition seen from x: facet probabilities are dist·length/(n·area).
fn square_entropy_by_quadrature() -> f64 {
    let (xs, ws) = graded_rule(20, 14);
    let mut total = 0.0;
    for (x, wx) in xs.iter().zip(&ws) {
        for (y, wy) in xs.iter().zip(&ws) {
            let probs = [x / 2.0, (1.0 - x) / 2.0, y / 2.0, (1.0 - y) / 2.0];
            total += wx * wy * -probs.iter().map(|&p| xlogx(p)).sum::<f64>();
        }
    }
    total
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let f = pa_on_space(rng, n, 2);
        let (a, b) = local_height_paths(&f).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("two paths {a} vs {b}"))?;
    }
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let metric = AdelicToricMetric::canonical(lattice_polytope(rng, n, 2)).map_err(|e| e.to_string())?;
        ensure(global_height(&metric).map_err(|e| e.to_string())? == LogQ::zero(), || "canonical global height is not zero".into())?;
    }
    for n in 1..=3 {
        let s = standard_simplex(n);
        let got = entropy_average(&s, &s, &qf(1, 2)).map_err(|e| e.to_string())?;
        let want = harmonic_range(2, n + 1);
        ensure(got.as_rational() == Some(&want), || format!("simplex n={n}: {got} vs {want}"))?;
    }
    let square = unit_cube(2);
    let exact = entropy_average(&square, &square, &qf(1, 2)).map_err(|e| e.to_string())?;
    let quad = square_entropy_by_quadrature();
    ensure((exact.to_f64() - quad).abs() <= 1e-6, || format!("unit square: {exact} = {} vs quadrature {quad}", exact.to_f64()))?;
    Ok(format!("100 two-path agreements; canonical heights zero; simplex entropies exact; square {exact} vs quadrature diff {:.1e}", (exact.to_f64() - quad).abs()))
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..50 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let pi = p as i64;
        let unit = |mut x: i64| {
            while x % pi == 0 {
                x /= pi;
            }
            x
        };
        let k = rng.gen_range(1..=6);
        let roots: Vec<Q> = (0..k)
            .map(|_| {
                let e = rng.gen_range(-3i32..=3);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                let base = qf(sign * unit(rng.gen_range(1..=30)), unit(rng.gen_range(1..=30)));
                if e >= 0 { base * q(pi.pow(e as u32)) } else { base / q(pi.pow((-e) as u32)) }
            })
            .collect();
        let mut poly = vec![Q::one()];
        for r in &roots {
            let mut next = vec![Q::zero(); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * r;
            }
            poly = next;
        }
        let vl = newton_polygon(&poly, p).map_err(|e| e.to_string())?;
        let mut got: Vec<Q> = vl.valuations.iter().zip(&vl.multiplicities).flat_map(|(v, &m)| std::iter::repeat(v.clone()).take(m)).collect();
        let mut want: Vec<Q> = roots.iter().map(|r| q(valuation(r, p))).collect();
        got.sort();
        want.sort();
        ensure(got == want, || format!("p={p}: {got:?} vs {want:?}"))?;
    }
    let h = curve_global_height(&[1], &[q(2)]).map_err(|e| e.to_string())?;
    ensure(h.numeric == 0.0 && h.exact == LogQ::from_q(qf(1, 2)), || format!("product formula gives {} + {}", h.exact, h.numeric))?;
    Ok("50 Newton polygons match constructed roots; curve ((1),(2)) = 1/2 exactly".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7043_1c);
    let checks: Vec<(&str, Box<dyn FnOnce(&mut ChaCha8Rng) -> Check>)> = vec![
        ("Fubini-Study heights", Box::new(|_| criterion_1())),
        ("Veronese curves", Box::new(|_| criterion_2())),
        ("Hirzebruch surfaces and bundles", Box::new(criterion_3)),
        ("polytope integration", Box::new(criterion_4)),
        ("convex-analysis core", Box::new(criterion_5)),
        ("measures", Box::new(criterion_6)),
        ("two-path heights and entropy", Box::new(criterion_7)),
        ("non-Archimedean curves", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut rng))).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [PASS] {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [FAIL] {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
