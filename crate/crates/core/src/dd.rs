//! Double description method for polyhedral cones.
//!
//! A cone {y : ⟨e, y⟩ = 0 for e in eqs, ⟨a, y⟩ ≥ 0 for a in ineqs} is turned
//! into generators: a basis of its lineality space and its extreme rays.
//! The same routine gives facets from generators by polarity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub trait DdNum: Clone + std::fmt::Debug {
    /// Returns the sign of ⟨a, y⟩ and its value.
    fn dot_sign(a: &[Self], y: &[Self]) -> (i8, Self);
    /// alpha·x − beta·y
    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Vec<Self>;
    fn negate(v: &mut [Self]);
    fn normalize(v: &mut [Self]);
    fn unit(d: usize, i: usize) -> Vec<Self>;
}

impl DdNum for BigInt {
    fn dot_sign(a: &[Self], y: &[Self]) -> (i8, Self) {
        let s: BigInt = a.iter().zip(y).map(|(p, q)| p * q).sum();
        let sg = if s.is_zero() { 0 } else if s.is_positive() { 1 } else { -1 };
        (sg, s)
    }
    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Vec<Self> {
        x.iter().zip(y).map(|(p, q)| alpha * p - beta * q).collect()
    }
    fn negate(v: &mut [Self]) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    fn normalize(v: &mut [Self]) {
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && g != BigInt::from(1) {
            for x in v.iter_mut() {
                *x = &*x / &g;
            }
        }
    }
    fn unit(d: usize, i: usize) -> Vec<Self> {
        (0..d).map(|j| BigInt::from((i == j) as i32)).collect()
    }
}

/// Relative tolerance used for float cones.
pub const FLOAT_TOL: f64 = 1e-12;

impl DdNum for f64 {
    fn dot_sign(a: &[Self], y: &[Self]) -> (i8, Self) {
        let mut s = 0.0;
        let mut mag = 0.0;
        for (p, q) in a.iter().zip(y) {
            s += p * q;
            mag += (p * q).abs();
        }
        let sg = if s.abs() <= FLOAT_TOL * mag.max(f64::MIN_POSITIVE) {
            0
        } else if s > 0.0 {
            1
        } else {
            -1
        };
        (sg, s)
    }
    fn combine(alpha: &Self, x: &[Self], beta: &Self, y: &[Self]) -> Vec<Self> {
        x.iter().zip(y).map(|(p, q)| alpha * p - beta * q).collect()
    }
    fn negate(v: &mut [Self]) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    fn normalize(v: &mut [Self]) {
        let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if m > 0.0 {
            for x in v.iter_mut() {
                *x /= m;
                if x.abs() < 1e-15 {
                    *x = 0.0;
                }
            }
        }
    }
    fn unit(d: usize, i: usize) -> Vec<Self> {
        (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }
    pub fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }
    fn grow(&mut self, i: usize) {
        let w = i / 64 + 1;
        if self.0.len() < w {
            self.0.resize(w, 0);
        }
    }
    pub fn insert(&mut self, i: usize) {
        self.grow(i);
        self.0[i / 64] |= 1 << (i % 64);
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }
    pub fn intersect(&self, o: &BitSet) -> BitSet {
        let n = self.0.len().max(o.0.len());
        BitSet((0..n).map(|i| self.0.get(i).copied().unwrap_or(0) & o.0.get(i).copied().unwrap_or(0)).collect())
    }
    pub fn is_subset(&self, o: &BitSet) -> bool {
        self.0.iter().enumerate().all(|(i, w)| w & !o.0.get(i).copied().unwrap_or(0) == 0)
    }
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| i * 64 + b))
    }
}

#[derive(Clone, Debug)]
pub struct Generators<T> {
    pub lines: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

pub fn double_description<T: DdNum>(d: usize, eqs: &[Vec<T>], ineqs: &[Vec<T>]) -> Generators<T> {
    let mut lines: Vec<Vec<T>> = (0..d).map(|i| T::unit(d, i)).collect();
    let mut rays: Vec<(Vec<T>, BitSet)> = Vec::new();
    let constraints = eqs.iter().map(|a| (a, None)).chain(ineqs.iter().enumerate().map(|(k, a)| (a, Some(k))));
    for (a, idx) in constraints {
        let pivot = lines.iter().position(|l| T::dot_sign(a, l).0 != 0);
        if let Some(p) = pivot {
            let mut l0 = lines.remove(p);
            let (s0, mut v0) = T::dot_sign(a, &l0);
            if s0 < 0 {
                T::negate(&mut l0);
                v0 = T::dot_sign(a, &l0).1;
            }
            for l in lines.iter_mut() {
                let (s, v) = T::dot_sign(a, l);
                if s != 0 {
                    *l = T::combine(&v0, l, &v, &l0);
                    T::normalize(l);
                }
            }
            for (r, z) in rays.iter_mut() {
                let (s, v) = T::dot_sign(a, r);
                if s != 0 {
                    *r = T::combine(&v0, r, &v, &l0);
                    T::normalize(r);
                }
                if let Some(k) = idx {
                    z.insert(k);
                }
            }
            if let Some(k) = idx {
                let mut z = BitSet::new(k);
                for j in 0..k {
                    z.insert(j);
                }
                T::normalize(&mut l0);
                rays.push((l0, z));
            }
            continue;
        }
        let signs: Vec<(i8, T)> = rays.iter().map(|(r, _)| T::dot_sign(a, r)).collect();
        let mut next: Vec<(Vec<T>, BitSet)> = Vec::new();
        for ((r, z), (s, _)) in rays.iter().zip(&signs) {
            match s {
                0 => {
                    let mut z = z.clone();
                    if let Some(k) = idx {
                        z.insert(k);
                    }
                    next.push((r.clone(), z));
                }
                1 if idx.is_some() => next.push((r.clone(), z.clone())),
                _ => {}
            }
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].0 > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].0 < 0).collect();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].1.intersect(&rays[n].1);
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == n || !common.is_subset(z));
                if !adjacent {
                    continue;
                }
                let vp = &signs[p].1;
                let vn = &signs[n].1;
                // vp > 0 > vn, so vp·r_n − vn·r_p is a positive combination
                let mut r = T::combine(vp, &rays[n].0, vn, &rays[p].0);
                T::normalize(&mut r);
                let mut z = common;
                if let Some(k) = idx {
                    z.insert(k);
                }
                next.push((r, z));
            }
        }
        rays = next;
    }
    Generators { lines, rays: rays.into_iter().map(|(r, _)| r).collect() }
}
