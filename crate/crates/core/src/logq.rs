//! Exact values of the form a + Σ b_p·log p with rational a, b_p.
//!
//! Logarithms of positive rationals are split over prime factors found by
//! trial division; a cofactor with no factor below the trial bound is kept
//! as its own base.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_q, to_f64, Q};

const TRIAL_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogQ {
    rational: Q,
    logs: BTreeMap<BigInt, Q>,
}

pub(crate) fn factor(mut n: BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n && p <= BigInt::from(TRIAL_BOUND) {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

impl LogQ {
    pub fn zero() -> LogQ {
        LogQ::default()
    }

    pub fn from_q(q: Q) -> LogQ {
        LogQ { rational: q, logs: BTreeMap::new() }
    }

    /// log x for a positive rational x.
    pub fn log(x: &Q) -> Result<LogQ> {
        if !x.is_positive() {
            return Err(Error::Domain(format!("log of non-positive value {}", fmt_q(x))));
        }
        let mut out = LogQ::zero();
        for (p, e) in factor(x.numer().clone()) {
            out.add_log(p, Q::from_integer(e.into()));
        }
        for (p, e) in factor(x.denom().clone()) {
            out.add_log(p, -Q::from_integer(e.into()));
        }
        Ok(out)
    }

    /// x·log x, with 0·log 0 = 0.
    pub fn xlogx(x: &Q) -> Result<LogQ> {
        if x.is_zero() {
            return Ok(LogQ::zero());
        }
        Ok(LogQ::log(x)? * x)
    }

    fn add_log(&mut self, base: BigInt, c: Q) {
        let e = self.logs.entry(base.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.logs.remove(&base);
        }
    }

    pub fn rational_part(&self) -> &Q {
        &self.rational
    }

    /// Coefficients of log p, by increasing base.
    pub fn log_terms(&self) -> impl Iterator<Item = (&BigInt, &Q)> {
        self.logs.iter()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.logs.is_empty().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        self.logs.iter().fold(to_f64(&self.rational), |s, (p, c)| {
            let lp = p.to_f64().map(f64::ln).unwrap_or_else(|| big_ln(p));
            s + to_f64(c) * lp
        })
    }
}

fn big_ln(p: &BigInt) -> f64 {
    let bits = p.bits();
    let shift = bits.saturating_sub(60);
    let top: BigInt = p >> shift;
    top.to_f64().unwrap_or(f64::MAX).ln() + shift as f64 * std::f64::consts::LN_2
}

impl fmt::Display for LogQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.rational.is_zero() || self.logs.is_empty() {
            parts.push((self.rational.is_negative(), fmt_q(&self.rational.abs())));
        }
        for (p, c) in &self.logs {
            let a = c.abs();
            let term = if a.is_one() { format!("log({p})") } else { format!("{}*log({p})", fmt_q(&a)) };
            parts.push((c.is_negative(), term));
        }
        for (i, (neg, s)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{s}")?,
                (0, false) => write!(f, "{s}")?,
                (_, true) => write!(f, " - {s}")?,
                (_, false) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&LogQ> for LogQ {
    fn add_assign(&mut self, o: &LogQ) {
        self.rational += &o.rational;
        for (p, c) in &o.logs {
            self.add_log(p.clone(), c.clone());
        }
    }
}

impl Add for LogQ {
    type Output = LogQ;
    fn add(mut self, o: LogQ) -> LogQ {
        self += &o;
        self
    }
}

impl Neg for LogQ {
    type Output = LogQ;
    fn neg(self) -> LogQ {
        LogQ { rational: -self.rational, logs: self.logs.into_iter().map(|(p, c)| (p, -c)).collect() }
    }
}

impl Sub for LogQ {
    type Output = LogQ;
    fn sub(self, o: LogQ) -> LogQ {
        self + (-o)
    }
}

impl Mul<&Q> for LogQ {
    type Output = LogQ;
    fn mul(self, k: &Q) -> LogQ {
        if k.is_zero() {
            return LogQ::zero();
        }
        LogQ { rational: self.rational * k, logs: self.logs.into_iter().map(|(p, c)| (p, c * k)).collect() }
    }
}

impl From<Q> for LogQ {
    fn from(q: Q) -> LogQ {
        LogQ::from_q(q)
    }
}
