//! Exact arithmetic in the cyclotomic field `Q(ζ_m)`.
//!
//! Elements are stored as rational coefficient vectors of length `φ(m)`,
//! reduced modulo the `m`-th cyclotomic polynomial.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type QPoly = Vec<BigRational>;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (low to high) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let q = cyclotomic_poly(d);
            p = exact_div_monic(&p, &q);
        }
    }
    let p = Arc::new(p);
    phi_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i64; da - db + 1];
    for k in (db..=da).rev() {
        let c = r[k];
        q[k - db] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k - db + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(m: u32) -> usize {
    cyclotomic_poly(m).len() - 1
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn reduce_mod(m: u32, mut p: QPoly) -> QPoly {
    let phi = cyclotomic_poly(m);
    let d = phi.len() - 1;
    if p.len() > d {
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = p[k].clone();
            for (j, &pj) in phi.iter().enumerate() {
                if pj != 0 {
                    p[k - d + j] -= &c * BigInt::from(pj);
                }
            }
        }
    }
    p.resize(d, BigRational::zero());
    p
}

fn qpoly_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    qpoly_trim(&mut r);
    let mut b = b.clone();
    qpoly_trim(&mut b);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] / &lead;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k - db + j] -= t;
        }
        q[k - db] = c;
    }
    qpoly_trim(&mut r);
    (q, r)
}

fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn qpoly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    let mut out: QPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    qpoly_trim(&mut out);
    out
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    m: u32,
    c: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u32) -> Self {
        Self {
            m,
            c: vec![BigRational::zero(); euler_phi(m)],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_int(m: u32, k: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.c[0] = r;
        z
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self {
            m,
            c: reduce_mod(m, p),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Re-express in `Q(ζ_big)`; requires `m | big`.
    pub fn lift(&self, big: u32) -> Self {
        if big == self.m {
            return self.clone();
        }
        assert!(big.is_multiple_of(self.m), "conductor {} does not divide {}", self.m, big);
        let step = (big / self.m) as usize;
        let mut p = vec![BigRational::zero(); step * self.c.len().max(1)];
        for (j, x) in self.c.iter().enumerate() {
            p[j * step] = x.clone();
        }
        Self {
            m: big,
            c: reduce_mod(big, p),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            (self.clone(), other.clone())
        } else {
            let l = lcm(self.m, other.m);
            (self.lift(l), other.lift(l))
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            m: self.m,
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.m, r.recip()));
        }
        let phi: QPoly = cyclotomic_poly(self.m)
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        let mut a = self.c.clone();
        qpoly_trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let g = r0[0].clone();
        let s: QPoly = s0.iter().map(|x| x / &g).collect();
        Some(Self {
            m: self.m,
            c: reduce_mod(self.m, s),
        })
    }

    /// Image under `ζ ↦ ζ^{-1}` (complex conjugation).
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.m);
        for (j, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                out = &out + &Self::zeta_pow(self.m, -(j as i64)).scale(x);
            }
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (j, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                let ang = 2.0 * PI * j as f64 / self.m as f64;
                z += Complex64::from_polar(x.to_f64().unwrap_or(f64::NAN), ang);
            }
        }
        z
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        Cyclotomic {
            m: a.m,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        Cyclotomic {
            m: a.m,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        if let Some(r) = a.as_rational() {
            return b.scale(&r);
        }
        if let Some(r) = b.as_rational() {
            return a.scale(&r);
        }
        Cyclotomic {
            m: a.m,
            c: reduce_mod(a.m, qpoly_mul(&a.c, &b.c)),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

/// Writes `c0 + c1*zeta(m)^1 + ...`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mag = x.abs();
            if first {
                if x.is_negative() {
                    write!(f, "-")?;
                }
            } else if x.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "zeta({})^{}", self.m, j)?;
            } else {
                write!(f, "{mag}*zeta({})^{}", self.m, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
