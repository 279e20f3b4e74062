//! The coefficient algebra of scattering-matrix entries.
//!
//! A [`Scalar`] is a fraction `N/D` where `N` is a polynomial in `v = q^{-1/2}`
//! and the Gauss symbols `G_1, …, G_{n-1}` over `Q(ζ_m)`, and `D` is a monic
//! polynomial in `v` alone. Products of Gauss symbols are rewritten with
//! `G_k·G_{n-k} = ε^k·v²`, so monomials never contain both `G_k` and `G_{n-k}`,
//! and `G_{n/2}` appears at most to the first power.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::cyclotomic::Cyclotomic;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exponents of Gauss symbols: sorted `(k, e)` pairs with `e > 0`.
pub type GMono = Vec<(u32, u32)>;

#[derive(Clone, Debug)]
pub struct Scalar {
    m: u32,
    n: u32,
    eps: i8,
    num: BTreeMap<GMono, UPoly>,
    den: UPoly,
}

fn gauss_mul(a: &GMono, b: &GMono, n: u32, eps: i8) -> (GMono, bool, usize) {
    let mut e: BTreeMap<u32, u32> = BTreeMap::new();
    for &(k, x) in a.iter().chain(b) {
        *e.entry(k).or_default() += x;
    }
    let mut neg = false;
    let mut vshift = 0usize;
    let keys: Vec<u32> = e.keys().copied().collect();
    for k in keys {
        let kk = n - k;
        if k < kk {
            let x = e.get(&k).copied().unwrap_or(0);
            let y = e.get(&kk).copied().unwrap_or(0);
            let t = x.min(y);
            if t > 0 {
                e.insert(k, x - t);
                e.insert(kk, y - t);
                vshift += 2 * t as usize;
                if eps < 0 && (k * t) % 2 == 1 {
                    neg = !neg;
                }
            }
        } else if k == kk {
            let x = e[&k];
            let t = x / 2;
            if t > 0 {
                e.insert(k, x % 2);
                vshift += 2 * t as usize;
                if eps < 0 && (k * t) % 2 == 1 {
                    neg = !neg;
                }
            }
        }
    }
    let mono = e.into_iter().filter(|&(_, x)| x > 0).collect();
    (mono, neg, vshift)
}

impl Scalar {
    fn raw(m: u32, n: u32, eps: i8, num: BTreeMap<GMono, UPoly>, den: UPoly) -> Self {
        Self { m, n, eps, num, den }.normalize()
    }

    pub fn zero() -> Self {
        Self {
            m: 1,
            n: 0,
            eps: 1,
            num: BTreeMap::new(),
            den: UPoly::one(1),
        }
    }

    pub fn one() -> Self {
        Self::from_cyclotomic(Cyclotomic::one(1))
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_int(1, k))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_cyclotomic(Cyclotomic::from_rational(1, r))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        let m = c.conductor();
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(vec![], UPoly::constant(c));
        }
        Self {
            m,
            n: 0,
            eps: 1,
            num,
            den: UPoly::one(m),
        }
    }

    /// `ζ_m^k`.
    pub fn zeta(m: u32, k: i64) -> Self {
        Self::from_cyclotomic(Cyclotomic::zeta_pow(m, k))
    }

    /// `v^k` for any integer `k`; negative powers go to the denominator.
    pub fn v_pow(k: i64) -> Self {
        let mono = UPoly::monomial(Cyclotomic::one(1), k.unsigned_abs() as usize);
        let mut num = BTreeMap::new();
        if k >= 0 {
            num.insert(vec![], mono);
            Self {
                m: 1,
                n: 0,
                eps: 1,
                num,
                den: UPoly::one(1),
            }
        } else {
            num.insert(vec![], UPoly::one(1));
            Self {
                m: 1,
                n: 0,
                eps: 1,
                num,
                den: mono,
            }
        }
    }

    /// `q^{-1} = v²`.
    pub fn q_inv() -> Self {
        Self::v_pow(2)
    }

    /// The Gauss symbol `g_{ψ^{-1}}(k)` for an `n`-fold cover: `G_{k mod n}`,
    /// or `-v²` when `n | k`.
    pub fn gauss(n: u32, eps: i8, k: i64) -> Self {
        assert!(n >= 1);
        assert!(eps == 1 || (eps == -1 && n.is_multiple_of(2)), "eps = -1 needs even n");
        let r = k.rem_euclid(n as i64) as u32;
        let mut s = if r == 0 {
            -&Self::q_inv()
        } else {
            let mut num = BTreeMap::new();
            num.insert(vec![(r, 1)], UPoly::one(1));
            Self {
                m: 1,
                n,
                eps,
                num,
                den: UPoly::one(1),
            }
        };
        s.n = n;
        s.eps = eps;
        s
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Degree `n` of the Gauss context, or 0 if none was attached.
    pub fn gauss_degree(&self) -> u32 {
        self.n
    }

    pub fn epsilon(&self) -> i8 {
        self.eps
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.get(&vec![]).is_some_and(|p| p.is_one())
    }

    pub fn is_gauss_free(&self) -> bool {
        self.num.keys().all(|k| k.is_empty())
    }

    /// The value as an element of `Q(ζ_m)`, if it is constant and Gauss-free.
    pub fn as_cyclotomic(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return Some(Cyclotomic::zero(self.m));
        }
        if !self.is_gauss_free() || !self.den.is_one() {
            return None;
        }
        let p = &self.num[&vec![]];
        if p.degree() == Some(0) {
            Some(p.c[0].clone())
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_cyclotomic().and_then(|c| c.as_rational())
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    fn ctx(&self, o: &Self) -> (u32, u32, i8) {
        let m = self.m.lcm(&o.m);
        let (n, eps) = match (self.n, o.n) {
            (0, _) => (o.n, o.eps),
            (_, 0) => (self.n, self.eps),
            (a, b) => {
                assert!(a == b && self.eps == o.eps, "mixed Gauss contexts");
                (a, self.eps)
            }
        };
        (m, n, eps)
    }

    fn lifted(&self, m: u32) -> (BTreeMap<GMono, UPoly>, UPoly) {
        if m == self.m {
            return (self.num.clone(), self.den.clone());
        }
        (
            self.num.iter().map(|(k, p)| (k.clone(), p.lift(m))).collect(),
            self.den.lift(m),
        )
    }

    fn normalize(mut self) -> Self {
        self.num.retain(|_, p| !p.is_zero());
        if self.num.is_empty() {
            self.den = UPoly::one(self.m);
            return self;
        }
        if self.den.degree().unwrap_or(0) > 0 {
            let mut g = self.den.clone();
            for p in self.num.values() {
                g = g.gcd(p);
                if g.degree() == Some(0) {
                    break;
                }
            }
            if g.degree().unwrap_or(0) > 0 {
                self.den = self.den.divrem(&g).0;
                for p in self.num.values_mut() {
                    *p = p.divrem(&g).0;
                }
            }
        }
        if !self.den.lead().is_one() {
            let inv = self.den.lead().inv().expect("nonzero denominator");
            self.den = self.den.scale(&inv);
            for p in self.num.values_mut() {
                *p = p.scale(&inv);
            }
        }
        self
    }

    fn add_impl(&self, o: &Self) -> Self {
        let (m, n, eps) = self.ctx(o);
        let (an, ad) = self.lifted(m);
        let (bn, bd) = o.lifted(m);
        let (fa, fb, den) = if ad == bd {
            (None, None, ad)
        } else {
            let g = ad.gcd(&bd);
            let fa = bd.divrem(&g).0;
            let fb = ad.divrem(&g).0;
            let den = ad.mul(&fa);
            (Some(fa), Some(fb), den)
        };
        let mut num: BTreeMap<GMono, UPoly> = BTreeMap::new();
        for (k, p) in an {
            let p = fa.as_ref().map_or(p.clone(), |f| p.mul(f));
            num.insert(k, p);
        }
        for (k, p) in bn {
            let p = fb.as_ref().map_or(p.clone(), |f| p.mul(f));
            let e = num.entry(k).or_insert_with(|| UPoly::zero(m));
            *e = e.add(&p);
        }
        Self::raw(m, n, eps, num, den)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let (m, n, eps) = self.ctx(o);
        if self.is_zero() || o.is_zero() {
            let mut z = Self::zero();
            z.n = n;
            z.eps = eps;
            return z;
        }
        let (an, ad) = self.lifted(m);
        let (bn, bd) = o.lifted(m);
        let mut num: BTreeMap<GMono, UPoly> = BTreeMap::new();
        for (ka, pa) in &an {
            for (kb, pb) in &bn {
                let (k, neg, vs) = gauss_mul(ka, kb, n, eps);
                let mut p = pa.mul(pb).shift(vs);
                if neg {
                    p = p.neg();
                }
                let e = num.entry(k).or_insert_with(|| UPoly::zero(m));
                *e = e.add(&p);
            }
        }
        Self::raw(m, n, eps, num, ad.mul(&bd))
    }

    /// Division; the divisor must be nonzero and free of Gauss symbols.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !o.is_gauss_free() {
            return Err(Error::GaussDenominator);
        }
        let (m, n, eps) = self.ctx(o);
        let (an, ad) = self.lifted(m);
        let (bn, bd) = o.lifted(m);
        let bp = &bn[&vec![]];
        let num = an.into_iter().map(|(k, p)| (k, p.mul(&bd))).collect();
        Ok(Self::raw(m, n, eps, num, ad.mul(bp)))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Complex value at an admissible instantiation.
    pub fn specialize(&self, inst: &Instantiation) -> Result<Complex64> {
        if self.n != 0 && self.n != inst.n {
            return Err(Error::BadPhases(format!(
                "scalar has degree {} but instantiation has degree {}",
                self.n, inst.n
            )));
        }
        let v = Complex64::new(inst.q0.powf(-0.5), 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, p) in &self.num {
            let mut t = p.eval(v);
            for &(k, e) in g {
                t *= inst.gauss[k as usize].powu(e);
            }
            acc += t;
        }
        Ok(acc / self.den.eval(v))
    }

    fn render_poly_terms(&self, terms: &[(GMono, &UPoly)], out: &mut String) {
        let mut first = true;
        for (g, p) in terms {
            for (deg, c) in p.c.iter().enumerate() {
                for (j, r) in c.coeffs().iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let mut factors = Vec::new();
                    if j > 0 {
                        factors.push(format!("zeta({})^{}", c.conductor(), j));
                    }
                    if deg > 0 {
                        factors.push(format!("v^{deg}"));
                    }
                    for &(k, e) in g {
                        factors.push(format!("G[{k}]^{e}"));
                    }
                    let mag = r.abs();
                    if first {
                        if r.is_negative() {
                            out.push('-');
                        }
                    } else if r.is_negative() {
                        out.push_str(" - ");
                    } else {
                        out.push_str(" + ");
                    }
                    first = false;
                    if factors.is_empty() {
                        out.push_str(&mag.to_string());
                    } else {
                        if !mag.is_one() {
                            out.push_str(&mag.to_string());
                            out.push('*');
                        }
                        out.push_str(&factors.join("*"));
                    }
                }
            }
        }
        if first {
            out.push('0');
        }
    }

    /// Stable textual form, e.g. `(1 + v^2 + v^4) / (3)` or `-zeta(3)^1*G[1]^1`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let terms: Vec<(GMono, &UPoly)> = self.num.iter().map(|(k, p)| (k.clone(), p)).collect();
        if self.den.is_one() {
            self.render_poly_terms(&terms, &mut s);
        } else {
            s.push('(');
            self.render_poly_terms(&terms, &mut s);
            s.push_str(") / (");
            self.render_poly_terms(&[(vec![], &self.den)], &mut s);
            s.push(')');
        }
        s
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        let m = self.m.lcm(&o.m);
        self.lifted(m) == o.lifted(m)
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() && (o.n == 0 || self.n != 0) {
            return self.clone();
        }
        if self.is_zero() && (self.n == 0 || o.n != 0) {
            return o.clone();
        }
        self.add_impl(o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.mul_impl(o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            m: self.m,
            n: self.n,
            eps: self.eps,
            num: self.num.iter().map(|(k, p)| (k.clone(), p.neg())).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

/// Numeric values for `v` and the Gauss symbols.
#[derive(Clone, Debug)]
pub struct Instantiation {
    pub q0: f64,
    pub n: u32,
    pub eps: i8,
    /// `gauss[k]` is the value of `G_k`; `gauss[0] = -1/q0`.
    pub gauss: Vec<Complex64>,
}

impl Instantiation {
    /// Builds an instantiation from unit phases: `G_k = q0^{-1/2}·phase_k`.
    pub fn from_phases(n: u32, eps: i8, q0: f64, phases: &BTreeMap<u32, Complex64>) -> Result<Self> {
        if q0 <= 1.0 {
            return Err(Error::BadPhases(format!("q0 = {q0} must exceed 1")));
        }
        let s = q0.powf(-0.5);
        let mut gauss = vec![Complex64::new(-1.0 / q0, 0.0); n.max(1) as usize];
        for k in 1..n {
            let ph = phases
                .get(&k)
                .ok_or_else(|| Error::BadPhases(format!("missing phase for G[{k}]")))?;
            gauss[k as usize] = ph * s;
        }
        let inst = Self { q0, n, eps, gauss };
        inst.validate()?;
        Ok(inst)
    }

    /// A random admissible instantiation.
    pub fn random<R: Rng>(n: u32, eps: i8, q0: f64, rng: &mut R) -> Self {
        let s = q0.powf(-0.5);
        let mut gauss = vec![Complex64::new(-1.0 / q0, 0.0); n.max(1) as usize];
        for k in 1..n {
            let kk = n - k;
            let sign = if eps < 0 && k % 2 == 1 { -1.0 } else { 1.0 };
            if k < kk {
                let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let g = Complex64::from_polar(s, th);
                gauss[k as usize] = g;
                gauss[kk as usize] = Complex64::new(sign / q0, 0.0) / g;
            } else if k == kk {
                let root = if sign > 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 1.0)
                };
                let flip = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                gauss[k as usize] = root * s * flip;
            }
        }
        Self { q0, n, eps, gauss }
    }

    pub fn validate(&self) -> Result<()> {
        let s = self.q0.powf(-0.5);
        for k in 1..self.n {
            let g = self.gauss[k as usize];
            if (g.norm() - s).abs() > 1e-12 {
                return Err(Error::BadPhases(format!("|G[{k}]| != q0^(-1/2)")));
            }
            let kk = (self.n - k) as usize;
            let want = if self.eps < 0 && k % 2 == 1 { -1.0 } else { 1.0 } / self.q0;
            if (g * self.gauss[kk] - Complex64::new(want, 0.0)).norm() > 1e-12 {
                return Err(Error::BadPhases(format!("G[{k}]*G[{kk}] != eps^k/q0")));
            }
        }
        Ok(())
    }
}

/// `1 - c` for a cyclotomic constant `c`, as a scalar.
pub fn one_minus(c: &Cyclotomic) -> Scalar {
    &Scalar::one() - &Scalar::from_cyclotomic(c.clone())
}

/// `1 - v²·c`.
pub fn one_minus_q_inv(c: &Cyclotomic) -> Scalar {
    &Scalar::one() - &(&Scalar::q_inv() * &Scalar::from_cyclotomic(c.clone()))
}

/// Rational number `a/b` as a scalar.
pub fn ratio(a: i64, b: i64) -> Scalar {
    Scalar::from_rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn gauss_product_relation() {
        for n in 2..8u32 {
            for k in 1..n {
                let p = &Scalar::gauss(n, 1, k as i64) * &Scalar::gauss(n, 1, (n - k) as i64);
                assert_eq!(p, Scalar::q_inv());
            }
        }
        let p = &Scalar::gauss(4, -1, 1) * &Scalar::gauss(4, -1, 3);
        assert_eq!(p, -&Scalar::q_inv());
        let p = &Scalar::gauss(4, -1, 2) * &Scalar::gauss(4, -1, 2);
        assert_eq!(p, Scalar::q_inv());
        assert_eq!(Scalar::gauss(3, 1, 6), -&Scalar::q_inv());
    }

    #[test]
    fn fraction_cancels() {
        let a = one_minus_q_inv(&Cyclotomic::one(1));
        assert!(a.div(&a).unwrap().is_one());
        let z = Cyclotomic::zeta_pow(3, 1);
        let num = &one_minus_q_inv(&z) * &one_minus_q_inv(&(&z * &z));
        let expect = &(&Scalar::one() + &Scalar::q_inv()) + &Scalar::v_pow(4);
        assert_eq!(num, expect);
    }

    #[test]
    fn negative_v_powers() {
        let a = &Scalar::v_pow(-3) * &Scalar::v_pow(5);
        assert_eq!(a, Scalar::v_pow(2));
        assert_eq!(Scalar::v_pow(-2).render(), "(1) / (v^2)");
    }

    #[test]
    fn render_is_stable() {
        let s = &ratio(1, 3) * &(&(&Scalar::one() + &Scalar::q_inv()) + &Scalar::v_pow(4));
        assert_eq!(s.render(), "1/3 + 1/3*v^2 + 1/3*v^4");
        let g = &Scalar::zeta(3, 1) * &Scalar::gauss(3, 1, 1);
        assert_eq!(g.render(), "zeta(3)^1*G[1]^1");
    }

    #[test]
    fn specialize_matches() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let inst = Instantiation::random(5, 1, 4.0, &mut rng);
        inst.validate().unwrap();
        let s = (&Scalar::one() + &Scalar::q_inv()) + Scalar::v_pow(4);
        let s = s.div(&Scalar::from_int(3)).unwrap();
        let z = s.specialize(&inst).unwrap();
        assert!((z.re - 0.4375).abs() < 1e-12 && z.im.abs() < 1e-12);
        let g = &Scalar::gauss(5, 1, 2) * &Scalar::gauss(5, 1, 3);
        assert!((g.specialize(&inst).unwrap().re - 0.25).abs() < 1e-12);
    }
}
