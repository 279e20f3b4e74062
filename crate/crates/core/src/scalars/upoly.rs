//! Dense univariate polynomials in `v` over a cyclotomic field.

use super::cyclotomic::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub(crate) m: u32,
    /// Coefficient of `v^i` at index `i`; no trailing zeros.
    pub(crate) c: Vec<Cyclotomic>,
}

impl UPoly {
    pub fn zero(m: u32) -> Self {
        Self { m, c: vec![] }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        let m = c.conductor();
        let mut p = Self { m, c: vec![c] };
        p.trim();
        p
    }

    pub fn one(m: u32) -> Self {
        Self::constant(Cyclotomic::one(m))
    }

    pub fn monomial(c: Cyclotomic, deg: usize) -> Self {
        let m = c.conductor();
        let mut coeffs = vec![Cyclotomic::zero(m); deg + 1];
        coeffs[deg] = c;
        let mut p = Self { m, c: coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> &Cyclotomic {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn lift(&self, big: u32) -> Self {
        if big == self.m {
            return self.clone();
        }
        Self {
            m: big,
            c: self.c.iter().map(|x| x.lift(big)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = Cyclotomic::zero(self.m);
        let mut c: Vec<Cyclotomic> = (0..n)
            .map(|i| {
                let a = self.c.get(i).unwrap_or(&z);
                let b = o.c.get(i).unwrap_or(&z);
                a + b
            })
            .collect();
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self { m: self.m, c }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.m);
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        let mut c = vec![Cyclotomic::zero(self.m); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = &c[i + j] + &(x * y);
                }
            }
        }
        let mut p = Self { m: self.m, c };
        p.trim();
        p
    }

    pub fn scale(&self, k: &Cyclotomic) -> Self {
        let mut p = Self {
            m: self.m,
            c: self.c.iter().map(|x| x * k).collect(),
        };
        p.trim();
        p
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![Cyclotomic::zero(self.m); k];
        c.extend(self.c.iter().cloned());
        Self { m: self.m, c }
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let mut r = self.clone();
        if r.c.len() <= dd {
            return (Self::zero(self.m), r);
        }
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut q = vec![Cyclotomic::zero(self.m); r.c.len() - dd];
        for k in (dd..r.c.len()).rev() {
            if r.c[k].is_zero() {
                continue;
            }
            let f = &r.c[k] * &inv;
            for (j, dj) in d.c.iter().enumerate() {
                r.c[k - dd + j] = &r.c[k - dd + j] - &(&f * dj);
            }
            q[k - dd] = f;
        }
        r.trim();
        let mut q = Self { m: self.m, c: q };
        q.trim();
        (q, r)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one(self.m);
            }
            let (_, r) = a.divrem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Lowest power of `v` with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn unshift(&self, k: usize) -> Self {
        Self {
            m: self.m,
            c: self.c[k..].to_vec(),
        }
    }

    pub fn eval(&self, v: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for x in self.c.iter().rev() {
            acc = acc * v + x.to_complex();
        }
        acc
    }
}
