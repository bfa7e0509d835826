use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;

/// Dense univariate polynomial, low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    f: Field,
    c: Vec<Elem>,
}

impl UniPoly {
    pub fn new(f: Field, mut c: Vec<Elem>) -> UniPoly {
        while c.last().is_some_and(|e| e.is_zero()) {
            c.pop();
        }
        UniPoly { f, c }
    }

    pub fn from_u64s(f: Field, c: &[u64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&v| Elem::from_u64(f, v)).collect())
    }

    pub fn zero(f: Field) -> UniPoly {
        UniPoly { f, c: vec![] }
    }

    pub fn one(f: Field) -> UniPoly {
        UniPoly::constant(Elem::one(f))
    }

    pub fn constant(e: Elem) -> UniPoly {
        UniPoly::new(e.field(), vec![e])
    }

    /// The polynomial `x`.
    pub fn x(f: Field) -> UniPoly {
        UniPoly::monomial(f, Elem::one(f), 1)
    }

    pub fn monomial(f: Field, c: Elem, k: usize) -> UniPoly {
        let mut v = vec![Elem::zero(f); k];
        v.push(c);
        UniPoly::new(f, v)
    }

    /// `x - a`.
    pub fn linear(a: &Elem) -> UniPoly {
        let f = a.field();
        UniPoly::new(f, vec![a.neg(), Elem::one(f)])
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| Elem::zero(self.f))
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.c.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|e| e.is_one())
    }

    pub fn monic(&self) -> UniPoly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, s: &Elem) -> UniPoly {
        UniPoly::new(self.f, self.c.iter().map(|e| e * s).collect())
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|e| !e.is_zero())
    }

    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem::zero(self.f); k];
        v.extend(self.c.iter().cloned());
        UniPoly { f: self.f, c: v }
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = Elem::zero(self.f);
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Elem::from_u64(self.f, i as u64))
            .collect();
        UniPoly::new(self.f, v)
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(self.f), self.clone()));
        }
        let inv = d.c[dd].inv()?;
        let mut q = vec![Elem::zero(self.f); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for j in 0..=dd {
                r[i - dd + j] = &r[i - dd + j] - &(&c * &d.c[j]);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(self.f, q), UniPoly::new(self.f, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let f = self.f;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut base = self.clone();
        let mut r = UniPoly::one(self.f);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &UniPoly) -> UniPoly {
        let mut r = UniPoly::one(self.f).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = (&r * &r).rem(m);
            if e.bit(i) {
                r = (&r * &base).rem(m);
            }
        }
        r
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(self.f);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Coefficientwise image under a field embedding.
    pub fn map(&self, emb: &Embedding) -> UniPoly {
        UniPoly::new(emb.target(), self.c.iter().map(|e| emb.apply(e)).collect())
    }

    /// Coefficientwise map by an arbitrary function into field `f`.
    pub fn map_with(&self, f: Field, g: impl Fn(&Elem) -> Elem) -> UniPoly {
        UniPoly::new(f, self.c.iter().map(g).collect())
    }

    pub fn fmt_var(&self, var: &str) -> String {
        crate::polyring::fmt_terms(
            self.c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c.clone(), monomial_string(var, i))),
        )
    }
}

fn monomial_string(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order by degree, then coefficients from the top down.
impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> std::ops::Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        UniPoly::new(self.f, v)
    }
}

impl<'a> std::ops::Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        UniPoly::new(self.f, v)
    }
}

impl<'a> std::ops::Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.f);
        }
        let mut v = vec![Elem::zero(self.f); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.f, v)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.f, self.c.iter().map(|e| e.neg()).collect())
    }
}
