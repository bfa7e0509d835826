use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::linalg::Ring;
use crate::polyring::UniPoly;
use std::fmt;

/// Power series truncated at `x^prec`; `coeffs.len() == prec` always.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    f: Field,
    c: Vec<Elem>,
}

impl TruncSeries {
    pub fn new(f: Field, mut c: Vec<Elem>, prec: usize) -> TruncSeries {
        c.resize(prec, Elem::zero(f));
        TruncSeries { f, c }
    }

    pub fn zero(f: Field, prec: usize) -> TruncSeries {
        TruncSeries { f, c: vec![Elem::zero(f); prec] }
    }

    pub fn one(f: Field, prec: usize) -> TruncSeries {
        TruncSeries::constant(Elem::one(f), prec)
    }

    pub fn constant(e: Elem, prec: usize) -> TruncSeries {
        let f = e.field();
        TruncSeries::new(f, vec![e], prec)
    }

    /// The series `x` (or `tau`).
    pub fn var(f: Field, prec: usize) -> TruncSeries {
        TruncSeries::new(f, vec![Elem::zero(f), Elem::one(f)], prec)
    }

    pub fn from_poly(p: &UniPoly, prec: usize) -> TruncSeries {
        TruncSeries::new(p.field(), p.coeffs().iter().take(prec).cloned().collect(), prec)
    }

    pub fn from_u64s(f: Field, c: &[u64], prec: usize) -> TruncSeries {
        TruncSeries::new(f, c.iter().map(|&v| Elem::from_u64(f, v)).collect(), prec)
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.c[i]
    }

    /// Index of the first nonzero coefficient, `None` if zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|e| !e.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.f, self.c.clone())
    }

    pub fn truncate(&self, prec: usize) -> TruncSeries {
        assert!(prec <= self.prec(), "cannot raise precision by truncation");
        TruncSeries { f: self.f, c: self.c[..prec].to_vec() }
    }

    pub fn scale(&self, s: &Elem) -> TruncSeries {
        TruncSeries { f: self.f, c: self.c.iter().map(|e| e * s).collect() }
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries { f: self.f, c: self.c.iter().map(|e| e.neg()).collect() }
    }

    /// Multiplication by `x^k`; precision grows by `k`.
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        let mut c = vec![Elem::zero(self.f); k];
        c.extend(self.c.iter().cloned());
        TruncSeries { f: self.f, c }
    }

    /// Exact division by `x^k`; precision drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<TruncSeries> {
        if k > self.prec() {
            return Err(Error::PrecisionUnderflow("shift below precision".into()));
        }
        if self.c[..k].iter().any(|e| !e.is_zero()) {
            return Err(Error::PreconditionViolated("series not divisible by x^k".into()));
        }
        Ok(TruncSeries { f: self.f, c: self.c[k..].to_vec() })
    }

    pub fn derivative(&self) -> TruncSeries {
        let n = self.prec().saturating_sub(1);
        let c = (0..n).map(|i| &self.c[i + 1] * &Elem::from_u64(self.f, (i + 1) as u64)).collect();
        TruncSeries { f: self.f, c }
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        TruncSeries { f: self.f, c: (0..n).map(|i| &self.c[i] + &o.c[i]).collect() }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        TruncSeries { f: self.f, c: (0..n).map(|i| &self.c[i] - &o.c[i]).collect() }
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.prec().min(o.prec());
        let mut c = vec![Elem::zero(self.f); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        TruncSeries { f: self.f, c }
    }

    pub fn pow(&self, mut e: u64) -> TruncSeries {
        let mut base = self.clone();
        let mut r = TruncSeries::one(self.f, self.prec());
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse of a unit.
    pub fn invert_unit(&self) -> Result<TruncSeries> {
        let n = self.prec();
        if n == 0 || self.c[0].is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = self.c[0].inv()?;
        let mut r = vec![Elem::zero(self.f); n];
        r[0] = inv0.clone();
        for k in 1..n {
            let mut s = Elem::zero(self.f);
            for j in 1..=k {
                s = &s + &(&self.c[j] * &r[k - j]);
            }
            r[k] = (&s * &inv0).neg();
        }
        Ok(TruncSeries { f: self.f, c: r })
    }

    /// Quotient by a series of valuation `v`; precision drops by `v`.
    pub fn div(&self, o: &TruncSeries) -> Result<TruncSeries> {
        let v = o.valuation().ok_or(Error::DivisionByZero)?;
        let num = self.shift_down(v)?;
        let den = o.shift_down(v)?;
        Ok(num.mul(&den.invert_unit()?))
    }

    /// `self(b(x))` with `b(0) = 0`.
    pub fn compose(&self, b: &TruncSeries) -> Result<TruncSeries> {
        if b.prec() > 0 && !b.c[0].is_zero() {
            return Err(Error::PreconditionViolated("inner series must have zero constant term".into()));
        }
        let n = self.prec().min(b.prec());
        let b = b.truncate(n);
        let mut acc = TruncSeries::zero(self.f, n);
        for c in self.c[..n].iter().rev() {
            acc = acc.mul(&b);
            acc.c[0] = &acc.c[0] + c;
        }
        Ok(acc)
    }

    /// Compositional inverse of a series `a1 x + a2 x^2 + ...` with `a1 != 0`.
    pub fn reversion(&self) -> Result<TruncSeries> {
        let n = self.prec();
        if n < 2 || !self.c[0].is_zero() || self.c[1].is_zero() {
            return Err(Error::PreconditionViolated("reversion needs valuation exactly 1".into()));
        }
        // Newton iteration r <- r - (self(r) - x) / self'(r), doubling correct terms
        let inv1 = self.c[1].inv()?;
        let x = TruncSeries::var(self.f, n);
        let ds = self.derivative();
        let mut r = x.scale(&inv1);
        for _ in 0..n + 2 {
            let err = self.compose(&r)?.sub(&x);
            if err.is_zero() {
                return Ok(r);
            }
            let d = TruncSeries::new(self.f, ds.c.clone(), n).compose(&r)?;
            r = r.sub(&err.mul(&d.invert_unit()?));
        }
        Err(Error::Internal("series reversion did not converge".into()))
    }

    /// The `n`-th root of a unit with prescribed constant term `r0` (`r0^n = self(0)`), `p` not dividing `n`.
    pub fn nth_root(&self, n: u64, r0: &Elem) -> Result<TruncSeries> {
        let p = self.f.p();
        if n % p == 0 {
            return Err(Error::PreconditionViolated("root order divisible by the characteristic".into()));
        }
        if r0.pow(n) != self.c[0] {
            return Err(Error::PreconditionViolated("constant term is not an n-th power".into()));
        }
        let prec = self.prec();
        // Newton iteration r <- r - (r^n - self) / (n r^(n-1))
        let nn = Elem::from_u64(self.f, n % p);
        let mut r = TruncSeries::constant(r0.clone(), prec);
        for _ in 0..prec + 2 {
            let err = r.pow(n).sub(self);
            if err.is_zero() {
                return Ok(r);
            }
            let d = r.pow(n - 1).scale(&nn);
            r = r.sub(&err.mul(&d.invert_unit()?));
        }
        Err(Error::Internal("n-th root did not converge".into()))
    }

    pub fn map(&self, emb: &Embedding) -> TruncSeries {
        TruncSeries { f: emb.target(), c: self.c.iter().map(|e| emb.apply(e)).collect() }
    }

    pub fn map_with(&self, f: Field, g: impl Fn(&Elem) -> Elem) -> TruncSeries {
        TruncSeries { f, c: self.c.iter().map(g).collect() }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let body = self.to_poly().fmt_var(var);
        format!("{body} + O({var}^{})", self.prec())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.f, self.prec())
    }
    fn one_like(&self) -> Self {
        TruncSeries::one(self.f, self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        TruncSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TruncSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TruncSeries::mul(self, o)
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
}

impl Ring for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.field())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_inverse_gf2() {
        let f = Field::prime(2).unwrap();
        let s = TruncSeries::from_u64s(f, &[1, 1], 5);
        assert_eq!(s.invert_unit().unwrap(), TruncSeries::from_u64s(f, &[1, 1, 1, 1, 1], 5));
        assert_eq!(TruncSeries::var(f, 3).invert_unit(), Err(Error::NotAUnit));
    }

    #[test]
    fn truncation_drops_square() {
        let f = Field::prime(7).unwrap();
        let a = TruncSeries::from_u64s(f, &[1, 1], 2);
        let b = TruncSeries::from_u64s(f, &[1, 6], 2);
        let c = a.mul(&b);
        assert_eq!(c, TruncSeries::one(f, 2));
        assert_eq!(c.prec(), 2);
    }

    #[test]
    fn precision_is_minimum() {
        let f = Field::prime(3).unwrap();
        let a = TruncSeries::one(f, 5);
        let b = TruncSeries::one(f, 3);
        assert_eq!(a.add(&b).prec(), 3);
        assert_eq!(a.mul(&b).prec(), 3);
    }

    #[test]
    fn square_root_of_one_plus_x_gf5() {
        // sqrt(1+x) = 1 + x/2 - x^2/8 + x^3/16 ... over GF(5): 1/2 = 3, -1/8 = 3, 1/16 = 1
        let f = Field::prime(5).unwrap();
        let s = TruncSeries::from_u64s(f, &[1, 1], 4);
        let r = s.nth_root(2, &Elem::one(f)).unwrap();
        assert_eq!(r, TruncSeries::from_u64s(f, &[1, 3, 3, 1], 4));
        assert_eq!(r.mul(&r), s);
    }

    proptest! {
        #[test]
        fn reversion_roundtrip(c in proptest::collection::vec(0u64..7, 6), a1 in 1u64..7) {
            let f = Field::prime(7).unwrap();
            let mut v = vec![0, a1];
            v.extend(c);
            let s = TruncSeries::from_u64s(f, &v, 8);
            let r = s.reversion().unwrap();
            prop_assert_eq!(s.compose(&r).unwrap(), TruncSeries::var(f, 8));
            prop_assert_eq!(r.compose(&s).unwrap(), TruncSeries::var(f, 8));
        }

        #[test]
        fn inverse_roundtrip(c in proptest::collection::vec(0u64..11, 7), c0 in 1u64..11) {
            let f = Field::prime(11).unwrap();
            let mut v = vec![c0];
            v.extend(c);
            let s = TruncSeries::from_u64s(f, &v, 8);
            prop_assert_eq!(s.mul(&s.invert_unit().unwrap()), TruncSeries::one(f, 8));
        }
    }
}
