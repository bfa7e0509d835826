use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::polyring::{fmt_monomial, fmt_terms, SeriesPoly, TruncSeries, UniPoly};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in `x, y`; key `(i, j)` is the monomial `x^i y^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    f: Field,
    t: BTreeMap<(u32, u32), Elem>,
}

impl BiPoly {
    pub fn zero(f: Field) -> BiPoly {
        BiPoly { f, t: BTreeMap::new() }
    }

    pub fn one(f: Field) -> BiPoly {
        BiPoly::constant(Elem::one(f))
    }

    pub fn constant(c: Elem) -> BiPoly {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Elem, i: u32, j: u32) -> BiPoly {
        let mut p = BiPoly::zero(c.field());
        p.add_term(i, j, c);
        p
    }

    pub fn x(f: Field) -> BiPoly {
        BiPoly::monomial(Elem::one(f), 1, 0)
    }

    pub fn y(f: Field) -> BiPoly {
        BiPoly::monomial(Elem::one(f), 0, 1)
    }

    pub fn from_terms(f: Field, terms: impl IntoIterator<Item = ((u32, u32), Elem)>) -> BiPoly {
        let mut p = BiPoly::zero(f);
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_u64_terms(f: Field, terms: &[((u32, u32), u64)]) -> BiPoly {
        BiPoly::from_terms(f, terms.iter().map(|&(k, v)| (k, Elem::from_u64(f, v))))
    }

    /// Adds `c x^i y^j` in place.
    pub fn add_term(&mut self, i: u32, j: u32, c: Elem) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.t.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Elem)> {
        self.t.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.t.get(&(i, j)).cloned().unwrap_or_else(|| Elem::zero(self.f))
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.t.keys().map(|k| k.1).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.t.keys().map(|k| k.0).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.t.keys().map(|k| k.0 + k.1).max()
    }

    /// Order at the origin (lowest total degree).
    pub fn ord(&self) -> Option<u32> {
        self.t.keys().map(|k| k.0 + k.1).min()
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly::from_terms(self.f, self.t.iter().filter(|(k, _)| k.0 + k.1 == d).map(|(k, v)| (*k, v.clone())))
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn coeff_y(&self, j: u32) -> UniPoly {
        let mut c = vec![];
        for (&(i, jj), v) in &self.t {
            if jj == j {
                if c.len() <= i as usize {
                    c.resize(i as usize + 1, Elem::zero(self.f));
                }
                c[i as usize] = v.clone();
            }
        }
        UniPoly::new(self.f, c)
    }

    /// `sum_j c_j(x) y^j`.
    pub fn from_y_coeffs(f: Field, cs: &[UniPoly]) -> BiPoly {
        let mut p = BiPoly::zero(f);
        for (j, c) in cs.iter().enumerate() {
            for (i, e) in c.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, e.clone());
            }
        }
        p
    }

    /// Coefficients in `y` as polynomials in `x`, index = power of `y`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        match self.deg_y() {
            None => vec![],
            Some(d) => (0..=d).map(|j| self.coeff_y(j)).collect(),
        }
    }

    pub fn scale(&self, s: &Elem) -> BiPoly {
        BiPoly::from_terms(self.f, self.t.iter().map(|(k, v)| (*k, v * s)))
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { f: self.f, t: self.t.iter().map(|(k, v)| (*k, v.neg())).collect() }
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), v) in &o.t {
            r.add_term(i, j, v.clone());
        }
        r
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), v) in &o.t {
            r.add_term(i, j, v.neg());
        }
        r
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::zero(self.f);
        for (&(i, j), a) in &self.t {
            for (&(k, l), b) in &o.t {
                r.add_term(i + k, j + l, a * b);
            }
        }
        r
    }

    /// Product keeping only terms accepted by `keep`.
    pub fn mul_filtered(&self, o: &BiPoly, keep: impl Fn(u32, u32) -> bool) -> BiPoly {
        let mut r = BiPoly::zero(self.f);
        for (&(i, j), a) in &self.t {
            for (&(k, l), b) in &o.t {
                if keep(i + k, j + l) {
                    r.add_term(i + k, j + l, a * b);
                }
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut base = self.clone();
        let mut r = BiPoly::one(self.f);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(u32, u32) -> bool) -> BiPoly {
        BiPoly { f: self.f, t: self.t.iter().filter(|(k, _)| keep(k.0, k.1)).map(|(k, v)| (*k, v.clone())).collect() }
    }

    pub fn eval(&self, x: &Elem, y: &Elem) -> Elem {
        let mut acc = Elem::zero(self.f);
        for (&(i, j), c) in &self.t {
            acc = &acc + &(&(c * &x.pow(i as u64)) * &y.pow(j as u64));
        }
        acc
    }

    pub fn swap(&self) -> BiPoly {
        BiPoly { f: self.f, t: self.t.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect() }
    }

    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::from_terms(
            self.f,
            self.t.iter().filter(|(k, _)| k.0 > 0).map(|(&(i, j), v)| ((i - 1, j), v * &Elem::from_u64(self.f, i as u64))),
        )
    }

    pub fn derivative_y(&self) -> BiPoly {
        BiPoly::from_terms(
            self.f,
            self.t.iter().filter(|(k, _)| k.1 > 0).map(|(&(i, j), v)| ((i, j - 1), v * &Elem::from_u64(self.f, j as u64))),
        )
    }

    /// `self(X, Y)` for polynomials `X, Y`.
    pub fn substitute(&self, xs: &BiPoly, ys: &BiPoly) -> BiPoly {
        let dx = self.deg_x().unwrap_or(0);
        let dy = self.deg_y().unwrap_or(0);
        let mut px = vec![BiPoly::one(self.f)];
        for k in 1..=dx as usize {
            px.push(px[k - 1].mul(xs));
        }
        let mut py = vec![BiPoly::one(self.f)];
        for k in 1..=dy as usize {
            py.push(py[k - 1].mul(ys));
        }
        let mut r = BiPoly::zero(self.f);
        for (&(i, j), c) in &self.t {
            r = r.add(&px[i as usize].mul(&py[j as usize]).scale(c));
        }
        r
    }

    /// `self(x + a, y + b)`.
    pub fn translate(&self, a: &Elem, b: &Elem) -> BiPoly {
        let xs = BiPoly::x(self.f).add(&BiPoly::constant(a.clone()));
        let ys = BiPoly::y(self.f).add(&BiPoly::constant(b.clone()));
        self.substitute(&xs, &ys)
    }

    /// Exact division by `x^k`.
    pub fn div_x_pow(&self, k: u32) -> Result<BiPoly> {
        if self.t.keys().any(|key| key.0 < k) {
            return Err(Error::PreconditionViolated("not divisible by the power of x".into()));
        }
        Ok(BiPoly { f: self.f, t: self.t.iter().map(|(&(i, j), v)| ((i - k, j), v.clone())).collect() })
    }

    /// Multiplication by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> BiPoly {
        BiPoly { f: self.f, t: self.t.iter().map(|(&(i, j), v)| ((i + a, j + b), v.clone())).collect() }
    }

    /// Largest `k` with `x^k` dividing `self`.
    pub fn x_adic_valuation(&self) -> Option<u32> {
        self.t.keys().map(|k| k.0).min()
    }

    /// Exact division by a polynomial monic in `y` (over `K[x]`); returns `(q, r)` with `deg_y r < deg_y d`.
    pub fn divrem_monic_y(&self, d: &BiPoly) -> Result<(BiPoly, BiPoly)> {
        let n = d.deg_y().ok_or(Error::DivisionByZero)?;
        let lc = d.coeff_y(n);
        if !lc.is_one() {
            return Err(Error::NotMonic);
        }
        let mut r = self.y_coeffs();
        let dc = d.y_coeffs();
        let mut q = vec![UniPoly::zero(self.f); r.len().saturating_sub(n as usize)];
        for i in (n as usize..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in dc.iter().enumerate() {
                r[i - n as usize + j] = &r[i - n as usize + j] - &(&c * dj);
            }
            q[i - n as usize] = c;
        }
        r.truncate(n as usize);
        Ok((BiPoly::from_y_coeffs(self.f, &q), BiPoly::from_y_coeffs(self.f, &r)))
    }

    /// As a polynomial in `y` over `K[[x]]` at precision `prec`.
    pub fn to_series_poly(&self, prec: usize) -> SeriesPoly {
        let cs = self.y_coeffs().iter().map(|c| TruncSeries::from_poly(c, prec)).collect();
        SeriesPoly::new(self.f, cs, prec)
    }

    pub fn map(&self, emb: &Embedding) -> BiPoly {
        BiPoly { f: emb.target(), t: self.t.iter().map(|(k, v)| (*k, emb.apply(v))).collect() }
    }

    pub fn map_with(&self, f: Field, g: impl Fn(&Elem) -> Elem) -> BiPoly {
        BiPoly::from_terms(f, self.t.iter().map(|(k, v)| (*k, g(v))))
    }

    /// Evaluation at `(X, Y)` series, truncated to the common precision.
    pub fn eval_series(&self, xs: &TruncSeries, ys: &TruncSeries) -> TruncSeries {
        let prec = xs.prec().min(ys.prec());
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut px = vec![TruncSeries::one(self.f, prec)];
        for k in 1..=dx {
            px.push(px[k - 1].mul(xs));
        }
        let mut py = vec![TruncSeries::one(self.f, prec)];
        for k in 1..=dy {
            py.push(py[k - 1].mul(ys));
        }
        let mut acc = TruncSeries::zero(self.f, prec);
        for (&(i, j), c) in &self.t {
            acc = acc.add(&px[i as usize].mul(&py[j as usize]).scale(c));
        }
        acc
    }

    pub fn fmt_vars(&self, vx: &str, vy: &str) -> String {
        let mut terms: Vec<(&(u32, u32), &Elem)> = self.t.iter().collect();
        terms.sort_by(|a, b| (b.0 .0 + b.0 .1, b.0 .0).cmp(&(a.0 .0 + a.0 .1, a.0 .0)));
        fmt_terms(terms.into_iter().map(|(&(i, j), c)| (c.clone(), fmt_monomial(&[vx, vy], &[i, j]))))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
