use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::polyring::{fmt_monomial, fmt_terms, BiPoly};
use std::collections::BTreeMap;
use std::fmt;

/// Homogeneous polynomial in `x, y, z` of a fixed degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriHomog {
    f: Field,
    d: u32,
    t: BTreeMap<[u32; 3], Elem>,
}

/// Monomials of degree `d` in the canonical column order: ascending power of
/// `x`, then ascending power of `y` (so `z^d` comes first and `x^d` last).
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in 0..=d {
        for j in 0..=d - i {
            v.push([i, j, d - i - j]);
        }
    }
    v
}

/// Named coordinate changes.
#[derive(Clone, Debug)]
pub enum CoordChange {
    /// `F(x + a y, y, z + b y)`.
    ShearA1 { alpha: Elem, beta: Elem },
    /// `F(x, y, z + g x)`.
    ShearA2 { gamma: Elem },
    /// Moves `(a : b : 1)` to `(0 : 0 : 1)`: `F(x + a z, y + b z, z)`.
    Translate { a: Elem, b: Elem },
    /// Exchanges two variables (indices 0, 1, 2 for x, y, z).
    Swap(usize, usize),
}

impl TriHomog {
    pub fn zero(f: Field, d: u32) -> TriHomog {
        TriHomog { f, d, t: BTreeMap::new() }
    }

    pub fn constant(c: Elem) -> TriHomog {
        TriHomog::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Elem, e: [u32; 3]) -> TriHomog {
        let mut p = TriHomog::zero(c.field(), e.iter().sum());
        p.add_term(e, c);
        p
    }

    /// The coordinate function with index `v` (0 = x, 1 = y, 2 = z).
    pub fn var(f: Field, v: usize) -> TriHomog {
        let mut e = [0; 3];
        e[v] = 1;
        TriHomog::monomial(Elem::one(f), e)
    }

    pub fn new(f: Field, d: u32, terms: impl IntoIterator<Item = ([u32; 3], Elem)>) -> Result<TriHomog> {
        let mut p = TriHomog::zero(f, d);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != d {
                return Err(Error::PreconditionViolated(format!("term {e:?} is not of degree {d}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn from_u64_terms(f: Field, d: u32, terms: &[([u32; 3], u64)]) -> TriHomog {
        TriHomog::new(f, d, terms.iter().map(|&(e, c)| (e, Elem::from_u64(f, c)))).expect("homogeneous")
    }

    /// Coefficients listed in [`monomials`] order.
    pub fn from_vector(f: Field, d: u32, v: &[Elem]) -> TriHomog {
        let ms = monomials(d);
        assert_eq!(ms.len(), v.len());
        TriHomog::new(f, d, ms.into_iter().zip(v.iter().cloned())).unwrap()
    }

    pub fn to_vector(&self) -> Vec<Elem> {
        monomials(self.d).into_iter().map(|e| self.coeff(e)).collect()
    }

    fn add_term(&mut self, e: [u32; 3], c: Elem) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.t.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Elem)> {
        self.t.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Elem {
        self.t.get(&e).cloned().unwrap_or_else(|| Elem::zero(self.f))
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    /// `true` for a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.d == 0 && !self.is_zero()
    }

    pub fn add(&self, o: &TriHomog) -> Result<TriHomog> {
        if self.d != o.d && !self.is_zero() && !o.is_zero() {
            return Err(Error::DegreeMismatch);
        }
        let mut r = if self.is_zero() { TriHomog::zero(self.f, o.d) } else { self.clone() };
        for (e, c) in &o.t {
            r.add_term(*e, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &TriHomog) -> Result<TriHomog> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TriHomog {
        TriHomog { f: self.f, d: self.d, t: self.t.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn scale(&self, s: &Elem) -> TriHomog {
        let mut r = TriHomog::zero(self.f, self.d);
        for (e, c) in &self.t {
            r.add_term(*e, c * s);
        }
        r
    }

    pub fn mul(&self, o: &TriHomog) -> TriHomog {
        let mut r = TriHomog::zero(self.f, self.d + o.d);
        for (a, c) in &self.t {
            for (b, e) in &o.t {
                r.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], c * e);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> TriHomog {
        let mut r = TriHomog::constant(Elem::one(self.f));
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, p: &[Elem; 3]) -> Elem {
        let mut acc = Elem::zero(self.f);
        for (e, c) in &self.t {
            let mut t = c.clone();
            for v in 0..3 {
                if e[v] > 0 {
                    t = &t * &p[v].pow(e[v] as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> TriHomog {
        let mut r = TriHomog::zero(self.f, self.d.saturating_sub(1));
        for (e, c) in &self.t {
            if e[v] > 0 {
                let mut ne = *e;
                ne[v] -= 1;
                r.add_term(ne, c * &Elem::from_u64(self.f, e[v] as u64));
            }
        }
        r
    }

    /// Sets variable `chart` to 1; the other two become `(x, y)` of the result in order.
    pub fn dehomogenize(&self, chart: usize) -> BiPoly {
        let (a, b) = other_two(chart);
        BiPoly::from_terms(self.f, self.t.iter().map(|(e, c)| ((e[a], e[b]), c.clone())))
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) at degree `d`.
    pub fn homogenize(p: &BiPoly, d: u32, chart: usize) -> Result<TriHomog> {
        let td = p.total_degree().unwrap_or(0);
        if td > d {
            return Err(Error::DegreeTooSmall { target: d as usize, actual: td as usize });
        }
        let (a, b) = other_two(chart);
        let mut r = TriHomog::zero(p.field(), d);
        for (&(i, j), c) in p.terms() {
            let mut e = [0; 3];
            e[a] = i;
            e[b] = j;
            e[chart] = d - i - j;
            r.add_term(e, c.clone());
        }
        Ok(r)
    }

    /// `F(M v)`: variable `i` is replaced by `sum_j m[i][j] * var_j`.
    pub fn linear_subst(&self, m: &[[Elem; 3]; 3]) -> TriHomog {
        let forms: Vec<TriHomog> = (0..3)
            .map(|i| {
                let mut l = TriHomog::zero(self.f, 1);
                for j in 0..3 {
                    let mut e = [0; 3];
                    e[j] = 1;
                    l.add_term(e, m[i][j].clone());
                }
                l
            })
            .collect();
        let mut powers: Vec<Vec<TriHomog>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![TriHomog::constant(Elem::one(self.f))];
                for k in 1..=self.d as usize {
                    let next = v[k - 1].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = TriHomog::zero(self.f, self.d);
        for (e, c) in &self.t {
            let t = powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]).mul(&powers[2][e[2] as usize]);
            r = r.add(&t.scale(c)).unwrap();
        }
        powers.clear();
        r
    }

    pub fn coord_change(&self, ch: &CoordChange) -> TriHomog {
        let f = self.f;
        let o = Elem::one(f);
        let z = Elem::zero(f);
        let m = match ch {
            CoordChange::ShearA1 { alpha, beta } => {
                [[o.clone(), alpha.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [z.clone(), beta.clone(), o.clone()]]
            }
            CoordChange::ShearA2 { gamma } => {
                [[o.clone(), z.clone(), z.clone()], [z.clone(), o.clone(), z.clone()], [gamma.clone(), z.clone(), o.clone()]]
            }
            CoordChange::Translate { a, b } => {
                [[o.clone(), z.clone(), a.clone()], [z.clone(), o.clone(), b.clone()], [z.clone(), z.clone(), o.clone()]]
            }
            CoordChange::Swap(i, j) => {
                let mut m = [[z.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()]];
                for (k, row) in m.iter_mut().enumerate() {
                    let t = if k == *i {
                        *j
                    } else if k == *j {
                        *i
                    } else {
                        k
                    };
                    row[t] = o.clone();
                }
                m
            }
        };
        self.linear_subst(&m)
    }

    /// Partial degree in variable `v`.
    pub fn partial_degree(&self, v: usize) -> Option<u32> {
        self.t.keys().map(|e| e[v]).max()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &TriHomog) -> Option<TriHomog> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TriHomog::zero(self.f, self.d.saturating_sub(d.d)));
        }
        if d.d > self.d {
            return None;
        }
        let (lead_e, lead_c) = d.t.iter().next_back().map(|(e, c)| (*e, c.clone())).unwrap();
        let inv = lead_c.inv().unwrap();
        let mut r = self.clone();
        let mut q = TriHomog::zero(self.f, self.d - d.d);
        while let Some((e, c)) = r.t.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if (0..3).any(|v| e[v] < lead_e[v]) {
                return None;
            }
            let qe = [e[0] - lead_e[0], e[1] - lead_e[1], e[2] - lead_e[2]];
            let qc = &c * &inv;
            let t = TriHomog::monomial(qc.clone(), qe);
            r = r.sub(&t.mul(d)).unwrap();
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn map(&self, emb: &Embedding) -> TriHomog {
        TriHomog { f: emb.target(), d: self.d, t: self.t.iter().map(|(e, c)| (*e, emb.apply(c))).collect() }
    }

    pub fn map_with(&self, f: Field, g: impl Fn(&Elem) -> Elem) -> TriHomog {
        let mut r = TriHomog::zero(f, self.d);
        for (e, c) in &self.t {
            r.add_term(*e, g(c));
        }
        r
    }

    /// Normalizes the leading coefficient (last in [`monomials`] order) to 1.
    pub fn monic(&self) -> TriHomog {
        match monomials(self.d).into_iter().rev().find_map(|e| self.t.get(&e).cloned()) {
            Some(c) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }
}

fn other_two(chart: usize) -> (usize, usize) {
    match chart {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("chart index out of range"),
    }
}

impl fmt::Display for TriHomog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = fmt_terms(
            self.t
                .iter()
                .rev()
                .map(|(e, c)| (c.clone(), fmt_monomial(&["x", "y", "z"], e))),
        );
        write!(f, "{s}")
    }
}

impl fmt::Debug for TriHomog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
