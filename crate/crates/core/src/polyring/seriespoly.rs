use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::polyring::{BiPoly, TruncSeries};
use std::fmt;

/// Polynomial in `y` whose coefficients are series in `x`, all at one precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesPoly {
    f: Field,
    prec: usize,
    /// Coefficient of `y^j` at index `j`; trailing coefficients that vanish
    /// to precision are dropped.
    c: Vec<TruncSeries>,
}

impl SeriesPoly {
    pub fn new(f: Field, c: Vec<TruncSeries>, prec: usize) -> SeriesPoly {
        let mut c: Vec<TruncSeries> = c
            .into_iter()
            .map(|s| if s.prec() >= prec { s.truncate(prec) } else { TruncSeries::new(f, s.coeffs().to_vec(), prec) })
            .collect();
        while c.last().is_some_and(|s| s.is_zero()) {
            c.pop();
        }
        SeriesPoly { f, prec, c }
    }

    pub fn zero(f: Field, prec: usize) -> SeriesPoly {
        SeriesPoly { f, prec, c: vec![] }
    }

    pub fn one(f: Field, prec: usize) -> SeriesPoly {
        SeriesPoly::new(f, vec![TruncSeries::one(f, prec)], prec)
    }

    /// The polynomial `y`.
    pub fn y(f: Field, prec: usize) -> SeriesPoly {
        SeriesPoly::new(f, vec![TruncSeries::zero(f, prec), TruncSeries::one(f, prec)], prec)
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn coeffs(&self) -> &[TruncSeries] {
        &self.c
    }

    pub fn coeff(&self, j: usize) -> TruncSeries {
        self.c.get(j).cloned().unwrap_or_else(|| TruncSeries::zero(self.f, self.prec))
    }

    /// `None` when zero to precision.
    pub fn ydeg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|s| s == &TruncSeries::one(self.f, self.prec))
    }

    pub fn with_prec(&self, prec: usize) -> SeriesPoly {
        assert!(prec <= self.prec);
        SeriesPoly::new(self.f, self.c.clone(), prec)
    }

    pub fn add(&self, o: &SeriesPoly) -> SeriesPoly {
        let prec = self.prec.min(o.prec);
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|j| self.coeff(j).truncate_to(prec).add(&o.coeff(j).truncate_to(prec))).collect();
        SeriesPoly::new(self.f, c, prec)
    }

    pub fn sub(&self, o: &SeriesPoly) -> SeriesPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> SeriesPoly {
        SeriesPoly { f: self.f, prec: self.prec, c: self.c.iter().map(|s| s.neg()).collect() }
    }

    pub fn mul(&self, o: &SeriesPoly) -> SeriesPoly {
        let prec = self.prec.min(o.prec);
        if self.is_zero() || o.is_zero() {
            return SeriesPoly::zero(self.f, prec);
        }
        let mut c = vec![TruncSeries::zero(self.f, prec); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        SeriesPoly::new(self.f, c, prec)
    }

    pub fn scale(&self, s: &TruncSeries) -> SeriesPoly {
        let prec = self.prec.min(s.prec());
        SeriesPoly::new(self.f, self.c.iter().map(|a| a.mul(s)).collect(), prec)
    }

    /// Division by a polynomial monic in `y`: `self = q*d + r`, `deg r < deg d`.
    pub fn divrem_monic(&self, d: &SeriesPoly) -> Result<(SeriesPoly, SeriesPoly)> {
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = d.ydeg().unwrap();
        let prec = self.prec.min(d.prec);
        let mut r: Vec<TruncSeries> = self.c.iter().map(|s| s.truncate_to(prec)).collect();
        if r.len() <= n {
            return Ok((SeriesPoly::zero(self.f, prec), SeriesPoly::new(self.f, r, prec)));
        }
        let mut q = vec![TruncSeries::zero(self.f, prec); r.len() - n];
        for i in (n..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..=n {
                r[i - n + j] = r[i - n + j].sub(&c.mul(&d.c[j].truncate_to(prec)));
            }
            q[i - n] = c;
        }
        r.truncate(n);
        Ok((SeriesPoly::new(self.f, q, prec), SeriesPoly::new(self.f, r, prec)))
    }

    /// `self(x, y0(x))`.
    pub fn eval_y(&self, y0: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(y0.prec());
        let mut acc = TruncSeries::zero(self.f, prec);
        for c in self.c.iter().rev() {
            acc = acc.mul(y0).add(&c.truncate_to(prec));
        }
        acc
    }

    /// Known terms as a bivariate polynomial.
    pub fn to_bipoly(&self) -> BiPoly {
        let mut p = BiPoly::zero(self.f);
        for (j, s) in self.c.iter().enumerate() {
            for (i, e) in s.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, e.clone());
            }
        }
        p
    }

    pub fn derivative_y(&self) -> SeriesPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, s)| s.scale(&Elem::from_u64(self.f, j as u64)))
            .collect();
        SeriesPoly::new(self.f, c, self.prec)
    }

    pub fn map(&self, emb: &Embedding) -> SeriesPoly {
        SeriesPoly::new(emb.target(), self.c.iter().map(|s| s.map(emb)).collect(), self.prec)
    }

    pub fn map_with(&self, f: Field, g: impl Fn(&Elem) -> Elem + Copy) -> SeriesPoly {
        SeriesPoly::new(f, self.c.iter().map(|s| s.map_with(f, g)).collect(), self.prec)
    }
}

impl TruncSeries {
    /// Truncates when longer, keeps as is otherwise.
    pub(crate) fn truncate_to(&self, prec: usize) -> TruncSeries {
        if self.prec() > prec {
            self.truncate(prec)
        } else {
            self.clone()
        }
    }
}

impl fmt::Debug for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.to_bipoly(), self.prec)
    }
}
