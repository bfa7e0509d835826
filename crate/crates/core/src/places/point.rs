use crate::error::{Error, Result};
use crate::gf::{embed, embedding, lcm, Elem, Field};
use crate::polyring::parse_elem;
use std::fmt;

/// A projective point, scaled so that its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    c: [Elem; 3],
}

impl Point {
    pub fn new(coords: [Elem; 3]) -> Result<Point> {
        let f = coords[0].field();
        if coords.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        let last = (0..3).rev().find(|&i| !coords[i].is_zero()).ok_or_else(|| {
            Error::PreconditionViolated("(0:0:0) is not a projective point".into())
        })?;
        let s = coords[last].inv()?;
        Ok(Point { c: coords.map(|c| &c * &s) })
    }

    pub fn from_u64s(f: Field, c: [u64; 3]) -> Result<Point> {
        Point::new(c.map(|v| Elem::from_u64(f, v)))
    }

    pub fn field(&self) -> Field {
        self.c[0].field()
    }

    pub fn coords(&self) -> &[Elem; 3] {
        &self.c
    }

    /// Index of the coordinate equal to 1, i.e. the affine chart used at this point.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.c[i].is_zero()).unwrap()
    }

    pub fn embed(&self, target: Field) -> Result<Point> {
        Ok(Point { c: [embed(&self.c[0], target)?, embed(&self.c[1], target)?, embed(&self.c[2], target)?] })
    }

    /// The same point over the smallest field containing `base` and its coordinates.
    pub fn minimize(&self, base: Field) -> Result<Point> {
        let f = self.field();
        if base.p() != f.p() {
            return Err(Error::FieldMismatch);
        }
        let d = self.c.iter().fold(base.degree(), |acc, c| lcm(acc, c.min_degree()));
        let small = Field::new(f.p(), d)?;
        if small == f {
            return Ok(self.clone());
        }
        let e = embedding(small, f, f.prime_field())?;
        let back = |c: &Elem| e.preimage(c).ok_or_else(|| Error::Internal("coordinate outside its minimal field".into()));
        Ok(Point { c: [back(&self.c[0])?, back(&self.c[1])?, back(&self.c[2])?] })
    }

    /// Image under `a -> a^(p^j)`.
    pub fn frobenius(&self, j: usize) -> Point {
        Point { c: self.c.clone().map(|c| c.frobenius(j)) }
    }

    /// Number of distinct conjugates over `base`.
    pub fn degree_over(&self, base: Field) -> usize {
        let m = self.minimize(base).expect("same characteristic");
        m.field().degree() / base.degree()
    }

    /// Canonical representative of the closed point over `base`: the least conjugate
    /// over the smallest field containing the coordinates.
    pub fn closed_rep(&self, base: Field) -> Result<Point> {
        let m = self.minimize(base)?;
        let k = base.degree();
        let r = m.field().degree() / k;
        Ok((0..r).map(|j| m.frobenius(j * k)).min().unwrap())
    }

    /// All conjugates over `base` (starting with `self`).
    pub fn conjugates(&self, base: Field) -> Vec<Point> {
        let k = base.degree();
        let r = self.field().degree() / k;
        (0..r).map(|j| self.frobenius(j * k)).collect()
    }

    /// Parses `(a:b:c)` where each coordinate is a constant expression over `field`.
    pub fn parse(s: &str, field: Field) -> Result<Point> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad point {s:?}")))?;
        let parts: Vec<&str> = inner.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad point {s:?}")));
        }
        let mut c = Vec::with_capacity(3);
        for part in parts {
            c.push(parse_elem(part, field)?);
        }
        Point::new([c[0].clone(), c[1].clone(), c[2].clone()])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.c[0], self.c[1], self.c[2])
    }
}
