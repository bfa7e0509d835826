//! Weighted valuations on `K[[x, y]]`, their truncations, Newton polygons and
//! Newton polynomials.

use crate::error::{Error, Result};
use crate::polyring::{BiPoly, SeriesPoly};
use std::cmp::Ordering;
use std::fmt;

/// Integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Val::Infinite
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite(_), Val::Infinite) => Ordering::Less,
            (Val::Infinite, Val::Finite(_)) => Ordering::Greater,
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
        }
    }
}

impl std::ops::Add for Val {
    type Output = Val;
    fn add(self, o: Val) -> Val {
        match (self, o) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinite,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

/// Weights `(gx, gy)` with `val(x^a y^b) = gx a + gy b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedValuation {
    pub gx: u32,
    pub gy: u32,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl WeightedValuation {
    pub fn new(gx: u32, gy: u32) -> Result<WeightedValuation> {
        if gx == 0 || gcd(gx as u64, gy as u64) != 1 {
            return Err(Error::PreconditionViolated(format!("invalid weights ({gx}, {gy})")));
        }
        Ok(WeightedValuation { gx, gy })
    }

    pub fn weight(&self, i: u32, j: u32) -> u64 {
        self.gx as u64 * i as u64 + self.gy as u64 * j as u64
    }

    /// Valuation of an exact polynomial.
    pub fn val(&self, a: &BiPoly) -> Val {
        a.terms().map(|(&(i, j), _)| self.weight(i, j)).min().map_or(Val::Infinite, |v| Val::Finite(v as i64))
    }

    /// Valuation of a truncated series polynomial, certified by its precision.
    pub fn val_series(&self, a: &SeriesPoly) -> Result<Val> {
        let bound = self.gx as u64 * a.prec() as u64;
        match self.val(&a.to_bipoly()) {
            Val::Finite(v) if (v as u64) < bound => Ok(Val::Finite(v)),
            _ => Err(Error::PrecisionUnderflow(format!("valuation not certified below {bound}"))),
        }
    }

    /// Terms of weight exactly `e`.
    pub fn component(&self, a: &BiPoly, e: u64) -> BiPoly {
        a.filter(|i, j| self.weight(i, j) == e)
    }

    /// Terms of weight in `[e, e + eta)`.
    pub fn slab(&self, a: &BiPoly, e: u64, eta: u64) -> BiPoly {
        a.filter(|i, j| {
            let w = self.weight(i, j);
            w >= e && w < e + eta
        })
    }

    /// Terms of weight below `bound`.
    pub fn truncate(&self, a: &BiPoly, bound: u64) -> BiPoly {
        a.filter(|i, j| self.weight(i, j) < bound)
    }

    /// Terms of minimal weight.
    pub fn initial_form(&self, a: &BiPoly) -> Result<BiPoly> {
        match self.val(a) {
            Val::Infinite => Err(Error::ZeroElement),
            Val::Finite(v) => Ok(self.component(a, v as u64)),
        }
    }

    /// Slab of a series polynomial; fails when the slab reaches unknown terms.
    pub fn slab_series(&self, a: &SeriesPoly, e: u64, eta: u64) -> Result<BiPoly> {
        if e + eta > self.gx as u64 * a.prec() as u64 {
            return Err(Error::PrecisionUnderflow("slab beyond certified precision".into()));
        }
        Ok(self.slab(&a.to_bipoly(), e, eta))
    }

    /// `true` when every term has the same weight.
    pub fn is_quasi_homogeneous(&self, a: &BiPoly) -> bool {
        let mut w = a.terms().map(|(&(i, j), _)| self.weight(i, j));
        match w.next() {
            None => true,
            Some(first) => w.all(|v| v == first),
        }
    }
}

/// Lower convex hull of the points `(i, val_x f_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(u32, u32)>,
}

impl NewtonPolygon {
    pub fn edges(&self) -> Vec<((u32, u32), (u32, u32))> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Height of the polygon at abscissa `i` (inside its range), as a rational `num/den`.
    fn height(&self, i: u32) -> Option<(i64, i64)> {
        for w in self.vertices.windows(2) {
            let ((a, ja), (b, jb)) = (w[0], w[1]);
            if a <= i && i <= b {
                let num = ja as i64 * (b - a) as i64 + (jb as i64 - ja as i64) * (i - a) as i64;
                return Some((num, (b - a) as i64));
            }
        }
        if self.vertices.len() == 1 && self.vertices[0].0 == i {
            return Some((self.vertices[0].1 as i64, 1));
        }
        None
    }
}

fn lower_hull(mut pts: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0); // keep the lowest point per abscissa
    let mut hull: Vec<(u32, u32)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 as i64 - o.0 as i64) * (p.1 as i64 - o.1 as i64)
                - (a.1 as i64 - o.1 as i64) * (p.0 as i64 - o.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn support(f: &BiPoly) -> Vec<(u32, u32)> {
    f.y_coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as u32, v as u32)))
        .collect()
}

/// Newton polygon of an exact polynomial in `y` over `K[x]`.
pub fn newton_polygon_exact(f: &BiPoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(NewtonPolygon { vertices: lower_hull(support(f)) })
}

/// Newton polygon of a truncated series polynomial; coefficients that vanish
/// to precision must provably lie strictly above the polygon.
pub fn newton_polygon(f: &SeriesPoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::PrecisionUnderflow("zero to precision".into()));
    }
    let pts: Vec<(u32, u32)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as u32, v as u32)))
        .collect();
    let poly = NewtonPolygon { vertices: lower_hull(pts.clone()) };
    let n = f.prec() as i64;
    let first = poly.vertices[0].0;
    for i in 0..f.coeffs().len() as u32 {
        if pts.iter().any(|p| p.0 == i) {
            continue;
        }
        let ok = i > first && poly.height(i).is_some_and(|(num, den)| num < n * den);
        if !ok {
            return Err(Error::PrecisionUnderflow(format!("coefficient of y^{i} not certified")));
        }
    }
    Ok(poly)
}

/// Weights making the edge quasi-homogeneous: `gy / gx` is the negated slope.
pub fn edge_weights(edge: ((u32, u32), (u32, u32))) -> WeightedValuation {
    let ((i0, j0), (i1, j1)) = edge;
    let a = (j0 - j1) as u64;
    let b = (i1 - i0) as u64;
    let g = gcd(a, b);
    WeightedValuation { gx: (b / g) as u32, gy: (a / g) as u32 }
}

/// Newton polynomial of an edge: `sum [f_i]_j y^(i - i0)` over lattice points
/// `(i, j)` of the edge, `i0` its left abscissa.
pub fn newton_polynomial_exact(f: &BiPoly, edge: ((u32, u32), (u32, u32))) -> Result<BiPoly> {
    let poly = newton_polygon_exact(f)?;
    edge_polynomial(f, &poly, edge)
}

/// As [`newton_polynomial_exact`] for a truncated series polynomial.
pub fn newton_polynomial(f: &SeriesPoly, edge: ((u32, u32), (u32, u32))) -> Result<BiPoly> {
    let poly = newton_polygon(f)?;
    edge_polynomial(&f.to_bipoly(), &poly, edge)
}

fn edge_polynomial(f: &BiPoly, poly: &NewtonPolygon, edge: ((u32, u32), (u32, u32))) -> Result<BiPoly> {
    if !poly.edges().contains(&edge) {
        return Err(Error::EdgeNotOnPolygon);
    }
    let ((i0, j0), (i1, j1)) = edge;
    let mut r = BiPoly::zero(f.field());
    for i in i0..=i1 {
        let num = j0 as i64 * (i1 - i0) as i64 + (j1 as i64 - j0 as i64) * (i - i0) as i64;
        let den = (i1 - i0) as i64;
        if num % den != 0 {
            continue;
        }
        let j = (num / den) as u32;
        let c = f.coeff(j, i);
        r.add_term(j, i - i0, c);
    }
    Ok(r)
}
