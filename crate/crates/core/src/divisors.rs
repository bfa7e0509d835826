//! Divisors on a plane curve: arithmetic, intersections through resultants,
//! divisors of polynomials and functions, the adjoint divisor and the genus.

use crate::error::{Error, Result};
use crate::gf::{embed, embedding, factor_univariate, roots_in_field, Elem, Field};
use crate::newton::Val;
use crate::places::{Curve, Place, PlaceKey, Point};
use crate::polyring::{resultant_y, TriHomog, UniPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A finite integer combination of closed places of one curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    curve_id: u64,
    base: Field,
    /// Coefficient and degree of each place in the support.
    terms: BTreeMap<PlaceKey, (i64, usize)>,
}

impl Divisor {
    pub fn zero(curve: &Curve) -> Divisor {
        Divisor { curve_id: curve.id(), base: curve.field(), terms: BTreeMap::new() }
    }

    /// `c * P`.
    pub fn from_place(place: &Place, c: i64) -> Divisor {
        let mut d = Divisor { curve_id: place.curve_id(), base: place.base_field(), terms: BTreeMap::new() };
        d.add_term(place, c);
        d
    }

    /// `c * P` for the place with the given center and branch index.
    pub fn at(curve: &Curve, p: &Point, branch: usize, c: i64) -> Result<Divisor> {
        let pl = curve.place(&PlaceKey { center: curve.center(p)?.point.clone(), branch })?;
        Ok(Divisor::from_place(&pl, c))
    }

    pub fn add_term(&mut self, place: &Place, c: i64) {
        assert_eq!(place.curve_id(), self.curve_id, "place of another curve");
        let e = self.terms.entry(place.key().clone()).or_insert((0, place.degree()));
        e.0 += c;
        if e.0 == 0 {
            self.terms.remove(place.key());
        }
    }

    pub fn curve_id(&self) -> u64 {
        self.curve_id
    }

    pub fn coeff(&self, key: &PlaceKey) -> i64 {
        self.terms.get(key).map_or(0, |t| t.0)
    }

    /// `(place, coefficient, degree of the place)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&PlaceKey, i64, usize)> {
        self.terms.iter().map(|(k, &(c, d))| (k, c, d))
    }

    pub fn support(&self) -> Vec<PlaceKey> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum c_P deg P`.
    pub fn degree(&self) -> i64 {
        self.terms.values().map(|&(c, d)| c * d as i64).sum()
    }

    fn check(&self, o: &Divisor) -> Result<()> {
        if self.curve_id != o.curve_id {
            return Err(Error::CurveMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Divisor) -> Result<Divisor> {
        self.check(o)?;
        let mut r = self.clone();
        for (k, &(c, d)) in &o.terms {
            let e = r.terms.entry(k.clone()).or_insert((0, d));
            e.0 += c;
            if e.0 == 0 {
                r.terms.remove(k);
            }
        }
        Ok(r)
    }

    pub fn neg(&self) -> Divisor {
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            v.0 = -v.0;
        }
        r
    }

    pub fn sub(&self, o: &Divisor) -> Result<Divisor> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor { terms: BTreeMap::new(), ..self.clone() };
        }
        let mut r = self.clone();
        for v in r.terms.values_mut() {
            v.0 *= k;
        }
        r
    }

    /// `D+`: the terms with positive coefficient.
    pub fn positive_part(&self) -> Divisor {
        let mut r = self.clone();
        r.terms.retain(|_, v| v.0 > 0);
        r
    }

    /// `self <= o` coefficientwise.
    pub fn leq(&self, o: &Divisor) -> Result<bool> {
        self.check(o)?;
        let keys: BTreeSet<&PlaceKey> = self.terms.keys().chain(o.terms.keys()).collect();
        Ok(keys.into_iter().all(|k| self.coeff(k) <= o.coeff(k)))
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|v| v.0 >= 0)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, &(c, _))) in self.terms.iter().enumerate() {
            let field = k.center.field();
            let suffix = if field != self.base { format!("@{}", field.name()) } else { String::new() };
            match (i, c < 0) {
                (0, false) => write!(f, "{c}*{k}{suffix}")?,
                (0, true) => write!(f, "-{}*{k}{suffix}", -c)?,
                (_, false) => write!(f, " + {c}*{k}{suffix}")?,
                (_, true) => write!(f, " - {}*{k}{suffix}", -c)?,
            }
        }
        Ok(())
    }
}

/// Data of one intersection computation.
#[derive(Clone, Debug)]
pub struct IntersectionContext {
    /// `F''(v) = F(M v)` satisfies both genericity assumptions.
    pub change: [[Elem; 3]; 3],
    /// `Res_y(F''(x, y, 1), G''(x, y, 1))`.
    pub resultant: UniPoly,
    pub working_field: Field,
    /// Canonical closed points over the field of `F`.
    pub points: Vec<Point>,
}

fn univariate_at_infinity(f: &TriHomog) -> UniPoly {
    let field = f.field();
    let d = f.degree() as usize;
    let mut c = vec![Elem::zero(field); d + 1];
    for (e, v) in f.terms() {
        if e[2] == 0 {
            c[e[1] as usize] = v.clone();
        }
    }
    UniPoly::new(field, c)
}

/// Common points of `F = 0` and `G = 0`, after a random change of coordinates
/// making `F` monic in `y` and moving all common points off `z = 0`.
pub fn intersect(f: &TriHomog, g: &TriHomog, seed: u64) -> Result<IntersectionContext> {
    let k = f.field();
    if !g.field().divides(k) && !k.divides(g.field()) {
        return Err(Error::FieldMismatch);
    }
    let base = if k.divides(g.field()) { g.field() } else { k };
    if g.is_zero() || f.is_zero() {
        return Err(Error::NotCoprime);
    }
    let (df, dg) = (f.degree() as usize, g.degree() as usize);
    let mut w = base;
    let need = (2 * (df * dg + df) + 4) as u128;
    while w.order_u128().is_some_and(|q| q < need) {
        w = w.extend(2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    for attempt in 0..64 {
        if attempt > 0 && attempt % 8 == 0 {
            w = w.extend(2);
        }
        let (a, b, c) = (Elem::random(w, &mut rng), Elem::random(w, &mut rng), Elem::random(w, &mut rng));
        let o = Elem::one(w);
        let z = Elem::zero(w);
        let m = [[o.clone(), a, z.clone()], [z.clone(), o.clone(), z.clone()], [c, b, o]];
        let f2 = f.map_with(w, |e| embed(e, w).unwrap()).linear_subst(&m);
        let g2 = g.map_with(w, |e| embed(e, w).unwrap()).linear_subst(&m);
        if f2.coeff([0, df as u32, 0]).is_zero() {
            continue;
        }
        let r = resultant_y(&f2.dehomogenize(2), &g2.dehomogenize(2));
        if r.is_zero() {
            return Err(Error::NotCoprime);
        }
        if univariate_at_infinity(&f2).gcd(&univariate_at_infinity(&g2)).degree() != Some(0) {
            continue;
        }
        found = Some((m, f2, g2, r));
        break;
    }
    let (m, f2, g2, r) = found.ok_or_else(|| Error::Internal("no admissible coordinate change found".into()))?;
    let mut points = BTreeSet::new();
    if r.degree().unwrap_or(0) > 0 {
        for (q, _) in factor_univariate(&r)? {
            let wq = w.extend(q.degree().unwrap());
            let eq = embedding(w, wq, w.prime_field())?;
            let x0 = roots_in_field(&q.map(&eq), seed)[0].clone();
            let at = |h: &TriHomog| -> UniPoly {
                let hb = h.map(&eq).dehomogenize(2);
                let d = hb.deg_y().unwrap_or(0) as usize;
                UniPoly::new(wq, (0..=d).map(|j| hb.coeff_y(j as u32).eval(&x0)).collect())
            };
            let h = at(&f2).gcd(&at(&g2));
            if h.degree().unwrap_or(0) == 0 {
                return Err(Error::Internal("resultant root without a common point".into()));
            }
            for (s, _) in factor_univariate(&h)? {
                let ws = wq.extend(s.degree().unwrap());
                let es = embedding(wq, ws, w.prime_field())?;
                let y0 = roots_in_field(&s.map(&es), seed)[0].clone();
                let pp = [es.apply(&x0), y0, Elem::one(ws)];
                let mm: Vec<Vec<Elem>> = m.iter().map(|row| row.iter().map(|e| embed(e, ws).unwrap()).collect()).collect();
                let orig: Vec<Elem> = (0..3)
                    .map(|i| (0..3).fold(Elem::zero(ws), |acc, j| &acc + &(&mm[i][j] * &pp[j])))
                    .collect();
                let p = Point::new([orig[0].clone(), orig[1].clone(), orig[2].clone()])?;
                points.insert(p.closed_rep(k)?);
            }
        }
    }
    Ok(IntersectionContext { change: m, resultant: r, working_field: w, points: points.into_iter().collect() })
}

/// `sum_i w_i(G) P_i` over the places at the closed point of `p`.
pub fn local_divisor(curve: &Curve, g: &TriHomog, p: &Point) -> Result<Divisor> {
    let mut d = Divisor::zero(curve);
    if !curve.contains(p)? {
        return Ok(d);
    }
    for pl in curve.places_at(p)? {
        match pl.valuation(g)? {
            Val::Finite(v) => d.add_term(&pl, v),
            Val::Infinite => return Err(Error::NotCoprime),
        }
    }
    Ok(d)
}

/// `Div(G)`; its degree is `deg G deg F`.
pub fn global_divisor(curve: &Curve, g: &TriHomog) -> Result<Divisor> {
    if g.is_zero() {
        return Err(Error::NotCoprime);
    }
    let mut d = Divisor::zero(curve);
    if g.degree() == 0 {
        return Ok(d);
    }
    let inter = intersect(curve.polynomial(), g, curve.seed())?;
    for p in &inter.points {
        d = d.add(&local_divisor(curve, g, p)?)?;
    }
    let want = (g.degree() * curve.degree()) as i64;
    if d.degree() != want {
        return Err(Error::Internal(format!("deg Div(G) = {} but deg G deg F = {want}", d.degree())));
    }
    Ok(d)
}

/// `Div(A / B) = Div(A) - Div(B)` for forms of equal degree.
pub fn divisor_of_function(curve: &Curve, a: &TriHomog, b: &TriHomog) -> Result<Divisor> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch);
    }
    global_divisor(curve, a)?.sub(&global_divisor(curve, b)?)
}

/// Points where `F` and all its partial derivatives vanish.
pub fn singular_locus(curve: &Curve) -> Result<Vec<Point>> {
    let f = curve.polynomial();
    let partials: Vec<TriHomog> = (0..3).map(|i| f.partial(i)).collect();
    let Some(pick) = partials.iter().find(|p| !p.is_zero()) else {
        return Err(Error::CurveNotIrreducible("all partial derivatives vanish".into()));
    };
    if pick.degree() == 0 {
        return Ok(vec![]);
    }
    let inter = intersect(f, pick, curve.seed())?;
    Ok(inter
        .points
        .into_iter()
        .filter(|p| {
            partials.iter().all(|d| {
                let dl = d.map_with(p.field(), |c| embed(c, p.field()).unwrap());
                dl.eval(p.coords()).is_zero()
            })
        })
        .collect())
}

/// Coefficient of the adjoint divisor at one place:
/// `w(f_y) - val(phi')`, or `w(f_x) - val(psi')` when `f_y = 0`.
pub fn adjoint_coefficient(curve: &Curve, place: &Place) -> Result<i64> {
    let center = curve.center(place.center())?;
    let m = place.field();
    let local = center.local.map_with(m, |c| embed(c, m).unwrap());
    let d = curve.degree() as usize;
    let bound = d * d;
    let (fx, fy) = (local.derivative_x(), local.derivative_y());
    let term = |partial: &crate::polyring::BiPoly, second: bool| -> Result<Option<i64>> {
        if partial.is_zero() {
            return Ok(None);
        }
        let w = place
            .local_valuation_resultant(partial, bound)?
            .finite()
            .ok_or_else(|| Error::Internal("partial derivative vanishes on a branch".into()))?;
        let mut prec = bound + 2;
        loop {
            let (phi, psi) = place.parametrize(prec)?;
            let s = if second { psi } else { phi };
            if let Some(v) = s.derivative().valuation() {
                return Ok(Some(w - v as i64));
            }
            if prec > 4 * place.ram_index() * bound + 64 {
                return Ok(None);
            }
            prec *= 2;
        }
    };
    let a = term(&fy, false)?;
    let b = term(&fx, true)?;
    match (a, b) {
        (Some(a), Some(b)) if a != b => Err(Error::Internal(format!("adjoint formulas disagree: {a} vs {b}"))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::WildDerivativeZero),
    }
}

/// The adjoint divisor, supported on the branches at singular points.
pub fn adjoint_divisor(curve: &Curve) -> Result<Divisor> {
    let mut d = Divisor::zero(curve);
    for p in singular_locus(curve)? {
        for pl in curve.places_at(&p)? {
            let c = adjoint_coefficient(curve, &pl)?;
            d.add_term(&pl, c);
        }
    }
    Ok(d)
}

/// `((delta - 1)(delta - 2) - deg A) / 2`, with both consistency checks.
pub fn genus(curve: &Curve) -> Result<u64> {
    let a = adjoint_divisor(curve)?;
    genus_from_adjoint(curve.degree(), &a)
}

pub fn genus_from_adjoint(delta: u32, a: &Divisor) -> Result<u64> {
    let top = (delta as i64 - 1) * (delta as i64 - 2);
    let da = a.degree();
    if da % 2 != 0 || da > top || da < 0 {
        return Err(Error::AdjointParity(da));
    }
    Ok(((top - da) / 2) as u64)
}

/// The places in the support of a divisor.
pub fn places_of(curve: &Curve, d: &Divisor) -> Result<Vec<(Arc<Place>, i64)>> {
    if d.curve_id != curve.id() {
        return Err(Error::CurveMismatch);
    }
    d.terms.iter().map(|(k, &(c, _))| Ok((curve.place(k)?, c))).collect()
}
