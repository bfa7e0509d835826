//! Places of a plane projective curve: local branches at a point, their
//! parametrizations by a uniformizer, and the associated valuations.
//!
//! A [`Place`] here is a closed place over the curve's base field `K`. It is
//! represented by one geometric branch, defined over a field `M` containing
//! the center's coordinates; its conjugates under `a -> a^|K|` are the other
//! geometric branches of the same closed place, and `[M : K]` is its degree.

mod local;
mod point;
mod resolve;

pub use local::{local_branches, Cluster, LocalFactorization};
pub use point::Point;
pub use resolve::{replay, resolve, tame_normalize, BlowStep, BranchTransform, Uniformizer};

use crate::error::{Error, Result};
use crate::gf::{embed, Elem, Field};
use crate::linalg::berkowitz;
use crate::newton::Val;
use crate::polyring::{resultant_series, BiPoly, SeriesPoly, TriHomog, TruncSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

static NEXT_CURVE_ID: AtomicU64 = AtomicU64::new(1);

/// Tunables shared by every computation on a curve.
#[derive(Clone, Copy, Debug)]
pub struct CurveConfig {
    pub seed: u64,
    /// Cap on series precision and on the blow-up depth. `None` uses `8 d^2 + 64`.
    pub prec_cap: Option<usize>,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig { seed: 0, prec_cap: None }
    }
}

/// A plane projective curve `F = 0` over `K`, with a cache of analysed centers.
#[derive(Clone)]
pub struct Curve(Arc<CurveData>);

struct CurveData {
    id: u64,
    f: TriHomog,
    seed: u64,
    prec_cap: usize,
    centers: Mutex<BTreeMap<Point, Arc<Center>>>,
}

/// Identity of a closed place: the canonical center and the branch index there.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaceKey {
    pub center: Point,
    pub branch: usize,
}

impl fmt::Display for PlaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{})", self.center, self.branch)
    }
}

/// The branches of a curve at one closed point.
pub struct Center {
    pub point: Point,
    pub chart: usize,
    /// Local coordinates are exchanged (the curve is the line `x = const` in this chart).
    pub swapped: bool,
    /// `F` dehomogenized in `chart`, translated to the origin, over the point's field.
    pub local: BiPoly,
    pub places: Vec<Arc<Place>>,
}

/// A closed place, stored through one representative geometric branch.
pub struct Place {
    curve_id: u64,
    key: PlaceKey,
    base: Field,
    chart: usize,
    swapped: bool,
    curve_degree: u32,
    prec_cap: usize,
    ram_index: usize,
    transform: BranchTransform,
    param: Mutex<Option<(TruncSeries, TruncSeries)>>,
    factor: Mutex<Option<SeriesPoly>>,
}

impl Curve {
    pub fn new(f: TriHomog) -> Result<Curve> {
        Curve::with_config(f, CurveConfig::default())
    }

    /// Builds the curve after a necessary-only reducedness check: some line
    /// section must be squarefree of full degree.
    pub fn with_config(f: TriHomog, cfg: CurveConfig) -> Result<Curve> {
        if f.is_zero() || f.degree() == 0 {
            return Err(Error::PreconditionViolated("curve polynomial must be nonconstant".into()));
        }
        let d = f.degree() as usize;
        let cap = cfg.prec_cap.unwrap_or(8 * d * d + 64);
        let f = f.monic();
        line_section_check(&f, cfg.seed)?;
        Ok(Curve(Arc::new(CurveData {
            id: NEXT_CURVE_ID.fetch_add(1, Ordering::Relaxed),
            f,
            seed: cfg.seed,
            prec_cap: cap,
            centers: Mutex::new(BTreeMap::new()),
        })))
    }

    pub fn polynomial(&self) -> &TriHomog {
        &self.0.f
    }

    pub fn field(&self) -> Field {
        self.0.f.field()
    }

    pub fn degree(&self) -> u32 {
        self.0.f.degree()
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn seed(&self) -> u64 {
        self.0.seed
    }

    pub fn prec_cap(&self) -> usize {
        self.0.prec_cap
    }

    /// `F(P) = 0`, with `P` over any extension of `K`.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        let fl = self.0.f.map_with(p.field(), |c| embed(c, p.field()).expect("base field embeds"));
        if !self.field().divides(p.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(fl.eval(p.coords()).is_zero())
    }

    /// Local analysis at the closed point of `p`, computed once and cached.
    pub fn center(&self, p: &Point) -> Result<Arc<Center>> {
        let base = self.field();
        let lifted = if base.divides(p.field()) { p.clone() } else { p.embed(p.field().compositum(base)?)? };
        let rep = lifted.closed_rep(base)?;
        if let Some(c) = self.0.centers.lock().unwrap().get(&rep) {
            return Ok(c.clone());
        }
        if !self.contains(&rep)? {
            return Err(Error::CenterNotOnCurve);
        }
        let c = Arc::new(self.build_center(rep.clone())?);
        Ok(self.0.centers.lock().unwrap().entry(rep).or_insert(c).clone())
    }

    pub fn places_at(&self, p: &Point) -> Result<Vec<Arc<Place>>> {
        Ok(self.center(p)?.places.clone())
    }

    pub fn place(&self, key: &PlaceKey) -> Result<Arc<Place>> {
        let c = self.center(&key.center)?;
        c.places
            .get(key.branch)
            .cloned()
            .ok_or_else(|| Error::PreconditionViolated(format!("no branch {} at {}", key.branch, key.center)))
    }

    fn build_center(&self, point: Point) -> Result<Center> {
        let lf = point.field();
        let chart = point.chart();
        let (ia, ib) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let fl = self.0.f.map_with(lf, |c| embed(c, lf).expect("base field embeds"));
        let mut local = fl.dehomogenize(chart).translate(&point.coords()[ia], &point.coords()[ib]);
        if !local.coeff(0, 0).is_zero() {
            return Err(Error::CenterNotOnCurve);
        }
        let swapped = local.terms().all(|(&(i, _), _)| i > 0);
        if swapped {
            local = local.swap();
        }
        let raw = resolve(&local, self.0.prec_cap, self.0.seed)?;
        let d = self.degree() as usize;
        let p0 = 2 * d + 4;
        let mut built = Vec::new();
        for tr in raw {
            let (a, _) = replay(&tr, p0)?;
            let n = a.valuation().ok_or_else(|| Error::Internal("x vanishes on a branch".into()))?;
            let mut pl = Place {
                curve_id: self.0.id,
                key: PlaceKey { center: point.clone(), branch: 0 },
                base: self.field(),
                chart,
                swapped,
                curve_degree: self.degree(),
                prec_cap: self.0.prec_cap,
                ram_index: n,
                transform: tr,
                param: Mutex::new(None),
                factor: Mutex::new(None),
            };
            let (phi, psi) = pl.parametrize(p0)?;
            let sort_key = (n, psi.coeffs().to_vec(), phi.coeffs().to_vec(), pl.transform.steps.clone());
            pl.param = Mutex::new(None);
            built.push((sort_key, pl));
        }
        built.sort_by(|a, b| a.0.cmp(&b.0));
        let places = built
            .into_iter()
            .enumerate()
            .map(|(i, (_, mut pl))| {
                pl.key.branch = i;
                Arc::new(pl)
            })
            .collect();
        Ok(Center { point, chart, swapped, local, places })
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve({} over {})", self.0.f, self.field().name())
    }
}

fn line_section_check(f: &TriHomog, seed: u64) -> Result<()> {
    let base = f.field();
    let d = f.degree() as usize;
    // a field with comfortably more elements than the degree squared
    let mut w = base;
    while w.order_u128().is_some_and(|q| q < (4 * d * d + 8) as u128) {
        w = w.extend(2);
    }
    let fw = f.map_with(w, |c| embed(c, w).expect("base field embeds"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_11e5);
    for _ in 0..12 {
        // restrict to the line through p with direction q: F(t q + p)
        let q: Vec<Elem> = (0..3).map(|_| Elem::random(w, &mut rng)).collect();
        let p: Vec<Elem> = (0..3).map(|_| Elem::random(w, &mut rng)).collect();
        let z = Elem::zero(w);
        let m = [
            [q[0].clone(), z.clone(), p[0].clone()],
            [q[1].clone(), z.clone(), p[1].clone()],
            [q[2].clone(), z.clone(), p[2].clone()],
        ];
        let h = fw.linear_subst(&m).dehomogenize(2).coeff_y(0);
        if h.degree() == Some(d) && h.gcd(&h.derivative()).degree() == Some(0) {
            return Ok(());
        }
    }
    Err(Error::CurveNotIrreducible("every sampled line section has a repeated root".into()))
}

impl Place {
    pub fn key(&self) -> &PlaceKey {
        &self.key
    }

    pub fn curve_id(&self) -> u64 {
        self.curve_id
    }

    pub fn center(&self) -> &Point {
        &self.key.center
    }

    pub fn branch_index(&self) -> usize {
        self.key.branch
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// Field of definition of the representative branch.
    pub fn field(&self) -> Field {
        self.transform.field()
    }

    /// Degree of the closed place over `K`.
    pub fn degree(&self) -> usize {
        self.field().degree() / self.base.degree()
    }

    pub fn base_field(&self) -> Field {
        self.base
    }

    /// Ramification index over the local `x` coordinate.
    pub fn ram_index(&self) -> usize {
        self.ram_index
    }

    pub fn transform(&self) -> &BranchTransform {
        &self.transform
    }

    pub fn is_tame(&self) -> bool {
        (self.ram_index as u64) % self.field().p() != 0
    }

    /// `A` dehomogenized in the center's chart and translated to the origin,
    /// in the local coordinates of the branch, over [`field`](Self::field).
    pub fn local_poly(&self, a: &TriHomog) -> Result<BiPoly> {
        let m = self.field();
        if !a.field().divides(m) {
            return Err(Error::FieldMismatch);
        }
        let am = a.map_with(m, |c| embed(c, m).expect("subfield embeds"));
        let (ia, ib) = match self.chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let c = self.key.center.coords();
        let mut l = am.dehomogenize(self.chart).translate(&embed(&c[ia], m)?, &embed(&c[ib], m)?);
        if self.swapped {
            l = l.swap();
        }
        Ok(l)
    }

    /// `(phi, psi)` with `x = phi(tau)`, `y = psi(tau)` in local coordinates,
    /// to precision `prec`. Tame branches have `phi = c tau^n` exactly.
    pub fn parametrize(&self, prec: usize) -> Result<(TruncSeries, TruncSeries)> {
        if prec > self.prec_cap * self.ram_index.max(1) + 8 {
            return Err(Error::PrecisionExhausted(format!("tau-precision {prec} exceeds the cap")));
        }
        let mut cache = self.param.lock().unwrap();
        if let Some((a, b)) = cache.as_ref() {
            if a.prec() >= prec {
                return Ok((a.truncate(prec), b.truncate(prec)));
            }
        }
        let target = cache.as_ref().map_or(prec, |(a, _)| prec.max(2 * a.prec()));
        let n = self.ram_index;
        let (a, b) = if self.is_tame() {
            let (a, b) = replay(&self.transform, target + n)?;
            let (a, b) = tame_normalize(&a, &b, n)?;
            (a.truncate(target), b.truncate(target))
        } else {
            replay(&self.transform, target)?
        };
        *cache = Some((a.clone(), b.clone()));
        Ok((a.truncate(prec), b.truncate(prec)))
    }

    /// The monic irreducible factor of the local equation in `M[[x]][y]`
    /// belonging to this branch, modulo `x^xprec`. It is the characteristic
    /// polynomial of multiplication by `psi` on `M((tau))` over `M((phi))`.
    pub fn local_factor(&self, xprec: usize) -> Result<SeriesPoly> {
        {
            let cache = self.factor.lock().unwrap();
            if let Some(f) = cache.as_ref() {
                if f.prec() >= xprec {
                    return Ok(f.with_prec(xprec));
                }
            }
        }
        let m = self.field();
        let n = self.ram_index;
        let big = n * xprec;
        let (phi, psi) = self.parametrize(big.max(n + 1))?;
        let lc = phi.coeff(n).clone();
        let (phi, psi) = (phi.truncate(big), psi.truncate(big));
        let lc_inv = lc.inv()?;
        let mut pows = vec![TruncSeries::one(m, big)];
        for e in 1..xprec {
            pows.push(pows[e - 1].mul(&phi));
        }
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let mut r = psi.shift_up(i).truncate(big);
            let mut a = vec![vec![Elem::zero(m); xprec]; n];
            for pos in 0..big {
                let c = r.coeff(pos).clone();
                if c.is_zero() {
                    continue;
                }
                let (k, e) = (pos % n, pos / n);
                let coef = &c * &lc_inv.pow(e as u64);
                a[k][e] = &a[k][e] + &coef;
                r = r.sub(&pows[e].shift_up(k).truncate(big).scale(&coef));
            }
            cols.push(a.into_iter().map(|v| TruncSeries::new(m, v, xprec)).collect::<Vec<_>>());
        }
        let mat: Vec<Vec<TruncSeries>> = (0..n).map(|k| (0..n).map(|i| cols[i][k].clone()).collect()).collect();
        let cp = berkowitz(&mat, &TruncSeries::one(m, xprec));
        let coeffs: Vec<TruncSeries> = (0..=n).map(|j| cp[n - j].clone()).collect();
        let f = SeriesPoly::new(m, coeffs, xprec);
        *self.factor.lock().unwrap() = Some(f.clone());
        Ok(f)
    }

    fn bezout_bound(&self, a: &TriHomog) -> usize {
        (a.degree() * self.curve_degree) as usize
    }

    /// `val_tau` of a local polynomial, certified up to `bound`; larger means infinite.
    pub fn local_valuation_param(&self, a: &BiPoly, bound: usize) -> Result<Val> {
        if a.is_zero() {
            return Ok(Val::Infinite);
        }
        let mut prec = (bound + 1).min(16);
        loop {
            let (phi, psi) = self.parametrize(prec)?;
            let v = a.eval_series(&phi, &psi);
            if let Some(k) = v.valuation() {
                return Ok(Val::Finite(k as i64));
            }
            if prec > bound {
                return Ok(Val::Infinite);
            }
            prec = (2 * prec).min(bound + 1);
        }
    }

    /// `val_x Res_y(f_i, a)` for a local polynomial, certified up to `bound`.
    pub fn local_valuation_resultant(&self, a: &BiPoly, bound: usize) -> Result<Val> {
        if a.is_zero() {
            return Ok(Val::Infinite);
        }
        let mut prec = (bound + 1).min(8);
        loop {
            let f = self.local_factor(prec)?;
            let r = resultant_series(&f, &a.to_series_poly(prec))?;
            if let Some(k) = r.valuation() {
                return Ok(Val::Finite(k as i64));
            }
            if prec > bound {
                return Ok(Val::Infinite);
            }
            prec = (2 * prec).min(bound + 1);
        }
    }

    /// The canonical valuation `w(A) = val_x Res_y(f_i, A)`.
    pub fn valuation(&self, a: &TriHomog) -> Result<Val> {
        let l = self.local_poly(a)?;
        self.local_valuation_resultant(&l, self.bezout_bound(a))
    }

    /// `val_tau A(phi, psi)`; agrees with [`valuation`](Self::valuation).
    pub fn valuation_param(&self, a: &TriHomog) -> Result<Val> {
        let l = self.local_poly(a)?;
        self.local_valuation_param(&l, self.bezout_bound(a))
    }

    /// Conjugate representatives: the geometric branches of this closed place.
    pub fn conjugate_params(&self, prec: usize) -> Result<Vec<(TruncSeries, TruncSeries)>> {
        let (phi, psi) = self.parametrize(prec)?;
        let k = self.base.degree();
        Ok((0..self.degree())
            .map(|j| {
                let fr = |s: &TruncSeries| s.map_with(s.field(), |c| c.frobenius(j * k));
                (fr(&phi), fr(&psi))
            })
            .collect())
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({}, e={}, over {})", self.key, self.ram_index, self.field().name())
    }
}

/// `(phi, psi)` of a place to precision `prec`.
pub fn parametrize(place: &Place, prec: usize) -> Result<(TruncSeries, TruncSeries)> {
    place.parametrize(prec)
}

/// `w(A)` computed through the resultant with the local factor.
pub fn place_valuation(place: &Place, a: &TriHomog) -> Result<Val> {
    place.valuation(a)
}

/// `w(A)` computed through the parametrization.
pub fn valuation_via_parametrization(place: &Place, a: &TriHomog) -> Result<Val> {
    place.valuation_param(a)
}

#[cfg(test)]
mod tests;
