//! Hensel-type factorization engines. Every lift advances one
//! quasi-homogeneous slab per step.

use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::newton::{Val, WeightedValuation};
use crate::polyring::{BiPoly, SeriesPoly, UniPoly};

/// `f = u g` with `u` a unit times a monomial and `g` monic in `y`.
#[derive(Clone, Debug)]
pub struct UnitMonic {
    /// Terms of weight below `val(u) + certified_prec`.
    pub u: BiPoly,
    /// Terms of weight below `val(g) + certified_prec`.
    pub g: BiPoly,
    pub weights: WeightedValuation,
    /// Number of slabs of `f` reproduced by `u g`.
    pub certified_prec: u64,
}

/// Monic factors `g, h` with `f = g h`.
#[derive(Clone, Debug)]
pub struct HenselLift {
    pub g: BiPoly,
    pub h: BiPoly,
    pub weights: WeightedValuation,
    pub certified_prec: u64,
}

/// x-adic precision to which a monic factor known to `prec` slabs is certified.
pub fn x_precision(w: WeightedValuation, prec: u64) -> usize {
    (prec + w.gy as u64).div_ceil(w.gx as u64) as usize
}

impl UnitMonic {
    pub fn g_series(&self) -> SeriesPoly {
        monic_to_series(&self.g, self.weights, self.certified_prec)
    }
}

impl HenselLift {
    pub fn g_series(&self) -> SeriesPoly {
        monic_to_series(&self.g, self.weights, self.certified_prec)
    }

    pub fn h_series(&self) -> SeriesPoly {
        monic_to_series(&self.h, self.weights, self.certified_prec)
    }
}

fn monic_to_series(g: &BiPoly, w: WeightedValuation, prec: u64) -> SeriesPoly {
    let n = x_precision(w, prec);
    g.filter(|i, _| (i as usize) < n).to_series_poly(n)
}

/// Component of weight `e` of the product `a b`.
fn product_component(w: WeightedValuation, a: &BiPoly, b: &BiPoly, e: u64) -> BiPoly {
    a.mul_filtered(b, |i, j| w.weight(i, j) == e)
}

fn val_of(w: WeightedValuation, a: &BiPoly) -> Result<u64> {
    match w.val(a) {
        Val::Finite(v) => Ok(v as u64),
        Val::Infinite => Err(Error::ZeroElement),
    }
}

/// Unit times monic factorization of an exact polynomial `f`.
pub fn unit_monic_factor(f: &BiPoly, w: WeightedValuation, prec: u64) -> Result<UnitMonic> {
    if w.gy == 0 {
        return Err(Error::UnboundedInitial);
    }
    let vf = val_of(w, f)?;
    let inf = w.component(f, vf);
    let n = inf.deg_y().unwrap();
    // u1 = c x^m where c x^m y^n is the top term of in(f)
    let top = inf.coeff_y(n);
    let m = top.valuation().unwrap() as u32;
    let c = top.coeff(m as usize);
    let u1 = BiPoly::monomial(c.clone(), m, 0);
    let cinv = c.inv()?;
    let g1 = inf.scale(&cinv).div_x_pow(m).map_err(|_| Error::Internal("initial form not divisible".into()))?;
    let mut u = u1.clone();
    let mut g = g1.clone();
    for k in 1..prec.max(1) {
        let e = vf + k;
        let r = w.component(f, e).sub(&product_component(w, &u, &g, e));
        if r.is_zero() {
            continue;
        }
        let (q, rem) = r.divrem_monic_y(&g1)?;
        // rem = u1 * gt
        let gt = rem.div_x_pow(m).map_err(|_| Error::Internal("remainder not divisible by u1".into()))?.scale(&cinv);
        u = u.add(&q);
        g = g.add(&gt);
    }
    Ok(UnitMonic { u, g, weights: w, certified_prec: prec.max(1) })
}

/// Weierstrass normalization with weights `(n, 1)`.
pub fn weierstrass(f: &BiPoly, n: u32, prec: u64) -> Result<UnitMonic> {
    let ok = (0..=n).all(|i| {
        let v = f.coeff_y(i).valuation();
        if i == n {
            v == Some(0)
        } else {
            v != Some(0)
        }
    });
    if !ok || n == 0 {
        return Err(Error::HypothesisViolated(format!("y-order {n} at x = 0 is not as stated")));
    }
    let w = WeightedValuation::new(n, 1)?;
    unit_monic_factor(f, w, prec)
}

/// Quasi-homogeneous cofactors `(u, v, m)` with `u g1 + v h1 = x^m`.
pub fn bezout_quasi_homogeneous(g1: &BiPoly, h1: &BiPoly, w: WeightedValuation) -> Result<(BiPoly, BiPoly, u32)> {
    let field = g1.field();
    let at_one = |p: &BiPoly| -> UniPoly {
        let mut c = vec![Elem::zero(field); p.deg_y().map_or(0, |d| d as usize + 1)];
        for (&(_, j), v) in p.terms() {
            c[j as usize] = &c[j as usize] + v;
        }
        UniPoly::new(field, c)
    };
    let (d, s, t) = at_one(g1).xgcd(&at_one(h1));
    if !d.is_one() {
        return Err(Error::NotCoprime);
    }
    let vg = val_of(w, g1)?;
    let vh = val_of(w, h1)?;
    let gx = w.gx as u64;
    let need = |p: &UniPoly, base: u64| -> u64 {
        p.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| (base + w.gy as u64 * j as u64).div_ceil(gx))
            .max()
            .unwrap_or(0)
    };
    let m = need(&s, vg).max(need(&t, vh));
    let lift = |p: &UniPoly, base: u64| -> Result<BiPoly> {
        let mut r = BiPoly::zero(field);
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rest = gx * m - base - w.gy as u64 * j as u64;
            if rest % gx != 0 {
                return Err(Error::Internal("cofactor not quasi-homogeneous".into()));
            }
            r.add_term((rest / gx) as u32, j as u32, c.clone());
        }
        Ok(r)
    };
    let u = lift(&s, vg)?;
    let v = lift(&t, vh)?;
    let check = u.mul(g1).add(&v.mul(h1));
    if check != BiPoly::monomial(Elem::one(field), m as u32, 0) {
        return Err(Error::Internal("Bezout identity failed".into()));
    }
    Ok((u, v, m as u32))
}

/// Lifts `in(f) = g1 h1` to `f = g h` with `in(g) = g1`, `in(h) = h1`.
/// The number of slabs is capped by what the precision of `f` certifies.
pub fn hensel_weighted(f: &SeriesPoly, g1: &BiPoly, h1: &BiPoly, w: WeightedValuation, prec: u64) -> Result<HenselLift> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.ydeg().unwrap() as u64;
    let fb = f.to_bipoly();
    let vf = w.val_series(f)?;
    if vf != Val::Finite((w.gy as u64 * n) as i64) {
        return Err(Error::PreconditionViolated("val(f) differs from val(y^n)".into()));
    }
    let vf = w.gy as u64 * n;
    if !w.is_quasi_homogeneous(g1) || !w.is_quasi_homogeneous(h1) {
        return Err(Error::PreconditionViolated("factors are not quasi-homogeneous".into()));
    }
    let monic = |p: &BiPoly| p.deg_y().is_some_and(|d| p.coeff_y(d).is_one());
    if !monic(g1) || !monic(h1) {
        return Err(Error::NotMonic);
    }
    if w.component(&fb, vf) != g1.mul(h1) {
        return Err(Error::PreconditionViolated("in(f) differs from g1 h1".into()));
    }
    let (u, v, m) = bezout_quasi_homogeneous(g1, h1, w)?;
    let available = (w.gx as u64 * f.prec() as u64).saturating_sub(vf);
    let prec = prec.min(available).max(1);
    let mut g = g1.clone();
    let mut h = h1.clone();
    for k in 1..prec {
        let e = vf + k;
        let c = w.component(&fb, e).sub(&product_component(w, &g, &h, e));
        if c.is_zero() {
            continue;
        }
        let gt = v.mul(&c).divrem_monic_y(g1)?.1;
        let ht = u.mul(&c).divrem_monic_y(h1)?.1;
        let gt = gt.div_x_pow(m).map_err(|_| Error::Internal("lift not divisible by x^m".into()))?;
        let ht = ht.div_x_pow(m).map_err(|_| Error::Internal("lift not divisible by x^m".into()))?;
        g = g.add(&gt);
        h = h.add(&ht);
    }
    Ok(HenselLift { g, h, weights: w, certified_prec: prec })
}

/// Classical Hensel lifting modulo `x^prec` of `f(0, y) = g0 h0`.
pub fn hensel_classic(f: &SeriesPoly, g0: &UniPoly, h0: &UniPoly, prec: usize) -> Result<HenselLift> {
    let field = f.field();
    let as_y = |p: &UniPoly| BiPoly::from_terms(field, p.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())));
    let w = WeightedValuation::new(1, 0)?;
    hensel_weighted(f, &as_y(g0), &as_y(h0), w, prec as u64)
}
