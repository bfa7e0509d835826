use super::{Curve, Place, Point};
use crate::error::{Error, Result};
use crate::gf::{embed, embedding, factor_univariate, Elem};
use crate::lifting::{hensel_weighted, weierstrass};
use crate::newton::WeightedValuation;
use crate::polyring::{BiPoly, SeriesPoly, UniPoly};
use std::sync::Arc;

/// A Hensel factor of the Weierstrass polynomial together with the branches it carries.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub factor: SeriesPoly,
    /// Edge weights and irreducible factor `q(T)`, `T = y^gx / x^gy`, of the
    /// Newton polynomial; `None` for a part whose polygon was not certified.
    pub edge: Option<(WeightedValuation, UniPoly)>,
    pub places: Vec<usize>,
}

/// `F(x, y, 1) = u f_1 ... f_r` around a point, with `f_i` irreducible over
/// the point's field and one closed place per factor.
#[derive(Debug)]
pub struct LocalFactorization {
    pub center: Point,
    pub unit: BiPoly,
    pub weierstrass: SeriesPoly,
    pub factors: Vec<(SeriesPoly, Arc<Place>)>,
    pub clusters: Vec<Cluster>,
    pub xprec: usize,
}

/// Local factorization at `p` modulo `x^xprec`, cross-checked between the
/// Hensel splitting along the Newton polygon and the branch norms.
pub fn local_branches(curve: &Curve, p: &Point, xprec: usize) -> Result<LocalFactorization> {
    if xprec == 0 || xprec > curve.prec_cap() {
        return Err(Error::PrecisionExhausted(format!("x-precision {xprec} outside 1..={}", curve.prec_cap())));
    }
    let center = curve.center(p)?;
    let lf = center.point.field();
    let f = &center.local;
    let n = (0..=f.deg_y().unwrap())
        .find(|&j| !f.coeff(0, j).is_zero())
        .ok_or_else(|| Error::Internal("local equation divisible by x".into()))?;
    let um = weierstrass(f, n, (n as u64) * xprec as u64)?;
    let g = um.g_series().with_prec(xprec);

    let mut factors = Vec::new();
    for pl in &center.places {
        factors.push((closed_factor(pl, lf, xprec)?, pl.clone()));
    }
    let mut prod = SeriesPoly::one(lf, xprec);
    for (fb, _) in &factors {
        prod = prod.mul(fb);
    }
    if prod != g {
        return Err(Error::Internal(format!("branch factors do not reproduce the local equation at {}", center.point)));
    }

    let mut clusters = hensel_clusters(&g)?;
    for pl in &center.places {
        let idx = assign(pl, &clusters)?;
        clusters[idx].places.push(pl.branch_index());
    }
    for c in &clusters {
        if c.places.is_empty() {
            return Err(Error::Internal("Hensel factor without a branch".into()));
        }
        let prec = c.factor.prec();
        let mut prod = SeriesPoly::one(lf, prec);
        for &b in &c.places {
            prod = prod.mul(&factors[b].0.with_prec(prec));
        }
        if prod != c.factor {
            return Err(Error::Internal("Hensel factor differs from its branch norms".into()));
        }
    }
    Ok(LocalFactorization { center: center.point.clone(), unit: um.u, weierstrass: g, factors, clusters, xprec })
}

/// Product of the conjugates of the branch factor over the point's field.
fn closed_factor(pl: &Place, lf: crate::gf::Field, xprec: usize) -> Result<SeriesPoly> {
    let m = pl.field();
    let fb = pl.local_factor(xprec)?;
    let r = m.degree() / lf.degree();
    let mut prod = SeriesPoly::one(m, xprec);
    for j in 0..r {
        let s = j * lf.degree();
        prod = prod.mul(&fb.map_with(m, move |c| c.frobenius(s)));
    }
    let e = embedding(lf, m, m.prime_field())?;
    let back = |c: &Elem| e.preimage(c).unwrap_or_else(|| Elem::zero(lf));
    let bad = prod.coeffs().iter().any(|s| s.coeffs().iter().any(|c| e.preimage(c).is_none()));
    if bad {
        return Err(Error::Internal("norm of a branch factor is not defined over the center field".into()));
    }
    Ok(prod.map_with(lf, back))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Splits a monic `g` along the certified edges of its Newton polygon and
/// the coprime factors of each Newton polynomial.
fn hensel_clusters(g: &SeriesPoly) -> Result<Vec<Cluster>> {
    let field = g.field();
    let mut out = Vec::new();
    let mut rest = g.clone();
    loop {
        let n = rest.ydeg().unwrap();
        if n == 0 {
            break;
        }
        let prec = rest.prec();
        let mut best: Option<(usize, usize)> = None;
        let mut uncertified = Vec::new();
        for j in 0..n {
            match rest.coeff(j).valuation() {
                Some(v) => {
                    let better = match best {
                        None => true,
                        Some((bj, bv)) => v * (n - bj) < bv * (n - j) || (v * (n - bj) == bv * (n - j) && j < bj),
                    };
                    if better {
                        best = Some((j, v));
                    }
                }
                None => uncertified.push(j),
            }
        }
        let certified = best.filter(|&(jl, vl)| uncertified.iter().all(|&j| prec * (n - jl) > vl * (n - j)));
        let Some((jl, vl)) = certified else {
            out.push(Cluster { factor: rest, edge: None, places: vec![] });
            break;
        };
        if vl == 0 {
            return Err(Error::Internal("Weierstrass polynomial is not distinguished".into()));
        }
        let d = gcd(n - jl, vl);
        let w = WeightedValuation::new(((n - jl) / d) as u32, (vl / d) as u32)?;
        let (gx, gy) = (w.gx, w.gy);
        let comp = w.component(&rest.to_bipoly(), gy as u64 * n as u64);
        let phi = comp.swap().div_x_pow(jl as u32)?.swap();
        let (left, right) = if jl == 0 {
            (None, rest.clone())
        } else {
            let yj = BiPoly::monomial(Elem::one(field), 0, jl as u32);
            let lift = hensel_weighted(&rest, &yj, &phi, w, u64::MAX)?;
            (Some(lift.g_series()), lift.h_series())
        };
        // Newton polynomial as a polynomial in T = y^gx / x^gy
        let deg = (n - jl) / gx as usize;
        let q = UniPoly::new(field, (0..=deg).map(|k| phi.coeff(gy * (deg - k) as u32, gx * k as u32)).collect());
        let pieces = factor_univariate(&q)?;
        let homog = |p: &UniPoly| -> BiPoly {
            let dp = p.degree().unwrap();
            BiPoly::from_terms(field, (0..=dp).map(|k| ((gy * (dp - k) as u32, gx * k as u32), p.coeff(k))))
        };
        let mut cur = right;
        for (i, (qi, ei)) in pieces.iter().enumerate() {
            let pi = qi.pow(*ei as u64);
            if i + 1 == pieces.len() {
                out.push(Cluster { factor: cur.clone(), edge: Some((w, qi.clone())), places: vec![] });
                break;
            }
            let others = pieces[i + 1..].iter().fold(UniPoly::one(field), |acc, (qj, ej)| &acc * &qj.pow(*ej as u64));
            let lift = hensel_weighted(&cur, &homog(&pi), &homog(&others), w, u64::MAX)?;
            out.push(Cluster { factor: lift.g_series(), edge: Some((w, qi.clone())), places: vec![] });
            cur = lift.h_series();
        }
        match left {
            Some(l) => rest = l,
            None => break,
        }
    }
    Ok(out)
}

/// Index of the cluster carrying the branch: matched by edge slope and the
/// root `T0 = lc(psi)^gx / lc(phi)^gy` of the Newton polynomial factor.
fn assign(pl: &Place, clusters: &[Cluster]) -> Result<usize> {
    let m = pl.field();
    let n = pl.ram_index();
    let (phi, psi) = pl.parametrize(4 * n + 16)?;
    if let Some(vpsi) = psi.valuation() {
        let d = gcd(n, vpsi);
        let (gx, gy) = ((n / d) as u32, (vpsi / d) as u32);
        let t0 = psi.coeff(vpsi).pow(gx as u64).div(&phi.coeff(n).pow(gy as u64))?;
        for (i, c) in clusters.iter().enumerate() {
            if let Some((w, q)) = &c.edge {
                if (w.gx, w.gy) == (gx, gy) {
                    let qm = UniPoly::new(m, q.coeffs().iter().map(|a| embed(a, m)).collect::<Result<Vec<_>>>()?);
                    if qm.eval(&t0).is_zero() {
                        return Ok(i);
                    }
                }
            }
        }
    }
    clusters
        .iter()
        .position(|c| c.edge.is_none())
        .ok_or_else(|| Error::Internal(format!("branch {} matches no Hensel factor", pl.key())))
}
