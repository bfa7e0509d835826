//! Bases of Riemann-Roch spaces by the Brill-Noether method, and closed
//! forms for the projective line.

use crate::divisors::{adjoint_divisor, global_divisor, places_of, Divisor};
use crate::error::{Error, Result};
use crate::gf::{embed, embedding, Elem, Field};
use crate::linalg::{canonical_basis, Matrix};
use crate::places::{Curve, Place, PlaceKey};
use crate::polyring::{monomials, TriHomog, UniPoly};
use std::collections::BTreeSet;

/// `val_tau(G(phi, psi)) >= m` as `m` rows over the place's field: row `k`
/// holds the `tau^k` coefficient of every degree-`d` monomial, dehomogenized
/// in the chart of the center.
pub fn vanishing_conditions(place: &Place, m: usize, d: u32) -> Result<Vec<Vec<Elem>>> {
    let mf = place.field();
    if m == 0 {
        return Ok(vec![]);
    }
    let (phi, psi) = place.parametrize(m)?;
    let one = Elem::one(place.base_field());
    let mut rows = vec![Vec::new(); m];
    for e in monomials(d) {
        let s = place.local_poly(&TriHomog::monomial(one.clone(), e))?.eval_series(&phi, &psi);
        for (k, row) in rows.iter_mut().enumerate() {
            row.push(if k < s.prec() { s.coeff(k).clone() } else { Elem::zero(mf) });
        }
    }
    Ok(rows)
}

/// Conditions of one closed place, over the base field: the rows of all
/// conjugate branches span a Galois-stable space whose reduced echelon form
/// has entries in the base field.
fn descended_rows(place: &Place, m: usize, d: u32) -> Result<Vec<Vec<Elem>>> {
    let base = place.base_field();
    let mf = place.field();
    let rows = vanishing_conditions(place, m, d)?;
    let step = base.degree();
    let mut all = Vec::with_capacity(rows.len() * place.degree());
    for j in 0..place.degree() {
        for r in &rows {
            all.push(r.iter().map(|e| e.frobenius(j * step)).collect());
        }
    }
    let n = monomials(d).len();
    let emb = embedding(base, mf, base.prime_field())?;
    canonical_basis(mf, n, all)
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|e| emb.preimage(e).ok_or_else(|| Error::Internal("condition row is not Galois-stable".into())))
                .collect()
        })
        .collect()
}

/// One block of rows, all coming from a single closed place.
#[derive(Clone, Debug)]
pub struct ConditionBlock {
    pub place: PlaceKey,
    /// Required order `m` at the representative branch.
    pub order: usize,
    pub rows: Vec<Vec<Elem>>,
}

/// Linear conditions `Div(G) >= E` on forms `G` of degree `d`, over the base field.
#[derive(Clone, Debug)]
pub struct LinearConditionSystem {
    pub degree: u32,
    pub field: Field,
    pub blocks: Vec<ConditionBlock>,
}

impl LinearConditionSystem {
    pub fn build(curve: &Curve, e: &Divisor, d: u32) -> Result<LinearConditionSystem> {
        if !e.is_effective() {
            return Err(Error::PreconditionViolated("condition divisor must be effective".into()));
        }
        let mut blocks = Vec::new();
        for (pl, c) in places_of(curve, e)? {
            let m = c as usize;
            blocks.push(ConditionBlock { place: pl.key().clone(), order: m, rows: descended_rows(&pl, m, d)? });
        }
        Ok(LinearConditionSystem { degree: d, field: curve.field(), blocks })
    }

    pub fn unknowns(&self) -> usize {
        monomials(self.degree).len()
    }

    pub fn matrix(&self) -> Matrix {
        let mut m = Matrix::with_cols(self.field, self.unknowns());
        for b in &self.blocks {
            for r in &b.rows {
                m.push_row(r.clone());
            }
        }
        m
    }

    /// Canonical basis of the solution space.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        self.matrix().kernel()
    }

    /// Row values at `g`; all zero exactly when `g` satisfies the system.
    pub fn residuals(&self, g: &TriHomog) -> Vec<Elem> {
        self.matrix().mul_vec(&g.to_vector())
    }
}

fn binom2(d: u32) -> i64 {
    ((d as i64 + 2) * (d as i64 + 1)) / 2
}

/// A form `H` prime to `F` with `Div(H) >= D+ + A`, of least degree.
pub fn find_denominator(curve: &Curve, d: &Divisor) -> Result<TriHomog> {
    find_denominator_with(curve, d, &adjoint_divisor(curve)?)
}

pub fn find_denominator_with(curve: &Curve, d: &Divisor, adjoint: &Divisor) -> Result<TriHomog> {
    let target = d.positive_part().add(adjoint)?;
    let n = target.degree();
    let f = curve.polynomial();
    // beyond this degree the solutions outnumber the multiples of F
    let delta = curve.degree();
    let quotient_dim = |d: u32| binom2(d) - if d >= delta { binom2(d - delta) } else { 0 };
    let mut bound = 0;
    while quotient_dim(bound) <= n {
        bound += 1;
    }
    for deg in 0..=bound {
        let sys = LinearConditionSystem::build(curve, &target, deg)?;
        let Some(v) = sys.kernel().into_iter().map(|v| TriHomog::from_vector(curve.field(), deg, &v)).find(|h| h.div_exact(f).is_none()) else {
            continue;
        };
        if !target.leq(&global_divisor(curve, &v)?)? {
            return Err(Error::Internal("denominator fails its divisor condition".into()));
        }
        return Ok(v);
    }
    Err(Error::Internal("no denominator found below the dimension bound".into()))
}

/// `G_1 / H, ..., G_l / H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBasis {
    pub h: TriHomog,
    pub numerators: Vec<TriHomog>,
}

impl RRBasis {
    pub fn ell(&self) -> usize {
        self.numerators.len()
    }
}

/// Coefficient vectors of `F * mu` for monomials `mu` of degree `deg H - deg F`.
fn multiples_of_f(f: &TriHomog, d: u32) -> Vec<Vec<Elem>> {
    if d < f.degree() {
        return vec![];
    }
    let one = Elem::one(f.field());
    monomials(d - f.degree()).into_iter().map(|e| f.mul(&TriHomog::monomial(one.clone(), e)).to_vector()).collect()
}

/// Reduces `v` modulo a reduced echelon basis.
fn reduce(v: &[Elem], echelon: &[Vec<Elem>]) -> Vec<Elem> {
    let mut v = v.to_vec();
    for r in echelon {
        let p = r.iter().position(|e| !e.is_zero()).unwrap();
        if !v[p].is_zero() {
            let c = v[p].clone();
            for (a, b) in v.iter_mut().zip(r) {
                *a = &*a - &(&c * b);
            }
        }
    }
    v
}

/// A basis of `L(D)`.
pub fn rr_basis(curve: &Curve, d: &Divisor) -> Result<RRBasis> {
    if d.curve_id() != curve.id() {
        return Err(Error::CurveMismatch);
    }
    let field = curve.field();
    if d.degree() < 0 {
        return Ok(RRBasis { h: TriHomog::constant(Elem::one(field)), numerators: vec![] });
    }
    let adjoint = adjoint_divisor(curve)?;
    let h = find_denominator_with(curve, d, &adjoint)?;
    let e = global_divisor(curve, &h)?.sub(d)?;
    if !e.is_effective() {
        return Err(Error::Internal("Div(H) - D is not effective".into()));
    }
    let sys = LinearConditionSystem::build(curve, &e, h.degree())?;
    let n = sys.unknowns();
    let fmult = canonical_basis(field, n, multiples_of_f(curve.polynomial(), h.degree()));
    let reduced: Vec<Vec<Elem>> =
        sys.kernel().iter().map(|v| reduce(v, &fmult)).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
    let numerators: Vec<TriHomog> =
        canonical_basis(field, n, reduced).iter().map(|v| TriHomog::from_vector(field, h.degree(), v)).collect();
    for g in &numerators {
        if !e.leq(&global_divisor(curve, g)?)? {
            return Err(Error::Internal("numerator fails Div(G) >= Div(H) - D".into()));
        }
    }
    Ok(RRBasis { h, numerators })
}

/// Outcome of [`verify_basis`]; empty `violations` means every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Div(G_i / H) >= -D` for every numerator and independence modulo `F`.
pub fn verify_basis(curve: &Curve, d: &Divisor, basis: &RRBasis) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let divh = match global_divisor(curve, &basis.h) {
        Ok(x) => x,
        Err(e) => {
            rep.violations.push(format!("denominator: {e}"));
            return rep;
        }
    };
    for (i, g) in basis.numerators.iter().enumerate() {
        if g.degree() != basis.h.degree() {
            rep.violations.push(format!("G{i}: degree differs from H"));
            continue;
        }
        match global_divisor(curve, g).and_then(|dg| dg.sub(&divh)?.add(d)) {
            Ok(x) if x.is_effective() => {}
            Ok(x) => rep.violations.push(format!("G{i}: Div(G/H) + D = {x} is not effective")),
            Err(e) => rep.violations.push(format!("G{i}: {e}")),
        }
    }
    if !basis.numerators.is_empty() {
        let f = curve.polynomial();
        let fm = multiples_of_f(f, basis.h.degree());
        let k = fm.len();
        let mut rows = fm;
        rows.extend(basis.numerators.iter().map(|g| g.to_vector()));
        let rank = Matrix::from_rows(curve.field(), rows).rank();
        if rank != k + basis.numerators.len() {
            rep.violations.push(format!(
                "numerators are dependent modulo F: rank {} for {} vectors",
                rank - k,
                basis.numerators.len()
            ));
        }
    }
    rep
}

/// Basis `g_1 / h, ..., g_l / h` of `L(D)` on the affine line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBasis<P> {
    pub h: P,
    pub numerators: Vec<P>,
}

/// Closed form for `{(alpha_i, m_i)}` on the affine line, with `deg g <= deg h`.
pub fn rr_line_affine(field: Field, spec: &[(Elem, i64)]) -> Result<LineBasis<UniPoly>> {
    let mut seen = BTreeSet::new();
    for (a, _) in spec {
        if !seen.insert(embed(a, field)?) {
            return Err(Error::DuplicatePoints);
        }
    }
    let lin = |a: &Elem| UniPoly::linear(&embed(a, field).unwrap());
    let mut h = UniPoly::one(field);
    let mut g1 = UniPoly::one(field);
    for (a, m) in spec {
        if *m > 0 {
            h = &h * &lin(a).pow(*m as u64);
        } else if *m < 0 {
            g1 = &g1 * &lin(a).pow((-*m) as u64);
        }
    }
    let ell = 1 + spec.iter().map(|(_, m)| m).sum::<i64>();
    let numerators = (0..ell.max(0) as usize).map(|i| g1.shift(i)).collect();
    Ok(LineBasis { h, numerators })
}

/// Normalizes `(a : b)` so that its last nonzero coordinate is 1.
fn normalize_p1(p: &(Elem, Elem), field: Field) -> Result<(Elem, Elem)> {
    let (a, b) = (embed(&p.0, field)?, embed(&p.1, field)?);
    if b.is_zero() {
        if a.is_zero() {
            return Err(Error::PreconditionViolated("(0:0) is not a point".into()));
        }
        return Ok((Elem::one(field), b));
    }
    Ok((a.div(&b)?, Elem::one(field)))
}

/// Closed form for `{((a_i : b_i), m_i)}` on the projective line, as forms in
/// `x, z` inside `k[x, y, z]`.
pub fn rr_line_projective(field: Field, spec: &[((Elem, Elem), i64)]) -> Result<LineBasis<TriHomog>> {
    let mut pts = Vec::new();
    let mut seen = BTreeSet::new();
    for (p, m) in spec {
        let q = normalize_p1(p, field)?;
        if !seen.insert(q.clone()) {
            return Err(Error::DuplicatePoints);
        }
        pts.push((q, *m));
    }
    let one = Elem::one(field);
    // the form vanishing at (a : b): b x - a z, or z for the point at infinity
    let form = |(a, b): &(Elem, Elem)| -> TriHomog {
        let x = TriHomog::monomial(b.clone(), [1, 0, 0]);
        let z = TriHomog::monomial(a.neg(), [0, 0, 1]);
        if b.is_zero() {
            TriHomog::var(field, 2)
        } else {
            x.add(&z).unwrap()
        }
    };
    let mut h = TriHomog::constant(one.clone());
    let mut g1 = TriHomog::constant(one.clone());
    for (q, m) in &pts {
        if *m > 0 {
            h = h.mul(&form(q).pow(*m as u32));
        } else if *m < 0 {
            g1 = g1.mul(&form(q).pow((-*m) as u32));
        }
    }
    let ell = 1 + pts.iter().map(|(_, m)| m).sum::<i64>();
    let numerators = if ell <= 0 {
        vec![]
    } else {
        let r = (ell - 1) as u32;
        (0..=r).rev().map(|i| g1.mul(&TriHomog::monomial(one.clone(), [i, 0, r - i]))).collect()
    };
    Ok(LineBasis { h, numerators })
}
