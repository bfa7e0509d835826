//! Resolution of a plane branch by point blow-ups, and power-series
//! parametrization of the resolved smooth branch.

use crate::error::{Error, Result};
use crate::gf::{embed, embedding, factor_univariate, roots_in_field, Elem, Field};
use crate::polyring::{BiPoly, TruncSeries, UniPoly};

/// One blow-up of the origin, followed by recentering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlowStep {
    /// `y := x (z + root)`; new coordinates `(x, z)`.
    Chart(Elem),
    /// `x := w y`; new coordinates `(w, y)`.
    Vertical,
}

/// Which coordinate of the resolved smooth equation is the uniformizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Uniformizer {
    First,
    Second,
}

/// Replayable chain from the centered local equation to a smooth one.
#[derive(Clone, Debug)]
pub struct BranchTransform {
    pub steps: Vec<BlowStep>,
    /// Strict transform, smooth at the origin.
    pub resolved: BiPoly,
    pub uniformizer: Uniformizer,
}

impl BranchTransform {
    pub fn field(&self) -> Field {
        self.resolved.field()
    }
}

/// Splits the branches of `f` at the origin. `f(0, 0) = 0` is required.
pub fn resolve(f: &BiPoly, max_depth: usize, seed: u64) -> Result<Vec<BranchTransform>> {
    let mut out = Vec::new();
    resolve_rec(f.clone(), Vec::new(), max_depth, seed, &mut out)?;
    Ok(out)
}

fn resolve_rec(f: BiPoly, steps: Vec<BlowStep>, max_depth: usize, seed: u64, out: &mut Vec<BranchTransform>) -> Result<()> {
    let r = f.ord().ok_or(Error::ZeroPolynomial)?;
    if r == 0 {
        return Err(Error::CenterNotOnCurve);
    }
    if r == 1 {
        let uniformizer = if f.coeff(0, 1).is_zero() { Uniformizer::Second } else { Uniformizer::First };
        out.push(BranchTransform { steps, resolved: f, uniformizer });
        return Ok(());
    }
    if steps.len() >= max_depth {
        return Err(Error::PrecisionExhausted(format!("branch not resolved after {max_depth} blow-ups")));
    }
    let field = f.field();
    let cone = f.homogeneous_part(r);
    let q = UniPoly::new(field, (0..=r).map(|j| cone.coeff(r - j, j)).collect());
    if q.degree().unwrap_or(0) > 0 {
        for (fac, _) in factor_univariate(&q)? {
            let big = field.extend(fac.degree().unwrap());
            let emb = embedding(field, big, field.prime_field())?;
            let root = roots_in_field(&fac.map(&emb), seed).into_iter().next().ok_or_else(|| Error::Internal("irreducible factor without root".into()))?;
            let fm = f.map(&emb);
            let ys = BiPoly::x(big).mul(&BiPoly::constant(root.clone()).add(&BiPoly::y(big)));
            let f1 = fm.substitute(&BiPoly::x(big), &ys).div_x_pow(r)?;
            let mut s = steps.clone();
            s.push(BlowStep::Chart(root));
            resolve_rec(f1, s, max_depth, seed, out)?;
        }
    }
    if cone.coeff(0, r).is_zero() {
        let xs = BiPoly::x(field).mul(&BiPoly::y(field));
        let f2 = f.substitute(&xs, &BiPoly::y(field)).swap().div_x_pow(r)?.swap();
        let mut s = steps;
        s.push(BlowStep::Vertical);
        resolve_rec(f2, s, max_depth, seed, out)?;
    }
    Ok(())
}

/// Solves `g(t, Y) = 0` for `Y` with `Y(0) = 0`, given `g_Y(0, 0) != 0`.
fn implicit(g: &BiPoly, prec: usize) -> Result<TruncSeries> {
    let field = g.field();
    let t = TruncSeries::var(field, prec);
    let gy = g.derivative_y();
    let mut y = TruncSeries::zero(field, prec);
    // Newton iteration: the number of correct terms doubles each round.
    for _ in 0..(2 * usize::BITS - prec.leading_zeros() + 4) {
        let v = g.eval_series(&t, &y);
        if v.is_zero() {
            return Ok(y);
        }
        let d = gy.eval_series(&t, &y);
        y = y.sub(&v.div(&d)?);
    }
    if g.eval_series(&t, &y).is_zero() {
        Ok(y)
    } else {
        Err(Error::Internal("implicit series did not converge".into()))
    }
}

/// `(x(tau), y(tau))` for the resolved branch, to precision `prec`,
/// in the coordinates of the centered local equation.
pub fn replay(tr: &BranchTransform, prec: usize) -> Result<(TruncSeries, TruncSeries)> {
    let field = tr.field();
    let t = TruncSeries::var(field, prec);
    let (mut a, mut b) = match tr.uniformizer {
        Uniformizer::First => (t.clone(), implicit(&tr.resolved, prec)?),
        Uniformizer::Second => (implicit(&tr.resolved.swap(), prec)?, t.clone()),
    };
    for step in tr.steps.iter().rev() {
        match step {
            BlowStep::Chart(root) => {
                let z0 = TruncSeries::constant(embed(root, field)?, prec);
                b = a.mul(&z0.add(&b));
            }
            BlowStep::Vertical => {
                a = a.mul(&b);
            }
        }
    }
    Ok((a, b))
}

/// Rescales `tau` so that `x = c tau^n` exactly; needs `p` not dividing `n`.
/// The result has precision `prec - n + 1`.
pub fn tame_normalize(x: &TruncSeries, y: &TruncSeries, n: usize) -> Result<(TruncSeries, TruncSeries)> {
    let field = x.field();
    let prec = x.prec().min(y.prec());
    if n == 0 || n > prec || (n as u64) % field.p() == 0 {
        return Err(Error::PreconditionViolated("tame normalization needs p not dividing n".into()));
    }
    let c = x.coeff(n).clone();
    let unit = x.shift_down(n)?.scale(&c.inv()?);
    let root = unit.nth_root(n as u64, &Elem::one(field))?;
    // new parameter s = tau * root(tau); invert to express tau in s
    let s = root.shift_up(1).truncate(prec - n + 1);
    let inv = s.reversion()?;
    Ok((x.truncate(prec - n + 1).compose(&inv)?, y.truncate(prec - n + 1).compose(&inv)?))
}
