//! Evaluation codes and threshold secret sharing.

use crate::divisors::Divisor;
use crate::error::{Error, Result};
use crate::gf::{embed, Elem, Field};
use crate::linalg::Matrix;
use crate::places::{Curve, Point};
use crate::riemannroch::{rr_basis, RRBasis};
use rand::Rng;
use std::collections::BTreeSet;
use std::fmt;

/// Row `i` is the evaluation vector of basis element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<Vec<Elem>>,
}

impl GeneratorMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        if self.rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(self.field, self.rows.clone()).rank()
    }

    /// Codeword of a message `m` (one coefficient per row).
    pub fn encode(&self, m: &[Elem]) -> Result<Vec<Elem>> {
        if m.len() != self.rows.len() {
            return Err(Error::PreconditionViolated("message length differs from the dimension".into()));
        }
        Ok((0..self.ncols)
            .map(|j| m.iter().zip(&self.rows).fold(Elem::zero(self.field), |acc, (a, r)| &acc + &(a * &r[j])))
            .collect())
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let s: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

fn distinct(field: Field, xs: &[Elem]) -> Result<Vec<Elem>> {
    let xs: Vec<Elem> = xs.iter().map(|a| embed(a, field)).collect::<Result<_>>()?;
    if xs.iter().collect::<BTreeSet<_>>().len() != xs.len() {
        return Err(Error::DuplicatePoints);
    }
    Ok(xs)
}

/// Reed-Solomon code: row `i` is `(alpha_j^i)_j` for `i < k`.
pub fn rs_generator_matrix(field: Field, k: usize, alphas: &[Elem]) -> Result<GeneratorMatrix> {
    let alphas = distinct(field, alphas)?;
    if k > alphas.len() {
        return Err(Error::KTooLarge);
    }
    let rows = (0..k as u64).map(|i| alphas.iter().map(|a| a.pow(i)).collect()).collect();
    Ok(GeneratorMatrix { field, ncols: alphas.len(), rows })
}

/// Evaluates `G_i / H` at rational points of the curve outside `supp(D)`.
pub fn evaluate_basis(curve: &Curve, d: &Divisor, basis: &RRBasis, points: &[Point]) -> Result<GeneratorMatrix> {
    let k = curve.field();
    let support: BTreeSet<&Point> = d.iter().map(|(p, _, _)| &p.center).collect();
    if points.iter().collect::<BTreeSet<_>>().len() != points.len() {
        return Err(Error::DuplicatePoints);
    }
    let mut cols = Vec::with_capacity(points.len());
    for p in points {
        if p.field() != k {
            return Err(Error::PreconditionViolated(format!("{p} is not rational over {}", k.name())));
        }
        if !curve.contains(p)? {
            return Err(Error::PointNotOnCurve);
        }
        if support.contains(p) {
            return Err(Error::PreconditionViolated(format!("{p} lies in the support of D")));
        }
        let hv = basis.h.eval(p.coords());
        if hv.is_zero() {
            return Err(Error::PointOnDenominator);
        }
        let inv = hv.inv()?;
        cols.push(basis.numerators.iter().map(|g| &g.eval(p.coords()) * &inv).collect::<Vec<_>>());
    }
    let rows = (0..basis.ell()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(GeneratorMatrix { field: k, ncols: points.len(), rows })
}

/// AG code of `L(D)` at the given points.
pub fn ag_generator_matrix(curve: &Curve, d: &Divisor, points: &[Point]) -> Result<GeneratorMatrix> {
    let basis = rr_basis(curve, d)?;
    evaluate_basis(curve, d, &basis, points)
}

/// Shares `(alpha_i, f(alpha_i))` of Shamir's scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShamirShares {
    pub threshold: usize,
    pub shares: Vec<(Elem, Elem)>,
}

/// Shares with an explicit polynomial `f`, listed by ascending coefficients.
pub fn shamir_share_with(f: &[Elem], ids: &[Elem]) -> Result<ShamirShares> {
    let Some(field) = f.first().map(|c| c.field()) else {
        return Err(Error::PreconditionViolated("threshold must be positive".into()));
    };
    let ids = distinct(field, ids)?;
    if ids.iter().any(|a| a.is_zero()) {
        return Err(Error::PreconditionViolated("share identifiers must be nonzero".into()));
    }
    if f.len() > ids.len() {
        return Err(Error::PreconditionViolated("threshold exceeds the number of players".into()));
    }
    let eval = |a: &Elem| f.iter().rev().fold(Elem::zero(field), |acc, c| &(&acc * a) + c);
    Ok(ShamirShares { threshold: f.len(), shares: ids.iter().map(|a| (a.clone(), eval(a))).collect() })
}

/// Draws `f` of degree `< t` with `f(0) = secret` and shares it.
pub fn shamir_share<R: Rng + ?Sized>(secret: &Elem, t: usize, ids: &[Elem], rng: &mut R) -> Result<ShamirShares> {
    if t == 0 {
        return Err(Error::PreconditionViolated("threshold must be positive".into()));
    }
    let field = secret.field();
    let mut f = vec![secret.clone()];
    f.extend((1..t).map(|_| Elem::random(field, rng)));
    shamir_share_with(&f, ids)
}

/// Lagrange interpolation at zero through the first `t` shares.
pub fn shamir_reconstruct(shares: &[(Elem, Elem)], t: usize) -> Result<Elem> {
    if t == 0 {
        return Err(Error::PreconditionViolated("threshold must be positive".into()));
    }
    if shares.len() < t {
        return Err(Error::TooFewShares);
    }
    let use_ = &shares[..t];
    let field = use_[0].0.field();
    let xs: Vec<Elem> = use_.iter().map(|s| s.0.clone()).collect();
    distinct(field, &xs)?;
    let mut acc = Elem::zero(field);
    for (i, (xi, yi)) in use_.iter().enumerate() {
        let mut num = Elem::one(field);
        let mut den = Elem::one(field);
        for (j, (xj, _)) in use_.iter().enumerate() {
            if i != j {
                num = &num * &xj.neg();
                den = &den * &(xi - xj);
            }
        }
        acc = &acc + &(&(yi * &num) * &den.inv()?);
    }
    Ok(acc)
}

/// Secret sharing with `L(D)`: the secret is the value at a reserved point,
/// the shares are the values at the players' points.
#[derive(Clone, Debug)]
pub struct AgScheme {
    pub basis: RRBasis,
    pub secret_point: Point,
    pub players: Vec<Point>,
    /// Evaluation of the basis at the secret point.
    secret_row: Vec<Elem>,
    /// Evaluation matrix at the players, one row per player.
    player_rows: Vec<Vec<Elem>>,
    /// Any `t1` players recover the secret.
    pub t1: usize,
    /// At most `t2` players learn nothing.
    pub t2: usize,
    field: Field,
}

impl AgScheme {
    pub fn new(curve: &Curve, d: &Divisor, secret_point: Point, players: Vec<Point>) -> Result<AgScheme> {
        let basis = rr_basis(curve, d)?;
        let mut all = vec![secret_point.clone()];
        all.extend(players.iter().cloned());
        let g = evaluate_basis(curve, d, &basis, &all)?;
        let col = |j: usize| -> Vec<Elem> { g.rows.iter().map(|r| r[j].clone()).collect() };
        if col(0).iter().all(|e| e.is_zero()) {
            return Err(Error::SingularSystem);
        }
        let genus = crate::divisors::genus(curve)? as i64;
        let deg = d.degree();
        Ok(AgScheme {
            secret_row: col(0),
            player_rows: (1..all.len()).map(col).collect(),
            basis,
            secret_point,
            players,
            t1: (deg + 1).max(0) as usize,
            t2: (deg - 2 * genus).max(0) as usize,
            field: curve.field(),
        })
    }

    pub fn ell(&self) -> usize {
        self.basis.ell()
    }

    /// Shares `(player index, value)` of a random element of `L(D)` taking the
    /// value `secret` at the reserved point.
    pub fn share<R: Rng + ?Sized>(&self, secret: &Elem, rng: &mut R) -> Result<Vec<(usize, Elem)>> {
        let secret = embed(secret, self.field)?;
        let mut c: Vec<Elem> = (0..self.ell()).map(|_| Elem::random(self.field, rng)).collect();
        let k = self.secret_row.iter().position(|e| !e.is_zero()).ok_or(Error::SingularSystem)?;
        let rest = c.iter().zip(&self.secret_row).enumerate().filter(|(i, _)| *i != k).fold(
            Elem::zero(self.field),
            |acc, (_, (a, b))| &acc + &(a * b),
        );
        c[k] = (&secret - &rest).div(&self.secret_row[k])?;
        Ok(self
            .player_rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.iter().zip(&c).fold(Elem::zero(self.field), |acc, (a, b)| &acc + &(a * b))))
            .collect())
    }

    /// Recovers the secret from shares whose evaluation rows have full rank.
    pub fn reconstruct(&self, shares: &[(usize, Elem)]) -> Result<Elem> {
        if shares.len() < self.ell() {
            return Err(Error::TooFewShares);
        }
        let mut rows = Vec::with_capacity(shares.len());
        for (i, _) in shares {
            rows.push(
                self.player_rows
                    .get(*i)
                    .cloned()
                    .ok_or_else(|| Error::PreconditionViolated(format!("no player {i}")))?,
            );
        }
        let m = Matrix::from_rows(self.field, rows);
        if m.rank() < self.ell() {
            return Err(Error::SingularSystem);
        }
        let b: Vec<Elem> = shares.iter().map(|s| s.1.clone()).collect();
        let c = m.solve(&b).ok_or_else(|| Error::PreconditionViolated("shares are inconsistent".into()))?;
        Ok(c.iter().zip(&self.secret_row).fold(Elem::zero(self.field), |acc, (a, b)| &acc + &(a * b)))
    }
}

#[cfg(test)]
mod tests;
