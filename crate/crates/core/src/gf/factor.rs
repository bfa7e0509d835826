use super::{embed, Elem, Field};
use crate::error::{Error, Result};
use crate::polyring::UniPoly;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_univariate(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    factor_univariate_seeded(f, 0)
}

/// As [`factor_univariate`], with an explicit seed for the equal-degree splitting.
/// The result does not depend on the seed.
pub fn factor_univariate_seeded(f: &UniPoly, seed: u64) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: BTreeMap<UniPoly, usize> = BTreeMap::new();
    for (g, e) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                *out.entry(irr).or_insert(0) += e;
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// All roots of `f` in `target` with multiplicity, sorted.
pub fn find_roots(f: &UniPoly, target: Field) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = UniPoly::new(
        target,
        f.coeffs().iter().map(|c| embed(c, target)).collect::<Result<Vec<_>>>()?,
    );
    let mut roots = Vec::new();
    for (h, e) in factor_univariate(&g)? {
        if h.degree() == Some(1) {
            for _ in 0..e {
                roots.push(h.coeff(0).neg());
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Distinct roots of `f` in its own coefficient field, sorted.
pub fn roots_in_field(f: &UniPoly, seed: u64) -> Vec<Elem> {
    let field = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let f = f.monic();
    let x = UniPoly::x(field);
    let xq = x.pow_mod(&field.order(), &f);
    let g = (&xq - &x).gcd(&f);
    if g.degree() == Some(0) {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<Elem> =
        equal_degree(&g, 1, &mut rng).into_iter().map(|h| h.coeff(0).neg()).collect();
    roots.sort();
    roots
}

fn pth_root_poly(f: &UniPoly) -> UniPoly {
    let p = f.field().p() as usize;
    let c: Vec<Elem> = f.coeffs().iter().step_by(p).map(|e| e.pth_root()).collect();
    UniPoly::new(f.field(), c)
}

/// Squarefree decomposition of a monic polynomial.
fn squarefree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        let p = f.field().p() as usize;
        for (g, m) in squarefree(&pth_root_poly(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.degree() != Some(0) {
        let p = f.field().p() as usize;
        for (g, m) in squarefree(&pth_root_poly(&c)) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial by the degree of its irreducible factors.
fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let q = field.order();
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&q, &rest);
        let g = (&h - &x).gcd(&rest);
        if g.degree() != Some(0) {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.p();
    loop {
        let a = UniPoly::new(field, (0..n).map(|_| Elem::random(field, rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map to GF(2): a + a^2 + ... + a^(2^(k d - 1))
            let m = field.degree() * d;
            let mut acc = a.clone();
            let mut t = a.clone();
            for _ in 1..m {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            let e = (field.order().pow(d as u32) - BigUint::from(1u32)) / BigUint::from(2u32);
            &a.pow_mod(&e, f) - &UniPoly::one(field)
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&f.div_exact(&g), d, rng));
            out.sort();
            return out;
        }
    }
}
