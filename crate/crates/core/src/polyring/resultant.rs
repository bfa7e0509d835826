use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{det_division_free, Matrix, Ring};
use crate::polyring::{BiPoly, SeriesPoly, TruncSeries, UniPoly};

/// Matrix of `(u, v) -> u f + v g` on `D[y]_{<n} x D[y]_{<m}`, columns
/// `y^k f` (k < n) then `y^k g` (k < m), rows indexed by the power of `y`.
pub fn sylvester<R: Ring>(f: &[R], g: &[R]) -> Vec<Vec<R>> {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let zero = f[0].zero_like();
    let size = m + n;
    let mut a = vec![vec![zero; size]; size];
    for k in 0..n {
        for (i, c) in f.iter().enumerate() {
            a[i + k][k] = c.clone();
        }
    }
    for k in 0..m {
        for (i, c) in g.iter().enumerate() {
            a[i + k][n + k] = c.clone();
        }
    }
    a
}

/// Resultant of two polynomials given by coefficient lists (low degree first,
/// nonzero leading coefficient), computed as a division-free determinant.
pub fn resultant<R: Ring>(f: &[R], g: &[R]) -> R {
    let one = f[0].one_like();
    let s = sylvester(f, g);
    det_division_free(&s, &one)
}

/// `Res_y(f, g)` for bivariate polynomials, as a polynomial in `x`.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let field = f.field();
    if f.is_zero() || g.is_zero() {
        return UniPoly::zero(field);
    }
    resultant(&f.y_coeffs(), &g.y_coeffs())
}

/// `Res_y(f, g)` for truncated series polynomials; the result carries the
/// minimum operand precision.
pub fn resultant_series(f: &SeriesPoly, g: &SeriesPoly) -> Result<TruncSeries> {
    let prec = f.prec().min(g.prec());
    if prec == 0 {
        return Err(Error::PrecisionUnderflow("operands carry no coefficients".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(TruncSeries::zero(f.field(), prec));
    }
    let fc: Vec<TruncSeries> = f.coeffs().iter().map(|c| c.truncate_to(prec)).collect();
    let gc: Vec<TruncSeries> = g.coeffs().iter().map(|c| c.truncate_to(prec)).collect();
    Ok(resultant(&fc, &gc))
}

/// `(Res(f, g), u, v)` with `u f + v g = Res(f, g)`, `deg u < deg g`, `deg v < deg f`.
pub fn resultant_with_cofactors(f: &UniPoly, g: &UniPoly) -> (Elem, UniPoly, UniPoly) {
    let field = f.field();
    let m = f.degree().expect("nonzero f");
    let n = g.degree().expect("nonzero g");
    let s = sylvester(f.coeffs(), g.coeffs());
    let res = det_division_free(&s, &Elem::one(field));
    if res.is_zero() || m + n == 0 {
        return (res, UniPoly::zero(field), UniPoly::zero(field));
    }
    let mut rhs = vec![Elem::zero(field); m + n];
    rhs[0] = res.clone();
    let w = Matrix::from_rows(field, s).solve(&rhs).expect("nonsingular");
    (res, UniPoly::new(field, w[..n].to_vec()), UniPoly::new(field, w[n..].to_vec()))
}
