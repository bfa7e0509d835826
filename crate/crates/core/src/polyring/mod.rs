//! Polynomials and truncated power series over a [`Field`](crate::gf::Field).

mod bipoly;
mod parse;
mod resultant;
mod series;
mod seriespoly;
mod trihomog;
mod uni;

pub use bipoly::BiPoly;
pub use parse::{parse_bipoly, parse_elem, parse_trihomog, parse_uni};
pub use resultant::{resultant, resultant_series, resultant_with_cofactors, resultant_y, sylvester};
pub use series::TruncSeries;
pub use seriespoly::SeriesPoly;
pub use trihomog::{monomials, CoordChange, TriHomog};
pub use uni::UniPoly;

use crate::gf::Elem;

/// Joins `(coefficient, monomial)` pairs as `c*m + ...`, eliding unit coefficients.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (Elem, String)>) -> String {
    let parts: Vec<String> = terms
        .map(|(c, m)| {
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            if m.is_empty() {
                cs
            } else if c.is_one() {
                m
            } else {
                format!("{cs}*{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn fmt_monomial(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}
