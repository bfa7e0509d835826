use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::polyring::UniPoly;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A fixed ring embedding `src -> dst`.
///
/// The generator of `src` is sent to the smallest root (in element order) of
/// the modulus of `src` in `dst` that is compatible with the chosen base
/// field: the composite `base -> src -> dst` must equal `base -> dst`.
#[derive(Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// `powers[i]` = image of `t^i`.
    powers: Vec<Elem>,
    /// Left inverse over GF(p): `pivots` select `k_src` coordinates of `dst`,
    /// `inv` maps them back to `src` coordinates.
    pivots: Vec<usize>,
    inv: Vec<Vec<u64>>,
}

type Key = (u64, usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<Key, Arc<Embedding>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<Embedding>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The canonical embedding `src -> dst` compatible with `base`.
pub fn embedding(src: Field, dst: Field, base: Field) -> Result<Arc<Embedding>> {
    if src.p() != dst.p() || src.p() != base.p() {
        return Err(Error::FieldMismatch);
    }
    if dst.degree() % src.degree() != 0 {
        return Err(Error::NoEmbedding { from: src.degree(), to: dst.degree() });
    }
    let base = if src.degree() % base.degree() == 0 { base } else { src.prime_field() };
    let key = (src.p(), src.degree(), dst.degree(), base.degree());
    if let Some(e) = cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = Arc::new(build(src, dst, base)?);
    cache().lock().unwrap().insert(key, e.clone());
    Ok(e)
}

/// Image of `a` in `target` under the canonical embedding over the prime field.
pub fn embed(a: &Elem, target: Field) -> Result<Elem> {
    let src = a.field();
    Ok(embedding(src, target, src.prime_field())?.apply(a))
}

fn build(src: Field, dst: Field, base: Field) -> Result<Embedding> {
    let ks = src.degree();
    if ks == 1 {
        return Ok(Embedding {
            src,
            dst,
            powers: vec![Elem::one(dst)],
            pivots: vec![0],
            inv: vec![vec![1]],
        });
    }
    let modulus = UniPoly::from_u64s(dst, src.modulus());
    let roots = super::roots_in_field(&modulus, 0);
    let compat = if base.degree() > 1 && base != src {
        let b_src = embedding(base, src, base.prime_field())?;
        let b_dst = embedding(base, dst, base.prime_field())?;
        Some((b_src.apply(&Elem::gen(base)), b_dst.apply(&Elem::gen(base))))
    } else {
        None
    };
    for rho in roots {
        let mut powers = vec![Elem::one(dst)];
        for i in 1..ks {
            powers.push(&powers[i - 1] * &rho);
        }
        let candidate = finish(src, dst, powers);
        if let Some((g_src, g_dst)) = &compat {
            if candidate.apply(g_src) != *g_dst {
                continue;
            }
        }
        return Ok(candidate);
    }
    Err(Error::NoEmbedding { from: ks, to: dst.degree() })
}

fn finish(src: Field, dst: Field, powers: Vec<Elem>) -> Embedding {
    let ks = src.degree();
    let kd = dst.degree();
    // matrix m[r][i] = coordinate r of powers[i]; choose ks independent rows
    let mut rows: Vec<Vec<u64>> = (0..kd).map(|r| powers.iter().map(|e| e.coeffs()[r]).collect()).collect();
    let fp = src.prime_field();
    let to_e = |v: u64| Elem::from_u64(fp, v);
    // Gaussian elimination on augmented [rows | identity-of-row-index] to pick pivots
    let mut pivots = Vec::new();
    let mut basis: Vec<(Vec<Elem>, usize)> = Vec::new();
    for (r, row) in rows.iter_mut().enumerate() {
        let mut v: Vec<Elem> = row.iter().map(|&x| to_e(x)).collect();
        for (b, _) in &basis {
            let lead = b.iter().position(|e| !e.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let c = v[lead].clone();
                for j in 0..ks {
                    v[j] = &v[j] - &(&c * &b[j]);
                }
            }
        }
        if let Some(lead) = v.iter().position(|e| !e.is_zero()) {
            let inv = v[lead].inv().unwrap();
            let v: Vec<Elem> = v.iter().map(|e| e * &inv).collect();
            basis.push((v, r));
            pivots.push(r);
            if pivots.len() == ks {
                break;
            }
        }
    }
    // invert the ks x ks submatrix of selected rows
    let sub: Vec<Vec<Elem>> = pivots
        .iter()
        .map(|&r| powers.iter().map(|e| to_e(e.coeffs()[r])).collect())
        .collect();
    let inv = crate::linalg::Matrix::from_rows(fp, sub)
        .inverse()
        .expect("power basis image is independent");
    let inv = inv
        .rows()
        .iter()
        .map(|row| row.iter().map(|e| e.coeffs()[0]).collect())
        .collect();
    Embedding { src, dst, powers, pivots, inv }
}

impl Embedding {
    pub fn source(&self) -> Field {
        self.src
    }

    pub fn target(&self) -> Field {
        self.dst
    }

    /// Image of the generator `t` of the source.
    pub fn gen_image(&self) -> Elem {
        if self.src.degree() == 1 {
            Elem::zero(self.dst)
        } else {
            self.powers[1].clone()
        }
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        assert!(a.field() == self.src, "embedding applied to element of {}", a.field());
        let mut acc = Elem::zero(self.dst);
        for (c, pw) in a.coeffs().iter().zip(&self.powers) {
            if *c != 0 {
                acc = &acc + &(pw * &Elem::from_u64(self.dst, *c));
            }
        }
        acc
    }

    /// Inverse image, if `b` lies in the image.
    pub fn preimage(&self, b: &Elem) -> Option<Elem> {
        assert!(b.field() == self.dst);
        let p = self.src.p();
        let sel: Vec<u64> = self.pivots.iter().map(|&r| b.coeffs()[r]).collect();
        let coords: Vec<u64> = self
            .inv
            .iter()
            .map(|row| {
                row.iter().zip(&sel).fold(0u64, |acc, (&m, &v)| {
                    ((acc as u128 + m as u128 * v as u128) % p as u128) as u64
                })
            })
            .collect();
        let a = Elem::from_coeffs(self.src, &coords);
        if self.apply(&a) == *b {
            Some(a)
        } else {
            None
        }
    }
}
