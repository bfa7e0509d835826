//! Finite fields GF(p^k) built on demand.
//!
//! A field is identified by `(p, k)`; its modulus is the smallest monic
//! irreducible polynomial of degree `k` over GF(p), where polynomials are
//! ordered by the integer `sum c_i p^i` of their coefficients. Field
//! descriptors are interned for the lifetime of the process, so a [`Field`]
//! is a `Copy` handle and equality is pointer equality.

mod embed;
mod factor;

pub use embed::{embed, embedding, Embedding};
pub use factor::{factor_univariate, factor_univariate_seeded, find_roots, roots_in_field};

use crate::error::{Error, Result};
use crate::polyring::UniPoly;
use num_bigint::BigUint;
use rand::Rng;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

pub(crate) type Coeffs = SmallVec<[u64; 4]>;

struct FieldData {
    p: u64,
    k: usize,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u64>,
}

/// Handle to an interned finite field.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

fn registry() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test over a prime field.
fn is_irreducible_over_prime(f: &UniPoly) -> bool {
    let k = match f.degree() {
        Some(k) if k >= 1 => k,
        _ => return false,
    };
    if k == 1 {
        return true;
    }
    let field = f.field();
    let p = BigUint::from(field.p());
    let x = UniPoly::monomial(field, Elem::one(field), 1);
    // powers[i] = x^(p^i) mod f
    let mut powers = vec![x.clone()];
    for i in 1..=k {
        let next = powers[i - 1].pow_mod(&p, f);
        powers.push(next);
    }
    if powers[k] != x {
        return false;
    }
    for r in prime_factors(k) {
        let h = &powers[k / r] - &x;
        if h.gcd(f).degree() != Some(0) {
            return false;
        }
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^k) with its canonical modulus.
    pub fn new(p: u64, k: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::PreconditionViolated(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::PreconditionViolated("extension degree must be positive".into()));
        }
        if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
            return Ok(*f);
        }
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let base = Field::new(p, 1)?;
            smallest_irreducible(base, k)
        };
        let mut reg = registry().lock().unwrap();
        let f = *reg.entry((p, k)).or_insert_with(|| {
            Field(Box::leak(Box::new(FieldData { p, k, modulus })))
        });
        Ok(f)
    }

    /// Extension of degree `k` over the prime field of `base` (the `build_extension` operation).
    pub fn build_extension(base: Field, k: usize) -> Result<Field> {
        Field::new(base.p(), base.degree() * k)
    }

    pub fn p(self) -> u64 {
        self.0.p
    }

    /// Absolute degree over the prime field.
    pub fn degree(self) -> usize {
        self.0.k
    }

    pub fn modulus(self) -> &'static [u64] {
        &self.0.modulus
    }

    pub fn prime_field(self) -> Field {
        Field::new(self.p(), 1).expect("prime already validated")
    }

    /// Number of elements.
    pub fn order(self) -> BigUint {
        BigUint::from(self.p()).pow(self.degree() as u32)
    }

    /// Number of elements, if it fits in a `u128`.
    pub fn order_u128(self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.degree() as u32)
    }

    /// `true` if `self` is a subfield of `other` (degree divides).
    pub fn divides(self, other: Field) -> bool {
        self.p() == other.p() && other.degree() % self.degree() == 0
    }

    /// The field of degree `lcm` containing both.
    pub fn compositum(self, other: Field) -> Result<Field> {
        if self.p() != other.p() {
            return Err(Error::FieldMismatch);
        }
        Field::new(self.p(), lcm(self.degree(), other.degree()))
    }

    /// The extension of `self` of relative degree `r`.
    pub fn extend(self, r: usize) -> Field {
        Field::new(self.p(), self.degree() * r).expect("valid field")
    }

    /// All elements in increasing order; only sensible for small fields.
    pub fn elements(self) -> Vec<Elem> {
        let q = self.order_u128().expect("field too large to enumerate");
        (0..q).map(|i| Elem::from_index(self, i)).collect()
    }

    /// Parses `GF(p)`, `GF(p^k)` or `GF(q)` with `q` a prime power.
    pub fn parse(s: &str) -> Result<Field> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad field literal {s:?}")))?;
        let bad = || Error::Parse(format!("bad field literal {s:?}"));
        if let Some((p, k)) = inner.split_once('^') {
            let p: u64 = p.parse().map_err(|_| bad())?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if !is_prime(p) || k == 0 {
                return Err(bad());
            }
            return Field::new(p, k);
        }
        let q: u64 = inner.parse().map_err(|_| bad())?;
        if q < 2 {
            return Err(bad());
        }
        let mut p = 2;
        while p * p <= q && q % p != 0 {
            p += 1;
        }
        if q % p != 0 {
            p = q;
        }
        let mut k = 0;
        let mut r = q;
        while r % p == 0 {
            r /= p;
            k += 1;
        }
        if r != 1 {
            return Err(Error::Parse(format!("{q} is not a prime power")));
        }
        Field::new(p, k)
    }

    pub fn name(self) -> String {
        if self.degree() == 1 {
            format!("GF({})", self.p())
        } else {
            format!("GF({}^{})", self.p(), self.degree())
        }
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn smallest_irreducible(base: Field, k: usize) -> Vec<u64> {
    let p = base.p() as u128;
    let mut idx: u128 = 0;
    loop {
        let mut c = Vec::with_capacity(k + 1);
        let mut r = idx;
        for _ in 0..k {
            c.push((r % p) as u64);
            r /= p;
        }
        idx += 1;
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        let f = UniPoly::new(base, c.iter().map(|&v| Elem::from_u64(base, v)).collect());
        if is_irreducible_over_prime(&f) {
            return c;
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Field {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p(), self.degree()).cmp(&(other.p(), other.degree()))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An element of a finite field, stored as coordinates over GF(p) in the
/// power basis `1, t, ..., t^(k-1)`.
#[derive(Clone)]
pub struct Elem {
    f: Field,
    c: Coeffs,
}

/// Binary operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_arith(a: &Elem, b: &Elem, op: ArithOp) -> Result<Elem> {
    if a.f != b.f {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div(b)?,
    })
}

impl Elem {
    pub fn zero(f: Field) -> Elem {
        Elem { f, c: SmallVec::from_elem(0, f.degree()) }
    }

    pub fn one(f: Field) -> Elem {
        Elem::from_u64(f, 1)
    }

    pub fn from_u64(f: Field, v: u64) -> Elem {
        let mut e = Elem::zero(f);
        e.c[0] = v % f.p();
        e
    }

    pub fn from_i64(f: Field, v: i64) -> Elem {
        let p = f.p() as i128;
        let r = ((v as i128 % p) + p) % p;
        Elem::from_u64(f, r as u64)
    }

    /// The generator `t` of the power basis (equals 0 in a prime field, where `t` is the modulus root).
    pub fn gen(f: Field) -> Elem {
        if f.degree() == 1 {
            // t is a root of the modulus `t`, i.e. zero
            return Elem::zero(f);
        }
        let mut e = Elem::zero(f);
        e.c[1] = 1;
        e
    }

    /// Builds an element from coordinates (reduced mod p, padded or checked for length).
    pub fn from_coeffs(f: Field, coeffs: &[u64]) -> Elem {
        assert!(coeffs.len() <= f.degree(), "too many coordinates");
        let mut e = Elem::zero(f);
        for (i, &v) in coeffs.iter().enumerate() {
            e.c[i] = v % f.p();
        }
        e
    }

    /// The element whose coordinates are the base-p digits of `i`.
    pub fn from_index(f: Field, mut i: u128) -> Elem {
        let p = f.p() as u128;
        let mut e = Elem::zero(f);
        for slot in e.c.iter_mut() {
            *slot = (i % p) as u64;
            i /= p;
        }
        e
    }

    pub fn random<R: Rng + ?Sized>(f: Field, rng: &mut R) -> Elem {
        let mut e = Elem::zero(f);
        for slot in e.c.iter_mut() {
            *slot = rng.gen_range(0..f.p());
        }
        e
    }

    pub fn field(&self) -> Field {
        self.f
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// `Some(v)` when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u64> {
        if self.c[1..].iter().all(|&v| v == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Elem) {
        assert!(self.f == other.f, "field mismatch: {} vs {}", self.f, other.f);
    }

    pub fn neg(&self) -> Elem {
        let p = self.f.p();
        let c = self.c.iter().map(|&v| if v == 0 { 0 } else { p - v }).collect();
        Elem { f: self.f, c }
    }

    pub fn inv(&self) -> Result<Elem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.f.p();
        if self.f.degree() == 1 {
            return Ok(Elem::from_u64(self.f, pow_mod(self.c[0], p - 2, p)));
        }
        // extended Euclid on (a, modulus) over GF(p)
        let a: Vec<u64> = trim(self.c.to_vec());
        let m: Vec<u64> = self.f.modulus().to_vec();
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = raw_divrem(&r0, &r1, p);
            let s2 = raw_sub(&s0, &raw_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = pow_mod(r0[0], p - 2, p);
        let mut e = Elem::zero(self.f);
        for (i, v) in s0.iter().enumerate() {
            e.c[i] = mul_mod(*v, c, p);
        }
        Ok(e)
    }

    pub fn div(&self, other: &Elem) -> Result<Elem> {
        self.check(other);
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut r = Elem::one(self.f);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    pub fn pow_big(&self, e: &BigUint) -> Elem {
        let mut r = Elem::one(self.f);
        for i in (0..e.bits()).rev() {
            r = &r * &r;
            if e.bit(i) {
                r = &r * self;
            }
        }
        r
    }

    /// `self^(p^j)`.
    pub fn frobenius(&self, j: usize) -> Elem {
        let k = self.f.degree();
        let mut r = self.clone();
        for _ in 0..(j % k) {
            r = r.pow(self.f.p());
        }
        r
    }

    /// Degree over GF(p) of the smallest subfield containing `self`.
    pub fn min_degree(&self) -> usize {
        let k = self.f.degree();
        let mut divisors: Vec<usize> = (1..=k).filter(|d| k % d == 0).collect();
        divisors.sort();
        let mut fr = self.clone();
        let mut done = 0;
        for d in divisors {
            // fr = self^(p^done); advance to self^(p^d)
            fr = fr.frobenius(d - done);
            done = d;
            if fr == *self {
                return d;
            }
        }
        k
    }

    /// Integer value `sum c_i p^i`, the ordering key.
    pub fn index(&self) -> u128 {
        let p = self.f.p() as u128;
        self.c.iter().rev().fold(0u128, |acc, &v| acc.wrapping_mul(p).wrapping_add(v as u128))
    }

    /// `p`-th root (inverse Frobenius).
    pub fn pth_root(&self) -> Elem {
        let k = self.f.degree();
        self.frobenius(k - 1)
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(r)
}

fn raw_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for (i, slot) in r.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(r)
}

fn raw_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lc = pow_mod(b[db], p - 2, p);
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mul_mod(r[i], inv_lc, p);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[i - db + j] = (r[i - db + j] + p - t) % p;
        }
    }
    (trim(q), trim(r))
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.c == other.c
    }
}
impl Eq for Elem {}

impl Hash for Elem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.f.hash(state);
        self.c.hash(state);
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.f
            .cmp(&other.f)
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.degree() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for i in (0..self.c.len()).rev() {
            let v = self.c[i];
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, v) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "t")?,
                (1, v) => write!(f, "{v}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, v) => write!(f, "{v}*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> std::ops::Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, o: &Elem) -> Elem {
        self.check(o);
        let p = self.f.p();
        let c = self
            .c
            .iter()
            .zip(o.c.iter())
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Elem { f: self.f, c }
    }
}

impl<'a> std::ops::Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, o: &Elem) -> Elem {
        self.check(o);
        let p = self.f.p();
        let c = self
            .c
            .iter()
            .zip(o.c.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Elem { f: self.f, c }
    }
}

impl<'a> std::ops::Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, o: &Elem) -> Elem {
        self.check(o);
        let p = self.f.p();
        let k = self.f.degree();
        if k == 1 {
            return Elem { f: self.f, c: smallvec::smallvec![mul_mod(self.c[0], o.c[0], p)] };
        }
        let small = p <= u32::MAX as u64 && (k as u128) * (p as u128) * (p as u128) < u64::MAX as u128;
        let mut prod = vec![0u64; 2 * k - 1];
        if small {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in o.c.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            for v in prod.iter_mut() {
                *v %= p;
            }
        } else {
            for (i, &a) in self.c.iter().enumerate() {
                for (j, &b) in o.c.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + mul_mod(a, b, p)) % p;
                }
            }
        }
        let m = self.f.modulus();
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mj) in m[..k].iter().enumerate() {
                let t = mul_mod(c, mj, p);
                prod[i - k + j] = (prod[i - k + j] + p - t) % p;
            }
        }
        Elem { f: self.f, c: prod[..k].iter().copied().collect() }
    }
}

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$m(&o)
            }
        }
        impl<'a> std::ops::$tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                (&self).$m(o)
            }
        }
        impl<'a> std::ops::$tr<Elem> for &'a Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(&self)
    }
}
