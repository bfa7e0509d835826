//! Expression grammar: `+ - * ^`, parentheses, variables `x y z t`, integer
//! literals. `t` denotes the generator of the coefficient field.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::polyring::{BiPoly, TriHomog, UniPoly};
use std::collections::BTreeMap;

type Poly = BTreeMap<[u32; 3], Elem>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    f: Field,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn add_into(a: &mut Poly, e: [u32; 3], c: Elem) {
    if c.is_zero() {
        return;
    }
    let s = match a.get(&e) {
        Some(v) => v + &c,
        None => c,
    };
    if s.is_zero() {
        a.remove(&e);
    } else {
        a.insert(e, s);
    }
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut r = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut r, [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
        }
    }
    r
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    for (e, v) in self.term()? {
                        add_into(&mut acc, e, v);
                    }
                }
                b'-' => {
                    self.pos += 1;
                    for (e, v) in self.term()? {
                        add_into(&mut acc, e, v.neg());
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let r = self.factor()?;
            acc = mul(&acc, &r);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let v = self.factor()?;
                Ok(v.into_iter().map(|(e, c)| (e, c.neg())).collect())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.integer()?;
                    let k: u32 = k.try_into().map_err(|_| err("exponent too large"))?;
                    let mut r: Poly = [([0, 0, 0], Elem::one(self.f))].into_iter().collect();
                    for _ in 0..k {
                        r = mul(&r, &base);
                    }
                    Ok(r)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected integer at position {start}")));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| err("integer literal too large"))
    }

    fn atom(&mut self) -> Result<Poly> {
        let one = Elem::one(self.f);
        let mono = |e: [u32; 3], c: Elem| -> Poly { [(e, c)].into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(err(format!("expected ')' at position {}", self.pos)));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(mono([1, 0, 0], one))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(mono([0, 1, 0], one))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(mono([0, 0, 1], one))
            }
            Some(b't') => {
                self.pos += 1;
                if self.f.degree() == 1 {
                    return Err(err("`t` is only meaningful over an extension field"));
                }
                Ok(mono([0, 0, 0], Elem::gen(self.f)))
            }
            Some(c) if c.is_ascii_digit() => {
                // reduce digit by digit so long literals are fine
                let p = self.f.p() as u128;
                let mut v: u128 = 0;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    v = (v * 10 + (self.s[self.pos] - b'0') as u128) % p;
                    self.pos += 1;
                }
                Ok(mono([0, 0, 0], Elem::from_u64(self.f, v as u64)))
            }
            Some(c) => Err(err(format!("unexpected character {:?} at position {}", c as char, self.pos))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn parse(s: &str, f: Field) -> Result<Poly> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, f };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at position {}", p.pos)));
    }
    Ok(v)
}

/// Parses a homogeneous polynomial in `x, y, z`.
pub fn parse_trihomog(s: &str, f: Field) -> Result<TriHomog> {
    let p = parse(s, f)?;
    let Some(d) = p.keys().next().map(|e| e.iter().sum::<u32>()) else {
        return Err(err("zero polynomial"));
    };
    if p.keys().any(|e| e.iter().sum::<u32>() != d) {
        return Err(err(format!("{s:?} is not homogeneous")));
    }
    TriHomog::new(f, d, p)
}

/// Parses a field element literal such as `3` or `t^2+1`.
pub fn parse_elem(s: &str, f: Field) -> Result<Elem> {
    let p = parse(s, f)?;
    if p.keys().any(|e| *e != [0, 0, 0]) {
        return Err(err(format!("{s:?} is not a constant")));
    }
    Ok(p.get(&[0, 0, 0]).cloned().unwrap_or_else(|| Elem::zero(f)))
}

/// Parses a polynomial in `x, y`.
pub fn parse_bipoly(s: &str, f: Field) -> Result<BiPoly> {
    let p = parse(s, f)?;
    if p.keys().any(|e| e[2] > 0) {
        return Err(err("unexpected variable z"));
    }
    Ok(BiPoly::from_terms(f, p.into_iter().map(|(e, c)| ((e[0], e[1]), c))))
}

/// Parses a polynomial in `x`.
pub fn parse_uni(s: &str, f: Field) -> Result<UniPoly> {
    let p = parse(s, f)?;
    if p.keys().any(|e| e[1] > 0 || e[2] > 0) {
        return Err(err("only the variable x is allowed"));
    }
    let n = p.keys().map(|e| e[0] as usize + 1).max().unwrap_or(0);
    let mut c = vec![Elem::zero(f); n];
    for (e, v) in p {
        c[e[0] as usize] = v;
    }
    Ok(UniPoly::new(f, c))
}
