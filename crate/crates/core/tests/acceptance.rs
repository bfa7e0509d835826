//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rrspace::codes::{ag_generator_matrix, rs_generator_matrix, shamir_reconstruct, shamir_share};
use rrspace::divisors::{adjoint_divisor, genus, global_divisor, places_of, singular_locus, Divisor};
use rrspace::gf::{Elem, Field};
use rrspace::lifting::{hensel_classic, hensel_weighted, unit_monic_factor, weierstrass};
use rrspace::linalg::Matrix;
use rrspace::newton::{newton_polygon_exact, newton_polynomial_exact, Val, WeightedValuation};
use rrspace::places::{place_valuation, valuation_via_parametrization, Curve, Place, Point};
use rrspace::polyring::{monomials, parse_bipoly, parse_trihomog, BiPoly, TriHomog, TruncSeries, UniPoly};
use rrspace::riemannroch::{rr_basis, rr_line_affine, verify_basis, RRBasis};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn curve(s: &str, p: u64) -> Curve {
    Curve::new(parse_trihomog(s, gf(p)).unwrap()).unwrap()
}

fn pt(c: &Curve, v: [u64; 3]) -> Point {
    Point::from_u64s(c.field(), v).unwrap()
}

fn th(c: &Curve, s: &str) -> TriHomog {
    parse_trihomog(s, c.field()).unwrap()
}

fn rank(field: Field, rows: Vec<Vec<Elem>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, rows).rank()
}

/// Multiples of `F` in degree `d`, as coefficient vectors.
fn f_multiples(c: &Curve, d: u32) -> Vec<Vec<Elem>> {
    let f = c.polynomial();
    if d < f.degree() {
        return vec![];
    }
    let one = Elem::one(c.field());
    monomials(d - f.degree()).into_iter().map(|e| f.mul(&TriHomog::monomial(one.clone(), e)).to_vector()).collect()
}

/// Whether two bases span the same subspace of the function field, by
/// cross-multiplying over a common denominator modulo `F`.
fn same_space(c: &Curve, a: &RRBasis, b: &RRBasis) -> bool {
    if a.ell() != b.ell() {
        return false;
    }
    let d = a.h.degree() + b.h.degree();
    let base = f_multiples(c, d);
    let r0 = rank(c.field(), base.clone());
    let mut left = base;
    left.extend(a.numerators.iter().map(|g| g.mul(&b.h).to_vector()));
    let rl = rank(c.field(), left.clone());
    let mut both = left;
    both.extend(b.numerators.iter().map(|g| g.mul(&a.h).to_vector()));
    rl == r0 + a.ell() && rank(c.field(), both) == rl
}

fn rational_points(c: &Curve) -> Vec<Point> {
    let f = c.field();
    let els = f.elements();
    let mut out = Vec::new();
    let mut push = |v: [Elem; 3]| {
        let p = Point::new(v).unwrap();
        if c.contains(&p).unwrap() {
            out.push(p);
        }
    };
    push([Elem::one(f), Elem::zero(f), Elem::zero(f)]);
    for a in &els {
        push([a.clone(), Elem::one(f), Elem::zero(f)]);
    }
    for a in &els {
        for b in &els {
            push([a.clone(), b.clone(), Elem::one(f)]);
        }
    }
    out
}

fn random_form<R: Rng>(f: Field, d: u32, rng: &mut R) -> TriHomog {
    let n = monomials(d).len();
    TriHomog::from_vector(f, d, &(0..n).map(|_| Elem::random(f, rng)).collect::<Vec<_>>())
}

/// The space L(P1) on the cuspidal cubic over GF(2).
fn criterion_1() -> Check {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let a = ok(adjoint_divisor(&c))?;
    let want = ok(Divisor::at(&c, &pt(&c, [0, 0, 1]), 0, 2))?;
    ensure!(a == want, "adjoint {a}");
    let d = ok(Divisor::at(&c, &pt(&c, [1, 0, 1]), 0, 1))?;
    let b = ok(rr_basis(&c, &d))?;
    ensure!(b.h == th(&c, "y"), "H = {}", b.h);
    ensure!(b.ell() == 2, "l = {}", b.ell());
    ensure!(verify_basis(&c, &d, &b).ok(), "computed basis fails verification");
    // 1 = y/y and x/y
    let expected = RRBasis { h: th(&c, "y"), numerators: vec![th(&c, "y"), th(&c, "x")] };
    let rep = verify_basis(&c, &d, &expected);
    ensure!(rep.ok(), "span{{1, x/y}} fails verification: {:?}", rep.violations);
    ensure!(same_space(&c, &b, &expected), "computed space differs from span{{1, x/y}}");
    Ok(())
}

fn series(f: Field, c: &[u64], prec: usize) -> TruncSeries {
    TruncSeries::from_u64s(f, c, prec)
}

/// Local data of the cusp and the wild smooth branch.
fn criterion_2() -> Check {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let f = c.field();
    let places = ok(c.places_at(&pt(&c, [0, 0, 1])))?;
    ensure!(places.len() == 1, "{} places at the cusp", places.len());
    let pl = &places[0];
    for (m, w) in [("x", 3), ("y", 2)] {
        let v = ok(pl.valuation(&th(&c, m)))?;
        ensure!(v == Val::Finite(w), "w({m}) = {v:?}");
    }
    ensure!(pl.ram_index() == 3, "ramification {}", pl.ram_index());
    let (x, y) = ok(pl.parametrize(6))?;
    ensure!(x.truncate(4) == series(f, &[0, 0, 0, 1], 4), "x = {}", x.fmt_var("t"));
    ensure!(y.truncate(3) == series(f, &[0, 0, 1], 3), "y = {}", y.fmt_var("t"));
    // the expansions satisfy the local equation to the working precision
    let res = x.pow(3).add(&y.pow(3)).add(&x.pow(2));
    ensure!(res.is_zero(), "F(x(t), y(t)) = {}", res.fmt_var("t"));

    let c = curve("x*z + x*y + y^2", 2);
    let pl = &ok(c.places_at(&pt(&c, [0, 0, 1])))?[0];
    let (x, y) = ok(pl.parametrize(6))?;
    ensure!(x == series(f, &[0, 0, 1, 1, 1, 1], 6), "x = {}", x.fmt_var("t"));
    ensure!(y == series(f, &[0, 1], 6), "y = {}", y.fmt_var("t"));
    Ok(())
}

/// Newton polygon and the polynomial of the edge (2,1)-(5,0).
fn criterion_3() -> Check {
    let f = ok(parse_bipoly("x^3*y + 2*x*y^2 - x^2*y^4 + y^5 + 3*x*y^6 + y^7", gf(101)))?;
    let poly = ok(newton_polygon_exact(&f))?;
    ensure!(poly.vertices == vec![(1, 3), (2, 1), (5, 0), (7, 0)], "vertices {:?}", poly.vertices);
    let np = ok(newton_polynomial_exact(&f, ((2, 1), (5, 0))))?;
    ensure!(np == ok(parse_bipoly("2*x + y^3", gf(101)))?, "Newton polynomial {np}");
    Ok(())
}

/// Dimension law on the line, closed form against the general algorithm.
fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let c = curve("y", 101);
    let f = c.field();
    for trial in 0..20 {
        let k = rng.gen_range(1..=4);
        let mut alphas: Vec<u64> = (0..101).collect();
        alphas.shuffle(&mut rng);
        let mut spec: Vec<(u64, i64)> = alphas[..k].iter().map(|&a| (a, rng.gen_range(-3..=4))).collect();
        let sum: i64 = spec.iter().map(|s| s.1).sum();
        if sum < 0 {
            spec[0].1 -= sum;
        }
        let sum: i64 = spec.iter().map(|s| s.1).sum();
        let affine: Vec<(Elem, i64)> = spec.iter().map(|&(a, m)| (Elem::from_u64(f, a), m)).collect();
        let lb = ok(rr_line_affine(f, &affine))?;
        ensure!(lb.numerators.len() as i64 == 1 + sum, "trial {trial}: closed form l = {}", lb.numerators.len());
        let mut d = Divisor::zero(&c);
        for &(a, m) in &spec {
            d = ok(d.add(&ok(Divisor::at(&c, &pt(&c, [a, 0, 1]), 0, m))?))?;
        }
        let b = ok(rr_basis(&c, &d))?;
        ensure!(b.ell() as i64 == 1 + sum, "trial {trial}: rr_basis l = {} for {spec:?}", b.ell());
    }
    Ok(())
}

/// Bezout: deg Div(G) = deg G deg F, with every coefficient cross-checked
/// against the parametrization valuation.
fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let curves = [curve("y", 5), curve("y^3 + x^3 + x^2*z", 2), curve("x^2 + y*z", 5)];
    for c in &curves {
        let mut done = 0;
        while done < 10 {
            let d = rng.gen_range(1..=3);
            let g = random_form(c.field(), d, &mut rng);
            if g.is_zero() || g.div_exact(c.polynomial()).is_some() {
                continue;
            }
            let div = ok(global_divisor(c, &g))?;
            let mut deg = 0i64;
            for (pl, m) in ok(places_of(c, &div))? {
                let v = ok(pl.valuation_param(&g))?;
                ensure!(v == Val::Finite(m), "coefficient {m} vs valuation {v:?} of {g}");
                deg += m * pl.degree() as i64;
            }
            let want = (d * c.degree()) as i64;
            ensure!(deg == want && div.degree() == want, "deg Div({g}) = {deg} on {}", c.polynomial());
            done += 1;
        }
    }
    Ok(())
}

fn valuation_curves() -> Vec<(Curve, Vec<[u64; 3]>)> {
    vec![
        (curve("y^3 + x^3 + x^2*z", 2), vec![[0, 0, 1], [1, 0, 1], [1, 1, 0]]),
        (curve("y^2*z - x^2*z - x^3", 5), vec![[0, 0, 1], [0, 1, 0], [4, 0, 1]]),
        (curve("y^2*z^2 - x^4 - x^2*y*z", 7), vec![[0, 0, 1]]),
        (curve("x^2 + y*z", 3), vec![[0, 0, 1], [0, 1, 0]]),
        (curve("x*z + x*y + y^2", 2), vec![[0, 0, 1]]),
        (curve("y", 5), vec![[1, 0, 0], [2, 0, 1]]),
    ]
}

/// Resultant valuations agree with parametrization valuations; axioms hold.
fn criterion_6() -> Check {
    let mut all: Vec<(Curve, Arc<Place>)> = Vec::new();
    for (c, pts) in valuation_curves() {
        for v in pts {
            for pl in ok(c.places_at(&pt(&c, v)))? {
                all.push((c.clone(), pl));
            }
        }
    }
    for (c, pl) in &all {
        for d in 0..=3 {
            for e in monomials(d) {
                let m = TriHomog::monomial(Elem::one(c.field()), e);
                let a = ok(place_valuation(pl, &m))?;
                let b = ok(valuation_via_parametrization(pl, &m))?;
                ensure!(a == b, "{e:?} at {:?}: {a:?} vs {b:?}", pl.key());
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (c, pl) = &all[rng.gen_range(0..all.len())];
        let f = c.field();
        let d = rng.gen_range(1..=2);
        let a = random_form(f, d, &mut rng);
        let b = random_form(f, d, &mut rng);
        let (va, vb) = (ok(pl.valuation(&a))?, ok(pl.valuation(&b))?);
        let vab = ok(pl.valuation(&a.mul(&b)))?;
        ensure!(vab == va + vb, "v(ab) = {vab:?}, v(a) + v(b) = {:?}", va + vb);
        let vs = ok(pl.valuation(&ok(a.add(&b))?))?;
        ensure!(vs >= va.min(vb), "v(a + b) = {vs:?} below min({va:?}, {vb:?})");
    }
    Ok(())
}

fn random_bipoly<R: Rng>(f: Field, rng: &mut R, terms: usize, xmax: u32, ymax: u32) -> BiPoly {
    BiPoly::from_terms(f, (0..terms).map(|_| ((rng.gen_range(0..=xmax), rng.gen_range(0..=ymax)), Elem::random(f, rng))))
}

fn reproduces(w: WeightedValuation, f: &BiPoly, a: &BiPoly, b: &BiPoly, prec: u64) -> bool {
    let Some(vf) = w.val(f).finite() else { return false };
    let bound = vf as u64 + prec;
    w.truncate(f, bound) == w.truncate(&a.mul(b), bound)
}

fn y_poly(f: Field, p: &UniPoly) -> BiPoly {
    BiPoly::from_terms(f, p.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
}

/// The four lifting engines on random inputs.
fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f5 = gf(5);
    let f101 = gf(101);

    // unit times monic
    let mut n = 0;
    while n < 20 {
        let f = random_bipoly(f5, &mut rng, 6, 4, 3);
        let (gx, gy) = [(1, 1), (1, 2), (2, 1), (2, 3), (3, 2)][rng.gen_range(0..5)];
        if f.is_zero() {
            continue;
        }
        let w = ok(WeightedValuation::new(gx, gy))?;
        let prec = rng.gen_range(1..8);
        let r = ok(unit_monic_factor(&f, w, prec))?;
        ensure!(reproduces(w, &f, &r.u, &r.g, prec), "unit_monic_factor: {f} not reproduced");
        let ing = ok(w.initial_form(&r.g))?;
        ensure!(ok(w.initial_form(&r.u))?.mul(&ing) == ok(w.initial_form(&f))?, "unit_monic_factor: initial form of {f}");
        ensure!(w.is_quasi_homogeneous(&ing), "unit_monic_factor: in(g) not quasi-homogeneous");
        let d = r.g.deg_y().unwrap();
        ensure!(r.g.coeff_y(d).is_one() && ing.deg_y() == Some(d), "unit_monic_factor: g not monic");
        n += 1;
    }

    // Weierstrass: f(0, y) has order exactly n
    for _ in 0..20 {
        let order = rng.gen_range(1..=3u32);
        let c0 = Elem::from_u64(f5, rng.gen_range(1..5));
        let unit = BiPoly::monomial(c0, 0, 0).add(&random_bipoly(f5, &mut rng, 3, 2, 2).filter(|i, j| i + j > 0));
        let f = BiPoly::monomial(Elem::one(f5), 0, order)
            .mul(&unit)
            .add(&BiPoly::monomial(Elem::one(f5), 1, 0).mul(&random_bipoly(f5, &mut rng, 4, 3, 3)));
        let prec = rng.gen_range(1..8);
        let r = ok(weierstrass(&f, order, prec))?;
        ensure!(reproduces(r.weights, &f, &r.u, &r.g, prec), "weierstrass: {f} not reproduced");
        let g = r.g_series();
        ensure!(g.is_monic() && g.ydeg() == Some(order as usize), "weierstrass: g of y-degree {:?}", g.ydeg());
        for j in 0..order as usize {
            ensure!(g.coeff(j).coeff(0).is_zero(), "weierstrass: g(0, y) differs from y^{order}");
        }
        ensure!(ok(r.weights.initial_form(&r.u))?.mul(&ok(r.weights.initial_form(&r.g))?) == ok(r.weights.initial_form(&f))?, "weierstrass: initial forms of {f}");
    }

    // classical Hensel over GF(101)
    for _ in 0..20 {
        let a = rng.gen_range(0..101);
        let b = (a + rng.gen_range(1..101)) % 101;
        let g0 = UniPoly::linear(&Elem::from_u64(f101, a));
        let h0 = &UniPoly::linear(&Elem::from_u64(f101, b)) * &UniPoly::linear(&Elem::from_u64(f101, rng.gen_range(0..101)));
        if g0.gcd(&h0).degree() != Some(0) {
            continue;
        }
        let prec = rng.gen_range(1..8);
        let tail = random_bipoly(f101, &mut rng, 6, 5, 2).filter(|i, _| i >= 1);
        let f = y_poly(f101, &(&g0 * &h0)).add(&tail);
        let fs = f.to_series_poly(prec);
        let r = ok(hensel_classic(&fs, &g0, &h0, prec))?;
        ensure!(r.g_series().mul(&r.h_series()) == fs, "hensel_classic: {f} not reproduced");
        ensure!(r.g.filter(|i, _| i == 0) == y_poly(f101, &g0), "hensel_classic: g(0, y) changed");
        ensure!(r.h.filter(|i, _| i == 0) == y_poly(f101, &h0), "hensel_classic: h(0, y) changed");
    }

    // weighted Hensel: in(f) = g1 h1 with coprime quasi-homogeneous factors
    let mut n = 0;
    while n < 20 {
        let a = Elem::from_u64(f5, rng.gen_range(0..5));
        let b = Elem::from_u64(f5, rng.gen_range(0..5));
        if a == b {
            continue;
        }
        let (w, g1, h1) = match rng.gen_range(0..3) {
            0 => (ok(WeightedValuation::new(1, 1))?, format!("y - {a}*x"), format!("y - {b}*x")),
            1 => (ok(WeightedValuation::new(1, 2))?, format!("y - {a}*x^2"), format!("y - {b}*x^2")),
            _ => (ok(WeightedValuation::new(2, 3))?, format!("y^2 - {a}*x^3"), format!("y^2 - {b}*x^3")),
        };
        let g1 = ok(parse_bipoly(&g1, f5))?;
        let h1 = ok(parse_bipoly(&h1, f5))?;
        let inf = g1.mul(&h1);
        let ydeg = inf.deg_y().unwrap();
        let vf = w.val(&inf).finite().unwrap() as u64;
        let tail = random_bipoly(f5, &mut rng, 6, 6, ydeg - 1).filter(|i, j| w.weight(i, j) > vf);
        let f = inf.add(&tail);
        let prec = rng.gen_range(1..8u64);
        let xprec = ((vf + prec) / w.gx as u64 + 1) as usize;
        let r = ok(hensel_weighted(&f.to_series_poly(xprec), &g1, &h1, w, prec))?;
        ensure!(r.certified_prec == prec, "hensel_weighted: certified {} of {prec}", r.certified_prec);
        ensure!(reproduces(w, &f, &r.g, &r.h, prec), "hensel_weighted: {f} not reproduced");
        ensure!(ok(w.initial_form(&r.g))? == g1 && ok(w.initial_form(&r.h))? == h1, "hensel_weighted: initial forms changed");
        n += 1;
    }
    Ok(())
}

/// Genera of the test curves and parity of the adjoint degree.
fn criterion_8() -> Check {
    let cases = [
        ("y^3 + x^3 + x^2*z", 2, Some(0)),
        ("x^2 + y*z", 5, Some(0)),
        ("x^4 + y^4 + z^4", 5, Some(3)),
        ("y^2*z - x^2*z - x^3", 5, None),
        ("y^2*z^3 - x^4*z - x^5", 7, None),
        ("x^3*y + y^3*z + z^3*x", 2, None),
    ];
    for (s, p, want) in cases {
        let c = curve(s, p);
        let a = ok(adjoint_divisor(&c))?;
        ensure!(a.degree() % 2 == 0, "deg A = {} is odd for {s}", a.degree());
        let g = ok(genus(&c))?;
        let d = c.degree() as i64;
        ensure!(2 * g as i64 == (d - 1) * (d - 2) - a.degree(), "genus formula for {s}");
        if let Some(w) = want {
            ensure!(g == w, "g({s}) = {g}, expected {w}");
        }
    }
    // a smooth quartic has the arithmetic genus
    let fermat = curve("x^4 + y^4 + z^4", 5);
    ensure!(ok(singular_locus(&fermat))?.is_empty(), "Fermat quartic reported singular");
    Ok(())
}

/// l(D) = deg D + 1 on genus-zero curves.
fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let curves = [curve("x^2 + y*z", 5), curve("y^3 + x^3 + x^2*z", 2), curve("y", 7)];
    let cusp = pt(&curves[1], [0, 0, 1]);
    for trial in 0..10 {
        let c = &curves[trial % curves.len()];
        let pts: Vec<Point> = rational_points(c).into_iter().filter(|p| *p != cusp || c.field().p() != 2).collect();
        let mut d = Divisor::zero(c);
        while d.degree() < 1 {
            for p in &pts {
                if rng.gen_bool(0.4) {
                    d = ok(d.add(&ok(Divisor::at(c, p, 0, rng.gen_range(1..=2)))?))?;
                }
            }
        }
        let b = ok(rr_basis(c, &d))?;
        ensure!(b.ell() as i64 == d.degree() + 1, "l({d}) = {} on {}", b.ell(), c.polynomial());
        ensure!(verify_basis(c, &d, &b).ok(), "basis of L({d}) fails verification");
    }
    Ok(())
}

/// Reed-Solomon against AG on the line, Shamir round trips, rank identity.
fn criterion_10() -> Check {
    let c = curve("y", 5);
    let f = c.field();
    let inf = ok(Divisor::at(&c, &pt(&c, [1, 0, 0]), 0, 1))?;
    let pts: Vec<Point> = (0..4).map(|a| pt(&c, [a, 0, 1])).collect();
    let alphas: Vec<Elem> = (0..4).map(|a| Elem::from_u64(f, a)).collect();
    let ag = ok(ag_generator_matrix(&c, &inf.scale(2), &pts))?;
    let rs = ok(rs_generator_matrix(f, 3, &alphas))?;
    ensure!(ag == rs, "AG\n{ag}differs from RS\n{rs}");

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f101 = gf(101);
    for _ in 0..50 {
        let secret = Elem::random(f101, &mut rng);
        let t = rng.gen_range(1..=6);
        let n = t + rng.gen_range(0..=4);
        let mut ids: Vec<u64> = (1..101).collect();
        ids.shuffle(&mut rng);
        let ids: Vec<Elem> = ids[..n].iter().map(|&i| Elem::from_u64(f101, i)).collect();
        let sh = ok(shamir_share(&secret, t, &ids, &mut rng))?;
        let mut subset = sh.shares.clone();
        subset.shuffle(&mut rng);
        subset.truncate(t);
        let back = ok(shamir_reconstruct(&subset, t))?;
        ensure!(back == secret, "Shamir returned {back} for {secret} with t = {t}");
    }

    let c = curve("y", 7);
    let inf = ok(Divisor::at(&c, &pt(&c, [1, 0, 0]), 0, 1))?;
    for (k, n) in [(1, 4), (2, 5), (4, 3), (5, 5), (6, 7)] {
        let d = inf.scale(k);
        let pts: Vec<Point> = (0..n).map(|a| pt(&c, [a, 0, 1])).collect();
        let mut dbar = d.clone();
        for p in &pts {
            dbar = ok(dbar.sub(&ok(Divisor::at(&c, p, 0, 1))?))?;
        }
        let g = ok(ag_generator_matrix(&c, &d, &pts))?;
        let l = ok(rr_basis(&c, &d))?.ell();
        let lbar = ok(rr_basis(&c, &dbar))?.ell();
        ensure!(g.rank() == l - lbar, "rank {} vs {l} - {lbar} for k = {k}, n = {n}", g.rank());
    }
    Ok(())
}

/// Two processes with the same seed print the same bytes.
fn criterion_11() -> Check {
    let dir = std::env::temp_dir().join(format!("rrspace-acceptance-{}", std::process::id()));
    ok(std::fs::create_dir_all(&dir))?;
    let write = |name: &str, body: &str| -> String {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let cusp = write("cusp.curve", "field = GF(2)\nF = y^3 + x^3 + x^2*z\n");
    let p1 = write("p1.div", "point=(1:0:1) mult=1\n");
    let ell = write("ell.curve", "field = GF(5)\nF = y^2*z - x^3 - x*z^2 - z^3\n");
    let o3 = write("o3.div", "point=(0:1:0) mult=3\n");
    let line = write("line.curve", "field = GF(5)\nF = y\n");
    let inf2 = write("inf2.div", "point=(1:0:0) mult=2\n");
    let node = write("node.curve", "field = GF(5)\nF = y^2*z - x^3 - x^2*z\n");
    let runs: Vec<Vec<&str>> = vec![
        vec!["adjoint", &cusp],
        vec!["divisor", &cusp, "y"],
        vec!["rrbasis", &cusp, &p1],
        vec!["places", &cusp, "(0:0:1)"],
        vec!["places", &node, "(0:0:1)", "--terms", "5"],
        vec!["--seed", "3", "rrbasis", &ell, &o3],
        vec!["agcode", &line, &inf2],
        vec!["--seed", "11", "agcode", &ell, &o3],
        vec!["--seed", "5", "share", "shamir", "--field", "GF(101)", "--secret", "9", "--threshold", "3", "--ids", "1,2,3,4"],
        vec!["--seed", "11", "share", "ag", &ell, &o3, "--secret", "2", "--secret-point", "(0:1:1)"],
    ];
    let exe = env!("CARGO_BIN_EXE_rrspace");
    for args in runs {
        let a = ok(Command::new(exe).args(&args).output())?;
        let b = ok(Command::new(exe).args(&args).output())?;
        ensure!(a.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout && a.status.code() == b.status.code(), "{args:?} differs between runs");
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("cuspidal cubic end to end", criterion_1),
        ("local data at the cusp and the wild branch", criterion_2),
        ("Newton polygon and Newton polynomial", criterion_3),
        ("dimension law on the line", criterion_4),
        ("Bezout", criterion_5),
        ("valuation cross-check and axioms", criterion_6),
        ("Hensel suite", criterion_7),
        ("genus", criterion_8),
        ("genus-zero dimension", criterion_9),
        ("codes and secret sharing", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        let r = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let ms = t.elapsed().as_millis();
        match r {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
