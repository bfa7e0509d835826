use super::*;
use crate::newton::newton_polygon;
use crate::polyring::parse_trihomog;
use proptest::prelude::*;

fn curve(s: &str, p: u64) -> Curve {
    Curve::new(parse_trihomog(s, Field::prime(p).unwrap()).unwrap()).unwrap()
}

fn pt(c: &Curve, v: [u64; 3]) -> Point {
    Point::from_u64s(c.field(), v).unwrap()
}

fn th(c: &Curve, s: &str) -> TriHomog {
    parse_trihomog(s, c.field()).unwrap()
}

fn series(f: Field, c: &[u64], prec: usize) -> TruncSeries {
    TruncSeries::from_u64s(f, c, prec)
}

#[test]
fn cusp_local_data() {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let places = c.places_at(&pt(&c, [0, 0, 1])).unwrap();
    assert_eq!(places.len(), 1);
    let pl = &places[0];
    assert_eq!(pl.ram_index(), 3);
    assert_eq!(pl.degree(), 1);
    let (x, y) = pl.parametrize(6).unwrap();
    let f = c.field();
    assert_eq!(x, series(f, &[0, 0, 0, 1], 6));
    assert_eq!(y.valuation(), Some(2));
    assert!(y.coeff(2).is_one());
    // the local factor is the curve equation itself
    let lf = pl.local_factor(6).unwrap();
    let want = crate::polyring::parse_bipoly("y^3 + x^3 + x^2", f).unwrap().to_series_poly(6);
    assert_eq!(lf, want);
    for (a, w) in [("x", 3), ("y", 2), ("z", 0)] {
        assert_eq!(pl.valuation(&th(&c, a)).unwrap(), Val::Finite(w), "w({a})");
        assert_eq!(pl.valuation_param(&th(&c, a)).unwrap(), Val::Finite(w));
    }
    // y^2 / x has valuation one
    let y2 = pl.valuation(&th(&c, "y^2")).unwrap().finite().unwrap();
    let x = pl.valuation(&th(&c, "x*z")).unwrap().finite().unwrap();
    assert_eq!(y2 - x, 1);
    assert_eq!(pl.valuation(&th(&c, "y^3 + x^3 + x^2*z")).unwrap(), Val::Infinite);
}

#[test]
fn wild_smooth_branch() {
    // x + x y + y^2: tau = y and x = y^2 / (1 + y)
    let c = curve("x*z + x*y + y^2", 2);
    let pl = &c.places_at(&pt(&c, [0, 0, 1])).unwrap()[0];
    assert_eq!(pl.ram_index(), 2);
    assert!(!pl.is_tame());
    let (x, y) = pl.parametrize(6).unwrap();
    let f = c.field();
    assert_eq!(x, series(f, &[0, 0, 1, 1, 1, 1], 6));
    assert_eq!(y, series(f, &[0, 1], 6));
}

#[test]
fn lines() {
    let c = curve("y", 5);
    let pl = &c.places_at(&pt(&c, [0, 0, 1])).unwrap()[0];
    let (x, y) = pl.parametrize(5).unwrap();
    assert_eq!(x, TruncSeries::var(c.field(), 5));
    assert!(y.is_zero());
    assert_eq!(pl.valuation(&th(&c, "x")).unwrap(), Val::Finite(1));
    assert_eq!(pl.valuation(&th(&c, "y")).unwrap(), Val::Infinite);

    // the line x = 0 needs exchanged local coordinates
    let c = curve("x", 5);
    let center = c.center(&pt(&c, [0, 0, 1])).unwrap();
    assert!(center.swapped);
    let pl = &center.places[0];
    assert_eq!(pl.valuation(&th(&c, "y")).unwrap(), Val::Finite(1));
    assert_eq!(pl.valuation(&th(&c, "x + y")).unwrap(), Val::Finite(1));
}

#[test]
fn node_two_branches() {
    let c = curve("y^2*z - x^2*z - x^3", 5);
    let p = pt(&c, [0, 0, 1]);
    let places = c.places_at(&p).unwrap();
    assert_eq!(places.len(), 2);
    for pl in &places {
        assert_eq!(pl.ram_index(), 1);
        assert_eq!(pl.valuation(&th(&c, "y")).unwrap(), Val::Finite(1));
        assert_eq!(pl.valuation(&th(&c, "y - x")).unwrap().finite().unwrap() + pl.valuation(&th(&c, "y + x")).unwrap().finite().unwrap(), 3);
    }
    let lf = local_branches(&c, &p, 6).unwrap();
    assert_eq!(lf.clusters.len(), 2);
    assert!(lf.clusters.iter().all(|cl| cl.places.len() == 1));
}

#[test]
fn conjugate_branches_form_one_place() {
    // y^2 + x^2 + x^3 over GF(3): the tangents y = +-i x are conjugate
    let c = curve("y^2*z + x^2*z + x^3", 3);
    let p = pt(&c, [0, 0, 1]);
    let places = c.places_at(&p).unwrap();
    assert_eq!(places.len(), 1);
    assert_eq!(places[0].degree(), 2);
    assert_eq!(places[0].valuation(&th(&c, "y")).unwrap(), Val::Finite(1));
    let lf = local_branches(&c, &p, 5).unwrap();
    assert_eq!(lf.factors.len(), 1);
    assert_eq!(lf.factors[0].0.ydeg(), Some(2));
}

#[test]
fn point_at_infinity_and_extension_center() {
    // x^3 + y^2 z + y z^2 over GF(2): the point (0:1:0) lies at infinity
    let c = curve("x^3 + y^2*z + y*z^2", 2);
    let inf = pt(&c, [0, 1, 0]);
    let pl = &c.places_at(&inf).unwrap()[0];
    assert_eq!(pl.chart(), 1);
    assert_eq!(pl.valuation(&th(&c, "z")).unwrap(), Val::Finite(3));
    assert_eq!(pl.valuation(&th(&c, "x")).unwrap(), Val::Finite(1));
    // a point over GF(4) and its conjugate share one closed place
    let f4 = Field::new(2, 2).unwrap();
    let t = Elem::gen(f4);
    let a = Point::new([Elem::one(f4), t.clone(), Elem::one(f4)]).unwrap();
    if c.contains(&a).unwrap() {
        let k1 = c.places_at(&a).unwrap()[0].key().clone();
        let k2 = c.places_at(&a.frobenius(1)).unwrap()[0].key().clone();
        assert_eq!(k1, k2);
    }
}

#[test]
fn center_must_lie_on_curve() {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    assert!(matches!(c.center(&pt(&c, [0, 1, 1])), Err(Error::CenterNotOnCurve)));
}

#[test]
fn reducedness_check() {
    let f = Field::prime(5).unwrap();
    let sq = parse_trihomog("(x + y)^2", f).unwrap();
    assert!(matches!(Curve::new(sq), Err(Error::CurveNotIrreducible(_))));
}

fn test_curves() -> Vec<(Curve, Vec<Point>)> {
    let mut v = Vec::new();
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let p = vec![pt(&c, [0, 0, 1]), pt(&c, [1, 0, 1]), pt(&c, [1, 1, 0])];
    v.push((c, p));
    let c = curve("y^2*z - x^2*z - x^3", 5);
    let p = vec![pt(&c, [0, 0, 1]), pt(&c, [0, 1, 0]), pt(&c, [4, 0, 1])];
    v.push((c, p));
    let c = curve("y^2*z^2 - x^4 - x^2*y*z", 7);
    let p = vec![pt(&c, [0, 0, 1])];
    v.push((c, p));
    let c = curve("x^2 + y*z", 3);
    let p = vec![pt(&c, [0, 0, 1]), pt(&c, [0, 1, 0])];
    v.push((c, p));
    v
}

#[test]
fn cross_method_agreement_on_monomials() {
    for (c, pts) in test_curves() {
        for p in &pts {
            for pl in c.places_at(p).unwrap() {
                for d in 0..=3 {
                    for e in crate::polyring::monomials(d) {
                        let m = TriHomog::monomial(Elem::one(c.field()), e);
                        assert_eq!(pl.valuation(&m).unwrap(), pl.valuation_param(&m).unwrap(), "{:?} {:?}", pl, e);
                    }
                }
            }
        }
    }
}

#[test]
fn local_factorization_invariants() {
    for (c, pts) in test_curves() {
        for p in &pts {
            let lf = local_branches(&c, p, 6).unwrap();
            let center = c.center(p).unwrap();
            // unit times factors reproduces the local equation to the certified precision
            let mut prod = SeriesPoly::one(lf.center.field(), 6);
            for (f, _) in &lf.factors {
                prod = prod.mul(f);
            }
            assert_eq!(prod, lf.weierstrass);
            // the unit is certified on weights below n + 6 for weights (n, 1)
            let n = lf.weierstrass.ydeg().unwrap() as u32;
            let w = crate::newton::WeightedValuation::new(n, 1).unwrap();
            let whole = lf.unit.mul(&prod.to_bipoly());
            let cut = |b: &BiPoly| w.truncate(b, (n + 6) as u64).filter(|i, _| i < 6);
            assert_eq!(cut(&whole), cut(&center.local));
            let deg: usize = lf.factors.iter().map(|(_, pl)| pl.ram_index() * pl.field().degree() / lf.center.field().degree()).sum();
            assert_eq!(deg, lf.weierstrass.ydeg().unwrap());
            for (_, pl) in &lf.factors {
                let geo = pl.local_factor(6).unwrap();
                if !geo.coeff(0).is_zero() {
                    let poly = newton_polygon(&geo).unwrap();
                    assert_eq!(poly.vertices.len(), 2, "single edge at {:?}", pl);
                }
            }
        }
    }
}

#[test]
fn uniformizer_generates_value_group() {
    for (c, pts) in test_curves() {
        for p in &pts {
            for pl in c.places_at(p).unwrap() {
                let (phi, psi) = pl.parametrize(16).unwrap();
                let mut g = 0;
                for i in 0..4u64 {
                    for j in 0..4u64 {
                        if let Some(v) = phi.pow(i).mul(&psi.pow(j)).valuation() {
                            g = gcd(g, v);
                        }
                    }
                }
                assert_eq!(g, 1, "{pl:?}");
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn arb_form(d: u32) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0u64..5, crate::polyring::monomials(d).len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn valuation_axioms(a in arb_form(1), b in arb_form(2), c2 in arb_form(2)) {
        let c = curve("y^2*z - x^2*z - x^3", 5);
        let f = c.field();
        let to = |v: &[u64], d| TriHomog::from_vector(f, d, &v.iter().map(|&x| Elem::from_u64(f, x)).collect::<Vec<_>>());
        let (a, b, c2) = (to(&a, 1), to(&b, 2), to(&c2, 2));
        for pl in c.places_at(&pt(&c, [0, 0, 1])).unwrap() {
            let va = pl.valuation(&a).unwrap();
            let vb = pl.valuation(&b).unwrap();
            let vc = pl.valuation(&c2).unwrap();
            prop_assert_eq!(pl.valuation(&a.mul(&b)).unwrap(), va + vb);
            prop_assert!(pl.valuation(&b.add(&c2).unwrap()).unwrap() >= vb.min(vc));
            prop_assert_eq!(pl.valuation_param(&b).unwrap(), vb);
        }
    }
}
