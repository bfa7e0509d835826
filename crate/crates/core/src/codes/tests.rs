use super::*;
use crate::polyring::parse_trihomog;
use crate::riemannroch::rr_basis;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn curve(s: &str, p: u64) -> Curve {
    Curve::new(parse_trihomog(s, Field::prime(p).unwrap()).unwrap()).unwrap()
}

fn els(f: Field, v: &[u64]) -> Vec<Elem> {
    v.iter().map(|&a| Elem::from_u64(f, a)).collect()
}

fn pt(c: &Curve, v: [u64; 3]) -> Point {
    Point::from_u64s(c.field(), v).unwrap()
}

#[test]
fn rs_examples() {
    let f = Field::prime(5).unwrap();
    let g = rs_generator_matrix(f, 2, &els(f, &[0, 1, 2])).unwrap();
    assert_eq!(g.rows, vec![els(f, &[1, 1, 1]), els(f, &[0, 1, 2])]);
    assert_eq!(rs_generator_matrix(f, 1, &els(f, &[3, 4])).unwrap().rows, vec![els(f, &[1, 1])]);
    assert_eq!(rs_generator_matrix(f, 3, &els(f, &[3, 4])).unwrap_err(), Error::KTooLarge);
    assert_eq!(rs_generator_matrix(f, 1, &els(f, &[3, 3])).unwrap_err(), Error::DuplicatePoints);
    assert_eq!(g.to_string(), "1 1 1\n0 1 2\n");
}

#[test]
fn ag_on_the_line_is_reed_solomon() {
    let c = curve("y", 5);
    let f = c.field();
    let inf = Divisor::at(&c, &pt(&c, [1, 0, 0]), 0, 1).unwrap();
    let pts: Vec<Point> = (0..3).map(|a| pt(&c, [a, 0, 1])).collect();
    let g = ag_generator_matrix(&c, &inf, &pts).unwrap();
    assert_eq!(g.rows, vec![els(f, &[1, 1, 1]), els(f, &[0, 1, 2])]);
    let d = inf.scale(2);
    let pts: Vec<Point> = (0..4).map(|a| pt(&c, [a, 0, 1])).collect();
    assert_eq!(ag_generator_matrix(&c, &d, &pts).unwrap(), rs_generator_matrix(f, 3, &els(f, &[0, 1, 2, 3])).unwrap());
    assert_eq!(ag_generator_matrix(&c, &d, &[]).unwrap().ncols, 0);
}

#[test]
fn ag_preconditions() {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let d = Divisor::at(&c, &pt(&c, [1, 0, 1]), 0, 1).unwrap();
    // H = y vanishes at (0:0:1)
    assert_eq!(ag_generator_matrix(&c, &d, &[pt(&c, [0, 0, 1])]).unwrap_err(), Error::PointOnDenominator);
    assert_eq!(ag_generator_matrix(&c, &d, &[pt(&c, [0, 1, 1])]).unwrap_err(), Error::PointNotOnCurve);
    assert!(matches!(ag_generator_matrix(&c, &d, &[pt(&c, [1, 0, 1])]), Err(Error::PreconditionViolated(_))));
}

#[test]
fn ag_on_the_example_curve() {
    let c = curve("y^3 + x^3 + x^2*z", 2);
    let f = c.field();
    let d = Divisor::at(&c, &pt(&c, [1, 0, 1]), 0, 1).unwrap();
    // rational points by enumeration, dropping supp D and the zeros of y
    let mut pts = Vec::new();
    for v in [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]] {
        let p = pt(&c, v);
        if c.contains(&p).unwrap() && v[1] != 0 {
            pts.push(p);
        }
    }
    assert_eq!(pts, vec![pt(&c, [1, 1, 0])]);
    let g = ag_generator_matrix(&c, &d, &pts).unwrap();
    // 1 and x/y at (1:1:0)
    assert_eq!(g.rows, vec![els(f, &[1]), els(f, &[1])]);
}

/// `rank E = l(D) - l(D - sum xi)` on the line.
#[test]
fn kernel_dimension_identity() {
    let c = curve("y", 7);
    let inf = Divisor::at(&c, &pt(&c, [1, 0, 0]), 0, 1).unwrap();
    for (k, n) in [(2, 5), (4, 3), (5, 5), (6, 7)] {
        let d = inf.scale(k);
        let pts: Vec<Point> = (0..n).map(|a| pt(&c, [a, 0, 1])).collect();
        let mut dbar = d.clone();
        for p in &pts {
            dbar = dbar.sub(&Divisor::at(&c, p, 0, 1).unwrap()).unwrap();
        }
        let g = ag_generator_matrix(&c, &d, &pts).unwrap();
        let l = rr_basis(&c, &d).unwrap().ell();
        let lbar = rr_basis(&c, &dbar).unwrap().ell();
        assert_eq!(g.rank(), l - lbar, "k={k} n={n}");
    }
}

#[test]
fn shamir_example() {
    let f = Field::prime(5).unwrap();
    let s = shamir_share_with(&els(f, &[3, 2]), &els(f, &[1, 2])).unwrap();
    assert_eq!(s.shares, vec![(Elem::from_u64(f, 1), Elem::from_u64(f, 0)), (Elem::from_u64(f, 2), Elem::from_u64(f, 2))]);
    assert_eq!(shamir_reconstruct(&s.shares, 2).unwrap(), Elem::from_u64(f, 3));
    assert_eq!(shamir_reconstruct(&s.shares[..1], 2).unwrap_err(), Error::TooFewShares);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let one = shamir_share(&Elem::from_u64(f, 4), 1, &els(f, &[1, 2, 3]), &mut rng).unwrap();
    assert!(one.shares.iter().all(|(_, v)| *v == Elem::from_u64(f, 4)));
}

#[test]
fn shamir_privacy_t2_gf5() {
    // every single share value is consistent with every secret
    let f = Field::prime(5).unwrap();
    for id in 1..5u64 {
        for value in 0..5u64 {
            for secret in 0..5u64 {
                let hits = (0..5u64)
                    .filter(|&a1| {
                        let other = id % 4 + 1;
                        let s = shamir_share_with(&els(f, &[secret, a1]), &els(f, &[id, other])).unwrap();
                        s.shares[0].1 == Elem::from_u64(f, value)
                    })
                    .count();
                assert_eq!(hits, 1);
            }
        }
    }
}

#[test]
fn ag_sharing_on_an_elliptic_curve() {
    let c = curve("y^2*z - x^3 - x*z^2 - z^3", 5);
    let o = pt(&c, [0, 1, 0]);
    let d = Divisor::at(&c, &o, 0, 3).unwrap();
    // affine rational points: y^2 = x^3 + x + 1 over GF(5)
    let mut pts = Vec::new();
    for x in 0..5u64 {
        for y in 0..5u64 {
            if (y * y) % 5 == (x * x * x + x + 1) % 5 {
                pts.push(pt(&c, [x, y, 1]));
            }
        }
    }
    assert_eq!(pts.len(), 8);
    let secret_point = pts.remove(0);
    let scheme = AgScheme::new(&c, &d, secret_point, pts).unwrap();
    assert_eq!(scheme.ell(), 3);
    assert_eq!((scheme.t1, scheme.t2), (4, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for s in 0..5 {
        let secret = Elem::from_u64(c.field(), s);
        let shares = scheme.share(&secret, &mut rng).unwrap();
        assert_eq!(scheme.reconstruct(&shares[..4]).unwrap(), secret);
        assert_eq!(scheme.reconstruct(&shares[3..]).unwrap(), secret);
        assert_eq!(scheme.reconstruct(&shares[..2]).unwrap_err(), Error::TooFewShares);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn shamir_round_trip(secret in 0u64..101, t in 1usize..6, extra in 0usize..4, seed in any::<u64>()) {
        let f = Field::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ids = BTreeSet::new();
        while ids.len() < t + extra {
            ids.insert(rng.gen_range(1..101u64));
        }
        let ids: Vec<Elem> = ids.into_iter().map(|a| Elem::from_u64(f, a)).collect();
        let s = shamir_share(&Elem::from_u64(f, secret), t, &ids, &mut rng).unwrap();
        let mut shares = s.shares.clone();
        shares.reverse();
        prop_assert_eq!(shamir_reconstruct(&shares, t).unwrap(), Elem::from_u64(f, secret));
    }
}
