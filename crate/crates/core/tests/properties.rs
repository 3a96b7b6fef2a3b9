use std::f64::consts::PI;

use proptest::prelude::*;
use visang::{
    absolute_ratio, rho_star, s_triangular, v_ball, v_closed_form, v_half, v_sup, Boundary,
    BoundarySampler, Domain, ExtendedPoint, MoebiusMap, Point,
};

fn ball_point() -> impl Strategy<Value = Point> {
    (0.0..0.999f64, 0.0..2.0 * PI).prop_map(|(r, t)| Point::xy(r * t.cos(), r * t.sin()))
}

fn half_point() -> impl Strategy<Value = Point> {
    (-3.0..3.0f64, 1e-3..3.0f64).prop_map(|(a, b)| Point::xy(a, b))
}

fn plane_point() -> impl Strategy<Value = Point> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(a, b)| Point::xy(a, b))
}

fn t_a() -> impl Strategy<Value = MoebiusMap> {
    ball_point().prop_map(|a| MoebiusMap::canonical_t_a(&a).unwrap())
}

fn similarity() -> impl Strategy<Value = MoebiusMap> {
    (0.0..2.0 * PI, 0.2..5.0f64, plane_point()).prop_map(|(t, l, v)| {
        MoebiusMap::rotation_2d(t)
            .unwrap()
            .then(&MoebiusMap::dilation(2, l).unwrap())
            .unwrap()
            .then(&MoebiusMap::translation(&v).unwrap())
            .unwrap()
    })
}

fn ext(p: &Point) -> ExtendedPoint {
    ExtendedPoint::Finite(p.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn moebius_inverse_round_trip(f in t_a(), x in plane_point()) {
        let back = f.inverse().apply(&f.apply(&ext(&x)).unwrap()).unwrap();
        let back = back.finite().unwrap().clone();
        prop_assert!(back.dist(&x) < 1e-9 * (1.0 + x.norm()));
    }

    #[test]
    fn t_a_preserves_ball(f in t_a(), x in ball_point()) {
        prop_assert!(f.apply_finite(&x).unwrap().norm() < 1.0 + 1e-12);
    }

    #[test]
    fn absolute_ratio_invariant(
        f in t_a(),
        a in ball_point(), b in ball_point(), c in ball_point(), d in ball_point(),
    ) {
        let pts = [&a, &b, &c, &d];
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assume!(pts[i].dist(pts[j]) > 1e-3);
            }
        }
        let before = absolute_ratio(&ext(&a), &ext(&b), &ext(&c), &ext(&d)).unwrap();
        let img: Vec<_> = pts.iter().map(|p| f.apply(&ext(p)).unwrap()).collect();
        let after = absolute_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap();
        prop_assert!((before - after).abs() < 1e-8 * before.max(1.0));
    }

    #[test]
    fn rho_star_moebius_invariant(f in t_a(), x in ball_point(), y in ball_point()) {
        let ball = Domain::unit_ball(2).unwrap();
        let (fx, fy) = (f.apply_finite(&x).unwrap(), f.apply_finite(&y).unwrap());
        prop_assume!(fx.norm() < 1.0 - 1e-9 && fy.norm() < 1.0 - 1e-9);
        let a = rho_star(&ball, &x, &y).unwrap().value;
        let b = rho_star(&ball, &fx, &fy).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn rho_star_cayley_invariant(x in half_point(), y in half_point()) {
        let f = MoebiusMap::cayley_half_to_ball();
        let (fx, fy) = (f.apply_finite(&x).unwrap(), f.apply_finite(&y).unwrap());
        let a = rho_star(&Domain::half_space(2).unwrap(), &x, &y).unwrap().value;
        let b = rho_star(&Domain::unit_ball(2).unwrap(), &fx, &fy).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn v_symmetric_and_in_range(x in ball_point(), y in ball_point(), p in half_point(), q in half_point()) {
        let a = v_ball(&x, &y).unwrap().value;
        prop_assert_eq!(a, v_ball(&y, &x).unwrap().value);
        prop_assert!((0.0..=PI).contains(&a));
        let b = v_half(&p, &q).unwrap().value;
        prop_assert_eq!(b, v_half(&q, &p).unwrap().value);
        prop_assert!((0.0..=PI).contains(&b));
    }

    #[test]
    fn v_ball_rotation_invariant(x in ball_point(), y in ball_point(), t in 0.0..2.0 * PI) {
        let f = MoebiusMap::rotation_2d(t).unwrap();
        let a = v_ball(&x, &y).unwrap().value;
        let b = v_ball(&f.apply_finite(&x).unwrap(), &f.apply_finite(&y).unwrap()).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn v_half_similarity_invariant(x in half_point(), y in half_point(), l in 0.1..10.0f64, s in -5.0..5.0f64) {
        let map = |p: &Point| Point::xy(l * p[0] + s, l * p[1]);
        let a = v_half(&x, &y).unwrap().value;
        let b = v_half(&map(&x), &map(&y)).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn v_between_rho_star_bounds(x in ball_point(), y in ball_point()) {
        let d = Domain::unit_ball(2).unwrap();
        let v = v_closed_form(&d, &x, &y).unwrap().value;
        let r = rho_star(&d, &x, &y).unwrap().value;
        prop_assert!(r <= v + 1e-9 && v <= 2.0 * r + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn v_sup_similarity_invariant(f in similarity(), a in 0.0..1.0f64, b in 0.0..1.0f64, c in 0.0..1.0f64, d in 0.0..1.0f64) {
        let verts = vec![[-1.0, -0.6], [1.2, -0.8], [0.9, 1.0], [-0.7, 0.8]];
        let dom = Domain::Generic2D(Boundary::polygon(verts.clone()).unwrap());
        let img: Vec<[f64; 2]> = verts
            .iter()
            .map(|v| {
                let p = f.apply_finite(&Point::xy(v[0], v[1])).unwrap();
                [p[0], p[1]]
            })
            .collect();
        // a reflection reverses orientation; keep the vertex order counterclockwise
        let signed: f64 = (0..img.len())
            .map(|i| {
                let (p, q) = (img[i], img[(i + 1) % img.len()]);
                p[0] * q[1] - p[1] * q[0]
            })
            .sum();
        let img = if signed < 0.0 { img.into_iter().rev().collect() } else { img };
        let dom2 = Domain::Generic2D(Boundary::polygon(img).unwrap());
        let x = Point::xy(-0.5 + a, -0.3 + 0.6 * b);
        let y = Point::xy(-0.4 + 0.8 * c, -0.2 + 0.5 * d);
        prop_assume!(x.dist(&y) > 1e-6);
        let s1 = BoundarySampler::new(dom).unwrap();
        let s2 = BoundarySampler::new(dom2).unwrap();
        let v1 = v_sup(&s1, &x, &y).unwrap().value;
        let v2 = v_sup(&s2, &f.apply_finite(&x).unwrap(), &f.apply_finite(&y).unwrap()).unwrap().value;
        prop_assert!((v1 - v2).abs() < 1e-8, "{} vs {}", v1, v2);
    }

    #[test]
    fn smaller_domain_larger_metric(x in ball_point(), y in ball_point()) {
        // the disk of radius 1/2 about (0.2, 0) sits inside B²
        let inner = Domain::Generic2D(Boundary::disk([0.2, 0.0], 0.5).unwrap());
        let to_inner = |p: &Point| Point::xy(0.2 + 0.49 * p[0], 0.49 * p[1]);
        let (xi, yi) = (to_inner(&x), to_inner(&y));
        prop_assume!(xi.dist(&yi) > 1e-9);
        let small = BoundarySampler::new(inner).unwrap();
        let big = BoundarySampler::new(Domain::unit_ball(2).unwrap()).unwrap();
        let v_small = v_sup(&small, &xi, &yi).unwrap().value;
        prop_assert!(v_small >= v_ball(&xi, &yi).unwrap().value - 1e-9);
        prop_assert!(
            s_triangular(&small, &xi, &yi).unwrap().value
                >= s_triangular(&big, &xi, &yi).unwrap().value - 1e-9
        );
    }
}
