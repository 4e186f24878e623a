use std::sync::OnceLock;

use proptest::prelude::*;

use galois_lines::aut::{apply, compose, inverse, AutGroup, CurveAutomorphism};
use galois_lines::curve::{Curve, CurvePoint};
use galois_lines::galois::GaloisEngine;
use galois_lines::group::{normalize_factors, CayleyTable, GroupIsoClass};
use galois_lines::plane::{model_from_x_axis_point, project_from};
use galois_lines::projective::parse::parse_line;
use galois_lines::projective::{LineP3, ProjPoint};
use galois_lines::{Fe, Tower};

struct Fixture {
    engine: GaloisEngine,
    points4: Vec<CurvePoint>,
}

fn fx() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let engine = GaloisEngine::new(5).unwrap();
        let points4 = engine.curve().curve_points(4).unwrap();
        Fixture { engine, points4 }
    })
}

fn curve() -> &'static Curve {
    fx().engine.curve()
}

fn field() -> &'static Tower {
    fx().engine.field()
}

fn group() -> &'static AutGroup {
    fx().engine.group()
}

fn elem(level: u32) -> impl Strategy<Value = Fe> {
    (0..field().level_size(level)).prop_map(Fe)
}

fn aut() -> impl Strategy<Value = CurveAutomorphism> {
    (0..group().order()).prop_map(|i| group().elements()[i])
}

fn point4() -> impl Strategy<Value = CurvePoint> {
    (0..fx().points4.len()).prop_map(|i| fx().points4[i])
}

fn line(level: u32) -> impl Strategy<Value = LineP3> {
    (prop::array::uniform4(elem(level)), prop::array::uniform4(elem(level)))
        .prop_filter_map("dependent rows", |(a, b)| LineP3::from_rows(field(), a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in elem(4), b in elem(4), c in elem(4)) {
        let f = field();
        prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if let Some(i) = f.inv(a) {
            prop_assert_eq!(f.mul(a, i), Fe::ONE);
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(a in elem(4), b in elem(4)) {
        let f = field();
        let p = f.p() as u64;
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, 5));
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        prop_assert_eq!(f.frobenius(a, 4), a);
        prop_assert_eq!(f.is_in_subfield(a, 2), f.frobenius(a, 2) == a);
    }

    #[test]
    fn composition_acts_pointwise(s in aut(), t in aut(), p in point4()) {
        let c = curve();
        let st = compose(c, &s, &t);
        prop_assert_eq!(apply(c, &st, &p), apply(c, &s, &apply(c, &t, &p)));
        prop_assert!(c.is_on_curve(&apply(c, &s, &p)));
        let si = inverse(c, &s);
        prop_assert_eq!(compose(c, &s, &si), CurveAutomorphism::identity());
        prop_assert!(group().index_of(&st).is_some());
    }

    #[test]
    fn linear_action_commutes_with_embedding(s in aut(), p in point4()) {
        let c = curve();
        let f = field();
        let a = s.linear_action(f);
        let v = c.phi(&p);
        let w: Vec<Fe> = (0..4)
            .map(|r| (0..4).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(a[r][j], v[j]))))
            .collect();
        prop_assert_eq!(ProjPoint::new(f, &w).unwrap(), c.phi_point(&apply(c, &s, &p)));
    }

    #[test]
    fn lines_are_canonical(l in line(2), x in elem(2), y in elem(2)) {
        let f = field();
        let [a, b] = *l.rows();
        // Any other pair of spanning rows gives the same line.
        let mix: [Fe; 4] = std::array::from_fn(|i| f.add(f.mul(x, a[i]), b[i]));
        let other = LineP3::from_rows(f, mix, a).unwrap();
        prop_assert_eq!(other, l);
        if !y.is_zero() {
            let scaled: [Fe; 4] = std::array::from_fn(|i| f.mul(y, b[i]));
            prop_assert_eq!(LineP3::from_rows(f, a, scaled).unwrap(), l);
        }
        prop_assert_eq!(parse_line(f, &l.to_string(f)).unwrap(), l);
        prop_assert_eq!(l.frobenius(f, 2), l);
    }

    #[test]
    fn stabilizer_order_divides_degree(l in line(2)) {
        let e = &fx().engine;
        let d = e.projection_degree(&l);
        let g = e.fiber_group(&l).unwrap().len() as u64;
        prop_assert!((1..=6).contains(&d));
        prop_assert_eq!(d % g, 0);
        let v = e.evaluate(&l).unwrap();
        prop_assert_eq!(v.galois, v.degree == Some(g));
        prop_assert_eq!(v.mismatch(e.field()), None);
    }

    #[test]
    fn finite_abelian_groups_are_identified(m in 1u64..9, n in 1u64..9) {
        let elems: Vec<(u64, u64)> = (0..m).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let t = CayleyTable::build(&elems, |x, y| ((x.0 + y.0) % m, (x.1 + y.1) % n)).unwrap();
        let g = t.identify();
        prop_assert_eq!(g.order(), m * n);
        prop_assert!(t.is_abelian());
        let gcd = (1..=m.min(n)).rev().find(|d| m % d == 0 && n % d == 0).unwrap();
        prop_assert_eq!(gcd == 1, g == GroupIsoClass::Cyclic { order: m * n });
        prop_assert_eq!(g, GroupIsoClass::Abelian { invariant_factors: normalize_factors(&[m, n]) });
    }

    #[test]
    fn dihedral_groups_are_identified(n in 2u64..12) {
        // (rotation, reflection flag) with r^a s^b.
        let elems: Vec<(u64, bool)> = (0..n).flat_map(|a| [(a, false), (a, true)]).collect();
        let t = CayleyTable::build(&elems, |x, y| {
            let a = if x.1 { (x.0 + n - y.0) % n } else { (x.0 + y.0) % n };
            (a, x.1 ^ y.1)
        })
        .unwrap();
        prop_assert_eq!(t.identify(), GroupIsoClass::Dihedral { order: 2 * n });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn first_model_vanishes_on_level4_images(p in point4()) {
        static M: OnceLock<galois_lines::plane::PlaneModel> = OnceLock::new();
        let c = curve();
        let f = field();
        let m = M.get_or_init(|| project_from(c, &ProjPoint::from_ints(f, &[1, 0, 0, 0]).unwrap()).unwrap());
        let eq = model_from_x_axis_point(f);
        if let Some(img) = m.image_of(f, &c.phi(&p)) {
            prop_assert!(eq.eval(f, img.coords()).is_zero());
        }
    }
}
