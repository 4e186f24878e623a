use super::*;
use crate::curve::Place;
use crate::projective::parse::parse_line;
use std::collections::BTreeMap;
use std::sync::OnceLock;

fn e5() -> &'static GaloisEngine {
    static E: OnceLock<GaloisEngine> = OnceLock::new();
    E.get_or_init(|| GaloisEngine::new(5).unwrap())
}

fn line(e: &GaloisEngine, s: &str) -> LineP3 {
    parse_line(e.field(), s).unwrap()
}

/// Degree from the two explicit section divisors, when all their zeros
/// are resolved over the top level.
fn degree_by_divisors(e: &GaloisEngine, l: &LineP3) -> Option<u64> {
    let c = e.curve();
    let [f0, f1] = l.dual_forms(e.field());
    let d0 = c.section_of_form(&f0);
    let d1 = c.section_of_form(&f1);
    if d0.beyond_cap > 0 || d1.beyond_cap > 0 {
        return None;
    }
    let mut base = 0;
    for (pl, m0) in &d0.entries {
        let m = (*m0).min(d1.multiplicity(pl));
        base += match pl {
            Place::Point(_) => m,
            Place::Fiber { .. } => m * c.k() as usize,
        };
    }
    Some((c.q() as usize + 1 - base) as u64)
}

#[test]
fn projection_degree_examples() {
    let e = e5();
    assert_eq!(e.projection_degree(&line(e, "X; Z")), 3);
    assert_eq!(e.projection_degree(&line(e, "Z; W")), 6);
    assert_eq!(e.projection_degree(&line(e, "Y; W")), 5);
}

#[test]
fn projection_degree_agrees_with_divisors() {
    use rand::{Rng, SeedableRng};
    let e = e5();
    let f = e.field();
    let mut lines = e.strata();
    let space = crate::projective::LineSpace::new(f, 2, false).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    lines.extend((0..300).map(|_| space.get(rng.gen_range(0..space.len()))));
    let mut compared = 0;
    for l in &lines {
        let d = e.projection_degree(l);
        assert!(d >= 1);
        if let Some(dd) = degree_by_divisors(e, l) {
            assert_eq!(d, dd, "{}", l.to_string(f));
            compared += 1;
        }
    }
    assert!(compared > 1000);
}

#[test]
fn fiber_group_examples() {
    let e = e5();
    let ker = e.fiber_group_elements(&line(e, "X; Z")).unwrap();
    assert_eq!(ker.len(), 3);
    assert!(ker.iter().all(|s| s.is_kernel()));
    assert_eq!(e.fiber_group(&line(e, "Z; W")).unwrap().len(), 6);
    let v = e.evaluate(&line(e, "X - Y; Z - W")).unwrap();
    assert_eq!(v.stabilizer_order, 1);
    assert!(!v.galois);
    assert_eq!(v.case, Case::NonGalois);
}

#[test]
fn membership_matches_pointwise_oracle() {
    // The exact identity agrees with comparing π_ℓ∘φ∘σ and π_ℓ∘φ on every
    // level-4 point.
    let e = e5();
    let f = e.field();
    let c = e.curve();
    let pts = c.curve_points(4).unwrap();
    for s in ["X; Z", "Z; W", "Y; X", "Y; W - 2*u*X + 2*Z", "X; W - 3*Z", "X - Y; Z - W"] {
        let l = line(e, s);
        let forms = l.dual_forms(f);
        for (i, sigma) in e.group().elements().iter().enumerate() {
            let pointwise = pts.iter().all(|p| {
                let a = c.phi(p);
                let b = c.phi(&apply(c, sigma, p));
                f.mul(dot(f, &forms[0], &b), dot(f, &forms[1], &a))
                    == f.mul(dot(f, &forms[1], &b), dot(f, &forms[0], &a))
            });
            assert_eq!(e.preserves_projection(&forms, i), pointwise, "{s}");
        }
    }
}

#[test]
fn galois_examples() {
    let e = e5();
    let (g, v) = e.is_galois(&line(e, "X; Z")).unwrap();
    assert!(g);
    assert_eq!(v.group, Some(GroupIsoClass::Cyclic { order: 3 }));
    let (g, v) = e.is_galois(&line(e, "Y; X")).unwrap();
    assert!(g);
    assert_eq!(v.case, Case::IIId);
    assert_eq!(v.group, Some(GroupIsoClass::Dihedral { order: 4 }));
    assert_eq!(v.group, Some(GroupIsoClass::Abelian { invariant_factors: vec![2, 2] }));
    let (g, v) = e.is_galois(&line(e, "Y; W - 2*u*X + 2*Z")).unwrap();
    assert!(g);
    assert_eq!(v.case, Case::IV);
    assert_eq!(v.group, Some(GroupIsoClass::Cyclic { order: 6 }));
    assert_eq!(v.mismatch(e.field()), None);
}

#[test]
fn classification_examples() {
    let e = e5();
    let f = e.field();
    let c = e.curve();
    let (case, w) = classify_line(c, &line(e, "Z; W"));
    assert_eq!(case, Case::IIb);
    assert_eq!(w.meet_point, Some(ProjPoint::from_ints(f, &[1, 0, 0, 0]).unwrap()));
    let (case, w) = classify_line(c, &line(e, "X; W - 3*Z"));
    assert_eq!(case, Case::IIc);
    let u = f.generator('u').unwrap();
    let r = c.conic_point_at(u);
    assert_eq!(r, ProjPoint::new(f, &[u, Fe::ZERO, Fe::ONE, f.from_int(2)]).unwrap());
    assert!(w.conic_points.contains(&r));
    let (case, w) = classify_line(c, &line(e, "Y; W - 2*Z"));
    assert_eq!(case, Case::IIIf);
    let mut want = vec![r, c.conic_point_at(f.neg(u))];
    want.sort();
    let mut got = w.conic_points.clone();
    got.sort();
    assert_eq!(got, want);
    assert_eq!(classify_line(c, &line(e, "Y; W")).0, Case::IIIe);
    assert_eq!(classify_line(c, &line(e, "X - Y; Z - W")).0, Case::NonGalois);
}

#[test]
fn every_case_is_consistent_on_strata() {
    let e = e5();
    let f = e.field();
    let mut counts: BTreeMap<Case, u64> = BTreeMap::new();
    for l in e.strata() {
        let v = e.evaluate(&l).unwrap();
        assert_eq!(v.mismatch(f), None);
        if v.galois {
            *counts.entry(v.case).or_default() += 1;
        }
    }
    assert_eq!(counts, expected_counts(5));
}

#[test]
fn transitivity_on_representatives() {
    let e = e5();
    for s in ["X; Z", "Z; W", "X; W - 3*Z", "Y; X", "Y; W", "Y; W - 2*Z", "Y; W - 2*u*X + 2*Z"] {
        let l = line(e, s);
        assert!(e.is_galois(&l).unwrap().0);
        assert_eq!(e.fiber_transitivity(&l, 20).unwrap(), 20, "{s}");
    }
    // Non-Galois lines have fibers larger than the orbits.
    assert!(e.fiber_transitivity(&line(e, "X - Y; Z - W"), 20).is_err());
}

#[test]
fn projection_value_at_base_points() {
    let e = e5();
    let f = e.field();
    // Y; X: base points P_0 and P_∞; values through leading terms.
    let l = line(e, "Y; X");
    let v0 = e.projection_value(&l, &CurvePoint::Affine { x: Fe::ZERO, y: Fe::ZERO }).unwrap();
    let vinf = e.projection_value(&l, &CurvePoint::Infinity).unwrap();
    // x/y vanishes to order 2 at both P_0 and P_∞.
    assert_eq!(v0, ProjPoint::from_ints(f, &[0, 1]).unwrap());
    assert_eq!(vinf, v0);
    // Z/W vanishes at P_∞.
    let l = line(e, "Z; W");
    let v = e.projection_value(&l, &CurvePoint::Infinity).unwrap();
    assert_eq!(v, ProjPoint::from_ints(f, &[0, 1]).unwrap());
}

#[test]
fn small_sweep_report() {
    let e = e5();
    let cfg = SweepConfig {
        mode: SweepMode::Stratified,
        samples: 20,
        seed: 1,
        force: false,
        timed: false,
    };
    let r = e.sweep(&cfg).unwrap();
    assert!(r.passed(), "{:?}", r.mismatches);
    assert_eq!(r.galois_total, 102);
    assert_eq!(r.samples.through_vertex.galois, 10);
    assert_eq!(r.galois_lines.len(), 102);
    let again = e.sweep(&cfg).unwrap();
    assert_eq!(
        serde_json::to_string(&r).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
    assert!(r.to_csv().lines().count() == 103);
}
