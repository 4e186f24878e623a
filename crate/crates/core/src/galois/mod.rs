//! Galois lines: the deck group `G_ℓ` inside Aut(X), the degree of the
//! projection from `ℓ`, and the verdict combining both with the geometric
//! case of the line.
//!
//! A line is Galois exactly when `|G_ℓ| = deg π_ℓ`, where `G_ℓ` is the set of
//! automorphisms `σ` with `π_ℓ∘φ∘σ = π_ℓ∘φ`. Since Aut(X) is finite and
//! fully enumerated, no function-field factorization is needed.

mod classify;
mod sweep;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

pub use classify::{classify_line, Witnesses};
pub use sweep::{
    expected_counts, GaloisRow, SampleSummary, SweepConfig, SweepMode, SweepReport,
};

use crate::aut::{apply, AutGroup, CurveAutomorphism};
use crate::curve::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{poly, Fe, Tower};
use crate::group::{CayleyTable, GroupIsoClass};
use crate::projective::{dot, LineP3, LinearForm, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II-b")]
    IIb,
    #[serde(rename = "II-c")]
    IIc,
    #[serde(rename = "III-d")]
    IIId,
    #[serde(rename = "III-e")]
    IIIe,
    #[serde(rename = "III-f")]
    IIIf,
    #[serde(rename = "IV")]
    IV,
    NonGalois,
}

impl Case {
    pub const GALOIS: [Case; 7] = [
        Case::I,
        Case::IIb,
        Case::IIc,
        Case::IIId,
        Case::IIIe,
        Case::IIIf,
        Case::IV,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Case::I => "I",
            Case::IIb => "II-b",
            Case::IIc => "II-c",
            Case::IIId => "III-d",
            Case::IIIe => "III-e",
            Case::IIIf => "III-f",
            Case::IV => "IV",
            Case::NonGalois => "NonGalois",
        }
    }

    /// Degree of the projection and isomorphism class of `G_ℓ` for a
    /// Galois line of this case.
    pub fn expected(&self, f: &Tower) -> Option<(u64, GroupIsoClass)> {
        let q = f.q() as u64;
        let k = (q + 1) / 2;
        Some(match self {
            Case::I => (k, GroupIsoClass::Cyclic { order: k }),
            Case::IIb => (q + 1, GroupIsoClass::Cyclic { order: q + 1 }),
            Case::IIc => (q + 1, GroupIsoClass::Abelian { invariant_factors: vec![k, 2] }),
            Case::IIId => (q - 1, GroupIsoClass::Dihedral { order: q - 1 }),
            Case::IIIe => (
                q,
                GroupIsoClass::ElementaryAbelian { p: f.p() as u64, rank: f.n() },
            ),
            Case::IIIf => (q + 1, GroupIsoClass::Dihedral { order: q + 1 }),
            Case::IV => (q + 1, GroupIsoClass::Cyclic { order: q + 1 }),
            Case::NonGalois => return None,
        })
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct LineVerdict {
    pub line: LineP3,
    /// Geometric case from [`classify_line`].
    pub case: Case,
    pub galois: bool,
    /// `None` when the stabilizer is trivial and the degree was skipped.
    pub degree: Option<u64>,
    pub stabilizer_order: u64,
    pub group: Option<GroupIsoClass>,
    pub witnesses: Witnesses,
}

impl LineVerdict {
    /// Disagreement between the geometric case and the computed data.
    pub fn mismatch(&self, f: &Tower) -> Option<String> {
        let line = self.line.to_string(f);
        if let Some(d) = self.degree {
            if d % self.stabilizer_order != 0 {
                return Some(format!(
                    "{line}: stabilizer order {} does not divide degree {d}",
                    self.stabilizer_order
                ));
            }
        }
        if self.galois != (self.case != Case::NonGalois) {
            return Some(format!(
                "{line}: case {} but galois = {} (degree {:?}, stabilizer {})",
                self.case, self.galois, self.degree, self.stabilizer_order
            ));
        }
        if let Some((deg, grp)) = self.case.expected(f) {
            if self.degree != Some(deg) {
                return Some(format!(
                    "{line}: case {} expects degree {deg}, got {:?}",
                    self.case, self.degree
                ));
            }
            match &self.group {
                Some(g) if *g == grp => {}
                other => {
                    let got = other.as_ref().map_or("none".to_string(), |g| g.to_string());
                    return Some(format!(
                        "{line}: case {} expects group {grp}, got {got}",
                        self.case
                    ));
                }
            }
        }
        None
    }
}

/// One linear form pulled back by φ: `u(x) + b·y` with `u = c + a·x + d·x²`.
#[derive(Clone, Debug)]
struct Pulled {
    u: poly::Poly,
    b: Fe,
}

fn pull(form: &LinearForm) -> Pulled {
    let [a, b, c, d] = *form;
    Pulled { u: poly::trim(vec![c, a, d]), b }
}

fn compose_form(f: &Tower, form: &LinearForm, a: &[[Fe; 4]; 4]) -> LinearForm {
    std::array::from_fn(|col| {
        (0..4).fold(Fe::ZERO, |acc, r| f.add(acc, f.mul(form[r], a[r][col])))
    })
}

pub struct GaloisEngine {
    curve: Curve,
    group: AutGroup,
    actions: Vec<[[Fe; 4]; 4]>,
    points: Vec<CurvePoint>,
    phis: Vec<[Fe; 4]>,
    /// `perm[s * n + i]` is the index of `σ_s(P_i)`.
    perm: Vec<u32>,
}

impl GaloisEngine {
    pub fn new(q: u64) -> Result<GaloisEngine> {
        GaloisEngine::from_curve(Curve::new(q)?)
    }

    pub fn from_curve(curve: Curve) -> Result<GaloisEngine> {
        let group = AutGroup::build(&curve)?;
        let f = curve.field();
        let points = curve.curve_points(2)?;
        let phis: Vec<[Fe; 4]> = points.iter().map(|p| curve.phi(p)).collect();
        let index: HashMap<CurvePoint, u32> = points.iter().zip(0u32..).map(|(p, i)| (*p, i)).collect();
        let n = points.len();
        let mut perm = Vec::with_capacity(group.order() * n);
        for s in group.elements() {
            for p in &points {
                perm.push(index[&apply(&curve, s, p)]);
            }
        }
        let actions = group.elements().iter().map(|s| s.linear_action(f)).collect();
        Ok(GaloisEngine { curve, group, actions, points, phis, perm })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &Tower {
        self.curve.field()
    }

    pub fn group(&self) -> &AutGroup {
        &self.group
    }

    /// Exact membership test for `σ ∈ G_ℓ`.
    ///
    /// With `A` the linear map inducing `σ`, `F_i∘φ∘σ = (F_i∘A)∘φ / (cx+d)²`,
    /// so `σ ∈ G_ℓ` iff `(F₀∘A)(φ)·F₁(φ) − (F₁∘A)(φ)·F₀(φ) = 0` in `k(X)`.
    /// Each factor has the shape `u(x) + b·y` with `deg u ≤ 2`, so the
    /// product has `y`-degree at most 2. As `k ≥ 3` for `q ≥ 5`, the
    /// monomials `x^i y^j` with `j ≤ 2` are linearly independent in `k(X)`
    /// and the identity holds iff every coefficient vanishes.
    pub fn preserves_projection(&self, forms: &[LinearForm; 2], s: usize) -> bool {
        let f = self.field();
        let a = &self.actions[s];
        let g0 = pull(&compose_form(f, &forms[0], a));
        let g1 = pull(&compose_form(f, &forms[1], a));
        let f0 = pull(&forms[0]);
        let f1 = pull(&forms[1]);
        let y0 = poly::sub(f, &poly::mul(f, &g0.u, &f1.u), &poly::mul(f, &g1.u, &f0.u));
        let y1 = poly::sub(
            f,
            &poly::add(f, &poly::scale(f, &f1.u, g0.b), &poly::scale(f, &g0.u, f1.b)),
            &poly::add(f, &poly::scale(f, &f0.u, g1.b), &poly::scale(f, &g1.u, f0.b)),
        );
        let y2 = f.sub(f.mul(g0.b, f1.b), f.mul(g1.b, f0.b));
        y0.is_empty() && y1.is_empty() && y2.is_zero()
    }

    /// Indices (into the group's element list) of `G_ℓ`.
    pub fn fiber_group(&self, line: &LineP3) -> Result<Vec<usize>> {
        let f = self.field();
        let forms = line.dual_forms(f);
        let n = self.points.len();
        let v0: Vec<Fe> = self.phis.iter().map(|p| dot(f, &forms[0], p)).collect();
        let v1: Vec<Fe> = self.phis.iter().map(|p| dot(f, &forms[1], p)).collect();
        // Cross-ratio test at the level-2 points: necessary, and rejects
        // almost every σ after one or two points.
        let mut members = Vec::new();
        'outer: for s in 0..self.group.order() {
            let row = &self.perm[s * n..(s + 1) * n];
            for i in 0..n {
                let j = row[i] as usize;
                if f.mul(v0[j], v1[i]) != f.mul(v1[j], v0[i]) {
                    continue 'outer;
                }
            }
            if self.preserves_projection(&forms, s) {
                members.push(s);
            }
        }
        Ok(members)
    }

    pub fn fiber_group_elements(&self, line: &LineP3) -> Result<Vec<CurveAutomorphism>> {
        Ok(self
            .fiber_group(line)?
            .into_iter()
            .map(|i| self.group.elements()[i])
            .collect())
    }

    /// Degree of `π_ℓ∘φ`: `q+1` minus the degree of the base divisor
    /// `Σ_P min(ord_P F₀∘φ, ord_P F₁∘φ)`.
    ///
    /// The pencil is rebased so that `G₀` has no `Y` term. When `G₁` has a
    /// `Y` term the common affine zeros sit over the roots of
    /// `gcd(u₀, h^k − (x^q − x))` with `y = h(x)` on `G₁ = 0`; a root `r ∉ F_q`
    /// contributes its multiplicity in the gcd, a root in `F_q` (a ramified
    /// point, where `ord(x − r) = k`) contributes `min(k·m(u₀), m(g))`.
    /// Otherwise both forms are polynomials in `x` and every common root
    /// contributes `k` times its multiplicity in the gcd.
    pub fn projection_degree(&self, line: &LineP3) -> u64 {
        let f = self.field();
        let c = &self.curve;
        let (q, k) = (c.q() as usize, c.k() as usize);
        let [mut g0, mut g1] = line.dual_forms(f);
        if !g0[1].is_zero() {
            if g1[1].is_zero() {
                std::mem::swap(&mut g0, &mut g1);
            } else {
                let t = f.div(g0[1], g1[1]);
                g0 = std::array::from_fn(|i| f.sub(g0[i], f.mul(t, g1[i])));
            }
        }
        let at_inf = c.order_at_infinity(&g0).min(c.order_at_infinity(&g1));
        let u0 = pull(&g0).u;
        let p1 = pull(&g1);
        let affine = if p1.b.is_zero() {
            let gg = poly::gcd(f, &u0, &p1.u);
            k * poly::degree(&gg).unwrap_or(0)
        } else {
            let binv = f.neg(f.inv(p1.b).unwrap());
            let h = poly::scale(f, &p1.u, binv);
            let mut rel = vec![Fe::ZERO; q + 1];
            rel[q] = Fe::ONE;
            rel[1] = f.neg(Fe::ONE);
            let g = poly::sub(f, &poly::pow(f, &h, k as u64), &rel);
            let gg = poly::gcd(f, &u0, &g);
            let mut base = poly::degree(&gg).unwrap_or(0);
            for r in f.level_elements(1) {
                if poly::eval(f, &gg, r).is_zero() {
                    let m0 = poly::root_multiplicity(f, &u0, r);
                    let mg = poly::root_multiplicity(f, &g, r);
                    base = base + (k * m0).min(mg) - poly::root_multiplicity(f, &gg, r);
                }
            }
            base
        };
        let base = affine + at_inf;
        assert!(base <= q, "base divisor of degree {base} leaves no moving part");
        (q + 1 - base) as u64
    }

    /// `π_ℓ∘φ(P)` in P¹, extended to base points by leading coefficients.
    pub fn projection_value(&self, line: &LineP3, p: &CurvePoint) -> Result<ProjPoint> {
        let f = self.field();
        let c = &self.curve;
        let forms = line.dual_forms(f);
        let pair = match p {
            CurvePoint::Infinity => {
                let t0 = c.pole_term(&forms[0]);
                let t1 = c.pole_term(&forms[1]);
                match t0.valuation.cmp(&t1.valuation) {
                    std::cmp::Ordering::Equal => [t0.coeff, t1.coeff],
                    std::cmp::Ordering::Greater => [Fe::ZERO, Fe::ONE],
                    std::cmp::Ordering::Less => [Fe::ONE, Fe::ZERO],
                }
            }
            CurvePoint::Affine { .. } => {
                let order = c.q() as usize + 1;
                let s0 = c.form_series(&forms[0], p, order)?;
                let s1 = c.form_series(&forms[1], p, order)?;
                let m = (0..=order)
                    .find(|&i| !s0[i].is_zero() || !s1[i].is_zero())
                    .ok_or_else(|| Error::Internal("both sections vanish to high order".into()))?;
                [s0[m], s1[m]]
            }
        };
        ProjPoint::new(f, &pair)
    }

    pub fn evaluate(&self, line: &LineP3) -> Result<LineVerdict> {
        let f = self.field();
        let (case, witnesses) = classify_line(&self.curve, line);
        let members = self.fiber_group(line)?;
        let order = members.len() as u64;
        let (degree, group) = if order > 1 {
            let elems: Vec<CurveAutomorphism> =
                members.iter().map(|&i| self.group.elements()[i]).collect();
            let table = CayleyTable::build(&elems, |a, b| crate::aut::compose(&self.curve, a, b))
                .map_err(|e| {
                    Error::Internal(format!("stabilizer of {} not closed: {e}", line.to_string(f)))
                })?;
            (Some(self.projection_degree(line)), Some(table.identify()))
        } else {
            (None, None)
        };
        Ok(LineVerdict {
            line: *line,
            case,
            galois: degree == Some(order),
            degree,
            stabilizer_order: order,
            group,
            witnesses,
        })
    }

    pub fn is_galois(&self, line: &LineP3) -> Result<(bool, LineVerdict)> {
        let v = self.evaluate(line)?;
        Ok((v.galois, v))
    }

    /// Checks that `G_ℓ` is transitive on up to `fibers` fibers of
    /// `π_ℓ∘φ` over values hit by level-4 points. Returns the number of
    /// fibers checked, or a description of the first failure.
    pub fn fiber_transitivity(&self, line: &LineP3, fibers: usize) -> Result<usize> {
        let c = &self.curve;
        let members = self.fiber_group_elements(line)?;
        let pts = c.curve_points(4)?;
        let mut by_value: HashMap<ProjPoint, Vec<CurvePoint>> = HashMap::new();
        for p in &pts {
            by_value.entry(self.projection_value(line, p)?).or_default().push(*p);
        }
        let mut values: Vec<&ProjPoint> = by_value.keys().collect();
        values.sort();
        let step = (values.len() / fibers.max(1)).max(1);
        let mut checked = 0;
        for v in values.into_iter().step_by(step).take(fibers) {
            let fiber = &by_value[v];
            let mut orbit: Vec<CurvePoint> =
                members.iter().map(|s| apply(c, s, &fiber[0])).collect();
            orbit.sort();
            orbit.dedup();
            let mut sorted = fiber.clone();
            sorted.sort();
            if orbit != sorted {
                return Err(Error::Internal(format!(
                    "fiber over {} has {} points but the orbit has {}",
                    v.to_string(self.field()),
                    sorted.len(),
                    orbit.len()
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[cfg(test)]
mod tests;
