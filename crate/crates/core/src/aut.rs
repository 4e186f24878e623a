//! Automorphisms of the curve as pairs `(M, e)`: `M = [[a,b],[c,d]]` over
//! `F_q` up to scalars and `e ∈ F_{q²}` with `e^k = det M`, acting by
//! `(x, y) ↦ ((ax+b)/(cx+d), e·y/(cx+d)²)`.
//!
//! Restriction to the conic gives a homomorphism onto `PGL(2, F_q)` whose
//! kernel is the `k` maps `(x, y) ↦ (x, ζy)` with `ζ^k = 1`. Hence
//! `|Aut| ≤ k·|PGL(2, q)| = q(q−1)(q+1)²/2`. [`AutGroup::build`] produces
//! that many distinct automorphisms, each checked symbolically, so it is
//! the whole group.
//!
//! Every automorphism is induced by a linear map of P³:
//! `φ(σP) = ((ax+b)(cx+d) : e·y : (cx+d)² : (ax+b)²)`, which is linear in
//! `(x, y, 1, x²)`.

use std::collections::{BTreeMap, HashMap};

use crate::curve::{Curve, CurvePoint};
use crate::error::{Error, Result};
use crate::field::{poly, Fe, Tower};
use crate::group::{CayleyTable, GroupIsoClass};
use crate::projective::ProjPoint;

/// `[a, b, c, d]` for `[[a, b], [c, d]]`.
pub type Mat2 = [Fe; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveAutomorphism {
    pub m: Mat2,
    pub e: Fe,
}

fn det(f: &Tower, m: &Mat2) -> Fe {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

/// Scales `M` so its first nonzero entry is 1, moving `λ²` into `e`.
fn canonicalize(f: &Tower, m: Mat2, e: Fe) -> (Mat2, Fe) {
    let lam = *m.iter().find(|c| !c.is_zero()).expect("nonzero matrix");
    let li = f.inv(lam).unwrap();
    (m.map(|c| f.mul(c, li)), f.mul(e, f.sqr(li)))
}

impl CurveAutomorphism {
    pub fn identity() -> CurveAutomorphism {
        CurveAutomorphism {
            m: [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE],
            e: Fe::ONE,
        }
    }

    /// Accepts any representative of `M` (entries may lie in an extension
    /// as long as some scalar multiple is over `F_q`).
    pub fn from_matrix(curve: &Curve, m: Mat2, e: Fe) -> Result<CurveAutomorphism> {
        let f = curve.field();
        if m.iter().all(|c| c.is_zero()) || det(f, &m).is_zero() {
            return Err(Error::Degenerate("singular matrix"));
        }
        let (m, e) = canonicalize(f, m, e);
        if !m.iter().all(|&c| f.is_in_subfield(c, 1)) {
            return Err(Error::Precondition("matrix is not defined over F_q".into()));
        }
        if f.pow(e, curve.k() as u64) != det(f, &m) {
            return Err(Error::Precondition("e^k differs from det M".into()));
        }
        Ok(CurveAutomorphism { m, e })
    }

    pub fn det(&self, f: &Tower) -> Fe {
        det(f, &self.m)
    }

    pub fn is_kernel(&self) -> bool {
        self.m == [Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE]
    }

    /// Möbius image of `x`, `None` for the point at infinity.
    pub fn mobius(&self, f: &Tower, x: Fe) -> Option<Fe> {
        let [a, b, c, d] = self.m;
        let den = f.add(f.mul(c, x), d);
        f.inv(den).map(|di| f.mul(f.add(f.mul(a, x), b), di))
    }

    /// Rows of the 4×4 matrix `A` with `φ∘σ ∝ A·φ`.
    pub fn linear_action(&self, f: &Tower) -> [[Fe; 4]; 4] {
        let [a, b, c, d] = self.m;
        let two = f.from_int(2);
        let z = Fe::ZERO;
        [
            [f.add(f.mul(a, d), f.mul(b, c)), z, f.mul(b, d), f.mul(a, c)],
            [z, self.e, z, z],
            [f.mul(two, f.mul(c, d)), z, f.sqr(d), f.sqr(c)],
            [f.mul(two, f.mul(a, b)), z, f.sqr(b), f.sqr(a)],
        ]
    }

    pub fn to_string(&self, f: &Tower) -> String {
        let s: Vec<String> = self.m.iter().map(|&c| f.elem_to_string(c)).collect();
        format!(
            "[[{},{}],[{},{}]]; {}",
            s[0],
            s[1],
            s[2],
            s[3],
            f.elem_to_string(self.e)
        )
    }
}

/// Symbolic check that `σ` maps the curve into itself: the transformed
/// equation, cleared of `(cx+d)^(q+1)`, reduces to zero modulo
/// `y^k = x^q − x` in the basis `x^i y^j`, `j < k`.
pub fn verify_preserves_curve(curve: &Curve, s: &CurveAutomorphism) -> bool {
    let f = curve.field();
    let (q, k) = (curve.q() as u64, curve.k() as usize);
    let [a, b, c, d] = s.m;
    if det(f, &s.m).is_zero() {
        return false;
    }
    let num = [b, a];
    let den = [d, c];
    let n = poly::sub(
        f,
        &poly::mul(f, &poly::pow(f, &num, q), &den),
        &poly::mul(f, &num, &poly::pow(f, &den, q)),
    );
    // G = (e y)^k − N(x), indexed by the power of y.
    let mut g: Vec<poly::Poly> = vec![Vec::new(); k + 1];
    g[k] = vec![f.pow(s.e, k as u64)];
    g[0] = poly::scale(f, &n, f.neg(Fe::ONE));
    let mut rel = vec![Fe::ZERO; q as usize + 1];
    rel[q as usize] = Fe::ONE;
    rel[1] = f.neg(Fe::ONE);
    for j in (k..g.len()).rev() {
        let top = std::mem::take(&mut g[j]);
        g[j - k] = poly::add(f, &g[j - k], &poly::mul(f, &top, &rel));
    }
    g.iter().all(|p| poly::trim(p.clone()).is_empty())
}

pub fn apply(curve: &Curve, s: &CurveAutomorphism, p: &CurvePoint) -> CurvePoint {
    let f = curve.field();
    let [a, _, c, d] = s.m;
    let image = match *p {
        CurvePoint::Infinity => {
            if c.is_zero() {
                CurvePoint::Infinity
            } else {
                // a/c ∈ F_q, so the image is a Weierstrass point with y = 0.
                CurvePoint::Affine { x: f.div(a, c), y: Fe::ZERO }
            }
        }
        CurvePoint::Affine { x, y } => {
            let den = f.add(f.mul(c, x), d);
            match s.mobius(f, x) {
                None => CurvePoint::Infinity,
                Some(x1) => CurvePoint::Affine {
                    x: x1,
                    y: f.div(f.mul(s.e, y), f.sqr(den)),
                },
            }
        }
    };
    debug_assert!(curve.is_on_curve(&image));
    image
}

/// Action on the conic `{Y=0, X²=ZW}`; the restriction of the linear map
/// of P³ to the plane `Y = 0`.
pub fn apply_conic(curve: &Curve, s: &CurveAutomorphism, r: &ProjPoint) -> Result<ProjPoint> {
    if !curve.on_conic(r) {
        return Err(Error::NotOnConic);
    }
    let f = curve.field();
    let a = s.linear_action(f);
    let v = r.as_p3();
    let img: Vec<Fe> = a
        .iter()
        .map(|row| (0..4).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(row[j], v[j]))))
        .collect();
    ProjPoint::new(f, &img)
}

pub fn compose(curve: &Curve, s: &CurveAutomorphism, t: &CurveAutomorphism) -> CurveAutomorphism {
    let f = curve.field();
    let [a1, b1, c1, d1] = s.m;
    let [a2, b2, c2, d2] = t.m;
    let m = [
        f.add(f.mul(a1, a2), f.mul(b1, c2)),
        f.add(f.mul(a1, b2), f.mul(b1, d2)),
        f.add(f.mul(c1, a2), f.mul(d1, c2)),
        f.add(f.mul(c1, b2), f.mul(d1, d2)),
    ];
    let (m, e) = canonicalize(f, m, f.mul(s.e, t.e));
    CurveAutomorphism { m, e }
}

pub fn inverse(curve: &Curve, s: &CurveAutomorphism) -> CurveAutomorphism {
    let f = curve.field();
    let [a, b, c, d] = s.m;
    let adj = [d, f.neg(b), f.neg(c), a];
    let dt = s.det(f);
    let (m, e) = canonicalize(f, adj, f.div(f.sqr(dt), s.e));
    CurveAutomorphism { m, e }
}

/// The induced element of `PGL(2, F_q)`, canonical representative.
pub fn restrict_to_conic(s: &CurveAutomorphism) -> Mat2 {
    s.m
}

/// Isomorphism class of a subset closed under composition.
pub fn identify_structure(curve: &Curve, elems: &[CurveAutomorphism]) -> Result<GroupIsoClass> {
    Ok(CayleyTable::build(elems, |a, b| compose(curve, a, b))?.identify())
}

#[derive(Clone, Debug)]
pub struct AutGroup {
    elements: Vec<CurveAutomorphism>,
    index: HashMap<CurveAutomorphism, usize>,
}

impl AutGroup {
    pub fn build(curve: &Curve) -> Result<AutGroup> {
        let f = curve.field();
        if f.ext() < 2 {
            return Err(Error::UnsupportedLevel(2));
        }
        let fq: Vec<Fe> = f.level_elements(1).collect();
        let k = curve.k() as u64;
        let mut elements = Vec::new();
        for &a in &fq {
            for &b in &fq {
                for &c in &fq {
                    for &d in &fq {
                        let m = [a, b, c, d];
                        let first = m.iter().find(|x| !x.is_zero());
                        if first != Some(&Fe::ONE) {
                            continue;
                        }
                        let dt = det(f, &m);
                        if dt.is_zero() {
                            continue;
                        }
                        let es = f.nth_roots_in(dt, k, 2);
                        if es.len() != k as usize {
                            return Err(Error::Internal(format!(
                                "{} roots of det for k = {k}",
                                es.len()
                            )));
                        }
                        for e in es {
                            let s = CurveAutomorphism { m, e };
                            if !verify_preserves_curve(curve, &s) {
                                return Err(Error::Internal(format!(
                                    "{} does not preserve the curve",
                                    s.to_string(f)
                                )));
                            }
                            elements.push(s);
                        }
                    }
                }
            }
        }
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(AutGroup { elements, index })
    }

    pub fn expected_order(q: u64) -> u64 {
        q * (q - 1) * (q + 1) * (q + 1) / 2
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CurveAutomorphism] {
        &self.elements
    }

    pub fn index_of(&self, s: &CurveAutomorphism) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn kernel(&self) -> Vec<CurveAutomorphism> {
        self.elements.iter().filter(|s| s.is_kernel()).copied().collect()
    }

    /// Order of the image in `PGL(2, q)`.
    pub fn image_order(&self) -> usize {
        let mut ms: Vec<Mat2> = self.elements.iter().map(restrict_to_conic).collect();
        ms.sort();
        ms.dedup();
        ms.len()
    }

    pub fn element_order(&self, curve: &Curve, s: &CurveAutomorphism) -> u64 {
        let id = CurveAutomorphism::identity();
        let mut cur = *s;
        let mut n = 1;
        while cur != id {
            cur = compose(curve, &cur, s);
            n += 1;
        }
        n
    }

    /// Number of elements of each order.
    pub fn census(&self, curve: &Curve) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        for s in &self.elements {
            *out.entry(self.element_order(curve, s)).or_default() += 1;
        }
        out
    }
}
