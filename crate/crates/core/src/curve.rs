//! The curve `y^k = x^q - x` with `k = (q+1)/2`, its embedding
//! `φ = (x : y : 1 : x²)` into P³, and the conic `{Y = 0, X² = ZW}`.
//!
//! Local computations use `s = y - y₀` as a parameter at every affine point.
//! For `F = y^k - x^q + x` we have `∂F/∂x = 1` in characteristic `p | q`, so
//! `x(s)` is a power series in `s` and the Newton step `x ← x - F(x, y)`
//! (that is, `x ← x^q - y^k`) converges from the constant term.
//! At `P_∞` the four coordinate functions have the pairwise distinct
//! valuations `ord(x²) = -(q+1)`, `ord(y) = -q`, `ord(x) = -k`, `ord(1) = 0`,
//! so the order of a hyperplane section is read off the leading monomial.

use crate::error::{Error, Result};
use crate::field::{poly, Fe, Tower};
use crate::projective::{
    line_from_forms, line_through, null_space, LineP3, LinearForm, PlaneP3, ProjPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Affine { x: Fe, y: Fe },
    Infinity,
}

impl CurvePoint {
    pub fn to_string(&self, f: &Tower) -> String {
        match self {
            CurvePoint::Affine { x, y } => {
                format!("({},{})", f.elem_to_string(*x), f.elem_to_string(*y))
            }
            CurvePoint::Infinity => "inf".into(),
        }
    }
}

/// A support element of a hyperplane section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Point(CurvePoint),
    /// All `k` points over `x = r` (an unramified fiber) when their
    /// `y`-coordinates lie beyond the top tower level; the multiplicity is
    /// per point.
    Fiber { x: Fe },
}

/// Zeros of `H∘φ` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDivisor {
    pub entries: Vec<(Place, usize)>,
    /// Total multiplicity of zeros at points not defined over the top level.
    pub beyond_cap: usize,
    fiber_size: usize,
}

impl SectionDivisor {
    pub fn degree(&self) -> usize {
        self.resolved_degree() + self.beyond_cap
    }

    pub fn resolved_degree(&self) -> usize {
        self.entries
            .iter()
            .map(|(pl, m)| match pl {
                Place::Point(_) => *m,
                Place::Fiber { .. } => m * self.fiber_size,
            })
            .sum()
    }

    pub fn multiplicity(&self, place: &Place) -> usize {
        self.entries
            .iter()
            .find(|(p, _)| p == place)
            .map_or(0, |(_, m)| *m)
    }

    pub fn to_string(&self, f: &Tower) -> String {
        let mut parts: Vec<String> = self
            .entries
            .iter()
            .map(|(pl, m)| match pl {
                Place::Point(p) => format!("{}^{m}", p.to_string(f)),
                Place::Fiber { x } => format!("fiber(x={})^{m}", f.elem_to_string(*x)),
            })
            .collect();
        if self.beyond_cap > 0 {
            parts.push(format!("beyond_cap^{}", self.beyond_cap));
        }
        parts.join(" + ")
    }
}

/// Leading behaviour of a form `aX + bY + cZ + dW` pulled back by φ at `P_∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleTerm {
    /// Valuation of `F∘φ` as a function at `P_∞` (≤ 0).
    pub valuation: i64,
    /// Coefficient of the dominant monomial.
    pub coeff: Fe,
}

#[derive(Clone, Debug)]
pub struct Curve {
    field: Tower,
    q: u32,
    k: u32,
}

/// Genus `(q-1)²/4`, used only as a cross-check constant.
pub fn genus(q: u64) -> u64 {
    (q - 1) * (q - 1) / 4
}

impl Curve {
    /// The curve over a tower reaching `GF(q⁴)`.
    pub fn new(q: u64) -> Result<Curve> {
        Curve::with_levels(q, 4)
    }

    pub fn with_levels(q: u64, m: u32) -> Result<Curve> {
        Ok(Curve::from_tower(Tower::for_q(q, m)?))
    }

    pub fn from_tower(field: Tower) -> Curve {
        let q = field.q();
        Curve { field, q, k: (q + 1) / 2 }
    }

    pub fn field(&self) -> &Tower {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `k = (q+1)/2`, the exponent of `y`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn genus(&self) -> u64 {
        genus(self.q as u64)
    }

    /// `x^q - x`.
    pub fn rhs(&self, x: Fe) -> Fe {
        let f = &self.field;
        f.sub(f.frobenius(x, 1), x)
    }

    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Affine { x, y } => self.field.pow(y, self.k as u64) == self.rhs(x),
            CurvePoint::Infinity => true,
        }
    }

    /// All points over `GF(q^level)`, `P_∞` last.
    pub fn curve_points(&self, level: u32) -> Result<Vec<CurvePoint>> {
        if level > 4 || level > self.field.ext() || !level.is_power_of_two() {
            return Err(Error::UnsupportedLevel(level));
        }
        let f = &self.field;
        let mut out = Vec::new();
        for x in f.level_elements(level) {
            for y in f.nth_roots_in(self.rhs(x), self.k as u64, level) {
                out.push(CurvePoint::Affine { x, y });
            }
        }
        out.push(CurvePoint::Infinity);
        Ok(out)
    }

    /// `q^(2l) + 1 + 2gq^l` at even levels where the curve is maximal, as
    /// expected from `|X(F_{q²})| = q² + 1 + 2gq`.
    pub fn maximal_count(&self) -> u64 {
        let q = self.q as u64;
        q * q + 1 + 2 * self.genus() * q
    }

    pub fn phi(&self, p: &CurvePoint) -> [Fe; 4] {
        match *p {
            CurvePoint::Affine { x, y } => [x, y, Fe::ONE, self.field.sqr(x)],
            CurvePoint::Infinity => [Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE],
        }
    }

    pub fn phi_point(&self, p: &CurvePoint) -> ProjPoint {
        ProjPoint::new(&self.field, &self.phi(p)).unwrap()
    }

    /// The point over `(α : 0 : 1)` with `α ∈ F_q`.
    pub fn weierstrass_points(&self) -> Vec<CurvePoint> {
        let mut v: Vec<CurvePoint> = self
            .field
            .level_elements(1)
            .map(|x| CurvePoint::Affine { x, y: Fe::ZERO })
            .collect();
        v.push(CurvePoint::Infinity);
        v
    }

    /// The vertex `(0:1:0:0)`.
    pub fn vertex(&self) -> ProjPoint {
        ProjPoint::from_ints(&self.field, &[0, 1, 0, 0]).unwrap()
    }

    pub fn on_conic(&self, r: &ProjPoint) -> bool {
        let f = &self.field;
        let [x, y, z, w] = r.as_p3();
        y.is_zero() && f.sqr(x) == f.mul(z, w)
    }

    /// `(st : 0 : t² : s²)` for `(s:t) ∈ P¹(GF(q^level))`.
    pub fn conic_point(&self, s: Fe, t: Fe) -> ProjPoint {
        let f = &self.field;
        ProjPoint::new(f, &[f.mul(s, t), Fe::ZERO, f.sqr(t), f.sqr(s)]).unwrap()
    }

    /// `(x : 0 : 1 : x²)`.
    pub fn conic_point_at(&self, x: Fe) -> ProjPoint {
        self.conic_point(x, Fe::ONE)
    }

    /// Parameter `(s:t)` of a conic point, normalized.
    pub fn conic_parameter(&self, r: &ProjPoint) -> Result<(Fe, Fe)> {
        if !self.on_conic(r) {
            return Err(Error::NotOnConic);
        }
        let [x, _, z, _] = r.as_p3();
        Ok(if z.is_zero() {
            (Fe::ONE, Fe::ZERO)
        } else {
            (self.field.div(x, z), Fe::ONE)
        })
    }

    pub fn conic_points(&self, level: u32) -> Vec<ProjPoint> {
        let mut v: Vec<ProjPoint> = self
            .field
            .level_elements(level)
            .map(|x| self.conic_point_at(x))
            .collect();
        v.push(self.conic_point(Fe::ONE, Fe::ZERO));
        v
    }

    /// Polar form `2X₀X - W₀Z - Z₀W` of the conic at `r`.
    pub fn conic_polar(&self, r: &ProjPoint) -> LinearForm {
        let f = &self.field;
        let [x, _, z, w] = r.as_p3();
        [f.add(x, x), Fe::ZERO, f.neg(w), f.neg(z)]
    }

    pub fn conic_tangent(&self, r: &ProjPoint) -> Result<LineP3> {
        if !self.on_conic(r) {
            return Err(Error::NotOnConic);
        }
        let y: LinearForm = [Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO];
        line_from_forms(&self.field, &y, &self.conic_polar(r))
    }

    pub fn curve_tangent(&self, p: &CurvePoint) -> LineP3 {
        let f = &self.field;
        match *p {
            CurvePoint::Infinity => line_through(f, &self.phi_point(p), &self.vertex()).unwrap(),
            CurvePoint::Affine { x, y } => {
                let dx = f.neg(f.mul(f.from_int(self.k as i64), f.pow(y, self.k as u64 - 1)));
                let dir = [dx, Fe::ONE, Fe::ZERO, f.mul(f.add(x, x), dx)];
                LineP3::from_rows(f, self.phi(p), dir).unwrap()
            }
        }
    }

    /// `x(s)` modulo `s^(order+1)` at an affine point, `s = y - y₀`.
    pub fn local_expansion(&self, p: &CurvePoint, order: usize) -> Result<Vec<Fe>> {
        let CurvePoint::Affine { x: x0, y: y0 } = *p else {
            return Err(Error::Precondition("local expansion needs an affine point".into()));
        };
        if !self.is_on_curve(p) {
            return Err(Error::Precondition("point is not on the curve".into()));
        }
        let f = &self.field;
        let n = order + 1;
        let mut yk = poly::pow(f, &[y0, Fe::ONE], self.k as u64);
        yk.resize(n.max(yk.len()), Fe::ZERO);
        yk.truncate(n);
        let q = self.q as usize;
        let mut x = vec![Fe::ZERO; n];
        x[0] = x0;
        loop {
            let mut next = vec![Fe::ZERO; n];
            for (i, &c) in x.iter().enumerate() {
                if i * q < n {
                    next[i * q] = f.frobenius(c, 1);
                }
            }
            for i in 0..n {
                next[i] = f.sub(next[i], yk[i]);
            }
            if next == x {
                return Ok(x);
            }
            x = next;
        }
    }

    /// Series of `H∘φ` in the local parameter at an affine point.
    pub fn form_series(&self, form: &LinearForm, p: &CurvePoint, order: usize) -> Result<Vec<Fe>> {
        let f = &self.field;
        let CurvePoint::Affine { y: y0, .. } = *p else {
            return Err(Error::Precondition("affine point required".into()));
        };
        let xs = self.local_expansion(p, order)?;
        let mut x2 = poly::mul(f, &xs, &xs);
        x2.resize(order + 1, Fe::ZERO);
        let [a, b, c, d] = *form;
        Ok((0..=order)
            .map(|i| {
                let mut v = f.add(f.mul(a, xs[i]), f.mul(d, x2[i]));
                if i == 0 {
                    v = f.add(v, f.add(f.mul(b, y0), c));
                } else if i == 1 {
                    v = f.add(v, b);
                }
                v
            })
            .collect())
    }

    /// `ord_P(H∘φ)` at an affine point.
    pub fn order_at(&self, form: &LinearForm, p: &CurvePoint) -> Result<usize> {
        let bound = self.q as usize + 1;
        let s = self.form_series(form, p, bound)?;
        s.iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Internal("hyperplane contains the curve".into()))
    }

    /// Dominant monomial of `F∘φ` at `P_∞`.
    pub fn pole_term(&self, form: &LinearForm) -> PoleTerm {
        let (q, k) = (self.q as i64, self.k as i64);
        let [a, b, c, d] = *form;
        let (valuation, coeff) = [(d, -(q + 1)), (b, -q), (a, -k), (c, 0)]
            .into_iter()
            .find(|(c, _)| !c.is_zero())
            .map(|(c, v)| (v, c))
            .unwrap_or((i64::MAX, Fe::ZERO));
        PoleTerm { valuation, coeff }
    }

    /// Multiplicity of `P_∞` in the section `H∘φ`.
    pub fn order_at_infinity(&self, form: &LinearForm) -> usize {
        (self.q as i64 + 1 + self.pole_term(form).valuation) as usize
    }

    /// Zeros of `H∘φ` over the top tower level with exact multiplicities.
    pub fn hyperplane_section(&self, h: &PlaneP3) -> SectionDivisor {
        self.section_of_form(h.form())
    }

    pub fn section_of_form(&self, form: &LinearForm) -> SectionDivisor {
        let f = &self.field;
        let [a, b, c, d] = *form;
        let k = self.k as u64;
        let mut entries: Vec<(Place, usize)> = Vec::new();
        let mult = |p: &CurvePoint| self.order_at(form, p).expect("point on curve");
        if !b.is_zero() {
            // y = h(x) on the section; zeros are the roots of h^k - (x^q - x).
            let binv = f.neg(f.inv(b).unwrap());
            let h = poly::trim(vec![f.mul(c, binv), f.mul(a, binv), f.mul(d, binv)]);
            let mut g = poly::pow(f, &h, k);
            let mut xq = vec![Fe::ZERO; self.q as usize + 1];
            xq[self.q as usize] = Fe::ONE;
            xq[1] = f.neg(Fe::ONE);
            g = poly::sub(f, &g, &xq);
            for (r, _) in poly::roots(f, &g) {
                let p = CurvePoint::Affine { x: r, y: poly::eval(f, &h, r) };
                entries.push((Place::Point(p), mult(&p)));
            }
        } else {
            let u = poly::trim(vec![c, a, d]);
            for (r, m) in poly::roots(f, &u) {
                let w = self.rhs(r);
                if w.is_zero() {
                    let p = CurvePoint::Affine { x: r, y: Fe::ZERO };
                    entries.push((Place::Point(p), mult(&p)));
                    continue;
                }
                let ys = f.nth_roots(w, k);
                if ys.is_empty() {
                    entries.push((Place::Fiber { x: r }, m));
                } else {
                    for y in ys {
                        let p = CurvePoint::Affine { x: r, y };
                        entries.push((Place::Point(p), mult(&p)));
                    }
                }
            }
        }
        let inf = self.order_at_infinity(form);
        if inf > 0 {
            entries.push((Place::Point(CurvePoint::Infinity), inf));
        }
        entries.sort();
        let mut div = SectionDivisor {
            entries,
            beyond_cap: 0,
            fiber_size: self.k as usize,
        };
        let total = self.q as usize + 1;
        let resolved = div.resolved_degree();
        assert!(resolved <= total, "section degree {resolved} exceeds q+1");
        div.beyond_cap = total - resolved;
        div
    }

    /// The unique hyperplane `H` with `ord_P φ*H = q+1`, if it exists.
    pub fn osculating_hyperplane(&self, p: &CurvePoint) -> Result<PlaneP3> {
        let f = &self.field;
        let order = self.q as usize;
        let form = match p {
            CurvePoint::Infinity => {
                // Only Z has valuation 0 at P_∞; every other monomial lowers the order.
                [Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO]
            }
            CurvePoint::Affine { .. } => {
                let basis: [LinearForm; 4] = std::array::from_fn(|i| {
                    let mut e = [Fe::ZERO; 4];
                    e[i] = Fe::ONE;
                    e
                });
                let cols: Vec<Vec<Fe>> = basis
                    .iter()
                    .map(|e| self.form_series(e, p, order))
                    .collect::<Result<_>>()?;
                let rows: Vec<Vec<Fe>> = (0..=order)
                    .map(|i| cols.iter().map(|col| col[i]).collect())
                    .collect();
                let ns = null_space(f, &rows, 4);
                if ns.len() != 1 {
                    return Err(Error::Precondition(format!(
                        "{} hyperplanes with contact order q+1",
                        if ns.is_empty() { "no" } else { "several" }
                    )));
                }
                [ns[0][0], ns[0][1], ns[0][2], ns[0][3]]
            }
        };
        let h = PlaneP3::new(f, form)?;
        match p {
            CurvePoint::Infinity => {
                debug_assert_eq!(self.order_at_infinity(h.form()), self.q as usize + 1)
            }
            _ => debug_assert_eq!(self.order_at(h.form(), p)?, self.q as usize + 1),
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{plane_y0, PlaneP3};
    use std::collections::HashSet;

    fn c5() -> Curve {
        Curve::new(5).unwrap()
    }

    fn aff(f: &Tower, x: i64, y: i64) -> CurvePoint {
        CurvePoint::Affine { x: f.from_int(x), y: f.from_int(y) }
    }

    #[test]
    fn point_counts() {
        let c = c5();
        let l1 = c.curve_points(1).unwrap();
        assert_eq!(l1.len(), 6);
        assert_eq!(c.curve_points(2).unwrap().len(), 66);
        assert_eq!(c.maximal_count(), 66);
        assert_eq!(Curve::with_levels(7, 2).unwrap().curve_points(1).unwrap().len(), 8);
        for q in [7u64, 9] {
            let c = Curve::with_levels(q, 2).unwrap();
            assert_eq!(c.curve_points(2).unwrap().len() as u64, c.maximal_count());
            assert_eq!(c.maximal_count(), q * q + 1 + 2 * genus(q) * q);
        }
        assert!(c.curve_points(3).is_err());
    }

    #[test]
    fn points_satisfy_equation_and_phi_is_injective() {
        let c = c5();
        for level in [1, 2, 4] {
            let pts = c.curve_points(level).unwrap();
            assert!(pts.iter().all(|p| c.is_on_curve(p)));
            let images: HashSet<ProjPoint> = pts.iter().map(|p| c.phi_point(p)).collect();
            assert_eq!(images.len(), pts.len());
        }
    }

    #[test]
    fn phi_examples_and_weierstrass_set() {
        let c = c5();
        let f = c.field();
        assert_eq!(c.phi_point(&aff(f, 0, 0)), ProjPoint::from_ints(f, &[0, 0, 1, 0]).unwrap());
        assert_eq!(c.phi_point(&CurvePoint::Infinity), ProjPoint::from_ints(f, &[0, 0, 0, 1]).unwrap());
        assert_eq!(c.phi_point(&aff(f, 2, 0)), ProjPoint::from_ints(f, &[2, 0, 1, 4]).unwrap());
        // C(F_q) = φ(X) ∩ {Y = 0}
        let on_plane: HashSet<ProjPoint> = c
            .curve_points(2)
            .unwrap()
            .iter()
            .map(|p| c.phi_point(p))
            .filter(|p| plane_y0(f).contains(f, p))
            .collect();
        let conic: HashSet<ProjPoint> = c.conic_points(1).into_iter().collect();
        assert_eq!(on_plane, conic);
        assert_eq!(conic.len(), 6);
        assert_eq!(c.conic_points(2).len(), 26);
    }

    #[test]
    fn conic_tangents() {
        let c = c5();
        let f = c.field();
        let r = ProjPoint::from_ints(f, &[2, 0, 1, 4]).unwrap();
        let t = c.conic_tangent(&r).unwrap();
        let expect = line_from_forms(
            f,
            &[Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO],
            &[f.from_int(-4), Fe::ZERO, f.from_int(4), Fe::ONE],
        )
        .unwrap();
        assert_eq!(t, expect);
        let inf = ProjPoint::from_ints(f, &[0, 0, 0, 1]).unwrap();
        assert_eq!(c.conic_tangent(&inf).unwrap().to_string(f), "Y; Z");
        for level in [1, 2] {
            for r in c.conic_points(level) {
                let t = c.conic_tangent(&r).unwrap();
                let meets: Vec<ProjPoint> =
                    c.conic_points(4).into_iter().filter(|s| t.contains(f, s)).collect();
                assert_eq!(meets, vec![r.clone()]);
            }
        }
        assert_eq!(
            c.conic_tangent(&ProjPoint::from_ints(f, &[1, 0, 0, 0]).unwrap()),
            Err(Error::NotOnConic)
        );
    }

    #[test]
    fn curve_tangents_at_weierstrass_points() {
        let c = c5();
        let f = c.field();
        assert_eq!(c.curve_tangent(&CurvePoint::Infinity).to_string(f), "X; Z");
        assert_eq!(c.curve_tangent(&aff(f, 0, 0)).to_string(f), "X; W");
        for p in c.weierstrass_points() {
            let t = c.curve_tangent(&p);
            assert!(t.contains(f, &c.vertex()));
            if let CurvePoint::Affine { x: alpha, .. } = p {
                let two_a = f.add(alpha, alpha);
                let expect = line_from_forms(
                    f,
                    &[Fe::ONE, Fe::ZERO, f.neg(alpha), Fe::ZERO],
                    &[f.neg(two_a), Fe::ZERO, f.sqr(alpha), Fe::ONE],
                )
                .unwrap();
                assert_eq!(t, expect);
            }
        }
    }

    #[test]
    fn local_expansion_examples() {
        let c = c5();
        let f = c.field();
        let xs = c.local_expansion(&aff(f, 0, 0), 15).unwrap();
        let mut expect = vec![Fe::ZERO; 16];
        expect[3] = f.from_int(-1);
        expect[15] = f.from_int(-1);
        assert_eq!(xs, expect);
        assert_eq!(c.local_expansion(&aff(f, 0, 0), 0).unwrap(), vec![Fe::ZERO]);
        // Leading coefficient -k y0^(k-1) where y0 != 0.
        for p in c.curve_points(2).unwrap() {
            let CurvePoint::Affine { x, y } = p else { continue };
            let s = c.local_expansion(&p, 12).unwrap();
            assert_eq!(s[0], x);
            if !y.is_zero() {
                let want = f.neg(f.mul(f.from_int(3), f.pow(y, 2)));
                assert_eq!(s[1], want);
            }
            // F(x(s), y0 + s) ≡ 0 mod s^13.
            let yk = poly::pow(f, &[y, Fe::ONE], 3);
            let x5 = poly::pow(f, &s, 5);
            let mut lhs = poly::add(f, &poly::sub(f, &yk, &x5), &s);
            lhs.resize(13.max(lhs.len()), Fe::ZERO);
            assert!(lhs[..13].iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn hyperplane_section_examples() {
        let c = c5();
        let f = c.field();
        let z = PlaneP3::from_ints(f, [0, 0, 1, 0]).unwrap();
        let d = c.hyperplane_section(&z);
        assert_eq!(d.entries, vec![(Place::Point(CurvePoint::Infinity), 6)]);
        let w = PlaneP3::from_ints(f, [0, 0, 0, 1]).unwrap();
        assert_eq!(c.hyperplane_section(&w).entries, vec![(Place::Point(aff(f, 0, 0)), 6)]);
        let y = c.hyperplane_section(&plane_y0(f));
        assert_eq!(y.entries.len(), 6);
        assert!(y.entries.iter().all(|(_, m)| *m == 1));
        assert_eq!(y.degree(), 6);
        assert_eq!(y.beyond_cap, 0);
    }

    #[test]
    fn random_sections_have_degree_q_plus_1() {
        use rand::{Rng, SeedableRng};
        for q in [5u64, 7] {
            let c = Curve::new(q).unwrap();
            let f = c.field();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for level in [1, 2, 4] {
                let n = f.level_size(level);
                for _ in 0..50 {
                    let form: LinearForm = std::array::from_fn(|_| Fe(rng.gen_range(0..n)));
                    let Ok(h) = PlaneP3::new(f, form) else { continue };
                    let div = c.hyperplane_section(&h);
                    assert_eq!(div.degree(), q as usize + 1);
                }
            }
        }
    }

    #[test]
    fn section_multiplicities_match_root_multiplicities() {
        // On the b != 0 branch the multiplicity of (r, h(r)) equals the
        // multiplicity of r as a root of h^k - (x^q - x).
        let c = c5();
        let f = c.field();
        for h in [[1, 1, 0, 0], [0, 1, 0, 0], [2, 1, 3, 1], [0, 1, 0, 1]] {
            let h = PlaneP3::from_ints(f, h).unwrap();
            let d = c.hyperplane_section(&h);
            assert_eq!(d.degree(), 6);
            for (pl, m) in &d.entries {
                if let Place::Point(p @ CurvePoint::Affine { .. }) = pl {
                    assert_eq!(c.order_at(h.form(), p).unwrap(), *m);
                }
            }
        }
    }

    #[test]
    fn osculating_hyperplanes_at_weierstrass_points() {
        for q in [5u64, 7] {
            let c = Curve::new(q).unwrap();
            let f = c.field();
            for p in c.weierstrass_points() {
                let h = c.osculating_hyperplane(&p).unwrap();
                assert!(h.is_rational_over(f, 1));
                let want = match p {
                    CurvePoint::Infinity => [Fe::ZERO, Fe::ZERO, Fe::ONE, Fe::ZERO],
                    CurvePoint::Affine { x: a, .. } => {
                        [f.neg(f.add(a, a)), Fe::ZERO, f.sqr(a), Fe::ONE]
                    }
                };
                assert_eq!(h, PlaneP3::new(f, want).unwrap());
            }
        }
    }
}
