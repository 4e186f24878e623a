//! Points, lines and planes of P¹, P² and P³ over tower levels.
//!
//! Points are normalized so the first nonzero coordinate is 1. Lines of P³
//! are kept as the reduced row-echelon form of a 2×4 basis matrix, which is
//! unique, so set equality is representation equality. Lower-level objects
//! live in higher levels unchanged (see [`crate::field`]).

pub mod parse;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Fe, Tower};

/// Coefficients of `aX + bY + cZ + dW`.
pub type LinearForm = [Fe; 4];

pub const VARS: [&str; 4] = ["X", "Y", "Z", "W"];

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Fe>,
}

impl ProjPoint {
    /// Normalizes `coords`; rejects the zero vector.
    pub fn new(f: &Tower, coords: &[Fe]) -> Result<ProjPoint> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::Degenerate("all coordinates are zero"))?;
        let inv = f.inv(*lead).unwrap();
        Ok(ProjPoint {
            coords: coords.iter().map(|&c| f.mul(c, inv)).collect(),
        })
    }

    /// Builds from small integers in the prime field.
    pub fn from_ints(f: &Tower, coords: &[i64]) -> Result<ProjPoint> {
        let c: Vec<Fe> = coords.iter().map(|&v| f.from_int(v)).collect();
        ProjPoint::new(f, &c)
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    /// Projective dimension (1, 2 or 3).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn as_p3(&self) -> [Fe; 4] {
        assert_eq!(self.coords.len(), 4, "not a point of P³");
        [self.coords[0], self.coords[1], self.coords[2], self.coords[3]]
    }

    pub fn is_rational_over(&self, f: &Tower, level: u32) -> bool {
        self.coords.iter().all(|&c| f.frobenius(c, level) == c)
    }

    pub fn frobenius(&self, f: &Tower, power: u32) -> ProjPoint {
        ProjPoint {
            coords: self.coords.iter().map(|&c| f.frobenius(c, power)).collect(),
        }
    }

    pub fn to_string(&self, f: &Tower) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&c| f.elem_to_string(c)).collect();
        format!("({})", parts.join(":"))
    }
}

#[inline]
pub fn dot(f: &Tower, form: &[Fe], v: &[Fe]) -> Fe {
    form.iter()
        .zip(v)
        .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref(f: &Tower, rows: &mut Vec<Vec<Fe>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space of `rows`, itself in RREF.
pub fn null_space(f: &Tower, rows: &[Vec<Fe>], ncols: usize) -> Vec<Vec<Fe>> {
    let mut m: Vec<Vec<Fe>> = rows.to_vec();
    let pivots = if m.is_empty() { Vec::new() } else { rref(f, &mut m) };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Fe::ZERO; ncols];
        v[free] = Fe::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[i][free]);
        }
        basis.push(v);
    }
    if !basis.is_empty() {
        rref(f, &mut basis);
    }
    basis
}

/// A line of P³ in canonical RREF.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineP3 {
    rows: [[Fe; 4]; 2],
}

impl LineP3 {
    /// Line spanned by two vectors; rejects dependent pairs.
    pub fn from_rows(f: &Tower, a: [Fe; 4], b: [Fe; 4]) -> Result<LineP3> {
        let mut m = vec![a.to_vec(), b.to_vec()];
        if rref(f, &mut m).len() != 2 {
            return Err(Error::Degenerate("points do not span a line"));
        }
        Ok(LineP3 {
            rows: [to4(&m[0]), to4(&m[1])],
        })
    }

    pub fn rows(&self) -> &[[Fe; 4]; 2] {
        &self.rows
    }

    /// The annihilator of the line, as two forms in RREF.
    pub fn dual_forms(&self, f: &Tower) -> [LinearForm; 2] {
        let ns = null_space(f, &[self.rows[0].to_vec(), self.rows[1].to_vec()], 4);
        [to4(&ns[0]), to4(&ns[1])]
    }

    pub fn contains(&self, f: &Tower, p: &ProjPoint) -> bool {
        let v = p.as_p3();
        self.dual_forms(f).iter().all(|h| dot(f, h, &v).is_zero())
    }

    pub fn contained_in(&self, f: &Tower, h: &PlaneP3) -> bool {
        self.rows.iter().all(|r| dot(f, &h.form, r).is_zero())
    }

    /// Intersection with a plane, `None` when the line lies in the plane.
    pub fn meet_plane(&self, f: &Tower, h: &PlaneP3) -> Option<ProjPoint> {
        let a = dot(f, &h.form, &self.rows[0]);
        let b = dot(f, &h.form, &self.rows[1]);
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let v: Vec<Fe> = (0..4)
            .map(|i| f.sub(f.mul(b, self.rows[0][i]), f.mul(a, self.rows[1][i])))
            .collect();
        Some(ProjPoint::new(f, &v).unwrap())
    }

    /// True when the line is fixed by the `q^level` Frobenius.
    pub fn is_rational_over(&self, f: &Tower, level: u32) -> bool {
        self.rows.iter().flatten().all(|&c| f.frobenius(c, level) == c)
    }

    pub fn frobenius(&self, f: &Tower, power: u32) -> LineP3 {
        let mut rows = self.rows;
        for c in rows.iter_mut().flatten() {
            *c = f.frobenius(*c, power);
        }
        LineP3 { rows }
    }

    /// Smallest tower level over which the line is defined.
    pub fn level(&self, f: &Tower) -> u32 {
        self.rows.iter().flatten().map(|&c| f.level_of(c)).max().unwrap_or(1)
    }

    /// Points `s·row0 + t·row1` for `(s:t)` in P¹ over `level`.
    pub fn points(&self, f: &Tower, level: u32) -> Vec<ProjPoint> {
        points_of_projective_space(f, 1, level)
            .map(|st| {
                let (s, t) = (st.coords[0], st.coords[1]);
                let v: Vec<Fe> = (0..4)
                    .map(|i| f.add(f.mul(s, self.rows[0][i]), f.mul(t, self.rows[1][i])))
                    .collect();
                ProjPoint::new(f, &v).unwrap()
            })
            .collect()
    }

    /// `F0; F1` with the canonical dual forms.
    pub fn to_string(&self, f: &Tower) -> String {
        let [a, b] = self.dual_forms(f);
        format!("{}; {}", form_to_string(f, &a), form_to_string(f, &b))
    }
}

fn to4(v: &[Fe]) -> [Fe; 4] {
    [v[0], v[1], v[2], v[3]]
}

pub fn form_to_string(f: &Tower, form: &LinearForm) -> String {
    let terms: Vec<(Fe, String)> = form
        .iter()
        .zip(VARS)
        .map(|(&c, v)| (c, v.to_string()))
        .collect();
    f.signed_sum(&terms)
}

pub fn line_through(f: &Tower, p: &ProjPoint, q: &ProjPoint) -> Result<LineP3> {
    if p == q {
        return Err(Error::Degenerate("equal points"));
    }
    LineP3::from_rows(f, p.as_p3(), q.as_p3())
}

pub fn line_from_forms(f: &Tower, f0: &LinearForm, f1: &LinearForm) -> Result<LineP3> {
    let ns = null_space(f, &[f0.to_vec(), f1.to_vec()], 4);
    if ns.len() != 2 {
        return Err(Error::Degenerate("dependent forms"));
    }
    Ok(LineP3 {
        rows: [to4(&ns[0]), to4(&ns[1])],
    })
}

/// A plane of P³ given by a normalized linear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneP3 {
    form: LinearForm,
}

impl PlaneP3 {
    pub fn new(f: &Tower, form: LinearForm) -> Result<PlaneP3> {
        let p = ProjPoint::new(f, &form).map_err(|_| Error::Degenerate("zero linear form"))?;
        Ok(PlaneP3 { form: p.as_p3() })
    }

    pub fn from_ints(f: &Tower, c: [i64; 4]) -> Result<PlaneP3> {
        PlaneP3::new(f, c.map(|v| f.from_int(v)))
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn contains(&self, f: &Tower, p: &ProjPoint) -> bool {
        dot(f, &self.form, p.coords()).is_zero()
    }

    pub fn is_rational_over(&self, f: &Tower, level: u32) -> bool {
        self.form.iter().all(|&c| f.frobenius(c, level) == c)
    }

    pub fn to_string(&self, f: &Tower) -> String {
        form_to_string(f, &self.form)
    }
}

/// The coordinate plane `{Y = 0}`.
pub fn plane_y0(f: &Tower) -> PlaneP3 {
    PlaneP3::from_ints(f, [0, 1, 0, 0]).unwrap()
}

/// Normalized points of Pⁿ over `level`, lexicographic in the index encoding.
pub fn points_of_projective_space(
    f: &Tower,
    n: usize,
    level: u32,
) -> impl Iterator<Item = ProjPoint> + '_ {
    let qs = f.level_size(level) as u64;
    (0..=n).flat_map(move |lead| {
        let free = n - lead;
        (0..qs.pow(free as u32)).map(move |mut idx| {
            let mut coords = vec![Fe::ZERO; n + 1];
            coords[lead] = Fe::ONE;
            for c in coords[lead + 1..].iter_mut().rev() {
                *c = Fe((idx % qs) as u32);
                idx /= qs;
            }
            ProjPoint { coords }
        })
    })
}

pub fn count_points(q_level: u64, n: u32) -> u64 {
    (0..=n).map(|i| q_level.pow(i)).sum()
}

/// Number of lines of P³ over a field of size `qs`: `(qs²+1)(qs²+qs+1)`.
pub fn count_lines_p3(qs: u64) -> u64 {
    (qs * qs + 1) * (qs * qs + qs + 1)
}

/// All lines of P³ over one level, addressable by index so that disjoint
/// index ranges can be swept independently.
#[derive(Clone, Debug)]
pub struct LineSpace {
    qs: u64,
    /// (pivot0, pivot1, offset, cell size)
    cells: Vec<(usize, usize, u64, u64)>,
    len: u64,
}

/// Refuses the full-space enumeration above this field size unless forced.
pub const FULL_SPACE_LIMIT: u64 = 128;

impl LineSpace {
    pub fn new(f: &Tower, level: u32, force: bool) -> Result<LineSpace> {
        let qs = f.level_size(level) as u64;
        if qs > FULL_SPACE_LIMIT && !force {
            return Err(Error::Budget(format!(
                "full line enumeration over a field of size {qs} (limit {FULL_SPACE_LIMIT})"
            )));
        }
        let mut cells = Vec::new();
        let mut off = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let free = (2 - i) + (3 - j);
                let size = qs.pow(free as u32);
                cells.push((i, j, off, size));
                off += size;
            }
        }
        Ok(LineSpace { qs, cells, len: off })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, idx: u64) -> LineP3 {
        let &(i, j, off, _) = self
            .cells
            .iter()
            .find(|&&(_, _, off, size)| idx < off + size)
            .expect("index in range");
        let mut rest = idx - off;
        let mut rows = [[Fe::ZERO; 4]; 2];
        rows[0][i] = Fe::ONE;
        rows[1][j] = Fe::ONE;
        for c in (j + 1..4).rev() {
            rows[1][c] = Fe((rest % self.qs) as u32);
            rest /= self.qs;
        }
        for c in (i + 1..4).rev().filter(|&c| c != j) {
            rows[0][c] = Fe((rest % self.qs) as u32);
            rest /= self.qs;
        }
        LineP3 { rows }
    }

    pub fn iter(&self) -> impl Iterator<Item = LineP3> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

/// Lines through `p` over `level`, one per point of a complementary plane.
pub fn lines_through(f: &Tower, p: &ProjPoint, level: u32) -> Vec<LineP3> {
    let v = p.as_p3();
    let lead = v.iter().position(|c| !c.is_zero()).unwrap();
    let others: Vec<usize> = (0..4).filter(|&i| i != lead).collect();
    points_of_projective_space(f, 2, level)
        .map(|r| {
            let mut w = [Fe::ZERO; 4];
            for (k, &i) in others.iter().enumerate() {
                w[i] = r.coords[k];
            }
            LineP3::from_rows(f, v, w).unwrap()
        })
        .collect()
}

/// Lines contained in the plane `h` over `level`.
pub fn lines_in_plane(f: &Tower, h: &PlaneP3, level: u32) -> Vec<LineP3> {
    let basis = null_space(f, &[h.form.to_vec()], 4);
    points_of_projective_space(f, 2, level)
        .map(|dual| {
            // Null space of the dual form in the plane's own coordinates.
            let sol = null_space(f, std::slice::from_ref(&dual.coords), 3);
            let lift = |s: &[Fe]| -> [Fe; 4] {
                let mut w = [Fe::ZERO; 4];
                for (k, b) in basis.iter().enumerate() {
                    for i in 0..4 {
                        w[i] = f.add(w[i], f.mul(s[k], b[i]));
                    }
                }
                w
            };
            LineP3::from_rows(f, lift(&sol[0]), lift(&sol[1])).unwrap()
        })
        .collect()
}

pub fn describe_points(f: &Tower, pts: &[ProjPoint]) -> String {
    let mut s = String::new();
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}", p.to_string(f));
    }
    s
}
