//! Geometric case of a line relative to the vertex `(0:1:0:0)`, the plane
//! `{Y = 0}` and the conic in it. No group computation happens here.

use serde::Serialize;

use crate::curve::Curve;
use crate::projective::{dot, plane_y0, LineP3, ProjPoint};

use super::Case;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// `ℓ ∩ {Y=0}` for lines through the vertex.
    pub meet_point: Option<ProjPoint>,
    /// Conic points defining the case (tangency points, secant points).
    pub conic_points: Vec<ProjPoint>,
    /// Smallest tower level over which the line is defined.
    pub level: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meet_point: Option<String>,
    pub conic_points: Vec<String>,
    pub level: u32,
}

impl Witnesses {
    pub fn record(&self, c: &Curve) -> WitnessRecord {
        let f = c.field();
        WitnessRecord {
            meet_point: self.meet_point.as_ref().map(|p| p.to_string(f)),
            conic_points: self.conic_points.iter().map(|p| p.to_string(f)).collect(),
            level: self.level,
        }
    }
}

/// Conic points over `GF(q²)` whose tangent passes through `p`.
fn tangency_points(c: &Curve, p: &ProjPoint, level: u32) -> Vec<ProjPoint> {
    let f = c.field();
    let v = p.as_p3();
    c.conic_points(level)
        .into_iter()
        .filter(|r| dot(f, &c.conic_polar(r), &v).is_zero())
        .collect()
}

pub fn classify_line(c: &Curve, line: &LineP3) -> (Case, Witnesses) {
    let f = c.field();
    let level = line.level(f);
    let mut w = Witnesses { level, ..Witnesses::default() };
    let y0 = plane_y0(f);
    if line.contains(f, &c.vertex()) {
        let q = line.meet_plane(f, &y0).expect("vertex is off the plane Y = 0");
        w.meet_point = Some(q.clone());
        if c.on_conic(&q) {
            w.conic_points = vec![q];
            return (Case::I, w);
        }
        if !line.is_rational_over(f, 1) {
            return (Case::NonGalois, w);
        }
        let rational = tangency_points(c, &q, 1);
        match rational.len() {
            2 => {
                w.conic_points = rational;
                (Case::IIb, w)
            }
            0 => {
                w.conic_points = tangency_points(c, &q, 2);
                (Case::IIc, w)
            }
            _ => (Case::NonGalois, w),
        }
    } else if line.contained_in(f, &y0) {
        if level > 2 {
            return (Case::NonGalois, w);
        }
        let on: Vec<ProjPoint> = c
            .conic_points(2)
            .into_iter()
            .filter(|r| line.contains(f, r))
            .collect();
        let all_fq = on.iter().all(|r| r.is_rational_over(f, 1));
        let case = if level == 1 {
            match (on.len(), all_fq) {
                (2, true) => Case::IIId,
                (1, true) => Case::IIIe,
                (2, false) => Case::IIIf,
                _ => Case::NonGalois,
            }
        } else if on.len() == 1 && !all_fq && c.conic_tangent(&on[0]).ok() == Some(*line) {
            Case::IV
        } else {
            Case::NonGalois
        };
        w.conic_points = on;
        (case, w)
    } else {
        (Case::NonGalois, w)
    }
}
