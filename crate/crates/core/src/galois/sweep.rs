//! Exhaustive and stratified sweeps over lines of P³.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::projective::{
    count_lines_p3, line_through, lines_in_plane, lines_through, plane_y0, LineP3, LineSpace,
    ProjPoint,
};

use super::{Case, GaloisEngine, LineVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Full,
    Stratified,
}

/// Largest `q` swept in full mode without `force`.
pub const FULL_MODE_MAX_Q: u32 = 7;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub mode: SweepMode,
    /// Level-4 samples, half through the vertex and half random. In
    /// stratified mode the same number of random level-2 lines is added.
    pub samples: usize,
    pub seed: u64,
    pub force: bool,
    pub timed: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            mode: SweepMode::Full,
            samples: 0,
            seed: 0,
            force: false,
            timed: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GaloisRow {
    pub line: String,
    pub case: Case,
    pub degree: u64,
    pub stabilizer_order: u64,
    pub group: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SampleStats {
    pub count: u64,
    pub galois: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SampleSummary {
    /// Level-4 lines through the vertex and a conic point outside `GF(q²)`.
    pub through_vertex: SampleStats,
    pub random_level4: SampleStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_level2: Option<SampleStats>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub version: String,
    pub q: u32,
    pub field: String,
    pub mode: SweepMode,
    pub level: u32,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub expected_counts: BTreeMap<String, u64>,
    pub galois_total: u64,
    pub lines_total: u64,
    pub mismatches: Vec<String>,
    pub samples: SampleSummary,
    pub evidence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
    #[serde(skip)]
    pub galois_lines: Vec<GaloisRow>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// One row per Galois line, sorted by line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.galois_lines {
            w.serialize(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 rows")
    }
}

/// Number of Galois lines over `GF(q²)` in each case.
pub fn expected_counts(q: u64) -> BTreeMap<Case, u64> {
    BTreeMap::from([
        (Case::I, q * q + 1),
        (Case::IIb, q * (q + 1) / 2),
        (Case::IIc, q * (q - 1) / 2),
        (Case::IIId, q * (q + 1) / 2),
        (Case::IIIe, q + 1),
        (Case::IIIf, q * (q - 1) / 2),
        (Case::IV, q * q - q),
    ])
}

#[derive(Default)]
struct Acc {
    counts: BTreeMap<Case, u64>,
    rows: Vec<GaloisRow>,
    mismatches: Vec<String>,
    lines: u64,
}

impl Acc {
    fn merge(mut self, other: Acc) -> Acc {
        for (c, n) in other.counts {
            *self.counts.entry(c).or_default() += n;
        }
        self.rows.extend(other.rows);
        self.mismatches.extend(other.mismatches);
        self.lines += other.lines;
        self
    }

    fn stats(&self) -> SampleStats {
        SampleStats {
            count: self.lines,
            galois: self
                .counts
                .iter()
                .filter(|(c, _)| **c != Case::NonGalois)
                .map(|(_, n)| n)
                .sum(),
            mismatches: self.mismatches.len() as u64,
        }
    }
}

impl GaloisEngine {
    fn record(&self, acc: &mut Acc, line: &LineP3, extra: impl Fn(&LineVerdict) -> Option<String>) {
        let f = self.field();
        acc.lines += 1;
        match self.evaluate(line) {
            Err(e) => acc.mismatches.push(format!("{}: {e}", line.to_string(f))),
            Ok(v) => {
                let key = if v.galois { v.case } else { Case::NonGalois };
                *acc.counts.entry(key).or_default() += 1;
                if let Some(m) = v.mismatch(f).or_else(|| extra(&v)) {
                    acc.mismatches.push(m);
                }
                if v.galois {
                    acc.rows.push(GaloisRow {
                        line: line.to_string(f),
                        case: v.case,
                        degree: v.degree.unwrap_or(0),
                        stabilizer_order: v.stabilizer_order,
                        group: v.group.as_ref().map(|g| g.to_string()).unwrap_or_default(),
                    });
                }
            }
        }
    }

    fn run_lines(&self, lines: &[LineP3], extra: impl Fn(&LineVerdict) -> Option<String> + Sync) -> Acc {
        lines
            .par_iter()
            .fold(Acc::default, |mut acc, l| {
                self.record(&mut acc, l, &extra);
                acc
            })
            .reduce(Acc::default, Acc::merge)
    }

    /// Lines through the vertex, and lines in `{Y = 0}`, over `GF(q²)`.
    pub fn strata(&self) -> Vec<LineP3> {
        let f = self.field();
        let mut v = lines_through(f, &self.curve().vertex(), 2);
        v.extend(lines_in_plane(f, &plane_y0(f), 2));
        v
    }

    pub fn sweep(&self, cfg: &SweepConfig) -> Result<SweepReport> {
        let start = Instant::now();
        let f = self.field();
        let q = f.q();
        if cfg.mode == SweepMode::Full && q > FULL_MODE_MAX_Q && !cfg.force {
            return Err(Error::Budget(format!(
                "full mode is limited to q <= {FULL_MODE_MAX_Q}; use stratified mode"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let none = |_: &LineVerdict| None;
        let (main, random2) = match cfg.mode {
            SweepMode::Full => {
                let space = LineSpace::new(f, 2, cfg.force)?;
                const CHUNK: u64 = 1024;
                let n = space.len();
                let acc = (0..n.div_ceil(CHUNK))
                    .into_par_iter()
                    .fold(Acc::default, |mut acc, chunk| {
                        for i in chunk * CHUNK..((chunk + 1) * CHUNK).min(n) {
                            self.record(&mut acc, &space.get(i), none);
                        }
                        acc
                    })
                    .reduce(Acc::default, Acc::merge);
                (acc, None)
            }
            SweepMode::Stratified => {
                let acc = self.run_lines(&self.strata(), none);
                let space = LineSpace::new(f, 2, true)?;
                let picks: Vec<LineP3> = (0..cfg.samples)
                    .map(|_| space.get(rng.gen_range(0..space.len())))
                    .collect();
                (acc, Some(self.run_lines(&picks, none)))
            }
        };

        let (through, random4) = self.level4_samples(cfg.samples, &mut rng);
        let vertex_acc = self.run_lines(&through, |v| {
            (v.case != Case::I || !v.galois).then(|| {
                format!("{}: through-vertex sample not Galois of case I", v.line.to_string(f))
            })
        });
        let random_acc = self.run_lines(&random4, none);

        let expected = expected_counts(q as u64);
        let mut mismatches = main.mismatches;
        for (case, want) in &expected {
            let got = main.counts.get(case).copied().unwrap_or(0);
            if got != *want {
                mismatches.push(format!("case {case}: counted {got}, expected {want}"));
            }
        }
        let cnt = |c: Case| main.counts.get(&c).copied().unwrap_or(0);
        let q64 = q as u64;
        if cnt(Case::IIb) + cnt(Case::IIc) != q64 * q64
            || cnt(Case::IIId) + cnt(Case::IIIe) + cnt(Case::IIIf) != q64 * q64 + q64 + 1
            || cnt(Case::IV) != q64 * q64 - q64
        {
            mismatches.push("partition identities violated".into());
        }
        if let Some(r) = &random2 {
            mismatches.extend(r.mismatches.iter().cloned());
        }
        mismatches.extend(vertex_acc.mismatches.iter().cloned());
        mismatches.extend(random_acc.mismatches.iter().cloned());
        mismatches.sort();

        let mut rows = main.rows;
        rows.sort();
        let galois_total = rows.len() as u64;
        let lines_total = main.lines;
        if cfg.mode == SweepMode::Full {
            debug_assert_eq!(lines_total, count_lines_p3(f.level_size(2) as u64));
        }
        let mut counts: BTreeMap<String, u64> =
            Case::GALOIS.iter().map(|c| (c.label().to_string(), cnt(*c))).collect();
        counts.insert(Case::NonGalois.label().into(), cnt(Case::NonGalois));
        let scope = match cfg.mode {
            SweepMode::Full => "exhaustive: every line over GF(q^2)".to_string(),
            SweepMode::Stratified => format!(
                "exhaustive over GF(q^2) on lines through the vertex and lines in Y = 0; \
                 {} further random lines over GF(q^2)",
                cfg.samples
            ),
        };
        Ok(SweepReport {
            version: env!("CARGO_PKG_VERSION").into(),
            q,
            field: f.describe(),
            mode: cfg.mode,
            level: 2,
            seed: cfg.seed,
            counts,
            expected_counts: expected.iter().map(|(c, n)| (c.label().to_string(), *n)).collect(),
            galois_total,
            lines_total,
            mismatches,
            samples: SampleSummary {
                through_vertex: vertex_acc.stats(),
                random_level4: random_acc.stats(),
                random_level2: random2.as_ref().map(Acc::stats),
            },
            evidence: vec![
                scope,
                format!(
                    "sampled over GF(q^4): {} lines through the vertex and a conic point \
                     outside GF(q^2), {} random lines",
                    through.len(),
                    random4.len()
                ),
                "not machine-checked: lines through the vertex meeting the conic only \
                 beyond GF(q^4)"
                    .into(),
            ],
            wall_seconds: cfg.timed.then(|| start.elapsed().as_secs_f64()),
            galois_lines: rows,
        })
    }

    fn level4_samples(&self, n: usize, rng: &mut ChaCha8Rng) -> (Vec<LineP3>, Vec<LineP3>) {
        let f = self.field();
        let c = self.curve();
        let lo = f.level_size(2);
        let hi = f.level_size(4);
        let through: Vec<LineP3> = (0..n / 2)
            .map(|_| {
                let alpha = Fe(rng.gen_range(lo..hi));
                line_through(f, &c.vertex(), &c.conic_point_at(alpha)).unwrap()
            })
            .collect();
        let mut random = Vec::new();
        while random.len() < n - n / 2 {
            let mut pt = || {
                let v: Vec<Fe> = (0..4).map(|_| Fe(rng.gen_range(0..hi))).collect();
                ProjPoint::new(f, &v)
            };
            if let (Ok(a), Ok(b)) = (pt(), pt()) {
                if let Ok(l) = line_through(f, &a, &b) {
                    random.push(l);
                }
            }
        }
        (through, random)
    }
}
