//! Worst-case reduction and report rows.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::Sample;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundKind {
    /// Sup of a ratio that must stay below the ceiling.
    Ceiling(f64),
    /// Inf of a ratio that must stay above the floor.
    Floor(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub lambda: C64,
    pub xi: Vec<C64>,
    pub x_n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_id: String,
    pub n: usize,
    pub samples: usize,
    pub worst_ratio: f64,
    pub witness: Option<Witness>,
    pub kind: BoundKind,
    pub pass: bool,
}

/// Pass/fail band for empirical constants; catches blow-ups, not the lemma's constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub ceiling: f64,
    pub floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { ceiling: 1e6, floor: 1e-6 }
    }
}

impl Tolerances {
    pub fn ceiling(&self) -> BoundKind {
        BoundKind::Ceiling(self.ceiling)
    }
    pub fn floor(&self) -> BoundKind {
        BoundKind::Floor(self.floor)
    }
}

/// Non-finite values are worst of all and never displaced.
fn worse(kind: BoundKind, candidate: f64, current: f64) -> bool {
    if !current.is_finite() {
        return false;
    }
    if !candidate.is_finite() {
        return current.is_finite();
    }
    match kind {
        BoundKind::Ceiling(_) => candidate > current,
        BoundKind::Floor(_) => candidate < current,
    }
}

/// Evaluates `f` on every sample in parallel, then reduces each column sequentially in
/// sample order, so the result does not depend on scheduling. `None` entries are skipped.
pub fn sweep<F>(samples: &[Sample], n: usize, ids: &[(String, BoundKind)], f: F) -> Vec<BoundReport>
where
    F: Fn(&Sample) -> Vec<Option<(f64, f64)>> + Sync,
{
    let rows: Vec<Vec<Option<(f64, f64)>>> = samples.par_iter().map(&f).collect();
    ids.iter()
        .enumerate()
        .map(|(col, (id, kind))| {
            let mut worst: Option<(f64, usize, f64)> = None;
            let mut count = 0;
            for (i, row) in rows.iter().enumerate() {
                if let Some((v, x)) = row[col] {
                    count += 1;
                    match worst {
                        None => worst = Some((v, i, x)),
                        Some((w, _, _)) if worse(*kind, v, w) => worst = Some((v, i, x)),
                        _ => {}
                    }
                }
            }
            finish(id.clone(), n, count, *kind, worst.map(|(v, i, x)| (v, &samples[i], x)))
        })
        .collect()
}

/// Builds a report from an already-reduced extreme; `x` is the signed vertical witness.
pub fn finish(bound_id: String, n: usize, samples: usize, kind: BoundKind, worst: Option<(f64, &Sample, f64)>) -> BoundReport {
    let (worst_ratio, witness) = match worst {
        Some((v, s, x)) => (v, Some(Witness { lambda: s.point.lambda, xi: s.point.xi.clone(), x_n: x })),
        None => (f64::NAN, None),
    };
    let pass = worst_ratio.is_finite()
        && match kind {
            BoundKind::Ceiling(c) => worst_ratio < c,
            BoundKind::Floor(f) => worst_ratio > f,
        };
    BoundReport { bound_id, n, samples, worst_ratio, witness, kind, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::SpectralPoint;

    #[test]
    fn non_finite_sticks() {
        let s: Vec<Sample> = (0..4)
            .map(|i| Sample { point: SpectralPoint::real(1.0 + i as f64, &[1.0]).unwrap(), x_n: 1.0, xi_normal: C64::new(0.0, 0.0) })
            .collect();
        let ids = [("c".to_string(), BoundKind::Ceiling(10.0)), ("f".to_string(), BoundKind::Floor(0.1))];
        let vals = [1.0, f64::NEG_INFINITY, 5.0, f64::NAN];
        let r = sweep(&s, 2, &ids, |smp| {
            let v = vals[smp.point.lambda.re as usize - 1];
            vec![Some((v, 0.0)), Some((v, 0.0))]
        });
        assert!(r.iter().all(|b| !b.pass && b.worst_ratio == f64::NEG_INFINITY));
        assert_eq!(r[0].witness.as_ref().unwrap().lambda.re, 2.0);
    }
}

pub fn serialize_xi(xi: &[C64]) -> String {
    xi.iter().map(|z| format!("{:.17e}:{:.17e}", z.re, z.im)).collect::<Vec<_>>().join(";")
}

impl BoundReport {
    pub const HEADER: [&'static str; 9] =
        ["bound_id", "n", "sample_count", "worst_ratio", "lambda_re", "lambda_im", "xi", "x_n", "pass"];

    pub fn csv_row(&self) -> [String; 9] {
        let (lr, li, xi, x) = match &self.witness {
            Some(w) => (format!("{:.17e}", w.lambda.re), format!("{:.17e}", w.lambda.im), serialize_xi(&w.xi), format!("{:.17e}", w.x_n)),
            None => ("".into(), "".into(), "".into(), "".into()),
        };
        [
            self.bound_id.clone(),
            self.n.to_string(),
            self.samples.to_string(),
            format!("{:.17e}", self.worst_ratio),
            lr,
            li,
            xi,
            x,
            self.pass.to_string(),
        ]
    }
}
