use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::analytic::analytic_pst_times;
use super::scan::{scan_min_times, ScanConfig};
use super::{pst_at, unitary_at, WalkError, TIME_TOL};
use crate::graph::{CirculantSpec, HermitianGraph};
use crate::spectra::{canonicalize, EigenSystem};

/// Residual above which an eigensystem is taken not to belong to a graph.
const RESIDUAL_TOL: f64 = 1e-9;
/// Transfer times closer than this are a tie for relabeling.
const TIE_TOL: f64 = 1e-10;

/// Why a certification failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Reason {
    ScalarSpectrum,
    RepeatedEigenvalues { min_gap: f64 },
    Disconnected,
    NotFlat { detail: String },
    NoAnalyticTimes,
    AnalyticNotConfirmed { vertex: usize, time: f64 },
    MissingTransfer { u: usize, v: usize },
    TimeMismatch { vertex: usize, analytic: f64, scanned: f64 },
    TimingTie { u: usize, v: usize },
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::ScalarSpectrum => write!(f, "scalar spectrum: transfer times are not discrete"),
            Reason::RepeatedEigenvalues { min_gap } => write!(f, "repeated eigenvalues (gap {min_gap:e})"),
            Reason::Disconnected => write!(f, "graph is disconnected"),
            Reason::NotFlat { detail } => write!(f, "diagonalizer not flat: {detail}"),
            Reason::NoAnalyticTimes => write!(f, "no consistent analytic transfer times"),
            Reason::AnalyticNotConfirmed { vertex, time } => {
                write!(f, "analytic time {time} to vertex {vertex} is not a transfer")
            }
            Reason::MissingTransfer { u, v } => write!(f, "no transfer from {u} to {v} within the horizon"),
            Reason::TimeMismatch { vertex, analytic, scanned } => {
                write!(f, "vertex {vertex}: analytic time {analytic} but scanned {scanned}")
            }
            Reason::TimingTie { u, v } => write!(f, "vertices {u} and {v} tie in transfer time from 0"),
        }
    }
}

/// Minimum transfer times, analytic times and verdicts for one graph.
#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub n: usize,
    /// `min_times[u][v]` is `t_{u,v}`, the first transfer from `u` to `v`.
    pub min_times: Vec<Vec<Option<f64>>>,
    /// `U(t_{u,v})_{v,u}` observed at those times.
    pub phases: Vec<Vec<Option<Complex64>>>,
    /// `analytic_times[ℓ]` is the solved `t_{0,ℓ}`; entry 0 is the return time.
    pub analytic_times: Option<Vec<f64>>,
    pub return_time: Option<f64>,
    pub literal_phase_equality: Option<bool>,
    /// Largest `|analytic − scanned|` over vertices.
    pub max_time_discrepancy: Option<f64>,
    pub upst: bool,
    pub circulant_timing: Option<bool>,
    /// Vertex order used by the timing test: `relabeling[k]` is the k-th
    /// vertex by increasing `t_{0,·}`.
    pub relabeling: Option<Vec<usize>>,
    pub dense: Option<bool>,
    pub zero_indices: Option<Vec<usize>>,
    pub reasons: Vec<Reason>,
}

impl TransferReport {
    fn empty(n: usize) -> Self {
        TransferReport {
            n,
            min_times: vec![vec![None; n]; n],
            phases: vec![vec![None; n]; n],
            analytic_times: None,
            return_time: None,
            literal_phase_equality: None,
            max_time_discrepancy: None,
            upst: false,
            circulant_timing: None,
            relabeling: None,
            dense: None,
            zero_indices: None,
            reasons: Vec::new(),
        }
    }

    fn fail(mut self, reason: Reason) -> Self {
        self.upst = false;
        self.reasons.push(reason);
        self
    }

    pub fn time(&self, u: usize, v: usize) -> Option<f64> {
        self.min_times[u][v]
    }
}

/// Runs the analytic solve and the numeric scan and cross-checks them.
///
/// Degenerate inputs (scalar or repeated spectrum, disconnected graph,
/// non-flat diagonalizer) produce a failing report with a reason rather
/// than an error.
pub fn verify_upst(g: &HermitianGraph, es: &EigenSystem, config: &ScanConfig) -> Result<TransferReport, WalkError> {
    let n = g.order();
    if es.order() != n {
        return Err(WalkError::OrderMismatch { graph: n, eigensystem: es.order() });
    }
    let residual = es.residual(g);
    let scale = es.lambdas().iter().fold(1.0f64, |s, x| s.max(x.abs()));
    if residual > RESIDUAL_TOL * scale {
        return Err(WalkError::NotDiagonalized { residual });
    }
    let mut report = TransferReport::empty(n);
    if let Some(spec) = g.circulant() {
        let (dense, zeros) = denseness_check(spec);
        report.dense = Some(dense);
        report.zero_indices = Some(zeros);
    }

    let gap = es.min_gap();
    if n < 2 || gap.is_infinite() || es.lambdas().iter().all(|&l| (l - es.lambdas()[0]).abs() <= 1e-12 * scale) {
        return Ok(report.fail(Reason::ScalarSpectrum));
    }
    if gap <= 1e-9 * scale {
        return Ok(report.fail(Reason::RepeatedEigenvalues { min_gap: gap }));
    }
    if !g.is_connected(1e-12) {
        return Ok(report.fail(Reason::Disconnected));
    }
    if let Err(e) = canonicalize(es.diagonalizer()) {
        return Ok(report.fail(Reason::NotFlat { detail: e.to_string() }));
    }
    let Some(analytic) = analytic_pst_times(es)? else {
        return Ok(report.fail(Reason::NoAnalyticTimes));
    };
    report.return_time = Some(analytic.return_time);
    report.literal_phase_equality = Some(analytic.literal_equality);
    report.analytic_times = Some(analytic.times.clone());

    let mut reasons = Vec::new();
    for (vertex, &t) in analytic.times.iter().enumerate() {
        if pst_at(&unitary_at(es, t), 0, vertex, config.pst_tol).is_none() {
            reasons.push(Reason::AnalyticNotConfirmed { vertex, time: t });
        }
    }

    let period = analytic.return_time;
    let scan = scan_min_times(es, config.horizon_factor * period, config.step_for(es, period), config.pst_tol)?;
    report.min_times = scan.min_times;
    report.phases = scan.phases;
    for u in 0..n {
        for v in 0..n {
            if report.min_times[u][v].is_none() {
                reasons.push(Reason::MissingTransfer { u, v });
            }
        }
    }
    let mut worst = 0.0f64;
    for (vertex, &analytic) in analytic.times.iter().enumerate() {
        if let Some(scanned) = report.min_times[0][vertex] {
            let diff = (analytic - scanned).abs();
            worst = worst.max(diff);
            if diff > TIME_TOL {
                reasons.push(Reason::TimeMismatch { vertex, analytic, scanned });
            }
        }
    }
    report.max_time_discrepancy = Some(worst);
    report.upst = reasons.is_empty();
    report.reasons = reasons;

    if report.upst {
        match spacing_test(&report) {
            Ok(outcome) => {
                report.circulant_timing = Some(outcome.circulant);
                report.relabeling = Some(outcome.relabeling);
            }
            Err(WalkError::TimingTie { u, v }) => {
                report.circulant_timing = Some(false);
                report.reasons.push(Reason::TimingTie { u, v });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Result of the consecutive-spacing test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpacingOutcome {
    pub circulant: bool,
    pub relabeling: Vec<usize>,
    /// `max_k |t_{π(k),π(k+1)} − t_{π(0),π(1)}|`, indices mod n.
    pub max_deviation: f64,
}

/// Relabels vertices by increasing `t_{0,·}` and checks that every
/// consecutive transfer time `t_{k,k+1}` (wrapping at n) equals `t_{0,1}`.
pub fn spacing_test(report: &TransferReport) -> Result<SpacingOutcome, WalkError> {
    let n = report.n;
    if !report.upst {
        return Err(WalkError::IncompleteReport("graph is not certified".into()));
    }
    let t = |u: usize, v: usize| {
        report.min_times[u][v].ok_or_else(|| WalkError::IncompleteReport(format!("missing t_{{{u},{v}}}")))
    };
    let mut order: Vec<usize> = (1..n).collect();
    let mut keyed = Vec::with_capacity(n - 1);
    for &v in &order {
        keyed.push((t(0, v)?, v));
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in keyed.windows(2) {
        if (w[1].0 - w[0].0).abs() <= TIE_TOL {
            return Err(WalkError::TimingTie { u: w[0].1, v: w[1].1 });
        }
    }
    order = std::iter::once(0).chain(keyed.iter().map(|&(_, v)| v)).collect();
    let base = t(order[0], order[1])?;
    let mut max_deviation = 0.0f64;
    for k in 0..n {
        let d = (t(order[k], order[(k + 1) % n])? - base).abs();
        max_deviation = max_deviation.max(d);
    }
    Ok(SpacingOutcome { circulant: max_deviation <= TIME_TOL, relabeling: order, max_deviation })
}

/// Whether every off-diagonal coefficient `a_j`, `j ≥ 1`, is nonzero, and
/// the indices where it is not.
pub fn denseness_check(spec: &CirculantSpec) -> (bool, Vec<usize>) {
    let zeros = spec.zero_indices();
    (zeros.is_empty(), zeros)
}
