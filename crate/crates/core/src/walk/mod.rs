//! Continuous-time quantum walks `U(t) = e^{−iAt}` and perfect state transfer
//! certification.
//!
//! Entry `U[(v, u)]` is the amplitude at `v` of a walk started at `u`, so the
//! transfer time `t_{u,v}` is read from column `u`, row `v`.

mod analytic;
mod report;
mod scan;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::CMatrix;
use crate::spectra::{EigenSystem, SpectraError};

pub use analytic::{analytic_pst_times, AnalyticTimes};
pub use report::{denseness_check, spacing_test, verify_upst, Reason, SpacingOutcome, TransferReport};
pub use scan::{pst_hits, scan_min_times, ScanConfig, ScanResult, DEFAULT_SCAN_STEPS};

/// Magnitude tolerance: PST at `(u, v)` means `|U_{v,u}| ≥ 1 − PST_TOL`.
pub const PST_TOL: f64 = 1e-9;
/// Agreement tolerance for transfer times.
pub const TIME_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("all eigenvalues are equal; U(t) is a scalar phase and transfer times are not discrete")]
    ScalarSpectrum,
    #[error("λ₁ = λ₀; analytic times need distinct leading eigenvalues")]
    DegenerateSpectrum,
    #[error("graph has order {graph} but the eigensystem has order {eigensystem}")]
    OrderMismatch { graph: usize, eigensystem: usize },
    #[error("eigensystem does not diagonalize the graph (residual {residual:e})")]
    NotDiagonalized { residual: f64 },
    #[error("report is incomplete: {0}")]
    IncompleteReport(String),
    #[error("vertices {u} and {v} have equal transfer times from vertex 0")]
    TimingTie { u: usize, v: usize },
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `U(t) = X·diag(e^{−iλ_k t})·X†`.
pub fn unitary_at(es: &EigenSystem, t: f64) -> CMatrix {
    let x = es.diagonalizer();
    let mut scaled = x.clone();
    for (k, &l) in es.lambdas().iter().enumerate() {
        let e = Complex64::from_polar(1.0, -l * t);
        scaled.column_mut(k).apply(|z| *z *= e);
    }
    scaled * x.adjoint()
}

/// The phase `U_{v,u}` when it has unit magnitude within `tol`.
pub fn pst_at(u_t: &CMatrix, u: usize, v: usize, tol: f64) -> Option<Complex64> {
    let z = u_t[(v, u)];
    (z.norm() >= 1.0 - tol).then_some(z)
}

/// A monomial matrix split as `U|u⟩ = phases[u]·|perm[u]⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phases: Vec<Complex64>,
}

/// Splits `U` into permutation and phases when every row and column has one
/// entry of magnitude at least `1 − tol` and all others at most `tol`.
pub fn monomial_check(u_t: &CMatrix, tol: f64) -> Option<Monomial> {
    let n = u_t.nrows();
    let mut perm = Vec::with_capacity(n);
    let mut phases = Vec::with_capacity(n);
    let mut hit_rows = vec![false; n];
    for col in 0..n {
        let mut found = None;
        for row in 0..n {
            let m = u_t[(row, col)].norm();
            if m >= 1.0 - tol {
                if found.is_some() {
                    return None;
                }
                found = Some(row);
            } else if m > tol {
                return None;
            }
        }
        let row = found?;
        if std::mem::replace(&mut hit_rows[row], true) {
            return None;
        }
        perm.push(row);
        phases.push(u_t[(row, col)]);
    }
    Some(Monomial { perm, phases })
}
