use std::f64::consts::TAU;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{WalkError, TIME_TOL};
use crate::spectra::{canonicalize, commensurate, commensurate_exact, Canonical, EigenSystem, EIGEN_FORM_TOL};

/// Transfer times from vertex 0 solved from the canonical phases.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticTimes {
    /// `times[ℓ]` is the least `t > 0` with PST from 0 to ℓ; `times[0]` is
    /// the return time.
    pub times: Vec<f64>,
    pub return_time: f64,
    /// Whether `(λ_k − λ₀)·t_ℓ = α_{ℓ,k}` holds as real numbers, not just
    /// modulo 2π.
    pub literal_equality: bool,
}

/// Angle difference reduced into `(−π, π]`.
fn wrap(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r > TAU / 2.0 {
        r - TAU
    } else {
        r
    }
}

/// `β` and integers `m_k` with `λ_k − λ₀ = β·m_k`, from exact eigenvalues
/// when available.
fn spectral_lattice(es: &EigenSystem) -> Option<(f64, Vec<i64>)> {
    if let Some(exact) = es.exact_lambdas() {
        let deltas: Vec<_> = exact.iter().map(|l| l - &exact[0]).collect();
        let (beta, m) = commensurate_exact(&deltas)?;
        let m = m.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()?;
        return Some((beta.to_f64()?, m));
    }
    let l = es.lambdas();
    let deltas: Vec<f64> = l.iter().map(|x| x - l[0]).collect();
    commensurate(&deltas, EIGEN_FORM_TOL)
}

/// Solves `(λ_k − λ₀)·t ≡ α_{ℓ,k} (mod 2π)` for every row ℓ of the canonical
/// diagonalizer. Returns `None` when the spectrum has no common period or
/// some row admits no solution.
pub fn analytic_pst_times(es: &EigenSystem) -> Result<Option<AnalyticTimes>, WalkError> {
    let n = es.order();
    let l = es.lambdas();
    if n < 2 {
        return Err(WalkError::ScalarSpectrum);
    }
    let scale = l.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    if (l[1] - l[0]).abs() <= EIGEN_FORM_TOL * scale {
        return Err(WalkError::DegenerateSpectrum);
    }
    let canonical = canonicalize(es.diagonalizer())?;
    let Some((beta, m)) = spectral_lattice(es) else {
        return Ok(None);
    };
    let period = TAU / beta;
    let d: Vec<f64> = m.iter().map(|&mk| beta * mk as f64).collect();

    let mut times = Vec::with_capacity(n);
    for row in 0..n {
        match solve_row(&canonical, &d, m[1], row, period) {
            Some(t) => times.push(t),
            None => return Ok(None),
        }
    }
    let literal_equality = (1..n).all(|row| {
        (1..n).all(|k| (d[k] * times[row] - canonical.phase(row, k)).abs() <= TIME_TOL)
    });
    Ok(Some(AnalyticTimes { times, return_time: period, literal_equality }))
}

fn solve_row(c: &Canonical, d: &[f64], m1: i64, row: usize, period: f64) -> Option<f64> {
    let a1 = c.phase(row, 1);
    (0..m1.unsigned_abs())
        .filter_map(|j| {
            let mut t = ((a1 + TAU * j as f64) / d[1]).rem_euclid(period);
            if t <= 1e-12 * period || period - t <= 1e-12 * period {
                t = period;
            }
            let ok = (1..d.len()).all(|k| wrap(d[k] * t - c.phase(row, k)).abs() <= TIME_TOL);
            ok.then_some(t)
        })
        .min_by(f64::total_cmp)
}
