//! Grid scan of `|U(t)_{v,u}|` with golden-section and Newton refinement.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{WalkError, PST_TOL};
use crate::spectra::EigenSystem;

/// Grid points per return time when no finer step is needed.
pub const DEFAULT_SCAN_STEPS: usize = 10_000;
/// Samples per period of the fastest oscillation `e^{−i(λ_max − λ_min)t}`.
const SAMPLES_PER_OSCILLATION: f64 = 32.0;
/// Grid maxima below this squared magnitude are not refined.
const PEAK_FLOOR: f64 = 0.5;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Grid points per return time.
    pub steps: usize,
    /// Scan horizon as a multiple of the return time.
    pub horizon_factor: f64,
    /// Horizon used when no return time is known.
    pub fallback_horizon: f64,
    pub pst_tol: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { steps: DEFAULT_SCAN_STEPS, horizon_factor: 1.25, fallback_horizon: 100.0, pst_tol: PST_TOL }
    }
}

impl ScanConfig {
    /// Grid step for a given period: `period/steps`, tightened so the fastest
    /// oscillation is sampled [`SAMPLES_PER_OSCILLATION`] times.
    pub fn step_for(&self, es: &EigenSystem, period: f64) -> f64 {
        let coarse = period / self.steps.max(1) as f64;
        let spread = spectral_spread(es.lambdas());
        if spread > 0.0 {
            coarse.min(std::f64::consts::TAU / (spread * SAMPLES_PER_OSCILLATION))
        } else {
            coarse
        }
    }
}

fn spectral_spread(l: &[f64]) -> f64 {
    let (lo, hi) = l.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    hi - lo
}

/// First-passage times and the amplitudes observed there; `None` marks a pair
/// with no hit inside the horizon.
#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    /// `min_times[u][v]` is the first `t > 0` with `|U_{v,u}| ≥ 1 − tol`.
    pub min_times: Vec<Vec<Option<f64>>>,
    pub phases: Vec<Vec<Option<Complex64>>>,
    pub horizon: f64,
    pub step: f64,
}

/// `t ↦ U(t)_{v,u} = Σ_k w_k e^{−iλ_k t}` with `w_k = X_{v,k}·conj(X_{u,k})`.
struct Amplitude<'a> {
    lambdas: &'a [f64],
    w: Vec<Complex64>,
}

impl<'a> Amplitude<'a> {
    fn new(es: &'a EigenSystem, u: usize, v: usize) -> Self {
        let x = es.diagonalizer();
        let w = (0..es.order()).map(|k| x[(v, k)] * x[(u, k)].conj()).collect();
        Amplitude { lambdas: es.lambdas(), w }
    }

    fn value(&self, t: f64) -> Complex64 {
        self.w.iter().zip(self.lambdas).map(|(w, &l)| w * Complex64::from_polar(1.0, -l * t)).sum()
    }

    fn power(&self, t: f64) -> f64 {
        self.value(t).norm_sqr()
    }

    /// First and second derivatives of `|g(t)|²`.
    fn derivatives(&self, t: f64) -> (f64, f64) {
        let (mut g, mut g1, mut g2) = (Complex64::default(), Complex64::default(), Complex64::default());
        for (w, &l) in self.w.iter().zip(self.lambdas) {
            let e = w * Complex64::from_polar(1.0, -l * t);
            g += e;
            g1 += e * Complex64::new(0.0, -l);
            g2 += e * (-l * l);
        }
        let d1 = 2.0 * (g.conj() * g1).re;
        let d2 = 2.0 * (g1.norm_sqr() + (g.conj() * g2).re);
        (d1, d2)
    }

    /// Golden-section maximization of `|g|²` on `[lo, hi]`, then Newton on
    /// the derivative. Near a peak `|g|²` is flat to rounding, so golden
    /// section alone stalls around `√ε`; the derivative does not.
    fn refine(&self, mut lo: f64, mut hi: f64) -> f64 {
        const INV_PHI: f64 = 0.618_033_988_749_894_9;
        let (blo, bhi) = (lo, hi);
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let (mut f1, mut f2) = (self.power(x1), self.power(x2));
        while hi - lo > 1e-10 * hi.abs().max(1.0) {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.power(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.power(x1);
            }
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..20 {
            let (d1, d2) = self.derivatives(t);
            if d2 >= 0.0 {
                break;
            }
            let next = t - d1 / d2;
            if !(blo..=bhi).contains(&next) {
                break;
            }
            let done = (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1.0);
            t = next;
            if done {
                break;
            }
        }
        t
    }
}

/// `e^{−iλ_k t_i}` for every grid time, row-major by time.
struct PhaseTable {
    n: usize,
    times: Vec<f64>,
    entries: Vec<Complex64>,
}

impl PhaseTable {
    fn new(lambdas: &[f64], horizon: f64, step: f64) -> Self {
        let points = (horizon / step).ceil() as usize + 1;
        let times: Vec<f64> = (0..points).map(|i| i as f64 * step).collect();
        let n = lambdas.len();
        let mut entries = vec![Complex64::default(); points * n];
        entries.par_chunks_mut(n).zip(&times).for_each(|(row, &t)| {
            for (e, &l) in row.iter_mut().zip(lambdas) {
                *e = Complex64::from_polar(1.0, -l * t);
            }
        });
        PhaseTable { n, times, entries }
    }

    fn powers(&self, amp: &Amplitude) -> Vec<f64> {
        self.entries
            .chunks(self.n)
            .map(|row| row.iter().zip(&amp.w).map(|(e, w)| e * w).sum::<Complex64>().norm_sqr())
            .collect()
    }

    /// Refined times of every grid peak reaching `|U| ≥ 1 − tol`, in order;
    /// stops after `limit` hits.
    fn hits(&self, amp: &Amplitude, tol: f64, limit: usize) -> Vec<(f64, Complex64)> {
        let f = self.powers(amp);
        let mut out = Vec::new();
        for i in 1..f.len().saturating_sub(1) {
            if f[i] > PEAK_FLOOR && f[i] > f[i - 1] && f[i] >= f[i + 1] {
                let t = amp.refine(self.times[i - 1], self.times[i + 1]);
                let z = amp.value(t);
                if z.norm() >= 1.0 - tol {
                    out.push((t, z));
                    if out.len() >= limit {
                        break;
                    }
                }
            }
        }
        out
    }
}

fn check_scannable(es: &EigenSystem, horizon: f64, step: f64) -> Result<(), WalkError> {
    let l = es.lambdas();
    let scale = l.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    if spectral_spread(l) <= 1e-12 * scale {
        return Err(WalkError::ScalarSpectrum);
    }
    assert!(step > 0.0 && horizon > step, "scan needs 0 < step < horizon");
    Ok(())
}

/// First-passage times for every ordered pair within `horizon`.
pub fn scan_min_times(es: &EigenSystem, horizon: f64, step: f64, tol: f64) -> Result<ScanResult, WalkError> {
    check_scannable(es, horizon, step)?;
    let n = es.order();
    let table = PhaseTable::new(es.lambdas(), horizon, step);
    let firsts: Vec<Option<(f64, Complex64)>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (u, v) = (idx / n, idx % n);
            table.hits(&Amplitude::new(es, u, v), tol, 1).into_iter().next()
        })
        .collect();
    let mut min_times = vec![vec![None; n]; n];
    let mut phases = vec![vec![None; n]; n];
    for (idx, hit) in firsts.into_iter().enumerate() {
        if let Some((t, z)) = hit {
            min_times[idx / n][idx % n] = Some(t);
            phases[idx / n][idx % n] = Some(z);
        }
    }
    Ok(ScanResult { min_times, phases, horizon, step })
}

/// All PST times from `u` to `v` in `(0, horizon]`, in increasing order.
pub fn pst_hits(es: &EigenSystem, u: usize, v: usize, horizon: f64, step: f64, tol: f64) -> Result<Vec<f64>, WalkError> {
    check_scannable(es, horizon, step)?;
    let table = PhaseTable::new(es.lambdas(), horizon, step);
    Ok(table.hits(&Amplitude::new(es, u, v), tol, usize::MAX).into_iter().map(|(t, _)| t).collect())
}
