//! Flat unitary (type-II) diagonalizers and the spectra they carry.
//!
//! Eigenvalue index `k` always pairs with column `k` of the diagonalizer; for
//! circulants that is the Fourier index, never a sorted order.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::serde_impl::opt_rational_vec;
use crate::cyclotomic::{root_of_unity, CycNum};
use crate::graph::{CirculantSpec, GraphError, HermitianGraph};
use crate::linalg::{matrix_serde, max_abs_diff, unitarity_defect, CMatrix};

/// Unitarity tolerance for diagonalizers.
pub const UNITARY_TOL: f64 = 1e-10;
/// Magnitude bound for the non-leading row and column sums of a canonical
/// type-II matrix.
pub const ZERO_SUM_TOL: f64 = 1e-9;
/// Default tolerance for [`recognize_eigenvalue_form`].
pub const EIGEN_FORM_TOL: f64 = 1e-9;
/// Largest denominator accepted when reconstructing eigenvalue ratios.
pub const MAX_RATIO_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not flat: max | |M_jk| - 1/sqrt(n) | = {max_deviation:e}")]
    NotFlat { max_deviation: f64 },
    #[error("matrix is not unitary: max |M*M - I| = {defect:e}")]
    NotUnitary { defect: f64 },
    #[error("eigenvalue {index} has imaginary part {imag:e}")]
    NonRealEigenvalue { index: usize, imag: f64 },
    #[error("{lambdas} eigenvalues for an order-{n} diagonalizer")]
    LengthMismatch { n: usize, lambdas: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A unitary diagonalizer `X` (column k is the eigenvector for `lambdas[k]`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenSystem {
    n: usize,
    #[serde(rename = "X", with = "matrix_serde")]
    x: CMatrix,
    lambdas: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational_vec")]
    exact_lambdas: Option<Vec<BigRational>>,
}

impl EigenSystem {
    /// Checks shape and unitarity to [`UNITARY_TOL`].
    pub fn new(x: CMatrix, lambdas: Vec<f64>) -> Result<Self, SpectraError> {
        if x.nrows() != x.ncols() {
            return Err(SpectraError::NotSquare { rows: x.nrows(), cols: x.ncols() });
        }
        if lambdas.len() != x.nrows() {
            return Err(SpectraError::LengthMismatch { n: x.nrows(), lambdas: lambdas.len() });
        }
        let defect = unitarity_defect(&x);
        if defect > UNITARY_TOL {
            return Err(SpectraError::NotUnitary { defect });
        }
        Ok(EigenSystem { n: x.nrows(), x, lambdas, exact_lambdas: None })
    }

    pub fn with_exact_lambdas(mut self, exact: Vec<BigRational>) -> Self {
        assert_eq!(exact.len(), self.n);
        self.exact_lambdas = Some(exact);
        self
    }

    /// Re-checks a deserialized eigensystem.
    pub fn validate(self) -> Result<Self, SpectraError> {
        let exact = self.exact_lambdas.clone();
        let es = EigenSystem::new(self.x, self.lambdas)?;
        Ok(match exact {
            Some(e) if e.len() == es.n => es.with_exact_lambdas(e),
            _ => es,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn diagonalizer(&self) -> &CMatrix {
        &self.x
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn exact_lambdas(&self) -> Option<&[BigRational]> {
        self.exact_lambdas.as_deref()
    }

    /// `max |A·X − X·Λ|`, the diagonalization residual against a graph.
    pub fn residual(&self, g: &HermitianGraph) -> f64 {
        let ax = g.adjacency() * &self.x;
        let mut xl = self.x.clone();
        for (k, &l) in self.lambdas.iter().enumerate() {
            xl.column_mut(k).scale_mut(l);
        }
        max_abs_diff(&ax, &xl)
    }

    /// The graph `X·diag(λ)·X†` this system describes.
    pub fn adjacency(&self) -> CMatrix {
        crate::linalg::from_spectrum(&self.x, &self.lambdas)
    }

    /// Same eigenvectors with every eigenvalue shifted by `alpha`.
    pub fn shifted(&self, alpha: &BigRational) -> EigenSystem {
        let a = alpha.to_f64().expect("shift out of f64 range");
        EigenSystem {
            n: self.n,
            x: self.x.clone(),
            lambdas: self.lambdas.iter().map(|l| l + a).collect(),
            exact_lambdas: self.exact_lambdas.as_ref().map(|v| v.iter().map(|l| l + alpha).collect()),
        }
    }

    /// Smallest gap between two eigenvalues.
    pub fn min_gap(&self) -> f64 {
        let mut sorted = self.lambdas.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// `F_n` with entry `(j, k) = e^{2πi·jk/n}/√n`.
pub fn fourier_matrix(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| root_of_unity(n, j * k) * scale)
}

/// Exact eigenvalues `λ_ℓ = Σ_j a_j ζₙ^{jℓ}` in the spec's conductor.
pub fn circulant_eigenvalues_exact(spec: &CirculantSpec) -> Vec<CycNum> {
    let n = spec.order();
    let m = spec.conductor();
    let step = (m / n) as i64;
    (0..n)
        .map(|l| {
            spec.coeffs().iter().enumerate().fold(CycNum::zero(m), |acc, (j, a)| {
                if a.is_zero() {
                    acc
                } else {
                    acc + a.mul_zeta_pow(((j * l) % n) as i64 * step)
                }
            })
        })
        .collect()
}

/// Fourier diagonalization of a Hermitian circulant with exactly computed
/// eigenvalues.
pub fn circulant_eigensystem(spec: &CirculantSpec) -> Result<EigenSystem, SpectraError> {
    spec.check_hermitian()?;
    let exact = circulant_eigenvalues_exact(spec);
    let mut lambdas = Vec::with_capacity(exact.len());
    for (index, l) in exact.iter().enumerate() {
        let z = l.embed();
        if !l.is_real() || z.im.abs() > 1e-10 {
            return Err(SpectraError::NonRealEigenvalue { index, imag: z.im });
        }
        lambdas.push(z.re);
    }
    let es = EigenSystem::new(fourier_matrix(spec.order()), lambdas)?;
    let rational: Option<Vec<BigRational>> = exact.iter().map(CycNum::to_rational).collect();
    Ok(match rational {
        Some(r) => es.with_exact_lambdas(r),
        None => es,
    })
}

fn flatness_deviation(m: &CMatrix) -> f64 {
    let target = 1.0 / (m.nrows() as f64).sqrt();
    m.iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max)
}

/// Flat (all `|M_jk| = 1/√n`) and unitary, both within `tol`.
pub fn is_type_ii(m: &CMatrix, tol: f64) -> bool {
    m.nrows() == m.ncols() && flatness_deviation(m) <= tol && unitarity_defect(m) <= tol
}

/// Result of [`canonicalize`]: `x = diag(s) · Z · diag(d)`.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub x: CMatrix,
    /// Column scaling; unit-modulus since `Z` is flat.
    pub d: Vec<Complex64>,
    /// Row (switching) scaling; the switched graph is `S·A·S⁻¹`.
    pub s: Vec<Complex64>,
}

impl Canonical {
    /// Phase angles `α_{j,k} ∈ [0, 2π)` with `X_{j,k} = e^{iα_{j,k}}/√n`.
    pub fn phase(&self, j: usize, k: usize) -> f64 {
        let a = self.x[(j, k)].arg();
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }
}

/// Rescales columns then rows of a flat unitary so its first row and first
/// column are all `1/√n`.
pub fn canonicalize(z: &CMatrix) -> Result<Canonical, SpectraError> {
    if z.nrows() != z.ncols() {
        return Err(SpectraError::NotSquare { rows: z.nrows(), cols: z.ncols() });
    }
    let n = z.nrows();
    let max_deviation = flatness_deviation(z);
    if max_deviation > UNITARY_TOL {
        return Err(SpectraError::NotFlat { max_deviation });
    }
    let defect = unitarity_defect(z);
    if defect > UNITARY_TOL {
        return Err(SpectraError::NotUnitary { defect });
    }
    let root_n = (n as f64).sqrt();
    let unit = |w: Complex64| {
        let u = (w * root_n).inv();
        u / u.norm()
    };
    let d: Vec<Complex64> = (0..n).map(|k| unit(z[(0, k)])).collect();
    let mut x = z.clone();
    for (k, &dk) in d.iter().enumerate() {
        x.column_mut(k).apply(|z| *z *= dk);
    }
    let s: Vec<Complex64> = (0..n).map(|j| unit(x[(j, 0)])).collect();
    for (j, &sj) in s.iter().enumerate() {
        x.row_mut(j).apply(|z| *z *= sj);
    }
    Ok(Canonical { x, d, s })
}

/// Every row and column sum other than the first vanishes to [`ZERO_SUM_TOL`].
pub fn zero_sum_check(x: &CMatrix) -> bool {
    let n = x.nrows();
    (1..n).all(|i| {
        let row: Complex64 = x.row(i).iter().sum();
        let col: Complex64 = x.column(i).iter().sum();
        row.norm() <= ZERO_SUM_TOL && col.norm() <= ZERO_SUM_TOL
    })
}

/// Witness for `λ_k = α + β(q·k + c_k·n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenForm {
    pub alpha: f64,
    pub beta: f64,
    pub q: i64,
    pub c: Vec<i64>,
}

impl EigenForm {
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let n = self.c.len() as i64;
        self.alpha + self.beta * (self.q * k as i64 + self.c[k] * n) as f64
    }
}

/// Best rational approximation `p/q` with `q ≤ max_den` and `|x − p/q| ≤ tol`,
/// taken from the continued-fraction convergents of `x`.
pub fn rationalize(x: f64, tol: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let ai = a as i128;
        (h0, h1) = (h1, ai * h1 + h0);
        (k0, k1) = (k1, ai * k1 + k0);
        if k1 > max_den as i128 {
            return None;
        }
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some((h1 as i64, k1 as i64));
        }
        let frac = r - a;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Expresses every `delta_k` as an integer multiple `m_k` of one positive
/// real `β`, the largest such. Ratios to the first nonzero entry must be
/// rational with denominator at most [`MAX_RATIO_DENOMINATOR`] at `tol`.
pub fn commensurate(deltas: &[f64], tol: f64) -> Option<(f64, Vec<i64>)> {
    let pivot = *deltas.iter().find(|d| d.abs() > tol)?;
    let mut fracs = Vec::with_capacity(deltas.len());
    for &d in deltas {
        fracs.push(rationalize(d / pivot, tol, MAX_RATIO_DENOMINATOR)?);
    }
    let mut lcm: i128 = 1;
    for &(_, q) in &fracs {
        lcm = lcm.lcm(&(q as i128));
        if lcm > i64::MAX as i128 {
            return None;
        }
    }
    let nums: Vec<i128> = fracs.iter().map(|&(p, q)| p as i128 * (lcm / q as i128)).collect();
    let g = nums.iter().fold(0i128, |acc, &v| acc.gcd(&v));
    let beta = pivot.abs() * g as f64 / lcm as f64;
    let sign = if pivot < 0.0 { -1 } else { 1 };
    let m = nums.iter().map(|&v| (sign * v / g) as i64).collect();
    Some((beta, m))
}

/// Exact counterpart of [`commensurate`] for rational differences.
pub fn commensurate_exact(deltas: &[BigRational]) -> Option<(BigRational, Vec<BigInt>)> {
    let nonzero: Vec<&BigRational> = deltas.iter().filter(|d| !d.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let den = nonzero.iter().fold(BigInt::from(1), |acc, d| acc.lcm(d.denom()));
    let nums: Vec<BigInt> = deltas.iter().map(|d| (d * &den).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let beta = BigRational::new(g.clone(), den);
    Some((beta, nums.into_iter().map(|v| v / &g).collect()))
}

/// Searches for a witness `(α, β, q, c)` of `λ_k = α + β(q·k + c_k·n)` with
/// `β > 0` and `gcd(q, n) = 1`.
///
/// Differences `δ_k = λ_k − λ₀` are reduced to integer multiples of their real
/// gcd `β` (see [`commensurate`]); the residues must then be `q·k mod n` for a
/// unit `q`, taken as the least positive representative. `α` is normalized
/// into `[0, β·n)`, which fixes `c₀`.
pub fn recognize_eigenvalue_form(lambdas: &[f64], n: usize, tol: f64) -> Option<EigenForm> {
    if lambdas.len() != n || n == 0 {
        return None;
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| (w[1] - w[0]).abs() <= tol) {
        return None;
    }
    if n == 1 {
        return Some(EigenForm { alpha: lambdas[0], beta: 1.0, q: 1, c: vec![0] });
    }

    let deltas: Vec<f64> = lambdas.iter().map(|l| l - lambdas[0]).collect();
    let (beta, m) = commensurate(&deltas, tol)?;
    let ni = n as i64;
    let q = m[1].rem_euclid(ni);
    if q.gcd(&ni) != 1 {
        return None;
    }
    if (0..n).any(|k| (m[k] - q * k as i64).rem_euclid(ni) != 0) {
        return None;
    }

    let period = beta * n as f64;
    let mut shift = (lambdas[0] / period).floor();
    let mut alpha = lambdas[0] - shift * period;
    if (period - alpha).abs() <= tol {
        alpha = 0.0;
        shift += 1.0;
    }
    let c0 = shift as i64;
    let c: Vec<i64> = (0..n).map(|k| c0 + (m[k] - q * k as i64) / ni).collect();
    let form = EigenForm { alpha, beta, q, c };

    let scale = lambdas.iter().fold(1.0f64, |s, l| s.max(l.abs()));
    let ok = (0..n).all(|k| (form.eigenvalue(k) - lambdas[k]).abs() <= tol * scale);
    ok.then_some(form)
}
