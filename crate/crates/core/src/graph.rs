//! Hermitian weighted graphs and exact circulant specifications.
//!
//! Vertices are always `0..n`, read as Z/nZ; index arithmetic wraps mod n.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{CycError, CycNum};
use crate::linalg::{hermitian_deviation, matrix_serde, CMatrix};

/// Entrywise tolerance for Hermiticity of float-only input.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |A_jk - conj(A_kj)| = {max_deviation:e}")]
    NotHermitian { max_deviation: f64 },
    #[error("circulant is not Hermitian at index {index}: a_{index} != conj(a_{mirror})")]
    CirculantNotHermitian { index: usize, mirror: usize },
    #[error("adjacency disagrees with the attached circulant by {max_deviation:e}")]
    SpecMismatch { max_deviation: f64 },
    #[error("circulant needs at least one coefficient")]
    Empty,
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

/// First-row data `(a₀, …, a_{n−1})` of the circulant `C_jk = a_{k−j}`.
///
/// All coefficients share one conductor `m`, a multiple of the order `n`, so
/// ζₙ = ζₘ^{m/n} is available for eigenvalue sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CirculantSpec {
    n: usize,
    a: Vec<CycNum>,
}

impl CirculantSpec {
    /// Lifts every coefficient to the least common conductor of `n` and all
    /// inputs. Hermiticity is checked separately by [`check_hermitian`].
    ///
    /// [`check_hermitian`]: CirculantSpec::check_hermitian
    pub fn new(a: Vec<CycNum>) -> Result<Self, GraphError> {
        let n = a.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let m = a.iter().fold(n, |acc, x| acc.lcm(&x.conductor()));
        let a = a.iter().map(|x| x.lift(m)).collect::<Result<_, _>>()?;
        Ok(CirculantSpec { n, a })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.a
    }

    pub fn coeff(&self, j: usize) -> &CycNum {
        &self.a[j % self.n]
    }

    pub fn conductor(&self) -> usize {
        self.a[0].conductor()
    }

    /// Exact check of `a₀` real and `a_{n−j} = conj(a_j)`.
    pub fn check_hermitian(&self) -> Result<(), GraphError> {
        if !self.a[0].is_real() {
            return Err(GraphError::CirculantNotHermitian { index: 0, mirror: 0 });
        }
        for j in 1..self.n {
            let mirror = self.n - j;
            if j > mirror {
                break;
            }
            if self.a[mirror] != self.a[j].conj() {
                return Err(GraphError::CirculantNotHermitian { index: mirror, mirror: j });
            }
        }
        Ok(())
    }

    /// Adds `alpha` to `a₀`, i.e. the diagonal shift `A + αI`.
    pub fn shifted(&self, alpha: &BigRational) -> CirculantSpec {
        let mut a = self.a.clone();
        a[0] = &a[0] + &CycNum::from_rational(a[0].conductor(), alpha.clone());
        CirculantSpec { n: self.n, a }
    }

    /// Indices `j ≥ 1` with `a_j = 0`, decided exactly.
    pub fn zero_indices(&self) -> Vec<usize> {
        (1..self.n).filter(|&j| self.a[j].is_zero()).collect()
    }
}

impl<'de> Deserialize<'de> for CirculantSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            a: Vec<CycNum>,
        }
        let r = Repr::deserialize(d)?;
        if r.a.len() != r.n {
            return Err(serde::de::Error::custom(format!(
                "circulant of order {} has {} coefficients",
                r.n,
                r.a.len()
            )));
        }
        CirculantSpec::new(r.a).map_err(serde::de::Error::custom)
    }
}

/// A graph given by its Hermitian adjacency matrix, optionally with the exact
/// circulant data it was built from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HermitianGraph {
    n: usize,
    #[serde(with = "matrix_serde")]
    adjacency: CMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    circulant: Option<CirculantSpec>,
}

impl HermitianGraph {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &CMatrix {
        &self.adjacency
    }

    pub fn circulant(&self) -> Option<&CirculantSpec> {
        self.circulant.as_ref()
    }

    /// `A + αI`. Exact circulant data is shifted along with the matrix.
    pub fn shifted(&self, alpha: &BigRational) -> HermitianGraph {
        use num_traits::ToPrimitive;
        let a = alpha.to_f64().expect("shift out of f64 range");
        let mut adjacency = self.adjacency.clone();
        for j in 0..self.n {
            adjacency[(j, j)] += Complex64::new(a, 0.0);
        }
        HermitianGraph {
            n: self.n,
            adjacency,
            circulant: self.circulant.as_ref().map(|s| s.shifted(alpha)),
        }
    }

    /// Re-validates a deserialized graph: square, Hermitian, and consistent
    /// with its attached circulant data when present.
    pub fn validate(self) -> Result<HermitianGraph, GraphError> {
        match &self.circulant {
            Some(spec) => {
                let rebuilt = circulant_to_graph(spec)?;
                let dev = crate::linalg::max_abs_diff(&rebuilt.adjacency, &self.adjacency);
                if self.adjacency.nrows() != spec.order() || dev > HERMITIAN_TOL {
                    return Err(GraphError::SpecMismatch { max_deviation: dev });
                }
                Ok(rebuilt)
            }
            None => validate_hermitian(self.adjacency),
        }
    }

    /// True when the underlying (unweighted) graph is connected, taking
    /// entries above `tol` in magnitude as edges.
    pub fn is_connected(&self, tol: f64) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if !seen[v] && self.adjacency[(u, v)].norm() > tol {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Dense adjacency with entry `(j, k) = embed(a_{k−j mod n})`.
pub fn circulant_to_graph(spec: &CirculantSpec) -> Result<HermitianGraph, GraphError> {
    spec.check_hermitian()?;
    let n = spec.order();
    let row: Vec<Complex64> = spec.coeffs().iter().map(CycNum::embed).collect();
    let adjacency = CMatrix::from_fn(n, n, |j, k| row[(k + n - j) % n]);
    Ok(HermitianGraph { n, adjacency, circulant: Some(spec.clone()) })
}

/// Wraps a float matrix after checking it is square and Hermitian to
/// [`HERMITIAN_TOL`].
pub fn validate_hermitian(matrix: CMatrix) -> Result<HermitianGraph, GraphError> {
    if matrix.nrows() != matrix.ncols() {
        return Err(GraphError::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
    }
    let max_deviation = hermitian_deviation(&matrix);
    if max_deviation > HERMITIAN_TOL {
        return Err(GraphError::NotHermitian { max_deviation });
    }
    Ok(HermitianGraph { n: matrix.nrows(), adjacency: matrix, circulant: None })
}

/// Connectivity of a circulant: `gcd({j : a_j ≠ 0} ∪ {n}) = 1`.
pub fn is_connected_circulant(spec: &CirculantSpec) -> bool {
    let g = (1..spec.order())
        .filter(|&j| !spec.coeff(j).is_zero())
        .fold(spec.order(), |acc, j| acc.gcd(&j));
    g == 1
}
