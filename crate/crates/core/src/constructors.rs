//! Explicit graph families with universal perfect state transfer.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{root_of_unity, CycError, CycNum};
use crate::graph::{circulant_to_graph, validate_hermitian, CirculantSpec, GraphError, HermitianGraph};
use crate::linalg::{from_spectrum, unitarity_defect, CMatrix};
use crate::spectra::{circulant_eigensystem, EigenSystem, SpectraError, UNITARY_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inverse of 1 - ζ^-1 in Q(ζ{0}) has non-integer coefficients")]
    NonIntegralInverse(usize),
    #[error("constructed diagonalizer is not unitary (defect {defect:e})")]
    NotUnitary { defect: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
}

/// `β·⌊x/d⌋·d + (x mod d)`.
pub fn theta(d: u64, beta: u64, x: u64) -> u64 {
    beta * (x / d) * d + x % d
}

/// Parameters of the order-`a·b` non-circulant family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoncirculantParams {
    a: u64,
    b: u64,
    beta: u64,
}

impl NoncirculantParams {
    /// Requires `a ≥ b ≥ 2` and `β ≥ 2`.
    pub fn new(a: u64, b: u64, beta: u64) -> Result<Self, ConstructError> {
        if b < 2 || a < b {
            return Err(ConstructError::InvalidParams(format!("need a >= b >= 2, got a={a}, b={b}")));
        }
        if beta < 2 {
            return Err(ConstructError::InvalidParams(format!("need beta >= 2, got {beta}")));
        }
        Ok(NoncirculantParams { a, b, beta })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn order(&self) -> usize {
        (self.a * self.b) as usize
    }

    /// Minimum transfer time from vertex 0 to vertex `j`, `2π·ϑ_a(j)/(βn)`.
    pub fn transfer_time(&self, j: u64) -> f64 {
        std::f64::consts::TAU * theta(self.a, self.beta, j) as f64 / (self.beta * self.a * self.b) as f64
    }
}

/// `X_{jk} = ζ_{βn}^{ϑ_a(j)ϑ_b(k)}/√n` with eigenvalues `ϑ_b(k)`.
pub fn noncirculant_graph(p: NoncirculantParams) -> Result<(HermitianGraph, EigenSystem), ConstructError> {
    build_noncirculant(p.a, p.b, p.beta)
}

// Also reached with β = 1 by `gk_example(2)`, where the construction collapses
// to a Fourier matrix.
fn build_noncirculant(a: u64, b: u64, beta: u64) -> Result<(HermitianGraph, EigenSystem), ConstructError> {
    let n = (a * b) as usize;
    let m = beta as usize * n;
    let scale = 1.0 / (n as f64).sqrt();
    let x = CMatrix::from_fn(n, n, |j, k| {
        let e = (theta(a, beta, j as u64) * theta(b, beta, k as u64)) as usize % m;
        root_of_unity(m, e) * scale
    });
    let defect = unitarity_defect(&x);
    if defect > UNITARY_TOL {
        return Err(ConstructError::NotUnitary { defect });
    }
    let exact: Vec<BigRational> =
        (0..n as u64).map(|k| BigRational::from_integer(theta(b, beta, k).into())).collect();
    let lambdas: Vec<f64> = exact.iter().map(|l| l.to_f64().unwrap()).collect();
    let adjacency = from_spectrum(&x, &lambdas);
    let adjacency = (&adjacency + adjacency.adjoint()).scale(0.5);
    let graph = validate_hermitian(adjacency)?;
    let es = EigenSystem::new(x, lambdas)?.with_exact_lambdas(exact);
    Ok((graph, es))
}

/// The order-4 example `G_k` with eigenvalues `{0, 1, k, k+1}`, for even `k`.
/// Equal to the non-circulant construction with `a = b = 2`, `β = k/2`.
pub fn gk_example(k: u64) -> Result<(HermitianGraph, EigenSystem), ConstructError> {
    if k < 2 || k % 2 != 0 {
        return Err(ConstructError::InvalidParams(format!("G_k needs an even k >= 2, got {k}")));
    }
    build_noncirculant(2, 2, k / 2)
}

/// Builds circulants from integer vectors `c`, caching the `c`-independent
/// part `1/(ζₙ^{−j} − 1)` of every coefficient.
#[derive(Clone, Debug)]
pub struct CirculantBuilder {
    n: usize,
    base: Vec<CycNum>,
}

impl CirculantBuilder {
    pub fn new(n: usize) -> Result<Self, ConstructError> {
        if n < 2 {
            return Err(ConstructError::InvalidParams(format!("circulant order must be >= 2, got {n}")));
        }
        let one = CycNum::one(n);
        let base = (1..n)
            .map(|j| (CycNum::zeta_pow(n, -(j as i64)) - &one).invert())
            .collect::<Result<_, _>>()?;
        Ok(CirculantBuilder { n, base })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `a₀ = 0` and `a_j = 1/(ζₙ^{−j} − 1) + Σ_k c_k ζₙ^{−jk}`.
    pub fn build(&self, c: &[i64]) -> Result<CirculantSpec, ConstructError> {
        let n = self.n;
        if c.len() != n {
            return Err(ConstructError::InvalidParams(format!("c has length {}, expected {n}", c.len())));
        }
        let mut a = Vec::with_capacity(n);
        a.push(CycNum::zero(n));
        for (j, base) in (1..n).zip(&self.base) {
            let mut v = vec![0i64; n];
            for (k, &ck) in c.iter().enumerate() {
                v[(n - (j * k) % n) % n] += ck;
            }
            a.push(base + &CycNum::from_int_exponents(n, &v)?);
        }
        let spec = CirculantSpec::new(a)?;
        spec.check_hermitian()?;
        Ok(spec)
    }
}

/// One-off form of [`CirculantBuilder::build`].
pub fn circulant_from_c(n: usize, c: &[i64]) -> Result<CirculantSpec, ConstructError> {
    CirculantBuilder::new(n)?.build(c)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The `c` vector with `Σ c_k ζₙ^{−k} = 1/(1 − ζₙ^{−1})`, taken from the
/// zero-padded power-basis coefficients of the inverse.
pub fn nondense_c_vector(n: usize) -> Result<Vec<i64>, ConstructError> {
    let one = CycNum::one(n);
    let y = (&one - &CycNum::zeta_pow(n, -1)).invert()?;
    if !y.has_integer_coeffs() {
        return Err(ConstructError::NonIntegralInverse(n));
    }
    let mut c = vec![0i64; n];
    for (i, yi) in y.coeffs().iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let v = yi.to_integer().to_i64().ok_or(ConstructError::NonIntegralInverse(n))?;
        c[(n - i) % n] = v;
    }
    Ok(c)
}

/// A circulant of order `p·q` with `a₁ = a_{n−1} = 0`.
pub fn nondense_circulant(p: u64, q: u64) -> Result<CirculantSpec, ConstructError> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(ConstructError::NotPrime(x));
        }
    }
    if p == q {
        return Err(ConstructError::InvalidParams(format!("primes must be distinct, got {p} twice")));
    }
    let n = (p * q) as usize;
    circulant_from_c(n, &nondense_c_vector(n)?)
}

/// `Circ(0, −i, i)`.
pub fn oriented_triangle() -> CirculantSpec {
    let i = CycNum::zeta_pow(4, 1);
    CirculantSpec::new(vec![CycNum::zero(4), -&i, i]).expect("nonempty")
}

/// JSON construction descriptor, tagged by `"family"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    CirculantC { n: usize, c: Vec<i64> },
    Nondense { p: u64, q: u64 },
    Noncirculant { a: u64, b: u64, beta: u64 },
}

/// A constructed graph with the eigensystem it was built from.
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: HermitianGraph,
    pub eigensystem: EigenSystem,
}

impl Construction {
    pub fn build(&self) -> Result<Built, ConstructError> {
        let (graph, eigensystem) = match self {
            Construction::CirculantC { n, c } => circulant_pair(&circulant_from_c(*n, c)?)?,
            Construction::Nondense { p, q } => circulant_pair(&nondense_circulant(*p, *q)?)?,
            Construction::Noncirculant { a, b, beta } => {
                noncirculant_graph(NoncirculantParams::new(*a, *b, *beta)?)?
            }
        };
        Ok(Built { graph, eigensystem })
    }
}

/// Dense graph and Fourier eigensystem of a Hermitian circulant.
pub fn circulant_pair(spec: &CirculantSpec) -> Result<(HermitianGraph, EigenSystem), ConstructError> {
    Ok((circulant_to_graph(spec)?, circulant_eigensystem(spec)?))
}
