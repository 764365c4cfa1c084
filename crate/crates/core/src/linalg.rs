//! Dense complex matrix helpers shared by the graph, spectra and walk modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

/// Largest entrywise deviation `|M_jk − conj(M_kj)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            worst = worst.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise deviation of `M†M` from the identity.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let g = m.adjoint() * m;
    let n = g.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((g[(j, k)] - target).norm());
        }
    }
    worst
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `X · diag(values) · X†`.
pub fn from_spectrum(x: &CMatrix, values: &[f64]) -> CMatrix {
    let mut scaled = x.clone();
    for (k, &v) in values.iter().enumerate() {
        scaled.column_mut(k).scale_mut(v);
    }
    scaled * x.adjoint()
}

/// Serde adapter: a matrix as rows of `[re, im]` pairs.
pub mod matrix_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
        (0..m.nrows())
            .map(|j| (0..m.ncols()).map(|k| [m[(j, k)].re, m[(j, k)].im]).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, String> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err("ragged matrix rows".into());
        }
        Ok(CMatrix::from_fn(n, cols, |j, k| Complex64::new(rows[j][k][0], rows[j][k][1])))
    }

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
        to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CMatrix, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        from_rows(&rows).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of complex numbers as `[re, im]` pairs.
pub mod complex_vec_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<[f64; 2]>::deserialize(d)?
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect())
    }
}
