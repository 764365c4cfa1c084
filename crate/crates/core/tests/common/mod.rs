#![allow(dead_code)]

use num_complex::Complex64;
use upst_core::linalg::CMatrix;
use upst_core::{
    circulant_pair, gk_example, nondense_circulant, noncirculant_graph, oriented_triangle, CirculantSpec, EigenSystem,
    HermitianGraph, NoncirculantParams,
};

pub enum Kind {
    Circulant(CirculantSpec),
    /// `(a, β)` of the non-circulant construction.
    Noncirculant { a: u64, beta: u64 },
    /// `G_2`: the `β = 1` end of the order-4 family, a Fourier-diagonalized
    /// graph without exact circulant data attached.
    FourierG2,
}

pub struct Fixture {
    pub name: String,
    pub graph: HermitianGraph,
    pub es: EigenSystem,
    pub kind: Kind,
}

impl Fixture {
    pub fn is_circulant(&self) -> bool {
        !matches!(self.kind, Kind::Noncirculant { .. })
    }
}

fn circulant(name: &str, spec: CirculantSpec) -> Fixture {
    let (graph, es) = circulant_pair(&spec).unwrap();
    Fixture { name: name.into(), graph, es, kind: Kind::Circulant(spec) }
}

pub const THEOREM_PARAMS: [(u64, u64, u64); 4] = [(2, 2, 2), (3, 2, 2), (3, 3, 2), (4, 2, 3)];

/// Every certified fixture: the oriented triangle, `G_k` for k ∈ {2,4,6,8},
/// the four non-circulant parameter sets and the two non-dense circulants.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = vec![circulant("Circ(0,-i,i)", oriented_triangle())];
    for k in [2u64, 4, 6, 8] {
        let (graph, es) = gk_example(k).unwrap();
        let kind = if k == 2 { Kind::FourierG2 } else { Kind::Noncirculant { a: 2, beta: k / 2 } };
        out.push(Fixture { name: format!("G_{k}"), graph, es, kind });
    }
    for (a, b, beta) in THEOREM_PARAMS {
        let (graph, es) = noncirculant_graph(NoncirculantParams::new(a, b, beta).unwrap()).unwrap();
        out.push(Fixture { name: format!("X({a},{b},{beta})"), graph, es, kind: Kind::Noncirculant { a, beta } });
    }
    out.push(circulant("nondense(2,3)", nondense_circulant(2, 3).unwrap()));
    out.push(circulant("nondense(3,5)", nondense_circulant(3, 5).unwrap()));
    out
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Reference order-4 matrix for `G_6`, entered by hand.
pub fn reference_g6() -> CMatrix {
    let w = Complex64::from_polar(1.0, -std::f64::consts::PI / 6.0);
    let one = c(1.0, 0.0);
    let p = (one + w) * 1.5;
    let m = (one - w) * 1.5;
    let h = c(0.5, 0.0);
    let z = c(0.0, 0.0);
    CMatrix::from_row_slice(
        4,
        4,
        &[z, p, h, m, p.conj(), z, m.conj(), h, h, m, z, p, m.conj(), h, p.conj(), z],
    )
}

/// Reference order-6 matrix for the non-dense example, entered by hand.
pub fn reference_nondense_six() -> CMatrix {
    let r = 1.0 / 3f64.sqrt();
    let row = [c(2.5, 0.0), c(0.0, 0.0), c(1.0, -r), c(1.5, 0.0), c(1.0, r), c(0.0, 0.0)];
    CMatrix::from_fn(6, 6, |j, k| row[(k + 6 - j) % 6])
}

/// Eigenvalues of a Hermitian matrix from nalgebra's dense solver, sorted.
pub fn oracle_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = nalgebra::SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn sorted(v: &[f64]) -> Vec<f64> {
    let mut v = v.to_vec();
    v.sort_by(f64::total_cmp);
    v
}
