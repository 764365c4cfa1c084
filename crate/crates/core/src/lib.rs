//! Graphs with universal perfect state transfer: exact cyclotomic
//! constructions, quantum-walk simulation and certification.
//!
//! ```
//! use upst_core::{circulant_pair, oriented_triangle, verify_upst, ScanConfig};
//!
//! let (graph, es) = circulant_pair(&oriented_triangle()).unwrap();
//! let report = verify_upst(&graph, &es, &ScanConfig::default()).unwrap();
//! assert!(report.upst);
//! ```

pub mod constructors;
pub mod cyclotomic;
pub mod graph;
pub mod linalg;
pub mod spectra;
pub mod walk;

use thiserror::Error;

pub use constructors::{
    circulant_from_c, circulant_pair, gk_example, nondense_circulant, noncirculant_graph, oriented_triangle, theta,
    Built, CirculantBuilder, ConstructError, Construction, NoncirculantParams,
};
pub use cyclotomic::{totient, CycError, CycNum};
pub use graph::{circulant_to_graph, is_connected_circulant, validate_hermitian, CirculantSpec, GraphError, HermitianGraph};
pub use linalg::CMatrix;
pub use spectra::{
    canonicalize, circulant_eigensystem, fourier_matrix, is_type_ii, recognize_eigenvalue_form, zero_sum_check,
    Canonical, EigenForm, EigenSystem, SpectraError,
};
pub use walk::{
    analytic_pst_times, denseness_check, monomial_check, pst_at, pst_hits, scan_min_times, spacing_test, unitary_at,
    verify_upst, Reason, ScanConfig, TransferReport, WalkError,
};

/// Any error raised by this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Walk(#[from] WalkError),
}
