//! Loading jobs: construction descriptors, graph files and bare matrices.

use std::path::Path;

use nalgebra::{Complex, SymmetricEigen};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use upst_core::{validate_hermitian, CMatrix, Construction, EigenSystem, HermitianGraph};

use crate::CliError;

/// What `generate` writes and `verify`/`times` read back.
#[derive(Serialize, Deserialize)]
pub struct GraphFile {
    pub graph: HermitianGraph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigensystem: Option<EigenSystem>,
}

pub struct Job {
    pub graph: HermitianGraph,
    pub es: EigenSystem,
    /// True when the eigensystem came from the dense solver rather than the
    /// input.
    pub solved: bool,
}

/// Reads `arg` as inline JSON when it starts with `{` or `[`, else as a path.
pub fn read_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_owned()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

pub fn parse_descriptor(v: Value) -> Result<Construction, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("invalid descriptor: {e}")))
}

pub fn parse_shift(s: &str) -> Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|e| format!("`{s}` is not a rational: {e}"))
}

/// Accepts a descriptor (`"family"` key), a graph file (`"graph"` key), a
/// bare graph (`"adjacency"` key) or a matrix given as rows of `[re, im]`.
pub fn load_job(v: Value, shift: Option<&BigRational>) -> Result<Job, CliError> {
    let input = |e: &dyn std::fmt::Display| CliError::Input(e.to_string());
    let (graph, es) = match &v {
        Value::Object(m) if m.contains_key("family") => {
            let built = parse_descriptor(v)?.build().map_err(|e| input(&e))?;
            (built.graph, Some(built.eigensystem))
        }
        Value::Object(m) if m.contains_key("graph") => {
            let f: GraphFile = serde_json::from_value(v).map_err(|e| input(&e))?;
            let es = f.eigensystem.map(EigenSystem::validate).transpose().map_err(|e| input(&e))?;
            (f.graph.validate().map_err(|e| input(&e))?, es)
        }
        Value::Object(m) if m.contains_key("adjacency") => {
            let g: HermitianGraph = serde_json::from_value(v).map_err(|e| input(&e))?;
            (g.validate().map_err(|e| input(&e))?, None)
        }
        Value::Array(_) => {
            let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(v).map_err(|e| input(&e))?;
            (validate_hermitian(matrix_from_rows(&rows)?).map_err(|e| input(&e))?, None)
        }
        _ => return Err(CliError::Input("unrecognized input: expected a descriptor, graph file or matrix".into())),
    };
    let (es, solved) = match es {
        Some(es) => (es, false),
        None => (solve(graph.adjacency())?, true),
    };
    Ok(match shift {
        Some(a) => Job { graph: graph.shifted(a), es: es.shifted(a), solved },
        None => Job { graph, es, solved },
    })
}

fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, CliError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input("matrix must be square and nonempty".into()));
    }
    Ok(CMatrix::from_fn(n, n, |j, k| Complex::new(rows[j][k][0], rows[j][k][1])))
}

fn solve(a: &CMatrix) -> Result<EigenSystem, CliError> {
    let eig = SymmetricEigen::new(a.clone());
    EigenSystem::new(eig.eigenvectors, eig.eigenvalues.iter().copied().collect())
        .map_err(|e| CliError::Input(format!("dense eigensolver: {e}")))
}
