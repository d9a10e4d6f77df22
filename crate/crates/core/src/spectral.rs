//! The signless Laplacian Q = A + D and its numerical eigendecomposition.

use std::ops::Range;

use crate::error::Result;
use crate::graph::Graph;
use crate::matrix::{jacobi_eigh, SymMatrix};

/// Default eigensolver tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Eigenvalues within this distance of each other are treated as one
/// cluster (a shared eigenspace) everywhere in the crate.
pub const CLUSTER_TOL: f64 = 1e-6;

/// The signless Laplacian Q = A + D: symmetric, integer-valued, positive
/// semidefinite, with deg(i) on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SignlessLaplacian {
    matrix: SymMatrix,
}

impl SignlessLaplacian {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, g.degree(i) as f64);
        }
        for (u, v) in g.edges() {
            m.set(u, v, 1.0);
        }
        SignlessLaplacian { matrix: m }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    /// Dense whitespace-separated text (debugging aid).
    pub fn to_text(&self) -> String {
        self.matrix.to_text()
    }
}

/// Assemble Q = A + D.
pub fn signless_laplacian(g: &Graph) -> SignlessLaplacian {
    SignlessLaplacian::new(g)
}

/// Full eigendecomposition of a signless Laplacian.
///
/// Eigenvalues are sorted descending (q₁ ≥ … ≥ q_n); eigenvectors are unit
/// norm, mutually orthogonal, and sign-normalized so that each vector's
/// largest-magnitude entry is positive (ties broken toward the lowest
/// index). `residual` is max over i of ‖Q vᵢ − qᵢ vᵢ‖₂.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    residual: f64,
}

/// Decompose Q with the deterministic Jacobi solver.
pub fn eigendecompose(q: &SignlessLaplacian, tol: f64) -> Result<SpectralDecomposition> {
    let raw = jacobi_eigh(q.matrix(), tol)?;
    let n = q.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        raw.values[j]
            .partial_cmp(&raw.values[i])
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &k in &order {
        eigenvalues.push(raw.values[k]);
        let mut v = raw.vectors[k].clone();
        normalize_sign(&mut v);
        eigenvectors.push(v);
    }
    let mut residual = 0.0f64;
    for (value, vector) in eigenvalues.iter().zip(&eigenvectors) {
        let qv = q.matrix().matvec(vector);
        let err = qv
            .iter()
            .zip(vector)
            .map(|(a, b)| {
                let d = a - value * b;
                d * d
            })
            .sum::<f64>()
            .sqrt();
        residual = residual.max(err);
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

fn normalize_sign(v: &mut [f64]) {
    if v.is_empty() {
        return;
    }
    let mut lead = 0usize;
    for j in 1..v.len() {
        if v[j].abs() > v[lead].abs() {
            lead = j;
        }
    }
    if v[lead] < 0.0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvector(&self, i: usize) -> &[f64] {
        &self.eigenvectors[i]
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Smallest eigenvalue q_n with its eigenvector.
    ///
    /// Panics on an empty decomposition.
    pub fn smallest_eigenpair(&self) -> (f64, &[f64]) {
        assert!(!self.eigenvalues.is_empty(), "empty decomposition");
        let last = self.eigenvalues.len() - 1;
        (self.eigenvalues[last], &self.eigenvectors[last])
    }

    /// Partition of `0..n` into maximal runs of eigenvalues whose adjacent
    /// gaps stay within `tol` (chained), in descending-eigenvalue order.
    pub fn clusters(&self, tol: f64) -> Vec<Range<usize>> {
        cluster_ranges(&self.eigenvalues, tol)
    }
}

/// Chain-cluster a sorted value list: adjacent values within `tol` share a
/// cluster.
pub(crate) fn cluster_ranges(values: &[f64], tol: f64) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i - 1] - values[i]).abs() > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}
