//! Signless-Laplacian spectral analysis of graphs and the gradient system
//! ẋ = −(aI + 2bQ)x built on it.
//!
//! The crate covers: graph construction (parametric families, preferential
//! attachment, pendant and bridge composition, edge-list files), a
//! deterministic Jacobi eigensolver with closed-form cross-checks for the
//! analytic families, stability classification and the principal
//! instability window, trajectory integration with convergence-to-E₁
//! measurement, node centralities with the rigidity measures r and r̃, and
//! scripted experiment scenarios with CSV/JSON export.

pub mod closed_form;
pub mod dynamics;
pub mod edgelist;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod scenarios;
pub mod spectral;

pub use dynamics::{PotentialParams, Trajectory};
pub use error::{Error, Result};
pub use families::{GraphFamily, RandomSource};
pub use graph::Graph;
pub use metrics::{RigidityParams, RigidityReport};
pub use spectral::{SignlessLaplacian, SpectralDecomposition};
