//! KMS phase diagrams for higher-rank graphs given by commuting vertex
//! matrices.
//!
//! A skeleton is a list of commuting nonnegative integer matrices, one per
//! colour. From it this crate computes Perron roots and vertex entropies,
//! the transition set, extreme points of eigenvector cones, the simplices of
//! gauge-invariant equilibrium states at each inverse temperature, and an
//! independent brute-force oracle to cross-check them.

pub mod eigencone;
pub mod fixtures;
pub mod graph;
pub mod kms;
pub mod linalg;
pub mod oracle;
mod par;
pub mod report;
pub mod scc;
pub mod sets;
pub mod settings;
pub mod spectral;

pub use eigencone::{common_eigenvector, eigencone_vertices, ConeSimplex, TraceVector};
pub use graph::{CountMatrix, LoadError, Multidegree, Skeleton, ValidationReport};
pub use kms::{
    defect_vector, evaluate_state, finite_simplex, geq_simplex, kms_vector, phase_diagram, tr_f,
    Algebra, Beta, KmsError, KmsVector, PhaseDiagram, SubharmonicSimplex,
};
pub use par::is_parallel;
pub use sets::{ColorSet, VertexSet};
pub use settings::Settings;
pub use spectral::{perron_root, rho_graph, Entropy, Level, Radius, Spectrum};
