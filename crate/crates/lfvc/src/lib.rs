//! Local Fiedler vector centrality (LFVC) and deep-community detection.
//!
//! Communities that are masked by noisy nodes and spurious edges can be
//! exposed by deleting the nodes or edges to which the algebraic
//! connectivity of the graph is most sensitive. That sensitivity is read
//! off the Fiedler vector `y`: an edge `(i, j)` scores `(y_i - y_j)^2` and
//! a node scores the sum over its incident edges. Greedily removing the
//! top-scoring node or edge, recomputing the Fiedler vector of the largest
//! remaining component at every stage, peels the noise away until hidden
//! components separate. The removed nodes are then assigned membership in
//! every community they touched, so brokers between groups are reported as
//! shared members rather than forced into one side.
//!
//! The crate bundles everything needed to run and evaluate that pipeline:
//!
//! - [`graph`]: compact undirected graphs, Laplacians, components, and the
//!   rank/nuclear-norm bounds on how many non-singleton components a
//!   removal set can reveal.
//! - [`spectral`]: deterministic symmetric eigensolvers (dense below a
//!   size cutoff, restarted Lanczos above it) for the Fiedler vector,
//!   extreme Laplacian eigenvalues, adjacency and modularity spectra.
//! - [`detect`]: LFVC scores, the submodular set function they induce,
//!   greedy node/edge removal, deep-community extraction with mixed
//!   membership, and brute-force oracles for the greedy guarantee.
//! - [`baselines`]: the comparison detectors — modularity partitioning,
//!   spectral clustering, the eigenvector-L1 dense-subgraph test, and the
//!   classical node centralities with a generic removal loop.
//! - [`sbm`]: a two-block stochastic block model, sensitivity/specificity
//!   scoring, the averaged detection sweep, and the Fiedler sign-alignment
//!   diagnostic.
//! - [`metrics`]: normalized largest-community curves and the residual
//!   community similarity (RCS/RSCS) over preference vectors.
//! - [`io`] and [`cli`]: edge-list and preference-file loaders, versioned
//!   JSON/CSV serialization, and the `lfvc` command-line tool.
//!
//! The `examples/` directory shows one runnable program per capability;
//! start with `karate_deep_communities`.

pub mod baselines;
pub mod cli;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod sbm;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::Graph;
