//! Exact decision engine and high-precision simulator for pretty good state
//! transfer on path graphs under the XY (adjacency) quantum walk.
//!
//! - [`spectrum`]: closed-form eigenvalues, supports and sign vectors of `P_n`.
//! - [`cyclotomic`]: integer polynomials, `Phi_N`, power-basis coordinates.
//! - [`lattice`]: integer kernels (Hermite form + LLL) and eigenvalue relations.
//! - [`decider`]: the parity test on the relation lattice.
//! - [`walk`]: transfer amplitudes, fidelities and time scans.
//! - [`oracle`]: brute-force cross-checks for the exact machinery.
//! - [`report`]: flat CSV / JSON-lines records for scans.

pub mod cyclotomic;
pub mod decider;
pub mod error;
pub mod hp;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod walk;

pub use decider::{decide_pgst, end_vertex_rule, theorem2_predicate, Answer, PgstVerdict, Reason, Witness};
pub use error::{PgstError, Result};
pub use hp::{HpContext, Precision};
pub use lattice::{integer_kernel, relation_lattice, RelationLattice};
pub use spectrum::PathSpec;
