//! Fiber blocks, inclusion multiplicities and the finite primitive-ideal
//! space of the crossed product by a finite group.

mod fiber;
mod filtration;
mod prim;

pub use fiber::{fiber_decomposition, inclusion_multiplicities, FiberBlock, FiberDecomposition, InclusionMultiplicityMatrix};
pub use filtration::{filtration_report, parse_filtration, FiltrationReport, FiltrationStep, NodeBlock};
pub use prim::{aggregate_strata, ix_nodes, prim_nodes, specialization, IxNodes, NodeLevel, PrimNode, PrimPoset};
