//! Exact linear-inequality algebra over rate variables.

mod compare;
mod fme;
mod geometry;
pub mod lp;
mod reduce;
mod symexpr;
mod system;

pub use compare::{equal, includes, maximize_over, ray_limit, Inclusion, Witness, INCLUSION_TOL};
pub use fme::{eliminate, project_rates, substitute_rates};
pub use geometry::{geometry2d, Region2D, VERTEX_TOL};
pub use reduce::{reduce, Axiom, AxiomSet, REDUNDANCY_TOL};
pub use symexpr::SymExpr;
pub use system::{IneqSystem, LinIneq, Mode, Rhs, MERGE_TOL};
