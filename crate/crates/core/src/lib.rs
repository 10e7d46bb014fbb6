//! Exact combinatorial and algebraic computations around Legendrian doubles
//! of `λ(2,n)` fillings and twist-spun torus links.
//!
//! * [`polygon`]: triangulations of the convex N-gon, flips, flip distance,
//!   rotation and symmetric-triangulation counts.
//! * [`plane_graph`]: rotation systems (combinatorial maps) on the sphere and disk.
//! * [`chromatic`]: chromatic polynomials and sheaf point counts.
//! * [`doubling`]: doubles of triangulation pairs and their connect-sum reduction.
//! * [`cluster`]: exchange matrices, mutation and folding.
//! * [`cyclotomic`]: exact arithmetic in `Q(ζ_m)`.
//! * [`grassmann`]: cyclic-shift fixed points of `Gr(k,n)` and the fillability obstruction.

pub mod chromatic;
pub mod cluster;
pub mod cyclotomic;
pub mod doubling;
pub mod error;
pub mod grassmann;
pub mod plane_graph;
pub mod poly;
pub mod polygon;

pub use error::{Error, Result};
