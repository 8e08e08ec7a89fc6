//! Exact set-valued optimization over simplicial ordering cones.
//!
//! The crate realizes the complete lattice of self-infimal sets for finite
//! data (`lattice`), an independent grid-based reference (`grid`), finite
//! set-valued problems with their primal value and perturbation map
//! (`problem`), vector and operator Lagrange duality (`duality`), and exact
//! strong-duality certificates for convexified planar instances (`convex`).

pub mod cone;
pub mod convex;
pub mod duality;
pub mod error;
pub mod grid;
pub mod lattice;
pub mod laws;
pub mod linalg;
pub mod lp;
pub mod problem;
pub mod random;
pub mod rational;

pub use cone::{ConeClass, SimplicialCone};
pub use error::{Error, Result};
pub use lattice::{ExtPoint, Frontier, FrontierKind, Orientation, PointClass};
pub use lp::{lp_solve, lp_solve_nonneg, LpOutcome, Sense};
pub use rational::{Rational, Vector};
