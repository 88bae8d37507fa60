//! Capacity theory on adelic polydisks: exact place arithmetic over ℚ,
//! sectional and Cantor–Rumely capacities from a Green's matrix, finite
//! morphism pullback bounds, Fekete-type witness scalings and the Skolem
//! monomial-curve reduction.

pub mod adelic;
pub mod capacity;
pub mod cli;
pub mod error;
pub mod fekete;
pub mod game;
pub mod green;
mod linalg;
pub mod oracle;
pub mod skolem;
pub mod tolerance;

pub use adelic::{Place, Prime, RadiusAssignment};
pub use error::{Error, ErrorClass, Result};
pub use game::{game_value, GameMatrix, GameSolution};
pub use green::{GreensMatrix, WeightVector};
pub use tolerance::Tolerances;
