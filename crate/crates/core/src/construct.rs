//! Idealization `R ⋉ M` and amalgamation `R1 ⋈^f J`, `M1 ⋈^φ JM2`.

mod amalgamation;
mod idealization;

pub use amalgamation::{Amalgamation, HaProbe, HaPart};
pub use idealization::Idealization;
