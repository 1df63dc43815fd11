//! Finite commutative algebra: rings, modules, the weakly S-primary predicate
//! family, idealization and amalgamation constructions, and an exhaustive
//! checker for statements about them.

pub mod cli;
pub mod config;
pub mod construct;
pub mod error;
pub mod harness;
pub mod hom;
pub mod ideal;
pub mod localize;
pub mod module;
pub mod predicate;
pub mod ring;
pub mod set;

pub use error::{Error, Result};
pub use hom::ModuleHom;
pub use ideal::{Ideal, MultClosedSet, SpecialSubset};
pub use module::{FiniteModule, RadicalMethod, Submodule};
pub use predicate::{check, PredicateKind, PredicateVerdict};
pub use ring::{FiniteRing, Provenance, RingHom};
pub use set::ElemSet;

use serde::{Deserialize, Serialize};

/// Default bound on the number of ideals or submodules enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// Size limits applied when building structures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub ring_order: usize,
    pub module_order: usize,
    pub lattice_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { ring_order: 96, module_order: 128, lattice_size: DEFAULT_LATTICE_CAP }
    }
}

impl Caps {
    pub fn check_ring(&self, size: usize, what: &str) -> Result<()> {
        if size > self.ring_order {
            return Err(Error::CapExceeded { what: what.to_string(), size, cap: self.ring_order });
        }
        Ok(())
    }

    pub fn check_module(&self, size: usize, what: &str) -> Result<()> {
        if size > self.module_order {
            return Err(Error::CapExceeded { what: what.to_string(), size, cap: self.module_order });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.ring_order == 0 || self.module_order == 0 || self.lattice_size == 0 {
            return Err(Error::InvalidSpec("caps must be positive".into()));
        }
        Ok(())
    }
}
