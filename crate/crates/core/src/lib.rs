//! Exact computations around invertible polynomials and their
//! Berglund–Hübsch transposes.
//!
//! The crate is organised bottom-up:
//!
//! * [`intmat`] holds exponent matrices, exact determinants, the Smith normal
//!   form, quasihomogeneous weights and the polynomial parser.
//! * [`symmetry`] builds the diagonal symmetry group `G_f`, its subgroups,
//!   isotropy subgroups, the character pairing with `G_f~` and dual subgroups.
//! * [`euler`] evaluates Euler characteristics of Milnor fibre strata and the
//!   (reduced) orbifold Euler characteristic by two independent routes.
//! * [`duality`] ties everything together: transposition, dual pairs, the
//!   sign-duality verifier, atomic classification and the corpus generator.

pub mod duality;
pub mod error;
pub mod euler;
pub mod intmat;
pub mod symmetry;

pub use error::{Error, Result};

/// Size limits guarding the enumerative algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Largest `|det E|` for which the symmetry group is enumerated.
    pub group_order: u64,
    /// Largest group order whose full subgroup lattice is enumerated.
    pub subgroup_enum: u64,
    /// Largest subgroup order for the commuting-pairs evaluation.
    pub pairs_oracle: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 1_000_000,
            subgroup_enum: 512,
            pairs_oracle: 256,
        }
    }
}
