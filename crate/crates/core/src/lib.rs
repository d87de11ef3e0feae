//! Exact computations with modules over the Hopf algebra `A = kG ⊗ k[L]`.
//!
//! `G` is an elementary abelian `p`-group `(Z/p)^n` and `L` is a finite group
//! acting on `G` by automorphisms. As an algebra `A` is a tensor product, but
//! its coproduct is twisted by the action, so tensor products of `A`-modules
//! pick up conjugations:
//!
//! ```text
//! (M ⊗ N)_ℓ = ⊕_{ℓ1 ℓ2 = ℓ} M_{ℓ1} ⊗ ^{ℓ1}N_{ℓ2}
//! ```
//!
//! Everything here is exact arithmetic over `GF(p^e)`. Support varieties are
//! represented extensionally as sets of `GF(p^e)`-rational projective points of
//! the rank variety.
//!
//! Layout:
//! - [`gf`]: finite fields and dense matrices.
//! - [`kg`]: `kG`-modules, rank varieties, minimal resolutions, complexity.
//! - [`amod`]: the group `L`, graded `A`-modules, and the twisted operations.
//! - [`hopf`]: structure constants of `A`, axiom checks, and the explicit
//!   isomorphisms behind the tensor and dual formulas.
//! - [`strata`]: orbits of `L×1`, `1×L`, `L×L` on `points × L` and ideal
//!   membership by support.
#![no_std]

extern crate alloc;

pub mod amod;
mod error;
pub mod gf;
pub mod hopf;
pub mod kg;
pub mod strata;
mod union_find;

pub use amod::{AModule, ASupport, LGroup, PowerProfileEntry, TensorSupportReport};
pub use error::{Error, Result};
pub use gf::{Field, FieldElem, FieldSpec, Matrix};
pub use hopf::{FlatAModule, HopfAlgebraA, HopfCheck, HopfReport};
pub use kg::{
    Automorphism, ComplexityEstimate, GroupSpec, KGModule, ProjPoint, VarietySample,
    DEFAULT_POINT_BUDGET,
};
pub use strata::{OrbitCheckReport, OrbitReport, Side, StrataSpace};
