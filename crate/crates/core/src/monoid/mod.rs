//! Cancellative and partially cancellative pointed monoids inside finitely
//! generated abelian groups, written additively.

mod affine;
mod ambient;
mod pc;

pub use affine::AffineMonoid;
pub use ambient::{AmbientGroup, GroupElement, GroupHom, Subgroup};
pub use pc::{quotient_by_ideal, MonoidElement, PcMonoid};

pub(crate) use pc::chain_length_above;
