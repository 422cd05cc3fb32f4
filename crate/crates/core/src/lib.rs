pub mod bridge;
pub mod corpus;
pub mod divisor;
pub mod error;
pub mod ideal;
pub mod lattice;
pub mod monoid;
pub mod normalization;
pub mod oracle;
pub mod scheme;

pub use error::{Error, Result};
pub use lattice::{FaceDescriptor, PresentedAbGroup};
pub use monoid::{AffineMonoid, AmbientGroup, GroupElement, MonoidElement, PcMonoid};
