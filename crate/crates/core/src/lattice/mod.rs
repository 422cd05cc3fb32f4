//! Exact integer linear algebra and rational cone geometry.

mod cone;
mod group;
mod hilbert;
mod matrix;
mod snf;

pub use cone::{FaceDescriptor, RationalCone};
pub use group::{cokernel, is_exact_at, subquotient, FpGroup, FpHom, PresentedAbGroup};
pub use hilbert::{degree, hilbert_basis};
pub use matrix::IntMatrix;
pub use snf::{column_basis, integer_kernel, rank, smith_normal_form, IntSolver, Snf};

pub(crate) use cone::{dot, primitive};
pub(crate) use group::abs_gcd;
pub(crate) use matrix::{big_vec, small_vec, to_i64};

use crate::error::{Error, Result};

/// Functional strictly positive on every generator outside the lineality
/// space of their cone and zero on that space (and on torsion).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub functional: Vec<i64>,
    /// Dimension of the lineality space; nonzero means the input was not sharp.
    pub lineality_dim: usize,
}

pub fn positive_grading(dim: usize, gens: &[Vec<i64>]) -> Grading {
    let cone = RationalCone::new(dim, gens);
    Grading { functional: cone.positive_grading(), lineality_dim: cone.lineality_dim() }
}

/// As [`positive_grading`], but rejects inputs with a lineality space.
pub fn sharp_grading(dim: usize, gens: &[Vec<i64>]) -> Result<Vec<i64>> {
    let g = positive_grading(dim, gens);
    if g.lineality_dim > 0 {
        return Err(Error::NotSharp(format!("lineality space of dimension {}", g.lineality_dim)));
    }
    Ok(g.functional)
}
