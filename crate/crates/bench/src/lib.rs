//! Inputs shared by the benchmarks.

use mscheme::lattice::IntMatrix;
use mscheme::AffineMonoid;

/// A dense `n × n` integer matrix with small entries and full rank over ℚ.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5 + if i == j { 12 } else { 0 }).collect())
        .collect();
    IntMatrix::from_rows(&rows)
}

/// The monoid generated by `(1, k, k²)` for `k = 0..=n`, whose
/// normalization needs many new generators.
pub fn moment_curve_monoid(n: i64) -> AffineMonoid {
    let gens: Vec<Vec<i64>> = (0..=n).map(|k| vec![1, k, k * k]).collect();
    AffineMonoid::from_vectors(3, &gens).expect("valid generators")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_well_formed() {
        assert_eq!(mscheme::lattice::rank(&dense_matrix(6)), 6);
        assert_eq!(moment_curve_monoid(3).generators().len(), 4);
    }
}
