use crate::lattice::{dot, PresentedAbGroup};
use crate::monoid::{AffineMonoid, GroupElement};

/// Coordinates on a monoid isomorphic to `U × ℕ^n`: exponents with respect
/// to its atoms.
#[derive(Clone, Debug)]
pub(crate) struct FreeCoords {
    pub atoms: Vec<GroupElement>,
    normals: Vec<Vec<i64>>,
    scale: Vec<i64>,
}

impl FreeCoords {
    /// `None` unless the monoid is free modulo its units.
    pub fn detect(c: &AffineMonoid) -> Option<FreeCoords> {
        let atoms = c.atoms();
        let facets = c.cone().facets();
        if atoms.len() != facets.len() {
            return None;
        }
        let mut normals = Vec::new();
        let mut scale = Vec::new();
        for a in &atoms {
            let hits: Vec<&Vec<i64>> = facets.iter().filter(|f| dot(f, &a.free) != 0).collect();
            if hits.len() != 1 {
                return None;
            }
            normals.push(hits[0].clone());
            scale.push(dot(hits[0], &a.free));
        }
        let mut sorted = normals.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != normals.len() {
            return None;
        }
        let expected = c.units().presented().direct_sum(&PresentedAbGroup::free(atoms.len()));
        if c.group_completion().presented() != expected {
            return None;
        }
        Some(FreeCoords { atoms, normals, scale })
    }

    pub fn exponents(&self, g: &GroupElement) -> Vec<i64> {
        self.normals.iter().zip(&self.scale).map(|(n, s)| dot(n, &g.free) / s).collect()
    }

    pub fn element(&self, c: &AffineMonoid, e: &[i64]) -> GroupElement {
        let amb = c.ambient();
        e.iter()
            .zip(&self.atoms)
            .fold(amb.zero(), |acc, (k, a)| amb.add(&acc, &amb.scale(*k, a)))
    }
}
