//! Ideals of cancellative monoids, primes as faces, radicals and primary
//! decomposition.

mod decompose;
mod free;
pub(crate) use free::FreeCoords;
mod ops;
mod spec;

pub use decompose::{associated_primes, is_primary, primary_decomposition, DecompositionOptions, PrimaryComponent, SplitOrder};
pub use ops::{ideal_op, minimal_primes_over, primes_intersection, radical, radical_contains, IdealOp, OpResult};
pub use spec::{mspec, nil_and_reduced, MSpec, NilRadical};

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::FaceDescriptor;
use crate::monoid::{AffineMonoid, GroupElement};

/// An ideal of a cancellative monoid, given by a divisibility-reduced list
/// of generators. The empty list is the zero ideal `{0}`.
#[derive(Clone, Debug)]
pub struct MonoidIdeal {
    parent: AffineMonoid,
    generators: Vec<GroupElement>,
}

impl MonoidIdeal {
    pub fn new(parent: &AffineMonoid, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            if !parent.contains(g) {
                return Err(Error::Precondition(format!("ideal generator {g} is not in the monoid")));
            }
        }
        let mut sorted: Vec<GroupElement> = gens.iter().map(|g| parent.ambient().reduce(g.clone())).collect();
        sorted.sort_by(|a, b| parent.degree(a).cmp(&parent.degree(b)).then_with(|| a.cmp(b)));
        sorted.dedup();
        let mut kept: Vec<GroupElement> = Vec::new();
        for g in sorted {
            if parent.is_unit(&g) {
                kept = vec![parent.ambient().zero()];
                break;
            }
            if kept.iter().any(|h| divides(parent, h, &g)) {
                continue;
            }
            kept.retain(|h| !divides(parent, &g, h));
            kept.push(g);
        }
        kept.sort();
        Ok(MonoidIdeal { parent: parent.clone(), generators: kept })
    }

    /// The zero ideal (no generators).
    pub fn zero(parent: &AffineMonoid) -> Self {
        MonoidIdeal { parent: parent.clone(), generators: Vec::new() }
    }

    /// The unit ideal `A`.
    pub fn unit(parent: &AffineMonoid) -> Self {
        MonoidIdeal { parent: parent.clone(), generators: vec![parent.ambient().zero()] }
    }

    /// The maximal ideal `A \ A^×`.
    pub fn maximal(parent: &AffineMonoid) -> Self {
        Self::new(parent, &parent.nonunit_generators()).expect("generators lie in the monoid")
    }

    pub fn parent(&self) -> &AffineMonoid {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| self.parent.is_unit(g))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.generators.iter().any(|h| divides(&self.parent, h, g))
    }

    pub fn contains_ideal(&self, other: &MonoidIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &MonoidIdeal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub(crate) fn check_parent(&self, other: &MonoidIdeal) -> Result<()> {
        if self.parent.same_as(&other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Does the ideal meet the face `f` of the parent's cone?
    pub fn meets_face(&self, f: &FaceDescriptor) -> bool {
        self.generators.iter().any(|g| f.contains(&g.free))
    }

    /// Same generators regarded in another parent monoid containing them.
    pub fn transfer(&self, parent: &AffineMonoid) -> Result<MonoidIdeal> {
        MonoidIdeal::new(parent, &self.generators)
    }
}

impl fmt::Display for MonoidIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `h | g` in the monoid.
pub(crate) fn divides(parent: &AffineMonoid, h: &GroupElement, g: &GroupElement) -> bool {
    parent.contains(&parent.ambient().sub(g, h))
}

/// The prime ideal `𝔭_F`: everything outside the face `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeIdeal {
    pub face: FaceDescriptor,
    /// Length of the longest chain of primes strictly below this one.
    pub height: usize,
}

impl PrimeIdeal {
    /// Prime of a cancellative monoid, with height equal to the face codimension.
    pub fn of_face(parent: &AffineMonoid, face: &FaceDescriptor) -> Self {
        PrimeIdeal { face: face.clone(), height: parent.dimension() - face.dim }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        !self.face.contains(&g.free)
    }

    /// Ideal generators: the parent's generators off the face.
    pub fn as_ideal(&self, parent: &AffineMonoid) -> MonoidIdeal {
        let gens: Vec<GroupElement> =
            parent.generators().iter().filter(|g| self.contains(g)).cloned().collect();
        MonoidIdeal::new(parent, &gens).expect("generators lie in the monoid")
    }

    /// `self ⊆ other`
    pub fn is_contained_in(&self, other: &PrimeIdeal) -> bool {
        other.face.is_subface_of(&self.face)
    }
}
