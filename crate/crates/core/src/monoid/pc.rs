use std::fmt;

use super::affine::AffineMonoid;
use super::ambient::{GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::ideal::{MonoidIdeal, PrimeIdeal};
use crate::lattice::FaceDescriptor;

/// An element of a pointed monoid: the basepoint or a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidElement {
    Zero,
    Elem(GroupElement),
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Zero => write!(f, "0"),
            MonoidElement::Elem(g) => write!(f, "{g}"),
        }
    }
}

/// A partially cancellative monoid `C/I`: the cancellative monoid `C` with
/// the ideal `I` collapsed to the basepoint.
#[derive(Clone, Debug)]
pub struct PcMonoid {
    cancellative: AffineMonoid,
    ideal: MonoidIdeal,
}

impl PcMonoid {
    pub fn new(cancellative: &AffineMonoid, ideal_gens: &[GroupElement]) -> Result<Self> {
        let ideal = MonoidIdeal::new(cancellative, ideal_gens)?;
        Ok(PcMonoid { cancellative: cancellative.clone(), ideal })
    }

    /// `C` with the basepoint adjoined.
    pub fn from_cancellative(c: &AffineMonoid) -> Self {
        PcMonoid { cancellative: c.clone(), ideal: MonoidIdeal::zero(c) }
    }

    pub fn cancellative(&self) -> &AffineMonoid {
        &self.cancellative
    }

    pub fn ideal(&self) -> &MonoidIdeal {
        &self.ideal
    }

    pub fn is_cancellative(&self) -> bool {
        self.ideal.is_zero()
    }

    /// `{0}`: the ideal is everything.
    pub fn is_zero_monoid(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn contains(&self, a: &MonoidElement) -> bool {
        match a {
            MonoidElement::Zero => true,
            MonoidElement::Elem(g) => self.cancellative.contains(g) && !self.ideal.contains(g),
        }
    }

    /// Product (written additively on representatives).
    pub fn mul(&self, a: &MonoidElement, b: &MonoidElement) -> MonoidElement {
        match (a, b) {
            (MonoidElement::Elem(x), MonoidElement::Elem(y)) => {
                let s = self.cancellative.ambient().add(x, y);
                if self.ideal.contains(&s) {
                    MonoidElement::Zero
                } else {
                    MonoidElement::Elem(s)
                }
            }
            _ => MonoidElement::Zero,
        }
    }

    /// Faces of `C` missing `I`; these index the primes of `C/I`.
    pub fn prime_faces(&self) -> Vec<FaceDescriptor> {
        self.cancellative.faces().iter().filter(|f| !self.ideal.meets_face(f)).cloned().collect()
    }

    pub fn check_prime_face(&self, f: &FaceDescriptor) -> Result<()> {
        if !self.cancellative.faces().contains(f) {
            return Err(Error::NotAFace(format!("{:?}", f.normals)));
        }
        if self.ideal.meets_face(f) {
            return Err(Error::NotPrime(format!("face {:?} meets the ideal", f.normals)));
        }
        Ok(())
    }

    /// Localization at the prime `𝔭_F`.
    pub fn localize(&self, f: &FaceDescriptor) -> Result<PcMonoid> {
        self.check_prime_face(f)?;
        let c = self.cancellative.localize(f)?;
        PcMonoid::new(&c, self.ideal.generators())
    }

    /// `A/𝔭_F`, which is cancellative: the face monoid `C ∩ F`.
    pub fn quotient_by_prime(&self, f: &FaceDescriptor) -> Result<AffineMonoid> {
        self.check_prime_face(f)?;
        self.cancellative.face_monoid(f)
    }

    /// Equality of pointed monoids inside the same ambient group.
    pub fn same_as(&self, other: &PcMonoid) -> bool {
        self.cancellative.same_as(&other.cancellative)
            && self.ideal.generators().iter().all(|g| other.ideal.contains(g))
            && other.ideal.generators().iter().all(|g| self.ideal.contains(g))
    }

    /// `A ∧ B = (C ∧ D) / (I ∧ D ∪ C ∧ J)`.
    pub fn smash(&self, other: &PcMonoid) -> PcMonoid {
        let c = self.cancellative.smash(&other.cancellative);
        let (a, b) = (self.cancellative.ambient(), other.cancellative.ambient());
        let mut gens: Vec<GroupElement> = self.ideal.generators().iter().map(|g| a.inject_left(b, g)).collect();
        gens.extend(other.ideal.generators().iter().map(|g| a.inject_right(b, g)));
        PcMonoid::new(&c, &gens).expect("injected ideal generators lie in the smash")
    }

    /// Image under a homomorphism of ambient groups (injective on `C₀`).
    pub fn transport(&self, f: &GroupHom) -> Result<PcMonoid> {
        let gens: Vec<GroupElement> = self.cancellative.generators().iter().map(|g| f.apply(g)).collect();
        let c = AffineMonoid::new(&f.target, &gens)?;
        let ideal: Vec<GroupElement> = self.ideal.generators().iter().map(|g| f.apply(g)).collect();
        PcMonoid::new(&c, &ideal)
    }

    /// Prime of this monoid attached to a face, with its height (longest
    /// chain of primes of `C/I` strictly below it).
    pub fn prime(&self, f: &FaceDescriptor) -> Result<PrimeIdeal> {
        self.check_prime_face(f)?;
        let faces = self.prime_faces();
        Ok(PrimeIdeal { face: f.clone(), height: chain_length_above(&faces, f) })
    }
}

/// Longest chain `f = F₀ ⊊ F₁ ⊊ … ⊊ F_k` inside `faces`.
pub(crate) fn chain_length_above(faces: &[FaceDescriptor], f: &FaceDescriptor) -> usize {
    faces
        .iter()
        .filter(|g| *g != f && f.is_subface_of(g))
        .map(|g| 1 + chain_length_above(faces, g))
        .max()
        .unwrap_or(0)
}

/// `C/I` as a pc monoid.
pub fn quotient_by_ideal(c: &AffineMonoid, ideal: &MonoidIdeal) -> Result<PcMonoid> {
    if !c.same_as(ideal.parent()) {
        return Err(Error::ParentMismatch);
    }
    PcMonoid::new(c, ideal.generators())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::free(v)
    }

    #[test]
    fn axes_monoid() {
        let c = AffineMonoid::free_commutative(2);
        let a = PcMonoid::new(&c, &[e(&[1, 1])]).unwrap();
        let x = MonoidElement::Elem(e(&[1, 0]));
        let y = MonoidElement::Elem(e(&[0, 1]));
        assert_eq!(a.mul(&x, &y), MonoidElement::Zero);
        assert_eq!(a.mul(&x, &x), MonoidElement::Elem(e(&[2, 0])));
        let primes = a.prime_faces();
        assert_eq!(primes.len(), 3);
        // the x₂-prime is the complement of the x₁-axis
        let f = c.face_of_elements(&[e(&[1, 0])]);
        let q = a.quotient_by_prime(&f).unwrap();
        assert!(q.same_as(&AffineMonoid::from_vectors(2, &[vec![1, 0]]).unwrap()));
        assert!(a.quotient_by_prime(&c.top_face()).is_err());
        assert_eq!(a.prime(&f).unwrap().height, 0);
        assert_eq!(a.prime(&c.bottom_face()).unwrap().height, 1);
    }
}
