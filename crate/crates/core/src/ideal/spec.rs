use super::{radical, MonoidIdeal, PrimeIdeal};
use crate::monoid::{chain_length_above, PcMonoid};

/// The prime spectrum of a pc monoid, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct MSpec {
    /// Sorted by height, then by face.
    pub points: Vec<PrimeIdeal>,
}

impl MSpec {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `points[a] ⊆ points[b]`
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.points[a].is_contained_in(&self.points[b])
    }

    /// Indices of the minimal primes (generic points).
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.points[a].height == 0).collect()
    }

    /// Index of the maximal ideal.
    pub fn maximal(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le(b, a)))
    }
}

/// All primes of `A = C/I`: faces of `C` missing `I`. Heights are lengths
/// of the longest chains of primes below.
pub fn mspec(a: &PcMonoid) -> MSpec {
    let faces = a.prime_faces();
    let mut points: Vec<PrimeIdeal> = faces
        .iter()
        .map(|f| PrimeIdeal { face: f.clone(), height: chain_length_above(&faces, f) })
        .collect();
    points.sort_by(|x, y| x.height.cmp(&y.height).then_with(|| x.face.cmp(&y.face)));
    MSpec { points }
}

/// `nil(C/I)` represented by the ideal `√I` of `C`, and whether `C/I` is
/// reduced (`√I = I`).
#[derive(Clone, Debug)]
pub struct NilRadical {
    pub nil: MonoidIdeal,
    pub reduced: bool,
}

impl NilRadical {
    /// `A_red = C/√I`.
    pub fn reduced_monoid(&self) -> PcMonoid {
        PcMonoid::new(self.nil.parent(), self.nil.generators()).expect("radical lies in the parent")
    }
}

pub fn nil_and_reduced(a: &PcMonoid) -> NilRadical {
    let nil = radical(a.ideal());
    let reduced = a.ideal().contains_ideal(&nil);
    NilRadical { nil, reduced }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{AffineMonoid, GroupElement};

    #[test]
    fn spectra() {
        let line = PcMonoid::from_cancellative(&AffineMonoid::free_commutative(1));
        assert_eq!(mspec(&line).len(), 2);
        let cone = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 2], vec![1, 1]]).unwrap();
        let s = mspec(&PcMonoid::from_cancellative(&cone));
        assert_eq!(s.len(), 4);
        assert_eq!(s.points.iter().filter(|p| p.height == 1).count(), 2);
        let axes = PcMonoid::new(&AffineMonoid::free_commutative(2), &[GroupElement::free(&[1, 1])]).unwrap();
        let s = mspec(&axes);
        assert_eq!(s.len(), 3);
        assert_eq!(s.minimal().len(), 2);
        assert!(s.maximal().is_some());
        assert!(nil_and_reduced(&axes).reduced);
        let fat = PcMonoid::new(&AffineMonoid::free_commutative(1), &[GroupElement::free(&[2])]).unwrap();
        let n = nil_and_reduced(&fat);
        assert!(!n.reduced);
        assert_eq!(n.nil.generators(), &[GroupElement::free(&[1])]);
    }
}
