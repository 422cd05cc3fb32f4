use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::ambient::{AmbientGroup, GroupElement, Subgroup};
use crate::error::{Error, Result};
use crate::lattice::{dot, FaceDescriptor, RationalCone};

/// A finitely generated submonoid of an [`AmbientGroup`].
///
/// Generators are reduced, deduplicated and sorted on construction, and the
/// zero vector is dropped. Cone, grading and unit data are computed lazily
/// and shared between clones.
#[derive(Clone)]
pub struct AffineMonoid {
    ambient: AmbientGroup,
    generators: Vec<GroupElement>,
    geometry: Arc<OnceLock<Geometry>>,
}

struct Geometry {
    cone: RationalCone,
    grading: Vec<i64>,
    /// Indices of generators of degree zero (these are units).
    unit_gens: Vec<usize>,
    /// Remaining generators, ordered by decreasing degree.
    nonunit_gens: Vec<usize>,
    units: Subgroup,
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineMonoid")
            .field("ambient", &self.ambient)
            .field("generators", &self.generators)
            .finish()
    }
}

impl fmt::Display for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl AffineMonoid {
    pub fn new(ambient: &AmbientGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        let mut generators: Vec<GroupElement> =
            gens.iter().map(|g| ambient.reduce(g.clone())).filter(|g| !g.is_zero()).collect();
        generators.sort();
        generators.dedup();
        Ok(AffineMonoid { ambient: ambient.clone(), generators, geometry: Arc::new(OnceLock::new()) })
    }

    /// Convenience constructor for torsion-free ambients.
    pub fn from_vectors(rank: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let ambient = AmbientGroup::free(rank);
        let gens: Vec<GroupElement> = gens.iter().map(|v| GroupElement::free(v)).collect();
        Self::new(&ambient, &gens)
    }

    /// `ℕ^n` with its standard basis.
    pub fn free_commutative(n: usize) -> Self {
        let gens: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_vectors(n, &gens).expect("standard basis")
    }

    /// The trivial monoid `{1}` in the given ambient.
    pub fn trivial(ambient: &AmbientGroup) -> Self {
        Self::new(ambient, &[]).expect("no generators")
    }

    /// The whole ambient group, as a monoid.
    pub fn whole_group(ambient: &AmbientGroup) -> Self {
        let mut gens = Vec::new();
        for i in 0..ambient.width() {
            let mut v = vec![0; ambient.width()];
            v[i] = 1;
            let e = ambient.from_flat(&v);
            gens.push(ambient.neg(&e));
            gens.push(e);
        }
        Self::new(ambient, &gens).expect("basis vectors")
    }

    pub fn ambient(&self) -> &AmbientGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    fn geometry(&self) -> &Geometry {
        self.geometry.get_or_init(|| {
            let rank = self.ambient.rank();
            let frees: Vec<Vec<i64>> = self.generators.iter().map(|g| g.free.clone()).collect();
            let cone = RationalCone::new(rank, &frees);
            let grading = cone.positive_grading();
            let degs: Vec<i64> = self.generators.iter().map(|g| dot(&grading, &g.free)).collect();
            let unit_gens: Vec<usize> = (0..self.generators.len()).filter(|&i| degs[i] == 0).collect();
            let mut nonunit_gens: Vec<usize> = (0..self.generators.len()).filter(|&i| degs[i] > 0).collect();
            nonunit_gens.sort_by_key(|&i| std::cmp::Reverse(degs[i]));
            let unit_elems: Vec<GroupElement> = unit_gens.iter().map(|&i| self.generators[i].clone()).collect();
            let units = Subgroup::new(&self.ambient, &unit_elems);
            Geometry { cone, grading, unit_gens, nonunit_gens, units }
        })
    }

    /// Recession cone of the free parts of the generators.
    pub fn cone(&self) -> &RationalCone {
        &self.geometry().cone
    }

    /// A grading: nonnegative on the monoid, zero exactly on the units.
    pub fn grading(&self) -> &[i64] {
        &self.geometry().grading
    }

    pub fn degree(&self, g: &GroupElement) -> i64 {
        dot(self.grading(), &g.free)
    }

    /// Dimension of the group completion's free part (the cone's span).
    pub fn dimension(&self) -> usize {
        self.cone().span_dim()
    }

    /// The unit group `A^×`.
    pub fn units(&self) -> &Subgroup {
        &self.geometry().units
    }

    pub fn unit_generators(&self) -> Vec<GroupElement> {
        self.geometry().unit_gens.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn nonunit_generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> =
            self.geometry().nonunit_gens.iter().map(|&i| self.generators[i].clone()).collect();
        out.sort();
        out
    }

    pub fn is_unit(&self, g: &GroupElement) -> bool {
        self.units().contains(g)
    }

    pub fn is_sharp(&self) -> bool {
        self.units().is_trivial()
    }

    /// Every element is invertible.
    pub fn is_group(&self) -> bool {
        self.geometry().nonunit_gens.is_empty()
    }

    /// Group completion `A₀` as a subgroup of the ambient.
    pub fn group_completion(&self) -> Subgroup {
        Subgroup::new(&self.ambient, &self.generators)
    }

    /// Exact membership test.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if self.ambient.check(g).is_err() {
            return false;
        }
        let g = self.ambient.reduce(g.clone());
        let geo = self.geometry();
        if !geo.cone.contains(&g.free) {
            return false;
        }
        let mut failed = HashSet::new();
        self.search(&g, 0, &mut failed)
    }

    fn search(&self, rem: &GroupElement, start: usize, failed: &mut HashSet<(usize, Vec<i64>)>) -> bool {
        let geo = self.geometry();
        let deg = dot(&geo.grading, &rem.free);
        if deg == 0 {
            return geo.units.contains(rem);
        }
        for pos in start..geo.nonunit_gens.len() {
            let h = &self.generators[geo.nonunit_gens[pos]];
            if dot(&geo.grading, &h.free) > deg {
                continue;
            }
            let next = self.ambient.sub(rem, h);
            if !geo.cone.contains(&next.free) {
                continue;
            }
            let key = (pos, geo.units.coset_key(&next));
            if failed.contains(&key) {
                continue;
            }
            if self.search(&next, pos, failed) {
                return true;
            }
            failed.insert(key);
        }
        false
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_monoid(&self, other: &AffineMonoid) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains(g))
    }

    /// Equality as subsets of the ambient group.
    pub fn same_as(&self, other: &AffineMonoid) -> bool {
        self.contains_monoid(other) && other.contains_monoid(self)
    }

    /// Faces of the recession cone, smallest first.
    pub fn faces(&self) -> &[FaceDescriptor] {
        self.cone().face_lattice()
    }

    /// The face whose supporting facet normals are exactly `normals`.
    pub fn face(&self, normals: &[Vec<i64>]) -> Result<FaceDescriptor> {
        let mut sorted = normals.to_vec();
        sorted.sort();
        self.cone()
            .face_with_normals(&sorted)
            .ok_or_else(|| Error::NotAFace(format!("{normals:?}")))
    }

    /// The whole cone, as a face.
    pub fn top_face(&self) -> FaceDescriptor {
        self.faces().last().cloned().expect("a cone has at least one face")
    }

    /// The lineality face (complement of the maximal ideal).
    pub fn bottom_face(&self) -> FaceDescriptor {
        self.faces()[0].clone()
    }

    fn check_face(&self, f: &FaceDescriptor) -> Result<()> {
        if self.faces().contains(f) {
            Ok(())
        } else {
            Err(Error::NotAFace(format!("{:?}", f.normals)))
        }
    }

    pub fn in_face(&self, f: &FaceDescriptor, g: &GroupElement) -> bool {
        f.contains(&g.free)
    }

    /// Generators lying on the face `f`.
    pub fn generators_in_face(&self, f: &FaceDescriptor) -> Vec<GroupElement> {
        self.generators.iter().filter(|g| f.contains(&g.free)).cloned().collect()
    }

    /// The face monoid `A ∩ F`, which is `A/𝔭_F` after adding the basepoint.
    pub fn face_monoid(&self, f: &FaceDescriptor) -> Result<AffineMonoid> {
        self.check_face(f)?;
        AffineMonoid::new(&self.ambient, &self.generators_in_face(f))
    }

    /// Localization `A_𝔭` at `𝔭 = A \ F`.
    pub fn localize(&self, f: &FaceDescriptor) -> Result<AffineMonoid> {
        self.check_face(f)?;
        let mut gens = self.generators.clone();
        gens.extend(self.generators_in_face(f).iter().map(|g| self.ambient.neg(g)));
        AffineMonoid::new(&self.ambient, &gens)
    }

    /// Inverts the given elements (they must lie in the monoid).
    pub fn invert(&self, elems: &[GroupElement]) -> Result<AffineMonoid> {
        if let Some(bad) = elems.iter().find(|g| !self.contains(g)) {
            return Err(Error::Precondition(format!("{bad} is not in the monoid")));
        }
        let mut gens = self.generators.clone();
        gens.extend(elems.iter().map(|g| self.ambient.neg(g)));
        AffineMonoid::new(&self.ambient, &gens)
    }

    /// The face whose localization inverts exactly `elems`.
    pub fn face_of_elements(&self, elems: &[GroupElement]) -> FaceDescriptor {
        let sum = self.ambient.sum(elems);
        self.cone().smallest_face(&sum.free)
    }

    /// `A ∧ B`, living in the direct sum of the ambients.
    pub fn smash(&self, other: &AffineMonoid) -> AffineMonoid {
        let ambient = self.ambient.direct_sum(&other.ambient);
        let mut gens: Vec<GroupElement> =
            self.generators.iter().map(|g| self.ambient.inject_left(&other.ambient, g)).collect();
        gens.extend(other.generators.iter().map(|g| self.ambient.inject_right(&other.ambient, g)));
        AffineMonoid::new(&ambient, &gens).expect("injected generators fit the sum")
    }

    /// Atoms: a minimal generating set of the non-units modulo units, as
    /// representatives taken from the generator list.
    pub fn atoms(&self) -> Vec<GroupElement> {
        let geo = self.geometry();
        let mut reps: Vec<GroupElement> = Vec::new();
        let mut seen = HashSet::new();
        for g in self.nonunit_generators() {
            if seen.insert(geo.units.coset_key(&g)) {
                reps.push(g);
            }
        }
        reps.iter()
            .filter(|g| {
                !reps.iter().any(|h| {
                    let rest = self.ambient.sub(g, h);
                    self.degree(&rest) > 0 && self.contains(&rest)
                })
            })
            .cloned()
            .collect()
    }

    /// Elements of degree at most `max_degree`, one per unit coset, in order
    /// of increasing degree. The zero vector comes first.
    pub fn elements_up_to(&self, max_degree: i64) -> Vec<GroupElement> {
        self.elements_modulo(self.units(), max_degree)
    }

    /// Elements of degree at most `max_degree`, one per coset of `modulo`
    /// (a subgroup of finite index in the unit group), in order of degree.
    pub fn elements_modulo(&self, modulo: &Subgroup, max_degree: i64) -> Vec<GroupElement> {
        let mut seen = HashSet::new();
        let zero = self.ambient.zero();
        seen.insert(modulo.coset_key(&zero));
        let mut out = vec![zero.clone()];
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for h in &self.generators {
                let y = self.ambient.add(&x, h);
                if self.degree(&y) > max_degree {
                    continue;
                }
                if seen.insert(modulo.coset_key(&y)) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Largest degree among the generators.
    pub fn max_generator_degree(&self) -> i64 {
        self.generators.iter().map(|g| self.degree(g)).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        AffineMonoid::from_vectors(rank, &gens).unwrap()
    }

    fn e(v: &[i64]) -> GroupElement {
        GroupElement::free(v)
    }

    #[test]
    fn numerical_semigroup_membership() {
        let a = m(1, &[&[2], &[3]]);
        assert!(!a.contains(&e(&[1])));
        assert!(a.contains(&e(&[5])));
        assert!(a.contains(&e(&[0])));
        assert!(!a.contains(&e(&[-2])));
        let atoms = a.atoms();
        assert_eq!(atoms, vec![e(&[2]), e(&[3])]);
    }

    #[test]
    fn cone_membership() {
        let a = m(2, &[&[1, 0], &[1, 2], &[1, 1]]);
        assert!(a.contains(&e(&[2, 1])));
        assert!(!a.contains(&e(&[0, 1])));
        assert_eq!(a.atoms().len(), 3);
    }

    #[test]
    fn units_of_laurent_and_torsion() {
        let a = m(1, &[&[1], &[-1]]);
        assert_eq!(a.units().presented().rank, 1);
        assert!(a.is_group());
        let amb = AmbientGroup::new(1, &[2]).unwrap();
        let b = AffineMonoid::new(&amb, &[GroupElement::new(&[1], &[0]), GroupElement::new(&[1], &[1])]).unwrap();
        assert!(b.is_sharp());
        assert!(b.contains(&GroupElement::new(&[2], &[1])));
        assert!(!b.contains(&GroupElement::new(&[0], &[1])));
    }

    #[test]
    fn localization_and_faces() {
        let a = AffineMonoid::free_commutative(2);
        assert_eq!(a.faces().len(), 4);
        let f = a.face_of_elements(&[e(&[1, 0])]);
        let l = a.localize(&f).unwrap();
        assert!(l.contains(&e(&[-3, 1])));
        assert!(!l.contains(&e(&[0, -1])));
        let full = a.localize(&a.top_face()).unwrap();
        assert!(full.is_group());
    }

    #[test]
    fn localization_inverting_y_squared() {
        let a = m(2, &[&[1, 0], &[0, 2], &[1, 1]]);
        let l = a.invert(&[e(&[0, 2])]).unwrap();
        for x in -1..=3 {
            for y in -6..=6 {
                let expected = x >= 1 || (x == 0 && y % 2 == 0);
                assert_eq!(l.contains(&e(&[x, y])), expected, "({x},{y})");
            }
        }
    }

    #[test]
    fn smash_of_lines() {
        let n = AffineMonoid::free_commutative(1);
        let s = n.smash(&n);
        assert!(s.same_as(&AffineMonoid::free_commutative(2)));
    }

    #[test]
    fn elements_enumeration() {
        let a = AffineMonoid::free_commutative(2);
        let els = a.elements_up_to(2);
        assert_eq!(els.len(), 6);
        assert!(els[0].is_zero());
    }
}
