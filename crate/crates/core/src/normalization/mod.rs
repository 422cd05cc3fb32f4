//! Integral closure, seminormalization and discrete valuations.

mod scheme;

pub use scheme::{normalization_scheme, NormalizationComponent, NormalizationScheme, PointedProduct};

use crate::error::{Error, Result};
use crate::lattice::{abs_gcd, cokernel, dot, hilbert_basis, integer_kernel, small_vec, IntMatrix, IntSolver, PresentedAbGroup, big_vec, FaceDescriptor};
use crate::monoid::{AffineMonoid, GroupElement, PcMonoid};

/// `A_nor`: elements of `A₀` whose free part lies in the recession cone.
pub fn normalize(a: &AffineMonoid) -> AffineMonoid {
    let amb = a.ambient();
    let gens = a.generators();
    if gens.is_empty() {
        return a.clone();
    }
    let rank = amb.rank();
    let frees: Vec<Vec<i64>> = gens.iter().map(|g| g.free.clone()).collect();
    let free_mat = IntMatrix::from_cols(rank, &frees);
    let mut out: Vec<GroupElement> = Vec::new();

    let hb = hilbert_basis(a.cone(), &frees).expect("generator dimensions match the cone");
    let solver = IntSolver::new(&free_mat);
    for h in hb {
        let coeffs = solver.solve(&big_vec(&h)).expect("Hilbert basis element outside the lattice");
        out.push(combine(a, &small_vec(&coeffs)));
    }
    // torsion of A₀
    let ker = integer_kernel(&free_mat);
    for j in 0..ker.cols() {
        let t = combine(a, &ker.col_i64(j));
        if !t.is_zero() {
            out.push(t);
        }
    }
    AffineMonoid::new(amb, &out).expect("lifts lie in the ambient")
}

fn combine(a: &AffineMonoid, coeffs: &[i64]) -> GroupElement {
    let amb = a.ambient();
    coeffs
        .iter()
        .zip(a.generators())
        .fold(amb.zero(), |acc, (c, g)| amb.add(&acc, &amb.scale(*c, g)))
}

pub fn is_normal(a: &AffineMonoid) -> bool {
    normalize(a).generators().iter().all(|g| a.contains(g))
}

/// Is `b` integral over `a` (some positive multiple lies in `a`)? Exact:
/// the free part must lie in the cone and the class of `b` modulo `A₀`
/// must have finite order.
pub fn is_integral_over(a: &AffineMonoid, b: &GroupElement) -> bool {
    if a.ambient().check(b).is_err() || !a.cone().contains(&b.free) {
        return false;
    }
    a.group_completion().class_is_torsion(b)
}

/// Face-wise seminormality test: `b` lies on its smallest face `F` and in
/// the group generated by `A ∩ F`.
pub(crate) fn sn_face_criterion(a: &AffineMonoid, b: &GroupElement) -> bool {
    if a.ambient().check(b).is_err() || !a.cone().contains(&b.free) {
        return false;
    }
    let f = a.cone().smallest_face(&b.free);
    let face_gens = a.generators_in_face(&f);
    crate::monoid::Subgroup::new(a.ambient(), &face_gens).contains(b)
}

/// Window parameters for certified seminormal membership.
#[derive(Clone, Copy, Debug)]
pub struct SnWindow {
    /// Largest starting multiple tried.
    pub max_start: i64,
    /// Number of consecutive multiples that must lie in the monoid.
    pub width: i64,
}

impl Default for SnWindow {
    fn default() -> Self {
        SnWindow { max_start: 32, width: 8 }
    }
}

/// `b ∈ A_sn`, certified by a window `N₀ ≤ n ≤ N₀ + width` with `n·b ∈ A`.
pub fn seminormal_member(a: &AffineMonoid, b: &GroupElement, window: SnWindow) -> Result<bool> {
    let expected = sn_face_criterion(a, b);
    let amb = a.ambient();
    let hits: Vec<bool> = (1..=window.max_start + window.width).map(|n| a.contains(&amb.scale(n, b))).collect();
    let w = window.width as usize;
    let found = (0..window.max_start as usize).any(|s| hits[s..=s + w].iter().all(|&h| h));
    match (expected, found) {
        (true, true) | (false, false) => Ok(expected),
        (true, false) => Err(Error::SeminormalWindow(format!(
            "no window of {} consecutive multiples of {b} found below {}",
            window.width + 1,
            window.max_start
        ))),
        (false, true) => Err(Error::SeminormalWindow(format!(
            "multiples of {b} fill a window although {b} fails the face test"
        ))),
    }
}

/// `A_sn = {b ∈ A₀ : n·b ∈ A for n ≫ 0}`. New generators are searched up to
/// `degree_bound` (default: four times the largest generator degree of
/// the normalization).
pub fn seminormalize(a: &AffineMonoid, degree_bound: Option<i64>) -> AffineMonoid {
    let nor = normalize(a);
    let bound = degree_bound.unwrap_or(4 * nor.max_generator_degree().max(a.max_generator_degree()));
    let mut current = a.clone();
    for b in nor.elements_modulo(a.units(), bound) {
        if current.contains(&b) || !sn_face_criterion(a, &b) {
            continue;
        }
        let mut gens = current.generators().to_vec();
        gens.push(b);
        current = AffineMonoid::new(a.ambient(), &gens).expect("same ambient");
    }
    current
}

/// `C_sn / (I·C_sn)`.
pub fn seminormalize_pc(a: &PcMonoid, degree_bound: Option<i64>) -> PcMonoid {
    let c = seminormalize(a.cancellative(), degree_bound);
    PcMonoid::new(&c, a.ideal().generators()).expect("ideal generators lie in C_sn")
}

pub fn is_seminormal(a: &AffineMonoid) -> bool {
    normalize(a).elements_modulo(a.units(), 4 * normalize(a).max_generator_degree())
        .iter()
        .all(|b| !sn_face_criterion(a, b) || a.contains(b))
}

/// A discrete valuation attached to a height-one prime of a normal monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    /// The facet on which the valuation vanishes (complement of the prime).
    pub face: FaceDescriptor,
    /// Inward facet normal on the ambient free lattice.
    pub functional: Vec<i64>,
    /// Value of `functional` on a generator of its image on `A₀`, so that
    /// `ord = functional / denominator` is onto `ℤ`.
    pub denominator: i64,
}

impl Valuation {
    /// Defined on the group completion `A₀`.
    pub fn ord(&self, g: &GroupElement) -> i64 {
        dot(&self.functional, &g.free) / self.denominator
    }
}

fn valuation_for(a: &AffineMonoid, normal: &[i64]) -> Valuation {
    let d = abs_gcd(a.generators().iter().map(|g| dot(normal, &g.free))).max(1);
    let face = a.face(&[normal.to_vec()]).expect("facet normals define faces");
    Valuation { face, functional: normal.to_vec(), denominator: d }
}

/// One valuation per facet of the cone, in the order of the facets.
pub fn valuations_at_height_one(a: &AffineMonoid) -> Result<Vec<Valuation>> {
    if !is_normal(a) {
        return Err(Error::NotNormal(a.to_string()));
    }
    Ok(a.cone().facets().iter().map(|n| valuation_for(a, n)).collect())
}

/// Structure of a one-dimensional normal monoid `A = A^× ⊕ ℕπ`.
#[derive(Clone, Debug)]
pub struct DvStructure {
    pub valuation: Valuation,
    pub uniformizer: GroupElement,
}

pub fn dv_structure(a: &AffineMonoid) -> Result<DvStructure> {
    if !is_normal(a) {
        return Err(Error::NotNormal(a.to_string()));
    }
    let facets = a.cone().facets();
    if facets.len() != 1 {
        return Err(Error::Precondition(format!(
            "expected exactly one height-one prime, found {}",
            facets.len()
        )));
    }
    let valuation = valuation_for(a, &facets[0]);
    let uniformizer = a
        .atoms()
        .into_iter()
        .find(|g| valuation.ord(g) == 1)
        .ok_or_else(|| Error::Precondition("no element of valuation one".into()))?;
    Ok(DvStructure { valuation, uniformizer })
}

/// `Cl(MSpec A) = coker(A₀ → ⊕ ℤ·facets)` for a normal monoid.
pub fn affine_class_group(a: &AffineMonoid) -> Result<PresentedAbGroup> {
    let vals = valuations_at_height_one(a)?;
    let basis = a.group_completion();
    let cols: Vec<Vec<i64>> =
        basis.basis().iter().map(|g| vals.iter().map(|v| v.ord(g)).collect()).collect();
    Ok(cokernel(&IntMatrix::from_cols(vals.len(), &cols)))
}

/// Normal with trivial class group.
pub fn is_factorial(a: &AffineMonoid) -> bool {
    is_normal(a) && affine_class_group(a).map(|g| g.is_trivial()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::AmbientGroup;

    fn m(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        AffineMonoid::from_vectors(rank, &gens).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let a = m(1, &[&[2], &[3]]);
        assert!(normalize(&a).same_as(&AffineMonoid::free_commutative(1)));
        assert!(!is_normal(&a));
        let cone = m(2, &[&[1, 0], &[1, 2], &[1, 1]]);
        assert!(is_normal(&cone));
        let u = AmbientGroup::new(1, &[2]).unwrap();
        let ax = AffineMonoid::new(&u, &[GroupElement::new(&[1], &[0]), GroupElement::new(&[1], &[1])]).unwrap();
        let b = AffineMonoid::new(&u, &[GroupElement::new(&[0], &[1]), GroupElement::new(&[1], &[0])]).unwrap();
        assert!(normalize(&ax).same_as(&b));
    }

    #[test]
    fn seminormal_examples() {
        let a = m(1, &[&[2], &[3]]);
        assert!(seminormalize(&a, None).same_as(&AffineMonoid::free_commutative(1)));
        assert!(seminormal_member(&a, &GroupElement::free(&[1]), SnWindow::default()).unwrap());
        let plus = m(2, &[&[1, 0], &[0, 2], &[1, 1]]);
        assert!(seminormalize(&plus, None).same_as(&plus));
        assert!(!is_normal(&plus));
        assert!(is_seminormal(&plus));
        assert!(!seminormal_member(&plus, &GroupElement::free(&[0, 1]), SnWindow::default()).unwrap());
    }

    #[test]
    fn valuations_of_cone() {
        let cone = m(2, &[&[1, 0], &[1, 2], &[1, 1]]);
        let vals = valuations_at_height_one(&cone).unwrap();
        let x = GroupElement::free(&[1, 0]);
        let y = GroupElement::free(&[1, 2]);
        let z = GroupElement::free(&[1, 1]);
        let mut table: Vec<(i64, i64, i64)> = vals.iter().map(|v| (v.ord(&x), v.ord(&y), v.ord(&z))).collect();
        table.sort();
        assert_eq!(table, vec![(0, 2, 1), (2, 0, 1)]);
        assert_eq!(affine_class_group(&cone).unwrap(), PresentedAbGroup::from_cyclic_orders(&[2]));
        assert!(!is_factorial(&cone));
        assert!(is_factorial(&AffineMonoid::free_commutative(2)));
        assert!(valuations_at_height_one(&m(1, &[&[1], &[-1]])).unwrap().is_empty());
    }

    #[test]
    fn dv_of_localized_cone() {
        let cone = m(2, &[&[1, 0], &[1, 2], &[1, 1]]);
        let loc = cone.invert(&[GroupElement::free(&[1, 2])]).unwrap();
        let dv = dv_structure(&loc).unwrap();
        assert_eq!(dv.valuation.ord(&GroupElement::free(&[1, 0])), 2);
        assert_eq!(dv.valuation.ord(&GroupElement::free(&[1, 1])), 1);
    }

    #[test]
    fn integrality() {
        let a = m(1, &[&[2], &[3]]);
        assert!(is_integral_over(&a, &GroupElement::free(&[1])));
        let sq = m(2, &[&[2, 0], &[0, 2]]);
        assert!(is_integral_over(&sq, &GroupElement::free(&[1, 1])));
        assert!(!is_integral_over(&AffineMonoid::free_commutative(2), &GroupElement::free(&[1, -1])));
    }
}
