use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{big_vec, integer_kernel, smith_normal_form, small_vec, to_i64, FpGroup, IntMatrix, IntSolver, PresentedAbGroup, Snf};

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ`. The torsion moduli are kept as given (each
/// at least 2); they need not form a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientGroup {
    rank: usize,
    torsion: Vec<i64>,
}

/// An element of an [`AmbientGroup`]: a free part and torsion residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl GroupElement {
    pub fn free(v: &[i64]) -> Self {
        GroupElement { free: v.to_vec(), torsion: Vec::new() }
    }

    pub fn new(free: &[i64], torsion: &[i64]) -> Self {
        GroupElement { free: free.to_vec(), torsion: torsion.to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&v| v == 0)
    }

    pub fn flat(&self) -> Vec<i64> {
        self.free.iter().chain(&self.torsion).copied().collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|v| v.to_string()).collect();
        if self.torsion.is_empty() {
            write!(f, "({})", free.join(","))
        } else {
            let tors: Vec<String> = self.torsion.iter().map(|v| format!("{v}~")).collect();
            write!(f, "({}|{})", free.join(","), tors.join(","))
        }
    }
}

impl AmbientGroup {
    pub fn new(rank: usize, torsion: &[i64]) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(Error::Precondition(format!("torsion modulus {d} must be at least 2")));
        }
        Ok(AmbientGroup { rank, torsion: torsion.to_vec() })
    }

    pub fn free(rank: usize) -> Self {
        AmbientGroup { rank, torsion: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of coordinates of a flattened element.
    pub fn width(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn presented(&self) -> PresentedAbGroup {
        let mut orders = vec![0; self.rank];
        orders.extend(&self.torsion);
        PresentedAbGroup::from_cyclic_orders(&orders)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { free: vec![0; self.rank], torsion: vec![0; self.torsion.len()] }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.free.len() != self.rank {
            return Err(Error::Dimension { expected: self.rank, found: g.free.len() });
        }
        if g.torsion.len() != self.torsion.len() {
            return Err(Error::Dimension { expected: self.torsion.len(), found: g.torsion.len() });
        }
        Ok(())
    }

    pub fn reduce(&self, mut g: GroupElement) -> GroupElement {
        for (t, d) in g.torsion.iter_mut().zip(&self.torsion) {
            *t = t.rem_euclid(*d);
        }
        g
    }

    /// Parses a flat coordinate vector (free coordinates, then torsion).
    pub fn from_flat(&self, v: &[i64]) -> GroupElement {
        assert_eq!(v.len(), self.width(), "flat vector width mismatch");
        self.reduce(GroupElement { free: v[..self.rank].to_vec(), torsion: v[self.rank..].to_vec() })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a.torsion.iter().zip(&b.torsion).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        self.scale(-1, a)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        self.reduce(GroupElement {
            free: a.free.iter().map(|x| k * x).collect(),
            torsion: a.torsion.iter().map(|x| k * x).collect(),
        })
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// Relations `dᵢ·tᵢ = 0` as columns of a `width × #torsion` matrix.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.width(), self.torsion.len());
        for (i, &d) in self.torsion.iter().enumerate() {
            m[(self.rank + i, i)] = BigInt::from(d);
        }
        m
    }

    pub fn direct_sum(&self, other: &AmbientGroup) -> AmbientGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(&other.torsion);
        AmbientGroup { rank: self.rank + other.rank, torsion }
    }

    /// Embeddings of the two summands into `self ⊕ other`.
    pub fn inject_left(&self, other: &AmbientGroup, g: &GroupElement) -> GroupElement {
        let mut free = g.free.clone();
        free.extend(std::iter::repeat_n(0, other.rank));
        let mut torsion = g.torsion.clone();
        torsion.extend(std::iter::repeat_n(0, other.torsion.len()));
        GroupElement { free, torsion }
    }

    pub fn inject_right(&self, other: &AmbientGroup, g: &GroupElement) -> GroupElement {
        debug_assert_eq!(g.free.len(), other.rank, "element of the wrong group");
        let mut free = vec![0; self.rank];
        free.extend(&g.free);
        let mut torsion = vec![0; self.torsion.len()];
        torsion.extend(&g.torsion);
        GroupElement { free, torsion }
    }

    pub fn is_torsion(&self, g: &GroupElement) -> bool {
        g.free.iter().all(|&v| v == 0)
    }
}

/// Subgroup of an [`AmbientGroup`], stored with an adapted basis so that it
/// is presented as `⊕ ℤ/orderᵢ` (order `0` meaning infinite cyclic).
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: AmbientGroup,
    generators: Vec<GroupElement>,
    basis: Vec<GroupElement>,
    orders: Vec<i64>,
    /// Solver for `[gens | torsion relations] c = g`.
    span: IntSolver,
    /// Row transform taking generator coordinates to basis coordinates.
    to_basis: IntMatrix,
    kept: Vec<usize>,
    quotient: Snf,
}

impl Subgroup {
    pub fn new(group: &AmbientGroup, gens: &[GroupElement]) -> Self {
        let n = group.width();
        let k = gens.len();
        let flats: Vec<Vec<i64>> = gens.iter().map(|g| g.flat()).collect();
        let m = IntMatrix::from_cols(n, &flats);
        let with_rel = m.hcat(&group.relation_matrix());

        // relations among the generators
        let ker = integer_kernel(&with_rel);
        let idx: Vec<usize> = (0..k).collect();
        let rel = ker.select_rows(&idx);
        let snf = smith_normal_form(&rel);
        let diag = snf.diagonal();
        let uinv = unimodular_inverse(&snf.u);
        let mut basis = Vec::new();
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for j in 0..k {
            let order = if j < diag.len() { to_i64(&diag[j]) } else { 0 };
            if order == 1 {
                continue;
            }
            let coeffs = uinv.col_i64(j);
            let mut elem = group.zero();
            for (c, g) in coeffs.iter().zip(gens) {
                elem = group.add(&elem, &group.scale(*c, g));
            }
            basis.push(elem);
            orders.push(order);
            kept.push(j);
        }
        Subgroup {
            group: group.clone(),
            generators: gens.to_vec(),
            basis,
            orders,
            span: IntSolver::new(&with_rel),
            to_basis: snf.u,
            kept,
            quotient: smith_normal_form(&with_rel),
        }
    }

    pub fn trivial(group: &AmbientGroup) -> Self {
        Self::new(group, &[])
    }

    pub fn group(&self) -> &AmbientGroup {
        &self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Orders of the basis elements (`0` = infinite).
    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn presented(&self) -> PresentedAbGroup {
        PresentedAbGroup::from_cyclic_orders(&self.orders)
    }

    pub fn as_fp_group(&self) -> FpGroup {
        let n = self.orders.len();
        let cols: Vec<Vec<i64>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| {
                let mut c = vec![0; n];
                c[i] = d;
                c
            })
            .collect();
        FpGroup::new(IntMatrix::from_cols(n, &cols))
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.span.contains(&big_vec(&g.flat()))
    }

    /// Coordinates of `g` in the adapted basis (reduced modulo finite orders).
    pub fn coordinates(&self, g: &GroupElement) -> Option<Vec<i64>> {
        let sol = self.span.solve(&big_vec(&g.flat()))?;
        let k = self.generators.len();
        let c: Vec<BigInt> = sol[..k].to_vec();
        let full = self.to_basis.mul_vec(&c);
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&j, &d)| {
                    let v = to_i64(&full[j]);
                    if d > 0 {
                        v.rem_euclid(d)
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Canonical representative data of the coset `g + H` (equal iff the
    /// cosets are equal).
    pub fn coset_key(&self, g: &GroupElement) -> Vec<i64> {
        let w = self.quotient.u.mul_vec(&big_vec(&g.flat()));
        let diag = self.quotient.diagonal();
        w.iter()
            .enumerate()
            .map(|(i, v)| {
                if i < diag.len() {
                    let d = &diag[i];
                    if d.is_one() {
                        0
                    } else {
                        to_i64(&num_integer::Integer::mod_floor(v, d))
                    }
                } else {
                    to_i64(v)
                }
            })
            .collect()
    }

    /// Is the class of `g` in the ambient group modulo this subgroup of
    /// finite order?
    pub fn class_is_torsion(&self, g: &GroupElement) -> bool {
        let rank = self.quotient.rank();
        self.coset_key(g).iter().skip(rank).all(|&v| v == 0)
    }

    /// `self ⊆ other`
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Presentation of the quotient `self / sub` (where `sub ⊆ self`),
    /// generated by this subgroup's adapted basis.
    pub fn quotient_by(&self, sub: &Subgroup) -> FpGroup {
        let base = self.as_fp_group();
        let cols: Vec<Vec<i64>> = sub
            .basis
            .iter()
            .map(|g| self.coordinates(g).expect("quotient by a non-subgroup"))
            .collect();
        let extra = IntMatrix::from_cols(self.orders.len(), &cols);
        FpGroup::new(base.relations.hcat(&extra))
    }
}

pub(crate) fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let solver = IntSolver::new(u);
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::one();
            solver.solve(&e).expect("matrix is not unimodular")
        })
        .collect();
    IntMatrix::from_big_cols(n, &cols)
}

/// A homomorphism of ambient groups, given by the images of the flat basis
/// (free basis vectors, then torsion generators).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: AmbientGroup,
    pub target: AmbientGroup,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: &AmbientGroup, target: &AmbientGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.width() {
            return Err(Error::Dimension { expected: source.width(), found: images.len() });
        }
        for img in &images {
            target.check(img)?;
        }
        let images: Vec<GroupElement> = images.into_iter().map(|g| target.reduce(g)).collect();
        for (i, &d) in source.torsion().iter().enumerate() {
            if !target.scale(d, &images[source.rank() + i]).is_zero() {
                return Err(Error::Precondition(format!(
                    "image of torsion generator {i} is not killed by its order {d}"
                )));
            }
        }
        Ok(GroupHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(group: &AmbientGroup) -> Self {
        let images = (0..group.width())
            .map(|i| {
                let mut v = vec![0; group.width()];
                v[i] = 1;
                group.from_flat(&v)
            })
            .collect();
        GroupHom { source: group.clone(), target: group.clone(), images }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == GroupHom::identity(&self.source)
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let flat = g.flat();
        let mut out = self.target.zero();
        for (c, img) in flat.iter().zip(&self.images) {
            if *c != 0 {
                out = self.target.add(&out, &self.target.scale(*c, img));
            }
        }
        out
    }

    pub fn compose(&self, after: &GroupHom) -> GroupHom {
        let images = self.images.iter().map(|g| after.apply(g)).collect();
        GroupHom { source: self.source.clone(), target: after.target.clone(), images }
    }

    /// `f ⊕ g` between the direct sums of sources and targets.
    pub fn direct_sum(&self, other: &GroupHom) -> GroupHom {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let (rs, ro) = (self.source.rank(), other.source.rank());
        let left = |g: &GroupElement| self.target.inject_left(&other.target, g);
        let right = |g: &GroupElement| self.target.inject_right(&other.target, g);
        let mut images: Vec<GroupElement> = Vec::new();
        images.extend(self.images[..rs].iter().map(left));
        images.extend(other.images[..ro].iter().map(right));
        images.extend(self.images[rs..].iter().map(left));
        images.extend(other.images[ro..].iter().map(right));
        GroupHom { source, target, images }
    }

    /// The inverse, when this map is an isomorphism of ambient groups.
    pub fn inverse(&self) -> Option<GroupHom> {
        let tgt = &self.target;
        let img = Subgroup::new(tgt, &self.images);
        // surjective?
        let unit_vectors: Vec<GroupElement> = (0..tgt.width())
            .map(|i| {
                let mut v = vec![0; tgt.width()];
                v[i] = 1;
                tgt.from_flat(&v)
            })
            .collect();
        if !unit_vectors.iter().all(|e| img.contains(e)) {
            return None;
        }
        // injective: same presented group and surjective implies iso (Hopfian)
        if self.source.presented() != tgt.presented() {
            return None;
        }
        let flats: Vec<Vec<i64>> = self.images.iter().map(|g| g.flat()).collect();
        let m = IntMatrix::from_cols(tgt.width(), &flats).hcat(&tgt.relation_matrix());
        let solver = IntSolver::new(&m);
        let images = unit_vectors
            .iter()
            .map(|e| {
                let c = solver.solve(&big_vec(&e.flat())).expect("surjectivity checked");
                let coeffs = small_vec(&c[..self.source.width()]);
                self.source.from_flat(&coeffs)
            })
            .collect();
        GroupHom::new(tgt, &self.source, images).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_reduces_torsion() {
        let g = AmbientGroup::new(1, &[2]).unwrap();
        let a = GroupElement::new(&[1], &[1]);
        assert_eq!(g.add(&a, &a), GroupElement::new(&[2], &[0]));
        assert_eq!(g.neg(&a), GroupElement::new(&[-1], &[1]));
        assert!(AmbientGroup::new(1, &[1]).is_err());
    }

    #[test]
    fn subgroup_basis_and_cosets() {
        let g = AmbientGroup::free(2);
        let h = Subgroup::new(&g, &[GroupElement::free(&[2, 0]), GroupElement::free(&[0, 2]), GroupElement::free(&[2, 2])]);
        assert_eq!(h.presented(), PresentedAbGroup::free(2));
        assert!(h.contains(&GroupElement::free(&[4, -2])));
        assert!(!h.contains(&GroupElement::free(&[1, 0])));
        assert_eq!(h.coset_key(&GroupElement::free(&[1, 0])), h.coset_key(&GroupElement::free(&[3, 2])));
        assert_ne!(h.coset_key(&GroupElement::free(&[1, 0])), h.coset_key(&GroupElement::free(&[0, 1])));
    }

    #[test]
    fn subgroup_with_torsion() {
        let g = AmbientGroup::new(1, &[2]).unwrap();
        let h = Subgroup::new(&g, &[GroupElement::new(&[0], &[1]), GroupElement::new(&[1], &[0])]);
        assert_eq!(h.presented(), PresentedAbGroup { rank: 1, invariant_factors: vec![2] });
        let c = h.coordinates(&GroupElement::new(&[3], &[1])).unwrap();
        let back = h.basis().iter().zip(&c).fold(g.zero(), |acc, (b, k)| g.add(&acc, &g.scale(*k, b)));
        assert_eq!(back, GroupElement::new(&[3], &[1]));
    }

    #[test]
    fn hom_inverse() {
        let g = AmbientGroup::free(2);
        let f = GroupHom::new(&g, &g, vec![GroupElement::free(&[1, 1]), GroupElement::free(&[0, 1])]).unwrap();
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).is_identity());
        let not_iso = GroupHom::new(&g, &g, vec![GroupElement::free(&[2, 0]), GroupElement::free(&[0, 1])]).unwrap();
        assert!(not_iso.inverse().is_none());
    }
}
