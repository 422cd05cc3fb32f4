use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{is_exact_at, FpGroup, FpHom, IntMatrix, PresentedAbGroup};
use crate::monoid::{GroupElement, PcMonoid};
use crate::normalization::{dv_structure, Valuation};
use crate::scheme::MonoidScheme;

/// A finite formal sum of height-one points with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeilDivisor {
    coefficients: BTreeMap<usize, i64>,
}

impl WeilDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Checks that the support consists of height-one points of `x`.
    pub fn new(x: &MonoidScheme, terms: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let ht1 = x.height_one_points();
        let mut d = WeilDivisor::zero();
        for (p, n) in terms {
            if !ht1.contains(&p) {
                return Err(Error::Precondition(format!("point {p} is not of height one")));
            }
            d.add_term(p, n);
        }
        Ok(d)
    }

    fn add_term(&mut self, p: usize, n: i64) {
        let e = self.coefficients.entry(p).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coefficients.remove(&p);
        }
    }

    pub fn coefficient(&self, p: usize) -> i64 {
        self.coefficients.get(&p).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coefficients.iter().map(|(&p, &n)| (p, n))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &WeilDivisor) -> WeilDivisor {
        let mut out = self.clone();
        for (p, n) in other.terms() {
            out.add_term(p, n);
        }
        out
    }

    pub fn negate(&self) -> WeilDivisor {
        WeilDivisor { coefficients: self.coefficients.iter().map(|(&p, &n)| (p, -n)).collect() }
    }

    /// Coefficient vector in the order of `points`.
    pub fn vector(&self, points: &[usize]) -> Vec<i64> {
        points.iter().map(|&p| self.coefficient(p)).collect()
    }
}

impl fmt::Display for WeilDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(p, n)| format!("{n}·[{p}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn require_normal(x: &MonoidScheme) -> Result<()> {
    if !x.is_normal() {
        return Err(Error::NotNormal("scheme".into()));
    }
    Ok(())
}

/// The discrete valuation at a height-one point, on the ambient of its stalk.
pub(crate) fn valuation_at(x: &MonoidScheme, z: &usize) -> Result<Valuation> {
    Ok(dv_structure(x.stalk(*z).cancellative())?.valuation)
}

/// Moves `a` from the ambient of `from` to the ambient of its
/// specialization `to`, inverting the generization map.
fn pull_back_along(x: &MonoidScheme, to: usize, from: usize, a: &GroupElement) -> Result<GroupElement> {
    let g = x
        .generization(to, from)
        .ok_or_else(|| Error::Precondition(format!("point {from} is not a generization of {to}")))?;
    if g.map.is_identity() {
        return Ok(a.clone());
    }
    let inv = g
        .map
        .inverse()
        .ok_or_else(|| Error::Precondition("generization map is not invertible".into()))?;
    Ok(inv.apply(a))
}

/// Generic point of the connected component containing `p`.
fn generic_of(x: &MonoidScheme, p: usize) -> Result<usize> {
    let gs: Vec<usize> = x.generic_points().into_iter().filter(|&g| x.specializes_to(g, p)).collect();
    match gs.as_slice() {
        [g] => Ok(*g),
        _ => Err(Error::Precondition(format!("point {p} lies on {} irreducible components", gs.len()))),
    }
}

/// `div(a) = Σ v_z(a)·z` over the height-one points `z` of the component
/// through `eta`, for `a` in the group completion at the generic point `eta`.
pub fn div(x: &MonoidScheme, eta: usize, a: &GroupElement) -> Result<WeilDivisor> {
    require_normal(x)?;
    let stalk = x.stalk(eta).cancellative();
    if !stalk.group_completion().contains(a) {
        return Err(Error::Precondition(format!("{a} is not in the group completion at point {eta}")));
    }
    let mut d = WeilDivisor::zero();
    for z in x.height_one_points() {
        if !x.specializes_to(eta, z) {
            continue;
        }
        let v = valuation_at(x, &z)?;
        let local = pull_back_along(x, z, eta, a)?;
        d.add_term(z, v.ord(&local));
    }
    Ok(d)
}

/// `Cl(X)` with generators the height-one points (in the order of
/// `height_one_points`) and relations the principal divisors of a basis of
/// the free part of `A₀` on each connected component.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub points: Vec<usize>,
    pub presentation: FpGroup,
    pub group: PresentedAbGroup,
}

impl ClassGroup {
    /// Class of a Weil divisor, as a vector over `points`.
    pub fn vector(&self, d: &WeilDivisor) -> Vec<i64> {
        d.vector(&self.points)
    }

    pub fn is_principal(&self, d: &WeilDivisor) -> bool {
        self.presentation.is_zero_elem(&crate::lattice::big_vec(&self.vector(d)))
    }
}

pub fn class_group_data(x: &MonoidScheme) -> Result<ClassGroup> {
    require_normal(x)?;
    let points = x.height_one_points();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for eta in x.generic_points() {
        let gp = x.stalk(eta).cancellative().group_completion();
        for (b, &order) in gp.basis().iter().zip(gp.orders()) {
            if order != 0 {
                continue;
            }
            cols.push(div(x, eta, b)?.vector(&points));
        }
    }
    let rel = IntMatrix::from_cols(points.len(), &cols);
    let presentation = FpGroup::new(rel);
    let group = presentation.normal_form();
    Ok(ClassGroup { points, presentation, group })
}

/// `Cl(X) = Div(X) / principal divisors`, summed over connected components.
pub fn class_group(x: &MonoidScheme) -> Result<PresentedAbGroup> {
    for comp in x.connected_components() {
        generic_of(x, comp[0])?;
    }
    Ok(class_group_data(x)?.group)
}

/// Report on `ℤ → Cl(X) → Cl(U) → 0` for `U = X ∖ closure(z)`.
#[derive(Clone, Debug)]
pub struct ExcisionReport {
    pub point: usize,
    pub class_group: PresentedAbGroup,
    pub open_class_group: PresentedAbGroup,
    /// Order of the class of `z` in `Cl(X)` (0 = infinite); `None` when
    /// `z` has height at least two.
    pub class_order: Option<i64>,
    pub exact: bool,
    pub surjective: bool,
    /// `Cl(X) → Cl(U)` is an isomorphism.
    pub isomorphism: bool,
}

/// The open complement of the closure of `z`.
pub fn open_complement(x: &MonoidScheme, z: usize) -> Result<(MonoidScheme, Vec<usize>)> {
    let closed = x.closure(z);
    let points: Vec<usize> = (0..x.len()).filter(|p| !closed.contains(p)).collect();
    let stalks: Vec<PcMonoid> = points.iter().map(|&p| x.stalk(p).clone()).collect();
    Ok((x.restrict_with_stalks(&points, stalks)?, points))
}

pub fn excision(x: &MonoidScheme, z: usize) -> Result<ExcisionReport> {
    if z >= x.len() {
        return Err(Error::Precondition(format!("no point {z}")));
    }
    if x.generic_points().contains(&z) {
        return Err(Error::Precondition("cannot excise a generic point".into()));
    }
    let cl = class_group_data(x)?;
    let (u, kept) = open_complement(x, z)?;
    let cl_u = class_group_data(&u)?;
    let n = cl.points.len();
    let m = cl_u.points.len();
    let mut restrict = IntMatrix::zeros(m, n);
    for (i, &q) in cl_u.points.iter().enumerate() {
        let j = cl.points.iter().position(|&p| p == kept[q]).expect("height-one points of U lie in X");
        restrict[(i, j)] = 1.into();
    }
    let restriction = FpHom::new(cl.presentation.clone(), cl_u.presentation.clone(), restrict);
    let ht1 = cl.points.iter().position(|&p| p == z);
    let mut incl = IntMatrix::zeros(n, 1);
    if let Some(j) = ht1 {
        incl[(j, 0)] = 1.into();
    }
    let from_z = FpHom::new(FpGroup::free(1), cl.presentation.clone(), incl);
    if !restriction.is_well_defined() {
        return Err(Error::Verification("restriction of divisor classes is not well defined".into()));
    }
    let class_order = ht1.map(|_| from_z.image().torsion_order_or_zero());
    Ok(ExcisionReport {
        point: z,
        class_group: cl.group.clone(),
        open_class_group: cl_u.group.clone(),
        class_order,
        exact: is_exact_at(&from_z, &restriction),
        surjective: restriction.is_surjective(),
        isomorphism: restriction.is_isomorphism(),
    })
}

trait OrderOfCyclic {
    fn torsion_order_or_zero(&self) -> i64;
}

impl OrderOfCyclic for PresentedAbGroup {
    fn torsion_order_or_zero(&self) -> i64 {
        if self.rank > 0 {
            0
        } else {
            self.torsion_order()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::AffineMonoid;
    use crate::scheme::{glue, mspec_scheme, projective_space, Identification};

    fn xy_z2() -> MonoidScheme {
        // x = (1,0), z = (1,1), y = (1,2)
        let c = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap();
        mspec_scheme(&PcMonoid::from_cancellative(&c)).unwrap()
    }

    #[test]
    fn quadric_cone() {
        let x = xy_z2();
        let eta = x.generic_points()[0];
        let dx = div(&x, eta, &GroupElement::free(&[1, 0])).unwrap();
        let dz = div(&x, eta, &GroupElement::free(&[1, 1])).unwrap();
        let mut coeffs: Vec<i64> = dx.terms().map(|(_, n)| n).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![2]);
        assert_eq!(dz.terms().count(), 2);
        assert!(dz.terms().all(|(_, n)| n == 1));
        let p1 = dx.terms().next().unwrap().0;
        assert_eq!(dz.coefficient(p1), 1);
        assert_eq!(class_group(&x).unwrap(), PresentedAbGroup::from_cyclic_orders(&[2]));
        let ex = excision(&x, p1).unwrap();
        assert!(ex.exact && ex.surjective);
        assert!(ex.open_class_group.is_trivial());
        assert_eq!(ex.class_order, Some(2));
    }

    #[test]
    fn projective_line_divisors() {
        let p = projective_space(1).unwrap();
        assert_eq!(class_group(&p).unwrap(), PresentedAbGroup::free(1));
        let eta = p.generic_points()[0];
        let d = div(&p, eta, &GroupElement::free(&[1])).unwrap();
        let coeffs: Vec<i64> = d.terms().map(|(_, n)| n).collect();
        assert_eq!(coeffs.iter().sum::<i64>(), 0);
        assert_eq!(coeffs.len(), 2);
        for z in p.height_one_points() {
            let ex = excision(&p, z).unwrap();
            assert!(ex.exact && ex.surjective);
            assert!(ex.open_class_group.is_trivial());
        }
        assert!(div(&p, eta, &GroupElement::free(&[0])).unwrap().is_zero());
    }

    #[test]
    fn lines_glued_generically() {
        for n in 1..=3usize {
            let line = mspec_scheme(&PcMonoid::from_cancellative(&AffineMonoid::free_commutative(1))).unwrap();
            let generic = line.generic_points()[0];
            let copies = vec![line; n + 1];
            let ids: Vec<Identification> = (1..=n).map(|k| Identification::identity((0, generic), (k, generic))).collect();
            let x = glue(&copies, &ids).unwrap();
            assert_eq!(class_group(&x).unwrap(), PresentedAbGroup::free(n));
        }
    }

    #[test]
    fn codimension_two_excision() {
        let a2 = mspec_scheme(&PcMonoid::from_cancellative(&AffineMonoid::free_commutative(2))).unwrap();
        let closed = a2.closed_points()[0];
        let ex = excision(&a2, closed).unwrap();
        assert!(ex.isomorphism);
        assert_eq!(ex.class_order, None);
    }
}
