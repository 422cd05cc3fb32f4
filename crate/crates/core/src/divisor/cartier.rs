use num_bigint::BigInt;

use super::les::{long_exact_sequence, LongExactSequence};
use super::sheaf::SheafMap;
use super::units::{subgroup_map, subgroup_sheaf, unit_groups};
use super::weil::{class_group_data, valuation_at, WeilDivisor};
use crate::error::{Error, Result};
use crate::ideal::FreeCoords;
use crate::lattice::{to_i64, FpGroup, FpHom, IntMatrix, PresentedAbGroup};
use crate::monoid::{GroupElement, Subgroup};
use crate::normalization::is_factorial;
use crate::scheme::MonoidScheme;

/// A global section of `𝒜₀^×/𝒜^×`: one representative `a_x ∈ A₀^×` per
/// point, written in the ambient group of the stalk at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierDivisor {
    representatives: Vec<GroupElement>,
}

fn require_cancellative(x: &MonoidScheme) -> Result<()> {
    if !x.is_cancellative() {
        return Err(Error::NotCancellative("scheme".into()));
    }
    if !x.is_irreducible() {
        return Err(Error::Precondition("Cartier divisors need an irreducible scheme".into()));
    }
    Ok(())
}

impl CartierDivisor {
    /// Checks that `a_x` and `a_y` differ by a unit of `𝒜_y` whenever `y`
    /// generizes `x`.
    pub fn new(x: &MonoidScheme, representatives: Vec<GroupElement>) -> Result<Self> {
        require_cancellative(x)?;
        if representatives.len() != x.len() {
            return Err(Error::Precondition("one representative per point is required".into()));
        }
        for (p, a) in representatives.iter().enumerate() {
            let c = x.stalk(p).cancellative();
            c.ambient().check(a)?;
            if !c.group_completion().contains(a) {
                return Err(Error::Precondition(format!("{a} is not in the group completion at point {p}")));
            }
            for g in x.generizations(p) {
                let target = x.stalk(g.target).cancellative();
                let diff = target.ambient().sub(&g.map.apply(a), &representatives[g.target]);
                if !target.units().contains(&diff) {
                    return Err(Error::Precondition(format!(
                        "representatives at {p} and {} do not differ by a unit",
                        g.target
                    )));
                }
            }
        }
        Ok(CartierDivisor { representatives })
    }

    /// From local equations on the minimal opens of some points (charts):
    /// every point takes the representative of the first chart containing it.
    pub fn from_charts(x: &MonoidScheme, charts: &[(usize, GroupElement)]) -> Result<Self> {
        let mut reps = Vec::with_capacity(x.len());
        for p in 0..x.len() {
            let (chart, a) = charts
                .iter()
                .find(|(c, _)| x.generization(*c, p).is_some())
                .ok_or_else(|| Error::Precondition(format!("point {p} is not covered by a chart")))?;
            let g = x.generization(*chart, p).expect("chart contains the point");
            reps.push(g.map.apply(a));
        }
        Self::new(x, reps)
    }

    pub fn representatives(&self) -> &[GroupElement] {
        &self.representatives
    }

    pub fn representative(&self, p: usize) -> &GroupElement {
        &self.representatives[p]
    }
}

/// `Cart(X)`, its principal subgroup and the connecting map to `Pic(X)`.
#[derive(Clone, Debug)]
pub struct CartierGroup {
    pub cartier: PresentedAbGroup,
    pub principal: PresentedAbGroup,
    pub quotient: PresentedAbGroup,
    pub picard: PresentedAbGroup,
    /// Divisors representing the generators of `Cart(X)` used by `delta`.
    pub generators: Vec<CartierDivisor>,
    /// `Cart(X)/principal → Pic(X)`.
    pub delta: FpHom,
    pub sequence: LongExactSequence,
    gp: Vec<Subgroup>,
}

impl CartierGroup {
    /// Coordinates of a Cartier divisor in the generators of `Cart(X)`.
    pub fn coordinates(&self, d: &CartierDivisor) -> Result<Vec<BigInt>> {
        let mut section = Vec::new();
        for (p, a) in d.representatives.iter().enumerate() {
            let c = self.gp[p]
                .coordinates(a)
                .ok_or_else(|| Error::Precondition(format!("{a} is not in the group completion at {p}")))?;
            section.extend(c.into_iter().map(BigInt::from));
        }
        self.sequence.cohomology[2]
            .class_of(&section)
            .ok_or_else(|| Error::Precondition("not a global section".into()))
    }

    /// Class of `d` in `Pic(X)`, in the cocycle generators of `H¹(𝒜^×)`.
    pub fn picard_class(&self, d: &CartierDivisor) -> Result<Vec<BigInt>> {
        let c = self.coordinates(d)?;
        Ok(self.delta.matrix.mul_vec(&c))
    }

    /// Is `d` principal?
    pub fn is_principal(&self, d: &CartierDivisor) -> Result<bool> {
        Ok(self.delta.dst.is_zero_elem(&self.picard_class(d)?))
    }
}

pub fn cartier_group(x: &MonoidScheme) -> Result<CartierGroup> {
    require_cancellative(x)?;
    let units = unit_groups(x);
    let gp: Vec<Subgroup> = x.stalks().iter().map(|s| s.cancellative().group_completion()).collect();
    let f = subgroup_sheaf(x, &units)?;
    let g = subgroup_sheaf(x, &gp)?;
    let comps = (0..x.len()).map(|p| subgroup_map(&units[p], &gp[p], None)).collect::<Result<Vec<_>>>()?;
    let incl = SheafMap::new(&f, &g, comps)?;
    let (_, quot) = incl.cokernel()?;
    let sequence = long_exact_sequence(&incl, &quot)?;

    let h0q = &sequence.cohomology[2];
    let principal_map = &sequence.maps[1];
    let quotient_group = FpGroup::new(h0q.group.relations.hcat(&principal_map.matrix));
    let delta = FpHom::new(quotient_group.clone(), sequence.cohomology[3].group.clone(), sequence.maps[2].matrix.clone());
    if !delta.is_well_defined() || !delta.is_isomorphism() {
        return Err(Error::Verification("Cart/principal is not isomorphic to Pic via the connecting map".into()));
    }

    let mut generators = Vec::with_capacity(h0q.cycles.cols());
    for j in 0..h0q.cycles.cols() {
        let z = h0q.cycles.col(j);
        let mut reps = Vec::with_capacity(x.len());
        let mut off = 0;
        for (p, s) in gp.iter().enumerate() {
            let amb = x.stalk(p).cancellative().ambient();
            let k = s.basis().len();
            let a = s.basis().iter().zip(&z[off..off + k]).fold(amb.zero(), |acc, (b, c)| amb.add(&acc, &amb.scale(to_i64(c), b)));
            reps.push(a);
            off += k;
        }
        generators.push(CartierDivisor { representatives: reps });
    }

    Ok(CartierGroup {
        cartier: h0q.presented(),
        principal: principal_map.image(),
        quotient: quotient_group.normal_form(),
        picard: sequence.groups[3].clone(),
        generators,
        delta,
        sequence,
        gp,
    })
}

/// The Weil divisor `Σ v_z(a_z)·z` of a Cartier divisor on a normal scheme.
pub fn cartier_to_weil(x: &MonoidScheme, d: &CartierDivisor) -> Result<WeilDivisor> {
    if !x.is_normal() {
        return Err(Error::NotNormal("scheme".into()));
    }
    let terms = x
        .height_one_points()
        .into_iter()
        .map(|z| Ok((z, valuation_at(x, &z)?.ord(d.representative(z)))))
        .collect::<Result<Vec<_>>>()?;
    WeilDivisor::new(x, terms)
}

/// Every stalk is factorial.
pub fn is_locally_factorial(x: &MonoidScheme) -> bool {
    x.stalks().iter().all(|s| s.is_cancellative() && is_factorial(s.cancellative()))
}

/// Local equations `a_x = Σ n_z·π_{x,z}`, where `π_{x,z}` generates the
/// height-one prime of `𝒜_x` at `z`.
pub fn weil_to_cartier(x: &MonoidScheme, d: &WeilDivisor) -> Result<CartierDivisor> {
    if !is_locally_factorial(x) {
        return Err(Error::Precondition("the scheme is not locally factorial".into()));
    }
    let ht1 = x.height_one_points();
    let mut reps = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let c = x.stalk(p).cancellative();
        let coords = FreeCoords::detect(c).ok_or_else(|| Error::Verification(format!("stalk at {p} is not free")))?;
        let amb = c.ambient();
        let mut a = amb.zero();
        for g in x.generizations(p) {
            if !ht1.contains(&g.target) {
                continue;
            }
            let n = d.coefficient(g.target);
            if n == 0 {
                continue;
            }
            let pi = coords
                .atoms
                .iter()
                .find(|atom| !c.in_face(&g.face, atom))
                .ok_or_else(|| Error::Verification(format!("no prime element at {p} for {}", g.target)))?;
            a = amb.add(&a, &amb.scale(n, pi));
        }
        reps.push(a);
    }
    CartierDivisor::new(x, reps)
}

/// `Pic(X) → Cl(X)` for a normal irreducible scheme, via Cartier divisors.
#[derive(Clone, Debug)]
pub struct PicToCl {
    pub picard: PresentedAbGroup,
    pub class_group: PresentedAbGroup,
    pub map: FpHom,
    pub injective: bool,
    pub isomorphism: bool,
}

pub fn pic_to_cl(x: &MonoidScheme) -> Result<PicToCl> {
    let cart = cartier_group(x)?;
    let cl = class_group_data(x)?;
    let cols = cart
        .generators
        .iter()
        .map(|d| Ok(cartier_to_weil(x, d)?.vector(&cl.points)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntMatrix::from_cols(cl.points.len(), &cols);
    let map = FpHom::new(cart.delta.src.clone(), cl.presentation.clone(), matrix);
    if !map.is_well_defined() {
        return Err(Error::Verification("principal Cartier divisors are not principal Weil divisors".into()));
    }
    Ok(PicToCl {
        picard: cart.quotient.clone(),
        class_group: cl.group.clone(),
        injective: map.is_injective(),
        isomorphism: map.is_isomorphism(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{AffineMonoid, PcMonoid};
    use crate::scheme::{from_fan, mspec_scheme, projective_space, Fan};

    #[test]
    fn projective_line() {
        let p = projective_space(1).unwrap();
        let cart = cartier_group(&p).unwrap();
        assert_eq!(cart.quotient, PresentedAbGroup::free(1));
        assert_eq!(cart.picard, PresentedAbGroup::free(1));
        assert!(cart.delta.is_surjective());
        let cmp = pic_to_cl(&p).unwrap();
        assert!(cmp.isomorphism);
        for z in p.height_one_points() {
            let w = WeilDivisor::new(&p, [(z, 3)]).unwrap();
            let d = weil_to_cartier(&p, &w).unwrap();
            assert_eq!(cartier_to_weil(&p, &d).unwrap(), w);
            assert!(!cart.is_principal(&d).unwrap());
        }
    }

    #[test]
    fn quadric_cone_is_not_locally_factorial() {
        let c = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap();
        let x = mspec_scheme(&PcMonoid::from_cancellative(&c)).unwrap();
        assert!(!is_locally_factorial(&x));
        let cmp = pic_to_cl(&x).unwrap();
        assert!(cmp.picard.is_trivial());
        assert_eq!(cmp.class_group, PresentedAbGroup::from_cyclic_orders(&[2]));
        assert!(cmp.injective && !cmp.isomorphism);
    }

    #[test]
    fn smooth_fans_have_pic_equal_to_cl() {
        let fan = Fan::new(2, &[vec![1, 0], vec![0, 1], vec![-1, -1]], &[vec![0, 1], vec![1, 2]]).unwrap();
        let x = from_fan(&fan).unwrap();
        assert!(is_locally_factorial(&x));
        let cmp = pic_to_cl(&x).unwrap();
        assert!(cmp.isomorphism);
    }

    #[test]
    fn incompatible_representatives_are_rejected() {
        let a2 = mspec_scheme(&PcMonoid::from_cancellative(&AffineMonoid::free_commutative(2))).unwrap();
        let mut reps = vec![GroupElement::free(&[0, 0]); a2.len()];
        reps[a2.height_one_points()[0]] = GroupElement::free(&[1, 1]);
        assert!(CartierDivisor::new(&a2, reps).is_err());
    }
}
