use super::les::{long_exact_sequence, LongExactSequence};
use super::sheaf::{PosetSheaf, SheafMap};
use super::units::{pushforward_units, subgroup_map, unit_groups, units_sheaf};
use super::weil::class_group;
use crate::error::{Error, Result};
use crate::lattice::{FpHom, IntMatrix, PresentedAbGroup};
use crate::monoid::{AffineMonoid, PcMonoid, Subgroup};
use crate::normalization::is_seminormal;
use crate::scheme::{components_decomposition, mspec_scheme, product, MonoidScheme};

/// The six-term sequence
/// `1 → 𝒜(X)^× → 𝒜_nor(X_nor)^× → H⁰(ℋ) → Pic X → Pic X_nor → H¹(ℋ)`
/// with `ℋ = p_*(𝒜_nor^×)/𝒜^×`.
#[derive(Clone, Debug)]
pub struct NorComparison {
    pub sequence: LongExactSequence,
    pub normalization: MonoidScheme,
    pub picard: PresentedAbGroup,
    pub picard_nor: PresentedAbGroup,
    /// `p^* : Pic X → Pic X_nor`.
    pub pullback: FpHom,
    pub pullback_kernel: PresentedAbGroup,
    pub pullback_cokernel: PresentedAbGroup,
    /// `H^i(X, p_* 𝒜_nor^×) = H^i(X_nor, 𝒜_nor^×)` for `i = 0, 1`.
    pub direct_image_consistent: bool,
}

impl NorComparison {
    pub fn is_exact(&self) -> bool {
        self.sequence.is_exact()
    }
}

fn cohomology_agrees(pushed: &PosetSheaf, original: &PosetSheaf) -> bool {
    (0..=1).all(|p| pushed.cohomology(p).presented() == original.cohomology(p).presented())
}

pub fn nor_comparison(x: &MonoidScheme) -> Result<NorComparison> {
    if !x.is_cancellative() {
        return Err(Error::NotCancellative("scheme".into()));
    }
    if let Some(p) = (0..x.len()).find(|&p| !is_seminormal(x.stalk(p).cancellative())) {
        return Err(Error::Precondition(format!("the stalk at point {p} is not seminormal")));
    }
    let (nor, below) = x.normalized()?;
    let (pushed, incl) = pushforward_units(x, &nor, &below, |_, u| u.clone())?;
    let (_, quot) = incl.cokernel()?;
    let sequence = long_exact_sequence(&incl, &quot)?;
    let pullback = sequence.maps[3].clone();
    let direct_image_consistent = cohomology_agrees(&pushed, &units_sheaf(&nor)?);
    Ok(NorComparison {
        picard: sequence.groups[3].clone(),
        picard_nor: sequence.groups[4].clone(),
        pullback_kernel: pullback.kernel(),
        pullback_cokernel: pullback.cokernel(),
        pullback,
        sequence,
        normalization: nor,
        direct_image_consistent,
    })
}

/// The Mayer–Vietoris sequence
/// `1 → 𝒜(X)^× → 𝒜_{X′}^× × 𝒜_{X″}^× → 𝒜_{X‴}^× → Pic X → Pic X′ × Pic X″ → Pic X‴`
/// for the closure `X′` of the first generic point, the closure `X″` of the
/// others and `X‴ = X′ ∩ X″`.
#[derive(Clone, Debug)]
pub struct MayerVietoris {
    pub sequence: LongExactSequence,
    pub picard: PresentedAbGroup,
    pub picard_first: PresentedAbGroup,
    pub picard_rest: PresentedAbGroup,
    pub picard_meet: PresentedAbGroup,
    /// Cohomology of each pushforward agrees with that of the closed subscheme.
    pub direct_image_consistent: bool,
}

impl MayerVietoris {
    pub fn is_exact(&self) -> bool {
        self.sequence.is_exact()
    }
}

/// Map between pushforwards of unit sheaves of two closed subschemes
/// `Y ⊇ Z` of `x`, induced by the identity on elements.
fn restriction_between(
    x: &MonoidScheme,
    source: &PosetSheaf,
    target: &PosetSheaf,
    y: (&[Subgroup], &[usize]),
    z: (&[Subgroup], &[usize]),
) -> Result<SheafMap> {
    let comps = (0..x.len())
        .map(|p| {
            let ys: Vec<usize> = (0..y.1.len()).filter(|&q| y.1[q] == p).collect();
            let zs: Vec<usize> = (0..z.1.len()).filter(|&r| z.1[r] == p).collect();
            let mut m = IntMatrix::zeros(target.stalk(p).gens(), 0);
            for &q in &ys {
                let mut col = IntMatrix::zeros(0, y.0[q].basis().len());
                for &r in &zs {
                    col = col.vcat(&subgroup_map(&y.0[q], &z.0[r], None)?);
                }
                m = m.hcat(&col);
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    SheafMap::new(source, target, comps)
}

pub fn mayer_vietoris(x: &MonoidScheme) -> Result<MayerVietoris> {
    let d = components_decomposition(x)?;
    let id = |_: usize, u: &crate::monoid::GroupElement| u.clone();
    let (g1, m1) = pushforward_units(x, &d.first, &d.first_points, id)?;
    let (g2, m2) = pushforward_units(x, &d.rest, &d.rest_points, id)?;
    let (h, _) = pushforward_units(x, &d.meet, &d.meet_points, id)?;
    let (u1, u2, u3) = (unit_groups(&d.first), unit_groups(&d.rest), unit_groups(&d.meet));
    let n1 = restriction_between(x, &g1, &h, (&u1, &d.first_points), (&u3, &d.meet_points))?;
    let n2 = restriction_between(x, &g2, &h, (&u2, &d.rest_points), (&u3, &d.meet_points))?;
    let phi = m1.pair(&m2)?;
    let psi = n1.difference_from_sum(&n2)?;
    let sequence = long_exact_sequence(&phi, &psi)?;
    let direct_image_consistent = cohomology_agrees(&g1, &units_sheaf(&d.first)?)
        && cohomology_agrees(&g2, &units_sheaf(&d.rest)?)
        && cohomology_agrees(&h, &units_sheaf(&d.meet)?);
    Ok(MayerVietoris {
        picard: sequence.groups[3].clone(),
        picard_first: g1.cohomology(1).presented(),
        picard_rest: g2.cohomology(1).presented(),
        picard_meet: sequence.groups[5].clone(),
        sequence,
        direct_image_consistent,
    })
}

/// Outcome of comparing two invariants, optionally through a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckVerdict {
    pub lhs: PresentedAbGroup,
    pub rhs: PresentedAbGroup,
    /// Whether the comparison map (when there is one) is an isomorphism.
    pub map_is_isomorphism: Option<bool>,
}

impl CheckVerdict {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.map_is_isomorphism.unwrap_or(true)
    }
}

/// `Cl(X × Y)` against `Cl(X) ⊕ Cl(Y)`.
pub fn class_group_product_check(x: &MonoidScheme, y: &MonoidScheme) -> Result<CheckVerdict> {
    let lhs = class_group(&product(x, y)?)?;
    let rhs = class_group(x)?.direct_sum(&class_group(y)?);
    Ok(CheckVerdict { lhs, rhs, map_is_isomorphism: None })
}

/// `Pic(X) → Pic(X × 𝔸¹)` induced by the projection.
pub fn pic_homotopy_check(x: &MonoidScheme) -> Result<CheckVerdict> {
    let line = mspec_scheme(&PcMonoid::from_cancellative(&AffineMonoid::free_commutative(1)))?;
    let ny = line.len();
    let origin = line.closed_points()[0];
    let prod = product(x, &line)?;
    let below: Vec<usize> = (0..prod.len()).map(|q| if q % ny == origin { q / ny } else { usize::MAX }).collect();
    let ay = line.stalk(origin).cancellative().ambient().clone();
    let (pushed, map) = pushforward_units(x, &prod, &below, |q, u| {
        x.stalk(q / ny).cancellative().ambient().inject_left(&ay, u)
    })?;
    let h_src = map.source.cohomology(1);
    let h_dst = pushed.cohomology(1);
    let induced = map.induced(&h_src, &h_dst);
    let direct = units_sheaf(&prod)?.cohomology(1).presented();
    if direct != h_dst.presented() {
        return Err(Error::Verification("pushforward along the projection changed H¹".into()));
    }
    Ok(CheckVerdict { lhs: h_src.presented(), rhs: direct, map_is_isomorphism: Some(induced.is_isomorphism()) })
}

/// `Pic(X) → Pic(X_sn)` induced by `X_sn → X`.
pub fn pic_sn_check(x: &MonoidScheme, degree_bound: Option<i64>) -> Result<CheckVerdict> {
    let sn = x.seminormalized(degree_bound)?;
    let src = units_sheaf(x)?;
    let dst = units_sheaf(&sn)?;
    let (ux, us) = (unit_groups(x), unit_groups(&sn));
    let comps = (0..x.len()).map(|p| subgroup_map(&ux[p], &us[p], None)).collect::<Result<Vec<_>>>()?;
    let map = SheafMap::new(&src, &dst, comps)?;
    let (hs, hd) = (src.cohomology(1), dst.cohomology(1));
    let induced = map.induced(&hs, &hd);
    Ok(CheckVerdict { lhs: hs.presented(), rhs: hd.presented(), map_is_isomorphism: Some(induced.is_isomorphism()) })
}
