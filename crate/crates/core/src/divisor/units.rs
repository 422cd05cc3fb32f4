use std::collections::BTreeMap;

use super::sheaf::{PosetSheaf, SheafMap};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, PresentedAbGroup};
use crate::monoid::{GroupElement, GroupHom, Subgroup};
use crate::scheme::MonoidScheme;

/// Coordinates, in `to`, of the images of the adapted basis of `from`.
pub(crate) fn subgroup_map(from: &Subgroup, to: &Subgroup, map: Option<&GroupHom>) -> Result<IntMatrix> {
    let cols = from
        .basis()
        .iter()
        .map(|b| {
            let image = map.map_or_else(|| b.clone(), |m| m.apply(b));
            to.coordinates(&image)
                .ok_or_else(|| Error::Precondition(format!("{image} does not lie in the target group")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_cols(to.basis().len(), &cols))
}

/// The sheaf `x ↦ S_x` for subgroups `S_x` of the stalk ambients that are
/// carried into each other by the generization maps.
pub(crate) fn subgroup_sheaf(x: &MonoidScheme, groups: &[Subgroup]) -> Result<PosetSheaf> {
    let opens: Vec<Vec<usize>> = (0..x.len()).map(|p| x.open_of(p)).collect();
    let mut maps = BTreeMap::new();
    for p in 0..x.len() {
        for g in x.generizations(p) {
            if g.target != p {
                maps.insert((p, g.target), subgroup_map(&groups[p], &groups[g.target], Some(&g.map))?);
            }
        }
    }
    PosetSheaf::new(opens, groups.iter().map(Subgroup::as_fp_group).collect(), maps)
}

pub(crate) fn unit_groups(x: &MonoidScheme) -> Vec<Subgroup> {
    x.stalks()
        .iter()
        .map(|s| {
            let c = s.cancellative();
            if s.is_zero_monoid() {
                Subgroup::trivial(c.ambient())
            } else {
                c.units().clone()
            }
        })
        .collect()
}

/// `𝒜^×`: the stalk at `x` is the unit group of `𝒜_x`.
pub fn units_sheaf(x: &MonoidScheme) -> Result<PosetSheaf> {
    subgroup_sheaf(x, &unit_groups(x))
}

/// `Pic(X) = H¹(X, 𝒜^×)`.
pub fn picard_group(x: &MonoidScheme) -> Result<PresentedAbGroup> {
    Ok(units_sheaf(x)?.cohomology(1).presented())
}

/// `𝒜(X)^× = H⁰(X, 𝒜^×)`.
pub fn global_units(x: &MonoidScheme) -> Result<PresentedAbGroup> {
    Ok(units_sheaf(x)?.cohomology(0).presented())
}

/// The pushforward of the units sheaf of `y` along a map onto `x` given
/// by the point of `x` below each point of `y`, together with the natural
/// map from `𝒜_X^×`. Elements are compared inside the stalk ambients,
/// which must agree for a point and the points above it, up to `embed`.
pub(crate) fn pushforward_units(
    x: &MonoidScheme,
    y: &MonoidScheme,
    below: &[usize],
    embed: impl Fn(usize, &GroupElement) -> GroupElement,
) -> Result<(PosetSheaf, SheafMap)> {
    let over: Vec<Vec<usize>> = (0..x.len()).map(|p| (0..y.len()).filter(|&q| below[q] == p).collect()).collect();
    let y_units = unit_groups(y);
    let pushed = units_sheaf(y)?.pushforward(&(0..x.len()).map(|p| x.open_of(p)).collect::<Vec<_>>(), &over)?;
    let x_units = unit_groups(x);
    let source = subgroup_sheaf(x, &x_units)?;
    let mut comps = Vec::with_capacity(x.len());
    for p in 0..x.len() {
        let mut m = IntMatrix::zeros(0, x_units[p].basis().len());
        for &q in &over[p] {
            let cols = x_units[p]
                .basis()
                .iter()
                .map(|b| {
                    let image = embed(q, b);
                    y_units[q]
                        .coordinates(&image)
                        .ok_or_else(|| Error::Precondition(format!("unit {image} does not map to a unit above")))
                })
                .collect::<Result<Vec<_>>>()?;
            m = m.vcat(&IntMatrix::from_cols(y_units[q].basis().len(), &cols));
        }
        comps.push(m);
    }
    let map = SheafMap::new(&source, &pushed, comps)?;
    Ok((pushed, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{AffineMonoid, PcMonoid};
    use crate::scheme::{mspec_scheme, projective_space};

    #[test]
    fn projective_spaces() {
        for n in 1..=3 {
            let p = projective_space(n).unwrap();
            assert_eq!(picard_group(&p).unwrap(), PresentedAbGroup::free(1), "Pic(P^{n})");
            assert_eq!(global_units(&p).unwrap(), PresentedAbGroup::trivial());
        }
    }

    #[test]
    fn affine_schemes_have_trivial_picard_group() {
        let cone = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 1], vec![1, 2]]).unwrap();
        let x = mspec_scheme(&PcMonoid::from_cancellative(&cone)).unwrap();
        assert!(picard_group(&x).unwrap().is_trivial());
        let laurent = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]).unwrap();
        let y = mspec_scheme(&PcMonoid::from_cancellative(&laurent)).unwrap();
        assert!(picard_group(&y).unwrap().is_trivial());
        assert_eq!(global_units(&y).unwrap(), PresentedAbGroup::free(1));
    }
}
