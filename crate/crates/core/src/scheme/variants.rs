use super::MonoidScheme;
use crate::error::{Error, Result};
use crate::ideal::primes_intersection;
use crate::lattice::FaceDescriptor;
use crate::monoid::{AffineMonoid, PcMonoid};

/// Closed subschemes `X′` (closure of the first generic point), `X″` (union
/// of the closures of the others) and `X‴ = X′ ∩ X″`, with the indices in
/// `X` of their points.
#[derive(Clone, Debug)]
pub struct ComponentsDecomposition {
    pub first: MonoidScheme,
    pub rest: MonoidScheme,
    pub meet: MonoidScheme,
    pub first_points: Vec<usize>,
    pub rest_points: Vec<usize>,
    pub meet_points: Vec<usize>,
}

pub fn components_decomposition(x: &MonoidScheme) -> Result<ComponentsDecomposition> {
    let generic = x.generic_points();
    if generic.len() < 2 {
        return Err(Error::Precondition("the scheme is irreducible".into()));
    }
    if !x.is_reduced() {
        return Err(Error::Precondition("the scheme is not reduced".into()));
    }
    let eta = generic[0];
    let others = &generic[1..];
    let (first, first_points) = x.component_closure(eta)?;

    let face_of = |p: usize, g: usize| -> Option<FaceDescriptor> { x.generization(p, g).map(|e| e.face.clone()) };

    let rest_points: Vec<usize> =
        (0..x.len()).filter(|&p| others.iter().any(|&g| x.specializes_to(g, p))).collect();
    let mut rest_stalks = Vec::new();
    for &p in &rest_points {
        let c = x.stalk(p).cancellative();
        let faces: Vec<FaceDescriptor> = others.iter().filter_map(|&g| face_of(p, g)).collect();
        let ideal = primes_intersection(c, &faces);
        rest_stalks.push(PcMonoid::new(c, ideal.generators())?);
    }
    let rest = x.restrict_with_stalks(&rest_points, rest_stalks)?;

    let meet_points: Vec<usize> = rest_points.iter().copied().filter(|p| first_points.contains(p)).collect();
    let mut meet_stalks = Vec::new();
    for &p in &meet_points {
        let f1 = face_of(p, eta).expect("p lies in the first component");
        let c: AffineMonoid = x.stalk(p).cancellative().face_monoid(&f1)?;
        let faces: Vec<FaceDescriptor> = others
            .iter()
            .filter_map(|&g| face_of(p, g))
            .map(|fj| {
                let on_both: Vec<_> = c.generators().iter().filter(|e| fj.contains(&e.free)).cloned().collect();
                c.face_of_elements(&on_both)
            })
            .collect();
        let ideal = primes_intersection(&c, &faces);
        meet_stalks.push(PcMonoid::new(&c, ideal.generators())?);
    }
    let meet = x.restrict_with_stalks(&meet_points, meet_stalks)?;
    Ok(ComponentsDecomposition { first, rest, meet, first_points, rest_points, meet_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::GroupElement;
    use crate::scheme::mspec_scheme;

    #[test]
    fn axes_decompose() {
        let c = AffineMonoid::free_commutative(2);
        let axes = mspec_scheme(&PcMonoid::new(&c, &[GroupElement::free(&[1, 1])]).unwrap()).unwrap();
        let d = components_decomposition(&axes).unwrap();
        assert_eq!(d.first.len(), 2);
        assert_eq!(d.rest.len(), 2);
        assert_eq!(d.meet.len(), 1);
        assert!(d.first.is_cancellative());
        let (nor, below) = axes.normalized().unwrap();
        assert_eq!(nor.len(), 4);
        assert_eq!(nor.connected_components().len(), 2);
        assert_eq!(below.len(), 4);
    }
}
