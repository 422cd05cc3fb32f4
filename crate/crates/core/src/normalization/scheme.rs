use super::normalize;
use crate::error::Result;
use crate::ideal::mspec;
use crate::monoid::{AffineMonoid, MonoidElement, PcMonoid};
use crate::scheme::{mspec_scheme, MonoidScheme};

/// Product of pointed monoids `M₁ × … × M_k` (each with its basepoint).
#[derive(Clone, Debug)]
pub struct PointedProduct {
    pub factors: Vec<AffineMonoid>,
}

impl PointedProduct {
    /// Generators: the idempotents with exactly one zero entry, and each
    /// factor's generators placed in one slot with `1` elsewhere.
    pub fn generators(&self) -> Vec<Vec<MonoidElement>> {
        let k = self.factors.len();
        let one = |i: usize| MonoidElement::Elem(self.factors[i].ambient().zero());
        let mut out = Vec::new();
        if k > 1 {
            for skip in 0..k {
                out.push((0..k).map(|i| if i == skip { MonoidElement::Zero } else { one(i) }).collect());
            }
        }
        for (slot, m) in self.factors.iter().enumerate() {
            for g in m.generators() {
                out.push(
                    (0..k).map(|i| if i == slot { MonoidElement::Elem(g.clone()) } else { one(i) }).collect(),
                );
            }
        }
        out
    }

    pub fn contains(&self, tuple: &[MonoidElement]) -> bool {
        tuple.len() == self.factors.len()
            && tuple.iter().zip(&self.factors).all(|(a, m)| match a {
                MonoidElement::Zero => true,
                MonoidElement::Elem(g) => m.contains(g),
            })
    }
}

#[derive(Clone, Debug)]
pub struct NormalizationComponent {
    /// Generic point of `MSpec(A)` this component lies over.
    pub generic_point: usize,
    /// `(A/𝔭)_nor`.
    pub monoid: AffineMonoid,
}

#[derive(Clone, Debug)]
pub struct NormalizationScheme {
    pub scheme: MonoidScheme,
    /// For each point of `scheme`, the point of `MSpec(A)` below it.
    pub below: Vec<usize>,
    pub components: Vec<NormalizationComponent>,
    pub global_sections: PointedProduct,
}

/// `⊔ MSpec((A/𝔭)_nor)` over the minimal primes `𝔭` of `A`.
pub fn normalization_scheme(a: &PcMonoid) -> Result<NormalizationScheme> {
    let x = mspec_scheme(a)?;
    let (scheme, below) = x.normalized()?;
    let spec = mspec(a);
    let mut components = Vec::new();
    for eta in x.generic_points() {
        let face = &spec.points[eta].face;
        let monoid = normalize(&a.cancellative().face_monoid(face)?);
        components.push(NormalizationComponent { generic_point: eta, monoid });
    }
    let global_sections = PointedProduct { factors: components.iter().map(|c| c.monoid.clone()).collect() };
    Ok(NormalizationScheme { scheme, below, components, global_sections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::GroupElement;

    #[test]
    fn axes() {
        let c = AffineMonoid::free_commutative(2);
        let a = PcMonoid::new(&c, &[GroupElement::free(&[1, 1])]).unwrap();
        let n = normalization_scheme(&a).unwrap();
        assert_eq!(n.components.len(), 2);
        assert_eq!(n.scheme.len(), 4);
        let gens = n.global_sections.generators();
        assert_eq!(gens.len(), 4);
        assert!(gens.iter().all(|t| n.global_sections.contains(t)));
    }

    #[test]
    fn numerical_semigroup() {
        let a = PcMonoid::from_cancellative(&AffineMonoid::from_vectors(1, &[vec![2], vec![3]]).unwrap());
        let n = normalization_scheme(&a).unwrap();
        assert_eq!(n.components.len(), 1);
        assert!(n.components[0].monoid.same_as(&AffineMonoid::free_commutative(1)));
        assert_eq!(n.scheme.len(), 2);
    }
}
