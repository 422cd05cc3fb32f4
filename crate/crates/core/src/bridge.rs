//! Conversions from the crate's types into the plain inputs of
//! [`crate::oracle`].

use std::collections::BTreeMap;

use crate::divisor::{units_sheaf, PosetSheaf};
use crate::error::Result;
use crate::ideal::{MonoidIdeal, PrimeIdeal};
use crate::lattice::{FpGroup, IntMatrix, PresentedAbGroup};
use crate::monoid::{AffineMonoid, GroupElement};
use crate::oracle::{verify, Claim, EnumerationBudget, Ideal, RawGroup, RawMonoid, RawSheaf, Verdict};
use crate::scheme::MonoidScheme;

pub fn raw_element(g: &GroupElement) -> Vec<i64> {
    g.flat()
}

pub fn raw_monoid(a: &AffineMonoid) -> RawMonoid {
    RawMonoid {
        rank: a.ambient().rank(),
        torsion: a.ambient().torsion().to_vec(),
        generators: a.generators().iter().map(raw_element).collect(),
    }
}

pub fn raw_ideal(i: &MonoidIdeal) -> Ideal {
    i.generators().iter().map(raw_element).collect()
}

pub fn raw_prime(parent: &AffineMonoid, p: &PrimeIdeal) -> Ideal {
    raw_ideal(&p.as_ideal(parent))
}

pub fn raw_group(g: &PresentedAbGroup) -> RawGroup {
    RawGroup { rank: g.rank, invariant_factors: g.invariant_factors.clone() }
}

/// `𝒜^× ⊗ ℤ/m`, both as a sheaf for the cohomology engine and as plain
/// data for the oracle.
pub fn units_mod(x: &MonoidScheme, m: i64) -> Result<(PosetSheaf, RawSheaf)> {
    let units = units_sheaf(x)?;
    let groups = crate::divisor::unit_groups(x);
    let moduli: Vec<Vec<i64>> = groups
        .iter()
        .map(|s| s.orders().iter().map(|&d| num_integer::gcd(d, m)).collect())
        .collect();
    let mut maps = BTreeMap::new();
    let mut raw_maps = BTreeMap::new();
    for (p, open) in units.opens().iter().enumerate() {
        for &q in open {
            if q != p {
                let r = units.restriction(p, q);
                raw_maps.insert((p, q), r.to_i64_rows());
                maps.insert((p, q), r);
            }
        }
    }
    let stalks = moduli
        .iter()
        .map(|ms| {
            let cols: Vec<Vec<i64>> = ms
                .iter()
                .enumerate()
                .map(|(i, &d)| {
                    let mut c = vec![0; ms.len()];
                    c[i] = d;
                    c
                })
                .collect();
            FpGroup::new(IntMatrix::from_cols(ms.len(), &cols))
        })
        .collect();
    let sheaf = PosetSheaf::new(units.opens().to_vec(), stalks, maps)?;
    Ok((sheaf, RawSheaf { opens: units.opens().to_vec(), moduli, maps: raw_maps }))
}

/// Compares `Hᵖ(𝒜^× ⊗ ℤ/m)` from the cohomology engine with the oracle's
/// cochain enumeration, for `p = 0, 1`.
pub fn verify_units_mod(x: &MonoidScheme, m: i64, budget: &EnumerationBudget) -> Result<Vec<Verdict>> {
    let (sheaf, raw) = units_mod(x, m)?;
    Ok((0..=1)
        .map(|p| {
            let group = raw_group(&sheaf.cohomology(p).presented());
            verify(&Claim::Cohomology { sheaf: raw.clone(), degree: p, group }, budget)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn engine_matches_enumeration_mod_small_primes() {
        let budget = EnumerationBudget::new(0);
        for x in [corpus::projective(1), corpus::projective(2), corpus::torsion_projective_line(&[2]).unwrap()] {
            for m in [2, 3] {
                for v in verify_units_mod(&x, m, &budget).unwrap() {
                    assert_eq!(v, Verdict::Confirmed { up_to_degree: None });
                }
            }
        }
    }
}
