use std::collections::BTreeSet;

use super::{Generization, MonoidScheme};
use crate::error::{Error, Result};
use crate::lattice::{dot, hilbert_basis, primitive, RationalCone};
use crate::monoid::{AffineMonoid, GroupElement, GroupHom, PcMonoid};

/// A rational polyhedral fan in `ℤ^rank`, closed under taking faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    /// Every cone as a sorted set of ray indices, including the zero cone,
    /// sorted by dimension and then lexicographically.
    cones: Vec<BTreeSet<usize>>,
}

impl Fan {
    /// Builds a fan from its rays and a list of cones (any generating list;
    /// faces are added).
    pub fn new(rank: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Self> {
        for r in rays {
            if r.len() != rank {
                return Err(Error::InvalidFan(format!("ray {r:?} does not have length {rank}")));
            }
            if r.iter().all(|&v| v == 0) {
                return Err(Error::InvalidFan("zero ray".into()));
            }
        }
        let rays: Vec<Vec<i64>> = rays.iter().map(|r| primitive(r)).collect();
        let distinct: BTreeSet<&Vec<i64>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::InvalidFan("repeated ray".into()));
        }
        let mut all: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        all.insert(BTreeSet::new());
        for c in cones {
            let set: BTreeSet<usize> = c.iter().copied().collect();
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone refers to missing ray {bad}")));
            }
            let vecs: Vec<Vec<i64>> = set.iter().map(|&i| rays[i].clone()).collect();
            let cone = RationalCone::new(rank, &vecs);
            if !cone.is_pointed() {
                return Err(Error::InvalidFan(format!("cone {c:?} is not strongly convex")));
            }
            // every listed ray must span an extreme ray
            let idx: Vec<usize> = set.iter().copied().collect();
            for face in cone.face_lattice() {
                let members: BTreeSet<usize> = face.rays.iter().map(|&k| ray_index(&rays, &cone.rays()[k])).collect();
                let members: BTreeSet<usize> = members.into_iter().filter(|i| set.contains(i)).collect();
                if face.dim == 1 && members.len() != 1 {
                    return Err(Error::InvalidFan(format!("cone {c:?} lists a ray that is not extreme")));
                }
                all.insert(members);
            }
            if cone.rays().len() != idx.len() {
                return Err(Error::InvalidFan(format!("cone {c:?} lists a ray that is not extreme")));
            }
        }
        let mut cones: Vec<BTreeSet<usize>> = all.into_iter().collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let fan = Fan { rank, rays, cones };
        fan.check_intersections()?;
        Ok(fan)
    }

    /// The fan of `ℙⁿ`: rays `e₁, …, eₙ, −Σeᵢ`, all proper subsets as cones.
    pub fn projective_space(n: usize) -> Result<Self> {
        if n == 0 {
            return Fan::new(0, &[], &[]);
        }
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        rays.push(vec![-1; n]);
        let cones: Vec<Vec<usize>> =
            (0..=n).map(|skip| (0..=n).filter(|&k| k != skip).collect()).collect();
        Fan::new(n, &rays, &cones)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[BTreeSet<usize>] {
        &self.cones
    }

    /// Cones not contained in any other cone.
    pub fn maximal_cones(&self) -> Vec<&BTreeSet<usize>> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d != *c && c.is_subset(d)))
            .collect()
    }

    fn cone_vectors(&self, c: &BTreeSet<usize>) -> Vec<Vec<i64>> {
        c.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Is `σ ∩ τ` the cone on the common rays, for all pairs of cones?
    fn check_intersections(&self) -> Result<()> {
        let maxes = self.maximal_cones();
        for (i, a) in maxes.iter().enumerate() {
            for b in &maxes[i + 1..] {
                let sa = RationalCone::new(self.rank, &self.cone_vectors(a));
                let sb = RationalCone::new(self.rank, &self.cone_vectors(b));
                let mut dual = sa.dual_generators();
                dual.extend(sb.dual_generators());
                let meet_dual = RationalCone::new(self.rank, &dual);
                let common: BTreeSet<usize> = a.intersection(b).copied().collect();
                let common_cone = RationalCone::new(self.rank, &self.cone_vectors(&common));
                // generators of σ ∩ τ are the dual generators of the dual cone
                let meet_gens = meet_dual.dual_generators();
                if !meet_gens.iter().all(|v| common_cone.contains(v)) {
                    return Err(Error::InvalidFan(format!("cones {a:?} and {b:?} overlap in their interiors")));
                }
                if !self.cones.contains(&common) {
                    return Err(Error::InvalidFan(format!("{common:?} is not a face of {a:?} and {b:?}")));
                }
            }
        }
        Ok(())
    }
}

fn ray_index(rays: &[Vec<i64>], r: &[i64]) -> usize {
    rays.iter().position(|x| x == r).expect("cone rays come from the fan")
}

/// The monoid scheme `X_Δ`: one point per cone, stalk `σ^∨ ∩ M`.
pub fn from_fan(fan: &Fan) -> Result<MonoidScheme> {
    let n = fan.rank;
    let ambient = crate::monoid::AmbientGroup::free(n);
    let lattice: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut stalks = Vec::new();
    for c in &fan.cones {
        let sigma = RationalCone::new(n, &fan.cone_vectors(c));
        let dual = RationalCone::new(n, &sigma.dual_generators());
        let hb = hilbert_basis(&dual, &lattice)?;
        stalks.push(PcMonoid::from_cancellative(&AffineMonoid::from_vectors(n, &hb)?));
    }
    let mut gens = Vec::new();
    for (x, c) in fan.cones.iter().enumerate() {
        let stalk = stalks[x].cancellative();
        let mut list = Vec::new();
        for (y, d) in fan.cones.iter().enumerate() {
            if !d.is_subset(c) {
                continue;
            }
            let tau = fan.cone_vectors(d);
            let perp: Vec<GroupElement> = stalk
                .generators()
                .iter()
                .filter(|g| tau.iter().all(|r| dot(r, &g.free) == 0))
                .cloned()
                .collect();
            let face = stalk.face_of_elements(&perp);
            list.push(Generization { target: y, face, map: GroupHom::identity(&ambient) });
        }
        gens.push(list);
    }
    let labels = fan
        .cones
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    MonoidScheme::from_parts(stalks, gens, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_spaces() {
        let p1 = from_fan(&Fan::projective_space(1).unwrap()).unwrap();
        assert_eq!(p1.len(), 3);
        let p2 = from_fan(&Fan::projective_space(2).unwrap()).unwrap();
        assert_eq!(p2.len(), 7);
        assert!(p2.is_separated());
        assert!(p2.is_normal());
        assert_eq!(p2.height_one_points().len(), 3);
    }

    #[test]
    fn affine_line_fan() {
        let f = Fan::new(1, &[vec![1]], &[vec![0]]).unwrap();
        let x = from_fan(&f).unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.is_affine());
    }

    #[test]
    fn invalid_fans() {
        // overlapping cones
        assert!(Fan::new(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], &[vec![0, 1], vec![0, 2]]).is_err());
        // not strongly convex
        assert!(Fan::new(1, &[vec![1], vec![-1]], &[vec![0, 1]]).is_err());
    }
}
