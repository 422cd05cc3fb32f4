//! Monoid schemes of finite type, stored as a finite specialization poset
//! with a pc monoid at every point.

mod build;
mod fan;
mod variants;

pub use build::{glue, mspec_scheme, product, projective_space, Identification};
pub use fan::{from_fan, Fan};
pub use variants::{components_decomposition, ComponentsDecomposition};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::FaceDescriptor;
use crate::monoid::{AffineMonoid, GroupElement, GroupHom, PcMonoid};
use crate::normalization::{is_normal, normalize, seminormalize_pc};

/// `y` is a generization of `x`: the stalk at `y` is the localization of
/// the stalk at `x` at the prime `𝔭_F`, transported along `map`.
#[derive(Clone, Debug)]
pub struct Generization {
    pub target: usize,
    pub face: FaceDescriptor,
    pub map: GroupHom,
}

#[derive(Clone, Debug)]
pub struct MonoidScheme {
    stalks: Vec<PcMonoid>,
    /// `gens[x]` describes the minimal open `U_x`, sorted by target and
    /// including `x` itself.
    gens: Vec<Vec<Generization>>,
    labels: Vec<String>,
}

impl MonoidScheme {
    /// Builds and validates a scheme from explicit data.
    pub fn from_parts(stalks: Vec<PcMonoid>, gens: Vec<Vec<Generization>>, labels: Vec<String>) -> Result<Self> {
        if gens.len() != stalks.len() || labels.len() != stalks.len() {
            return Err(Error::InvalidScheme("point data lengths differ".into()));
        }
        let mut gens = gens;
        for g in &mut gens {
            g.sort_by_key(|e| e.target);
        }
        let x = MonoidScheme { stalks, gens, labels };
        x.validate()?;
        Ok(x)
    }

    /// Builds a scheme whose generization maps are all identities; the face
    /// of each generization is inferred from the generators that become units.
    pub fn with_identity_maps(stalks: Vec<PcMonoid>, opens: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let mut gens = Vec::with_capacity(stalks.len());
        for (x, open) in opens.iter().enumerate() {
            let c = stalks[x].cancellative();
            let mut list = Vec::new();
            for &y in open {
                let cy = stalks.get(y).ok_or_else(|| Error::InvalidScheme(format!("no point {y}")))?;
                if cy.cancellative().ambient() != c.ambient() {
                    return Err(Error::InvalidScheme(format!("points {x} and {y} have different ambient groups")));
                }
                let inverted: Vec<GroupElement> = c
                    .generators()
                    .iter()
                    .filter(|g| cy.cancellative().contains(&c.ambient().neg(g)))
                    .cloned()
                    .collect();
                let face = c.face_of_elements(&inverted);
                list.push(Generization { target: y, face, map: GroupHom::identity(c.ambient()) });
            }
            if !open.contains(&x) {
                list.push(Generization { target: x, face: c.bottom_face(), map: GroupHom::identity(c.ambient()) });
            }
            gens.push(list);
        }
        Self::from_parts(stalks, gens, labels)
    }

    pub fn len(&self) -> usize {
        self.stalks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stalks.is_empty()
    }

    pub fn stalk(&self, x: usize) -> &PcMonoid {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[PcMonoid] {
        &self.stalks
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The minimal open neighbourhood `U_x`, including `x`.
    pub fn generizations(&self, x: usize) -> &[Generization] {
        &self.gens[x]
    }

    pub fn generization(&self, x: usize, y: usize) -> Option<&Generization> {
        self.gens[x].iter().find(|g| g.target == y)
    }

    /// `y ∈ U_x`, i.e. `x` lies in the closure of `y`.
    pub fn specializes_to(&self, y: usize, x: usize) -> bool {
        self.generization(x, y).is_some()
    }

    pub fn open_of(&self, x: usize) -> Vec<usize> {
        self.gens[x].iter().map(|g| g.target).collect()
    }

    /// Closure of `{y}`: all points `x` with `y ∈ U_x`.
    pub fn closure(&self, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.specializes_to(y, x)).collect()
    }

    pub fn generic_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.gens[x].len() == 1).collect()
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.closure(x).len() == 1).collect()
    }

    /// Length of the longest chain of proper generizations starting at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.gens[x]
            .iter()
            .filter(|g| g.target != x)
            .map(|g| 1 + self.height(g.target))
            .max()
            .unwrap_or(0)
    }

    pub fn height_one_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.height(x) == 1).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Connected components as sorted point sets.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(x) = stack.pop() {
                members.push(x);
                let nbrs = self.open_of(x).into_iter().chain(self.closure(x));
                for y in nbrs {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.generic_points().len() == 1
    }

    /// Irreducible with cancellative stalks.
    pub fn is_cancellative(&self) -> bool {
        self.is_irreducible() && self.stalks.iter().all(|s| s.is_cancellative())
    }

    pub fn is_reduced(&self) -> bool {
        self.stalks.iter().all(|s| crate::ideal::nil_and_reduced(s).reduced)
    }

    /// Cancellative normal stalks everywhere.
    pub fn is_normal(&self) -> bool {
        self.stalks.iter().all(|s| s.is_cancellative() && is_normal(s.cancellative()))
    }

    pub fn is_affine(&self) -> bool {
        (0..self.len()).any(|x| self.gens[x].len() == self.len())
    }

    /// Whenever `U_x ∩ U_y` is nonempty it is some `U_z` and `A_z` is
    /// generated by the images of `A_x` and `A_y`.
    pub fn is_separated(&self) -> bool {
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                let ux: BTreeSet<usize> = self.open_of(x).into_iter().collect();
                let uy: BTreeSet<usize> = self.open_of(y).into_iter().collect();
                let common: BTreeSet<usize> = ux.intersection(&uy).copied().collect();
                if common.is_empty() {
                    continue;
                }
                let z = common.iter().copied().find(|&z| {
                    let uz: BTreeSet<usize> = self.open_of(z).into_iter().collect();
                    uz == common
                });
                let Some(z) = z else { return false };
                let cz = self.stalks[z].cancellative();
                let mut images: Vec<GroupElement> = Vec::new();
                for (p, g) in [(x, self.generization(x, z)), (y, self.generization(y, z))] {
                    let g = g.expect("z lies in both opens");
                    images.extend(self.stalks[p].cancellative().generators().iter().map(|e| g.map.apply(e)));
                }
                let Ok(generated) = AffineMonoid::new(cz.ambient(), &images) else { return false };
                if !generated.same_as(cz) {
                    return false;
                }
            }
        }
        true
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            let stalk = &self.stalks[x];
            let list = &self.gens[x];
            if list.windows(2).any(|w| w[0].target == w[1].target) {
                return Err(Error::InvalidScheme(format!("point {x} lists a generization twice")));
            }
            if list.iter().any(|g| g.target >= n) {
                return Err(Error::InvalidScheme(format!("point {x} refers to a missing point")));
            }
            let mut faces: Vec<FaceDescriptor> = stalk.prime_faces();
            if faces.len() != list.len() {
                return Err(Error::InvalidScheme(format!(
                    "U_{x} has {} points but the stalk has {} primes",
                    list.len(),
                    faces.len()
                )));
            }
            for g in list {
                stalk.check_prime_face(&g.face).map_err(|e| Error::InvalidScheme(format!("at {x}: {e}")))?;
                faces.retain(|f| f != &g.face);
                if g.map.source != *stalk.cancellative().ambient() {
                    return Err(Error::InvalidScheme(format!("map {x}->{} has the wrong source", g.target)));
                }
                if g.map.target != *self.stalks[g.target].cancellative().ambient() {
                    return Err(Error::InvalidScheme(format!("map {x}->{} has the wrong target", g.target)));
                }
                let local = stalk.localize(&g.face)?.transport(&g.map)?;
                if !local.same_as(&self.stalks[g.target]) {
                    return Err(Error::InvalidScheme(format!(
                        "stalk at {} is not the localization of the stalk at {x}",
                        g.target
                    )));
                }
                let loc_gp = stalk.cancellative().localize(&g.face)?.group_completion();
                let img: Vec<GroupElement> = loc_gp.generators().iter().map(|e| g.map.apply(e)).collect();
                let img_gp = crate::monoid::Subgroup::new(&g.map.target, &img);
                if img_gp.presented() != loc_gp.presented() {
                    return Err(Error::InvalidScheme(format!("map {x}->{} is not injective", g.target)));
                }
            }
            if !faces.is_empty() {
                return Err(Error::InvalidScheme(format!("U_{x} misses some primes of its stalk")));
            }
            // order: z ∈ U_y iff F_y ⊆ F_z, and U_y ⊆ U_x
            for gy in list {
                for gz in list {
                    let expected = gy.face.is_subface_of(&gz.face);
                    if self.specializes_to(gz.target, gy.target) != expected {
                        return Err(Error::InvalidScheme(format!(
                            "order on U_{x} disagrees with its stalk between {} and {}",
                            gy.target, gz.target
                        )));
                    }
                    if expected {
                        let via = self.generization(gy.target, gz.target).expect("checked above");
                        for e in stalk.cancellative().generators() {
                            if via.map.apply(&gy.map.apply(e)) != gz.map.apply(e) {
                                return Err(Error::InvalidScheme(format!(
                                    "maps {x}->{}->{} do not compose",
                                    gy.target, gz.target
                                )));
                            }
                        }
                    }
                }
                for z in self.open_of(gy.target) {
                    if !self.specializes_to(z, x) {
                        return Err(Error::InvalidScheme(format!("U_{} is not inside U_{x}", gy.target)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Disjoint union; point indices are concatenated.
    pub fn disjoint_union(parts: &[MonoidScheme]) -> Result<MonoidScheme> {
        let mut stalks = Vec::new();
        let mut gens = Vec::new();
        let mut labels = Vec::new();
        let mut offset = 0;
        for (k, p) in parts.iter().enumerate() {
            stalks.extend(p.stalks.iter().cloned());
            for list in &p.gens {
                gens.push(
                    list.iter()
                        .map(|g| Generization { target: g.target + offset, face: g.face.clone(), map: g.map.clone() })
                        .collect(),
                );
            }
            labels.extend(p.labels.iter().map(|l| if parts.len() > 1 { format!("{k}:{l}") } else { l.clone() }));
            offset += p.len();
        }
        MonoidScheme::from_parts(stalks, gens, labels)
    }

    /// The subscheme on a set of points closed under generization in each
    /// `U_x`, with new stalks supplied per point. Generization faces are
    /// recomputed in the new stalks from the generators lying on the old
    /// faces.
    pub(crate) fn restrict_with_stalks(&self, points: &[usize], stalks: Vec<PcMonoid>) -> Result<MonoidScheme> {
        let index = |p: usize| points.iter().position(|&q| q == p);
        let mut gens = Vec::new();
        for (i, &x) in points.iter().enumerate() {
            let new = stalks[i].cancellative();
            let mut list = Vec::new();
            for g in &self.gens[x] {
                let Some(j) = index(g.target) else { continue };
                let on_face: Vec<GroupElement> =
                    new.generators().iter().filter(|e| g.face.contains(&e.free)).cloned().collect();
                let face = new.face_of_elements(&on_face);
                list.push(Generization { target: j, face, map: g.map.clone() });
            }
            gens.push(list);
        }
        let labels = points.iter().map(|&x| self.labels[x].clone()).collect();
        MonoidScheme::from_parts(stalks, gens, labels)
    }

    /// `X_red`: stalks `C/√I` on the same space.
    pub fn reduced(&self) -> Result<MonoidScheme> {
        let stalks = self.stalks.iter().map(|s| crate::ideal::nil_and_reduced(s).reduced_monoid()).collect();
        let all: Vec<usize> = (0..self.len()).collect();
        self.restrict_with_stalks(&all, stalks)
    }

    /// `X_sn`: stalkwise seminormalization on the same space.
    pub fn seminormalized(&self, degree_bound: Option<i64>) -> Result<MonoidScheme> {
        let stalks = self.stalks.iter().map(|s| seminormalize_pc(s, degree_bound)).collect();
        let all: Vec<usize> = (0..self.len()).collect();
        self.restrict_with_stalks(&all, stalks)
    }

    /// `X_nor`: the disjoint union over generic points `η` of the
    /// normalization of the closure of `η`. Returns the scheme and, for each
    /// of its points, the point of `X` below it.
    pub fn normalized(&self) -> Result<(MonoidScheme, Vec<usize>)> {
        let mut parts = Vec::new();
        let mut below = Vec::new();
        for eta in self.generic_points() {
            let (sub, pts) = self.component_closure(eta)?;
            let stalks = sub.stalks.iter().map(|s| PcMonoid::from_cancellative(&normalize(s.cancellative()))).collect();
            let all: Vec<usize> = (0..sub.len()).collect();
            parts.push(sub.restrict_with_stalks(&all, stalks)?);
            below.extend(pts);
        }
        Ok((MonoidScheme::disjoint_union(&parts)?, below))
    }

    /// The reduced closure of a generic point `η`, with stalks the face
    /// monoids `C_x ∩ F_η`. Also returns the embedding of points.
    pub fn component_closure(&self, eta: usize) -> Result<(MonoidScheme, Vec<usize>)> {
        let pts = self.closure(eta);
        let stalks = pts
            .iter()
            .map(|&x| {
                let g = self.generization(x, eta).expect("x lies in the closure");
                self.stalks[x].quotient_by_prime(&g.face).map(|c| PcMonoid::from_cancellative(&c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((self.restrict_with_stalks(&pts, stalks)?, pts))
    }

    /// Poset isomorphism compatible with stalks (compared inside a common
    /// ambient group when the ambients agree, by unit groups otherwise).
    pub fn is_isomorphic(&self, other: &MonoidScheme) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.iso_search(other, 0, &mut perm, &mut used)
    }

    fn iso_search(&self, other: &MonoidScheme, x: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = self.len();
        if x == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || self.gens[x].len() != other.gens[cand].len() || !stalks_match(&self.stalks[x], &other.stalks[cand]) {
                continue;
            }
            let consistent = (0..x).all(|y| {
                self.specializes_to(y, x) == other.specializes_to(perm[y], cand)
                    && self.specializes_to(x, y) == other.specializes_to(cand, perm[y])
            });
            if !consistent {
                continue;
            }
            perm[x] = cand;
            used[cand] = true;
            if self.iso_search(other, x + 1, perm, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
}

fn stalks_match(a: &PcMonoid, b: &PcMonoid) -> bool {
    let (ca, cb) = (a.cancellative(), b.cancellative());
    if ca.ambient() == cb.ambient() {
        return a.same_as(b);
    }
    ca.units().presented() == cb.units().presented()
        && ca.dimension() == cb.dimension()
        && a.prime_faces().len() == b.prime_faces().len()
}
