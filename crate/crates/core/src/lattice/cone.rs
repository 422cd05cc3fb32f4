use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;



use super::group::abs_gcd;
use super::matrix::IntMatrix;
use super::snf::{integer_kernel, rank};

/// A face of a [`RationalCone`], identified by the facets that contain it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceDescriptor {
    /// Supporting facet normals (sorted). Empty for the whole cone.
    pub normals: Vec<Vec<i64>>,
    /// Indices of the cone's rays lying on the face.
    pub rays: BTreeSet<usize>,
    pub dim: usize,
}

impl FaceDescriptor {
    /// `self ⊆ other` as faces.
    pub fn is_subface_of(&self, other: &FaceDescriptor) -> bool {
        self.rays.is_subset(&other.rays) && other.normals.iter().all(|n| self.normals.contains(n))
    }

    /// Does the free vector `x` (assumed in the cone) lie on this face?
    pub fn contains(&self, x: &[i64]) -> bool {
        self.normals.iter().all(|n| dot(n, x) == 0)
    }
}

/// Cone in `ℚ^dim` generated by finitely many integer rays, with its facet
/// description computed on construction and cross-checked against the rays.
#[derive(Clone, Debug)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    /// Basis of the orthogonal complement of the linear span.
    equations: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    span_dim: usize,
    faces: OnceLock<Vec<FaceDescriptor>>,
}

impl RationalCone {
    /// Rays are made primitive and deduplicated; zero vectors are dropped.
    pub fn new(dim: usize, rays: &[Vec<i64>]) -> Self {
        let mut prim: Vec<Vec<i64>> = rays
            .iter()
            .inspect(|r| assert_eq!(r.len(), dim, "ray dimension mismatch"))
            .filter(|r| r.iter().any(|&v| v != 0))
            .map(|r| primitive(r))
            .collect();
        prim.sort();
        prim.dedup();

        let ray_mat = IntMatrix::from_rows_with_cols(&prim, dim).expect("ray shape");
        let eq = integer_kernel(&ray_mat);
        let equations: Vec<Vec<i64>> = (0..eq.cols()).map(|j| primitive(&eq.col_i64(j))).collect();
        let span_dim = dim - equations.len();
        let facets = compute_facets(dim, &prim, &equations, span_dim);
        let cone = RationalCone { dim, rays: prim, equations, facets, span_dim, faces: OnceLock::new() };
        debug_assert!(cone.check_dual_description());
        cone
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.span_dim
    }

    /// Every ray satisfies every facet inequality and every facet is spanned
    /// by rays of the right dimension.
    pub fn check_dual_description(&self) -> bool {
        self.facets.iter().all(|f| {
            let on: Vec<Vec<i64>> = self.rays.iter().filter(|r| dot(f, r) == 0).cloned().collect();
            self.rays.iter().all(|r| dot(f, r) >= 0)
                && self.rays.iter().any(|r| dot(f, r) > 0)
                && rank_of(&on, self.dim) + 1 == self.span_dim
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, x) == 0) && self.facets.iter().all(|f| dot(f, x) >= 0)
    }

    pub fn in_span(&self, x: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, x) == 0)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_rays().is_empty()
    }

    /// Rays lying in the lineality space.
    pub fn lineality_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| self.facets.iter().all(|f| dot(f, &self.rays[i]) == 0))
            .collect()
    }

    pub fn lineality_dim(&self) -> usize {
        let lin: Vec<Vec<i64>> =
            self.lineality_rays().into_iter().map(|i| self.rays[i].clone()).collect();
        rank_of(&lin, self.dim)
    }

    /// Rays generating extreme rays of the cone modulo lineality.
    pub fn extreme_rays(&self) -> Vec<usize> {
        let lin_dim = self.lineality_dim();
        self.face_lattice()
            .iter()
            .filter(|f| f.dim == lin_dim + 1)
            .flat_map(|f| {
                f.rays.iter().copied().find(|&i| self.facets.iter().any(|n| dot(n, &self.rays[i]) > 0))
            })
            .collect()
    }

    /// A functional strictly positive on every ray outside the lineality
    /// space and zero on the lineality space.
    pub fn positive_grading(&self) -> Vec<i64> {
        let mut g = vec![0i64; self.dim];
        for f in &self.facets {
            for (a, b) in g.iter_mut().zip(f) {
                *a += b;
            }
        }
        let d = abs_gcd(g.iter().copied());
        if d > 1 {
            g.iter_mut().for_each(|v| *v /= d);
        }
        g
    }

    /// All faces, from the lineality face up to the cone itself, sorted by
    /// dimension and then by supporting normals.
    pub fn face_lattice(&self) -> &[FaceDescriptor] {
        self.faces.get_or_init(|| self.compute_faces())
    }

    fn compute_faces(&self) -> Vec<FaceDescriptor> {
        let facet_rays: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| (0..self.rays.len()).filter(|&i| dot(f, &self.rays[i]) == 0).collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut queue = VecDeque::from([all.clone()]);
        seen.insert(all);
        while let Some(face) = queue.pop_front() {
            for fr in &facet_rays {
                let next: BTreeSet<usize> = face.intersection(fr).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut faces: Vec<FaceDescriptor> = seen
            .into_iter()
            .map(|rays| {
                let mut normals: Vec<Vec<i64>> = self
                    .facets
                    .iter()
                    .zip(&facet_rays)
                    .filter(|(_, fr)| rays.is_subset(fr))
                    .map(|(f, _)| f.clone())
                    .collect();
                normals.sort();
                let vecs: Vec<Vec<i64>> = rays.iter().map(|&i| self.rays[i].clone()).collect();
                let dim = rank_of(&vecs, self.dim);
                FaceDescriptor { normals, rays, dim }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| b.normals.cmp(&a.normals)));
        faces
    }

    /// The smallest face containing `x` (which must lie in the cone).
    pub fn smallest_face(&self, x: &[i64]) -> FaceDescriptor {
        let mut normals: Vec<Vec<i64>> =
            self.facets.iter().filter(|f| dot(f, x) == 0).cloned().collect();
        normals.sort();
        self.face_with_normals(&normals).expect("point outside the cone")
    }

    pub fn face_with_normals(&self, normals: &[Vec<i64>]) -> Option<FaceDescriptor> {
        self.face_lattice().iter().find(|f| f.normals == normals).cloned()
    }

    /// Generators of the dual cone `{m : m·r ≥ 0 for all rays r}`: the facet
    /// normals together with both signs of a basis of the span's complement.
    pub fn dual_generators(&self) -> Vec<Vec<i64>> {
        let mut gens = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(e.iter().map(|v| -v).collect());
        }
        gens
    }
}

fn compute_facets(
    dim: usize,
    rays: &[Vec<i64>],
    equations: &[Vec<i64>],
    span_dim: usize,
) -> Vec<Vec<i64>> {
    if span_dim == 0 {
        return Vec::new();
    }
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let k = span_dim - 1;
    for subset in Combinations::new(rays.len(), k) {
        let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        rows.extend(equations.iter().cloned());
        let m = IntMatrix::from_rows_with_cols(&rows, dim).expect("shape");
        let ker = integer_kernel(&m);
        if ker.cols() != 1 {
            continue;
        }
        let mut normal = primitive(&ker.col_i64(0));
        let values: Vec<i64> = rays.iter().map(|r| dot(&normal, r)).collect();
        let pos = values.iter().any(|&v| v > 0);
        let neg = values.iter().any(|&v| v < 0);
        if pos && neg {
            continue;
        }
        if neg {
            normal.iter_mut().for_each(|v| *v = -*v);
        } else if !pos {
            continue;
        }
        found.insert(normal);
    }
    found.into_iter().collect()
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn primitive(v: &[i64]) -> Vec<i64> {
    let g = abs_gcd(v.iter().copied());
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub(crate) fn rank_of(vecs: &[Vec<i64>], dim: usize) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    rank(&IntMatrix::from_rows_with_cols(vecs, dim).expect("shape"))
}

/// Lexicographic k-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrant_faces() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(c.facets().len(), 2);
        let faces = c.face_lattice();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[0].dim, 0);
        assert_eq!(faces[3].dim, 2);
        assert_eq!(c.positive_grading(), vec![1, 1]);
    }

    #[test]
    fn plane_has_one_face() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert!(c.facets().is_empty());
        assert_eq!(c.face_lattice().len(), 1);
        assert_eq!(c.lineality_dim(), 2);
        assert_eq!(c.positive_grading(), vec![0, 0]);
    }

    #[test]
    fn grading_for_xy_z2() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![1, 2], vec![1, 1]]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![2, -1]]);
        assert_eq!(c.positive_grading(), vec![1, 0]);
        assert_eq!(c.face_lattice().len(), 4);
    }

    #[test]
    fn half_plane_and_lower_dimensional() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        assert_eq!(c.facets(), &[vec![0, 1]]);
        assert_eq!(c.face_lattice().len(), 2);
        let c = RationalCone::new(3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(c.equations().len(), 1);
        assert_eq!(c.facets().len(), 2);
        assert!(c.contains(&[2, 3, 0]));
        assert!(!c.contains(&[2, 3, 1]));
        assert_eq!(c.dual_generators().len(), 4);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(Combinations::new(5, 2).count(), 10);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
