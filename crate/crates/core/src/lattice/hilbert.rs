use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::cone::{dot, RationalCone};
use super::matrix::{big_vec, small_vec, IntMatrix};
use super::snf::{column_basis, integer_kernel, IntSolver};
use crate::error::{Error, Result};

/// Minimal generating set of the monoid `C ∩ L`.
///
/// `lattice` generates the subgroup `L ⊆ ℤ^dim`. For cones with a lineality
/// space the result is the Hilbert basis of the sharp part followed by both
/// signs of a basis of `W ∩ L`, where `W` is the lineality space.
///
/// The inequalities of the cone embed `L ∩ span(C)` (modulo `W`) into
/// `ℤ^facets`; a completion procedure with respect to the sign-compatible
/// order produces a set containing every conformally minimal element there,
/// and the nonnegative minimal ones are exactly the Hilbert basis.
pub fn hilbert_basis(cone: &RationalCone, lattice: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = cone.dim();
    if let Some(bad) = lattice.iter().find(|v| v.len() != n) {
        return Err(Error::Dimension { expected: n, found: bad.len() });
    }
    if lattice.is_empty() {
        return Ok(Vec::new());
    }
    let gens = IntMatrix::from_cols(n, lattice);
    let basis = column_basis(&gens);

    // L ∩ span(C)
    let lv = if cone.equations().is_empty() {
        basis
    } else {
        let eq = IntMatrix::from_rows(cone.equations());
        let k = integer_kernel(&(&eq * &basis));
        column_basis(&(&basis * &k))
    };
    if lv.cols() == 0 {
        return Ok(Vec::new());
    }

    let facets = cone.facets();
    let mut out = Vec::new();
    if !facets.is_empty() {
        let a = IntMatrix::from_rows(facets);
        let image = &a * &lv;
        let lam = column_basis(&image);
        let lam_basis: Vec<Vec<i64>> = (0..lam.cols()).map(|j| lam.col_i64(j)).collect();
        let mut seeds = lam_basis.clone();
        for r in cone.extreme_rays() {
            let ray = &cone.rays()[r];
            if let Some(y) = lattice_multiple_image(ray, &lv, &a) {
                seeds.push(y);
            }
        }
        let completed = conformal_completion(&seeds);
        let mut positive: Vec<Vec<i64>> = completed
            .into_iter()
            .filter(|y| y.iter().all(|&v| v >= 0) && y.iter().any(|&v| v != 0))
            .collect();
        positive.sort();
        positive.dedup();
        let minimal: Vec<Vec<i64>> = positive
            .iter()
            .filter(|y| {
                !positive
                    .iter()
                    .any(|z| z != *y && z.iter().zip(y.iter()).all(|(a, b)| a <= b))
            })
            .cloned()
            .collect();
        let solver = IntSolver::new(&image);
        for y in minimal {
            let c = solver.solve(&big_vec(&y)).expect("completion element outside the image lattice");
            out.push(small_vec(&lv.mul_vec(&c)));
        }
    }

    // lineality part: W ∩ L
    let w = if facets.is_empty() {
        lv
    } else {
        let a = IntMatrix::from_rows(facets);
        let k = integer_kernel(&(&a * &lv));
        column_basis(&(&lv * &k))
    };
    for j in 0..w.cols() {
        let v = w.col_i64(j);
        out.push(v.iter().map(|x| -x).collect());
        out.push(v);
    }
    debug_assert!(out.iter().all(|v| cone.contains(v)));
    Ok(out)
}

/// Image under `a` of the least positive multiple of `ray` lying in the
/// lattice spanned by the columns of `lv`.
fn lattice_multiple_image(ray: &[i64], lv: &IntMatrix, a: &IntMatrix) -> Option<Vec<i64>> {
    let solver = IntSolver::new(lv);
    (1..=64).find_map(|k| {
        let v: Vec<i64> = ray.iter().map(|x| k * x).collect();
        solver.solve(&big_vec(&v)).map(|_| small_vec(&a.mul_vec_i64(&v)))
    })
}

fn conformal_le(g: &[i64], r: &[i64]) -> bool {
    g.iter().zip(r).all(|(&a, &b)| a * b >= 0 && a.abs() <= b.abs())
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

fn reduce(mut r: Vec<i64>, basis: &[Vec<i64>]) -> Vec<i64> {
    loop {
        if r.iter().all(|&v| v == 0) {
            return r;
        }
        match basis.iter().find(|g| conformal_le(g, &r)) {
            Some(g) => {
                for (a, b) in r.iter_mut().zip(g) {
                    *a -= b;
                }
            }
            None => return r,
        }
    }
}

/// Completion of `±seeds` under the sign-compatible order: every lattice
/// vector is a sign-compatible sum of elements of the output.
pub(crate) fn conformal_completion(seeds: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: BinaryHeap<Reverse<(i64, Vec<i64>)>> = BinaryHeap::new();
    for s in seeds {
        if s.iter().all(|&v| v == 0) {
            continue;
        }
        let neg: Vec<i64> = s.iter().map(|v| -v).collect();
        queue.push(Reverse((l1(s), s.clone())));
        queue.push(Reverse((l1(&neg), neg)));
    }
    while let Some(Reverse((_, s))) = queue.pop() {
        let r = reduce(s, &basis);
        if r.iter().all(|&v| v == 0) || !seen.insert(r.clone()) {
            continue;
        }
        for g in &basis {
            let sum: Vec<i64> = g.iter().zip(&r).map(|(a, b)| a + b).collect();
            if sum.iter().any(|&v| v != 0) {
                queue.push(Reverse((l1(&sum), sum)));
            }
        }
        basis.push(r);
    }
    basis
}

/// Graded degree of a vector under a functional.
pub fn degree(grading: &[i64], v: &[i64]) -> i64 {
    dot(grading, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn free_monoid() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![0, 1]]);
        let hb = hilbert_basis(&c, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(sorted(hb), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn xy_equals_z_squared_cone() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![1, 2]]);
        let hb = hilbert_basis(&c, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(sorted(hb), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn index_two_sublattice() {
        let c = RationalCone::new(1, &[vec![1]]);
        let hb = hilbert_basis(&c, &[vec![2]]).unwrap();
        assert_eq!(hb, vec![vec![2]]);
    }

    #[test]
    fn lineality_is_returned_with_both_signs() {
        let c = RationalCone::new(2, &[vec![1, 0], vec![-1, 0], vec![0, 1]]);
        let hb = sorted(hilbert_basis(&c, &[vec![1, 0], vec![0, 1]]).unwrap());
        assert_eq!(hb, vec![vec![-1, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let c = RationalCone::new(2, &[vec![1, 0]]);
        assert!(hilbert_basis(&c, &[vec![1]]).is_err());
    }
}
