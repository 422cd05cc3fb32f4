use super::free::FreeCoords;
use super::{MonoidIdeal, PrimeIdeal};
use crate::error::Result;
use crate::lattice::FaceDescriptor;
use crate::monoid::{AffineMonoid, GroupElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Quotient,
}

/// Result of an ideal operation. `exact` is false when generators were
/// found by a degree-bounded search.
#[derive(Clone, Debug)]
pub struct OpResult {
    pub ideal: MonoidIdeal,
    pub exact: bool,
}

/// `I + J`, `I·J`, `I ∩ J` or `(I : J)`.
pub fn ideal_op(i: &MonoidIdeal, j: &MonoidIdeal, op: IdealOp, degree_bound: Option<i64>) -> Result<OpResult> {
    i.check_parent(j)?;
    let c = i.parent();
    let amb = c.ambient();
    match op {
        IdealOp::Sum => {
            let mut gens = i.generators().to_vec();
            gens.extend_from_slice(j.generators());
            Ok(OpResult { ideal: MonoidIdeal::new(c, &gens)?, exact: true })
        }
        IdealOp::Product => {
            let gens: Vec<GroupElement> = i
                .generators()
                .iter()
                .flat_map(|g| j.generators().iter().map(move |h| amb.add(g, h)))
                .collect();
            Ok(OpResult { ideal: MonoidIdeal::new(c, &gens)?, exact: true })
        }
        IdealOp::Intersection => intersection(i, j, degree_bound),
        IdealOp::Quotient => quotient(i, j, degree_bound),
    }
}

fn max_degree(i: &MonoidIdeal) -> i64 {
    i.generators().iter().map(|g| i.parent().degree(g)).max().unwrap_or(0)
}

fn intersection(i: &MonoidIdeal, j: &MonoidIdeal, bound: Option<i64>) -> Result<OpResult> {
    let c = i.parent();
    if i.is_zero() || j.is_zero() {
        return Ok(OpResult { ideal: MonoidIdeal::zero(c), exact: true });
    }
    if let Some(fc) = FreeCoords::detect(c) {
        let mut gens = Vec::new();
        for g in i.generators() {
            for h in j.generators() {
                let (eg, eh) = (fc.exponents(g), fc.exponents(h));
                let lcm: Vec<i64> = eg.iter().zip(&eh).map(|(a, b)| *a.max(b)).collect();
                gens.push(fc.element(c, &lcm));
            }
        }
        return Ok(OpResult { ideal: MonoidIdeal::new(c, &gens)?, exact: true });
    }
    let bound = bound.unwrap_or(max_degree(i) + max_degree(j));
    let gens: Vec<GroupElement> =
        c.elements_up_to(bound).into_iter().filter(|a| i.contains(a) && j.contains(a)).collect();
    let mut all = gens;
    // products always lie in the intersection
    for g in i.generators() {
        for h in j.generators() {
            all.push(c.ambient().add(g, h));
        }
    }
    Ok(OpResult { ideal: MonoidIdeal::new(c, &all)?, exact: false })
}

/// `(I : y) = {a : a + y ∈ I}` for a single element.
pub(crate) fn quotient_by_element(i: &MonoidIdeal, y: &GroupElement, bound: Option<i64>) -> (MonoidIdeal, bool) {
    let c = i.parent();
    if i.is_zero() {
        return (MonoidIdeal::zero(c), true);
    }
    if let Some(fc) = FreeCoords::detect(c) {
        let ey = fc.exponents(y);
        let gens: Vec<GroupElement> = i
            .generators()
            .iter()
            .map(|g| {
                let e: Vec<i64> = fc.exponents(g).iter().zip(&ey).map(|(a, b)| (a - b).max(0)).collect();
                fc.element(c, &e)
            })
            .collect();
        return (MonoidIdeal::new(c, &gens).expect("monomials lie in the monoid"), true);
    }
    let bound = bound.unwrap_or(max_degree(i) + c.max_generator_degree());
    let mut gens: Vec<GroupElement> = c
        .elements_up_to(bound)
        .into_iter()
        .filter(|a| i.contains(&c.ambient().add(a, y)))
        .collect();
    gens.extend_from_slice(i.generators());
    (MonoidIdeal::new(c, &gens).expect("elements lie in the monoid"), false)
}

fn quotient(i: &MonoidIdeal, j: &MonoidIdeal, bound: Option<i64>) -> Result<OpResult> {
    let c = i.parent();
    if j.is_zero() {
        return Ok(OpResult { ideal: MonoidIdeal::unit(c), exact: true });
    }
    let mut acc: Option<MonoidIdeal> = None;
    let mut exact = true;
    for y in j.generators() {
        let (q, ex) = quotient_by_element(i, y, bound);
        exact &= ex;
        acc = Some(match acc {
            None => q,
            Some(prev) => {
                let r = intersection(&prev, &q, bound)?;
                exact &= r.exact;
                r.ideal
            }
        });
    }
    Ok(OpResult { ideal: acc.expect("J has generators"), exact })
}

/// Faces of the parent's cone that contain no generator of `I`.
pub(crate) fn faces_missing(i: &MonoidIdeal) -> Vec<FaceDescriptor> {
    i.parent().faces().iter().filter(|f| !i.meets_face(f)).cloned().collect()
}

pub(crate) fn maximal_faces(faces: &[FaceDescriptor]) -> Vec<FaceDescriptor> {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && f.is_subface_of(g)))
        .cloned()
        .collect()
}

/// `a ∈ √I`: `a` lies on no face missing `I`.
pub fn radical_contains(i: &MonoidIdeal, a: &GroupElement) -> bool {
    i.parent().contains(a) && faces_missing(i).iter().all(|f| !f.contains(&a.free))
}

/// `√I`, the intersection of the primes minimal over `I`.
pub fn radical(i: &MonoidIdeal) -> MonoidIdeal {
    let maxf = maximal_faces(&faces_missing(i));
    if maxf.is_empty() {
        return MonoidIdeal::unit(i.parent());
    }
    primes_intersection(i.parent(), &maxf)
}

/// `⋂ 𝔭_F` over the given faces: the elements lying on none of them. An
/// element qualifies iff its expression uses, for every face, a generator
/// off that face, so sums of such choices generate.
pub fn primes_intersection(c: &AffineMonoid, faces: &[FaceDescriptor]) -> MonoidIdeal {
    if faces.is_empty() {
        return MonoidIdeal::unit(c);
    }
    let gens = c.nonunit_generators();
    let off: Vec<Vec<usize>> = faces
        .iter()
        .map(|f| (0..gens.len()).filter(|&k| !f.contains(&gens[k].free)).collect())
        .collect();
    if off.iter().any(|o| o.is_empty()) {
        return MonoidIdeal::zero(c);
    }
    let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
    for o in &off {
        let mut next = Vec::new();
        for ch in &choices {
            if ch.iter().any(|k| o.contains(k)) {
                next.push(ch.clone());
                continue;
            }
            for &k in o {
                let mut n = ch.clone();
                n.push(k);
                n.sort();
                next.push(n);
            }
        }
        next.sort();
        next.dedup();
        choices = next;
    }
    let amb = c.ambient();
    let elems: Vec<GroupElement> =
        choices.iter().map(|ch| amb.sum(ch.iter().map(|&k| &gens[k]))).collect();
    MonoidIdeal::new(c, &elems).expect("sums of generators lie in the monoid")
}

/// Primes minimal over `I`: complements of the maximal faces missing `I`.
pub fn minimal_primes_over(i: &MonoidIdeal) -> Vec<PrimeIdeal> {
    let c = i.parent();
    let mut out: Vec<PrimeIdeal> =
        maximal_faces(&faces_missing(i)).iter().map(|f| PrimeIdeal::of_face(c, f)).collect();
    out.sort();
    out
}

/// Ideal of `c` generated by the given vectors (test and doc helper).
#[cfg(test)]
pub(crate) fn ideal(c: &AffineMonoid, gens: &[&[i64]]) -> MonoidIdeal {
    let gens: Vec<GroupElement> = gens.iter().map(|g| GroupElement::free(g)).collect();
    MonoidIdeal::new(c, &gens).unwrap()
}
