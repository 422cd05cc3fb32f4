use super::free::FreeCoords;
use super::ops::{faces_missing, ideal_op, maximal_faces, quotient_by_element, IdealOp};
use super::{MonoidIdeal, PrimeIdeal};
use crate::error::{Error, Result};
use crate::monoid::{AffineMonoid, GroupElement};

/// Which variable of a splittable monomial generator is split off first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitOrder {
    /// Split the lexicographically least splittable generator on its first variable.
    #[default]
    Lex,
    /// Split the greatest splittable generator on its last variable.
    ReverseLex,
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionOptions {
    /// Degree bound for witness and quotient searches in non-free parents.
    pub degree_bound: Option<i64>,
    pub split_order: SplitOrder,
}

#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub ideal: MonoidIdeal,
    pub radical: PrimeIdeal,
}

/// Primary decomposition `I = Q₁ ∩ … ∩ Q_k` with distinct radicals and no
/// redundant component. Components are sorted by their radicals.
pub fn primary_decomposition(i: &MonoidIdeal, opts: &DecompositionOptions) -> Result<Vec<PrimaryComponent>> {
    let c = i.parent();
    if i.is_unit() {
        return Ok(Vec::new());
    }
    let raw = match FreeCoords::detect(c) {
        Some(fc) => free_decomposition(c, &fc, i, opts.split_order),
        None => general_decomposition(i, opts)?,
    };
    let mut comps = group_by_radical(raw, opts)?;
    drop_redundant(&mut comps, i, opts)?;
    comps.sort_by(|a, b| a.radical.cmp(&b.radical));
    Ok(comps)
}

/// `Ass(I)`: radicals of the components of a primary decomposition.
pub fn associated_primes(i: &MonoidIdeal, opts: &DecompositionOptions) -> Result<Vec<PrimeIdeal>> {
    Ok(primary_decomposition(i, opts)?.into_iter().map(|q| q.radical).collect())
}

/// Is `I` primary? Exact for free parents; otherwise a certificate bounded
/// by the degree bound.
pub fn is_primary(i: &MonoidIdeal, degree_bound: Option<i64>) -> bool {
    primary_radical(i, degree_bound).is_some()
}

/// The radical of `I` when `I` is primary.
fn primary_radical(i: &MonoidIdeal, bound: Option<i64>) -> Option<PrimeIdeal> {
    if i.is_unit() {
        return None;
    }
    let c = i.parent();
    let maxf = maximal_faces(&faces_missing(i));
    if maxf.len() != 1 {
        return None;
    }
    let face = &maxf[0];
    for g in c.nonunit_generators() {
        if face.contains(&g.free) {
            let (q, _) = quotient_by_element(i, &g, bound);
            if !i.contains_ideal(&q) {
                return None;
            }
        }
    }
    Some(PrimeIdeal::of_face(c, face))
}

fn free_decomposition(c: &AffineMonoid, fc: &FreeCoords, i: &MonoidIdeal, order: SplitOrder) -> Vec<MonoidIdeal> {
    let gens: Vec<Vec<i64>> = i.generators().iter().map(|g| fc.exponents(g)).collect();
    let mut out = Vec::new();
    split_monomial(&gens, order, &mut out);
    out.into_iter()
        .map(|gs| {
            let elems: Vec<GroupElement> = gs.iter().map(|e| fc.element(c, e)).collect();
            MonoidIdeal::new(c, &elems).expect("monomials lie in the monoid")
        })
        .collect()
}

fn split_monomial(gens: &[Vec<i64>], order: SplitOrder, out: &mut Vec<Vec<Vec<i64>>>) {
    let mut sorted = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let splittable: Vec<&Vec<i64>> =
        sorted.iter().filter(|e| e.iter().filter(|&&v| v > 0).count() >= 2).collect();
    let pick = match order {
        SplitOrder::Lex => splittable.first().copied(),
        SplitOrder::ReverseLex => splittable.last().copied(),
    };
    let Some(m) = pick.cloned() else {
        out.push(sorted);
        return;
    };
    let support: Vec<usize> = (0..m.len()).filter(|&k| m[k] > 0).collect();
    let var = match order {
        SplitOrder::Lex => support[0],
        SplitOrder::ReverseLex => *support.last().expect("nonempty support"),
    };
    let mut m1 = vec![0; m.len()];
    m1[var] = m[var];
    let mut m2 = m.clone();
    m2[var] = 0;
    for part in [m1, m2] {
        let mut next: Vec<Vec<i64>> = sorted.iter().filter(|g| **g != m).cloned().collect();
        next.push(part);
        split_monomial(&reduce_monomials(next), order, out);
    }
}

fn reduce_monomials(gens: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut sorted = gens;
    sorted.sort_by_key(|g| g.iter().sum::<i64>());
    for g in sorted {
        if out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            continue;
        }
        out.push(g);
    }
    out
}

fn general_decomposition(i: &MonoidIdeal, opts: &DecompositionOptions) -> Result<Vec<MonoidIdeal>> {
    let mut done: Vec<MonoidIdeal> = Vec::new();
    let mut todo = vec![i.clone()];
    let bound = opts.degree_bound.unwrap_or_else(|| default_bound(i));
    while let Some(j) = todo.pop() {
        if j.is_unit() {
            continue;
        }
        if primary_radical(&j, Some(bound)).is_some() {
            done.push(j);
            continue;
        }
        match split_witness(&j, bound) {
            Some((left, right)) => {
                todo.push(left);
                todo.push(right);
            }
            None => return Err(Error::Decomposition { bound, partial: done.len() }),
        }
        if done.len() + todo.len() > 256 {
            return Err(Error::Decomposition { bound, partial: done.len() });
        }
    }
    Ok(done)
}

fn default_bound(i: &MonoidIdeal) -> i64 {
    let c = i.parent();
    let top = i.generators().iter().map(|g| c.degree(g)).max().unwrap_or(0);
    top + 2 * c.max_generator_degree()
}

/// `I = (I + (n·x)) ∩ (I : n·x)` for a zero divisor `x` that is not
/// nilpotent, with `n` chosen so that `(I : n·x)` has stabilized.
fn split_witness(i: &MonoidIdeal, bound: i64) -> Option<(MonoidIdeal, MonoidIdeal)> {
    let c = i.parent();
    let amb = c.ambient();
    for x in c.elements_up_to(bound).into_iter().skip(1) {
        if i.contains(&x) || super::radical_contains(i, &x) {
            continue;
        }
        let (q1, _) = quotient_by_element(i, &x, Some(bound));
        if i.contains_ideal(&q1) {
            continue;
        }
        let mut prev = q1;
        let mut n = 1;
        loop {
            let nx = amb.scale(n + 1, &x);
            let (q, _) = quotient_by_element(i, &nx, Some(bound));
            if prev.contains_ideal(&q) {
                break;
            }
            prev = q;
            n += 1;
            if n > 64 {
                return None;
            }
        }
        let nx = amb.scale(n, &x);
        let mut gens = i.generators().to_vec();
        gens.push(nx);
        let left = MonoidIdeal::new(c, &gens).ok()?;
        return Some((left, prev));
    }
    None
}

fn group_by_radical(raw: Vec<MonoidIdeal>, opts: &DecompositionOptions) -> Result<Vec<PrimaryComponent>> {
    let mut comps: Vec<PrimaryComponent> = Vec::new();
    for q in raw {
        let rad = primary_radical(&q, opts.degree_bound)
            .ok_or_else(|| Error::Precondition(format!("component {q} is not primary")))?;
        match comps.iter_mut().find(|p| p.radical == rad) {
            Some(p) => {
                p.ideal = ideal_op(&p.ideal, &q, IdealOp::Intersection, opts.degree_bound)?.ideal;
            }
            None => comps.push(PrimaryComponent { ideal: q, radical: rad }),
        }
    }
    Ok(comps)
}

fn drop_redundant(comps: &mut Vec<PrimaryComponent>, i: &MonoidIdeal, opts: &DecompositionOptions) -> Result<()> {
    let mut k = 0;
    while k < comps.len() {
        let others: Vec<&MonoidIdeal> = comps.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| &q.ideal).collect();
        let redundant = match others.split_first() {
            None => false,
            Some((first, rest)) => {
                let mut acc = (*first).clone();
                for q in rest {
                    acc = ideal_op(&acc, q, IdealOp::Intersection, opts.degree_bound)?.ideal;
                }
                i.contains_ideal(&acc)
            }
        };
        if redundant {
            comps.remove(k);
        } else {
            k += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::ops::ideal;
    use super::*;

    #[test]
    fn free_example() {
        let c = AffineMonoid::free_commutative(2);
        let i = ideal(&c, &[&[2, 0], &[1, 1]]);
        let d = primary_decomposition(&i, &DecompositionOptions::default()).unwrap();
        assert_eq!(d.len(), 2);
        let ideals: Vec<&MonoidIdeal> = d.iter().map(|q| &q.ideal).collect();
        assert!(ideals.iter().any(|q| q.same_as(&ideal(&c, &[&[1, 0]]))));
        assert!(ideals.iter().any(|q| q.same_as(&ideal(&c, &[&[2, 0], &[0, 1]]))));
        assert!(!is_primary(&i, None));
        assert!(is_primary(&ideal(&c, &[&[2, 0], &[0, 1]]), None));
    }

    #[test]
    fn split_orders_agree_on_ass() {
        let c = AffineMonoid::free_commutative(3);
        let i = ideal(&c, &[&[1, 1, 0], &[0, 1, 1], &[2, 0, 1]]);
        let a = associated_primes(&i, &DecompositionOptions::default()).unwrap();
        let opts = DecompositionOptions { split_order: SplitOrder::ReverseLex, ..Default::default() };
        let b = associated_primes(&i, &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn principal_ideal_in_cone_is_primary() {
        let cone = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 2], vec![1, 1]]).unwrap();
        let x = ideal(&cone, &[&[1, 0]]);
        let d = primary_decomposition(&x, &DecompositionOptions::default()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].radical.height, 1);
    }

    #[test]
    fn general_split() {
        // (x·z) in the xy = z² monoid has two height-one associated primes
        let cone = AffineMonoid::from_vectors(2, &[vec![1, 0], vec![1, 2], vec![1, 1]]).unwrap();
        let i = ideal(&cone, &[&[2, 1]]);
        let d = primary_decomposition(&i, &DecompositionOptions::default()).unwrap();
        let heights: Vec<usize> = d.iter().map(|q| q.radical.height).collect();
        assert_eq!(heights, vec![1, 1]);
        let inter = ideal_op(&d[0].ideal, &d[1].ideal, IdealOp::Intersection, Some(8)).unwrap().ideal;
        assert!(inter.same_as(&i));
    }
}
