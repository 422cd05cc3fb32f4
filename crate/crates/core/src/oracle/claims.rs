use std::collections::{BTreeSet, HashSet, VecDeque};

use super::monoid::{dot, MonoidOracle, RawMonoid};
use super::sheaf::{profile_of_invariants, RawSheaf};
use super::{EnumerationBudget, Verdict};

/// An ideal of a monoid, by generators.
pub type Ideal = Vec<Vec<i64>>;

/// A finitely generated abelian group `ℤ^rank ⊕ ℤ/d₁ ⊕ …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawGroup {
    pub rank: usize,
    pub invariant_factors: Vec<i64>,
}

/// A statement the oracle can check by enumeration.
#[derive(Clone, Debug)]
pub enum Claim {
    IdealEquality { monoid: RawMonoid, left: Ideal, right: Ideal },
    /// `∩ ideals = result`.
    Intersection { monoid: RawMonoid, ideals: Vec<Ideal>, result: Ideal },
    /// `(ideal : by) = result`.
    Quotient { monoid: RawMonoid, ideal: Ideal, by: Ideal, result: Ideal },
    Primary { monoid: RawMonoid, ideal: Ideal },
    /// `ideal = ∩ components` with every component primary.
    PrimaryDecomposition { monoid: RawMonoid, ideal: Ideal, components: Vec<Ideal> },
    /// `√ideal = radical`.
    Radical { monoid: RawMonoid, ideal: Ideal, radical: Ideal },
    /// `radical^n ⊆ ideal` for some `n ≤ max_power`.
    RadicalPower { monoid: RawMonoid, ideal: Ideal, radical: Ideal, max_power: usize },
    /// `(primary : element)` is primary with radical `prime`.
    QuotientPrimary { monoid: RawMonoid, primary: Ideal, prime: Ideal, element: Vec<i64> },
    /// If `∩ ideals ⊆ prime` then some ideal lies in `prime`.
    PrimeAvoidance { monoid: RawMonoid, ideals: Vec<Ideal>, prime: Ideal },
    /// `a ∈ ideal` iff `a` vanishes in every localization `(A/ideal)_p`, `p ∈ associated`.
    LocalZero { monoid: RawMonoid, ideal: Ideal, associated: Vec<Ideal> },
    /// Two monoids in the same ambient group coincide.
    MonoidEquality { left: RawMonoid, right: RawMonoid },
    /// `basis` is the minimal generating set of the integral closure of `monoid`.
    HilbertBasis { monoid: RawMonoid, basis: Vec<Vec<i64>> },
    /// `generators` generate the seminormalization of `monoid`.
    Seminormalization { monoid: RawMonoid, generators: Vec<Vec<i64>> },
    /// The pointed product `∏ (factorᵢ ∪ {0})` is generated by the given
    /// tuples, where `None` is the basepoint.
    PointedProduct { factors: Vec<RawMonoid>, generators: Vec<Vec<Option<Vec<i64>>>> },
    /// `H^degree(sheaf) ≅ group` for a sheaf with finite stalks.
    Cohomology { sheaf: RawSheaf, degree: usize, group: RawGroup },
}

/// Largest multiple tried when certifying integrality or seminormality.
const MAX_MULTIPLE: i64 = 64;

/// Check a claim within the budget.
pub fn verify(claim: &Claim, budget: &EnumerationBudget) -> Verdict {
    let d = budget.max_degree;
    match claim {
        Claim::IdealEquality { monoid, left, right } => {
            let o = MonoidOracle::new(monoid, budget);
            let verdict = first_refutation([
                contained(&o, left, right, "left generator outside the right ideal"),
                contained(&o, right, left, "right generator outside the left ideal"),
            ]);
            finish(&o, verdict, None)
        }
        Claim::Intersection { monoid, ideals, result } => {
            let o = MonoidOracle::new(monoid, budget);
            let verdict = window(&o, d, |a| {
                let lhs = ideals.iter().all(|i| o.in_ideal(i, a));
                (lhs != o.in_ideal(result, a)).then(|| describe(lhs, "the intersection"))
            });
            finish(&o, verdict, Some(d))
        }
        Claim::Quotient { monoid, ideal, by, result } => {
            let o = MonoidOracle::new(monoid, budget);
            let verdict = window(&o, d, |a| {
                let lhs = by.iter().all(|j| o.in_ideal(ideal, &monoid.add(a, j)));
                (lhs != o.in_ideal(result, a)).then(|| describe(lhs, "the quotient"))
            });
            finish(&o, verdict, Some(d))
        }
        Claim::Primary { monoid, ideal } => {
            let o = MonoidOracle::new(monoid, budget);
            let verdict = primary(&o, d, o.nilpotence_limit(ideal, d), &|a| o.in_ideal(ideal, a));
            finish(&o, verdict, Some(d))
        }
        Claim::PrimaryDecomposition { monoid, ideal, components } => {
            let o = MonoidOracle::new(monoid, budget);
            let mut verdict = window(&o, d, |a| {
                let lhs = components.iter().all(|c| o.in_ideal(c, a));
                (lhs != o.in_ideal(ideal, a)).then(|| describe(lhs, "the intersection of the components"))
            });
            for c in components {
                if verdict.is_none() {
                    verdict = primary(&o, d, o.nilpotence_limit(c, d), &|a| o.in_ideal(c, a));
                }
            }
            finish(&o, verdict, Some(d))
        }
        Claim::Radical { monoid, ideal, radical } => {
            let o = MonoidOracle::new(monoid, budget);
            let limit = o.nilpotence_limit(ideal, d);
            if let Some(r) = radical.iter().find(|r| !o.nilpotent_mod(ideal, r, limit)) {
                return inconclusive(&o, format!("no multiple of {r:?} of degree ≤ {limit} lies in the ideal"));
            }
            let verdict = window(&o, d, |a| {
                (!o.in_ideal(radical, a) && o.nilpotent_mod(ideal, a, limit))
                    .then(|| "a multiple lies in the ideal but the element is outside the claimed radical".to_string())
            });
            finish(&o, verdict, Some(d))
        }
        Claim::RadicalPower { monoid, ideal, radical, max_power } => {
            let o = MonoidOracle::new(monoid, budget);
            let mut sums: BTreeSet<Vec<i64>> = BTreeSet::from([monoid.zero()]);
            for n in 1..=*max_power {
                sums = sums.iter().flat_map(|s| radical.iter().map(|r| monoid.add(s, r))).collect();
                if sums.iter().all(|s| o.in_ideal(ideal, s)) {
                    return finish(&o, None, None);
                }
                if n == *max_power {
                    break;
                }
            }
            inconclusive(&o, format!("no power up to {max_power} of the radical lies in the ideal"))
        }
        Claim::QuotientPrimary { monoid, primary: q, prime, element } => {
            let o = MonoidOracle::new(monoid, budget);
            if o.in_ideal(q, element) {
                return Verdict::Inconclusive { reason: "the element lies in the primary ideal".into() };
            }
            let colon = |b: &[i64]| o.in_ideal(q, &monoid.add(element, b));
            let limit = o.nilpotence_limit(q, d);
            let mut verdict = primary(&o, d, limit, &colon);
            if verdict.is_none() {
                verdict = window(&o, d, |b| {
                    let nil = o.nilpotent_by(b, limit, &colon);
                    (nil != o.in_ideal(prime, b)).then(|| describe(nil, "the radical of the quotient"))
                });
            }
            finish(&o, verdict, Some(d))
        }
        Claim::PrimeAvoidance { monoid, ideals, prime } => {
            let o = MonoidOracle::new(monoid, budget);
            if ideals.iter().any(|i| i.iter().all(|g| o.in_ideal(prime, g))) {
                return finish(&o, None, None);
            }
            // The conclusion fails, so the hypothesis must fail too.
            let outside = o.elements_up_to(d).into_iter().find(|a| ideals.iter().all(|i| o.in_ideal(i, a)) && !o.in_ideal(prime, a));
            match outside {
                Some(_) => finish(&o, None, None),
                None if o.truncated() => inconclusive(&o, String::new()),
                None => Verdict::Inconclusive {
                    reason: format!("no element of the intersection outside the prime up to degree {d}"),
                },
            }
        }
        Claim::LocalZero { monoid, ideal, associated } => {
            let o = MonoidOracle::new(monoid, budget);
            let elems = o.elements_up_to(d);
            let verdict = elems.iter().find_map(|a| {
                if o.in_ideal(ideal, a) {
                    return None;
                }
                let killed_everywhere = associated.iter().all(|p| {
                    elems.iter().any(|s| !o.in_ideal(p, s) && o.in_ideal(ideal, &monoid.add(a, s)))
                });
                killed_everywhere.then(|| (a.clone(), "vanishes at every associated prime but not in the quotient".to_string()))
            });
            finish(&o, verdict, Some(d))
        }
        Claim::MonoidEquality { left, right } => {
            let (ol, or) = (MonoidOracle::new(left, budget), MonoidOracle::new(right, budget));
            let verdict = first_refutation([
                left.generators.iter().find(|g| !or.contains(g)).map(|g| (g.clone(), "left generator outside the right monoid".into())),
                right.generators.iter().find(|g| !ol.contains(g)).map(|g| (g.clone(), "right generator outside the left monoid".into())),
            ]);
            if ol.truncated() || or.truncated() {
                return Verdict::Inconclusive { reason: "degree-zero search left the coordinate box".into() };
            }
            to_verdict(verdict, None)
        }
        Claim::HilbertBasis { monoid, basis } => hilbert_basis(monoid, basis, budget),
        Claim::Seminormalization { monoid, generators } => {
            let o = MonoidOracle::new(monoid, budget);
            let closure = RawMonoid { generators: generators.clone(), ..monoid.clone() };
            let oc = MonoidOracle::new(&closure, budget);
            // {n : n·v ∈ A} is a submonoid of ℕ; it contains every large n
            // exactly when it contains two consecutive integers.
            let sn = |v: &[i64]| {
                let mut previous = false;
                (1..=MAX_MULTIPLE + 1).any(|n| {
                    let hit = o.contains(&monoid.scale(n, v));
                    std::mem::replace(&mut previous, hit) && hit
                })
            };
            if let Some(g) = generators.iter().find(|g| !sn(g)) {
                return inconclusive(&o, format!("no two consecutive multiples of {g:?} up to {MAX_MULTIPLE} lie in the monoid"));
            }
            let verdict = o
                .group_elements(d.max(1))
                .into_iter()
                .filter(|v| o.degree(v).abs() <= d)
                .find(|v| sn(v) && !oc.contains(v))
                .map(|v| (v, "seminormal element not generated by the claimed generators".into()));
            if oc.truncated() {
                return inconclusive(&oc, String::new());
            }
            finish(&o, verdict, Some(d))
        }
        Claim::PointedProduct { factors, generators } => pointed_product(factors, generators, budget),
        Claim::Cohomology { sheaf, degree, group } => cohomology(sheaf, *degree, group, budget),
    }
}

type Refutation = Option<(Vec<i64>, String)>;

fn describe(in_lhs: bool, what: &str) -> String {
    if in_lhs {
        format!("in {what} but not in the claimed ideal")
    } else {
        format!("in the claimed ideal but not in {what}")
    }
}

fn first_refutation<const N: usize>(checks: [Refutation; N]) -> Refutation {
    checks.into_iter().flatten().next()
}

fn contained(o: &MonoidOracle<'_>, small: &Ideal, big: &Ideal, detail: &str) -> Refutation {
    small.iter().find(|g| !o.in_ideal(big, g)).map(|g| (g.clone(), detail.to_string()))
}

/// First element of degree at most `d` for which `check` reports a problem.
fn window(o: &MonoidOracle<'_>, d: i64, mut check: impl FnMut(&[i64]) -> Option<String>) -> Refutation {
    o.elements_up_to(d).into_iter().find_map(|a| check(&a).map(|detail| (a, detail)))
}

/// Every zero-divisor among the generators of `A/Q` is nilpotent, checked
/// against the elements of degree at most `d` outside `Q`.
/// Refutes primariness with a zero-divisor that has no multiple in the
/// ideal up to degree `limit`.
fn primary(o: &MonoidOracle<'_>, d: i64, limit: i64, in_q: &dyn Fn(&[i64]) -> bool) -> Refutation {
    let monoid = o.monoid;
    let zero = monoid.zero();
    if in_q(&zero) {
        return Some((zero, "the ideal is not proper".into()));
    }
    let gens: Vec<&Vec<i64>> = monoid.generators.iter().filter(|g| !o.nilpotent_by(g, limit, in_q)).collect();
    window(o, d, |a| {
        if in_q(a) {
            return None;
        }
        gens.iter()
            .find(|g| in_q(&monoid.add(a, g)))
            .map(|g| format!("the non-nilpotent generator {g:?} is a zero-divisor on this element"))
    })
}

fn to_verdict(r: Refutation, up_to_degree: Option<i64>) -> Verdict {
    match r {
        Some((witness, detail)) => Verdict::Refuted { witness, detail },
        None => Verdict::Confirmed { up_to_degree },
    }
}

fn inconclusive(o: &MonoidOracle<'_>, reason: String) -> Verdict {
    if o.truncated() {
        Verdict::Inconclusive { reason: format!("search truncated by the budget (max {} elements)", o.budget.max_elements) }
    } else {
        Verdict::Inconclusive { reason }
    }
}

fn finish(o: &MonoidOracle<'_>, r: Refutation, up_to_degree: Option<i64>) -> Verdict {
    if o.truncated() {
        return inconclusive(o, String::new());
    }
    to_verdict(r, up_to_degree)
}

fn hilbert_basis(monoid: &RawMonoid, basis: &[Vec<i64>], budget: &EnumerationBudget) -> Verdict {
    let d = budget.max_degree;
    let o = MonoidOracle::new(monoid, budget);
    let closure = RawMonoid { generators: basis.to_vec(), ..monoid.clone() };
    let oc = MonoidOracle::new(&closure, budget);
    let integral = |v: &[i64]| (1..=MAX_MULTIPLE).any(|k| o.contains(&monoid.scale(k, v)));
    let reach = basis.iter().flat_map(|b| b[..monoid.rank].iter().map(|x| x.abs())).max().unwrap_or(0).max(d.max(1));
    let group: BTreeSet<Vec<i64>> = o.group_elements(reach).into_iter().collect();
    for b in basis {
        if !integral(b) || !group.contains(b) {
            return inconclusive(&o, format!("{b:?} is not certified integral over the monoid"));
        }
    }
    // minimality among elements of positive degree
    for (i, b) in basis.iter().enumerate() {
        if oc.degree(b) <= 0 {
            continue;
        }
        let others: Vec<Vec<i64>> = basis.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let rest = RawMonoid { generators: others, ..monoid.clone() };
        let budget = budget.clone().with_grading(&oc.grading);
        if MonoidOracle::new(&rest, &budget).contains(b) {
            return Verdict::Refuted { witness: b.clone(), detail: "basis element is a sum of the others".into() };
        }
    }
    let missing = group
        .iter()
        .filter(|v| v[..monoid.rank].iter().all(|x| x.abs() <= d.max(1)) && o.degree(v).abs() <= d)
        .cloned()
        .find(|v| integral(v) && !oc.contains(v));
    if let Some(v) = missing {
        return finish(&o, Some((v, "integral element not generated by the basis".into())), Some(d));
    }
    if oc.truncated() {
        return inconclusive(&oc, String::new());
    }
    finish(&o, None, Some(d))
}

type Tuple = Vec<Option<Vec<i64>>>;

fn pointed_product(factors: &[RawMonoid], generators: &[Tuple], budget: &EnumerationBudget) -> Verdict {
    let d = budget.max_degree;
    let oracles: Vec<MonoidOracle<'_>> = factors.iter().map(|f| MonoidOracle::new(f, budget)).collect();
    for t in generators {
        if t.len() != factors.len() {
            return Verdict::Refuted { witness: Vec::new(), detail: "generator has the wrong number of factors".into() };
        }
        for (c, o) in t.iter().zip(&oracles) {
            if let Some(v) = c {
                if !o.contains(v) {
                    return Verdict::Refuted { witness: v.clone(), detail: "component outside its factor".into() };
                }
            }
        }
    }
    // everything of degree ≤ d in the product
    let per_factor: Vec<Vec<Option<Vec<i64>>>> = oracles
        .iter()
        .map(|o| std::iter::once(None).chain(o.elements_up_to(d).into_iter().map(Some)).collect())
        .collect();
    let mut expected: Vec<Tuple> = vec![Vec::new()];
    for options in &per_factor {
        expected = expected
            .iter()
            .flat_map(|t| options.iter().map(move |c| {
                let mut t = t.clone();
                t.push(c.clone());
                t
            }))
            .filter(|t| degree_partial(t, &oracles) <= d)
            .collect();
    }
    // closure of the identity under the claimed generators
    let one: Tuple = factors.iter().map(|f| Some(f.zero())).collect();
    let mut seen: HashSet<Tuple> = HashSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    while let Some(t) = queue.pop_front() {
        for g in generators {
            let s: Tuple = t
                .iter()
                .zip(g)
                .zip(factors)
                .map(|((a, b), f)| match (a, b) {
                    (Some(a), Some(b)) => Some(f.add(a, b)),
                    _ => None,
                })
                .collect();
            if degree_partial(&s, &oracles) <= d && seen.insert(s.clone()) {
                if seen.len() > budget.max_elements {
                    return Verdict::Inconclusive { reason: "closure exceeded the element budget".into() };
                }
                queue.push_back(s);
            }
        }
    }
    if oracles.iter().any(MonoidOracle::truncated) {
        return Verdict::Inconclusive { reason: "factor enumeration truncated by the budget".into() };
    }
    let flatten = |t: &Tuple| -> Vec<i64> { t.iter().flat_map(|c| c.clone().unwrap_or_default()).collect() };
    match expected.iter().find(|t| !seen.contains(*t)) {
        Some(t) => Verdict::Refuted { witness: flatten(t), detail: "product element not generated (basepoint components omitted)".into() },
        None => Verdict::Confirmed { up_to_degree: Some(d) },
    }
}

fn degree_partial(t: &Tuple, oracles: &[MonoidOracle<'_>]) -> i64 {
    t.iter().zip(oracles).map(|(c, o)| c.as_ref().map_or(0, |v| dot(&o.grading, v))).sum()
}

fn cohomology(sheaf: &RawSheaf, degree: usize, group: &RawGroup, budget: &EnumerationBudget) -> Verdict {
    if group.rank > 0 {
        return Verdict::Refuted { witness: vec![0], detail: "cohomology of a sheaf with finite stalks is finite".into() };
    }
    if let Some(q) = sheaf.common_prime() {
        let dim = sheaf.dimension_mod_prime(degree, q);
        let claimed_dim = group.invariant_factors.iter().filter(|&&d| d == q).count();
        return if claimed_dim != group.invariant_factors.len() || claimed_dim != dim {
            Verdict::Refuted { witness: vec![q], detail: format!("the cohomology is (ℤ/{q})^{dim}") }
        } else {
            Verdict::Confirmed { up_to_degree: None }
        };
    }
    let exponent = sheaf
        .moduli
        .iter()
        .flatten()
        .chain(&group.invariant_factors)
        .fold(1u64, |acc, &m| num_integer::lcm(acc, m as u64));
    let Some(actual) = sheaf.profile(degree, exponent, budget.max_elements) else {
        return Verdict::Inconclusive { reason: "too many cochains to enumerate".into() };
    };
    let claimed = profile_of_invariants(&group.invariant_factors, exponent);
    match (1..=exponent).zip(actual.iter().zip(&claimed)).find(|(_, (a, c))| a != c) {
        Some((n, (a, c))) => Verdict::Refuted {
            witness: vec![n as i64],
            detail: format!("the {n}-torsion has {a} elements, the claimed group has {c}"),
        },
        None => Verdict::Confirmed { up_to_degree: None },
    }
}
