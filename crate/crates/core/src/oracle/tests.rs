use super::*;

fn plane() -> RawMonoid {
    RawMonoid::free_commutative(2)
}

fn cone() -> RawMonoid {
    RawMonoid::free(2, &[vec![1, 0], vec![1, 1], vec![1, 2]])
}

const X: [i64; 2] = [1, 0];
const Y: [i64; 2] = [0, 1];

fn ideal(gens: &[[i64; 2]]) -> Ideal {
    gens.iter().map(|g| g.to_vec()).collect()
}

#[test]
fn enumerations() {
    let e = enumerate_elements(&plane(), &[], &EnumerationBudget::new(2)).unwrap();
    assert_eq!(e.elements.len(), 6);
    assert!(!e.includes_basepoint);
    let numerical = RawMonoid::free(1, &[vec![2], vec![3]]);
    let e = enumerate_elements(&numerical, &[], &EnumerationBudget::new(7)).unwrap();
    assert_eq!(e.elements, vec![vec![0], vec![2], vec![3], vec![4], vec![5], vec![6], vec![7]]);
    let line = RawMonoid::free_commutative(1);
    let e = enumerate_elements(&line, &[vec![2]], &EnumerationBudget::new(5)).unwrap();
    assert_eq!(e.elements, vec![vec![0], vec![1]]);
    assert!(e.includes_basepoint);
    let small = EnumerationBudget::new(10).with_max_elements(5);
    assert!(enumerate_elements(&plane(), &[], &small).is_err());
}

#[test]
fn primary_decomposition_of_x2_xy() {
    let claim = Claim::PrimaryDecomposition {
        monoid: plane(),
        ideal: ideal(&[[2, 0], [1, 1]]),
        components: vec![ideal(&[X]), ideal(&[[2, 0], Y])],
    };
    assert_eq!(verify(&claim, &EnumerationBudget::new(6)), Verdict::Confirmed { up_to_degree: Some(6) });
    let wrong = Claim::PrimaryDecomposition {
        monoid: plane(),
        ideal: ideal(&[[2, 0], [1, 1]]),
        components: vec![ideal(&[X])],
    };
    assert!(verify(&wrong, &EnumerationBudget::new(6)).is_refuted());
}

#[test]
fn radical_in_the_quadric_cone() {
    // x = (1,0), z = (1,1)
    let claim = Claim::Radical { monoid: cone(), ideal: vec![vec![1, 0]], radical: vec![vec![1, 0], vec![1, 1]] };
    assert!(verify(&claim, &EnumerationBudget::new(6)).is_confirmed());
    let wrong = Claim::Radical { monoid: cone(), ideal: vec![vec![1, 0]], radical: vec![vec![1, 0]] };
    assert_eq!(
        verify(&wrong, &EnumerationBudget::new(6)),
        Verdict::Refuted {
            witness: vec![1, 1],
            detail: "a multiple lies in the ideal but the element is outside the claimed radical".into()
        }
    );
}

#[test]
fn seeded_wrong_intersection() {
    let claim = Claim::Intersection { monoid: plane(), ideals: vec![ideal(&[X]), ideal(&[Y])], result: ideal(&[X]) };
    match verify(&claim, &EnumerationBudget::new(4)) {
        Verdict::Refuted { witness, .. } => assert_eq!(witness, X.to_vec()),
        other => panic!("expected a refutation, got {other}"),
    }
    let right = Claim::Intersection { monoid: plane(), ideals: vec![ideal(&[X]), ideal(&[Y])], result: ideal(&[[1, 1]]) };
    assert!(verify(&right, &EnumerationBudget::new(4)).is_confirmed());
}

#[test]
fn quotients_and_equalities() {
    let q = Claim::Quotient { monoid: plane(), ideal: ideal(&[[2, 0]]), by: ideal(&[X]), result: ideal(&[X]) };
    assert!(verify(&q, &EnumerationBudget::new(5)).is_confirmed());
    let e = Claim::IdealEquality { monoid: plane(), left: ideal(&[X, [2, 0]]), right: ideal(&[X]) };
    assert_eq!(verify(&e, &EnumerationBudget::new(5)), Verdict::Confirmed { up_to_degree: None });
    let not_primary = Claim::Primary { monoid: plane(), ideal: ideal(&[[1, 1]]) };
    assert!(verify(&not_primary, &EnumerationBudget::new(4)).is_refuted());
}

#[test]
fn lemma_instances() {
    let budget = EnumerationBudget::new(6);
    let i = ideal(&[[2, 0], [1, 1]]);
    let power = Claim::RadicalPower { monoid: plane(), ideal: i.clone(), radical: ideal(&[X]), max_power: 4 };
    assert_eq!(verify(&power, &budget), Verdict::Confirmed { up_to_degree: None });
    let qp = Claim::QuotientPrimary { monoid: plane(), primary: ideal(&[[2, 0], Y]), prime: ideal(&[X, Y]), element: X.to_vec() };
    assert!(verify(&qp, &budget).is_confirmed());
    let avoid = Claim::PrimeAvoidance { monoid: plane(), ideals: vec![ideal(&[X]), ideal(&[[2, 0], Y])], prime: ideal(&[X]) };
    assert!(verify(&avoid, &budget).is_confirmed());
    let lz = Claim::LocalZero { monoid: plane(), ideal: i.clone(), associated: vec![ideal(&[X]), ideal(&[X, Y])] };
    assert!(verify(&lz, &budget).is_confirmed());
    let lz_missing = Claim::LocalZero { monoid: plane(), ideal: i, associated: vec![ideal(&[X])] };
    assert!(verify(&lz_missing, &budget).is_refuted());
}

#[test]
fn normalization_claims() {
    let cusp = RawMonoid::free(1, &[vec![2], vec![3]]);
    let budget = EnumerationBudget::new(6);
    let hb = Claim::HilbertBasis { monoid: cusp.clone(), basis: vec![vec![1]] };
    assert!(verify(&hb, &budget).is_confirmed());
    let too_big = Claim::HilbertBasis { monoid: cusp.clone(), basis: vec![vec![1], vec![2]] };
    assert!(verify(&too_big, &budget).is_refuted());
    let sn = Claim::Seminormalization { monoid: cusp.clone(), generators: vec![vec![1]] };
    assert!(verify(&sn, &budget).is_confirmed());
    let not_sn = Claim::Seminormalization { monoid: cusp, generators: vec![vec![2], vec![3]] };
    assert!(verify(&not_sn, &budget).is_refuted());
    let even = RawMonoid::free(1, &[vec![2]]);
    let hb = Claim::HilbertBasis { monoid: even, basis: vec![vec![2]] };
    assert!(verify(&hb, &budget).is_confirmed());
    let eq = Claim::MonoidEquality { left: cone(), right: RawMonoid::free(2, &[vec![1, 0], vec![1, 2], vec![1, 1], vec![2, 2]]) };
    assert!(verify(&eq, &budget).is_confirmed());
}

#[test]
fn pointed_product_of_two_lines() {
    let line = RawMonoid::free_commutative(1);
    let gens = vec![
        vec![Some(vec![0]), None],
        vec![None, Some(vec![0])],
        vec![Some(vec![1]), Some(vec![0])],
        vec![Some(vec![0]), Some(vec![1])],
    ];
    let claim = Claim::PointedProduct { factors: vec![line.clone(), line.clone()], generators: gens.clone() };
    assert!(verify(&claim, &EnumerationBudget::new(6)).is_confirmed());
    let missing = Claim::PointedProduct { factors: vec![line.clone(), line], generators: gens[1..].to_vec() };
    assert!(verify(&missing, &EnumerationBudget::new(6)).is_refuted());
}

#[test]
fn finite_cohomology() {
    use std::collections::BTreeMap;
    let mut maps = BTreeMap::new();
    maps.insert((1, 0), vec![vec![]]);
    maps.insert((2, 0), vec![vec![]]);
    let sheaf = RawSheaf { opens: vec![vec![0], vec![0, 1], vec![0, 2]], moduli: vec![vec![6], vec![], vec![]], maps };
    let claim = |inv: &[i64]| Claim::Cohomology {
        sheaf: sheaf.clone(),
        degree: 1,
        group: RawGroup { rank: 0, invariant_factors: inv.to_vec() },
    };
    let budget = EnumerationBudget::new(0);
    assert!(verify(&claim(&[6]), &budget).is_confirmed());
    assert!(verify(&claim(&[2]), &budget).is_refuted());
    assert!(verify(&claim(&[]), &budget).is_refuted());
}
