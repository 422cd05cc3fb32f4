//! Named example monoids and schemes used by tests, benchmarks and the CLI.

use crate::error::{Error, Result};
use crate::monoid::{AffineMonoid, AmbientGroup, GroupElement, PcMonoid};
use crate::scheme::{from_fan, glue, mspec_scheme, projective_space, Fan, Identification, MonoidScheme};

fn monoid(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
    let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
    AffineMonoid::from_vectors(rank, &gens).expect("corpus generators are valid")
}

fn affine(c: &AffineMonoid) -> MonoidScheme {
    mspec_scheme(&PcMonoid::from_cancellative(c)).expect("affine schemes are valid")
}

/// Index of the point whose stalk has the given cancellative part.
pub fn point_with_stalk(x: &MonoidScheme, c: &AffineMonoid) -> Result<usize> {
    (0..x.len())
        .find(|&p| x.stalk(p).cancellative().same_as(c))
        .ok_or_else(|| Error::Precondition(format!("no point with stalk {c}")))
}

/// The numerical monoid `⟨2, 3⟩`.
pub fn cusp() -> AffineMonoid {
    monoid(1, &[&[2], &[3]])
}

/// `⟨x, y, z | xy = z²⟩` with `x = (1,0)`, `z = (1,1)`, `y = (1,2)`.
pub fn quadric_cone() -> AffineMonoid {
    monoid(2, &[&[1, 0], &[1, 1], &[1, 2]])
}

pub fn quadric_cone_scheme() -> MonoidScheme {
    affine(&quadric_cone())
}

/// `ℕ²/(x₁x₂)`, the union of the two coordinate axes.
pub fn axes() -> PcMonoid {
    PcMonoid::new(&AffineMonoid::free_commutative(2), &[GroupElement::free(&[1, 1])]).expect("valid ideal")
}

pub fn axes_scheme() -> MonoidScheme {
    mspec_scheme(&axes()).expect("valid scheme")
}

/// `𝔸ⁿ = MSpec ℕⁿ`.
pub fn affine_space(n: usize) -> MonoidScheme {
    affine(&AffineMonoid::free_commutative(n))
}

/// `ℙⁿ`.
pub fn projective(n: usize) -> MonoidScheme {
    projective_space(n).expect("projective space")
}

/// `n + 1` affine lines glued along their common generic point.
pub fn lines_glued_generically(n: usize) -> MonoidScheme {
    let line = affine_space(1);
    let generic = line.generic_points()[0];
    let copies = vec![line; n + 1];
    let ids: Vec<Identification> = (1..=n).map(|k| Identification::identity((0, generic), (k, generic))).collect();
    glue(&copies, &ids).expect("valid gluing")
}

/// `U₊ = MSpec⟨x, y², xy⟩` and `U₋ = MSpec⟨x, y⁻², xy⁻¹⟩` glued along their
/// common localization `⟨x, xy, y^{±2}⟩`: a seminormal non-normal scheme
/// whose normalization is `𝔸¹ × ℙ¹`.
pub fn seminormal_line_bundle() -> MonoidScheme {
    let plus = affine(&monoid(2, &[&[1, 0], &[0, 2], &[1, 1]]));
    let minus = affine(&monoid(2, &[&[1, 0], &[0, -2], &[1, -1]]));
    let middle = monoid(2, &[&[1, 0], &[1, 1], &[0, 2], &[0, -2]]);
    let whole = monoid(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
    let ids = vec![
        Identification::identity(
            (0, point_with_stalk(&plus, &middle).expect("chart point")),
            (1, point_with_stalk(&minus, &middle).expect("chart point")),
        ),
        Identification::identity(
            (0, point_with_stalk(&plus, &whole).expect("generic point")),
            (1, point_with_stalk(&minus, &whole).expect("generic point")),
        ),
    ];
    glue(&[plus, minus], &ids).expect("valid gluing")
}

/// The closed points of [`seminormal_line_bundle`]: the apex of `U₊`, then of `U₋`.
pub fn seminormal_line_bundle_charts(x: &MonoidScheme) -> (usize, usize) {
    let plus = monoid(2, &[&[1, 0], &[0, 2], &[1, 1]]);
    let minus = monoid(2, &[&[1, 0], &[0, -2], &[1, -1]]);
    (point_with_stalk(x, &plus).expect("U+ chart"), point_with_stalk(x, &minus).expect("U- chart"))
}

/// `A_x = {1} ∪ {u xⁿ : u ∈ U, n > 0}` and `A_{1/x}` glued at their common
/// generic point, for the finite abelian group `U = ℤ/d₁ ⊕ …`.
pub fn torsion_projective_line(torsion: &[i64]) -> Result<MonoidScheme> {
    let amb = AmbientGroup::new(1, torsion)?;
    let mut units: Vec<Vec<i64>> = vec![vec![]];
    for &d in torsion {
        units = units.into_iter().flat_map(|u| (0..d).map(move |t| [u.clone(), vec![t]].concat())).collect();
    }
    let chart = |sign: i64| -> Result<MonoidScheme> {
        let gens: Vec<GroupElement> = units.iter().map(|u| GroupElement::new(&[sign], u)).collect();
        mspec_scheme(&PcMonoid::from_cancellative(&AffineMonoid::new(&amb, &gens)?))
    };
    let (a, b) = (chart(1)?, chart(-1)?);
    let ids = vec![Identification::identity((0, a.generic_points()[0]), (1, b.generic_points()[0]))];
    glue(&[a, b], &ids)
}

/// Two projective lines meeting transversally in one point: the chart at
/// the meeting point is `ℕ²/(x₁x₂)`.
pub fn wedge_of_projective_lines() -> MonoidScheme {
    let meet = axes_scheme();
    let line_chart = |gens: &[&[i64]], ideal: &[i64]| {
        mspec_scheme(&PcMonoid::new(&monoid(2, gens), &[GroupElement::free(ideal)]).expect("valid ideal"))
            .expect("valid scheme")
    };
    let first = line_chart(&[&[-1, 0], &[0, 1]], &[0, 1]);
    let second = line_chart(&[&[1, 0], &[0, -1]], &[1, 0]);
    let branch = |gens: &[&[i64]]| monoid(2, gens);
    let b1 = branch(&[&[1, 0], &[-1, 0], &[0, 1]]);
    let b2 = branch(&[&[0, 1], &[0, -1], &[1, 0]]);
    let ids = vec![
        Identification::identity(
            (0, point_with_stalk(&meet, &b1).expect("branch")),
            (1, point_with_stalk(&first, &b1).expect("branch")),
        ),
        Identification::identity(
            (0, point_with_stalk(&meet, &b2).expect("branch")),
            (2, point_with_stalk(&second, &b2).expect("branch")),
        ),
    ];
    glue(&[meet, first, second], &ids).expect("valid gluing")
}

/// The Hirzebruch surface `F_a` from its fan.
pub fn hirzebruch(a: i64) -> MonoidScheme {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]];
    let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
    from_fan(&Fan::new(2, &rays, &cones).expect("valid fan")).expect("valid scheme")
}

/// The weighted projective plane `ℙ(1,1,2)` (singular, not locally factorial).
pub fn weighted_projective_plane() -> MonoidScheme {
    let rays = vec![vec![1, 0], vec![0, 1], vec![-1, -2]];
    let cones = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
    from_fan(&Fan::new(2, &rays, &cones).expect("valid fan")).expect("valid scheme")
}

/// A complete fan without a two-dimensional cone: `ℙ¹` glued from rays
/// inside `ℤ²`, giving `ℙ¹ × 𝔾_m`.
pub fn projective_line_times_torus() -> MonoidScheme {
    let rays = vec![vec![1, 0], vec![-1, 0]];
    let cones = vec![vec![0], vec![1]];
    from_fan(&Fan::new(2, &rays, &cones).expect("valid fan")).expect("valid scheme")
}
