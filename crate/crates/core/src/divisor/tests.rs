use super::*;
use crate::corpus;
use crate::monoid::GroupElement;
use crate::scheme::product;
use crate::PresentedAbGroup;

fn z(n: usize) -> PresentedAbGroup {
    PresentedAbGroup::free(n)
}

#[test]
fn seminormal_line_bundle_picard() {
    let x = corpus::seminormal_line_bundle();
    assert!(x.is_cancellative() && !x.is_normal());
    assert_eq!(picard_group(&x).unwrap(), z(1));

    let cmp = nor_comparison(&x).unwrap();
    assert!(cmp.is_exact());
    assert!(cmp.direct_image_consistent);
    assert_eq!(cmp.picard, z(1));
    assert_eq!(cmp.picard_nor, z(1));
    assert!(cmp.pullback.is_injective());
    assert_eq!(cmp.pullback_cokernel, PresentedAbGroup::from_cyclic_orders(&[2]));

    // (U₊, y²), (U₋, 1) generates Pic(X)
    let cart = cartier_group(&x).unwrap();
    let (plus, minus) = corpus::seminormal_line_bundle_charts(&x);
    let d = CartierDivisor::from_charts(&x, &[(plus, GroupElement::free(&[0, 2])), (minus, GroupElement::free(&[0, 0]))])
        .unwrap();
    let class = cart.picard_class(&d).unwrap();
    let single = crate::lattice::FpGroup::free(1);
    let hom = crate::lattice::FpHom::new(
        single,
        cart.delta.dst.clone(),
        crate::lattice::IntMatrix::from_big_cols(class.len(), &[class]),
    );
    assert!(hom.is_isomorphism());
    // (U₊, y) is not a Cartier divisor on X
    assert!(CartierDivisor::from_charts(&x, &[(plus, GroupElement::free(&[0, 1])), (minus, GroupElement::free(&[0, 0]))])
        .is_err());
}

#[test]
fn torsion_projective_line_picard() {
    let x = corpus::torsion_projective_line(&[2]).unwrap();
    assert_eq!(picard_group(&x).unwrap(), PresentedAbGroup { rank: 1, invariant_factors: vec![2] });
    let cmp = nor_comparison(&x).unwrap();
    assert!(cmp.is_exact());
    assert_eq!(cmp.picard_nor, z(1));
    assert!(cmp.pullback.is_surjective());
    assert_eq!(cmp.pullback_kernel, PresentedAbGroup::from_cyclic_orders(&[2]));
}

#[test]
fn normal_schemes_have_trivial_comparison_sheaf() {
    let x = corpus::projective(2);
    let cmp = nor_comparison(&x).unwrap();
    assert!(cmp.is_exact());
    assert!(cmp.pullback.is_isomorphism());
    assert!(cmp.sequence.groups[2].is_trivial());
    assert!(cmp.sequence.groups[5].is_trivial());
}

#[test]
fn non_seminormal_scheme_is_rejected() {
    let cusp = crate::scheme::mspec_scheme(&crate::PcMonoid::from_cancellative(&corpus::cusp())).unwrap();
    assert!(nor_comparison(&cusp).is_err());
}

#[test]
fn wedge_of_lines() {
    let x = corpus::wedge_of_projective_lines();
    assert_eq!(picard_group(&x).unwrap(), z(2));
    let mv = mayer_vietoris(&x).unwrap();
    assert!(mv.is_exact());
    assert!(mv.direct_image_consistent);
    assert_eq!(mv.picard, z(2));
    assert_eq!(mv.picard_first.direct_sum(&mv.picard_rest), z(2));
}

#[test]
fn axes_mayer_vietoris() {
    let x = corpus::axes_scheme();
    let mv = mayer_vietoris(&x).unwrap();
    assert!(mv.is_exact());
    assert!(mv.sequence.groups.iter().all(|g| g.is_trivial()));
}

#[test]
fn class_groups() {
    assert_eq!(class_group(&corpus::quadric_cone_scheme()).unwrap(), PresentedAbGroup::from_cyclic_orders(&[2]));
    for n in 1..=3 {
        assert_eq!(class_group(&corpus::projective(n)).unwrap(), z(1));
        assert_eq!(class_group(&corpus::lines_glued_generically(n)).unwrap(), z(n));
    }
    assert_eq!(class_group(&corpus::hirzebruch(1)).unwrap(), z(2));
    let w = corpus::weighted_projective_plane();
    assert_eq!(class_group(&w).unwrap(), z(1));
    let cmp = pic_to_cl(&w).unwrap();
    assert!(cmp.injective && !cmp.isomorphism);
    assert_eq!(cmp.picard, z(1));
}

#[test]
fn product_and_homotopy_checks() {
    let p1 = corpus::projective(1);
    let v = class_group_product_check(&p1, &p1).unwrap();
    assert!(v.holds());
    assert_eq!(v.lhs, z(2));
    let h = pic_homotopy_check(&p1).unwrap();
    assert!(h.holds());
    assert_eq!(h.rhs, z(1));
    assert_eq!(picard_group(&product(&p1, &corpus::affine_space(1)).unwrap()).unwrap(), z(1));
    let sn = pic_sn_check(&corpus::seminormal_line_bundle(), None).unwrap();
    assert!(sn.holds());
}

#[test]
fn torus_factor_keeps_picard_free() {
    let x = corpus::projective_line_times_torus();
    assert_eq!(picard_group(&x).unwrap(), z(1));
    assert_eq!(global_units(&x).unwrap(), z(1));
}
