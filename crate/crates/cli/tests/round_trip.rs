use mscheme::corpus;
use mscheme::monoid::PcMonoid;
use mscheme::scheme::{Fan, MonoidScheme};
use mscheme::{AffineMonoid, GroupElement};
use mscheme_cli::document::{fan_document, monoid_document, scheme_document};
use mscheme_cli::{parse, Parsed};

fn reparse(v: &serde_json::Value) -> Parsed {
    parse(&serde_json::to_string(v).unwrap()).unwrap()
}

#[test]
fn monoids() {
    let cases: Vec<(AffineMonoid, Vec<GroupElement>)> = vec![
        (corpus::quadric_cone(), vec![]),
        (corpus::cusp(), vec![GroupElement::free(&[5])]),
        (AffineMonoid::free_commutative(2), vec![GroupElement::free(&[1, 1])]),
        (corpus::torsion_projective_line(&[2, 3]).unwrap().stalk(0).cancellative().clone(), vec![]),
    ];
    for (c, ideal) in cases {
        let Parsed::Monoid(m) = reparse(&monoid_document(&c, &ideal)) else { panic!("monoid expected") };
        assert!(m.cancellative.same_as(&c));
        let expected = PcMonoid::new(&c, &ideal).unwrap();
        assert!(m.pc().unwrap().same_as(&expected));
    }
}

#[test]
fn fans() {
    for fan in [Fan::projective_space(1).unwrap(), Fan::projective_space(3).unwrap()] {
        let Parsed::Fan(f) = reparse(&fan_document(&fan)) else { panic!("fan expected") };
        assert_eq!(f.rays(), fan.rays());
        assert_eq!(f.cones(), fan.cones());
    }
}

#[test]
fn schemes() {
    let schemes: Vec<MonoidScheme> = vec![
        corpus::projective(2),
        corpus::seminormal_line_bundle(),
        corpus::wedge_of_projective_lines(),
        corpus::lines_glued_generically(3),
        corpus::axes_scheme(),
        corpus::hirzebruch(1),
    ];
    for x in schemes {
        let Parsed::Scheme(y) = reparse(&scheme_document(&x).unwrap()) else { panic!("scheme expected") };
        assert!(y.is_isomorphic(&x));
    }
}
