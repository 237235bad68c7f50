mod common;

use common::*;
use locres_core::annihilator::{ann_first_order, complete_constant, AnnihilatorSet};
use locres_core::noether::noether_basis;
use locres_core::zerodim::Quotient;
use locres_core::{primary_decomposition, residue_map, ResidueOptions, WeylOp};

#[test]
fn double_cubic_is_one_primary_component() {
    let s = double_cubic();
    let d = primary_decomposition(s.basis()).unwrap();
    assert_eq!(d.components.len(), 1);
    let c = &d.components[0];
    assert_eq!(c.radical_text(&names()), "[x^2-2,y+1]");
    assert_eq!(c.multiplicity, 11);
    assert_eq!(Quotient::new(s.basis().clone()).unwrap().dim(), 22);
}

#[test]
fn noether_basis_of_double_cubic() {
    let s = double_cubic();
    let d = primary_decomposition(s.basis()).unwrap();
    let c = &d.components[0];
    let b = noether_basis(c).unwrap();
    assert_eq!(b.len(), 11);
    let texts: Vec<String> = b.operators.iter().map(|l| l.to_string()).collect();
    let expected = [
        "1",
        "dx",
        "dy",
        "dx*dy",
        "dy^2",
        "dx*dy^2",
        "3*dx^2+8*dy^3",
        "3*dx^2*dy+2*dy^4",
        "2*dx^3-3*x*dx^2+16*dx*dy^3",
        "15*dx^2*dy^2+4*dy^5",
        "30*dx^4-60*x*dx^3+480*dx^2*dy^3+135*dx^2+64*dy^6",
    ];
    assert_eq!(texts, expected);
    for l in NOETHER_REFERENCE.iter().map(|s| op(s)) {
        for g in c.primary.polys() {
            assert!(c.radical.contains(&l.apply(&g)), "{} on {}", l, g);
        }
        assert!(b.contains(&l).unwrap(), "{} outside the span", l);
    }
}

#[test]
fn first_order_reference_annihilators() {
    let s = double_cubic();
    let mut set = AnnihilatorSet::new(&s);
    for text in FIRST_ORDER_REFERENCE {
        let p = op(text);
        assert!(s.is_zero_class(&s.apply_to_class(&p, &s.sigma())), "{}", text);
        assert!(set.generates(&p).unwrap(), "{}", text);
    }
    for p in ann_first_order(&s).unwrap() {
        assert!(s.is_zero_class(&s.apply_to_class(&p, &s.sigma())), "{}", p);
    }
}

#[test]
fn constant_completion_reproduces_reference() {
    let s = double_cubic();
    let c = complete_constant(&op("3*(x^2-2)*dx+4*(y+1)*x*dy"), &s).unwrap();
    assert_eq!(c, poly("34*x"));
}

#[test]
fn second_layer_passes_oracle() {
    let s = double_cubic();
    let mut set = AnnihilatorSet::new(&s);
    for p in set.up_to(2).unwrap() {
        assert!(s.is_zero_class(&s.apply_to_class(&p, &s.sigma())), "{}", p);
    }
    assert!(set.layers()[2].iter().all(|p| p.order() == 2));
}

// The printed second-order operators drop their first-order terms: they fail
// the oracle as printed, yet each agrees with a genuine annihilator in its
// order-2 and order-0 parts.
#[test]
fn second_order_reference_lacks_first_order_terms() {
    let s = double_cubic();
    let mut set = AnnihilatorSet::new(&s);
    set.extend_to(2).unwrap();
    for text in SECOND_ORDER_REFERENCE {
        let p = op(text);
        assert!(!s.is_zero_class(&s.apply_to_class(&p, &s.sigma())), "{}", text);
        assert!(!set.generates(&p).unwrap(), "{}", text);
    }
}

#[test]
fn residue_map_of_double_cubic() {
    let s = double_cubic();
    let map = residue_map(&s, &ResidueOptions::default()).unwrap();
    assert_eq!(map.pairs.len(), 1);
    let pair = &map.pairs[0];
    assert_eq!(pair.operator.fmt_with(&names()).to_string(), T_EXPECTED);
    assert_eq!(pair.component.radical_text(&names()), "[x^2-2,y+1]");
    assert_eq!(pair.ann_order, 1);
    assert_eq!(pair.evaluate(&poly("1")), poly("35/8192*x"));
    assert_eq!(pair.h, poly("1/184320*x"));
}

// The reference S, taken adjoint, equals −S* modulo D√I, so its leading
// coefficient is −h.
#[test]
fn reference_s_differs_by_sign() {
    let s = double_cubic();
    let map = residue_map(&s, &ResidueOptions::default()).unwrap();
    let pair = &map.pairs[0];
    let reference = op("-30*dx^4+150*x*dx^3-480*dx^2*dy^3-135*(x^2+3)*dx^2+720*x*dx*dy^3+1575/2*x*dx-64*dy^6-720*dy^3-1575/2");
    let q = Quotient::new(pair.component.radical.clone()).unwrap();
    let sum: WeylOp = &reference.adjoint() + &pair.s_star;
    assert!(sum.right_normal_form().values().all(|u| q.reduce(u).is_zero()));
    let t_ref = reference.adjoint().multiply(&WeylOp::from_poly(-pair.h.clone())).adjoint().reduce_coefficients(&pair.component.radical);
    assert_eq!(t_ref, pair.operator);
}
