#![allow(dead_code)]

use locres_core::algebra::parse_poly;
use std::collections::BTreeMap;

use locres_core::{Poly, Rational, RegularSequence, WeylOp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const XY: [&str; 2] = ["x", "y"];

pub const F1: &str = "(x^2-2)*(x^4-4*x^2-y^4-5*y^3-9*y^2-7*y+2)";
pub const F2: &str = "x^4-4*x^2-y^3-3*y^2-3*y+3";

pub const T_EXPECTED: &str = "1/6144*x*dx^4-5/3072*dx^3+1/384*x*dx^2*dy^3+15/4096*x*dx^2-1/128*dx*dy^3-35/4096*dx+1/2880*x*dy^6+1/256*x*dy^3+35/8192*x";

pub const NOETHER_REFERENCE: [&str; 11] = [
    "1",
    "dx",
    "dy",
    "dy^2",
    "dx*dy",
    "3*dx^2+8*dy^3",
    "dx*dy^2",
    "3*dx^2*dy+2*dy^4",
    "2*dx^3-3*x*dx^2+16*dx*dy^3",
    "15*dx^2*dy^2+4*dy^5",
    "30*dx^4-60*x*dx^3+480*dx^2*dy^3+135*dx^2+64*dy^6",
];

pub const FIRST_ORDER_REFERENCE: [&str; 5] = [
    "3*(y+1)^3*dx+4*(y+1)*x*(x^2-2)*dy+22*x*(x^2-2)",
    "3*(x^2-2)*dx+4*(y+1)*x*dy+34*x",
    "(y+1)^5*dy-3*(x^2-2)^2+(y+1)^3*(7*y+10)",
    "((y+1)^3-(x^2-2)^2)*dy+3*(y+1)^2",
    "(y+1)*(x^2-2)*((y+1)*dy+4)",
];

pub const SECOND_ORDER_REFERENCE: [&str; 6] = [
    "(7*(x^2-2)^2-4*(y+1)^3)*dy^2-66*(y+1)",
    "(y+1)^3*(x^2-2)*dy^2",
    "(y+1)^6*dy^2",
    "21*(y+1)^2*(x^2-2)*dx*dy+5*x*(y+1)^3*dy^2+604*x*(y+1)",
    "(y+1)^5*dx*dy",
    "21*(y+1)^4*dx^2+16*(y+1)^3*dy^2",
];

pub fn poly(s: &str) -> Poly {
    parse_poly(s, &XY).unwrap()
}

pub fn op(s: &str) -> WeylOp {
    WeylOp::parse(s, &XY).unwrap()
}

pub fn seq(gens: &[&str]) -> RegularSequence {
    RegularSequence::new(gens.iter().map(|s| poly(s)).collect()).unwrap()
}

pub fn double_cubic() -> RegularSequence {
    seq(&[F1, F2])
}

pub fn names() -> Vec<String> {
    XY.iter().map(|s| s.to_string()).collect()
}

pub fn small(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// Dense random polynomial in `n` variables of total degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, bound: i64) -> Poly {
    let mut terms = Vec::new();
    for m in locres_core::algebra::multi_indices(n, 0, deg) {
        if rng.gen_bool(0.6) {
            terms.push((m, small(rng, bound)));
        }
    }
    Poly::from_terms(n, terms)
}

/// Random operator of order at most `ord` with coefficients of degree at most `deg`.
pub fn random_op(rng: &mut ChaCha8Rng, n: usize, ord: u32, deg: u32) -> WeylOp {
    let mut terms = BTreeMap::new();
    for a in locres_core::algebra::multi_indices(n, 0, ord) {
        if rng.gen_bool(0.5) {
            terms.insert(a, random_poly(rng, n, deg, 3));
        }
    }
    WeylOp::from_terms(n, terms)
}
