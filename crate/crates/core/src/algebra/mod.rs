//! Exact commutative algebra substrate: rationals, polynomials, term orders,
//! Gröbner bases for ideals and modules, syzygies, and linear solving.

pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod syzygy;

pub use groebner::{groebner, groebner_module, GroebnerBasis};
pub use linalg::{solve_linear, AffineSolution, LinearSystem, Matrix, SparseEchelon};
pub use monomial::{binomial, multi_indices, Monomial};
pub use order::{ModuleOrder, MonomialOrder, PositionPrecedence};
pub use parse::{parse_poly, parse_rational, ParseError};
pub use poly::{default_names, jacobian, monomial_factors, write_term, ModVec, Poly};
pub use rational::{rat, ratio, Rational};
pub use syzygy::{lift, preimage, syzygy, Lifter};
