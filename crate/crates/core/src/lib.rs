//! Exact Grothendieck local residues.
//!
//! Given a regular sequence `F = {f_1, …, f_n} ⊂ Q[x_1, …, x_n]`, the crate
//! computes for each primary component `I_λ` of `⟨F⟩` a differential operator
//! `T_λ` such that the local residue of `φ dx / (f_1⋯f_n)` at any zero `β`
//! of `√I_λ` equals `(T_λ • φ)(β)`.
//!
//! The pipeline runs entirely in polynomial rings: zero-dimensional primary
//! decomposition ([`zerodim`]), Noether operator bases ([`noether`]),
//! annihilators of `[1/(f_1⋯f_n)]` built order by order from syzygies
//! ([`annihilator`]), and the residue operators themselves ([`residue`]).

pub mod algebra;
pub mod annihilator;
pub mod error;
pub mod factor;
pub mod noether;
pub mod residue;
pub mod weyl;
pub mod zerodim;

pub use algebra::{parse_poly, GroebnerBasis, ModVec, Monomial, MonomialOrder, Poly, Rational};
pub use error::{Error, Result};

pub use residue::{residue_eval, residue_map, ResidueMap, ResidueOptions, ResiduePair};
pub use weyl::{CohomClass, RegularSequence, WeylOp};
pub use zerodim::{primary_decomposition, Decomposition, PrimaryComponent};
