//! Syzygies and representations through the augmented module `(v_i | e_i)`.
//!
//! Under a module order where the original positions form a dominant block,
//! a Gröbner basis of the augmented module records the full Buchberger
//! trace; elements whose original part vanished form a Gröbner basis of the
//! syzygy module.

use super::groebner::{groebner_module, GroebnerBasis};
use super::order::{ModuleOrder, MonomialOrder};
use super::poly::{ModVec, Poly};
use crate::error::{Error, Result};

fn augment(vectors: &[ModVec]) -> Result<(usize, usize, Vec<ModVec>)> {
    augment_first(vectors, vectors.len())
}

/// Appends `e_i` to the first `k` vectors and zeros to the rest.
fn augment_first(vectors: &[ModVec], k: usize) -> Result<(usize, usize, Vec<ModVec>)> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let d = first.rank();
    let nvars = first.0.first().map(|p| p.nvars()).ok_or(Error::EmptyInput)?;
    let mut out = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        if v.rank() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.rank() });
        }
        let mut comps = v.0.clone();
        comps.extend((0..k).map(|j| if j == i { Poly::one(nvars) } else { Poly::zero(nvars) }));
        out.push(ModVec(comps));
    }
    Ok((d, nvars, out))
}

/// Generators (a Gröbner basis for term-over-position grevlex) of
/// `{ c : Σ c_i v_i = 0 }`.
pub fn syzygy(vectors: &[ModVec]) -> Result<Vec<ModVec>> {
    syzygy_with(vectors, &MonomialOrder::Grevlex)
}

pub fn syzygy_with(vectors: &[ModVec], term: &MonomialOrder) -> Result<Vec<ModVec>> {
    let (d, _, aug) = augment(vectors)?;
    let gb = groebner_module(&aug, &ModuleOrder::blocks(term.clone(), d))?;
    Ok(gb
        .generators()
        .into_iter()
        .filter(|g| g.0[..d].iter().all(Poly::is_zero))
        .map(|g| ModVec(g.0[d..].to_vec()))
        .collect())
}

/// Generators of `{ c : Σ c_i v_i ∈ ⟨module⟩ }`, without tracking
/// cofactors of the `module` generators.
pub fn preimage(vectors: &[ModVec], module: &[ModVec]) -> Result<Vec<ModVec>> {
    let k = vectors.len();
    let all: Vec<ModVec> = vectors.iter().chain(module).cloned().collect();
    let (d, _, aug) = augment_first(&all, k)?;
    let gb = groebner_module(&aug, &ModuleOrder::blocks(MonomialOrder::Grevlex, d))?;
    Ok(gb
        .generators()
        .into_iter()
        .filter(|g| g.0[..d].iter().all(Poly::is_zero))
        .map(|g| ModVec(g.0[d..].to_vec()))
        .filter(|g| !g.is_zero())
        .collect())
}

/// Precomputed data for repeated membership-with-certificate queries against
/// a fixed list of generators.
pub struct Lifter {
    d: usize,
    k: usize,
    nvars: usize,
    gb: GroebnerBasis,
}

impl Lifter {
    pub fn new(generators: &[ModVec]) -> Result<Self> {
        let (d, nvars, aug) = augment(generators)?;
        let gb = groebner_module(&aug, &ModuleOrder::blocks(MonomialOrder::Grevlex, d))?;
        Ok(Lifter { d, k: generators.len(), nvars, gb })
    }

    /// Cofactors `c` with `target = Σ c_i generators_i`, or `None` when the
    /// target is not in the submodule.
    pub fn lift(&self, target: &ModVec) -> Result<Option<Vec<Poly>>> {
        if target.rank() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: target.rank() });
        }
        let mut comps = target.0.clone();
        comps.extend((0..self.k).map(|_| Poly::zero(self.nvars)));
        let r = self.gb.normal_form_vec(&ModVec(comps))?;
        if r.0[..self.d].iter().all(Poly::is_zero) {
            Ok(Some(r.0[self.d..].iter().map(|p| -p).collect()))
        } else {
            Ok(None)
        }
    }
}

pub fn lift(generators: &[ModVec], target: &ModVec) -> Result<Option<Vec<Poly>>> {
    Lifter::new(generators)?.lift(target)
}
