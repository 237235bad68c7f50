//! Annihilators of `σ_F = [1/(f_1⋯f_n)]`, generated order by order from
//! syzygies of commutator data. No Gröbner bases in the Weyl algebra are
//! needed.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{lift, multi_indices, preimage, syzygy, LinearSystem, ModVec, Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::weyl::{RegularSequence, WeylOp};
use crate::zerodim::Quotient;

/// First-order generators: `Σ a_i ∂_i + c` from the syzygies of the
/// Jacobian columns together with `f_i e_j`, with `c = −Σ b_ii mod ⟨F⟩`.
pub fn ann_first_order(seq: &RegularSequence) -> Result<Vec<WeylOp>> {
    let n = seq.nvars();
    let f = seq.polys();
    let mut vectors = Vec::with_capacity(n + n * n);
    for i in 0..n {
        vectors.push(ModVec((0..n).map(|k| f[k].derivative(i)).collect()));
    }
    for fi in f {
        for j in 0..n {
            let mut v = ModVec::zero(n, n);
            v.0[j] = fi.clone();
            vectors.push(v);
        }
    }
    let mut out = Vec::new();
    for s in syzygy(&vectors)? {
        if s.0[..n].iter().all(Poly::is_zero) {
            continue;
        }
        let b_trace = (0..n).fold(Poly::zero(n), |acc, i| acc + s.0[n + i * n + i].clone());
        let c = seq.basis().normal_form(&-b_trace);
        let mut p = WeylOp::from_poly(c);
        for i in 0..n {
            p = p + WeylOp::term(s.0[i].clone(), Monomial::var(n, i, 1));
        }
        out.push(p.primitive());
    }
    Ok(sort_dedup(out))
}

fn sort_dedup(mut ops: Vec<WeylOp>) -> Vec<WeylOp> {
    ops.sort_by_cached_key(|p| (p.terms().values().map(Poly::len).sum::<usize>(), p.to_string()));
    ops.dedup();
    ops
}

/// Order-`r` generators from the syzygies of `[∂^α, f_k]` against the
/// lower generators `prev`; each main part is completed by
/// [`complete_constant`].
pub fn ann_step(r: u32, seq: &RegularSequence, prev: &[WeylOp]) -> Result<Vec<WeylOp>> {
    let n = seq.nvars();
    let f = seq.polys();
    let alphas = multi_indices(n, 1, r);
    let betas = multi_indices(n, 0, r - 1);
    let m = betas.len();
    let beta_index: BTreeMap<&Monomial, usize> = betas.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let rank = n * m;
    let phi = |k: usize, beta: &Monomial| k * m + beta_index[beta];

    let mut vectors = Vec::new();
    let mut module = Vec::new();
    for alpha in &alphas {
        let d = WeylOp::partial(alpha.clone());
        let mut v = ModVec::zero(rank, n);
        for (k, fk) in f.iter().enumerate() {
            for (beta, c) in d.commutator(fk).terms() {
                v.0[phi(k, beta)] = c.clone();
            }
        }
        vectors.push(v);
    }
    for p in prev {
        if p.order() >= r {
            return Err(Error::NotRegular(format!("generator of order {} passed to layer {}", p.order(), r)));
        }
        for k in 0..n {
            let mut v = ModVec::zero(rank, n);
            for (beta, d) in p.terms() {
                v.0[phi(k, beta)] = d.clone();
            }
            module.push(v);
        }
    }
    let mut out = Vec::new();
    for s in preimage(&vectors, &module)? {
        let main = WeylOp::from_terms(n, alphas.iter().cloned().zip(s.0.iter().cloned()).collect());
        if main.is_zero() || main.order() != r {
            continue;
        }
        let c = complete_constant(&main, seq)?;
        out.push((main + WeylOp::from_poly(c)).primitive());
    }
    Ok(sort_dedup(out))
}

/// Finds `c` with `P' + c` annihilating `σ_F`, given that every `[P', f_k]`
/// does. Writing `P' • σ_F = [s/f^l]`, solves
/// `s + c·Π f_k^{l_k − 1} ∈ ⟨f_1^{l_1}, …⟩` over the standard monomials of
/// `⟨F⟩`.
pub fn complete_constant(main: &WeylOp, seq: &RegularSequence) -> Result<Poly> {
    let n = seq.nvars();
    let class = seq.apply_to_class(main, &seq.sigma());
    if seq.is_zero_class(&class) {
        return Ok(Poly::zero(n));
    }
    for (k, fk) in seq.polys().iter().enumerate() {
        if !seq.is_zero_class(&seq.mul_class(fk, &class)) {
            return Err(Error::PoleOrder(k + 1));
        }
    }
    let target = Quotient::new((*seq.power_basis(&class.exponents)).clone())?;
    let lowered = class.exponents.iter().map(|&l| l - 1).collect::<Vec<_>>();
    let weight = seq.polys().iter().zip(&lowered).fold(Poly::one(n), |acc, (f, &e)| &acc * &f.pow(e));
    let unknowns = crate::zerodim::standard_monomials(seq.basis())?;
    let columns: Vec<Vec<Rational>> =
        unknowns.iter().map(|b| target.coords(&weight.mul_term(b, &Rational::one()))).collect();
    let rhs = target.coords(&class.numerator);
    let mut sys = LinearSystem::new(unknowns.len());
    for i in 0..target.dim() {
        let row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
        sys.add_equation(&row, &-rhs[i].clone());
    }
    let sol = sys.solution().map_err(|_| Error::CompletionFailed(format!("[({})/f^{:?}]", class.numerator, class.exponents)))?;
    Ok(Poly::from_terms(n, unknowns.into_iter().zip(sol.particular)))
}

/// Annihilator generators grouped by order; layer 0 is `F` itself. Layers
/// are produced on demand.
#[derive(Debug)]
pub struct AnnihilatorSet<'a> {
    seq: &'a RegularSequence,
    layers: Vec<Vec<WeylOp>>,
}

impl<'a> AnnihilatorSet<'a> {
    pub fn new(seq: &'a RegularSequence) -> Self {
        let f = seq.polys().iter().cloned().map(WeylOp::from_poly).collect();
        AnnihilatorSet { seq, layers: vec![f] }
    }

    /// Highest order computed so far.
    pub fn computed_order(&self) -> u32 {
        self.layers.len() as u32 - 1
    }

    pub fn layers(&self) -> &[Vec<WeylOp>] {
        &self.layers
    }

    /// Ensures every layer up to `r` exists.
    pub fn extend_to(&mut self, r: u32) -> Result<()> {
        while self.computed_order() < r {
            let next = self.computed_order() + 1;
            let layer = if next == 1 {
                ann_first_order(self.seq)?
            } else {
                let prev: Vec<WeylOp> = self.layers.iter().flatten().cloned().collect();
                ann_step(next, self.seq, &prev)?
            };
            self.layers.push(layer);
        }
        Ok(())
    }

    /// Layers `0..=r`, computing missing ones.
    pub fn layer(&mut self, r: u32) -> Result<&[Vec<WeylOp>]> {
        self.extend_to(r)?;
        Ok(&self.layers[..=r as usize])
    }

    /// True when `p` reduces to zero by order-by-order elimination: the
    /// top symbol is written as `Σ c_j σ(G_j) + Σ d_kα f_k e_α`, the
    /// annihilators `Σ c_j G_j + Σ d_kα ∂^α f_k` are subtracted, and the
    /// order-0 remainder must lie in `⟨F⟩`.
    pub fn generates(&mut self, p: &WeylOp) -> Result<bool> {
        let n = self.seq.nvars();
        self.extend_to(p.order())?;
        let mut rest = p.clone();
        for r in (1..=p.order()).rev() {
            let alphas = multi_indices(n, r, r);
            let symbol = |q: &WeylOp| ModVec(alphas.iter().map(|a| q.coefficient(a)).collect());
            let target = symbol(&rest);
            if target.is_zero() {
                continue;
            }
            let layer = &self.layers[r as usize];
            let mut vectors: Vec<ModVec> = layer.iter().map(symbol).collect();
            for fk in self.seq.polys() {
                for j in 0..alphas.len() {
                    vectors.push(ModVec::unit(alphas.len(), n, j).scale(fk));
                }
            }
            let Some(c) = lift(&vectors, &target)? else {
                return Ok(false);
            };
            let mut used = c.iter();
            for g in layer {
                rest = rest - g.mul_left(used.next().unwrap());
            }
            for fk in self.seq.polys() {
                for alpha in &alphas {
                    let d = used.next().unwrap();
                    rest = rest - WeylOp::term(d.clone(), alpha.clone()).multiply(&WeylOp::from_poly(fk.clone()));
                }
            }
            debug_assert!(rest.order() < r || rest.is_zero());
        }
        Ok(self.seq.basis().contains(&rest.coefficient(&Monomial::one(n))))
    }

    /// All generators of order at most `r`.
    pub fn up_to(&mut self, r: u32) -> Result<Vec<WeylOp>> {
        self.extend_to(r)?;
        Ok(self.layers[..=r as usize].iter().flatten().cloned().collect())
    }
}
