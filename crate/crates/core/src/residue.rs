//! Residue operators `T_λ` on each primary component of `⟨F⟩`.
//!
//! For a component `I_λ` with Noether basis `L_1, …, L_m`, the adjoint
//! operators `R_i = L_i^*` span the candidates for `T*_{F,λ}`. The monic
//! combination `S* = R_m + Σ_{i<m} R_i s_i` killed by `Ann(σ_F)` modulo
//! `D√I_λ` is found by undetermined coefficients, escalating the annihilator
//! order until the coefficients are pinned down. Then `T* = S*·h` with
//! `J_F S* h ≡ m_λ`, and `T_λ = (T*)^*`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{LinearSystem, Monomial, Poly, Rational};
use crate::annihilator::AnnihilatorSet;
use crate::error::{Error, Result};
use crate::noether::{noether_basis, NoetherBasis};
use crate::weyl::{RegularSequence, WeylOp};
use crate::zerodim::{primary_decomposition_with, Decomposition, DecompositionOptions, PrimaryComponent, Quotient};

#[derive(Clone, Debug, Default)]
pub struct ResidueOptions {
    /// Annihilators of at least this order are always used.
    pub min_ann_order: u32,
    /// Escalation cap; `None` means the total multiplicity.
    pub max_ann_order: Option<u32>,
    pub seed: u64,
    /// Worker threads for the per-component runs; 0 or 1 runs sequentially.
    pub jobs: usize,
    /// A precomputed decomposition used instead of computing one.
    pub decomposition: Option<Decomposition>,
}

/// `Σ_i R_i · (Σ_j c_ij x^{γ_j}) + fixed`, linear in the unknowns `c_ij`.
#[derive(Clone, Debug)]
pub struct UndeterminedOperator {
    fixed: WeylOp,
    terms: Vec<WeylOp>,
    quotient: Quotient,
}

impl UndeterminedOperator {
    pub fn new(fixed: WeylOp, terms: Vec<WeylOp>, radical: &crate::GroebnerBasis) -> Result<Self> {
        Ok(UndeterminedOperator { fixed, terms, quotient: Quotient::new(radical.clone())? })
    }

    /// The monomials `γ_j` of `B`.
    pub fn monomials(&self) -> &[Monomial] {
        self.quotient.basis()
    }

    pub fn unknowns(&self) -> usize {
        self.terms.len() * self.monomials().len()
    }

    /// Appends to `sys` the conditions that every right-normal-form
    /// coefficient of `left · self + offset` vanishes modulo `√I`.
    /// `offset` enters the order-zero coefficient only.
    pub fn impose(&self, left: &WeylOp, offset: &Rational, sys: &mut LinearSystem) {
        let d = self.monomials().len();
        let fixed = left.multiply(&self.fixed).right_normal_form();
        let parts: Vec<BTreeMap<Monomial, Poly>> = self.terms.iter().map(|r| left.multiply(r).right_normal_form()).collect();
        let mut alphas: Vec<&Monomial> = fixed.keys().chain(parts.iter().flat_map(|p| p.keys())).collect();
        alphas.sort();
        alphas.dedup();
        let zero = Monomial::one(self.fixed.nvars());
        for alpha in alphas {
            let mut columns = Vec::with_capacity(self.unknowns());
            for part in &parts {
                let u = part.get(alpha).map(|u| self.quotient.reduce(u));
                for g in self.monomials() {
                    columns.push(match &u {
                        Some(u) => self.quotient.coords(&u.mul_term(g, &Rational::one())),
                        None => vec![Rational::zero(); d],
                    });
                }
            }
            let mut rhs = fixed.get(alpha).map(|u| self.quotient.coords(u)).unwrap_or_else(|| vec![Rational::zero(); d]);
            if *alpha == zero && !offset.is_zero() {
                let c = self.quotient.coords(&Poly::constant(self.fixed.nvars(), offset.clone()));
                rhs.iter_mut().zip(c).for_each(|(r, c)| *r += c);
            }
            for (k, r) in rhs.iter().enumerate() {
                let row: Vec<Rational> = columns.iter().map(|c| c[k].clone()).collect();
                sys.add_equation(&row, &-r.clone());
            }
        }
    }

    /// Substitutes `values` for the unknowns.
    pub fn substitute(&self, values: &[Rational]) -> WeylOp {
        let d = self.monomials().len();
        let n = self.fixed.nvars();
        let mut out = self.fixed.clone();
        for (i, r) in self.terms.iter().enumerate() {
            let s = Poly::from_terms(n, self.monomials().iter().cloned().zip(values[i * d..(i + 1) * d].iter().cloned()));
            if !s.is_zero() {
                out = out + r.multiply(&WeylOp::from_poly(s));
            }
        }
        out
    }
}

/// True when all right-normal-form coefficients of `p` lie in `√I`.
fn in_right_radical(p: &WeylOp, quotient: &Quotient) -> bool {
    p.right_normal_form().values().all(|u| quotient.reduce(u).is_zero())
}

/// Representative of `p` modulo `D√I`: right coefficients reduced.
fn reduce_right(p: &WeylOp, quotient: &Quotient) -> WeylOp {
    let right = p.right_normal_form().into_iter().map(|(a, u)| (a, quotient.reduce(&u))).collect();
    WeylOp::from_right_normal_form(p.nvars(), &right)
}

/// Annihilator layers shared by all components of one sequence.
pub struct AnnihilatorSource<'a> {
    set: Mutex<AnnihilatorSet<'a>>,
}

impl<'a> AnnihilatorSource<'a> {
    pub fn new(seq: &'a RegularSequence) -> Self {
        AnnihilatorSource { set: Mutex::new(AnnihilatorSet::new(seq)) }
    }

    /// The generators of order exactly `r`.
    pub fn layer(&self, r: u32) -> Result<Vec<WeylOp>> {
        let mut set = self.set.lock().unwrap();
        set.extend_to(r)?;
        Ok(set.layers()[r as usize].clone())
    }
}

/// The monic operator `S*` together with the annihilator order that fixed it.
#[derive(Clone, Debug)]
pub struct SolvedS {
    pub operator: WeylOp,
    pub ann_order: u32,
}

pub fn compute_s(
    basis: &NoetherBasis,
    annihilators: &AnnihilatorSource,
    min_order: u32,
    max_order: u32,
) -> Result<SolvedS> {
    let radical = &basis.component.radical;
    let mut adjoints: Vec<WeylOp> = basis.operators.iter().map(WeylOp::adjoint).collect();
    let top = adjoints.pop().expect("a Noether basis contains 1");
    let skeleton = UndeterminedOperator::new(top, adjoints, radical)?;
    let mut sys = LinearSystem::new(skeleton.unknowns());
    let mut used = Vec::new();
    let mut order = 0;
    loop {
        for l in annihilators.layer(order)? {
            skeleton.impose(&l, &Rational::zero(), &mut sys);
            used.push(l);
        }
        if sys.is_inconsistent() {
            return Err(Error::InconsistentSystem);
        }
        if sys.free_count() == 0 && order >= min_order {
            break;
        }
        if order >= max_order {
            return Err(Error::AnnihilatorCap { cap: max_order, free: sys.free_count() });
        }
        order += 1;
    }
    let sol = sys.solution()?;
    let s = reduce_right(&skeleton.substitute(&sol.particular), &skeleton.quotient);
    for l in &used {
        if !in_right_radical(&l.multiply(&s), &skeleton.quotient) {
            return Err(Error::Certificate(format!("{} • S* is not in D√I", l)));
        }
    }
    Ok(SolvedS { operator: s, ann_order: order })
}

/// The leading coefficient `h` with `J_F S* h − m_λ ∈ D√I_λ`, and
/// `T* = S*·h`.
pub fn compute_t(component: &PrimaryComponent, seq: &RegularSequence, s: &WeylOp) -> Result<(Poly, WeylOp)> {
    let radical = &component.radical;
    let n = seq.nvars();
    let skeleton = UndeterminedOperator::new(WeylOp::zero(n), vec![s.clone()], radical)?;
    let jf = WeylOp::from_poly(seq.jacobian().clone());
    let m = Rational::from_integer(component.multiplicity.into());
    let mut sys = LinearSystem::new(skeleton.unknowns());
    skeleton.impose(&jf, &-m.clone(), &mut sys);
    let sol = sys.solution()?;
    if !sol.is_unique() {
        return Err(Error::Underdetermined(sol.nullspace.len()));
    }
    let h = Poly::from_terms(n, skeleton.monomials().iter().cloned().zip(sol.particular));
    let t_star = s.multiply(&WeylOp::from_poly(h.clone()));
    let check = jf.multiply(&t_star) - WeylOp::from_poly(Poly::constant(n, m));
    if !in_right_radical(&check, &skeleton.quotient) {
        return Err(Error::Certificate("J_F S* h − m is not in D√I".into()));
    }
    Ok((h, t_star))
}

/// One pair `(T_λ, √I_λ)` with the intermediate data that produced it.
#[derive(Clone, Debug)]
pub struct ResiduePair {
    /// `T_λ` with left coefficients reduced modulo `√I_λ`.
    pub operator: WeylOp,
    pub component: PrimaryComponent,
    pub noether: Vec<WeylOp>,
    pub s_star: WeylOp,
    pub h: Poly,
    pub ann_order: u32,
}

impl ResiduePair {
    pub fn radical(&self) -> &crate::GroebnerBasis {
        &self.component.radical
    }

    /// `T_λ • φ` reduced modulo `√I_λ`.
    pub fn evaluate(&self, phi: &Poly) -> Poly {
        self.component.radical.normal_form(&self.operator.apply(phi))
    }
}

#[derive(Clone, Debug)]
pub struct ResidueMap {
    pub pairs: Vec<ResiduePair>,
}

impl ResidueMap {
    /// Residues of `φ dx/(f_1⋯f_n)` as `(T_λ • φ mod √I_λ, √I_λ)`.
    pub fn evaluate(&self, phi: &Poly) -> Vec<(Poly, crate::GroebnerBasis)> {
        self.pairs.iter().map(|p| (p.evaluate(phi), p.component.radical.clone())).collect()
    }

    /// Sum of the residues of `ψ dx/(f_1⋯f_n)` over all zeros: the trace
    /// of `T_λ • ψ` on each `K[x]/√I_λ`, added up.
    pub fn total_residue(&self, psi: &Poly) -> Result<Rational> {
        let mut sum = Rational::zero();
        for p in &self.pairs {
            sum += Quotient::new(p.component.radical.clone())?.trace(&p.evaluate(psi));
        }
        Ok(sum)
    }
}

fn residue_pair(
    component: &PrimaryComponent,
    seq: &RegularSequence,
    annihilators: &AnnihilatorSource,
    options: &ResidueOptions,
    cap: u32,
) -> Result<ResiduePair> {
    let basis = noether_basis(component)?;
    let solved = compute_s(&basis, annihilators, options.min_ann_order, cap)?;
    let (h, t_star) = compute_t(component, seq, &solved.operator)?;
    let operator = t_star.adjoint().reduce_coefficients(&component.radical);
    Ok(ResiduePair {
        operator,
        component: component.clone(),
        noether: basis.operators,
        s_star: solved.operator,
        h,
        ann_order: solved.ann_order,
    })
}

pub fn residue_map(seq: &RegularSequence, options: &ResidueOptions) -> Result<ResidueMap> {
    let decomposition = match &options.decomposition {
        Some(d) => d.clone(),
        None => primary_decomposition_with(seq.basis(), &DecompositionOptions { seed: options.seed, ..Default::default() })?,
    };
    let total: usize = decomposition.components.iter().map(|c| c.multiplicity).sum();
    let cap = options.max_ann_order.unwrap_or(total as u32).max(options.min_ann_order);
    let annihilators = AnnihilatorSource::new(seq);
    let run = |c: &PrimaryComponent| residue_pair(c, seq, &annihilators, options, cap);
    let pairs: Result<Vec<ResiduePair>> = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        pool.install(|| decomposition.components.par_iter().map(run).collect())
    } else {
        decomposition.components.iter().map(run).collect()
    };
    Ok(ResidueMap { pairs: pairs? })
}

pub fn residue_eval(seq: &RegularSequence, phi: &Poly, options: &ResidueOptions) -> Result<Vec<(Poly, crate::GroebnerBasis)>> {
    Ok(residue_map(seq, options)?.evaluate(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn seq(names: &[&str], gens: &[&str]) -> RegularSequence {
        RegularSequence::new(gens.iter().map(|s| parse_poly(s, names).unwrap()).collect()).unwrap()
    }

    #[test]
    fn origin_is_cauchy() {
        let s = seq(&["x", "y"], &["x", "y"]);
        let map = residue_map(&s, &ResidueOptions::default()).unwrap();
        assert_eq!(map.pairs.len(), 1);
        assert_eq!(map.pairs[0].operator.to_string(), "1");
        let phi = parse_poly("3+x*y-2*y", &["x", "y"]).unwrap();
        assert_eq!(map.evaluate(&phi)[0].0.to_string(), "3");
    }

    #[test]
    fn double_point() {
        let s = seq(&["x", "y"], &["x^2", "y-1"]);
        let map = residue_map(&s, &ResidueOptions::default()).unwrap();
        assert_eq!(map.pairs.len(), 1);
        // Res [φ dx dy / x²(y−1)] = ∂φ/∂x at (0, 1)
        assert_eq!(map.pairs[0].operator.to_string(), "dx");
    }

    #[test]
    fn simple_zeros_invert_jacobian() {
        let s = seq(&["x", "y"], &["x^2-1", "y^2-1"]);
        let map = residue_map(&s, &ResidueOptions::default()).unwrap();
        assert_eq!(map.pairs.len(), 4);
        let jf = s.jacobian();
        for p in &map.pairs {
            assert_eq!(p.evaluate(jf).to_string(), "1");
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let s = seq(&["x", "y"], &["x^2-1", "y^3-y"]);
        let a = residue_map(&s, &ResidueOptions::default()).unwrap();
        let b = residue_map(&s, &ResidueOptions { jobs: 3, ..Default::default() }).unwrap();
        let texts = |m: &ResidueMap| m.pairs.iter().map(|p| p.operator.to_string()).collect::<Vec<_>>();
        assert_eq!(texts(&a), texts(&b));
    }
}
