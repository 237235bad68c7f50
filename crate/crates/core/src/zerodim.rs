//! Zero-dimensional ideals: quotient rings, radicals and primary
//! decomposition through a separating linear form.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{groebner, solve_linear, GroebnerBasis, Matrix, Monomial, MonomialOrder, Poly, Rational};
use crate::error::{Error, Result};
use crate::factor::{factor_univariate_seeded, squarefree_part};

/// Every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit() {
        return true;
    }
    pure_power_bounds(gb).is_some()
}

fn pure_power_bounds(gb: &GroebnerBasis) -> Option<Vec<u32>> {
    let n = gb.nvars();
    let leads = gb.leading_monomials();
    (0..n)
        .map(|i| {
            leads
                .iter()
                .filter(|m| (0..n).all(|j| j == i || m.get(j) == 0) && m.get(i) > 0)
                .map(|m| m.get(i))
                .min()
        })
        .collect()
}

/// Monomials irreducible modulo the leading terms of `gb`, increasing in
/// grevlex, so the first one is `1`.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    let n = gb.nvars();
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    let bounds = pure_power_bounds(gb).ok_or(Error::NotZeroDimensional)?;
    let leads = gb.leading_monomials();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial::new(&cur);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(a, b));
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

pub fn quotient_dim(gb: &GroebnerBasis) -> Result<usize> {
    Ok(standard_monomials(gb)?.len())
}

/// `dim K[x]/I / dim K[x]/√I`.
pub fn multiplicity(ideal: &GroebnerBasis, radical: &GroebnerBasis) -> Result<usize> {
    let (a, b) = (quotient_dim(ideal)?, quotient_dim(radical)?);
    if b == 0 || a % b != 0 {
        return Err(Error::NonIntegerMultiplicity(a, b));
    }
    Ok(a / b)
}

/// The algebra `K[x]/I` with its standard monomial basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Quotient {
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        let basis = standard_monomials(&gb)?;
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Quotient { gb, basis, index })
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.gb.normal_form(p)
    }

    /// Coordinates of `nf(p)` on the standard monomials.
    pub fn coords(&self, p: &Poly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in self.reduce(p).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn from_coords(&self, v: &[Rational]) -> Poly {
        Poly::from_terms(self.gb.nvars(), self.basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// Column `j` holds the coordinates of `g · b_j`.
    pub fn mult_matrix(&self, g: &Poly) -> Matrix {
        let d = self.dim();
        let g = self.reduce(g);
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            for (i, c) in self.coords(&g.mul_term(b, &Rational::one())).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn trace(&self, g: &Poly) -> Rational {
        self.mult_matrix(g).trace()
    }

    /// Monic minimal polynomial of `g`, in one variable.
    pub fn minimal_polynomial(&self, g: &Poly) -> Poly {
        let g = self.reduce(g);
        let n = self.gb.nvars();
        let mut powers = vec![self.coords(&Poly::one(n))];
        let mut cur = Poly::one(n);
        loop {
            cur = self.reduce(&(&cur * &g));
            let v = self.coords(&cur);
            let k = powers.len();
            let a = Matrix::from_rows((0..self.dim()).map(|i| powers.iter().map(|p| p[i].clone()).collect()).collect());
            if let Ok(sol) = solve_linear(&a, &v) {
                let mut terms = vec![(Monomial::new(&[k as u32]), Rational::one())];
                for (i, c) in sol.particular.into_iter().enumerate() {
                    terms.push((Monomial::new(&[i as u32]), -c));
                }
                return Poly::from_terms(1, terms);
            }
            powers.push(v);
        }
    }

    /// `g^{-1}` in the quotient, when `g` is a unit.
    pub fn inverse(&self, g: &Poly) -> Option<Poly> {
        let one = self.coords(&Poly::one(self.gb.nvars()));
        let sol = solve_linear(&self.mult_matrix(g), &one).ok()?;
        Some(self.from_coords(&sol.particular))
    }
}

pub fn mult_matrix(g: &Poly, gb: &GroebnerBasis) -> Result<Matrix> {
    Ok(Quotient::new(gb.clone())?.mult_matrix(g))
}

pub fn minimal_polynomial(g: &Poly, gb: &GroebnerBasis) -> Result<Poly> {
    Ok(Quotient::new(gb.clone())?.minimal_polynomial(g))
}

pub fn trace(g: &Poly, gb: &GroebnerBasis) -> Result<Rational> {
    Ok(Quotient::new(gb.clone())?.trace(g))
}

/// Substitutes the univariate `p(t)` at `t = u`.
fn eval_at(p: &Poly, u: &Poly) -> Poly {
    p.substitute(std::slice::from_ref(u))
}

/// `√I = I + ⟨sqfree(minpoly(x_i))⟩`.
pub fn radical(gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    let q = Quotient::new(gb.clone())?;
    let n = gb.nvars();
    let mut gens = gb.polys();
    for i in 0..n {
        let x = Poly::var(n, i);
        let sq = squarefree_part(&q.minimal_polynomial(&x));
        gens.push(eval_at(&sq, &x));
    }
    Ok(groebner(&gens, &MonomialOrder::Grevlex))
}

/// Ideal intersection by eliminating an auxiliary variable from
/// `t·A + (1 − t)·B`.
pub fn intersection(a: &GroebnerBasis, b: &GroebnerBasis) -> GroebnerBasis {
    let n = a.nvars();
    let shift: Vec<usize> = (1..=n).collect();
    let t = Poly::var(n + 1, 0);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let mut gens: Vec<Poly> = a.polys().iter().map(|p| &t * &p.embed(n + 1, &shift)).collect();
    gens.extend(b.polys().iter().map(|p| &one_minus_t * &p.embed(n + 1, &shift)));
    let mut w = vec![0u32; n + 1];
    w[0] = 1;
    let big = groebner(&gens, &MonomialOrder::Weighted(w));
    let kept: Vec<Poly> = big
        .polys()
        .into_iter()
        .filter(|p| !p.depends_on(0))
        .map(|p| Poly::from_terms(n, p.terms().iter().map(|(m, c)| (Monomial::new(&m.exponents()[1..]), c.clone()))))
        .collect();
    groebner(&kept, &MonomialOrder::Grevlex)
}

fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.polys().iter().all(|p| b.contains(p)) && b.polys().iter().all(|p| a.contains(p))
}

/// One primary component `I_λ` with its radical and the standard monomials
/// `B` of `K_λ = K[x]/√I_λ`.
#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub primary: GroebnerBasis,
    pub radical: GroebnerBasis,
    pub standard_monomials: Vec<Monomial>,
    pub multiplicity: usize,
    pub quotient_dim: usize,
}

impl PrimaryComponent {
    fn new(primary: GroebnerBasis, radical: GroebnerBasis) -> Result<Self> {
        let multiplicity = multiplicity(&primary, &radical)?;
        let standard_monomials = standard_monomials(&radical)?;
        let quotient_dim = standard_monomials.len();
        Ok(PrimaryComponent { primary, radical, standard_monomials, multiplicity, quotient_dim })
    }

    /// Canonical text of the radical, e.g. `[x^2-2,y+1]`.
    pub fn radical_text(&self, names: &[String]) -> String {
        radical_text(&self.radical, names)
    }
}

/// Generators listed by decreasing leading monomial.
pub fn radical_text(gb: &GroebnerBasis, names: &[String]) -> String {
    let mut polys = gb.polys();
    polys.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.terms()[0].0, &a.terms()[0].0));
    let parts: Vec<String> = polys.iter().map(|p| p.fmt_with(names).to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<PrimaryComponent>,
}

impl Decomposition {
    /// `∩ I_λ`.
    pub fn intersection(&self) -> Option<GroebnerBasis> {
        let mut it = self.components.iter();
        let first = it.next()?.primary.clone();
        Some(it.fold(first, |acc, c| intersection(&acc, &c.primary)))
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionOptions {
    pub seed: u64,
    pub retry_limit: usize,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        DecompositionOptions { seed: 0, retry_limit: 25 }
    }
}

fn random_form(n: usize, bound: i64, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let terms: Vec<(Monomial, Rational)> =
            (0..n).map(|i| (Monomial::var(n, i, 1), Rational::from_integer(rng.gen_range(-bound..=bound).into()))).collect();
        let u = Poly::from_terms(n, terms);
        if !u.is_zero() {
            return u;
        }
    }
}

/// A linear form whose values separate the points of `V(rad)`, i.e. whose
/// minimal polynomial modulo `rad` has degree `dim K[x]/rad`.
fn separating_form(rad: &Quotient, options: &DecompositionOptions, rng: &mut ChaCha8Rng) -> Result<Poly> {
    let n = rad.groebner_basis().nvars();
    let mut bound = 1;
    for _ in 0..options.retry_limit {
        let u = random_form(n, bound, rng);
        if rad.minimal_polynomial(&u).total_degree() as usize == rad.dim() {
            return Ok(u);
        }
        bound *= 2;
    }
    Err(Error::SeparatingFormNotFound(options.retry_limit))
}

pub fn primary_decomposition(ideal: &GroebnerBasis) -> Result<Decomposition> {
    primary_decomposition_with(ideal, &DecompositionOptions::default())
}

pub fn primary_decomposition_with(ideal: &GroebnerBasis, options: &DecompositionOptions) -> Result<Decomposition> {
    let q = Quotient::new(ideal.clone())?;
    if q.dim() == 0 {
        return Err(Error::NotZeroDimensional);
    }
    let rad = radical(ideal)?;
    let rq = Quotient::new(rad.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let u = separating_form(&rq, options, &mut rng)?;
    let fac = factor_univariate_seeded(&q.minimal_polynomial(&u), options.seed);
    let mut components = Vec::new();
    for (p, k) in &fac.factors {
        let pu = eval_at(p, &u);
        let mut gens = ideal.polys();
        gens.push(pu.pow(*k));
        let primary = groebner(&gens, &MonomialOrder::Grevlex);
        let mut rgens = rad.polys();
        rgens.push(pu);
        let radical = groebner(&rgens, &MonomialOrder::Grevlex);
        let c = PrimaryComponent::new(primary, radical)?;
        if c.quotient_dim != p.total_degree() as usize {
            return Err(Error::InvalidDecomposition(format!("residue field of degree {} for factor of degree {}", c.quotient_dim, p.total_degree())));
        }
        components.push(c);
    }
    let d = Decomposition { components: sort_components(components) };
    certify(ideal, &d, q.dim())?;
    Ok(d)
}

fn sort_components(mut cs: Vec<PrimaryComponent>) -> Vec<PrimaryComponent> {
    let names = crate::algebra::default_names(cs.first().map(|c| c.radical.nvars()).unwrap_or(0));
    cs.sort_by_cached_key(|c| c.radical_text(&names));
    cs
}

/// Dimension count and `∩ I_λ = I`.
fn certify(ideal: &GroebnerBasis, d: &Decomposition, dim: usize) -> Result<()> {
    let total: usize = d.components.iter().map(|c| c.multiplicity * c.quotient_dim).sum();
    if total != dim {
        return Err(Error::InvalidDecomposition(format!("component dimensions sum to {} instead of {}", total, dim)));
    }
    let meet = d.intersection().ok_or(Error::EmptyInput)?;
    if !same_ideal(&meet, ideal) {
        return Err(Error::InvalidDecomposition("intersection of components differs from the ideal".into()));
    }
    Ok(())
}

/// Checks a user-supplied decomposition: each radical is maximal and equals
/// the radical of its primary ideal, radicals are pairwise comaximal, and
/// the primary ideals intersect to `ideal`.
pub fn verify_decomposition(ideal: &GroebnerBasis, parts: &[(Vec<Poly>, Vec<Poly>)], options: &DecompositionOptions) -> Result<Decomposition> {
    let dim = quotient_dim(ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut components = Vec::new();
    for (k, (primary, rad)) in parts.iter().enumerate() {
        let primary = groebner(primary, &MonomialOrder::Grevlex);
        let rad = groebner(rad, &MonomialOrder::Grevlex);
        if !is_zero_dimensional(&primary) || primary.is_unit() {
            return Err(Error::InvalidDecomposition(format!("component {} is not zero-dimensional", k + 1)));
        }
        if !same_ideal(&radical(&primary)?, &rad) {
            return Err(Error::InvalidDecomposition(format!("component {}: radical does not match", k + 1)));
        }
        let rq = Quotient::new(rad.clone())?;
        let u = separating_form(&rq, options, &mut rng)?;
        let fac = factor_univariate_seeded(&rq.minimal_polynomial(&u), options.seed);
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(Error::InvalidDecomposition(format!("component {}: radical is not prime", k + 1)));
        }
        components.push(PrimaryComponent::new(primary, rad)?);
    }
    for i in 0..components.len() {
        for j in i + 1..components.len() {
            let mut gens = components[i].radical.polys();
            gens.extend(components[j].radical.polys());
            if !groebner(&gens, &MonomialOrder::Grevlex).is_unit() {
                return Err(Error::InvalidDecomposition(format!("components {} and {} share a point", i + 1, j + 1)));
            }
        }
    }
    let d = Decomposition { components: sort_components(components) };
    certify(ideal, &d, dim)?;
    Ok(d)
}

/// Checks `p(t)` kills `g` in the quotient: `nf(p(g)) = 0`.
pub fn annihilates(q: &Quotient, p: &Poly, g: &Poly) -> bool {
    let mut acc = Poly::zero(g.nvars());
    let d = p.total_degree();
    for k in (0..=d).rev() {
        acc = q.reduce(&(&acc * g));
        let c = p.coefficient(&Monomial::new(&[k]));
        acc = acc + Poly::constant(g.nvars(), c);
    }
    q.reduce(&acc).is_zero()
}
