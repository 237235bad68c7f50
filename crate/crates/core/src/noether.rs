//! Noether operator bases of zero-dimensional primary ideals.
//!
//! A basis `L_1 = 1, L_2, …, L_m` of the operators `L` with `L • J ⊂ √J`,
//! taken as a module over `K_λ = K[x]/√J` acting by left multiplication, is
//! built one order at a time from syzygies.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::algebra::{multi_indices, preimage, GroebnerBasis, ModVec, Monomial, Poly, Rational, SparseEchelon};
use crate::error::{Error, Result};
use crate::weyl::WeylOp;
use crate::zerodim::{quotient_dim, standard_monomials, PrimaryComponent};

/// Key of a coordinate `x^γ ∂^α` in the `K`-vector space of operators with
/// coefficients reduced modulo `√J`. Higher order compares larger.
type Key = (u32, Monomial, usize);

/// `K`-linear coordinates of operators whose coefficients live in
/// `K[x]/√J`.
#[derive(Clone, Debug)]
pub struct OperatorSpace {
    radical: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl OperatorSpace {
    pub fn new(radical: &GroebnerBasis) -> Result<Self> {
        let basis = standard_monomials(radical)?;
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(OperatorSpace { radical: radical.clone(), basis, index })
    }

    pub fn radical(&self) -> &GroebnerBasis {
        &self.radical
    }

    /// Standard monomials `B` of `√J`.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn reduce(&self, p: &WeylOp) -> WeylOp {
        p.reduce_coefficients(&self.radical)
    }

    pub fn coords(&self, p: &WeylOp) -> BTreeMap<Key, Rational> {
        let mut out = BTreeMap::new();
        for (alpha, c) in self.reduce(p).terms() {
            for (m, k) in c.terms() {
                out.insert((alpha.degree(), alpha.clone(), self.index[m]), k.clone());
            }
        }
        out
    }

    /// The multiples `x^γ P`, `γ ∈ B`, which span `K_λ · P` over `K`.
    pub fn multiples(&self, p: &WeylOp) -> Vec<WeylOp> {
        self.basis.iter().map(|g| self.reduce(&p.mul_left(&Poly::term(g.clone(), Rational::one())))).collect()
    }

    /// `K`-echelon form of the `K_λ`-span of `ops`.
    pub fn span(&self, ops: &[WeylOp]) -> SparseEchelon<Key> {
        let mut e = SparseEchelon::new();
        for p in ops {
            for q in self.multiples(p) {
                e.insert(&self.coords(&q));
            }
        }
        e
    }
}

/// Noether operators `L_1 = 1, …, L_m` of one primary component, in
/// non-decreasing order.
#[derive(Clone, Debug)]
pub struct NoetherBasis {
    pub operators: Vec<WeylOp>,
    pub component: PrimaryComponent,
}

impl NoetherBasis {
    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    /// True when `p` lies in `Σ K_λ L_i`.
    pub fn contains(&self, p: &WeylOp) -> Result<bool> {
        let space = OperatorSpace::new(&self.component.radical)?;
        Ok(space.span(&self.operators).contains(&space.coords(p)))
    }
}

fn check_prev(prev: &[WeylOp]) -> Result<()> {
    match prev.first() {
        Some(l) if l.order() == 0 && l == &WeylOp::one(l.nvars()) => Ok(()),
        _ => Err(Error::NoetherInput("the previous layer must start with L_1 = 1".into())),
    }
}

/// Layer `r` of the Noether basis: operators of order exactly `r` extending
/// a basis `prev` of the operators of order below `r`.
pub fn noether_step(r: u32, ideal: &GroebnerBasis, radical: &GroebnerBasis, prev: &[WeylOp]) -> Result<Vec<WeylOp>> {
    check_prev(prev)?;
    if prev.iter().any(|l| l.order() >= r) {
        return Err(Error::NoetherInput(format!("previous layer already has order {}", r)));
    }
    let n = ideal.nvars();
    let space = OperatorSpace::new(radical)?;
    let gens = ideal.polys();
    let mu = gens.len();
    let alphas = multi_indices(n, 1, r);
    let betas = multi_indices(n, 1, r - 1);
    let beta_index: HashMap<&Monomial, usize> = betas.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let big_n = betas.len();
    let rank = mu + n * big_n;
    let phi = |k: usize, beta: &Monomial| mu + k * big_n + beta_index[beta];
    let zero = Poly::zero(n);

    let mut vectors = Vec::new();
    let mut module = Vec::new();
    for alpha in &alphas {
        let mut v = vec![zero.clone(); rank];
        for (i, g) in gens.iter().enumerate() {
            v[i] = radical.normal_form(&g.derivative_multi(alpha));
        }
        if alpha.degree() >= 2 {
            // [∂^α, x_k] = α_k ∂^{α - e_k}
            for k in 0..n {
                let a = alpha.get(k);
                if a > 0 {
                    let mut beta = alpha.clone();
                    beta.set(k, a - 1);
                    v[phi(k, &beta)] = Poly::constant(n, Rational::from_integer(a.into()));
                }
            }
        }
        vectors.push(ModVec(v));
    }
    for l in prev.iter().filter(|l| l.order() > 0) {
        for k in 0..n {
            let mut v = vec![zero.clone(); rank];
            for (beta, d) in l.terms() {
                if beta.degree() >= 1 {
                    v[phi(k, beta)] = radical.normal_form(d);
                }
            }
            module.push(ModVec(v));
        }
    }
    for p in radical.polys() {
        for t in 0..rank {
            let mut v = vec![zero.clone(); rank];
            v[t] = p.clone();
            module.push(ModVec(v));
        }
    }

    let mut candidates = Vec::new();
    for s in preimage(&vectors, &module)? {
        let terms: BTreeMap<Monomial, Poly> = alphas.iter().cloned().zip(s.0.iter().cloned()).collect();
        let l = space.reduce(&WeylOp::from_terms(n, terms));
        if l.order() == r && !l.homogeneous_part(r).is_zero() {
            candidates.push(l.primitive());
        }
    }
    candidates.sort_by_cached_key(|l| (l.terms().values().map(Poly::len).sum::<usize>(), l.to_string()));
    candidates.dedup();

    let lower = space.span(prev);
    let mut tops = SparseEchelon::new();
    let mut out = Vec::new();
    for l in candidates {
        let top = l.homogeneous_part(r);
        if tops.contains(&space.coords(&top)) {
            continue;
        }
        for q in space.multiples(&top) {
            tops.insert(&space.coords(&q));
        }
        // canonical tail: lower-order part reduced against the previous span
        let reduced = lower.reduce(&space.coords(&l));
        out.push(from_coords(n, &space, &reduced).primitive());
    }
    Ok(out)
}

fn from_coords(n: usize, space: &OperatorSpace, v: &BTreeMap<Key, Rational>) -> WeylOp {
    let mut terms: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for ((_, alpha, j), c) in v {
        terms.entry(alpha.clone()).or_default().push((space.basis[*j].clone(), c.clone()));
    }
    WeylOp::from_terms(n, terms.into_iter().map(|(a, ts)| (a, Poly::from_terms(n, ts))).collect())
}

/// `{1}` together with the first-order Noether operators.
pub fn noether_first_order(ideal: &GroebnerBasis, radical: &GroebnerBasis) -> Result<Vec<WeylOp>> {
    let one = WeylOp::one(ideal.nvars());
    let mut out = vec![one.clone()];
    out.extend(noether_step(1, ideal, radical, &[one])?);
    Ok(out)
}

/// Full Noether basis of a primary component: layers are added until the
/// count reaches the multiplicity.
pub fn noether_basis(component: &PrimaryComponent) -> Result<NoetherBasis> {
    let (ideal, radical) = (&component.primary, &component.radical);
    let m = component.multiplicity;
    let cap = quotient_dim(ideal)? as u32;
    let mut ops = noether_first_order(ideal, radical)?;
    let mut r = 1;
    while ops.len() < m {
        r += 1;
        if r > cap {
            return Err(Error::NoetherIncomplete { order: r - 1, found: ops.len(), expected: m });
        }
        let layer = noether_step(r, ideal, radical, &ops)?;
        ops.extend(layer);
    }
    if ops.len() != m {
        return Err(Error::NoetherIncomplete { order: r, found: ops.len(), expected: m });
    }
    Ok(NoetherBasis { operators: ops, component: component.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{groebner, parse_poly, MonomialOrder};
    use crate::zerodim::primary_decomposition;

    fn gb(names: &[&str], gens: &[&str]) -> GroebnerBasis {
        groebner(&gens.iter().map(|s| parse_poly(s, names).unwrap()).collect::<Vec<_>>(), &MonomialOrder::Grevlex)
    }

    fn texts(ops: &[WeylOp]) -> Vec<String> {
        ops.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn univariate_layers() {
        let j = gb(&["x"], &["x^2"]);
        let r = gb(&["x"], &["x"]);
        assert_eq!(texts(&noether_first_order(&j, &r).unwrap()), vec!["1", "dx"]);
        let j = gb(&["x"], &["x-1"]);
        assert_eq!(texts(&noether_first_order(&j, &j).unwrap()), vec!["1"]);
        let j = gb(&["x"], &["x^3"]);
        let prev = noether_first_order(&j, &r).unwrap();
        assert_eq!(texts(&noether_step(2, &j, &r, &prev).unwrap()), vec!["dx^2"]);
    }

    #[test]
    fn monomial_ideal_basis() {
        let d = primary_decomposition(&gb(&["x", "y"], &["x^2", "y^2"])).unwrap();
        let b = noether_basis(&d.components[0]).unwrap();
        assert_eq!(texts(&b.operators), vec!["1", "dx", "dy", "dx*dy"]);
    }

    #[test]
    fn step_requires_unit_operator() {
        let j = gb(&["x"], &["x^3"]);
        let r = gb(&["x"], &["x"]);
        let bad = vec![WeylOp::parse("dx", &["x"]).unwrap()];
        assert!(matches!(noether_step(2, &j, &r, &bad), Err(Error::NoetherInput(_))));
    }

    #[test]
    fn noether_condition_holds() {
        let d = primary_decomposition(&gb(&["x", "y"], &["x^3-y^2", "y^3"])).unwrap();
        let c = &d.components[0];
        let b = noether_basis(c).unwrap();
        assert_eq!(b.len(), c.multiplicity);
        for l in &b.operators {
            for g in c.primary.polys() {
                assert!(c.radical.contains(&l.apply(&g)), "{} fails on {}", l, g);
            }
        }
    }
}
