//! The Weyl algebra `D_n = Q⟨x, ∂⟩` and its action on local cohomology
//! classes `[s / (f_1^{l_1}⋯f_n^{l_n})]` of a fixed regular sequence.
//!
//! Operators are stored in left normal order `Σ_α c_α(x) ∂^α`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::algebra::{
    groebner, jacobian, monomial_factors, parse_poly, write_term, GroebnerBasis, Monomial, MonomialOrder,
    ParseError, Poly, Rational,
};
use crate::error::{Error, Result};

/// Differential operator `Σ_α c_α(x) ∂^α` with polynomial coefficients on
/// the left.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylOp {
    nvars: usize,
    terms: BTreeMap<Monomial, Poly>,
}

/// All `κ ≤ α` componentwise.
fn sub_indices(alpha: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(alpha.nvars())];
    for (i, &a) in alpha.exponents().iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
        for k in &out {
            for e in 0..=a {
                let mut m = k.clone();
                m.set(i, e);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// `Π_i C(α_i, κ_i)`.
fn multi_binomial(alpha: &Monomial, kappa: &Monomial) -> Rational {
    let mut r = num_bigint::BigInt::one();
    for (&a, &k) in alpha.exponents().iter().zip(kappa.exponents()) {
        r *= crate::algebra::binomial(a, k);
    }
    Rational::from_integer(r)
}

fn minus(alpha: &Monomial, kappa: &Monomial) -> Monomial {
    kappa.quotient_of(alpha).expect("κ ≤ α")
}

fn accumulate(acc: &mut HashMap<Monomial, Vec<Poly>>, alpha: Monomial, c: Poly) {
    if !c.is_zero() {
        acc.entry(alpha).or_default().push(c);
    }
}

fn collect(nvars: usize, acc: HashMap<Monomial, Vec<Poly>>) -> BTreeMap<Monomial, Poly> {
    acc.into_iter()
        .filter_map(|(a, parts)| {
            let sum = Poly::from_terms(nvars, parts.into_iter().flat_map(Poly::into_terms));
            (!sum.is_zero()).then_some((a, sum))
        })
        .collect()
}

/// Rewrites `Σ ∂^α u_α` into left normal order.
fn right_to_left(nvars: usize, right: &BTreeMap<Monomial, Poly>) -> BTreeMap<Monomial, Poly> {
    let mut acc = HashMap::new();
    for (alpha, u) in right {
        for kappa in sub_indices(alpha) {
            let d = u.derivative_multi(&kappa);
            if d.is_zero() {
                continue;
            }
            accumulate(&mut acc, minus(alpha, &kappa), d.scale(&multi_binomial(alpha, &kappa)));
        }
    }
    collect(nvars, acc)
}

impl WeylOp {
    pub fn zero(nvars: usize) -> Self {
        WeylOp { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn from_poly(c: Poly) -> Self {
        let n = c.nvars();
        Self::term(c, Monomial::one(n))
    }

    /// `c(x) ∂^α`.
    pub fn term(c: Poly, alpha: Monomial) -> Self {
        let nvars = c.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        WeylOp { nvars, terms }
    }

    /// `∂^α`.
    pub fn partial(alpha: Monomial) -> Self {
        let n = alpha.nvars();
        Self::term(Poly::one(n), alpha)
    }

    /// Builds `Σ c_α ∂^α` from a map, dropping zeros.
    pub fn from_terms(nvars: usize, terms: BTreeMap<Monomial, Poly>) -> Self {
        WeylOp { nvars, terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Builds the operator `Σ ∂^α u_α` given in right normal order.
    pub fn from_right_normal_form(nvars: usize, right: &BTreeMap<Monomial, Poly>) -> Self {
        WeylOp { nvars, terms: right_to_left(nvars, right) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Poly> {
        &self.terms
    }

    pub fn coefficient(&self, alpha: &Monomial) -> Poly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal `|α|` with `c_α ≠ 0`; zero for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Terms of order exactly `r`.
    pub fn homogeneous_part(&self, r: u32) -> WeylOp {
        WeylOp { nvars: self.nvars, terms: self.terms.iter().filter(|(a, _)| a.degree() == r).map(|(a, c)| (a.clone(), c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> WeylOp {
        WeylOp::from_terms(self.nvars, self.terms.iter().map(|(a, p)| (a.clone(), p.scale(c))).collect())
    }

    /// Scales to coprime integer coefficients with a positive first term in
    /// the printed order.
    pub fn primitive(&self) -> WeylOp {
        let Some((_, top)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        let coeffs = || self.terms.values().flat_map(|c| c.terms().iter().map(|(_, k)| k));
        for c in coeffs() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        for c in coeffs() {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (&l / c.denom())));
        }
        let mut s = Rational::new(l, g);
        if top.terms()[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// `g · P` (multiplication by a polynomial on the left).
    pub fn mul_left(&self, g: &Poly) -> WeylOp {
        WeylOp::from_terms(self.nvars, self.terms.iter().map(|(a, p)| (a.clone(), g * p)).collect())
    }

    /// Normal-ordered product `self · other`.
    pub fn multiply(&self, other: &WeylOp) -> WeylOp {
        let mut acc = HashMap::new();
        for (alpha, a) in &self.terms {
            let kappas = sub_indices(alpha);
            for (beta, b) in &other.terms {
                for kappa in &kappas {
                    let db = b.derivative_multi(kappa);
                    if db.is_zero() {
                        continue;
                    }
                    let c = (a * &db).scale(&multi_binomial(alpha, kappa));
                    accumulate(&mut acc, minus(alpha, kappa).mul(beta), c);
                }
            }
        }
        WeylOp { nvars: self.nvars, terms: collect(self.nvars, acc) }
    }

    /// `[P, f] = P f − f P`.
    pub fn commutator(&self, f: &Poly) -> WeylOp {
        // only the κ ≠ 0 terms of the Leibniz expansion survive
        let mut acc = HashMap::new();
        for (alpha, a) in &self.terms {
            for kappa in sub_indices(alpha) {
                if kappa.is_one() {
                    continue;
                }
                let df = f.derivative_multi(&kappa);
                if !df.is_zero() {
                    accumulate(&mut acc, minus(alpha, &kappa), (a * &df).scale(&multi_binomial(alpha, &kappa)));
                }
            }
        }
        WeylOp { nvars: self.nvars, terms: collect(self.nvars, acc) }
    }

    /// Formal adjoint: `x_i ↦ x_i`, `∂_i ↦ −∂_i`, products reversed.
    pub fn adjoint(&self) -> WeylOp {
        let right: BTreeMap<Monomial, Poly> = self
            .terms
            .iter()
            .map(|(a, c)| (a.clone(), if a.degree() % 2 == 1 { -c } else { c.clone() }))
            .collect();
        WeylOp::from_right_normal_form(self.nvars, &right)
    }

    /// `P • g`.
    pub fn apply(&self, g: &Poly) -> Poly {
        let parts = self.terms.iter().map(|(a, c)| c * &g.derivative_multi(a));
        Poly::from_terms(self.nvars, parts.flat_map(Poly::into_terms))
    }

    /// Coefficients `u_α` with `P = Σ ∂^α u_α(x)`.
    pub fn right_normal_form(&self) -> BTreeMap<Monomial, Poly> {
        let mut acc = HashMap::new();
        for (alpha, c) in &self.terms {
            for kappa in sub_indices(alpha) {
                let d = c.derivative_multi(&kappa);
                if d.is_zero() {
                    continue;
                }
                let mut k = multi_binomial(alpha, &kappa);
                if kappa.degree() % 2 == 1 {
                    k = -k;
                }
                accumulate(&mut acc, minus(alpha, &kappa), d.scale(&k));
            }
        }
        collect(self.nvars, acc)
    }

    /// True when `P ∈ D_n · J` for the ideal with Gröbner basis `gb`.
    pub fn in_left_ideal(&self, gb: &GroebnerBasis) -> bool {
        self.right_normal_form().values().all(|u| gb.contains(u))
    }

    /// Reduces every left coefficient modulo `gb`.
    pub fn reduce_coefficients(&self, gb: &GroebnerBasis) -> WeylOp {
        WeylOp::from_terms(self.nvars, self.terms.iter().map(|(a, c)| (a.clone(), gb.normal_form(c))).collect())
    }

    pub fn fmt_with<'a>(&'a self, names: &'a [String]) -> WeylDisplay<'a> {
        WeylDisplay { op: self, names }
    }

    /// Parses an operator written as a polynomial in `x_i` and `d<x_i>`,
    /// read in left normal order (`x*dx` is `x ∂x`, `dx*x` is also `x ∂x`).
    pub fn parse<S: AsRef<str>>(text: &str, names: &[S]) -> Result<WeylOp, ParseError> {
        let n = names.len();
        let mut all: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        all.extend(names.iter().map(|s| format!("d{}", s.as_ref())));
        let p = parse_poly(text, &all)?;
        let mut terms: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            terms.entry(Monomial::new(&e[n..])).or_default().push((Monomial::new(&e[..n]), c.clone()));
        }
        Ok(WeylOp::from_terms(n, terms.into_iter().map(|(a, ts)| (a, Poly::from_terms(n, ts))).collect()))
    }
}

impl Add for &WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: &WeylOp) -> WeylOp {
        let mut terms = self.terms.clone();
        for (a, c) in &rhs.terms {
            let sum = match terms.get(a) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(a);
            } else {
                terms.insert(a.clone(), sum);
            }
        }
        WeylOp { nvars: self.nvars, terms }
    }
}

impl Add for WeylOp {
    type Output = WeylOp;
    fn add(self, rhs: WeylOp) -> WeylOp {
        &self + &rhs
    }
}

impl Neg for &WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        WeylOp { nvars: self.nvars, terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect() }
    }
}

impl Neg for WeylOp {
    type Output = WeylOp;
    fn neg(self) -> WeylOp {
        -&self
    }
}

impl Sub for &WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: &WeylOp) -> WeylOp {
        self + &(-rhs)
    }
}

impl Sub for WeylOp {
    type Output = WeylOp;
    fn sub(self, rhs: WeylOp) -> WeylOp {
        &self - &rhs
    }
}

/// Flat left form, e.g. `1/6144*x*dx^4-5/3072*dx^3+35/8192*x`: ∂-monomials in
/// decreasing lex order (`dx` before `dy`), coefficients' terms in grevlex
/// order within each.
pub struct WeylDisplay<'a> {
    op: &'a WeylOp,
    names: &'a [String],
}

impl fmt::Display for WeylDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_zero() {
            return write!(f, "0");
        }
        let dnames: Vec<String> = self.names.iter().map(|s| format!("d{}", s)).collect();
        let mut first = true;
        for (alpha, c) in self.op.terms.iter().rev() {
            let dpart = monomial_factors(alpha, &dnames);
            for (m, k) in c.terms() {
                let mut factors = monomial_factors(m, self.names);
                factors.extend(dpart.iter().cloned());
                write_term(f, first, k, &factors)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = crate::algebra::default_names(self.nvars);
        write!(f, "{}", self.fmt_with(&names))
    }
}

/// The class `[numerator / (f_1^{l_1}⋯f_n^{l_n})]` in algebraic local
/// cohomology.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomClass {
    pub numerator: Poly,
    pub exponents: Vec<u32>,
}

impl CohomClass {
    /// Rewrites over the denominator with exponents `target ≥ self.exponents`.
    fn lift_to(&self, target: &[u32], seq: &RegularSequence) -> Poly {
        let mut s = self.numerator.clone();
        for (k, (&t, &l)) in target.iter().zip(&self.exponents).enumerate() {
            if t > l {
                s = &s * &seq.power(k, t - l);
            }
        }
        s
    }
}

/// A regular sequence `F` with `n` polynomials in `n` variables, together
/// with cached Gröbner bases of `⟨f_1^{l_1}, …, f_n^{l_n}⟩`.
pub struct RegularSequence {
    polys: Vec<Poly>,
    basis: Arc<GroebnerBasis>,
    jacobian: Poly,
    cache: Mutex<HashMap<Vec<u32>, Arc<GroebnerBasis>>>,
    powers: Mutex<HashMap<(usize, u32), Poly>>,
}

impl fmt::Debug for RegularSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegularSequence").field("polys", &self.polys).finish()
    }
}

impl RegularSequence {
    /// Checks `|F| = n` and that `⟨F⟩` is zero-dimensional, which for `n`
    /// generators in `n` variables is equivalent to regularity.
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        let n = polys.first().map(Poly::nvars).ok_or(Error::EmptyInput)?;
        if polys.len() != n {
            return Err(Error::NotRegular(format!("{} polynomials in {} variables", polys.len(), n)));
        }
        let basis = groebner(&polys, &MonomialOrder::Grevlex);
        if !crate::zerodim::is_zero_dimensional(&basis) {
            return Err(Error::NotRegular("the ideal is not zero-dimensional".into()));
        }
        let mut cache = HashMap::new();
        let basis = Arc::new(basis);
        cache.insert(vec![1; n], basis.clone());
        Ok(RegularSequence {
            jacobian: jacobian(&polys),
            polys,
            basis,
            cache: Mutex::new(cache),
            powers: Mutex::new(HashMap::new()),
        })
    }

    pub fn nvars(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// Gröbner basis of `⟨F⟩`.
    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    /// `det(∂f_i/∂x_j)`.
    pub fn jacobian(&self) -> &Poly {
        &self.jacobian
    }

    fn power(&self, k: usize, e: u32) -> Poly {
        let mut cache = self.powers.lock().unwrap();
        cache.entry((k, e)).or_insert_with(|| self.polys[k].pow(e)).clone()
    }

    /// Gröbner basis of `⟨f_1^{l_1}, …, f_n^{l_n}⟩`, computed once per `l`.
    pub fn power_basis(&self, exponents: &[u32]) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().unwrap().get(exponents) {
            return gb.clone();
        }
        let gens: Vec<Poly> = exponents.iter().enumerate().map(|(k, &l)| self.power(k, l)).collect();
        let gb = Arc::new(groebner(&gens, &MonomialOrder::Grevlex));
        self.cache.lock().unwrap().entry(exponents.to_vec()).or_insert(gb).clone()
    }

    /// `σ_F = [1/(f_1⋯f_n)]`.
    pub fn sigma(&self) -> CohomClass {
        let n = self.nvars();
        CohomClass { numerator: Poly::one(n), exponents: vec![1; n] }
    }

    /// `∂_i • c` by the quotient rule; only the exponents of the `f_j`
    /// depending on `x_i` are raised.
    fn differentiate(&self, c: &CohomClass, i: usize) -> CohomClass {
        let dep: Vec<usize> = (0..self.nvars()).filter(|&j| self.polys[j].depends_on(i)).collect();
        let mut exponents = c.exponents.clone();
        for &j in &dep {
            exponents[j] += 1;
        }
        let prod = |skip: Option<usize>| {
            dep.iter().filter(|&&j| Some(j) != skip).fold(Poly::one(self.nvars()), |acc, &j| &acc * &self.polys[j])
        };
        let mut s = &c.numerator.derivative(i) * &prod(None);
        for &j in &dep {
            let l = Rational::from_integer(c.exponents[j].into());
            let t = &(&self.polys[j].derivative(i) * &c.numerator) * &prod(Some(j));
            s = s - t.scale(&l);
        }
        CohomClass { numerator: s, exponents }
    }

    /// `P • c`, returned with the raw quotient-rule exponents.
    pub fn apply_to_class(&self, p: &WeylOp, c: &CohomClass) -> CohomClass {
        let n = self.nvars();
        let mut memo: HashMap<Monomial, CohomClass> = HashMap::new();
        memo.insert(Monomial::one(n), c.clone());
        let mut parts = Vec::new();
        for (alpha, coeff) in p.terms() {
            let d = self.derive_memo(&mut memo, alpha);
            parts.push(CohomClass { numerator: coeff * &d.numerator, exponents: d.exponents });
        }
        self.sum(&parts, &c.exponents)
    }

    fn derive_memo(&self, memo: &mut HashMap<Monomial, CohomClass>, alpha: &Monomial) -> CohomClass {
        if let Some(c) = memo.get(alpha) {
            return c.clone();
        }
        let i = alpha.exponents().iter().position(|&e| e > 0).expect("α ≠ 0 here");
        let mut lower = alpha.clone();
        lower.set(i, alpha.get(i) - 1);
        let prev = self.derive_memo(memo, &lower);
        let out = self.differentiate(&prev, i);
        memo.insert(alpha.clone(), out.clone());
        out
    }

    /// Sum over the common denominator (componentwise maximal exponents).
    fn sum(&self, parts: &[CohomClass], floor: &[u32]) -> CohomClass {
        let mut target = floor.to_vec();
        for p in parts {
            for (t, &l) in target.iter_mut().zip(&p.exponents) {
                *t = (*t).max(l);
            }
        }
        let terms = parts.iter().flat_map(|p| p.lift_to(&target, self).into_terms());
        CohomClass { numerator: Poly::from_terms(self.nvars(), terms), exponents: target }
    }

    /// `g · c`.
    pub fn mul_class(&self, g: &Poly, c: &CohomClass) -> CohomClass {
        CohomClass { numerator: g * &c.numerator, exponents: c.exponents.clone() }
    }

    /// The class vanishes iff its numerator lies in `⟨f_1^{l_1}, …⟩`.
    pub fn is_zero_class(&self, c: &CohomClass) -> bool {
        if c.numerator.is_zero() {
            return true;
        }
        if c.exponents.contains(&0) {
            return true;
        }
        self.power_basis(&c.exponents).contains(&c.numerator)
    }

    /// Lowers pole orders while the numerator allows it:
    /// `[f_k s' / f^l] = [s' / f^{l - e_k}]` modulo numerators in
    /// `⟨f_j^{l_j} : j ≠ k⟩`.
    pub fn simplify(&self, c: &CohomClass) -> Result<CohomClass> {
        let n = self.nvars();
        let mut cur = c.clone();
        if self.is_zero_class(&cur) {
            return Ok(CohomClass { numerator: Poly::zero(n), exponents: vec![1; n] });
        }
        loop {
            let mut changed = false;
            for k in 0..n {
                if cur.exponents[k] <= 1 {
                    continue;
                }
                let mut gens = vec![crate::algebra::ModVec(vec![self.polys[k].clone()])];
                gens.extend((0..n).filter(|&j| j != k).map(|j| crate::algebra::ModVec(vec![self.power(j, cur.exponents[j])])));
                let target = crate::algebra::ModVec(vec![cur.numerator.clone()]);
                if let Some(cof) = crate::algebra::lift(&gens, &target)? {
                    cur.exponents[k] -= 1;
                    cur.numerator = self.power_basis(&cur.exponents).normal_form(&cof[0]);
                    changed = true;
                }
            }
            if !changed {
                return Ok(cur);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;

    const NAMES: [&str; 2] = ["x", "y"];

    fn op(s: &str) -> WeylOp {
        WeylOp::parse(s, &NAMES).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &NAMES).unwrap()
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(op("dx").multiply(&op("x")), op("x*dx+1"));
        assert_eq!(op("x*dy+dx^2").multiply(&WeylOp::one(2)), op("x*dy+dx^2"));
        assert_eq!(op("dx^2").multiply(&op("x")) - op("x").multiply(&op("dx^2")), op("2*dx"));
    }

    #[test]
    fn commutators() {
        assert_eq!(op("dx").commutator(&p("x^2-2")), op("2*x"));
        assert!(op("x*y+1").commutator(&p("x^3")).is_zero());
        assert_eq!(op("dx*dy").commutator(&p("x*y")), op("x*dx+y*dy+1"));
    }

    #[test]
    fn adjoints() {
        assert_eq!(op("dx").adjoint(), op("-dx"));
        assert_eq!(op("x*dx").adjoint(), op("-x*dx-1"));
    }

    #[test]
    fn actions_on_polynomials() {
        assert_eq!(op("dx^2").apply(&p("x^3")), p("6*x"));
        assert_eq!(op("x*dy").apply(&p("y^2")), p("2*x*y"));
        let t = op("1/6144*x*dx^4-5/3072*dx^3+1/384*x*dx^2*dy^3+15/4096*x*dx^2-1/128*dx*dy^3-35/4096*dx+1/2880*x*dy^6+1/256*x*dy^3+35/8192*x");
        assert_eq!(t.apply(&Poly::one(2)), p("35/8192*x"));
    }

    #[test]
    fn right_normal_forms() {
        let r = op("x*dx").right_normal_form();
        assert_eq!(r.len(), 2);
        assert_eq!(r[&Monomial::new(&[1, 0])], p("x"));
        assert_eq!(r[&Monomial::new(&[0, 0])], p("-1"));
        let r = op("x^2+y").right_normal_form();
        assert_eq!(r[&Monomial::new(&[0, 0])], p("x^2+y"));
        let rad = groebner(&[p("x^2-2"), p("y+1")], &MonomialOrder::Grevlex);
        let q = op("dx").multiply(&WeylOp::from_poly(p("(x^2-2)*(x+y)")));
        assert!(q.in_left_ideal(&rad));
        assert!(!op("dx").in_left_ideal(&rad));
        let back = WeylOp::from_right_normal_form(2, &op("x*dx^2*dy+y^2*dx").right_normal_form());
        assert_eq!(back, op("x*dx^2*dy+y^2*dx"));
    }

    #[test]
    fn display_matches_left_form() {
        let s = "1/6144*x*dx^4-5/3072*dx^3+1/384*x*dx^2*dy^3+15/4096*x*dx^2-1/128*dx*dy^3-35/4096*dx+1/2880*x*dy^6+1/256*x*dy^3+35/8192*x";
        assert_eq!(op(s).to_string(), s);
        assert_eq!(WeylOp::zero(2).to_string(), "0");
        assert_eq!(op("(x+1)*dy - dx*y").to_string(), "-y*dx+x*dy+dy");
    }

    fn example_sequence() -> RegularSequence {
        RegularSequence::new(vec![
            p("(x^2-2)*(x^4-4*x^2-y^4-5*y^3-9*y^2-7*y+2)"),
            p("x^4-4*x^2-y^3-3*y^2-3*y+3"),
        ])
        .unwrap()
    }

    #[test]
    fn classes_of_coordinate_sequence() {
        let seq = RegularSequence::new(vec![p("x"), p("y")]).unwrap();
        let sigma = seq.sigma();
        assert!(!seq.is_zero_class(&sigma));
        assert!(seq.is_zero_class(&seq.mul_class(&p("x"), &sigma)));
        assert_eq!(seq.apply_to_class(&WeylOp::one(2), &sigma), sigma);
        let c = seq.apply_to_class(&op("x*dx"), &sigma);
        assert_eq!(c.exponents, vec![2, 1]);
        let s = seq.simplify(&c).unwrap();
        assert_eq!(s, CohomClass { numerator: p("-1"), exponents: vec![1, 1] });
        assert!(seq.is_zero_class(&seq.apply_to_class(&op("x*dx+1"), &sigma)));
    }

    #[test]
    fn example_annihilator_kills_sigma() {
        let seq = example_sequence();
        let sigma = seq.sigma();
        assert!(seq.is_zero_class(&seq.apply_to_class(&op("3*(x^2-2)*dx+4*(y+1)*x*dy+34*x"), &sigma)));
        assert!(!seq.is_zero_class(&seq.apply_to_class(&op("3*(x^2-2)*dx+4*(y+1)*x*dy"), &sigma)));
        let f1 = seq.polys()[0].clone();
        assert!(seq.is_zero_class(&seq.apply_to_class(&WeylOp::from_poly(f1), &sigma)));
        assert_eq!(seq.basis().len(), 3);
    }

    #[test]
    fn non_regular_input_is_rejected() {
        assert!(matches!(RegularSequence::new(vec![p("x*y"), p("x*y+x")]), Err(Error::NotRegular(_))));
        assert!(matches!(RegularSequence::new(vec![p("x")]), Err(Error::NotRegular(_))));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..4).prop_map(|ts| {
            Poly::from_terms(2, ts.into_iter().map(|((a, b), c)| (Monomial::new(&[a, b]), rat(c))))
        })
    }

    fn small_op() -> impl Strategy<Value = WeylOp> {
        prop::collection::vec(((0u32..3, 0u32..3), small_poly()), 0..4).prop_map(|ts| {
            let mut acc = WeylOp::zero(2);
            for ((a, b), c) in ts {
                acc = acc + WeylOp::term(c, Monomial::new(&[a, b]));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn associativity(a in small_op(), b in small_op(), c in small_op()) {
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }

        #[test]
        fn adjoint_reverses_products(a in small_op(), b in small_op()) {
            prop_assert_eq!(a.multiply(&b).adjoint(), b.adjoint().multiply(&a.adjoint()));
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn apply_respects_products(a in small_op(), b in small_op(), g in small_poly()) {
            prop_assert_eq!(a.multiply(&b).apply(&g), a.apply(&b.apply(&g)));
        }

        #[test]
        fn commutator_drops_order(a in small_op(), f in small_poly()) {
            let c = a.commutator(&f);
            prop_assert_eq!(&c, &(a.multiply(&WeylOp::from_poly(f.clone())) - WeylOp::from_poly(f).multiply(&a)));
            if a.order() >= 1 {
                prop_assert!(c.is_zero() || c.order() < a.order());
            }
        }

        #[test]
        fn right_normal_form_round_trips(a in small_op()) {
            prop_assert_eq!(WeylOp::from_right_normal_form(2, &a.right_normal_form()), a);
        }

        #[test]
        fn parse_display_round_trip(a in small_op()) {
            prop_assert_eq!(op(&a.to_string()), a);
        }
    }

    #[test]
    fn scaling_helpers() {
        let a = op("x*dx+dy");
        assert_eq!(a.scale(&ratio(1, 2)), op("1/2*x*dx+1/2*dy"));
        assert_eq!(a.mul_left(&p("y")), op("x*y*dx+y*dy"));
        assert_eq!(a.homogeneous_part(1), a);
        assert_eq!(a.order(), 1);
    }
}
