use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::rational::Rational;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in decreasing graded reverse lexicographic order and
/// never carry a zero coefficient, so structural equality is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::Grevlex.cmp(b, a)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Poly::zero(nvars)
        } else {
            Poly { nvars, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| canonical_cmp(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.get(var)).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.get(var) > 0)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        // multiplication by a monomial preserves the order
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.get(var) > 0).map(|(m, c)| {
            let e = m.get(var);
            let mut m = m.clone();
            m.set(var, e - 1);
            (m, c * Rational::from_integer(e.into()))
        });
        Poly::from_terms(self.nvars, terms)
    }

    /// `∂^α • self`.
    pub fn derivative_multi(&self, alpha: &Monomial) -> Poly {
        let mut terms = Vec::new();
        'outer: for (m, c) in &self.terms {
            let mut factor = c.clone();
            let mut out = m.clone();
            for (i, &a) in alpha.exponents().iter().enumerate() {
                let e = m.get(i);
                if a > e {
                    continue 'outer;
                }
                for k in 0..a {
                    factor *= Rational::from_integer((e - k).into());
                }
                out.set(i, e - a);
            }
            terms.push((out, factor));
        }
        Poly::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(target);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = out + t;
        }
        out
    }

    /// Moves the polynomial into a ring with `nvars` variables, sending
    /// variable `i` to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().map(|(m, c)| (m.embed(nvars, positions), c.clone())))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Returns `(content, primitive part)` where the primitive part has
    /// coprime integer coefficients and a positive leading coefficient in
    /// the canonical order.
    pub fn primitive(&self) -> (Rational, Poly) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut lcm = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&lcm / c.denom());
            g = g.gcd(&v);
        }
        let mut content = Rational::new(g, lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    pub fn fmt_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Poly { nvars: self.nvars, terms: out }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.merge(&rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.merge(&rhs, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(self.nvars, acc)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Canonical text form: terms in decreasing grevlex order, explicit `*`,
/// `^` for powers, rational coefficients as `a/b`.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            write_term(f, k == 0, c, &monomial_factors(m, self.names))?;
        }
        Ok(())
    }
}

/// `x^2*y` style factors of a monomial, empty for 1.
pub fn monomial_factors(m: &Monomial, names: &[String]) -> Vec<String> {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
        .collect()
}

/// Writes `±c*f1*f2`, folding unit coefficients and the leading `+`.
pub fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, factors: &[String]) -> fmt::Result {
    let neg = c.is_negative();
    if neg {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    let abs = c.abs();
    if factors.is_empty() {
        return write!(f, "{}", abs);
    }
    if !abs.is_one() {
        write!(f, "{}*", abs)?;
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.fmt_with(&names))
    }
}

/// `x, y, z` for up to three variables, `x1..xn` beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{}", i)).collect()
    }
}

/// Element of the free module `K[x]^d`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModVec(pub Vec<Poly>);

impl ModVec {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModVec(vec![Poly::zero(nvars); rank])
    }

    /// The unit vector `e_j`.
    pub fn unit(rank: usize, nvars: usize, j: usize) -> Self {
        let mut v = Self::zero(rank, nvars);
        v.0[j] = Poly::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, p: &Poly) -> ModVec {
        ModVec(self.0.iter().map(|c| c * p).collect())
    }

    pub fn add(&self, other: &ModVec) -> ModVec {
        ModVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `Σ coeffs[i] * vectors[i]`.
pub fn combine(vectors: &[ModVec], coeffs: &[Poly], rank: usize, nvars: usize) -> ModVec {
    let mut acc = ModVec::zero(rank, nvars);
    for (v, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&v.scale(c));
        }
    }
    acc
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut det = Poly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = &m[0][j] * &determinant(&minor, nvars);
                det = if j % 2 == 0 { det + t } else { det - t };
            }
            det
        }
    }
}

/// Jacobian determinant `det(∂f_i/∂x_j)`.
pub fn jacobian(fs: &[Poly]) -> Poly {
    let n = fs.first().map(|f| f.nvars()).unwrap_or(0);
    let m: Vec<Vec<Poly>> = fs.iter().map(|f| (0..n).map(|j| f.derivative(j)).collect()).collect();
    determinant(&m, n)
}
