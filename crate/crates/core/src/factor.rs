//! Univariate factorization over the rationals.
//!
//! Squarefree decomposition (Yun), then per squarefree part: factorization
//! modulo a good prime (distinct-degree plus Cantor–Zassenhaus), multifactor
//! Hensel lifting past a Mignotte-style bound, and subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Monomial, Poly, Rational};

/// `p = unit · Π factor_i^{e_i}` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(1, self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Factors a nonzero polynomial in one variable.
pub fn factor_univariate(p: &Poly) -> Factorization {
    factor_univariate_seeded(p, 0)
}

/// As [`factor_univariate`]; `seed` drives the random splitting modulo `p`
/// (the result does not depend on it).
pub fn factor_univariate_seeded(p: &Poly, seed: u64) -> Factorization {
    assert_eq!(p.nvars(), 1, "univariate input expected");
    assert!(!p.is_zero(), "cannot factor zero");
    let dense = to_dense(p);
    let unit = dense.last().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, e) in squarefree(&dense) {
        if part.len() <= 1 {
            continue;
        }
        for g in factor_squarefree(&primitive_int(&part), &mut rng) {
            factors.push((from_dense(&monic_q(&int_to_q(&g))), e));
        }
    }
    factors.sort_by_key(|a| (a.0.total_degree(), a.0.to_string()));
    Factorization { unit, factors }
}

/// Monic squarefree part of a univariate polynomial.
pub fn squarefree_part(p: &Poly) -> Poly {
    let d = to_dense(p);
    if d.len() <= 1 {
        return Poly::one(1);
    }
    let g = gcd_q(&d, &derivative_q(&d));
    from_dense(&monic_q(&divrem_q(&d, &g).0))
}

// dense rational polynomials, coefficient i belongs to t^i

type QPoly = Vec<Rational>;
type ZPoly = Vec<BigInt>;

fn to_dense(p: &Poly) -> QPoly {
    let deg = p.total_degree() as usize;
    let mut out = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.get(0) as usize] = c.clone();
    }
    trim_q(out)
}

fn from_dense(d: &[Rational]) -> Poly {
    Poly::from_terms(1, d.iter().enumerate().map(|(i, c)| (Monomial::new(&[i as u32]), c.clone())))
}

fn trim_q(mut v: QPoly) -> QPoly {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn monic_q(v: &[Rational]) -> QPoly {
    let inv = v.last().expect("nonzero").recip();
    v.iter().map(|c| c * &inv).collect()
}

fn derivative_q(v: &[Rational]) -> QPoly {
    trim_q(v.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
}

fn divrem_q(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    let inv = b[db].recip();
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    (trim_q(q), trim_q(r))
}

fn gcd_q(a: &[Rational], b: &[Rational]) -> QPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = divrem_q(&a, &b).1;
        a = b;
        b = r;
    }
    monic_q(&a)
}

/// Yun's algorithm: `(a_i, i)` with `v = c · Π a_i^i`, each `a_i` monic,
/// squarefree and pairwise coprime.
fn squarefree(v: &[Rational]) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if v.len() <= 1 {
        return out;
    }
    let f = monic_q(v);
    let df = derivative_q(&f);
    let a0 = gcd_q(&f, &df);
    let mut b = divrem_q(&f, &a0).0;
    let mut c = divrem_q(&df, &a0).0;
    let mut d = sub_q(&c, &derivative_q(&b));
    let mut i = 1;
    loop {
        let a = gcd_q(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divrem_q(&b, &a).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem_q(&d, &a).0;
        d = sub_q(&c, &derivative_q(&b));
        i += 1;
    }
    out
}

fn sub_q(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim_q((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Integer polynomial with coprime coefficients and positive leading
/// coefficient.
fn primitive_int(v: &[Rational]) -> ZPoly {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let ints: ZPoly = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    ints.iter().map(|c| c / &g).collect()
}

fn int_to_q(v: &[BigInt]) -> QPoly {
    v.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

// arithmetic modulo a word-sized prime

type PPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim_p(mut v: PPoly) -> PPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce_p(v: &[BigInt], p: u64) -> PPoly {
    let bp = BigInt::from(p);
    trim_p(v.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect())
}

fn monic_p(v: &[u64], p: u64) -> PPoly {
    let inv = invmod(*v.last().unwrap(), p);
    v.iter().map(|&c| mulmod(c, inv, p)).collect()
}

fn sub_p(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    trim_p((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

fn mul_p(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim_p(out)
}

fn divrem_p(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, bj, p)) % p;
            }
        }
        q[i] = c;
    }
    (trim_p(q), trim_p(r))
}

fn gcd_p(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut a, mut b) = (trim_p(a.to_vec()), trim_p(b.to_vec()));
    while !b.is_empty() {
        let r = divrem_p(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic_p(&a, p)
    }
}

/// `(g, s, t)` with `s a + t b = g` monic.
fn xgcd_p(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly, PPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem_p(&r0, &r1, p);
        let s2 = sub_p(&s0, &mul_p(&q, &s1, p), p);
        let t2 = sub_p(&t0, &mul_p(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = invmod(*r0.last().unwrap(), p);
    let sc = |v: &[u64]| trim_p(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

fn powmod_poly(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PPoly {
    let mut result = vec![1u64];
    let base = divrem_p(base, m, p).1;
    for i in (0..e.bits()).rev() {
        result = divrem_p(&mul_p(&result, &result, p), m, p).1;
        if e.bit(i) {
            result = divrem_p(&mul_p(&result, &base, p), m, p).1;
        }
    }
    result
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 1;
    while f.len() > 2 * d {
        h = powmod_poly(&h, &pe, &f, p);
        let g = gcd_p(&sub_p(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem_p(&f, &g, p).0;
            h = divrem_p(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd `p`).
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: PPoly = trim_p((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = sub_p(&powmod_poly(&a, &e, f, p), &[1], p);
        let g = gcd_p(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let rest = divrem_p(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&monic_p(&rest, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let f = monic_p(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn derivative_p(v: &[u64], p: u64) -> PPoly {
    trim_p(v.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

/// Picks, among the first few primes keeping `f` squarefree with unchanged
/// degree, the one giving the fewest modular factors.
fn choose_prime(f: &[BigInt], rng: &mut ChaCha8Rng) -> (u64, Vec<PPoly>) {
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 5 {
        p += 2;
        if !is_prime(p) {
            continue;
        }
        let fp = reduce_p(f, p);
        if fp.len() != f.len() {
            continue;
        }
        if gcd_p(&fp, &derivative_p(&fp, p), p).len() != 1 {
            continue;
        }
        tried += 1;
        let fs = factor_mod_p(&fp, p, rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    best.unwrap()
}

fn mod_sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn reduce_z(v: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn lift_p(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `F ≡ g h (mod p)` (`F`, `g`, `h` monic) to `mod p^k`.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, s, t) = xgcd_p(g, h, p);
    let bp = BigInt::from(p);
    let mut gz = lift_p(g);
    let mut hz = lift_p(h);
    let mut pj = bp.clone();
    for _ in 1..k {
        let prod = mul_z(&gz, &hz);
        let n = f.len().max(prod.len());
        let zero = BigInt::zero();
        let err: ZPoly = (0..n).map(|i| f.get(i).unwrap_or(&zero) - prod.get(i).unwrap_or(&zero)).collect();
        let e: PPoly = trim_p(err.iter().map(|c| (c / &pj).mod_floor(&bp).to_u64().unwrap()).collect());
        if !e.is_empty() {
            let (q, dg) = divrem_p(&mul_p(&e, &t, p), g, p);
            let dh = divrem_p(&add_p(&mul_p(&e, &s, p), &mul_p(&q, h, p), p), h, p).1;
            for (i, c) in dg.iter().enumerate() {
                gz[i] += &pj * c;
            }
            for (i, c) in dh.iter().enumerate() {
                hz[i] += &pj * c;
            }
        }
        pj *= &bp;
    }
    (gz, hz)
}

fn add_p(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let n = a.len().max(b.len());
    trim_p((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

/// Exact quotient `a / b` over the integers, if it exists.
fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn primitive_z(v: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Irreducible factors over the integers of a primitive squarefree
/// polynomial with positive leading coefficient.
fn factor_squarefree(f: &[BigInt], rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let (p, modular) = choose_prime(f, rng);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // every coefficient of a factor of f times lc is below this in absolute value
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm;
    let bp = BigInt::from(p);
    let mut k = 1u32;
    let mut m = bp.clone();
    while m <= bound {
        m *= &bp;
        k += 1;
    }
    let lc_inv = lc.modinv(&m).expect("p does not divide lc");
    let mut target = reduce_z(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &m);
    let mut lifted: Vec<ZPoly> = Vec::new();
    for i in 0..modular.len() - 1 {
        let rest = modular[i + 1..].iter().fold(vec![1u64], |acc, g| mul_p(&acc, g, p));
        let (g, h) = hensel_pair(&target, &modular[i], &rest, p, k);
        lifted.push(reduce_z(&g, &m));
        target = reduce_z(&h, &m);
    }
    lifted.push(target);

    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut remaining: Vec<ZPoly> = lifted;
    let mut size = 1;
    'sizes: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let lcf = f.last().unwrap().clone();
            let mut g = vec![lcf.clone()];
            for &i in &subset {
                g = reduce_z(&mul_z(&g, &remaining[i]), &m);
            }
            let g: ZPoly = g.iter().map(|c| mod_sym(c, &m)).collect();
            let g = primitive_z(&g);
            if let Some(q) = div_exact_z(&f, &g) {
                out.push(g);
                f = primitive_z(&q);
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, v)| v).collect();
                continue 'sizes;
            }
        }
        size += 1;
    }
    out.push(f);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};
    use proptest::prelude::*;

    fn t(s: &str) -> Poly {
        parse_poly(s, &["t"]).unwrap()
    }

    fn shape(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|(p, e)| (p.fmt_with(&["t".to_string()]).to_string(), *e)).collect()
    }

    #[test]
    fn small_cases() {
        let f = factor_univariate(&t("t^2-1"));
        assert_eq!(shape(&f), vec![("t+1".to_string(), 1), ("t-1".to_string(), 1)]);
        let f = factor_univariate(&t("t^2-2"));
        assert_eq!(shape(&f), vec![("t^2-2".to_string(), 1)]);
        let f = factor_univariate(&t("(t^2-2)^2*(t+3)"));
        assert_eq!(shape(&f), vec![("t+3".to_string(), 1), ("t^2-2".to_string(), 2)]);
    }

    #[test]
    fn units_and_constants() {
        let f = factor_univariate(&t("-6*t^2+6"));
        assert_eq!(f.unit, rat(-6));
        assert_eq!(f.expand(), t("-6*t^2+6"));
        let c = factor_univariate(&t("5"));
        assert!(c.factors.is_empty());
        assert_eq!(c.unit, rat(5));
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // irreducible over Q, splits into linear/quadratic pieces mod every prime
        let f = t("t^4-10*t^2+1");
        let out = factor_univariate(&f);
        assert_eq!(out.factors.len(), 1);
        let g = t("(t^4-10*t^2+1)*(t^2+t+1)*(3*t-2)^3");
        let out = factor_univariate(&g);
        assert_eq!(out.expand(), g);
        assert_eq!(out.factors.len(), 3);
    }

    #[test]
    fn cyclotomic_product() {
        let f = t("t^12-1");
        let out = factor_univariate(&f);
        assert_eq!(out.factors.len(), 6);
        assert_eq!(out.expand(), f);
    }

    #[test]
    fn squarefree_part_drops_multiplicities() {
        assert_eq!(squarefree_part(&t("(t-1)^3*(t+2)")), t("t^2+t-2"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn products_factor_back(roots in prop::collection::vec((-5i64..6, 1i64..4), 1..4), quad in prop::collection::vec((-4i64..5, 1i64..5), 0..3)) {
            let mut f = t("1");
            for (a, b) in &roots {
                f = &f * &t(&format!("{}*t-({})", b, a));
            }
            for (a, b) in &quad {
                f = &f * &t(&format!("t^2+{}*t+{}", a, b));
            }
            let out = factor_univariate(&f);
            prop_assert_eq!(out.expand(), f);
            for (g, _) in &out.factors {
                let d = g.total_degree();
                prop_assert!(d >= 1);
                prop_assert_eq!(squarefree_part(g), g.clone());
            }
        }
    }
}
