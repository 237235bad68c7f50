//! Buchberger completion for ideals and for submodules of free modules.
//!
//! Ideals are handled as submodules of rank one, so a single engine serves
//! normal forms, ideal bases, and syzygy/lift computations.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::{ModuleOrder, MonomialOrder};
use super::poly::{ModVec, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

/// Module element as terms sorted decreasingly for a fixed order.
type Element = Vec<VTerm>;

/// Reduced Gröbner basis of an ideal (rank 1) or a submodule of `K[x]^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    rank: usize,
    order: ModuleOrder,
    elems: Vec<Element>,
    by_pos: Vec<Vec<usize>>,
}

struct Engine<'a> {
    order: &'a ModuleOrder,
}

impl Engine<'_> {
    fn cmp(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.order.cmp((a.pos, &a.mono), (b.pos, &b.mono))
    }

    fn sort(&self, terms: &mut Element) {
        terms.sort_by(|a, b| self.cmp(b, a));
    }

    /// `p - c * m * g`, both sorted decreasingly.
    fn sub_scaled(&self, p: &[VTerm], c: &Rational, m: &Monomial, g: &[VTerm]) -> Element {
        let mut out = Vec::with_capacity(p.len() + g.len());
        let mut j = 0;
        let mut scaled = g.iter().map(|t| VTerm { pos: t.pos, mono: t.mono.mul(m), coeff: -(c * &t.coeff) });
        let mut next = scaled.next();
        while let Some(s) = next.take() {
            while j < p.len() && self.cmp(&p[j], &s) == Ordering::Greater {
                out.push(p[j].clone());
                j += 1;
            }
            if j < p.len() && self.cmp(&p[j], &s) == Ordering::Equal {
                let sum = &p[j].coeff + &s.coeff;
                if !sum.is_zero() {
                    out.push(VTerm { pos: s.pos, mono: s.mono, coeff: sum });
                }
                j += 1;
            } else {
                out.push(s);
            }
            next = scaled.next();
        }
        out.extend_from_slice(&p[j..]);
        out
    }

    fn find_reducer<'b>(
        &self,
        t: &VTerm,
        elems: &'b [Element],
        by_pos: &[Vec<usize>],
        active: Option<&[bool]>,
    ) -> Option<&'b Element> {
        by_pos.get(t.pos)?.iter().find_map(|&i| {
            if active.is_some_and(|a| !a[i]) {
                return None;
            }
            let g = &elems[i];
            g[0].mono.divides(&t.mono).then_some(g)
        })
    }

    /// Full reduction of `p` by the elements indexed in `by_pos`.
    fn reduce(&self, mut p: Element, elems: &[Element], by_pos: &[Vec<usize>], active: Option<&[bool]>) -> Element {
        let mut i = 0;
        while i < p.len() {
            match self.find_reducer(&p[i], elems, by_pos, active) {
                Some(g) => {
                    let lead = &g[0];
                    let m = lead.mono.quotient_of(&p[i].mono).expect("reducer divides");
                    let c = &p[i].coeff / &lead.coeff;
                    let tail = self.sub_scaled(&p[i + 1..], &c, &m, &g[1..]);
                    p.truncate(i);
                    p.extend(tail);
                }
                None => i += 1,
            }
        }
        p
    }

    fn make_monic(&self, p: &mut Element) {
        if let Some(lead) = p.first() {
            if !lead.coeff.is_one() {
                let inv = lead.coeff.recip();
                for t in p.iter_mut() {
                    t.coeff *= &inv;
                }
            }
        }
    }

    fn s_vector(&self, f: &Element, g: &Element) -> Element {
        let lcm = f[0].mono.lcm(&g[0].mono);
        let mf = f[0].mono.quotient_of(&lcm).unwrap();
        let mg = g[0].mono.quotient_of(&lcm).unwrap();
        // f, g monic: (lcm/lf) f - (lcm/lg) g, leading terms cancel
        let left: Element = f[1..]
            .iter()
            .map(|t| VTerm { pos: t.pos, mono: t.mono.mul(&mf), coeff: t.coeff.clone() })
            .collect();
        self.sub_scaled(&left, &Rational::one(), &mg, &g[1..])
    }
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when the basis generates the whole ring (rank 1 only).
    pub fn is_unit(&self) -> bool {
        self.rank == 1 && self.elems.iter().any(|e| e[0].mono.is_one())
    }

    /// Leading `(position, monomial)` of each generator.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|e| (e[0].pos, e[0].mono.clone())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e[0].mono.clone()).collect()
    }

    pub fn generators(&self) -> Vec<ModVec> {
        self.elems.iter().map(|e| from_element(e, self.rank, self.nvars)).collect()
    }

    /// Generators of an ideal basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        assert_eq!(self.rank, 1, "polys() on a module basis");
        self.elems.iter().map(|e| element_to_poly(e, self.nvars)).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        assert_eq!(self.rank, 1, "normal_form(Poly) on a module basis");
        if p.is_zero() {
            return p.clone();
        }
        let engine = Engine { order: &self.order };
        let mut e = poly_to_element(p, 0);
        engine.sort(&mut e);
        let r = engine.reduce(e, &self.elems, &self.by_pos, None);
        element_to_poly(&r, self.nvars)
    }

    pub fn normal_form_vec(&self, v: &ModVec) -> Result<ModVec> {
        if v.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: v.rank() });
        }
        let engine = Engine { order: &self.order };
        let mut e = to_element(v);
        engine.sort(&mut e);
        let r = engine.reduce(e, &self.elems, &self.by_pos, None);
        Ok(from_element(&r, self.rank, self.nvars))
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_vec(&self, v: &ModVec) -> Result<bool> {
        Ok(self.normal_form_vec(v)?.is_zero())
    }
}

fn poly_to_element(p: &Poly, pos: usize) -> Element {
    p.terms().iter().map(|(m, c)| VTerm { pos, mono: m.clone(), coeff: c.clone() }).collect()
}

fn element_to_poly(e: &Element, nvars: usize) -> Poly {
    Poly::from_terms(nvars, e.iter().map(|t| (t.mono.clone(), t.coeff.clone())))
}

fn to_element(v: &ModVec) -> Element {
    v.0.iter().enumerate().flat_map(|(pos, p)| poly_to_element(p, pos)).collect()
}

pub(crate) fn from_element(e: &Element, rank: usize, nvars: usize) -> ModVec {
    let mut comps: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
    for t in e {
        comps[t.pos].push((t.mono.clone(), t.coeff.clone()));
    }
    ModVec(comps.into_iter().map(|ts| Poly::from_terms(nvars, ts)).collect())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
    let nvars = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let order = ModuleOrder::pot(order.clone());
    let elems: Vec<Element> = gens.iter().map(|g| poly_to_element(g, 0)).collect();
    buchberger(elems, 1, nvars, order)
}

/// Reduced Gröbner basis of the submodule of `K[x]^rank` generated by `gens`.
pub fn groebner_module(gens: &[ModVec], order: &ModuleOrder) -> Result<GroebnerBasis> {
    let first = gens.first().ok_or(Error::EmptyInput)?;
    let rank = first.rank();
    let nvars = first.0.first().map(|p| p.nvars()).unwrap_or(0);
    for g in gens {
        if g.rank() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: g.rank() });
        }
    }
    Ok(buchberger(gens.iter().map(to_element).collect(), rank, nvars, order.clone()))
}

fn buchberger(inputs: Vec<Element>, rank: usize, nvars: usize, order: ModuleOrder) -> GroebnerBasis {
    let engine = Engine { order: &order };
    let mut all: Vec<Element> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
    let mut pairs: Vec<Pair> = Vec::new();

    let insert = |h: Element,
                      all: &mut Vec<Element>,
                      active: &mut Vec<bool>,
                      by_pos: &mut Vec<Vec<usize>>,
                      pairs: &mut Vec<Pair>| {
        let hi = all.len();
        let hpos = h[0].pos;
        let hlead = h[0].mono.clone();
        all.push(h);
        active.push(true);
        gebauer_moller(hi, hpos, &hlead, rank == 1, all, active, pairs);
        by_pos[hpos].push(hi);
    };

    for mut e in inputs {
        engine.sort(&mut e);
        let mut r = engine.reduce(e, &all, &by_pos, Some(&active));
        if r.is_empty() {
            continue;
        }
        engine.make_monic(&mut r);
        insert(r, &mut all, &mut active, &mut by_pos, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            if order.cmp((a.pos, &a.lcm), (b.pos, &b.lcm)) == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = engine.s_vector(&all[pair.i], &all[pair.j]);
        let mut r = engine.reduce(s, &all, &by_pos, Some(&active));
        if r.is_empty() {
            continue;
        }
        engine.make_monic(&mut r);
        insert(r, &mut all, &mut active, &mut by_pos, &mut pairs);
    }

    // the active set is minimal; tail-reduce it
    let minimal: Vec<Element> = all.into_iter().zip(&active).filter(|(_, a)| **a).map(|(e, _)| e).collect();
    let mut min_by_pos: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (i, e) in minimal.iter().enumerate() {
        min_by_pos[e[0].pos].push(i);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, e) in minimal.iter().enumerate() {
        let others: Vec<Vec<usize>> = min_by_pos.iter().map(|v| v.iter().copied().filter(|&k| k != i).collect()).collect();
        let head = e[0].clone();
        let tail = engine.reduce(e[1..].to_vec(), &minimal, &others, None);
        let mut r = vec![head];
        r.extend(tail);
        engine.make_monic(&mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| engine.cmp(&a[0], &b[0]));
    let mut by_pos = vec![Vec::new(); rank];
    for (i, e) in reduced.iter().enumerate() {
        by_pos[e[0].pos].push(i);
    }
    GroebnerBasis { nvars, rank, order, elems: reduced, by_pos }
}

/// Gebauer–Möller installation of the pairs created by the new element `hi`.
fn gebauer_moller(
    hi: usize,
    hpos: usize,
    hlead: &Monomial,
    ideal: bool,
    all: &[Element],
    active: &mut [bool],
    pairs: &mut Vec<Pair>,
) {
    let coprime = |m: &Monomial| ideal && m.is_coprime(hlead);
    let mut candidates: Vec<Pair> = (0..hi)
        .filter(|&g| active[g] && all[g][0].pos == hpos)
        .map(|g| Pair { i: g, j: hi, pos: hpos, lcm: all[g][0].mono.lcm(hlead) })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let lead_g = &all[p.i][0].mono;
        let redundant = !coprime(lead_g)
            && candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if !redundant {
            kept.push(p);
        }
    }
    // product criterion
    kept.retain(|p| !coprime(&all[p.i][0].mono));

    // old pairs made redundant by h
    pairs.retain(|p| {
        if p.pos != hpos || !hlead.divides(&p.lcm) {
            return true;
        }
        let li = all[p.i][0].mono.lcm(hlead);
        let lj = all[p.j][0].mono.lcm(hlead);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(kept);

    for g in 0..hi {
        if active[g] && all[g][0].pos == hpos && hlead.divides(&all[g][0].mono) {
            active[g] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn division_by_single_generator() {
        let g = groebner(&[p("x^2-2")], &MonomialOrder::Grevlex);
        assert_eq!(g.normal_form(&p("x^2")), p("2"));
        assert!(g.normal_form(&p("x^2-2")).is_zero());
    }

    #[test]
    fn already_reduced_basis() {
        let g = groebner(&[p("x^2-2"), p("y+1")], &MonomialOrder::Grevlex);
        let mut gens = g.polys();
        gens.sort_by_key(|q| q.to_string());
        assert_eq!(gens, vec![p("x^2-2"), p("y+1")]);
    }

    #[test]
    fn linear_chain() {
        let g = groebner(&[p("x-y"), p("y-1")], &MonomialOrder::Grevlex);
        let mut gens = g.polys();
        gens.sort_by_key(|q| q.to_string());
        assert_eq!(gens, vec![p("x-1"), p("y-1")]);
    }

    #[test]
    fn example_generator_lies_in_radical() {
        let g = groebner(&[p("x^2-2"), p("y+1")], &MonomialOrder::Grevlex);
        assert!(g.normal_form(&p("x^4-4*x^2-y^3-3*y^2-3*y+3")).is_zero());
    }

    #[test]
    fn cyclic_three_has_expected_size() {
        let names = ["a", "b", "c"];
        let gens: Vec<Poly> = ["a+b+c", "a*b+b*c+c*a", "a*b*c-1"]
            .iter()
            .map(|s| parse_poly(s, &names).unwrap())
            .collect();
        let g = groebner(&gens, &MonomialOrder::Lex);
        // lex basis of cyclic-3 is {a+b+c, b^2+b*c+c^2, c^3-1}
        assert_eq!(g.len(), 3);
        let c3 = parse_poly("c^3-1", &names).unwrap();
        assert!(g.polys().contains(&c3));
    }

    #[test]
    fn module_basis_and_dimension_check() {
        let v1 = ModVec(vec![p("x"), p("y")]);
        let v2 = ModVec(vec![p("y"), p("0")]);
        let g = groebner_module(&[v1.clone(), v2.clone()], &ModuleOrder::default()).unwrap();
        assert!(g.contains_vec(&v1).unwrap());
        assert!(g.contains_vec(&v1.scale(&p("x+3")).add(&v2)).unwrap());
        assert!(!g.contains_vec(&ModVec(vec![p("0"), p("1")])).unwrap());
        let bad = ModVec(vec![p("x")]);
        assert!(matches!(g.normal_form_vec(&bad), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn weighted_elimination() {
        // eliminate t from t - x, t - y^2  =>  x - y^2
        let names = ["t", "x", "y"];
        let gens = [parse_poly("t-x", &names).unwrap(), parse_poly("t-y^2", &names).unwrap()];
        let g = groebner(&gens, &MonomialOrder::Weighted(vec![1, 0, 0]));
        let free: Vec<Poly> = g.polys().into_iter().filter(|q| !q.depends_on(0)).collect();
        assert_eq!(free, vec![parse_poly("y^2-x", &names).unwrap()]);
    }
}
