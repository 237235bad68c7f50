use std::cmp::Ordering;

use super::monomial::Monomial;

/// Term order on `K[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Lexicographic with `x_1 > x_2 > ... > x_n`.
    Lex,
    /// Weight vector, ties broken by grevlex. A weight supported on a block
    /// of variables gives an elimination order for that block.
    Weighted(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Weighted(w) => {
                let wa: u64 = w.iter().zip(a.exponents()).map(|(w, e)| *w as u64 * *e as u64).sum();
                let wb: u64 = w.iter().zip(b.exponents()).map(|(w, e)| *w as u64 * *e as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {
            for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                if x != y {
                    // smaller exponent in the last differing variable wins
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PositionPrecedence {
    #[default]
    PositionOverTerm,
    TermOverPosition,
    /// Positions below the split dominate all others; inside each block the
    /// term decides first, then the position.
    Blocks(usize),
}

/// Term order on the free module `K[x]^d`. Positions compare with the lower
/// index larger: `e_0 > e_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleOrder {
    pub term: MonomialOrder,
    pub precedence: PositionPrecedence,
}

impl ModuleOrder {
    pub fn pot(term: MonomialOrder) -> Self {
        ModuleOrder { term, precedence: PositionPrecedence::PositionOverTerm }
    }

    pub fn top(term: MonomialOrder) -> Self {
        ModuleOrder { term, precedence: PositionPrecedence::TermOverPosition }
    }

    pub fn blocks(term: MonomialOrder, split: usize) -> Self {
        ModuleOrder { term, precedence: PositionPrecedence::Blocks(split) }
    }

    pub fn cmp(&self, (pa, ma): (usize, &Monomial), (pb, mb): (usize, &Monomial)) -> Ordering {
        match self.precedence {
            PositionPrecedence::Blocks(split) => (pb >= split)
                .cmp(&(pa >= split))
                .then_with(|| self.term.cmp(ma, mb))
                .then_with(|| pb.cmp(&pa)),
            PositionPrecedence::PositionOverTerm => pb.cmp(&pa).then_with(|| self.term.cmp(ma, mb)),
            PositionPrecedence::TermOverPosition => self.term.cmp(ma, mb).then_with(|| pb.cmp(&pa)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // x y^2 z^0 vs x^2 z: grevlex prefers the one with smaller z exponent
        assert_eq!(o.cmp(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_and_weighted() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        let w = MonomialOrder::Weighted(vec![1, 0, 0]);
        assert_eq!(w.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(w.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn module_orders() {
        let pot = ModuleOrder::pot(MonomialOrder::Grevlex);
        assert_eq!(pot.cmp((0, &m(&[0])), (1, &m(&[5]))), Ordering::Greater);
        let top = ModuleOrder::top(MonomialOrder::Grevlex);
        assert_eq!(top.cmp((0, &m(&[0])), (1, &m(&[5]))), Ordering::Less);
        assert_eq!(top.cmp((0, &m(&[5])), (1, &m(&[5]))), Ordering::Greater);
        let blocks = ModuleOrder::blocks(MonomialOrder::Grevlex, 2);
        assert_eq!(blocks.cmp((1, &m(&[0])), (2, &m(&[5]))), Ordering::Greater);
        assert_eq!(blocks.cmp((0, &m(&[0])), (1, &m(&[1]))), Ordering::Less);
        assert_eq!(blocks.cmp((3, &m(&[1])), (2, &m(&[1]))), Ordering::Less);
    }

    #[test]
    fn multiplicative_and_well_ordered() {
        let orders = [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Weighted(vec![2, 1, 0])];
        let mons: Vec<Monomial> = super::super::monomial::multi_indices(3, 0, 3);
        let w = m(&[1, 0, 2]);
        for o in &orders {
            for a in &mons {
                assert_ne!(o.cmp(a, &m(&[0, 0, 0])), Ordering::Less);
                for b in &mons {
                    assert_eq!(o.cmp(a, b), o.cmp(&a.mul(&w), &b.mul(&w)));
                }
            }
        }
    }
}
