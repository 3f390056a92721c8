//! Buchberger's algorithm with the Gebauer-Möller pair update.

use std::cmp::Ordering;

use super::{Budget, IdealPresentation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder, Variables};
use crate::scalar::Field;

/// Terms sorted ascending under the working order; the leading term is last.
#[derive(Clone, Debug)]
struct Sorted<C> {
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> Sorted<C> {
    fn from_poly(p: &Polynomial<C>, order: &TermOrder) -> Self {
        let mut terms = p.sorted_terms(order);
        terms.reverse();
        Sorted { terms }
    }

    fn to_poly(&self, vars: &Variables) -> Polynomial<C> {
        Polynomial::from_terms(vars, self.terms.iter().cloned())
    }

    fn lead(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            if !lc.is_one() {
                let inv = C::one() / lc;
                for (_, c) in &mut self.terms {
                    *c = c.clone() * &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merging two ascending term lists.
    fn sub_scaled(&self, c: &C, m: &Monomial, g: &Sorted<C>, order: &TermOrder) -> Sorted<C> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm * m, gc.clone() * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().expect("peeked");
                    out.push((bm, -bc));
                }
                (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                    Ordering::Less => out.push(a.next().expect("peeked").clone()),
                    Ordering::Greater => {
                        let (bm, bc) = b.next().expect("peeked");
                        out.push((bm, -bc));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().expect("peeked");
                        let (_, bc) = b.next().expect("peeked");
                        let d = ac.clone() - bc;
                        if !d.is_zero() {
                            out.push((am.clone(), d));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }

    /// Full reduction modulo `divisors`.
    fn reduce(mut self, divisors: &[&Sorted<C>], order: &TermOrder) -> Sorted<C> {
        let mut remainder = Vec::new();
        while let Some((lm, lc)) = self.lead() {
            match divisors.iter().find(|g| g.lm().divides(lm)) {
                Some(g) => {
                    let (gm, gc) = g.lead().expect("nonzero divisor");
                    let q = lm.checked_div(gm).expect("divisibility checked");
                    let c = lc.clone() / gc;
                    self = self.sub_scaled(&c, &q, g, order);
                }
                None => remainder.push(self.terms.pop().expect("nonempty")),
            }
        }
        remainder.reverse();
        Sorted { terms: remainder }
    }

    fn s_polynomial(&self, other: &Sorted<C>, order: &TermOrder) -> Sorted<C> {
        let (m1, c1) = self.lead().expect("nonzero");
        let (m2, c2) = other.lead().expect("nonzero");
        let lcm = m1.lcm(m2);
        let u1 = lcm.checked_div(m1).expect("lcm");
        let u2 = lcm.checked_div(m2).expect("lcm");
        let zero = Sorted { terms: Vec::new() };
        let left = zero.sub_scaled(&-(C::one() / c1), &u1, self, order);
        left.sub_scaled(&(C::one() / c2), &u2, other, order)
    }
}

/// The reduced Gröbner basis of an ideal for a fixed term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C> {
    vars: Variables,
    order: TermOrder,
    basis: Vec<Polynomial<C>>,
    leading: Vec<Monomial>,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'a, C> {
    order: &'a TermOrder,
    polys: Vec<Sorted<C>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<C: Field> Buchberger<'_, C> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].lm()
    }

    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let mut candidates: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lh.lcm(self.lm(g)))).collect();

        // Chain criterion among the new pairs; coprime pairs are kept for now
        // so they can shadow others, then dropped by the product criterion.
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = candidates.pop() {
            let coprime = lh.is_coprime(self.lm(g1));
            let shadowed = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !shadowed {
                kept.push((g1, l1));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(self.lm(*g)))
            .map(|(g, lcm)| Pair { i: g, j: h, lcm })
            .collect();

        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !lh.divides(&p.lcm)
                    || self.lm(p.i).lcm(&lh) == p.lcm
                    || self.lm(p.j).lcm(&lh) == p.lcm
            })
            .collect();
        self.pairs.extend(new_pairs);

        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn add(&mut self, p: Sorted<C>) {
        self.polys.push(p);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| order.cmp(&a.lcm, &b.lcm))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

impl<C: Field> GroebnerBasis<C> {
    /// Computes the reduced Gröbner basis of `ideal`.
    pub fn compute(ideal: &IdealPresentation<C>, order: &TermOrder, budget: &Budget) -> Result<Self> {
        let vars = ideal.vars().clone();
        let mut bb = Buchberger { order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        let mut inputs: Vec<Sorted<C>> =
            ideal.generators().iter().map(|g| Sorted::from_poly(g, order)).collect();
        inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
        for mut p in inputs {
            p.make_monic();
            bb.add(p);
        }

        let mut reductions = 0usize;
        while let Some(pair) = bb.next_pair() {
            reductions += 1;
            if reductions > budget.max_pair_reductions {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} S-pair reductions",
                    budget.max_pair_reductions
                )));
            }
            let s = bb.polys[pair.i].s_polynomial(&bb.polys[pair.j], order);
            let divisors: Vec<&Sorted<C>> = bb.active.iter().map(|&k| &bb.polys[k]).collect();
            let mut r = s.reduce(&divisors, order);
            if !r.is_zero() {
                r.make_monic();
                bb.add(r);
            }
        }

        // Inputs were never reduced against each other, so the active set may
        // still hold redundant leading monomials.
        let mut minimal: Vec<Sorted<C>> = Vec::new();
        for &k in &bb.active {
            let p = &bb.polys[k];
            let redundant = bb.active.iter().any(|&l| {
                l != k && bb.polys[l].lm().divides(p.lm()) && (bb.polys[l].lm() != p.lm() || l < k)
            });
            if !redundant {
                minimal.push(p.clone());
            }
        }
        let mut reduced = Vec::with_capacity(minimal.len());
        for (k, g) in minimal.iter().enumerate() {
            let others: Vec<&Sorted<C>> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p).collect();
            let (lead, tail) = g.terms.split_last().expect("nonzero");
            let tail = Sorted { terms: tail.to_vec() }.reduce(&others, order);
            let mut terms = tail.terms;
            terms.push(lead.clone());
            let mut p = Sorted { terms };
            p.make_monic();
            reduced.push(p);
        }
        reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));

        Ok(GroebnerBasis {
            leading: reduced.iter().map(|p| p.lm().clone()).collect(),
            basis: reduced.iter().map(|p| p.to_poly(&vars)).collect(),
            vars,
            order: order.clone(),
        })
    }

    pub fn basis(&self) -> &[Polynomial<C>] {
        &self.basis
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    /// Generators of the leading-term ideal, one per basis element.
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit(&self) -> bool {
        self.leading.iter().any(Monomial::is_one)
    }

    /// Remainder of `p` on division by the basis; zero iff `p` is in the ideal.
    pub fn normal_form(&self, p: &Polynomial<C>) -> Polynomial<C> {
        let sorted: Vec<Sorted<C>> = self.basis.iter().map(|g| Sorted::from_poly(g, &self.order)).collect();
        let divisors: Vec<&Sorted<C>> = sorted.iter().collect();
        Sorted::from_poly(p, &self.order).reduce(&divisors, &self.order).to_poly(&self.vars)
    }

    pub fn contains(&self, p: &Polynomial<C>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let sorted: Vec<Sorted<C>> = self.basis.iter().map(|g| Sorted::from_poly(g, &self.order)).collect();
        let divisors: Vec<&Sorted<C>> = sorted.iter().collect();
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                let s = sorted[i].s_polynomial(&sorted[j], &self.order);
                if !s.reduce(&divisors, &self.order).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::One;
    use proptest::prelude::*;

    fn ideal(gens: &[&str]) -> IdealPresentation<Rational> {
        IdealPresentation::parse(&["x", "y"], gens).unwrap()
    }

    fn basis_strings(gb: &GroebnerBasis<Rational>) -> Vec<String> {
        gb.basis().iter().map(|p| p.to_string()).collect()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis<Rational> {
        GroebnerBasis::compute(&ideal(gens), &TermOrder::degrevlex(), &Budget::default()).unwrap()
    }

    #[test]
    fn cusp_with_x() {
        assert_eq!(basis_strings(&gb(&["y^2 - x^3", "x"])), vec!["y^2", "x"]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        assert_eq!(basis_strings(&gb(&["x^2", "x*y", "y^2"])), vec!["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn linear_elimination() {
        assert_eq!(basis_strings(&gb(&["x + y", "x - y"])), vec!["x", "y"]);
    }

    #[test]
    fn unit_ideal() {
        let g = gb(&["x + 1", "x"]);
        assert!(g.is_unit());
        assert_eq!(basis_strings(&g), vec!["1"]);
    }

    #[test]
    fn lex_elimination() {
        // x^2 + y^2 - 1, x - y  under lex gives x - y, y^2 - 1/2
        let g = GroebnerBasis::compute(&ideal(&["x^2 + y^2 - 1", "x - y"]), &TermOrder::lex(), &Budget::default())
            .unwrap();
        assert_eq!(basis_strings(&g), vec!["x - y", "y^2 - 1/2"]);
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget { max_pair_reductions: 1, ..Budget::default() };
        let r = GroebnerBasis::compute(&ideal(&["x^3 - y", "x*y^2 - 1", "y^3 - x^2"]), &TermOrder::degrevlex(), &tight);
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }

    fn arb_gen() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
        proptest::collection::vec(((0u32..4, 0u32..4), -3i64..4), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn reduced_basis_properties(gens in proptest::collection::vec(arb_gen(), 1..4), lex in any::<bool>()) {
            let vars = Variables::new(&["x", "y"]).unwrap();
            let polys: Vec<Polynomial<Rational>> = gens.iter().map(|ts| Polynomial::from_terms(
                &vars, ts.iter().map(|((a, b), c)| (Monomial::new(vec![*a, *b]), Rational::from_int(*c))))).collect();
            prop_assume!(polys.iter().any(|p| !p.is_zero()));
            let id = IdealPresentation::new(&vars, polys.clone()).unwrap();
            let order = if lex { TermOrder::lex() } else { TermOrder::degrevlex() };
            let g = GroebnerBasis::compute(&id, &order, &Budget::default()).unwrap();
            prop_assert!(g.satisfies_buchberger_criterion());
            for p in &polys {
                prop_assert!(g.contains(p));
            }
            for (k, (m, b)) in g.leading_monomials().iter().zip(g.basis()).enumerate() {
                prop_assert!(b.leading_term(&order).unwrap().1.is_one());
                for (l, m2) in g.leading_monomials().iter().enumerate() {
                    prop_assert!(k == l || !m2.divides(m));
                }
            }
            // Uniqueness: recomputing from the basis itself is a fixed point.
            let again = GroebnerBasis::compute(&IdealPresentation::new(&vars, g.basis().to_vec()).unwrap(), &order, &Budget::default()).unwrap();
            prop_assert_eq!(again.basis(), g.basis());
        }
    }
}
