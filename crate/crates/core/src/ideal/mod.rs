//! Ideals of polynomial rings: presentations, Gröbner bases, colengths.

mod colength;
mod groebner;

pub use colength::{colength, colength_with, is_origin_supported, OriginSupport};
pub use groebner::GroebnerBasis;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder, Variables};
use crate::scalar::Field;

/// Resource limits shared by the ideal computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// S-pair reductions allowed in one Gröbner basis computation.
    pub max_pair_reductions: usize,
    /// Products formed while expanding one product of ideal powers.
    pub max_generators: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pair_reductions: 200_000, max_generators: 1_000_000 }
    }
}

/// A finite list of nonzero generators in a common ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation<C> {
    vars: Variables,
    generators: Vec<Polynomial<C>>,
}

impl<C: Field> IdealPresentation<C> {
    /// Zero generators are dropped; at least one nonzero generator must remain.
    pub fn new(vars: &Variables, generators: Vec<Polynomial<C>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.vars() != vars) {
            return Err(Error::InvalidInput(format!(
                "generator `{g}` does not live in the ring {:?}",
                vars.names()
            )));
        }
        let generators: Vec<_> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::InvalidInput("ideal has no nonzero generator".into()));
        }
        Ok(IdealPresentation { vars: vars.clone(), generators })
    }

    pub fn parse<S: AsRef<str>, T: AsRef<str>>(ambient: &[S], generators: &[T]) -> Result<Self> {
        let vars = Variables::new(ambient)?;
        let gens = generators
            .iter()
            .map(|g| Polynomial::parse(g.as_ref(), &vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&vars, gens)
    }

    pub fn unit(vars: &Variables) -> Self {
        IdealPresentation { vars: vars.clone(), generators: vec![Polynomial::one(vars)] }
    }

    /// The ideal generated by all the variables.
    pub fn maximal(vars: &Variables) -> Result<Self> {
        Self::new(vars, (0..vars.len()).map(|i| Polynomial::var(vars, i)).collect())
    }

    pub fn from_monomials(vars: &Variables, monomials: &[Monomial]) -> Result<Self> {
        Self::new(vars, monomials.iter().map(|m| Polynomial::term(vars, m.clone(), C::one())).collect())
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial<C>] {
        &self.generators
    }

    /// Exponent vectors when every generator is a single term.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        self.generators
            .iter()
            .map(|g| if g.is_term() { g.terms().next().map(|(m, _)| m.clone()) } else { None })
            .collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_term)
    }

    /// The ideal generated by both generator lists.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars {
            return Err(Error::InvalidInput("ideals live in different rings".into()));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(&self.vars, gens)
    }

    /// Appends generators (which should already lie in the ideal for the
    /// ideal to be unchanged).
    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial<C>>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::new(&self.vars, gens)
    }

    /// Every generator has zero constant term.
    pub fn is_in_maximal_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.constant_term().is_zero())
    }

    pub(crate) fn from_parts_unchecked(vars: Variables, generators: Vec<Polynomial<C>>) -> Self {
        IdealPresentation { vars, generators }
    }
}

fn dedup_key<C: Field>(p: &Polynomial<C>) -> Polynomial<C> {
    p.monic(&TermOrder::degrevlex())
}

/// Multiplies the generator list by the generators of `factor`, dropping
/// duplicates up to a nonzero scalar.
fn multiply_generators<C: Field>(
    current: &[Polynomial<C>],
    factor: &[Polynomial<C>],
    produced: &mut usize,
    budget: &Budget,
) -> Result<Vec<Polynomial<C>>> {
    *produced += current.len() * factor.len();
    if *produced > budget.max_generators {
        return Err(Error::BudgetExceeded(format!(
            "more than {} product generators",
            budget.max_generators
        )));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in current {
        for b in factor {
            let p = dedup_key(&(a * b));
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Generators of `ideals[0]^exponents[0] · … · ideals[k]^exponents[k]`.
///
/// An all-zero exponent vector yields the unit ideal.
pub fn ideal_power_product<C: Field>(
    ideals: &[IdealPresentation<C>],
    exponents: &[u32],
    budget: &Budget,
) -> Result<IdealPresentation<C>> {
    if ideals.len() != exponents.len() {
        return Err(Error::InvalidInput(format!(
            "{} ideals but {} exponents",
            ideals.len(),
            exponents.len()
        )));
    }
    let Some(first) = ideals.first() else {
        return Err(Error::InvalidInput("empty list of ideals".into()));
    };
    let vars = first.vars().clone();
    if ideals.iter().any(|i| i.vars() != &vars) {
        return Err(Error::InvalidInput("ideals live in different rings".into()));
    }
    let mut current = vec![Polynomial::one(&vars)];
    let mut produced = 0;
    for (ideal, &t) in ideals.iter().zip(exponents) {
        let factor: Vec<_> = ideal.generators().iter().map(dedup_key).collect();
        for _ in 0..t {
            current = multiply_generators(&current, &factor, &mut produced, budget)?;
        }
    }
    Ok(IdealPresentation::from_parts_unchecked(vars, current))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn id(gens: &[&str]) -> IdealPresentation<Rational> {
        IdealPresentation::parse(&["x", "y"], gens).unwrap()
    }

    fn gen_strings(i: &IdealPresentation<Rational>) -> Vec<String> {
        let mut v: Vec<String> = i.generators().iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn square_of_maximal_ideal() {
        let p = ideal_power_product(&[id(&["x", "y"])], &[2], &Budget::default()).unwrap();
        assert_eq!(gen_strings(&p), vec!["x*y", "x^2", "y^2"]);
    }

    #[test]
    fn pairwise_products() {
        let p = ideal_power_product(&[id(&["x", "y"]), id(&["x^2", "y^3"])], &[1, 1], &Budget::default()).unwrap();
        assert_eq!(gen_strings(&p), vec!["x*y^3", "x^2*y", "x^3", "y^4"]);
    }

    #[test]
    fn empty_product_is_unit() {
        let p = ideal_power_product(&[id(&["x", "y"])], &[0], &Budget::default()).unwrap();
        assert_eq!(gen_strings(&p), vec!["1"]);
    }

    #[test]
    fn generator_budget() {
        let tight = Budget { max_generators: 10, ..Budget::default() };
        let r = ideal_power_product(&[id(&["x", "y"])], &[5], &tight);
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn zero_generators_dropped() {
        let i = id(&["0", "x"]);
        assert_eq!(i.generators().len(), 1);
        assert!(IdealPresentation::<Rational>::parse(&["x"], &["0"]).is_err());
    }

    #[test]
    fn mismatched_lengths() {
        assert!(ideal_power_product(&[id(&["x"])], &[1, 2], &Budget::default()).is_err());
    }
}
