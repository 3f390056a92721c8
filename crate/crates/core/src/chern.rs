//! Truncated graded calculus of Chern and Segre classes.
//!
//! Classes are polynomials in weighted symbols (by default `c1, …, cr` with
//! `deg c_i = i`), split by weighted degree and truncated above a fixed
//! degree `n`. Top-degree integrals are evaluated against a user-supplied
//! table of intersection numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Variables};
use crate::scalar::Field;
use crate::Rational;

fn weighted_degree(m: &Monomial, weights: &[u32]) -> u64 {
    m.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass<C> {
    vars: Variables,
    weights: Vec<u32>,
    /// `components[k]` is homogeneous of weighted degree `k`.
    components: Vec<Polynomial<C>>,
}

impl<C: Field> GradedClass<C> {
    /// Splits `total` by weighted degree, dropping everything above `truncation`.
    pub fn new(vars: &Variables, weights: &[u32], truncation: usize, total: &Polynomial<C>) -> Result<Self> {
        if weights.len() != vars.len() {
            return Err(Error::InvalidInput(format!("{} weights for {} symbols", weights.len(), vars.len())));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidInput("symbol weights must be positive".into()));
        }
        if total.vars() != vars {
            return Err(Error::InvalidInput("class uses different symbols".into()));
        }
        let components = (0..=truncation as u64)
            .map(|k| total.filter_terms(|m| weighted_degree(m, weights) == k))
            .collect();
        Ok(GradedClass { vars: vars.clone(), weights: weights.to_vec(), components })
    }

    /// Symbols `c1, …, c{rank}` with `deg c_i = i`.
    pub fn chern_symbols(rank: usize) -> Result<(Variables, Vec<u32>)> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        let names: Vec<String> = (1..=rank).map(|i| format!("c{i}")).collect();
        Ok((Variables::new(&names)?, (1..=rank as u32).collect()))
    }

    /// The total class `1 + chern[0] + chern[1] + …`, where `chern[i]` is
    /// the homogeneous degree `i + 1` part written in `c1, …, c{rank}`.
    pub fn parse_chern<S: AsRef<str>>(rank: usize, truncation: usize, chern: &[S]) -> Result<Self> {
        let (vars, weights) = Self::chern_symbols(rank)?;
        let mut total = Polynomial::one(&vars);
        for (i, text) in chern.iter().enumerate() {
            let p = Polynomial::parse(text.as_ref(), &vars)?;
            let degree = i as u64 + 1;
            if p.terms().any(|(m, _)| weighted_degree(m, &weights) != degree) {
                return Err(Error::InvalidInput(format!(
                    "Chern component `{}` is not homogeneous of degree {degree}",
                    text.as_ref()
                )));
            }
            total = &total + &p;
        }
        Self::new(&vars, &weights, truncation, &total)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn truncation(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, k: usize) -> &Polynomial<C> {
        &self.components[k]
    }

    pub fn components(&self) -> &[Polynomial<C>] {
        &self.components
    }

    pub fn total(&self) -> Polynomial<C> {
        self.components.iter().fold(Polynomial::zero(&self.vars), |acc, c| &acc + c)
    }

    pub fn is_one(&self) -> bool {
        self.components[0] == Polynomial::one(&self.vars) && self.components[1..].iter().all(Polynomial::is_zero)
    }

    /// Product truncated at the common truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.vars != other.vars || self.weights != other.weights || self.truncation() != other.truncation() {
            return Err(Error::InvalidInput("classes live in different graded rings".into()));
        }
        let n = self.truncation();
        let components = (0..=n)
            .map(|k| {
                (0..=k).fold(Polynomial::zero(&self.vars), |acc, i| {
                    &acc + &(&self.components[i] * &other.components[k - i])
                })
            })
            .collect();
        Ok(GradedClass { vars: self.vars.clone(), weights: self.weights.clone(), components })
    }
}

/// `s = c⁻¹`, truncated: `s_0 = 1`, `s_k = −Σ_{i=1..k} c_i s_{k−i}`.
pub fn segre_from_chern<C: Field>(c: &GradedClass<C>) -> Result<GradedClass<C>> {
    let one = Polynomial::one(&c.vars);
    if c.components[0] != one {
        return Err(Error::InvalidInput(format!(
            "degree-0 part is `{}`, expected 1",
            c.components[0]
        )));
    }
    let n = c.truncation();
    let mut s: Vec<Polynomial<C>> = vec![one];
    for k in 1..=n {
        let sum = (1..=k).fold(Polynomial::zero(&c.vars), |acc, i| &acc + &(&c.components[i] * &s[k - i]));
        s.push(-sum);
    }
    let inverse = GradedClass { vars: c.vars.clone(), weights: c.weights.clone(), components: s };
    if !c.mul(&inverse)?.is_one() {
        return Err(Error::Internal("c·s ≠ 1 after series inversion".into()));
    }
    Ok(inverse)
}

/// `c_i ↦ (−1)^i c_i`, i.e. the degree-`k` part picks up `(−1)^k`.
pub fn dual_class<C: Field>(c: &GradedClass<C>) -> GradedClass<C> {
    let components = c
        .components
        .iter()
        .enumerate()
        .map(|(k, p)| if k % 2 == 1 { -p } else { p.clone() })
        .collect();
    GradedClass { vars: c.vars.clone(), weights: c.weights.clone(), components }
}

/// Integrals of top-degree monomials in the class symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    vars: Variables,
    degree: usize,
    entries: BTreeMap<Monomial, BigInt>,
}

impl IntersectionTable {
    /// Keys are monomials such as `c1^2` or `c2`, each of weighted degree `degree`.
    pub fn parse<K: AsRef<str>>(
        vars: &Variables,
        weights: &[u32],
        degree: usize,
        entries: impl IntoIterator<Item = (K, BigInt)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (key, value) in entries {
            let key = key.as_ref();
            let p = Polynomial::<Rational>::parse(key, vars)?;
            let m = match p.as_monomial() {
                Some(m) => m.clone(),
                None => return Err(Error::InvalidInput(format!("table key `{key}` is not a monomial"))),
            };
            if weighted_degree(&m, weights) != degree as u64 {
                return Err(Error::InvalidInput(format!("table key `{key}` does not have degree {degree}")));
            }
            if map.insert(m, value).is_some() {
                return Err(Error::InvalidInput(format!("duplicate table key `{key}`")));
            }
        }
        Ok(IntersectionTable { vars: vars.clone(), degree, entries: map })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, m: &Monomial) -> Result<&BigInt> {
        self.entries
            .get(m)
            .ok_or_else(|| Error::MissingTableKey(Polynomial::<Rational>::term(&self.vars, m.clone(), Rational::from_integer(1.into())).to_string()))
    }

    /// Linear evaluation of a homogeneous top-degree class.
    pub fn integrate<C: Field>(&self, p: &Polynomial<C>) -> Result<C> {
        if p.vars() != &self.vars {
            return Err(Error::InvalidInput("table and class use different symbols".into()));
        }
        let mut acc = C::zero();
        for (m, c) in p.terms() {
            let v = C::from_decimal(&self.get(m)?.to_string(), "1")
                .ok_or_else(|| Error::Internal("table value not representable".into()))?;
            acc = acc + c.clone() * &v;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreIntegral<C> {
    pub value: BigInt,
    /// `s_n(E*)` as a polynomial in the symbols of `E`.
    pub top_segre: Polynomial<C>,
}

/// `∫ s_n(E*)` where `n` is the truncation degree of `c_of_e`.
pub fn top_segre_integral<C: Field>(c_of_e: &GradedClass<C>, table: &IntersectionTable) -> Result<SegreIntegral<C>> {
    let n = c_of_e.truncation();
    if table.degree() != n {
        return Err(Error::InvalidInput(format!(
            "table has degree {} but the class is truncated at {n}",
            table.degree()
        )));
    }
    let s = segre_from_chern(&dual_class(c_of_e))?;
    let top = s.component(n).clone();
    let value = table.integrate(&top)?;
    let value = value
        .as_integer()
        .ok_or_else(|| Error::Internal(format!("top Segre integral {value} is not an integer")))?;
    Ok(SegreIntegral { value, top_segre: top })
}
