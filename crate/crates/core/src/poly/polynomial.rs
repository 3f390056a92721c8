use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, TermOrder};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Upper bound on the number of ambient variables.
pub const MAX_VARIABLES: usize = 16;

/// An ordered list of variable names shared by polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_VARIABLES {
            return Err(Error::InvalidInput(format!(
                "{} variables requested, at most {MAX_VARIABLES} supported",
                names.len()
            )));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            let mut chars = name.chars();
            let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidInput(format!("`{name}` is not a valid variable name")));
            }
            if out.iter().any(|n| n == name) {
                return Err(Error::InvalidInput(format!("variable `{name}` listed twice")));
            }
            out.push(name.to_string());
        }
        Ok(Variables(out.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// A polynomial with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    vars: Variables,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Polynomial<C> {
    pub fn zero(vars: &Variables) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &Variables, c: C) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn term(vars: &Variables, m: Monomial, c: C) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial length does not match ambient");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    /// The `i`-th variable.
    pub fn var(vars: &Variables, i: usize) -> Self {
        Self::term(vars, Monomial::pure_power(vars.len(), i, 1), C::one())
    }

    /// Sums the given terms; repeated monomials are merged.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(vars: &Variables, terms: I) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        assert_eq!(m.nvars(), self.vars.len(), "monomial length does not match ambient");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// A single term with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    /// True for a single term with any nonzero coefficient.
    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted from largest to smallest monomial under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(Monomial, C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading_term(order) {
            Some((_, lc)) if !lc.is_one() => self.scale(&(C::one() / lc)),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k * m, a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Weighted homogeneity: every term has the same `Σ weight_i·e_i`.
    pub fn weighted_degrees(&self, weights: &[u32]) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .terms
            .keys()
            .map(|m| m.exponents().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Value at a point given by one coordinate per variable.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars(), "point has wrong dimension");
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v = v * x;
                }
            }
            acc = acc + v;
        }
        acc
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
    }
}

impl<C: Field> fmt::Display for Polynomial<C> {
    /// Canonical form: terms in descending degrevlex, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        for (i, (m, c)) in self.sorted_terms(&TermOrder::degrevlex()).iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl<C: Field> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Field> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Field> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: &Polynomial<C>) -> Polynomial<C> {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a * b, x.clone() * y);
            }
        }
        out
    }
}

impl<C: Field> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl<C: Field> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Field> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<C: Field> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
