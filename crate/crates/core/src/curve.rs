//! Generalized Lelong numbers of curve germs through branch valuations.
//!
//! A germ is given by parameterized branches `t ↦ (x_1(t), …, x_m(t))`,
//! truncated at a fixed order. The Lelong number of a weight tuple
//! `g = (g_1, …, g_N)` is the sum over branches of `min_j ord_t g_j(x(t))`.
//!
//! Branch components use integer exponents only. A Puiseux branch such as
//! `(t^{1/2}, t^{1/3})` must be rewritten with `t ↦ t^6` before it is given
//! here.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::IdealPresentation;
use crate::multiplicity::{MultiplicityEngine, MultiplicityReport};
use crate::poly::{Polynomial, Variables};
use crate::scalar::Field;

/// Name of the branch parameter in textual input.
pub const PARAMETER: &str = "t";

/// t-adic valuation of a univariate polynomial.
pub fn branch_order<C: Field>(p: &Polynomial<C>) -> Result<u32> {
    if p.nvars() != 1 {
        return Err(Error::InvalidInput(format!(
            "branch_order expects a univariate polynomial, got {} variables",
            p.nvars()
        )));
    }
    p.terms()
        .map(|(m, _)| m.exponents()[0])
        .min()
        .ok_or_else(|| Error::InvalidInput("order of the zero polynomial".into()))
}

/// Dense power series truncated modulo `t^len`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series<C>(Vec<C>);

impl<C: Field> Series<C> {
    fn constant(c: C, len: usize) -> Self {
        let mut v = vec![C::zero(); len];
        if len > 0 {
            v[0] = c;
        }
        Series(v)
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len();
        let mut out = vec![C::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + &(a.clone() * b);
                }
            }
        }
        Series(out)
    }

    fn add_scaled(&mut self, other: &Self, c: &C) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a = a.clone() + &(b.clone() * c);
            }
        }
    }

    fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }
}

/// One parameterized branch, known modulo `t^truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSeries<C> {
    components: Vec<Vec<C>>,
    truncation: usize,
}

impl<C: Field> BranchSeries<C> {
    /// Builds a branch from univariate polynomials in one variable.
    /// Terms of degree `≥ truncation` are discarded.
    pub fn new(components: &[Polynomial<C>], truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::InvalidInput("truncation order must be positive".into()));
        }
        let mut dense = Vec::with_capacity(components.len());
        for p in components {
            if p.nvars() != 1 {
                return Err(Error::InvalidInput("branch components must be univariate".into()));
            }
            if !p.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!("branch component `{p}` does not vanish at t = 0")));
            }
            let mut v = vec![C::zero(); truncation];
            for (m, c) in p.terms() {
                let e = m.exponents()[0] as usize;
                if e < truncation {
                    v[e] = c.clone();
                }
            }
            dense.push(v);
        }
        if dense.is_empty() {
            return Err(Error::InvalidInput("a branch needs at least one component".into()));
        }
        if dense.iter().all(|v| v.iter().all(|c| c.is_zero())) {
            return Err(Error::InvalidInput("every branch component is zero below the truncation order".into()));
        }
        Ok(BranchSeries { components: dense, truncation })
    }

    /// Parses components written in the parameter `t`.
    pub fn parse<S: AsRef<str>>(components: &[S], truncation: usize) -> Result<Self> {
        let t = Variables::new(&[PARAMETER])?;
        let polys: Vec<Polynomial<C>> = components
            .iter()
            .map(|s| Polynomial::parse(s.as_ref(), &t))
            .collect::<Result<_>>()?;
        Self::new(&polys, truncation)
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    /// Coefficients of the `i`-th coordinate, indexed by exponent.
    pub fn component(&self, i: usize) -> &[C] {
        &self.components[i]
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &C) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput("reparameterization by zero".into()));
        }
        let components = self
            .components
            .iter()
            .map(|v| {
                let mut power = C::one();
                v.iter()
                    .map(|a| {
                        let out = a.clone() * &power;
                        power = power.clone() * c;
                        out
                    })
                    .collect()
            })
            .collect();
        Ok(BranchSeries { components, truncation: self.truncation })
    }

    /// `p(x(t)) mod t^truncation`.
    fn compose(&self, p: &Polynomial<C>) -> Series<C> {
        let len = self.truncation;
        let mut powers: Vec<Vec<Series<C>>> = self
            .components
            .iter()
            .map(|v| vec![Series::constant(C::one(), len), Series(v.clone())])
            .collect();
        let mut out = Series(vec![C::zero(); len]);
        for (m, c) in p.terms() {
            let mut acc = Series::constant(C::one(), len);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                // every component vanishes at 0, so powers beyond len are zero
                let e = (e as usize).min(len);
                while powers[i].len() <= e {
                    let next = powers[i].last().expect("nonempty").mul(&powers[i][1]);
                    powers[i].push(next);
                }
                acc = acc.mul(&powers[i][e]);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// `ord_t p(x(t))`, or `None` when the composite vanishes below the truncation order.
    pub fn valuation(&self, p: &Polynomial<C>) -> Result<Option<u32>> {
        if p.nvars() != self.dimension() {
            return Err(Error::InvalidInput(format!(
                "polynomial in {} variables evaluated on a branch in {} coordinates",
                p.nvars(),
                self.dimension()
            )));
        }
        Ok(self.compose(p).order().map(|o| o as u32))
    }
}

/// A curve germ at the origin as a union of parameterized branches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm<C> {
    vars: Variables,
    branches: Vec<BranchSeries<C>>,
}

impl<C: Field> CurveGerm<C> {
    pub fn new(vars: &Variables, branches: Vec<BranchSeries<C>>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidInput("a curve germ needs at least one branch".into()));
        }
        if let Some(b) = branches.iter().find(|b| b.dimension() != vars.len()) {
            return Err(Error::InvalidInput(format!(
                "branch has {} coordinates but the ambient space has {}",
                b.dimension(),
                vars.len()
            )));
        }
        Ok(CurveGerm { vars: vars.clone(), branches })
    }

    /// Branches as lists of component strings in `t`, all with the same truncation.
    pub fn parse<S: AsRef<str>, T: AsRef<str>, B: AsRef<[T]>>(ambient: &[S], truncation: usize, branches: &[B]) -> Result<Self> {
        let vars = Variables::new(ambient)?;
        let parsed = branches
            .iter()
            .map(|b| BranchSeries::parse(b.as_ref(), truncation))
            .collect::<Result<_>>()?;
        Self::new(&vars, parsed)
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn branches(&self) -> &[BranchSeries<C>] {
        &self.branches
    }

    pub fn rescale(&self, c: &C) -> Result<Self> {
        let branches = self.branches.iter().map(|b| b.rescale(c)).collect::<Result<_>>()?;
        Ok(CurveGerm { vars: self.vars.clone(), branches })
    }
}

/// The weight tuple `g = (g_1, …, g_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTuple<C> {
    components: Vec<Polynomial<C>>,
}

impl<C: Field> WeightTuple<C> {
    pub fn new(components: Vec<Polynomial<C>>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidInput("a weight tuple needs at least one component".into()));
        };
        if components.iter().any(|g| g.vars() != first.vars()) {
            return Err(Error::InvalidInput("weight components use different ambient variables".into()));
        }
        Ok(WeightTuple { components })
    }

    pub fn from_ideal(ideal: &IdealPresentation<C>) -> Self {
        WeightTuple { components: ideal.generators().to_vec() }
    }

    pub fn components(&self) -> &[Polynomial<C>] {
        &self.components
    }

    pub fn with_components(&self, extra: impl IntoIterator<Item = Polynomial<C>>) -> Result<Self> {
        let mut components = self.components.clone();
        components.extend(extra);
        Self::new(components)
    }
}

/// `min_j ord_t g_j(b(t))`.
pub fn pullback_order<C: Field>(g: &WeightTuple<C>, b: &BranchSeries<C>) -> Result<u32> {
    let mut best: Option<u32> = None;
    for component in &g.components {
        if let Some(v) = b.valuation(component)? {
            best = Some(best.map_or(v, |w| w.min(v)));
        }
    }
    best.ok_or(Error::TruncationInsufficient(b.truncation()))
}

/// Sum over branches of the pullback orders.
pub fn curve_lelong_number<C: Field>(germ: &CurveGerm<C>, g: &WeightTuple<C>) -> Result<u64> {
    check_ambient(germ, g.components.first().map(|p| p.vars()))?;
    let orders: Vec<u32> = germ
        .branches
        .par_iter()
        .map(|b| pullback_order(g, b))
        .collect::<Result<_>>()?;
    Ok(orders.iter().map(|&o| o as u64).sum())
}

fn check_ambient<C: Field>(germ: &CurveGerm<C>, vars: Option<&Variables>) -> Result<()> {
    match vars {
        Some(v) if v != germ.vars() => Err(Error::InvalidInput(format!(
            "weights use variables {:?} but the germ lives in {:?}",
            v.names(),
            germ.vars().names()
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub lelong: u64,
    /// Per-branch pullback orders, in branch order.
    pub branch_orders: Vec<u32>,
    pub hs: u64,
    pub equal: bool,
    pub multiplicity: MultiplicityReport,
}

/// Compares the Lelong number of `germ` weighted by the generators of `u`
/// with the Hilbert-Samuel multiplicity of `u` on the curve `k[x]/J`.
///
/// `j` must cut out the germ; this is only sanity-checked by requiring every
/// generator of `j` to vanish on every branch up to the truncation order.
pub fn verify_curve<C: Field>(
    germ: &CurveGerm<C>,
    j: &IdealPresentation<C>,
    u: &IdealPresentation<C>,
    engine: &MultiplicityEngine,
) -> Result<CurveReport> {
    check_ambient(germ, Some(j.vars()))?;
    check_ambient(germ, Some(u.vars()))?;
    for (i, b) in germ.branches.iter().enumerate() {
        for f in j.generators() {
            if let Some(v) = b.valuation(f)? {
                return Err(Error::InvalidInput(format!(
                    "J does not vanish on germ: `{f}` has order {v} on branch {i}"
                )));
            }
        }
    }
    let g = WeightTuple::from_ideal(u);
    let branch_orders: Vec<u32> = germ.branches.iter().map(|b| pullback_order(&g, b)).collect::<Result<_>>()?;
    let lelong = branch_orders.iter().map(|&o| o as u64).sum();
    let multiplicity = engine.hs_multiplicity(u, Some(j), Some(1))?;
    let hs = multiplicity.value;
    Ok(CurveReport { lelong, branch_orders, hs, equal: lelong == hs, multiplicity })
}
