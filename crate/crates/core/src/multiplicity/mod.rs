//! Hilbert-Samuel and mixed multiplicities from colength functions.
//!
//! The colength `t ↦ dim k[x]/(U_1^{t_1}⋯U_k^{t_k} + J)` agrees with a
//! polynomial for large `t`; multiplicities are read off from exact forward
//! differences once they stop changing. There is no a-priori bound on where
//! the polynomial regime starts, so stabilization is detected empirically and
//! every computation runs under hard budgets.

pub mod difference;

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{colength_with, ideal_power_product, is_origin_supported, Budget, IdealPresentation};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::Variables;
use crate::scalar::Field;
use difference::{compositions, mixed_difference, multinomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Gröbner bases over the coefficient field.
    General,
    /// Staircase counting on exponent vectors.
    Monomial,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::General => "general",
            Backend::Monomial => "monomial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BackendChoice {
    /// Monomial when every ideal is monomial and there is no quotient.
    #[default]
    Auto,
    General,
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub budget: Budget,
    /// Largest power used by the general backend.
    pub max_t_general: u32,
    /// Largest power used by the monomial backend.
    pub max_t_monomial: u32,
    /// First base point coordinate tried for mixed differences.
    pub base_point: u32,
    /// Consecutive equal differences required by the general backend.
    pub stable_window_general: usize,
    /// Consecutive equal differences required by the monomial backend.
    /// Short plateaus before the polynomial regime are common for monomial
    /// ideals, hence the longer default.
    pub stable_window_monomial: usize,
    /// Search bound for the origin-support test.
    pub origin_bound: u32,
    pub backend: BackendChoice,
    /// Evaluate independent grid points on the rayon pool.
    pub parallel: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            budget: Budget::default(),
            max_t_general: 12,
            max_t_monomial: 60,
            base_point: 2,
            stable_window_general: 4,
            stable_window_monomial: 6,
            origin_bound: 10_000,
            backend: BackendChoice::Auto,
            parallel: true,
        }
    }
}

/// One colength evaluation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sample {
    pub t: Vec<u32>,
    pub colength: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub value: u64,
    /// Dimension `n` of the local ring.
    pub dimension: usize,
    /// Difference orders applied in each variable.
    pub orders: Vec<u32>,
    /// Lattice point where the accepted difference was taken.
    pub base: Vec<u32>,
    /// Every colength evaluated, sorted by `t`.
    pub samples: Vec<Sample>,
    pub backend: Backend,
}

impl MultiplicityReport {
    /// Recomputes the accepted difference from the recorded samples.
    pub fn replay(&self) -> Result<i128> {
        let table: HashMap<&[u32], u64> = self.samples.iter().map(|s| (s.t.as_slice(), s.colength)).collect();
        let mut missing = None;
        let v: i128 = mixed_difference(&self.base, &self.orders, |t| match table.get(t) {
            Some(&c) => c as i128,
            None => {
                missing = Some(t.to_vec());
                0
            }
        });
        match missing {
            Some(t) => Err(Error::Internal(format!("report lacks sample at {t:?}"))),
            None => Ok(v),
        }
    }
}

/// Evaluates `t ↦ colength(∏ U_i^{t_i} + J)` with caching.
struct Colengths<'a, C> {
    ideals: &'a [IdealPresentation<C>],
    quotient: Option<&'a IdealPresentation<C>>,
    monomial: Option<Vec<MonomialIdeal>>,
    budget: Budget,
    cache: Mutex<BTreeMap<Vec<u32>, u64>>,
}

impl<'a, C: Field> Colengths<'a, C> {
    fn new(
        ideals: &'a [IdealPresentation<C>],
        quotient: Option<&'a IdealPresentation<C>>,
        backend: Backend,
        budget: Budget,
    ) -> Result<Self> {
        let monomial = match backend {
            Backend::Monomial => Some(ideals.iter().map(MonomialIdeal::from_ideal).collect::<Result<Vec<_>>>()?),
            Backend::General => None,
        };
        Ok(Colengths { ideals, quotient, monomial, budget, cache: Mutex::new(BTreeMap::new()) })
    }

    fn eval(&self, t: &[u32]) -> Result<u64> {
        if let Some(&c) = self.cache.lock().expect("cache lock").get(t) {
            return Ok(c);
        }
        let value = match &self.monomial {
            Some(monos) => {
                let mut acc = MonomialIdeal::unit(monos[0].dimension());
                for (m, &k) in monos.iter().zip(t) {
                    acc = acc.product(&m.pow(k))?;
                }
                acc.staircase_colength()?
            }
            None => {
                let product = ideal_power_product(self.ideals, t, &self.budget)?;
                colength_with(&product, self.quotient, &self.budget)?
            }
        };
        self.cache.lock().expect("cache lock").insert(t.to_vec(), value);
        Ok(value)
    }

    fn eval_all(&self, points: &[Vec<u32>], parallel: bool) -> Result<()> {
        let todo: Vec<&Vec<u32>> = {
            let cache = self.cache.lock().expect("cache lock");
            points.iter().filter(|p| !cache.contains_key(*p)).collect()
        };
        if parallel && todo.len() > 1 {
            todo.par_iter().map(|p| self.eval(p).map(|_| ())).collect::<Result<Vec<()>>>()?;
        } else {
            for p in todo {
                self.eval(p)?;
            }
        }
        Ok(())
    }

    fn get(&self, t: &[u32]) -> u64 {
        *self.cache.lock().expect("cache lock").get(t).expect("evaluated beforehand")
    }

    fn samples(&self) -> Vec<Sample> {
        self.cache
            .lock()
            .expect("cache lock")
            .iter()
            .map(|(t, &c)| Sample { t: t.clone(), colength: c })
            .collect()
    }
}

/// Computes multiplicities under a fixed configuration.
#[derive(Clone, Debug, Default)]
pub struct MultiplicityEngine {
    pub config: EngineConfig,
}

fn check_ring<C: Field>(ideals: &[IdealPresentation<C>], quotient: Option<&IdealPresentation<C>>) -> Result<Variables> {
    let first = ideals.first().ok_or_else(|| Error::InvalidInput("no ideals given".into()))?;
    let vars = first.vars().clone();
    if ideals.iter().any(|i| i.vars() != &vars) || quotient.is_some_and(|j| j.vars() != &vars) {
        return Err(Error::InvalidInput("ideals live in different rings".into()));
    }
    Ok(vars)
}

impl MultiplicityEngine {
    pub fn new(config: EngineConfig) -> Self {
        MultiplicityEngine { config }
    }

    fn backend<C: Field>(&self, ideals: &[IdealPresentation<C>], quotient: Option<&IdealPresentation<C>>) -> Result<Backend> {
        let all_monomial = ideals.iter().all(IdealPresentation::is_monomial);
        match self.config.backend {
            BackendChoice::General => Ok(Backend::General),
            BackendChoice::Monomial if quotient.is_some() => {
                Err(Error::InvalidInput("the monomial backend does not support a quotient ideal".into()))
            }
            BackendChoice::Monomial if !all_monomial => {
                Err(Error::InvalidInput("the monomial backend needs monomial generators".into()))
            }
            BackendChoice::Monomial => Ok(Backend::Monomial),
            BackendChoice::Auto if all_monomial && quotient.is_none() => Ok(Backend::Monomial),
            BackendChoice::Auto => Ok(Backend::General),
        }
    }

    fn window(&self, backend: Backend) -> usize {
        match backend {
            Backend::General => self.config.stable_window_general.max(2),
            Backend::Monomial => self.config.stable_window_monomial.max(2),
        }
    }

    fn max_t(&self, backend: Backend) -> u32 {
        match backend {
            Backend::General => self.config.max_t_general,
            Backend::Monomial => self.config.max_t_monomial,
        }
    }

    fn check_quotient<C: Field>(&self, quotient: Option<&IdealPresentation<C>>) -> Result<()> {
        if let Some(j) = quotient {
            if !j.is_in_maximal_ideal() {
                return Err(Error::InvalidInput(
                    "quotient ideal has a generator with nonzero constant term".into(),
                ));
            }
        }
        Ok(())
    }

    fn check_supported<C: Field>(&self, ideal: &IdealPresentation<C>, quotient: Option<&IdealPresentation<C>>) -> Result<()> {
        if quotient.is_none() && ideal.is_monomial() {
            let m = MonomialIdeal::from_ideal(ideal)?;
            if m.is_origin_primary() {
                return Ok(());
            }
            return Err(Error::NotOriginSupported(format!(
                "monomial ideal {:?} lacks a pure power on some axis",
                m.generators()
            )));
        }
        let r = is_origin_supported(ideal, quotient, self.config.origin_bound, &self.config.budget);
        if r.supported {
            Ok(())
        } else {
            Err(Error::NotOriginSupported(r.diagnostic.unwrap_or_default()))
        }
    }

    /// Krull dimension of `k[x]/J` at the origin, read off from the growth of
    /// `t ↦ colength(m^t + J)`.
    pub fn infer_dimension<C: Field>(&self, quotient: Option<&IdealPresentation<C>>, vars: &Variables) -> Result<usize> {
        self.check_quotient(quotient)?;
        let nvars = vars.len();
        if quotient.is_none() {
            return Ok(nvars);
        }
        let maximal = IdealPresentation::<C>::maximal(vars)?;
        let ideals = [maximal];
        let eval = Colengths::new(&ideals, quotient, Backend::General, self.config.budget)?;
        let window = self.window(Backend::General);
        let mut previous = None;
        let start = nvars + window + 1;
        for top in start..=self.config.max_t_general as usize {
            let points: Vec<Vec<u32>> = (1..=top as u32).map(|t| vec![t]).collect();
            eval.eval_all(&points, self.config.parallel)?;
            let f: Vec<i128> = (1..=top as u32).map(|t| eval.get(&[t]) as i128).collect();
            let candidate = (0..=nvars).find(|&n| {
                let d = iterated_differences(&f, n + 1);
                d.len() >= window && d[d.len() - window..].iter().all(|&x| x == 0)
            });
            if let Some(n) = candidate.filter(|_| candidate == previous) {
                return Ok(n);
            }
            previous = candidate;
        }
        Err(Error::NotStabilized(format!(
            "dimension of the quotient not determined with powers up to {}",
            self.config.max_t_general
        )))
    }

    fn resolve_dimension<C: Field>(
        &self,
        vars: &Variables,
        quotient: Option<&IdealPresentation<C>>,
        dimension: Option<usize>,
    ) -> Result<usize> {
        match dimension {
            Some(n) => Ok(n),
            None => self.infer_dimension(quotient, vars),
        }
    }

    /// Hilbert-Samuel multiplicity of `ideal` in `k[x]/J` localized at the origin.
    pub fn hs_multiplicity<C: Field>(
        &self,
        ideal: &IdealPresentation<C>,
        quotient: Option<&IdealPresentation<C>>,
        dimension: Option<usize>,
    ) -> Result<MultiplicityReport> {
        difference::ensure_self_test()?;
        let vars = check_ring(std::slice::from_ref(ideal), quotient)?;
        self.check_quotient(quotient)?;
        let backend = self.backend(std::slice::from_ref(ideal), quotient)?;
        self.check_supported(ideal, quotient)?;
        let n = self.resolve_dimension(&vars, quotient, dimension)?;

        let ideals = std::slice::from_ref(ideal);
        let eval = Colengths::new(ideals, quotient, backend, self.config.budget)?;
        let max_t = self.max_t(backend);
        let window = self.window(backend);
        let mut diffs: Vec<i128> = Vec::new();
        // D(s) = Δ^n f(s) needs f(s), …, f(s + n).
        for s in 1u32.. {
            let top = s + n as u32;
            if top > max_t {
                break;
            }
            let points: Vec<Vec<u32>> = (s..=top).map(|t| vec![t]).collect();
            eval.eval_all(&points, self.config.parallel)?;
            let d: i128 = mixed_difference(&[s], &[n as u32], |t| eval.get(t) as i128);
            diffs.push(d);
            if diffs.len() >= window {
                let tail = &diffs[diffs.len() - window..];
                if tail.iter().all(|&x| x == tail[0]) {
                    let accepted = s + 1 - window as u32;
                    return finish(tail[0], n, vec![n as u32], vec![accepted], &eval, backend);
                }
            }
        }
        Err(Error::NotStabilized(format!(
            "{n}-th differences of the colength did not stabilize for powers up to {max_t} (last values {:?})",
            &diffs[diffs.len().saturating_sub(4)..]
        )))
    }

    /// `e(U_1^{[d_1]}; …; U_k^{[d_k]})` in `k[x]/J` localized at the origin.
    pub fn mixed_multiplicity<C: Field>(
        &self,
        ideals: &[IdealPresentation<C>],
        degrees: &[u32],
        quotient: Option<&IdealPresentation<C>>,
    ) -> Result<MultiplicityReport> {
        difference::ensure_self_test()?;
        let vars = check_ring(ideals, quotient)?;
        if ideals.len() != degrees.len() {
            return Err(Error::InvalidInput(format!(
                "{} ideals but {} degrees",
                ideals.len(),
                degrees.len()
            )));
        }
        self.check_quotient(quotient)?;
        let backend = self.backend(ideals, quotient)?;
        for ideal in ideals {
            self.check_supported(ideal, quotient)?;
        }
        let n = self.resolve_dimension(&vars, quotient, None)?;
        let total: u32 = degrees.iter().sum();
        if total as usize != n {
            return Err(Error::InvalidInput(format!(
                "degrees sum to {total} but the local ring has dimension {n}"
            )));
        }

        let eval = Colengths::new(ideals, quotient, backend, self.config.budget)?;
        let max_t = self.max_t(backend);
        let span = degrees.iter().copied().max().unwrap_or(0);
        let window = self.window(backend) as u32;
        let mut values: Vec<i128> = Vec::new();
        let mut tau = self.config.base_point;
        while tau + span <= max_t {
            let base = vec![tau; ideals.len()];
            let points: Vec<Vec<u32>> = difference::grid_offsets(degrees)
                .into_iter()
                .map(|delta| delta.iter().zip(&base).map(|(d, b)| d + b).collect())
                .collect();
            eval.eval_all(&points, self.config.parallel)?;
            values.push(mixed_difference(&base, degrees, |t| eval.get(t) as i128));
            if values.len() >= window as usize {
                let tail = &values[values.len() - window as usize..];
                if tail.iter().all(|&x| x == tail[0]) {
                    let accepted = vec![tau + 1 - window; ideals.len()];
                    return finish(tail[0], n, degrees.to_vec(), accepted, &eval, backend);
                }
            }
            tau += 1;
        }
        Err(Error::NotStabilized(format!(
            "mixed differences did not stabilize for powers up to {max_t} (last values {:?})",
            &values[values.len().saturating_sub(4)..]
        )))
    }

    /// Compares `e(∏ U_i^{p_i})` with its expansion in mixed multiplicities.
    pub fn polarization_check<C: Field>(&self, ideals: &[IdealPresentation<C>], powers: &[u32]) -> Result<PolarizationReport> {
        let vars = check_ring(ideals, None)?;
        if ideals.len() != powers.len() {
            return Err(Error::InvalidInput(format!("{} ideals but {} powers", ideals.len(), powers.len())));
        }
        if powers.contains(&0) {
            return Err(Error::InvalidInput("powers must be positive".into()));
        }
        let n = vars.len() as u32;
        let product = ideal_power_product(ideals, powers, &self.config.budget)?;
        let lhs = self.hs_multiplicity(&product, None, None)?;
        let mut terms = Vec::new();
        let mut rhs: u128 = 0;
        for d in compositions(n, ideals.len()) {
            let e = self.mixed_multiplicity(ideals, &d, None)?;
            let coefficient = multinomial(&d);
            let weight: u128 = powers.iter().zip(&d).map(|(&p, &di)| (p as u128).pow(di)).product();
            rhs += coefficient as u128 * e.value as u128 * weight;
            terms.push(PolarizationTerm { degrees: d, coefficient, mixed: e });
        }
        let lhs_value = lhs.value as u128;
        Ok(PolarizationReport { lhs: lhs_value, rhs, equal: lhs_value == rhs, product: lhs, terms })
    }

    /// The chain `e_i = e(U^{[i]}; V^{[n-i]})` and its log-convexity.
    pub fn rees_sharp_check<C: Field>(
        &self,
        u: &IdealPresentation<C>,
        v: &IdealPresentation<C>,
        dimension: Option<usize>,
        quotient: Option<&IdealPresentation<C>>,
    ) -> Result<ReesSharpReport> {
        let vars = check_ring(&[u.clone(), v.clone()], quotient)?;
        let n = self.resolve_dimension(&vars, quotient, dimension)?;
        if n < 2 {
            return Err(Error::InvalidInput(format!("log-convexity needs dimension at least 2, got {n}")));
        }
        let pair = [u.clone(), v.clone()];
        let reports: Vec<MultiplicityReport> = (0..=n as u32)
            .map(|i| self.mixed_multiplicity(&pair, &[i, n as u32 - i], quotient))
            .collect::<Result<_>>()?;
        let chain: Vec<u64> = reports.iter().map(|r| r.value).collect();
        let inequalities: Vec<LogConvexity> = (1..n)
            .map(|i| {
                let square = chain[i] as u128 * chain[i] as u128;
                let product = chain[i - 1] as u128 * chain[i + 1] as u128;
                LogConvexity { index: i, square, product, holds: square <= product }
            })
            .collect();
        let pass = inequalities.iter().all(|c| c.holds);
        Ok(ReesSharpReport { chain, inequalities, pass, reports })
    }
}

fn iterated_differences(f: &[i128], order: usize) -> Vec<i128> {
    let mut v = f.to_vec();
    for _ in 0..order {
        v = v.windows(2).map(|w| w[1] - w[0]).collect();
    }
    v
}

fn finish<C: Field>(
    value: i128,
    n: usize,
    orders: Vec<u32>,
    base: Vec<u32>,
    eval: &Colengths<'_, C>,
    backend: Backend,
) -> Result<MultiplicityReport> {
    if value < 1 {
        return Err(Error::Internal(format!("multiplicity must be positive, difference gave {value}")));
    }
    let value = u64::try_from(value).map_err(|_| Error::Internal("multiplicity overflow".into()))?;
    let report = MultiplicityReport { value, dimension: n, orders, base, samples: eval.samples(), backend };
    if report.replay()? != value as i128 {
        return Err(Error::Internal("recorded samples do not reproduce the multiplicity".into()));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationTerm {
    pub degrees: Vec<u32>,
    /// `n! / ∏ d_i!`
    pub coefficient: u64,
    pub mixed: MultiplicityReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
    pub product: MultiplicityReport,
    pub terms: Vec<PolarizationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogConvexity {
    pub index: usize,
    /// `e_i^2`
    pub square: u128,
    /// `e_{i-1} e_{i+1}`
    pub product: u128,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesSharpReport {
    pub chain: Vec<u64>,
    pub inequalities: Vec<LogConvexity>,
    pub pass: bool,
    pub reports: Vec<MultiplicityReport>,
}

/// [`MultiplicityEngine::hs_multiplicity`] with the default configuration.
pub fn hs_multiplicity<C: Field>(
    ideal: &IdealPresentation<C>,
    quotient: Option<&IdealPresentation<C>>,
    dimension: Option<usize>,
) -> Result<MultiplicityReport> {
    MultiplicityEngine::default().hs_multiplicity(ideal, quotient, dimension)
}

/// [`MultiplicityEngine::mixed_multiplicity`] with the default configuration.
pub fn mixed_multiplicity<C: Field>(
    ideals: &[IdealPresentation<C>],
    degrees: &[u32],
    quotient: Option<&IdealPresentation<C>>,
) -> Result<MultiplicityReport> {
    MultiplicityEngine::default().mixed_multiplicity(ideals, degrees, quotient)
}

/// [`MultiplicityEngine::infer_dimension`] with the default configuration.
pub fn infer_dimension<C: Field>(quotient: Option<&IdealPresentation<C>>, vars: &Variables) -> Result<usize> {
    MultiplicityEngine::default().infer_dimension(quotient, vars)
}
