use super::{Budget, GroebnerBasis, IdealPresentation};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, TermOrder, Variables};
use crate::scalar::Field;

/// Largest staircase bounding box we are willing to scan.
const MAX_BOX: u128 = 200_000_000;

/// Vector-space dimension of `k[x]/(I + J)`, with default budgets.
pub fn colength<C: Field>(ideal: &IdealPresentation<C>, quotient: Option<&IdealPresentation<C>>) -> Result<u64> {
    colength_with(ideal, quotient, &Budget::default())
}

pub fn colength_with<C: Field>(
    ideal: &IdealPresentation<C>,
    quotient: Option<&IdealPresentation<C>>,
    budget: &Budget,
) -> Result<u64> {
    let full = match quotient {
        Some(j) => ideal.sum(j)?,
        None => ideal.clone(),
    };
    let gb = GroebnerBasis::compute(&full, &TermOrder::degrevlex(), budget)?;
    count_standard_monomials(gb.leading_monomials(), gb.vars())
}

/// Counts monomials outside the ideal generated by `leading` by scanning the
/// box cut out by the pure powers.
pub(crate) fn count_standard_monomials(leading: &[Monomial], vars: &Variables) -> Result<u64> {
    if leading.iter().any(Monomial::is_one) {
        return Ok(0);
    }
    let n = vars.len();
    let mut bounds = vec![u32::MAX; n];
    for m in leading {
        if let Some((i, k)) = m.as_pure_power() {
            bounds[i] = bounds[i].min(k);
        }
    }
    if let Some(i) = bounds.iter().position(|&b| b == u32::MAX) {
        return Err(Error::InfiniteColength(vars.names()[i].clone()));
    }
    let volume: u128 = bounds.iter().map(|&b| b as u128).product();
    if volume > MAX_BOX {
        return Err(Error::BudgetExceeded(format!("staircase box of {volume} monomials")));
    }
    if n == 0 {
        return Ok(1);
    }
    let mut point = vec![0u32; n];
    let mut count = 0u64;
    'scan: loop {
        let m = Monomial::new(point.clone());
        if !leading.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        for i in 0..n {
            point[i] += 1;
            if point[i] < bounds[i] {
                continue 'scan;
            }
            point[i] = 0;
        }
        break;
    }
    Ok(count)
}

/// Outcome of the origin-support test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OriginSupport {
    pub supported: bool,
    /// For each variable, the least `N` with `v^N` in the ideal, when found.
    pub nilpotency: Vec<Option<u32>>,
    pub diagnostic: Option<String>,
}

impl OriginSupport {
    fn fail(nvars: usize, why: String) -> Self {
        OriginSupport { supported: false, nilpotency: vec![None; nvars], diagnostic: Some(why) }
    }
}

/// Decides whether the affine zero set of `I (+ J)` is exactly the origin by
/// finding, for each variable `v`, some `N <= bound` with `v^N` in the ideal.
///
/// A quotient algebra of finite dimension `c` supported at one point has
/// nilpotent maximal ideal of index at most `c`, so the search never needs
/// to go past the colength.
pub fn is_origin_supported<C: Field>(
    ideal: &IdealPresentation<C>,
    quotient: Option<&IdealPresentation<C>>,
    bound: u32,
    budget: &Budget,
) -> OriginSupport {
    let nvars = ideal.vars().len();
    let full = match quotient.map(|j| ideal.sum(j)) {
        Some(Ok(s)) => s,
        Some(Err(e)) => return OriginSupport::fail(nvars, e.to_string()),
        None => ideal.clone(),
    };
    let gb = match GroebnerBasis::compute(&full, &TermOrder::degrevlex(), budget) {
        Ok(gb) => gb,
        Err(e) => return OriginSupport::fail(nvars, e.to_string()),
    };
    if gb.is_unit() {
        return OriginSupport::fail(nvars, "unit ideal: empty zero set".into());
    }
    let colength = match count_standard_monomials(gb.leading_monomials(), gb.vars()) {
        Ok(c) => c,
        Err(e) => return OriginSupport::fail(nvars, e.to_string()),
    };
    let limit = (bound as u64).min(colength) as u32;
    let vars = gb.vars();
    let mut nilpotency = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let v = Polynomial::var(vars, i);
        let mut power = v.clone();
        let mut found = None;
        for k in 1..=limit {
            power = gb.normal_form(&power);
            if power.is_zero() {
                found = Some(k);
                break;
            }
            power = &power * &v;
        }
        if found.is_none() {
            let name = &vars.names()[i];
            let why = if limit < colength as u32 && limit == bound {
                format!("no power of `{name}` up to {bound} lies in the ideal (bound exhausted)")
            } else {
                format!("no power of `{name}` lies in the ideal: zero set has a point off the origin")
            };
            return OriginSupport { supported: false, nilpotency, diagnostic: Some(why) };
        }
        nilpotency.push(found);
    }
    OriginSupport { supported: true, nilpotency, diagnostic: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn id(gens: &[&str]) -> IdealPresentation<Rational> {
        IdealPresentation::parse(&["x", "y"], gens).unwrap()
    }

    fn supported(gens: &[&str]) -> bool {
        is_origin_supported(&id(gens), None, 1000, &Budget::default()).supported
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&id(&["x", "y"]), None).unwrap(), 1);
        assert_eq!(colength(&id(&["x^2", "x*y", "y^2"]), None).unwrap(), 3);
        assert_eq!(colength(&id(&["x^3", "x^2*y", "x*y^3", "y^4"]), None).unwrap(), 8);
    }

    #[test]
    fn colength_with_quotient() {
        let m4 = crate::ideal::ideal_power_product(&[id(&["x", "y"])], &[4], &Budget::default()).unwrap();
        assert_eq!(colength(&m4, Some(&id(&["y^2 - x^3"]))).unwrap(), 7);
    }

    #[test]
    fn infinite_colength() {
        assert_eq!(colength(&id(&["x*y"]), None).unwrap_err(), Error::InfiniteColength("x".into()));
        assert_eq!(colength(&id(&["x^2"]), None).unwrap_err(), Error::InfiniteColength("y".into()));
    }

    #[test]
    fn unit_ideal_has_zero_colength() {
        assert_eq!(colength(&id(&["x + 1", "x"]), None).unwrap(), 0);
    }

    #[test]
    fn origin_support_examples() {
        assert!(supported(&["x^2", "y^3"]));
        assert!(!supported(&["x*y"]));
        let one_var = IdealPresentation::<Rational>::parse(&["x"], &["x - x^2"]).unwrap();
        let r = is_origin_supported(&one_var, None, 1000, &Budget::default());
        assert!(!r.supported);
        assert!(r.diagnostic.is_some());
        assert!(!supported(&["x - 1", "y"]));
        assert!(supported(&["y^2 - x^3", "x"]));
    }

    #[test]
    fn origin_support_records_nilpotency() {
        let r = is_origin_supported(&id(&["x^2", "y^3"]), None, 1000, &Budget::default());
        assert_eq!(r.nilpotency, vec![Some(2), Some(3)]);
        let cusp = is_origin_supported(&id(&["x"]), Some(&id(&["y^2 - x^3"])), 1000, &Budget::default());
        assert_eq!(cusp.nilpotency, vec![Some(1), Some(2)]);
    }

    #[test]
    fn origin_support_bound_exhaustion() {
        let r = is_origin_supported(&id(&["x^5", "y^5"]), None, 3, &Budget::default());
        assert!(!r.supported);
        assert!(r.diagnostic.unwrap().contains("bound exhausted"));
    }
}
