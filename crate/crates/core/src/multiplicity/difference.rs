//! Forward differences of functions on the integer lattice.
//!
//! If `P(t) = Σ_{|d|=n} a_d t^d + (lower order)` then the mixed difference
//! `Δ^{d_1}_{t_1} ⋯ Δ^{d_k}_{t_k} P` is the constant `d_1!⋯d_k! · a_d`: a
//! monomial of the top degree other than `t^d` has some exponent smaller
//! than the matching difference order, and every lower order term does too.
//! The Hilbert-Samuel polynomial has `a_d = e_d / d!`, so the difference is
//! exactly the mixed multiplicity `e_d`.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_integer::binomial;
use num_traits::{FromPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Variables};
use crate::scalar::Field;
use crate::Rational;

/// `Δ^{orders} f` at `base`, i.e. `Σ_{δ ≤ orders} (-1)^{|orders|-|δ|} ∏ C(orders_i, δ_i) f(base + δ)`.
pub fn mixed_difference<T, F>(base: &[u32], orders: &[u32], mut f: F) -> T
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + FromPrimitive,
    F: FnMut(&[u32]) -> T,
{
    assert_eq!(base.len(), orders.len());
    let total: u32 = orders.iter().sum();
    let mut acc = T::zero();
    for delta in grid_offsets(orders) {
        let point: Vec<u32> = base.iter().zip(&delta).map(|(b, d)| b + d).collect();
        let weight: u64 = orders.iter().zip(&delta).map(|(&o, &d)| binomial(o as u64, d as u64)).product();
        let w = T::from_u64(weight).expect("binomial weight fits");
        let term = w * f(&point);
        let sign_negative = (total - delta.iter().sum::<u32>()) % 2 == 1;
        acc = if sign_negative { acc - term } else { acc + term };
    }
    acc
}

/// All offsets `δ` with `0 <= δ_i <= orders_i`, in lexicographic order.
pub fn grid_offsets(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=o).map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

/// `P(t + e_i)` computed symbolically.
pub fn shift<C: Field>(p: &Polynomial<C>, var: usize) -> Polynomial<C> {
    let vars = p.vars();
    let mut out = Polynomial::zero(vars);
    for (m, c) in p.terms() {
        let e = m.exponents()[var];
        for j in 0..=e {
            let mut exps = m.exponents().to_vec();
            exps[var] = j;
            let b = C::from_int(binomial(e as i64, j as i64));
            out = &out + &Polynomial::term(vars, Monomial::new(exps), c.clone() * &b);
        }
    }
    out
}

/// The symbolic mixed difference operator applied to a polynomial.
pub fn symbolic_difference<C: Field>(p: &Polynomial<C>, orders: &[u32]) -> Polynomial<C> {
    let mut q = p.clone();
    for (var, &o) in orders.iter().enumerate() {
        for _ in 0..o {
            q = &shift(&q, var) - &q;
        }
    }
    q
}

/// All `d` with `k` nonnegative parts summing to `n`.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// `n! / (d_1! ⋯ d_k!)`.
pub fn multinomial(d: &[u32]) -> u64 {
    let n: u32 = d.iter().sum();
    d.iter().fold(factorial(n), |acc, &di| acc / factorial(di))
}

/// Checks the difference identity on a random polynomial of total degree `n`
/// in `k` variables, both symbolically and through [`mixed_difference`].
///
/// Two normalizations are exercised: top coefficients `a_d = (n!/d!)·e_d`
/// must give `Δ^d P = n!·e_d`, and `a_d = e_d/d!` must give `Δ^d P = e_d`.
pub fn verify_difference_identity(k: usize, n: u32, seed: u64) -> Result<()> {
    let names: Vec<String> = (1..=k).map(|i| format!("t{i}")).collect();
    let vars = Variables::new(&names)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tops = compositions(n, k);
    let e: Vec<i64> = tops.iter().map(|_| rng.gen_range(1..50)).collect();

    let mut lower = Polynomial::<Rational>::zero(&vars);
    for deg in 0..n {
        for d in compositions(deg, k) {
            let c = Rational::new(rng.gen_range(-30i64..30).into(), rng.gen_range(1i64..7).into());
            lower = &lower + &Polynomial::term(&vars, Monomial::new(d), c);
        }
    }

    let dfact = |d: &[u32]| d.iter().map(|&x| factorial(x)).product::<u64>() as i64;
    for scaled in [true, false] {
        let mut p = lower.clone();
        for (d, &ed) in tops.iter().zip(&e) {
            let a = if scaled {
                Rational::from_int(multinomial(d) as i64 * ed)
            } else {
                Rational::new(ed.into(), dfact(d).into())
            };
            p = &p + &Polynomial::term(&vars, Monomial::new(d.clone()), a);
        }
        for (d, &ed) in tops.iter().zip(&e) {
            let expected = if scaled { factorial(n) as i64 * ed } else { ed };
            let expected = Polynomial::constant(&vars, Rational::from_int(expected));
            let sym = symbolic_difference(&p, d);
            if sym != expected {
                return Err(Error::Internal(format!(
                    "difference identity failed for d = {d:?}: got {sym}, expected {expected}"
                )));
            }
            let base: Vec<u32> = (0..k).map(|_| rng.gen_range(0..6)).collect();
            let numeric: Rational = mixed_difference(&base, d, |t| {
                let pt: Vec<Rational> = t.iter().map(|&x| Rational::from_int(x as i64)).collect();
                p.evaluate(&pt)
            });
            if numeric != expected.constant_term() {
                return Err(Error::Internal(format!(
                    "numeric difference operator disagrees at d = {d:?}: {numeric}"
                )));
            }
        }
    }
    Ok(())
}

/// Runs [`verify_difference_identity`] once per process in 2 and 3 variables.
pub fn ensure_self_test() -> Result<()> {
    static RESULT: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    RESULT
        .get_or_init(|| {
            for (k, n, seed) in [(2, 2, 11), (2, 3, 12), (3, 3, 13), (1, 2, 14)] {
                verify_difference_identity(k, n, seed).map_err(|e| e.to_string())?;
            }
            Ok(())
        })
        .clone()
        .map_err(Error::Internal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_difference_of_square() {
        let v: i64 = mixed_difference(&[3], &[2], |t| (t[0] as i64).pow(2));
        assert_eq!(v, 2);
    }

    #[test]
    fn mixed_difference_of_product() {
        let v: i64 = mixed_difference(&[1, 4], &[1, 1], |t| 7 * t[0] as i64 * t[1] as i64 + t[0] as i64);
        assert_eq!(v, 7);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(multinomial(&[1, 1]), 2);
        assert_eq!(multinomial(&[2, 1, 0]), 3);
    }

    #[test]
    fn identity_holds_in_two_and_three_variables() {
        for seed in 0..5 {
            verify_difference_identity(2, 2, seed).unwrap();
            verify_difference_identity(2, 4, seed).unwrap();
            verify_difference_identity(3, 3, seed).unwrap();
        }
    }
}
