//! Multiplicities of Grauert blow-downs of negative line bundles over
//! compact Riemann surfaces, Weierstrass semigroup utilities, and the
//! volume bounds for the base locus.
//!
//! Inputs are bundle data (initial order, degree, vanishing orders at the
//! base points), not curve equations.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial_ideal::MonomialIdeal;
use crate::scalar::Field;

/// Vanishing orders at one base point of `L^{k0}`.
///
/// `d_seq[i]` is the minimal vanishing order at the point over sections of
/// `L^{k0+i}`; the last entry, at `k = kj`, is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePointDatum {
    pub kj: u32,
    pub d_seq: Vec<u32>,
}

impl BasePointDatum {
    pub fn new(kj: u32, d_seq: Vec<u32>) -> Self {
        BasePointDatum { kj, d_seq }
    }

    pub fn validate(&self, k0: u32) -> Result<()> {
        if self.kj <= k0 {
            return Err(Error::InvalidInput(format!(
                "base point generated at k = {} but it must be a base point of L^{k0}",
                self.kj
            )));
        }
        let expected = (self.kj - k0 + 1) as usize;
        if self.d_seq.len() != expected {
            return Err(Error::InvalidInput(format!(
                "d_seq has {} entries, expected kj - k0 + 1 = {expected}",
                self.d_seq.len()
            )));
        }
        if self.d_seq[0] == 0 {
            return Err(Error::InvalidInput("d_seq must start with a positive order".into()));
        }
        if self.d_seq[expected - 1] != 0 {
            return Err(Error::InvalidInput("d_seq must end with 0 (generation at kj)".into()));
        }
        Ok(())
    }

    /// The ideal generated by `z^{d_k} w^{k-k0}`, `k = k0..kj`.
    pub fn monomial_ideal(&self, k0: u32) -> Result<MonomialIdeal> {
        self.validate(k0)?;
        let points = self.d_seq.iter().enumerate().map(|(i, &d)| vec![d, i as u32]).collect();
        MonomialIdeal::new(2, points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineBundleDatum {
    pub k0: u32,
    pub degree: u64,
    pub base_points: Vec<BasePointDatum>,
}

impl LineBundleDatum {
    pub fn validate(&self) -> Result<()> {
        if self.k0 == 0 {
            return Err(Error::InvalidInput("k0 must be positive".into()));
        }
        if self.degree == 0 {
            return Err(Error::InvalidInput("an ample line bundle has positive degree".into()));
        }
        self.base_points.iter().try_for_each(|b| b.validate(self.k0))
    }
}

/// Multiplicity of the monomial ideal attached to a base point.
pub fn lambda_multiplicity(b: &BasePointDatum, k0: u32) -> Result<u64> {
    let lambda = b.monomial_ideal(k0)?.newton_multiplicity_2d()?;
    if lambda == 0 {
        return Err(Error::Internal(format!("λ = 0 for base point {b:?}")));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowdownReport {
    pub value: u64,
    /// `k0²·degree`.
    pub leading: u64,
    /// One λ per base point, in input order.
    pub lambdas: Vec<u64>,
}

/// `k0²·deg L + Σ_j λ_j`.
pub fn rs_blowdown_multiplicity(l: &LineBundleDatum) -> Result<BlowdownReport> {
    l.validate()?;
    let leading = (l.k0 as u64)
        .checked_pow(2)
        .and_then(|k| k.checked_mul(l.degree))
        .ok_or_else(|| Error::InvalidInput("k0²·degree overflows".into()))?;
    let lambdas: Vec<u64> = l
        .base_points
        .iter()
        .map(|b| lambda_multiplicity(b, l.k0))
        .collect::<Result<_>>()?;
    let value = lambdas.iter().sum::<u64>() + leading;
    Ok(BlowdownReport { value, leading, lambdas })
}

/// Gap set of a numerical semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Semigroup {
    gaps: BTreeSet<u32>,
}

impl Semigroup {
    pub fn new(gaps: impl IntoIterator<Item = u32>) -> Result<Self> {
        let gaps: BTreeSet<u32> = gaps.into_iter().collect();
        if gaps.contains(&0) {
            return Err(Error::InvalidInput("0 cannot be a gap".into()));
        }
        let s = Semigroup { gaps };
        let top = s.gaps.last().copied().unwrap_or(0);
        for a in 1..=top {
            if s.gaps.contains(&a) {
                continue;
            }
            for b in a..=top - a {
                if !s.gaps.contains(&b) && s.gaps.contains(&(a + b)) {
                    return Err(Error::InvalidInput(format!(
                        "nongaps are not closed under addition: {a} + {b} = {} is a gap",
                        a + b
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn gaps(&self) -> &BTreeSet<u32> {
        &self.gaps
    }

    /// Number of gaps, the genus for a Weierstrass semigroup.
    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_nongap(&self, k: u32) -> bool {
        !self.gaps.contains(&k)
    }
}

pub fn first_nongap(s: &Semigroup) -> u32 {
    (1..).find(|&k| s.is_nongap(k)).expect("gap set is finite")
}

/// Base point datum of `L = [P]` at `P`, or `None` when `L` is generated.
///
/// With `κ` the first nongap, `k0 = 1`, `kj = κ` and
/// `d_k = k − max{s ∈ S : s ≤ k}` for `k = 1..κ`.
pub fn dseq_from_semigroup(s: &Semigroup) -> Option<BasePointDatum> {
    let kappa = first_nongap(s);
    if kappa == 1 {
        return None;
    }
    let d_seq = (1..=kappa)
        .map(|k| k - (0..=k).rev().find(|&m| s.is_nongap(m)).expect("0 is a nongap"))
        .collect();
    Some(BasePointDatum::new(kappa, d_seq))
}

/// The datum `(k0 = 1, degree = 1)` of the point bundle `[P]`.
pub fn point_bundle(s: &Semigroup) -> LineBundleDatum {
    LineBundleDatum {
        k0: 1,
        degree: 1,
        base_points: dseq_from_semigroup(s).into_iter().collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsInput<C> {
    pub k0: u32,
    pub k1: u32,
    pub p: u32,
    pub n: u32,
    pub vol: C,
    pub vol_b: C,
}

impl<C: Field> BoundsInput<C> {
    pub fn validate(&self) -> Result<()> {
        if self.k0 == 0 || self.k0 > self.k1 {
            return Err(Error::InvalidInput(format!("need 1 ≤ k0 ≤ k1, got k0 = {}, k1 = {}", self.k0, self.k1)));
        }
        if self.p == 0 || self.p > self.n {
            return Err(Error::InvalidInput(format!("need 1 ≤ p ≤ n, got p = {}, n = {}", self.p, self.n)));
        }
        if self.vol.is_zero() || self.vol.is_negative() {
            return Err(Error::InvalidInput("vol must be positive".into()));
        }
        if self.vol_b.is_negative() {
            return Err(Error::InvalidInput("volB must be nonnegative".into()));
        }
        Ok(())
    }
}

fn pow<C: Field>(base: u32, e: u32) -> C {
    let b = C::from_int(base as i64);
    (0..e).fold(C::one(), |acc, _| acc * &b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeControl<C> {
    pub bound: C,
    pub slack: C,
    pub pass: bool,
}

/// `vol_B ≤ (k0^p·k1 − k0^{p+1})·vol`.
pub fn vol_control_check<C: Field>(b: &BoundsInput<C>) -> Result<VolumeControl<C>> {
    b.validate()?;
    let factor = pow::<C>(b.k0, b.p) * &C::from_int(b.k1 as i64) - pow::<C>(b.k0, b.p + 1);
    let bound = factor * &b.vol;
    let slack = bound.clone() - &b.vol_b;
    Ok(VolumeControl { pass: !slack.is_negative(), bound, slack })
}

/// Lower and upper bounds for the blow-down multiplicity.
pub fn mult_bounds<C: Field>(b: &BoundsInput<C>) -> Result<(C, C)> {
    b.validate()?;
    let lower = pow::<C>(b.k0, b.n + 1) * &b.vol
        + C::from_int((b.n + 1 - b.p) as i64) * &pow::<C>(b.k0, b.n - b.p) * &b.vol_b;
    let k1_power: C = pow(b.k1, b.n - b.p);
    let upper = pow::<C>(b.k0, b.p + 1) * &k1_power * &b.vol + k1_power * &b.vol_b;
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn bounds(k0: u32, k1: u32, p: u32, n: u32, vol: i64, vol_b: i64) -> BoundsInput<Rational> {
        BoundsInput { k0, k1, p, n, vol: q(vol), vol_b: q(vol_b) }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_multiplicity(&BasePointDatum::new(2, vec![1, 0]), 1).unwrap(), 1);
        assert_eq!(lambda_multiplicity(&BasePointDatum::new(4, vec![1, 2, 3, 0]), 1).unwrap(), 3);
        assert_eq!(lambda_multiplicity(&BasePointDatum::new(2, vec![2, 0]), 1).unwrap(), 2);
    }

    #[test]
    fn invalid_base_points() {
        assert!(lambda_multiplicity(&BasePointDatum::new(2, vec![0, 0]), 1).is_err());
        assert!(lambda_multiplicity(&BasePointDatum::new(2, vec![1, 1]), 1).is_err());
        assert!(lambda_multiplicity(&BasePointDatum::new(3, vec![1, 0]), 1).is_err());
        assert!(lambda_multiplicity(&BasePointDatum::new(1, vec![1]), 1).is_err());
    }

    #[test]
    fn blowdown_examples() {
        for g in 2..=6u64 {
            let l = LineBundleDatum { k0: 1, degree: 2 * g - 2, base_points: vec![] };
            assert_eq!(rs_blowdown_multiplicity(&l).unwrap().value, 2 * g - 2);
        }
        let sphere = LineBundleDatum { k0: 1, degree: 2, base_points: vec![] };
        assert_eq!(rs_blowdown_multiplicity(&sphere).unwrap().value, 2);
        for g in 1..=8u32 {
            let mut d: Vec<u32> = (1..=g).collect();
            d.push(0);
            let l = LineBundleDatum { k0: 1, degree: 1, base_points: vec![BasePointDatum::new(g + 1, d)] };
            assert_eq!(rs_blowdown_multiplicity(&l).unwrap().value, g as u64 + 1);
        }
    }

    #[test]
    fn semigroup_examples() {
        let s = Semigroup::new(1..=3).unwrap();
        assert_eq!(first_nongap(&s), 4);
        assert_eq!(dseq_from_semigroup(&s).unwrap().d_seq, vec![1, 2, 3, 0]);
        let h = Semigroup::new([1, 3]).unwrap();
        assert_eq!(first_nongap(&h), 2);
        assert_eq!(dseq_from_semigroup(&h), Some(BasePointDatum::new(2, vec![1, 0])));
        let p1 = Semigroup::new([]).unwrap();
        assert_eq!(first_nongap(&p1), 1);
        assert_eq!(dseq_from_semigroup(&p1), None);
    }

    #[test]
    fn semigroup_validation() {
        // 2 and 3 are nongaps but 5 is a gap
        assert!(Semigroup::new([1, 4, 5]).is_err());
        assert!(Semigroup::new([0, 1]).is_err());
        assert!(Semigroup::new([2, 3]).is_err());
        assert!(Semigroup::new([1, 2, 4]).is_ok());
        assert!(Semigroup::new([1, 2, 3, 5, 7]).is_ok());
    }

    #[test]
    fn vol_control_examples() {
        let g = 4;
        let r = vol_control_check(&bounds(1, g + 1, 1, 1, 1, g as i64)).unwrap();
        assert_eq!((r.bound, r.slack, r.pass), (q(4), q(0), true));
        let r = vol_control_check(&bounds(1, 1, 1, 1, 5, 0)).unwrap();
        assert_eq!((r.bound, r.pass), (q(0), true));
        let r = vol_control_check(&bounds(2, 3, 1, 2, 1, 5)).unwrap();
        assert_eq!((r.bound, r.pass), (q(2), false));
    }

    #[test]
    fn bounds_examples() {
        for g in 2..=6 {
            assert_eq!(mult_bounds(&bounds(1, 1, 1, 1, 2 * g - 2, 0)).unwrap(), (q(2 * g - 2), q(2 * g - 2)));
        }
        assert_eq!(mult_bounds(&bounds(1, 2, 1, 1, 1, 1)).unwrap(), (q(2), q(2)));
        assert_eq!(mult_bounds(&bounds(2, 2, 1, 1, 1, 0)).unwrap(), (q(4), q(4)));
        let half = BoundsInput { k0: 1, k1: 2, p: 1, n: 1, vol: Rational::new(1.into(), 2.into()), vol_b: q(0) };
        assert_eq!(mult_bounds(&half).unwrap().0, Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn invalid_bounds() {
        assert!(mult_bounds(&bounds(2, 1, 1, 1, 1, 0)).is_err());
        assert!(mult_bounds(&bounds(1, 1, 2, 1, 1, 0)).is_err());
        assert!(mult_bounds(&bounds(1, 1, 1, 1, 0, 0)).is_err());
        assert!(vol_control_check(&bounds(1, 1, 1, 1, 1, -1)).is_err());
    }

    /// Gap sets of numerical semigroups generated by a few small integers.
    fn semigroup_from_generators(gens: &[u32]) -> Option<Semigroup> {
        let limit = 200;
        let mut member = vec![false; limit + 1];
        member[0] = true;
        for k in 1..=limit {
            member[k] = gens.iter().any(|&g| g as usize <= k && member[k - g as usize]);
        }
        if !member[limit - 20..].iter().all(|&m| m) {
            return None;
        }
        Semigroup::new((1..=limit as u32).filter(|&k| !member[k as usize])).ok()
    }

    proptest! {
        #[test]
        fn semigroup_pipeline(gens in prop::collection::vec(2u32..9, 1..4)) {
            prop_assume!(gens.iter().any(|&a| gens.iter().any(|&b| num_integer::gcd(a, b) == 1)));
            let s = semigroup_from_generators(&gens).unwrap();
            let kappa = first_nongap(&s);
            prop_assert!(kappa >= 2);
            let l = point_bundle(&s);
            prop_assert_eq!(rs_blowdown_multiplicity(&l).unwrap().value, kappa as u64);
        }

        #[test]
        fn base_points_raise_multiplicity(
            k0 in 1u32..4,
            degree in 1u64..20,
            tails in prop::collection::vec(prop::collection::vec(0u32..6, 1..5), 0..4),
        ) {
            let base_points: Vec<BasePointDatum> = tails
                .iter()
                .map(|t| {
                    let mut d = vec![t[0] + 1];
                    d.extend(&t[1..]);
                    d.push(0);
                    BasePointDatum::new(k0 + d.len() as u32 - 1, d)
                })
                .collect();
            let empty = base_points.is_empty();
            let l = LineBundleDatum { k0, degree, base_points };
            let r = rs_blowdown_multiplicity(&l).unwrap();
            prop_assert!(r.lambdas.iter().all(|&x| x >= 1));
            prop_assert_eq!(r.value == (k0 * k0) as u64 * degree, empty);
        }

        #[test]
        fn pinched_bounds_without_base_locus(k0 in 1u32..5, degree in 1i64..30) {
            let b = bounds(k0, k0, 1, 1, degree, 0);
            let (lo, hi) = mult_bounds(&b).unwrap();
            let l = LineBundleDatum { k0, degree: degree as u64, base_points: vec![] };
            let v = q(rs_blowdown_multiplicity(&l).unwrap().value as i64);
            prop_assert_eq!(&lo, &v);
            prop_assert_eq!(&hi, &v);
        }
    }
}
