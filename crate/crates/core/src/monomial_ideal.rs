//! Combinatorics of monomial ideals: staircase counting and the Newton
//! polygon multiplicity in two variables.
//!
//! For an ideal primary to the origin of `k[x, y]` generated by monomials,
//! the Hilbert-Samuel multiplicity is twice the area of the region between
//! the axes and the lower convex hull of the exponent vectors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ideal::IdealPresentation;
use crate::poly::{Monomial, Variables};
use crate::scalar::Field;
use crate::Rational;

/// A monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dimension: usize,
    generators: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut points: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    points.sort_by_key(|p| (p.iter().map(|&e| e as u64).sum::<u64>(), p.clone()));
    points.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(points.len());
    for p in points {
        if !kept.iter().any(|k| divides(k, &p)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

impl MonomialIdeal {
    pub fn new(dimension: usize, points: Vec<Vec<u32>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("monomial ideal needs at least one generator".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::InvalidInput(format!(
                "exponent vector {p:?} does not have length {dimension}"
            )));
        }
        Ok(MonomialIdeal { dimension, generators: minimalize(points) })
    }

    /// Reads the exponents of a presentation whose generators are all terms.
    pub fn from_ideal<C: Field>(ideal: &IdealPresentation<C>) -> Result<Self> {
        let monos = ideal
            .monomial_generators()
            .ok_or_else(|| Error::InvalidInput("ideal is not generated by monomials".into()))?;
        Self::new(ideal.vars().len(), monos.into_iter().map(|m| m.exponents().to_vec()).collect())
    }

    pub fn to_ideal<C: Field>(&self, vars: &Variables) -> Result<IdealPresentation<C>> {
        if vars.len() != self.dimension {
            return Err(Error::InvalidInput("variable count does not match dimension".into()));
        }
        let monos: Vec<Monomial> = self.generators.iter().map(|g| Monomial::new(g.clone())).collect();
        IdealPresentation::from_monomials(vars, &monos)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Minimal generators in lexicographic order.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Exponent of the pure power generator on axis `i`, if any.
    pub fn axis_power(&self, i: usize) -> Option<u32> {
        self.generators
            .iter()
            .filter(|g| g.iter().enumerate().all(|(k, &e)| k == i || e == 0))
            .map(|g| g[i])
            .min()
    }

    pub fn is_origin_primary(&self) -> bool {
        (0..self.dimension).all(|i| self.axis_power(i).is_some_and(|e| e > 0))
    }

    fn require_primary(&self) -> Result<()> {
        if self.is_unit() {
            return Ok(());
        }
        match (0..self.dimension).find(|&i| self.axis_power(i).is_none()) {
            Some(i) => Err(Error::NotOriginSupported(format!("no pure power on axis {i}"))),
            None => Ok(()),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Product ideal: Minkowski sum of the generator sets.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.dimension != other.dimension {
            return Err(Error::InvalidInput("dimension mismatch in product".into()));
        }
        let mut pts = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::new(self.dimension, pts)
    }

    pub fn unit(dimension: usize) -> MonomialIdeal {
        MonomialIdeal { dimension, generators: vec![vec![0; dimension]] }
    }

    pub fn pow(&self, t: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dimension);
        for _ in 0..t {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    /// Number of lattice points not lying above any generator.
    pub fn staircase_colength(&self) -> Result<u64> {
        self.require_primary()?;
        Ok(count_slices(&self.generators, self.dimension))
    }

    /// Lower hull and multiplicity; see [`MonomialIdeal::newton_multiplicity_2d`].
    pub fn newton_polygon_2d(&self) -> Result<NewtonPolygon> {
        if self.dimension != 2 {
            return Err(Error::InvalidInput(format!(
                "Newton polygon multiplicity needs 2 variables, got {}",
                self.dimension
            )));
        }
        if self.is_unit() {
            return Err(Error::NotOriginSupported("unit ideal".into()));
        }
        self.require_primary()?;

        // After minimalization the x-coordinates are distinct, (0, b) is the
        // leftmost point and (a, 0) the rightmost one.
        let mut pts: Vec<(i64, i64)> = self.generators.iter().map(|g| (g[0] as i64, g[1] as i64)).collect();
        pts.sort();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }

        // Polygon: origin, (a, 0), ..., (0, b).
        let mut polygon = vec![(0i64, 0i64)];
        polygon.extend(hull.iter().rev().copied());
        let twice: i64 = (0..polygon.len())
            .map(|i| {
                let (p, q) = (polygon[i], polygon[(i + 1) % polygon.len()]);
                p.0 * q.1 - q.0 * p.1
            })
            .sum();
        let area = Rational::new(twice.into(), 2.into());
        let doubled = area * Rational::from_int(2);
        let value = doubled
            .as_integer()
            .and_then(|v| u64::try_from(v).ok())
            .ok_or_else(|| Error::Internal(format!("non-integral Newton multiplicity {doubled}")))?;
        Ok(NewtonPolygon {
            hull: hull.into_iter().map(|(x, y)| [x as u32, y as u32]).collect(),
            value,
        })
    }

    /// `2 ×` the area below the Newton polygon; equals the Hilbert-Samuel
    /// multiplicity of the ideal.
    pub fn newton_multiplicity_2d(&self) -> Result<u64> {
        Ok(self.newton_polygon_2d()?.value)
    }
}

/// Certificate of a Newton polygon computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices of the lower hull from `(0, b)` to `(a, 0)`.
    pub hull: Vec<[u32; 2]>,
    pub value: u64,
}

/// Counts standard monomials by slicing along the last coordinate: between
/// consecutive distinct last exponents the projected ideal does not change.
fn count_slices(gens: &[Vec<u32>], dim: usize) -> u64 {
    if dim == 0 {
        return u64::from(gens.is_empty());
    }
    let last = dim - 1;
    let top = gens
        .iter()
        .filter(|g| g[..last].iter().all(|&e| e == 0))
        .map(|g| g[last])
        .min()
        .expect("origin-primary ideal has a pure power on every axis");
    let mut cuts: BTreeSet<u32> = gens.iter().map(|g| g[last]).filter(|&e| e < top).collect();
    cuts.insert(0);
    let mut total = 0u64;
    let cuts: Vec<u32> = cuts.into_iter().collect();
    for (k, &from) in cuts.iter().enumerate() {
        let to = cuts.get(k + 1).copied().unwrap_or(top);
        let slice: Vec<Vec<u32>> = gens.iter().filter(|g| g[last] <= from).map(|g| g[..last].to_vec()).collect();
        total += (to - from) as u64 * count_slices(&slice, last);
    }
    total
}
