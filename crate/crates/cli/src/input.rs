//! JSON input documents.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use mixmult::blowdown::{BasePointDatum, LineBundleDatum};
use mixmult::chern::{GradedClass, IntersectionTable};
use mixmult::curve::CurveGerm;
use mixmult::monomial_ideal::MonomialIdeal;
use mixmult::{Error, Ideal, Rational, Result};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::Deserialize;

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub ambient: Vec<String>,
    pub generators: Vec<String>,
}

impl IdealDoc {
    pub fn build(&self) -> Result<Ideal> {
        Ideal::parse(&self.ambient, &self.generators)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialIdealDoc {
    pub dimension: usize,
    pub generators: Vec<Vec<u32>>,
}

/// Either monomial ideal shape: exponent vectors, or an ideal whose
/// generators are all monomials.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum AnyMonomialDoc {
    Exponents(MonomialIdealDoc),
    Ideal(IdealDoc),
}

impl AnyMonomialDoc {
    pub fn build(&self) -> Result<MonomialIdeal> {
        match self {
            AnyMonomialDoc::Exponents(d) => MonomialIdeal::new(d.dimension, d.generators.clone()),
            AnyMonomialDoc::Ideal(d) => MonomialIdeal::from_ideal(&d.build()?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermDoc {
    pub ambient: Vec<String>,
    pub truncation: usize,
    pub branches: Vec<Vec<String>>,
}

impl GermDoc {
    pub fn build(&self) -> Result<CurveGerm<Rational>> {
        CurveGerm::parse(&self.ambient, self.truncation, &self.branches)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasePointDoc {
    pub kj: u32,
    pub d_seq: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    pub k0: u32,
    pub degree: u64,
    #[serde(default)]
    pub base_points: Vec<BasePointDoc>,
}

impl DatumDoc {
    pub fn build(&self) -> LineBundleDatum {
        LineBundleDatum {
            k0: self.k0,
            degree: self.degree,
            base_points: self
                .base_points
                .iter()
                .map(|b| BasePointDatum::new(b.kj, b.d_seq.clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernDoc {
    pub rank: usize,
    pub truncation: usize,
    pub chern: Vec<String>,
}

impl ChernDoc {
    pub fn build(&self) -> Result<GradedClass<Rational>> {
        GradedClass::parse_chern(self.rank, self.truncation, &self.chern)
    }
}

/// Table values are JSON integers or decimal strings for large values.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TableValue {
    Int(i64),
    Text(String),
}

pub type TableDoc = BTreeMap<String, TableValue>;

pub fn build_table(doc: &TableDoc, class: &GradedClass<Rational>) -> Result<IntersectionTable> {
    let entries = doc
        .iter()
        .map(|(k, v)| {
            let value = match v {
                TableValue::Int(i) => BigInt::from(*i),
                TableValue::Text(s) => s
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("table value `{s}` for `{k}` is not an integer")))?,
            };
            Ok((k.as_str(), value))
        })
        .collect::<Result<Vec<_>>>()?;
    IntersectionTable::parse(class.vars(), class.weights(), class.truncation(), entries)
}
