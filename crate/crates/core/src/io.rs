//! JSON wire formats. Rationals always travel as `"num/den"` strings.
//!
//! ```text
//! MonicPoly       {"degree": 2, "a": ["1", "0", "-1/2"]}
//! CumulantVector  {"d": 2, "variant": "rescaled", "kappa": ["0", "1/2"]}  variant omitted when standard
//! MomentSequence  {"degree": 2, "m": ["0", "1/2"]}        degree optional
//! VarPoly         {"var": "d", "coeffs": ["0", "-1", "1"]}  ascending powers
//! ```

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::polynomial::{MomentSequence, MonicPoly};
use crate::rational::{serde_vec, Rational};
use crate::transforms::{CumulantVariant, CumulantVector};
use crate::varpoly::VarPoly;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyWire {
    degree: usize,
    #[serde(with = "serde_vec")]
    a: Vec<Rational>,
}

impl Serialize for MonicPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire { degree: self.degree(), a: self.a().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonicPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        check_len("a", w.a.len(), w.degree + 1).map_err(D::Error::custom)?;
        MonicPoly::new(w.a).map_err(D::Error::custom)
    }
}

impl Serialize for CumulantVariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for CumulantVariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "standard" => Ok(CumulantVariant::Standard),
            "rescaled" => Ok(CumulantVariant::Rescaled),
            other => Err(D::Error::custom(format!("unknown cumulant variant {other:?}"))),
        }
    }
}

fn standard() -> CumulantVariant {
    CumulantVariant::Standard
}

fn is_standard(v: &CumulantVariant) -> bool {
    *v == CumulantVariant::Standard
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CumulantWire {
    d: usize,
    #[serde(default = "standard", skip_serializing_if = "is_standard")]
    variant: CumulantVariant,
    #[serde(with = "serde_vec")]
    kappa: Vec<Rational>,
}

impl Serialize for CumulantVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CumulantWire { d: self.d(), variant: self.variant(), kappa: self.kappa().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CumulantVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CumulantWire::deserialize(d)?;
        CumulantVector::new(w.d, w.kappa, w.variant).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MomentWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(with = "serde_vec")]
    m: Vec<Rational>,
}

impl Serialize for MomentSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MomentWire { degree: self.degree(), m: self.entries().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MomentWire::deserialize(d)?;
        MomentSequence::new(w.m, w.degree).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarPolyWire {
    var: String,
    #[serde(with = "serde_vec")]
    coeffs: Vec<Rational>,
}

/// A [`VarPoly`] tagged with the name of its indeterminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedVarPoly {
    pub var: String,
    pub poly: VarPoly,
}

impl NamedVarPoly {
    pub fn new(var: impl Into<String>, poly: VarPoly) -> Self {
        NamedVarPoly { var: var.into(), poly }
    }
}

impl Serialize for NamedVarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VarPolyWire { var: self.var.clone(), coeffs: self.poly.coeffs().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NamedVarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = VarPolyWire::deserialize(d)?;
        Ok(NamedVarPoly { var: w.var, poly: VarPoly::new(w.coeffs) })
    }
}

fn check_len(field: &str, got: usize, want: usize) -> std::result::Result<(), String> {
    if got != want {
        return Err(format!("\"{field}\" has {got} entries, expected {want}"));
    }
    Ok(())
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::parse(e.to_string()))
}

/// Any of the exact input objects, told apart by their keys.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactInput {
    Poly(MonicPoly),
    Cumulants(CumulantVector),
    Moments(MomentSequence),
}

/// How the `"a"` array of a polynomial object is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefficientFormat {
    /// Signed `a_i`, `p = Σ (-1)^i a_i x^{d-i}`.
    #[default]
    Signed,
    /// Ordinary coefficients, highest power first.
    Plain,
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))
}

pub fn parse_exact_input(text: &str, format: CoefficientFormat) -> Result<ExactInput> {
    let v = parse_json(text)?;
    let has = |k: &str| v.get(k).is_some();
    if has("a") {
        Ok(ExactInput::Poly(poly_from_value(v, format)?))
    } else if has("kappa") {
        Ok(ExactInput::Cumulants(from_value(v)?))
    } else if has("m") {
        Ok(ExactInput::Moments(from_value(v)?))
    } else {
        Err(Error::parse("expected a polynomial (\"a\"), cumulant (\"kappa\") or moment (\"m\") object"))
    }
}

fn poly_from_value(v: Value, format: CoefficientFormat) -> Result<MonicPoly> {
    match format {
        CoefficientFormat::Signed => from_value(v),
        CoefficientFormat::Plain => {
            let w: PolyWire = from_value(v)?;
            check_len("a", w.a.len(), w.degree + 1).map_err(Error::Parse)?;
            MonicPoly::from_plain_coefficients(&w.a)
        }
    }
}

pub fn parse_poly(text: &str, format: CoefficientFormat) -> Result<MonicPoly> {
    poly_from_value(parse_json(text)?, format)
}
