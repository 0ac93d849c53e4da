use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::pair::PairVK;
use super::resonance::{is_resonant, Membership};
use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational, Field, Mode, Rational};

/// Field tag used by the pair file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Complex,
}

/// On-disk form of a pair. `K⊥` is never stored.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub n: usize,
    pub field: FieldTag,
    #[serde(rename = "K")]
    pub k: Vec<Vec<Value>>,
}

/// JSON encoding of scalars: rationals as `"p/q"` strings, complex numbers as
/// `[re, im]`.
pub trait JsonScalar: Field {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(x) if x.is_i64() => Ok(Rational::from_i64(x.as_i64().unwrap_or_default())),
            _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
        }
    }
}

impl JsonScalar for Complex64 {
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let num = |x: &Value| x.as_f64().ok_or_else(|| Error::Parse(format!("expected a number, got {x}")));
        match v {
            Value::Array(parts) if parts.len() == 2 => Ok(Complex64::new(num(&parts[0])?, num(&parts[1])?)),
            Value::Number(_) => Ok(Complex64::new(num(v)?, 0.0)),
            _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
        }
    }
}

pub fn vec_to_json<F: JsonScalar>(v: &[F]) -> Value {
    Value::Array(v.iter().map(JsonScalar::to_json).collect())
}

pub fn vec_from_json<F: JsonScalar>(v: &Value) -> Result<Vec<F>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(F::from_json)
        .collect()
}

/// A pair whose scalar mode was read from its file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPair {
    Exact(PairVK<Rational>),
    Float(PairVK<Complex64>),
}

impl AnyPair {
    pub fn from_file(file: &PairFile) -> Result<Self> {
        match file.field {
            FieldTag::Rational => Ok(AnyPair::Exact(parse_pair(file)?)),
            FieldTag::Complex => Ok(AnyPair::Float(parse_pair(file)?)),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PairFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> PairFile {
        match self {
            AnyPair::Exact(p) => pair_file(p, FieldTag::Rational),
            AnyPair::Float(p) => pair_file(p, FieldTag::Complex),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyPair::Exact(_) => Mode::ExactRational,
            AnyPair::Float(_) => Mode::ComplexDouble,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyPair::Exact(p) => p.n(),
            AnyPair::Float(p) => p.n(),
        }
    }

    pub fn dim_k(&self) -> usize {
        match self {
            AnyPair::Exact(p) => p.dim_k(),
            AnyPair::Float(p) => p.dim_k(),
        }
    }

    pub fn dim_kperp(&self) -> usize {
        match self {
            AnyPair::Exact(p) => p.dim_kperp(),
            AnyPair::Float(p) => p.dim_kperp(),
        }
    }

    pub fn to_complex(&self) -> PairVK<Complex64> {
        match self {
            AnyPair::Exact(p) => p.to_complex(),
            AnyPair::Float(p) => p.clone(),
        }
    }

    /// Membership of a point given in the pair's own JSON scalar encoding.
    /// The witness is returned JSON-encoded.
    pub fn is_resonant_json(&self, point: &Value, rank_tol: f64) -> Result<Membership<Value>> {
        fn run<F: JsonScalar>(p: &PairVK<F>, point: &Value, tol: f64) -> Result<Membership<Value>> {
            let a: Vec<F> = vec_from_json(point)?;
            let m = is_resonant(&a, p, tol)?;
            Ok(Membership {
                resonant: m.resonant,
                rank: m.rank,
                witness: m.witness.as_deref().map(vec_to_json),
            })
        }
        match self {
            AnyPair::Exact(p) => run(p, point, 0.0),
            AnyPair::Float(p) => run(p, point, rank_tol),
        }
    }
}

fn parse_pair<F: JsonScalar>(file: &PairFile) -> Result<PairVK<F>> {
    let rows = file
        .k
        .iter()
        .map(|r| r.iter().map(F::from_json).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    PairVK::from_k_rows(file.n, &rows, F::DEFAULT_TOL)
}

fn pair_file<F: JsonScalar>(p: &PairVK<F>, field: FieldTag) -> PairFile {
    PairFile {
        n: p.n(),
        field,
        k: p.k_basis()
            .iter()
            .map(|f| f.coords().iter().map(JsonScalar::to_json).collect())
            .collect(),
    }
}
