//! JSON forms of the exact types.
//!
//! * rationals: strings `"p/q"`, always with an explicit denominator (`"3/1"`);
//! * matrices: `{"rows": r, "cols": c, "entries": ["p/q", …]}`, row-major;
//! * polynomials: arrays of rationals, constant term first;
//! * spectra: `{"mode": "exact" | "approximate", "tol"?: t, "entries": [[value, multiplicity], …]}`
//!   where a value is a rational string or a float;
//! * graphs: `{"n": n, "edges": [[u, v], …]}`.
//!
//! Every form parses back into the value it came from.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::{ExactMatrix, RatPoly, Rational};
use crate::spectra::{Eigenvalue, Spectrum, SpectrumMode};

pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"` and plain integers `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: '{s}'"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Serde adapter for a single rational field: `#[serde(with = "crate::json::rational")]`.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.entries().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        let entries = m
            .entries
            .iter()
            .map(|e| parse_rational(e))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        ExactMatrix::from_entries(m.rows, m.cols, entries).map_err(D::Error::custom)
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(rational_to_string).collect();
        coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<String>::deserialize(d)?;
        let coeffs = coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(RatPoly::new(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ValueJson {
    Exact(String),
    Approx(f64),
}

impl Serialize for Eigenvalue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Eigenvalue::Exact(q) => ValueJson::Exact(rational_to_string(q)),
            Eigenvalue::Approx(x) => ValueJson::Approx(*x),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Eigenvalue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ValueJson::deserialize(d)? {
            ValueJson::Exact(s) => parse_rational(&s).map(Eigenvalue::Exact).map_err(D::Error::custom),
            ValueJson::Approx(x) => Ok(Eigenvalue::Approx(x)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumJson {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    entries: Vec<(Eigenvalue, usize)>,
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (mode, tol) = match self.mode {
            SpectrumMode::Exact => ("exact", None),
            SpectrumMode::Approximate(t) => ("approximate", Some(t)),
        };
        SpectrumJson {
            mode: mode.into(),
            tol,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SpectrumJson::deserialize(d)?;
        let mode = match (j.mode.as_str(), j.tol) {
            ("exact", _) => SpectrumMode::Exact,
            ("approximate", Some(t)) => SpectrumMode::Approximate(t),
            ("approximate", None) => return Err(D::Error::custom("approximate spectrum without tol")),
            (other, _) => return Err(D::Error::custom(format!("unknown spectrum mode '{other}'"))),
        };
        Ok(Spectrum {
            mode,
            entries: j.entries,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n(),
            edges: self.edges().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        Graph::new(g.n, g.edges).map_err(D::Error::custom)
    }
}
