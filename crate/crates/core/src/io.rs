//! The algebra file format: JSON with the field, the dimension, optional
//! basis names, and the nonzero products as sparse coordinate lists.
//!
//! ```json
//! {"field": "Q", "dim": 2, "basis": ["a", "a2"],
//!  "products": [{"i": 0, "j": 0, "terms": [{"k": 1, "c": "1"}]},
//!               {"i": 1, "j": 0, "terms": [{"k": 1, "c": "1"}]}]}
//! ```
//!
//! The field is `"Q"` or `{"GF": p}`; indices are zero-based; omitted
//! products are zero; scalars are strings in the field's syntax.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{default_names, AnyAlgebra, LeibnizAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub k: usize,
    pub c: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

/// Raw file contents before validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: Value,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
}

pub fn field_to_json(spec: FieldSpec) -> Value {
    match spec {
        FieldSpec::Rationals => Value::String("Q".into()),
        FieldSpec::PrimeField(p) => serde_json::json!({ "GF": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(m) if m.len() == 1 && m.contains_key("GF") => {
            let p = m["GF"]
                .as_u64()
                .ok_or_else(|| Error::Format(format!("field: GF expects a positive integer, got {}", m["GF"])))?;
            FieldSpec::prime(p)
        }
        other => Err(Error::Format(format!(r#"field: expected "Q" or {{"GF": p}}, got {other}"#))),
    }
}

fn build<F: Field>(field: &F, file: &AlgebraFile) -> Result<LeibnizAlgebra<F>> {
    let n = file.dim;
    let names = match &file.basis {
        Some(b) => {
            if b.len() != n {
                return Err(Error::Format(format!("basis: {} names for dimension {n}", b.len())));
            }
            let mut seen = BTreeSet::new();
            for (idx, name) in b.iter().enumerate() {
                if name.trim().is_empty() {
                    return Err(Error::Format(format!("basis[{idx}]: empty name")));
                }
                if !seen.insert(name.as_str()) {
                    return Err(Error::Format(format!("basis[{idx}]: duplicate name {name:?}")));
                }
            }
            b.clone()
        }
        None => default_names(n),
    };
    let mut pairs = BTreeSet::new();
    let mut entries = Vec::new();
    for (pos, entry) in file.products.iter().enumerate() {
        let at = format!("products[{pos}]");
        for (label, v) in [("i", entry.i), ("j", entry.j)] {
            if v >= n {
                return Err(Error::IndexOutOfRange(format!("{at}.{label} = {v} with dim {n}")));
            }
        }
        if !pairs.insert((entry.i, entry.j)) {
            return Err(Error::Format(format!(
                "{at}: duplicate product for (i, j) = ({}, {})",
                entry.i, entry.j
            )));
        }
        let mut ks = BTreeSet::new();
        for (t, term) in entry.terms.iter().enumerate() {
            let at = format!("{at}.terms[{t}]");
            if term.k >= n {
                return Err(Error::IndexOutOfRange(format!("{at}.k = {} with dim {n}", term.k)));
            }
            if !ks.insert(term.k) {
                return Err(Error::Format(format!("{at}: duplicate coordinate k = {}", term.k)));
            }
            let c = field
                .parse(&term.c)
                .map_err(|e| Error::Format(format!("{at}.c: {e}")))?;
            entries.push((entry.i, entry.j, term.k, c));
        }
    }
    LeibnizAlgebra::from_entries(field, names, entries)
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<AnyAlgebra> {
        Ok(match field_from_json(&self.field)? {
            FieldSpec::Rationals => AnyAlgebra::Rational(build(&Rationals, self)?),
            FieldSpec::PrimeField(p) => AnyAlgebra::Prime(build(&PrimeField::new(p as u64)?, self)?),
        })
    }

    pub fn from_algebra<F: Field>(l: &LeibnizAlgebra<F>) -> AlgebraFile {
        let f = l.field();
        let n = l.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<Term> = l
                    .basis_product(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(k, c)| Term { k, c: f.format(c) })
                    .collect();
                if !terms.is_empty() {
                    products.push(ProductEntry { i, j, terms });
                }
            }
        }
        AlgebraFile {
            field: field_to_json(f.spec()),
            dim: n,
            basis: Some(l.names().to_vec()),
            products,
        }
    }
}

/// Parses the algebra file format. Syntax errors carry line and column.
pub fn parse_algebra(text: &str) -> Result<AnyAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_algebra()
}

pub fn serialize_algebra<F: Field>(l: &LeibnizAlgebra<F>) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("plain data serializes")
}

pub fn serialize_any(l: &AnyAlgebra) -> String {
    match l {
        AnyAlgebra::Rational(a) => serialize_algebra(a),
        AnyAlgebra::Prime(a) => serialize_algebra(a),
    }
}

/// Quotient by the span of comma-separated element expressions such as
/// `"a2"` or `"a2-a, b"`. The span must be an ideal.
pub fn quotient_by_spec(l: &AnyAlgebra, spec: &str) -> Result<AnyAlgebra> {
    fn go<F: Field>(l: &LeibnizAlgebra<F>, spec: &str) -> Result<LeibnizAlgebra<F>> {
        let vecs = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| l.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(l.quotient(&l.span(&vecs))?.algebra)
    }
    Ok(match l {
        AnyAlgebra::Rational(a) => go(a, spec)?.into(),
        AnyAlgebra::Prime(a) => go(a, spec)?.into(),
    })
}
