use std::sync::Arc;

use serde_json::{json, Value};

use super::{format_rational, parse_rational, Monomial, Polynomial, VarRegistry};
use crate::error::{Error, Result};

impl Polynomial {
    /// Canonical JSON: an array of `{"c": "num/den", "m": [[var, exp], ...]}`
    /// with the leading (largest in grevlex) term first.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .rev()
                .map(|(m, c)| {
                    let pairs: Vec<Value> = m.iter().map(|(v, e)| json!([v, e])).collect();
                    json!({ "c": format_rational(c), "m": pairs })
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value, reg: &Arc<VarRegistry>) -> Result<Polynomial> {
        let bad = |msg: &str| Error::Parse(format!("polynomial: {msg}"));
        let terms = value.as_array().ok_or_else(|| bad("expected an array of terms"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let c = t
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("term without string coefficient `c`"))?;
            let c = parse_rational(c)?;
            let m = t
                .get("m")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without monomial `m`"))?;
            let mut pairs = Vec::with_capacity(m.len());
            for pair in m {
                let pair = pair.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("monomial entries must be [var, exp]"))?;
                let v = pair[0].as_u64().ok_or_else(|| bad("variable id must be a nonnegative integer"))? as usize;
                let e = pair[1]
                    .as_u64()
                    .filter(|&e| e > 0 && e <= u32::MAX as u64)
                    .ok_or_else(|| bad("exponent must be a positive integer"))? as u32;
                pairs.push((v, e));
            }
            parsed.push((c, Monomial::from_pairs(pairs)));
        }
        Polynomial::from_terms(reg, parsed)
    }
}

impl VarRegistry {
    pub fn to_json(&self) -> Value {
        json!(self.names())
    }

    pub fn from_json(value: &Value) -> Result<Arc<VarRegistry>> {
        let names = value
            .as_array()
            .ok_or_else(|| Error::Parse("registry must be an array of names".into()))?
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Parse("variable names must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VarRegistry::new(names))
    }
}
