//! Polynomial serialization.
//!
//! Wire format: {"vars":[..],"terms":[{"exp":[..],"num":"..","den":".."}]}
//! with decimal-string integers and terms in ascending graded-lex order,
//! so serialization is byte-stable across runs.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::poly::MultiPoly;
use super::rational::Rational;

pub fn poly_to_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            json!({
                "exp": m.padded(p.nvars()),
                "num": c.numer().to_string(),
                "den": c.denom().to_string(),
            })
        })
        .collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn poly_from_json(v: &Value) -> Result<MultiPoly> {
    let bad = |msg: &str| Error::InvalidParameter(format!("polynomial JSON: {msg}"));
    let vars: Vec<String> = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing vars"))?
        .iter()
        .map(|s| s.as_str().map(String::from))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("vars must be strings"))?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing terms"))?;
    let mut p = MultiPoly::zero(vars.clone());
    for t in terms {
        let exp: Vec<i64> = t
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term missing exp"))?
            .iter()
            .map(|e| e.as_i64())
            .collect::<Option<_>>()
            .ok_or_else(|| bad("exp entries must be integers"))?;
        if exp.len() != vars.len() {
            return Err(bad("exp length differs from vars length"));
        }
        let num: BigInt = t
            .get("num")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term missing num"))?
            .parse()
            .map_err(|_| bad("num is not a decimal integer"))?;
        let den: BigInt = t
            .get("den")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("term missing den"))?
            .parse()
            .map_err(|_| bad("den is not a decimal integer"))?;
        if den <= BigInt::from(0) {
            return Err(bad("den must be positive"));
        }
        p.add_term(super::monomial::Monomial::new(exp), Rational::new(num, den));
    }
    Ok(p)
}
