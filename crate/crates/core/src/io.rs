//! JSON forms of scalars, matrices and dynamical matrices.
//!
//! Rationals are "p/q" strings. A q-Laurent scalar is a map from t-exponent to
//! coefficient with t = q^{1/(2n)}; exponents off that lattice are written as
//! "p/q" keys. Dynamical entries are {num, den} lists of [exponents, coeff].

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactring::{Exp, MPoly, Mono, RatFunc, Ring, Scalar, TSeries, MAX_VARS, Q};
use crate::liecore::RepTensor;

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn q_to_string(c: &Q) -> String {
    Scalar::fmt_q(c)
}

pub fn q_parse(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| bad(format!("not a rational: {s:?}")))
}

fn exp_key(e: &Exp, n: usize) -> String {
    let t = e * Exp::from_integer(2 * n as i64);
    if t.is_integer() {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

fn exp_parse(s: &str, n: usize) -> Result<Exp> {
    let t = Exp::from_str(s.trim()).map_err(|_| bad(format!("not an exponent: {s:?}")))?;
    Ok(t / Exp::from_integer(2 * n as i64))
}

/// Coefficient types with a JSON form; `n` fixes the t-lattice.
pub trait JsonCoeff: Ring {
    fn to_json(&self, n: usize) -> Value;
    fn from_json(v: &Value, n: usize) -> Result<Self>;
}

impl JsonCoeff for Q {
    fn to_json(&self, _n: usize) -> Value {
        Value::String(q_to_string(self))
    }
    fn from_json(v: &Value, _n: usize) -> Result<Self> {
        q_parse(v.as_str().ok_or_else(|| bad("rational must be a string"))?)
    }
}

impl JsonCoeff for Scalar {
    fn to_json(&self, n: usize) -> Value {
        let mut m = Map::new();
        for (e, c) in self.terms() {
            m.insert(exp_key(e, n), Value::String(q_to_string(c)));
        }
        Value::Object(m)
    }
    fn from_json(v: &Value, n: usize) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| bad("scalar must be an object"))?;
        let mut out = Scalar::zero();
        for (k, c) in m {
            let c = q_parse(c.as_str().ok_or_else(|| bad("coefficient must be a string"))?)?;
            out.add_term(exp_parse(k, n)?, &c);
        }
        Ok(out)
    }
}

fn index(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

/// {n, arity, entries: [[row, col, value], ...]}, nonzero entries in row-major order.
pub fn tensor_to_json<C: JsonCoeff>(t: &RepTensor<C>) -> Value {
    let n = t.n();
    let entries: Vec<Value> = t.entries().map(|(r, c, v)| json!([r, c, v.to_json(n)])).collect();
    json!({ "n": n, "arity": t.arity(), "entries": entries })
}

fn header(v: &Value) -> Result<(usize, usize, &Vec<Value>)> {
    let n = index(&v["n"], "n")?;
    let arity = index(&v["arity"], "arity")?;
    if !(2..=8).contains(&n) || !(1..=3).contains(&arity) {
        return Err(bad(format!("unsupported shape n = {n}, arity = {arity}")));
    }
    let entries = v["entries"].as_array().ok_or_else(|| bad("entries must be an array"))?;
    Ok((n, arity, entries))
}

fn entry_parts(e: &Value, dim: usize) -> Result<(usize, usize, &Value)> {
    let a = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry must be [row, col, value]"))?;
    let (r, c) = (index(&a[0], "row")?, index(&a[1], "col")?);
    if r >= dim || c >= dim {
        return Err(bad(format!("entry ({r}, {c}) out of range")));
    }
    Ok((r, c, &a[2]))
}

pub fn tensor_from_json<C: JsonCoeff>(v: &Value) -> Result<RepTensor<C>> {
    let (n, arity, entries) = header(v)?;
    let mut t = RepTensor::zero(n, arity);
    for e in entries {
        let (r, c, x) = entry_parts(e, t.dim())?;
        t.add_at(r, c, &C::from_json(x, n)?);
    }
    Ok(t)
}

fn terms_to_json<'a, C: JsonCoeff + 'a>(terms: impl Iterator<Item = (&'a Mono, &'a C)>, vars: usize, n: usize) -> Value {
    Value::Array(terms.map(|(m, c)| json!([m[..vars].to_vec(), c.to_json(n)])).collect())
}

fn terms_from_json<C: JsonCoeff>(v: &Value, n: usize) -> Result<MPoly<C>> {
    let mut p = MPoly::zero();
    for t in v.as_array().ok_or_else(|| bad("term list must be an array"))? {
        let a = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("term must be [exponents, coeff]"))?;
        let exps = a[0].as_array().ok_or_else(|| bad("exponents must be an array"))?;
        if exps.len() > MAX_VARS {
            return Err(bad("too many variables"));
        }
        let mut m: Mono = [0; MAX_VARS];
        for (i, e) in exps.iter().enumerate() {
            m[i] = e.as_i64().ok_or_else(|| bad("exponent must be an integer"))? as i32;
        }
        p.add_term(m, &C::from_json(&a[1], n)?);
    }
    Ok(p)
}

/// Rational-function entries as {num, den}.
pub fn ratfunc_tensor_to_json<C: JsonCoeff>(t: &RepTensor<RatFunc<C>>, vars: usize) -> Value {
    let n = t.n();
    let entries: Vec<Value> = t
        .entries()
        .map(|(r, c, v)| {
            json!([r, c, { "num": terms_to_json(v.num().terms(), vars, n), "den": terms_to_json(v.den().terms(), vars, n) }])
        })
        .collect();
    json!({ "n": n, "arity": t.arity(), "vars": vars, "entries": entries })
}

pub fn ratfunc_tensor_from_json<C: JsonCoeff>(v: &Value) -> Result<RepTensor<RatFunc<C>>> {
    let (n, arity, entries) = header(v)?;
    let mut t = RepTensor::zero(n, arity);
    for e in entries {
        let (r, c, x) = entry_parts(e, t.dim())?;
        let den = terms_from_json::<C>(&x["den"], n)?;
        if den.is_zero() {
            return Err(bad(format!("zero denominator at ({r}, {c})")));
        }
        t.add_at(r, c, &RatFunc::new(terms_from_json(&x["num"], n)?, den));
    }
    Ok(t)
}

/// Truncated series entries as {num, den} with den = 1, plus the truncation order.
pub fn series_tensor_to_json(t: &RepTensor<TSeries<Scalar>>, vars: usize, order: u32) -> Value {
    let n = t.n();
    let one = MPoly::<Scalar>::one();
    let entries: Vec<Value> = t
        .entries()
        .map(|(r, c, v)| json!([r, c, { "num": terms_to_json(v.terms(), vars, n), "den": terms_to_json(one.terms(), vars, n) }]))
        .collect();
    json!({ "n": n, "arity": t.arity(), "vars": vars, "order": order, "entries": entries })
}

pub fn series_tensor_from_json(v: &Value) -> Result<(RepTensor<TSeries<Scalar>>, u32)> {
    let (n, arity, entries) = header(v)?;
    let order = index(&v["order"], "order")? as u32;
    let mut t = RepTensor::zero(n, arity);
    for e in entries {
        let (r, c, x) = entry_parts(e, t.dim())?;
        let den = terms_from_json::<Scalar>(&x["den"], n)?;
        if den != MPoly::one() {
            return Err(bad(format!("series entry ({r}, {c}) has a nontrivial denominator")));
        }
        let num = terms_from_json::<Scalar>(&x["num"], n)?;
        t.add_at(r, c, &TSeries::exact(&num).truncated(order));
    }
    Ok((t.map(|v| v.truncated(order)), order))
}

/// Pretty JSON with a trailing newline; key order is canonical.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bdtriples::BDTriple;
    use crate::classical::r_t;
    use crate::exactring::q_from;
    use crate::liecore::standard_R;
    use crate::quantum::dynamical_J_T;

    #[test]
    fn scalar_keys_use_t_lattice() {
        let s = &Scalar::q_pow(Exp::new(1, 2)) - &Scalar::q_pow(Exp::new(-1, 3)).scale(&q_from(3, 4));
        let v = s.to_json(3);
        assert_eq!(v, json!({ "3": "1", "-2": "-3/4" }));
        assert_eq!(Scalar::from_json(&v, 3).unwrap(), s);
        let off = Scalar::q_pow(Exp::new(3, 10));
        assert_eq!(off.to_json(2), json!({ "6/5": "1" }));
        assert_eq!(Scalar::from_json(&off.to_json(2), 2).unwrap(), off);
    }

    #[test]
    fn round_trips() {
        let r = standard_R(3);
        assert_eq!(tensor_from_json::<Scalar>(&tensor_to_json(&r)).unwrap(), r);
        let c = r_t(&BDTriple::identity(2)).unwrap();
        let v = ratfunc_tensor_to_json(&c.tensor, 1);
        assert_eq!(ratfunc_tensor_from_json::<Q>(&v).unwrap(), c.tensor);
        let j = dynamical_J_T(&BDTriple::flip(3), 4).unwrap();
        let v = series_tensor_to_json(&j.tensor, 1, 4);
        let (back, order) = series_tensor_from_json(&v).unwrap();
        assert_eq!(order, 4);
        assert_eq!(back, j.tensor);
        assert_eq!(to_pretty(&v), to_pretty(&series_tensor_to_json(&back, 1, 4)));
    }

    #[test]
    fn rejects_malformed() {
        assert!(tensor_from_json::<Scalar>(&json!({"n": 2, "arity": 2, "entries": [[9, 0, {}]]})).is_err());
        assert!(tensor_from_json::<Scalar>(&json!({"n": 1, "arity": 2, "entries": []})).is_err());
        assert!(tensor_from_json::<Q>(&json!({"n": 2, "arity": 2, "entries": [[0, 0, "x"]]})).is_err());
    }
}
