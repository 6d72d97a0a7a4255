//! Exact scalars: a rational part plus a formal ℚ-linear combination of
//! `log p` symbols. This makes `Λ(n)` and `log n` exact, so identities such
//! as `Σ_{d|n} Λ(d) = log n` become structural equalities.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::integers::factorize;

/// `q + Σ_p c_p · log p`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Value {
    q: BigRational,
    logs: BTreeMap<u64, BigRational>,
}

impl Value {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Value { q, logs: BTreeMap::new() }
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    /// Builds a value from a rational part and log coefficients, dropping zeros.
    pub fn new(q: BigRational, logs: impl IntoIterator<Item = (u64, BigRational)>) -> Self {
        let mut v = Value::rational(q);
        for (p, c) in logs {
            v.add_log(p, c);
        }
        v
    }

    /// `c · log p` for a single prime symbol.
    pub fn log_prime(p: u64, c: BigRational) -> Self {
        Value::new(BigRational::zero(), [(p, c)])
    }

    fn add_log(&mut self, p: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.logs.entry(p).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.logs.remove(&p);
        }
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn logs(&self) -> &BTreeMap<u64, BigRational> {
        &self.logs
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.logs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.logs.is_empty()
    }

    /// The rational part, or `NotRational` if a log part is present.
    pub fn as_rational(&self) -> Result<&BigRational> {
        if self.is_rational() {
            Ok(&self.q)
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn into_rational(self) -> Result<BigRational> {
        if self.is_rational() {
            Ok(self.q)
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Value {
        if c.is_zero() {
            return Value::zero();
        }
        Value {
            q: &self.q * c,
            logs: self.logs.iter().map(|(&p, k)| (p, k * c)).collect(),
        }
    }

    /// Product in the value domain. Defined unless both factors carry logs.
    pub fn mul(&self, other: &Value) -> Result<Value> {
        match (self.is_rational(), other.is_rational()) {
            (false, false) => Err(Error::LogProductUndefined),
            (true, _) => Ok(other.scale(&self.q)),
            (false, true) => Ok(self.scale(&other.q)),
        }
    }

    /// Numeric approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        self.logs.iter().fold(q, |acc, (&p, c)| acc + c.to_f64().unwrap_or(f64::NAN) * (p as f64).ln())
    }

    pub fn to_json(&self) -> Json {
        let logs: Map<String, Json> = self.logs.iter().map(|(p, c)| (p.to_string(), json!(fmt_rational(c)))).collect();
        json!({ "q": fmt_rational(&self.q), "L": logs })
    }

    pub fn from_json(value: &Json) -> Result<Value> {
        let bad = || Error::Parse(value.to_string());
        let q = value.get("q").and_then(Json::as_str).ok_or_else(bad)?;
        let mut v = Value::rational(parse_rational(q)?);
        if let Some(logs) = value.get("L") {
            for (p, c) in logs.as_object().ok_or_else(bad)? {
                let p: u64 = p.parse().map_err(|_| bad())?;
                v.add_log(p, parse_rational(c.as_str().ok_or_else(bad)?)?);
            }
        }
        Ok(v)
    }
}

/// `log n` as the formal combination `Σ r_i log p_i`; `log 1 = 0`.
pub fn v_log(n: u64) -> Result<Value> {
    let fac = factorize(n)?;
    Ok(Value::new(
        BigRational::zero(),
        fac.pairs().iter().map(|&(p, r)| (p, BigRational::from_integer(r.into()))),
    ))
}

impl Add for &Value {
    type Output = Value;

    fn add(self, rhs: &Value) -> Value {
        let mut out = self.clone();
        out.q += &rhs.q;
        for (&p, c) in &rhs.logs {
            out.add_log(p, c.clone());
        }
        out
    }
}

impl Add for Value {
    type Output = Value;

    fn add(self, rhs: Value) -> Value {
        &self + &rhs
    }
}

impl Neg for &Value {
    type Output = Value;

    fn neg(self) -> Value {
        Value {
            q: -&self.q,
            logs: self.logs.iter().map(|(&p, c)| (p, -c)).collect(),
        }
    }
}

impl Neg for Value {
    type Output = Value;

    fn neg(self) -> Value {
        -&self
    }
}

impl Sub for &Value {
    type Output = Value;

    fn sub(self, rhs: &Value) -> Value {
        self + &(-rhs)
    }
}

impl Sub for Value {
    type Output = Value;

    fn sub(self, rhs: Value) -> Value {
        &self - &rhs
    }
}

impl std::iter::Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| &acc + &v)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::int(n)
    }
}

impl From<BigInt> for Value {
    fn from(n: BigInt) -> Self {
        Value::int(n)
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::rational(q)
    }
}

/// `p/q`, or just `p` for integers.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Rendering: the rational part (omitted when zero and logs are present),
/// then `c*log(p)` terms, all joined by `+`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.q.is_zero() || self.logs.is_empty() {
            parts.push(fmt_rational(&self.q));
        }
        for (p, c) in &self.logs {
            parts.push(format!("{}*log({p})", fmt_rational(c)));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Value> {
        let bad = || Error::Parse(s.to_string());
        if s.trim().is_empty() {
            return Err(bad());
        }
        let mut v = Value::zero();
        for term in s.split('+') {
            match term.split_once("*log(") {
                Some((c, rest)) => {
                    let p = rest.strip_suffix(')').ok_or_else(bad)?;
                    let p: u64 = p.trim().parse().map_err(|_| bad())?;
                    v.add_log(p, parse_rational(c)?);
                }
                None => v.q += parse_rational(term)?,
            }
        }
        Ok(v)
    }
}
