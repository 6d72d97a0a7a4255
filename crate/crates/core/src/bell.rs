//! Bell series: the restriction of an arithmetic function to the powers of
//! one prime, as a truncated power series. Dirichlet convolution becomes the
//! Cauchy product, and a second-order recursion on prime powers becomes the
//! rational series `1 / (1 − f(p)x + g(p)x²)`.
//!
//! Also hosts the unit upper-triangular Toeplitz matrices that realize the
//! same group of p-local multiplicative functions under matrix product.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value as Json};

use crate::arithfn::{conv, is_completely_multiplicative, ArithFn, MultClass};
use crate::error::{Error, Result};
use crate::integers::{divisors, factorize, gcd, is_prime};
use crate::values::{fmt_rational, parse_rational, Value};
use crate::verdict::{Mismatch, Verdict, Witness};

/// Truncated power series `c₀ + c₁x + … + c_N x^N`, optionally tagged with
/// the prime it was taken at. Untagged series combine with any prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellSeries {
    prime: Option<u64>,
    coeffs: Vec<BigRational>,
}

impl BellSeries {
    pub fn new(prime: Option<u64>, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("a series needs at least one coefficient".into()));
        }
        if let Some(p) = prime {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(BellSeries { prime, coeffs })
    }

    /// The series `1` truncated at `order`.
    pub fn unit(prime: Option<u64>, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        BellSeries { prime, coeffs }
    }

    /// A polynomial, zero-padded or truncated to `order`.
    pub fn from_poly(prime: Option<u64>, poly: &[BigRational], order: usize) -> Self {
        let coeffs = (0..=order).map(|k| poly.get(k).cloned().unwrap_or_else(BigRational::zero)).collect();
        BellSeries { prime, coeffs }
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn joint_prime(&self, other: &BellSeries) -> Result<Option<u64>> {
        match (self.prime, other.prime) {
            (Some(p), Some(q)) if p != q => Err(Error::PrimeMismatch(p, q)),
            (p, q) => Ok(p.or(q)),
        }
    }

    /// Multiplicative inverse as a power series; needs c₀ ≠ 0.
    pub fn inverse(&self) -> Result<BellSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = BigRational::one() / c0;
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let acc: BigRational = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out.push(-acc * &inv0);
        }
        Ok(BellSeries { prime: self.prime, coeffs: out })
    }

    pub fn to_json(&self) -> Json {
        json!({
            "p": self.prime,
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
            "series": self.to_string(),
        })
    }
}

/// `c0 + c1*x + c2*x^2 + …`, every coefficient written out.
impl fmt::Display for BellSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match k {
                0 => fmt_rational(c),
                1 => format!("{}*x", fmt_rational(c)),
                _ => format!("{}*x^{k}", fmt_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn prime_power(p: u64, k: usize) -> Result<u64> {
    u32::try_from(k).ok().and_then(|k| p.checked_pow(k)).ok_or(Error::Overflow("prime power"))
}

/// `[f(1), f(p), …, f(p^order)]`.
pub fn bell_of(f: &ArithFn, p: u64, order: usize) -> Result<BellSeries> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let coeffs = (0..=order).map(|k| f.eval_rational(prime_power(p, k)?)).collect::<Result<_>>()?;
    Ok(BellSeries { prime: Some(p), coeffs })
}

/// Cauchy product truncated to the smaller order.
pub fn cauchy_mul(a: &BellSeries, b: &BellSeries) -> Result<BellSeries> {
    let prime = a.joint_prime(b)?;
    let order = a.order().min(b.order());
    let coeffs = (0..=order).map(|k| (0..=k).map(|i| &a.coeffs[i] * &b.coeffs[k - i]).sum()).collect();
    Ok(BellSeries { prime, coeffs })
}

/// Compares bell(f⋆g) with bell(f)·bell(g); the witness is the first
/// mismatching coefficient index.
pub fn bell_conv_identity(f: &ArithFn, g: &ArithFn, p: u64, order: usize) -> Result<Verdict> {
    let lhs = bell_of(&conv(f, g), p, order)?;
    let rhs = cauchy_mul(&bell_of(f, p, order)?, &bell_of(g, p, order)?)?;
    Ok(first_mismatch(&lhs, &rhs))
}

fn first_mismatch(lhs: &BellSeries, rhs: &BellSeries) -> Verdict {
    for (k, (l, r)) in lhs.coeffs.iter().zip(&rhs.coeffs).enumerate() {
        if l != r {
            return Verdict::Fail(Witness {
                at: vec![k as u64],
                mismatch: Mismatch::Values { lhs: Value::rational(l.clone()), rhs: Value::rational(r.clone()) },
            });
        }
    }
    Verdict::Pass
}

/// `1/(1 − cx)` = `[1, c, c², …, c^order]`.
pub fn geometric_bell(c: &BigRational, order: usize) -> BellSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut pow = BigRational::one();
    for _ in 0..=order {
        coeffs.push(pow.clone());
        pow *= c;
    }
    BellSeries { prime: None, coeffs }
}

/// c₀ = 1, c₁ = f_p, c_{n+1} = f_p·c_n − g_p·c_{n−1}.
pub fn recursion_coeffs(f_p: &BigRational, g_p: &BigRational, order: usize) -> BellSeries {
    let mut coeffs = vec![BigRational::one()];
    if order >= 1 {
        coeffs.push(f_p.clone());
    }
    for n in 1..order {
        let next = f_p * &coeffs[n] - g_p * &coeffs[n - 1];
        coeffs.push(next);
    }
    BellSeries { prime: None, coeffs }
}

/// Power-series inverse of `1 − f_p x + g_p x²` to the given order.
pub fn rational_expand(f_p: &BigRational, g_p: &BigRational, order: usize) -> BellSeries {
    let denominator = BellSeries::from_poly(None, &[BigRational::one(), -f_p.clone(), g_p.clone()], order);
    denominator.inverse().expect("constant term is 1")
}

/// Values of f on primes for [`specially_multiplicative`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeValues {
    /// f(p) = c for every prime.
    Constant(BigRational),
    /// f(p) = slope·p + intercept.
    Affine { slope: BigRational, intercept: BigRational },
    /// Listed primes only; every other prime maps to 0.
    Table(BTreeMap<u64, BigRational>),
}

impl PrimeValues {
    pub fn at(&self, p: u64) -> BigRational {
        match self {
            PrimeValues::Constant(c) => c.clone(),
            PrimeValues::Affine { slope, intercept } => slope * BigRational::from_integer(p.into()) + intercept,
            PrimeValues::Table(t) => t.get(&p).cloned().unwrap_or_else(BigRational::zero),
        }
    }

    /// Parses `c`, `p`, `p+c`, `k*p-c` and similar affine forms in `p`.
    pub fn parse(s: &str) -> Result<PrimeValues> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(idx) = compact.find('p') else {
            return Ok(PrimeValues::Constant(parse_rational(&compact)?));
        };
        let bad = || Error::Parse(s.to_string());
        let head = compact[..idx].trim_end_matches('*');
        let slope = match head {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            h => parse_rational(h)?,
        };
        let tail = &compact[idx + 1..];
        let intercept = match tail.chars().next() {
            None => BigRational::zero(),
            Some('+') => parse_rational(&tail[1..])?,
            Some('-') => -parse_rational(&tail[1..])?,
            Some(_) => return Err(bad()),
        };
        Ok(PrimeValues::Affine { slope, intercept })
    }
}

impl fmt::Display for PrimeValues {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeValues::Constant(c) => write!(f, "{}", fmt_rational(c)),
            PrimeValues::Affine { slope, intercept } => {
                write!(f, "{}*p+{}", fmt_rational(slope), fmt_rational(intercept))
            }
            PrimeValues::Table(t) => {
                let parts: Vec<String> = t.iter().map(|(p, c)| format!("{p}:{}", fmt_rational(c))).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// The multiplicative f with f(p) from `f_on_primes` and prime-power values
/// from f(p^{n+1}) = f(p)f(p^n) − g(p)f(p^{n−1}).
///
/// `g` must be completely multiplicative with g(1) = 1; this is verified
/// exhaustively up to `check_bound` before the function is built.
pub fn specially_multiplicative(f_on_primes: PrimeValues, g: &ArithFn, check_bound: u64) -> Result<ArithFn> {
    if g.eval(1)? != Value::one() {
        return Err(Error::NotCompletelyMultiplicative { name: g.name().to_string(), n: 1, m: 1 });
    }
    if let Verdict::Fail(w) = is_completely_multiplicative(g, check_bound) {
        return Err(Error::NotCompletelyMultiplicative { name: g.name().to_string(), n: w.at[0], m: w.at[1] });
    }
    let g = g.clone();
    let name = format!("special({f_on_primes};{g})");
    Ok(ArithFn::from_fn(name, MultClass::Multiplicative, move |n| {
        let mut acc = BigRational::one();
        for &(p, r) in factorize(n)?.pairs() {
            let f_p = f_on_primes.at(p);
            let g_p = g.eval_rational(p)?;
            let series = recursion_coeffs(&f_p, &g_p, r as usize);
            acc *= &series.coeffs[r as usize];
        }
        Ok(Value::rational(acc))
    }))
}

/// f(mn) − [f(m)f(n) − Σ_{d | gcd(m,n), d > 1} g(d) f(mn/d²)].
pub fn product_formula_residual(f: &ArithFn, g: &ArithFn, m: u64, n: u64) -> Result<Value> {
    let mn = m.checked_mul(n).ok_or(Error::Overflow("m·n"))?;
    let mut counter_terms = Value::zero();
    for d in divisors(gcd(m, n)?)?.into_iter().skip(1) {
        counter_terms = &counter_terms + &g.eval(d)?.mul(&f.eval(mn / (d * d))?)?;
    }
    let main = f.eval(m)?.mul(&f.eval(n)?)?;
    Ok(&f.eval(mn)? - &(&main - &counter_terms))
}

/// Dense (K+1)×(K+1) matrix with entries m(a, b) = f(p^{b−a}) above the
/// diagonal, 1 on it and 0 below. `K` is the largest exponent represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzMatrix {
    prime: u64,
    entries: Vec<Vec<BigRational>>,
}

impl ToeplitzMatrix {
    pub fn identity(prime: u64, k: usize) -> Self {
        let entries = (0..=k)
            .map(|a| (0..=k).map(|b| if a == b { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        ToeplitzMatrix { prime, entries }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize) -> &BigRational {
        &self.entries[a][b]
    }

    pub fn row(&self, a: usize) -> &[BigRational] {
        &self.entries[a]
    }

    /// Upper triangular, unit diagonal, constant along every diagonal.
    pub fn is_unit_upper_toeplitz(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| match a.cmp(&b) {
                std::cmp::Ordering::Greater => self.entries[a][b].is_zero(),
                std::cmp::Ordering::Equal => self.entries[a][b].is_one(),
                std::cmp::Ordering::Less => self.entries[a][b] == self.entries[0][b - a],
            })
        })
    }

    /// Row-major TSV, one matrix row per line.
    pub fn to_tsv(&self) -> String {
        self.entries
            .iter()
            .map(|row| row.iter().map(fmt_rational).collect::<Vec<_>>().join("\t") + "\n")
            .collect()
    }

    pub fn to_json(&self) -> Json {
        json!({
            "p": self.prime,
            "rows": self.entries.iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// φ(f) restricted to exponents 0..=k at the prime p. Requires f(1) = 1.
pub fn toeplitz_of(f: &ArithFn, p: u64, k: usize) -> Result<ToeplitzMatrix> {
    let f1 = f.eval(1)?;
    if f1 != Value::one() {
        return Err(Error::NotNormalized(f1.to_string()));
    }
    let row = bell_of(f, p, k)?;
    let entries = (0..=k)
        .map(|a| (0..=k).map(|b| if b >= a { row.coeffs[b - a].clone() } else { BigRational::zero() }).collect())
        .collect();
    Ok(ToeplitzMatrix { prime: p, entries })
}

/// Plain matrix product.
pub fn toeplitz_mul(a: &ToeplitzMatrix, b: &ToeplitzMatrix) -> Result<ToeplitzMatrix> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    let entries = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a.entries[i][k] * &b.entries[k][j]).sum()).collect())
        .collect();
    Ok(ToeplitzMatrix { prime: a.prime, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfn::{builtin, inverse};
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn bell_of_examples() {
        let mu = ArithFn::mobius();
        for p in [2, 3, 5, 101] {
            assert_eq!(bell_of(&mu, p, 4).unwrap().coeffs(), row(&[1, -1, 0, 0, 0]));
            assert_eq!(bell_of(&ArithFn::one(), p, 5).unwrap().coeffs(), row(&[1; 6]));
        }
        // φ_2(x) = (1 − x)/(1 − 2x): expand as (1 − x)·Σ 2^k x^k
        let expansion = cauchy_mul(
            &BellSeries::from_poly(None, &row(&[1, -1]), 4),
            &geometric_bell(&q(2), 4),
        )
        .unwrap();
        assert_eq!(expansion.coeffs(), row(&[1, 1, 2, 4, 8]));
        assert_eq!(bell_of(&ArithFn::totient(), 2, 4).unwrap(), BellSeries { prime: Some(2), ..expansion });
        assert_eq!(bell_of(&mu, 4, 3), Err(Error::NotPrime(4)));
        assert!(matches!(bell_of(&ArithFn::von_mangoldt(), 2, 3), Err(Error::NotRational(_))));
    }

    #[test]
    fn cauchy_examples() {
        let (mu, one) = (ArithFn::mobius(), ArithFn::one());
        let prod = cauchy_mul(&bell_of(&mu, 3, 6).unwrap(), &bell_of(&one, 3, 6).unwrap()).unwrap();
        assert_eq!(prod.coeffs(), row(&[1, 0, 0, 0, 0, 0, 0]));
        let tau = cauchy_mul(&bell_of(&one, 2, 6).unwrap(), &bell_of(&one, 2, 4).unwrap()).unwrap();
        assert_eq!(tau.coeffs(), row(&[1, 2, 3, 4, 5]));
        let phi = bell_of(&ArithFn::totient(), 5, 5).unwrap();
        assert_eq!(cauchy_mul(&phi, &BellSeries::unit(None, 5)).unwrap(), phi);
        let err = cauchy_mul(&bell_of(&one, 2, 3).unwrap(), &bell_of(&one, 3, 3).unwrap());
        assert_eq!(err, Err(Error::PrimeMismatch(2, 3)));
    }

    #[test]
    fn conv_identity_examples() {
        let (mu, n, one) = (ArithFn::mobius(), ArithFn::identity(), ArithFn::one());
        assert!(bell_conv_identity(&mu, &n, 3, 8).unwrap().is_pass());
        assert!(bell_conv_identity(&one, &one, 2, 12).unwrap().is_pass());
        assert!(bell_conv_identity(&ArithFn::unit(), &ArithFn::totient(), 7, 6).unwrap().is_pass());
    }

    #[test]
    fn conv_identity_reports_first_mismatch() {
        let a = BellSeries::from_poly(Some(2), &row(&[1, 2, 3]), 2);
        let b = BellSeries::from_poly(Some(2), &row(&[1, 2, 4]), 2);
        assert_eq!(first_mismatch(&a, &b).witness().unwrap().at, vec![2]);
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_bell(&q(1), 4).coeffs(), row(&[1; 5]));
        let n = ArithFn::identity();
        assert_eq!(geometric_bell(&q(3), 5).coeffs(), bell_of(&n, 3, 5).unwrap().coeffs());
        assert_eq!(geometric_bell(&q(2), 5).coeffs(), bell_of(&ArithFn::nu(), 7, 5).unwrap().coeffs());
    }

    #[test]
    fn recursion_and_rational_examples() {
        let tau_oracle: Vec<i64> = (0..8).map(|n| crate::integers::divisor_count(2u64.pow(n)).unwrap() as i64).collect();
        assert_eq!(recursion_coeffs(&q(2), &q(1), 7).coeffs(), row(&tau_oracle));
        assert_eq!(recursion_coeffs(&q(0), &q(0), 4).coeffs(), row(&[1, 0, 0, 0, 0]));
        let c = BigRational::new(3.into(), 7.into());
        assert_eq!(recursion_coeffs(&c, &q(0), 6).coeffs(), geometric_bell(&c, 6).coeffs());
        assert_eq!(rational_expand(&q(2), &q(1), 6).coeffs(), row(&[1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(rational_expand(&q(0), &q(0), 3).coeffs(), row(&[1, 0, 0, 0]));
        assert_eq!(rational_expand(&q(1), &q(0), 4).coeffs(), row(&[1, 1, 1, 1, 1]));
        assert_eq!(recursion_coeffs(&q(5), &q(1), 0).coeffs(), row(&[1]));
    }

    #[test]
    fn series_inverse() {
        let one = bell_of(&ArithFn::one(), 2, 8).unwrap();
        assert_eq!(one.inverse().unwrap(), bell_of(&ArithFn::mobius(), 2, 8).unwrap());
        let zero_head = BellSeries::from_poly(None, &row(&[0, 1]), 3);
        assert_eq!(zero_head.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn prime_value_parsing() {
        assert_eq!(PrimeValues::parse("2").unwrap(), PrimeValues::Constant(q(2)));
        let sigma = PrimeValues::parse("p+1").unwrap();
        assert_eq!(sigma.at(5), q(6));
        assert_eq!(PrimeValues::parse("2*p - 1").unwrap().at(3), q(5));
        assert_eq!(PrimeValues::parse("-p").unwrap().at(7), q(-7));
        assert_eq!(PrimeValues::parse("1/2p+1/2").unwrap().at(3), q(2));
        assert!(PrimeValues::parse("p^2").is_err());
        assert!(PrimeValues::parse("x").is_err());
        let table = PrimeValues::Table(BTreeMap::from([(2, q(3))]));
        assert_eq!(table.at(2), q(3));
        assert_eq!(table.at(3), q(0));
    }

    #[test]
    fn specially_multiplicative_examples() {
        let tau = specially_multiplicative(PrimeValues::Constant(q(2)), &ArithFn::one(), 500).unwrap();
        let zeta2 = conv(&ArithFn::one(), &ArithFn::one());
        let sigma = specially_multiplicative(PrimeValues::parse("p+1").unwrap(), &ArithFn::identity(), 500).unwrap();
        let sigma_oracle = conv(&ArithFn::one(), &ArithFn::identity());
        for n in 1..=500 {
            assert_eq!(tau.eval(n).unwrap(), zeta2.eval(n).unwrap());
            assert_eq!(sigma.eval(n).unwrap(), sigma_oracle.eval(n).unwrap());
        }
        // g = u vanishes on primes: f(p^k) = f(p)^k, so f(p) = 1 gives ζ
        let flat = specially_multiplicative(PrimeValues::Constant(q(1)), &ArithFn::unit(), 200).unwrap();
        assert!((1..=200).all(|n| flat.eval(n).unwrap() == Value::one()));
    }

    #[test]
    fn specially_multiplicative_rejects_bad_weights() {
        let err = specially_multiplicative(PrimeValues::Constant(q(2)), &ArithFn::mobius(), 100).unwrap_err();
        assert_eq!(err, Error::NotCompletelyMultiplicative { name: "mu".into(), n: 2, m: 2 });
        let two = ArithFn::from_fn("two", MultClass::Unknown, |_| Ok(Value::int(2)));
        assert!(specially_multiplicative(PrimeValues::Constant(q(2)), &two, 100).is_err());
    }

    #[test]
    fn product_formula_examples() {
        let one = ArithFn::one();
        let tau = specially_multiplicative(PrimeValues::Constant(q(2)), &one, 100).unwrap();
        assert!(product_formula_residual(&tau, &one, 2, 2).unwrap().is_zero());
        assert!(product_formula_residual(&tau, &one, 9, 16).unwrap().is_zero());
        let n = ArithFn::identity();
        let sigma = specially_multiplicative(PrimeValues::parse("p+1").unwrap(), &n, 100).unwrap();
        assert_eq!(sigma.eval(24).unwrap(), Value::int(60));
        assert!(product_formula_residual(&sigma, &n, 4, 6).unwrap().is_zero());
        // with the wrong weight the counter terms no longer match
        assert!(!product_formula_residual(&sigma, &one, 4, 6).unwrap().is_zero());
    }

    #[test]
    fn toeplitz_examples() {
        let (mu, one, n) = (ArithFn::mobius(), ArithFn::one(), ArithFn::identity());
        let prod = toeplitz_mul(&toeplitz_of(&mu, 2, 4).unwrap(), &toeplitz_of(&one, 2, 4).unwrap()).unwrap();
        assert_eq!(prod, ToeplitzMatrix::identity(2, 4));
        let z = toeplitz_of(&one, 2, 3).unwrap();
        assert_eq!(z.row(0), row(&[1, 1, 1, 1]).as_slice());
        assert_eq!(z.row(2), row(&[0, 0, 1, 1]).as_slice());
        assert!(z.is_unit_upper_toeplitz());
        let lhs = toeplitz_mul(&toeplitz_of(&n, 3, 8).unwrap(), &toeplitz_of(&mu, 3, 8).unwrap()).unwrap();
        assert_eq!(lhs, toeplitz_of(&conv(&n, &mu), 3, 8).unwrap());
        assert!(lhs.is_unit_upper_toeplitz());
        let inv = toeplitz_mul(&toeplitz_of(&n, 5, 8).unwrap(), &toeplitz_of(&inverse(&n), 5, 8).unwrap()).unwrap();
        assert_eq!(inv, ToeplitzMatrix::identity(5, 8));
    }

    #[test]
    fn toeplitz_errors() {
        let two = ArithFn::from_fn("two", MultClass::Unknown, |_| Ok(Value::int(2)));
        assert_eq!(toeplitz_of(&two, 2, 3), Err(Error::NotNormalized("2".into())));
        let a = toeplitz_of(&ArithFn::one(), 2, 3).unwrap();
        let b = toeplitz_of(&ArithFn::one(), 3, 3).unwrap();
        let c = toeplitz_of(&ArithFn::one(), 2, 4).unwrap();
        assert_eq!(toeplitz_mul(&a, &b), Err(Error::PrimeMismatch(2, 3)));
        assert_eq!(toeplitz_mul(&a, &c), Err(Error::DimensionMismatch(4, 5)));
    }

    #[test]
    fn matrix_row_is_bell_series() {
        for name in ["mu", "one", "N", "phi", "tau", "nu"] {
            let f = builtin(name).unwrap();
            for p in [2, 3, 5] {
                assert_eq!(toeplitz_of(&f, p, 8).unwrap().row(0), bell_of(&f, p, 8).unwrap().coeffs());
            }
        }
    }

    #[test]
    fn rendering() {
        let s = bell_of(&ArithFn::mobius(), 2, 3).unwrap();
        assert_eq!(s.to_string(), "1 + -1*x + 0*x^2 + 0*x^3");
        assert_eq!(s.to_json()["coeffs"], json!(["1", "-1", "0", "0"]));
        let m = toeplitz_of(&ArithFn::identity(), 2, 2).unwrap();
        assert_eq!(m.to_tsv(), "1\t2\t4\n0\t1\t2\n0\t0\t1\n");
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn recursion_equals_rational(f_p in arb_rational(), g_p in arb_rational(), order in 0usize..20) {
            prop_assert_eq!(recursion_coeffs(&f_p, &g_p, order), rational_expand(&f_p, &g_p, order));
        }

        #[test]
        fn inverse_roundtrip(coeffs in proptest::collection::vec(arb_rational(), 1..10)) {
            prop_assume!(!coeffs[0].is_zero());
            let s = BellSeries::new(None, coeffs).unwrap();
            let prod = cauchy_mul(&s, &s.inverse().unwrap()).unwrap();
            prop_assert_eq!(prod, BellSeries::unit(None, s.order()));
        }
    }
}
