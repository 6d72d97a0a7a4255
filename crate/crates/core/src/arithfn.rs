//! Arithmetic functions and the Dirichlet convolution ring.
//!
//! An [`ArithFn`] is a cheap, clonable handle to a deterministic evaluator
//! `n ↦ f(n)` with a transparent memo cache. Ring operations build new
//! handles that evaluate lazily through their operands, so composite
//! expressions such as `conv(mu, N)` cost one divisor sum per argument.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, Weak};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::integers::{divisors, factorize, gcd};
use crate::values::{v_log, Value};
use crate::verdict::Verdict;

/// Advisory multiplicativity certificate. Checks never trust it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MultClass {
    Unknown,
    Multiplicative,
    CompletelyMultiplicative,
}

type Eval = dyn Fn(u64) -> Result<Value> + Send + Sync;

struct Inner {
    name: String,
    mult_class: MultClass,
    eval: Box<Eval>,
    memo: Mutex<HashMap<u64, Value>>,
}

#[derive(Clone)]
pub struct ArithFn {
    inner: Arc<Inner>,
}

impl fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithFn")
            .field("name", &self.inner.name)
            .field("mult_class", &self.inner.mult_class)
            .finish()
    }
}

impl fmt::Display for ArithFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.inner.name)
    }
}

impl ArithFn {
    /// Wraps an evaluator. The evaluator is only ever called with `n >= 1`.
    pub fn from_fn<F>(name: impl Into<String>, mult_class: MultClass, eval: F) -> Self
    where
        F: Fn(u64) -> Result<Value> + Send + Sync + 'static,
    {
        ArithFn {
            inner: Arc::new(Inner {
                name: name.into(),
                mult_class,
                eval: Box::new(eval),
                memo: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// Like [`ArithFn::from_fn`], but the evaluator may call back into the
    /// function being defined (for recursions over proper divisors).
    fn recursive<F>(name: String, mult_class: MultClass, eval: F) -> Self
    where
        F: Fn(&ArithFn, u64) -> Result<Value> + Send + Sync + 'static,
    {
        let inner = Arc::new_cyclic(|weak: &Weak<Inner>| {
            let weak = weak.clone();
            Inner {
                name,
                mult_class,
                eval: Box::new(move |n| {
                    let inner = weak.upgrade().expect("evaluated after drop");
                    eval(&ArithFn { inner }, n)
                }),
                memo: Mutex::new(HashMap::new()),
            }
        });
        ArithFn { inner }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn mult_class(&self) -> MultClass {
        self.inner.mult_class
    }

    pub fn eval(&self, n: u64) -> Result<Value> {
        if n == 0 {
            return Err(Error::ZeroArgument("n"));
        }
        if let Some(v) = self.inner.memo.lock().expect("memo poisoned").get(&n) {
            return Ok(v.clone());
        }
        // the lock is released while evaluating so recursive evaluators can re-enter
        let v = (self.inner.eval)(n)?;
        self.inner.memo.lock().expect("memo poisoned").insert(n, v.clone());
        Ok(v)
    }

    /// Evaluates and requires a rational result.
    pub fn eval_rational(&self, n: u64) -> Result<BigRational> {
        self.eval(n)?.into_rational()
    }

    pub fn tabulate(&self, upto: u64) -> Result<Vec<(u64, Value)>> {
        (1..=upto).map(|n| Ok((n, self.eval(n)?))).collect()
    }

    /// u(n) = δ_{n,1}, the convolution unit.
    pub fn unit() -> Self {
        Self::from_fn("u", MultClass::CompletelyMultiplicative, |n| Ok(Value::int(i64::from(n == 1))))
    }

    /// ζ(n) = 1.
    pub fn one() -> Self {
        Self::from_fn("one", MultClass::CompletelyMultiplicative, |_| Ok(Value::one()))
    }

    pub fn zero() -> Self {
        Self::from_fn("zero", MultClass::Unknown, |_| Ok(Value::zero()))
    }

    /// N(n) = n.
    pub fn identity() -> Self {
        Self::from_fn("N", MultClass::CompletelyMultiplicative, |n| Ok(Value::int(n)))
    }

    /// n ↦ n^k.
    pub fn power(k: u32) -> Self {
        Self::from_fn(format!("pow({k})"), MultClass::CompletelyMultiplicative, move |n| {
            Ok(Value::int(num_traits::pow(BigInt::from(n), k as usize)))
        })
    }

    pub fn mobius() -> Self {
        Self::from_fn("mu", MultClass::Multiplicative, |n| {
            let fac = factorize(n)?;
            Ok(Value::int(mobius_of(&fac)))
        })
    }

    /// φ(n) = ∏ p^(r-1) (p - 1), from the factorization.
    pub fn totient() -> Self {
        Self::from_fn("phi", MultClass::Multiplicative, |n| {
            let fac = factorize(n)?;
            let phi = fac
                .pairs()
                .iter()
                .fold(BigInt::one(), |acc, &(p, r)| acc * num_traits::pow(BigInt::from(p), r as usize - 1) * (p - 1));
            Ok(Value::int(phi))
        })
    }

    /// Λ(n) = log p when n = p^m, zero otherwise.
    pub fn von_mangoldt() -> Self {
        Self::from_fn("lambda", MultClass::Unknown, |n| {
            let fac = factorize(n)?;
            Ok(match fac.pairs() {
                [(p, _)] => Value::log_prime(*p, BigRational::one()),
                _ => Value::zero(),
            })
        })
    }

    /// ν(n) = 2^Ω(n).
    pub fn nu() -> Self {
        Self::from_fn("nu", MultClass::CompletelyMultiplicative, |n| {
            Ok(Value::int(BigInt::one() << factorize(n)?.big_omega()))
        })
    }

    /// τ(n), the number of divisors.
    pub fn divisor_count() -> Self {
        Self::from_fn("tau", MultClass::Multiplicative, |n| {
            let tau: u64 = factorize(n)?.pairs().iter().map(|&(_, r)| u64::from(r) + 1).product();
            Ok(Value::int(tau))
        })
    }

    pub fn log() -> Self {
        Self::from_fn("log", MultClass::Unknown, v_log)
    }

    /// S·(n) = n·μ(n), the antipode of the divisor coproduct.
    pub fn antipode_mult() -> Self {
        Self::from_fn("antipode_mult", MultClass::Multiplicative, |n| {
            let fac = factorize(n)?;
            Ok(Value::int(BigInt::from(n) * mobius_of(&fac)))
        })
    }
}

pub(crate) fn mobius_of(fac: &crate::integers::Factorization) -> i64 {
    if !fac.is_squarefree() {
        0
    } else if fac.pairs().len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Looks up a builtin by name: `u`, `one` (alias `zeta`), `N`, `pow(k)`,
/// `mu`, `phi`, `lambda`, `nu`, `tau`, `log`, `antipode_mult`.
pub fn builtin(name: &str) -> Result<ArithFn> {
    let name = name.trim();
    if let Some(arg) = name.strip_prefix("pow(").and_then(|s| s.strip_suffix(')')) {
        let k: u32 = arg.trim().parse().map_err(|_| Error::UnknownBuiltin(name.to_string()))?;
        return Ok(ArithFn::power(k));
    }
    Ok(match name {
        "u" => ArithFn::unit(),
        "one" | "zeta" => ArithFn::one(),
        "N" => ArithFn::identity(),
        "mu" => ArithFn::mobius(),
        "phi" => ArithFn::totient(),
        "lambda" => ArithFn::von_mangoldt(),
        "nu" => ArithFn::nu(),
        "tau" => ArithFn::divisor_count(),
        "log" => ArithFn::log(),
        "antipode_mult" => ArithFn::antipode_mult(),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    })
}

/// Dirichlet convolution (f⋆g)(n) = Σ_{d|n} f(d)·g(n/d).
pub fn conv(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let class = if f.mult_class() >= MultClass::Multiplicative && g.mult_class() >= MultClass::Multiplicative {
        MultClass::Multiplicative
    } else {
        MultClass::Unknown
    };
    let (f, g) = (f.clone(), g.clone());
    ArithFn::from_fn(format!("conv({f},{g})"), class, move |n| {
        let mut acc = Value::zero();
        for d in divisors(n)? {
            acc = &acc + &f.eval(d)?.mul(&g.eval(n / d)?)?;
        }
        Ok(acc)
    })
}

/// Dirichlet inverse via f⁻¹(1) = 1/f(1), f⁻¹(n) = -(1/f(1)) Σ_{d|n, d<n} f(n/d) f⁻¹(d).
///
/// The result fails with `NotInvertible` on evaluation when f(1) = 0.
pub fn inverse(f: &ArithFn) -> ArithFn {
    let class = f.mult_class().min(MultClass::Multiplicative);
    let f = f.clone();
    ArithFn::recursive(format!("inv({f})"), class, move |me, n| {
        let f1 = f.eval(1)?;
        if f1.is_zero() {
            return Err(Error::NotInvertible);
        }
        // f(1) may carry logs (e.g. a pure log at 1): then 1/f(1) is not in the value domain
        let f1 = f1.into_rational()?;
        let inv1 = BigRational::one() / f1;
        if n == 1 {
            return Ok(Value::rational(inv1));
        }
        let mut acc = Value::zero();
        for d in divisors(n)? {
            if d == n {
                break;
            }
            acc = &acc + &f.eval(n / d)?.mul(&me.eval(d)?)?;
        }
        Ok(acc.scale(&-inv1))
    })
}

pub fn add(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let (f, g) = (f.clone(), g.clone());
    ArithFn::from_fn(format!("add({f},{g})"), MultClass::Unknown, move |n| Ok(&f.eval(n)? + &g.eval(n)?))
}

pub fn negate(f: &ArithFn) -> ArithFn {
    let f = f.clone();
    ArithFn::from_fn(format!("neg({f})"), MultClass::Unknown, move |n| Ok(-f.eval(n)?))
}

/// Pointwise product (f.g)(n) = f(n)·g(n).
pub fn hadamard(f: &ArithFn, g: &ArithFn) -> ArithFn {
    let class = f.mult_class().min(g.mult_class());
    let (f, g) = (f.clone(), g.clone());
    ArithFn::from_fn(format!("hadamard({f},{g})"), class, move |n| f.eval(n)?.mul(&g.eval(n)?))
}

/// Formal derivative of the Dirichlet series: (∂f)(n) = -f(n)·log n.
pub fn derivative(f: &ArithFn) -> ArithFn {
    let f = f.clone();
    ArithFn::from_fn(format!("derivative({f})"), MultClass::Unknown, move |n| {
        Ok(-f.eval(n)?.mul(&v_log(n)?)?)
    })
}

/// Coprime pairs `(n, m)` with `2 <= n <= m`, `n·m <= limit`, ascending in `n` then `m`.
fn product_pairs(limit: u64, coprime_only: bool) -> impl Iterator<Item = (u64, u64)> {
    (2..=limit)
        .take_while(move |n| n * n <= limit)
        .flat_map(move |n| (n..=limit / n).map(move |m| (n, m)))
        .filter(move |&(n, m)| !coprime_only || gcd(n, m) == Ok(1))
}

fn check_pairs(f: &ArithFn, limit: u64, coprime_only: bool) -> Verdict {
    for (n, m) in product_pairs(limit, coprime_only) {
        let rhs = f.eval(n).and_then(|a| a.mul(&f.eval(m)?));
        let v = Verdict::compare(vec![n, m], f.eval(n * m), rhs);
        if !v.is_pass() {
            return v;
        }
    }
    // pairs involving the unit 1 force f(n) = f(1)·f(n)
    for n in 1..=limit {
        let rhs = f.eval(1).and_then(|a| a.mul(&f.eval(n)?));
        let v = Verdict::compare(vec![1, n], f.eval(n), rhs);
        if !v.is_pass() {
            return v;
        }
    }
    Verdict::Pass
}

/// Exhaustive check of f(nm) = f(n)f(m) over coprime pairs with n·m ≤ limit.
///
/// Pairs with both factors at least 2 are scanned first, so the witness is
/// the smallest genuine failure; pairs `(1, n)` are checked last.
pub fn is_multiplicative(f: &ArithFn, limit: u64) -> Verdict {
    check_pairs(f, limit, true)
}

pub fn is_completely_multiplicative(f: &ArithFn, limit: u64) -> Verdict {
    check_pairs(f, limit, false)
}

fn check_pointwise(lhs: &ArithFn, rhs: &ArithFn, limit: u64) -> Verdict {
    for n in 1..=limit {
        let v = Verdict::compare(vec![n], lhs.eval(n), rhs.eval(n));
        if !v.is_pass() {
            return v;
        }
    }
    Verdict::Pass
}

/// Checks f.(g⋆h) = (f.g)⋆(f.h) for n ≤ limit.
pub fn lambek_check(f: &ArithFn, g: &ArithFn, h: &ArithFn, limit: u64) -> Verdict {
    let lhs = hadamard(f, &conv(g, h));
    let rhs = conv(&hadamard(f, g), &hadamard(f, h));
    check_pointwise(&lhs, &rhs, limit)
}

/// Checks f.τ = f⋆f for n ≤ limit.
pub fn carlitz_check(f: &ArithFn, limit: u64) -> Verdict {
    let lhs = hadamard(f, &ArithFn::divisor_count());
    let rhs = conv(f, f);
    check_pointwise(&lhs, &rhs, limit)
}

/// Pointwise equality of two functions on `1..=limit`.
pub fn agree_upto(f: &ArithFn, g: &ArithFn, limit: u64) -> Verdict {
    check_pointwise(f, g, limit)
}
