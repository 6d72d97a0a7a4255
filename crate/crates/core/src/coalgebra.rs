//! Coproducts of addition and multiplication on ℕ, their unrenormalized
//! (completely multiplicative, binomially weighted) counterparts, antipodes,
//! pairings, primitive elements, and executable versions of the coalgebra
//! axioms.
//!
//! The renormalized divisor coproduct Δ· is only multiplicative: Δ·(nm) =
//! Δ·(n)Δ·(m) needs gcd(n, m) = 1. The unrenormalized Δ̲· is obtained by
//! forcing Δ̲·(nm) = Δ̲·(n)Δ̲·(m) for all n, m from Δ̲·(p) = (1,p) + (p,1),
//! which overcounts on the prime-power diagonals.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value as Json};

use crate::arithfn::mobius_of;
use crate::error::{Error, Result};
use crate::integers::{binomial, divisors, factorial, factorize, Factorization};

/// Which monoid the pair components live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// (ℕ₀, +), unit 0.
    Additive,
    /// (ℕ≥1, ·), unit 1.
    Multiplicative,
}

impl Kind {
    pub fn unit(self) -> u64 {
        match self {
            Kind::Additive => 0,
            Kind::Multiplicative => 1,
        }
    }
}

/// Renormalized (divisor / plain split) versus unrenormalized (binomially weighted).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Renormalized,
    Unrenormalized,
}

/// Finite ℤ-linear combination of ordered pairs `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSum {
    kind: Kind,
    terms: BTreeMap<(u64, u64), BigInt>,
}

impl PairSum {
    pub fn empty(kind: Kind) -> Self {
        PairSum { kind, terms: BTreeMap::new() }
    }

    pub fn from_terms(kind: Kind, terms: impl IntoIterator<Item = ((u64, u64), BigInt)>) -> Result<Self> {
        let mut s = PairSum::empty(kind);
        for ((a, b), c) in terms {
            if kind == Kind::Multiplicative && (a == 0 || b == 0) {
                return Err(Error::ZeroArgument("multiplicative pair component"));
            }
            s.add_term(a, b, c);
        }
        Ok(s)
    }

    fn add_term(&mut self, a: u64, b: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms sorted by first, then second component.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: u64, b: u64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Pair swap `(a, b) ↦ (b, a)`.
    pub fn swapped(&self) -> PairSum {
        PairSum { kind: self.kind, terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.terms().map(|(a, b, c)| json!({"a": a, "b": b, "coeff": c.to_string()})).collect())
    }

    fn combine(&self, other: &PairSum, sign: i8) -> Result<PairSum> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch);
        }
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, if sign < 0 { -c } else { c.clone() });
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &PairSum) -> Result<PairSum> {
        self.combine(other, 1)
    }

    pub fn checked_sub(&self, other: &PairSum) -> Result<PairSum> {
        self.combine(other, -1)
    }
}

impl Add for &PairSum {
    type Output = Result<PairSum>;

    fn add(self, rhs: &PairSum) -> Result<PairSum> {
        self.checked_add(rhs)
    }
}

impl Sub for &PairSum {
    type Output = Result<PairSum>;

    fn sub(self, rhs: &PairSum) -> Result<PairSum> {
        self.checked_sub(rhs)
    }
}

/// `c·(a×b)` terms joined by ` + `; the empty sum renders as `0`.
impl fmt::Display for PairSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(a, b, c)| format!("{c}·({a}×{b})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn ones(kind: Kind, pairs: impl IntoIterator<Item = (u64, u64)>) -> PairSum {
    let mut s = PairSum::empty(kind);
    for (a, b) in pairs {
        s.add_term(a, b, BigInt::one());
    }
    s
}

/// Δ⁺(n) = Σ_{a+b=n} (a, b).
pub fn coprod_add(n: u64) -> PairSum {
    ones(Kind::Additive, (0..=n).map(|a| (a, n - a)))
}

/// Δ·(n) = Σ_{d|n} (d, n/d).
pub fn coprod_mult(n: u64) -> Result<PairSum> {
    Ok(ones(Kind::Multiplicative, divisors(n)?.into_iter().map(|d| (d, n / d))))
}

/// Δ̲⁺(n) = Σ_{a+b=n} C(n, a)·(a, b).
pub fn coprod_add_unren(n: u64) -> PairSum {
    let mut s = PairSum::empty(Kind::Additive);
    let mut c = BigInt::one();
    for a in 0..=n {
        s.add_term(a, n - a, c.clone());
        c = c * (n - a) / (a + 1);
    }
    s
}

/// Product of pair sums over (ℕ, ·): `(a₁,a₂)·(b₁,b₂) = (a₁b₁, a₂b₂)`.
pub fn pairsum_mul(lhs: &PairSum, rhs: &PairSum) -> Result<PairSum> {
    if lhs.kind != Kind::Multiplicative || rhs.kind != Kind::Multiplicative {
        return Err(Error::KindMismatch);
    }
    let mut out = PairSum::empty(Kind::Multiplicative);
    for (a1, a2, ca) in lhs.terms() {
        for (b1, b2, cb) in rhs.terms() {
            let left = a1.checked_mul(b1).ok_or(Error::Overflow("pair component"))?;
            let right = a2.checked_mul(b2).ok_or(Error::Overflow("pair component"))?;
            out.add_term(left, right, ca * cb);
        }
    }
    Ok(out)
}

/// Every way of splitting the exponents `r_i = a_i + b_i`, yielding
/// `(∏ p^a_i, ∏ p^b_i, ∏ C(r_i, a_i))`.
fn exponent_splits(fac: &Factorization) -> Vec<(u64, u64, BigInt)> {
    let mut acc = vec![(1u64, 1u64, BigInt::one())];
    for &(p, r) in fac.pairs() {
        let mut next = Vec::with_capacity(acc.len() * (r as usize + 1));
        for (left, right, c) in &acc {
            for a in 0..=r {
                let b = r - a;
                next.push((left * p.pow(a), right * p.pow(b), c * binomial(u64::from(r), u64::from(a))));
            }
        }
        acc = next;
    }
    acc
}

/// Δ̲·(n) in closed form: Σ over splittings of ∏ C(r_i, a_i) · (∏ p^a_i, ∏ p^b_i).
pub fn coprod_mult_unren(n: u64) -> Result<PairSum> {
    let fac = factorize(n)?;
    let mut s = PairSum::empty(Kind::Multiplicative);
    for (a, b, c) in exponent_splits(&fac) {
        s.add_term(a, b, c);
    }
    Ok(s)
}

/// Δ·(n) rebuilt from the additive coproduct on each exponent:
/// ∏_i (p_i × p_i)^{Δ⁺(r_i)}, i.e. every splitting with weight 1.
pub fn coring_expand(n: u64) -> Result<PairSum> {
    let fac = factorize(n)?;
    let mut s = PairSum::empty(Kind::Multiplicative);
    for (a, b, _) in exponent_splits(&fac) {
        s.add_term(a, b, BigInt::one());
    }
    Ok(s)
}

/// The four coproducts, as one dispatchable value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coproduct {
    Add,
    Mult,
    AddUnren,
    MultUnren,
}

impl Coproduct {
    pub const ALL: [Coproduct; 4] = [Coproduct::Add, Coproduct::Mult, Coproduct::AddUnren, Coproduct::MultUnren];

    pub fn kind(self) -> Kind {
        match self {
            Coproduct::Add | Coproduct::AddUnren => Kind::Additive,
            Coproduct::Mult | Coproduct::MultUnren => Kind::Multiplicative,
        }
    }

    pub fn apply(self, n: u64) -> Result<PairSum> {
        match self {
            Coproduct::Add => Ok(coprod_add(n)),
            Coproduct::Mult => coprod_mult(n),
            Coproduct::AddUnren => Ok(coprod_add_unren(n)),
            Coproduct::MultUnren => coprod_mult_unren(n),
        }
    }

    /// Counit ε(k) = δ_{k, unit}.
    pub fn counit(self, k: u64) -> bool {
        k == self.kind().unit()
    }
}

/// Both one-sided counit laws: (ε⊗id)Δ(n) = n = (id⊗ε)Δ(n).
pub fn counit_check(cop: Coproduct, n: u64) -> Result<bool> {
    let delta = cop.apply(n)?;
    let side = |pick_left: bool| -> BTreeMap<u64, BigInt> {
        let mut out = BTreeMap::new();
        for (a, b, c) in delta.terms() {
            let (gate, keep) = if pick_left { (a, b) } else { (b, a) };
            if cop.counit(gate) {
                *out.entry(keep).or_insert_with(BigInt::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let expected = BTreeMap::from([(n, BigInt::one())]);
    Ok(side(true) == expected && side(false) == expected)
}

pub fn cocommutativity_check(cop: Coproduct, n: u64) -> Result<bool> {
    let delta = cop.apply(n)?;
    Ok(delta.swapped() == delta)
}

pub type TripleSum = BTreeMap<(u64, u64, u64), BigInt>;

/// `((Δ⊗id)Δ(n), (id⊗Δ)Δ(n))` as formal sums of triples.
pub fn coassociativity_sides(cop: Coproduct, n: u64) -> Result<(TripleSum, TripleSum)> {
    let delta = cop.apply(n)?;
    let mut inner = HashMap::new();
    for (a, b, _) in delta.terms() {
        for k in [a, b] {
            if let Entry::Vacant(slot) = inner.entry(k) {
                slot.insert(cop.apply(k)?);
            }
        }
    }
    let mut left = TripleSum::new();
    let mut right = TripleSum::new();
    for (a, b, c) in delta.terms() {
        for (a1, a2, c1) in inner[&a].terms() {
            *left.entry((a1, a2, b)).or_insert_with(BigInt::zero) += c * c1;
        }
        for (b1, b2, c2) in inner[&b].terms() {
            *right.entry((a, b1, b2)).or_insert_with(BigInt::zero) += c * c2;
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    Ok((left, right))
}

pub fn coassociativity_check(cop: Coproduct, n: u64) -> Result<bool> {
    let (left, right) = coassociativity_sides(cop, n)?;
    Ok(left == right)
}

/// S⁺(n) = -n.
pub fn antipode_add(n: u64) -> BigInt {
    -BigInt::from(n)
}

/// S·(n) = n·μ(n).
pub fn antipode_mult(n: u64) -> Result<BigInt> {
    let fac = factorize(n)?;
    Ok(BigInt::from(n) * mobius_of(&fac))
}

/// S̲·(n) = (-1)^Ω(n) · n, the grade involution of the Ω-grading.
pub fn antipode_mult_unren(n: u64) -> Result<BigInt> {
    let omega = factorize(n)?.big_omega();
    let n = BigInt::from(n);
    Ok(if omega % 2 == 0 { n } else { -n })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntipodeCheck {
    pub n: u64,
    pub variant: Variant,
    /// Σ c·S(a)·b over the coproduct terms.
    pub sum: BigInt,
}

impl AntipodeCheck {
    pub fn passes(&self) -> bool {
        self.sum == BigInt::from(u8::from(self.n == 1))
    }
}

/// Evaluates Σ_{(a,b)∈Δ(n)} c·S(a)·b, which must equal u(n) = δ_{n,1}.
pub fn antipode_identity_check(n: u64, variant: Variant) -> Result<AntipodeCheck> {
    let (delta, antipode): (PairSum, fn(u64) -> Result<BigInt>) = match variant {
        Variant::Renormalized => (coprod_mult(n)?, antipode_mult),
        Variant::Unrenormalized => (coprod_mult_unren(n)?, antipode_mult_unren),
    };
    let mut sum = BigInt::zero();
    for (a, b, c) in delta.terms() {
        sum += c * antipode(a)? * BigInt::from(b);
    }
    Ok(AntipodeCheck { n, variant, sum })
}

/// Compares Δ(n·m) with Δ(n)·Δ(m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomAxiomReport {
    pub n: u64,
    pub m: u64,
    pub variant: Variant,
    /// Δ(n·m)
    pub coproduct_of_product: PairSum,
    /// Δ(n)·Δ(m)
    pub product_of_coproducts: PairSum,
    /// Δ(n)·Δ(m) − Δ(n·m): the terms the coproduct of the product is missing.
    pub discrepancy: PairSum,
}

impl HomAxiomReport {
    pub fn passes(&self) -> bool {
        self.discrepancy.is_empty()
    }
}

pub fn hom_axiom_check(n: u64, m: u64, variant: Variant) -> Result<HomAxiomReport> {
    let delta = |k| match variant {
        Variant::Renormalized => coprod_mult(k),
        Variant::Unrenormalized => coprod_mult_unren(k),
    };
    let nm = n.checked_mul(m).ok_or(Error::Overflow("n·m"))?;
    let lhs = delta(nm)?;
    let rhs = pairsum_mul(&delta(n)?, &delta(m)?)?;
    let discrepancy = rhs.checked_sub(&lhs)?;
    Ok(HomAxiomReport {
        n,
        m,
        variant,
        coproduct_of_product: lhs,
        product_of_coproducts: rhs,
        discrepancy,
    })
}

/// Δ̲·(n) − Δ·(n): the diagonal excess, empty exactly for squarefree n.
pub fn overcounting_report(n: u64) -> Result<PairSum> {
    coprod_mult_unren(n)?.checked_sub(&coprod_mult(n)?)
}

/// ⟨n|m⟩ = δ_{n,m}.
pub fn kronecker_pairing(n: u64, m: u64) -> BigInt {
    BigInt::from(u8::from(n == m))
}

/// (n|m) = δ_{n,m} · ∏ r_i! where n = ∏ p_i^r_i.
pub fn z_pairing(n: u64, m: u64) -> Result<BigInt> {
    if n == 0 || m == 0 {
        return Err(Error::ZeroArgument("z pairing argument"));
    }
    if n != m {
        return Ok(BigInt::zero());
    }
    Ok(factorize(n)?.pairs().iter().map(|&(_, r)| factorial(u64::from(r))).product())
}

/// (n|m) = δ_{n,m} · n!, the pairing dual to Δ̲⁺.
pub fn factorial_pairing(n: u64, m: u64) -> BigInt {
    if n == m {
        factorial(n)
    } else {
        BigInt::zero()
    }
}

/// Which product/coproduct duality a [`duality_check`] exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Duality {
    /// ⟨n+m|k⟩ = ⟨n⊕m|Δ⁺(k)⟩ under the Kronecker pairing.
    Additive,
    /// ⟨n·m|k⟩ = ⟨n×m|Δ·(k)⟩ under the Kronecker pairing.
    Multiplicative,
    /// (n+m|k) against Δ̲⁺(k) under (n|m) = δ_{n,m} n!.
    AdditiveUnren,
    /// (n·m|k) against Δ̲·(k) under the z pairing.
    MultiplicativeUnren,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl DualityCheck {
    pub fn passes(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Checks that the product pairs against k exactly as n⊗m pairs against Δ(k).
pub fn duality_check(n: u64, m: u64, k: u64, which: Duality) -> Result<DualityCheck> {
    let (delta, combined) = match which {
        Duality::Additive | Duality::AdditiveUnren => {
            let sum = n.checked_add(m).ok_or(Error::Overflow("n+m"))?;
            let delta = if which == Duality::Additive { coprod_add(k) } else { coprod_add_unren(k) };
            (delta, sum)
        }
        Duality::Multiplicative | Duality::MultiplicativeUnren => {
            let prod = n.checked_mul(m).ok_or(Error::Overflow("n·m"))?;
            let delta = if which == Duality::Multiplicative { coprod_mult(k)? } else { coprod_mult_unren(k)? };
            (delta, prod)
        }
    };
    let pair = |x: u64, y: u64| -> Result<BigInt> {
        match which {
            Duality::Additive | Duality::Multiplicative => Ok(kronecker_pairing(x, y)),
            Duality::AdditiveUnren => Ok(factorial_pairing(x, y)),
            Duality::MultiplicativeUnren => z_pairing(x, y),
        }
    };
    let lhs = pair(combined, k)?;
    let mut rhs = BigInt::zero();
    for (a, b, c) in delta.terms() {
        rhs += c * pair(n, a)? * pair(m, b)?;
    }
    Ok(DualityCheck { lhs, rhs })
}

/// Elements x ≤ limit with Δ(x) = (unit, x) + (x, unit), scanning from the unit.
pub fn primitive_elements(limit: u64, which: Kind) -> Result<Vec<u64>> {
    let unit = which.unit();
    let mut out = Vec::new();
    for x in unit..=limit {
        let delta = match which {
            Kind::Additive => coprod_add(x),
            Kind::Multiplicative => coprod_mult(x)?,
        };
        let primitive = ones(which, [(unit, x), (x, unit)]);
        if delta == primitive {
            out.push(x);
        }
    }
    Ok(out)
}

/// Counts for one row of the renormalized-vs-unrenormalized comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvercountRow {
    pub n: u64,
    /// Σ of coefficients of Δ·(n), i.e. τ(n).
    pub renormalized_weight: BigInt,
    /// Σ of coefficients of Δ̲·(n), i.e. 2^Ω(n).
    pub unrenormalized_weight: BigInt,
    pub excess: PairSum,
}

pub fn overcount_row(n: u64) -> Result<OvercountRow> {
    let ren = coprod_mult(n)?;
    let unren = coprod_mult_unren(n)?;
    let weight = |s: &PairSum| s.terms().map(|(_, _, c)| c.clone()).sum::<BigInt>();
    Ok(OvercountRow {
        n,
        renormalized_weight: weight(&ren),
        unrenormalized_weight: weight(&unren),
        excess: unren.checked_sub(&ren)?,
    })
}

/// True when every coefficient is non-negative.
pub fn is_effective(s: &PairSum) -> bool {
    s.terms().all(|(_, _, c)| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(kind: Kind, terms: &[(u64, u64, i64)]) -> PairSum {
        PairSum::from_terms(kind, terms.iter().map(|&(a, b, c)| ((a, b), BigInt::from(c)))).unwrap()
    }

    fn mult(terms: &[(u64, u64, i64)]) -> PairSum {
        ps(Kind::Multiplicative, terms)
    }

    #[test]
    fn additive_coproducts() {
        assert_eq!(coprod_add(3), ps(Kind::Additive, &[(0, 3, 1), (1, 2, 1), (2, 1, 1), (3, 0, 1)]));
        assert_eq!(coprod_add(0), ps(Kind::Additive, &[(0, 0, 1)]));
        assert_eq!(coprod_add(1), ps(Kind::Additive, &[(0, 1, 1), (1, 0, 1)]));
        assert_eq!(coprod_add(10).len(), 11);
        assert_eq!(coprod_add_unren(2), ps(Kind::Additive, &[(0, 2, 1), (1, 1, 2), (2, 0, 1)]));
        assert_eq!(coprod_add_unren(0), ps(Kind::Additive, &[(0, 0, 1)]));
        assert_eq!(
            coprod_add_unren(4),
            ps(Kind::Additive, &[(0, 4, 1), (1, 3, 4), (2, 2, 6), (3, 1, 4), (4, 0, 1)])
        );
        // Pascal's rule against the incremental row.
        let mut row = vec![BigInt::one()];
        for n in 1..=120u64 {
            row = (0..=n as usize)
                .map(|a| {
                    let left = if a > 0 { row[a - 1].clone() } else { BigInt::zero() };
                    left + row.get(a).cloned().unwrap_or_default()
                })
                .collect();
            let s = coprod_add_unren(n);
            assert!((0..=n).all(|a| s.coeff(a, n - a) == row[a as usize]), "n = {n}");
        }
    }

    #[test]
    fn divisor_coproduct() {
        assert_eq!(coprod_mult(6).unwrap(), mult(&[(1, 6, 1), (2, 3, 1), (3, 2, 1), (6, 1, 1)]));
        assert_eq!(coprod_mult(4).unwrap(), mult(&[(1, 4, 1), (2, 2, 1), (4, 1, 1)]));
        assert_eq!(coprod_mult(1).unwrap(), mult(&[(1, 1, 1)]));
        assert!(coprod_mult(0).is_err());
    }

    #[test]
    fn pair_products() {
        let d2 = coprod_mult(2).unwrap();
        assert_eq!(pairsum_mul(&d2, &d2).unwrap(), mult(&[(1, 4, 1), (2, 2, 2), (4, 1, 1)]));
        assert_eq!(pairsum_mul(&d2, &coprod_mult(3).unwrap()).unwrap(), coprod_mult(6).unwrap());
        let unit = mult(&[(1, 1, 1)]);
        let a = coprod_mult(12).unwrap();
        assert_eq!(pairsum_mul(&a, &unit).unwrap(), a);
        assert_eq!(pairsum_mul(&coprod_add(2), &a), Err(Error::KindMismatch));
        let big = mult(&[(u64::MAX / 2, 1, 1)]);
        assert!(matches!(pairsum_mul(&big, &big), Err(Error::Overflow(_))));
    }

    #[test]
    fn unrenormalized_divisor_coproduct() {
        assert_eq!(coprod_mult_unren(4).unwrap(), mult(&[(1, 4, 1), (2, 2, 2), (4, 1, 1)]));
        for p in [2u64, 3, 5, 97] {
            assert_eq!(coprod_mult_unren(p).unwrap(), mult(&[(1, p, 1), (p, 1, 1)]));
        }
        // oracle: Δ̲·(2)·Δ̲·(2)·Δ̲·(3) by repeated pair products
        let d2 = coprod_mult(2).unwrap();
        let oracle = pairsum_mul(&pairsum_mul(&d2, &d2).unwrap(), &coprod_mult(3).unwrap()).unwrap();
        let expected = mult(&[(1, 12, 1), (2, 6, 2), (3, 4, 1), (4, 3, 1), (6, 2, 2), (12, 1, 1)]);
        assert_eq!(oracle, expected);
        assert_eq!(coprod_mult_unren(12).unwrap(), expected);
    }

    /// Recursive definition: Δ̲·(p) = Δ·(p) on primes, extended by complete multiplicativity.
    fn unren_by_recursion(n: u64) -> PairSum {
        let mut acc = mult(&[(1, 1, 1)]);
        for &(p, r) in factorize(n).unwrap().pairs() {
            for _ in 0..r {
                acc = pairsum_mul(&acc, &coprod_mult(p).unwrap()).unwrap();
            }
        }
        acc
    }

    #[test]
    fn closed_form_matches_recursion() {
        for n in 1..=2000 {
            assert_eq!(coprod_mult_unren(n).unwrap(), unren_by_recursion(n), "n = {n}");
        }
    }

    #[test]
    fn antipodes() {
        let s: Vec<BigInt> = (1..=8).map(|n| antipode_mult(n).unwrap()).collect();
        assert_eq!(s, [1, -2, -3, 0, -5, 6, -7, 0].map(BigInt::from));
        assert_eq!(antipode_mult_unren(4).unwrap(), BigInt::from(4));
        assert_eq!(antipode_mult_unren(8).unwrap(), BigInt::from(-8));
        assert_eq!(antipode_mult_unren(12).unwrap(), BigInt::from(-12));
        assert_eq!(antipode_add(5), BigInt::from(-5));
    }

    #[test]
    fn antipode_identity_examples() {
        for v in [Variant::Renormalized, Variant::Unrenormalized] {
            let c = antipode_identity_check(1, v).unwrap();
            assert!(c.passes());
            assert_eq!(c.sum, BigInt::one());
        }
        // renormalized at 4: S(1)·4 + S(2)·2 + S(4)·1 = 4 - 4 + 0
        let c = antipode_identity_check(4, Variant::Renormalized).unwrap();
        assert!(c.passes() && c.sum.is_zero());
        // unrenormalized at 4: 4 - 2·2·2 + 4
        let c = antipode_identity_check(4, Variant::Unrenormalized).unwrap();
        assert!(c.passes() && c.sum.is_zero());
    }

    #[test]
    fn hom_axiom_examples() {
        let r = hom_axiom_check(2, 2, Variant::Renormalized).unwrap();
        assert!(!r.passes());
        assert_eq!(r.discrepancy, mult(&[(2, 2, 1)]));
        assert!(hom_axiom_check(4, 9, Variant::Renormalized).unwrap().passes());
        assert!(hom_axiom_check(2, 2, Variant::Unrenormalized).unwrap().passes());
    }

    #[test]
    fn overcounting_examples() {
        assert_eq!(overcounting_report(4).unwrap(), mult(&[(2, 2, 1)]));
        assert!(overcounting_report(6).unwrap().is_empty());
        assert_eq!(overcounting_report(12).unwrap(), mult(&[(2, 6, 1), (6, 2, 1)]));
        let row = overcount_row(12).unwrap();
        assert_eq!(row.renormalized_weight, BigInt::from(6));
        assert_eq!(row.unrenormalized_weight, BigInt::from(8));
        assert!(is_effective(&row.excess));
    }

    #[test]
    fn pairings() {
        assert_eq!(z_pairing(4, 4).unwrap(), BigInt::from(2));
        assert_eq!(z_pairing(6, 6).unwrap(), BigInt::one());
        assert_eq!(z_pairing(4, 8).unwrap(), BigInt::zero());
        assert_eq!(z_pairing(72, 72).unwrap(), BigInt::from(12));
        assert_eq!(kronecker_pairing(3, 3), BigInt::one());
        assert_eq!(kronecker_pairing(3, 4), BigInt::zero());
    }

    #[test]
    fn duality_examples() {
        let c = duality_check(2, 3, 6, Duality::Multiplicative).unwrap();
        assert!(c.passes() && c.lhs == BigInt::one());
        let c = duality_check(2, 2, 4, Duality::Multiplicative).unwrap();
        assert!(c.passes() && c.rhs == BigInt::one());
        let c = duality_check(1, 2, 3, Duality::Additive).unwrap();
        assert!(c.passes() && c.lhs == BigInt::one());
        // z(2,2)² · 2 = 2 = z(4,4): the z pairing absorbs the binomial weight of Δ̲·(4)
        let c = duality_check(2, 2, 4, Duality::MultiplicativeUnren).unwrap();
        assert!(c.passes() && c.lhs == BigInt::from(2));
    }

    #[test]
    fn duality_exhaustive() {
        for k in 1..=100u64 {
            for n in 1..=k {
                for m in 1..=k {
                    for which in [Duality::Multiplicative, Duality::MultiplicativeUnren] {
                        assert!(duality_check(n, m, k, which).unwrap().passes(), "{n} {m} {k} {which:?}");
                    }
                }
            }
        }
        for k in 0..=30u64 {
            for n in 0..=k + 1 {
                for m in 0..=k + 1 {
                    for which in [Duality::Additive, Duality::AdditiveUnren] {
                        assert!(duality_check(n, m, k, which).unwrap().passes(), "{n} {m} {k} {which:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn coring_examples() {
        assert_eq!(coring_expand(12).unwrap(), coprod_mult(12).unwrap());
        assert_eq!(coring_expand(12).unwrap().len(), 6);
        let p5 = coring_expand(3u64.pow(5)).unwrap();
        assert_eq!(p5.len(), 6);
        assert!((0..=5).all(|j| p5.coeff(3u64.pow(j), 3u64.pow(5 - j)) == BigInt::one()));
        assert_eq!(coring_expand(1).unwrap(), mult(&[(1, 1, 1)]));
    }

    #[test]
    fn primitives() {
        assert_eq!(primitive_elements(10, Kind::Multiplicative).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primitive_elements(10, Kind::Additive).unwrap(), vec![1]);
        assert_eq!(primitive_elements(2, Kind::Multiplicative).unwrap(), vec![2]);
        assert_eq!(
            primitive_elements(1000, Kind::Multiplicative).unwrap(),
            crate::integers::sieve_primes(1000)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(coprod_mult_unren(4).unwrap().to_string(), "1·(1×4) + 2·(2×2) + 1·(4×1)");
        assert_eq!(PairSum::empty(Kind::Multiplicative).to_string(), "0");
        assert_eq!(mult(&[(2, 2, -1)]).to_string(), "-1·(2×2)");
        assert_eq!(mult(&[(2, 2, 3)]).to_json(), json!([{"a": 2, "b": 2, "coeff": "3"}]));
        assert!(PairSum::from_terms(Kind::Multiplicative, [((0, 1), BigInt::one())]).is_err());
    }

    #[test]
    fn axiom_suites_small() {
        for cop in Coproduct::ALL {
            for n in cop.kind().unit()..=60 {
                assert!(counit_check(cop, n).unwrap(), "{cop:?} counit {n}");
                assert!(cocommutativity_check(cop, n).unwrap(), "{cop:?} cocomm {n}");
                assert!(coassociativity_check(cop, n).unwrap(), "{cop:?} coassoc {n}");
            }
        }
    }
}
