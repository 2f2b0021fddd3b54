//! Cyclotomic polynomials and formal products of them.
//!
//! Zeta functions and characteristic polynomials of tame monodromy are kept
//! as `∏ Φ_d(T)^{e_d}` with integer exponents. Negative exponents appear in
//! intermediate formulas and cancel in this form without any rational
//! function arithmetic; expansion to an [`IntPoly`] happens only on demand.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, moebius, prime_power_base};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `d`-th cyclotomic polynomial `Φ_d(T)`.
///
/// Computed exactly over the divisor lattice: the binomials `T^e - 1` with
/// `μ(d/e) = 1` are multiplied together and those with `μ(d/e) = -1` are
/// divided out, every division being exact. Results are memoized for the
/// life of the process behind a lock, so concurrent callers are fine.
pub fn cyclotomic(d: u64) -> Arc<IntPoly> {
    assert!(d >= 1, "cyclotomic: d must be positive");
    if let Some(hit) = cache().read().expect("cyclotomic cache poisoned").get(&d) {
        return Arc::clone(hit);
    }
    let poly = Arc::new(compute_cyclotomic(d));
    let mut w = cache().write().expect("cyclotomic cache poisoned");
    Arc::clone(w.entry(d).or_insert(poly))
}

fn compute_cyclotomic(d: u64) -> IntPoly {
    let divs = divisors(d);
    let mut acc = IntPoly::one();
    for &e in &divs {
        if moebius(d / e) == 1 {
            acc = acc.mul_binomial(e as usize);
        }
    }
    for &e in &divs {
        if moebius(d / e) == -1 {
            acc = acc
                .div_binomial(e as usize)
                .expect("cyclotomic: inexact division over the divisor lattice");
        }
    }
    acc
}

/// `Φ_d(1)` for `d > 1`: the prime `q` when `d = q^k`, otherwise 1.
pub fn cyclotomic_at_one(d: u64) -> u64 {
    assert!(
        d > 1,
        "cyclotomic_at_one: Φ_1(1) = 0 is handled as a vanishing order"
    );
    prime_power_base(d).unwrap_or(1)
}

/// Order of vanishing and leading value of a [`CycloProduct`] at `T = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtOne {
    /// Exponent of `Φ_1`; negative means a pole.
    pub order: i64,
    /// `∏_{d>1} Φ_d(1)^{e_d}`. This is the value at 1 when `order == 0`.
    pub value: BigRational,
}

/// Formal product `∏_d Φ_d(T)^{e_d}` in canonical form: keys sorted, no zero
/// exponents. Structural equality is therefore equality of rational functions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycloProduct {
    exponents: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents<I: IntoIterator<Item = (u64, i64)>>(it: I) -> Self {
        let mut p = Self::one();
        for (d, e) in it {
            p.add_exponent(d, e);
        }
        p
    }

    /// `Φ_d^e`.
    pub fn phi(d: u64, e: i64) -> Self {
        Self::from_exponents([(d, e)])
    }

    pub fn add_exponent(&mut self, d: u64, e: i64) {
        assert!(d >= 1, "cyclotomic index must be positive");
        if e == 0 {
            return;
        }
        let slot = self.exponents.entry(d).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&d);
        }
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.exponents.get(&d).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exponents.values().all(|&e| e > 0)
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (&d, &e) in &other.exponents {
            out.add_exponent(d, e);
        }
        out
    }

    pub fn inverse(&self) -> CycloProduct {
        CycloProduct {
            exponents: self.exponents.iter().map(|(&d, &e)| (d, -e)).collect(),
        }
    }

    /// Degree of the rational function (numerator minus denominator degree).
    pub fn degree(&self) -> i64 {
        self.exponents
            .iter()
            .map(|(&d, &e)| euler_phi(d) as i64 * e)
            .sum()
    }

    /// Expands to an integer polynomial; fails on any negative exponent.
    pub fn expand(&self) -> Result<IntPoly> {
        if let Some((&d, &e)) = self.exponents.iter().find(|(_, &e)| e < 0) {
            return Err(Error::NegativeExponent { d, exponent: e });
        }
        Ok(self.exponents.iter().fold(IntPoly::one(), |acc, (&d, &e)| {
            &acc * &cyclotomic(d).pow(e as u32)
        }))
    }

    /// Vanishing order at `T = 1` and the value of the remaining factors
    /// there, using the prime-power law for `Φ_d(1)`.
    pub fn eval_at_one(&self) -> AtOne {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&d, &e) in self.exponents.range(2..) {
            let v = BigInt::from(cyclotomic_at_one(d));
            let pow = num_traits::pow(v, e.unsigned_abs() as usize);
            if e > 0 {
                num *= pow;
            } else {
                den *= pow;
            }
        }
        AtOne {
            order: self.exponent(1),
            value: BigRational::new(num, den),
        }
    }
}

impl fmt::Display for CycloProduct {
    /// `Phi_2^2 * Phi_6^1`, or `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (d, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "Phi_{d}^{e}")?;
        }
        Ok(())
    }
}

fn euler_phi(n: u64) -> u64 {
    crate::arith::factor_u64(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Product `∏_N (T^N - 1)^{e_N}` kept in binomial form.
///
/// This is the shape the zeta function formulas produce. Substituting
/// `T -> T^m` is a relabelling of the keys here, which is why the form is
/// kept alongside the cyclotomic one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BinomialProduct {
    factors: BTreeMap<u64, i64>,
}

impl BinomialProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (u64, i64)>>(it: I) -> Self {
        let mut p = Self::one();
        for (n, e) in it {
            p.add_factor(n, e);
        }
        p
    }

    pub fn add_factor(&mut self, n: u64, e: i64) {
        assert!(n >= 1, "binomial degree must be positive");
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(n).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&n);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    /// `T -> T^m` applied factorwise.
    pub fn scaled(&self, m: u64) -> BinomialProduct {
        assert!(m >= 1, "substitution exponent must be positive");
        BinomialProduct {
            factors: self.factors.iter().map(|(&n, &e)| (n * m, e)).collect(),
        }
    }

    /// Splits each `(T^N - 1)^e` into `∏_{d|N} Φ_d^e` and merges.
    pub fn to_cyclo(&self) -> CycloProduct {
        let mut out = CycloProduct::one();
        for (&n, &e) in &self.factors {
            for d in divisors(n) {
                out.add_exponent(d, e);
            }
        }
        out
    }
}

/// Cyclotomic form of `∏_N (T^N - 1)^{e_N}`.
pub fn binomial_product<I: IntoIterator<Item = (u64, i64)>>(factors: I) -> CycloProduct {
    BinomialProduct::from_factors(factors).to_cyclo()
}

/// Cyclotomic form of the product after `T -> T^m`.
pub fn substitute_power(p: &BinomialProduct, m: u64) -> CycloProduct {
    p.scaled(m).to_cyclo()
}
