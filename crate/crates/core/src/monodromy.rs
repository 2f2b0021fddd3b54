//! Monodromy zeta function and characteristic polynomial of tame monodromy
//! from fiber data.
//!
//! Two independent assemblies of `P_φ` are provided: one from the zeta
//! function (`(T-1)^2 ζ_C(T)`) and one from the per-component form
//! `(T-1)^{2a+2t} ∏ ((T^{N'_i}-1)/(T-1))^{2g_i+d_i-2}`. They agree because
//! `χ_i = 2 - 2g_i - d_i` and `Σ(2 - d_i) = 2 - 2t`; [`MonodromyResult::compute`]
//! checks the agreement on every call.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::{BinomialProduct, CycloProduct};
use crate::error::{Error, Result};
use crate::fiber::{stats, tame_compatibility, FiberStats, SpecialFiber};
use crate::poly::IntPoly;

/// `∏_i (T^{N'_i} - 1)^{-χ_i}` in binomial form.
pub fn zeta_binomial(f: &SpecialFiber) -> BinomialProduct {
    let s = stats(f);
    zeta_binomial_with(&s, |i| s.n_prime[i])
}

fn zeta_binomial_with(s: &FiberStats, n_of: impl Fn(usize) -> u64) -> BinomialProduct {
    BinomialProduct::from_factors(s.chi.iter().enumerate().map(|(i, &chi)| (n_of(i), -chi)))
}

/// Reciprocal monodromy zeta function `ζ_C(T)` in cyclotomic form.
pub fn zeta(f: &SpecialFiber) -> CycloProduct {
    zeta_binomial(f).to_cyclo()
}

/// `ζ_C(T)` with the full multiplicities `N_i` in place of `N'_i`.
///
/// Only valid for cohomologically tame curves satisfying the genus/index
/// hypothesis, neither of which is visible in the graph. The caller vouches
/// for both through `caller_asserts_tame_and_hypothesis`; the combinatorial
/// consequence is checked with [`tame_compatibility`].
pub fn zeta_tame(
    f: &SpecialFiber,
    caller_asserts_tame_and_hypothesis: bool,
) -> Result<CycloProduct> {
    if !caller_asserts_tame_and_hypothesis {
        return Err(Error::HypothesisNotAsserted);
    }
    let s = stats(f);
    let violations = tame_compatibility(f, &s);
    if !violations.is_empty() {
        return Err(Error::TamenessViolation(
            violations.into_iter().map(|v| v.component).collect(),
        ));
    }
    Ok(zeta_binomial_with(&s, |i| f.components()[i].multiplicity).to_cyclo())
}

/// `P_φ(T) = (T - 1)^2 ζ_C(T)`.
pub fn p_phi_via_zeta(f: &SpecialFiber) -> CycloProduct {
    zeta(f).mul(&CycloProduct::phi(1, 2))
}

/// `P_φ(T)` assembled per component, independently of [`zeta`].
pub fn p_phi_lorenzini(f: &SpecialFiber) -> CycloProduct {
    let s = stats(f);
    let mut out = CycloProduct::phi(1, 2 * (s.a + s.t) as i64);
    for (i, c) in f.components().iter().enumerate() {
        let e = 2 * c.genus as i64 + s.d[i] as i64 - 2;
        // (T^{N'} - 1)/(T - 1) = ∏_{d | N', d > 1} Φ_d
        for d in crate::arith::divisors(s.n_prime[i]).into_iter().skip(1) {
            out.add_exponent(d, e);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyResult {
    /// Reciprocal zeta function.
    pub zeta: CycloProduct,
    pub p_phi: CycloProduct,
    /// Expansion of `p_phi`, when every exponent is nonnegative.
    pub p_phi_poly: Option<IntPoly>,
    pub vanishing_order_at_one: i64,
    pub trace_value: BigInt,
}

impl MonodromyResult {
    /// Computes both routes to `P_φ`, insisting that they agree.
    pub fn compute(f: &SpecialFiber) -> Result<Self> {
        let zeta = zeta(f);
        let via_zeta = zeta.mul(&CycloProduct::phi(1, 2));
        let lorenzini = p_phi_lorenzini(f);
        if via_zeta != lorenzini {
            return Err(Error::DualRouteMismatch {
                via_zeta: via_zeta.to_string(),
                lorenzini: lorenzini.to_string(),
            });
        }
        let trace_value = trace_at_one(&via_zeta)?;
        Ok(MonodromyResult {
            p_phi_poly: via_zeta.expand().ok(),
            vanishing_order_at_one: via_zeta.exponent(1),
            zeta,
            p_phi: via_zeta,
            trace_value,
        })
    }
}

/// `Trace(φ | H) = P_φ(1)`, read off a stored result.
pub fn trace_value(m: &MonodromyResult) -> Result<BigInt> {
    trace_at_one(&m.p_phi)
}

/// `P_φ(1)`: zero when `Φ_1` divides, otherwise the exact product of the
/// `Φ_d(1)`.
pub fn trace_at_one(p_phi: &CycloProduct) -> Result<BigInt> {
    let at = p_phi.eval_at_one();
    if at.order < 0 {
        return Err(Error::PoleAtOne(-at.order));
    }
    if at.order > 0 {
        return Ok(BigInt::zero());
    }
    if !at.value.denom().is_one() {
        return Err(Error::NonIntegralTrace(at.value.to_string()));
    }
    Ok(at.value.to_integer())
}
