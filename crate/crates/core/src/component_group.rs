//! Component groups of Néron models, the Euler characteristic of the Néron
//! special fiber, the motivic Serre invariant shadow and the trace verdict.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloProduct;
use crate::error::{Error, Result};
use crate::fiber::{
    is_purely_additive, realizability_check, stats, tame_compatibility, FiberStats, SpecialFiber,
    Violation,
};
use crate::monodromy::MonodromyResult;
use crate::poly::IntPoly;

/// Class of the Néron special fiber modulo `L - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SerreClass {
    Zero,
    /// `φ_A · [B]` with `dim B = abelian_dim`.
    Additive {
        #[serde(with = "crate::report::bigint_str")]
        phi: BigInt,
        abelian_dim: u64,
    },
}

impl SerreClass {
    /// Poincaré polynomial evaluated at `T = -1`: `φ_A · 4^{dim B}`.
    pub fn poincare_eval(&self) -> BigInt {
        match self {
            SerreClass::Zero => BigInt::zero(),
            SerreClass::Additive { phi, abelian_dim } => {
                phi * num_traits::pow(BigInt::from(4), *abelian_dim as usize)
            }
        }
    }
}

fn require_purely_additive(s: &FiberStats) -> Result<()> {
    if is_purely_additive(s) {
        Ok(())
    } else {
        Err(Error::NotPurelyAdditive { a: s.a, t: s.t })
    }
}

/// `∏ n_i^{d_i - 2}` in exact rationals, required to be a positive integer.
fn degree_product(mults: &[u64], s: &FiberStats) -> Result<BigInt> {
    let mut acc = BigRational::one();
    for (&n, &d) in mults.iter().zip(&s.d) {
        acc *= pow_signed(BigRational::from_integer(BigInt::from(n)), d as i64 - 2);
    }
    if acc.denom().is_one() && acc.numer().is_positive() {
        Ok(acc.to_integer())
    } else {
        Err(Error::NonIntegralResult(acc.to_string()))
    }
}

fn pow_signed(base: BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(base, e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `φ_A = ∏ N_i^{d_i - 2}` for a purely additive fiber.
pub fn phi_additive(f: &SpecialFiber, s: &FiberStats) -> Result<BigInt> {
    require_purely_additive(s)?;
    let mults: Vec<u64> = f.components().iter().map(|c| c.multiplicity).collect();
    degree_product(&mults, s)
}

/// `φ'_A = ∏ (N'_i)^{d_i - 2}` for a purely additive fiber.
pub fn phi_prime_additive(_f: &SpecialFiber, s: &FiberStats) -> Result<BigInt> {
    require_purely_additive(s)?;
    degree_product(&s.n_prime, s)
}

/// `χ(Néron special fiber)`: `φ_A` when purely additive, else 0.
pub fn euler_char_neron(f: &SpecialFiber, s: &FiberStats) -> Result<BigInt> {
    if is_purely_additive(s) {
        phi_additive(f, s)
    } else {
        Ok(BigInt::zero())
    }
}

/// Serre invariant class. When `t = 0` and `a > 0` no closed formula for
/// `φ_A` is available and `user_phi` must be given.
pub fn serre_class(
    f: &SpecialFiber,
    s: &FiberStats,
    user_phi: Option<&BigInt>,
) -> Result<SerreClass> {
    if s.t > 0 {
        return Ok(SerreClass::Zero);
    }
    let phi = match user_phi {
        Some(phi) => phi.clone(),
        None if s.a == 0 => phi_additive(f, s)?,
        None => return Err(Error::PhiUnavailable),
    };
    Ok(SerreClass::Additive {
        phi,
        abelian_dim: s.a,
    })
}

/// Everything [`verify_trace`] learns about one fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceReport {
    pub stats: FiberStats,
    pub zeta: CycloProduct,
    pub p_phi: CycloProduct,
    pub p_phi_poly: Option<IntPoly>,
    /// `None` when not purely additive (no product formula applies).
    pub phi_a: Option<BigInt>,
    pub phi_a_prime: Option<BigInt>,
    pub euler_char_neron: BigInt,
    pub trace_value: BigInt,
    pub purely_additive: bool,
    pub tame_compatible: bool,
    pub tame_violations: Vec<Violation>,
    pub realizability_violations: Vec<Violation>,
    /// `χ(A_s) == P_φ(1)`.
    pub trace_formula_holds: bool,
    /// `P_φ(1) == φ'_A`, checked whenever the fiber is purely additive.
    pub prime_to_p_identity_holds: Option<bool>,
    /// Zero when `t > 0`; `None` when `t = 0`, `a > 0`.
    pub serre_class: Option<SerreClass>,
    /// Set when the identities fail although the fiber looks tame.
    pub inconsistency: Option<String>,
}

/// Computes both sides of `χ(A_s) = Trace(φ | H)` for a fiber.
///
/// A failure with `tame_compatible == false` is expected (the identity is
/// only guaranteed for tame reduction). A failure on a tame-compatible fiber
/// is recorded in `inconsistency`.
pub fn verify_trace(f: &SpecialFiber) -> Result<TraceReport> {
    let s = stats(f);
    let mono = MonodromyResult::compute(f)?;
    let purely_additive = is_purely_additive(&s);
    let (phi_a, phi_a_prime) = if purely_additive {
        (Some(phi_additive(f, &s)?), Some(phi_prime_additive(f, &s)?))
    } else {
        (None, None)
    };
    let euler_char_neron = euler_char_neron(f, &s)?;
    let tame_violations = tame_compatibility(f, &s);
    let tame_compatible = tame_violations.is_empty();
    let trace_formula_holds = euler_char_neron == mono.trace_value;
    let prime_to_p_identity_holds = phi_a_prime.as_ref().map(|pp| *pp == mono.trace_value);

    let mut problems = Vec::new();
    if prime_to_p_identity_holds == Some(false) {
        problems.push(format!(
            "P_phi(1) = {} differs from phi'_A = {}",
            mono.trace_value,
            phi_a_prime.as_ref().expect("checked")
        ));
    }
    if tame_compatible && !trace_formula_holds {
        problems.push(format!(
            "tame-compatible fiber but chi = {} and trace = {}",
            euler_char_neron, mono.trace_value
        ));
    }
    let serre = match serre_class(f, &s, None) {
        Ok(c) => Some(c),
        Err(Error::PhiUnavailable) => None,
        Err(e) => return Err(e),
    };

    Ok(TraceReport {
        zeta: mono.zeta,
        p_phi: mono.p_phi,
        p_phi_poly: mono.p_phi_poly,
        phi_a,
        phi_a_prime,
        euler_char_neron,
        trace_value: mono.trace_value,
        purely_additive,
        tame_compatible,
        tame_violations,
        realizability_violations: realizability_check(f),
        trace_formula_holds,
        prime_to_p_identity_holds,
        serre_class: serre,
        inconsistency: (!problems.is_empty()).then(|| problems.join("; ")),
        stats: s,
    })
}

/// Prime factorization of `n >= 1`.
pub fn q_primary_decomposition(n: &BigUint) -> std::collections::BTreeMap<u64, u32> {
    crate::arith::q_primary_decomposition(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::Component;

    fn comp(id: &str, genus: u64, multiplicity: u64) -> Component {
        Component {
            id: id.into(),
            genus,
            multiplicity,
        }
    }

    fn star(p: u64, centre: u64, leaves: &[u64]) -> SpecialFiber {
        let mut comps = vec![comp("c", 0, centre)];
        let mut edges = Vec::new();
        for (i, &n) in leaves.iter().enumerate() {
            comps.push(comp(&format!("l{i}"), 0, n));
            edges.push(("c".to_string(), format!("l{i}")));
        }
        SpecialFiber::new(p, comps, edges).unwrap()
    }

    fn i0_star(p: u64) -> SpecialFiber {
        star(p, 2, &[1, 1, 1, 1])
    }

    fn chain_fiber(p: u64, mults: &[(String, u64)], edges: &[(&str, &str)]) -> SpecialFiber {
        SpecialFiber::new(
            p,
            mults.iter().map(|(id, n)| comp(id, 0, *n)).collect(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    fn ii_star() -> SpecialFiber {
        let names = ["a", "b", "c", "d", "e", "f", "g", "h", "x"];
        let mults = [1, 2, 3, 4, 5, 6, 4, 2, 3];
        let comps: Vec<_> = names
            .iter()
            .zip(mults)
            .map(|(n, m)| (n.to_string(), m))
            .collect();
        chain_fiber(
            1,
            &comps,
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("d", "e"),
                ("e", "f"),
                ("f", "g"),
                ("g", "h"),
                ("f", "x"),
            ],
        )
    }

    fn iv_star(p: u64) -> SpecialFiber {
        let comps: Vec<_> = [
            ("c", 3),
            ("a2", 2),
            ("a1", 1),
            ("b2", 2),
            ("b1", 1),
            ("d2", 2),
            ("d1", 1),
        ]
        .iter()
        .map(|(n, m)| (n.to_string(), *m))
        .collect();
        chain_fiber(
            p,
            &comps,
            &[
                ("c", "a2"),
                ("a2", "a1"),
                ("c", "b2"),
                ("b2", "b1"),
                ("c", "d2"),
                ("d2", "d1"),
            ],
        )
    }

    fn i3() -> SpecialFiber {
        SpecialFiber::new(
            1,
            vec![comp("a", 0, 1), comp("b", 0, 1), comp("c", 0, 1)],
            [("a", "b"), ("b", "c"), ("c", "a")],
        )
        .unwrap()
    }

    fn good() -> SpecialFiber {
        SpecialFiber::new(1, vec![comp("e", 1, 1)], Vec::<(&str, &str)>::new()).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn phi_additive_examples() {
        for (f, want) in [(i0_star(1), 4), (ii_star(), 1), (iv_star(1), 3)] {
            assert_eq!(phi_additive(&f, &stats(&f)).unwrap(), int(want));
        }
    }

    #[test]
    fn phi_prime_examples() {
        let f = i0_star(3);
        assert_eq!(phi_prime_additive(&f, &stats(&f)).unwrap(), int(4));
        let f = i0_star(2);
        assert_eq!(phi_prime_additive(&f, &stats(&f)).unwrap(), int(1));
        let f = iv_star(2);
        assert_eq!(phi_prime_additive(&f, &stats(&f)).unwrap(), int(3));
    }

    #[test]
    fn phi_errors() {
        let f = i3();
        assert_eq!(
            phi_additive(&f, &stats(&f)),
            Err(Error::NotPurelyAdditive { a: 0, t: 1 })
        );
        let bad = star(1, 2, &[3]);
        assert!(matches!(
            phi_additive(&bad, &stats(&bad)),
            Err(Error::NonIntegralResult(_))
        ));
    }

    #[test]
    fn euler_char_examples() {
        for (f, want) in [(i0_star(1), 4), (i3(), 0), (good(), 0)] {
            assert_eq!(euler_char_neron(&f, &stats(&f)).unwrap(), int(want));
        }
    }

    #[test]
    fn serre_class_examples() {
        let f = i3();
        assert_eq!(serre_class(&f, &stats(&f), None).unwrap(), SerreClass::Zero);
        let f = i0_star(1);
        assert_eq!(
            serre_class(&f, &stats(&f), None).unwrap(),
            SerreClass::Additive {
                phi: int(4),
                abelian_dim: 0
            }
        );
        let f = good();
        assert_eq!(
            serre_class(&f, &stats(&f), None),
            Err(Error::PhiUnavailable)
        );
        let c = serre_class(&f, &stats(&f), Some(&int(1))).unwrap();
        assert_eq!(
            c,
            SerreClass::Additive {
                phi: int(1),
                abelian_dim: 1
            }
        );
        assert_eq!(c.poincare_eval(), int(4));
    }

    #[test]
    fn verify_trace_tame_additive() {
        let r = verify_trace(&i0_star(3)).unwrap();
        assert_eq!(r.trace_value, int(4));
        assert_eq!(r.euler_char_neron, int(4));
        assert!(r.trace_formula_holds);
        assert!(r.tame_compatible);
        assert_eq!(r.inconsistency, None);
    }

    #[test]
    fn verify_trace_not_additive() {
        let r = verify_trace(&i3()).unwrap();
        assert_eq!(r.trace_value, int(0));
        assert_eq!(r.euler_char_neron, int(0));
        assert!(r.trace_formula_holds);
        assert_eq!(r.phi_a, None);
        assert_eq!(r.serre_class, Some(SerreClass::Zero));
    }

    #[test]
    fn verify_trace_wild() {
        let r = verify_trace(&i0_star(2)).unwrap();
        assert_eq!(r.trace_value, int(1));
        assert_eq!(r.phi_a_prime, Some(int(1)));
        assert_eq!(r.euler_char_neron, int(4));
        assert!(!r.trace_formula_holds);
        assert!(!r.tame_compatible);
        assert_eq!(r.prime_to_p_identity_holds, Some(true));
        assert_eq!(r.inconsistency, None);
    }

    #[test]
    fn verify_trace_good_reduction() {
        let r = verify_trace(&good()).unwrap();
        assert!(r.trace_formula_holds);
        assert_eq!(r.serre_class, None);
        assert_eq!(r.p_phi, CycloProduct::phi(1, 2));
        assert_eq!(r.trace_value, BigInt::zero());
    }

    #[test]
    fn q_primary_examples() {
        assert_eq!(
            q_primary_decomposition(&BigUint::from(4u32)),
            [(2, 2)].into()
        );
        assert!(q_primary_decomposition(&BigUint::from(1u32)).is_empty());
        assert_eq!(
            q_primary_decomposition(&BigUint::from(12u32)),
            [(2, 2), (3, 1)].into()
        );
    }
}
