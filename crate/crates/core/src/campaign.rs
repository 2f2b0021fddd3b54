//! Batch evaluation of fibers. With the `parallel` feature (on by default)
//! batches run on the rayon pool; without it, or through the `_sequential`
//! entry points, they run on the calling thread. Results are identical and
//! in input order either way.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::component_group::verify_trace;
use crate::fiber::{is_purely_additive, stats, SpecialFiber};
use crate::generate::{random_fiber, Profile};
use crate::linalg::check_q_part_identity;

/// Applies `f` to every item, in parallel when the `parallel` feature is on.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Outcome of checking every identity the library knows for one fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCheck {
    pub seed: Option<u64>,
    pub profile: Option<Profile>,
    pub fiber: SpecialFiber,
    pub problems: Vec<String>,
}

impl FiberCheck {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks the routes against each other on one fiber:
///
/// - both assemblies of `P_φ` agree (via [`verify_trace`]);
/// - the order of `Φ_1` in `P_φ` is `2a + 2t`;
/// - purely additive: `P_φ(1) = φ'_A`, the cokernel check passes, and when
///   the fiber is tame-compatible `χ = P_φ(1) = φ_A`;
/// - otherwise: `P_φ(1) = χ = 0`.
pub fn check_fiber(f: &SpecialFiber) -> Vec<String> {
    let mut problems = Vec::new();
    let s = stats(f);
    let report = match verify_trace(f) {
        Ok(r) => r,
        Err(e) => return vec![e.to_string()],
    };
    let order = report.p_phi.exponent(1);
    if order != 2 * (s.a + s.t) as i64 {
        problems.push(format!(
            "order at 1 is {order}, expected 2a+2t = {}",
            2 * (s.a + s.t)
        ));
    }
    if is_purely_additive(&s) {
        if report.prime_to_p_identity_holds != Some(true) {
            problems.push(format!(
                "P_phi(1) = {} but phi'_A = {:?}",
                report.trace_value, report.phi_a_prime
            ));
        }
        if report.tame_compatible
            && !(report.trace_formula_holds && report.phi_a.as_ref() == Some(&report.trace_value))
        {
            problems.push(format!(
                "tame-compatible but chi = {}, trace = {}, phi_A = {:?}",
                report.euler_char_neron, report.trace_value, report.phi_a
            ));
        }
        match check_q_part_identity(f) {
            Ok(q) if q.holds => {}
            Ok(q) => problems.push(format!("q-part identity fails: {q:?}")),
            Err(e) => problems.push(format!("q-part identity: {e}")),
        }
    } else if !(report.trace_value.is_zero() && report.euler_char_neron == BigInt::zero()) {
        problems.push(format!(
            "not purely additive but trace = {}, chi = {}",
            report.trace_value, report.euler_char_neron
        ));
    }
    if let Some(msg) = report.inconsistency {
        problems.push(msg);
    }
    problems
}

fn check_seed(seed: u64, profile: Profile) -> FiberCheck {
    let fiber = random_fiber(seed, profile);
    FiberCheck {
        seed: Some(seed),
        profile: Some(profile),
        problems: check_fiber(&fiber),
        fiber,
    }
}

/// Checks `count` consecutive seeds starting at `seed`.
pub fn run_campaign(seed: u64, profile: Profile, count: u64) -> Vec<FiberCheck> {
    let seeds: Vec<u64> = (seed..seed + count).collect();
    map(&seeds, |&s| check_seed(s, profile))
}

pub fn run_campaign_sequential(seed: u64, profile: Profile, count: u64) -> Vec<FiberCheck> {
    let seeds: Vec<u64> = (seed..seed + count).collect();
    map_sequential(&seeds, |&s| check_seed(s, profile))
}
