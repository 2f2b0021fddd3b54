//! Built-in Kodaira fibers with frozen expected values.
//!
//! The expected polynomials and group orders were produced by the pipeline
//! and checked by hand against the per-component product formula, then
//! frozen here as regression fixtures.

use num_bigint::BigInt;

use crate::component_group::{verify_trace, TraceReport};
use crate::error::{Error, Result};
use crate::fiber::{Component, SpecialFiber};
use crate::poly::IntPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub p_phi: IntPoly,
    /// `None` where the fiber is not purely additive.
    pub phi: Option<BigInt>,
    pub trace: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// The fiber over residue characteristic exponent 1; use
    /// [`SpecialFiber::with_p`] for other characteristics.
    pub fiber: SpecialFiber,
    pub expected: Expected,
}

struct Builder {
    comps: Vec<Component>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            comps: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn node(&mut self, multiplicity: u64) -> String {
        let id = format!("E{}", self.comps.len());
        self.comps.push(Component {
            id: id.clone(),
            genus: 0,
            multiplicity,
        });
        id
    }

    fn edge(&mut self, a: &str, b: &str) {
        self.edges.push((a.to_string(), b.to_string()));
    }

    /// Chain of the given multiplicities hung off `from`; returns the node ids.
    fn arm(&mut self, from: Option<&str>, mults: &[u64]) -> Vec<String> {
        let mut prev = from.map(str::to_string);
        let mut ids = Vec::new();
        for &m in mults {
            let id = self.node(m);
            if let Some(p) = &prev {
                self.edge(p, &id);
            }
            prev = Some(id.clone());
            ids.push(id);
        }
        ids
    }

    fn build(self) -> SpecialFiber {
        SpecialFiber::new(1, self.comps, self.edges).expect("corpus fiber is valid")
    }
}

/// `I_n`, `n >= 2`: a cycle of `n` rational components of multiplicity 1.
pub fn i_n(n: usize) -> SpecialFiber {
    assert!(n >= 2, "I_n needs n >= 2 to be sncd");
    let mut b = Builder::new();
    let ids: Vec<_> = (0..n).map(|_| b.node(1)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        b.edge(&ids[i], &ids[j]);
    }
    b.build()
}

/// `I_n^*`: a chain of `n + 1` components of multiplicity 2, each end
/// carrying two leaves of multiplicity 1. `n = 0` is the star `I_0^*`.
pub fn i_n_star(n: usize) -> SpecialFiber {
    let mut b = Builder::new();
    let chain = b.arm(None, &vec![2; n + 1]);
    for end in [&chain[0], &chain[n]] {
        b.arm(Some(end), &[1]);
        b.arm(Some(end), &[1]);
    }
    b.build()
}

/// `IV^*`: centre of multiplicity 3 with three arms `2 - 1`.
pub fn iv_star() -> SpecialFiber {
    let mut b = Builder::new();
    let c = b.node(3);
    for _ in 0..3 {
        b.arm(Some(&c), &[2, 1]);
    }
    b.build()
}

/// `III^*`: chain `1 2 3 4 3 2 1` with a component of multiplicity 2 on the 4.
pub fn iii_star() -> SpecialFiber {
    let mut b = Builder::new();
    let chain = b.arm(None, &[1, 2, 3, 4, 3, 2, 1]);
    b.arm(Some(&chain[3]), &[2]);
    b.build()
}

/// `II^*`: chain `1 2 3 4 5 6 4 2` with a component of multiplicity 3 on the 6.
pub fn ii_star() -> SpecialFiber {
    let mut b = Builder::new();
    let chain = b.arm(None, &[1, 2, 3, 4, 5, 6, 4, 2]);
    b.arm(Some(&chain[5]), &[3]);
    b.build()
}

fn expected(p_phi: &[i64], phi: Option<i64>, trace: i64) -> Expected {
    Expected {
        p_phi: IntPoly::from_i64(p_phi),
        phi: phi.map(BigInt::from),
        trace: BigInt::from(trace),
    }
}

/// Every shipped entry: `I_2..I_10`, `I_0^*..I_10^*`, `IV^*`, `III^*`, `II^*`.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=10 {
        out.push(CorpusEntry {
            name: format!("I{n}"),
            fiber: i_n(n),
            expected: expected(&[1, -2, 1], None, 0),
        });
    }
    for n in 0..=10 {
        out.push(CorpusEntry {
            name: format!("I{n}*"),
            fiber: i_n_star(n),
            expected: expected(&[1, 2, 1], Some(4), 4),
        });
    }
    out.push(CorpusEntry {
        name: "IV*".into(),
        fiber: iv_star(),
        expected: expected(&[1, 1, 1], Some(3), 3),
    });
    out.push(CorpusEntry {
        name: "III*".into(),
        fiber: iii_star(),
        expected: expected(&[1, 0, 1], Some(2), 2),
    });
    out.push(CorpusEntry {
        name: "II*".into(),
        fiber: ii_star(),
        expected: expected(&[1, -1, 1], Some(1), 1),
    });
    out
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCorpusEntry(name.to_string()))
}

/// Smallest prime not dividing any multiplicity of `f`.
pub fn coprime_characteristic(f: &SpecialFiber) -> u64 {
    (2u64..)
        .filter(|&q| crate::arith::is_prime(q))
        .find(|&q| f.components().iter().all(|c| c.multiplicity % q != 0))
        .expect("infinitely many primes")
}

/// Result of replaying one corpus entry.
#[derive(Clone, Debug)]
pub struct EntryCheck {
    pub name: String,
    pub p: u64,
    pub report: TraceReport,
    pub mismatches: Vec<String>,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs the full pipeline on an entry at characteristic `p` and compares
/// against the frozen values. `p` is expected to be coprime to all
/// multiplicities (the frozen values are the tame ones).
pub fn verify_entry(e: &CorpusEntry, p: u64) -> Result<EntryCheck> {
    let f = e.fiber.with_p(p)?;
    let report = verify_trace(&f)?;
    let mut mismatches = Vec::new();
    if report.p_phi_poly.as_ref() != Some(&e.expected.p_phi) {
        mismatches.push(format!(
            "P_phi: got {:?}, expected {}",
            report.p_phi_poly.as_ref().map(ToString::to_string),
            e.expected.p_phi
        ));
    }
    if report.phi_a != e.expected.phi {
        mismatches.push(format!(
            "phi_A: got {:?}, expected {:?}",
            report.phi_a, e.expected.phi
        ));
    }
    if report.trace_value != e.expected.trace {
        mismatches.push(format!(
            "trace: got {}, expected {}",
            report.trace_value, e.expected.trace
        ));
    }
    if !report.trace_formula_holds {
        mismatches.push("trace formula does not hold".into());
    }
    if let Some(msg) = &report.inconsistency {
        mismatches.push(msg.clone());
    }
    Ok(EntryCheck {
        name: e.name.clone(),
        p,
        report,
        mismatches,
    })
}
