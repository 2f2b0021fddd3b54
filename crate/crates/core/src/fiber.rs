//! Special fibers of sncd models presented as weighted dual graphs.
//!
//! A fiber is a connected multigraph: one vertex per irreducible component
//! `E_i` carrying its genus and multiplicity `N_i`, one edge per intersection
//! point. Relative minimality is not checked; it is not decidable from this
//! data and is left to the caller.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_to_p_part};
use crate::error::{Error, Result, ValidationError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub id: String,
    pub genus: u64,
    pub multiplicity: u64,
}

/// Validated special fiber. Edges are stored as index pairs into
/// `components`, `lo < hi`, sorted; repeated pairs are repeated intersection
/// points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFiber {
    p: u64,
    components: Vec<Component>,
    edges: Vec<(usize, usize)>,
}

/// Wire form of a fiber. Keys may appear in any order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberDocument {
    pub p: u64,
    pub components: Vec<ComponentDocument>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDocument {
    pub id: String,
    pub genus: i64,
    pub multiplicity: i64,
}

impl SpecialFiber {
    /// Validates and builds a fiber from components and id-pair edges.
    pub fn new<S: AsRef<str>>(
        p: u64,
        components: Vec<Component>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        if p != 1 && !is_prime(p) {
            return Err(ValidationError::BadCharacteristic(p).into());
        }
        if components.is_empty() {
            return Err(ValidationError::Empty.into());
        }
        let mut index = HashMap::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            if c.multiplicity == 0 {
                return Err(ValidationError::NonpositiveMultiplicity {
                    id: c.id.clone(),
                    value: 0,
                }
                .into());
            }
            if index.insert(c.id.as_str(), i).is_some() {
                return Err(ValidationError::DuplicateId(c.id.clone()).into());
            }
        }
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| ValidationError::UnknownEndpoint(id.to_string()))
        };
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (i, j) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if i == j {
                return Err(ValidationError::SelfLoop(a.as_ref().to_string()).into());
            }
            pairs.push((i.min(j), i.max(j)));
        }
        pairs.sort_unstable();
        let fiber = SpecialFiber {
            p,
            components,
            edges: pairs,
        };
        if !fiber.is_connected() {
            return Err(ValidationError::Disconnected.into());
        }
        Ok(fiber)
    }

    pub fn from_document(doc: &FiberDocument) -> Result<Self> {
        let mut comps = Vec::with_capacity(doc.components.len());
        for c in &doc.components {
            if c.multiplicity < 1 {
                return Err(ValidationError::NonpositiveMultiplicity {
                    id: c.id.clone(),
                    value: c.multiplicity,
                }
                .into());
            }
            if c.genus < 0 {
                return Err(ValidationError::NegativeGenus {
                    id: c.id.clone(),
                    value: c.genus,
                }
                .into());
            }
            comps.push(Component {
                id: c.id.clone(),
                genus: c.genus as u64,
                multiplicity: c.multiplicity as u64,
            });
        }
        Self::new(
            doc.p,
            comps,
            doc.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
    }

    pub fn to_document(&self) -> FiberDocument {
        FiberDocument {
            p: self.p,
            components: self
                .components
                .iter()
                .map(|c| ComponentDocument {
                    id: c.id.clone(),
                    genus: c.genus as i64,
                    multiplicity: c.multiplicity as i64,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| (self.components[i].id.clone(), self.components[j].id.clone()))
                .collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Same graph over a different residue characteristic exponent.
    pub fn with_p(&self, p: u64) -> Result<Self> {
        if p != 1 && !is_prime(p) {
            return Err(ValidationError::BadCharacteristic(p).into());
        }
        Ok(SpecialFiber { p, ..self.clone() })
    }

    /// Multiplies every multiplicity by `m`.
    pub fn scaled(&self, m: u64) -> Self {
        assert!(m >= 1, "scale factor must be positive");
        let mut out = self.clone();
        for c in &mut out.components {
            c.multiplicity *= m;
        }
        out
    }

    fn is_connected(&self) -> bool {
        let n = self.components.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Parses and validates a JSON fiber document.
pub fn parse_fiber(document: &str) -> Result<SpecialFiber> {
    let doc: FiberDocument =
        serde_json::from_str(document).map_err(|e| Error::Parse(e.to_string()))?;
    SpecialFiber::from_document(&doc)
}

/// Combinatorial statistics of a fiber. Per-component vectors follow the
/// order of [`SpecialFiber::components`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberStats {
    /// Number of intersection points on each component.
    pub d: Vec<u64>,
    /// Euler characteristic `2 - 2g_i - d_i` of the open part of each component.
    pub chi: Vec<i64>,
    /// Sum of component genera.
    pub a: u64,
    /// First Betti number of the dual graph.
    pub t: u64,
    /// gcd of the multiplicities.
    pub delta: u64,
    pub delta_prime: u64,
    /// Prime-to-p parts of the multiplicities.
    pub n_prime: Vec<u64>,
}

pub fn stats(f: &SpecialFiber) -> FiberStats {
    let n = f.components.len();
    let mut d = vec![0u64; n];
    for &(i, j) in &f.edges {
        d[i] += 1;
        d[j] += 1;
    }
    let chi = f
        .components
        .iter()
        .zip(&d)
        .map(|(c, &di)| 2 - 2 * c.genus as i64 - di as i64)
        .collect();
    let a = f.components.iter().map(|c| c.genus).sum();
    // connected: edges - vertices + 1
    let t = (f.edges.len() + 1 - n) as u64;
    let delta = f
        .components
        .iter()
        .fold(0u64, |g, c| g.gcd(&c.multiplicity));
    FiberStats {
        d,
        chi,
        a,
        t,
        delta,
        delta_prime: prime_to_p_part(delta, f.p),
        n_prime: f
            .components
            .iter()
            .map(|c| prime_to_p_part(c.multiplicity, f.p))
            .collect(),
    }
}

/// `a = 0` and `t = 0`.
pub fn is_purely_additive(s: &FiberStats) -> bool {
    s.a == 0 && s.t == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub component: String,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.component, self.reason)
    }
}

/// Necessary condition for cohomological tameness: any component whose
/// multiplicity is divisible by `p` must have `χ(E_i^o) = 0`.
pub fn tame_compatibility(f: &SpecialFiber, s: &FiberStats) -> Vec<Violation> {
    f.components
        .iter()
        .enumerate()
        .filter(|&(i, c)| c.multiplicity != s.n_prime[i] && s.chi[i] != 0)
        .map(|(i, c)| Violation {
            component: c.id.clone(),
            reason: format!(
                "multiplicity {} divisible by p = {} but chi = {}",
                c.multiplicity, f.p, s.chi[i]
            ),
        })
        .collect()
}

/// Components `i` for which `N_i` does not divide the sum of neighbouring
/// multiplicities, i.e. `E_i^2` would not be an integer. Advisory only.
pub fn realizability_check(f: &SpecialFiber) -> Vec<Violation> {
    let mut sums = vec![0u64; f.components.len()];
    for &(i, j) in &f.edges {
        sums[i] += f.components[j].multiplicity;
        sums[j] += f.components[i].multiplicity;
    }
    f.components
        .iter()
        .zip(sums)
        .filter(|(c, sum)| sum % c.multiplicity != 0)
        .map(|(c, sum)| Violation {
            component: c.id.clone(),
            reason: format!(
                "multiplicity {} does not divide neighbour sum {sum}",
                c.multiplicity
            ),
        })
        .collect()
}

/// Multiset of `(N'_i, d_i, g_i)` triples, the data the trace depends on.
pub fn local_profile(f: &SpecialFiber, s: &FiberStats) -> BTreeMap<(u64, u64, u64), usize> {
    let mut out = BTreeMap::new();
    for (i, c) in f.components.iter().enumerate() {
        *out.entry((s.n_prime[i], s.d[i], c.genus)).or_insert(0) += 1;
    }
    out
}
