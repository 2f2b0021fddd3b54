//! Deterministic pseudo-random fibers for property campaigns.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fiber::{Component, SpecialFiber};

const CHARACTERISTICS: [u64; 5] = [1, 2, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Genus-0 trees with `N_i | Σ_{j~i} N_j` everywhere and gcd 1.
    PurelyAdditiveTree,
    /// Connected graphs with first Betti number at least 1.
    WithCycles,
    /// Graphs with at least one component of positive genus.
    MixedGenus,
}

impl Profile {
    pub const ALL: [Profile; 3] = [
        Profile::PurelyAdditiveTree,
        Profile::WithCycles,
        Profile::MixedGenus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Profile::PurelyAdditiveTree => "purely-additive-tree",
            Profile::WithCycles => "with-cycles",
            Profile::MixedGenus => "mixed-genus",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown profile `{s}`"))
    }
}

#[derive(Default)]
struct Graph {
    genus: Vec<u64>,
    mult: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    fn add(&mut self, genus: u64, mult: u64) -> usize {
        self.genus.push(genus);
        self.mult.push(mult);
        self.mult.len() - 1
    }

    fn into_fiber(self, p: u64) -> SpecialFiber {
        let comps = self
            .genus
            .iter()
            .zip(&self.mult)
            .enumerate()
            .map(|(i, (&genus, &multiplicity))| Component {
                id: format!("E{i}"),
                genus,
                multiplicity,
            })
            .collect();
        let edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| (format!("E{a}"), format!("E{b}")))
            .collect();
        SpecialFiber::new(p, comps, edges).expect("generator produced an invalid fiber")
    }
}

fn random_tree(
    rng: &mut ChaCha8Rng,
    g: &mut Graph,
    size: usize,
    mult: impl Fn(&mut ChaCha8Rng) -> u64,
) {
    for i in 0..size {
        let v = g.add(0, mult(rng));
        if i > 0 {
            let parent = rng.gen_range(0..i);
            g.edges.push((parent, v));
        }
    }
}

/// Hangs a chain off `at` whose first component has multiplicity `first`.
///
/// Subsequent multiplicities follow `r_{k+1} = b_k r_k - r_{k-1}` with
/// `b_k = ceil(r_{k-1} / r_k)`, stopping once `r_k | r_{k-1}`. Every chain
/// component then satisfies the divisibility rule, and only the sum at `at`
/// changes (by `first`).
fn attach_arm(g: &mut Graph, at: usize, first: u64) {
    let mut prev_mult = g.mult[at];
    let mut prev = at;
    let mut cur = first;
    loop {
        let v = g.add(0, cur);
        g.edges.push((prev, v));
        if prev_mult.is_multiple_of(cur) {
            return;
        }
        let b = prev_mult.div_ceil(cur);
        let next = b * cur - prev_mult;
        prev_mult = cur;
        prev = v;
        cur = next;
    }
}

fn purely_additive_tree(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut g = Graph::default();
        let size = rng.gen_range(1..=6);
        random_tree(rng, &mut g, size, |r| r.gen_range(1..=9));
        let base_edges = g.edges.clone();
        for v in 0..size {
            let n = g.mult[v];
            if n == 1 {
                continue;
            }
            let sum: u64 = base_edges
                .iter()
                .filter_map(|&(a, b)| match (a == v, b == v) {
                    (true, _) => Some(g.mult[b]),
                    (_, true) => Some(g.mult[a]),
                    _ => None,
                })
                .sum();
            let deficit = (n - sum % n) % n;
            if deficit > 1 && rng.gen_bool(0.5) {
                let split = rng.gen_range(1..deficit);
                attach_arm(&mut g, v, split);
                attach_arm(&mut g, v, deficit - split);
            } else if deficit > 0 {
                attach_arm(&mut g, v, deficit);
            }
            if rng.gen_bool(0.3) {
                let a = rng.gen_range(1..n);
                attach_arm(&mut g, v, a);
                attach_arm(&mut g, v, n - a);
            }
        }
        let gcd = g.mult.iter().fold(0u64, |acc, &m| acc.gcd(&m));
        if gcd == 1 {
            return g;
        }
    }
}

fn with_cycles(rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::default();
    let size = rng.gen_range(2..=7);
    random_tree(rng, &mut g, size, |r| r.gen_range(1..=6));
    for _ in 0..rng.gen_range(1..=3) {
        let a = rng.gen_range(0..size);
        let mut b = rng.gen_range(0..size - 1);
        if b >= a {
            b += 1;
        }
        g.edges.push((a, b));
    }
    for genus in g.genus.iter_mut() {
        if rng.gen_bool(0.2) {
            *genus = 1;
        }
    }
    g
}

fn mixed_genus(rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::default();
    let size = rng.gen_range(1..=7);
    random_tree(rng, &mut g, size, |r| r.gen_range(1..=6));
    if size >= 2 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..size);
        let b = (a + rng.gen_range(1..size)) % size;
        g.edges.push((a, b));
    }
    for genus in g.genus.iter_mut() {
        *genus = rng.gen_range(0..=2);
    }
    let lucky = rng.gen_range(0..size);
    g.genus[lucky] = g.genus[lucky].max(1);
    g
}

/// Fiber for `seed` under `profile`. The residue characteristic exponent is
/// drawn from `{1, 2, 3, 5, 7}`, so wild cases appear too.
pub fn random_fiber(seed: u64, profile: Profile) -> SpecialFiber {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match profile {
        Profile::PurelyAdditiveTree => purely_additive_tree(&mut rng),
        Profile::WithCycles => with_cycles(&mut rng),
        Profile::MixedGenus => mixed_genus(&mut rng),
    };
    let p = *CHARACTERISTICS.choose(&mut rng).expect("nonempty");
    g.into_fiber(p)
}
