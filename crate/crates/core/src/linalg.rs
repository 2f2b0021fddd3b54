//! Integer linear algebra used as an independent check on component-group
//! orders: Smith normal form, cokernel orders and companion matrices.
//!
//! The tame Tate module is never built. A companion matrix of `P_φ` has the
//! same characteristic polynomial as the monodromy generator, so `Id - C`
//! has the same determinant and its cokernel has the same order. Group
//! structure is not certified, only orders.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{q_primary_decomposition, valuation};
use crate::component_group::phi_prime_additive;
use crate::error::{Error, Result};
use crate::fiber::{is_purely_additive, stats, SpecialFiber};
use crate::monodromy::MonodromyResult;
use crate::poly::IntPoly;

/// Square integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[BigInt]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.n {
                self.entries.swap(a * self.n + j, b * self.n + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.n {
                self.entries.swap(i * self.n + a, i * self.n + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.n {
            let v = c * &self[(src, j)];
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.n {
            let v = c * &self[(i, src)];
            self[(i, dst)] += v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_n`, all nonnegative.
///
/// Elementary row and column operations over the integers, pivoting on the
/// entry of smallest nonzero absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, k) else {
                // trailing block is zero
                out.resize(n, BigInt::zero());
                return out;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let pivot = a[(k, k)].clone();
            let mut clean = true;
            for i in k + 1..n {
                if !a[(i, k)].is_zero() {
                    let q = &a[(i, k)] / &pivot;
                    a.add_row_multiple(i, k, &-q);
                    clean &= a[(i, k)].is_zero();
                }
            }
            for j in k + 1..n {
                if !a[(k, j)].is_zero() {
                    let q = &a[(k, j)] / &pivot;
                    a.add_col_multiple(j, k, &-q);
                    clean &= a[(k, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[(i, j)] % &pivot).is_zero());
            match offender {
                Some((i, _)) => a.add_row_multiple(k, i, &BigInt::one()),
                None => break,
            }
        }
        out.push(a[(k, k)].abs());
    }
    out
}

fn smallest_nonzero(a: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let n = a.dim();
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..n {
        for j in k..n {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                let one = v.is_one();
                best = Some(((i, j), v));
                if one {
                    return best.map(|(ij, _)| ij);
                }
            }
        }
    }
    best.map(|(ij, _)| ij)
}

/// Order of `Z^n / M Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CokerOrder {
    Finite(#[serde(with = "crate::report::biguint_str")] BigUint),
    Infinite,
}

pub fn coker_order(m: &IntMatrix) -> CokerOrder {
    let factors = smith_normal_form(m);
    if factors.iter().any(Zero::is_zero) {
        return CokerOrder::Infinite;
    }
    let prod: BigInt = factors.iter().product();
    CokerOrder::Finite(prod.magnitude().clone())
}

/// Determinant by fraction-free (Bareiss) elimination. Shares no code with
/// [`smith_normal_form`].
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, last
/// column `-c_0, ..., -c_{n-1}`. A constant monic polynomial gives the
/// empty matrix.
pub fn companion(p: &IntPoly) -> Result<IntMatrix> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = p.degree().expect("monic implies nonzero");
    let mut c = IntMatrix::zeros(n);
    for i in 0..n {
        if i + 1 < n {
            c[(i + 1, i)] = BigInt::one();
        }
        c[(i, n - 1)] = -&p.coeffs()[i];
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCheck {
    pub q: u64,
    pub coker_valuation: u32,
    pub phi_valuation: u32,
    pub agrees: bool,
}

/// Outcome of checking `(φ_A)_q = |P_φ(1)|_q^{-1}` through the cokernel of
/// `Id - C(P_φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPartReport {
    #[serde(with = "crate::report::bigint_vec_str")]
    pub invariant_factors: Vec<BigInt>,
    pub coker_order: CokerOrder,
    #[serde(with = "crate::report::bigint_str")]
    pub phi_a_prime: BigInt,
    /// `P_φ` is constant, the matrix is empty and the check is vacuous.
    pub degenerate: bool,
    pub per_prime: Vec<PrimeCheck>,
    /// No factor of the residue characteristic in the cokernel order.
    pub p_part_trivial: bool,
    pub holds: bool,
}

/// Cross-checks `φ'_A` against the cokernel of `Id - C` where `C` is a
/// companion matrix of `P_φ`, prime by prime for every `q != p`.
pub fn check_q_part_identity(f: &SpecialFiber) -> Result<QPartReport> {
    let s = stats(f);
    if !is_purely_additive(&s) {
        return Err(Error::NotPurelyAdditive { a: s.a, t: s.t });
    }
    let mono = MonodromyResult::compute(f)?;
    let poly = mono.p_phi.expand()?;
    let phi_a_prime = phi_prime_additive(f, &s)?;
    let c = companion(&poly)?;
    let degenerate = c.dim() == 0;
    let m = IntMatrix::identity(c.dim()).sub(&c);
    let invariant_factors = smith_normal_form(&m);
    let coker = coker_order(&m);

    let CokerOrder::Finite(order) = &coker else {
        return Ok(QPartReport {
            invariant_factors,
            coker_order: coker,
            phi_a_prime,
            degenerate,
            per_prime: Vec::new(),
            p_part_trivial: false,
            holds: false,
        });
    };
    let phi_mag = phi_a_prime.magnitude();
    let primes: BTreeSet<u64> = q_primary_decomposition(order)
        .into_keys()
        .chain(q_primary_decomposition(phi_mag).into_keys())
        .filter(|&q| q != f.p())
        .collect();
    let per_prime: Vec<PrimeCheck> = primes
        .into_iter()
        .map(|q| {
            let cv = valuation(order, q);
            let pv = valuation(phi_mag, q);
            PrimeCheck {
                q,
                coker_valuation: cv,
                phi_valuation: pv,
                agrees: cv == pv,
            }
        })
        .collect();
    let p_part_trivial = f.p() == 1 || valuation(order, f.p()) == 0;
    let holds = order == phi_mag
        && phi_a_prime.is_positive()
        && per_prime.iter().all(|c| c.agrees)
        && p_part_trivial;
    Ok(QPartReport {
        invariant_factors,
        coker_order: coker,
        phi_a_prime,
        degenerate,
        per_prime,
        p_part_trivial,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::Component;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)), ints(&[1, 1, 1]));
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 4]])),
            ints(&[2, 4])
        );
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&[&[1, 1], &[-1, 3]])),
            ints(&[1, 4])
        );
        // diag(2, 3) is not in normal form: 2 does not divide 3
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])),
            ints(&[1, 6])
        );
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&[
                &[2, 4, 4],
                &[-6, 6, 12],
                &[10, -4, -16]
            ])),
            ints(&[2, 6, 12])
        );
        assert!(smith_normal_form(&IntMatrix::zeros(0)).is_empty());
    }

    #[test]
    fn coker_examples() {
        let m = IntMatrix::from_i64(&[&[1, 1], &[-1, 3]]);
        assert_eq!(coker_order(&m), CokerOrder::Finite(BigUint::from(4u32)));
        assert_eq!(coker_order(&IntMatrix::zeros(2)), CokerOrder::Infinite);
        assert_eq!(
            coker_order(&IntMatrix::identity(4)),
            CokerOrder::Finite(BigUint::one())
        );
        assert_eq!(
            coker_order(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]])),
            CokerOrder::Infinite
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            determinant(&IntMatrix::from_i64(&[&[1, 1], &[-1, 3]])),
            BigInt::from(4)
        );
        assert_eq!(
            determinant(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&IntMatrix::from_i64(&[
                &[2, -3, 1],
                &[2, 0, -1],
                &[1, 4, 5]
            ])),
            BigInt::from(49)
        );
        assert_eq!(determinant(&IntMatrix::zeros(3)), BigInt::zero());
    }

    #[test]
    fn companion_examples() {
        assert_eq!(
            companion(&IntPoly::from_i64(&[-5, 1])).unwrap(),
            IntMatrix::from_i64(&[&[5]])
        );
        assert_eq!(
            companion(&IntPoly::from_i64(&[1, 2, 1])).unwrap(),
            IntMatrix::from_i64(&[&[0, -1], &[1, -2]])
        );
        assert_eq!(
            companion(&IntPoly::from_i64(&[1, -1, 1])).unwrap(),
            IntMatrix::from_i64(&[&[0, -1], &[1, 1]])
        );
        assert_eq!(companion(&IntPoly::from_i64(&[1, 2])), Err(Error::NotMonic));
        assert_eq!(companion(&IntPoly::one()).unwrap().dim(), 0);
    }

    fn star(p: u64, centre: u64, leaves: &[u64]) -> SpecialFiber {
        let mut comps = vec![Component {
            id: "c".into(),
            genus: 0,
            multiplicity: centre,
        }];
        let mut edges = Vec::new();
        for (i, &n) in leaves.iter().enumerate() {
            comps.push(Component {
                id: format!("l{i}"),
                genus: 0,
                multiplicity: n,
            });
            edges.push(("c".to_string(), format!("l{i}")));
        }
        SpecialFiber::new(p, comps, edges).unwrap()
    }

    #[test]
    fn q_part_i0_star() {
        let r = check_q_part_identity(&star(3, 2, &[1, 1, 1, 1])).unwrap();
        assert!(r.holds);
        assert_eq!(r.coker_order, CokerOrder::Finite(BigUint::from(4u32)));
        assert_eq!(r.invariant_factors, ints(&[1, 4]));
        assert_eq!(
            r.per_prime,
            vec![PrimeCheck {
                q: 2,
                coker_valuation: 2,
                phi_valuation: 2,
                agrees: true
            }]
        );
    }

    #[test]
    fn q_part_degenerate_wild() {
        let r = check_q_part_identity(&star(2, 2, &[1, 1, 1, 1])).unwrap();
        assert!(r.degenerate);
        assert!(r.holds);
        assert_eq!(r.coker_order, CokerOrder::Finite(BigUint::one()));
    }

    #[test]
    fn q_part_rejects_non_additive() {
        let i2 = SpecialFiber::new(
            1,
            vec![
                Component {
                    id: "a".into(),
                    genus: 0,
                    multiplicity: 1,
                },
                Component {
                    id: "b".into(),
                    genus: 0,
                    multiplicity: 1,
                },
            ],
            [("a", "b"), ("a", "b")],
        )
        .unwrap();
        assert_eq!(
            check_q_part_identity(&i2),
            Err(Error::NotPurelyAdditive { a: 0, t: 1 })
        );
    }
}
