//! Exact arithmetic in Z/n with a runtime modulus.
//!
//! Besides the residue type itself this module provides the prime-power
//! decomposition of a modulus, Chinese-remainder recombination, and an
//! enumerating solver for small linear systems. The solver searches each
//! prime-power factor exhaustively and glues the per-factor solution sets
//! back together, which is all the centralizer and progression solvers need.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default per-factor candidate budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A modulus `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct Modulus(u32);

/// One factor `p^a` of a modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub prime: u32,
    pub exponent: u32,
    pub value: u32,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 || n > u32::MAX as u64 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n as u32))
    }

    /// The modulus 12 used throughout the pitch-class model.
    pub const TWELVE: Modulus = Modulus(12);

    pub fn get(self) -> u32 {
        self.0
    }

    /// Prime-power factorization in increasing order of primes.
    pub fn factorization(self) -> Vec<PrimePower> {
        let mut rest = self.0;
        let mut out = Vec::new();
        let mut p = 2u32;
        while (p as u64) * (p as u64) <= rest as u64 {
            if rest.is_multiple_of(p) {
                let mut exponent = 0;
                let mut value = 1;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    exponent += 1;
                    value *= p;
                }
                out.push(PrimePower { prime: p, exponent, value });
            }
            p += 1;
        }
        if rest > 1 {
            out.push(PrimePower { prime: rest, exponent: 1, value: rest });
        }
        out
    }

    pub fn residue(self, x: i64) -> Residue {
        normalize(x, self)
    }

    pub fn zero(self) -> Residue {
        Residue { value: 0, modulus: self }
    }

    pub fn one(self) -> Residue {
        Residue { value: 1, modulus: self }
    }

    /// Reduce an arbitrary integer into `[0, n)`.
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub(crate) fn check(self, other: Modulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.0, right: other.0 })
        }
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;
    fn try_from(n: u64) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z/n, stored in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        is_unit(self)
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let n = self.modulus.0 as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % n;
            }
            base = base * base % n;
            e >>= 1;
        }
        Residue { value: acc as u32, modulus: self.modulus }
    }

    pub fn try_add(self, rhs: Residue) -> Result<Residue> {
        self.modulus.check(rhs.modulus)?;
        let n = self.modulus.0 as u64;
        let v = (self.value as u64 + rhs.value as u64) % n;
        Ok(Residue { value: v as u32, modulus: self.modulus })
    }

    pub fn try_mul(self, rhs: Residue) -> Result<Residue> {
        self.modulus.check(rhs.modulus)?;
        let n = self.modulus.0 as u64;
        let v = self.value as u64 * rhs.value as u64 % n;
        Ok(Residue { value: v as u32, modulus: self.modulus })
    }

    pub fn try_sub(self, rhs: Residue) -> Result<Residue> {
        self.try_add(-rhs)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on mismatched moduli; use the `try_*` methods when the
// moduli are not known to agree.
impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.try_add(rhs).expect("residue addition across moduli")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.try_sub(rhs).expect("residue subtraction across moduli")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.try_mul(rhs).expect("residue multiplication across moduli")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let n = self.modulus.0;
        Residue { value: (n - self.value) % n, modulus: self.modulus }
    }
}

/// `x mod n` in `[0, n)`.
pub fn normalize(x: i64, n: Modulus) -> Residue {
    Residue { value: n.reduce(x), modulus: n }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_unit(x: Residue) -> bool {
    gcd(x.value as u64, x.modulus.0 as u64) == 1
}

/// All units of Z/n in increasing order.
pub fn units(n: Modulus) -> Vec<Residue> {
    (1..n.0)
        .filter(|&v| gcd(v as u64, n.0 as u64) == 1)
        .map(|v| Residue { value: v, modulus: n })
        .collect()
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r == 1 {
        Some(old_s.rem_euclid(m))
    } else {
        None
    }
}

/// Split `n` into its prime-power factors, smallest prime first.
pub fn crt_split(n: Modulus) -> Vec<Modulus> {
    n.factorization().into_iter().map(|pp| Modulus(pp.value)).collect()
}

/// Recombine one residue per prime-power factor of `n` (in `crt_split` order).
pub fn crt_combine(n: Modulus, residues: &[Residue]) -> Result<Residue> {
    let factors = crt_split(n);
    if factors.len() != residues.len() {
        return Err(Error::LengthMismatch { expected: factors.len(), actual: residues.len() });
    }
    let coefficients = crt_coefficients(n);
    let mut acc: u128 = 0;
    for ((q, r), e) in factors.iter().zip(residues).zip(&coefficients) {
        q.check(r.modulus)?;
        acc += r.value as u128 * *e as u128;
    }
    Ok(Residue { value: (acc % n.0 as u128) as u32, modulus: n })
}

/// Idempotents `e_i` with `e_i ≡ 1 (mod q_i)` and `e_i ≡ 0 (mod q_j)`, `j ≠ i`.
fn crt_coefficients(n: Modulus) -> Vec<u64> {
    crt_split(n)
        .iter()
        .map(|q| {
            let q = q.0 as i64;
            let cofactor = n.0 as i64 / q;
            let inv = inverse_mod(cofactor, q).expect("prime-power factors are coprime");
            ((cofactor as i128 * inv as i128) % n.0 as i128) as u64
        })
        .collect()
}

/// A linear system `rows · x ≡ rhs (mod n)` in a fixed number of unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    modulus: Modulus,
    unknowns: usize,
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

/// The complete solution set of a [`LinearSystem`], sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub modulus: Modulus,
    pub unknowns: usize,
    pub solutions: Vec<Vec<u32>>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.solutions.binary_search_by(|s| s.as_slice().cmp(x)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.solutions.iter().map(Vec::as_slice)
    }
}

impl LinearSystem {
    pub fn new(modulus: Modulus, unknowns: usize, rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<Self> {
        if rhs.len() != rows.len() {
            return Err(Error::LengthMismatch { expected: rows.len(), actual: rhs.len() });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != unknowns) {
            return Err(Error::LengthMismatch { expected: unknowns, actual: bad.len() });
        }
        Ok(LinearSystem { modulus, unknowns, rows, rhs })
    }

    pub fn homogeneous(modulus: Modulus, unknowns: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        let rhs = vec![0; rows.len()];
        Self::new(modulus, unknowns, rows, rhs)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn solve(&self) -> Result<SolutionSet> {
        self.solve_with_budget(DEFAULT_BUDGET)
    }

    /// Enumerate every solution.
    ///
    /// Each prime-power factor `q` is searched over all `q^d` candidates; the
    /// search is refused if that count exceeds `budget` for any factor, or if
    /// the recombined solution set would.
    pub fn solve_with_budget(&self, budget: u64) -> Result<SolutionSet> {
        let factors = crt_split(self.modulus);
        for q in &factors {
            let candidates = (q.0 as u128).pow(self.unknowns as u32);
            if candidates > budget as u128 {
                return Err(Error::BudgetExceeded { candidates, budget });
            }
        }

        let per_factor: Vec<Vec<Vec<u32>>> = factors.iter().map(|q| self.enumerate_factor(q.0)).collect();
        let total: u128 = per_factor.iter().map(|s| s.len() as u128).product();
        if total > budget as u128 {
            return Err(Error::BudgetExceeded { candidates: total, budget });
        }

        let coefficients = crt_coefficients(self.modulus);
        let n = self.modulus.0 as u64;
        let mut solutions: Vec<Vec<u32>> = vec![vec![0; self.unknowns]];
        for (sols, e) in per_factor.iter().zip(&coefficients) {
            let mut next = Vec::with_capacity(solutions.len() * sols.len());
            for partial in &solutions {
                for s in sols {
                    let combined = partial
                        .iter()
                        .zip(s)
                        .map(|(&acc, &v)| ((acc as u64 + v as u64 * e) % n) as u32)
                        .collect();
                    next.push(combined);
                }
            }
            solutions = next;
        }
        solutions.sort_unstable();
        Ok(SolutionSet { modulus: self.modulus, unknowns: self.unknowns, solutions })
    }

    /// All solutions modulo the prime power `q`, by odometer enumeration with
    /// incrementally maintained row values.
    fn enumerate_factor(&self, q: u32) -> Vec<Vec<u32>> {
        let q64 = q as i64;
        let coeffs: Vec<Vec<i64>> =
            self.rows.iter().map(|r| r.iter().map(|c| c.rem_euclid(q64)).collect()).collect();
        let targets: Vec<i64> = self.rhs.iter().map(|c| c.rem_euclid(q64)).collect();
        let d = self.unknowns;

        let mut digits = vec![0u32; d];
        let mut acc = vec![0i64; coeffs.len()];
        let mut out = Vec::new();
        loop {
            if acc.iter().zip(&targets).all(|(a, t)| a == t) {
                out.push(digits.clone());
            }
            // advance the odometer, least significant digit last
            let mut pos = d;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if digits[pos] + 1 < q {
                    digits[pos] += 1;
                    for (a, row) in acc.iter_mut().zip(&coeffs) {
                        *a = (*a + row[pos]) % q64;
                    }
                    break;
                }
                digits[pos] = 0;
                for (a, row) in acc.iter_mut().zip(&coeffs) {
                    *a = (*a - row[pos] * (q64 - 1)).rem_euclid(q64);
                }
            }
        }
    }
}

/// Solve `rows · x ≡ 0 (mod n)` with the default budget.
pub fn solve_homogeneous(modulus: Modulus, unknowns: usize, rows: Vec<Vec<i64>>) -> Result<SolutionSet> {
    LinearSystem::homogeneous(modulus, unknowns, rows)?.solve()
}
