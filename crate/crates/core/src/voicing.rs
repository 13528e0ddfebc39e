//! The voicing group 𝒥 = ⟨U, V, W⟩.
//!
//! Each generator reflects a triple across the axis set by two of its own
//! entries: `J^{r,s}` sends every entry `e` to `v_r + v_s − e`. Every element
//! of 𝒥 is uniquely `U^k (UV)^m (UW)^n` with `k ∈ {0,1}` and `m, n ∈ Z/n`,
//! and that triple is the representation used here.
//!
//! `(UV)^m (UW)^n` adds `m(z−x) + n(z−y)` to every entry of `(x, y, z)`, and
//! conjugating by `U` inverts it, which gives the product rule
//!
//! ```text
//! (k₁,m₁,n₁)·(k₂,m₂,n₂) = (k₁⊕k₂, m₂ + (−1)^{k₂} m₁, n₂ + (−1)^{k₂} n₁)
//! ```

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::modring::{gcd, Modulus};

/// One of the three voicing reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorTag {
    /// `J^{1,2}`
    U,
    /// `J^{2,3}`
    V,
    /// `J^{3,1}`
    W,
}

impl GeneratorTag {
    pub const ALL: [GeneratorTag; 3] = [GeneratorTag::U, GeneratorTag::V, GeneratorTag::W];

    /// The pair of voices whose sum sets the reflection axis.
    pub fn voices(self) -> (usize, usize) {
        match self {
            GeneratorTag::U => (1, 2),
            GeneratorTag::V => (2, 3),
            GeneratorTag::W => (3, 1),
        }
    }

    /// `J^{r,s}`, with `J^{r,s} = J^{s,r}`.
    pub fn from_voices(r: usize, s: usize) -> Result<Self> {
        match (r.min(s), r.max(s)) {
            (1, 2) => Ok(GeneratorTag::U),
            (2, 3) => Ok(GeneratorTag::V),
            (1, 3) => Ok(GeneratorTag::W),
            _ => Err(Error::InvalidVoicePair(r, s)),
        }
    }

    pub fn matrix(self, modulus: Modulus) -> Mat3 {
        generator_matrix(self, modulus)
    }

    pub fn element(self, modulus: Modulus) -> JElement {
        match self {
            GeneratorTag::U => JElement::new(1, 0, 0, modulus),
            GeneratorTag::V => JElement::new(1, 1, 0, modulus),
            GeneratorTag::W => JElement::new(1, 0, 1, modulus),
        }
    }

    pub fn letter(self) -> char {
        match self {
            GeneratorTag::U => 'U',
            GeneratorTag::V => 'V',
            GeneratorTag::W => 'W',
        }
    }
}

pub fn generator_matrix(g: GeneratorTag, modulus: Modulus) -> Mat3 {
    let rows = match g {
        GeneratorTag::U => [[0, 1, 0], [1, 0, 0], [1, 1, -1]],
        GeneratorTag::V => [[-1, 1, 1], [0, 0, 1], [0, 1, 0]],
        GeneratorTag::W => [[0, 0, 1], [1, -1, 1], [1, 0, 0]],
    };
    Mat3::new(rows, modulus)
}

/// `J^{r,s}(v)`: every entry `e` becomes `v_r + v_s − e`.
pub fn j_reflection(r: usize, s: usize, v: &Vec3) -> Result<Vec3> {
    if r == s || !(1..=3).contains(&r) || !(1..=3).contains(&s) {
        return Err(Error::InvalidVoicePair(r, s));
    }
    let axis = v.get(r - 1) as i64 + v.get(s - 1) as i64;
    let e = v.entries().map(|x| axis - x as i64);
    Ok(Vec3::new(e, v.modulus()))
}

/// `U^k (UV)^m (UW)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JElement {
    k: u8,
    m: u32,
    n: u32,
    modulus: Modulus,
}

impl JElement {
    /// `k` is taken mod 2, `m` and `n` mod the modulus.
    ///
    /// Over Z/2 the matrix of `U` equals that of `(UV)(UW)`, so the group has
    /// order 4 rather than 8; there `k = 1` is folded into the exponents to
    /// keep equality of elements the same as equality of matrices.
    pub fn new(k: i64, m: i64, n: i64, modulus: Modulus) -> Self {
        let odd = k.rem_euclid(2) == 1;
        if odd && modulus.get() == 2 {
            return Self::new(0, m + 1, n + 1, modulus);
        }
        JElement { k: odd as u8, m: modulus.reduce(m), n: modulus.reduce(n), modulus }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::new(0, 0, 0, modulus)
    }

    /// `UV`, a generator of the rotation part.
    pub fn uv(modulus: Modulus) -> Self {
        Self::new(0, 1, 0, modulus)
    }

    /// `UW`.
    pub fn uw(modulus: Modulus) -> Self {
        Self::new(0, 0, 1, modulus)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Exponent of `UV`.
    pub fn uv_exp(&self) -> u32 {
        self.m
    }

    /// Exponent of `UW`.
    pub fn uw_exp(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.m == 0 && self.n == 0
    }

    /// Whether the element lies in 𝒥⁺ = ⟨UV, UW⟩.
    pub fn is_plus(&self) -> bool {
        self.k == 0
    }

    pub fn try_mul(&self, rhs: &JElement) -> Result<JElement> {
        self.modulus.check(rhs.modulus)?;
        let sign = if rhs.k == 0 { 1 } else { -1 };
        Ok(JElement::new(
            (self.k ^ rhs.k) as i64,
            rhs.m as i64 + sign * self.m as i64,
            rhs.n as i64 + sign * self.n as i64,
            self.modulus,
        ))
    }

    /// Elements with `k = 1` are involutions.
    pub fn inverse(&self) -> JElement {
        if self.k == 1 {
            *self
        } else {
            JElement::new(0, -(self.m as i64), -(self.n as i64), self.modulus)
        }
    }

    pub fn pow(&self, e: i64) -> JElement {
        if self.k == 1 {
            return if e.rem_euclid(2) == 0 { Self::identity(self.modulus) } else { *self };
        }
        let n = self.modulus.get() as i128;
        let scale = |x: u32| ((x as i128 * e as i128).rem_euclid(n)) as i64;
        JElement::new(0, scale(self.m), scale(self.n), self.modulus)
    }

    /// The least `t ≥ 1` with `self^t = Id`.
    pub fn order(&self) -> u64 {
        if self.k == 1 {
            return 2;
        }
        let n = self.modulus.get() as u64;
        n / gcd(gcd(self.m as u64, self.n as u64), n)
    }

    /// The matrix of the element.
    pub fn matrix(&self) -> Mat3 {
        normal_form_matrix(self)
    }

    /// Act on a triple: shift by `m(z−x) + n(z−y)`, then apply `U` if `k = 1`.
    pub fn try_apply(&self, v: &Vec3) -> Result<Vec3> {
        self.modulus.check(v.modulus())?;
        let [x, y, z] = v.entries().map(|e| e as i64);
        let shifted = v.shift(self.m as i64 * (z - x) + self.n as i64 * (z - y));
        if self.k == 1 {
            j_reflection(1, 2, &shifted)
        } else {
            Ok(shifted)
        }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.try_apply(v).expect("element and vector moduli differ")
    }
}

impl Mul for JElement {
    type Output = JElement;
    fn mul(self, rhs: JElement) -> JElement {
        self.try_mul(&rhs).expect("element moduli differ")
    }
}

impl fmt::Display for JElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("Id");
        }
        let mut parts = Vec::new();
        if self.k == 1 {
            parts.push("U".to_string());
        }
        if self.m != 0 {
            parts.push(format!("(UV)^{}", self.m));
        }
        if self.n != 0 {
            parts.push(format!("(UW)^{}", self.n));
        }
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for JElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Closed-form matrix of `U^k (UV)^m (UW)^n`.
pub fn normal_form_matrix(e: &JElement) -> Mat3 {
    let (m, n) = (e.m as i64, e.n as i64);
    let rows = if e.k == 0 {
        [[1 - m, -n, m + n], [-m, 1 - n, m + n], [-m, -n, 1 + m + n]]
    } else {
        [[-m, 1 - n, m + n], [1 - m, -n, m + n], [1 - m, 1 - n, -1 + m + n]]
    };
    Mat3::new(rows, e.modulus)
}

/// Recover the normal form from a matrix, or `NotInJ`.
pub fn decode(a: &Mat3) -> Result<JElement> {
    let modulus = a.modulus();
    let (a11, a12) = (a.get(0, 0) as i64, a.get(0, 1) as i64);
    [JElement::new(0, 1 - a11, -a12, modulus), JElement::new(1, -a11, 1 - a12, modulus)]
        .into_iter()
        .find(|e| normal_form_matrix(e) == *a)
        .ok_or(Error::NotInJ)
}

/// Normal form of a product of generators, leftmost factor outermost.
pub fn word_to_element(word: &[GeneratorTag], modulus: Modulus) -> JElement {
    word.iter().fold(JElement::identity(modulus), |acc, g| acc * g.element(modulus))
}

/// All elements, sorted by normal form: `2n²` of them, except 4 when n = 2.
pub fn enumerate_j(modulus: Modulus) -> Vec<JElement> {
    let n = modulus.get() as i64;
    let signs = if n == 2 { 1 } else { 2 };
    let mut out = Vec::with_capacity((signs * n * n) as usize);
    for k in 0..signs {
        for m in 0..n {
            for nn in 0..n {
                out.push(JElement::new(k, m, nn, modulus));
            }
        }
    }
    out
}
