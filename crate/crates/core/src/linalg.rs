//! Three-vectors, 3×3 matrices, permutations of three letters and
//! componentwise affine maps over Z/n.
//!
//! Vectors are columns and matrices act on the left. There is deliberately no
//! general matrix inverse: inverses are only ever needed for group elements,
//! and those come from normal-form arithmetic.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modring::{Modulus, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3 {
    e: [u32; 3],
    modulus: Modulus,
}

impl Vec3 {
    /// Build a vector, reducing each entry into `[0, n)`.
    pub fn new(entries: [i64; 3], modulus: Modulus) -> Self {
        Vec3 { e: entries.map(|x| modulus.reduce(x)), modulus }
    }

    pub fn from_residues(entries: [Residue; 3]) -> Result<Self> {
        let modulus = entries[0].modulus();
        for r in &entries[1..] {
            modulus.check(r.modulus())?;
        }
        Ok(Vec3 { e: entries.map(Residue::value), modulus })
    }

    pub fn zero(modulus: Modulus) -> Self {
        Vec3 { e: [0; 3], modulus }
    }

    /// `(q, q, q)`.
    pub fn constant(q: i64, modulus: Modulus) -> Self {
        Self::new([q; 3], modulus)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> [u32; 3] {
        self.e
    }

    /// Entry at zero-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.e[i]
    }

    pub fn residue(&self, i: usize) -> Residue {
        self.modulus.residue(self.e[i] as i64)
    }

    fn signed(&self) -> [i64; 3] {
        self.e.map(|x| x as i64)
    }

    pub fn try_add(&self, other: &Vec3) -> Result<Vec3> {
        self.modulus.check(other.modulus)?;
        let (a, b) = (self.signed(), other.signed());
        Ok(Vec3::new([a[0] + b[0], a[1] + b[1], a[2] + b[2]], self.modulus))
    }

    /// Add `c` to every entry.
    pub fn shift(&self, c: i64) -> Vec3 {
        let a = self.signed();
        Vec3::new([a[0] + c, a[1] + c, a[2] + c], self.modulus)
    }

    pub fn scale(&self, c: i64) -> Vec3 {
        let a = self.signed();
        Vec3::new([a[0] * c, a[1] * c, a[2] * c], self.modulus)
    }

    /// The underlying pitch-class set, sorted and deduplicated.
    pub fn pitch_classes(&self) -> Vec<u32> {
        let mut v = self.e.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.e[0], self.e[1], self.e[2])
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.e.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat3 {
    e: [[u32; 3]; 3],
    modulus: Modulus,
}

impl Mat3 {
    /// Build a matrix from rows, reducing each entry into `[0, n)`.
    pub fn new(rows: [[i64; 3]; 3], modulus: Modulus) -> Self {
        Mat3 { e: rows.map(|r| r.map(|x| modulus.reduce(x))), modulus }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::diag(1, modulus)
    }

    pub fn zero(modulus: Modulus) -> Self {
        Self::diag(0, modulus)
    }

    /// `u` times the identity.
    pub fn diag(u: i64, modulus: Modulus) -> Self {
        Self::new([[u, 0, 0], [0, u, 0], [0, 0, u]], modulus)
    }

    /// Row-major from a flat slice of nine entries.
    pub fn from_flat(entries: &[i64], modulus: Modulus) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::LengthMismatch { expected: 9, actual: entries.len() });
        }
        let mut rows = [[0i64; 3]; 3];
        for (i, x) in entries.iter().enumerate() {
            rows[i / 3][i % 3] = *x;
        }
        Ok(Self::new(rows, modulus))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> [[u32; 3]; 3] {
        self.e
    }

    /// Entry at zero-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i][j]
    }

    pub fn flat(&self) -> [u32; 9] {
        std::array::from_fn(|i| self.e[i / 3][i % 3])
    }

    pub fn try_mul(&self, other: &Mat3) -> Result<Mat3> {
        self.modulus.check(other.modulus)?;
        let n = self.modulus.get() as u64;
        let mut out = [[0u32; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let s: u64 = (0..3).map(|t| self.e[i][t] as u64 * other.e[t][j] as u64).sum();
                *cell = (s % n) as u32;
            }
        }
        Ok(Mat3 { e: out, modulus: self.modulus })
    }

    pub fn try_mul_vec(&self, v: &Vec3) -> Result<Vec3> {
        self.modulus.check(v.modulus)?;
        let n = self.modulus.get() as u64;
        let mut out = [0u32; 3];
        for (i, cell) in out.iter_mut().enumerate() {
            let s: u64 = (0..3).map(|t| self.e[i][t] as u64 * v.e[t] as u64).sum();
            *cell = (s % n) as u32;
        }
        Ok(Vec3 { e: out, modulus: self.modulus })
    }

    /// Matrix-vector product; panics on mismatched moduli.
    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.try_mul_vec(v).expect("matrix and vector moduli differ")
    }

    pub fn pow(&self, mut e: u64) -> Mat3 {
        let mut base = *self;
        let mut acc = Mat3::identity(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Mat3 {
        let mut out = self.e;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.e[j][i];
            }
        }
        Mat3 { e: out, modulus: self.modulus }
    }

    pub fn determinant(&self) -> Residue {
        let a = self.e.map(|r| r.map(|x| x as i64));
        let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        self.modulus.residue(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant().is_unit()
    }

    pub fn trace(&self) -> Residue {
        self.modulus.residue(self.e[0][0] as i64 + self.e[1][1] as i64 + self.e[2][2] as i64)
    }

    pub fn commutes_with(&self, other: &Mat3) -> bool {
        *self * *other == *other * *self
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        self.try_mul(&rhs).expect("matrix moduli differ")
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        self.apply(&rhs)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.e.iter().map(|r| format!("[{},{},{}]", r[0], r[1], r[2])).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for Mat3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.e.serialize(s)
    }
}

/// A permutation of `{1, 2, 3}`, stored by its images.
///
/// Products follow function composition: in `a * b` the permutation `b` acts
/// first. On vectors, `σ` moves the entry in position `i` to position `σ(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3([u8; 3]);

impl Perm3 {
    pub const ID: Perm3 = Perm3([1, 2, 3]);
    pub const T12: Perm3 = Perm3([2, 1, 3]);
    pub const T13: Perm3 = Perm3([3, 2, 1]);
    pub const T23: Perm3 = Perm3([1, 3, 2]);
    pub const C123: Perm3 = Perm3([2, 3, 1]);
    pub const C132: Perm3 = Perm3([3, 1, 2]);

    /// All six permutations in a fixed order.
    pub const ALL: [Perm3; 6] = [Self::ID, Self::T12, Self::T13, Self::T23, Self::C123, Self::C132];

    /// From the images `[σ(1), σ(2), σ(3)]`.
    pub fn from_images(images: [u8; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &x in &images {
            if !(1..=3).contains(&x) || std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(Error::parse(format!("{images:?} is not a permutation of 1,2,3")));
            }
        }
        Ok(Perm3(images))
    }

    pub fn images(self) -> [u8; 3] {
        self.0
    }

    /// `σ(i)` for `i` in `1..=3`.
    pub fn image(self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn compose(self, other: Perm3) -> Perm3 {
        Perm3(other.0.map(|i| self.0[i as usize - 1]))
    }

    pub fn inverse(self) -> Perm3 {
        let mut out = [0u8; 3];
        for (i, &s) in self.0.iter().enumerate() {
            out[s as usize - 1] = i as u8 + 1;
        }
        Perm3(out)
    }

    pub fn is_identity(self) -> bool {
        self == Self::ID
    }

    pub fn is_transposition(self) -> bool {
        self.fixed_points() == 1
    }

    pub fn is_three_cycle(self) -> bool {
        self.fixed_points() == 0
    }

    fn fixed_points(self) -> usize {
        (1..=3).filter(|&i| self.image(i) == i).count()
    }

    pub fn is_even(self) -> bool {
        !self.is_transposition()
    }

    /// `σ(x₁,x₂,x₃) = (x_{σ⁻¹1}, x_{σ⁻¹2}, x_{σ⁻¹3})`.
    pub fn apply(self, v: &Vec3) -> Vec3 {
        let mut out = [0u32; 3];
        for i in 0..3 {
            out[self.0[i] as usize - 1] = v.e[i];
        }
        Vec3 { e: out, modulus: v.modulus }
    }

    /// The permutation matrix with columns `e_{σ1}, e_{σ2}, e_{σ3}`.
    pub fn matrix(self, modulus: Modulus) -> Mat3 {
        let mut rows = [[0i64; 3]; 3];
        for i in 0..3 {
            rows[self.0[i] as usize - 1][i] = 1;
        }
        Mat3::new(rows, modulus)
    }
}

impl Mul for Perm3 {
    type Output = Perm3;
    fn mul(self, rhs: Perm3) -> Perm3 {
        self.compose(rhs)
    }
}

/// Cycle notation without commas, e.g. `(13)` or `(123)`; the identity is `id`.
impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        let start = (1..=3).find(|&i| self.image(i) != i).unwrap();
        write!(f, "({start}")?;
        let mut i = self.image(start);
        while i != start {
            write!(f, "{i}")?;
            i = self.image(i);
        }
        f.write_str(")")
    }
}

/// `x ↦ Ax + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineMap {
    pub linear: Mat3,
    pub translation: Vec3,
}

impl AffineMap {
    pub fn new(linear: Mat3, translation: Vec3) -> Result<Self> {
        linear.modulus().check(translation.modulus())?;
        Ok(AffineMap { linear, translation })
    }

    pub fn linear(a: Mat3) -> Self {
        AffineMap { linear: a, translation: Vec3::zero(a.modulus()) }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::linear(Mat3::identity(modulus))
    }

    pub fn modulus(&self) -> Modulus {
        self.linear.modulus()
    }

    pub fn try_apply(&self, v: &Vec3) -> Result<Vec3> {
        self.linear.try_mul_vec(v)?.try_add(&self.translation)
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.try_apply(v).expect("affine map and vector moduli differ")
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &AffineMap) -> Result<AffineMap> {
        let linear = self.linear.try_mul(&g.linear)?;
        let translation = self.linear.try_mul_vec(&g.translation)?.try_add(&self.translation)?;
        Ok(AffineMap { linear, translation })
    }

    /// Whether `self ∘ g = g ∘ self` for the linear map `g`.
    ///
    /// With `self = (A, b)` this is `AG = GA` together with `Gb = b`.
    pub fn commutes_with_linear(&self, g: &Mat3) -> Result<bool> {
        let ag = self.linear.try_mul(g)?;
        let ga = g.try_mul(&self.linear)?;
        Ok(ag == ga && g.try_mul_vec(&self.translation)? == self.translation)
    }

    /// The `(u, q)` of a map `x ↦ ux + q` acting componentwise, if it is one.
    pub fn as_scalar(&self) -> Option<(u32, u32)> {
        let u = self.linear.get(0, 0);
        let q = self.translation.get(0);
        (self.linear == Mat3::diag(u as i64, self.modulus()) && self.translation == Vec3::constant(q as i64, self.modulus()))
            .then_some((u, q))
    }
}

/// `x ↦ ux + q` acting on each entry.
pub fn scalar_affine(u: Residue, q: Residue) -> Result<AffineMap> {
    let modulus = u.modulus();
    modulus.check(q.modulus())?;
    Ok(AffineMap {
        linear: Mat3::diag(u.value() as i64, modulus),
        translation: Vec3::constant(q.value() as i64, modulus),
    })
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_scalar() {
            Some((u, q)) => write!(f, "x -> {u}x + {q}"),
            None => write!(f, "x -> {}x + {}", self.linear, self.translation),
        }
    }
}
