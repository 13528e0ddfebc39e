//! The extension Σ₃⋉𝒥 of the voicing group by permutations of the voices.
//!
//! An element is a pair `(σ, j)` standing for `P_σ · j`. Conjugating a
//! reflection by a permutation relabels its voices,
//! `σ J^{r,s} σ⁻¹ = J^{σr,σs}`, which is all that is needed to move
//! permutations to the left:
//!
//! ```text
//! (σ_a, j_a)(σ_b, j_b) = (σ_a σ_b, σ_b⁻¹ j_a σ_b · j_b)
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Perm3, Vec3};
use crate::modring::{Modulus, Residue};
use crate::voicing::{self, word_to_element, GeneratorTag, JElement};

/// `σ J^{r,s} σ⁻¹ = J^{σr,σs}`.
pub fn sigma_conjugate_generator(sigma: Perm3, g: GeneratorTag) -> GeneratorTag {
    let (r, s) = g.voices();
    GeneratorTag::from_voices(sigma.image(r), sigma.image(s)).expect("a permutation keeps voices distinct")
}

/// `σ j σ⁻¹` in normal form.
///
/// The images of `UV` and `UW` stay in the abelian part, so the conjugate is
/// the image of `U^k` times a linear combination of those two images.
pub fn sigma_conjugate(sigma: Perm3, j: &JElement) -> JElement {
    let modulus = j.modulus();
    if sigma.is_identity() {
        return *j;
    }
    let image = |word: &[GeneratorTag]| {
        let conj: Vec<GeneratorTag> = word.iter().map(|&g| sigma_conjugate_generator(sigma, g)).collect();
        word_to_element(&conj, modulus)
    };
    let u = image(&[GeneratorTag::U]);
    let uv = image(&[GeneratorTag::U, GeneratorTag::V]);
    let uw = image(&[GeneratorTag::U, GeneratorTag::W]);
    let (m, n) = (j.uv_exp() as i64, j.uw_exp() as i64);
    let rotation = JElement::new(
        0,
        m * uv.uv_exp() as i64 + n * uw.uv_exp() as i64,
        m * uv.uw_exp() as i64 + n * uw.uw_exp() as i64,
        modulus,
    );
    u.pow(j.k() as i64) * rotation
}

/// Which group an operation should range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSelector {
    /// 𝒥 itself.
    J,
    /// The full extension Σ₃⋉𝒥.
    Extension,
    /// The Hook group: `id·𝒥⁺` together with `(13)·𝒥⁻`.
    Hook,
}

impl GroupSelector {
    pub fn contains(self, a: &ExtElement) -> bool {
        match self {
            GroupSelector::J => a.sigma.is_identity(),
            GroupSelector::Extension => true,
            GroupSelector::Hook => {
                (a.sigma.is_identity() && a.j.k() == 0) || (a.sigma == Perm3::T13 && a.j.k() == 1)
            }
        }
    }

    /// Every element of the selected group, sorted.
    pub fn elements(self, modulus: Modulus) -> Vec<ExtElement> {
        enumerate_extension(modulus).into_iter().filter(|a| self.contains(a)).collect()
    }
}

/// Mode-preserving and mode-reversing halves of 𝒥 and of Σ₃𝒥.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosetTag {
    JPlus,
    JMinus,
    SigmaJPlus,
    SigmaJMinus,
}

impl CosetTag {
    pub fn contains(self, a: &ExtElement) -> bool {
        match self {
            CosetTag::JPlus => a.sigma.is_identity() && a.j.k() == 0,
            CosetTag::JMinus => a.sigma.is_identity() && a.j.k() == 1,
            CosetTag::SigmaJPlus => a.j.k() == 0,
            CosetTag::SigmaJMinus => a.j.k() == 1,
        }
    }
}

/// `P_σ · j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub sigma: Perm3,
    pub j: JElement,
}

impl ExtElement {
    pub fn new(sigma: Perm3, j: JElement) -> Self {
        ExtElement { sigma, j }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::from_j(JElement::identity(modulus))
    }

    pub fn from_j(j: JElement) -> Self {
        ExtElement { sigma: Perm3::ID, j }
    }

    pub fn from_perm(sigma: Perm3, modulus: Modulus) -> Self {
        ExtElement { sigma, j: JElement::identity(modulus) }
    }

    pub fn generator(g: GeneratorTag, modulus: Modulus) -> Self {
        Self::from_j(g.element(modulus))
    }

    pub fn modulus(&self) -> Modulus {
        self.j.modulus()
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.j.is_identity()
    }

    pub fn try_mul(&self, rhs: &ExtElement) -> Result<ExtElement> {
        let moved = sigma_conjugate(rhs.sigma.inverse(), &self.j);
        Ok(ExtElement { sigma: self.sigma * rhs.sigma, j: moved.try_mul(&rhs.j)? })
    }

    /// `(σ, j)⁻¹ = (σ⁻¹, σ j⁻¹ σ⁻¹)`.
    pub fn inverse(&self) -> ExtElement {
        ExtElement { sigma: self.sigma.inverse(), j: sigma_conjugate(self.sigma, &self.j.inverse()) }
    }

    pub fn pow(&self, e: i64) -> ExtElement {
        let (mut base, mut e) = if e < 0 { (self.inverse(), e.unsigned_abs()) } else { (*self, e as u64) };
        let mut acc = ExtElement::identity(self.modulus());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// The least `t ≥ 1` with `self^t = Id`.
    ///
    /// The sixth power always lies in 𝒥, whose element orders are known in
    /// closed form, so only divisors of `6·ord` need checking.
    pub fn order(&self) -> u64 {
        let sixth = self.pow(6);
        debug_assert!(sixth.sigma.is_identity());
        let bound = 6 * sixth.j.order();
        (1..=bound).find(|&t| bound.is_multiple_of(t) && self.pow(t as i64).is_identity()).unwrap_or(bound)
    }

    pub fn matrix(&self) -> Mat3 {
        self.sigma.matrix(self.modulus()) * self.j.matrix()
    }

    pub fn try_apply(&self, v: &Vec3) -> Result<Vec3> {
        Ok(self.sigma.apply(&self.j.try_apply(v)?))
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        self.try_apply(v).expect("element and vector moduli differ")
    }

    pub fn trace(&self) -> Residue {
        self.matrix().trace()
    }

    pub fn coset(&self) -> CosetTag {
        match (self.sigma.is_identity(), self.j.k()) {
            (true, 0) => CosetTag::JPlus,
            (true, _) => CosetTag::JMinus,
            (false, 0) => CosetTag::SigmaJPlus,
            (false, _) => CosetTag::SigmaJMinus,
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &ExtElement) -> ExtElement {
        *g * *self * g.inverse()
    }
}

impl Mul for ExtElement {
    type Output = ExtElement;
    fn mul(self, rhs: ExtElement) -> ExtElement {
        self.try_mul(&rhs).expect("element moduli differ")
    }
}

impl From<JElement> for ExtElement {
    fn from(j: JElement) -> Self {
        ExtElement::from_j(j)
    }
}

/// Cycle prefix, then the 𝒥 normal form: `(13) U (UW)^1`.
impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sigma.is_identity(), self.j.is_identity()) {
            (true, _) => write!(f, "{}", self.j),
            (false, true) => write!(f, "{}", self.sigma),
            (false, false) => write!(f, "{} {}", self.sigma, self.j),
        }
    }
}

impl Serialize for ExtElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Recover `(σ, j)` from a matrix, or `NotInExtension`.
pub fn ext_decode(a: &Mat3) -> Result<ExtElement> {
    Perm3::ALL
        .iter()
        .find_map(|&sigma| {
            // permutation matrices are orthogonal
            let rest = sigma.matrix(a.modulus()).transpose() * *a;
            voicing::decode(&rest).ok().map(|j| ExtElement { sigma, j })
        })
        .ok_or(Error::NotInExtension)
}

/// All `12n²` elements, sorted.
pub fn enumerate_extension(modulus: Modulus) -> Vec<ExtElement> {
    let js = voicing::enumerate_j(modulus);
    let mut out: Vec<ExtElement> =
        Perm3::ALL.iter().flat_map(|&sigma| js.iter().map(move |&j| ExtElement { sigma, j })).collect();
    out.sort_unstable();
    out
}

pub fn enumerate_coset(tag: CosetTag, modulus: Modulus) -> Vec<ExtElement> {
    enumerate_extension(modulus).into_iter().filter(|a| tag.contains(a)).collect()
}

/// `{g a g⁻¹ : g ∈ within}`, sorted.
pub fn conjugacy_class(a: &ExtElement, within: GroupSelector) -> Vec<ExtElement> {
    within
        .elements(a.modulus())
        .iter()
        .map(|g| a.conjugate_by(g))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
