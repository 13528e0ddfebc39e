//! Consonant triads, uniform triadic transformations and the Hook group.
//!
//! Everything here lives over Z/12. A triad is named by its root and mode; a
//! voicing of it is any ordering of its three pitch classes. A uniform
//! triadic transformation `<s,m,n>` moves major roots by `m` and minor roots
//! by `n`, reversing mode when `s` is `-`. The map ρ sends each of them to
//! the unique element of Σ₃⋉𝒥 that does the same thing to root-position
//! triads, and its image is the Hook group ℋ.

use std::collections::HashSet;
use std::fmt;

use crate::closure;
use crate::error::{Error, Result};
use crate::extension::{ext_decode, enumerate_extension, ExtElement, GroupSelector};
use crate::linalg::{Mat3, Perm3, Vec3};
use crate::modring::Modulus;
use crate::voicing::{j_reflection, GeneratorTag, JElement};

const N12: Modulus = Modulus::TWELVE;

const SHARP_NAMES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Major,
    Minor,
}

impl Mode {
    pub fn flip(self) -> Mode {
        match self {
            Mode::Major => Mode::Minor,
            Mode::Minor => Mode::Major,
        }
    }

    /// Interval from the root to the middle tone.
    fn third(self) -> i64 {
        match self {
            Mode::Major => 4,
            Mode::Minor => 3,
        }
    }
}

/// An abstract consonant triad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriadId {
    root: u32,
    pub mode: Mode,
}

impl TriadId {
    pub fn new(root: i64, mode: Mode) -> Self {
        TriadId { root: N12.reduce(root), mode }
    }

    pub fn major(root: i64) -> Self {
        Self::new(root, Mode::Major)
    }

    pub fn minor(root: i64) -> Self {
        Self::new(root, Mode::Minor)
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// All 24 triads, majors first.
    pub fn all() -> Vec<TriadId> {
        [Mode::Major, Mode::Minor].iter().flat_map(|&mode| (0..12).map(move |r| TriadId::new(r, mode))).collect()
    }

    /// Sharp spelling, uppercase for major and lowercase for minor.
    pub fn name(&self) -> String {
        let base = SHARP_NAMES[self.root as usize];
        match self.mode {
            Mode::Major => base.to_string(),
            Mode::Minor => base.to_lowercase(),
        }
    }
}

impl fmt::Display for TriadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// `(r, r+3 or r+4, r+7)`.
pub fn root_position_tuple(id: TriadId) -> Vec3 {
    let r = id.root as i64;
    Vec3::new([r, r + id.mode.third(), r + 7], N12)
}

/// Majors as in root position, minors reversed: `(r+7, r+3, r)`.
pub fn dualistic_tuple(id: TriadId) -> Vec3 {
    let r = id.root as i64;
    match id.mode {
        Mode::Major => root_position_tuple(id),
        Mode::Minor => Vec3::new([r + 7, r + 3, r], N12),
    }
}

/// A consonant voicing: which triad, and the permutation taking its
/// root-position tuple to the voicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriadClass {
    pub id: TriadId,
    pub voicing: Perm3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Consonant(TriadClass),
    NotConsonant,
}

impl Classification {
    pub fn consonant(self) -> Option<TriadClass> {
        match self {
            Classification::Consonant(c) => Some(c),
            Classification::NotConsonant => None,
        }
    }
}

pub fn classify(v: &Vec3) -> Result<Classification> {
    if v.modulus() != N12 {
        return Err(Error::RequiresTwelve(v.modulus().get()));
    }
    for id in TriadId::all() {
        let root = root_position_tuple(id);
        if let Some(&voicing) = Perm3::ALL.iter().find(|s| s.apply(&root) == *v) {
            return Ok(Classification::Consonant(TriadClass { id, voicing }));
        }
    }
    Ok(Classification::NotConsonant)
}

pub fn is_consonant(v: &Vec3) -> bool {
    matches!(classify(v), Ok(Classification::Consonant(_)))
}

/// The three neo-Riemannian involutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Plr {
    P,
    L,
    R,
}

impl Plr {
    pub const ALL: [Plr; 3] = [Plr::P, Plr::L, Plr::R];

    /// The formula on major root position and reversed minor triads.
    pub fn on_dualistic(self, v: &Vec3) -> Vec3 {
        let (r, s) = match self {
            Plr::P => (1, 3),
            Plr::L => (2, 3),
            Plr::R => (1, 2),
        };
        j_reflection(r, s, v).expect("fixed voice pairs are valid")
    }

    /// Interval spanned by the two tones that stay fixed.
    fn interval(self) -> u32 {
        match self {
            Plr::P => 7,
            Plr::L => 3,
            Plr::R => 4,
        }
    }

    /// Contextual form on any voicing of a consonant triad: reflect across
    /// the two tones spanning a fifth (P), minor third (L) or major third (R).
    pub fn contextual(self, v: &Vec3) -> Option<Vec3> {
        if !is_consonant(v) {
            return None;
        }
        let e = v.entries();
        let want = self.interval();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let d = (e[j] + 12 - e[i]) % 12;
            if d == want || 12 - d == want {
                return j_reflection(i + 1, j + 1, v).ok();
            }
        }
        None
    }
}

impl fmt::Display for Plr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Orbit of `seed` under the group generated by `generators`, sorted.
pub fn orbit(generators: &[ExtElement], seed: &Vec3) -> Vec<Vec3> {
    let mut out = closure::orbit(*seed, generators, |g, v| g.apply(v));
    out.sort_unstable();
    out
}

/// Elements of `group` mapping `target` onto itself as a set.
pub fn stabilizer_of_set(group: &[ExtElement], target: &[Vec3]) -> Vec<ExtElement> {
    let set: HashSet<Vec3> = target.iter().copied().collect();
    group.iter().filter(|g| target.iter().all(|v| set.contains(&g.apply(v)))).copied().collect()
}

fn gen(g: GeneratorTag) -> ExtElement {
    ExtElement::generator(g, N12)
}

fn perm(s: Perm3) -> ExtElement {
    ExtElement::from_perm(s, N12)
}

/// Generators of Σ₃⋉𝒥.
pub fn extension_generators() -> Vec<ExtElement> {
    vec![gen(GeneratorTag::U), gen(GeneratorTag::V), gen(GeneratorTag::W), perm(Perm3::T12), perm(Perm3::T13)]
}

/// Generators of 𝒥.
pub fn j_generators() -> Vec<ExtElement> {
    GeneratorTag::ALL.iter().map(|&g| gen(g)).collect()
}

/// Generators of the mode-preserving part Σ₃𝒥⁺.
pub fn sigma_j_plus_generators() -> Vec<ExtElement> {
    vec![
        ExtElement::from_j(JElement::uv(N12)),
        ExtElement::from_j(JElement::uw(N12)),
        perm(Perm3::T12),
        perm(Perm3::T13),
    ]
}

/// Generators `(13)U` and `UW` of ℋ.
pub fn hook_generators() -> Vec<ExtElement> {
    vec![ExtElement::new(Perm3::T13, GeneratorTag::U.element(N12)), ExtElement::from_j(JElement::uw(N12))]
}

fn c_major() -> Vec3 {
    root_position_tuple(TriadId::major(0))
}

/// All 144 voicings of consonant triads.
pub fn triads() -> Vec<Vec3> {
    orbit(&extension_generators(), &c_major())
}

pub fn maj_triads() -> Vec<Vec3> {
    orbit(&sigma_j_plus_generators(), &c_major())
}

pub fn min_triads() -> Vec<Vec3> {
    orbit(&sigma_j_plus_generators(), &root_position_tuple(TriadId::minor(0)))
}

pub fn root_pos_triads() -> Vec<Vec3> {
    orbit(&hook_generators(), &c_major())
}

pub fn dual_root_pos_triads() -> Vec<Vec3> {
    orbit(&j_generators(), &c_major())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UttSign {
    Plus,
    Minus,
}

impl UttSign {
    /// 0 for `+`, 1 for `-`.
    pub fn index(self) -> u8 {
        match self {
            UttSign::Plus => 0,
            UttSign::Minus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            UttSign::Plus => '+',
            UttSign::Minus => '-',
        }
    }
}

/// A uniform triadic transformation `<s,m,n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Utt {
    pub sign: UttSign,
    m: u32,
    n: u32,
}

impl Utt {
    pub fn new(sign: UttSign, m: i64, n: i64) -> Self {
        Utt { sign, m: N12.reduce(m), n: N12.reduce(n) }
    }

    pub fn identity() -> Self {
        Self::new(UttSign::Plus, 0, 0)
    }

    /// Transposition applied to major triads.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Transposition applied to minor triads.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// All 288 transformations.
    pub fn all() -> Vec<Utt> {
        let mut out = Vec::with_capacity(288);
        for sign in [UttSign::Plus, UttSign::Minus] {
            for m in 0..12 {
                for n in 0..12 {
                    out.push(Utt::new(sign, m, n));
                }
            }
        }
        out
    }

    pub fn apply(&self, t: TriadId) -> TriadId {
        let shift = match t.mode {
            Mode::Major => self.m,
            Mode::Minor => self.n,
        };
        let mode = match self.sign {
            UttSign::Plus => t.mode,
            UttSign::Minus => t.mode.flip(),
        };
        TriadId::new((t.root + shift) as i64, mode)
    }

    /// `self ∘ b`: apply `b` first.
    pub fn compose(&self, b: &Utt) -> Utt {
        let (p, q) = (self.m as i64, self.n as i64);
        let (m, n) = (b.m as i64, b.n as i64);
        match (self.sign, b.sign) {
            (s, UttSign::Plus) => Utt::new(s, m + p, n + q),
            (UttSign::Plus, UttSign::Minus) => Utt::new(UttSign::Minus, m + q, n + p),
            (UttSign::Minus, UttSign::Minus) => Utt::new(UttSign::Plus, m + q, n + p),
        }
    }
}

impl fmt::Display for Utt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.sign.symbol(), self.m, self.n)
    }
}

/// An element of the Hook group: the identity permutation with a
/// mode-preserving 𝒥 part, or `(13)` with a mode-reversing one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookElement(ExtElement);

impl HookElement {
    pub fn new(a: ExtElement) -> Result<Self> {
        if a.modulus() == N12 && GroupSelector::Hook.contains(&a) {
            Ok(HookElement(a))
        } else {
            Err(Error::NotInHook)
        }
    }

    pub fn identity() -> Self {
        HookElement(ExtElement::identity(N12))
    }

    pub fn element(&self) -> ExtElement {
        self.0
    }

    pub fn matrix(&self) -> Mat3 {
        self.0.matrix()
    }

    pub fn inverse(&self) -> Self {
        HookElement(self.0.inverse())
    }

    pub fn pow(&self, e: i64) -> Self {
        HookElement(self.0.pow(e))
    }

    /// All 288 elements, sorted.
    pub fn all() -> Vec<HookElement> {
        GroupSelector::Hook.elements(N12).into_iter().map(HookElement).collect()
    }
}

impl std::ops::Mul for HookElement {
    type Output = HookElement;
    fn mul(self, rhs: HookElement) -> HookElement {
        HookElement(self.0 * rhs.0)
    }
}

impl From<HookElement> for ExtElement {
    fn from(h: HookElement) -> ExtElement {
        h.0
    }
}

impl fmt::Display for HookElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The matrix of ρ⟨s,m,n⟩.
///
/// For `-` it sends `(r, r+4, r+7)` to `(r+m, r+m+3, r+m+7)` and
/// `(r, r+3, r+7)` to `(r+n, r+n+4, r+n+7)`.
pub fn rho_matrix(u: &Utt) -> Mat3 {
    let (m, n) = (u.m as i64, u.n as i64);
    let rows = match u.sign {
        UttSign::Plus => [
            [1 - 4 * m - 3 * n, m - n, 3 * m + 4 * n],
            [-4 * m - 3 * n, 1 + m - n, 3 * m + 4 * n],
            [-4 * m - 3 * n, m - n, 1 + 3 * m + 4 * n],
        ],
        UttSign::Minus => [
            [1 - 4 * m - 3 * n, m - n, 3 * m + 4 * n],
            [1 - 4 * m - 3 * n, -1 + m - n, 1 + 3 * m + 4 * n],
            [-4 * m - 3 * n, m - n, 1 + 3 * m + 4 * n],
        ],
    };
    Mat3::new(rows, N12)
}

pub fn rho(u: &Utt) -> HookElement {
    let a = ext_decode(&rho_matrix(u)).expect("ρ lands in the extension");
    HookElement::new(a).expect("ρ lands in the Hook group")
}

/// The transformation with `rho(rho_inverse(h)) = h`, read off from where `h`
/// sends root-position C major and c minor.
pub fn rho_inverse(h: &HookElement) -> Utt {
    let sign = if h.0.j.k() == 0 { UttSign::Plus } else { UttSign::Minus };
    let m = h.0.apply(&c_major()).get(0);
    let n = h.0.apply(&root_position_tuple(TriadId::minor(0))).get(0);
    let u = Utt::new(sign, m as i64, n as i64);
    debug_assert_eq!(rho(&u), *h);
    u
}

/// `(k, m, n)` with the permutation implied by `k`.
pub fn hook_normal_form_a(h: &HookElement) -> (u8, u32, u32) {
    let j = h.0.j;
    (j.k(), j.uv_exp(), j.uw_exp())
}

fn t13u() -> ExtElement {
    ExtElement::new(Perm3::T13, GeneratorTag::U.element(N12))
}

/// `(p, n)` with `h = ((13)U)^p (UW)^n`, `p ∈ [0, 24)`, `n ∈ [0, 12)`.
///
/// Even powers of `(13)U` are the powers of `(UV)⁻¹`, so `p` is read off the
/// `UV` exponent and the parity from `k`; `n` then follows by cancellation.
pub fn hook_normal_form_b(h: &HookElement) -> (u32, u32) {
    let a = h.0.j.uv_exp();
    let p = 2 * ((12 - a) % 12) + h.0.j.k() as u32;
    let rest = t13u().pow(-(p as i64)) * h.0;
    debug_assert!(rest.sigma.is_identity() && rest.j.k() == 0 && rest.j.uv_exp() == 0);
    (p, rest.j.uw_exp())
}

pub fn hook_from_normal_form_b(p: i64, n: i64) -> HookElement {
    HookElement(t13u().pow(p) * ExtElement::from_j(JElement::new(0, 0, n, N12)))
}

/// `E = (13)W`, `F = (UV)⁴(UW)⁻¹`, `G = (UV)³(UW)`.
pub fn wreath_generators() -> (HookElement, HookElement, HookElement) {
    let e = HookElement(ExtElement::new(Perm3::T13, GeneratorTag::W.element(N12)));
    let f = HookElement(ExtElement::from_j(JElement::new(0, 4, -1, N12)));
    let g = HookElement(ExtElement::from_j(JElement::new(0, 3, 1, N12)));
    (e, f, g)
}

/// `(t, p, q)` with `h = E^t F^p G^q`.
pub fn efg_coordinates(h: &HookElement) -> (u8, u32, u32) {
    let u = rho_inverse(h);
    (u.sign.index(), u.m, u.n)
}

/// The full Hook group as the setwise stabilizer of root-position triads.
pub fn hook_by_stabilizer() -> Vec<ExtElement> {
    stabilizer_of_set(&enumerate_extension(N12), &root_pos_triads())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: i64, b: i64, c: i64) -> Vec3 {
        Vec3::new([a, b, c], N12)
    }

    #[test]
    fn tuples() {
        assert_eq!(root_position_tuple(TriadId::major(0)), v(0, 4, 7));
        assert_eq!(root_position_tuple(TriadId::minor(0)), v(0, 3, 7));
        assert_eq!(dualistic_tuple(TriadId::minor(0)), v(7, 3, 0));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&v(10, 6, 3)).unwrap().consonant().unwrap();
        assert_eq!(c.id, TriadId::minor(3));
        assert_eq!(c.voicing, Perm3::T13);
        assert_eq!(c.id.name(), "d#");
        let c = classify(&v(0, 4, 7)).unwrap().consonant().unwrap();
        assert_eq!((c.id, c.voicing), (TriadId::major(0), Perm3::ID));
        assert_eq!(classify(&v(8, 4, 5)).unwrap(), Classification::NotConsonant);
        assert_eq!(classify(&v(0, 0, 7)).unwrap(), Classification::NotConsonant);
        let seven = Vec3::new([0, 2, 4], Modulus::new(7).unwrap());
        assert_eq!(classify(&seven), Err(Error::RequiresTwelve(7)));
    }

    #[test]
    fn utt_examples() {
        let u = Utt::new(UttSign::Minus, 0, 8);
        assert_eq!(u.apply(TriadId::major(3)), TriadId::minor(3));
        assert_eq!(u.apply(TriadId::minor(3)), TriadId::major(11));
        let rl = Utt::new(UttSign::Plus, 7, -7);
        let mut acc = Utt::identity();
        for _ in 0..12 {
            acc = rl.compose(&acc);
        }
        assert_eq!(acc, Utt::identity());
        assert_eq!(rl.to_string(), "<+,7,5>");
    }

    #[test]
    fn rho_displays() {
        let m = |u: Utt| rho(&u).matrix().to_string();
        assert_eq!(m(Utt::new(UttSign::Plus, 1, 0)), "[[9,1,3],[8,2,3],[8,1,4]]");
        assert_eq!(m(Utt::new(UttSign::Plus, 0, 1)), "[[10,11,4],[9,0,4],[9,11,5]]");
        assert_eq!(m(Utt::new(UttSign::Minus, 0, 0)), "[[1,0,0],[1,11,1],[0,0,1]]");
        let e = rho(&Utt::new(UttSign::Minus, 0, 0)).element();
        assert_eq!(e, ExtElement::new(Perm3::T13, GeneratorTag::W.element(N12)));
    }

    #[test]
    fn rho_inverse_examples() {
        assert_eq!(rho_inverse(&HookElement::identity()), Utt::identity());
        let (e, _, _) = wreath_generators();
        assert_eq!(rho_inverse(&e), Utt::new(UttSign::Minus, 0, 0));
        // (13)V sends (0,4,7) to (4,7,11) and (0,3,7) to (3,7,10)
        let rich = HookElement::new(ExtElement::new(Perm3::T13, GeneratorTag::V.element(N12))).unwrap();
        assert_eq!(rho_inverse(&rich), Utt::new(UttSign::Minus, 4, 3));
    }

    #[test]
    fn normal_form_b_examples() {
        assert_eq!(hook_normal_form_b(&HookElement::identity()), (0, 0));
        let t = HookElement::new(t13u()).unwrap();
        assert_eq!(hook_normal_form_b(&t), (1, 0));
        assert_eq!(t13u().order(), 24);
        let (e, _, _) = wreath_generators();
        let (p, n) = hook_normal_form_b(&e);
        assert_eq!(hook_from_normal_form_b(p as i64, n as i64), e);
    }

    #[test]
    fn wreath_relations() {
        let (e, f, g) = wreath_generators();
        assert_eq!(f, rho(&Utt::new(UttSign::Plus, 1, 0)));
        assert_eq!(g, rho(&Utt::new(UttSign::Plus, 0, 1)));
        assert_eq!(e * f * e.inverse(), g);
        assert_eq!((f * g).element(), ExtElement::from_j(JElement::new(0, 7, 0, N12)));
    }

    #[test]
    fn hook_membership() {
        assert!(HookElement::new(ExtElement::new(Perm3::T12, GeneratorTag::U.element(N12))).is_err());
        assert!(HookElement::new(ExtElement::generator(GeneratorTag::U, N12)).is_err());
    }

    #[test]
    fn contextual_matches_formula_on_dualistic_triads() {
        for id in TriadId::all() {
            let s = dualistic_tuple(id);
            for op in Plr::ALL {
                assert_eq!(op.contextual(&s), Some(op.on_dualistic(&s)));
            }
        }
    }

    #[test]
    fn name_of_every_root() {
        let names: Vec<String> = (0..12).map(|r| TriadId::major(r).name()).collect();
        assert_eq!(names.join(" "), "C C# D D# E F F# G G# A A# B");
        assert_eq!(TriadId::minor(10).to_string(), "a#");
    }
}
