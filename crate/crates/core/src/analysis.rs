//! Transformational analysis of progressions of voicings.
//!
//! Within the coset of a fixed permutation `σ` and a fixed `k`, the element
//! `σ U^k (UV)^m (UW)^n` maps `s` to `s'` exactly when
//! `U^k σ⁻¹ s' − s` is the constant vector `m(z−x) + n(z−y)`. That is one
//! linear congruence in `(m, n)` per step, so whole progressions are solved by
//! stacking them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{ExtElement, GroupSelector};
use crate::linalg::{scalar_affine, AffineMap, Mat3, Perm3, Vec3};
use crate::modring::{LinearSystem, Modulus};
use crate::structure::centralizer_in_aff;
use crate::triadic::is_consonant;
use crate::voicing::{j_reflection, GeneratorTag, JElement};

/// JSON schema for the input accepted by [`Progression::from_json`].
pub const PROGRESSION_SCHEMA: &str = include_str!("../schemas/progression.schema.json");

/// An ordered list of voicings, optionally closing back on itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    modulus: Modulus,
    tuples: Vec<Vec3>,
    cyclic: bool,
}

#[derive(Serialize, Deserialize)]
struct ProgressionFile {
    #[serde(default = "twelve")]
    modulus: u64,
    #[serde(default)]
    cyclic: bool,
    tuples: Vec<[i64; 3]>,
}

fn twelve() -> u64 {
    12
}

impl Progression {
    pub fn new(tuples: Vec<Vec3>, cyclic: bool) -> Result<Self> {
        let first = tuples.first().ok_or(Error::ProgressionTooShort { min: 1, actual: 0 })?;
        let modulus = first.modulus();
        for t in &tuples {
            modulus.check(t.modulus())?;
        }
        Ok(Progression { modulus, tuples, cyclic })
    }

    pub fn from_entries(entries: &[[i64; 3]], modulus: Modulus, cyclic: bool) -> Result<Self> {
        Self::new(entries.iter().map(|e| Vec3::new(*e, modulus)).collect(), cyclic)
    }

    /// Parse `{"modulus": 12, "cyclic": true, "tuples": [[3,7,10], ...]}`.
    /// The modulus defaults to 12 and the cyclic flag to false.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProgressionFile = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        let modulus = Modulus::new(file.modulus)?;
        Self::from_entries(&file.tuples, modulus, file.cyclic)
    }

    pub fn to_json(&self) -> String {
        let file = ProgressionFile {
            modulus: self.modulus.get() as u64,
            cyclic: self.cyclic,
            tuples: self.tuples.iter().map(|t| t.entries().map(|x| x as i64)).collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn tuples(&self) -> &[Vec3] {
        &self.tuples
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn with_cyclic(mut self, cyclic: bool) -> Self {
        self.cyclic = cyclic;
        self
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Consecutive pairs, plus last-to-first when cyclic.
    pub fn steps(&self) -> Vec<(Vec3, Vec3)> {
        let mut out: Vec<_> = self.tuples.windows(2).map(|w| (w[0], w[1])).collect();
        if self.cyclic && self.tuples.len() > 1 {
            out.push((self.tuples[self.tuples.len() - 1], self.tuples[0]));
        }
        out
    }
}

/// The congruence row `[z−x, z−y] · (m, n) ≡ c` for one step, or `None` if
/// no `(m, n)` can work because the required shift is not constant.
fn step_equation(sigma: Perm3, k: u8, src: &Vec3, dst: &Vec3) -> Option<(Vec<i64>, i64)> {
    let back = sigma.inverse().apply(dst);
    let target = if k == 1 { j_reflection(1, 2, &back).expect("valid pair") } else { back };
    let [x, y, z] = src.entries().map(|e| e as i64);
    let t = target.entries().map(|e| e as i64);
    let n = src.modulus();
    let c = n.reduce(t[0] - x);
    (n.reduce(t[1] - y) == c && n.reduce(t[2] - z) == c).then(|| (vec![z - x, z - y], c as i64))
}

fn cosets(group: GroupSelector) -> Vec<(Perm3, u8)> {
    match group {
        GroupSelector::J => vec![(Perm3::ID, 0), (Perm3::ID, 1)],
        GroupSelector::Hook => vec![(Perm3::ID, 0), (Perm3::T13, 1)],
        GroupSelector::Extension => Perm3::ALL.iter().flat_map(|&s| [(s, 0), (s, 1)]).collect(),
    }
}

fn solve_pairs(modulus: Modulus, sigma: Perm3, k: u8, steps: &[(Vec3, Vec3)]) -> Result<Vec<(u32, u32)>> {
    let mut rows = Vec::with_capacity(steps.len());
    let mut rhs = Vec::with_capacity(steps.len());
    for (s, t) in steps {
        match step_equation(sigma, k, s, t) {
            Some((row, c)) => {
                rows.push(row);
                rhs.push(c);
            }
            None => return Ok(Vec::new()),
        }
    }
    let sols = LinearSystem::new(modulus, 2, rows, rhs)?.solve()?;
    Ok(sols.iter().map(|x| (x[0], x[1])).collect())
}

/// Every element of `group` sending `src` to `dst`, sorted.
pub fn solve_step(src: &Vec3, dst: &Vec3, group: GroupSelector) -> Result<Vec<ExtElement>> {
    let modulus = src.modulus();
    modulus.check(dst.modulus())?;
    let mut out = BTreeSet::new();
    for (sigma, k) in cosets(group) {
        for (m, n) in solve_pairs(modulus, sigma, k, &[(*src, *dst)])? {
            out.insert(ExtElement::new(sigma, JElement::new(k as i64, m as i64, n as i64, modulus)));
        }
    }
    Ok(out.into_iter().collect())
}

/// A single element `σ U^k (UV)^m (UW)^n` realizing every step of a
/// progression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UniformSolution {
    pub element: ExtElement,
    pub matrix: Mat3,
}

impl UniformSolution {
    /// Panics unless `element` maps each tuple of `prog` to its successor.
    fn verified(element: ExtElement, prog: &Progression) -> Self {
        let matrix = element.matrix();
        for (s, t) in prog.steps() {
            assert_eq!(matrix * s, t, "{element} does not realize {s} -> {t}");
        }
        UniformSolution { element, matrix }
    }

    pub fn sigma(&self) -> Perm3 {
        self.element.sigma
    }

    pub fn k(&self) -> u8 {
        self.element.j.k()
    }

    pub fn m(&self) -> u32 {
        self.element.j.uv_exp()
    }

    pub fn n(&self) -> u32 {
        self.element.j.uw_exp()
    }
}

/// All `(m, n)` for which `σ U^k (UV)^m (UW)^n` realizes every step.
pub fn solve_uniform(prog: &Progression, sigma: Perm3, k: u8) -> Result<Vec<UniformSolution>> {
    if prog.len() < 2 {
        return Err(Error::ProgressionTooShort { min: 2, actual: prog.len() });
    }
    let modulus = prog.modulus();
    let k = k & 1;
    let pairs = solve_pairs(modulus, sigma, k, &prog.steps())?;
    Ok(pairs
        .into_iter()
        .map(|(m, n)| {
            let e = ExtElement::new(sigma, JElement::new(k as i64, m as i64, n as i64, modulus));
            UniformSolution::verified(e, prog)
        })
        .collect())
}

/// [`solve_uniform`] over all twelve choices of `(σ, k)`.
pub fn solve_uniform_all(prog: &Progression) -> Result<Vec<UniformSolution>> {
    let mut out = Vec::new();
    for (sigma, k) in cosets(GroupSelector::Extension) {
        out.extend(solve_uniform(prog, sigma, k)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// `(13)V`: retrograde inversion enchaining.
pub fn rich_element(modulus: Modulus) -> ExtElement {
    ExtElement::new(Perm3::T13, GeneratorTag::V.element(modulus))
}

/// `(x, y, z) ↦ (y, z, y + z − x)`.
pub fn rich(v: &Vec3) -> Vec3 {
    rich_element(v.modulus()).apply(v)
}

/// `seed, g(seed), g²(seed), …` up to the first return to `seed`.
pub fn orbit_of_element(g: &ExtElement, seed: &Vec3) -> Vec<Vec3> {
    let mut out = vec![*seed];
    let mut cur = g.apply(seed);
    while cur != *seed {
        out.push(cur);
        cur = g.apply(&cur);
    }
    out
}

/// RICH orbits through the orderings of `chord` whose members are all
/// consonant, keyed by the starting ordering. For a major or minor triad every
/// ordering qualifies: two give octatonic cycles of length 8, two give
/// hexatonic cycles of length 6 and two run through all 24 triads.
pub fn consonant_rich_cycles(chord: &Vec3) -> Vec<(Vec3, Vec<Vec3>)> {
    let g = rich_element(chord.modulus());
    let starts: BTreeSet<Vec3> = Perm3::ALL.iter().map(|s| s.apply(chord)).collect();
    starts
        .into_iter()
        .map(|v| (v, orbit_of_element(&g, &v)))
        .filter(|(_, cycle)| cycle.iter().all(is_consonant))
        .collect()
}

/// Which affine maps [`find_affine_morphisms`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MorphismSearch {
    /// `x ↦ ux + q` on each entry.
    #[default]
    Componentwise,
    /// Every affine map commuting with 𝒥.
    Centralizer,
}

/// Affine maps `f` with `f(a_i) = b_i` for every `i`.
pub fn find_affine_morphisms(a: &Progression, b: &Progression, search: MorphismSearch) -> Result<Vec<AffineMap>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { expected: a.len(), actual: b.len() });
    }
    let modulus = a.modulus();
    modulus.check(b.modulus())?;
    let candidates: Vec<AffineMap> = match search {
        MorphismSearch::Componentwise => {
            let n = modulus.get() as i64;
            (0..n)
                .flat_map(|u| (0..n).map(move |q| (u, q)))
                .map(|(u, q)| scalar_affine(modulus.residue(u), modulus.residue(q)).expect("one modulus"))
                .collect()
        }
        MorphismSearch::Centralizer => centralizer_in_aff(modulus, false)?.affine_maps(),
    };
    let mut out: Vec<AffineMap> = candidates
        .into_iter()
        .filter(|f| a.tuples().iter().zip(b.tuples()).all(|(x, y)| f.apply(x) == *y))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Whether `f ∘ g = g ∘ f` for every label `g`.
pub fn verify_morphism_commutation(f: &AffineMap, labels: &[ExtElement]) -> bool {
    labels.iter().all(|g| f.commutes_with_linear(&g.matrix()).unwrap_or(false))
}

/// A progression drawn as a directed graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Network {
    pub nodes: Vec<Vec3>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Network {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph progression {\n");
        for (i, v) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{v}\"];");
        }
        for e in &self.edges {
            match &e.label {
                Some(l) => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, l.replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(s, "  n{} -> n{};", e.from, e.to);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Nodes in order of first appearance, one edge per step.
pub fn export_network(prog: &Progression, labels: Option<&[String]>) -> Result<Network> {
    let steps = prog.steps();
    if let Some(l) = labels {
        if l.len() != steps.len() {
            return Err(Error::LengthMismatch { expected: steps.len(), actual: l.len() });
        }
    }
    let mut nodes: Vec<Vec3> = Vec::new();
    let index = |v: Vec3, nodes: &mut Vec<Vec3>| match nodes.iter().position(|x| *x == v) {
        Some(i) => i,
        None => {
            nodes.push(v);
            nodes.len() - 1
        }
    };
    for t in prog.tuples() {
        index(*t, &mut nodes);
    }
    let edges = steps
        .iter()
        .enumerate()
        .map(|(i, (s, t))| Edge {
            from: index(*s, &mut nodes),
            to: index(*t, &mut nodes),
            label: labels.map(|l| l[i].clone()),
        })
        .collect();
    Ok(Network { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    const N12: Modulus = Modulus::TWELVE;

    fn v(a: i64, b: i64, c: i64) -> Vec3 {
        Vec3::new([a, b, c], N12)
    }

    fn grail() -> Progression {
        let t = [[3, 7, 10], [2, 6, 11], [7, 11, 2], [6, 10, 3], [11, 3, 6], [10, 2, 7]];
        Progression::from_entries(&t, N12, true).unwrap()
    }

    #[test]
    fn rich_examples() {
        assert_eq!(rich(&v(8, 4, 5)), v(4, 5, 1));
        assert_eq!(rich(&v(5, 10, 1)), v(10, 1, 6));
        assert_eq!(rich(&v(7, 8, 4)), v(8, 4, 5));
    }

    #[test]
    fn step_contains_rich() {
        let sols = solve_step(&v(8, 4, 5), &v(4, 5, 1), GroupSelector::Extension).unwrap();
        assert!(sols.contains(&rich_element(N12)));
        let id = solve_step(&v(0, 4, 7), &v(0, 4, 7), GroupSelector::J).unwrap();
        assert!(id.contains(&ExtElement::identity(N12)));
    }

    #[test]
    fn grail_step() {
        let sols = solve_step(&v(3, 7, 10), &v(2, 6, 11), GroupSelector::Extension).unwrap();
        let mut pairs: Vec<(u32, u32)> = sols
            .iter()
            .filter(|e| e.sigma == Perm3::T12 && e.j.k() == 1)
            .map(|e| (e.j.uv_exp(), e.j.uw_exp()))
            .collect();
        pairs.sort_unstable();
        // one step is one congruence in two unknowns; the next step cuts it to four
        assert_eq!(pairs.len(), 12);
        for p in [(2, 7), (5, 4), (8, 1), (11, 10)] {
            assert!(pairs.contains(&p));
        }
    }

    #[test]
    fn grail_uniform() {
        let sols = solve_uniform(&grail(), Perm3::T12, 1).unwrap();
        let pairs: Vec<(u32, u32)> = sols.iter().map(|s| (s.m(), s.n())).collect();
        assert_eq!(pairs, vec![(2, 7), (5, 4), (8, 1), (11, 10)]);
        assert_eq!(sols[0].matrix.to_string(), "[[11,5,9],[10,6,9],[11,6,8]]");
    }

    #[test]
    fn falling_fifths_mod7() {
        let n7 = Modulus::new(7).unwrap();
        let p = Progression::from_entries(&[[0, 2, 4], [5, 0, 3], [6, 1, 3]], n7, false).unwrap();
        let sols = solve_uniform(&p, Perm3::T12, 1).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!((sols[0].m(), sols[0].n()), (3, 0));
        assert_eq!(sols[0].matrix.to_string(), "[[5,0,3],[4,1,3],[5,1,2]]");
        let cycle = orbit_of_element(&sols[0].element, &Vec3::new([0, 2, 4], n7));
        assert_eq!(&cycle[..3], p.tuples());
    }

    #[test]
    fn too_short() {
        let p = Progression::from_entries(&[[0, 4, 7]], N12, false).unwrap();
        assert_eq!(solve_uniform(&p, Perm3::ID, 0), Err(Error::ProgressionTooShort { min: 2, actual: 1 }));
        assert!(Progression::new(vec![], false).is_err());
    }

    #[test]
    fn octatonic_cycle() {
        let cycle = orbit_of_element(&rich_element(N12), &v(8, 4, 5));
        assert_eq!(cycle.len(), 8);
        let pcs: BTreeSet<u32> = cycle.iter().flat_map(|t| t.entries()).collect();
        assert_eq!(pcs.into_iter().collect::<Vec<_>>(), vec![1, 2, 4, 5, 7, 8, 10, 11]);
        assert_eq!(orbit_of_element(&ExtElement::identity(N12), &v(1, 2, 3)).len(), 1);
    }

    #[test]
    fn rich_cycles_through_g_flat() {
        let found = consonant_rich_cycles(&v(6, 10, 1));
        let lens: Vec<(Vec3, usize)> = found.iter().map(|(s, c)| (*s, c.len())).collect();
        assert_eq!(
            lens,
            vec![
                (v(1, 6, 10), 8),
                (v(1, 10, 6), 24),
                (v(6, 1, 10), 6),
                (v(6, 10, 1), 24),
                (v(10, 1, 6), 6),
                (v(10, 6, 1), 8)
            ]
        );
        let hex = &found[4].1;
        assert_eq!(hex[..3], [v(10, 1, 6), v(1, 6, 9), v(6, 9, 2)]);
        let pcs: BTreeSet<u32> = hex.iter().flat_map(|t| t.entries()).collect();
        assert_eq!(pcs.into_iter().collect::<Vec<_>>(), vec![1, 2, 5, 6, 9, 10]);
        assert!(consonant_rich_cycles(&v(0, 1, 2)).is_empty());
    }

    #[test]
    fn json_round_trip() {
        let p = Progression::from_json(r#"{"tuples": [[3,7,10],[2,6,11]]}"#).unwrap();
        assert_eq!(p.modulus(), N12);
        assert!(!p.is_cyclic());
        assert_eq!(Progression::from_json(&p.to_json()).unwrap(), p);
        assert!(Progression::from_json(r#"{"tuples": []}"#).is_err());
        assert!(Progression::from_json(r#"{"modulus": 1, "tuples": [[0,0,0]]}"#).is_err());
        assert!(Progression::from_json("not json").is_err());
    }

    #[test]
    fn dot_export() {
        let p = Progression::from_entries(&[[0, 4, 7], [7, 3, 0]], N12, false).unwrap();
        let net = export_network(&p, None).unwrap();
        assert_eq!(net.edges.len(), 1);
        assert_eq!(net.to_dot(), "digraph progression {\n  n0 [label=\"(0,4,7)\"];\n  n1 [label=\"(7,3,0)\"];\n  n0 -> n1;\n}\n");
        let cyc = export_network(&grail(), None).unwrap();
        assert_eq!((cyc.nodes.len(), cyc.edges.len()), (6, 6));
        assert!(export_network(&p, Some(&[])).is_err());
    }

    #[test]
    fn commutation_examples() {
        let down2 = scalar_affine(N12.residue(1), N12.residue(10)).unwrap();
        assert!(verify_morphism_commutation(&down2, &[rich_element(N12)]));
        let times10 = scalar_affine(N12.residue(10), N12.residue(0)).unwrap();
        let gens: Vec<ExtElement> = GeneratorTag::ALL.iter().map(|&g| ExtElement::generator(g, N12)).collect();
        assert!(verify_morphism_commutation(&times10, &gens));
        let skew = AffineMap::new(Mat3::identity(N12), v(1, 0, 0)).unwrap();
        assert!(!verify_morphism_commutation(&skew, &[ExtElement::generator(GeneratorTag::V, N12)]));
    }
}
