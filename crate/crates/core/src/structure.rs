//! Centers, centralizers, matrix-group orders and duality.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{scalar_affine, AffineMap, Mat3, Perm3, Vec3};
use crate::modring::{crt_split, LinearSystem, Modulus, DEFAULT_BUDGET};
use crate::triadic::{dualistic_tuple, Plr, TriadId};
use crate::voicing::{enumerate_j, GeneratorTag, JElement};

/// Elements of 𝒥 commuting with every element of 𝒥.
pub fn center_of_j(modulus: Modulus) -> Vec<JElement> {
    let all = enumerate_j(modulus);
    all.iter().filter(|a| all.iter().all(|b| **a * *b == *b * **a)).copied().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    M3,
    Gl3,
    AffMonoid,
    AffGroup,
}

/// One element of a centralizer: a matrix, or an affine map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Centralizing {
    Linear(Mat3),
    Affine(AffineMap),
}

impl Centralizing {
    pub fn as_affine(&self) -> AffineMap {
        match self {
            Centralizing::Linear(a) => AffineMap::linear(*a),
            Centralizing::Affine(f) => *f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralizerReport {
    pub ambient: Ambient,
    pub modulus: Modulus,
    pub size: usize,
    pub elements: Vec<Centralizing>,
}

impl CentralizerReport {
    fn new(ambient: Ambient, modulus: Modulus, mut elements: Vec<Centralizing>) -> Self {
        elements.sort_unstable();
        CentralizerReport { ambient, modulus, size: elements.len(), elements }
    }

    pub fn matrices(&self) -> Vec<Mat3> {
        self.elements.iter().map(|e| e.as_affine().linear).collect()
    }

    pub fn affine_maps(&self) -> Vec<AffineMap> {
        self.elements.iter().map(Centralizing::as_affine).collect()
    }
}

/// Rows of `AG − GA = 0` in the nine unknowns `A_pq` (index `3p + q`).
fn commutator_rows(g: &Mat3) -> Vec<Vec<i64>> {
    let g = g.rows().map(|r| r.map(|x| x as i64));
    let mut rows = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let mut row = vec![0i64; 9];
            for p in 0..3 {
                for q in 0..3 {
                    // coefficient of A_pq in (AG)_ij − (GA)_ij
                    let mut c = 0;
                    if p == i {
                        c += g[q][j];
                    }
                    if q == j {
                        c -= g[i][p];
                    }
                    row[3 * p + q] = c;
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn generator_commutation_system(modulus: Modulus) -> Result<LinearSystem> {
    let rows = GeneratorTag::ALL.iter().flat_map(|g| commutator_rows(&g.matrix(modulus))).collect();
    LinearSystem::homogeneous(modulus, 9, rows)
}

/// All `A ∈ M(3, Z/n)` commuting with U, V and W.
pub fn centralizer_in_m3(modulus: Modulus) -> Result<CentralizerReport> {
    centralizer_in_m3_with_budget(modulus, DEFAULT_BUDGET)
}

/// [`centralizer_in_m3`] with an explicit per-factor search budget.
pub fn centralizer_in_m3_with_budget(modulus: Modulus, budget: u64) -> Result<CentralizerReport> {
    let sols = generator_commutation_system(modulus)?.solve_with_budget(budget)?;
    let elements = sols
        .iter()
        .map(|x| {
            let flat: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            Centralizing::Linear(Mat3::from_flat(&flat, modulus).expect("nine unknowns"))
        })
        .collect();
    Ok(CentralizerReport::new(Ambient::M3, modulus, elements))
}

/// The invertible part of [`centralizer_in_m3`].
pub fn centralizer_in_gl3(modulus: Modulus) -> Result<CentralizerReport> {
    centralizer_in_gl3_with_budget(modulus, DEFAULT_BUDGET)
}

pub fn centralizer_in_gl3_with_budget(modulus: Modulus, budget: u64) -> Result<CentralizerReport> {
    let m3 = centralizer_in_m3_with_budget(modulus, budget)?;
    let elements = m3.matrices().into_iter().filter(Mat3::is_invertible).map(Centralizing::Linear).collect();
    Ok(CentralizerReport::new(Ambient::Gl3, modulus, elements))
}

/// Translations `b` with `Gb = b` for every generator `G`.
pub fn fixed_translations(modulus: Modulus) -> Result<Vec<Vec3>> {
    let mut rows = Vec::new();
    for g in GeneratorTag::ALL {
        let m = g.matrix(modulus).rows();
        for (i, r) in m.iter().enumerate() {
            rows.push((0..3).map(|j| r[j] as i64 - (i == j) as i64).collect());
        }
    }
    let sols = LinearSystem::homogeneous(modulus, 3, rows)?.solve()?;
    Ok(sols.iter().map(|x| Vec3::new([x[0] as i64, x[1] as i64, x[2] as i64], modulus)).collect())
}

/// Affine maps `x ↦ Ax + b` commuting with 𝒥.
///
/// Commuting with a linear `G` means `AG = GA` and `Gb = b`, so the answer is
/// the linear centralizer times the translations fixed by 𝒥.
pub fn centralizer_in_aff(modulus: Modulus, invertible_only: bool) -> Result<CentralizerReport> {
    let (linear, ambient) = if invertible_only {
        (centralizer_in_gl3(modulus)?, Ambient::AffGroup)
    } else {
        (centralizer_in_m3(modulus)?, Ambient::AffMonoid)
    };
    let translations = fixed_translations(modulus)?;
    let elements = linear
        .matrices()
        .iter()
        .flat_map(|a| translations.iter().map(move |b| Centralizing::Affine(AffineMap { linear: *a, translation: *b })))
        .collect();
    Ok(CentralizerReport::new(ambient, modulus, elements))
}

/// The scalar-times-central matrices for n = 12: `diag(u)` for every `u`,
/// and `diag(u)` times each nonidentity central element for odd `u`.
///
/// These are 30 of the matrices commuting with 𝒥. The full commutant in
/// M(3, Z/12) is larger: over Z/4 every `2·J^{r,s}` commutes with 𝒥 because
/// 𝒥 is abelian mod 2, so for instance `6W` commutes without being listed
/// here. All of the extra matrices are singular.
pub fn twelve_tone_centralizer_families() -> Vec<Mat3> {
    let n = Modulus::TWELVE;
    let central = [JElement::new(0, 6, 0, n), JElement::new(0, 0, 6, n), JElement::new(0, 6, 6, n)];
    let mut out: Vec<Mat3> = (0..12).map(|u| Mat3::diag(u, n)).collect();
    for u in (1..12).step_by(2) {
        for c in &central {
            out.push(Mat3::diag(u, n) * c.matrix());
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixGroup {
    Gl3,
    Sl3,
}

/// For each determinant value, how many first rows give it against a fixed
/// pair of bottom rows, depending only on their cofactor vector.
fn count_by_determinant(q: u32, target: impl Fn(u32) -> bool) -> u128 {
    let qi = q as i64;
    let mut first_rows: HashMap<[i64; 3], u128> = HashMap::new();
    let mut total: u128 = 0;
    let range = 0..qi;
    for b0 in range.clone() {
        for b1 in range.clone() {
            for b2 in range.clone() {
                for c0 in range.clone() {
                    for c1 in range.clone() {
                        for c2 in range.clone() {
                            let cof = [
                                (b1 * c2 - b2 * c1).rem_euclid(qi),
                                (b2 * c0 - b0 * c2).rem_euclid(qi),
                                (b0 * c1 - b1 * c0).rem_euclid(qi),
                            ];
                            total += *first_rows.entry(cof).or_insert_with(|| {
                                let mut hits = 0u128;
                                for a0 in 0..qi {
                                    for a1 in 0..qi {
                                        for a2 in 0..qi {
                                            let det = (a0 * cof[0] + a1 * cof[1] + a2 * cof[2]).rem_euclid(qi);
                                            hits += target(det as u32) as u128;
                                        }
                                    }
                                }
                                hits
                            });
                        }
                    }
                }
            }
        }
    }
    total
}

/// Brute-force order of GL(3) or SL(3) over Z/n.
///
/// Each prime-power factor `q` is counted over all `q⁹` matrices, refusing
/// when that exceeds `budget`; the factors multiply by the Chinese remainder
/// theorem.
pub fn count_with_budget(group: MatrixGroup, modulus: Modulus, budget: u64) -> Result<u128> {
    let factors = crt_split(modulus);
    for q in &factors {
        let candidates = (q.get() as u128).pow(9);
        if candidates > budget as u128 {
            return Err(Error::BudgetExceeded { candidates, budget });
        }
    }
    Ok(factors
        .iter()
        .map(|q| {
            let q = q.get();
            match group {
                MatrixGroup::Gl3 => count_by_determinant(q, |d| crate::modring::gcd(d as u64, q as u64) == 1),
                MatrixGroup::Sl3 => count_by_determinant(q, |d| d == 1 % q),
            }
        })
        .product())
}

pub fn count_gl3(modulus: Modulus) -> Result<u128> {
    count_with_budget(MatrixGroup::Gl3, modulus, DEFAULT_BUDGET)
}

pub fn count_sl3(modulus: Modulus) -> Result<u128> {
    count_with_budget(MatrixGroup::Sl3, modulus, DEFAULT_BUDGET)
}

/// `|GL(3, Z/p^a)| = p^{9(a−1)} ∏_{i<3} (p³ − p^i)`, multiplied over factors;
/// SL divides by the number of units.
pub fn closed_form_order(group: MatrixGroup, modulus: Modulus) -> u128 {
    modulus
        .factorization()
        .iter()
        .map(|pp| {
            let p = pp.prime as u128;
            let gl = p.pow(9 * (pp.exponent - 1)) * (0..3).map(|i| p.pow(3) - p.pow(i)).product::<u128>();
            match group {
                MatrixGroup::Gl3 => gl,
                MatrixGroup::Sl3 => gl / (p.pow(pp.exponent - 1) * (p - 1)),
            }
        })
        .product()
}

/// `[G : 𝒥]` for `G = GL(3)` or `SL(3)` over Z/n, from brute-force counts.
pub fn index_of_j(modulus: Modulus, ambient: MatrixGroup) -> Result<u128> {
    let order = count_with_budget(ambient, modulus, DEFAULT_BUDGET)?;
    let n = modulus.get() as u128;
    let j = 2 * n * n;
    if order % j != 0 {
        return Err(Error::NotDivisible { order, divisor: j });
    }
    Ok(order / j)
}

/// Outcome of testing a seed for Lewinian duality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub seed: Vec3,
    pub orbit: Vec<Vec3>,
    pub orbit_size: usize,
    /// `"UV"` or `"UW"`: which rotation joins `U` in the contextual group.
    pub contextual_rotation: &'static str,
    pub simply_transitive_contextual: bool,
    pub simply_transitive_ti: bool,
    pub mutually_commuting: bool,
    pub is_dual_pair: bool,
    /// The first nonidentity contextual element whose restriction to the
    /// orbit coincides with that of a later element.
    pub coincidence: Option<(JElement, JElement)>,
}

/// A group element restricted to an orbit, as an index permutation; `None`
/// when the element does not preserve the orbit.
fn restrict(orbit: &[Vec3], f: impl Fn(&Vec3) -> Vec3) -> Option<Vec<usize>> {
    orbit.iter().map(|v| orbit.binary_search(&f(v)).ok()).collect()
}

fn simply_transitive(perms: &[Option<Vec<usize>>], size: usize) -> bool {
    let Some(perms) = perms.iter().cloned().collect::<Option<Vec<_>>>() else {
        return false;
    };
    let mut distinct = perms.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let reach: std::collections::BTreeSet<usize> = perms.iter().map(|p| p[0]).collect();
    distinct.len() == size && perms.len() == size && reach.len() == size
}

/// The transpositions and inversions `x ↦ ±x + t`, acting componentwise.
pub fn ti_group(modulus: Modulus) -> Vec<AffineMap> {
    let n = modulus.get() as i64;
    [1, -1]
        .iter()
        .flat_map(|&u| (0..n).map(move |t| scalar_affine(modulus.residue(u), modulus.residue(t)).expect("one modulus")))
        .collect()
}

/// Whether `⟨U, UV⟩` (or `⟨U, UW⟩`) and the T/I group, restricted to the T/I
/// orbit of `seed`, act simply transitively and commute.
///
/// `UV` adds `z − x`, so it is used when that difference is a unit; otherwise
/// `UW` is used when `z − y` is a unit, and `UV` again as a last resort.
pub fn check_duality(seed: &Vec3) -> DualityReport {
    let modulus = seed.modulus();
    let [x, y, z] = seed.entries().map(|e| e as i64);
    let use_uw = !modulus.residue(z - x).is_unit() && modulus.residue(z - y).is_unit();
    let n = modulus.get() as i64;
    let contextual: Vec<JElement> = (0..2)
        .flat_map(|k| {
            (0..n).map(move |e| if use_uw { JElement::new(k, 0, e, modulus) } else { JElement::new(k, e, 0, modulus) })
        })
        .collect();
    let ti = ti_group(modulus);

    let mut orbit: Vec<Vec3> = ti.iter().map(|f| f.apply(seed)).collect();
    orbit.sort_unstable();
    orbit.dedup();

    let ctx_perms: Vec<_> = contextual.iter().map(|g| restrict(&orbit, |v| g.apply(v))).collect();
    let ti_perms: Vec<_> = ti.iter().map(|f| restrict(&orbit, |v| f.apply(v))).collect();

    let mutually_commuting = contextual
        .iter()
        .all(|g| ti.iter().all(|f| orbit.iter().all(|v| g.apply(&f.apply(v)) == f.apply(&g.apply(v)))));

    let coincidence = (1..contextual.len()).find_map(|i| {
        let later = (i + 1..contextual.len()).find(|&j| ctx_perms[j].is_some() && ctx_perms[j] == ctx_perms[i])?;
        Some((contextual[i], contextual[later]))
    });

    let simply_transitive_contextual = simply_transitive(&ctx_perms, orbit.len());
    let simply_transitive_ti = simply_transitive(&ti_perms, orbit.len());
    let is_dual_pair = simply_transitive_contextual
        && simply_transitive_ti
        && mutually_commuting
        && orbit.len() == 2 * modulus.get() as usize;
    DualityReport {
        seed: *seed,
        orbit_size: orbit.len(),
        orbit,
        contextual_rotation: if use_uw { "UW" } else { "UV" },
        simply_transitive_contextual,
        simply_transitive_ti,
        mutually_commuting,
        is_dual_pair,
        coincidence,
    }
}

/// Number of distinct permutations of `set` induced by `group`.
pub fn distinct_restrictions(group: &[JElement], set: &[Vec3]) -> usize {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut perms: Vec<_> = group.iter().map(|g| restrict(&sorted, |v| g.apply(v))).collect();
    perms.sort_unstable();
    perms.dedup();
    perms.len()
}

/// How the generators restrict to one T/I orbit of a reordering of C major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RestrictionColumn {
    pub representative: Vec3,
    #[serde(skip)]
    pub sigma: Perm3,
    pub u: Plr,
    pub v: Plr,
    pub w: Plr,
}

/// For each reordering `σ(0,4,7)`, which of `σPσ⁻¹`, `σLσ⁻¹`, `σRσ⁻¹` each of
/// U, V, W agrees with on the 24 triads of that orbit.
pub fn orbit_restriction_table() -> Result<Vec<RestrictionColumn>> {
    let n = Modulus::TWELVE;
    let columns = [[0, 4, 7], [4, 7, 0], [7, 0, 4], [0, 7, 4], [4, 0, 7], [7, 4, 0]];
    let s: Vec<Vec3> = TriadId::all().into_iter().map(dualistic_tuple).collect();
    let c_major = Vec3::new([0, 4, 7], n);
    columns
        .iter()
        .map(|&col| {
            let rep = Vec3::new(col, n);
            let sigma = *Perm3::ALL.iter().find(|p| p.apply(&c_major) == rep).expect("a reordering");
            let orbit: Vec<Vec3> = s.iter().map(|v| sigma.apply(v)).collect();
            let identify = |g: GeneratorTag| -> Result<Plr> {
                let matches: Vec<Plr> = Plr::ALL
                    .into_iter()
                    .filter(|op| {
                        orbit.iter().all(|x| {
                            let local = sigma.apply(&op.on_dualistic(&sigma.inverse().apply(x)));
                            g.matrix(n) * *x == local
                        })
                    })
                    .collect();
                match matches.as_slice() {
                    [op] => Ok(*op),
                    _ => Err(Error::parse(format!("{} has no unique restriction on the orbit of {rep}", g.letter()))),
                }
            };
            Ok(RestrictionColumn {
                representative: rep,
                sigma,
                u: identify(GeneratorTag::U)?,
                v: identify(GeneratorTag::V)?,
                w: identify(GeneratorTag::W)?,
            })
        })
        .collect()
}
