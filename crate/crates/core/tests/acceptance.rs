//! End-to-end acceptance checks. Every comparison is exact.
//!
//! Each criterion returns `Err` with an explanation instead of panicking, so
//! one run prints a PASS/FAIL line for all twelve before the suite asserts.

use std::collections::{BTreeSet, HashSet};

use jgroup_core::closure::closure;
use jgroup_core::extension::{conjugacy_class, enumerate_extension};
use jgroup_core::modring::solve_homogeneous;
use jgroup_core::prelude::*;
use jgroup_core::structure::{
    center_of_j, centralizer_in_aff, centralizer_in_gl3, centralizer_in_m3, check_duality, count_gl3, count_sl3,
    index_of_j, orbit_restriction_table, twelve_tone_centralizer_families, MatrixGroup,
};
use jgroup_core::triadic::{
    classify, dual_root_pos_triads, hook_by_stabilizer, hook_from_normal_form_b, hook_normal_form_b, maj_triads,
    min_triads, rho, rho_matrix, root_pos_triads, triads, wreath_generators, Classification,
};
use jgroup_core::voicing::{decode, enumerate_j};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<(), String>;

const N12: Modulus = Modulus::TWELVE;

fn v(a: i64, b: i64, c: i64) -> Vec3 {
    Vec3::new([a, b, c], N12)
}

fn m(rows: [[i64; 3]; 3]) -> Mat3 {
    Mat3::new(rows, N12)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gen(g: GeneratorTag) -> Mat3 {
    g.matrix(N12)
}

fn group_order_and_normal_form() -> Check {
    let id = Mat3::identity(N12);
    let gens: Vec<Mat3> = GeneratorTag::ALL.iter().map(|&g| gen(g)).collect();
    let bfs: HashSet<Mat3> = closure(id, &gens, |a, b| *a * *b).into_iter().collect();
    ensure(bfs.len() == 288, || format!("closure has {} elements", bfs.len()))?;

    let elements = enumerate_j(N12);
    let encoded: HashSet<Mat3> = elements.iter().map(JElement::matrix).collect();
    ensure(elements.len() == 288 && encoded.len() == 288, || "normal forms are not 288 distinct matrices".into())?;
    ensure(encoded == bfs, || "normal-form matrices differ from the closure".into())?;
    for a in &bfs {
        let e = decode(a).map_err(|err| format!("{a} failed to decode: {err}"))?;
        ensure(e.matrix() == *a, || format!("decode({a}) = {e} does not re-encode"))?;
    }
    Ok(())
}

fn relations() -> Check {
    let id = Mat3::identity(N12);
    let (u, v_, w) = (gen(GeneratorTag::U), gen(GeneratorTag::V), gen(GeneratorTag::W));
    let (uv, uw) = (u * v_, u * w);
    let uvw = u * v_ * w;
    for (name, x, e) in [("U", u, 2), ("V", v_, 2), ("W", w, 2), ("UVW", uvw, 2), ("UV", uv, 12), ("UW", uw, 12)] {
        ensure(x.pow(e) == id, || format!("{name}^{e} is not the identity"))?;
    }
    ensure(uv * uw == uw * uv, || "UV and UW do not commute".into())?;
    // U is an involution, so U⁻¹ = U
    for k in 0..12u64 {
        let lhs = u * uv.pow(k) * u;
        let rhs = uv.pow((12 - k) % 12);
        ensure(lhs == rhs, || format!("U⁻¹(UV)^{k}U != (UV)^-{k}"))?;
    }
    Ok(())
}

fn center() -> Check {
    let got: BTreeSet<JElement> = center_of_j(N12).into_iter().collect();
    let want: BTreeSet<JElement> =
        [(0, 0), (6, 0), (0, 6), (6, 6)].iter().map(|&(a, b)| JElement::new(0, a, b, N12)).collect();
    ensure(got == want, || format!("center is {got:?}"))
}

fn centralizers() -> Check {
    let m3 = centralizer_in_m3(N12).map_err(|e| e.to_string())?;
    let gl3 = centralizer_in_gl3(N12).map_err(|e| e.to_string())?;
    let monoid = centralizer_in_aff(N12, false).map_err(|e| e.to_string())?;
    let group = centralizer_in_aff(N12, true).map_err(|e| e.to_string())?;
    let families = twelve_tone_centralizer_families();
    let found = m3.matrices();
    let mut problems = Vec::new();
    for (name, got, want) in
        [("M(3,Z12)", m3.size, 30), ("GL(3,Z12)", gl3.size, 16), ("Aff monoid", monoid.size, 360), ("Aff group", group.size, 192)]
    {
        if got != want {
            problems.push(format!("{name}: expected {want}, found {got}"));
        }
    }
    if found != families {
        let extra: Vec<&Mat3> = found.iter().filter(|a| !families.contains(a)).collect();
        let missing = families.iter().filter(|a| !found.contains(a)).count();
        let singular = extra.iter().all(|a| !a.is_invertible());
        let six_w = m([[0, 0, 6], [6, 6, 6], [6, 0, 0]]);
        let witness_commutes = GeneratorTag::ALL.iter().all(|&g| six_w.commutes_with(&gen(g)));
        problems.push(format!(
            "the commutant is not the four diag(u) families: {} extra matrices ({}), {} missing; \
             e.g. 6W = {} commutes with U, V, W: {}; 𝒥 is abelian mod 2, so 2·J commutes with 𝒥 over Z/4",
            extra.len(),
            if singular { "all singular" } else { "some invertible" },
            missing,
            six_w,
            witness_commutes,
        ));
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems.join("; "))
    }
}

fn counting() -> Check {
    let n = |x| Modulus::new(x).unwrap();
    let gl3_3 = count_gl3(n(3)).map_err(|e| e.to_string())?;
    let gl3_4 = count_gl3(n(4)).map_err(|e| e.to_string())?;
    let sl3_12 = count_sl3(N12).map_err(|e| e.to_string())?;
    let gl_index = index_of_j(N12, MatrixGroup::Gl3).map_err(|e| e.to_string())?;
    let sl_index = index_of_j(N12, MatrixGroup::Sl3).map_err(|e| e.to_string())?;
    let got = (gl3_3, gl3_4, sl3_12, gl_index, sl_index);
    let want = (11_232, 86_016, 241_532_928, 3_354_624, 838_656);
    ensure(got == want, || format!("got {got:?}, expected {want:?}"))
}

fn traces_and_classes() -> Check {
    let all = enumerate_extension(N12);
    ensure(all.len() == 1728, || format!("extension has {} elements", all.len()))?;
    for a in &all {
        let k = a.j.k();
        let want: i64 = match (a.sigma.is_identity(), a.sigma.is_three_cycle(), k) {
            (true, _, 0) => 3,
            (true, _, _) => -1,
            (false, true, 0) => 0,
            (false, true, _) => 2,
            _ => 1,
        };
        let got = a.matrix().trace();
        ensure(got == N12.residue(want), || format!("trace of {a} is {got}, expected {want}"))?;
    }
    let u = ExtElement::generator(GeneratorTag::U, N12);
    let in_j = conjugacy_class(&u, GroupSelector::J).len();
    let in_ext = conjugacy_class(&u, GroupSelector::Extension).len();
    ensure((in_j, in_ext) == (36, 108), || format!("class of U has sizes {in_j} and {in_ext}"))
}

fn is_mode(t: &Vec3, mode: Mode) -> bool {
    matches!(classify(t), Ok(Classification::Consonant(c)) if c.id.mode == mode)
}

fn orbits() -> Check {
    let sizes =
        [triads().len(), maj_triads().len(), min_triads().len(), root_pos_triads().len(), dual_root_pos_triads().len()];
    ensure(sizes == [144, 72, 72, 24, 24], || format!("orbit sizes {sizes:?}"))?;
    ensure(triads().iter().all(|t| classify(t).is_ok_and(|c| c != Classification::NotConsonant)), || {
        "Triads contains a dissonant voicing".into()
    })?;
    ensure(maj_triads().iter().all(|t| is_mode(t, Mode::Major)), || "MajTriads contains a minor voicing".into())?;
    ensure(min_triads().iter().all(|t| is_mode(t, Mode::Minor)), || "MinTriads contains a major voicing".into())?;
    let root: BTreeSet<Vec3> = root_pos_triads().into_iter().collect();
    let want_root: BTreeSet<Vec3> = (0..12).flat_map(|r| [v(r, r + 4, r + 7), v(r, r + 3, r + 7)]).collect();
    ensure(root == want_root, || "RootPosTriads is not {(r,r+4,r+7),(r,r+3,r+7)}".into())?;
    let dual: BTreeSet<Vec3> = dual_root_pos_triads().into_iter().collect();
    let want_dual: BTreeSet<Vec3> = (0..12).flat_map(|r| [v(r, r + 4, r + 7), v(r + 7, r + 3, r)]).collect();
    ensure(dual == want_dual, || "DualRootPosTriads is not {(r,r+4,r+7),(r+7,r+3,r)}".into())?;

    let table = orbit_restriction_table().map_err(|e| e.to_string())?;
    let row = |f: fn(&jgroup_core::structure::RestrictionColumn) -> jgroup_core::triadic::Plr| -> String {
        table.iter().map(|c| f(c).to_string()).collect()
    };
    let got = [row(|c| c.u), row(|c| c.v), row(|c| c.w)];
    ensure(got == ["RLPPRL", "LPRLPR", "PRLRLP"], || format!("restriction table rows {got:?}"))
}

fn hook_representation() -> Check {
    let utts = Utt::all();
    ensure(utts.len() == 288, || format!("{} UTTs", utts.len()))?;
    let images: Vec<HookElement> = utts.iter().map(rho).collect();
    let image_set: BTreeSet<ExtElement> = images.iter().map(HookElement::element).collect();
    ensure(image_set.len() == 288, || "ρ is not injective".into())?;
    for (i, a) in utts.iter().enumerate() {
        for (j, b) in utts.iter().enumerate() {
            let lhs = rho(&a.compose(b)).element();
            let rhs = images[i].element() * images[j].element();
            ensure(lhs == rhs, || format!("ρ({a}∘{b}) != ρ({a})ρ({b})"))?;
        }
    }
    let stabilizer: BTreeSet<ExtElement> = hook_by_stabilizer().into_iter().collect();
    ensure(stabilizer == image_set, || format!("stabilizer has {} elements and differs from the image", stabilizer.len()))?;

    let displayed = [
        (Utt::new(UttSign::Plus, 1, 0), m([[9, 1, 3], [8, 2, 3], [8, 1, 4]]), JElement::new(0, 4, -1, N12)),
        (Utt::new(UttSign::Plus, 0, 1), m([[10, 11, 4], [9, 0, 4], [9, 11, 5]]), JElement::new(0, 3, 1, N12)),
    ];
    for (u, mat, j) in displayed {
        ensure(rho_matrix(&u) == mat && rho(&u).element() == ExtElement::from_j(j), || format!("ρ{u} is {}", rho_matrix(&u)))?;
    }
    let e = ExtElement::new(Perm3::T13, GeneratorTag::W.element(N12));
    let minus = Utt::new(UttSign::Minus, 0, 0);
    ensure(rho_matrix(&minus) == m([[1, 0, 0], [1, 11, 1], [0, 0, 1]]) && rho(&minus).element() == e, || {
        format!("ρ{minus} is {}", rho_matrix(&minus))
    })?;

    let e_inv = ExtElement::generator(GeneratorTag::W, N12) * ExtElement::from_perm(Perm3::T13, N12);
    for a in 0..12 {
        for b in 0..12 {
            let x = ExtElement::from_j(JElement::new(0, a, b, N12));
            let want = ExtElement::from_j(JElement::new(0, a + b, -b, N12));
            ensure(e * x * e_inv == want, || format!("(13)W (UV)^{a}(UW)^{b} W(13) != {want}"))?;
        }
    }
    let (we, _, _) = wreath_generators();
    ensure(we.element() == e, || "E is not (13)W".into())?;

    let mut seen = BTreeSet::new();
    for h in HookElement::all() {
        let (p, n) = hook_normal_form_b(&h);
        ensure(p < 24 && n < 12, || format!("normal form ({p},{n}) out of range"))?;
        ensure(hook_from_normal_form_b(p as i64, n as i64) == h, || format!("{h} does not round trip"))?;
        ensure(p % 2 == h.element().j.k() as u32, || format!("{h}: p = {p} has the wrong parity"))?;
        seen.insert((p, n));
    }
    ensure(seen.len() == 288, || "normal form B is not injective".into())?;
    let all_forms: BTreeSet<ExtElement> =
        (0..24).flat_map(|p| (0..12).map(move |n| hook_from_normal_form_b(p, n).element())).collect();
    ensure(all_forms == image_set, || "normal forms B do not cover the Hook group".into())
}

fn solvers() -> Check {
    let grail = [[3, 7, 10], [2, 6, 11], [7, 11, 2], [6, 10, 3], [11, 3, 6], [10, 2, 7]];
    let prog = Progression::from_entries(&grail, N12, true).map_err(|e| e.to_string())?;
    let sols = solve_uniform(&prog, Perm3::T12, 1).map_err(|e| e.to_string())?;
    let got: Vec<(u32, u32, Mat3)> = sols.iter().map(|s| (s.m(), s.n(), s.matrix)).collect();
    let want = vec![
        (2, 7, m([[11, 5, 9], [10, 6, 9], [11, 6, 8]])),
        (5, 4, m([[8, 8, 9], [7, 9, 9], [8, 9, 8]])),
        (8, 1, m([[5, 11, 9], [4, 0, 9], [5, 0, 8]])),
        (11, 10, m([[2, 2, 9], [1, 3, 9], [2, 3, 8]])),
    ];
    ensure(got == want, || format!("Grail solutions {got:?}"))?;

    let n7 = Modulus::new(7).unwrap();
    let fifths = Progression::from_entries(&[[0, 2, 4], [5, 0, 3], [6, 1, 3]], n7, false).map_err(|e| e.to_string())?;
    let sols = solve_uniform(&fifths, Perm3::T12, 1).map_err(|e| e.to_string())?;
    let got: Vec<(u32, u32, Mat3)> = sols.iter().map(|s| (s.m(), s.n(), s.matrix)).collect();
    let want = vec![(3, 0, Mat3::new([[5, 0, 3], [4, 1, 3], [5, 1, 2]], n7))];
    ensure(got == want, || format!("falling fifths solutions {got:?}"))
}

fn webern() -> Check {
    let row1 = [v(8, 4, 5), v(4, 5, 1), v(5, 1, 2), v(1, 2, 10), v(2, 10, 11), v(10, 11, 7)];
    let row2 = [v(6, 2, 3), v(2, 3, 11), v(3, 11, 0), v(11, 0, 8), v(0, 8, 9), v(8, 9, 5)];
    let rich_el = ExtElement::new(Perm3::T13, GeneratorTag::V.element(N12));
    ensure(rich_element(N12) == rich_el, || "RICH is not (13)V".into())?;
    let cycle = orbit_of_element(&rich_el, &row1[0]);
    ensure(cycle.len() == 8, || format!("cycle closes after {} steps", cycle.len()))?;
    ensure(rich_el.apply(&cycle[7]) == row1[0], || "cycle does not return to (8,4,5)".into())?;
    ensure(cycle[..6] == row1, || format!("chain {:?}", &cycle[..6]))?;
    let pcs: BTreeSet<u32> = cycle.iter().flat_map(|t| t.entries()).collect();
    ensure(pcs.iter().copied().eq([1, 2, 4, 5, 7, 8, 10, 11]), || format!("pitch classes {pcs:?}"))?;

    let down2 = AffineMap::new(Mat3::identity(N12), Vec3::constant(-2, N12)).map_err(|e| e.to_string())?;
    ensure(row1.iter().map(|t| down2.apply(t)).eq(row2), || "x-2 does not map row 1 to row 2".into())?;
    ensure(verify_morphism_commutation(&down2, &[rich_el]), || "x-2 does not commute with (13)V".into())?;
    let everywhere = (0..1728i64).all(|i| {
        let t = v(i / 144, i / 12, i);
        down2.apply(&rich_el.apply(&t)) == rich_el.apply(&down2.apply(&t))
    });
    ensure(everywhere, || "x-2 and (13)V disagree on some point".into())
}

fn duality() -> Check {
    for seed in [v(0, 4, 7), v(0, 4, 1)] {
        let r = check_duality(&seed);
        ensure(r.is_dual_pair, || format!("{seed} is not a dual pair: {r:?}"))?;
    }
    let bad = check_duality(&v(0, 4, 10));
    ensure(!bad.is_dual_pair, || "(0,4,10) reported as a dual pair".into())?;
    let witness = Some((JElement::uv(N12), JElement::new(0, 7, 0, N12)));
    ensure(bad.coincidence == witness, || format!("witness {:?}", bad.coincidence))
}

fn oracles() -> Check {
    let j = enumerate_j(N12);
    for a in &j {
        for b in &j {
            ensure((*a * *b).matrix() == a.matrix() * b.matrix(), || format!("{a} * {b} disagrees with matrices"))?;
        }
    }

    let all = enumerate_extension(N12);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let random_vec = |rng: &mut StdRng| v(rng.random_range(0..12), rng.random_range(0..12), rng.random_range(0..12));
    for i in 0..200 {
        let src = random_vec(&mut rng);
        // half the targets are reachable by construction
        let dst = if i % 2 == 0 { all[rng.random_range(0..all.len())].apply(&src) } else { random_vec(&mut rng) };
        let mut fast = solve_step(&src, &dst, GroupSelector::Extension).map_err(|e| e.to_string())?;
        fast.sort_unstable();
        // enumeration order is already sorted
        let slow: Vec<ExtElement> = all.iter().filter(|g| g.apply(&src) == dst).copied().collect();
        ensure(fast == slow, || format!("solve_step({src}, {dst}) found {} of {}", fast.len(), slow.len()))?;
    }

    let direct = |rows: &[Vec<i64>], unknowns: usize| -> Vec<Vec<u32>> {
        let points: Vec<Vec<u32>> = if unknowns == 1 {
            (0..12).map(|x| vec![x]).collect()
        } else {
            (0..12).flat_map(|x| (0..12).map(move |y| vec![x, y])).collect()
        };
        points
            .into_iter()
            .filter(|x| rows.iter().all(|r| r.iter().zip(x).map(|(c, &xi)| c * xi as i64).sum::<i64>() % 12 == 0))
            .collect()
    };
    let check = |rows: Vec<Vec<i64>>, unknowns: usize| -> Check {
        let want = direct(&rows, unknowns);
        let got = solve_homogeneous(N12, unknowns, rows.clone()).map_err(|e| e.to_string())?;
        let got: Vec<Vec<u32>> = got.iter().map(<[u32]>::to_vec).collect();
        ensure(got == want, || format!("system {rows:?}: {} solutions, expected {}", got.len(), want.len()))
    };
    for a in 0..12 {
        check(vec![vec![a]], 1)?;
        for b in 0..12 {
            check(vec![vec![a], vec![b]], 1)?;
            check(vec![vec![a, b]], 2)?;
            for c in 0..12 {
                for d in 0..12 {
                    check(vec![vec![a, b], vec![c, d]], 2)?;
                }
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Check);

#[test]
fn acceptance_suite() {
    let criteria: [Criterion; 12] = [
        ("group order and normal-form bijection", group_order_and_normal_form),
        ("defining relations", relations),
        ("center of J", center),
        ("centralizer sizes and families", centralizers),
        ("GL/SL counts and indices", counting),
        ("trace table and conjugacy classes", traces_and_classes),
        ("triadic orbits and restriction table", orbits),
        ("Hook representation", hook_representation),
        ("progression solvers", solvers),
        ("RICH and the Webern rows", webern),
        ("Lewin duality", duality),
        ("oracle equivalence", oracles),
    ];
    let mut failed = Vec::new();
    println!();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
