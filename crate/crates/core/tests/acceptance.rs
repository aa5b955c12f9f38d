//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Expected values come from closed-form counts, hand expansions and small
//! brute-force oracles written here, never from the library under test.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rpic_core::abelian::{ivec, FgAbGroup, FgAbHom, IntMatrix};
use rpic_core::picard::{rpic, rpic_reductive, rpic_torus, verify_pushout, Degree};
use rpic_core::rootdata::{Isogeny, RootDatum, Series};
use rpic_core::symforms::{
    b_map, b_matrix, basic_inner_product, q_matrix, sym2_action, sym2_dim, sym2_invariants,
};
use rpic_core::taut::{
    fiber_restriction_data, gamma_rank, weight, weight_g0, RPicBasis, Regime, TautClass,
};

mod common;

use common::minor_gcd_quotient;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn sl(n: usize) -> RootDatum {
    RootDatum::classical(Series::A, n - 1, Isogeny::Sc).unwrap()
}

fn pgl(n: usize) -> RootDatum {
    RootDatum::classical(Series::A, n - 1, Isogeny::Ad).unwrap()
}

fn gl(n: usize) -> RootDatum {
    RootDatum::gl(n).unwrap()
}

fn sp(two_n: usize) -> RootDatum {
    if two_n == 2 {
        sl(2)
    } else {
        RootDatum::classical(Series::C, two_n / 2, Isogeny::Sc).unwrap()
    }
}

fn g2() -> RootDatum {
    RootDatum::classical(Series::G, 2, Isogeny::Sc).unwrap()
}

/// Groups of the rank-law battery with hand-counted `(rank of G^ab, simple factors)`.
fn battery() -> Vec<(&'static str, RootDatum, usize, usize)> {
    vec![
        ("SL2", sl(2), 0, 1),
        ("SL3", sl(3), 0, 1),
        ("SL4", sl(4), 0, 1),
        ("GL1", gl(1), 1, 0),
        ("GL2", gl(2), 1, 1),
        ("GL3", gl(3), 1, 1),
        ("GL4", gl(4), 1, 1),
        ("PGL2", pgl(2), 0, 1),
        ("PGL3", pgl(3), 0, 1),
        ("Sp4", sp(4), 0, 1),
        ("SL2×SL2", sl(2).product(&sl(2)), 0, 2),
        ("GL2×Gm", gl(2).product(&RootDatum::torus(1)), 2, 1),
    ]
}

fn torus_rank_g2(r: usize, n: usize) -> usize {
    r * n + r * (r + 1) / 2 + r
}

fn torus_rank_g1(r: usize, n: usize) -> usize {
    r * n + r * (r - 1) / 2 + r
}

fn criterion_1() -> Check {
    let mut cases = 0;
    for r in 1..=4 {
        for n in 0..=3 {
            let d = vec![BigInt::zero(); r];
            for (g, expect) in [(2, torus_rank_g2(r, n)), (1, torus_rank_g1(r, n))] {
                let p = rpic_torus(&RootDatum::torus(r), g, n, &d).map_err(|e| e.to_string())?;
                ensure(p.free_rank == expect && p.torsion.is_empty(), || {
                    format!("r={r} g={g} n={n}: rank {} expected {expect}", p.free_rank)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (r, g, n) cases"))
}

fn criterion_2() -> Check {
    let gm = RootDatum::torus(1);
    for d in -7i64..=7 {
        for n in 0..=3 {
            let p = rpic_torus(&gm, 0, n, &ivec(&[d])).map_err(|e| e.to_string())?;
            let expect = if n == 0 && d.rem_euclid(2) == 1 { 2 } else { 1 };
            let index = p.weight_image_index.clone().ok_or("missing index")?;
            ensure(index == big(expect), || {
                format!("d={d} n={n}: index {index}, expected {expect}")
            })?;
        }
    }
    Ok("d ∈ [-7, 7], n ≤ 3".into())
}

/// Invariant vectors of a 2×2 integer action `[[a, b], [c, e]]`, by hand:
/// the kernel of `M − I`.
fn hand_invariants_2x2(m: [[i64; 2]; 2]) -> Vec<[i64; 2]> {
    let (a, b, c, e) = (m[0][0] - 1, m[0][1], m[1][0], m[1][1] - 1);
    if a == 0 && b == 0 && c == 0 && e == 0 {
        return vec![[1, 0], [0, 1]];
    }
    // One-dimensional kernel, primitive generator.
    let (x, y) = if a != 0 || b != 0 { (-b, a) } else { (-e, c) };
    let g = num_integer::gcd(x, y).abs().max(1);
    let sign = if x < 0 || (x == 0 && y < 0) { -1 } else { 1 };
    vec![[sign * x / g, sign * y / g]]
}

fn criterion_3() -> Check {
    // Hand expansion for SL2: with S_11 = ⟨ϖ,ϖ⟩ and D_1 = L(ϖ), the
    // reflection ϖ ↦ −ϖ sends S_11 ↦ S_11 and L(−ϖ) ↦ S_11 − D_1 (g ≥ 2).
    let hand = [[1, 1], [0, -1]];
    let inv = hand_invariants_2x2(hand);
    ensure(inv == vec![[1, 0]], || format!("hand oracle gave {inv:?}"))?;
    let basis = RPicBasis::new(1, 2, 0, &ivec(&[0])).unwrap();
    let s = &sl(2).weyl_reflections().on_char[0];
    let action = basis.weyl_algebraic_action(s).map_err(|e| e.to_string())?;
    ensure(action == IntMatrix::from_rows(&hand), || {
        format!("SL2 action {:?}", action.to_rows())
    })?;

    let groups = [("SL2", sl(2)), ("SL3", sl(3)), ("Sp4", sp(4)), ("G2", g2())];
    let mut notes = Vec::new();
    for (name, rd) in &groups {
        for (g, n) in [(1u32, 0usize), (2, 0), (2, 1)] {
            let d = vec![BigInt::zero(); rd.rank()];
            let p = rpic_reductive(rd, g, n, &d).map_err(|e| e.to_string())?;
            ensure(p.free_rank == 1 && p.torsion.is_empty(), || {
                format!("{name} g={g} n={n}: rank {}", p.free_rank)
            })?;
            let tau = p.transgression_matrix.clone().ok_or("missing τ")?;
            let index = tau.entries()[0].abs();
            if g >= 2 {
                ensure(index.is_one(), || {
                    format!("{name} g={g} n={n}: τ index {index}")
                })?;
            }
            if *name == "SL2" {
                let expect_label = if g == 1 { "D_1" } else { "S_11" };
                ensure(p.generators[0].label == expect_label, || {
                    format!("SL2 g={g} n={n}: generator {}", p.generators[0].label)
                })?;
                if g == 1 {
                    // ⟨ϖ,ϖ⟩ = 2 D_1 in genus one.
                    ensure(index == big(2), || format!("SL2 g=1: τ index {index}"))?;
                }
            } else if g == 1 {
                notes.push(format!("{name}:{index}"));
            }
        }
    }
    Ok(format!(
        "12 presentations; SL2 g=1 index 2; other g=1 τ indices {}",
        notes.join(" ")
    ))
}

fn criterion_4() -> Check {
    let mut count = 0;
    for (name, rd, ab_rank, s) in battery() {
        for n in 0..=2 {
            let d = vec![BigInt::zero(); rd.rank()];
            let p = rpic_reductive(&rd, 2, n, &d).map_err(|e| e.to_string())?;
            let expect = torus_rank_g2(ab_rank, n) + s;
            ensure(p.free_rank == expect, || {
                format!("{name} n={n}: rank {} expected {expect}", p.free_rank)
            })?;
            // Independent of the hand table: the torus of G^ab computed directly.
            let torus = rpic_torus(
                &RootDatum::torus(ab_rank),
                2,
                n,
                &vec![BigInt::zero(); ab_rank],
            )
            .map_err(|e| e.to_string())?;
            ensure(torus.free_rank + s == p.free_rank, || {
                format!("{name} n={n}: torus side {}", torus.free_rank)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (group, n) cases at g = 2"))
}

fn criterion_5() -> Check {
    let mut count = 0;
    for (name, rd, _, _) in battery() {
        for n in 0..=2 {
            let d = vec![BigInt::zero(); rd.rank()];
            let p = rpic_reductive(&rd, 2, n, &d).map_err(|e| e.to_string())?;
            let report = verify_pushout(&p).map_err(|e| e.to_string())?;
            ensure(report.ok, || format!("{name} n={n}: {:?}", report.failure))?;
            ensure(report.arrows.iter().all(|a| a.injective), || {
                format!("{name} n={n}: arrows {:?}", report.arrows)
            })?;
            ensure(
                report.map_surjective
                    && report.pushout_invariant_factors.len() == p.free_rank
                    && report.pushout_invariant_factors.iter().all(Zero::is_zero),
                || {
                    format!(
                        "{name} n={n}: push-out {:?}",
                        report.pushout_invariant_factors
                    )
                },
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} push-out squares certified"))
}

fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigInt> {
    (0..len).map(|_| big(rng.gen_range(-5..=5))).collect()
}

fn random_class(rng: &mut ChaCha8Rng, r: usize, n: usize) -> TautClass {
    let mut c = TautClass::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = big(rng.gen_range(-5..=5));
        let atom = if rng.gen_bool(0.5) {
            TautClass::det(random_vec(rng, r), random_vec(rng, n))
        } else {
            TautClass::pair(
                random_vec(rng, r),
                random_vec(rng, n),
                random_vec(rng, r),
                random_vec(rng, n),
            )
        };
        c = c.plus(atom.scaled(&k));
    }
    c
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let regimes = [
        Regime::GenusAtLeastTwo,
        Regime::GenusOne,
        Regime::GenusZeroMarked,
        Regime::GenusZeroUnmarked,
    ];
    for regime in regimes {
        for trial in 0..200 {
            let r = rng.gen_range(1..=3);
            let (g, n) = match regime {
                Regime::GenusAtLeastTwo => (rng.gen_range(2..=5), rng.gen_range(0..=3)),
                Regime::GenusOne => (1, rng.gen_range(0..=3)),
                Regime::GenusZeroMarked => (0, rng.gen_range(1..=3)),
                Regime::GenusZeroUnmarked => (0, 0),
            };
            let d = random_vec(&mut rng, r);
            let c = random_class(&mut rng, r, n);
            let basis = RPicBasis::new(r, g, n, &d).map_err(|e| e.to_string())?;
            let coords = basis.normalize(&c).map_err(|e| e.to_string())?;
            let back = basis.class_of(&coords);
            let fail = || format!("{regime:?} trial {trial}: {c}");
            if g == 0 {
                ensure(weight_g0(&c, &d) == weight_g0(&back, &d), fail)?;
            } else {
                ensure(weight(&c, &d, g) == weight(&back, &d, g), fail)?;
                ensure(gamma_rank(&c, r) == gamma_rank(&back, r), fail)?;
            }
        }
    }
    Ok("800 random classes, 4 regimes".into())
}

fn criterion_7() -> Check {
    let mut count = 0;
    for r in 1..=3usize {
        for g in [1u32, 2, 3, 5] {
            for n in 0..=3usize {
                let d = vec![BigInt::zero(); r];
                let data = fiber_restriction_data(r, g, n, &d).map_err(|e| e.to_string())?;
                let expect = if g >= 2 {
                    r * n
                } else {
                    r * n.saturating_sub(1)
                };
                ensure(data.j_image.cols() == expect, || {
                    format!("r={r} g={g} n={n}: kernel rank {}", data.j_image.cols())
                })?;
                // The kernel really is killed by w and γ.
                let basis = RPicBasis::new(r, g, n, &d).unwrap();
                let stacked = basis.weight_matrix().vstack(&basis.gamma_matrix());
                ensure((&stacked * &data.j_image).is_zero(), || {
                    format!("r={r} g={g} n={n}: kernel not annihilated")
                })?;
                if n == 0 && g >= 2 {
                    let mut expect: Vec<BigInt> = vec![BigInt::one(); r * (r + 1) / 2];
                    expect.extend(std::iter::repeat_n(big(2 * g as i64 - 2), r));
                    expect.sort();
                    let mut got = data.image_invariant_factors.clone();
                    got.sort();
                    ensure(got == expect, || {
                        format!("r={r} g={g}: image factors {got:?}")
                    })?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (r, g, n) cases"))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Simple types of rank ≤ 4 with the hand-known Weyl order, the 0-based
/// nodes whose coroots are short, and `|long coroot|²/|short coroot|²`.
fn simple_types() -> Vec<(Series, usize, u64, Vec<usize>, i64)> {
    let mut out = Vec::new();
    for l in 1..=4usize {
        out.push((Series::A, l, factorial(l as u64 + 1), (0..l).collect(), 1));
    }
    for l in 2..=4usize {
        let w = (1u64 << l) * factorial(l as u64);
        out.push((Series::B, l, w, (0..l - 1).collect(), 2));
        out.push((Series::C, l, w, vec![l - 1], 2));
    }
    out.push((Series::D, 4, 192, (0..4).collect(), 1));
    out.push((Series::F, 4, 1152, vec![0, 1], 2));
    out.push((Series::G, 2, 12, vec![1], 3));
    out
}

fn criterion_8() -> Check {
    let mut count = 0;
    for (series, l, weyl_order, short, ratio) in simple_types() {
        let name = format!("{series}{l}");
        let rd = RootDatum::classical(series, l, Isogeny::Sc).map_err(|e| e.to_string())?;
        let inv = sym2_invariants(&rd);
        ensure(inv.on_sc.cols() == 1, || {
            format!("{name}: invariant rank {}", inv.on_sc.cols())
        })?;
        let q = basic_inner_product(&rd, &rd.factors()[0]).map_err(|e| e.to_string())?;
        let b = b_map(&q);
        ensure(b.is_positive_definite(), || {
            format!("{name}: not positive definite")
        })?;
        for i in 0..l {
            // Coroots are the unit vectors of Λ(T_sc).
            let norm = b.gram().entries()[i * l + i].clone();
            let expect = if short.contains(&i) { 2 } else { 2 * ratio };
            ensure(norm == big(expect), || {
                format!("{name}: B(α{}∨,α{}∨) = {norm}", i + 1, i + 1)
            })?;
        }
        let group = rd.weyl_enumerate(2000).map_err(|e| e.to_string())?;
        ensure(group.len() as u64 == weyl_order, || {
            format!("{name}: |W| = {}, expected {weyl_order}", group.len())
        })?;
        // Full-group invariance of q and rank one of the Reynolds sum.
        let coeffs = IntMatrix::column_vector(q.coeffs());
        let mut reynolds = IntMatrix::zeros(sym2_dim(l), sym2_dim(l));
        for w in &group {
            let a = sym2_action(w);
            ensure(&a * &coeffs == coeffs, || {
                format!("{name}: q not W-invariant")
            })?;
            reynolds = reynolds.add(&a);
        }
        ensure(rpic_core::abelian::rank(&reynolds) == 1, || {
            format!(
                "{name}: Reynolds rank {}",
                rpic_core::abelian::rank(&reynolds)
            )
        })?;
        count += 1;
    }
    Ok(format!("{count} simple types, max |W| = 1152"))
}

fn criterion_9() -> Check {
    for r in 1..=5usize {
        let b = b_matrix(r);
        let q = q_matrix(r);
        let two = IntMatrix::scalar(sym2_dim(r), &big(2));
        ensure(&q * &b == two && &b * &q == two, || {
            format!("r={r}: composites")
        })?;
        let free = FgAbGroup::free(sym2_dim(r));
        let cb = FgAbHom::new(free.clone(), free.clone(), b)
            .unwrap()
            .cokernel()
            .group;
        let cq = FgAbHom::new(free.clone(), free, q)
            .unwrap()
            .cokernel()
            .group;
        let e2 = |k: usize| vec![big(2); k];
        ensure(cb.invariant_factors() == e2(r).as_slice(), || {
            format!("r={r}: coker b = {cb}")
        })?;
        ensure(
            cq.invariant_factors() == e2(r * (r - 1) / 2).as_slice(),
            || format!("r={r}: coker q = {cq}"),
        )?;
    }
    Ok("r ≤ 5".into())
}

fn criterion_10() -> Check {
    let mut table: Vec<(String, RootDatum, Vec<i128>)> = Vec::new();
    for n in 2..=5 {
        table.push((format!("SL{n}"), sl(n), vec![]));
        table.push((format!("PGL{n}"), pgl(n), vec![n as i128]));
    }
    for n in 1..=5 {
        table.push((format!("GL{n}"), gl(n), vec![0]));
    }
    for n in 1..=4 {
        table.push((format!("Sp{}", 2 * n), sp(2 * n), vec![]));
    }
    let ad = |s: Series, l: usize| RootDatum::classical(s, l, Isogeny::Ad).unwrap();
    for l in 2..=5 {
        table.push((format!("B{l} ad"), ad(Series::B, l), vec![2]));
        table.push((format!("C{l} ad"), ad(Series::C, l), vec![2]));
    }
    for l in 4..=7 {
        let z = if l % 2 == 0 { vec![2, 2] } else { vec![4] };
        table.push((format!("D{l} ad"), ad(Series::D, l), z));
    }
    table.push(("E6 ad".into(), ad(Series::E, 6), vec![3]));
    table.push(("E7 ad".into(), ad(Series::E, 7), vec![2]));
    table.push(("E8 ad".into(), ad(Series::E, 8), vec![]));
    table.push(("F4 ad".into(), ad(Series::F, 4), vec![]));
    table.push(("G2 ad".into(), ad(Series::G, 2), vec![]));

    for (name, rd, expect) in &table {
        let p = rd.pi1().map_err(|e| e.to_string())?;
        let got: Vec<i128> = p
            .pi1
            .invariant_factors()
            .iter()
            .map(|x| x.to_i128().unwrap())
            .collect();
        ensure(&got == expect, || {
            format!("{name}: π₁ factors {got:?}, expected {expect:?}")
        })?;
        let oracle = minor_gcd_quotient(rd.simple_coroots());
        ensure(got == oracle, || format!("{name}: SNF oracle {oracle:?}"))?;
        let torsion: Vec<BigInt> = p.pi1.torsion();
        ensure(
            p.torsion_part.invariant_factors() == torsion.as_slice(),
            || format!("{name}: torsion part {}", p.torsion_part),
        )?;
        ensure(
            p.free_quotient.is_free() && p.free_quotient.free_rank() == p.pi1.free_rank(),
            || format!("{name}: free quotient {}", p.free_quotient),
        )?;
    }
    Ok(format!("{} groups", table.len()))
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let mut count = 0;
    for (name, rd, _, _) in battery() {
        let r = rd.rank();
        let delta: Vec<BigInt> = (0..r).map(|_| big(rng.gen_range(-3..=3))).collect();
        let lift = |rng: &mut ChaCha8Rng| {
            let mut d = delta.clone();
            for k in 0..rd.semisimple_rank() {
                let c = big(rng.gen_range(-3..=3));
                for (j, x) in rd.simple_coroots().row(k).iter().enumerate() {
                    d[j] += &c * x;
                }
            }
            d
        };
        for n in 0..=2 {
            let (d1, d2) = (lift(&mut rng), lift(&mut rng));
            let p1 = rpic_reductive(&rd, 2, n, &d1).map_err(|e| e.to_string())?;
            let p2 = rpic_reductive(&rd, 2, n, &d2).map_err(|e| e.to_string())?;
            ensure(p1.degree_class == p2.degree_class, || {
                format!("{name}: classes differ")
            })?;
            ensure(p1.generator_matrix == p2.generator_matrix, || {
                format!("{name} n={n}: lifts {d1:?} and {d2:?} disagree")
            })?;
            ensure(
                p1.saturation_index.is_one() && p2.saturation_index.is_one(),
                || format!("{name} n={n}: saturation index {}", p1.saturation_index),
            )?;
            count += 1;
        }
    }
    // Genus one shares the invariant computation, checked for good measure.
    let p = rpic(&gl(2), 1, 1, &Degree::Lift(ivec(&[3, -1]))).map_err(|e| e.to_string())?;
    ensure(p.saturation_index.is_one(), || "GL2 g=1 saturation".into())?;
    Ok(format!("{count} lift pairs"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("torus ranks", criterion_1),
        ("genus-zero torus image index", criterion_2),
        ("simply connected almost-simple groups", criterion_3),
        ("rank law", criterion_4),
        ("push-out certification", criterion_5),
        ("weight and gamma are homomorphisms", criterion_6),
        ("fiber-restriction data", criterion_7),
        ("basic inner products", criterion_8),
        ("b and q correspondences", criterion_9),
        ("fundamental group table", criterion_10),
        ("lift independence and primitivity", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
