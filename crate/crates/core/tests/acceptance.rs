//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact (integer or Laurent-polynomial equality); there are no tolerances.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::CaporasoHarris;
use refsev_core::combinatorics::{partitions, Partition};
use refsev_core::fock::{
    apply_generator, basis_of_grading, inner_product, BasisVector, Colour, FockState, Generator,
};
use refsev_core::oracle::{floor_relative, floor_severi, wick_severi, wick_vev};
use refsev_core::polygon::{HTransversePolygon, Preset};
use refsev_core::ring::{LaurentY, RationalLaurentY};
use refsev_core::severi::{
    genfun_verify, grading_shortcut_check, irreducible_degrees, profile_matrix_element,
    refined_relative, refined_severi, severi_degree, welschinger, Family, GenfunOrders,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn poly(pre: Preset) -> HTransversePolygon {
    pre.polygon().expect("preset polygon")
}

/// Polygons and cogenus bounds of the triple-agreement criterion.
fn core_instances() -> Vec<(Preset, i64)> {
    let mut out: Vec<(Preset, i64)> = (1..=3).map(|d| (Preset::P2 { d }, 3)).collect();
    for c in 0..=1 {
        for d in 0..=2 {
            if c + d > 0 {
                out.push((Preset::Sigma { m: 1, c, d }, 2));
            }
        }
    }
    out
}

fn structural(p: &LaurentY, what: &str) -> Outcome {
    ensure!(
        p.is_symmetric(),
        "{what} = {p} is not symmetric under y <-> 1/y"
    );
    ensure!(
        p.has_nonnegative_coeffs(),
        "{what} = {p} has a negative coefficient"
    );
    Ok(())
}

fn criterion_1() -> Outcome {
    for (pre, max_delta) in core_instances() {
        let p = poly(pre);
        for delta in 0..=max_delta {
            let fock = refined_severi(&p, delta).map_err(|e| e.to_string())?;
            let floor = floor_severi(&p, delta).map_err(|e| e.to_string())?;
            ensure!(
                fock == floor,
                "{pre} delta={delta}: fock {fock} vs floor {floor}"
            );
            if matches!(pre, Preset::P2 { d } if d <= 2) {
                let wick = wick_severi(
                    &p,
                    delta,
                    &Partition::empty(),
                    &Partition::ones(p.d_bottom()),
                )
                .map_err(|e| e.to_string())?;
                ensure!(
                    fock == wick,
                    "{pre} delta={delta}: fock {fock} vs wick {wick}"
                );
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let anchors: [(u32, i64, i64); 7] = [
        (2, 1, 3),
        (3, 1, 12),
        (3, 2, 21),
        (4, 1, 27),
        (4, 2, 225),
        (4, 3, 675),
        (3, 3, 15),
    ];
    let mut ch = CaporasoHarris::new();
    for (d, delta, expected) in anchors {
        let p = poly(Preset::P2 { d });
        let fock = severi_degree(&p, delta).map_err(|e| e.to_string())?;
        let floor = floor_severi(&p, delta)
            .map_err(|e| e.to_string())?
            .eval_at_one();
        let recursion = ch.absolute(d, delta).eval_at_one();
        let expected = BigInt::from(expected);
        ensure!(
            fock == expected && floor == expected && recursion == expected,
            "N^({d},{delta})(1): fock {fock}, floor {floor}, recursion {recursion}, expected {expected}"
        );
    }
    for d in 1..=4u32 {
        let got = severi_degree(&poly(Preset::P2 { d }), 1).map_err(|e| e.to_string())?;
        let expected = BigInt::from(3 * (d as i64 - 1).pow(2));
        ensure!(
            got == expected,
            "N^({d},1)(1) = {got}, expected 3(d-1)^2 = {expected}"
        );
    }
    for d in 1..=4u32 {
        for delta in 0..=6 {
            let fock = refined_severi(&poly(Preset::P2 { d }), delta).map_err(|e| e.to_string())?;
            let recursion = ch.absolute(d, delta);
            ensure!(
                fock == recursion,
                "refined N^({d},{delta}): fock {fock}, recursion {recursion}"
            );
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for (d, delta, expected) in [(3u32, 1i64, 8i64), (2, 1, 3)] {
        let got = welschinger(&poly(Preset::P2 { d }), delta).map_err(|e| e.to_string())?;
        ensure!(
            got == BigInt::from(expected),
            "N^({d},{delta})(-1) = {got}, expected {expected}"
        );
    }
    Ok(())
}

fn trivial_presets() -> Vec<Preset> {
    let mut out: Vec<Preset> = (1..=3).map(|d| Preset::P2 { d }).collect();
    for m in 1..=3 {
        for c in 0..=2 {
            for d in 0..=3 {
                if c + d > 0 {
                    out.push(Preset::Sigma { m, c, d });
                }
            }
        }
        for d in 1..=3 {
            out.push(Preset::Wps11m { m, d });
            if m >= 2 {
                out.push(Preset::Wps1mm { m, d });
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    for pre in trivial_presets() {
        let v = refined_severi(&poly(pre), 0).map_err(|e| e.to_string())?;
        ensure!(v == LaurentY::one(), "{pre}: N^(Δ,0) = {v}");
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for (pre, max_delta) in core_instances() {
        let p = poly(pre);
        for delta in 0..=max_delta {
            structural(
                &refined_severi(&p, delta).map_err(|e| e.to_string())?,
                &format!("{pre} delta={delta}"),
            )?;
            count += 1;
        }
    }
    for pre in trivial_presets() {
        let p = poly(pre);
        for delta in 0..=p.dim().min(3) as i64 {
            structural(
                &refined_severi(&p, delta).map_err(|e| e.to_string())?,
                &format!("{pre} delta={delta}"),
            )?;
            count += 1;
        }
    }
    for d in 2..=3 {
        let p = poly(Preset::P2 { d });
        for (alpha, beta) in tangency_splits(d) {
            for delta in 0..=2 {
                let v = refined_relative(&p, delta, &alpha, &beta).map_err(|e| e.to_string())?;
                structural(
                    &v,
                    &format!("p2:d={d} delta={delta} alpha={alpha} beta={beta}"),
                )?;
                count += 1;
            }
        }
    }
    ensure!(count > 0, "no polynomials checked");
    Ok(())
}

fn random_basis(rng: &mut ChaCha8Rng, max_grading: u64) -> BasisVector {
    let n = rng.gen_range(0..=max_grading);
    let basis = basis_of_grading(n);
    basis[rng.gen_range(0..basis.len())].clone()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 50 {
        let bra = random_basis(&mut rng, 4);
        let ket = random_basis(&mut rng, 4);
        let h = rng.gen_range(1..=3);
        let profile: Vec<i64> = (0..h).map(|_| rng.gen_range(-2..=2)).collect();
        let n = h + rng.gen_range(0..=2);
        let target = ket.grading() as i64 - profile.iter().sum::<i64>();
        if target == bra.grading() as i64 {
            continue;
        }
        let v = profile_matrix_element(
            &profile,
            n,
            &FockState::basis(bra.clone()),
            &FockState::basis(ket.clone()),
            16,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            v.is_zero(),
            "<{bra}| profile {profile:?}, {n} factors |{ket}> = {v}"
        );
        checked += 1;
    }
    for (pre, max_delta) in core_instances() {
        let p = poly(pre);
        for delta in 0..=max_delta {
            let ok = grading_shortcut_check(&p, delta).map_err(|e| e.to_string())?;
            ensure!(ok, "grading shortcut fails on {pre} delta={delta}");
        }
    }
    Ok(())
}

fn tangency_splits(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for a in partitions(k as u64) {
            for b in partitions((n - k) as u64) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    for (pre, max_delta) in core_instances() {
        let p = poly(pre);
        for delta in 0..=max_delta {
            let rel = refined_relative(
                &p,
                delta,
                &Partition::empty(),
                &Partition::ones(p.d_bottom()),
            )
            .map_err(|e| e.to_string())?;
            let abs = refined_severi(&p, delta).map_err(|e| e.to_string())?;
            ensure!(
                rel == abs,
                "{pre} delta={delta}: relative {rel} vs absolute {abs}"
            );
        }
    }
    let p = poly(Preset::P2 { d: 2 });
    for (alpha, beta) in tangency_splits(2) {
        for delta in 0..=1 {
            let fock = refined_relative(&p, delta, &alpha, &beta).map_err(|e| e.to_string())?;
            let floor = floor_relative(&p, delta, &alpha, &beta).map_err(|e| e.to_string())?;
            ensure!(
                fock == floor,
                "p2:d=2 delta={delta} alpha={alpha} beta={beta}: fock {fock} vs floor {floor}"
            );
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let runs = [
        (Family::P2, GenfunOrders { q: 5, t: 2, s: 0 }),
        (Family::Sigma { m: 1 }, GenfunOrders { q: 4, t: 1, s: 1 }),
        (Family::Wps1mm { m: 2 }, GenfunOrders { q: 5, t: 1, s: 0 }),
    ];
    for (family, orders) in runs {
        let r = genfun_verify(family, orders).map_err(|e| e.to_string())?;
        ensure!(r.passed() && r.checked > 0, "{r}");
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let es = irreducible_degrees(Family::P2, &[3], 1).map_err(|e| e.to_string())?;
    let find = |d: u32, delta: u64| {
        es.iter()
            .find(|e| e.class == [d] && e.delta == delta)
            .map(|e| e.value.clone())
            .ok_or_else(|| format!("missing N_0^({d},{delta})"))
    };
    let n10 = find(1, 0)?;
    ensure!(n10 == LaurentY::one(), "N_0^(1,0) = {n10}");
    let n21 = find(2, 1)?.eval_at_one();
    ensure!(n21 == BigInt::from(0), "N_0^(2,1)(1) = {n21}");
    let n31 = find(3, 1)?.eval_at_one();
    ensure!(n31 == BigInt::from(12), "N_0^(3,1)(1) = {n31}");
    Ok(())
}

fn random_state(rng: &mut ChaCha8Rng) -> FockState {
    let mut s = FockState::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = LaurentY::monomial(rng.gen_range(-2..=2), rng.gen_range(-3..=3i64));
        s.add_term(random_basis(rng, 5), RationalLaurentY::from(c));
    }
    s
}

fn random_generator(rng: &mut ChaCha8Rng) -> Generator {
    let colour = if rng.gen_bool(0.5) {
        Colour::A
    } else {
        Colour::B
    };
    let k = rng.gen_range(1..=3i64);
    Generator::new(colour, if rng.gen_bool(0.5) { k } else { -k }).expect("non-zero index")
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let s = random_state(&mut rng);
        let (g1, g2) = (random_generator(&mut rng), random_generator(&mut rng));
        let lhs = apply_generator(&apply_generator(&s, g2), g1);
        let mut diff = lhs;
        diff.add_state(
            &apply_generator(&apply_generator(&s, g1), g2).scale(&-&RationalLaurentY::one()),
        );
        let bracket = if g1.colour() != g2.colour() && g1.index() == -g2.index() {
            // [a_n, b_{-n}] = [n]_y = -[b_{-n}, a_n]
            let sign = if g1.index() > 0 { 1 } else { -1 };
            LaurentY::quantum_integer(g1.index().abs()).scale(&BigInt::from(sign))
        } else {
            LaurentY::zero()
        };
        ensure!(
            diff == s.scale(&RationalLaurentY::from(bracket)),
            "[{g1}, {g2}] on {s}"
        );
    }
    for _ in 0..100 {
        let (u, v) = (random_state(&mut rng), random_state(&mut rng));
        let g = random_generator(&mut rng);
        let lhs = inner_product(&apply_generator(&u, g), &v);
        let rhs = inner_product(&u, &apply_generator(&v, g.adjoint()));
        ensure!(lhs == rhs, "adjointness of {g} on {u} / {v}");
    }
    // exp(a_{-1}) v_∅ = Σ_k v_{(1^k),∅}
    let mut term = FockState::vacuum();
    let mut total = FockState::vacuum();
    for k in 1..=6u32 {
        term = apply_generator(&term, Generator::a(-1).expect("index"))
            .scale(&RationalLaurentY::new(LaurentY::one(), BigInt::from(k)));
        total.add_state(&term);
        let expected = FockState::from_parts(Partition::ones(k), Partition::empty());
        ensure!(term == expected, "a_(-1)^{k}/{k}! v_∅ = {term}");
    }
    ensure!(
        total.len() == 7,
        "truncated coherent state has {} terms",
        total.len()
    );
    let vac = BasisVector::vacuum();
    for _ in 0..200 {
        let len = 2 * rng.gen_range(0..=4);
        let word: Vec<Generator> = (0..len).map(|_| random_generator(&mut rng)).collect();
        let mut s = FockState::vacuum();
        for g in word.iter().rev() {
            s = apply_generator(&s, *g);
        }
        let fock = s.coeff(&vac);
        let wick = RationalLaurentY::from(wick_vev(&word));
        ensure!(fock == wick, "word {word:?}: fock {fock} vs wick {wick}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "triple agreement fock = floor (= wick where admitted)",
            criterion_1,
        ),
        ("classical Severi anchors at y=1", criterion_2),
        ("Welschinger anchors at y=-1", criterion_3),
        ("trivial rows N^(Δ,0) = 1", criterion_4),
        ("integrality, symmetry, non-negativity", criterion_5),
        ("grading selection", criterion_6),
        ("relative consistency", criterion_7),
        ("generating-function identities", criterion_8),
        ("irreducible degrees via formal log", criterion_9),
        ("Heisenberg kernel property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} (exact)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
