//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ellfib_core::atiyah::verify_reg_lemma;
use ellfib_core::chern::{d2_thresholds, slope_gap_from_cthm1, FibrationInvariants};
use ellfib_core::lattice::{
    asd_congruence, component_count, orbit_partition, pontrjagin, EvenLattice, ModClass,
};
use ellfib_core::model_surfaces::{
    double_cover, rational_surface_divisor, triple_cover, ProjBundleSpace,
};
use ellfib_core::p1bundles::{admissibility_bound, enumerate_admissible, Side, SplittingType};

type Outcome = Result<(), String>;

/// Name, check, and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Whether the normalized type `(−d, a₂−d, …)` is among the enumerated
/// admissible types of its degree; enumerations are cached per degree.
struct Enumerated {
    n: usize,
    d: i64,
    by_degree: BTreeMap<i64, BTreeSet<SplittingType>>,
}

impl Enumerated {
    fn new(n: usize, d: i64) -> Self {
        Enumerated {
            n,
            d,
            by_degree: BTreeMap::new(),
        }
    }

    fn accepts(&mut self, drops: &[i64]) -> Result<bool, String> {
        let s = SplittingType::normalized_r1(drops, self.d);
        let delta = s.degree();
        if !self.by_degree.contains_key(&delta) {
            let all = enumerate_admissible(self.n, self.d, delta).map_err(|e| e.to_string())?;
            self.by_degree.insert(delta, all.into_iter().collect());
        }
        Ok(self.by_degree[&delta].contains(&s))
    }
}

fn c1_n2_admissibility() -> Outcome {
    for d in 2..=8 {
        let mut e = Enumerated::new(2, d);
        for a in 0..=3 * d {
            let got = e.accepts(&[a])?;
            ensure(got == (a < d), || format!("d={d} a={a}: accepted={got}"))?;
        }
    }
    Ok(())
}

fn c2_n3_admissibility() -> Outcome {
    for d in 2..=8 {
        let mut e = Enumerated::new(3, d);
        for b in 0..=3 * d {
            for a in 0..=b {
                let got = e.accepts(&[a, b])?;
                let expected = 2 * b - a <= d && a + b <= 2 * d - 2;
                ensure(got == expected, || {
                    format!("d={d} (a,b)=({a},{b}): accepted={got}")
                })?;
            }
        }
    }
    Ok(())
}

fn c3_derivation_chain() -> Outcome {
    for n in 2..=6 {
        for r in 1..n {
            for d in 1..=6 {
                for p1 in [true, false] {
                    let chain = slope_gap_from_cthm1(n, r, d, p1).map_err(|e| e.to_string())?;
                    let direct = admissibility_bound(n as usize, r as usize, d, Side::Sub, p1)
                        .map_err(|e| e.to_string())?;
                    ensure(chain == direct, || {
                        format!("n={n} r={r} d={d} p1={p1}: {chain} vs {direct}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn c4_sharpness() -> Outcome {
    for d in 2..=10 {
        let t2 = d2_thresholds(2, d, 0).map_err(|e| e.to_string())?;
        ensure(
            (t2.h1_bound, t2.basepoint_bound) == (2 * d - 10, 2 * d - 6),
            || format!("n=2 d={d}: {t2:?}"),
        )?;
        let t3 = d2_thresholds(3, d, 0).map_err(|e| e.to_string())?;
        ensure(
            (t3.h1_bound, t3.basepoint_bound) == (3 * d - 12, 3 * d - 8),
            || format!("n=3 d={d}: {t3:?}"),
        )?;

        let a = d - 1;
        let c = double_cover(a, 2 * d - 1).map_err(|e| e.to_string())?;
        ensure(
            c.d == d && c.h1_nonzero(a - 2) && c.d_squared_at(a - 2) == 2 * d - 10,
            || format!("double cover h1 realization at d={d}"),
        )?;
        ensure(
            c.d_squared_at(a - 1) == 2 * d - 6 && c.basepoint_threshold == a - 1,
            || format!("double cover base point realization at d={d}"),
        )?;

        let (a, b) = (d - 2, d - 1);
        let c = triple_cover(a, b, 3 * b).map_err(|e| e.to_string())?;
        ensure(
            c.d == d && c.h1_nonzero(b - 2) && c.d_squared_at(b - 2) == 3 * d - 12,
            || format!("triple cover h1 realization at d={d}"),
        )?;

        let c = if d >= 3 {
            let (a, b) = (d - 3, d - 2);
            triple_cover(a, b, 3 * b + 1).map_err(|e| e.to_string())?
        } else {
            triple_cover(1, 1, 4).map_err(|e| e.to_string())?
        };
        let t = c.basepoint_threshold;
        ensure(c.d == d && c.d_squared_at(t) == 3 * d - 8, || {
            format!("triple cover base point realization at d={d}: {c:?}")
        })?;
    }
    Ok(())
}

fn c5_ring_vs_closed_form() -> Outcome {
    let mut checked = 0;
    for b in 0..=5 {
        for a in 0..=b {
            for big_n in 0..=3 * b + 6 {
                let Ok(c) = triple_cover(a, b, big_n) else {
                    continue;
                };
                for t in -6..=6 {
                    let closed = -2 * a - 2 * b + c.d + 6 * t;
                    let ring = c.d_squared_by_intersection(t);
                    ensure(closed == ring && c.d_squared_at(t) == closed, || {
                        format!("(a,b,N,t)=({a},{b},{big_n},{t}): {closed} vs {ring}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 0, || "empty grid".into())
}

fn sorted_drop_lists(len: usize, max: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut prefix in sorted_drop_lists(len - 1, max) {
        let start = prefix.last().copied().unwrap_or(0);
        for next in start..=max {
            prefix.push(next);
            out.push(prefix.clone());
            prefix.pop();
        }
    }
    out
}

fn c6_leray_threshold() -> Outcome {
    for len in 1..=3 {
        for drops in sorted_drop_lists(len, 8) {
            let space = ProjBundleSpace::new(drops.clone()).map_err(|e| e.to_string())?;
            let top = *drops.last().unwrap();
            for t in -16..=16 {
                let h1 = space.leray_cohomology(1, t).map_err(|e| e.to_string())?.h1;
                ensure((h1 != 0) == (t <= top - 2), || {
                    format!("drops={drops:?} t={t}: h1={h1}")
                })?;
            }
        }
    }
    Ok(())
}

fn c7_pontrjagin_lifts() -> Outcome {
    let lattice = EvenLattice::lambda_d(2).map_err(|e| e.to_string())?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in [2u64, 3, 4, 5] {
        let m = n as i64;
        for _ in 0..1000 {
            let coords: Vec<i64> = (0..lattice.rank()).map(|_| rng.gen_range(0..m)).collect();
            let class = ModClass::new(n, &coords).map_err(|e| e.to_string())?;
            let p = pontrjagin(&lattice, &class).map_err(|e| e.to_string())?;
            ensure(p % 2 == 0, || {
                format!("odd Pontrjagin square {p} for n={n}")
            })?;
            for _ in 0..10 {
                let lift: Vec<i64> = coords
                    .iter()
                    .map(|c| c + m * rng.gen_range(-5..=5))
                    .collect();
                let sq = lattice
                    .square(&ellfib_core::lattice::LatticeVector(lift))
                    .map_err(|e| e.to_string())?;
                ensure(sq.rem_euclid(2 * m) == p, || {
                    format!("lift-dependent square for n={n}")
                })?;
            }
        }
    }
    Ok(())
}

fn c8_asd_congruence() -> Outcome {
    for n in 1..=6 {
        for d in 1..=8 {
            for delta in -30..=30 {
                let inv = FibrationInvariants::new(n, d, 0, delta).map_err(|e| e.to_string())?;
                let d2 = inv.d_squared();
                ensure((d2 - n * d).rem_euclid(2) == 0, || {
                    format!("D^2 parity n={n} d={d} delta={delta}")
                })?;
                let p = asd_congruence(&inv).map_err(|e| e.to_string())?;
                ensure(p % 2 == 0 && (0..2 * n).contains(&p), || {
                    format!("residue {p} for n={n}")
                })?;
            }
        }
    }
    Ok(())
}

fn c9_orbits() -> Outcome {
    let uu = EvenLattice::direct_sum(&[
        EvenLattice::hyperbolic_plane(),
        EvenLattice::hyperbolic_plane(),
    ]);
    let two = orbit_partition(&uu, 2, 2).map_err(|e| e.to_string())?;
    let mut shape: Vec<(i64, usize)> = two.orbits.iter().map(|o| (o.pontrjagin, o.len())).collect();
    shape.sort();
    ensure(shape == vec![(0, 9), (2, 6)], || {
        format!("mod 2 orbits: {shape:?}")
    })?;

    let three = orbit_partition(&uu, 3, 2).map_err(|e| e.to_string())?;
    ensure(three.single_orbit_per_level(), || {
        format!("mod 3 orbits per level: {:?}", three.orbits_per_level())
    })?;
    let primitive = 3usize.pow(4) - 1;
    let total: usize = three.orbits.iter().map(|o| o.len()).sum();
    ensure(total == primitive, || {
        format!("mod 3 covers {total} of {primitive} primitive classes")
    })
}

fn c10_reg_lemma() -> Outcome {
    for e in 1..=8 {
        let report = verify_reg_lemma(e, 1, 1).map_err(|e| e.to_string())?;
        ensure(report.passed() && report.types_checked > 0, || {
            format!("e={e}: counterexamples {:?}", report.counterexamples)
        })?;
    }
    Ok(())
}

fn c11_component_count() -> Outcome {
    for d in 2..=6 {
        let lattice = EvenLattice::lambda_d(d).map_err(|e| e.to_string())?;
        for n in 1..=8i64 {
            let count = component_count(d, n).map_err(|e| e.to_string())?;
            let mut seen = BTreeSet::new();
            for j in (-2 * n..=2 * n).step_by(2) {
                let v = lattice.wall_representative(j).map_err(|e| e.to_string())?;
                let class = ModClass::of_vector(&v, n as u64).map_err(|e| e.to_string())?;
                ensure(class.is_primitive(), || {
                    format!("wall class j={j} not primitive")
                })?;
                seen.insert(pontrjagin(&lattice, &class).map_err(|e| e.to_string())?);
            }
            ensure(count == n && seen.len() as i64 == n, || {
                format!("d={d} n={n}: count={count}, realized={}", seen.len())
            })?;
        }
    }
    Ok(())
}

fn c12_rational_surfaces() -> Outcome {
    for n in 1..=30 {
        let r = rational_surface_divisor(n).map_err(|e| e.to_string())?;
        let uniform = SplittingType::uniform(0, n as usize).map_err(|e| e.to_string())?;
        ensure(
            r.d_squared == n - 2 && r.fiber_degree == n && r.chi == n && r.pushforward == uniform,
            || format!("n={n}: {r:?}"),
        )?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("n=2 admissible types are a <= d-1", c1_n2_admissibility, 1),
        (
            "n=3 admissible types are 2b-a <= d, a+b <= 2d-2",
            c2_n3_admissibility,
            1,
        ),
        (
            "slope bound from the discriminant bound matches the closed form",
            c3_derivation_chain,
            1,
        ),
        ("D^2 thresholds are sharp for n=2, 3", c4_sharpness, 1),
        (
            "triple cover D_t^2 matches the intersection ring",
            c5_ring_vs_closed_form,
            5,
        ),
        (
            "H^1 of O(1) twisted by tP is nonzero iff t <= a_n - 2",
            c6_leray_threshold,
            5,
        ),
        (
            "Pontrjagin square is lift independent and even on Lambda(2)",
            c7_pontrjagin_lifts,
            10,
        ),
        (
            "D^2 parity and even residue D^2 + n^2 d mod 2n",
            c8_asd_congruence,
            1,
        ),
        ("reflection orbits on U+U mod 2 and mod 3", c9_orbits, 30),
        (
            "dim End >= e with equality iff commutative, e <= 8",
            c10_reg_lemma,
            5,
        ),
        (
            "component count is n and every even residue is realized",
            c11_component_count,
            1,
        ),
        (
            "rational surface divisors have D^2 = n-2, D.F = chi = n",
            c12_rational_surfaces,
            1,
        ),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(*limit);
        let status = if outcome.is_ok() && !slow {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "{status} {:>2} {name} ({:.3}s, limit {limit}s)",
            i + 1,
            elapsed.as_secs_f64()
        );
        if let Err(msg) = &outcome {
            line.push_str(&format!(": {msg}"));
        } else if slow {
            line.push_str(": over time limit");
        }
        println!("{line}");
        if status == "FAIL" {
            failures += 1;
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
